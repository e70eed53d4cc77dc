//! Pseudovarieties over `Fun(GF(q^d))` at desk scale: zero sets by
//! enumeration, ideals of point sets, the Nullstellensatz comparison, and the
//! two constructions on regular functions (gluing local fractions and
//! turning a pseudoregular fraction into a regular one).

use alloc::format;
use alloc::vec::Vec;

use crate::adjoint::{self, adjoint_ring, lift_component, require_fun};
use crate::coeff::FieldEmbedding;
use crate::diffideal::DiffIdeal;
use crate::diffpoly::{DiffPoly, DiffRing};
use crate::error::{Error, Result};
use crate::group::GroupElem;
use crate::groebner::{vanishing_ideal, Ideal};
use crate::pseudofield::PseudofieldElem;

/// Largest number of candidate points [`solve_points`] will try.
pub const SOLVE_CAP: u64 = 1_000_000;

/// Points of `A^n`, sorted and without repetitions.
pub type PointSet = Vec<Vec<PseudofieldElem>>;

/// The ring over `GF(q^d)` together with the embedding of the old base field.
pub fn extend_ring(r: &DiffRing, d: u32) -> Result<(DiffRing, FieldEmbedding)> {
    let emb = r.pseudofield().base().extend(d)?;
    Ok((r.base_change(&emb)?, emb))
}

/// All common zeros in `A_d^n` of `gens`, where `A_d` is the pseudofield
/// over `GF(q^d)`; returns the extended ring alongside the points.
pub fn solve_points(r: &DiffRing, gens: &[DiffPoly], d: u32) -> Result<(DiffRing, PointSet)> {
    let (big, emb) = extend_ring(r, d)?;
    let gens: Vec<DiffPoly> = gens.iter().map(|f| big.map_poly(&emb, f)).collect();
    let pf = big.pseudofield().clone();
    let k = pf.base();
    let q = k.size().ok_or_else(|| Error::Unsupported("solving needs a finite coefficient field".into()))?;
    let exponent = (big.n() * pf.m()) as u32;
    let total = (q as u128).checked_pow(exponent).filter(|&t| t <= SOLVE_CAP as u128).ok_or_else(|| {
        Error::EnumerationBound { candidates: format!("{q}^{exponent}"), cap: SOLVE_CAP }
    })? as u64;
    if gens.iter().any(|f| f.terms().count() == 1 && f.terms().all(|(m, c)| m.is_one() && pf.is_unit(c))) {
        return Ok((big, Vec::new()));
    }
    let elems = pf.elements(SOLVE_CAP)?;
    let per = elems.len() as u64;
    let g = big.group().clone();
    // σ-images of every pseudofield element, indexed [element][σ].
    let shifted: Vec<Vec<PseudofieldElem>> =
        elems.iter().map(|a| g.elements().map(|s| pf.sigma_act(s, a)).collect()).collect();
    let mut out = Vec::new();
    let mut values = Vec::with_capacity(big.nflat());
    for code in 0..total {
        values.clear();
        let mut c = code;
        let mut idx = Vec::with_capacity(big.n());
        for _ in 0..big.n() {
            idx.push((c % per) as usize);
            c /= per;
        }
        for &i in &idx {
            values.extend(shifted[i].iter().cloned());
        }
        if gens.iter().all(|f| pf.is_zero(&big.eval_at_values(f, &values))) {
            out.push(idx.iter().map(|&i| elems[i].clone()).collect::<Vec<_>>());
        }
    }
    out.sort();
    out.dedup();
    Ok((big, out))
}

/// `I(X)`, via the vanishing ideal of the transferred points.
pub fn ideal_of_points(r: &DiffRing, points: &[Vec<PseudofieldElem>]) -> Result<DiffIdeal> {
    require_fun(r)?;
    let ar = adjoint_ring(r);
    let adj: Vec<_> = points
        .iter()
        .map(|a| adjoint::transfer_point(r, a).map(|p| p.0))
        .collect::<Result<_>>()?;
    DiffIdeal::from_adjoint(r, &vanishing_ideal(&ar, &adj))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NssStatus {
    Holds,
    Fails,
    /// Some points of `V(𝔞)` are not rational over the chosen extension.
    Inconclusive,
}

impl NssStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            NssStatus::Holds => "holds",
            NssStatus::Fails => "fails",
            NssStatus::Inconclusive => "insufficient extension degree",
        }
    }
}

/// Outcome of comparing `{𝔞}` with `I(V(𝔞))` over `Fun(GF(q^d))`.
#[derive(Debug, Clone)]
pub struct NssReport {
    pub status: NssStatus,
    /// `{𝔞}`, extended to the larger field.
    pub lhs: DiffIdeal,
    /// `I(V(𝔞))` computed from the rational points.
    pub rhs: DiffIdeal,
    pub points: PointSet,
    /// `dim_K` of the adjoint quotient of `{𝔞}`: the number of points over the closure.
    pub radical_degree: usize,
    /// `{𝔞} ⊆ I(V(𝔞))`, which holds unconditionally.
    pub inclusion: bool,
}

pub fn nullstellensatz_check(ideal: &DiffIdeal, d: u32) -> Result<NssReport> {
    let r = ideal.ring();
    let radical = ideal.adjoint().zero_dim_radical()?;
    let (big, emb) = extend_ring(r, d)?;
    let lhs = DiffIdeal::from_adjoint(&big, &radical.base_change(&emb))?;
    let radical_degree = lhs.adjoint().quotient_dimension()?;
    let (_, points) = solve_points(r, ideal.generators(), d)?;
    let rhs = ideal_of_points(&big, &points)?;
    let inclusion = rhs.contains_ideal(&lhs);
    let status = if points.len() < radical_degree {
        NssStatus::Inconclusive
    } else if lhs == rhs {
        NssStatus::Holds
    } else {
        NssStatus::Fails
    };
    Ok(NssReport { status, lhs, rhs, points, radical_degree, inclusion })
}

/// `g ↦ ∏_{σ≠e} σ(g)` and `∏_σ σ(g)`.
fn orbit_products(r: &DiffRing, g: &DiffPoly) -> (DiffPoly, DiffPoly) {
    let others = r
        .group()
        .elements()
        .filter(|s| !s.is_identity())
        .fold(r.one(), |acc, s| r.mul(&acc, &r.act_poly(s, g)));
    let all = r.mul(&others, g);
    (others, all)
}

/// Glues local fractions `h_i/g_i` on `X = V(x)` into one polynomial `d`
/// with `d·g_i ≡ h_i` modulo `I(X)`.
///
/// Patches are `(g_i, h_i)`. Denominators that are not `Σ`-constant are first
/// replaced by `∏_σ σ(g_i)` (with `h_i` multiplied by the other factors).
/// Compatibility `h_i g_j ≡ h_j g_i` and the cover condition
/// `1 ∈ (g_1, …, g_m) + I(X)` are checked.
pub fn glue_regular(patches: &[(DiffPoly, DiffPoly)], x: &DiffIdeal) -> Result<DiffPoly> {
    let r = x.ring();
    if patches.is_empty() {
        return if x.is_unit() { Ok(r.zero()) } else { Err(Error::NotCovering) };
    }
    let patches: Vec<(DiffPoly, DiffPoly)> = patches
        .iter()
        .map(|(g, h)| {
            if r.is_sigma_constant(g) {
                (g.clone(), h.clone())
            } else {
                let (others, all) = orbit_products(r, g);
                (all, r.mul(h, &others))
            }
        })
        .collect();
    for i in 0..patches.len() {
        for j in i + 1..patches.len() {
            let (gi, hi) = &patches[i];
            let (gj, hj) = &patches[j];
            if !x.contains(&r.sub(&r.mul(hi, gj), &r.mul(hj, gi))) {
                return Err(Error::IncompatiblePatches(i, j));
            }
        }
    }
    let ar = x.adjoint().ring().clone();
    // Σ-constant g has every normalised component equal to component_e(g).
    let mut gens: Vec<_> = patches
        .iter()
        .map(|(g, _)| adjoint::component(r, &ar, g, GroupElem::IDENTITY))
        .collect::<Result<_>>()?;
    let m = gens.len();
    gens.extend(x.adjoint().basis().iter().cloned());
    let cover = Ideal::new(&ar, gens);
    let cofactors = cover.lift(&ar.one()).ok_or(Error::NotCovering)?;
    let d = patches.iter().zip(&cofactors[..m]).fold(r.zero(), |acc, ((_, h), c)| {
        // The Σ-fixed element whose normalised components all equal c.
        let lifted = r.group().elements().fold(r.zero(), |s, sigma| r.add(&s, &r.act_poly(sigma, &lift_component(r, c))));
        r.add(&acc, &r.mul(&lifted, h))
    });
    Ok(x.normal_form(&d))
}

/// The regular representation of the pseudoregular fraction `h·g*` near `x`.
///
/// With `e` the support idempotent of `g(x)` and `g' = 1 − e + e·g`, returns
/// `h0 = e·h·∏_{σ≠e} σ(g')` and the `Σ`-constant `g0 = ∏_σ σ(g')`.
pub fn pseudoregular_to_regular(
    r: &DiffRing,
    h: &DiffPoly,
    g: &DiffPoly,
    x: &[PseudofieldElem],
) -> Result<(DiffPoly, DiffPoly)> {
    let pf = r.pseudofield();
    let gx = r.eval_poly(g, x)?;
    if pf.is_zero(&gx) {
        return Err(Error::ZeroDenominator);
    }
    let e = pf.pseudo_inverse(&gx).e;
    let e_poly = r.constant(e.clone());
    let g_prime = r.add(&r.constant(pf.sub(&pf.one(), &e)), &r.mul(&e_poly, g));
    let (others, all) = orbit_products(r, &g_prime);
    Ok((r.mul(&r.mul(&e_poly, h), &others), all))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::Field;
    use crate::group::Group;
    use crate::pseudofield::Pseudofield;
    use alloc::string::String;
    use alloc::vec;

    const E: GroupElem = GroupElem(0);
    const S: GroupElem = GroupElem(1);

    fn fun(p: u64, k: u32, n: usize) -> Pseudofield {
        Pseudofield::fun_of(&Field::gf(p, k).unwrap(), &Group::cyclic(n).unwrap())
    }

    fn ring(pf: &Pseudofield, names: &[&str]) -> DiffRing {
        DiffRing::with_names(pf, names.iter().map(|s| String::from(*s)).collect()).unwrap()
    }

    fn el(r: &DiffRing, v: &[u64]) -> PseudofieldElem {
        PseudofieldElem::from_coords(v.iter().map(|&x| r.pseudofield().base().element(x).unwrap()).collect())
    }

    fn example(r: &DiffRing) -> Vec<DiffPoly> {
        let (y, sy) = (r.var(0, E), r.var(0, S));
        vec![r.mul(&y, &sy), r.sub(&r.add(&y, &sy), &r.one())]
    }

    #[test]
    fn solving() {
        let r = ring(&fun(2, 1, 2), &["y"]);
        let (_, pts) = solve_points(&r, &example(&r), 1).unwrap();
        assert_eq!(pts, vec![vec![el(&r, &[0, 1])], vec![el(&r, &[1, 0])]]);

        let r5 = ring(&fun(5, 1, 2), &["y"]);
        let (y, sy) = (r5.var(0, E), r5.var(0, S));
        let sys = vec![r5.add(&sy, &y), r5.sub(&r5.pow(&y, 2), &r5.scalar(r5.pseudofield().base().from_int(4)))];
        let (_, pts) = solve_points(&r5, &sys, 1).unwrap();
        assert_eq!(pts, vec![vec![el(&r5, &[2, 3])], vec![el(&r5, &[3, 2])]]);

        assert!(solve_points(&r, &[r.one()], 1).unwrap().1.is_empty());
        let big = ring(&fun(5, 1, 4), &["y1", "y2", "y3"]);
        assert!(matches!(solve_points(&big, &[], 1), Err(Error::EnumerationBound { .. })));
    }

    #[test]
    fn ideals_of_points() {
        let r = ring(&fun(2, 1, 2), &["x"]);
        let ar = adjoint_ring(&r);
        let two = ideal_of_points(&r, &[vec![el(&r, &[1, 0])], vec![el(&r, &[0, 1])]]).unwrap();
        let expect = Ideal::new(
            &ar,
            vec![ar.add(&ar.add(&ar.var(0), &ar.var(1)), &ar.one()), ar.mul(&ar.var(0), &ar.var(1))],
        );
        assert_eq!(two.adjoint(), &expect);
        let one = ideal_of_points(&r, &[vec![el(&r, &[1, 0])]]).unwrap();
        assert!(one.is_pseudomaximal().unwrap());
        assert_eq!(one, DiffIdeal::new(&r, vec![r.sub(&r.var(0, E), &r.constant(el(&r, &[1, 0])))]).unwrap());
        assert!(ideal_of_points(&r, &[]).unwrap().is_unit());
    }

    #[test]
    fn nullstellensatz_examples() {
        let r = ring(&fun(2, 1, 2), &["y"]);
        let rep = nullstellensatz_check(&DiffIdeal::new(&r, example(&r)).unwrap(), 1).unwrap();
        assert_eq!(rep.status, NssStatus::Holds);
        assert!(rep.inclusion);

        let r3 = ring(&fun(3, 1, 2), &["y"]);
        let y = r3.var(0, E);
        let rep = nullstellensatz_check(&DiffIdeal::new(&r3, vec![r3.pow(&y, 2)]).unwrap(), 1).unwrap();
        assert_eq!(rep.status, NssStatus::Holds);
        assert_eq!(rep.lhs, DiffIdeal::new(&r3, vec![y.clone()]).unwrap());

        let sys = vec![r3.sub(&y, &r3.var(0, S)), r3.add(&r3.pow(&y, 2), &r3.one())];
        let ideal = DiffIdeal::new(&r3, sys).unwrap();
        let rep = nullstellensatz_check(&ideal, 1).unwrap();
        assert_eq!(rep.status, NssStatus::Inconclusive);
        assert!(rep.points.is_empty());
        assert!(rep.inclusion);
        let rep = nullstellensatz_check(&ideal, 2).unwrap();
        assert_eq!(rep.status, NssStatus::Holds);
        assert_eq!(rep.points.len(), 2);
    }

    #[test]
    fn gluing() {
        let pf = Pseudofield::fun_of(&Field::prime(7).unwrap(), &Group::trivial());
        let r = ring(&pf, &["u"]);
        let u = r.var(0, E);
        let x = DiffIdeal::zero(&r).unwrap();
        let one_minus_u = r.sub(&r.one(), &u);
        let patches = vec![(u.clone(), r.pow(&u, 2)), (one_minus_u.clone(), r.sub(&u, &r.pow(&u, 2)))];
        assert_eq!(glue_regular(&patches, &x).unwrap(), u);

        let h = r.add(&r.pow(&u, 3), &r.one());
        assert_eq!(glue_regular(&[(r.one(), h.clone())], &x).unwrap(), h);
        let c = r.scalar(pf.base().from_int(3));
        let inv3 = r.scalar(pf.base().inv(&pf.base().from_int(3)).unwrap());
        assert_eq!(glue_regular(&[(c, h.clone())], &x).unwrap(), r.mul(&h, &inv3));

        assert_eq!(glue_regular(&[(u.clone(), r.one())], &x), Err(Error::NotCovering));
        let bad = vec![(u.clone(), r.one()), (one_minus_u, r.one())];
        assert_eq!(glue_regular(&bad, &x), Err(Error::IncompatiblePatches(0, 1)));
    }

    #[test]
    fn gluing_over_fun_with_normalisation() {
        let r = ring(&fun(3, 1, 2), &["y"]);
        let (y, sy) = (r.var(0, E), r.var(0, S));
        // X = V(y·s(y) - 1): y is invertible on X with inverse s(y).
        let x = DiffIdeal::new(&r, vec![r.sub(&r.mul(&y, &sy), &r.one())]).unwrap();
        // The fraction 1/y on the whole of X, given with a non-constant denominator.
        let d = glue_regular(&[(y.clone(), r.one())], &x).unwrap();
        assert!(x.contains(&r.sub(&r.mul(&d, &y), &r.one())));
        assert!(x.contains(&r.sub(&d, &sy)));
    }

    #[test]
    fn pseudoregular_example() {
        let r = ring(&fun(5, 1, 2), &["y"]);
        let pf = r.pseudofield().clone();
        let g = r.constant(el(&r, &[2, 0]));
        let h = r.constant(el(&r, &[1, 1]));
        let x = [el(&r, &[0, 0])];
        let (h0, g0) = pseudoregular_to_regular(&r, &h, &g, &x).unwrap();
        assert_eq!(g0, r.constant(el(&r, &[2, 2])));
        assert_eq!(h0, r.constant(el(&r, &[1, 0])));
        assert!(r.is_sigma_constant(&g0));
        let g0v = r.eval_poly(&g0, &x).unwrap();
        let ratio = pf.mul(&r.eval_poly(&h0, &x).unwrap(), &pf.pseudo_inverse(&g0v).astar);
        assert_eq!(ratio, el(&r, &[3, 0]));
        assert_eq!(pseudoregular_to_regular(&r, &h, &r.zero(), &x), Err(Error::ZeroDenominator));
    }

    /// `h0(y)/g0(y) = e·h(y)·g(y)*` wherever `g0(y)` is invertible, for all
    /// points of `Fun(GF(3))` over `Z/2`.
    #[test]
    fn pseudoregular_identity_everywhere() {
        let r = ring(&fun(3, 1, 2), &["y"]);
        let pf = r.pseudofield().clone();
        let (y, sy) = (r.var(0, E), r.var(0, S));
        let g = r.add(&r.mul(&r.constant(el(&r, &[1, 2])), &y), &sy);
        let h = r.add(&r.pow(&y, 2), &r.one());
        let pts = pf.elements(100).unwrap();
        for x in &pts {
            let x = core::slice::from_ref(x);
            if pf.is_zero(&r.eval_poly(&g, x).unwrap()) {
                continue;
            }
            let e = pf.pseudo_inverse(&r.eval_poly(&g, x).unwrap()).e;
            let (h0, g0) = pseudoregular_to_regular(&r, &h, &g, x).unwrap();
            assert!(r.is_sigma_constant(&g0));
            for yv in &pts {
                let yv = core::slice::from_ref(yv);
                let g0y = r.eval_poly(&g0, yv).unwrap();
                if !pf.is_unit(&g0y) {
                    continue;
                }
                let lhs = pf.mul(&r.eval_poly(&h0, yv).unwrap(), &pf.pseudo_inverse(&g0y).astar);
                let gy = r.eval_poly(&g, yv).unwrap();
                let rhs = pf.mul(&e, &pf.mul(&r.eval_poly(&h, yv).unwrap(), &pf.pseudo_inverse(&gy).astar));
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn solutions_match_adjoint_zeros() {
        let r = ring(&fun(3, 1, 2), &["y1", "y2"]);
        let ar = adjoint_ring(&r);
        let (y1, y2) = (r.var(0, E), r.var(1, S));
        let gens = vec![r.sub(&r.mul(&y1, &y2), &r.constant(el(&r, &[1, 2]))), r.add(&r.pow(&y1, 2), &r.var(0, S))];
        let (_, pts) = solve_points(&r, &gens, 1).unwrap();
        let adj = adjoint::to_adjoint(&r, &gens).unwrap();
        let k = ar.field().clone();
        let mut oracle = Vec::new();
        let elems = k.elements();
        for code in 0..81u64 {
            let mut c = code;
            let p: Vec<_> = (0..4)
                .map(|_| {
                    let v = elems[(c % 3) as usize].clone();
                    c /= 3;
                    v
                })
                .collect();
            if adj.basis().iter().all(|g| k.is_zero(&ar.eval(g, &p))) {
                oracle.push(adjoint::untransfer_point(&r, &adjoint::AdjPoint(p)).unwrap());
            }
        }
        oracle.sort();
        assert_eq!(pts, oracle);
    }
}
