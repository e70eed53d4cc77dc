//! Difference ideals of `Fun(K){y}`, represented through their adjoint
//! ideals, and ordinary ideals of `Fun(K){y}` as tuples of components.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::adjoint::{self, adjoint_ring, component, lift_component, require_fun};
use crate::diffpoly::{DiffPoly, DiffRing};
use crate::error::{Error, Result};
use crate::group::GroupElem;
use crate::groebner::{Ideal, Poly, PolyRing};

/// `{σ·f : σ ∈ Σ, f ∈ E}` without repetitions, in generator-major order.
pub fn closure_gens(r: &DiffRing, gens: &[DiffPoly]) -> Vec<DiffPoly> {
    let mut out: Vec<DiffPoly> = Vec::new();
    for f in gens {
        for s in r.group().elements() {
            let g = r.act_poly(s, f);
            if !out.contains(&g) {
                out.push(g);
            }
        }
    }
    out
}

/// The products `σ(s)·τ(t)` whose basic open sets cover `X_s ∩ X_t`.
pub fn open_basis_intersection(r: &DiffRing, s: &DiffPoly, t: &DiffPoly) -> Vec<DiffPoly> {
    let mut out: Vec<DiffPoly> = Vec::new();
    for a in r.group().elements() {
        for b in r.group().elements() {
            let p = r.mul(&r.act_poly(a, s), &r.act_poly(b, t));
            if !out.contains(&p) {
                out.push(p);
            }
        }
    }
    out
}

/// The difference ideal `[gens]` of `Fun(K){y}`.
///
/// Equality is equality of adjoint ideals, which the reduced Gröbner basis
/// decides.
#[derive(Debug, Clone)]
pub struct DiffIdeal {
    ring: DiffRing,
    gens: Vec<DiffPoly>,
    adjoint: Ideal,
}

impl PartialEq for DiffIdeal {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.adjoint == other.adjoint
    }
}

impl Eq for DiffIdeal {}

impl DiffIdeal {
    pub fn new(r: &DiffRing, gens: Vec<DiffPoly>) -> Result<Self> {
        let adjoint = adjoint::to_adjoint(r, &gens)?;
        Ok(DiffIdeal { ring: r.clone(), gens, adjoint })
    }

    /// The difference ideal generated by `e_id·subst(g)` for `g` in the basis of `j`.
    pub fn from_adjoint(r: &DiffRing, j: &Ideal) -> Result<Self> {
        require_fun(r)?;
        let ar = adjoint_ring(r);
        if *j.ring() != ar {
            return Err(Error::InvalidArgument(format!(
                "adjoint ideal lives in K[{}], expected K[{}]",
                j.ring().var_names().join(", "),
                ar.var_names().join(", ")
            )));
        }
        let gens = j.basis().iter().map(|g| lift_component(r, g)).collect();
        Ok(DiffIdeal { ring: r.clone(), gens, adjoint: j.clone() })
    }

    pub fn zero(r: &DiffRing) -> Result<Self> {
        Self::new(r, Vec::new())
    }

    pub fn unit(r: &DiffRing) -> Result<Self> {
        Self::new(r, alloc::vec![r.one()])
    }

    pub fn ring(&self) -> &DiffRing {
        &self.ring
    }

    pub fn generators(&self) -> &[DiffPoly] {
        &self.gens
    }

    pub fn adjoint(&self) -> &Ideal {
        &self.adjoint
    }

    pub fn is_unit(&self) -> bool {
        self.adjoint.is_unit()
    }

    pub fn is_zero(&self) -> bool {
        self.adjoint.is_zero()
    }

    /// Krull dimension, read off the adjoint ideal.
    pub fn dimension(&self) -> i64 {
        self.adjoint.krull_dimension()
    }

    fn adjoint_ring(&self) -> &PolyRing {
        self.adjoint.ring()
    }

    /// The normalised component `component_e(ρ⁻¹·f)` for every `ρ`.
    fn normalised_components(&self, f: &DiffPoly) -> Vec<Poly> {
        let r = &self.ring;
        let g = r.group();
        g.elements()
            .map(|rho| component(r, self.adjoint_ring(), &r.act_poly(g.inverse(rho), f), GroupElem::IDENTITY).unwrap())
            .collect()
    }

    pub fn contains(&self, f: &DiffPoly) -> bool {
        self.normalised_components(f).iter().all(|c| self.adjoint.contains(c))
    }

    pub fn contains_ideal(&self, other: &DiffIdeal) -> bool {
        self.adjoint.contains_ideal(&other.adjoint)
    }

    /// Canonical representative of `f` modulo the ideal.
    pub fn normal_form(&self, f: &DiffPoly) -> DiffPoly {
        let r = &self.ring;
        let comps = self.normalised_components(f);
        r.group().elements().zip(comps).fold(r.zero(), |acc, (rho, c)| {
            let lifted = lift_component(r, &self.adjoint.normal_form(&c));
            r.add(&acc, &r.act_poly(rho, &lifted))
        })
    }

    pub fn sum(&self, other: &DiffIdeal) -> DiffIdeal {
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        DiffIdeal { ring: self.ring.clone(), gens, adjoint: self.adjoint.sum(&other.adjoint) }
    }

    pub fn intersect(&self, other: &DiffIdeal) -> DiffIdeal {
        Self::from_adjoint(&self.ring, &self.adjoint.intersect(&other.adjoint)).expect("same Fun ring")
    }

    /// The ideal generated by products of elements of the two ideals.
    pub fn product(&self, other: &DiffIdeal) -> DiffIdeal {
        let r = &self.ring;
        let a = closure_gens(r, &self.gens);
        let b = closure_gens(r, &other.gens);
        let gens = a.iter().flat_map(|f| b.iter().map(move |g| r.mul(f, g))).collect();
        Self::new(r, gens).expect("same Fun ring")
    }

    /// `{E} = r([E])` for zero-dimensional adjoints.
    pub fn radical(&self) -> Result<DiffIdeal> {
        Self::from_adjoint(&self.ring, &self.adjoint.zero_dim_radical()?)
    }

    /// Whether `f` lies in the radical difference ideal `{E}` (any dimension).
    pub fn radical_contains(&self, f: &DiffPoly) -> bool {
        self.normalised_components(f).iter().all(|c| self.adjoint.radical_contains(c))
    }

    /// Pseudoprimality, decided by primality of the adjoint ideal.
    pub fn is_pseudoprime(&self) -> Result<bool> {
        let dim = self.dimension();
        if dim > 0 {
            return Err(Error::Unsupported(format!(
                "pseudoprimality of a difference ideal of dimension {dim} needs its minimal primes; \
                 use is_pseudoprime_given"
            )));
        }
        self.adjoint.is_prime_zero_dim()
    }

    /// Pseudoprimality given the minimal primes of the adjoint ideal: the
    /// adjoint must be proper and equal to its only minimal prime.
    pub fn is_pseudoprime_given(&self, minimal_primes: &[Ideal]) -> bool {
        !self.is_unit() && minimal_primes.len() == 1 && minimal_primes[0] == self.adjoint
    }

    /// Pseudomaximality: the adjoint quotient is a field. Positive-dimensional
    /// ideals are never pseudomaximal.
    pub fn is_pseudomaximal(&self) -> Result<bool> {
        if self.dimension() > 0 {
            return Ok(false);
        }
        self.adjoint.is_prime_zero_dim()
    }

    /// The ideal as a tuple of (equal) components.
    pub fn components(&self) -> ComponentIdeal {
        ComponentIdeal {
            ring: self.ring.clone(),
            components: self.ring.group().elements().map(|_| self.adjoint.clone()).collect(),
        }
    }

    pub fn format_generators(&self) -> Vec<String> {
        self.gens.iter().map(|g| self.ring.format(g)).collect()
    }
}

/// An ordinary ideal of `Fun(K){y} ≅ ∏_ρ K[y_i@τ]`, one ideal per factor.
///
/// Factor `ρ` is recorded in normalised coordinates, `f ↦ component_e(ρ⁻¹·f)`,
/// so that `Σ` acts by translating the tuple and difference ideals are the
/// tuples with all entries equal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentIdeal {
    ring: DiffRing,
    components: Vec<Ideal>,
}

impl ComponentIdeal {
    /// The ordinary ideal generated by `gens` (no `Σ`-closure).
    pub fn from_generators(r: &DiffRing, gens: &[DiffPoly]) -> Result<Self> {
        require_fun(r)?;
        let ar = adjoint_ring(r);
        let g = r.group();
        let components = g
            .elements()
            .map(|rho| {
                let polys = gens
                    .iter()
                    .map(|f| component(r, &ar, &r.act_poly(g.inverse(rho), f), GroupElem::IDENTITY).unwrap())
                    .collect();
                Ideal::new(&ar, polys)
            })
            .collect();
        Ok(ComponentIdeal { ring: r.clone(), components })
    }

    pub fn from_components(r: &DiffRing, components: Vec<Ideal>) -> Result<Self> {
        require_fun(r)?;
        let ar = adjoint_ring(r);
        if components.len() != r.group().order() {
            return Err(Error::InvalidArgument(format!(
                "{} components given, the group has {} elements",
                components.len(),
                r.group().order()
            )));
        }
        if components.iter().any(|c| *c.ring() != ar) {
            return Err(Error::InvalidArgument("components must live in the adjoint ring".into()));
        }
        Ok(ComponentIdeal { ring: r.clone(), components })
    }

    pub fn ring(&self) -> &DiffRing {
        &self.ring
    }

    pub fn components(&self) -> &[Ideal] {
        &self.components
    }

    /// `𝔞^σ`: the component at `τ` moves to `στ`.
    pub fn sigma_image(&self, s: GroupElem) -> ComponentIdeal {
        let g = self.ring.group();
        let mut out = self.components.clone();
        for t in g.elements() {
            out[g.mul(s, t).index()] = self.components[t.index()].clone();
        }
        ComponentIdeal { ring: self.ring.clone(), components: out }
    }

    /// `𝔞_Σ = ⋂_σ 𝔞^σ`, the largest difference ideal inside `𝔞`.
    pub fn underscore_sigma(&self) -> DiffIdeal {
        let meet = self.components.iter().skip(1).fold(self.components[0].clone(), |acc, c| acc.intersect(c));
        DiffIdeal::from_adjoint(&self.ring, &meet).expect("checked at construction")
    }

    pub fn intersect(&self, other: &ComponentIdeal) -> ComponentIdeal {
        ComponentIdeal {
            ring: self.ring.clone(),
            components: self.components.iter().zip(&other.components).map(|(a, b)| a.intersect(b)).collect(),
        }
    }

    pub fn sum(&self, other: &ComponentIdeal) -> ComponentIdeal {
        ComponentIdeal {
            ring: self.ring.clone(),
            components: self.components.iter().zip(&other.components).map(|(a, b)| a.sum(b)).collect(),
        }
    }

    pub fn contains(&self, f: &DiffPoly) -> bool {
        let r = &self.ring;
        let g = r.group();
        let ar = self.components[0].ring();
        g.elements().all(|rho| {
            let c = component(r, ar, &r.act_poly(g.inverse(rho), f), GroupElem::IDENTITY).unwrap();
            self.components[rho.index()].contains(&c)
        })
    }

    pub fn contains_ideal(&self, other: &ComponentIdeal) -> bool {
        self.components.iter().zip(&other.components).all(|(a, b)| a.contains_ideal(b))
    }

    /// Whether the ideal is stable under `Σ`.
    pub fn is_difference(&self) -> bool {
        self.components.windows(2).all(|w| w[0] == w[1])
    }

    pub fn is_unit(&self) -> bool {
        self.components.iter().all(Ideal::is_unit)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::Field;
    use crate::group::Group;
    use crate::pseudofield::{Pseudofield, PseudofieldElem};
    use alloc::vec;
    use proptest::prelude::*;

    const E: GroupElem = GroupElem(0);
    const S: GroupElem = GroupElem(1);

    fn z2(p: u64, names: &[&str]) -> DiffRing {
        let pf = Pseudofield::fun_of(&Field::prime(p).unwrap(), &Group::cyclic(2).unwrap());
        DiffRing::with_names(&pf, names.iter().map(|s| String::from(*s)).collect()).unwrap()
    }

    fn el(r: &DiffRing, v: &[u64]) -> PseudofieldElem {
        PseudofieldElem::from_coords(v.iter().map(|&x| r.pseudofield().base().element(x).unwrap()).collect())
    }

    fn example(r: &DiffRing) -> DiffIdeal {
        let (y, sy) = (r.var(0, E), r.var(0, S));
        DiffIdeal::new(r, vec![r.mul(&y, &sy), r.sub(&r.add(&y, &sy), &r.one())]).unwrap()
    }

    #[test]
    fn closures() {
        let r = z2(3, &["y"]);
        let (y, sy) = (r.var(0, E), r.var(0, S));
        let sym = r.sub(&r.add(&y, &sy), &r.one());
        assert_eq!(closure_gens(&r, core::slice::from_ref(&sym)), vec![sym]);
        let sq = r.pow(&y, 2);
        assert_eq!(closure_gens(&r, core::slice::from_ref(&sq)), vec![sq, r.pow(&sy, 2)]);
        assert!(closure_gens(&r, &[]).is_empty());
    }

    #[test]
    fn basic_open_products() {
        let r = z2(3, &["y"]);
        let (y, sy) = (r.var(0, E), r.var(0, S));
        assert_eq!(open_basis_intersection(&r, &r.one(), &r.one()), vec![r.one()]);
        let out = open_basis_intersection(&r, &y, &sy);
        assert_eq!(out, vec![r.mul(&y, &sy), r.pow(&y, 2), r.pow(&sy, 2)]);
        let f = r.add(&y, &r.one());
        assert_eq!(open_basis_intersection(&r, &f, &r.one()), closure_gens(&r, core::slice::from_ref(&f)));
    }

    #[test]
    fn sigma_images_and_underscore() {
        // n = 0: the maximal ideal m_e = ker γ_e of Fun(K).
        let pf = Pseudofield::fun_of(&Field::prime(3).unwrap(), &Group::cyclic(2).unwrap());
        let r0 = DiffRing::new(&pf, 0);
        let m_e = ComponentIdeal::from_generators(&r0, &[r0.constant(el(&r0, &[0, 1]))]).unwrap();
        let m_s = ComponentIdeal::from_generators(&r0, &[r0.constant(el(&r0, &[1, 0]))]).unwrap();
        assert_eq!(m_e.sigma_image(S), m_s);
        assert!(m_e.underscore_sigma().is_zero());

        let r = z2(3, &["x"]);
        let ar = adjoint_ring(&r);
        let a = ComponentIdeal::from_components(&r, vec![Ideal::new(&ar, vec![ar.var(0)]), Ideal::unit(&ar)]).unwrap();
        let b = a.sigma_image(S);
        assert!(b.components()[0].is_unit());
        assert_eq!(b.components()[1], a.components()[0]);
        assert_eq!(a.sigma_image(E), a);
        let under = a.underscore_sigma();
        assert_eq!(under.adjoint(), &Ideal::new(&ar, vec![ar.var(0)]));
        assert!(under.components().is_difference());
        let d = example(&r).components();
        assert_eq!(d.underscore_sigma(), example(&r));
    }

    #[test]
    fn radicals() {
        let r = z2(3, &["x"]);
        let y = r.var(0, E);
        let sq = DiffIdeal::new(&r, vec![r.pow(&y, 2)]).unwrap();
        assert_eq!(sq.radical().unwrap(), DiffIdeal::new(&r, vec![y.clone()]).unwrap());
        let ex = example(&r);
        assert_eq!(ex.radical().unwrap(), ex);
        assert!(DiffIdeal::unit(&r).unwrap().radical().unwrap().is_unit());
        let line = DiffIdeal::new(&r, vec![r.sub(&y, &r.var(0, S))]).unwrap();
        assert!(matches!(line.radical(), Err(Error::PositiveDimension { .. })));
        assert!(line.radical_contains(&r.pow(&r.sub(&y, &r.var(0, S)), 3)));
    }

    #[test]
    fn primality() {
        let r = z2(2, &["y"]);
        let y = r.var(0, E);
        assert!(!example(&r).is_pseudoprime().unwrap());
        assert!(DiffIdeal::new(&r, vec![y.clone()]).unwrap().is_pseudoprime().unwrap());
        assert!(!DiffIdeal::unit(&r).unwrap().is_pseudoprime().unwrap());
        let pt = DiffIdeal::new(&r, vec![r.sub(&y, &r.constant(el(&r, &[1, 0])))]).unwrap();
        assert!(pt.is_pseudomaximal().unwrap());
        assert!(!example(&r).is_pseudomaximal().unwrap());
        assert!(!DiffIdeal::zero(&r).unwrap().is_pseudomaximal().unwrap());
        assert!(matches!(DiffIdeal::zero(&r).unwrap().is_pseudoprime(), Err(Error::Unsupported(_))));
        let zero = DiffIdeal::zero(&r).unwrap();
        assert!(zero.is_pseudoprime_given(&[zero.adjoint().clone()]));
    }

    #[test]
    fn membership_and_normal_forms() {
        let r = z2(2, &["y"]);
        let ex = example(&r);
        let (y, sy) = (r.var(0, E), r.var(0, S));
        assert!(ex.contains(&r.mul(&y, &sy)));
        assert!(ex.contains(&r.sub(&r.pow(&y, 2), &y)));
        assert!(!ex.contains(&y));
        let f = r.add(&r.pow(&y, 3), &r.mul(&r.constant(el(&r, &[1, 0])), &sy));
        let nf = ex.normal_form(&f);
        assert!(ex.contains(&r.sub(&f, &nf)));
        assert_eq!(ex.normal_form(&nf), nf);
        assert!(ex.normal_form(&r.mul(&y, &sy)).is_zero());
    }

    #[test]
    fn lattice_operations() {
        let r = z2(3, &["y"]);
        let y = r.var(0, E);
        let a = DiffIdeal::new(&r, vec![y.clone()]).unwrap();
        let b = DiffIdeal::new(&r, vec![r.sub(&y, &r.one())]).unwrap();
        let meet = a.intersect(&b);
        assert!(meet.contains(&r.mul(&y, &r.sub(&y, &r.one()))));
        assert!(!meet.contains(&y));
        assert!(a.sum(&b).is_unit());
        assert_eq!(a.product(&b).radical().unwrap(), meet);
    }

    fn arb_monomial_ideal() -> impl Strategy<Value = Vec<Vec<Vec<u32>>>> {
        prop::collection::vec(prop::collection::vec(prop::collection::vec(0u32..3, 2), 1..3), 2)
    }

    fn build(r: &DiffRing, comps: &[Vec<Vec<u32>>]) -> ComponentIdeal {
        let ar = adjoint_ring(r);
        let ideals = comps
            .iter()
            .map(|gens| {
                Ideal::new(&ar, gens.iter().map(|e| ar.term(crate::Monomial(e.clone()), ar.field().one())).collect())
            })
            .collect();
        ComponentIdeal::from_components(r, ideals).unwrap()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        /// `(𝔞 ∩ 𝔟)_Σ = 𝔞_Σ ∩ 𝔟_Σ`, and `𝔞_Σ` is a difference ideal inside `𝔞`.
        #[test]
        fn underscore_preserves_intersections(a in arb_monomial_ideal(), b in arb_monomial_ideal()) {
            let r = z2(3, &["y"]);
            let (ia, ib) = (build(&r, &a), build(&r, &b));
            let lhs = ia.intersect(&ib).underscore_sigma();
            let rhs = ia.underscore_sigma().intersect(&ib.underscore_sigma());
            prop_assert_eq!(&lhs, &rhs);
            let under = ia.underscore_sigma();
            prop_assert!(ia.contains_ideal(&under.components()));
            for s in r.group().elements() {
                prop_assert!(ia.sigma_image(s).contains_ideal(&under.components()));
            }
            // Largest: any generator of 𝔞 outside 𝔞_Σ breaks Σ-stability.
            let extra: Vec<DiffPoly> = ia
                .components()[0]
                .basis()
                .iter()
                .map(|g| adjoint::lift_component(&r, g))
                .filter(|f| !under.contains(f))
                .collect();
            for f in extra {
                let mut gens = under.generators().to_vec();
                gens.push(f);
                prop_assert!(!ComponentIdeal::from_generators(&r, &gens).unwrap().is_difference());
            }
        }
    }
}
