//! The adjoint correspondence between difference ideals of `Fun(K){y}` and
//! ordinary ideals of `K[y_i@τ]`, the matching bijection on points, and the
//! Taylor homomorphism of a pseudofield into `Fun(K)`.
//!
//! The adjoint variable `y_i@τ` stands for `γ_e(τ(y_i))`. A point
//! `a ∈ Fun(K)^n` corresponds to the adjoint point with entry
//! `(i, τ) = a_i(τ⁻¹)`.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::coeff::FieldElem;
use crate::diffideal::DiffIdeal;
use crate::diffpoly::{DiffPoly, DiffRing};
use crate::error::{Error, Result};
use crate::group::GroupElem;
use crate::groebner::{Ideal, Poly, PolyRing};
use crate::monomial::MonomialOrder;
use crate::pseudofield::{Pseudofield, PseudofieldElem};

/// `K[y_i@τ]`, variables in the flat order of the difference ring, grevlex.
pub fn adjoint_ring(r: &DiffRing) -> PolyRing {
    let g = r.group();
    let vars = (0..r.nflat())
        .map(|k| {
            let (i, t) = r.unflatten(k);
            format!("{}@{}", r.var_names()[i], g.symbol(t))
        })
        .collect();
    PolyRing::new(r.pseudofield().base().clone(), vars, MonomialOrder::Grevlex)
}

pub(crate) fn require_fun(r: &DiffRing) -> Result<()> {
    if r.pseudofield().is_fun() {
        Ok(())
    } else {
        Err(Error::NotFun)
    }
}

/// The factor of `f` at `ρ`: coefficients `c ↦ c(ρ)`, `τ(y_i) ↦ y_i@τ`.
pub fn component(r: &DiffRing, ar: &PolyRing, f: &DiffPoly, rho: GroupElem) -> Result<Poly> {
    require_fun(r)?;
    Ok(ar.from_terms(f.terms().map(|(m, c)| (m.clone(), c.coords()[rho.index()].clone())).collect()))
}

/// Generators `component_e(σ·f)` of the adjoint of `[gens]`.
pub fn adjoint_generators(r: &DiffRing, ar: &PolyRing, gens: &[DiffPoly]) -> Result<Vec<Poly>> {
    require_fun(r)?;
    let mut out = Vec::new();
    for f in gens {
        for s in r.group().elements() {
            let p = component(r, ar, &r.act_poly(s, f), GroupElem::IDENTITY)?;
            if !p.is_zero() && !out.contains(&p) {
                out.push(p);
            }
        }
    }
    Ok(out)
}

/// The adjoint ideal `e·[gens]` in `K[y_i@τ]`.
pub fn to_adjoint(r: &DiffRing, gens: &[DiffPoly]) -> Result<Ideal> {
    let ar = adjoint_ring(r);
    Ok(Ideal::new(&ar, adjoint_generators(r, &ar, gens)?))
}

/// `y_i@τ ↦ τ(y_i)` with scalar coefficients.
pub fn subst(r: &DiffRing, g: &Poly) -> DiffPoly {
    r.from_terms(g.terms().iter().map(|(m, c)| (m.clone(), r.pseudofield().constant(c.clone()))))
}

/// `e_id · subst(g)`.
pub fn lift_component(r: &DiffRing, g: &Poly) -> DiffPoly {
    r.scale(&subst(r, g), &r.pseudofield().indicator(GroupElem::IDENTITY.index()))
}

/// The difference ideal with adjoint `j`.
pub fn from_adjoint(r: &DiffRing, j: &Ideal) -> Result<DiffIdeal> {
    DiffIdeal::from_adjoint(r, j)
}

/// A point of `K^{n·|Σ|}` indexed like the adjoint variables.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AdjPoint(pub Vec<FieldElem>);

/// `a ↦ (a_i(τ⁻¹))_{i,τ}`.
pub fn transfer_point(r: &DiffRing, a: &[PseudofieldElem]) -> Result<AdjPoint> {
    require_fun(r)?;
    if a.len() != r.n() {
        return Err(Error::InvalidArgument(format!("point has {} coordinates, expected {}", a.len(), r.n())));
    }
    let g = r.group();
    Ok(AdjPoint(
        (0..r.nflat())
            .map(|k| {
                let (i, t) = r.unflatten(k);
                a[i].coords()[g.inverse(t).index()].clone()
            })
            .collect(),
    ))
}

/// Inverse of [`transfer_point`].
pub fn untransfer_point(r: &DiffRing, p: &AdjPoint) -> Result<Vec<PseudofieldElem>> {
    require_fun(r)?;
    if p.0.len() != r.nflat() {
        return Err(Error::InvalidArgument(format!("adjoint point has {} entries, expected {}", p.0.len(), r.nflat())));
    }
    let g = r.group();
    Ok((0..r.n())
        .map(|i| {
            PseudofieldElem::from_coords(
                g.elements().map(|t| p.0[r.flat_index(i, g.inverse(t))].clone()).collect(),
            )
        })
        .collect())
}

/// `Φ_σ(a)(τ) = φ(στ⁻¹·a)` for `φ = frob^j ∘ (projection to factor i)`.
///
/// Stored as `rows[τ] = (factor, exponent)` with `Φ_σ(a)(τ) = frob^{exponent}(a_factor)`.
#[derive(Debug, Clone)]
pub struct TaylorHom {
    pub sigma: GroupElem,
    pub factor: usize,
    pub frob: u32,
    pub rows: Vec<(usize, u32)>,
    source: Pseudofield,
    target: Pseudofield,
}

impl TaylorHom {
    pub fn new(source: &Pseudofield, factor: usize, frob: u32, sigma: GroupElem) -> Result<Self> {
        if factor >= source.m() {
            return Err(Error::InvalidArgument(format!("factor {factor} out of range 0..{}", source.m())));
        }
        let g = source.group();
        let sigma = g.check(sigma)?;
        let degree = source.base().degree().max(1);
        let rows = g
            .elements()
            .map(|t| {
                let h = g.mul(sigma, g.inverse(t));
                // (h·a)_i = frob^{autos(h)_i}(a_{perm(h)⁻¹(i)})
                let src = source.perm(g.inverse(h))[factor];
                (src, (source.autos(h)[factor] + frob) % degree)
            })
            .collect();
        Ok(TaylorHom {
            sigma,
            factor,
            frob,
            rows,
            source: source.clone(),
            target: Pseudofield::fun_of(source.base(), g),
        })
    }

    pub fn source(&self) -> &Pseudofield {
        &self.source
    }

    pub fn target(&self) -> &Pseudofield {
        &self.target
    }

    pub fn apply(&self, a: &PseudofieldElem) -> PseudofieldElem {
        let k = self.source.base();
        PseudofieldElem::from_coords(self.rows.iter().map(|&(f, j)| k.frobenius(&a.coords()[f], j)).collect())
    }

    /// `φ(a)`.
    pub fn phi(&self, a: &PseudofieldElem) -> FieldElem {
        self.source.base().frobenius(&a.coords()[self.factor], self.frob)
    }

    /// Checks `γ_σ ∘ Φ_σ = φ` and `Φ_σ(ρa) = ρΦ_σ(a)` on the additive
    /// generators `c·e_k` (`c` running over `1` and the field generator).
    pub fn verify(&self) -> bool {
        let pf = &self.source;
        let k = pf.base();
        let mut scalars = vec![k.one()];
        scalars.extend(k.generator());
        let mut probes = Vec::new();
        for f in 0..pf.m() {
            for c in &scalars {
                probes.push(pf.mul(&pf.indicator(f), &pf.constant(c.clone())));
            }
        }
        probes.iter().all(|a| {
            let img = self.apply(a);
            img.coords()[self.sigma.index()] == self.phi(a)
                && pf.group().elements().all(|r| self.apply(&pf.sigma_act(r, a)) == self.target.sigma_act(r, &img))
        })
    }
}
