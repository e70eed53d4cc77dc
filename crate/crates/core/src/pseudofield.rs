//! Pseudofields: finite products `K^m` with a transitive action of `Σ`
//! permuting the factors and twisting them by Frobenius powers.
//!
//! `σ` acts by `(σa)_i = frob^{j}(a_{π⁻¹(i)})` where `π = perm(σ)` and
//! `j = autos(σ)_i`. `Fun(K)` is the case `m = |Σ|`, `π` = left translation
//! and trivial twists, so that `(σa)(τ) = a(σ⁻¹τ)`.

use alloc::collections::VecDeque;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::coeff::{Field, FieldElem, FieldEmbedding};
use crate::error::{Error, Result};
use crate::group::{Group, GroupElem};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PseudofieldElem(Vec<FieldElem>);

impl PseudofieldElem {
    pub fn from_coords(coords: Vec<FieldElem>) -> Self {
        PseudofieldElem(coords)
    }

    pub fn coords(&self) -> &[FieldElem] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<FieldElem> {
        self.0
    }
}

/// `a = e·a`, `a* = e·a*`, `e = a·a*`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PseudoInversePair {
    pub e: PseudofieldElem,
    pub astar: PseudofieldElem,
}

/// Factor permutation (images of `0..m`) and Frobenius exponents per factor.
type Action = (Vec<usize>, Vec<u32>);

#[derive(Debug, PartialEq, Eq)]
struct Inner {
    base: Field,
    group: Group,
    m: usize,
    actions: Vec<Action>,
    inverse_perms: Vec<Vec<usize>>,
    fun: bool,
}

#[derive(Debug, Clone)]
pub struct Pseudofield(Arc<Inner>);

impl PartialEq for Pseudofield {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Eq for Pseudofield {}

/// `τ∘σ` on factor data: `perm = ρπ`, `autos_i = k_i + j_{ρ⁻¹(i)}`.
fn compose(tau: &Action, sigma: &Action, degree: u32) -> Action {
    let m = tau.0.len();
    let mut rho_inv = vec![0; m];
    for (i, &r) in tau.0.iter().enumerate() {
        rho_inv[r] = i;
    }
    let perm = (0..m).map(|i| tau.0[sigma.0[i]]).collect();
    let autos = (0..m).map(|i| (tau.1[i] + sigma.1[rho_inv[i]]) % degree).collect();
    (perm, autos)
}

impl Pseudofield {
    /// `Fun(K)` for the group `Σ`: functions `Σ → K`, coordinates indexed by `Σ`.
    pub fn fun_of(base: &Field, group: &Group) -> Self {
        let n = group.order();
        let actions = group
            .elements()
            .map(|s| (group.elements().map(|t| group.mul(s, t).index()).collect(), vec![0; n]))
            .collect();
        Self::assemble(base.clone(), group.clone(), n, actions)
    }

    /// A product pseudofield `K^m` from the action of a generating set.
    ///
    /// Each generator comes with the images of the factor indices under its
    /// permutation and one Frobenius exponent per factor. The action is
    /// extended to the whole group and validated: it must be a homomorphism
    /// and transitive on the factors.
    pub fn product(base: &Field, group: &Group, m: usize, generators: &[(GroupElem, Vec<usize>, Vec<u32>)]) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidPseudofield("a pseudofield needs at least one factor".into()));
        }
        let degree = base.degree().max(1);
        let mut gens: Vec<(GroupElem, Action)> = Vec::new();
        for (g, perm, autos) in generators {
            let g = group.check(*g)?;
            if perm.len() != m || autos.len() != m {
                return Err(Error::InvalidPseudofield(format!(
                    "action of {} must list {m} factor images and {m} automorphism exponents",
                    group.name(g)
                )));
            }
            let mut seen = vec![false; m];
            for &p in perm {
                if p >= m || core::mem::replace(&mut seen[p], true) {
                    return Err(Error::InvalidPseudofield(format!(
                        "action of {} is not a permutation of 0..{m}",
                        group.name(g)
                    )));
                }
            }
            if base.is_rational() && autos.iter().any(|&j| j != 0) {
                return Err(Error::InvalidPseudofield("the rationals have no nontrivial automorphisms".into()));
            }
            gens.push((g, (perm.clone(), autos.iter().map(|j| j % degree).collect())));
        }
        let identity: Action = ((0..m).collect(), vec![0; m]);
        let mut actions: Vec<Option<Action>> = vec![None; group.order()];
        actions[0] = Some(identity);
        let mut queue = VecDeque::from([GroupElem::IDENTITY]);
        while let Some(s) = queue.pop_front() {
            for (g, ga) in &gens {
                let gs = group.mul(*g, s);
                let data = compose(ga, actions[s.index()].as_ref().unwrap(), degree);
                match &actions[gs.index()] {
                    Some(existing) if *existing != data => {
                        return Err(Error::NotHomomorphism {
                            sigma: group.name(*g).into(),
                            tau: group.name(s).into(),
                        })
                    }
                    Some(_) => {}
                    None => {
                        actions[gs.index()] = Some(data);
                        queue.push_back(gs);
                    }
                }
            }
        }
        if let Some(k) = actions.iter().position(Option::is_none) {
            return Err(Error::InvalidPseudofield(format!(
                "the given generators do not reach {}",
                group.name(GroupElem(k))
            )));
        }
        let actions: Vec<Action> = actions.into_iter().map(Option::unwrap).collect();
        for s in group.elements() {
            for t in group.elements() {
                let st = group.mul(s, t);
                if compose(&actions[s.index()], &actions[t.index()], degree) != actions[st.index()] {
                    return Err(Error::NotHomomorphism { sigma: group.name(s).into(), tau: group.name(t).into() });
                }
            }
        }
        let mut orbit = vec![false; m];
        for a in &actions {
            orbit[a.0[0]] = true;
        }
        if orbit.iter().any(|&x| !x) {
            return Err(Error::NotTransitive);
        }
        Ok(Self::assemble(base.clone(), group.clone(), m, actions))
    }

    fn assemble(base: Field, group: Group, m: usize, actions: Vec<Action>) -> Self {
        let inverse_perms = actions
            .iter()
            .map(|(p, _)| {
                let mut inv = vec![0; m];
                for (i, &x) in p.iter().enumerate() {
                    inv[x] = i;
                }
                inv
            })
            .collect();
        let fun = m == group.order()
            && group.elements().all(|s| {
                let (p, j) = &actions[s.index()];
                j.iter().all(|&x| x == 0) && group.elements().all(|t| p[t.index()] == group.mul(s, t).index())
            });
        Pseudofield(Arc::new(Inner { base, group, m, actions, inverse_perms, fun }))
    }

    pub fn base(&self) -> &Field {
        &self.0.base
    }

    pub fn group(&self) -> &Group {
        &self.0.group
    }

    /// Number of factors.
    pub fn m(&self) -> usize {
        self.0.m
    }

    pub fn is_fun(&self) -> bool {
        self.0.fun
    }

    pub fn perm(&self, s: GroupElem) -> &[usize] {
        &self.0.actions[s.index()].0
    }

    pub fn autos(&self, s: GroupElem) -> &[u32] {
        &self.0.actions[s.index()].1
    }

    /// Validates the length of a coordinate tuple.
    pub fn element(&self, coords: Vec<FieldElem>) -> Result<PseudofieldElem> {
        if coords.len() != self.m() {
            return Err(Error::InvalidArgument(format!(
                "tuple has {} entries, the pseudofield has {} factors",
                coords.len(),
                self.m()
            )));
        }
        Ok(PseudofieldElem(coords))
    }

    pub fn zero(&self) -> PseudofieldElem {
        self.constant(self.base().zero())
    }

    pub fn one(&self) -> PseudofieldElem {
        self.constant(self.base().one())
    }

    /// The diagonal image of a scalar.
    pub fn constant(&self, c: FieldElem) -> PseudofieldElem {
        PseudofieldElem(vec![c; self.m()])
    }

    pub fn from_int(&self, n: i64) -> PseudofieldElem {
        self.constant(self.base().from_int(n))
    }

    /// The primitive idempotent of factor `i`.
    pub fn indicator(&self, i: usize) -> PseudofieldElem {
        let k = self.base();
        PseudofieldElem((0..self.m()).map(|j| if i == j { k.one() } else { k.zero() }).collect())
    }

    fn zip(&self, a: &PseudofieldElem, b: &PseudofieldElem, f: impl Fn(&FieldElem, &FieldElem) -> FieldElem) -> PseudofieldElem {
        PseudofieldElem(a.0.iter().zip(&b.0).map(|(x, y)| f(x, y)).collect())
    }

    pub fn add(&self, a: &PseudofieldElem, b: &PseudofieldElem) -> PseudofieldElem {
        self.zip(a, b, |x, y| self.base().add(x, y))
    }

    pub fn sub(&self, a: &PseudofieldElem, b: &PseudofieldElem) -> PseudofieldElem {
        self.zip(a, b, |x, y| self.base().sub(x, y))
    }

    pub fn mul(&self, a: &PseudofieldElem, b: &PseudofieldElem) -> PseudofieldElem {
        self.zip(a, b, |x, y| self.base().mul(x, y))
    }

    pub fn neg(&self, a: &PseudofieldElem) -> PseudofieldElem {
        PseudofieldElem(a.0.iter().map(|x| self.base().neg(x)).collect())
    }

    pub fn pow(&self, a: &PseudofieldElem, e: u64) -> PseudofieldElem {
        PseudofieldElem(a.0.iter().map(|x| self.base().pow(x, e)).collect())
    }

    pub fn is_zero(&self, a: &PseudofieldElem) -> bool {
        a.0.iter().all(|x| self.base().is_zero(x))
    }

    pub fn is_one(&self, a: &PseudofieldElem) -> bool {
        a.0.iter().all(|x| self.base().is_one(x))
    }

    /// Whether every coordinate is nonzero.
    pub fn is_unit(&self, a: &PseudofieldElem) -> bool {
        a.0.iter().all(|x| !self.base().is_zero(x))
    }

    pub fn sigma_act(&self, s: GroupElem, a: &PseudofieldElem) -> PseudofieldElem {
        let (_, autos) = &self.0.actions[s.index()];
        let inv = &self.0.inverse_perms[s.index()];
        PseudofieldElem((0..self.m()).map(|i| self.base().frobenius(&a.0[inv[i]], autos[i])).collect())
    }

    pub fn is_fixed(&self, a: &PseudofieldElem) -> bool {
        self.group().elements().all(|s| self.sigma_act(s, a) == *a)
    }

    /// `γ_σ(a) = a(σ)` on `Fun(K)`.
    pub fn gamma_eval(&self, s: GroupElem, a: &PseudofieldElem) -> Result<FieldElem> {
        if !self.is_fun() {
            return Err(Error::NotFun);
        }
        Ok(a.0[self.group().check(s)?.index()].clone())
    }

    pub fn pseudo_inverse(&self, a: &PseudofieldElem) -> PseudoInversePair {
        let k = self.base();
        let (e, astar) = a
            .0
            .iter()
            .map(|x| match k.inv(x) {
                Ok(y) => (k.one(), y),
                Err(_) => (k.zero(), k.zero()),
            })
            .unzip();
        PseudoInversePair { e: PseudofieldElem(e), astar: PseudofieldElem(astar) }
    }

    /// All elements, for finite `K` with `|K|^m ≤ cap`.
    pub fn elements(&self, cap: u64) -> Result<Vec<PseudofieldElem>> {
        let k = self.base();
        let q = k.size().ok_or_else(|| Error::Unsupported("cannot enumerate an infinite pseudofield".into()))?;
        let total = (q as u128).checked_pow(self.m() as u32).filter(|&t| t <= cap as u128).ok_or_else(|| {
            Error::EnumerationBound { candidates: format!("{q}^{}", self.m()), cap }
        })?;
        let elems = k.elements();
        Ok((0..total as u64)
            .map(|mut c| {
                PseudofieldElem(
                    (0..self.m())
                        .map(|_| {
                            let x = elems[(c % q) as usize].clone();
                            c /= q;
                            x
                        })
                        .collect(),
                )
            })
            .collect())
    }

    /// Scalars print as themselves, other elements as tuples `(a,b,…)`.
    pub fn format(&self, a: &PseudofieldElem) -> String {
        let k = self.base();
        if a.0.windows(2).all(|w| w[0] == w[1]) {
            return k.format(&a.0[0]);
        }
        let parts: Vec<String> = a.0.iter().map(|x| k.format(x)).collect();
        format!("({})", parts.join(","))
    }

    /// Whether `format(a)` needs parentheses when used as a factor.
    pub fn format_is_compound(&self, a: &PseudofieldElem) -> bool {
        a.0.windows(2).all(|w| w[0] == w[1]) && self.base().format_is_compound(&a.0[0])
    }

    /// The same group data over an extension of `K`; twists must be trivial.
    pub fn base_change(&self, emb: &FieldEmbedding) -> Result<Pseudofield> {
        if emb.is_identity() {
            return Ok(self.clone());
        }
        if self.0.actions.iter().any(|(_, j)| j.iter().any(|&x| x != 0)) {
            return Err(Error::Unsupported("extension of scalars for a pseudofield with Frobenius twists".into()));
        }
        Ok(Self::assemble(emb.target.clone(), self.group().clone(), self.m(), self.0.actions.clone()))
    }

    pub fn map_elem(&self, emb: &FieldEmbedding, a: &PseudofieldElem) -> PseudofieldElem {
        PseudofieldElem(a.0.iter().map(|x| emb.apply(x)).collect())
    }

    /// The Taylor map `Φ(a)(τ) = φ(τ⁻¹·a)` into `Fun(K)`, with `φ` the
    /// projection onto factor `i`.
    pub fn taylor_normalize(&self, i: usize) -> Result<TaylorNormalization> {
        if i >= self.m() {
            return Err(Error::InvalidArgument(format!("factor {i} out of range 0..{}", self.m())));
        }
        let g = self.group();
        let rows = g
            .elements()
            .map(|t| (self.perm(t)[i], self.autos(g.inverse(t))[i]))
            .collect();
        Ok(TaylorNormalization {
            factor: i,
            rows,
            isomorphism: self.m() == g.order(),
            source: self.clone(),
            target: Pseudofield::fun_of(self.base(), g),
        })
    }
}

/// Coordinates of the Taylor map: `Φ(a)(τ) = frob^{j_τ}(a_{f_τ})` for `rows[τ] = (f_τ, j_τ)`.
#[derive(Debug, Clone)]
pub struct TaylorNormalization {
    pub factor: usize,
    pub rows: Vec<(usize, u32)>,
    /// Onto `Fun(K)` exactly when every factor is hit once, i.e. `m = |Σ|`.
    pub isomorphism: bool,
    source: Pseudofield,
    target: Pseudofield,
}

impl TaylorNormalization {
    pub fn source(&self) -> &Pseudofield {
        &self.source
    }

    pub fn target(&self) -> &Pseudofield {
        &self.target
    }

    pub fn kind(&self) -> &'static str {
        if self.isomorphism {
            "isomorphism"
        } else {
            "embedding, not isomorphism"
        }
    }

    pub fn apply(&self, a: &PseudofieldElem) -> PseudofieldElem {
        let k = self.source.base();
        PseudofieldElem(self.rows.iter().map(|&(f, j)| k.frobenius(&a.0[f], j)).collect())
    }

    /// `Φ⁻¹` when `Φ` is an isomorphism; `None` if `b` is not in the image.
    pub fn invert(&self, b: &PseudofieldElem) -> Option<PseudofieldElem> {
        let k = self.source.base();
        let degree = k.degree().max(1);
        let mut out: Vec<Option<FieldElem>> = vec![None; self.source.m()];
        for (&(f, j), y) in self.rows.iter().zip(&b.0) {
            let x = k.frobenius(y, (degree - j % degree) % degree);
            match &out[f] {
                Some(prev) if *prev != x => return None,
                _ => out[f] = Some(x),
            }
        }
        out.into_iter().collect::<Option<Vec<_>>>().map(PseudofieldElem)
    }
}
