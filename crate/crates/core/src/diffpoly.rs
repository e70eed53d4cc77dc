//! Difference polynomial rings `A{y_1..y_n} = A[Σ·Y]` over a pseudofield.
//!
//! The variable `τ(y_i)` is stored at flat index `i·|Σ| + τ`, so monomials
//! are exponent vectors of length `n·|Σ|` sorted by `(variable, group index)`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::coeff::{FieldElem, FieldEmbedding};
use crate::error::{Error, Result};
use crate::group::{Group, GroupElem};
use crate::monomial::{Monomial, MonomialOrder};
use crate::pseudofield::{Pseudofield, PseudofieldElem};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiffRing {
    pf: Pseudofield,
    vars: Arc<[String]>,
}

/// A difference polynomial: nonzero pseudofield coefficients keyed by monomial.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DiffPoly {
    terms: BTreeMap<Monomial, PseudofieldElem>,
}

impl DiffPoly {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &PseudofieldElem)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

impl DiffRing {
    /// `A{y_1..y_n}` with variables named `y1..yn` (or `y` when `n = 1`).
    pub fn new(pf: &Pseudofield, n: usize) -> Self {
        let names = if n == 1 { vec![String::from("y")] } else { (1..=n).map(|i| format!("y{i}")).collect() };
        DiffRing { pf: pf.clone(), vars: names.into() }
    }

    pub fn with_names(pf: &Pseudofield, names: Vec<String>) -> Result<Self> {
        for (k, v) in names.iter().enumerate() {
            let ok = v.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
                && v.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !ok {
                return Err(Error::InvalidArgument(format!("invalid variable name `{v}`")));
            }
            if names[..k].contains(v) {
                return Err(Error::InvalidArgument(format!("variable `{v}` declared twice")));
            }
        }
        Ok(DiffRing { pf: pf.clone(), vars: names.into() })
    }

    pub fn pseudofield(&self) -> &Pseudofield {
        &self.pf
    }

    pub fn group(&self) -> &Group {
        self.pf.group()
    }

    /// Number of difference indeterminates `n`.
    pub fn n(&self) -> usize {
        self.vars.len()
    }

    pub fn var_names(&self) -> &[String] {
        &self.vars
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// Number of underlying ordinary variables, `n·|Σ|`.
    pub fn nflat(&self) -> usize {
        self.n() * self.group().order()
    }

    pub fn flat_index(&self, i: usize, t: GroupElem) -> usize {
        i * self.group().order() + t.index()
    }

    pub fn unflatten(&self, k: usize) -> (usize, GroupElem) {
        let o = self.group().order();
        (k / o, GroupElem(k % o))
    }

    /// The same variables over an extension of the base field.
    pub fn base_change(&self, emb: &FieldEmbedding) -> Result<DiffRing> {
        Ok(DiffRing { pf: self.pf.base_change(emb)?, vars: self.vars.clone() })
    }

    pub fn map_poly(&self, emb: &FieldEmbedding, f: &DiffPoly) -> DiffPoly {
        self.from_terms(f.terms.iter().map(|(m, c)| (m.clone(), self.pf.map_elem(emb, c))))
    }

    pub fn zero(&self) -> DiffPoly {
        DiffPoly { terms: BTreeMap::new() }
    }

    pub fn one(&self) -> DiffPoly {
        self.constant(self.pf.one())
    }

    pub fn constant(&self, c: PseudofieldElem) -> DiffPoly {
        self.term(Monomial::one(self.nflat()), c)
    }

    pub fn scalar(&self, c: FieldElem) -> DiffPoly {
        self.constant(self.pf.constant(c))
    }

    /// `τ(y_i)`.
    pub fn var(&self, i: usize, t: GroupElem) -> DiffPoly {
        self.term(Monomial::var(self.nflat(), self.flat_index(i, t)), self.pf.one())
    }

    pub fn term(&self, m: Monomial, c: PseudofieldElem) -> DiffPoly {
        assert_eq!(m.nvars(), self.nflat());
        let mut terms = BTreeMap::new();
        if !self.pf.is_zero(&c) {
            terms.insert(m, c);
        }
        DiffPoly { terms }
    }

    pub fn from_terms(&self, terms: impl IntoIterator<Item = (Monomial, PseudofieldElem)>) -> DiffPoly {
        let mut out: BTreeMap<Monomial, PseudofieldElem> = BTreeMap::new();
        for (m, c) in terms {
            match out.get_mut(&m) {
                Some(x) => *x = self.pf.add(x, &c),
                None => {
                    out.insert(m, c);
                }
            }
        }
        out.retain(|_, c| !self.pf.is_zero(c));
        DiffPoly { terms: out }
    }

    pub fn add(&self, a: &DiffPoly, b: &DiffPoly) -> DiffPoly {
        self.from_terms(a.terms.iter().chain(&b.terms).map(|(m, c)| (m.clone(), c.clone())))
    }

    pub fn neg(&self, a: &DiffPoly) -> DiffPoly {
        DiffPoly { terms: a.terms.iter().map(|(m, c)| (m.clone(), self.pf.neg(c))).collect() }
    }

    pub fn sub(&self, a: &DiffPoly, b: &DiffPoly) -> DiffPoly {
        self.add(a, &self.neg(b))
    }

    pub fn scale(&self, a: &DiffPoly, c: &PseudofieldElem) -> DiffPoly {
        self.from_terms(a.terms.iter().map(|(m, x)| (m.clone(), self.pf.mul(x, c))))
    }

    pub fn mul(&self, a: &DiffPoly, b: &DiffPoly) -> DiffPoly {
        self.from_terms(
            a.terms
                .iter()
                .flat_map(|(am, ac)| b.terms.iter().map(move |(bm, bc)| (am.mul(bm), self.pf.mul(ac, bc)))),
        )
    }

    pub fn pow(&self, a: &DiffPoly, k: u32) -> DiffPoly {
        (0..k).fold(self.one(), |acc, _| self.mul(&acc, a))
    }

    /// `σ·f`: coefficients by the pseudofield action, `τ(y_i) ↦ (στ)(y_i)`.
    pub fn act_poly(&self, s: GroupElem, f: &DiffPoly) -> DiffPoly {
        let g = self.group();
        let o = g.order();
        self.from_terms(f.terms.iter().map(|(m, c)| {
            let mut e = vec![0u32; m.nvars()];
            for (k, &x) in m.0.iter().enumerate() {
                if x > 0 {
                    e[(k / o) * o + g.mul(s, GroupElem(k % o)).index()] = x;
                }
            }
            (Monomial(e), self.pf.sigma_act(s, c))
        }))
    }

    pub fn is_sigma_constant(&self, f: &DiffPoly) -> bool {
        self.group().elements().all(|s| self.act_poly(s, f) == *f)
    }

    /// `f(a)`: substitutes `τ(y_i) ↦ τ·a_i` and evaluates in `A`.
    pub fn eval_poly(&self, f: &DiffPoly, point: &[PseudofieldElem]) -> Result<PseudofieldElem> {
        if point.len() != self.n() {
            return Err(Error::InvalidArgument(format!(
                "point has {} coordinates, the ring has {} indeterminates",
                point.len(),
                self.n()
            )));
        }
        let values: Vec<PseudofieldElem> = (0..self.nflat())
            .map(|k| {
                let (i, t) = self.unflatten(k);
                self.pf.sigma_act(t, &point[i])
            })
            .collect();
        Ok(self.eval_at_values(f, &values))
    }

    /// Evaluation given the values of all `n·|Σ|` flat variables.
    pub fn eval_at_values(&self, f: &DiffPoly, values: &[PseudofieldElem]) -> PseudofieldElem {
        let pf = &self.pf;
        f.terms.iter().fold(pf.zero(), |acc, (m, c)| {
            let v = m
                .0
                .iter()
                .zip(values)
                .fold(c.clone(), |v, (&e, x)| if e == 0 { v } else { pf.mul(&v, &pf.pow(x, e as u64)) });
            pf.add(&acc, &v)
        })
    }

    /// `y`, `s(y)`, `s2(y)`, `g3(y)`.
    pub fn format_var(&self, k: usize) -> String {
        let (i, t) = self.unflatten(k);
        if t.is_identity() {
            self.vars[i].clone()
        } else {
            format!("{}({})", self.group().symbol(t), self.vars[i])
        }
    }

    pub fn format_monomial(&self, m: &Monomial) -> String {
        let parts: Vec<String> = m
            .0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(k, &e)| if e == 1 { self.format_var(k) } else { format!("{}^{e}", self.format_var(k)) })
            .collect();
        parts.join("*")
    }

    /// Terms in decreasing grevlex order.
    pub fn sorted_terms<'a>(&self, f: &'a DiffPoly) -> Vec<(&'a Monomial, &'a PseudofieldElem)> {
        let mut t: Vec<_> = f.terms.iter().collect();
        t.sort_by(|a, b| MonomialOrder::Grevlex.cmp(b.0, a.0));
        t
    }

    pub fn format(&self, f: &DiffPoly) -> String {
        let pf = &self.pf;
        let k = pf.base();
        let terms = self
            .sorted_terms(f)
            .into_iter()
            .map(|(m, c)| {
                let mono = self.format_monomial(m);
                let scalar = c.coords().windows(2).all(|w| w[0] == w[1]);
                if scalar {
                    crate::groebner::format_term(k, &c.coords()[0], &mono)
                } else if mono.is_empty() {
                    (pf.format(c), false)
                } else {
                    (format!("{}*{mono}", pf.format(c)), false)
                }
            })
            .collect();
        crate::groebner::join_terms(terms)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::Field;
    use proptest::prelude::*;

    fn fun(p: u64, n: usize) -> Pseudofield {
        Pseudofield::fun_of(&Field::prime(p).unwrap(), &Group::cyclic(n).unwrap())
    }

    fn el(pf: &Pseudofield, v: &[u64]) -> PseudofieldElem {
        PseudofieldElem::from_coords(v.iter().map(|&x| pf.base().element(x).unwrap()).collect())
    }

    const E: GroupElem = GroupElem(0);
    const S: GroupElem = GroupElem(1);

    #[test]
    fn ring_shapes() {
        let pf = fun(2, 2);
        let r = DiffRing::new(&pf, 1);
        assert_eq!(r.nflat(), 2);
        assert_eq!(r.format_var(0), "y");
        assert_eq!(r.format_var(1), "s(y)");
        assert_eq!(DiffRing::new(&pf, 2).nflat(), 4);
        let r0 = DiffRing::new(&pf, 0);
        assert_eq!(r0.nflat(), 0);
        assert_eq!(r0.eval_poly(&r0.constant(el(&pf, &[1, 0])), &[]).unwrap(), el(&pf, &[1, 0]));
        let z3 = DiffRing::new(&fun(2, 3), 2);
        assert_eq!(z3.format_var(z3.flat_index(1, GroupElem(2))), "s2(y2)");
    }

    #[test]
    fn actions() {
        let pf = fun(3, 2);
        let r = DiffRing::new(&pf, 1);
        let y = r.var(0, E);
        let sy = r.var(0, S);
        let f = r.sub(&r.add(&y, &sy), &r.one());
        assert_eq!(r.act_poly(S, &f), f);
        assert_eq!(r.format(&f), "y + s(y) + 2");
        let g = r.mul(&r.constant(el(&pf, &[1, 0])), &y);
        assert_eq!(r.act_poly(S, &g), r.mul(&r.constant(el(&pf, &[0, 1])), &sy));
        assert_eq!(r.format(&r.act_poly(S, &g)), "(0,1)*s(y)");
        assert_eq!(r.act_poly(E, &g), g);
    }

    #[test]
    fn evaluation() {
        let pf = fun(2, 2);
        let r = DiffRing::new(&pf, 1);
        let y = r.var(0, E);
        let sy = r.var(0, S);
        let a = [el(&pf, &[1, 0])];
        assert_eq!(r.eval_poly(&r.mul(&y, &sy), &a).unwrap(), pf.zero());
        let f = r.sub(&r.add(&y, &sy), &r.one());
        assert_eq!(r.eval_poly(&f, &a).unwrap(), pf.zero());
        let p5 = fun(5, 2);
        let r5 = DiffRing::new(&p5, 1);
        assert_eq!(r5.eval_poly(&r5.var(0, E), &[el(&p5, &[2, 3])]).unwrap(), el(&p5, &[2, 3]));
    }

    /// `(σf)(a) = σ(f(a))` for every point, exhaustively.
    #[test]
    fn evaluation_is_equivariant() {
        for (p, n) in [(2, 2), (3, 2), (2, 3)] {
            let pf = fun(p, n);
            let r = DiffRing::new(&pf, 1);
            let elems = pf.elements(1000).unwrap();
            let g = r.group().clone();
            // All products of two variables with a few coefficients, plus linear terms.
            let mut polys = Vec::new();
            for k in 0..r.nflat() {
                for l in k..r.nflat() {
                    let v = r.mul(&r.var(0, GroupElem(k)), &r.var(0, GroupElem(l)));
                    polys.push(r.add(&r.scale(&v, &pf.indicator(0)), &r.var(0, GroupElem(l))));
                }
            }
            for f in &polys {
                for a in &elems {
                    let fa = r.eval_poly(f, core::slice::from_ref(a)).unwrap();
                    for s in g.elements() {
                        let lhs = r.eval_poly(&r.act_poly(s, f), core::slice::from_ref(a)).unwrap();
                        assert_eq!(lhs, pf.sigma_act(s, &fa));
                    }
                }
            }
        }
    }

    fn arb_poly(r: &DiffRing) -> impl Strategy<Value = DiffPoly> {
        let r = r.clone();
        let m = r.pseudofield().m();
        let nflat = r.nflat();
        prop::collection::vec((prop::collection::vec(0u64..3, m), prop::collection::vec(0u32..3, nflat)), 0..4)
            .prop_map(move |ts| {
                r.from_terms(ts.into_iter().map(|(c, e)| (Monomial(e), el(r.pseudofield(), &c))))
            })
    }

    proptest! {
        #[test]
        fn act_is_homomorphic_action(
            (f, g) in {
                let r = DiffRing::new(&fun(3, 4), 1);
                (arb_poly(&r), arb_poly(&r))
            },
            s in 0usize..4, t in 0usize..4,
        ) {
            let r = DiffRing::new(&fun(3, 4), 1);
            let grp = r.group().clone();
            let (s, t) = (GroupElem(s), GroupElem(t));
            prop_assert_eq!(r.act_poly(s, &r.mul(&f, &g)), r.mul(&r.act_poly(s, &f), &r.act_poly(s, &g)));
            prop_assert_eq!(r.act_poly(s, &r.add(&f, &g)), r.add(&r.act_poly(s, &f), &r.act_poly(s, &g)));
            prop_assert_eq!(r.act_poly(s, &r.act_poly(t, &f)), r.act_poly(grp.mul(s, t), &f));
        }

        #[test]
        fn eval_is_ring_homomorphism(
            (f, g) in {
                let r = DiffRing::new(&fun(3, 2), 1);
                (arb_poly(&r), arb_poly(&r))
            },
            a in prop::collection::vec(0u64..3, 2),
        ) {
            let r = DiffRing::new(&fun(3, 2), 1);
            let pf = r.pseudofield().clone();
            let a = [el(&pf, &a)];
            let (fa, ga) = (r.eval_poly(&f, &a).unwrap(), r.eval_poly(&g, &a).unwrap());
            prop_assert_eq!(r.eval_poly(&r.mul(&f, &g), &a).unwrap(), pf.mul(&fa, &ga));
            prop_assert_eq!(r.eval_poly(&r.add(&f, &g), &a).unwrap(), pf.add(&fa, &ga));
        }
    }
}
