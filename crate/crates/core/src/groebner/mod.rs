//! Classical Gröbner bases over an exact [`Field`].
//!
//! [`PolyRing`] fixes the coefficient field, variable names and a monomial
//! order; [`Poly`] values keep their terms sorted in decreasing order for the
//! ring they were built in. [`Ideal`] computes its reduced Gröbner basis once,
//! at construction, so ideal equality is basis equality.

mod buchberger;
mod ops;
mod zerodim;

use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::coeff::{Field, FieldElem, FieldEmbedding};
pub use crate::monomial::{Monomial, MonomialOrder};

pub use buchberger::{groebner_basis, reduce_basis};
pub use zerodim::{vanishing_ideal, QuotientInfo, ENUMERATION_CAP};

/// A polynomial; terms are sorted decreasingly under the owning ring's order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poly {
    terms: Vec<(Monomial, FieldElem)>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { terms: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[(Monomial, FieldElem)] {
        &self.terms
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn leading_coeff(&self) -> Option<&FieldElem> {
        self.terms.first().map(|t| &t.1)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.0.degree()).max()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one()
    }

    /// Whether variable `i` occurs.
    pub fn involves(&self, i: usize) -> bool {
        self.terms.iter().any(|(m, _)| m.0[i] > 0)
    }
}

#[derive(Debug, Clone)]
pub struct PolyRing {
    field: Field,
    vars: Arc<[String]>,
    order: MonomialOrder,
}

impl PartialEq for PolyRing {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.vars == other.vars && self.order == other.order
    }
}

impl Eq for PolyRing {}

impl PolyRing {
    pub fn new(field: Field, vars: Vec<String>, order: MonomialOrder) -> Self {
        if let MonomialOrder::Block(k) = order {
            assert!(k <= vars.len(), "block split beyond the number of variables");
        }
        PolyRing { field, vars: vars.into(), order }
    }

    /// Variables named `x1..xn`, grevlex.
    pub fn with_n_vars(field: Field, n: usize) -> Self {
        PolyRing::new(field, (1..=n).map(|i| format!("x{i}")).collect(), MonomialOrder::Grevlex)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_names(&self) -> &[String] {
        &self.vars
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    /// The same ring under a different order.
    pub fn with_order(&self, order: MonomialOrder) -> PolyRing {
        PolyRing { field: self.field.clone(), vars: self.vars.clone(), order }
    }

    /// The same variables over another field.
    pub fn with_field(&self, field: Field) -> PolyRing {
        PolyRing { field, vars: self.vars.clone(), order: self.order }
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.order.cmp(a, b)
    }

    pub fn zero(&self) -> Poly {
        Poly::zero()
    }

    pub fn one(&self) -> Poly {
        self.constant(self.field.one())
    }

    pub fn constant(&self, c: FieldElem) -> Poly {
        self.term(Monomial::one(self.nvars()), c)
    }

    pub fn var(&self, i: usize) -> Poly {
        self.term(Monomial::var(self.nvars(), i), self.field.one())
    }

    pub fn term(&self, m: Monomial, c: FieldElem) -> Poly {
        assert_eq!(m.nvars(), self.nvars());
        if self.field.is_zero(&c) {
            Poly::zero()
        } else {
            Poly { terms: alloc::vec![(m, c)] }
        }
    }

    /// Sorts, combines like terms and drops zeros.
    pub fn from_terms(&self, mut terms: Vec<(Monomial, FieldElem)>) -> Poly {
        terms.sort_by(|a, b| self.cmp(&b.0, &a.0));
        let mut out: Vec<(Monomial, FieldElem)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc = self.field.add(lc, &c),
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !self.field.is_zero(c));
        Poly { terms: out }
    }

    /// `a + c·m·b`, the workhorse of reduction.
    pub fn add_scaled(&self, a: &Poly, c: &FieldElem, m: &Monomial, b: &Poly) -> Poly {
        let f = &self.field;
        let mut out = Vec::with_capacity(a.terms.len() + b.terms.len());
        let mut i = a.terms.iter().peekable();
        let mut j = b.terms.iter().map(|(bm, bc)| (bm.mul(m), f.mul(bc, c))).peekable();
        loop {
            match (i.peek(), j.peek()) {
                (None, None) => break,
                (Some(_), None) => out.push(i.next().unwrap().clone()),
                (None, Some(_)) => out.push(j.next().unwrap()),
                (Some((am, _)), Some((bm, _))) => match self.cmp(am, bm) {
                    Ordering::Greater => out.push(i.next().unwrap().clone()),
                    Ordering::Less => out.push(j.next().unwrap()),
                    Ordering::Equal => {
                        let (am, ac) = i.next().unwrap();
                        let (_, bc) = j.next().unwrap();
                        let s = f.add(ac, &bc);
                        if !f.is_zero(&s) {
                            out.push((am.clone(), s));
                        }
                    }
                },
            }
        }
        Poly { terms: out }
    }

    pub fn add(&self, a: &Poly, b: &Poly) -> Poly {
        self.add_scaled(a, &self.field.one(), &Monomial::one(self.nvars()), b)
    }

    pub fn sub(&self, a: &Poly, b: &Poly) -> Poly {
        self.add_scaled(a, &self.field.from_int(-1), &Monomial::one(self.nvars()), b)
    }

    pub fn neg(&self, a: &Poly) -> Poly {
        self.scale(a, &self.field.from_int(-1))
    }

    pub fn scale(&self, a: &Poly, c: &FieldElem) -> Poly {
        if self.field.is_zero(c) {
            return Poly::zero();
        }
        Poly { terms: a.terms.iter().map(|(m, x)| (m.clone(), self.field.mul(x, c))).collect() }
    }

    pub fn mul_term(&self, a: &Poly, m: &Monomial, c: &FieldElem) -> Poly {
        self.add_scaled(&Poly::zero(), c, m, a)
    }

    pub fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        let mut terms = Vec::with_capacity(a.terms.len() * b.terms.len());
        for (am, ac) in &a.terms {
            for (bm, bc) in &b.terms {
                terms.push((am.mul(bm), self.field.mul(ac, bc)));
            }
        }
        self.from_terms(terms)
    }

    pub fn pow(&self, a: &Poly, k: u32) -> Poly {
        (0..k).fold(self.one(), |acc, _| self.mul(&acc, a))
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self, a: &Poly) -> Poly {
        match a.leading_coeff() {
            None => Poly::zero(),
            Some(lc) => self.scale(a, &self.field.inv(lc).expect("nonzero leading coefficient")),
        }
    }

    pub fn eval(&self, a: &Poly, point: &[FieldElem]) -> FieldElem {
        let f = &self.field;
        a.terms.iter().fold(f.zero(), |acc, (m, c)| {
            let v = m
                .0
                .iter()
                .zip(point)
                .fold(c.clone(), |v, (&e, x)| if e == 0 { v } else { f.mul(&v, &f.pow(x, e as u64)) });
            f.add(&acc, &v)
        })
    }

    /// Moves `a` (from `src`) into this ring; `var_map[i]` is the target of source variable `i`.
    /// Returns `None` if a variable that occurs has no target.
    pub fn map_from(&self, src: &PolyRing, a: &Poly, var_map: &[Option<usize>]) -> Option<Poly> {
        debug_assert!(src.field == self.field);
        let n = self.nvars();
        let mut terms = Vec::with_capacity(a.terms.len());
        for (m, c) in &a.terms {
            let mut e = alloc::vec![0u32; n];
            for (i, &x) in m.0.iter().enumerate() {
                if x > 0 {
                    e[var_map[i]?] += x;
                }
            }
            terms.push((Monomial(e), c.clone()));
        }
        Some(self.from_terms(terms))
    }

    /// Re-sorts a polynomial of a ring with the same variables but another order.
    pub fn reorder(&self, a: &Poly) -> Poly {
        self.from_terms(a.terms.clone())
    }

    /// Applies a coefficient embedding; `self` must be the ring over the target field.
    pub fn base_change(&self, a: &Poly, emb: &FieldEmbedding) -> Poly {
        self.from_terms(a.terms.iter().map(|(m, c)| (m.clone(), emb.apply(c))).collect())
    }

    pub fn format_monomial(&self, m: &Monomial) -> String {
        let parts: Vec<String> = m
            .0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| if e == 1 { self.vars[i].clone() } else { format!("{}^{e}", self.vars[i]) })
            .collect();
        parts.join("*")
    }

    pub fn format(&self, a: &Poly) -> String {
        let f = &self.field;
        let terms: Vec<(String, bool)> = a
            .terms
            .iter()
            .map(|(m, c)| format_term(f, c, &self.format_monomial(m)))
            .collect();
        join_terms(terms)
    }
}

/// Renders `c·mono`, returning the text without sign and whether it is negative.
pub(crate) fn format_term(f: &Field, c: &FieldElem, mono: &str) -> (String, bool) {
    let (c, negative) = match c {
        FieldElem::Rational(r) if r < &num_rational::BigRational::from_integer(0.into()) => {
            (FieldElem::Rational(-r), true)
        }
        _ => (c.clone(), false),
    };
    let text = if mono.is_empty() {
        f.format(&c)
    } else if f.is_one(&c) {
        mono.to_string()
    } else if f.format_is_compound(&c) {
        format!("({})*{mono}", f.format(&c))
    } else {
        format!("{}*{mono}", f.format(&c))
    };
    (text, negative)
}

pub(crate) fn join_terms(terms: Vec<(String, bool)>) -> String {
    if terms.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, (t, neg)) in terms.into_iter().enumerate() {
        match (k, neg) {
            (0, false) => out.push_str(&t),
            (0, true) => {
                out.push('-');
                out.push_str(&t);
            }
            (_, false) => {
                out.push_str(" + ");
                out.push_str(&t);
            }
            (_, true) => {
                out.push_str(" - ");
                out.push_str(&t);
            }
        }
    }
    out
}

/// An ideal together with its reduced Gröbner basis under the ring's order.
#[derive(Debug, Clone)]
pub struct Ideal {
    ring: PolyRing,
    gens: Vec<Poly>,
    basis: Vec<Poly>,
}

impl PartialEq for Ideal {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.basis == other.basis
    }
}

impl Eq for Ideal {}

impl Ideal {
    pub fn new(ring: &PolyRing, gens: Vec<Poly>) -> Self {
        let basis = groebner_basis(ring, &gens);
        Ideal { ring: ring.clone(), gens, basis }
    }

    /// Wraps a list already known to be the reduced basis.
    pub(crate) fn from_reduced_basis(ring: &PolyRing, basis: Vec<Poly>) -> Self {
        Ideal { ring: ring.clone(), gens: basis.clone(), basis }
    }

    pub fn zero(ring: &PolyRing) -> Self {
        Ideal::new(ring, Vec::new())
    }

    pub fn unit(ring: &PolyRing) -> Self {
        Ideal::new(ring, alloc::vec![ring.one()])
    }

    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    pub fn generators(&self) -> &[Poly] {
        &self.gens
    }

    /// The reduced Gröbner basis: monic, autoreduced, sorted by increasing leading monomial.
    pub fn basis(&self) -> &[Poly] {
        &self.basis
    }

    pub fn is_unit(&self) -> bool {
        self.basis.len() == 1 && self.basis[0].is_constant()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn normal_form(&self, f: &Poly) -> Poly {
        buchberger::normal_form(&self.ring, f, &self.basis)
    }

    pub fn contains(&self, f: &Poly) -> bool {
        self.normal_form(f).is_zero()
    }

    pub fn contains_ideal(&self, other: &Ideal) -> bool {
        other.basis.iter().all(|g| self.contains(g))
    }

    pub fn sum(&self, other: &Ideal) -> Ideal {
        let mut gens = self.basis.clone();
        gens.extend(other.basis.iter().cloned());
        Ideal::new(&self.ring, gens)
    }

    pub fn product(&self, other: &Ideal) -> Ideal {
        let mut gens = Vec::new();
        for a in &self.basis {
            for b in &other.basis {
                gens.push(self.ring.mul(a, b));
            }
        }
        Ideal::new(&self.ring, gens)
    }

    /// The same ideal under another monomial order.
    pub fn with_order(&self, order: MonomialOrder) -> Ideal {
        let ring = self.ring.with_order(order);
        let gens = self.basis.iter().map(|g| ring.reorder(g)).collect();
        Ideal::new(&ring, gens)
    }

    /// Extension of scalars along a field embedding.
    pub fn base_change(&self, emb: &FieldEmbedding) -> Ideal {
        let ring = self.ring.with_field(emb.target.clone());
        let basis = self.basis.iter().map(|g| ring.base_change(g, emb)).collect();
        // A reduced basis stays reduced under a field extension.
        Ideal::from_reduced_basis(&ring, basis)
    }

    pub fn format_basis(&self) -> Vec<String> {
        self.basis.iter().map(|g| self.ring.format(g)).collect()
    }

    /// Cofactors `c` with `Σ c_i·gens_i = f`, when `f` lies in the ideal.
    pub fn lift(&self, f: &Poly) -> Option<Vec<Poly>> {
        buchberger::lift(&self.ring, &self.gens, f)
    }
}

#[cfg(test)]
mod tests;
