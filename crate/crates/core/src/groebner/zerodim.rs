//! Zero-dimensional ideals: standard monomials, minimal polynomials,
//! the Seidenberg radical, field tests and vanishing ideals of point sets.

use alloc::collections::BTreeSet;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use super::{Ideal, Poly, PolyRing};
use crate::coeff::{Field, FieldElem};
use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::univariate::{self, UPoly};

/// Largest quotient ring enumerated by [`Ideal::is_prime_zero_dim`].
pub const ENUMERATION_CAP: u64 = 4096;

/// The finite-dimensional quotient `K[x]/I` in its standard-monomial basis.
#[derive(Debug, Clone)]
pub struct QuotientInfo {
    pub standard_monomials: Vec<Monomial>,
}

fn rank(field: &Field, mut rows: Vec<Vec<FieldElem>>) -> usize {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !field.is_zero(&rows[i][c])) else {
            continue;
        };
        rows.swap(r, p);
        let inv = field.inv(&rows[r][c]).unwrap();
        let pivot: Vec<FieldElem> = rows[r].iter().map(|x| field.mul(x, &inv)).collect();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !field.is_zero(&row[c]) {
                let k = row[c].clone();
                for j in c..ncols {
                    row[j] = field.sub(&row[j], &field.mul(&k, &pivot[j]));
                }
            }
        }
        rows[r] = pivot;
        r += 1;
    }
    r
}

impl Ideal {
    /// Standard monomials of a zero-dimensional (or unit) ideal, increasing.
    pub fn quotient(&self) -> Result<QuotientInfo> {
        self.require_zero_dim("quotient")?;
        let ring = &self.ring;
        let n = ring.nvars();
        let leads: Vec<&Monomial> = self.basis.iter().map(|g| g.leading_monomial().unwrap()).collect();
        let reducible = |m: &Monomial| leads.iter().any(|l| l.divides(m));
        let mut seen = BTreeSet::new();
        let mut stack = vec![Monomial::one(n)];
        let mut out = Vec::new();
        while let Some(m) = stack.pop() {
            if !seen.insert(m.clone()) || reducible(&m) {
                continue;
            }
            for i in 0..n {
                stack.push(m.mul(&Monomial::var(n, i)));
            }
            out.push(m);
        }
        out.sort_by(|a, b| ring.cmp(a, b));
        Ok(QuotientInfo { standard_monomials: out })
    }

    /// `dim_K K[x]/I` for zero-dimensional ideals.
    pub fn quotient_dimension(&self) -> Result<usize> {
        Ok(self.quotient()?.standard_monomials.len())
    }

    fn coordinates(&self, q: &QuotientInfo, f: &Poly) -> Vec<FieldElem> {
        let field = self.ring.field();
        let nf = self.normal_form(f);
        let mut out = vec![field.zero(); q.standard_monomials.len()];
        for (m, c) in nf.terms() {
            let k = q
                .standard_monomials
                .binary_search_by(|s| self.ring.cmp(s, m))
                .expect("normal forms live on standard monomials");
            out[k] = c.clone();
        }
        out
    }

    /// Minimal polynomial of variable `i` in the zero-dimensional quotient.
    pub fn minimal_polynomial(&self, i: usize) -> Result<UPoly> {
        let q = self.quotient()?;
        let ring = &self.ring;
        let field = ring.field().clone();
        if q.standard_monomials.is_empty() {
            return Ok(vec![field.one()]);
        }
        // Echelon rows: (pivot column, coordinates, univariate combination).
        let mut rows: Vec<(usize, Vec<FieldElem>, UPoly)> = Vec::new();
        let x = ring.var(i);
        let mut power = ring.one();
        for k in 0..=q.standard_monomials.len() {
            let mut v = self.coordinates(&q, &power);
            let mut comb: UPoly = vec![field.zero(); k + 1];
            comb[k] = field.one();
            for (pc, row, rc) in &rows {
                if !field.is_zero(&v[*pc]) {
                    let c = v[*pc].clone();
                    for (a, b) in v.iter_mut().zip(row) {
                        *a = field.sub(a, &field.mul(&c, b));
                    }
                    for (a, b) in comb.iter_mut().zip(rc) {
                        *a = field.sub(a, &field.mul(&c, b));
                    }
                }
            }
            match v.iter().position(|c| !field.is_zero(c)) {
                None => {
                    univariate::trim(&field, &mut comb);
                    return Ok(univariate::monic(&field, &comb));
                }
                Some(pc) => {
                    let inv = field.inv(&v[pc]).unwrap();
                    let v = v.iter().map(|c| field.mul(c, &inv)).collect();
                    let comb = comb.iter().map(|c| field.mul(c, &inv)).collect();
                    rows.push((pc, v, comb));
                }
            }
            power = ring.mul(&power, &x);
        }
        unreachable!("powers of a variable are dependent in a finite-dimensional quotient")
    }

    /// `√I` for zero-dimensional `I` over a perfect field (Seidenberg): adjoin
    /// the squarefree part of each variable's minimal polynomial.
    pub fn zero_dim_radical(&self) -> Result<Ideal> {
        self.require_zero_dim("zero_dim_radical")?;
        if self.is_unit() {
            return Ok(self.clone());
        }
        let ring = &self.ring;
        let field = ring.field();
        let mut gens = self.basis.clone();
        for i in 0..ring.nvars() {
            let sq = univariate::squarefree_part(field, &self.minimal_polynomial(i)?);
            let n = ring.nvars();
            let terms = sq
                .iter()
                .enumerate()
                .map(|(e, c)| {
                    let mut m = Monomial::one(n);
                    m.0[i] = e as u32;
                    (m, c.clone())
                })
                .collect();
            gens.push(ring.from_terms(terms));
        }
        Ok(Ideal::new(ring, gens))
    }

    /// Whether a zero-dimensional ideal is prime (equivalently maximal), by
    /// checking radicality and that every nonzero element of the finite
    /// quotient is a non-zero-divisor. Positive-dimensional input errors.
    pub fn is_prime_zero_dim(&self) -> Result<bool> {
        self.require_zero_dim("is_prime_zero_dim")?;
        if self.is_unit() {
            return Ok(false);
        }
        if self.zero_dim_radical()? != *self {
            return Ok(false);
        }
        let q = self.quotient()?;
        let d = q.standard_monomials.len();
        if d == 1 {
            return Ok(true);
        }
        let field = self.ring.field();
        let size = match field.size() {
            Some(s) => (s as u128).checked_pow(d as u32),
            None => None,
        };
        let size = match size {
            Some(s) if s <= ENUMERATION_CAP as u128 => s as u64,
            Some(s) => return Err(Error::QuotientTooLarge { size: s.to_string(), cap: ENUMERATION_CAP }),
            None => {
                return Err(Error::Unsupported(
                    "primality of quotients over Q with degree > 1 is not enumerable".into(),
                ))
            }
        };
        // Multiplication matrices of the standard monomials (column j = coords of s·s_j).
        let mats: Vec<Vec<Vec<FieldElem>>> = q
            .standard_monomials
            .iter()
            .map(|s| {
                q.standard_monomials
                    .iter()
                    .map(|t| self.coordinates(&q, &self.ring.term(s.mul(t), field.one())))
                    .collect()
            })
            .collect();
        let elems = field.elements();
        let qn = elems.len() as u64;
        for code in 1..size {
            let mut c = code;
            let coeffs: Vec<&FieldElem> = (0..d)
                .map(|_| {
                    let e = &elems[(c % qn) as usize];
                    c /= qn;
                    e
                })
                .collect();
            let mut m = vec![vec![field.zero(); d]; d];
            for (k, a) in coeffs.iter().enumerate() {
                if field.is_zero(a) {
                    continue;
                }
                for (row, src) in m.iter_mut().zip(&mats[k]) {
                    for (x, y) in row.iter_mut().zip(src) {
                        *x = field.add(x, &field.mul(a, y));
                    }
                }
            }
            if rank(field, m) < d {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Reduced Gröbner basis of the ideal of a finite point set (Buchberger–Möller).
pub fn vanishing_ideal(ring: &PolyRing, points: &[Vec<FieldElem>]) -> Ideal {
    let field = ring.field();
    let n = ring.nvars();
    if points.is_empty() {
        return Ideal::unit(ring);
    }
    let eval_mono = |m: &Monomial, p: &[FieldElem]| -> FieldElem {
        m.0.iter()
            .zip(p)
            .fold(field.one(), |acc, (&e, x)| if e == 0 { acc } else { field.mul(&acc, &field.pow(x, e as u64)) })
    };
    let mut basis: Vec<Poly> = Vec::new();
    // Echelon rows: pivot, evaluation vector, polynomial with that evaluation.
    let mut rows: Vec<(usize, Vec<FieldElem>, Poly)> = Vec::new();
    let mut candidates: Vec<Monomial> = vec![Monomial::one(n)];
    let mut seen: BTreeSet<Monomial> = BTreeSet::new();
    seen.insert(Monomial::one(n));
    while !candidates.is_empty() {
        let k = (0..candidates.len())
            .min_by(|&a, &b| ring.cmp(&candidates[a], &candidates[b]))
            .unwrap();
        let t = candidates.swap_remove(k);
        if basis.iter().any(|g| g.leading_monomial().unwrap().divides(&t)) {
            continue;
        }
        let mut v: Vec<FieldElem> = points.iter().map(|p| eval_mono(&t, p)).collect();
        let mut poly = ring.term(t.clone(), field.one());
        for (pc, row, rp) in &rows {
            if !field.is_zero(&v[*pc]) {
                let c = v[*pc].clone();
                for (a, b) in v.iter_mut().zip(row) {
                    *a = field.sub(a, &field.mul(&c, b));
                }
                poly = ring.add_scaled(&poly, &field.neg(&c), &Monomial::one(n), rp);
            }
        }
        match v.iter().position(|c| !field.is_zero(c)) {
            None => basis.push(poly),
            Some(pc) => {
                let inv = field.inv(&v[pc]).unwrap();
                let v = v.iter().map(|c| field.mul(c, &inv)).collect();
                rows.push((pc, v, ring.scale(&poly, &inv)));
                for i in 0..n {
                    let next = t.mul(&Monomial::var(n, i));
                    if seen.insert(next.clone()) {
                        candidates.push(next);
                    }
                }
            }
        }
    }
    // The tails only involve standard monomials, but earlier rows may still
    // mention them with nonstandard bookkeeping; normalise through reduction.
    let reduced = super::reduce_basis(ring, basis);
    debug_assert!(reduced
        .windows(2)
        .all(|w| ring.cmp(w[0].leading_monomial().unwrap(), w[1].leading_monomial().unwrap()) == Ordering::Less));
    Ideal::from_reduced_basis(ring, reduced)
}
