//! Elimination-based ideal operations.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::{Ideal, Poly, PolyRing};
use crate::error::{Error, Result};
use crate::monomial::MonomialOrder;

/// Ring with a fresh variable prepended, ordered to eliminate it.
fn with_tag_variable(ring: &PolyRing) -> (PolyRing, Vec<Option<usize>>, Vec<Option<usize>>) {
    let mut vars: Vec<String> = Vec::with_capacity(ring.nvars() + 1);
    let mut tag = String::from("_t");
    while ring.var_index(&tag).is_some() {
        tag.push('_');
    }
    vars.push(tag);
    vars.extend(ring.var_names().iter().cloned());
    let big = PolyRing::new(ring.field().clone(), vars, MonomialOrder::Block(1));
    let into: Vec<Option<usize>> = (0..ring.nvars()).map(|i| Some(i + 1)).collect();
    let back: Vec<Option<usize>> =
        core::iter::once(None).chain((0..ring.nvars()).map(Some)).collect();
    (big, into, back)
}

/// Keeps the basis elements free of the tag variable and maps them back.
fn contract_tagged(ring: &PolyRing, big: &PolyRing, basis: &[Poly], back: &[Option<usize>]) -> Ideal {
    let gens = basis
        .iter()
        .filter(|g| !g.involves(0))
        .map(|g| ring.map_from(big, g, back).expect("tag variable absent"))
        .collect();
    Ideal::new(ring, gens)
}

impl Ideal {
    /// `I ∩ K[remaining variables]`, returned as an ideal of the same ring.
    pub fn eliminate(&self, remove: &[usize]) -> Ideal {
        let ring = &self.ring;
        if remove.is_empty() {
            return self.clone();
        }
        let n = ring.nvars();
        let mut perm: Vec<usize> = remove.to_vec();
        perm.sort_unstable();
        perm.dedup();
        let k = perm.len();
        perm.extend((0..n).filter(|i| !remove.contains(i)));
        let vars = perm.iter().map(|&i| ring.var_names()[i].clone()).collect();
        let big = PolyRing::new(ring.field().clone(), vars, MonomialOrder::Block(k));
        let mut into = alloc::vec![None; n];
        for (new, &old) in perm.iter().enumerate() {
            into[old] = Some(new);
        }
        let back: Vec<Option<usize>> = perm.iter().map(|&old| Some(old)).collect();
        let gens: Vec<Poly> =
            self.basis.iter().map(|g| big.map_from(ring, g, &into).unwrap()).collect();
        let gb = super::groebner_basis(&big, &gens);
        let kept = gb
            .iter()
            .filter(|g| (0..k).all(|v| !g.involves(v)))
            .map(|g| ring.map_from(&big, g, &back).unwrap())
            .collect();
        Ideal::new(ring, kept)
    }

    /// `I ∩ J` via `t·I + (1 − t)·J ∩ K[x]`.
    pub fn intersect(&self, other: &Ideal) -> Ideal {
        assert!(self.ring == other.ring, "intersecting ideals of different rings");
        if self.is_unit() {
            return other.clone();
        }
        if other.is_unit() {
            return self.clone();
        }
        let (big, into, back) = with_tag_variable(&self.ring);
        let t = big.var(0);
        let one_minus_t = big.sub(&big.one(), &t);
        let mut gens = Vec::new();
        for g in &self.basis {
            gens.push(big.mul(&t, &big.map_from(&self.ring, g, &into).unwrap()));
        }
        for g in &other.basis {
            gens.push(big.mul(&one_minus_t, &big.map_from(&self.ring, g, &into).unwrap()));
        }
        let gb = super::groebner_basis(&big, &gens);
        contract_tagged(&self.ring, &big, &gb, &back)
    }

    /// `I : f^∞` via the Rabinowitsch variable.
    pub fn saturate(&self, f: &Poly) -> Result<Ideal> {
        if f.is_zero() {
            return Err(Error::ZeroSaturator);
        }
        let (big, into, back) = with_tag_variable(&self.ring);
        let mut gens: Vec<Poly> =
            self.basis.iter().map(|g| big.map_from(&self.ring, g, &into).unwrap()).collect();
        let tf = big.mul(&big.var(0), &big.map_from(&self.ring, f, &into).unwrap());
        gens.push(big.sub(&big.one(), &tf));
        let gb = super::groebner_basis(&big, &gens);
        Ok(contract_tagged(&self.ring, &big, &gb, &back))
    }

    /// `f ∈ √I`, decided by `1 ∈ I + (1 − t·f)`.
    pub fn radical_contains(&self, f: &Poly) -> bool {
        let (big, into, _) = with_tag_variable(&self.ring);
        let mut gens: Vec<Poly> =
            self.basis.iter().map(|g| big.map_from(&self.ring, g, &into).unwrap()).collect();
        let tf = big.mul(&big.var(0), &big.map_from(&self.ring, f, &into).unwrap());
        gens.push(big.sub(&big.one(), &tf));
        let gb = super::groebner_basis(&big, &gens);
        gb.len() == 1 && gb[0].is_constant()
    }

    /// Krull dimension of the quotient; `-1` for the unit ideal.
    ///
    /// The size of a largest set of variables containing no leading monomial
    /// of the basis.
    pub fn krull_dimension(&self) -> i64 {
        if self.is_unit() {
            return -1;
        }
        let n = self.ring.nvars();
        assert!(n <= 24, "dimension search over {n} variables is out of desk scale");
        let leads: Vec<u32> = self
            .basis
            .iter()
            .map(|g| {
                g.leading_monomial()
                    .unwrap()
                    .0
                    .iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .fold(0u32, |acc, (i, _)| acc | (1 << i))
            })
            .collect();
        let mut best = 0;
        for set in 0u32..(1u32 << n) {
            let size = set.count_ones();
            if size > best && leads.iter().all(|&l| l & !set != 0) {
                best = size;
            }
        }
        best as i64
    }

    /// Errors with a message naming `op` unless the ideal is zero-dimensional
    /// (or the unit ideal).
    pub(crate) fn require_zero_dim(&self, op: &'static str) -> Result<()> {
        let dim = self.krull_dimension();
        if dim > 0 {
            return Err(Error::PositiveDimension { op, dim });
        }
        Ok(())
    }

    pub fn describe(&self) -> String {
        format!("({})", self.format_basis().join(", "))
    }
}
