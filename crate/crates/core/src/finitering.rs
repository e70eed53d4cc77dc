//! A brute-force laboratory of small finite difference rings.
//!
//! Rings have at most 81 elements, stored as index tables; ideals are
//! bitsets over element indices. Everything here is computed from the
//! definitions (ideals by closing sums of principal ideals, pseudoprimes as
//! maximal difference ideals avoiding a multiplicative set), so it serves as
//! an oracle for the symbolic modules.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::coeff::{Field, FieldElem};
use crate::error::{Error, Result};
use crate::group::{Group, GroupElem};
use crate::pseudofield::{Pseudofield, PseudofieldElem};

/// Largest ring the laboratory accepts.
pub const MAX_SIZE: usize = 81;

/// An ideal as a set of element indices.
pub type IdealSet = u128;

fn bits(s: IdealSet) -> impl Iterator<Item = usize> {
    (0..128).filter(move |&i| s >> i & 1 == 1)
}

fn subset(a: IdealSet, b: IdealSet) -> bool {
    a & !b == 0
}

#[derive(Debug, Clone)]
pub struct FiniteDiffRing {
    name: String,
    labels: Vec<String>,
    add: Vec<u8>,
    mul: Vec<u8>,
    zero: usize,
    one: usize,
    group: Group,
    /// `act[σ][a] = σ(a)`.
    act: Vec<Vec<u8>>,
    /// Number of factors when the ring is a pseudofield.
    pseudofield_factors: Option<usize>,
}

impl FiniteDiffRing {
    /// Validates tables: a commutative ring with 1, and an action by ring
    /// automorphisms extended from the given generators.
    pub fn from_tables(
        name: &str,
        labels: Vec<String>,
        add: Vec<u8>,
        mul: Vec<u8>,
        group: &Group,
        generators: &[(GroupElem, Vec<u8>)],
    ) -> Result<Self> {
        let n = labels.len();
        if n == 0 || n > MAX_SIZE {
            return Err(Error::InvalidFiniteRing(format!("{n} elements; the laboratory accepts 1..={MAX_SIZE}")));
        }
        if add.len() != n * n || mul.len() != n * n || add.iter().chain(&mul).any(|&x| x as usize >= n) {
            return Err(Error::InvalidFiniteRing("tables must be n×n with entries below n".into()));
        }
        let a = |x: usize, y: usize| add[x * n + y] as usize;
        let m = |x: usize, y: usize| mul[x * n + y] as usize;
        let zero = (0..n)
            .find(|&z| (0..n).all(|x| a(z, x) == x))
            .ok_or_else(|| Error::InvalidFiniteRing("no additive identity".into()))?;
        let one = (0..n)
            .find(|&u| (0..n).all(|x| m(u, x) == x))
            .ok_or_else(|| Error::InvalidFiniteRing("no multiplicative identity".into()))?;
        for x in 0..n {
            if !(0..n).any(|y| a(x, y) == zero) {
                return Err(Error::InvalidFiniteRing(format!("{} has no additive inverse", labels[x])));
            }
            for y in 0..n {
                if a(x, y) != a(y, x) || m(x, y) != m(y, x) {
                    return Err(Error::InvalidFiniteRing(format!("not commutative at ({}, {})", labels[x], labels[y])));
                }
                for z in 0..n {
                    if a(a(x, y), z) != a(x, a(y, z))
                        || m(m(x, y), z) != m(x, m(y, z))
                        || m(x, a(y, z)) != a(m(x, y), m(x, z))
                    {
                        return Err(Error::InvalidFiniteRing(format!(
                            "ring axioms fail at ({}, {}, {})",
                            labels[x], labels[y], labels[z]
                        )));
                    }
                }
            }
        }
        let mut gens = Vec::new();
        for (g, perm) in generators {
            let g = group.check(*g)?;
            if perm.len() != n {
                return Err(Error::InvalidFiniteRing(format!("action of {} has the wrong length", group.name(g))));
            }
            let mut seen = vec![false; n];
            for &p in perm {
                if p as usize >= n || core::mem::replace(&mut seen[p as usize], true) {
                    return Err(Error::NotAutomorphism(group.name(g).into(), "not a bijection".into()));
                }
            }
            for x in 0..n {
                for y in 0..n {
                    let (px, py) = (perm[x] as usize, perm[y] as usize);
                    if perm[a(x, y)] as usize != a(px, py) || perm[m(x, y)] as usize != m(px, py) {
                        return Err(Error::NotAutomorphism(labels[x].clone(), labels[y].clone()));
                    }
                }
            }
            gens.push((g, perm.clone()));
        }
        let mut act: Vec<Option<Vec<u8>>> = vec![None; group.order()];
        act[0] = Some((0..n as u8).collect());
        let mut queue = VecDeque::from([GroupElem::IDENTITY]);
        while let Some(s) = queue.pop_front() {
            for (g, perm) in &gens {
                let gs = group.mul(*g, s);
                let cur = act[s.index()].as_ref().unwrap();
                let data: Vec<u8> = cur.iter().map(|&x| perm[x as usize]).collect();
                match &act[gs.index()] {
                    Some(existing) if *existing != data => {
                        return Err(Error::InvalidFiniteRing(format!(
                            "action is not a group action at ({}, {})",
                            group.name(*g),
                            group.name(s)
                        )))
                    }
                    Some(_) => {}
                    None => {
                        act[gs.index()] = Some(data);
                        queue.push_back(gs);
                    }
                }
            }
        }
        let act: Vec<Vec<u8>> = act
            .into_iter()
            .enumerate()
            .map(|(k, x)| {
                x.ok_or_else(|| {
                    Error::InvalidFiniteRing(format!("generators do not reach {}", group.name(GroupElem(k))))
                })
            })
            .collect::<Result<_>>()?;
        for s in group.elements() {
            for t in group.elements() {
                let st = group.mul(s, t);
                if (0..n).any(|x| act[s.index()][act[t.index()][x] as usize] != act[st.index()][x]) {
                    return Err(Error::InvalidFiniteRing(format!(
                        "action is not a group action at ({}, {})",
                        group.name(s),
                        group.name(t)
                    )));
                }
            }
        }
        Ok(FiniteDiffRing {
            name: name.to_string(),
            labels,
            add,
            mul,
            zero,
            one,
            group: group.clone(),
            act,
            pseudofield_factors: None,
        })
    }

    /// A pseudofield with at most 81 elements as a table ring.
    pub fn from_pseudofield(name: &str, pf: &Pseudofield) -> Result<Self> {
        let elems = pf.elements(MAX_SIZE as u64)?;
        let index: BTreeMap<PseudofieldElem, u8> = elems.iter().enumerate().map(|(i, e)| (e.clone(), i as u8)).collect();
        let table = |f: &dyn Fn(&PseudofieldElem, &PseudofieldElem) -> PseudofieldElem| -> Vec<u8> {
            elems.iter().flat_map(|x| elems.iter().map(|y| index[&f(x, y)])).collect::<Vec<u8>>()
        };
        let add = table(&|x, y| pf.add(x, y));
        let mul = table(&|x, y| pf.mul(x, y));
        let gens: Vec<(GroupElem, Vec<u8>)> = pf
            .group()
            .elements()
            .map(|s| (s, elems.iter().map(|x| index[&pf.sigma_act(s, x)]).collect()))
            .collect();
        let labels = elems.iter().map(|e| pf.format(e)).collect();
        let mut r = Self::from_tables(name, labels, add, mul, pf.group(), &gens)?;
        r.pseudofield_factors = Some(pf.m());
        Ok(r)
    }

    /// `K^m` with `Σ` permuting coordinates (`gens` give images of `0..m`).
    pub fn power_ring(name: &str, k: &Field, m: usize, group: &Group, gens: &[(GroupElem, Vec<usize>)]) -> Result<Self> {
        let q = k.size().ok_or_else(|| Error::InvalidFiniteRing("the coefficient field must be finite".into()))?;
        if (q as u128).checked_pow(m as u32).is_none_or(|s| s > MAX_SIZE as u128) {
            return Err(Error::InvalidFiniteRing(format!("{q}^{m} elements exceeds {MAX_SIZE}")));
        }
        let ke = k.elements();
        let size = (q as usize).pow(m as u32);
        let tuples: Vec<Vec<usize>> = (0..size)
            .map(|mut c| {
                (0..m)
                    .map(|_| {
                        let d = c % q as usize;
                        c /= q as usize;
                        d
                    })
                    .collect()
            })
            .collect();
        let code = |t: &[usize]| t.iter().rev().fold(0usize, |acc, &d| acc * q as usize + d);
        let pos: BTreeMap<FieldElem, usize> = ke.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();
        let op = |f: &dyn Fn(&FieldElem, &FieldElem) -> FieldElem| -> Vec<u8> {
            tuples
                .iter()
                .flat_map(|x| {
                    tuples.iter().map(|y| {
                        let t: Vec<usize> = x.iter().zip(y).map(|(&a, &b)| pos[&f(&ke[a], &ke[b])]).collect();
                        code(&t) as u8
                    })
                })
                .collect()
        };
        let add = op(&|a, b| k.add(a, b));
        let mul = op(&|a, b| k.mul(a, b));
        let mut perms = Vec::new();
        for (g, p) in gens {
            if p.len() != m || p.iter().any(|&x| x >= m) {
                return Err(Error::InvalidFiniteRing("coordinate permutation out of range".into()));
            }
            // (σa)_{p(i)} = a_i
            let image = tuples
                .iter()
                .map(|t| {
                    let mut out = vec![0; m];
                    for (i, &d) in t.iter().enumerate() {
                        out[p[i]] = d;
                    }
                    code(&out) as u8
                })
                .collect();
            perms.push((*g, image));
        }
        let labels = tuples
            .iter()
            .map(|t| format!("({})", t.iter().map(|&d| k.format(&ke[d])).collect::<Vec<_>>().join(",")))
            .collect();
        Self::from_tables(name, labels, add, mul, group, &perms)
    }

    /// `K[x]/(f)` for monic `f` (coefficients low to high), with `σ(x) = u_σ·x`.
    pub fn poly_quotient(name: &str, k: &Field, modulus: &[FieldElem], group: &Group, units: &[(GroupElem, FieldElem)]) -> Result<Self> {
        let d = modulus.len().checked_sub(1).filter(|&d| d > 0).ok_or_else(|| {
            Error::InvalidFiniteRing("modulus must have positive degree".into())
        })?;
        if !k.is_one(&modulus[d]) {
            return Err(Error::InvalidFiniteRing("modulus must be monic".into()));
        }
        let q = k.size().ok_or_else(|| Error::InvalidFiniteRing("the coefficient field must be finite".into()))? as usize;
        if q.checked_pow(d as u32).is_none_or(|s| s > MAX_SIZE) {
            return Err(Error::InvalidFiniteRing(format!("{q}^{d} elements exceeds {MAX_SIZE}")));
        }
        let ke = k.elements();
        let size = q.pow(d as u32);
        let polys: Vec<Vec<FieldElem>> = (0..size)
            .map(|mut c| {
                (0..d)
                    .map(|_| {
                        let x = ke[c % q].clone();
                        c /= q;
                        x
                    })
                    .collect()
            })
            .collect();
        let index: BTreeMap<Vec<FieldElem>, u8> = polys.iter().enumerate().map(|(i, p)| (p.clone(), i as u8)).collect();
        let reduce = |mut p: Vec<FieldElem>| -> Vec<FieldElem> {
            while p.len() > d {
                let c = p.pop().unwrap();
                let shift = p.len() - d;
                for (i, mc) in modulus[..d].iter().enumerate() {
                    p[shift + i] = k.sub(&p[shift + i], &k.mul(&c, mc));
                }
            }
            p.resize(d, k.zero());
            p
        };
        let add: Vec<u8> = polys
            .iter()
            .flat_map(|x| polys.iter().map(|y| index[&x.iter().zip(y).map(|(a, b)| k.add(a, b)).collect::<Vec<_>>()]))
            .collect();
        let mul: Vec<u8> = polys
            .iter()
            .flat_map(|x| {
                polys.iter().map(|y| {
                    let mut prod = vec![k.zero(); 2 * d - 1];
                    for (i, a) in x.iter().enumerate() {
                        for (j, b) in y.iter().enumerate() {
                            prod[i + j] = k.add(&prod[i + j], &k.mul(a, b));
                        }
                    }
                    index[&reduce(prod)]
                })
            })
            .collect();
        let mut gens = Vec::new();
        for (g, u) in units {
            if k.is_zero(u) {
                return Err(Error::InvalidFiniteRing("x must map to a unit multiple of x".into()));
            }
            let image = polys
                .iter()
                .map(|p| index[&p.iter().enumerate().map(|(i, c)| k.mul(c, &k.pow(u, i as u64))).collect::<Vec<_>>()])
                .collect();
            gens.push((*g, image));
        }
        let labels = polys
            .iter()
            .map(|p| {
                let terms = p
                    .iter()
                    .enumerate()
                    .rev()
                    .filter(|(_, c)| !k.is_zero(c))
                    .map(|(i, c)| {
                        let mono = match i {
                            0 => String::new(),
                            1 => "x".to_string(),
                            _ => format!("x^{i}"),
                        };
                        crate::groebner::format_term(k, c, &mono)
                    })
                    .collect();
                crate::groebner::join_terms(terms)
            })
            .collect();
        Self::from_tables(name, labels, add, mul, group, &gens)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.size() + b] as usize
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.size() + b] as usize
    }

    pub fn act(&self, s: GroupElem, a: usize) -> usize {
        self.act[s.index()][a] as usize
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn one(&self) -> usize {
        self.one
    }

    fn all(&self) -> IdealSet {
        if self.size() == 128 {
            !0
        } else {
            (1u128 << self.size()) - 1
        }
    }

    pub fn whole(&self) -> IdealSet {
        self.all()
    }

    pub fn zero_ideal(&self) -> IdealSet {
        1 << self.zero
    }

    pub fn principal(&self, a: usize) -> IdealSet {
        (0..self.size()).fold(0, |acc, r| acc | 1 << self.mul(r, a))
    }

    /// `I + J`.
    pub fn sum(&self, i: IdealSet, j: IdealSet) -> IdealSet {
        let mut out = 0;
        for a in bits(i) {
            for b in bits(j) {
                out |= 1 << self.add(a, b);
            }
        }
        out
    }

    /// The ideal generated by a set of elements.
    pub fn generated(&self, set: IdealSet) -> IdealSet {
        bits(set).fold(self.zero_ideal(), |acc, a| self.sum(acc, self.principal(a)))
    }

    pub fn product(&self, i: IdealSet, j: IdealSet) -> IdealSet {
        let mut prods = 0;
        for a in bits(i) {
            for b in bits(j) {
                prods |= 1 << self.mul(a, b);
            }
        }
        self.generated(prods)
    }

    pub fn sigma_image(&self, s: GroupElem, i: IdealSet) -> IdealSet {
        bits(i).fold(0, |acc, a| acc | 1 << self.act(s, a))
    }

    pub fn is_sigma_stable(&self, i: IdealSet) -> bool {
        self.group.elements().all(|s| self.sigma_image(s, i) == i)
    }

    /// `π(I) = I_Σ = ⋂_σ I^σ`.
    pub fn pi(&self, i: IdealSet) -> IdealSet {
        self.group.elements().fold(self.all(), |acc, s| acc & self.sigma_image(s, i))
    }

    pub fn radical(&self, i: IdealSet) -> IdealSet {
        (0..self.size())
            .filter(|&a| {
                let mut p = a;
                (0..=self.size()).any(|_| {
                    let inside = i >> p & 1 == 1;
                    p = self.mul(p, a);
                    inside
                })
            })
            .fold(0, |acc, a| acc | 1 << a)
    }

    pub fn is_prime(&self, i: IdealSet) -> bool {
        i != self.all()
            && (0..self.size()).all(|a| {
                i >> a & 1 == 1 || (0..self.size()).all(|b| i >> b & 1 == 1 || i >> self.mul(a, b) & 1 == 0)
            })
    }

    /// `I : s = {a : a·s ∈ I}`.
    pub fn colon(&self, i: IdealSet, s: usize) -> IdealSet {
        (0..self.size()).filter(|&a| i >> self.mul(a, s) & 1 == 1).fold(0, |acc, a| acc | 1 << a)
    }

    /// `{1, s, s², …}`.
    pub fn powers(&self, s: usize) -> IdealSet {
        let mut out = 0u128;
        let mut p = self.one;
        while out >> p & 1 == 0 {
            out |= 1 << p;
            p = self.mul(p, s);
        }
        out
    }

    /// `S(I) = ⋃_{s ∈ S} (I : s)`.
    pub fn saturation(&self, i: IdealSet, set: IdealSet) -> IdealSet {
        bits(set).fold(0, |acc, s| acc | self.colon(i, s))
    }

    /// `I : s^∞`.
    pub fn colon_infinity(&self, i: IdealSet, s: usize) -> IdealSet {
        self.saturation(i, self.powers(s))
    }

    /// All ideals, closing sums of principal ideals to a fixed point; sorted by bitset.
    pub fn enumerate_ideals(&self) -> Vec<IdealSet> {
        let mut found: BTreeSet<IdealSet> = (0..self.size()).map(|a| self.principal(a)).collect();
        let mut frontier: Vec<IdealSet> = found.iter().copied().collect();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            let current: Vec<IdealSet> = found.iter().copied().collect();
            for &i in &frontier {
                for &j in &current {
                    let s = self.sum(i, j);
                    if found.insert(s) {
                        next.push(s);
                    }
                }
            }
            frontier = next;
        }
        found.into_iter().collect()
    }

    pub fn difference_ideals(&self) -> Vec<IdealSet> {
        self.enumerate_ideals().into_iter().filter(|&i| self.is_sigma_stable(i)).collect()
    }

    pub fn primes(&self) -> Vec<IdealSet> {
        self.enumerate_ideals().into_iter().filter(|&i| self.is_prime(i)).collect()
    }

    pub fn maximal_ideals(&self) -> Vec<IdealSet> {
        let ideals = self.enumerate_ideals();
        let proper: Vec<IdealSet> = ideals.into_iter().filter(|&i| i != self.all()).collect();
        proper.iter().copied().filter(|&i| !proper.iter().any(|&j| j != i && subset(i, j))).collect()
    }

    /// `{π(𝔭) : 𝔭 prime}`.
    pub fn pseudo_spectrum(&self) -> Vec<IdealSet> {
        let set: BTreeSet<IdealSet> = self.primes().into_iter().map(|p| self.pi(p)).collect();
        set.into_iter().collect()
    }

    /// Pseudoprimes from the definition: maximal difference ideals avoiding a
    /// multiplicative set `S ∋ 1`. Saturated sets suffice, and those are the
    /// complements of nonempty unions of primes.
    pub fn pseudoprimes_by_definition(&self) -> Vec<IdealSet> {
        let primes = self.primes();
        let diff = self.difference_ideals();
        let mut out = BTreeSet::new();
        for mask in 1u32..(1 << primes.len()) {
            let union = primes.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).fold(0, |acc, (_, &p)| acc | p);
            let s = self.all() & !union;
            let avoiding: Vec<IdealSet> = diff.iter().copied().filter(|&i| i & s == 0).collect();
            for &i in &avoiding {
                if !avoiding.iter().any(|&j| j != i && subset(i, j)) {
                    out.insert(i);
                }
            }
        }
        out.into_iter().collect()
    }

    /// The largest difference ideal inside `i`, as the sum of all difference ideals it contains.
    fn largest_difference_ideal_in(&self, diff: &[IdealSet], i: IdealSet) -> IdealSet {
        diff.iter().filter(|&&d| subset(d, i)).fold(self.zero_ideal(), |acc, &d| self.sum(acc, d))
    }

    pub fn format_ideal(&self, i: IdealSet) -> String {
        if i == self.all() {
            return "R".into();
        }
        if i == self.zero_ideal() {
            return "0".into();
        }
        // A small generating set, greedily.
        let mut gens = Vec::new();
        let mut span = self.zero_ideal();
        for a in bits(i) {
            if span >> a & 1 == 0 {
                gens.push(self.labels[a].clone());
                span = self.sum(span, self.principal(a));
            }
        }
        format!("({})", gens.join(", "))
    }

    /// Runs every property check on this ring.
    pub fn verify_pseudoprime_props(&self) -> LabReport {
        Lab::new(self).run()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckItem {
    pub name: &'static str,
    pub passed: bool,
    /// Number of instances examined.
    pub checked: usize,
    pub witness: Option<String>,
}

#[derive(Debug, Clone)]
pub struct LabReport {
    pub ring: String,
    pub size: usize,
    pub ideals: usize,
    pub difference_ideals: usize,
    pub pseudo_spectrum: Vec<String>,
    pub items: Vec<CheckItem>,
}

impl LabReport {
    pub fn all_passed(&self) -> bool {
        self.items.iter().all(|i| i.passed)
    }
}

struct Lab<'a> {
    r: &'a FiniteDiffRing,
    ideals: Vec<IdealSet>,
    diff: Vec<IdealSet>,
    primes: Vec<IdealSet>,
    pspec: Vec<IdealSet>,
    items: Vec<CheckItem>,
}

impl<'a> Lab<'a> {
    fn new(r: &'a FiniteDiffRing) -> Self {
        let ideals = r.enumerate_ideals();
        let diff = ideals.iter().copied().filter(|&i| r.is_sigma_stable(i)).collect();
        let primes = ideals.iter().copied().filter(|&i| r.is_prime(i)).collect();
        let pspec = r.pseudoprimes_by_definition();
        Lab { r, ideals, diff, primes, pspec, items: Vec::new() }
    }

    /// Records a check; `cases` yields `Some(witness)` for failures.
    fn check(&mut self, name: &'static str, cases: impl IntoIterator<Item = Option<String>>) {
        let mut checked = 0;
        let mut witness = None;
        for c in cases {
            checked += 1;
            if witness.is_none() {
                witness = c;
            }
        }
        self.items.push(CheckItem { name, passed: witness.is_none(), checked, witness });
    }

    fn fmt(&self, i: IdealSet) -> String {
        self.r.format_ideal(i)
    }

    /// `V(E)` on the pseudospectrum for a difference ideal `E`.
    fn v(&self, i: IdealSet) -> Vec<IdealSet> {
        self.pspec.iter().copied().filter(|&q| subset(i, q)).collect()
    }

    fn union_v(&self, a: &[IdealSet], b: &[IdealSet]) -> Vec<IdealSet> {
        let set: BTreeSet<IdealSet> = a.iter().chain(b).copied().collect();
        set.into_iter().collect()
    }

    fn run(mut self) -> LabReport {
        let r = self.r;
        let g = r.group.clone();
        let all = r.all();

        let cases: Vec<_> = self.pspec.iter().map(|&q| (r.radical(q) != q).then(|| self.fmt(q))).collect();
        self.check("pseudoprimes are radical", cases);

        let mut cases = Vec::new();
        for &q in &self.pspec {
            let assoc: Vec<IdealSet> = self
                .primes
                .iter()
                .copied()
                .filter(|&p| r.largest_difference_ideal_in(&self.diff, p) == q)
                .collect();
            cases.push(assoc.is_empty().then(|| format!("{} has no Σ-associated prime", self.fmt(q))));
            for p in assoc {
                cases.push((r.pi(p) != q).then(|| format!("q = {}, p = {}", self.fmt(q), self.fmt(p))));
            }
        }
        self.check("q is the intersection of the conjugates of each Σ-associated prime", cases);

        let mut cases = Vec::new();
        for &q in &self.pspec {
            for s in 0..r.size() {
                if q >> s & 1 == 0 {
                    let sat = r.pi(r.colon_infinity(q, s));
                    cases.push((sat != q).then(|| format!("q = {}, s = {}", self.fmt(q), r.label(s))));
                }
            }
        }
        self.check("(q : s^inf)_Σ = q for s outside q", cases);

        let mut cases = Vec::new();
        for &q in &self.pspec {
            for &q2 in &self.pspec {
                for s in 0..r.size() {
                    if r.colon_infinity(q, s) == r.colon_infinity(q2, s) {
                        let both = q >> s & 1 == 1 && q2 >> s & 1 == 1;
                        cases.push((!both && q != q2).then(|| {
                            format!("q = {}, q' = {}, s = {}", self.fmt(q), self.fmt(q2), r.label(s))
                        }));
                    }
                }
            }
        }
        self.check("q : s^inf = q' : s^inf forces s in both or q = q'", cases);

        let mut cases = Vec::new();
        for &q in &self.pspec {
            for &a in &self.diff {
                for &b in &self.diff {
                    if subset(r.product(a, b), q) {
                        cases.push((!subset(a, q) && !subset(b, q)).then(|| {
                            format!("q = {}, a = {}, b = {}", self.fmt(q), self.fmt(a), self.fmt(b))
                        }));
                    }
                }
            }
        }
        self.check("ab in q implies a in q or b in q", cases);

        let mut cases = Vec::new();
        for &q in &self.pspec {
            let over: Vec<IdealSet> = self.primes.iter().copied().filter(|&p| subset(q, p)).collect();
            for &p in &over {
                if over.iter().any(|&p2| p2 != p && subset(p2, p)) {
                    continue;
                }
                let assoc = r.largest_difference_ideal_in(&self.diff, p) == q;
                cases.push((!assoc).then(|| format!("q = {}, minimal prime {}", self.fmt(q), self.fmt(p))));
            }
        }
        self.check("minimal primes over q are Σ-associated", cases);

        let proper_diff: Vec<IdealSet> = self.diff.iter().copied().filter(|&d| d != all).collect();
        let pmax: Vec<IdealSet> =
            proper_diff.iter().copied().filter(|&d| !proper_diff.iter().any(|&e| e != d && subset(d, e))).collect();
        let cases: Vec<_> = r
            .maximal_ideals()
            .into_iter()
            .map(|m| (!pmax.contains(&r.pi(m))).then(|| format!("m = {}, π(m) = {}", self.fmt(m), self.fmt(r.pi(m)))))
            .collect();
        self.check("π maps maximal ideals to pseudomaximal ideals", cases);

        // Multiplicative sets: powers of each element and complements of unions of primes.
        let mut msets: BTreeSet<IdealSet> = (0..r.size()).map(|s| r.powers(s)).collect();
        for mask in 1u32..(1 << self.primes.len()) {
            let union = self.primes.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).fold(0, |acc, (_, &p)| acc | p);
            msets.insert(all & !union);
        }
        let mut cases = Vec::new();
        for &q in &self.pspec {
            for &s in &msets {
                if s & q == 0 {
                    let sat = r.pi(r.saturation(q, s));
                    cases.push((sat != q).then(|| format!("q = {}", self.fmt(q))));
                }
            }
        }
        self.check("(S(q))_Σ = q for multiplicative S avoiding q", cases);

        let zero = r.zero_ideal();
        self.check(
            "V(0) is everything and V(1) is empty",
            [
                (self.v(zero).len() != self.pspec.len()).then(|| "V(0)".to_string()),
                (!self.v(all).is_empty()).then(|| "V(1)".to_string()),
            ],
        );

        let mut cases = Vec::new();
        for a in 0..r.size() {
            for b in a..r.size() {
                let gen = |set: IdealSet| {
                    // The difference ideal generated by a set.
                    let orbit = g.elements().fold(0u128, |acc, s| acc | r.sigma_image(s, set));
                    r.generated(orbit)
                };
                let joint = self.v(gen(1 << a | 1 << b));
                let va = self.v(gen(1 << a));
                let vb = self.v(gen(1 << b));
                let meet: Vec<IdealSet> = va.iter().copied().filter(|q| vb.contains(q)).collect();
                cases.push((joint != meet).then(|| format!("E = {{{}}}, {{{}}}", r.label(a), r.label(b))));
            }
        }
        self.check("V(E ∪ F) = V(E) ∩ V(F)", cases);

        let mut cases = Vec::new();
        for &a in &self.diff {
            for &b in &self.diff {
                let union = self.union_v(&self.v(a), &self.v(b));
                let ok = self.v(a & b) == union && self.v(r.product(a, b)) == union;
                cases.push((!ok).then(|| format!("a = {}, b = {}", self.fmt(a), self.fmt(b))));
            }
        }
        self.check("V(a ∩ b) = V(ab) = V(a) ∪ V(b)", cases);

        let mut cases = Vec::new();
        let ideals = &self.ideals;
        let triples = ideals.len() <= 40;
        for (x, &a) in ideals.iter().enumerate() {
            for (y, &b) in ideals.iter().enumerate().skip(x) {
                cases.push((r.pi(a & b) != r.pi(a) & r.pi(b)).then(|| format!("{} ∩ {}", self.fmt(a), self.fmt(b))));
                if triples {
                    for &c in ideals.iter().skip(y) {
                        let ok = r.pi(a & b & c) == r.pi(a) & r.pi(b) & r.pi(c);
                        cases.push((!ok).then(|| format!("{} ∩ {} ∩ {}", self.fmt(a), self.fmt(b), self.fmt(c))));
                    }
                }
            }
        }
        self.check("π commutes with intersections", cases);

        let cases: Vec<_> = self
            .diff
            .iter()
            .copied()
            .filter(|&d| r.radical(d) == d)
            .map(|d| {
                let meet = self.pspec.iter().copied().filter(|&q| subset(d, q)).fold(all, |acc, q| acc & q);
                (meet != d).then(|| self.fmt(d))
            })
            .collect();
        self.check("radical difference ideals are intersections of pseudoprimes", cases);

        let radicals: Vec<IdealSet> = self.diff.iter().copied().filter(|&d| r.radical(d) == d).collect();
        let mut cases = Vec::new();
        for (x, &a) in radicals.iter().enumerate() {
            for &b in &radicals[x + 1..] {
                cases.push((self.v(a) == self.v(b)).then(|| format!("{} and {}", self.fmt(a), self.fmt(b))));
            }
        }
        self.check("closed sets correspond to radical difference ideals", cases);

        let image = r.pseudo_spectrum();
        self.check(
            "pseudoprimes are exactly the images π(p) of primes",
            [(image != self.pspec).then(|| {
                format!(
                    "definition {:?} vs image {:?}",
                    self.pspec.iter().map(|&q| self.fmt(q)).collect::<Vec<_>>(),
                    image.iter().map(|&q| self.fmt(q)).collect::<Vec<_>>()
                )
            })],
        );

        if let Some(m) = r.pseudofield_factors {
            let maxes = r.maximal_ideals();
            let orbit: BTreeSet<IdealSet> = g.elements().map(|s| r.sigma_image(s, maxes[0])).collect();
            let ok = maxes.len() == m && orbit.len() == m;
            self.check(
                "a pseudofield has one maximal ideal per factor, permuted transitively",
                [(!ok).then(|| format!("{} maximal ideals, orbit of size {}", maxes.len(), orbit.len()))],
            );
        }

        LabReport {
            ring: r.name.clone(),
            size: r.size(),
            ideals: self.ideals.len(),
            difference_ideals: self.diff.len(),
            pseudo_spectrum: self.pspec.iter().map(|&q| r.format_ideal(q)).collect(),
            items: self.items,
        }
    }
}

/// Names of the built-in rings.
pub const CATALOGUE: &[&str] = &[
    "gf3^2-swap",
    "gf2[x]/(x^2)",
    "gf5[x]/(x^2)-neg",
    "fun-gf2-z4",
    "gf9^2-conj",
    "gf2^4-(01)(23)",
    "gf3[x]/(x^3)-neg",
    "gf4-frob",
    "gf3[x]/(x^2-1)-neg",
];

/// Builds a ring of the catalogue by name.
pub fn catalogue_ring(name: &str) -> Result<FiniteDiffRing> {
    let s = GroupElem(1);
    let gf = |p, k| Field::gf(p, k);
    let z2 = Group::cyclic(2)?;
    let ints = |k: &Field, v: &[i64]| v.iter().map(|&x| k.from_int(x)).collect::<Vec<_>>();
    match name {
        "gf3^2-swap" => FiniteDiffRing::from_pseudofield(name, &Pseudofield::fun_of(&gf(3, 1)?, &z2)),
        "gf2[x]/(x^2)" => {
            let k = gf(2, 1)?;
            FiniteDiffRing::poly_quotient(name, &k, &ints(&k, &[0, 0, 1]), &Group::trivial(), &[])
        }
        "gf5[x]/(x^2)-neg" => {
            let k = gf(5, 1)?;
            FiniteDiffRing::poly_quotient(name, &k, &ints(&k, &[0, 0, 1]), &z2, &[(s, k.from_int(-1))])
        }
        "fun-gf2-z4" => FiniteDiffRing::from_pseudofield(name, &Pseudofield::fun_of(&gf(2, 1)?, &Group::cyclic(4)?)),
        "gf9^2-conj" => {
            let pf = Pseudofield::product(&gf(3, 2)?, &z2, 2, &[(s, vec![1, 0], vec![1, 1])])?;
            FiniteDiffRing::from_pseudofield(name, &pf)
        }
        "gf2^4-(01)(23)" => FiniteDiffRing::power_ring(name, &gf(2, 1)?, 4, &z2, &[(s, vec![1, 0, 3, 2])]),
        "gf3[x]/(x^3)-neg" => {
            let k = gf(3, 1)?;
            FiniteDiffRing::poly_quotient(name, &k, &ints(&k, &[0, 0, 0, 1]), &z2, &[(s, k.from_int(-1))])
        }
        "gf4-frob" => {
            let pf = Pseudofield::product(&gf(2, 2)?, &z2, 1, &[(s, vec![0], vec![1])])?;
            FiniteDiffRing::from_pseudofield(name, &pf)
        }
        "gf3[x]/(x^2-1)-neg" => {
            let k = gf(3, 1)?;
            FiniteDiffRing::poly_quotient(name, &k, &ints(&k, &[-1, 0, 1]), &z2, &[(s, k.from_int(-1))])
        }
        _ => Err(Error::InvalidArgument(format!(
            "unknown ring `{name}`; known rings: {}",
            CATALOGUE.join(", ")
        ))),
    }
}
