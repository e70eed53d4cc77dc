use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::cmp::Ordering;

use super::{Poly, PolyRing};
use crate::monomial::Monomial;

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    degree: u32,
    age: usize,
}

/// Full reduction of `f` by `basis` (any list of nonzero polynomials).
pub(crate) fn normal_form(ring: &PolyRing, f: &Poly, basis: &[Poly]) -> Poly {
    let field = ring.field();
    let mut p = f.clone();
    let mut rest: Vec<(Monomial, crate::coeff::FieldElem)> = Vec::new();
    'outer: while let Some((lm, lc)) = p.terms.first().cloned() {
        for g in basis {
            let glm = g.leading_monomial().expect("basis elements are nonzero");
            if glm.divides(&lm) {
                let c = field.neg(&field.div(&lc, g.leading_coeff().unwrap()).unwrap());
                p = ring.add_scaled(&p, &c, &glm.quotient_of(&lm), g);
                continue 'outer;
            }
        }
        rest.push(p.terms.remove(0));
    }
    // `rest` was collected in decreasing order already.
    Poly { terms: rest }
}

fn s_polynomial(ring: &PolyRing, f: &Poly, g: &Poly, lcm: &Monomial) -> Poly {
    let field = ring.field();
    let a = f.leading_monomial().unwrap().quotient_of(lcm);
    let b = g.leading_monomial().unwrap().quotient_of(lcm);
    let left = ring.mul_term(f, &a, &field.inv(f.leading_coeff().unwrap()).unwrap());
    let c = field.neg(&field.inv(g.leading_coeff().unwrap()).unwrap());
    ring.add_scaled(&left, &c, &b, g)
}

/// Reduced Gröbner basis of the ideal generated by `gens`.
///
/// Buchberger with the normal selection strategy (smallest lcm degree, then
/// oldest pair) and both of Buchberger's criteria. The result is monic,
/// autoreduced and sorted by increasing leading monomial; `[]` is the zero
/// ideal and `[1]` the unit ideal.
pub fn groebner_basis(ring: &PolyRing, gens: &[Poly]) -> Vec<Poly> {
    let mut basis: Vec<Poly> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();
    let mut pending: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut age = 0usize;

    let mut add = |basis: &mut Vec<Poly>, pairs: &mut Vec<Pair>, pending: &mut BTreeSet<(usize, usize)>, h: Poly| {
        let j = basis.len();
        let hl = h.leading_monomial().unwrap().clone();
        for (i, g) in basis.iter().enumerate() {
            let lcm = g.leading_monomial().unwrap().lcm(&hl);
            pairs.push(Pair { i, j, degree: lcm.degree(), lcm, age });
            pending.insert((i, j));
            age += 1;
        }
        basis.push(h);
    };

    for g in gens {
        let r = normal_form(ring, g, &basis);
        if r.is_zero() {
            continue;
        }
        if r.is_constant() {
            return alloc::vec![ring.one()];
        }
        add(&mut basis, &mut pairs, &mut pending, ring.monic(&r));
    }

    while !pairs.is_empty() {
        let k = (0..pairs.len())
            .min_by(|&a, &b| {
                pairs[a].degree.cmp(&pairs[b].degree).then(pairs[a].age.cmp(&pairs[b].age))
            })
            .unwrap();
        let Pair { i, j, lcm, .. } = pairs.swap_remove(k);
        pending.remove(&(i, j));

        let (li, lj) = (basis[i].leading_monomial().unwrap(), basis[j].leading_monomial().unwrap());
        if li.coprime(lj) {
            continue;
        }
        let chain = (0..basis.len()).any(|m| {
            m != i
                && m != j
                && basis[m].leading_monomial().unwrap().divides(&lcm)
                && !pending.contains(&(i.min(m), i.max(m)))
                && !pending.contains(&(j.min(m), j.max(m)))
        });
        if chain {
            continue;
        }
        let s = s_polynomial(ring, &basis[i], &basis[j], &lcm);
        let r = normal_form(ring, &s, &basis);
        if r.is_zero() {
            continue;
        }
        if r.is_constant() {
            return alloc::vec![ring.one()];
        }
        add(&mut basis, &mut pairs, &mut pending, ring.monic(&r));
    }
    reduce_basis(ring, basis)
}

/// Minimises and interreduces a Gröbner basis, then sorts it.
pub fn reduce_basis(ring: &PolyRing, mut basis: Vec<Poly>) -> Vec<Poly> {
    basis.retain(|g| !g.is_zero());
    basis.sort_by(|a, b| ring.cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));
    let mut minimal: Vec<Poly> = Vec::new();
    for g in basis {
        let lm = g.leading_monomial().unwrap();
        if !minimal.iter().any(|h| h.leading_monomial().unwrap().divides(lm)) {
            minimal.push(g);
        }
    }
    let mut out = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        let others: Vec<Poly> =
            minimal.iter().enumerate().filter(|&(m, _)| m != k).map(|(_, g)| g.clone()).collect();
        let g = &minimal[k];
        // Keep the leading term, reduce the tail.
        let lead = Poly { terms: alloc::vec![g.terms[0].clone()] };
        let tail = Poly { terms: g.terms[1..].to_vec() };
        let reduced = ring.add(&lead, &normal_form(ring, &tail, &others));
        out.push(ring.monic(&reduced));
    }
    out.sort_by(|a, b| ring.cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));
    debug_assert!(out.windows(2).all(|w| ring.cmp(
        w[0].leading_monomial().unwrap(),
        w[1].leading_monomial().unwrap()
    ) == Ordering::Less));
    out
}

/// A basis element together with its expression in the original generators.
struct Tracked {
    poly: Poly,
    cofactors: Vec<Poly>,
}

fn combine(ring: &PolyRing, a: &[Poly], c: &crate::coeff::FieldElem, m: &Monomial, b: &[Poly]) -> Vec<Poly> {
    a.iter().zip(b).map(|(x, y)| ring.add_scaled(x, c, m, y)).collect()
}

/// Reduces `f` by a tracked basis, returning the remainder and the accumulated
/// cofactors (so that `f = Σ cof_i·gens_i + remainder`).
fn tracked_reduce(ring: &PolyRing, f: &Poly, basis: &[Tracked], ngens: usize) -> (Poly, Vec<Poly>) {
    let field = ring.field();
    let mut p = f.clone();
    let mut cof = alloc::vec![Poly::zero(); ngens];
    let mut rest = Vec::new();
    'outer: while let Some((lm, lc)) = p.terms.first().cloned() {
        for g in basis {
            let glm = g.poly.leading_monomial().unwrap();
            if glm.divides(&lm) {
                let q = field.div(&lc, g.poly.leading_coeff().unwrap()).unwrap();
                let mono = glm.quotient_of(&lm);
                p = ring.add_scaled(&p, &field.neg(&q), &mono, &g.poly);
                cof = combine(ring, &cof, &q, &mono, &g.cofactors);
                continue 'outer;
            }
        }
        rest.push(p.terms.remove(0));
    }
    (Poly { terms: rest }, cof)
}

/// Expresses `f` as a combination of `gens`, if it lies in their ideal.
pub(crate) fn lift(ring: &PolyRing, gens: &[Poly], f: &Poly) -> Option<Vec<Poly>> {
    let n = gens.len();
    let field = ring.field();
    let unit_cof = |k: usize| -> Vec<Poly> {
        (0..n).map(|i| if i == k { ring.one() } else { Poly::zero() }).collect()
    };
    let mut basis: Vec<Tracked> = Vec::new();
    for (k, g) in gens.iter().enumerate() {
        if g.is_zero() {
            continue;
        }
        let (r, c) = tracked_reduce(ring, g, &basis, n);
        if r.is_zero() {
            continue;
        }
        // r = g - Σ c·gens
        let mut cof = unit_cof(k);
        cof = combine(ring, &cof, &field.from_int(-1), &Monomial::one(ring.nvars()), &c);
        let inv = field.inv(r.leading_coeff().unwrap()).unwrap();
        basis.push(Tracked {
            poly: ring.scale(&r, &inv),
            cofactors: cof.iter().map(|x| ring.scale(x, &inv)).collect(),
        });
    }
    let mut queue: Vec<(usize, usize)> =
        (0..basis.len()).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
    while let Some((i, j)) = queue.pop() {
        let (li, lj) = (
            basis[i].poly.leading_monomial().unwrap().clone(),
            basis[j].poly.leading_monomial().unwrap().clone(),
        );
        if li.coprime(&lj) {
            continue;
        }
        let lcm = li.lcm(&lj);
        let (a, b) = (li.quotient_of(&lcm), lj.quotient_of(&lcm));
        // Basis elements are monic.
        let s = ring.add_scaled(&ring.mul_term(&basis[i].poly, &a, &field.one()), &field.from_int(-1), &b, &basis[j].poly);
        let s_cof: Vec<Poly> = combine(
            ring,
            &basis[i].cofactors.iter().map(|x| ring.mul_term(x, &a, &field.one())).collect::<Vec<_>>(),
            &field.from_int(-1),
            &b,
            &basis[j].cofactors,
        );
        let (r, c) = tracked_reduce(ring, &s, &basis, n);
        if r.is_zero() {
            continue;
        }
        let cof = combine(ring, &s_cof, &field.from_int(-1), &Monomial::one(ring.nvars()), &c);
        let inv = field.inv(r.leading_coeff().unwrap()).unwrap();
        let new = basis.len();
        basis.push(Tracked {
            poly: ring.scale(&r, &inv),
            cofactors: cof.iter().map(|x| ring.scale(x, &inv)).collect(),
        });
        queue.extend((0..new).map(|i| (i, new)));
    }
    let (r, c) = tracked_reduce(ring, f, &basis, n);
    r.is_zero().then_some(c)
}
