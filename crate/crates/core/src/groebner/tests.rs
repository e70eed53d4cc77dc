use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use proptest::prelude::*;

use super::*;
use crate::univariate;

fn ring(field: Field, vars: &[&str]) -> PolyRing {
    PolyRing::new(field, vars.iter().map(|v| String::from(*v)).collect(), MonomialOrder::Grevlex)
}

/// Builds `Σ c·x^e` from `(c, exponents)` pairs.
fn poly(r: &PolyRing, terms: &[(i64, &[u32])]) -> Poly {
    r.from_terms(terms.iter().map(|(c, e)| (Monomial(e.to_vec()), r.field().from_int(*c))).collect())
}

fn gf2_uv() -> PolyRing {
    ring(Field::prime(2).unwrap(), &["u", "v"])
}

/// (uv, u+v+1) over GF(2).
fn running_example(r: &PolyRing) -> Ideal {
    Ideal::new(r, vec![poly(r, &[(1, &[1, 1])]), poly(r, &[(1, &[1, 0]), (1, &[0, 1]), (1, &[0, 0])])])
}

#[test]
fn basis_of_running_example() {
    let r = gf2_uv();
    let i = running_example(&r);
    assert_eq!(i.format_basis(), vec!["u + v + 1", "v^2 + v"]);
}

#[test]
fn unit_and_zero_bases() {
    let r = gf2_uv();
    assert_eq!(Ideal::new(&r, vec![r.one()]).basis(), &[r.one()]);
    assert!(Ideal::new(&r, vec![r.zero()]).basis().is_empty());
    assert!(Ideal::unit(&r).is_unit());
    assert!(Ideal::zero(&r).is_zero());
}

#[test]
fn normal_forms() {
    let r = gf2_uv();
    let i = running_example(&r);
    assert!(i.normal_form(&poly(&r, &[(1, &[1, 1])])).is_zero());
    assert_eq!(r.format(&i.normal_form(&poly(&r, &[(1, &[2, 0])]))), "v + 1");
    assert!(i.normal_form(&r.zero()).is_zero());
}

#[test]
fn elimination() {
    let r = gf2_uv();
    let i = running_example(&r);
    assert_eq!(i.eliminate(&[0]).format_basis(), vec!["v^2 + v"]);
    assert_eq!(i.eliminate(&[]), i);
    let u = Ideal::new(&r, vec![r.var(0)]);
    assert!(u.eliminate(&[0]).is_zero());
}

#[test]
fn intersections() {
    let r = ring(Field::rationals(), &["u", "v"]);
    let u = Ideal::new(&r, vec![r.var(0)]);
    let v = Ideal::new(&r, vec![r.var(1)]);
    assert_eq!(u.intersect(&v).format_basis(), vec!["u*v"]);
    assert_eq!(u.intersect(&u), u);
    assert_eq!(u.intersect(&Ideal::unit(&r)), u);
}

#[test]
fn saturations() {
    let r = ring(Field::rationals(), &["u", "v"]);
    let uv = Ideal::new(&r, vec![r.mul(&r.var(0), &r.var(1))]);
    assert_eq!(uv.saturate(&r.var(1)).unwrap().format_basis(), vec!["u"]);
    let u = Ideal::new(&r, vec![r.var(0)]);
    assert!(u.saturate(&r.var(0)).unwrap().is_unit());
    assert!(Ideal::zero(&r).saturate(&r.var(0)).unwrap().is_zero());
    assert!(matches!(u.saturate(&r.zero()), Err(crate::Error::ZeroSaturator)));
}

#[test]
fn radical_membership() {
    let r = ring(Field::rationals(), &["u", "v"]);
    let u2 = Ideal::new(&r, vec![r.pow(&r.var(0), 2)]);
    assert!(u2.radical_contains(&r.var(0)));
    let u = Ideal::new(&r, vec![r.var(0)]);
    assert!(!u.radical_contains(&r.var(1)));
    let g = gf2_uv();
    let i = running_example(&g);
    assert!(i.radical_contains(&poly(&g, &[(1, &[1, 0]), (1, &[0, 1]), (1, &[0, 0])])));
}

#[test]
fn zero_dimensional_radicals() {
    let q = ring(Field::rationals(), &["u"]);
    let u2 = Ideal::new(&q, vec![q.pow(&q.var(0), 2)]);
    assert_eq!(u2.zero_dim_radical().unwrap().format_basis(), vec!["u"]);

    let g = ring(Field::prime(2).unwrap(), &["u"]);
    let cubic = Ideal::new(&g, vec![poly(&g, &[(1, &[3]), (1, &[2])])]);
    assert_eq!(cubic.zero_dim_radical().unwrap().format_basis(), vec!["u^2 + u"]);

    let r = gf2_uv();
    let i = running_example(&r);
    assert_eq!(i.zero_dim_radical().unwrap(), i);

    let line = Ideal::new(&r, vec![r.var(0)]);
    assert!(matches!(line.zero_dim_radical(), Err(crate::Error::PositiveDimension { dim: 1, .. })));
}

#[test]
fn krull_dimensions() {
    let r = gf2_uv();
    assert_eq!(Ideal::zero(&r).krull_dimension(), 2);
    assert_eq!(running_example(&r).krull_dimension(), 0);
    assert_eq!(Ideal::new(&r, vec![poly(&r, &[(1, &[1, 1])])]).krull_dimension(), 1);
    assert_eq!(Ideal::unit(&r).krull_dimension(), -1);
    let big = PolyRing::with_n_vars(Field::prime(3).unwrap(), 7);
    assert_eq!(Ideal::zero(&big).krull_dimension(), 7);
}

#[test]
fn quotient_and_minimal_polynomials() {
    let r = gf2_uv();
    let i = running_example(&r);
    assert_eq!(i.quotient_dimension().unwrap(), 2);
    let f = r.field().clone();
    // v satisfies v^2 + v.
    let mp = i.minimal_polynomial(1).unwrap();
    assert_eq!(mp, vec![f.zero(), f.one(), f.one()]);
    // The quotient is GF(2)×GF(2): radical, not a field.
    assert!(!i.is_prime_zero_dim().unwrap());
    // (u^2+u+1, v+u) has quotient GF(4).
    let m = Ideal::new(&r, vec![poly(&r, &[(1, &[2, 0]), (1, &[1, 0]), (1, &[0, 0])]), r.add(&r.var(0), &r.var(1))]);
    assert!(m.is_prime_zero_dim().unwrap());
    // (u^2) is not radical.
    let n = Ideal::new(&r, vec![r.pow(&r.var(0), 2), r.var(1)]);
    assert!(!n.is_prime_zero_dim().unwrap());
}

#[test]
fn gf9_squarefree_through_radical() {
    let k = Field::gf(3, 2).unwrap();
    let r = ring(k.clone(), &["x"]);
    let w = k.generator().unwrap();
    let lin = r.sub(&r.var(0), &r.constant(w.clone()));
    let cube = Ideal::new(&r, vec![r.pow(&lin, 3)]);
    assert_eq!(cube.zero_dim_radical().unwrap().basis(), core::slice::from_ref(&lin));
    let sq = univariate::squarefree_part(&k, &vec![k.neg(&k.pow(&w, 3)), k.one()]);
    assert_eq!(sq.len(), 2);
}

#[test]
fn reduced_basis_is_deterministic() {
    let r = ring(Field::prime(5).unwrap(), &["x", "y", "z"]);
    let gens = vec![
        poly(&r, &[(1, &[2, 0, 0]), (3, &[0, 1, 1]), (1, &[0, 0, 0])]),
        poly(&r, &[(2, &[1, 1, 0]), (1, &[0, 0, 2])]),
        poly(&r, &[(1, &[0, 2, 0]), (4, &[1, 0, 0])]),
    ];
    let a = Ideal::new(&r, gens.clone());
    let mut rev = gens;
    rev.reverse();
    let b = Ideal::new(&r, rev);
    assert_eq!(a.basis(), b.basis());
    for g in a.basis() {
        assert!(r.field().is_one(g.leading_coeff().unwrap()));
    }
}

#[test]
fn lift_recovers_combination() {
    let r = gf2_uv();
    let gens = vec![poly(&r, &[(1, &[1, 1])]), poly(&r, &[(1, &[1, 0]), (1, &[0, 1]), (1, &[0, 0])])];
    let i = Ideal::new(&r, gens.clone());
    let target = poly(&r, &[(1, &[0, 2]), (1, &[0, 1])]);
    let cof = i.lift(&target).unwrap();
    let back = cof.iter().zip(&gens).fold(r.zero(), |acc, (c, g)| r.add(&acc, &r.mul(c, g)));
    assert_eq!(back, target);
    assert!(i.lift(&r.var(0)).is_none());
}

#[test]
fn lex_and_block_orders_agree_on_membership() {
    let r = gf2_uv();
    let i = running_example(&r);
    let lex = i.with_order(MonomialOrder::Lex);
    for g in i.basis() {
        assert!(lex.contains(&lex.ring().reorder(g)));
    }
    assert_eq!(lex.format_basis(), vec!["v^2 + v", "u + v + 1"]);
}

#[test]
fn base_change_to_extension() {
    let r = gf2_uv();
    let m = Ideal::new(&r, vec![poly(&r, &[(1, &[2, 0]), (1, &[1, 0]), (1, &[0, 0])]), r.var(1)]);
    let emb = r.field().extend(2).unwrap();
    let big = m.base_change(&emb);
    assert!(!big.is_prime_zero_dim().unwrap());
    assert_eq!(big.quotient_dimension().unwrap(), 2);
}

// ---- brute-force oracles ----

fn gf_points(q: u64, n: usize) -> Vec<Vec<FieldElem>> {
    let f = Field::prime(q).unwrap();
    let total = q.pow(n as u32);
    (0..total)
        .map(|mut c| {
            (0..n)
                .map(|_| {
                    let x = f.element(c % q).unwrap();
                    c /= q;
                    x
                })
                .collect()
        })
        .collect()
}

fn arb_poly(q: u64, n: usize, max_deg: u32) -> impl Strategy<Value = Vec<(i64, Vec<u32>)>> {
    prop::collection::vec(
        (0..q as i64, prop::collection::vec(0..=max_deg, n)),
        0..5,
    )
}

fn build(r: &PolyRing, t: &[(i64, Vec<u32>)]) -> Poly {
    r.from_terms(t.iter().map(|(c, e)| (Monomial(e.clone()), r.field().from_int(*c))).collect())
}

/// Monomial ideals by exponent vectors.
fn monomial_ideal(r: &PolyRing, gens: &[Vec<u32>]) -> Ideal {
    Ideal::new(r, gens.iter().map(|e| r.term(Monomial(e.clone()), r.field().one())).collect())
}

fn in_monomial_ideal(gens: &[Vec<u32>], m: &[u32]) -> bool {
    gens.iter().any(|g| g.iter().zip(m).all(|(a, b)| a <= b))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// With the field equations adjoined, `I` is the ideal of its GF(3)-points,
    /// so membership is decided by evaluation.
    #[test]
    fn membership_matches_evaluation(gens in prop::collection::vec(arb_poly(3, 2, 2), 0..3), f in arb_poly(3, 2, 3)) {
        let r = ring(Field::prime(3).unwrap(), &["u", "v"]);
        let mut g: Vec<Poly> = gens.iter().map(|t| build(&r, t)).collect();
        for i in 0..2 {
            g.push(r.sub(&r.pow(&r.var(i), 3), &r.var(i)));
        }
        let ideal = Ideal::new(&r, g.clone());
        let zeros: Vec<Vec<FieldElem>> = gf_points(3, 2)
            .into_iter()
            .filter(|p| g.iter().all(|h| r.field().is_zero(&r.eval(h, p))))
            .collect();
        let f = build(&r, &f);
        let vanishes = zeros.iter().all(|p| r.field().is_zero(&r.eval(&f, p)));
        prop_assert_eq!(ideal.contains(&f), vanishes);
        prop_assert_eq!(vanishing_ideal(&r, &zeros), ideal);
    }

    /// Intersection and saturation of monomial ideals against exponent arithmetic.
    #[test]
    fn monomial_intersect_and_saturate(
        a in prop::collection::vec(prop::collection::vec(0u32..3, 3), 1..4),
        b in prop::collection::vec(prop::collection::vec(0u32..3, 3), 1..4),
        probe in prop::collection::vec(prop::collection::vec(0u32..5, 3), 1..12),
        var in 0usize..3,
    ) {
        let r = ring(Field::rationals(), &["x", "y", "z"]);
        let (ia, ib) = (monomial_ideal(&r, &a), monomial_ideal(&r, &b));
        let meet = ia.intersect(&ib);
        let sat = ia.saturate(&r.var(var)).unwrap();
        let stripped: Vec<Vec<u32>> = a.iter().map(|e| { let mut e = e.clone(); e[var] = 0; e }).collect();
        for m in &probe {
            let mono = r.term(Monomial(m.clone()), r.field().one());
            prop_assert_eq!(meet.contains(&mono), in_monomial_ideal(&a, m) && in_monomial_ideal(&b, m));
            prop_assert_eq!(sat.contains(&mono), in_monomial_ideal(&stripped, m));
        }
    }

    /// Vanishing ideals by Buchberger–Möller equal iterated intersections of point ideals.
    #[test]
    fn vanishing_ideal_matches_intersection(idx in prop::collection::btree_set(0usize..25, 0..6)) {
        let r = ring(Field::prime(5).unwrap(), &["u", "v"]);
        let all = gf_points(5, 2);
        let pts: Vec<Vec<FieldElem>> = idx.iter().map(|&i| all[i].clone()).collect();
        let mut oracle = Ideal::unit(&r);
        for p in &pts {
            let gens = (0..2).map(|i| r.sub(&r.var(i), &r.constant(p[i].clone()))).collect();
            oracle = oracle.intersect(&Ideal::new(&r, gens));
        }
        let bm = vanishing_ideal(&r, &pts);
        prop_assert_eq!(&bm, &oracle);
        if !pts.is_empty() {
            prop_assert_eq!(bm.quotient_dimension().unwrap(), pts.len());
        }
    }

    /// The radical of a zero-dimensional ideal is radical and has the same zeros.
    #[test]
    fn radical_is_idempotent(gens in prop::collection::vec(arb_poly(3, 2, 2), 0..3)) {
        let r = ring(Field::prime(3).unwrap(), &["u", "v"]);
        let mut g: Vec<Poly> = gens.iter().map(|t| build(&r, t)).collect();
        g.push(r.pow(&r.sub(&r.pow(&r.var(0), 3), &r.var(0)), 2));
        g.push(r.pow(&r.var(1), 4));
        let i = Ideal::new(&r, g);
        let rad = i.zero_dim_radical().unwrap();
        prop_assert!(rad.contains_ideal(&i));
        prop_assert_eq!(rad.zero_dim_radical().unwrap(), rad.clone());
        for h in rad.basis() {
            prop_assert!(i.radical_contains(h));
        }
    }
}
