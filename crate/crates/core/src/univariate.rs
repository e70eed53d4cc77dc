//! Dense univariate polynomials over a [`Field`], coefficients low to high.
//!
//! Only what the zero-dimensional radical needs: division, gcd, derivative
//! and the squarefree part with p-th root unwinding in characteristic p.

use alloc::vec;
use alloc::vec::Vec;

use crate::coeff::{Field, FieldElem};

pub type UPoly = Vec<FieldElem>;

pub fn trim(f: &Field, a: &mut UPoly) {
    while a.last().is_some_and(|c| f.is_zero(c)) {
        a.pop();
    }
}

pub fn degree(a: &UPoly) -> Option<usize> {
    a.len().checked_sub(1)
}

pub fn monic(f: &Field, a: &UPoly) -> UPoly {
    match a.last() {
        None => Vec::new(),
        Some(lc) => {
            let inv = f.inv(lc).expect("trimmed polynomial has a nonzero leading coefficient");
            a.iter().map(|c| f.mul(c, &inv)).collect()
        }
    }
}

pub fn mul(f: &Field, a: &UPoly, b: &UPoly) -> UPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![f.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = f.add(&out[i + j], &f.mul(x, y));
        }
    }
    trim(f, &mut out);
    out
}

/// Quotient and remainder; `b` must be nonzero.
pub fn divrem(f: &Field, a: &UPoly, b: &UPoly) -> (UPoly, UPoly) {
    let db = degree(b).expect("division by the zero polynomial");
    let lc_inv = f.inv(&b[db]).expect("nonzero leading coefficient");
    let mut r = a.clone();
    trim(f, &mut r);
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut q = vec![f.zero(); r.len() - db];
    while r.len() > db {
        let shift = r.len() - 1 - db;
        let c = f.mul(r.last().unwrap(), &lc_inv);
        for (i, bc) in b.iter().enumerate() {
            r[shift + i] = f.sub(&r[shift + i], &f.mul(&c, bc));
        }
        q[shift] = c;
        r.pop();
        trim(f, &mut r);
    }
    trim(f, &mut q);
    (q, r)
}

/// Monic gcd (zero if both inputs are zero).
pub fn gcd(f: &Field, a: &UPoly, b: &UPoly) -> UPoly {
    let (mut x, mut y) = (a.clone(), b.clone());
    trim(f, &mut x);
    trim(f, &mut y);
    while !y.is_empty() {
        let (_, r) = divrem(f, &x, &y);
        x = core::mem::replace(&mut y, r);
    }
    monic(f, &x)
}

pub fn derivative(f: &Field, a: &UPoly) -> UPoly {
    let mut out: UPoly = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| f.mul(&f.from_int(i as i64), c))
        .collect();
    trim(f, &mut out);
    out
}

/// Monic squarefree part: the product of the distinct irreducible factors.
pub fn squarefree_part(f: &Field, a: &UPoly) -> UPoly {
    let mut a = a.clone();
    trim(f, &mut a);
    if degree(&a).unwrap_or(0) == 0 {
        return if a.is_empty() { Vec::new() } else { vec![f.one()] };
    }
    let da = derivative(f, &a);
    if da.is_empty() {
        // a = b(x^p): its squarefree part is that of b^(1/p).
        return squarefree_part(f, &pth_root(f, &a));
    }
    let g = gcd(f, &a, &da);
    let (u, _) = divrem(f, &a, &g);
    let u = monic(f, &u);
    // Strip the factors of u from g; what remains has multiplicities divisible by p.
    let mut w = g;
    loop {
        let c = gcd(f, &w, &u);
        if degree(&c).unwrap_or(0) == 0 {
            break;
        }
        w = divrem(f, &w, &c).0;
    }
    if degree(&w).unwrap_or(0) == 0 {
        return u;
    }
    monic(f, &mul(f, &u, &squarefree_part(f, &pth_root(f, &w))))
}

/// `b` with `b(x)^p = a(x)` for `a` a polynomial in `x^p`.
fn pth_root(f: &Field, a: &UPoly) -> UPoly {
    let p = f.characteristic() as usize;
    debug_assert!(p > 0);
    a.iter().step_by(p).map(|c| f.pth_root(c)).collect()
}

pub fn eval(f: &Field, a: &UPoly, x: &FieldElem) -> FieldElem {
    a.iter().rev().fold(f.zero(), |acc, c| f.add(&f.mul(&acc, x), c))
}
