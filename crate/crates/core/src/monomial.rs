//! Dense exponent vectors and the monomial orders used by the Gröbner engine.

use alloc::vec::Vec;
use core::cmp::Ordering;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(alloc::vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut m = Self::one(nvars);
        m.0[i] = 1;
        m
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial(other.0.iter().zip(&self.0).map(|(a, b)| a - b).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    pub fn pow(&self, k: u32) -> Monomial {
        Monomial(self.0.iter().map(|e| e * k).collect())
    }
}

/// Total monomial orders compatible with multiplication.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    Grevlex,
    Lex,
    /// Grevlex on variables `0..split`, ties broken by grevlex on the rest.
    /// The first block is eliminated.
    Block(usize),
}

fn grevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    da.cmp(&db).then_with(|| {
        for (x, y) in a.iter().zip(b).rev() {
            if x != y {
                return y.cmp(x);
            }
        }
        Ordering::Equal
    })
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match *self {
            MonomialOrder::Grevlex => grevlex(&a.0, &b.0),
            MonomialOrder::Lex => a.0.cmp(&b.0),
            MonomialOrder::Block(k) => {
                grevlex(&a.0[..k], &b.0[..k]).then_with(|| grevlex(&a.0[k..], &b.0[k..]))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use proptest::prelude::*;

    #[test]
    fn grevlex_basics() {
        let o = MonomialOrder::Grevlex;
        // x*z < y^2 in grevlex with x > y > z
        assert_eq!(o.cmp(&Monomial(vec![1, 0, 1]), &Monomial(vec![0, 2, 0])), Ordering::Less);
        assert_eq!(o.cmp(&Monomial(vec![1, 0, 0]), &Monomial(vec![0, 1, 0])), Ordering::Greater);
        assert_eq!(o.cmp(&Monomial(vec![0, 0, 2]), &Monomial(vec![1, 0, 0])), Ordering::Greater);
    }

    #[test]
    fn block_eliminates_first_block() {
        let o = MonomialOrder::Block(1);
        assert_eq!(o.cmp(&Monomial(vec![1, 0, 0]), &Monomial(vec![0, 5, 5])), Ordering::Greater);
    }

    fn mono() -> impl Strategy<Value = Monomial> {
        prop::collection::vec(0u32..4, 3).prop_map(Monomial)
    }

    proptest! {
        #[test]
        fn orders_are_multiplicative(a in mono(), b in mono(), c in mono(), k in 0usize..4) {
            for o in [MonomialOrder::Grevlex, MonomialOrder::Lex, MonomialOrder::Block(k.min(3))] {
                prop_assert_eq!(o.cmp(&a, &b), o.cmp(&a.mul(&c), &b.mul(&c)));
                prop_assert_ne!(o.cmp(&a.mul(&Monomial::var(3, k % 3)), &a), Ordering::Less);
            }
        }
    }
}
