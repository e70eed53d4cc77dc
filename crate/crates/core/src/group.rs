//! Finite groups given by Cayley tables.
//!
//! Element `0` is always the identity. Tables are validated once at
//! construction (identity row/column, Latin square, associativity) and are
//! immutable afterwards.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Largest group order accepted by [`Group::cayley`].
pub const MAX_ORDER: usize = 64;

/// Index of an element of some [`Group`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroupElem(pub usize);

impl GroupElem {
    pub const IDENTITY: GroupElem = GroupElem(0);

    pub fn index(self) -> usize {
        self.0
    }

    pub fn is_identity(self) -> bool {
        self.0 == 0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Presentation {
    Cyclic,
    Table,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Group {
    order: usize,
    table: Vec<usize>,
    inverses: Vec<usize>,
    names: Vec<String>,
    presentation: Presentation,
}

impl Group {
    /// The cyclic group `Z/n` with elements named `e, s, s^2, …`.
    pub fn cyclic(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidGroup("cyclic group order must be at least 1".into()));
        }
        if n > MAX_ORDER {
            return Err(Error::InvalidGroup(format!("order {n} exceeds the cap {MAX_ORDER}")));
        }
        let table = (0..n).flat_map(|a| (0..n).map(move |b| (a + b) % n)).collect();
        let inverses = (0..n).map(|a| (n - a) % n).collect();
        let names = (0..n)
            .map(|k| match k {
                0 => "e".to_string(),
                1 => "s".to_string(),
                _ => format!("s^{k}"),
            })
            .collect();
        Ok(Group { order: n, table, inverses, names, presentation: Presentation::Cyclic })
    }

    /// A group from an explicit Cayley table; `rows[a][b]` is the index of `a·b`.
    pub fn cayley(rows: &[Vec<usize>]) -> Result<Self> {
        let m = rows.len();
        if m == 0 {
            return Err(Error::InvalidGroup("empty table".into()));
        }
        if m > MAX_ORDER {
            return Err(Error::InvalidGroup(format!("order {m} exceeds the cap {MAX_ORDER}")));
        }
        for (a, row) in rows.iter().enumerate() {
            if row.len() != m {
                return Err(Error::InvalidGroup(format!(
                    "row {a} has {} entries, expected {m}",
                    row.len()
                )));
            }
            if let Some(&bad) = row.iter().find(|&&x| x >= m) {
                return Err(Error::InvalidGroup(format!("entry {bad} in row {a} is out of range")));
            }
        }
        if let Some(i) = (0..m).find(|&i| rows[0][i] != i || rows[i][0] != i) {
            return Err(Error::InvalidGroup(format!("element 0 is not the identity (row/column {i})")));
        }
        for a in 0..m {
            let mut seen_row = alloc::vec![false; m];
            let mut seen_col = alloc::vec![false; m];
            for b in 0..m {
                if core::mem::replace(&mut seen_row[rows[a][b]], true) {
                    return Err(Error::InvalidGroup(format!("row {a} is not a permutation")));
                }
                if core::mem::replace(&mut seen_col[rows[b][a]], true) {
                    return Err(Error::InvalidGroup(format!("column {a} is not a permutation")));
                }
            }
        }
        for a in 0..m {
            for b in 0..m {
                for c in 0..m {
                    if rows[rows[a][b]][c] != rows[a][rows[b][c]] {
                        return Err(Error::NotAssociative { a, b, c });
                    }
                }
            }
        }
        let table: Vec<usize> = rows.iter().flatten().copied().collect();
        let inverses = (0..m)
            .map(|a| (0..m).find(|&b| table[a * m + b] == 0).expect("Latin square has inverses"))
            .collect();
        let names = (0..m)
            .map(|k| if k == 0 { "e".to_string() } else { format!("g{k}") })
            .collect();
        Ok(Group { order: m, table, inverses, names, presentation: Presentation::Table })
    }

    /// The direct product `self × other`; `(a, b)` has index `a·|other| + b`.
    pub fn direct_product(&self, other: &Group) -> Result<Self> {
        let (m, k) = (self.order, other.order);
        let rows: Vec<Vec<usize>> = (0..m * k)
            .map(|x| {
                (0..m * k)
                    .map(|y| {
                        let a = self.table[(x / k) * m + y / k];
                        let b = other.table[(x % k) * k + y % k];
                        a * k + b
                    })
                    .collect()
            })
            .collect();
        Group::cayley(&rows)
    }

    pub fn trivial() -> Self {
        Group::cyclic(1).expect("order 1 is valid")
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> GroupElem {
        GroupElem::IDENTITY
    }

    pub fn elements(&self) -> impl Iterator<Item = GroupElem> + Clone {
        (0..self.order).map(GroupElem)
    }

    pub fn check(&self, g: GroupElem) -> Result<GroupElem> {
        if g.0 < self.order {
            Ok(g)
        } else {
            Err(Error::ElementOutOfRange { index: g.0, order: self.order })
        }
    }

    /// Checked product `g·h`.
    pub fn compose(&self, g: GroupElem, h: GroupElem) -> Result<GroupElem> {
        self.check(g)?;
        self.check(h)?;
        Ok(self.mul(g, h))
    }

    /// Unchecked product, for indices already known to be in range.
    #[inline]
    pub fn mul(&self, g: GroupElem, h: GroupElem) -> GroupElem {
        GroupElem(self.table[g.0 * self.order + h.0])
    }

    #[inline]
    pub fn inverse(&self, g: GroupElem) -> GroupElem {
        GroupElem(self.inverses[g.0])
    }

    pub fn pow(&self, g: GroupElem, k: usize) -> GroupElem {
        (0..k).fold(GroupElem::IDENTITY, |acc, _| self.mul(acc, g))
    }

    pub fn name(&self, g: GroupElem) -> &str {
        &self.names[g.0]
    }

    /// Name usable as an operator token in session files (`s`, `s2`, `g3`).
    pub fn symbol(&self, g: GroupElem) -> String {
        match (self.presentation, g.0) {
            (_, 0) => "e".to_string(),
            (Presentation::Cyclic, 1) => "s".to_string(),
            (Presentation::Cyclic, k) => format!("s{k}"),
            (Presentation::Table, k) => format!("g{k}"),
        }
    }

    /// Resolves an operator token produced by [`Group::symbol`].
    pub fn parse_symbol(&self, token: &str) -> Option<GroupElem> {
        let idx = if token == "e" {
            0
        } else if self.presentation == Presentation::Cyclic && token == "s" {
            1
        } else {
            let digits = match self.presentation {
                Presentation::Cyclic => token.strip_prefix('s')?,
                Presentation::Table => token.strip_prefix('g')?,
            };
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return None;
            }
            let k: usize = digits.parse().ok()?;
            if self.presentation == Presentation::Cyclic {
                k % self.order
            } else {
                k
            }
        };
        (idx < self.order).then_some(GroupElem(idx))
    }

    /// Whether `token` has the shape of a group operator, in range or not.
    pub fn looks_like_symbol(&self, token: &str) -> bool {
        let prefix = match self.presentation {
            Presentation::Cyclic => 's',
            Presentation::Table => 'g',
        };
        token == "e"
            || token
                .strip_prefix(prefix)
                .is_some_and(|d| d.is_empty() || d.bytes().all(|b| b.is_ascii_digit()))
    }

    /// Rows of the Cayley table.
    pub fn table(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.order).map(|r| r.to_vec()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use proptest::prelude::*;

    #[test]
    fn cyclic_tables() {
        let t = Group::cyclic(1).unwrap();
        assert_eq!(t.order(), 1);
        let z2 = Group::cyclic(2).unwrap();
        assert_eq!(z2.table(), vec![vec![0, 1], vec![1, 0]]);
        let s = GroupElem(1);
        assert_eq!(z2.compose(s, s).unwrap(), GroupElem::IDENTITY);
        assert_eq!(z2.inverse(s), s);
        assert_eq!(z2.name(GroupElem(1)), "s");
        let z5 = Group::cyclic(5).unwrap();
        assert_eq!(z5.name(GroupElem(3)), "s^3");
    }

    #[test]
    fn cayley_z4() {
        let rows: Vec<Vec<usize>> =
            (0..4).map(|a| (0..4).map(|b| (a + b) % 4).collect()).collect();
        let g = Group::cayley(&rows).unwrap();
        assert_eq!(g.order(), 4);
        assert_eq!(g.compose(GroupElem(1), GroupElem(3)).unwrap(), GroupElem(0));
        assert_eq!(g.inverse(GroupElem(1)), GroupElem(3));
        assert_eq!(g.inverse(GroupElem(0)), GroupElem(0));
    }

    #[test]
    fn rejects_bad_tables() {
        let not_latin = vec![vec![0, 1], vec![1, 1]];
        assert!(matches!(Group::cayley(&not_latin), Err(Error::InvalidGroup(_))));
        let bad_identity = vec![vec![1, 0], vec![0, 1]];
        assert!(matches!(Group::cayley(&bad_identity), Err(Error::InvalidGroup(_))));
        // A Latin square with identity 0 that is not associative (order 5 loop).
        let loop5 = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(matches!(Group::cayley(&loop5), Err(Error::NotAssociative { .. })));
        assert!(Group::cyclic(0).is_err());
    }

    #[test]
    fn out_of_range_compose() {
        let z2 = Group::cyclic(2).unwrap();
        assert!(matches!(
            z2.compose(GroupElem(0), GroupElem(2)),
            Err(Error::ElementOutOfRange { index: 2, order: 2 })
        ));
    }

    #[test]
    fn klein_four_as_product() {
        let z2 = Group::cyclic(2).unwrap();
        let v4 = z2.direct_product(&z2).unwrap();
        assert_eq!(v4.order(), 4);
        for g in v4.elements() {
            assert_eq!(v4.mul(g, g), GroupElem::IDENTITY);
        }
        assert_eq!(v4.parse_symbol("g3"), Some(GroupElem(3)));
        assert_eq!(v4.parse_symbol("s"), None);
    }

    #[test]
    fn symbols_roundtrip() {
        let z4 = Group::cyclic(4).unwrap();
        for g in z4.elements() {
            assert_eq!(z4.parse_symbol(&z4.symbol(g)), Some(g));
        }
        assert_eq!(z4.parse_symbol("s5"), Some(GroupElem(1)));
    }

    proptest! {
        #[test]
        fn inverse_of_product(n in 1usize..12, a in 0usize..12, b in 0usize..12) {
            let g = Group::cyclic(n).unwrap();
            let (x, y) = (GroupElem(a % n), GroupElem(b % n));
            prop_assert_eq!(g.inverse(g.mul(x, y)), g.mul(g.inverse(y), g.inverse(x)));
            prop_assert_eq!(g.mul(x, y), GroupElem((a % n + b % n) % n));
            prop_assert_eq!(g.mul(x, g.inverse(x)), GroupElem::IDENTITY);
        }
    }
}
