//! Integer sublattices of `ℤⁿ` kept in Hermite normal form.

use num_integer::Integer;

/// The ℤ-span of the inserted vectors, stored as an upper-triangular basis
/// with positive pivots and off-diagonal entries reduced modulo the pivot
/// below them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerLattice {
    dim: usize,
    rows: Vec<Option<Vec<i128>>>,
}

impl IntegerLattice {
    pub fn zero(dim: usize) -> Self {
        IntegerLattice {
            dim,
            rows: vec![None; dim],
        }
    }

    pub fn spanned_by<'a>(dim: usize, gens: impl IntoIterator<Item = &'a [i64]>) -> Self {
        let mut l = Self::zero(dim);
        for g in gens {
            l.insert(g);
        }
        l
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.iter().filter(|r| r.is_some()).count()
    }

    /// Basis rows in Hermite normal form.
    pub fn basis(&self) -> Vec<Vec<i64>> {
        self.rows
            .iter()
            .flatten()
            .map(|r| {
                r.iter()
                    .map(|&x| i64::try_from(x).expect("HNF entry fits in i64"))
                    .collect()
            })
            .collect()
    }

    /// Index of the sublattice in `ℤⁿ`, when it has full rank.
    pub fn index(&self) -> Option<i128> {
        self.rows
            .iter()
            .enumerate()
            .map(|(i, r)| r.as_ref().map(|r| r[i]))
            .product()
    }

    pub fn is_whole(&self) -> bool {
        self.index() == Some(1)
    }

    pub fn insert(&mut self, v: &[i64]) {
        assert_eq!(v.len(), self.dim, "vector dimension");
        let mut v: Vec<i128> = v.iter().map(|&x| x as i128).collect();
        for i in 0..self.dim {
            if v[i] == 0 {
                continue;
            }
            match self.rows[i].take() {
                None => {
                    if v[i] < 0 {
                        v.iter_mut().for_each(|x| *x = -*x);
                    }
                    self.rows[i] = Some(v);
                    self.reduce_above(i);
                    return;
                }
                Some(r) => {
                    let (a, b) = (r[i], v[i]);
                    let e = a.extended_gcd(&b);
                    let (g, s, t) = (e.gcd, e.x, e.y);
                    let combined: Vec<i128> = r.iter().zip(&v).map(|(x, y)| s * x + t * y).collect();
                    let rest: Vec<i128> = r.iter().zip(&v).map(|(x, y)| (a / g) * y - (b / g) * x).collect();
                    self.rows[i] = Some(combined);
                    self.reduce_above(i);
                    v = rest;
                }
            }
        }
    }

    /// Reduces column `i` of the rows above row `i`, and the tail of row `i`
    /// by the rows below it.
    fn reduce_above(&mut self, i: usize) {
        for k in i + 1..self.dim {
            if let Some(pivot_row) = self.rows[k].clone() {
                let row = self.rows[i].as_mut().expect("row present");
                let q = Integer::div_floor(&row[k], &pivot_row[k]);
                row.iter_mut().zip(&pivot_row).for_each(|(x, p)| *x -= q * p);
            }
        }
        let pivot_row = self.rows[i].clone().expect("row present");
        for j in 0..i {
            if let Some(row) = self.rows[j].as_mut() {
                let q = Integer::div_floor(&row[i], &pivot_row[i]);
                row.iter_mut().zip(&pivot_row).for_each(|(x, p)| *x -= q * p);
            }
        }
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        assert_eq!(v.len(), self.dim, "vector dimension");
        let mut v: Vec<i128> = v.iter().map(|&x| x as i128).collect();
        for i in 0..self.dim {
            if v[i] == 0 {
                continue;
            }
            let Some(r) = &self.rows[i] else { return false };
            if v[i] % r[i] != 0 {
                return false;
            }
            let q = v[i] / r[i];
            v.iter_mut().zip(r).for_each(|(x, p)| *x -= q * p);
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn membership_examples() {
        let l = IntegerLattice::spanned_by(2, [&[1i64, 0][..]]);
        assert!(l.contains(&[2, 0]));
        assert!(!l.contains(&[0, 1]));
        let even = IntegerLattice::spanned_by(2, [&[2i64, 0][..], &[0, 2]]);
        assert!(!even.contains(&[1, 1]));
        assert_eq!(even.index(), Some(4));
        let skew = IntegerLattice::spanned_by(2, [&[1i64, -1][..], &[0, 1]]);
        assert!(skew.contains(&[1, 0]));
        assert!(skew.is_whole());
    }

    #[test]
    fn hnf_shape() {
        let l = IntegerLattice::spanned_by(3, [&[4i64, 6, 2][..], &[2, 5, 5], &[0, 0, 7]]);
        let b = l.basis();
        assert_eq!(b.len(), 3);
        for (i, row) in b.iter().enumerate() {
            assert!(row[i] > 0);
            assert!(row[..i].iter().all(|&x| x == 0));
        }
        assert_eq!(l.index(), Some(56));
        assert_eq!(IntegerLattice::zero(3).rank(), 0);
    }

    proptest! {
        #[test]
        fn combinations_are_members(
            gens in prop::collection::vec(prop::collection::vec(-6i64..=6, 3), 1..5),
            coeffs in prop::collection::vec(-4i64..=4, 5),
        ) {
            let l = IntegerLattice::spanned_by(3, gens.iter().map(Vec::as_slice));
            for g in &gens {
                prop_assert!(l.contains(g));
            }
            let mut v = vec![0i64; 3];
            for (g, c) in gens.iter().zip(&coeffs) {
                for k in 0..3 {
                    v[k] += c * g[k];
                }
            }
            prop_assert!(l.contains(&v));
        }

        #[test]
        fn index_matches_determinant(m in prop::collection::vec(-5i64..=5, 4)) {
            let det = (m[0] * m[3] - m[1] * m[2]).abs() as i128;
            let l = IntegerLattice::spanned_by(2, [&m[0..2], &m[2..4]]);
            if det == 0 {
                prop_assert!(l.rank() < 2);
            } else {
                prop_assert_eq!(l.index(), Some(det));
            }
        }
    }
}
