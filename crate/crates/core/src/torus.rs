//! Flat tori `ℝⁿ/Λ`. The deck group is `ℤⁿ` acting by lattice
//! translations, and `m(g) = √(gᵀQg)` for the Gram matrix `Q`.

use std::cmp::Ordering;

use crate::cov_spectrum::{Decision, MarkedGroupBackend, ValueClasses};
use crate::error::{Error, Result};
use crate::hnf::IntegerLattice;
use crate::scalar::{Scalar, SqrtOf, Unit};

/// Default largest dimension accepted by the enumeration routines.
pub const MAX_DIMENSION: usize = 6;

/// Default limit on the number of lattice vectors in one enumeration.
pub const DEFAULT_MAX_VECTORS: usize = 1_000_000;

pub type LatticeVector = Vec<i64>;

/// Lattice vectors of a common squared norm.
#[derive(Clone, Debug, PartialEq)]
pub struct Shell<T> {
    pub norm2: T,
    pub vectors: Vec<LatticeVector>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Lattice<T> {
    gram: Vec<Vec<T>>,
    /// `Q = Uᵀ D U` with `U` unit upper triangular.
    ldl_u: Vec<Vec<T>>,
    ldl_d: Vec<T>,
    max_dimension: usize,
    max_vectors: usize,
}

impl<T: Scalar> Lattice<T> {
    /// The lattice spanned by the given basis vectors (rows).
    pub fn from_basis(basis: &[Vec<T>]) -> Result<Self> {
        let n = basis.len();
        if basis.iter().any(|b| b.len() != n) {
            return Err(Error::InvalidArgument("basis must be square".into()));
        }
        let gram = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        basis[i]
                            .iter()
                            .zip(&basis[j])
                            .fold(T::zero(), |acc, (a, b)| acc + *a * *b)
                    })
                    .collect()
            })
            .collect();
        Self::from_gram(gram).map_err(|_| Error::InvalidArgument("basis is not of full rank".into()))
    }

    /// Validates that `gram` is symmetric positive definite.
    pub fn from_gram(gram: Vec<Vec<T>>) -> Result<Self> {
        let n = gram.len();
        if n == 0 {
            return Err(Error::InvalidArgument("lattice dimension must be positive".into()));
        }
        if gram.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidArgument("Gram matrix must be square".into()));
        }
        for i in 0..n {
            for j in 0..i {
                if !gram[i][j].tie(&gram[j][i]) {
                    return Err(Error::InvalidArgument("Gram matrix must be symmetric".into()));
                }
            }
        }
        let (ldl_u, ldl_d) = ldl(&gram)?;
        Ok(Lattice {
            gram,
            ldl_u,
            ldl_d,
            max_dimension: MAX_DIMENSION,
            max_vectors: DEFAULT_MAX_VECTORS,
        })
    }

    pub fn diagonal(lengths: &[T]) -> Result<Self> {
        let n = lengths.len();
        let basis: Vec<Vec<T>> = (0..n)
            .map(|i| (0..n).map(|j| if i == j { lengths[i] } else { T::zero() }).collect())
            .collect();
        Self::from_basis(&basis)
    }

    /// Raises the dimension guard of the enumeration routines.
    pub fn with_max_dimension(mut self, n: usize) -> Self {
        self.max_dimension = n;
        self
    }

    pub fn with_max_vectors(mut self, limit: usize) -> Self {
        self.max_vectors = limit;
        self
    }

    pub fn dim(&self) -> usize {
        self.gram.len()
    }

    pub fn gram(&self) -> &[Vec<T>] {
        &self.gram
    }

    pub fn norm2(&self, g: &[i64]) -> T {
        assert_eq!(g.len(), self.dim(), "vector dimension");
        let mut acc = T::zero();
        for (i, &gi) in g.iter().enumerate() {
            for (j, &gj) in g.iter().enumerate() {
                acc = acc + self.gram[i][j] * int::<T>(gi * gj);
            }
        }
        acc
    }

    /// `m(g) = √(gᵀQg)`.
    pub fn m_value(&self, g: &[i64]) -> SqrtOf<T> {
        SqrtOf(self.norm2(g))
    }

    /// All nonzero vectors with `gᵀQg ≤ bound`, grouped into shells of
    /// ascending norm. Vectors within a shell are in lexicographic order.
    pub fn enumerate_by_norm2(&self, bound: &T) -> Result<Vec<Shell<T>>> {
        let n = self.dim();
        if n > self.max_dimension {
            return Err(Error::InvalidArgument(format!(
                "dimension {n} exceeds the enumeration guard {}",
                self.max_dimension
            )));
        }
        let mut found: Vec<(T, LatticeVector)> = Vec::new();
        let mut g = vec![0i64; n];
        self.search(n, *bound, &mut g, &mut found)?;
        found.sort_by(|a, b| {
            a.0.partial_cmp(&b.0)
                .unwrap_or(Ordering::Equal)
                .then_with(|| a.1.cmp(&b.1))
        });
        let mut shells: Vec<Shell<T>> = Vec::new();
        for (norm2, v) in found {
            match shells.last_mut() {
                Some(s) if s.norm2.tie(&norm2) => s.vectors.push(v),
                _ => shells.push(Shell {
                    norm2,
                    vectors: vec![v],
                }),
            }
        }
        for s in &mut shells {
            s.vectors.sort();
        }
        Ok(shells)
    }

    /// Shells with `m(g) ≤ cutoff`.
    pub fn enumerate_by_norm(&self, cutoff: &SqrtOf<T>) -> Result<Vec<Shell<T>>> {
        self.enumerate_by_norm2(&cutoff.0)
    }

    /// Fixes coordinates `level..n` in `g` and recurses on `level - 1`,
    /// with `budget` the norm still available.
    fn search(&self, level: usize, budget: T, g: &mut [i64], out: &mut Vec<(T, LatticeVector)>) -> Result<()> {
        if level == 0 {
            if g.iter().any(|&x| x != 0) {
                if out.len() >= self.max_vectors {
                    return Err(Error::EnumerationLimit {
                        what: "lattice vectors",
                        limit: self.max_vectors,
                    });
                }
                out.push((self.norm2(g), g.to_vec()));
            }
            return Ok(());
        }
        let i = level - 1;
        let n = self.dim();
        let center = (i + 1..n).fold(T::zero(), |acc, j| acc - self.ldl_u[i][j] * int::<T>(g[j]));
        let radius = (budget.as_f64() / self.ldl_d[i].as_f64()).max(0.0).sqrt();
        let c = center.as_f64();
        let lo = (c - radius).floor() as i64 - 1;
        let hi = (c + radius).ceil() as i64 + 1;
        for x in lo..=hi {
            let t = int::<T>(x) - center;
            let used = self.ldl_d[i] * t * t;
            if used > budget && !used.tie(&budget) {
                continue;
            }
            g[i] = x;
            self.search(i, budget - used, g, out)?;
        }
        g[i] = 0;
        Ok(())
    }

    /// The sublattice `Λ_δ` generated by vectors of norm `< 2δ`, given
    /// `δ² = delta2`.
    pub fn sublattice_at_delta2(&self, delta2: &T) -> Result<IntegerLattice> {
        let four = int::<T>(4);
        let bound = four * *delta2;
        let mut lat = IntegerLattice::zero(self.dim());
        for shell in self.enumerate_by_norm2(&bound)? {
            if shell.norm2 < bound && !shell.norm2.tie(&bound) {
                for v in &shell.vectors {
                    lat.insert(v);
                }
            }
        }
        Ok(lat)
    }

    pub fn sublattice_at(&self, delta: &T) -> Result<IntegerLattice> {
        self.sublattice_at_delta2(&(*delta * *delta))
    }

    /// Translative δ-length `l(g, δ) = min { m(g + h) : h ∈ Λ_δ }`.
    pub fn translative_delta_length(&self, g: &[i64], delta: &T) -> Result<SqrtOf<T>> {
        let sub = self.sublattice_at(delta)?;
        if sub.contains(g) {
            return Ok(SqrtOf(T::zero()));
        }
        let m2 = self.norm2(g);
        for shell in self.enumerate_by_norm2(&m2)? {
            let hit = shell.vectors.iter().any(|v| {
                let diff: Vec<i64> = v.iter().zip(g).map(|(a, b)| a - b).collect();
                sub.contains(&diff)
            });
            if hit {
                return Ok(SqrtOf(shell.norm2));
            }
        }
        Ok(SqrtOf(m2))
    }
}

impl Lattice<f64> {
    /// Unit rhombus with angle `theta`: basis `(1, 0)`, `(cos θ, sin θ)`.
    pub fn rhombic(theta: f64) -> Result<Self> {
        if !(theta > 0.0 && theta < std::f64::consts::PI) {
            return Err(Error::InvalidArgument("rhombic angle must lie in (0, π)".into()));
        }
        let c = theta.cos();
        Self::from_gram(vec![vec![1.0, c], vec![c, 1.0]])
    }
}

fn int<T: Scalar>(x: i64) -> T {
    T::from_i64(x).expect("integer fits the scalar type")
}

fn ldl<T: Scalar>(q: &[Vec<T>]) -> Result<(Vec<Vec<T>>, Vec<T>)> {
    let n = q.len();
    let mut u = vec![vec![T::zero(); n]; n];
    let mut d = vec![T::zero(); n];
    for i in 0..n {
        let mut di = q[i][i];
        for k in 0..i {
            di = di - u[k][i] * u[k][i] * d[k];
        }
        if di <= T::zero() || di.tie(&T::zero()) {
            return Err(Error::InvalidArgument("Gram matrix must be positive definite".into()));
        }
        d[i] = di;
        u[i][i] = T::one();
        for j in i + 1..n {
            let mut s = q[i][j];
            for k in 0..i {
                s = s - u[k][i] * u[k][j] * d[k];
            }
            u[i][j] = s / di;
        }
    }
    Ok((u, d))
}

/// Exact membership of `g` in the ℤ-span of `generators`.
pub fn sublattice_membership(g: &[i64], generators: &[LatticeVector]) -> Decision {
    let lat = IntegerLattice::spanned_by(g.len(), generators.iter().map(Vec::as_slice));
    if lat.contains(g) {
        Decision::Yes
    } else {
        Decision::No
    }
}

/// A flat torus as a marked group.
#[derive(Clone, Debug)]
pub struct LatticeBackend<'a, T> {
    lattice: &'a Lattice<T>,
}

impl<'a, T: Scalar> LatticeBackend<'a, T> {
    pub fn new(lattice: &'a Lattice<T>) -> Self {
        LatticeBackend { lattice }
    }
}

impl<T: Scalar> MarkedGroupBackend for LatticeBackend<'_, T> {
    type Element = LatticeVector;
    type Value = SqrtOf<T>;
    type Subgroup = IntegerLattice;

    fn unit(&self) -> Unit {
        Unit::One
    }

    fn identity(&self) -> LatticeVector {
        vec![0; self.lattice.dim()]
    }

    fn compose(&self, a: &LatticeVector, b: &LatticeVector) -> LatticeVector {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }

    fn invert(&self, a: &LatticeVector) -> LatticeVector {
        a.iter().map(|x| -x).collect()
    }

    fn m_value(&self, g: &LatticeVector) -> SqrtOf<T> {
        self.lattice.m_value(g)
    }

    fn enumerate_values(&self, cutoff: &SqrtOf<T>) -> Result<Vec<ValueClasses<LatticeVector, SqrtOf<T>>>> {
        Ok(self
            .lattice
            .enumerate_by_norm(cutoff)?
            .into_iter()
            .map(|s| ValueClasses {
                value: SqrtOf(s.norm2),
                classes: s.vectors,
            })
            .collect())
    }

    fn trivial_subgroup(&self) -> IntegerLattice {
        IntegerLattice::zero(self.lattice.dim())
    }

    fn absorb(&self, sub: &IntegerLattice, gens: &[LatticeVector]) -> IntegerLattice {
        let mut out = sub.clone();
        for g in gens {
            out.insert(g);
        }
        out
    }

    fn membership(&self, sub: &IntegerLattice, g: &LatticeVector) -> Decision {
        if sub.contains(g) {
            Decision::Yes
        } else {
            Decision::No
        }
    }

    fn is_whole_group(&self, sub: &IntegerLattice) -> Decision {
        if sub.is_whole() {
            Decision::Yes
        } else {
            Decision::No
        }
    }

    /// The basis vectors generate `ℤⁿ`, so values up to the longest of
    /// them suffice.
    fn default_cutoff(&self) -> SqrtOf<T> {
        let g = self.lattice.gram();
        let max = (0..g.len())
            .map(|i| g[i][i])
            .fold(T::zero(), |a, b| if b > a { b } else { a });
        SqrtOf(max / int::<T>(4))
    }
}
