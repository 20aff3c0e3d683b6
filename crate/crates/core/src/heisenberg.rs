//! Heisenberg manifolds `Γ_{r,s,c} \ H_n` with a diagonal left-invariant
//! metric `diag(a_1..a_n, a_1..a_n, 1)`.
//!
//! Minimum marked lengths follow Gordon's closed forms. The covering
//! spectrum is available only in the two regimes where the case analysis
//! settles whether the central element contributes.

use std::cmp::Ordering;
use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{LengthValue, Rational, RationalJson, Scalar, Unit, FLOAT_TOLERANCE};
use crate::spectrum::Spectrum;

#[derive(Clone, Debug, PartialEq)]
pub struct HeisenbergManifold<T> {
    r: Vec<T>,
    s: Vec<T>,
    c: T,
    a: Vec<T>,
}

/// `(r_1 x_1, .., r_n x_n, s_1 y_1, .., s_n y_n, c u)` in `Γ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GammaElement {
    pub x: Vec<i64>,
    pub y: Vec<i64>,
    pub u: i64,
}

impl GammaElement {
    pub fn central(u: i64, n: usize) -> Self {
        GammaElement {
            x: vec![0; n],
            y: vec![0; n],
            u,
        }
    }

    pub fn is_central(&self) -> bool {
        self.x.iter().chain(&self.y).all(|&v| v == 0)
    }
}

/// Which branch of the case analysis applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Regime {
    /// `c` is not an integer multiple of any `r_i s_i`: the central value
    /// `m(0,0,c)/2` belongs to the spectrum.
    CentralIncluded,
    /// `c = k r_i s_i` and `m(0,0,c) ≥ √a_i max(r_i, s_i)` for index `i`
    /// (0-based): the central value is absorbed.
    CentralAbsorbed { index: usize },
}

impl<T: Scalar> HeisenbergManifold<T> {
    pub fn new(r: Vec<T>, s: Vec<T>, c: T, a: Vec<T>) -> Result<Self> {
        let n = a.len();
        if n == 0 || r.len() != n || s.len() != n {
            return Err(Error::InvalidArgument(
                "r, s and a must have the same positive length".into(),
            ));
        }
        let positive = |v: &T| *v > T::zero();
        if !(r.iter().all(positive) && s.iter().all(positive) && a.iter().all(positive) && positive(&c)) {
            return Err(Error::InvalidArgument("all parameters must be positive".into()));
        }
        if a.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::InvalidArgument("a must be nondecreasing".into()));
        }
        if !r.iter().chain(&s).all(|v| (*v / c).is_integral()) {
            return Err(Error::InvalidArgument(
                "every r_i and s_i must be an integer multiple of c".into(),
            ));
        }
        Ok(HeisenbergManifold { r, s, c, a })
    }

    pub fn n(&self) -> usize {
        self.a.len()
    }

    pub fn r(&self) -> &[T] {
        &self.r
    }

    pub fn s(&self) -> &[T] {
        &self.s
    }

    pub fn c(&self) -> T {
        self.c
    }

    pub fn a(&self) -> &[T] {
        &self.a
    }

    fn check(&self, g: &GammaElement) -> Result<()> {
        if g.x.len() != self.n() || g.y.len() != self.n() {
            return Err(Error::InvalidArgument("element dimension does not match n".into()));
        }
        if g.is_central() && g.u == 0 {
            return Err(Error::Domain("m is not evaluated at the identity".into()));
        }
        Ok(())
    }

    /// `m(g)`. Non-central elements get `√Σ a_i (r_i² x_i² + s_i² y_i²)`,
    /// exact when `T` is; central ones go through [`Self::central_m`].
    pub fn m_value(&self, g: &GammaElement) -> Result<LengthValue> {
        self.check(g)?;
        if g.is_central() {
            return Ok(LengthValue::Float(self.central_m(g.u)));
        }
        let int = |k: i64| T::from_i64(k * k).expect("integer fits the scalar type");
        let sum = (0..self.n()).fold(T::zero(), |acc, i| {
            acc + self.a[i] * (self.r[i] * self.r[i] * int(g.x[i]) + self.s[i] * self.s[i] * int(g.y[i]))
        });
        Ok(sum.sqrt_length())
    }

    /// `m(0, 0, cz)` as the minimum over `|cz|` and
    /// `(4jπa_i(|cz| − jπa_i))^{1/2}` for all `j ≥ 1` with `2jπa_i < |cz|`.
    pub fn central_m_full(&self, z: i64) -> f64 {
        let cz = (self.c.as_f64() * z as f64).abs();
        let mut best = cz;
        for a in self.a.iter().map(Scalar::as_f64) {
            let mut j = 1.0;
            while 2.0 * j * PI * a < cz {
                best = best.min((4.0 * j * PI * a * (cz - j * PI * a)).sqrt());
                j += 1.0;
            }
        }
        best
    }

    /// The same minimum restricted to `j = 1`, which suffices because the
    /// expression increases with `j` on the admissible range.
    pub fn central_m(&self, z: i64) -> f64 {
        let cz = (self.c.as_f64() * z as f64).abs();
        self.a
            .iter()
            .map(Scalar::as_f64)
            .filter(|a| 2.0 * PI * a < cz)
            .map(|a| (4.0 * PI * a * (cz - PI * a)).sqrt())
            .fold(cz, f64::min)
    }

    /// `(1/2)√a_i r_i` and `(1/2)√a_i s_i` for each `i`, in index order.
    fn base_values(&self) -> Vec<LengthValue> {
        let four = T::from_i64(4).expect("small integer");
        (0..self.n())
            .flat_map(|i| {
                let a = self.a[i];
                [
                    (a * self.r[i] * self.r[i] / four).sqrt_length(),
                    (a * self.s[i] * self.s[i] / four).sqrt_length(),
                ]
            })
            .collect()
    }

    pub fn regime(&self) -> Result<Regime> {
        let m_c = LengthValue::Float(self.central_m(1));
        let mut absorbed = None;
        let mut multiple = false;
        for i in 0..self.n() {
            let k = self.c / (self.r[i] * self.s[i]);
            if !k.is_integral() {
                continue;
            }
            multiple = true;
            let a = self.a[i];
            let bound = (a * self.r[i] * self.r[i])
                .sqrt_length()
                .max((a * self.s[i] * self.s[i]).sqrt_length());
            if m_c > bound || m_c.same(&bound) {
                absorbed.get_or_insert(i);
            }
        }
        if let Some(index) = absorbed {
            return Ok(Regime::CentralAbsorbed { index });
        }
        if multiple {
            return Err(Error::UnhandledRegime(
                "c is a multiple of some r_i s_i but m(0,0,c) is below the matching √a_i r_i, √a_i s_i".into(),
            ));
        }
        if self.base_values().iter().any(|v| v.double().same(&m_c)) {
            return Err(Error::UnhandledRegime(
                "m(0,0,c) coincides with some √a_i r_i or √a_i s_i".into(),
            ));
        }
        Ok(Regime::CentralIncluded)
    }

    /// Covering spectrum with value counts as multiplicities.
    pub fn cov_spectrum(&self) -> Result<Spectrum<LengthValue>> {
        let mut values = self.base_values();
        if self.regime()? == Regime::CentralIncluded {
            values.push(LengthValue::Float(self.central_m(1) / 2.0));
        }
        Spectrum::from_values(Unit::One, values)
    }

    /// Gordon's criterion: equal `a` and `c`, and `{a_i r_i²} ∪ {a_i s_i²}`
    /// agree as multisets.
    pub fn laplace_isospectral(&self, other: &Self) -> bool {
        if self.n() != other.n() || !self.c.tie(&other.c) {
            return false;
        }
        if self.a.iter().zip(&other.a).any(|(x, y)| !x.tie(y)) {
            return false;
        }
        let sorted = |m: &Self| {
            let mut v: Vec<T> = (0..m.n())
                .flat_map(|i| [m.a[i] * m.r[i] * m.r[i], m.a[i] * m.s[i] * m.s[i]])
                .collect();
            v.sort_by(|x, y| x.partial_cmp(y).unwrap_or(Ordering::Equal));
            v
        };
        sorted(self).iter().zip(&sorted(other)).all(|(x, y)| x.tie(y))
    }
}

/// `{n, r[], s[], c, a[]}`; entries are rationals in any [`RationalJson`] form.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HeisenbergParams {
    pub n: usize,
    pub r: Vec<RationalJson>,
    pub s: Vec<RationalJson>,
    pub c: RationalJson,
    pub a: Vec<RationalJson>,
}

impl HeisenbergParams {
    pub fn build(&self) -> Result<HeisenbergManifold<Rational>> {
        let conv = |v: &[RationalJson]| v.iter().map(RationalJson::to_rational).collect::<Result<Vec<_>, _>>();
        let (r, s, a) = (conv(&self.r)?, conv(&self.s)?, conv(&self.a)?);
        if a.len() != self.n {
            return Err(Error::InvalidArgument(format!(
                "n = {} but {} values of a",
                self.n,
                a.len()
            )));
        }
        HeisenbergManifold::new(r, s, self.c.to_rational()?, a)
    }
}

/// True when two lengths agree to the float tolerance used for Heisenberg
/// values.
pub fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= FLOAT_TOLERANCE
}
