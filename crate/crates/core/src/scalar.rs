//! Scalar types and tagged length values.
//!
//! Backends are generic over a [`Scalar`]: exact rationals for graphs with
//! rational edge lengths and rational Gram forms, `f64`/`f32` where an input
//! is irrational (rhombic tori, Heisenberg metrics). Values leaving a backend
//! are converted to a [`LengthValue`], which keeps exact square roots exact.

use std::cmp::Ordering;
use std::fmt;

use num_integer::Roots;
use num_rational::Ratio;
use num_traits::{FromPrimitive, Num, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::Error;

/// Exact rational used throughout.
pub type Rational = Ratio<i64>;

/// Relative tolerance used to group floating-point norms into shells.
pub const SHELL_TOLERANCE: f64 = 1e-12;

/// Tolerance for comparing floating-point spectrum values.
pub const FLOAT_TOLERANCE: f64 = 1e-9;

/// Numeric field a backend computes in.
pub trait Scalar:
    Num + Signed + PartialOrd + Copy + fmt::Debug + fmt::Display + FromPrimitive + ToPrimitive + Send + Sync + 'static
{
    /// True when arithmetic and comparisons are exact.
    const EXACT: bool;

    fn to_length(&self) -> LengthValue;

    /// `√self`; `self` must be nonnegative.
    fn sqrt_length(&self) -> LengthValue;

    /// Equality used when grouping values: exact for rationals, relative
    /// [`SHELL_TOLERANCE`] for floats.
    fn tie(&self, other: &Self) -> bool;

    /// Whether the value is an integer (within [`FLOAT_TOLERANCE`] for floats).
    fn is_integral(&self) -> bool;

    fn from_rational(q: Rational) -> Self;

    fn as_f64(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

fn float_tie(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1.0)
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn to_length(&self) -> LengthValue {
        LengthValue::Float(*self)
    }

    fn sqrt_length(&self) -> LengthValue {
        LengthValue::Float(self.max(0.0).sqrt())
    }

    fn tie(&self, other: &Self) -> bool {
        float_tie(*self, *other, SHELL_TOLERANCE)
    }

    fn is_integral(&self) -> bool {
        (self - self.round()).abs() <= FLOAT_TOLERANCE
    }

    fn from_rational(q: Rational) -> Self {
        *q.numer() as f64 / *q.denom() as f64
    }
}

impl Scalar for f32 {
    const EXACT: bool = false;

    fn to_length(&self) -> LengthValue {
        LengthValue::Float(f64::from(*self))
    }

    fn sqrt_length(&self) -> LengthValue {
        LengthValue::Float(f64::from(self.max(0.0)).sqrt())
    }

    fn tie(&self, other: &Self) -> bool {
        float_tie(f64::from(*self), f64::from(*other), 1e-6)
    }

    fn is_integral(&self) -> bool {
        (self - self.round()).abs() <= 1e-6
    }

    fn from_rational(q: Rational) -> Self {
        (*q.numer() as f64 / *q.denom() as f64) as f32
    }
}

impl Scalar for Rational {
    const EXACT: bool = true;

    fn to_length(&self) -> LengthValue {
        LengthValue::ExactRational(*self)
    }

    fn sqrt_length(&self) -> LengthValue {
        LengthValue::sqrt(*self)
    }

    fn tie(&self, other: &Self) -> bool {
        self == other
    }

    fn is_integral(&self) -> bool {
        self.is_integer()
    }

    fn from_rational(q: Rational) -> Self {
        q
    }
}

/// Symbolic scale of a spectrum. Circle families are stored in units of π.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub enum Unit {
    #[default]
    #[serde(rename = "1")]
    One,
    #[serde(rename = "pi")]
    Pi,
}

impl fmt::Display for Unit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Unit::One => f.write_str("1"),
            Unit::Pi => f.write_str("pi"),
        }
    }
}

impl std::str::FromStr for Unit {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "1" | "one" => Ok(Unit::One),
            "pi" | "π" => Ok(Unit::Pi),
            _ => Err(Error::Parse(format!("unknown unit {s:?}"))),
        }
    }
}

/// A length, kept exact whenever the inputs allow it.
///
/// `ExactQuadratic(q)` is `√q` for a rational `q ≥ 0` that is not a perfect
/// square; perfect squares are normalized to `ExactRational`. Comparisons
/// between exact kinds never round. Mixed comparisons with a `Float` go
/// through `f64`.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
#[serde(into = "LengthJson", try_from = "LengthJson")]
pub enum LengthValue {
    ExactQuadratic(Rational),
    ExactRational(Rational),
    Float(f64),
}

fn rational_sqrt(q: Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    let (n, d) = (*q.numer(), *q.denom());
    let (rn, rd) = (n.sqrt(), d.sqrt());
    (rn * rn == n && rd * rd == d).then(|| Rational::new(rn, rd))
}

fn cmp_rational_sqrt(r: &Rational, q: &Rational) -> Ordering {
    if r.is_negative() {
        Ordering::Less
    } else {
        (r * r).cmp(q)
    }
}

impl LengthValue {
    pub fn zero() -> Self {
        LengthValue::ExactRational(<Rational as num_traits::Zero>::zero())
    }

    pub fn rational(num: i64, den: i64) -> Self {
        LengthValue::ExactRational(Rational::new(num, den))
    }

    /// `√q` for a nonnegative rational.
    pub fn sqrt(q: Rational) -> Self {
        match rational_sqrt(q) {
            Some(r) => LengthValue::ExactRational(r),
            None => LengthValue::ExactQuadratic(q),
        }
    }

    pub fn is_exact(&self) -> bool {
        !matches!(self, LengthValue::Float(_))
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            LengthValue::ExactQuadratic(q) => (*q.numer() as f64 / *q.denom() as f64).sqrt(),
            LengthValue::ExactRational(r) => *r.numer() as f64 / *r.denom() as f64,
            LengthValue::Float(x) => *x,
        }
    }

    /// The exact rational value, if this is one.
    pub fn as_rational(&self) -> Option<Rational> {
        match self {
            LengthValue::ExactRational(r) => Some(*r),
            _ => None,
        }
    }

    /// Square of the value when it is exact.
    pub fn exact_square(&self) -> Option<Rational> {
        match self {
            LengthValue::ExactQuadratic(q) => Some(*q),
            LengthValue::ExactRational(r) => Some(r * r),
            LengthValue::Float(_) => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            LengthValue::ExactQuadratic(q) | LengthValue::ExactRational(q) => q.is_zero(),
            LengthValue::Float(x) => *x == 0.0,
        }
    }

    pub fn is_positive(&self) -> bool {
        match self {
            LengthValue::ExactQuadratic(q) | LengthValue::ExactRational(q) => q.is_positive(),
            LengthValue::Float(x) => *x > 0.0,
        }
    }

    /// Total order; exact kinds compare exactly.
    pub fn compare(&self, other: &Self) -> Ordering {
        use LengthValue::*;
        match (self, other) {
            (ExactRational(a), ExactRational(b)) => a.cmp(b),
            (ExactQuadratic(a), ExactQuadratic(b)) => a.cmp(b),
            (ExactRational(a), ExactQuadratic(b)) => cmp_rational_sqrt(a, b),
            (ExactQuadratic(a), ExactRational(b)) => cmp_rational_sqrt(b, a).reverse(),
            _ => self.to_f64().total_cmp(&other.to_f64()),
        }
    }

    /// Equality with [`FLOAT_TOLERANCE`] when either side is a float.
    pub fn same(&self, other: &Self) -> bool {
        if self.is_exact() && other.is_exact() {
            self.compare(other) == Ordering::Equal
        } else {
            float_tie(self.to_f64(), other.to_f64(), FLOAT_TOLERANCE)
        }
    }

    /// `|self - other|`, exact when both sides are rational or both are
    /// square roots whose product is a rational square.
    pub fn distance(&self, other: &Self) -> LengthValue {
        use LengthValue::*;
        match (self, other) {
            (ExactRational(a), ExactRational(b)) => ExactRational((a - b).abs()),
            (ExactQuadratic(a), ExactQuadratic(b)) => match rational_sqrt(a * b) {
                // (√a - √b)² = a + b - 2√(ab)
                Some(s) => LengthValue::sqrt(a + b - s * 2),
                None => Float((self.to_f64() - other.to_f64()).abs()),
            },
            _ => Float((self.to_f64() - other.to_f64()).abs()),
        }
    }

    pub fn add(&self, other: &Self) -> LengthValue {
        use LengthValue::*;
        match (self, other) {
            (ExactRational(a), ExactRational(b)) => ExactRational(a + b),
            (ExactQuadratic(a), ExactQuadratic(b)) if a == b => LengthValue::sqrt(a * 4),
            _ => Float(self.to_f64() + other.to_f64()),
        }
    }

    /// Multiplies by a nonnegative rational.
    pub fn scale(&self, k: Rational) -> LengthValue {
        debug_assert!(!k.is_negative());
        match self {
            LengthValue::ExactRational(r) => LengthValue::ExactRational(r * k),
            LengthValue::ExactQuadratic(q) => LengthValue::sqrt(q * k * k),
            LengthValue::Float(x) => LengthValue::Float(x * Scalar::as_f64(&k)),
        }
    }

    pub fn half(&self) -> LengthValue {
        self.scale(Rational::new(1, 2))
    }

    pub fn double(&self) -> LengthValue {
        self.scale(Rational::from_integer(2))
    }

    pub fn max(self, other: Self) -> Self {
        if other.compare(&self) == Ordering::Greater {
            other
        } else {
            self
        }
    }

    pub fn min(self, other: Self) -> Self {
        if other.compare(&self) == Ordering::Less {
            other
        } else {
            self
        }
    }
}

impl PartialEq for LengthValue {
    fn eq(&self, other: &Self) -> bool {
        self.compare(other) == Ordering::Equal
    }
}

impl PartialOrd for LengthValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.compare(other))
    }
}

impl fmt::Display for LengthValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LengthValue::ExactRational(r) => write!(f, "{r}"),
            LengthValue::ExactQuadratic(q) => write!(f, "sqrt({q})"),
            LengthValue::Float(x) => write!(f, "{x}"),
        }
    }
}

impl From<Rational> for LengthValue {
    fn from(r: Rational) -> Self {
        LengthValue::ExactRational(r)
    }
}

impl From<f64> for LengthValue {
    fn from(x: f64) -> Self {
        LengthValue::Float(x)
    }
}

/// Wire form: `{"kind": "rational"|"quadratic", "num", "den"}` or
/// `{"kind": "float", "value"}`. `approx` is written for readability and
/// ignored on input.
#[derive(Serialize, Deserialize)]
struct LengthJson {
    kind: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    num: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    den: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    value: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    approx: Option<f64>,
}

impl From<LengthValue> for LengthJson {
    fn from(v: LengthValue) -> Self {
        match v {
            LengthValue::ExactRational(r) => LengthJson {
                kind: "rational".into(),
                num: Some(*r.numer()),
                den: Some(*r.denom()),
                value: None,
                approx: Some(v.to_f64()),
            },
            LengthValue::ExactQuadratic(q) => LengthJson {
                kind: "quadratic".into(),
                num: Some(*q.numer()),
                den: Some(*q.denom()),
                value: None,
                approx: Some(v.to_f64()),
            },
            LengthValue::Float(x) => LengthJson {
                kind: "float".into(),
                num: None,
                den: None,
                value: Some(x),
                approx: None,
            },
        }
    }
}

impl TryFrom<LengthJson> for LengthValue {
    type Error = String;

    fn try_from(j: LengthJson) -> Result<Self, String> {
        let exact = |j: &LengthJson| -> Result<Rational, String> {
            let num = j.num.ok_or("missing num")?;
            let den = j.den.unwrap_or(1);
            if den == 0 {
                return Err("zero denominator".into());
            }
            Ok(Rational::new(num, den))
        };
        match j.kind.as_str() {
            "rational" => Ok(LengthValue::ExactRational(exact(&j)?)),
            "quadratic" => {
                let q = exact(&j)?;
                if q.is_negative() {
                    return Err("negative radicand".into());
                }
                Ok(LengthValue::sqrt(q))
            }
            "float" => j.value.map(LengthValue::Float).ok_or_else(|| "missing value".into()),
            other => Err(format!("unknown length kind {other:?}")),
        }
    }
}

/// `√t`, ordered by `t`. The m-values of lattice elements live here so
/// that comparisons stay on squared norms.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub struct SqrtOf<T>(pub T);

/// A point on the real half-line that can be placed in a [`Spectrum`].
///
/// [`Spectrum`]: crate::spectrum::Spectrum
pub trait LineValue: Clone + fmt::Debug + PartialOrd + Send + Sync {
    fn zero() -> Self;
    fn to_length(&self) -> LengthValue;
    fn half(&self) -> Self;
    fn double(&self) -> Self;
    /// Equality used to merge spectrum entries.
    fn same(&self, other: &Self) -> bool;

    fn to_f64(&self) -> f64 {
        self.to_length().to_f64()
    }
}

impl<T: Scalar> LineValue for T {
    fn zero() -> Self {
        T::zero()
    }

    fn to_length(&self) -> LengthValue {
        Scalar::to_length(self)
    }

    fn half(&self) -> Self {
        *self / (T::one() + T::one())
    }

    fn double(&self) -> Self {
        *self + *self
    }

    fn same(&self, other: &Self) -> bool {
        self.tie(other)
    }
}

impl<T: Scalar> LineValue for SqrtOf<T> {
    fn zero() -> Self {
        SqrtOf(T::zero())
    }

    fn to_length(&self) -> LengthValue {
        self.0.sqrt_length()
    }

    fn half(&self) -> Self {
        let four = T::one() + T::one() + T::one() + T::one();
        SqrtOf(self.0 / four)
    }

    fn double(&self) -> Self {
        let four = T::one() + T::one() + T::one() + T::one();
        SqrtOf(self.0 * four)
    }

    fn same(&self, other: &Self) -> bool {
        self.0.tie(&other.0)
    }
}

impl LineValue for LengthValue {
    fn zero() -> Self {
        LengthValue::zero()
    }

    fn to_length(&self) -> LengthValue {
        *self
    }

    fn half(&self) -> Self {
        LengthValue::half(self)
    }

    fn double(&self) -> Self {
        LengthValue::double(self)
    }

    fn same(&self, other: &Self) -> bool {
        LengthValue::same(self, other)
    }
}

/// A rational in JSON: `{"num": p, "den": q}`, a string such as `"3/2"`,
/// or a plain number.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RationalJson {
    Fraction {
        num: i64,
        #[serde(default = "one")]
        den: i64,
    },
    Text(String),
    Integer(i64),
    /// A decimal literal, read through its shortest decimal rendering.
    Decimal(f64),
}

fn one() -> i64 {
    1
}

impl RationalJson {
    pub fn to_rational(&self) -> Result<Rational, Error> {
        match self {
            RationalJson::Fraction { num, den } => {
                if *den == 0 {
                    return Err(Error::Parse("zero denominator".into()));
                }
                Ok(Rational::new(*num, *den))
            }
            RationalJson::Text(s) => parse_rational(s),
            RationalJson::Integer(n) => Ok(Rational::from_integer(*n)),
            RationalJson::Decimal(x) => parse_rational(&x.to_string()),
        }
    }
}

impl From<Rational> for RationalJson {
    fn from(q: Rational) -> Self {
        RationalJson::Fraction {
            num: *q.numer(),
            den: *q.denom(),
        }
    }
}

/// Parses `"3/2"`, `"-4"`, or a finite decimal such as `"0.75"` into an
/// exact rational.
pub fn parse_rational(s: &str) -> Result<Rational, Error> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    if let Some((n, d)) = s.split_once('/') {
        let n: i64 = n.trim().parse().map_err(|_| bad())?;
        let d: i64 = d.trim().parse().map_err(|_| bad())?;
        if d == 0 {
            return Err(bad());
        }
        return Ok(Rational::new(n, d));
    }
    if let Some((int, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) || frac.len() > 15 {
            return Err(bad());
        }
        let negative = int.trim_start().starts_with('-');
        let int_part: i64 = match int.trim() {
            "" | "-" | "+" => 0,
            t => t.parse().map_err(|_| bad())?,
        };
        let den = 10i64.checked_pow(frac.len() as u32).ok_or_else(bad)?;
        let frac_part: i64 = frac.parse().map_err(|_| bad())?;
        let magnitude = Rational::from_integer(int_part.abs()) + Rational::new(frac_part, den);
        return Ok(if negative { -magnitude } else { magnitude });
    }
    s.parse::<i64>().map(Rational::from_integer).map_err(|_| bad())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn sqrt_normalizes_perfect_squares() {
        assert_eq!(LengthValue::sqrt(q(9, 4)), LengthValue::rational(3, 2));
        assert!(matches!(LengthValue::sqrt(q(2, 1)), LengthValue::ExactQuadratic(_)));
    }

    #[test]
    fn exact_cross_kind_order() {
        let root2 = LengthValue::sqrt(q(2, 1));
        assert!(LengthValue::rational(7, 5) < root2);
        assert!(LengthValue::rational(3, 2) > root2);
        assert!(LengthValue::rational(-5, 1) < root2);
        assert!(LengthValue::Float(1.5) > root2);
    }

    #[test]
    fn distance_between_commensurable_roots_is_exact() {
        // 2√2 - √2 = √2
        let d = LengthValue::sqrt(q(8, 1)).distance(&LengthValue::sqrt(q(2, 1)));
        assert_eq!(d, LengthValue::sqrt(q(2, 1)));
        assert!(d.is_exact());
        let d = LengthValue::sqrt(q(3, 1)).distance(&LengthValue::sqrt(q(2, 1)));
        assert!(!d.is_exact());
        assert!((d.to_f64() - (3f64.sqrt() - 2f64.sqrt())).abs() < 1e-15);
    }

    #[test]
    fn json_round_trip() {
        for v in [
            LengthValue::rational(3, 2),
            LengthValue::sqrt(q(1, 8)),
            LengthValue::Float(0.25),
        ] {
            let s = serde_json::to_string(&v).unwrap();
            let back: LengthValue = serde_json::from_str(&s).unwrap();
            assert_eq!(back, v);
        }
        let v: LengthValue = serde_json::from_str(r#"{"kind":"rational","num":6,"den":4}"#).unwrap();
        assert_eq!(v, LengthValue::rational(3, 2));
    }

    #[test]
    fn parses_rationals() {
        assert_eq!(parse_rational("3/2").unwrap(), q(3, 2));
        assert_eq!(parse_rational("0.75").unwrap(), q(3, 4));
        assert_eq!(parse_rational("-1.5").unwrap(), q(-3, 2));
        assert_eq!(parse_rational("-0.5").unwrap(), q(-1, 2));
        assert_eq!(parse_rational("7").unwrap(), q(7, 1));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn sqrt_of_orders_by_square() {
        let a = SqrtOf(q(2, 1));
        let b = SqrtOf(q(3, 1));
        assert!(a < b);
        assert_eq!(a.half().0, q(1, 2));
        assert_eq!(a.double().0, q(8, 1));
        assert_eq!(LineValue::to_length(&SqrtOf(q(4, 1))), LengthValue::rational(2, 1));
    }
}
