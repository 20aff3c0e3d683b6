//! Finite spectra and the line-level statistics computed on them.

use std::cmp::Ordering;
use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{LengthValue, LineValue, Rational, Unit};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectrumEntry<V> {
    pub value: V,
    pub mult: usize,
}

/// A finite multiset of positive lengths, stored as strictly increasing
/// values with multiplicities.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound(deserialize = "V: LineValue + Deserialize<'de>"))]
#[serde(try_from = "RawSpectrum<V>")]
pub struct Spectrum<V> {
    unit: Unit,
    entries: Vec<SpectrumEntry<V>>,
}

#[derive(Deserialize)]
struct RawSpectrum<V> {
    #[serde(default)]
    unit: Unit,
    entries: Vec<SpectrumEntry<V>>,
}

impl<V: LineValue> TryFrom<RawSpectrum<V>> for Spectrum<V> {
    type Error = Error;

    fn try_from(raw: RawSpectrum<V>) -> Result<Self> {
        Spectrum::from_entries(raw.unit, raw.entries)
    }
}

impl<V: LineValue> Spectrum<V> {
    pub fn empty(unit: Unit) -> Self {
        Spectrum {
            unit,
            entries: Vec::new(),
        }
    }

    /// Validating constructor: values strictly increasing and positive,
    /// multiplicities at least one.
    pub fn from_entries(unit: Unit, entries: Vec<SpectrumEntry<V>>) -> Result<Self> {
        let zero = V::zero();
        for (i, e) in entries.iter().enumerate() {
            if e.mult == 0 {
                return Err(Error::InvalidArgument("multiplicity must be at least 1".into()));
            }
            if e.value.partial_cmp(&zero) != Some(Ordering::Greater) {
                return Err(Error::InvalidArgument(format!(
                    "spectrum values must be positive, got {:?}",
                    e.value
                )));
            }
            if i > 0 && entries[i - 1].value.partial_cmp(&e.value) != Some(Ordering::Less) {
                return Err(Error::InvalidArgument(
                    "spectrum values must be strictly increasing".into(),
                ));
            }
        }
        Ok(Spectrum { unit, entries })
    }

    /// Sorts the values and merges equal ones (per [`LineValue::same`]),
    /// counting each occurrence once.
    pub fn from_values(unit: Unit, values: impl IntoIterator<Item = V>) -> Result<Self> {
        Self::from_weighted(unit, values.into_iter().map(|v| (v, 1)))
    }

    pub fn from_weighted(unit: Unit, values: impl IntoIterator<Item = (V, usize)>) -> Result<Self> {
        let mut values: Vec<(V, usize)> = values.into_iter().collect();
        values.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap_or(Ordering::Equal));
        let mut entries: Vec<SpectrumEntry<V>> = Vec::new();
        for (v, m) in values {
            match entries.last_mut() {
                Some(last) if last.value.same(&v) => last.mult += m,
                _ => entries.push(SpectrumEntry { value: v, mult: m }),
            }
        }
        Self::from_entries(unit, entries)
    }

    pub fn unit(&self) -> Unit {
        self.unit
    }

    pub fn entries(&self) -> &[SpectrumEntry<V>] {
        &self.entries
    }

    pub fn values(&self) -> impl Iterator<Item = &V> + '_ {
        self.entries.iter().map(|e| &e.value)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Number of elements counted with multiplicity.
    pub fn total_multiplicity(&self) -> usize {
        self.entries.iter().map(|e| e.mult).sum()
    }

    pub fn min(&self) -> Option<&V> {
        self.entries.first().map(|e| &e.value)
    }

    pub fn max(&self) -> Option<&V> {
        self.entries.last().map(|e| &e.value)
    }

    pub fn to_lengths(&self) -> Spectrum<LengthValue> {
        Spectrum {
            unit: self.unit,
            entries: self
                .entries
                .iter()
                .map(|e| SpectrumEntry {
                    value: e.value.to_length(),
                    mult: e.mult,
                })
                .collect(),
        }
    }

    fn sorted_lengths(&self) -> Vec<LengthValue> {
        self.entries.iter().map(|e| e.value.to_length()).collect()
    }

    /// Whether the value sets agree, ignoring multiplicity.
    pub fn same_values(&self, other: &Spectrum<V>) -> bool {
        self.unit == other.unit
            && self.len() == other.len()
            && self.values().zip(other.values()).all(|(a, b)| a.same(b))
    }
}

impl Spectrum<LengthValue> {
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    /// One row per entry: `value,mult,unit,exact`.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["value", "mult", "unit", "exact"])?;
        for e in &self.entries {
            w.write_record([
                format_sig(e.value.to_f64(), 12),
                e.mult.to_string(),
                self.unit.to_string(),
                e.value.to_string(),
            ])?;
        }
        w.flush()?;
        Ok(())
    }
}

/// Formats `x` with `digits` significant digits, without exponent for
/// moderate magnitudes.
pub fn format_sig(x: f64, digits: usize) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let magnitude = x.abs().log10().floor() as i64;
    if !(-6..=15).contains(&magnitude) {
        return format!("{:.*e}", digits.saturating_sub(1), x);
    }
    let decimals = (digits as i64 - 1 - magnitude).max(0) as usize;
    let s = format!("{x:.decimals$}");
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

fn check_units<V>(a: &Spectrum<V>, b: &Spectrum<V>) -> Result<()> {
    if a.unit != b.unit {
        return Err(Error::UnitMismatch(a.unit, b.unit));
    }
    Ok(())
}

/// Distance from `x` to the nearest point of the sorted, nonempty `set`.
fn nearest_distance(x: &LengthValue, set: &[LengthValue]) -> LengthValue {
    let idx = set.partition_point(|p| p.compare(x) == Ordering::Less);
    let mut best: Option<LengthValue> = None;
    for j in [idx.checked_sub(1), Some(idx)].into_iter().flatten() {
        if let Some(p) = set.get(j) {
            let d = p.distance(x);
            best = Some(match best {
                Some(b) => b.min(d),
                None => d,
            });
        }
    }
    best.expect("nearest_distance needs a nonempty set")
}

/// Hausdorff distance between `A ∪ {0}` and `B ∪ {0}` on the real line.
/// Multiplicities are ignored.
pub fn hausdorff_distance_zero<V: LineValue>(a: &Spectrum<V>, b: &Spectrum<V>) -> Result<LengthValue> {
    check_units(a, b)?;
    let with_zero = |s: &Spectrum<V>| {
        let mut v = vec![LengthValue::zero()];
        v.extend(s.sorted_lengths());
        v
    };
    let (pa, pb) = (with_zero(a), with_zero(b));
    let one_sided = |from: &[LengthValue], to: &[LengthValue]| {
        from.iter()
            .map(|x| nearest_distance(x, to))
            .fold(LengthValue::zero(), LengthValue::max)
    };
    Ok(one_sided(&pa, &pb).max(one_sided(&pb, &pa)))
}

/// Anchor points for gap statistics: increasing, nonnegative, and holding
/// both endpoints `L1 < L2`.
#[derive(Clone, Debug, PartialEq)]
pub struct AnchorSet {
    points: Vec<LengthValue>,
}

impl AnchorSet {
    pub fn new(points: Vec<LengthValue>) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::InvalidArgument("anchor set needs both endpoints".into()));
        }
        if points[0].compare(&LengthValue::zero()) == Ordering::Less {
            return Err(Error::InvalidArgument("anchor points must be nonnegative".into()));
        }
        if points.windows(2).any(|w| w[0].compare(&w[1]) != Ordering::Less) {
            return Err(Error::InvalidArgument(
                "anchor points must be strictly increasing".into(),
            ));
        }
        Ok(AnchorSet { points })
    }

    /// `{L1, L2}` alone.
    pub fn endpoints(lo: LengthValue, hi: LengthValue) -> Result<Self> {
        Self::new(vec![lo, hi])
    }

    pub fn points(&self) -> &[LengthValue] {
        &self.points
    }

    pub fn lower(&self) -> &LengthValue {
        &self.points[0]
    }

    pub fn upper(&self) -> &LengthValue {
        self.points.last().unwrap()
    }

    /// Number of gaps between consecutive anchors.
    pub fn gap_count(&self) -> usize {
        self.points.len() - 1
    }
}

/// Consecutive differences of `(A ∩ [L1, L2]) ∪ S`, largest first.
pub fn gap_list<V: LineValue>(a: &Spectrum<V>, anchors: &AnchorSet) -> Vec<LengthValue> {
    let (lo, hi) = (anchors.lower(), anchors.upper());
    let mut points: Vec<LengthValue> = a
        .sorted_lengths()
        .into_iter()
        .filter(|v| v.compare(lo) != Ordering::Less && v.compare(hi) != Ordering::Greater)
        .chain(anchors.points.iter().copied())
        .collect();
    points.sort_by(LengthValue::compare);
    points.dedup_by(|x, y| x.same(y));
    let mut gaps: Vec<LengthValue> = points.windows(2).map(|w| w[1].distance(&w[0])).collect();
    gaps.sort_by(|x, y| y.compare(x));
    gaps
}

/// The `n`-th largest gap (1-based), or zero when there are fewer gaps.
pub fn gap_n(gaps: &[LengthValue], n: usize) -> LengthValue {
    n.checked_sub(1)
        .and_then(|i| gaps.get(i))
        .copied()
        .unwrap_or_else(LengthValue::zero)
}

/// Number of spectrum entries with `lo ≤ value ≤ hi`, optionally weighted
/// by multiplicity.
pub fn count_in_interval<V: LineValue>(
    a: &Spectrum<V>,
    lo: &LengthValue,
    hi: &LengthValue,
    with_multiplicity: bool,
) -> Result<usize> {
    if lo.compare(hi) == Ordering::Greater {
        return Err(Error::InvalidArgument(format!("empty interval [{lo}, {hi}]")));
    }
    Ok(a.entries
        .iter()
        .filter(|e| {
            let v = e.value.to_length();
            v.compare(lo) != Ordering::Less && v.compare(hi) != Ordering::Greater
        })
        .map(|e| if with_multiplicity { e.mult } else { 1 })
        .sum())
}

/// One set `[0, r) ∪ ⋃ (d - r, d + r)` of a clump cover and the family
/// members assigned to it.
#[derive(Clone, Debug, PartialEq)]
pub struct Clump {
    pub radius: LengthValue,
    pub centers: Vec<LengthValue>,
    pub members: Vec<usize>,
}

impl Clump {
    /// Whether `x` lies in the open set.
    pub fn contains(&self, x: &LengthValue) -> bool {
        x.compare(&self.radius) == Ordering::Less
            || self
                .centers
                .iter()
                .any(|d| d.distance(x).compare(&self.radius) == Ordering::Less)
    }

    pub fn covers<V: LineValue>(&self, s: &Spectrum<V>) -> bool {
        s.values().all(|v| self.contains(&v.to_length()))
    }

    /// Sum of the interval lengths, an upper bound on the measure.
    pub fn measure_bound(&self) -> LengthValue {
        let pieces = 1 + 2 * self.centers.len() as i64;
        self.radius.scale(Rational::from_integer(pieces))
    }
}

/// Covers a finite family of spectra by sets of measure below `eps`.
///
/// A new set is opened for each spectrum that does not fit an existing one;
/// its radius is `eps / (2 (k + 1))` with `k` the number of distinct values
/// of the spectrum that opened it.
pub fn clump_cover<V: LineValue>(family: &[Spectrum<V>], eps: &LengthValue) -> Result<Vec<Clump>> {
    if !eps.is_positive() {
        return Err(Error::InvalidArgument("clump cover needs eps > 0".into()));
    }
    let mut clumps: Vec<Clump> = Vec::new();
    for (idx, s) in family.iter().enumerate() {
        if let Some(c) = clumps.iter_mut().find(|c| c.covers(s)) {
            c.members.push(idx);
            continue;
        }
        let centers = s.sorted_lengths();
        let radius = eps.scale(Rational::new(1, 2 * (centers.len() as i64 + 1)));
        clumps.push(Clump {
            radius,
            centers,
            members: vec![idx],
        });
    }
    Ok(clumps)
}
