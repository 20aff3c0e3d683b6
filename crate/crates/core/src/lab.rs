//! Families of spaces indexed by an integer, with convergence and gap
//! reports on their covering spectra.

use std::f64::consts::PI;
use std::fmt;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use serde::Serialize;
use serde_json::json;

use crate::cov_spectrum::compute_cov_spectrum;
use crate::delta_cover::{Bounds, GraphBackend};
use crate::error::{Error, Result};
use crate::graph::MetricGraph;
use crate::scalar::{LengthValue, Rational, Unit};
use crate::spectrum::{format_sig, gap_list, gap_n, hausdorff_distance_zero, AnchorSet, Spectrum};
use crate::torus::{Lattice, LatticeBackend};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    /// Flat tori `1 × 1/j`.
    TorusCollapse,
    /// Circles of radii `1, 1/2, .., 1/k` at a common point.
    HawaiiTrunc,
    /// `2^j` circles of radii `k / 2^j`, `k = 1..2^j`, at a common point.
    Todense,
    /// Circles of radii `k/i²` (`k < i`), `1/i` and `1` at a common point.
    Nounif,
    /// Rhombic tori with angle `iπ/24`.
    RhombicPath,
    /// `j` circles of length `2/j` at a common point.
    MultiplicityGrowth,
}

pub const FAMILIES: [Family; 6] = [
    Family::TorusCollapse,
    Family::HawaiiTrunc,
    Family::Todense,
    Family::Nounif,
    Family::RhombicPath,
    Family::MultiplicityGrowth,
];

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::TorusCollapse => "torus_collapse",
            Family::HawaiiTrunc => "hawaii_trunc",
            Family::Todense => "todense",
            Family::Nounif => "nounif",
            Family::RhombicPath => "rhombic_path",
            Family::MultiplicityGrowth => "multiplicity_growth",
        })
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        FAMILIES
            .iter()
            .copied()
            .find(|f| f.to_string() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown family {s:?}")))
    }
}

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

fn bouquet_spectrum(lengths: &[Rational]) -> Result<Spectrum<LengthValue>> {
    let g = MetricGraph::bouquet(lengths, Unit::Pi)?;
    Ok(compute_cov_spectrum(&GraphBackend::new(&g, Bounds::default()), None)?.spectrum)
}

/// A circle of radius `r` has length `2πr`, i.e. `2r` in π-units.
fn circles(radii: impl IntoIterator<Item = Rational>) -> Vec<Rational> {
    radii.into_iter().map(|r| r * 2).collect()
}

impl Family {
    pub fn unit(self) -> Unit {
        match self {
            Family::TorusCollapse | Family::RhombicPath => Unit::One,
            _ => Unit::Pi,
        }
    }

    /// Indices accepted by [`Family::spectrum`].
    pub fn valid_index(self, j: usize) -> bool {
        match self {
            Family::Todense => (1..=10).contains(&j),
            Family::Nounif => j >= 2,
            Family::RhombicPath => (1..=23).contains(&j),
            _ => j >= 1,
        }
    }

    pub fn default_range(self) -> (usize, usize) {
        match self {
            Family::TorusCollapse => (1, 10),
            Family::HawaiiTrunc => (1, 12),
            Family::Todense => (1, 6),
            Family::Nounif => (2, 8),
            Family::RhombicPath => (1, 12),
            Family::MultiplicityGrowth => (1, 8),
        }
    }

    /// Covering spectrum of the member with index `j`.
    pub fn spectrum(self, j: usize) -> Result<Spectrum<LengthValue>> {
        if !self.valid_index(j) {
            return Err(Error::InvalidArgument(format!(
                "index {j} is outside the family {self}"
            )));
        }
        let ji = j as i64;
        match self {
            Family::TorusCollapse => {
                let l = Lattice::diagonal(&[q(1, 1), q(1, ji)])?;
                Ok(compute_cov_spectrum(&LatticeBackend::new(&l), None)?.spectrum)
            }
            Family::RhombicPath => {
                let l = Lattice::rhombic(ji as f64 * PI / 24.0)?;
                Ok(compute_cov_spectrum(&LatticeBackend::new(&l), None)?.spectrum)
            }
            Family::HawaiiTrunc => bouquet_spectrum(&circles((1..=ji).map(|i| q(1, i)))),
            Family::Todense => {
                let n = 1i64 << j;
                bouquet_spectrum(&circles((1..=n).map(|k| q(k, n))))
            }
            Family::Nounif => {
                let radii = (1..ji).map(|k| q(k, ji * ji)).chain([q(1, ji), q(1, 1)]);
                bouquet_spectrum(&circles(radii))
            }
            Family::MultiplicityGrowth => bouquet_spectrum(&vec![q(2, ji); j]),
        }
    }

    /// The known limit spectrum. `end` is the last index of the range, used
    /// as the reference truncation for `hawaii_trunc`. `todense` has no
    /// limit.
    pub fn limit(self, end: usize) -> Option<Spectrum<LengthValue>> {
        let one = |v: LengthValue| Spectrum::from_values(self.unit(), [v]).expect("positive value");
        match self {
            Family::TorusCollapse | Family::RhombicPath => Some(one(LengthValue::rational(1, 2))),
            Family::Nounif => Some(one(LengthValue::rational(1, 1))),
            Family::MultiplicityGrowth => Some(Spectrum::empty(Unit::Pi)),
            Family::HawaiiTrunc => Some(
                Spectrum::from_values(Unit::Pi, (1..=end as i64).map(|i| LengthValue::rational(1, i)))
                    .expect("positive values"),
            ),
            Family::Todense => None,
        }
    }

    /// Anchors used by default in gap reports: `{0, π}` for circle families
    /// and `{0, 1/2}` for tori.
    pub fn default_anchors(self) -> AnchorSet {
        let hi = match self.unit() {
            Unit::Pi => LengthValue::rational(1, 1),
            Unit::One => LengthValue::rational(1, 2),
        };
        AnchorSet::endpoints(LengthValue::zero(), hi).expect("ordered endpoints")
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IndexedSpectrum {
    pub index: usize,
    pub spectrum: Spectrum<LengthValue>,
}

pub fn family_spectra(family: Family, start: usize, end: usize) -> Result<Vec<IndexedSpectrum>> {
    if start > end {
        return Err(Error::InvalidArgument("empty index range".into()));
    }
    (start..=end)
        .map(|index| {
            Ok(IndexedSpectrum {
                index,
                spectrum: family.spectrum(index)?,
            })
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConvergenceRow {
    pub index: usize,
    pub distance: LengthValue,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConvergenceReport {
    pub rows: Vec<ConvergenceRow>,
    /// Each distance is strictly below the previous one, or both are zero.
    pub decreasing: bool,
}

/// Hausdorff distance (with 0 appended) from each spectrum to `limit`.
pub fn convergence_report(spectra: &[IndexedSpectrum], limit: &Spectrum<LengthValue>) -> Result<ConvergenceReport> {
    let rows = spectra
        .iter()
        .map(|s| {
            Ok(ConvergenceRow {
                index: s.index,
                distance: hausdorff_distance_zero(&s.spectrum, limit)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let decreasing = rows
        .windows(2)
        .all(|w| w[1].distance < w[0].distance || (w[0].distance.is_zero() && w[1].distance.is_zero()));
    Ok(ConvergenceReport { rows, decreasing })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GapRow {
    pub index: usize,
    /// `gap_1, .., gap_k` with `k` one less than the number of anchors.
    pub gaps: Vec<LengthValue>,
}

pub fn gap_report(spectra: &[IndexedSpectrum], anchors: &AnchorSet) -> Vec<GapRow> {
    spectra
        .iter()
        .map(|s| {
            let gaps = gap_list(&s.spectrum, anchors);
            GapRow {
                index: s.index,
                gaps: (1..=anchors.gap_count()).map(|n| gap_n(&gaps, n)).collect(),
            }
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NearZeroRow {
    pub index: usize,
    /// Largest spectrum value below `λ/2`, or zero.
    pub epsilon: LengthValue,
    /// No spectrum value lies in `(ε, λ)`.
    pub holds: bool,
}

/// For each member, takes `ε` as its largest value below `λ/2` (`λ` the
/// least limit value) and checks that nothing lies in `(ε, λ)`. Returns no
/// rows when the limit is empty.
pub fn near_zero_gap_check(spectra: &[IndexedSpectrum], limit: &Spectrum<LengthValue>) -> Vec<NearZeroRow> {
    let Some(lambda) = limit.min().copied() else {
        return Vec::new();
    };
    let half = lambda.half();
    spectra
        .iter()
        .map(|s| {
            let epsilon = s
                .spectrum
                .values()
                .filter(|v| **v < half && !v.same(&half))
                .last()
                .copied()
                .unwrap_or_else(LengthValue::zero);
            let holds = !s
                .spectrum
                .values()
                .any(|v| *v > epsilon && !v.same(&epsilon) && *v < lambda && !v.same(&lambda));
            NearZeroRow {
                index: s.index,
                epsilon,
                holds,
            }
        })
        .collect()
}

fn exact_parts(v: &LengthValue) -> (String, String) {
    match v.as_rational() {
        Some(r) => (r.numer().to_string(), r.denom().to_string()),
        None => (String::new(), String::new()),
    }
}

pub fn write_convergence_csv<W: std::io::Write>(report: &ConvergenceReport, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["index", "d_h", "d_h_num", "d_h_den"])?;
    for row in &report.rows {
        let (num, den) = exact_parts(&row.distance);
        w.write_record([row.index.to_string(), format_sig(row.distance.to_f64(), 12), num, den])?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_gaps_csv<W: std::io::Write>(rows: &[GapRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let width = rows.iter().map(|r| r.gaps.len()).max().unwrap_or(0);
    let mut header = vec!["index".to_string()];
    header.extend((1..=width).map(|n| format!("gap_{n}")));
    w.write_record(&header)?;
    for row in rows {
        let mut rec = vec![row.index.to_string()];
        rec.extend(row.gaps.iter().map(|g| format_sig(g.to_f64(), 12)));
        rec.resize(width + 1, String::new());
        w.write_record(&rec)?;
    }
    w.flush()?;
    Ok(())
}

/// Runs a family over `start..=end` and writes `spectra.json`,
/// `convergence.csv` (when the family has a limit) and `gaps.csv` into
/// `dir`.
pub fn run_family(family: Family, start: usize, end: usize, dir: &Path) -> Result<()> {
    let spectra = family_spectra(family, start, end)?;
    fs::create_dir_all(dir)?;
    let limit = family.limit(end);
    let doc = json!({
        "family": family,
        "unit": family.unit(),
        "limit": limit,
        "spectra": spectra,
    });
    fs::write(dir.join("spectra.json"), serde_json::to_string_pretty(&doc)?)?;
    if let Some(limit) = &limit {
        let report = convergence_report(&spectra, limit)?;
        write_convergence_csv(&report, fs::File::create(dir.join("convergence.csv"))?)?;
    }
    let gaps = gap_report(&spectra, &family.default_anchors());
    write_gaps_csv(&gaps, fs::File::create(dir.join("gaps.csv"))?)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l(n: i64, d: i64) -> LengthValue {
        LengthValue::rational(n, d)
    }

    #[test]
    fn names_round_trip() {
        for f in FAMILIES {
            assert_eq!(f.to_string().parse::<Family>().unwrap(), f);
        }
        assert!("hawaii".parse::<Family>().is_err());
    }

    #[test]
    fn torus_collapse_members() {
        for j in 2..=8 {
            let s = Family::TorusCollapse.spectrum(j).unwrap();
            let vals: Vec<LengthValue> = s.values().copied().collect();
            assert_eq!(vals, vec![l(1, 2 * j as i64), l(1, 2)]);
        }
        // The first member is the square torus.
        let s = Family::TorusCollapse.spectrum(1).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s.entries()[0].mult, 2);
    }

    #[test]
    fn todense_is_evenly_spaced() {
        let s = Family::Todense.spectrum(3).unwrap();
        let vals: Vec<LengthValue> = s.values().copied().collect();
        assert_eq!(vals, (1..=8).map(|k| l(k, 8)).collect::<Vec<_>>());
        assert_eq!(s.unit(), Unit::Pi);
    }

    #[test]
    fn multiplicity_grows() {
        for j in 1..=6 {
            let s = Family::MultiplicityGrowth.spectrum(j).unwrap();
            assert_eq!(s.len(), 1);
            assert_eq!(s.entries()[0].value, l(1, j as i64));
            assert_eq!(s.entries()[0].mult, j);
        }
    }

    #[test]
    fn rhombic_end_of_path() {
        let s = Family::RhombicPath.spectrum(12).unwrap();
        assert_eq!(s.len(), 1);
        assert!((s.entries()[0].value.to_f64() - 0.5).abs() < 1e-12);
    }

    #[test]
    fn reports() {
        let spectra = family_spectra(Family::TorusCollapse, 2, 6).unwrap();
        let report = convergence_report(&spectra, &Family::TorusCollapse.limit(6).unwrap()).unwrap();
        assert!(report.decreasing);
        assert_eq!(report.rows[0].distance, l(1, 4));
        let near = near_zero_gap_check(&spectra, &Family::TorusCollapse.limit(6).unwrap());
        assert!(!near[0].holds);
        assert!(near[1..].iter().all(|r| r.holds));
        assert_eq!(near[1].epsilon, l(1, 6));

        let constant = family_spectra(Family::RhombicPath, 8, 12).unwrap();
        let r = convergence_report(&constant, &Family::RhombicPath.limit(12).unwrap()).unwrap();
        assert!(r.rows.iter().all(|row| row.distance.to_f64() < 1e-12));
        assert!(near_zero_gap_check(&constant, &Spectrum::empty(Unit::One)).is_empty());
    }

    #[test]
    fn gap_rows() {
        let spectra = family_spectra(Family::Nounif, 2, 4).unwrap();
        let rows = gap_report(&spectra, &Family::Nounif.default_anchors());
        for row in rows {
            let i = row.index as i64;
            assert_eq!(row.gaps, vec![l(i - 1, i)]);
        }
    }

    #[test]
    fn csv_and_directory_output() {
        let dir = std::env::temp_dir().join(format!("covspec-lab-{}", std::process::id()));
        run_family(Family::TorusCollapse, 1, 3, &dir).unwrap();
        let conv = fs::read_to_string(dir.join("convergence.csv")).unwrap();
        assert_eq!(conv.lines().next().unwrap(), "index,d_h,d_h_num,d_h_den");
        assert_eq!(conv.lines().count(), 4);
        assert!(fs::read_to_string(dir.join("gaps.csv"))
            .unwrap()
            .starts_with("index,gap_1"));
        let doc: serde_json::Value =
            serde_json::from_str(&fs::read_to_string(dir.join("spectra.json")).unwrap()).unwrap();
        assert_eq!(doc["spectra"].as_array().unwrap().len(), 3);
        fs::remove_dir_all(&dir).unwrap();
    }
}
