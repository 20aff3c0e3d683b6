//! Acceptance suite. Prints one line per criterion and exits non-zero when
//! any criterion fails.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::Instant;

use covspec::cov_spectrum::{compute_cov_spectrum, covering_map_f, oracle_cov_spectrum, MarkedGroupBackend};
use covspec::delta_cover::{self, Bounds, GraphBackend};
use covspec::free_group::FreeWord;
use covspec::graph::{Edge, MetricGraph};
use covspec::heisenberg::{GammaElement, HeisenbergManifold};
use covspec::hnf::IntegerLattice;
use covspec::lab::{self, Family};
use covspec::scalar::{LineValue, Unit};
use covspec::spectrum::{gap_list, gap_n, hausdorff_distance_zero, AnchorSet};
use covspec::sunada::{komatsu_check, CayleyGroup};
use covspec::{CovSpectrum, Decision, FloatLattice, LengthValue, Rational, RationalLattice};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestRng, TestRunner};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const HEISENBERG_TOL: f64 = 1e-9;
const RHOMBIC_TOL: f64 = 1e-12;
const PROPERTY_CASES: u32 = 256;
const SEED: u64 = 0x5eed_c0de;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

fn values(s: &CovSpectrum) -> Vec<LengthValue> {
    s.values().copied().collect()
}

fn check(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn torus_spectrum(diag: &[Rational]) -> Result<CovSpectrum, String> {
    let l = RationalLattice::diagonal(diag).map_err(|e| e.to_string())?;
    Ok(compute_cov_spectrum(&covspec::LatticeBackend::new(&l), None)
        .map_err(|e| e.to_string())?
        .spectrum)
}

fn flat_torus_exactness() -> Outcome {
    let a = torus_spectrum(&[q(3, 1), q(2, 1)])?;
    let b = torus_spectrum(&[q(1, 1), q(3, 1)])?;
    check(
        values(&a) == [LengthValue::rational(1, 1), LengthValue::rational(3, 2)],
        format!("diag(3,2) gave {:?}", values(&a)),
    )?;
    check(
        values(&b) == [LengthValue::rational(1, 2), LengthValue::rational(3, 2)],
        format!("diag(1,3) gave {:?}", values(&b)),
    )?;
    check(a.values().chain(b.values()).all(LengthValue::is_exact), "inexact value")?;
    Ok("diag(3,2) -> {1, 3/2}; diag(1,3) -> {1/2, 3/2}".into())
}

fn rhombic(theta: f64) -> Result<Vec<f64>, String> {
    let l = FloatLattice::rhombic(theta).map_err(|e| e.to_string())?;
    let r = compute_cov_spectrum(&covspec::LatticeBackend::new(&l), None).map_err(|e| e.to_string())?;
    Ok(r.spectrum.values().map(LengthValue::to_f64).collect())
}

fn rhombic_family() -> Outcome {
    let third = PI / 3.0;
    for theta in [PI / 2.0, 1.2, third + 0.01] {
        let s = rhombic(theta)?;
        check(
            s.len() == 1 && (s[0] - 0.5).abs() <= RHOMBIC_TOL,
            format!("θ = {theta}: {s:?}"),
        )?;
    }
    for theta in [third - 0.01, PI / 4.0, 0.5] {
        let s = rhombic(theta)?;
        let short = 0.5 * (2.0 - 2.0 * theta.cos()).sqrt();
        check(
            s.len() == 2 && (s[0] - short).abs() <= RHOMBIC_TOL && (s[1] - 0.5).abs() <= RHOMBIC_TOL,
            format!("θ = {theta}: {s:?}, expected [{short}, 0.5]"),
        )?;
    }
    let below = rhombic(third - 0.01)?.len();
    let above = rhombic(third + 0.01)?.len();
    check(below == 2 && above == 1, "no bifurcation between π/3 ± 0.01")?;
    Ok("one value for θ > π/3, two below, formula within 1e-12".into())
}

fn heisenberg_pair() -> (HeisenbergManifold<Rational>, HeisenbergManifold<Rational>) {
    let a = vec![q(1, 8), q(1, 2)];
    let g = HeisenbergManifold::new(vec![q(20, 1), q(1, 1)], vec![q(10, 1), q(1, 1)], q(1, 1), a.clone()).unwrap();
    let g2 = HeisenbergManifold::new(vec![q(2, 1), q(10, 1)], vec![q(10, 1), q(1, 1)], q(1, 1), a).unwrap();
    (g, g2)
}

fn matches(got: &CovSpectrum, want: &[f64]) -> bool {
    let got: Vec<f64> = got.values().map(LengthValue::to_f64).collect();
    got.len() == want.len() && got.iter().zip(want).all(|(a, b)| (a - b).abs() <= HEISENBERG_TOL)
}

fn heisenberg_isospectral_pair() -> Outcome {
    let (g, g2) = heisenberg_pair();
    let s = g.cov_spectrum().map_err(|e| e.to_string())?;
    let s2 = g2.cov_spectrum().map_err(|e| e.to_string())?;
    let r2 = 2f64.sqrt();
    let central = 0.5 * (PI / 2.0 * (1.0 - PI / 8.0)).sqrt();
    let mut want = vec![r2 / 4.0, 5.0 * r2 / 4.0, 5.0 * r2 / 2.0];
    check(matches(&s, &want), format!("CovSpec(Γ) = {:?}", values(&s)))?;
    want.insert(1, central);
    check(matches(&s2, &want), format!("CovSpec(Γ') = {:?}", values(&s2)))?;
    check(format!("{central:.5}") == "0.48835", format!("central value {central}"))?;
    check(g.laplace_isospectral(&g2), "pair not Laplace isospectral")?;
    let d = hausdorff_distance_zero(&s, &s2).map_err(|e| e.to_string())?;
    check(d.to_f64() > 0.0, "covering spectra coincide")?;
    Ok(format!("3 and 4 values, isospectral, d_H = {:.5}", d.to_f64()))
}

fn central_length() -> Outcome {
    let (g, _) = heisenberg_pair();
    let v = g
        .m_value(&GammaElement::central(1, 2))
        .map_err(|e| e.to_string())?
        .to_f64();
    // The closed form (π/2(1−π/4))^{1/2} evaluates to 0.5806; the value
    // 0.9767 comes from 4πa_1(|c| − πa_1) with a_1 = 1/8.
    let formula = (PI / 2.0 * (1.0 - PI / 8.0)).sqrt();
    check(
        (v - formula).abs() <= HEISENBERG_TOL,
        format!("m(0,0,1) = {v}, formula {formula}"),
    )?;
    check(format!("{v:.4}") == "0.9767", format!("m(0,0,1) = {v:.4}"))?;
    let printed = (PI / 2.0 * (1.0 - PI / 4.0)).sqrt();
    Ok(format!(
        "m(0,0,1) = {v:.10} = (π/2(1−π/8))^(1/2); the form with π/4 gives {printed:.4}"
    ))
}

fn gap_values() -> Outcome {
    let pi_anchors = AnchorSet::endpoints(LengthValue::zero(), LengthValue::rational(1, 1)).unwrap();
    for j in 1..=6usize {
        let s = Family::Todense.spectrum(j).map_err(|e| e.to_string())?;
        let g1 = gap_n(&gap_list(&s, &pi_anchors), 1);
        check(s.unit() == Unit::Pi, "todense not in π-units")?;
        check(
            g1 == LengthValue::rational(1, 1 << j),
            format!("todense j = {j}: gap_1 = {g1}"),
        )?;
    }
    for i in 2..=8i64 {
        let s = Family::Nounif.spectrum(i as usize).map_err(|e| e.to_string())?;
        let g1 = gap_n(&gap_list(&s, &pi_anchors), 1);
        check(
            g1 == LengthValue::rational(i - 1, i),
            format!("nounif i = {i}: largest gap = {g1}"),
        )?;
    }
    Ok("todense gap_1 = π/2^j (j ≤ 6); nounif largest gap = π(1−1/i) (i ≤ 8)".into())
}

fn convergence() -> Outcome {
    let spectra = lab::family_spectra(Family::TorusCollapse, 1, 10).map_err(|e| e.to_string())?;
    let limit = Family::TorusCollapse.limit(10).unwrap();
    let report = lab::convergence_report(&spectra, &limit).map_err(|e| e.to_string())?;
    let wrong: Vec<String> = report
        .rows
        .iter()
        .filter(|r| r.distance != LengthValue::rational(1, 2 * r.index as i64))
        .map(|r| format!("j = {}: d_H = {}, expected 1/{}", r.index, r.distance, 2 * r.index))
        .collect();
    check(wrong.is_empty(), wrong.join("; "))?;
    check(report.decreasing, "d_H not strictly decreasing")?;
    Ok("d_H = 1/(2j) for j = 1..10, strictly decreasing".into())
}

fn random_lattice(rng: &mut ChaCha8Rng, n: usize) -> RationalLattice {
    loop {
        let rows: Vec<Vec<Rational>> = (0..n)
            .map(|_| (0..n).map(|_| q(rng.gen_range(-5..=5), 1)).collect())
            .collect();
        if let Ok(l) = RationalLattice::from_basis(&rows) {
            return l;
        }
    }
}

fn random_bouquet(rng: &mut ChaCha8Rng) -> MetricGraph<Rational> {
    let k = rng.gen_range(2..=6);
    let lengths: Vec<Rational> = (0..k)
        .map(|_| {
            let d = rng.gen_range(1..=4);
            q(rng.gen_range(d..=3 * d), d)
        })
        .collect();
    MetricGraph::bouquet(&lengths, Unit::One).unwrap()
}

fn same_as_oracle<B: MarkedGroupBackend>(b: &B) -> Result<bool, String> {
    let fast = compute_cov_spectrum(b, None).map_err(|e| e.to_string())?.spectrum;
    let slow = oracle_cov_spectrum(b, None).map_err(|e| e.to_string())?;
    Ok(fast == slow)
}

fn oracle_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut mismatches = Vec::new();
    for (dim, count) in [(2, 100), (3, 25)] {
        for k in 0..count {
            let l = random_lattice(&mut rng, dim);
            if !same_as_oracle(&covspec::LatticeBackend::new(&l))? {
                mismatches.push(format!("{dim}D lattice #{k}"));
            }
        }
    }
    for k in 0..50 {
        let g = random_bouquet(&mut rng);
        if !same_as_oracle(&GraphBackend::new(&g, Bounds::default()))? {
            mismatches.push(format!("bouquet #{k}"));
        }
    }
    check(mismatches.is_empty(), mismatches.join(", "))?;
    Ok("100 2D + 25 3D lattices, 50 bouquets agree exactly".into())
}

fn runner() -> TestRunner {
    let config = Config {
        cases: PROPERTY_CASES,
        failure_persistence: None,
        ..Config::default()
    };
    TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha))
}

fn lattice_strategy() -> impl Strategy<Value = RationalLattice> {
    (2usize..=3)
        .prop_flat_map(|n| prop::collection::vec(prop::collection::vec(-4i64..=4, n), n))
        .prop_filter_map("singular basis", |rows| {
            let rows: Vec<Vec<Rational>> = rows.iter().map(|r| r.iter().map(|&x| q(x, 1)).collect()).collect();
            RationalLattice::from_basis(&rows).ok()
        })
}

/// Connected graphs on up to three vertices: a path plus one to three extra
/// edges, so the rank equals the number of extra edges. Lengths are halves
/// in `[1, 3]`.
fn graph_strategy() -> impl Strategy<Value = MetricGraph<Rational>> {
    let len = (2i64..=6).prop_map(|n| q(n, 2));
    (
        1usize..=3,
        prop::collection::vec(len.clone(), 2),
        prop::collection::vec((0usize..3, 0usize..3, len), 1..=3),
    )
        .prop_map(|(n, path, extra)| {
            let mut edges: Vec<Edge<Rational>> = (1..n)
                .map(|v| Edge {
                    u: v - 1,
                    v,
                    len: path[v - 1],
                })
                .collect();
            edges.extend(extra.into_iter().map(|(u, v, len)| Edge {
                u: u % n,
                v: v % n,
                len,
            }));
            MetricGraph::new(n, edges, Unit::One).unwrap()
        })
}

fn word_strategy() -> impl Strategy<Value = Vec<i32>> {
    prop::collection::vec(prop_oneof![-3i32..=-1, 1i32..=3], 0..6)
}

fn word_for(g: &MetricGraph<Rational>, raw: &[i32]) -> FreeWord {
    let r = g.rank() as i32;
    FreeWord::from_letters(raw.iter().map(|&x| x.signum() * ((x.abs() - 1) % r + 1)))
}

fn fail(msg: String) -> TestCaseError {
    TestCaseError::fail(msg)
}

fn property<S: Strategy>(
    name: &str,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<(), String>
where
    S::Value: std::fmt::Debug,
{
    runner().run(&strategy, test).map_err(|e| format!("{name}: {e}"))
}

fn spectrum_in_image_of_m() -> Result<(), String> {
    property("2·CovSpec ⊆ Im(m) on tori", lattice_strategy(), |l| {
        let s = compute_cov_spectrum(&covspec::LatticeBackend::new(&l), None).map_err(|e| fail(e.to_string()))?;
        for v in s.spectrum.values() {
            let four_d2 = v.exact_square().ok_or_else(|| fail(format!("inexact {v}")))? * 4;
            let shells = l.enumerate_by_norm2(&four_d2).map_err(|e| fail(e.to_string()))?;
            prop_assert!(
                shells.iter().any(|sh| sh.norm2 == four_d2),
                "2·{v} is not a lattice norm"
            );
        }
        Ok(())
    })?;
    property("2·CovSpec ⊆ Im(m) on graphs", graph_strategy(), |g| {
        let b = GraphBackend::new(&g, Bounds::default());
        let s = compute_cov_spectrum(&b, None).map_err(|e| fail(e.to_string()))?;
        for v in s.spectrum.values() {
            let two_d = v.as_rational().ok_or_else(|| fail(format!("inexact {v}")))? * 2;
            let ls = g.length_spectrum(&two_d, 100_000).map_err(|e| fail(e.to_string()))?;
            prop_assert!(ls.values().any(|x| *x == two_d), "2·{v} is not a loop length");
        }
        Ok(())
    })
}

fn covering_map_bounds() -> Result<(), String> {
    let vec2 = prop::collection::vec(-4i64..=4, 3);
    property(
        "f(g) ≤ m(g)/2 and ultrametric on tori",
        (lattice_strategy(), vec2.clone(), vec2),
        |(l, a, b)| {
            let n = l.dim();
            let (a, b) = (a[..n].to_vec(), b[..n].to_vec());
            let backend = covspec::LatticeBackend::new(&l);
            let r = compute_cov_spectrum(&backend, None).map_err(|e| fail(e.to_string()))?;
            let f = |g: &Vec<i64>| covering_map_f(&backend, &r, g).map_err(|e| fail(e.to_string()));
            let (fa, fb, fab) = (f(&a)?, f(&b)?, f(&backend.compose(&a, &b))?);
            prop_assert!(
                fa <= backend.m_value(&a).to_length().half() || fa.same(&backend.m_value(&a).to_length().half())
            );
            prop_assert!(fab <= fa.max(fb) || fab.same(&fa.max(fb)));
            Ok(())
        },
    )?;
    property(
        "f(g) ≤ m(g)/2 and ultrametric on graphs",
        (graph_strategy(), word_strategy(), word_strategy()),
        |(g, a, b)| {
            let backend = GraphBackend::new(&g, Bounds::default());
            let r = compute_cov_spectrum(&backend, None).map_err(|e| fail(e.to_string()))?;
            let (a, b) = (word_for(&g, &a), word_for(&g, &b));
            let f = |w: &FreeWord| covering_map_f(&backend, &r, w).map_err(|e| fail(e.to_string()));
            let (fa, fb, fab) = (f(&a)?, f(&b)?, f(&a.mul(&b))?);
            let half_m = backend.m_value(&a).to_length().half();
            prop_assert!(fa <= half_m || fa.same(&half_m), "f = {fa}, m/2 = {half_m}");
            prop_assert!(fab <= fa.max(fb) || fab.same(&fa.max(fb)));
            Ok(())
        },
    )
}

fn m_invariance() -> Result<(), String> {
    property(
        "m conjugation and inversion invariance",
        (graph_strategy(), word_strategy(), word_strategy()),
        |(g, w, u)| {
            let backend = GraphBackend::new(&g, Bounds::default());
            let (w, u) = (word_for(&g, &w), word_for(&g, &u));
            let m = backend.m_value(&w);
            prop_assert_eq!(backend.m_value(&w.inverse()), m);
            prop_assert_eq!(backend.m_value(&w.conjugate_by(&u)), m);
            Ok(())
        },
    )?;
    property(
        "m inversion invariance on tori",
        (lattice_strategy(), prop::collection::vec(-4i64..=4, 3)),
        |(l, g)| {
            let g = g[..l.dim()].to_vec();
            let neg: Vec<i64> = g.iter().map(|x| -x).collect();
            prop_assert_eq!(l.norm2(&g), l.norm2(&neg));
            Ok(())
        },
    )
}

fn translative_length() -> Result<(), String> {
    let input = (
        lattice_strategy(),
        prop::collection::vec(-3i64..=3, 3),
        1i64..=12,
        1i64..=4,
    );
    property(
        "m(g) ≥ l(g,δ) and l(g,δ) ≥ 2δ off Λ_δ",
        input,
        |(l, g, dn, dd)| {
            let g = g[..l.dim()].to_vec();
            let delta = q(dn, dd);
            let lg = l
                .translative_delta_length(&g, &delta)
                .map_err(|e| fail(e.to_string()))?;
            let m = l.m_value(&g);
            prop_assert!(lg.0 <= m.0, "l² = {} exceeds m² = {}", lg.0, m.0);
            let sub = l.sublattice_at(&delta).map_err(|e| fail(e.to_string()))?;
            if !sub.contains(&g) {
                prop_assert!(lg.0 >= delta * delta * 4, "l² = {} below 4δ²", lg.0);
            }
            Ok(())
        },
    )
}

fn relator_monotonicity() -> Result<(), String> {
    property(
        "relators grow with δ",
        (graph_strategy(), 1i64..=6, 1i64..=6),
        |(g, a, b)| {
            let (r, t) = (q(a.min(b), 2), q(a.max(b), 2));
            let bounds = Bounds::default();
            let lo = delta_cover::relators(&g, &r, &bounds).map_err(|e| fail(e.to_string()))?;
            let hi = delta_cover::relators(&g, &t, &bounds).map_err(|e| fail(e.to_string()))?;
            prop_assert!(lo.relators.iter().all(|w| hi.relators.contains(w)));
            Ok(())
        },
    )
}

fn delta_pairs() -> Result<(), String> {
    property("δ-pair witnesses have m = 2δ", graph_strategy(), |g| {
        let bounds = Bounds::default();
        let s = compute_cov_spectrum(&GraphBackend::new(&g, bounds), None).map_err(|e| fail(e.to_string()))?;
        for v in s.spectrum.values() {
            let delta = v.as_rational().ok_or_else(|| fail(format!("inexact {v}")))?;
            let w = delta_cover::delta_pair_witness(&g, &delta, &bounds).map_err(|e| fail(e.to_string()))?;
            prop_assert_eq!(g.min_marked_length(&w), delta * 2);
        }
        Ok(())
    })
}

fn property_suite() -> Outcome {
    spectrum_in_image_of_m()?;
    covering_map_bounds()?;
    m_invariance()?;
    translative_length()?;
    relator_monotonicity()?;
    delta_pairs()?;
    Ok(format!("9 properties, {PROPERTY_CASES} samples each"))
}

fn multiplicity_sums<B: MarkedGroupBackend>(b: &B, rank: usize) -> Result<(), String> {
    let r = compute_cov_spectrum(b, None).map_err(|e| e.to_string())?;
    let steps: usize = r.chain.steps.iter().map(|s| s.multiplicity).sum();
    check(
        steps == r.spectrum.total_multiplicity(),
        "step multiplicities disagree with the spectrum",
    )?;
    let basis: Vec<B::Element> = r.chain.steps.iter().flat_map(|s| s.short_basis.clone()).collect();
    check(
        basis.len() == steps,
        "short basis size differs from the multiplicity sum",
    )?;
    let generated = b.absorb(&b.trivial_subgroup(), &basis);
    check(
        b.is_whole_group(&generated) == Decision::Yes,
        "short basis does not generate",
    )?;
    check(steps >= rank, format!("multiplicity sum {steps} below rank {rank}"))
}

fn multiplicity() -> Outcome {
    let l = RationalLattice::diagonal(&[q(1, 1), q(1, 1)]).unwrap();
    let backend = covspec::LatticeBackend::new(&l);
    let r = compute_cov_spectrum(&backend, None).map_err(|e| e.to_string())?;
    check(
        values(&r.spectrum) == [LengthValue::rational(1, 2)],
        "square torus spectrum",
    )?;
    check(r.spectrum.entries()[0].mult == 2, "square torus multiplicity")?;
    let basis = &r.chain.steps[0].short_basis;
    let span = IntegerLattice::spanned_by(2, basis.iter().map(Vec::as_slice));
    check(
        span.index() == Some(1),
        format!("short basis {basis:?} has index {:?}", span.index()),
    )?;

    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 1);
    for dim in [2, 3] {
        for _ in 0..20 {
            let l = random_lattice(&mut rng, dim);
            multiplicity_sums(&covspec::LatticeBackend::new(&l), dim)?;
        }
    }
    for _ in 0..20 {
        let g = random_bouquet(&mut rng);
        multiplicity_sums(&GraphBackend::new(&g, Bounds::default()), g.rank())?;
    }
    let mut samples = runner();
    samples
        .run(&graph_strategy(), |g| {
            multiplicity_sums(&GraphBackend::new(&g, Bounds::default()), g.rank()).map_err(fail)
        })
        .map_err(|e| e.to_string())?;
    Ok("square torus {1/2} mult 2, short basis spans ℤ²; sums match on lattices and graphs".into())
}

fn cover_table() -> Outcome {
    let l = RationalLattice::diagonal(&[q(3, 1), q(2, 1)]).unwrap();
    let expect = [(q(9, 10), 0), (q(1, 1), 0), (q(6, 5), 1), (q(3, 2), 1), (q(8, 5), 2)];
    for (delta, rank) in expect {
        let sub = l.sublattice_at(&delta).map_err(|e| e.to_string())?;
        check(
            sub.rank() == rank,
            format!("δ = {delta}: rank {} expected {rank}", sub.rank()),
        )?;
        if rank == 1 {
            check(
                sub.basis() == vec![vec![0, 1]],
                format!("δ = {delta}: basis {:?}", sub.basis()),
            )?;
        }
        if rank == 2 {
            check(sub.is_whole(), format!("δ = {delta}: index {:?}", sub.index()))?;
        }
    }
    Ok("Λ_δ trivial at 0.9, 1.0; short direction at 1.2, 1.5; ℤ² at 1.6".into())
}

fn komatsu() -> Outcome {
    let h1 = CayleyGroup::elementary_abelian(3, 3);
    let h2 = CayleyGroup::heisenberg_mod_p(3);
    let r = komatsu_check(&h1, &h2, 3).map_err(|e| e.to_string())?;
    check(r.holds && r.sunada.holds, "Sunada condition fails")?;
    let nontrivial = |pick: fn(&covspec::sunada::ClassCount) -> usize| -> usize {
        r.sunada
            .table
            .iter()
            .filter(|c| c.cycle_type.iter().any(|&k| k > 1))
            .map(pick)
            .sum()
    };
    let (c1, c2) = (nontrivial(|c| c.h1), nontrivial(|c| c.h2));
    check(c1 == 26 && c2 == 26, format!("nontrivial counts {c1}, {c2}"))?;
    check(
        (r.h1_min_generators, r.h2_min_generators) == (3, 2),
        format!("generator counts {} and {}", r.h1_min_generators, r.h2_min_generators),
    )?;
    Ok("holds in S_27, 26 nontrivial elements each, generators 3 and 2".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("flat-torus exactness", flat_torus_exactness),
        ("rhombic family", rhombic_family),
        ("heisenberg isospectral pair", heisenberg_isospectral_pair),
        ("central length m(0,0,1)", central_length),
        ("gap values", gap_values),
        ("torus collapse convergence", convergence),
        ("oracle equivalence", oracle_equivalence),
        ("property suite", property_suite),
        ("multiplicity", multiplicity),
        ("delta-cover table", cover_table),
        ("sunada and komatsu", komatsu),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let (tag, detail) = match run() {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!(
            "[{tag}] {:>2} {name}: {detail} ({:.1}s)",
            i + 1,
            start.elapsed().as_secs_f64()
        );
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
