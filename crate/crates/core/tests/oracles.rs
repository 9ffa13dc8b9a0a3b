//! Monte Carlo and distributional oracles for the closed-form
//! probabilities: every formula is re-derived here by direct simulation on
//! independent plumbing (fixed arcs, rotation placement, raw sampling)
//! rather than through the experiment runners it normally feeds.

use std::f64::consts::{FRAC_PI_2, PI};

use geocross::analytic::{fixed_circles_cross_probability, joint_cross_probability};
use geocross::geom::{classify_arcs_cross, make_arc, Crossing, UnitVector};
use geocross::montecarlo::{
    run_concentration_probe, run_drawing_ratio, run_pair_probability, ExperimentConfig, Mode,
};
use geocross::sampling::{pairwise_angle_density_test, SeededStream};

fn three_sigma_band(p: f64, trials: f64) -> f64 {
    3.0 * (p * (1.0 - p) / trials).sqrt()
}

#[test]
fn conditional_probability_against_fixed_arc() {
    // A fixed quarter arc on the equator: crossing probability for an
    // independent uniform pair is α/(4π) = 1/8.
    let arc = make_arc(UnitVector::X, UnitVector::Y).unwrap();
    let mut stream = SeededStream::new(0xB001, 0);
    let trials = 1_000_000u64;
    let mut hits = 0u64;
    for _ in 0..trials {
        let r = stream.sample_unit_vector();
        let s = stream.sample_unit_vector();
        let Ok(rs) = make_arc(r, s) else { continue };
        if matches!(classify_arcs_cross(&arc, &rs), Ok(Crossing::Proper)) {
            hits += 1;
        }
    }
    let rate = hits as f64 / trials as f64;
    let band = three_sigma_band(0.125, trials as f64);
    assert!((rate - 0.125).abs() <= band, "rate {rate}, band {band}");
}

#[test]
fn unconditional_probability_from_raw_tuples() {
    // 10⁶ independent 4-tuples; crossing rate must be 1/8 ± 0.001.
    let mut stream = SeededStream::new(0xB002, 0);
    let trials = 1_000_000u64;
    let mut hits = 0u64;
    for _ in 0..trials {
        let pq = make_arc(stream.sample_unit_vector(), stream.sample_unit_vector());
        let rs = make_arc(stream.sample_unit_vector(), stream.sample_unit_vector());
        let (Ok(pq), Ok(rs)) = (pq, rs) else { continue };
        if matches!(classify_arcs_cross(&pq, &rs), Ok(Crossing::Proper)) {
            hits += 1;
        }
    }
    let rate = hits as f64 / trials as f64;
    assert!((rate - 0.125).abs() <= 0.001, "rate {rate}");
}

#[test]
fn fixed_circles_probability_by_rotation_placement() {
    // Two fixed orthogonal great circles (normals z and x); quarter arcs
    // placed by uniform rotation about each circle's axis. Expected
    // crossing rate 2·(α/2π)(β/2π) = 1/8 at α = β = π/2.
    let mut stream = SeededStream::new(0xB003, 0);
    let trials = 1_000_000u64;
    let mut hits = 0u64;
    for _ in 0..trials {
        let phi = 2.0 * PI * stream.uniform();
        let psi = 2.0 * PI * stream.uniform();
        let e1 = make_arc(
            UnitVector::new(phi.cos(), phi.sin(), 0.0).unwrap(),
            UnitVector::new((phi + FRAC_PI_2).cos(), (phi + FRAC_PI_2).sin(), 0.0).unwrap(),
        )
        .unwrap();
        let e2 = make_arc(
            UnitVector::new(0.0, psi.cos(), psi.sin()).unwrap(),
            UnitVector::new(0.0, (psi + FRAC_PI_2).cos(), (psi + FRAC_PI_2).sin()).unwrap(),
        )
        .unwrap();
        if matches!(classify_arcs_cross(&e1, &e2), Ok(Crossing::Proper)) {
            hits += 1;
        }
    }
    let target = fixed_circles_cross_probability(FRAC_PI_2, FRAC_PI_2).unwrap();
    let rate = hits as f64 / trials as f64;
    let band = three_sigma_band(target, trials as f64);
    assert!((rate - target).abs() <= band, "rate {rate}, target {target}");
}

#[test]
fn joint_probability_at_half_pi_large_sample() {
    // 10⁷ tuples at d = π/2 against (sin d - d cos d)²/(8π²) = 1/(8π²).
    let config = ExperimentConfig {
        n: 4,
        d: FRAC_PI_2,
        trials: 10_000_000,
        master_seed: 0xB004,
        mode: Mode::PairProbability,
    };
    let summary = run_pair_probability(&config).unwrap();
    assert_eq!(
        summary.analytic_target,
        joint_cross_probability(FRAC_PI_2).unwrap()
    );
    assert!(
        summary.z_score.abs() <= 3.0,
        "z = {}, mean = {}",
        summary.z_score,
        summary.mean
    );
}

#[test]
fn arc_length_distribution_passes_ks_at_one_percent() {
    // KS critical value at 1%: 1.63/√n.
    let mut stream = SeededStream::new(0xB005, 0);
    let samples = 1_000_000;
    let statistic = pairwise_angle_density_test(&mut stream, samples);
    let critical = 1.63 / (samples as f64).sqrt();
    assert!(statistic < critical, "KS {statistic} ≥ {critical}");
}

#[test]
fn sphere_sampling_is_rotation_invariant_chi_square() {
    // 32 equal-area z-bands (nested cap differences) per rotated frame;
    // chi-square(31) at the 1% level is 52.191.
    const BANDS: usize = 32;
    const CHI2_CRIT_31_1PCT: f64 = 52.191;
    let samples = 100_000usize;
    let mut rot_stream = SeededStream::new(0xB006, 1);
    for rotation in 0..5 {
        let rot = rot_stream.random_rotation();
        let mut counts = [0u64; BANDS];
        let mut stream = SeededStream::new(0xB006, 100 + rotation);
        for _ in 0..samples {
            let z = rot.apply(stream.sample_unit_vector()).z();
            // Equal-area bands are uniform in z.
            let band = (((z + 1.0) / 2.0) * BANDS as f64) as usize;
            counts[band.min(BANDS - 1)] += 1;
        }
        let expected = samples as f64 / BANDS as f64;
        let chi2: f64 = counts
            .iter()
            .map(|&c| (c as f64 - expected).powi(2) / expected)
            .sum();
        assert!(
            chi2 < CHI2_CRIT_31_1PCT,
            "rotation {rotation}: chi² = {chi2}"
        );
    }
}

#[test]
fn expected_crossings_match_simulation_at_n_1000() {
    // Exact Eq.-level expectation vs the empirical mean crossing count,
    // n = 1000, d = 0.5, 50 seeds.
    let config = ExperimentConfig {
        n: 1000,
        d: 0.5,
        trials: 50,
        master_seed: 0xB007,
        mode: Mode::DrawingRatio,
    };
    let summary = run_drawing_ratio(&config).unwrap();
    // The ratio summary already compares against the exact finite-n target.
    assert!(
        summary.z_score.abs() <= 3.0,
        "ratio z = {}, mean = {}, target = {}",
        summary.z_score,
        summary.mean,
        summary.analytic_target
    );
    // Also compare the raw crossing means.
    let mean_cr = summary
        .per_trial
        .iter()
        .map(|t| match t {
            geocross::montecarlo::TrialData::Report(r) => r.cr as f64,
            _ => unreachable!(),
        })
        .sum::<f64>()
        / summary.used_trials as f64;
    let expected = geocross::analytic::expected_crossings(&geocross::analytic::AnalyticParams {
        d: 0.5,
        n: 1000,
    })
    .unwrap();
    let values: Vec<f64> = summary
        .per_trial
        .iter()
        .map(|t| match t {
            geocross::montecarlo::TrialData::Report(r) => r.cr as f64,
            _ => unreachable!(),
        })
        .collect();
    let std = (values.iter().map(|v| (v - mean_cr).powi(2)).sum::<f64>() / (values.len() - 1) as f64)
        .sqrt();
    let se = std / (values.len() as f64).sqrt();
    assert!(
        (mean_cr - expected).abs() <= 3.0 * se,
        "mean cr {mean_cr} vs expected {expected} (se {se})"
    );
}

#[test]
fn concentration_shrinks_for_edge_counts() {
    // Edge-count spread at n = 1000 vs 2000, d = 0.3.
    let config = ExperimentConfig {
        n: 1000,
        d: 0.3,
        trials: 30,
        master_seed: 0xB008,
        mode: Mode::EdgeCount,
    };
    let probe = run_concentration_probe(&config).unwrap();
    assert!(probe.edge_cv_shrinks, "edge CV {:?}", probe.edge_cv);
    assert!(probe.crossing_cv.is_none());
}

#[test]
fn concentration_shrinks_for_complete_graph_crossings() {
    // Crossing-count spread at n = 40 vs 80, d = π.
    let config = ExperimentConfig {
        n: 40,
        d: PI,
        trials: 30,
        master_seed: 0xB009,
        mode: Mode::CompleteGraph,
    };
    let probe = run_concentration_probe(&config).unwrap();
    assert_eq!(probe.crossing_cv_shrinks, Some(true), "CV {:?}", probe.crossing_cv);
    assert!(probe.edge_cv[0] == 0.0 && probe.edge_cv[1] == 0.0);
}

#[test]
fn summaries_are_pure_functions_of_config() {
    let config = ExperimentConfig {
        n: 50,
        d: 1.2,
        trials: 30,
        master_seed: 0xB00A,
        mode: Mode::DrawingRatio,
    };
    let a = run_drawing_ratio(&config).unwrap();
    let b = run_drawing_ratio(&config).unwrap();
    assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
}
