//! Acceptance suite: the project's exit criteria, one test per criterion,
//! each printing a `ACCEPTANCE n PASS` line with the measured values
//! (visible under `cargo test --test acceptance -- --nocapture`).

use std::f64::consts::PI;

use geocross::analytic::{
    binom2, check_monotonicity, expected_crossings, expected_edges, joint_cross_probability,
    joint_cross_probability_quadrature, ratio_function, AnalyticParams, MIDRANGE_UPPER,
};
use geocross::drawing::{
    count_crossings, count_planar_crossings, project_drawing_gnomonic, project_with_pole_retry,
    replicate_copies, SphericalDrawing,
};
use geocross::geom::{great_circle_distance, UnitVector};
use geocross::montecarlo::{
    run_complete_graph, run_drawing_ratio, run_edge_count, run_pair_probability, ExperimentConfig,
    Mode,
};
use geocross::sampling::{pairwise_angle_density_test, SeededStream};

fn pass(id: u32, detail: String) {
    println!("ACCEPTANCE {id:2} PASS: {detail}");
}

/// Criterion 1: the ratio function reaches its 8/(9π²) limit — value at
/// d = 10⁻³ within 1e-6, and the constant sits below 0.0900633.
#[test]
fn acceptance_01_limit_constant() {
    let limit = geocross::analytic::midrange_upper_limit();
    let g = ratio_function(1e-3).unwrap();
    let gap = (g - limit).abs();
    assert!(gap < 1e-6, "gap {gap}");
    assert!(limit < 0.0900633);
    pass(
        1,
        format!("g(1e-3) = {g:.12}, limit = {MIDRANGE_UPPER:.12}, gap = {gap:.3e} < 1e-6"),
    );
}

/// Criterion 2: Moon's 1/8 by simulation — 10⁶ pair trials at d = π land
/// within the binomial 3σ band of 0.125.
#[test]
fn acceptance_02_moon_one_eighth() {
    let trials = 1_000_000u64;
    let config = ExperimentConfig {
        n: 4,
        d: PI,
        trials,
        master_seed: 20_250_817,
        mode: Mode::PairProbability,
    };
    let summary = run_pair_probability(&config).unwrap();
    let band = 3.0 * (0.125f64 * 0.875 / trials as f64).sqrt();
    let err = (summary.mean - 0.125).abs();
    assert!(err <= band, "estimate {} (band {band})", summary.mean);
    pass(
        2,
        format!("estimate = {:.6}, |err| = {err:.2e} ≤ {band:.2e}", summary.mean),
    );
}

/// Criterion 3: quadrature vs closed form for the joint probability —
/// 50 thresholds across (0.05, π], absolute agreement 1e-8.
#[test]
fn acceptance_03_quadrature_agreement() {
    let mut worst = 0.0f64;
    for i in 0..50 {
        let d = 0.05 + (PI - 0.05) * (i as f64 + 0.5) / 50.0;
        let closed = joint_cross_probability(d).unwrap();
        let numeric = joint_cross_probability_quadrature(d);
        let err = (closed - numeric).abs();
        worst = worst.max(err);
        assert!(err < 1e-8, "d = {d}: |Δ| = {err:.3e}");
    }
    pass(3, format!("50 thresholds, worst |Δ| = {worst:.3e} < 1e-8"));
}

/// Criterion 4: expected edges — n = 1000, d = 0.5, 50 seeds; mean within
/// 3 standard errors of n(n-1)(1-cos d)/4.
#[test]
fn acceptance_04_expected_edges() {
    let config = ExperimentConfig {
        n: 1000,
        d: 0.5,
        trials: 50,
        master_seed: 40_404,
        mode: Mode::EdgeCount,
    };
    let summary = run_edge_count(&config).unwrap();
    let exact = 1000.0 * 999.0 * (1.0 - 0.5f64.cos()) / 4.0;
    assert_eq!(summary.analytic_target, exact);
    assert!(
        summary.z_score.abs() <= 3.0,
        "mean {} vs exact {exact}, z = {}",
        summary.mean,
        summary.z_score
    );
    pass(
        4,
        format!(
            "mean edges = {:.2}, exact = {exact:.2}, z = {:+.2}",
            summary.mean, summary.z_score
        ),
    );
}

/// Criterion 5: Moon's complete-graph expectation — n = 60, d = π, 50
/// seeds; mean crossing count within 3 standard errors of
/// (1/16)·C(60,2)·C(58,2).
#[test]
fn acceptance_05_moon_complete_graph() {
    let config = ExperimentConfig {
        n: 60,
        d: PI,
        trials: 50,
        master_seed: 50_505,
        mode: Mode::CompleteGraph,
    };
    let summary = run_complete_graph(&config).unwrap();
    let exact = binom2(60) as f64 * binom2(58) as f64 / 16.0;
    assert_eq!(exact, 182_863.125);
    assert_eq!(summary.analytic_target, exact);
    assert!(
        summary.z_score.abs() <= 3.0,
        "mean {} vs exact {exact}, z = {}",
        summary.mean,
        summary.z_score
    );
    pass(
        5,
        format!(
            "mean crossings = {:.1}, exact = {exact}, z = {:+.2}",
            summary.mean, summary.z_score
        ),
    );
}

/// Criterion 6: headline ratio — n = 500, d chosen so expected edges are
/// 15n, 20 seeds; mean of cr·n²/e³ within 10% of g(d) and within 3
/// standard errors of the exact finite-n target.
#[test]
fn acceptance_06_headline_ratio() {
    let n = 500u64;
    // expected_edges = n(n-1)(1-cos d)/4 = 15n  ⇔  cos d = 1 - 60/(n-1).
    let d = (1.0 - 60.0 / (n as f64 - 1.0)).acos();
    let params = AnalyticParams { d, n };
    assert!((expected_edges(&params) - 15.0 * n as f64).abs() < 1e-9);

    let config = ExperimentConfig {
        n,
        d,
        trials: 20,
        master_seed: 60_606,
        mode: Mode::DrawingRatio,
    };
    let summary = run_drawing_ratio(&config).unwrap();
    let g = ratio_function(d).unwrap();
    let rel_gap = (summary.mean - g).abs() / g;
    assert!(rel_gap <= 0.10, "mean {} vs g(d) {g}", summary.mean);
    let exact_target = expected_crossings(&params).unwrap() * (n as f64).powi(2)
        / expected_edges(&params).powi(3);
    assert_eq!(summary.analytic_target, exact_target);
    assert!(
        summary.z_score.abs() <= 3.0,
        "mean {} vs exact target {exact_target}, z = {}",
        summary.mean,
        summary.z_score
    );
    pass(
        6,
        format!(
            "d = {d:.4}, mean ratio = {:.5}, g(d) = {g:.5} (gap {:.1}%), exact target z = {:+.2}",
            summary.mean,
            100.0 * rel_gap,
            summary.z_score
        ),
    );
}

/// Criterion 7: monotonicity of the ratio function across 10⁴ grid points.
#[test]
fn acceptance_07_monotonicity() {
    assert!(check_monotonicity(10_000));
    pass(7, "g strictly increasing on 10⁴-point grid over [1e-3, π]".into());
}

/// Criterion 8: projection oracles — stereographic circular-arc counts
/// equal the spherical counts on 100 random drawings, and gnomonic
/// straight-segment counts equal them on 100 hemisphere-confined drawings.
/// Integer counts, zero tolerance, degeneracy counters zero.
#[test]
fn acceptance_08_projection_oracles() {
    let mut total_crossings = 0u64;
    for seed in 0..100u64 {
        let mut stream = SeededStream::new(80_801 + seed, 0);
        let drawing = geocross::drawing::build_threshold_drawing(&mut stream, 50, 0.6);
        let spherical = count_crossings(&drawing);
        let (planar, _pole) = project_with_pole_retry(&drawing).unwrap();
        let flat = count_planar_crossings(&planar);
        assert_eq!(spherical.degeneracies, 0, "seed {seed}");
        assert_eq!(flat.tangencies, 0, "seed {seed}");
        assert_eq!(flat.crossings, spherical.cr, "seed {seed}");
        total_crossings += spherical.cr;
    }

    let pole = UnitVector::Z;
    let mut hemi_crossings = 0u64;
    for seed in 0..100u64 {
        let mut stream = SeededStream::new(80_901 + seed, 0);
        let drawing = cap_confined_drawing(&mut stream, 50, 0.3, pole, 0.7);
        let spherical = count_crossings(&drawing);
        let flat = count_planar_crossings(&project_drawing_gnomonic(&drawing, pole).unwrap());
        assert_eq!(spherical.degeneracies, 0, "seed {seed}");
        assert_eq!(flat.tangencies, 0, "seed {seed}");
        assert_eq!(flat.crossings, spherical.cr, "seed {seed}");
        hemi_crossings += spherical.cr;
    }
    pass(
        8,
        format!(
            "stereographic: 100/100 exact ({total_crossings} crossings); \
             gnomonic: 100/100 exact ({hemi_crossings} crossings); degeneracies 0"
        ),
    );
}

/// Criterion 9: copies identity — cr'·N²/e'³ = cr·n²/e³ exactly for
/// k ∈ {1, 2, 7}.
#[test]
fn acceptance_09_copies_identity() {
    let mut stream = SeededStream::new(90_909, 0);
    let drawing = geocross::drawing::build_threshold_drawing(&mut stream, 50, 0.6);
    let base = count_crossings(&drawing);
    assert!(base.cr > 0, "fixture drawing should have crossings");
    for k in [1u64, 2, 7] {
        let (_, combined) = replicate_copies(&drawing, k as usize).unwrap();
        // Exact integer cross-multiplication, independent of the internal check.
        let lhs = combined.cr as u128 * (combined.n as u128).pow(2) * (base.e as u128).pow(3);
        let rhs = base.cr as u128 * (base.n as u128).pow(2) * (combined.e as u128).pow(3);
        assert_eq!(lhs, rhs, "k = {k}");
    }
    pass(
        9,
        format!(
            "cr = {}, e = {}, n = {}: identity exact for k ∈ {{1, 2, 7}}",
            base.cr, base.e, base.n
        ),
    );
}

/// Criterion 10: pairwise arc lengths pass the KS test against
/// (1 - cos α)/2 at the 1% level on 10⁶ pairs.
#[test]
fn acceptance_10_arc_length_distribution() {
    let samples = 1_000_000usize;
    let mut stream = SeededStream::new(101_010, 0);
    let statistic = pairwise_angle_density_test(&mut stream, samples);
    let critical = 1.63 / (samples as f64).sqrt();
    assert!(statistic < critical, "KS {statistic} ≥ {critical}");
    pass(
        10,
        format!("KS = {statistic:.3e} < {critical:.3e} on 10⁶ pairs"),
    );
}

/// Rejection-sample a drawing with all vertices inside the cap of the given
/// angular radius.
fn cap_confined_drawing(
    stream: &mut SeededStream,
    n: usize,
    d: f64,
    center: UnitVector,
    cap: f64,
) -> SphericalDrawing {
    loop {
        let vertices: Vec<UnitVector> = (0..n)
            .map(|_| loop {
                let p = stream.sample_unit_vector();
                if great_circle_distance(p, center) < cap {
                    return p;
                }
            })
            .collect();
        if let Ok(drawing) = SphericalDrawing::from_vertices(vertices, d) {
            return drawing;
        }
    }
}
