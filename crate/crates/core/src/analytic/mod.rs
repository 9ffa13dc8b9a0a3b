//! Closed-form expectations for the random geodesic drawing model, their
//! quadrature cross-checks, and the normalized crossing ratio `g(d)`.
//!
//! The model: `n` vertices uniform on the unit sphere, an edge (drawn as the
//! minor great-circle arc) whenever two vertices are within spherical
//! distance `d`. The quantities here are exact in expectation at finite `n`:
//!
//! - pairwise arc-length density `½ sin α`,
//! - conditional crossing probability `α/(4π)` given one arc length,
//! - two-fixed-great-circles crossing probability `αβ/(2π²)`,
//! - joint probability `(sin d - d cos d)²/(8π²)` that two independent
//!   pairs both form edges and their arcs cross,
//! - expected crossings, cap area, expected edges,
//! - the ratio `g(d) = (1/π²)(sin d - d cos d)²/(1 - cos d)³`, increasing on
//!   `(0, π)` with limit `8/(9π²)` as `d → 0⁺`.
//!
//! Near zero the numerator loses all significant digits to cancellation, so
//! `sin d - d cos d` and `1 - cos d` switch to truncated Taylor series below
//! `d = 0.1`.

pub mod quadrature;

use std::f64::consts::PI;

use thiserror::Error;

/// Inputs shared by the expectation formulas.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AnalyticParams {
    /// Distance threshold in radians, in `(0, π]`.
    pub d: f64,
    /// Vertex count.
    pub n: u64,
}

/// An argument fell outside a formula's domain.
#[derive(Debug, Error, Clone, Copy, PartialEq)]
#[error("{name} = {value} outside domain {domain}")]
pub struct DomainError {
    pub name: &'static str,
    pub value: f64,
    pub domain: &'static str,
}

/// Upper limit of the ratio function as `d → 0⁺`: `8/(9π²) = 0.0900632…`.
pub const MIDRANGE_UPPER: f64 = 8.0 / (9.0 * PI * PI);

/// Documented reference constants for the crossing-ratio landscape.
///
/// `moon_complete_constant`: the complete-graph drawing on the sphere has
/// expected crossings `(1/64 + o(1))·n⁴`, matching the conjectured
/// asymptotics of `cr(Kₙ)`.
///
/// `crossing_lemma_lower`: the Crossing Lemma in its standard orientation
/// states `κ(n,e) ≥ e³/(64 n²)` for `e ≥ 4n`; normalized as `κ·n²/e³` the
/// lower constant is `1/64`. `ackerman_lower = 1/29` is the best known
/// improvement (at somewhat larger `e`). Both are documentation values; no
/// lower-bound machinery lives in this crate.
#[derive(Clone, Copy, Debug)]
pub struct ReferenceConstants {
    pub midrange_upper: f64,
    pub midrange_upper_decimal: f64,
    pub moon_complete_constant: f64,
    pub crossing_lemma_lower: f64,
    pub ackerman_lower: f64,
}

impl ReferenceConstants {
    pub const fn standard() -> Self {
        Self {
            midrange_upper: MIDRANGE_UPPER,
            midrange_upper_decimal: 0.0900633,
            moon_complete_constant: 1.0 / 64.0,
            crossing_lemma_lower: 1.0 / 64.0,
            ackerman_lower: 1.0 / 29.0,
        }
    }
}

impl Default for ReferenceConstants {
    fn default() -> Self {
        Self::standard()
    }
}

/// Density of the minor-arc length between two uniform points: `½ sin α`
/// on `(0, π)`.
pub fn arc_length_density(alpha: f64) -> Result<f64, DomainError> {
    if !(alpha > 0.0 && alpha < PI) {
        return Err(DomainError {
            name: "alpha",
            value: alpha,
            domain: "(0, π)",
        });
    }
    Ok(alpha.sin() / 2.0)
}

/// Probability that an independent uniform arc crosses a fixed arc of
/// length `alpha`: `α/(4π)`.
pub fn conditional_cross_probability(alpha: f64) -> Result<f64, DomainError> {
    if !(alpha > 0.0 && alpha <= PI) {
        return Err(DomainError {
            name: "alpha",
            value: alpha,
            domain: "(0, π]",
        });
    }
    Ok(alpha / (4.0 * PI))
}

/// Probability that two independent uniform arcs cross: `∫ α/(4π)·½ sin α dα
/// = 1/8`, returned in closed form after checking the quadrature route
/// agrees to 1e-12.
pub fn unconditional_cross_probability() -> f64 {
    let numeric = quadrature::integrate(
        |alpha| alpha / (4.0 * PI) * (alpha.sin() / 2.0),
        0.0,
        PI,
        1e-13,
    );
    assert!(
        (numeric - 0.125).abs() < 1e-12,
        "quadrature disagrees with closed form: {numeric}"
    );
    0.125
}

/// Crossing probability for arcs of lengths `alpha`, `beta` placed uniformly
/// on two fixed distinct great circles: `2·(α/2π)·(β/2π)` (the factor 2
/// picks which of the two circle intersection points carries the crossing).
pub fn fixed_circles_cross_probability(alpha: f64, beta: f64) -> Result<f64, DomainError> {
    for (name, v) in [("alpha", alpha), ("beta", beta)] {
        if !(v > 0.0 && v < PI) {
            return Err(DomainError {
                name,
                value: v,
                domain: "(0, π)",
            });
        }
    }
    Ok(alpha * beta / (2.0 * PI * PI))
}

/// `sin d - d·cos d`, switching to its Taylor series
/// `d³/3 - d⁵/30 + d⁷/840 - d⁹/45360` below the 0.1 switchover, where the
/// naive form cancels catastrophically.
pub fn sin_d_minus_d_cos_d(d: f64) -> f64 {
    if d.abs() < SERIES_SWITCHOVER {
        let d2 = d * d;
        let d3 = d2 * d;
        d3 * (1.0 / 3.0 + d2 * (-1.0 / 30.0 + d2 * (1.0 / 840.0 + d2 * (-1.0 / 45360.0))))
    } else {
        d.sin() - d * d.cos()
    }
}

/// `1 - cos d`, series `d²/2 - d⁴/24 + d⁶/720 - d⁸/40320` below 0.1.
pub fn one_minus_cos(d: f64) -> f64 {
    if d.abs() < SERIES_SWITCHOVER {
        let d2 = d * d;
        d2 * (1.0 / 2.0 + d2 * (-1.0 / 24.0 + d2 * (1.0 / 720.0 + d2 * (-1.0 / 40320.0))))
    } else {
        1.0 - d.cos()
    }
}

/// Switchover point between naive and series evaluation. At 0.1 the series
/// truncation error is below 1e-14 relative while the naive forms still
/// carry ~13 good digits, so both routes can be cross-checked there.
pub const SERIES_SWITCHOVER: f64 = 0.1;

/// Probability that two independent uniform point pairs both lie within
/// distance `d` and their arcs cross: `(sin d - d cos d)²/(8π²)`.
pub fn joint_cross_probability(d: f64) -> Result<f64, DomainError> {
    if !(d > 0.0 && d <= PI) {
        return Err(DomainError {
            name: "d",
            value: d,
            domain: "(0, π]",
        });
    }
    let s = sin_d_minus_d_cos_d(d);
    Ok((s * s) / (8.0 * PI * PI))
}

/// The same probability by brute double quadrature of the integrand
/// `2·(α/2π)(β/2π)·¼ sin α sin β` over `[0,d]²` — the independent oracle for
/// [`joint_cross_probability`].
pub fn joint_cross_probability_quadrature(d: f64) -> f64 {
    quadrature::integrate_square(
        |alpha, beta| {
            2.0 * (alpha / (2.0 * PI)) * (beta / (2.0 * PI))
                * (alpha.sin() / 2.0)
                * (beta.sin() / 2.0)
        },
        d,
        quadrature::DEFAULT_TOL,
    )
}

/// Expected number of crossings of the threshold drawing:
/// `joint(d) · ½·C(n,2)·C(n-2,2)`. Zero for `n < 4`.
pub fn expected_crossings(params: &AnalyticParams) -> Result<f64, DomainError> {
    if params.n < 4 {
        return Ok(0.0);
    }
    let joint = joint_cross_probability(params.d)?;
    Ok(joint * 0.5 * choose2(params.n) * choose2(params.n - 2))
}

/// Area of a spherical cap of radius `d` on the unit sphere: `2π(1 - cos d)`.
pub fn cap_area(d: f64) -> f64 {
    debug_assert!((0.0..=PI).contains(&d));
    2.0 * PI * one_minus_cos(d)
}

/// Expected number of edges: `n(n-1)(1 - cos d)/4` (each vertex expects
/// `(n-1)·cap_area/4π` neighbors).
pub fn expected_edges(params: &AnalyticParams) -> f64 {
    let n = params.n as f64;
    n * (n - 1.0) * one_minus_cos(params.d) / 4.0
}

/// The normalized crossing ratio
/// `g(d) = (1/π²)·(sin d - d cos d)²/(1 - cos d)³`.
///
/// Cancellation-safe below the series switchover; `g` increases on `(0, π)`
/// from `8/(9π²)` to `1/8`.
pub fn ratio_function(d: f64) -> Result<f64, DomainError> {
    if !(d > 0.0 && d <= PI) {
        return Err(DomainError {
            name: "d",
            value: d,
            domain: "(0, π]",
        });
    }
    let s = sin_d_minus_d_cos_d(d);
    let omc = one_minus_cos(d);
    Ok((s * s) / (PI * PI * (omc * omc * omc)))
}

/// `8/(9π²)`, the infimum of [`ratio_function`], checked at compile time
/// against its published decimal bound `0.0900633`.
pub fn midrange_upper_limit() -> f64 {
    const { assert!(MIDRANGE_UPPER < 0.0900633) }
    MIDRANGE_UPPER
}

/// True when [`ratio_function`] is strictly increasing across a uniform
/// grid of `grid_points` values on `[10⁻³, π]`.
pub fn check_monotonicity(grid_points: usize) -> bool {
    assert!(grid_points >= 2);
    let lo = 1e-3;
    let hi = PI;
    let mut prev = ratio_function(lo).expect("in domain");
    for i in 1..grid_points {
        let d = lo + (hi - lo) * i as f64 / (grid_points - 1) as f64;
        let g = ratio_function(d).expect("in domain");
        if g <= prev {
            return false;
        }
        prev = g;
    }
    true
}

/// `C(n, 2)` as an f64 (exact for all desk-scale `n`).
fn choose2(n: u64) -> f64 {
    (n as f64) * ((n - 1) as f64) / 2.0
}

/// `C(n, 2)` in exact integer arithmetic.
pub fn binom2(n: u64) -> u64 {
    n * (n - 1) / 2
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn density_fixed_values() {
        assert_eq!(arc_length_density(PI / 2.0).unwrap(), 0.5);
        assert!((arc_length_density(PI / 6.0).unwrap() - 0.25).abs() < 1e-15);
        assert!(arc_length_density(0.0).is_err());
        assert!(arc_length_density(PI).is_err());
    }

    #[test]
    fn density_normalizes_to_one() {
        // Quadrature touches the interval endpoints, where the density's
        // open domain ends; the integrand extends it by continuity there.
        let total = quadrature::integrate(
            |a| arc_length_density(a).unwrap_or(a.sin() / 2.0),
            0.0,
            PI,
            1e-13,
        );
        assert!((total - 1.0).abs() < 1e-12);
    }

    #[test]
    fn conditional_probability_fixed_values() {
        assert_eq!(conditional_cross_probability(PI).unwrap(), 0.25);
        assert!(conditional_cross_probability(1e-12).unwrap() < 1e-12);
        assert!(conditional_cross_probability(0.0).is_err());
        assert!(conditional_cross_probability(4.0).is_err());
    }

    #[test]
    fn unconditional_probability_is_one_eighth() {
        assert_eq!(unconditional_cross_probability(), 0.125);
    }

    #[test]
    fn fixed_circles_fixed_values() {
        // α = β = π/2 → 2·(1/4)·(1/4)·(1/2)… = (π/2)²/(2π²) = 1/8.
        let p = fixed_circles_cross_probability(PI / 2.0, PI / 2.0).unwrap();
        assert!((p - 0.125).abs() < 1e-15);
        // α → π, β arbitrary → β/(2π).
        let beta = 0.7;
        let p = fixed_circles_cross_probability(PI - 1e-15, beta).unwrap();
        assert!((p - beta / (2.0 * PI)).abs() < 1e-14);
        assert!(fixed_circles_cross_probability(0.0, 1.0).is_err());
        assert!(fixed_circles_cross_probability(1.0, PI).is_err());
    }

    #[test]
    fn joint_probability_at_pi_is_exactly_one_eighth() {
        // sin π - π cos π evaluates to π exactly in f64 (the 1.2e-16 sine
        // residue is below half an ulp of π), so the ratio collapses to 1/8.
        assert_eq!(joint_cross_probability(PI).unwrap(), 0.125);
    }

    #[test]
    fn joint_probability_at_half_pi() {
        // (1 - 0)²/(8π²) = 1/(8π²) = 0.012665147955292221…
        let p = joint_cross_probability(PI / 2.0).unwrap();
        assert!((p - 0.012_665_147_955_292_22).abs() < 1e-15);
        assert!((p - 1.0 / (8.0 * PI * PI)).abs() < 1e-16);
    }

    #[test]
    fn joint_probability_series_matches_naive_at_tiny_d() {
        let d = 1e-4;
        let series = sin_d_minus_d_cos_d(d);
        let naive = d.sin() - d * d.cos();
        // Naive still has ~8 good digits here; they must agree to 6.
        assert!(((series - naive) / series).abs() < 1e-6);
        // And the leading term dominates.
        let lead = (d * d * d / 3.0).powi(2) / (8.0 * PI * PI);
        let p = joint_cross_probability(d).unwrap();
        assert!(((p - lead) / lead).abs() < 1e-7);
    }

    #[test]
    fn joint_probability_rejects_out_of_domain() {
        assert!(joint_cross_probability(0.0).is_err());
        assert!(joint_cross_probability(PI + 0.1).is_err());
        assert!(joint_cross_probability(-1.0).is_err());
    }

    #[test]
    fn expected_crossings_fixed_values() {
        // n = 5, d = π: (1/8)·(1/2)·10·3 = 1.875.
        let v = expected_crossings(&AnalyticParams { d: PI, n: 5 }).unwrap();
        assert_eq!(v, 1.875);
        // n = 4, d = π: three pairings, each crossing w.p. 1/8.
        let v = expected_crossings(&AnalyticParams { d: PI, n: 4 }).unwrap();
        assert_eq!(v, 0.375);
        // n < 4 has no disjoint pairs at all.
        let v = expected_crossings(&AnalyticParams { d: PI, n: 3 }).unwrap();
        assert_eq!(v, 0.0);
    }

    #[test]
    fn moon_complete_graph_consistency_is_exact() {
        // expected_crossings(n, π)·16/(C(n,2)·C(n-2,2)) = 1 exactly: every
        // factor is a power of two times an exactly representable integer.
        for n in [4u64, 5, 6, 10, 60, 200, 1000] {
            let cr = expected_crossings(&AnalyticParams { d: PI, n }).unwrap();
            let c = choose2(n) * choose2(n - 2);
            assert_eq!(cr * 16.0 / c, 1.0, "n = {n}");
        }
    }

    #[test]
    fn cap_area_fixed_values() {
        assert_eq!(cap_area(PI), 4.0 * PI);
        // cos(π/2) is 6.1e-17 in f64, one ulp shy of an exact hemisphere.
        assert!((cap_area(PI / 2.0) - 2.0 * PI).abs() < 1e-15);
        assert_eq!(cap_area(0.0), 0.0);
    }

    #[test]
    fn expected_edges_fixed_values() {
        assert_eq!(expected_edges(&AnalyticParams { d: PI, n: 100 }), 4950.0);
        let quarter = expected_edges(&AnalyticParams { d: PI / 2.0, n: 100 });
        assert!((quarter - 2475.0).abs() < 1e-11);
    }

    #[test]
    fn ratio_function_at_pi_is_exactly_one_eighth() {
        assert_eq!(ratio_function(PI).unwrap(), 0.125);
    }

    #[test]
    fn ratio_function_near_zero_approaches_limit() {
        let g = ratio_function(1e-3).unwrap();
        assert!((g - MIDRANGE_UPPER).abs() < 1e-6);
        // The approach is from above: g(d) = lim·(1 + d²/20 + …).
        assert!(g > MIDRANGE_UPPER);
        let g2 = ratio_function(1e-2).unwrap();
        assert!(g2 > MIDRANGE_UPPER);
        assert!((g2 - MIDRANGE_UPPER) < 1e-4);
    }

    #[test]
    fn ratio_function_regression_at_one() {
        // Pinned from an independent 50-digit evaluation of
        // (1/π²)(sin 1 - cos 1)²/(1 - cos 1)³.
        let g = ratio_function(1.0).unwrap();
        assert!((g - 0.094_602_559_509_801_73).abs() < 1e-14);
    }

    #[test]
    fn series_and_naive_agree_at_switchover() {
        let d = SERIES_SWITCHOVER;
        let s_series = {
            let d2 = d * d;
            let d3 = d2 * d;
            d3 * (1.0 / 3.0 + d2 * (-1.0 / 30.0 + d2 * (1.0 / 840.0 + d2 * (-1.0 / 45360.0))))
        };
        let s_naive = d.sin() - d * d.cos();
        assert!(((s_series - s_naive) / s_naive).abs() < 1e-10);

        let c_series = {
            let d2 = d * d;
            d2 * (1.0 / 2.0 + d2 * (-1.0 / 24.0 + d2 * (1.0 / 720.0 + d2 * (-1.0 / 40320.0))))
        };
        let c_naive = 1.0 - d.cos();
        assert!(((c_series - c_naive) / c_naive).abs() < 1e-10);

        // The assembled ratio, evaluated through both routes.
        let g_series = (s_series * s_series) / (PI * PI * c_series.powi(3));
        let g_naive = (s_naive * s_naive) / (PI * PI * c_naive.powi(3));
        assert!(((g_series - g_naive) / g_naive).abs() < 1e-10);
    }

    #[test]
    fn midrange_constant_below_decimal_bound() {
        let v = midrange_upper_limit();
        assert!(v < 0.0900633);
        assert!((v - 0.090_063_274_348_744_68).abs() < 1e-15);
    }

    #[test]
    fn richardson_extrapolated_limit() {
        // g(h) = L + c·h² + O(h⁴); eliminate the h² term from h = 10⁻³, 10⁻⁴.
        let g3 = ratio_function(1e-3).unwrap();
        let g4 = ratio_function(1e-4).unwrap();
        let r = (1e-4f64 / 1e-3).powi(2);
        let limit = (g4 - r * g3) / (1.0 - r);
        assert!((limit - MIDRANGE_UPPER).abs() < 1e-8);
    }

    #[test]
    fn monotone_on_grid() {
        assert!(check_monotonicity(10_000));
        // Endpoint ordering: g(10⁻³) ≈ 8/(9π²) < g(π) = 1/8.
        assert!(ratio_function(1e-3).unwrap() < ratio_function(PI).unwrap());
    }

    #[test]
    fn finite_difference_slope_positive() {
        let mut d = 0.011;
        let h = 1e-5;
        let mut k = 0u32;
        while d < PI - 0.011 {
            let slope = (ratio_function(d + h).unwrap() - ratio_function(d - h).unwrap()) / (2.0 * h);
            assert!(slope > 0.0, "slope at d = {d}");
            d += (PI - 0.022) / 100.0;
            k += 1;
        }
        assert!(k >= 100);
    }

    #[test]
    fn quadrature_matches_closed_form_joint() {
        for i in 0..50 {
            let d = 0.05 + (PI - 0.05) * (i as f64 + 0.5) / 50.0;
            let closed = joint_cross_probability(d).unwrap();
            let numeric = joint_cross_probability_quadrature(d);
            assert!(
                (closed - numeric).abs() < 1e-8,
                "d = {d}: closed {closed} vs quadrature {numeric}"
            );
        }
    }

    #[test]
    fn dimensional_sanity_at_large_n() {
        // ratio_function(d) = E[cr]·n²/E[e]³·(1 + O(1/n)); at n = 10⁶ the
        // finite-n correction is (n-2)(n-3)/(n-1)² - 1 ≈ -3/n.
        let n = 1_000_000u64;
        for d in [0.3, 1.0, 2.0] {
            let p = AnalyticParams { d, n };
            let finite =
                expected_crossings(&p).unwrap() * (n as f64).powi(2) / expected_edges(&p).powi(3);
            let asymptotic = ratio_function(d).unwrap();
            assert!(
                ((finite - asymptotic) / asymptotic).abs() < 10.0 / n as f64,
                "d = {d}"
            );
        }
    }

    #[test]
    fn reference_constants_are_consistent() {
        let rc = ReferenceConstants::standard();
        assert!(rc.midrange_upper < rc.midrange_upper_decimal);
        assert!((rc.midrange_upper - rc.midrange_upper_decimal).abs() < 1e-7);
        assert_eq!(rc.moon_complete_constant, 0.015625);
        assert_eq!(rc.crossing_lemma_lower, 1.0 / 64.0);
        assert!((rc.ackerman_lower - 0.0344).abs() < 1e-3);
        // g(π) = 1/8 matches the complete-graph constant: (1/64)/(1/8) · … =
        // moon_complete_constant = g(π)/8.
        assert_eq!(rc.moon_complete_constant, 0.125 / 8.0);
    }
}
