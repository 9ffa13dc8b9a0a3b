//! Composite adaptive Simpson quadrature for smooth integrands.
//!
//! Interval-halving with the usual 1/15 Richardson error estimate; the
//! integrands used here (polynomial × trigonometric) are analytic, so the
//! scheme converges fast and an absolute tolerance of 1e-10 is routine.

/// Absolute tolerance used by the oracle integrations.
pub const DEFAULT_TOL: f64 = 1e-10;

const MAX_DEPTH: u32 = 40;

/// Adaptive Simpson integral of `f` over `[a, b]` to absolute tolerance `tol`.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> f64 {
    if a == b {
        return 0.0;
    }
    let fa = f(a);
    let fb = f(b);
    let m = 0.5 * (a + b);
    let fm = f(m);
    let whole = simpson(a, b, fa, fm, fb);
    adaptive(&f, a, b, fa, fm, fb, whole, tol, MAX_DEPTH)
}

/// Iterated double integral of `f(x, y)` over `[0, d] × [0, d]`.
///
/// The outer integral is adaptive in `y` with an inner adaptive integral in
/// `x` at every evaluation point; the inner tolerance is tightened so the
/// combined error stays near `tol`.
pub fn integrate_square<F: Fn(f64, f64) -> f64>(f: F, d: f64, tol: f64) -> f64 {
    let inner_tol = tol / (10.0 * d.max(1.0));
    integrate(|y| integrate(|x| f(x, y), 0.0, d, inner_tol), 0.0, d, tol)
}

#[inline]
fn simpson(a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

#[allow(clippy::too_many_arguments)]
fn adaptive<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> f64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = simpson(a, m, fa, flm, fm);
    let right = simpson(m, b, fm, frm, fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        return left + right + delta / 15.0;
    }
    adaptive(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
        + adaptive(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn integrates_sin_over_period() {
        let v = integrate(f64::sin, 0.0, PI, 1e-12);
        assert!((v - 2.0).abs() < 1e-11);
    }

    #[test]
    fn integrates_polynomial_exactly_enough() {
        let v = integrate(|x| 3.0 * x * x, 0.0, 2.0, 1e-12);
        assert!((v - 8.0).abs() < 1e-11);
    }

    #[test]
    fn normalizes_arc_length_density() {
        let v = integrate(|a| a.sin() / 2.0, 0.0, PI, 1e-13);
        assert!((v - 1.0).abs() < 1e-12);
    }

    #[test]
    fn square_integral_of_separable_product() {
        // ∫∫ x·y over [0,1]² = 1/4.
        let v = integrate_square(|x, y| x * y, 1.0, 1e-11);
        assert!((v - 0.25).abs() < 1e-10);
    }
}
