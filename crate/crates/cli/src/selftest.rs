//! The `selftest` subcommand: oracle-equivalence and property checks that
//! can run on any install without cargo. One `ok`/`FAIL` line per check;
//! the caller turns any failure into exit code 1.

use std::f64::consts::PI;

use geocross::analytic::{
    check_monotonicity, joint_cross_probability, joint_cross_probability_quadrature,
    midrange_upper_limit, ratio_function, MIDRANGE_UPPER,
};
use geocross::drawing::{
    build_threshold_drawing, count_crossings, count_crossings_opts, count_planar_crossings,
    project_drawing_gnomonic, project_with_pole_retry, replicate_copies, PlanarArcDrawing,
    PlanarEdge, PlanarShape, SphericalDrawing,
};
use geocross::geom::{
    classify_arcs_cross, gnomonic_project, great_circle_distance, make_arc, Crossing, GeodesicArc,
    UnitVector,
};
use geocross::sampling::{pairwise_angle_density_test, SeededStream};

type Check = fn() -> Result<String, String>;

/// Run every check; returns true when all pass.
pub fn run_all() -> bool {
    let checks: Vec<(&str, Check)> = vec![
        ("limit-constant", check_limit_constant),
        ("monotonicity", check_monotone),
        ("quadrature-agreement", check_quadrature),
        ("predicate-symmetry", check_predicate_symmetry),
        ("rotation-invariance", check_rotation_invariance),
        ("gnomonic-predicate-oracle", check_gnomonic_predicate),
        ("prefilter-soundness", check_prefilter),
        ("stereographic-drawing-oracle", check_stereographic_drawings),
        ("gnomonic-drawing-oracle", check_gnomonic_drawings),
        ("copies-identity", check_copies),
        ("arc-length-distribution", check_ks),
    ];
    let mut all_ok = true;
    for (name, check) in checks {
        match check() {
            Ok(detail) => println!("ok   {name}: {detail}"),
            Err(detail) => {
                all_ok = false;
                println!("FAIL {name}: {detail}");
            }
        }
    }
    if all_ok {
        println!("selftest passed");
    } else {
        println!("selftest FAILED");
    }
    all_ok
}

fn ensure(cond: bool, msg: impl Fn() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn check_limit_constant() -> Result<String, String> {
    let limit = midrange_upper_limit();
    ensure(limit < 0.0900633, || format!("limit {limit} ≥ 0.0900633"))?;
    let g = ratio_function(1e-3).map_err(|e| e.to_string())?;
    let gap = (g - MIDRANGE_UPPER).abs();
    ensure(gap < 1e-6, || format!("g(1e-3) off by {gap}"))?;
    Ok(format!("8/(9π²) = {limit:.10}, g(1e-3) gap {gap:.2e}"))
}

fn check_monotone() -> Result<String, String> {
    ensure(check_monotonicity(10_000), || {
        "ratio function not strictly increasing".into()
    })?;
    Ok("strictly increasing on 10⁴ grid points".into())
}

fn check_quadrature() -> Result<String, String> {
    let mut worst = 0.0f64;
    for i in 0..50 {
        let d = 0.05 + (PI - 0.05) * (i as f64 + 0.5) / 50.0;
        let closed = joint_cross_probability(d).map_err(|e| e.to_string())?;
        let numeric = joint_cross_probability_quadrature(d);
        let err = (closed - numeric).abs();
        worst = worst.max(err);
        ensure(err < 1e-8, || format!("d = {d}: |Δ| = {err:.3e}"))?;
    }
    Ok(format!("50 thresholds, worst |Δ| = {worst:.2e}"))
}

fn random_arc(stream: &mut SeededStream) -> GeodesicArc {
    loop {
        let p = stream.sample_unit_vector();
        let q = stream.sample_unit_vector();
        if let Ok(arc) = make_arc(p, q) {
            return arc;
        }
    }
}

fn check_predicate_symmetry() -> Result<String, String> {
    let mut stream = SeededStream::new(0xC001, 0);
    for i in 0..100_000 {
        let e1 = random_arc(&mut stream);
        let e2 = random_arc(&mut stream);
        let ab = classify_arcs_cross(&e1, &e2);
        let ba = classify_arcs_cross(&e2, &e1);
        match (ab, ba) {
            (Ok(x), Ok(y)) if x == y => {}
            (Err(_), Err(_)) => {}
            other => return Err(format!("trial {i}: asymmetric {other:?}")),
        }
    }
    Ok("10⁵ random pairs symmetric".into())
}

fn check_rotation_invariance() -> Result<String, String> {
    let mut stream = SeededStream::new(0xC002, 0);
    for i in 0..100_000 {
        let e1 = random_arc(&mut stream);
        let e2 = random_arc(&mut stream);
        let rot = stream.random_rotation();
        let r1 = make_arc(rot.apply(e1.a()), rot.apply(e1.b())).map_err(|e| e.to_string())?;
        let r2 = make_arc(rot.apply(e2.a()), rot.apply(e2.b())).map_err(|e| e.to_string())?;
        match (classify_arcs_cross(&e1, &e2), classify_arcs_cross(&r1, &r2)) {
            (Ok(x), Ok(y)) if x == y => {}
            (Err(_), Err(_)) => {}
            (Ok(Crossing::Ambiguous), Ok(_)) | (Ok(_), Ok(Crossing::Ambiguous)) => {}
            other => return Err(format!("trial {i}: rotation changed outcome {other:?}")),
        }
    }
    Ok("10⁵ rotated pairs unchanged".into())
}

fn check_gnomonic_predicate() -> Result<String, String> {
    let pole = UnitVector::Z;
    let mut stream = SeededStream::new(0xC003, 0);
    let trials = 100_000u64;
    let mut band = 0u64;
    for i in 0..trials {
        let sample = |stream: &mut SeededStream| loop {
            let p = stream.sample_unit_vector();
            if p.dot(pole) > 0.05 {
                return p;
            }
        };
        let pts = [
            sample(&mut stream),
            sample(&mut stream),
            sample(&mut stream),
            sample(&mut stream),
        ];
        let (Ok(e1), Ok(e2)) = (make_arc(pts[0], pts[1]), make_arc(pts[2], pts[3])) else {
            band += 1;
            continue;
        };
        let spherical = match classify_arcs_cross(&e1, &e2) {
            Ok(Crossing::Proper) => true,
            Ok(Crossing::None) => false,
            _ => {
                band += 1;
                continue;
            }
        };
        let img: Vec<_> = pts
            .iter()
            .map(|&p| gnomonic_project(p, pole).expect("hemisphere"))
            .collect();
        let planar = PlanarArcDrawing {
            vertices: img.clone(),
            edges: vec![
                PlanarEdge {
                    i: 0,
                    j: 1,
                    shape: PlanarShape::Segment { a: img[0], b: img[1] },
                },
                PlanarEdge {
                    i: 2,
                    j: 3,
                    shape: PlanarShape::Segment { a: img[2], b: img[3] },
                },
            ],
        };
        let count = count_planar_crossings(&planar);
        if count.tangencies > 0 {
            band += 1;
            continue;
        }
        if (count.crossings == 1) != spherical {
            return Err(format!("trial {i}: sphere {spherical}, plane {count:?}"));
        }
    }
    let fraction = band as f64 / trials as f64;
    ensure(fraction < 1e-4, || format!("band fraction {fraction}"))?;
    Ok(format!("10⁵ trials agree, band fraction {fraction:.1e}"))
}

fn check_prefilter() -> Result<String, String> {
    for seed in 0..100u64 {
        let mut stream = SeededStream::new(0xC004, seed);
        let drawing = build_threshold_drawing(&mut stream, 20 + (seed % 30) as usize, 0.8);
        let with = count_crossings_opts(&drawing, true);
        let without = count_crossings_opts(&drawing, false);
        ensure(with == without, || format!("seed {seed}: {with:?} ≠ {without:?}"))?;
    }
    Ok("100 drawings, counts identical with and without prefilter".into())
}

fn check_stereographic_drawings() -> Result<String, String> {
    let mut total = 0u64;
    for seed in 0..100u64 {
        let mut stream = SeededStream::new(0xC005 + seed, 0);
        let drawing = build_threshold_drawing(&mut stream, 50, 0.6);
        let spherical = count_crossings(&drawing);
        let (planar, _) = project_with_pole_retry(&drawing).map_err(|e| e.to_string())?;
        let flat = count_planar_crossings(&planar);
        ensure(spherical.degeneracies == 0, || format!("seed {seed}: spherical degeneracies"))?;
        ensure(flat.tangencies == 0, || format!("seed {seed}: planar tangencies"))?;
        ensure(flat.crossings == spherical.cr, || {
            format!("seed {seed}: sphere {} vs plane {}", spherical.cr, flat.crossings)
        })?;
        total += spherical.cr;
    }
    Ok(format!("100 drawings exact ({total} crossings)"))
}

fn check_gnomonic_drawings() -> Result<String, String> {
    let pole = UnitVector::Z;
    let mut total = 0u64;
    for seed in 0..100u64 {
        let mut stream = SeededStream::new(0xC006 + seed, 0);
        let drawing = cap_drawing(&mut stream, 50, 0.3, pole, 0.7);
        let spherical = count_crossings(&drawing);
        let flat = count_planar_crossings(
            &project_drawing_gnomonic(&drawing, pole).map_err(|e| e.to_string())?,
        );
        ensure(flat.tangencies == 0, || format!("seed {seed}: tangencies"))?;
        ensure(flat.crossings == spherical.cr, || {
            format!("seed {seed}: sphere {} vs plane {}", spherical.cr, flat.crossings)
        })?;
        total += spherical.cr;
    }
    Ok(format!("100 hemisphere drawings exact ({total} crossings)"))
}

fn cap_drawing(
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

fn check_copies() -> Result<String, String> {
    let mut stream = SeededStream::new(0xC007, 0);
    let drawing = build_threshold_drawing(&mut stream, 50, 0.6);
    let base = count_crossings(&drawing);
    for k in [1u64, 2, 7] {
        let (_, combined) = replicate_copies(&drawing, k as usize).map_err(|e| e.to_string())?;
        let lhs = combined.cr as u128 * (combined.n as u128).pow(2) * (base.e as u128).pow(3);
        let rhs = base.cr as u128 * (base.n as u128).pow(2) * (combined.e as u128).pow(3);
        ensure(lhs == rhs, || format!("k = {k}: identity violated"))?;
    }
    Ok(format!("identity exact for k ∈ {{1, 2, 7}} (cr = {})", base.cr))
}

fn check_ks() -> Result<String, String> {
    let samples = 1_000_000usize;
    let mut stream = SeededStream::new(0xC008, 0);
    let statistic = pairwise_angle_density_test(&mut stream, samples);
    let critical = 1.63 / (samples as f64).sqrt();
    ensure(statistic < critical, || {
        format!("KS {statistic:.3e} ≥ {critical:.3e}")
    })?;
    Ok(format!("KS = {statistic:.2e} < {critical:.2e} on 10⁶ pairs"))
}
