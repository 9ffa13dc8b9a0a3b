//! Planar images of spherical drawings and their crossing counts.
//!
//! Stereographic projection is a homeomorphism of sphere-minus-pole, so a
//! projected drawing must have exactly the spherical crossing count; each
//! geodesic edge maps to a circular arc (or a straight segment when its
//! great circle passes through the pole). Gnomonic projection maps
//! hemisphere-confined arcs to straight segments. Both planar counts act as
//! independent oracles for the spherical predicate, and the circular-arc
//! path also carries the disjoint-copies construction.

use rayon::prelude::*;

use super::{count_crossings, CrossingReport, SphericalDrawing};
use crate::geom::{
    gnomonic_project, stereographic_project, GeodesicArc, GeomError, PlanarPoint, UnitVector, Vec3,
};
use crate::tolerances::{
    PLANAR_INTERIOR_MARGIN, PLANAR_TANGENCY_BAND, POLE_CLEARANCE, STRAIGHT_IMAGE_TOL,
};

const TAU: f64 = 2.0 * std::f64::consts::PI;

/// Geometry of one projected edge.
#[derive(Clone, Copy, Debug)]
pub enum PlanarShape {
    /// Circular arc from `start_angle` sweeping by the signed `sweep`
    /// (positive counter-clockwise, `0 < |sweep| < 2π`).
    Arc {
        center: PlanarPoint,
        radius: f64,
        start_angle: f64,
        sweep: f64,
    },
    /// Straight segment (gnomonic images, and stereographic images of
    /// great circles through the pole).
    Segment { a: PlanarPoint, b: PlanarPoint },
}

impl PlanarShape {
    /// Endpoint images of the edge, in order.
    pub fn endpoints(&self) -> (PlanarPoint, PlanarPoint) {
        match *self {
            PlanarShape::Arc {
                center,
                radius,
                start_angle,
                sweep,
            } => (
                point_on_circle(center, radius, start_angle),
                point_on_circle(center, radius, start_angle + sweep),
            ),
            PlanarShape::Segment { a, b } => (a, b),
        }
    }

    fn translated(&self, du: f64, dv: f64) -> PlanarShape {
        match *self {
            PlanarShape::Arc {
                center,
                radius,
                start_angle,
                sweep,
            } => PlanarShape::Arc {
                center: center.translated(du, dv),
                radius,
                start_angle,
                sweep,
            },
            PlanarShape::Segment { a, b } => PlanarShape::Segment {
                a: a.translated(du, dv),
                b: b.translated(du, dv),
            },
        }
    }
}

/// A projected edge: the vertex indices it connects plus its planar shape.
#[derive(Clone, Copy, Debug)]
pub struct PlanarEdge {
    pub i: u32,
    pub j: u32,
    pub shape: PlanarShape,
}

/// A drawing in the plane with circular-arc or segment edges.
#[derive(Clone, Debug)]
pub struct PlanarArcDrawing {
    pub vertices: Vec<PlanarPoint>,
    pub edges: Vec<PlanarEdge>,
}

/// Result of a planar crossing count.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PlanarCrossings {
    /// Proper crossings: intersection points strictly interior to both edges.
    pub crossings: u64,
    /// Intersections within the tangency band (including near-coincident
    /// circles); surfaced instead of being classified either way.
    pub tangencies: u64,
}

fn point_on_circle(center: PlanarPoint, radius: f64, angle: f64) -> PlanarPoint {
    PlanarPoint::new(
        center.u + radius * angle.cos(),
        center.v + radius * angle.sin(),
    )
}

fn wrap_tau(a: f64) -> f64 {
    let mut r = a % TAU;
    if r < 0.0 {
        r += TAU;
    }
    r
}

/// Angular clearance between `pole` and the closest point of `arc`,
/// accurate near zero (chord-based, not `acos`).
fn arc_pole_clearance(arc: &GeodesicArc, pole: UnitVector) -> f64 {
    let s = pole.dot(arc.normal());
    let w = pole.as_vec3() - arc.normal().as_vec3() * s;
    match w.normalized() {
        // Pole on the circle's axis: uniformly π/2 away.
        None => std::f64::consts::FRAC_PI_2,
        Some(closest) => {
            if arc.contains(closest) {
                chord_angle(pole, closest)
            } else {
                chord_angle(pole, arc.a()).min(chord_angle(pole, arc.b()))
            }
        }
    }
}

/// Angular distance via the chord, `2·asin(|p - q|/2)`: exact to a few ulps
/// for small separations where `acos` loses everything.
fn chord_angle(p: UnitVector, q: UnitVector) -> f64 {
    let half_chord = 0.5 * p.sq_chord(q).sqrt();
    2.0 * half_chord.min(1.0).asin()
}

/// Checks the pole keeps `POLE_CLEARANCE` from every vertex and edge arc.
fn check_pole_clearance(drawing: &SphericalDrawing, pole: UnitVector) -> Result<(), GeomError> {
    for &v in drawing.vertices() {
        let c = chord_angle(v, pole);
        if c < POLE_CLEARANCE {
            return Err(GeomError::PoleConflict { clearance: c });
        }
    }
    for &(i, j) in drawing.edges() {
        let arc = drawing.edge_arc(i, j);
        let c = arc_pole_clearance(&arc, pole);
        if c < POLE_CLEARANCE {
            return Err(GeomError::PoleConflict { clearance: c });
        }
    }
    Ok(())
}

/// Stereographic image of a drawing: vertices to points, geodesic arcs to
/// circular arcs through the images of their endpoints and midpoint (or to
/// segments when the great circle passes through the pole).
///
/// Fails with [`GeomError::PoleConflict`] when any vertex or edge comes
/// within `1e-6` of the pole; callers retry with a rotated pole.
pub fn project_drawing(
    drawing: &SphericalDrawing,
    pole: UnitVector,
) -> Result<PlanarArcDrawing, GeomError> {
    check_pole_clearance(drawing, pole)?;
    let vertices: Vec<PlanarPoint> = drawing
        .vertices()
        .iter()
        .map(|&v| stereographic_project(v, pole))
        .collect::<Result<_, _>>()?;
    let edges = drawing
        .edges()
        .iter()
        .map(|&(i, j)| {
            let arc = drawing.edge_arc(i, j);
            let pa = vertices[i as usize];
            let pb = vertices[j as usize];
            let shape = if pole.dot(arc.normal()).abs() < STRAIGHT_IMAGE_TOL {
                PlanarShape::Segment { a: pa, b: pb }
            } else {
                let pm = stereographic_project(arc.midpoint(), pole)?;
                arc_through(pa, pm, pb)
            };
            Ok(PlanarEdge { i, j, shape })
        })
        .collect::<Result<Vec<_>, GeomError>>()?;
    Ok(PlanarArcDrawing { vertices, edges })
}

/// Gnomonic image of a drawing: straight segments, valid only when every
/// vertex lies strictly inside the hemisphere of `pole`.
pub fn project_drawing_gnomonic(
    drawing: &SphericalDrawing,
    pole: UnitVector,
) -> Result<PlanarArcDrawing, GeomError> {
    let vertices: Vec<PlanarPoint> = drawing
        .vertices()
        .iter()
        .map(|&v| gnomonic_project(v, pole))
        .collect::<Result<_, _>>()?;
    let edges = drawing
        .edges()
        .iter()
        .map(|&(i, j)| PlanarEdge {
            i,
            j,
            shape: PlanarShape::Segment {
                a: vertices[i as usize],
                b: vertices[j as usize],
            },
        })
        .collect();
    Ok(PlanarArcDrawing { vertices, edges })
}

/// Circular arc through three distinct points, from `a` to `b` passing
/// through `m`. Falls back to a segment if the points are collinear beyond
/// circumcenter precision (the through-the-pole case is filtered earlier).
fn arc_through(a: PlanarPoint, m: PlanarPoint, b: PlanarPoint) -> PlanarShape {
    // Circumcenter relative to `a` for conditioning.
    let mu = m.u - a.u;
    let mv = m.v - a.v;
    let bu = b.u - a.u;
    let bv = b.v - a.v;
    let det = 2.0 * (mu * bv - mv * bu);
    let m2 = mu * mu + mv * mv;
    let b2 = bu * bu + bv * bv;
    let scale = m2.max(b2);
    if det.abs() <= 1e-14 * scale {
        return PlanarShape::Segment { a, b };
    }
    let cu = (m2 * bv - b2 * mv) / det;
    let cv = (b2 * mu - m2 * bu) / det;
    let center = PlanarPoint::new(a.u + cu, a.v + cv);
    let radius = (cu * cu + cv * cv).sqrt();

    let theta_a = (a.v - center.v).atan2(a.u - center.u);
    let theta_b = (b.v - center.v).atan2(b.u - center.u);
    let theta_m = (m.v - center.v).atan2(m.u - center.u);
    let ccw = wrap_tau(theta_b - theta_a);
    let sweep = if wrap_tau(theta_m - theta_a) <= ccw {
        ccw
    } else {
        ccw - TAU
    };
    PlanarShape::Arc {
        center,
        radius,
        start_angle: theta_a,
        sweep,
    }
}

/// Angle-parameter position of `angle` along an arc: distance traveled from
/// the start, in `[0, 2π)`, measured in the sweep direction.
fn arc_param(start_angle: f64, sweep: f64, angle: f64) -> f64 {
    if sweep >= 0.0 {
        wrap_tau(angle - start_angle)
    } else {
        wrap_tau(start_angle - angle)
    }
}

/// Membership of an intersection point relative to one edge, with an
/// explicit boundary band mirroring the spherical `Ambiguous` class.
#[derive(Clone, Copy, PartialEq, Eq)]
enum Member {
    In,
    Out,
    Boundary,
}

fn arc_member(center: PlanarPoint, start_angle: f64, sweep: f64, p: PlanarPoint) -> Member {
    let angle = (p.v - center.v).atan2(p.u - center.u);
    let t = arc_param(start_angle, sweep, angle);
    banded(t, sweep.abs(), PLANAR_INTERIOR_MARGIN)
}

fn segment_member(t: f64, len: f64) -> Member {
    banded(t, len, PLANAR_INTERIOR_MARGIN * len)
}

fn banded(t: f64, limit: f64, margin: f64) -> Member {
    if t > margin && t < limit - margin {
        Member::In
    } else if t < -margin || t > limit + margin {
        Member::Out
    } else {
        Member::Boundary
    }
}

/// Fold the two membership verdicts for one intersection point into the
/// pair counters: interior to both is a crossing; a boundary graze with the
/// other edge at least touching is surfaced as a tangency.
fn register(m1: Member, m2: Member, out: &mut PlanarCrossings) {
    match (m1, m2) {
        (Member::In, Member::In) => out.crossings += 1,
        (Member::Out, _) | (_, Member::Out) => {}
        _ => out.tangencies += 1,
    }
}

/// Count proper crossings between all non-adjacent edge pairs, solving
/// circle–circle, circle–line or line–line intersections per pair and
/// testing strict membership of each intersection point in both arcs.
pub fn count_planar_crossings(drawing: &PlanarArcDrawing) -> PlanarCrossings {
    let edges = &drawing.edges;
    let (crossings, tangencies) = (0..edges.len())
        .into_par_iter()
        .map(|p| {
            let e1 = &edges[p];
            let mut cr = 0u64;
            let mut tan = 0u64;
            for e2 in &edges[p + 1..] {
                if e1.i == e2.i || e1.i == e2.j || e1.j == e2.i || e1.j == e2.j {
                    continue;
                }
                let pair = pair_crossings(&e1.shape, &e2.shape);
                cr += pair.crossings;
                tan += pair.tangencies;
            }
            (cr, tan)
        })
        .reduce(|| (0u64, 0u64), |x, y| (x.0 + y.0, x.1 + y.1));
    PlanarCrossings {
        crossings,
        tangencies,
    }
}

fn pair_crossings(s1: &PlanarShape, s2: &PlanarShape) -> PlanarCrossings {
    match (s1, s2) {
        (
            &PlanarShape::Arc {
                center: c1,
                radius: r1,
                start_angle: sa1,
                sweep: sw1,
            },
            &PlanarShape::Arc {
                center: c2,
                radius: r2,
                start_angle: sa2,
                sweep: sw2,
            },
        ) => arc_arc(c1, r1, sa1, sw1, c2, r2, sa2, sw2),
        (
            &PlanarShape::Arc {
                center,
                radius,
                start_angle,
                sweep,
            },
            &PlanarShape::Segment { a, b },
        )
        | (
            &PlanarShape::Segment { a, b },
            &PlanarShape::Arc {
                center,
                radius,
                start_angle,
                sweep,
            },
        ) => arc_segment(center, radius, start_angle, sweep, a, b),
        (&PlanarShape::Segment { a: a1, b: b1 }, &PlanarShape::Segment { a: a2, b: b2 }) => {
            segment_segment(a1, b1, a2, b2)
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn arc_arc(
    c1: PlanarPoint,
    r1: f64,
    sa1: f64,
    sw1: f64,
    c2: PlanarPoint,
    r2: f64,
    sa2: f64,
    sw2: f64,
) -> PlanarCrossings {
    let mut out = PlanarCrossings {
        crossings: 0,
        tangencies: 0,
    };
    let du = c2.u - c1.u;
    let dv = c2.v - c1.v;
    let dist = (du * du + dv * dv).sqrt();
    let band = PLANAR_TANGENCY_BAND * (r1 + r2).max(1.0);

    if dist < band && (r1 - r2).abs() < band {
        // Near-coincident circles: overlapping sub-arcs are measure-zero;
        // surface instead of classifying.
        out.tangencies = 1;
        return out;
    }
    let sum = r1 + r2;
    let diff = (r1 - r2).abs();
    if dist > sum + band || dist < diff - band {
        return out;
    }
    if (dist - sum).abs() <= band || (dist - diff).abs() <= band {
        // Circle-level tangency; only relevant if the touch point lies on
        // (or grazes) both arcs.
        let a = (r1 * r1 - r2 * r2 + dist * dist) / (2.0 * dist);
        let p = PlanarPoint::new(c1.u + a * du / dist, c1.v + a * dv / dist);
        if arc_member(c1, sa1, sw1, p) != Member::Out && arc_member(c2, sa2, sw2, p) != Member::Out
        {
            out.tangencies = 1;
        }
        return out;
    }
    // Radical-line decomposition of the two intersection points.
    let a = (r1 * r1 - r2 * r2 + dist * dist) / (2.0 * dist);
    let h_sq = r1 * r1 - a * a;
    if h_sq <= 0.0 {
        out.tangencies = 1;
        return out;
    }
    let h = h_sq.sqrt();
    let ux = du / dist;
    let uy = dv / dist;
    let base = PlanarPoint::new(c1.u + a * ux, c1.v + a * uy);
    for sign in [1.0, -1.0] {
        let p = PlanarPoint::new(base.u - sign * h * uy, base.v + sign * h * ux);
        register(
            arc_member(c1, sa1, sw1, p),
            arc_member(c2, sa2, sw2, p),
            &mut out,
        );
    }
    out
}

fn arc_segment(
    center: PlanarPoint,
    radius: f64,
    start_angle: f64,
    sweep: f64,
    a: PlanarPoint,
    b: PlanarPoint,
) -> PlanarCrossings {
    let mut out = PlanarCrossings {
        crossings: 0,
        tangencies: 0,
    };
    let len = a.distance(b);
    if len == 0.0 {
        return out;
    }
    let ux = (b.u - a.u) / len;
    let uy = (b.v - a.v) / len;
    // Foot of the center on the segment's line.
    let t0 = (center.u - a.u) * ux + (center.v - a.v) * uy;
    let foot = PlanarPoint::new(a.u + t0 * ux, a.v + t0 * uy);
    let dist = center.distance(foot);
    let band = PLANAR_TANGENCY_BAND * radius.max(1.0);
    if dist > radius + band {
        return out;
    }
    if (dist - radius).abs() <= band {
        // Line tangent to the circle; surface only if the touch point
        // grazes both edges.
        if segment_member(t0, len) != Member::Out
            && arc_member(center, start_angle, sweep, foot) != Member::Out
        {
            out.tangencies = 1;
        }
        return out;
    }
    let h = (radius * radius - dist * dist).sqrt();
    for t in [t0 - h, t0 + h] {
        let seg = segment_member(t, len);
        if seg == Member::Out {
            continue;
        }
        let p = PlanarPoint::new(a.u + t * ux, a.v + t * uy);
        register(seg, arc_member(center, start_angle, sweep, p), &mut out);
    }
    out
}

fn segment_segment(
    a1: PlanarPoint,
    b1: PlanarPoint,
    a2: PlanarPoint,
    b2: PlanarPoint,
) -> PlanarCrossings {
    let mut out = PlanarCrossings {
        crossings: 0,
        tangencies: 0,
    };
    let cross = |o: PlanarPoint, p: PlanarPoint, q: PlanarPoint| -> f64 {
        (p.u - o.u) * (q.v - o.v) - (p.v - o.v) * (q.u - o.u)
    };
    let l1 = a1.distance(b1);
    let l2 = a2.distance(b2);
    let band1 = PLANAR_TANGENCY_BAND * l1 * l2.max(1.0);
    let band2 = PLANAR_TANGENCY_BAND * l2 * l1.max(1.0);
    let d1 = cross(a1, b1, a2);
    let d2 = cross(a1, b1, b2);
    let d3 = cross(a2, b2, a1);
    let d4 = cross(a2, b2, b1);
    let near1 = d1.abs() <= band1 || d2.abs() <= band1;
    let near2 = d3.abs() <= band2 || d4.abs() <= band2;
    let straddle1 = d1 * d2 < 0.0;
    let straddle2 = d3 * d4 < 0.0;
    if !near1 && !near2 {
        if straddle1 && straddle2 {
            out.crossings = 1;
        }
    } else if (near1 && (straddle2 || near2)) || (near2 && (straddle1 || near1)) {
        // An endpoint grazes the other segment within tolerance while the
        // pair is otherwise in crossing position.
        out.tangencies = 1;
    }
    out
}

/// Fixed retry sequence of projection poles; the z-axis first, then a few
/// oblique directions so repeated PoleConflict retries stay deterministic.
fn pole_sequence() -> impl Iterator<Item = UnitVector> {
    [
        Vec3::new(0.0, 0.0, 1.0),
        Vec3::new(1.0, 2.0, 3.0),
        Vec3::new(-2.0, 1.0, 5.0),
        Vec3::new(3.0, -5.0, 2.0),
        Vec3::new(-1.0, -1.0, 1.0),
        Vec3::new(7.0, 1.0, -3.0),
        Vec3::new(-4.0, 6.0, -1.0),
        Vec3::new(2.0, -1.0, -7.0),
    ]
    .into_iter()
    .map(|v| v.normalized().expect("fixed poles are non-zero"))
}

/// Project with the retry sequence, returning the first pole that clears
/// every vertex and edge.
pub fn project_with_pole_retry(
    drawing: &SphericalDrawing,
) -> Result<(PlanarArcDrawing, UnitVector), GeomError> {
    let mut last = GeomError::PoleConflict { clearance: 0.0 };
    for pole in pole_sequence() {
        match project_drawing(drawing, pole) {
            Ok(planar) => return Ok((planar, pole)),
            Err(e @ GeomError::PoleConflict { .. }) => last = e,
            Err(e) => return Err(e),
        }
    }
    Err(last)
}

/// Lay out `k` translated copies of the drawing's stereographic image on a
/// one-dimensional lattice with spacing 2.5× the bounding-box diameter, so
/// edges of different copies cannot cross.
///
/// Returns the combined planar drawing and the combined report with
/// `N = k·n`, `e' = k·e`, `cr' = k·cr`; the ratio identity
/// `cr'·N²/e'³ = cr·n²/e³` is checked in exact integer arithmetic.
pub fn replicate_copies(
    drawing: &SphericalDrawing,
    k: usize,
) -> Result<(PlanarArcDrawing, CrossingReport), GeomError> {
    assert!(k >= 1, "need at least one copy");
    let base_report = count_crossings(drawing);
    let (planar, _pole) = project_with_pole_retry(drawing)?;

    let (min_u, max_u, min_v, max_v) = drawing_bounds(&planar);
    let diameter = ((max_u - min_u).powi(2) + (max_v - min_v).powi(2)).sqrt();
    let spacing = 2.5 * diameter.max(1.0);

    let nv = planar.vertices.len() as u32;
    let mut vertices = Vec::with_capacity(planar.vertices.len() * k);
    let mut edges = Vec::with_capacity(planar.edges.len() * k);
    for copy in 0..k {
        let du = spacing * copy as f64;
        vertices.extend(planar.vertices.iter().map(|p| p.translated(du, 0.0)));
        edges.extend(planar.edges.iter().map(|e| PlanarEdge {
            i: e.i + nv * copy as u32,
            j: e.j + nv * copy as u32,
            shape: e.shape.translated(du, 0.0),
        }));
    }
    let combined = PlanarArcDrawing { vertices, edges };

    let k = k as u64;
    let report = CrossingReport::new(
        k * base_report.n,
        k * base_report.e,
        k * base_report.cr,
        k * base_report.degeneracies,
    );
    assert_ratio_identity(&base_report, &report);
    Ok((combined, report))
}

/// `cr'·N²·e³ == cr·n²·e'³` in u128 arithmetic (both sides are
/// `k³·cr·n²·e³`, so failure means an arithmetic bug, not geometry).
fn assert_ratio_identity(base: &CrossingReport, combined: &CrossingReport) {
    let lhs = (combined.cr as u128)
        .checked_mul((combined.n as u128).pow(2))
        .and_then(|x| x.checked_mul((base.e as u128).pow(3)));
    let rhs = (base.cr as u128)
        .checked_mul((base.n as u128).pow(2))
        .and_then(|x| x.checked_mul((combined.e as u128).pow(3)));
    match (lhs, rhs) {
        (Some(l), Some(r)) => assert_eq!(l, r, "exact ratio identity violated"),
        _ => panic!("overflow while checking the exact ratio identity"),
    }
}

/// Conservative bounds of a planar drawing: vertex positions, segment
/// endpoints, and full circles of arc edges.
fn drawing_bounds(drawing: &PlanarArcDrawing) -> (f64, f64, f64, f64) {
    let mut min_u = f64::INFINITY;
    let mut max_u = f64::NEG_INFINITY;
    let mut min_v = f64::INFINITY;
    let mut max_v = f64::NEG_INFINITY;
    let mut take = |u: f64, v: f64| {
        min_u = min_u.min(u);
        max_u = max_u.max(u);
        min_v = min_v.min(v);
        max_v = max_v.max(v);
    };
    for p in &drawing.vertices {
        take(p.u, p.v);
    }
    for e in &drawing.edges {
        match e.shape {
            PlanarShape::Arc { center, radius, .. } => {
                take(center.u - radius, center.v - radius);
                take(center.u + radius, center.v + radius);
            }
            PlanarShape::Segment { a, b } => {
                take(a.u, a.v);
                take(b.u, b.v);
            }
        }
    }
    (min_u, max_u, min_v, max_v)
}
