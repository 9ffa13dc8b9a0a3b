//! Distance-threshold geodesic drawings and exact crossing counts.
//!
//! A drawing is `n` uniform vertices with an edge (drawn as the minor
//! great-circle arc) between every pair within spherical distance `d`.
//! Crossings are counted brute-force over non-adjacent edge pairs: at desk
//! scale correctness and auditability beat sweep structures, the
//! bounding-cap prefilter prunes aggressively for small `d`, and the pair
//! loop parallelizes into an order-independent integer sum.

mod planar;

pub use planar::{
    count_planar_crossings, project_drawing, project_drawing_gnomonic, project_with_pole_retry,
    replicate_copies, PlanarArcDrawing, PlanarCrossings, PlanarEdge, PlanarShape,
};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geom::{
    classify_arcs_cross, great_circle_distance, make_arc, Crossing, GeodesicArc, GeomError,
    UnitVector,
};
use crate::sampling::SeededStream;
use crate::tolerances::{CAP_PREFILTER_SLACK, MIN_ARC_SEPARATION};

/// Version tag written into every serialized drawing and report.
pub const FORMAT_VERSION: u32 = 1;

/// A drawn random graph on the sphere.
#[derive(Clone, Debug)]
pub struct SphericalDrawing {
    vertices: Vec<UnitVector>,
    /// Index pairs with `i < j`, exactly the pairs at distance ≤ `threshold_d`.
    edges: Vec<(u32, u32)>,
    threshold_d: f64,
    /// Vertices resampled at build time because they participated in a
    /// coincident-or-antipodal pair.
    degeneracy_count: u64,
}

impl SphericalDrawing {
    /// Threshold drawing over a caller-supplied vertex set.
    ///
    /// Fails with [`GeomError::DegenerateArc`] if any pair is coincident or
    /// antipodal within tolerance; unlike [`build_threshold_drawing`] there
    /// is no stream to resample from, so the caller decides.
    pub fn from_vertices(vertices: Vec<UnitVector>, d: f64) -> Result<Self, GeomError> {
        assert!(vertices.len() >= 2, "need at least two vertices");
        assert!(
            d > 0.0 && d <= std::f64::consts::PI,
            "threshold must lie in (0, π]"
        );
        match try_collect_edges(&vertices, d) {
            Ok(edges) => Ok(Self {
                vertices,
                edges,
                threshold_d: d,
                degeneracy_count: 0,
            }),
            Err((_, separation)) => Err(GeomError::DegenerateArc { separation }),
        }
    }

    pub fn vertices(&self) -> &[UnitVector] {
        &self.vertices
    }

    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    pub fn threshold_d(&self) -> f64 {
        self.threshold_d
    }

    pub fn degeneracy_count(&self) -> u64 {
        self.degeneracy_count
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// The arc drawing of edge `(i, j)`; infallible because the builder
    /// resamples degenerate pairs.
    pub fn edge_arc(&self, i: u32, j: u32) -> GeodesicArc {
        make_arc(self.vertices[i as usize], self.vertices[j as usize])
            .expect("builder guarantees non-degenerate edges")
    }
}

/// Exact crossing count of a drawing plus the normalized ratio `cr·n²/e³`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CrossingReport {
    pub n: u64,
    pub e: u64,
    pub cr: u64,
    /// `cr·n²/e³`; 0 when the drawing has no edges.
    pub ratio: f64,
    /// Edge pairs that fell in a tolerance band (ambiguous interiority or
    /// coincident great circles) and were classified non-crossing.
    pub degeneracies: u64,
}

impl CrossingReport {
    pub fn new(n: u64, e: u64, cr: u64, degeneracies: u64) -> Self {
        debug_assert!(cr <= e.saturating_mul(e.saturating_sub(1)) / 2);
        let ratio = if e == 0 {
            0.0
        } else {
            cr as f64 * (n as f64) * (n as f64) / (e as f64).powi(3)
        };
        Self {
            n,
            e,
            cr,
            ratio,
            degeneracies,
        }
    }
}

/// Build the threshold drawing: sample `n` uniform vertices from `stream`,
/// join every pair at distance ≤ `d`.
///
/// Any vertex participating in a coincident-or-antipodal pair (within
/// `1e-9`) is resampled, with `degeneracy_count` recording how often; this
/// guarantees every edge admits a non-degenerate arc.
pub fn build_threshold_drawing(stream: &mut SeededStream, n: usize, d: f64) -> SphericalDrawing {
    assert!(n >= 2, "need at least two vertices");
    assert!(
        d > 0.0 && d <= std::f64::consts::PI,
        "threshold must lie in (0, π]"
    );
    let mut vertices: Vec<UnitVector> = (0..n).map(|_| stream.sample_unit_vector()).collect();
    let mut degeneracy_count = 0u64;
    let edges = loop {
        match try_collect_edges(&vertices, d) {
            Ok(edges) => break edges,
            Err((j, _)) => {
                vertices[j] = stream.sample_unit_vector();
                degeneracy_count += 1;
            }
        }
    };
    SphericalDrawing {
        vertices,
        edges,
        threshold_d: d,
        degeneracy_count,
    }
}

/// One pass over all pairs; `Err((j, dist))` names the later vertex of the
/// first degenerate pair found and its offending separation.
fn try_collect_edges(vertices: &[UnitVector], d: f64) -> Result<Vec<(u32, u32)>, (usize, f64)> {
    let mut edges = Vec::new();
    for i in 0..vertices.len() {
        for j in (i + 1)..vertices.len() {
            let dist = great_circle_distance(vertices[i], vertices[j]);
            if dist <= MIN_ARC_SEPARATION || dist >= std::f64::consts::PI - MIN_ARC_SEPARATION {
                return Err((j, dist));
            }
            if dist <= d {
                edges.push((i as u32, j as u32));
            }
        }
    }
    Ok(edges)
}

/// Exact crossing count, with the bounding-cap prefilter enabled.
pub fn count_crossings(drawing: &SphericalDrawing) -> CrossingReport {
    count_crossings_opts(drawing, true)
}

/// Exact crossing count with the prefilter toggled explicitly; both
/// settings must produce identical reports.
///
/// Edge pairs sharing a vertex are skipped (adjacent edges meet only at the
/// shared vertex in general position). Ambiguous classifications and
/// coincident great circles increment `degeneracies` and never count as
/// crossings.
pub fn count_crossings_opts(drawing: &SphericalDrawing, use_prefilter: bool) -> CrossingReport {
    struct EdgeInfo {
        arc: GeodesicArc,
        mid: UnitVector,
        cos_r: f64,
        sin_r: f64,
        i: u32,
        j: u32,
    }

    let infos: Vec<EdgeInfo> = drawing
        .edges
        .iter()
        .map(|&(i, j)| {
            let arc = drawing.edge_arc(i, j);
            let half = arc.length() / 2.0;
            EdgeInfo {
                mid: arc.midpoint(),
                cos_r: half.cos(),
                sin_r: half.sin(),
                arc,
                i,
                j,
            }
        })
        .collect();

    let (cr, degeneracies) = (0..infos.len())
        .into_par_iter()
        .map(|p| {
            let a = &infos[p];
            let mut cr = 0u64;
            let mut degen = 0u64;
            for b in &infos[p + 1..] {
                if a.i == b.i || a.i == b.j || a.j == b.i || a.j == b.j {
                    continue;
                }
                if use_prefilter {
                    // Each arc lies in the cap around its midpoint of radius
                    // length/2; disjoint caps cannot yield a crossing.
                    let cos_sum = a.cos_r * b.cos_r - a.sin_r * b.sin_r;
                    if a.mid.dot(b.mid) < cos_sum - CAP_PREFILTER_SLACK {
                        continue;
                    }
                }
                match classify_arcs_cross(&a.arc, &b.arc) {
                    Ok(Crossing::Proper) => cr += 1,
                    Ok(Crossing::None) => {}
                    Ok(Crossing::Ambiguous) => degen += 1,
                    Err(GeomError::CoincidentGreatCircles { .. }) => degen += 1,
                    Err(e) => unreachable!("non-degenerate arcs: {e}"),
                }
            }
            (cr, degen)
        })
        .reduce(|| (0u64, 0u64), |x, y| (x.0 + y.0, x.1 + y.1));

    CrossingReport::new(
        drawing.vertex_count() as u64,
        drawing.edge_count() as u64,
        cr,
        degeneracies,
    )
}

/// Errors for serialized drawings that fail validation on load.
#[derive(Debug, Error)]
pub enum DrawingFileError {
    #[error("unsupported format version {0} (expected {FORMAT_VERSION})")]
    UnsupportedFormat(u32),
    #[error("vertex {index} is not on the unit sphere: {source}")]
    BadVertex { index: usize, source: GeomError },
    #[error("edge ({i}, {j}) is not an ordered pair of distinct vertex indices < {n}")]
    BadEdge { i: u32, j: u32, n: usize },
}

/// Serialized form of a drawing:
/// `{"format":1,"n":…,"d":…,"seed":…,"vertices":[[x,y,z]…],"edges":[[i,j]…]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DrawingFile {
    pub format: u32,
    pub n: u64,
    pub d: f64,
    pub seed: u64,
    pub vertices: Vec<[f64; 3]>,
    pub edges: Vec<[u32; 2]>,
}

impl DrawingFile {
    pub fn from_drawing(drawing: &SphericalDrawing, seed: u64) -> Self {
        Self {
            format: FORMAT_VERSION,
            n: drawing.vertex_count() as u64,
            d: drawing.threshold_d(),
            seed,
            vertices: drawing
                .vertices
                .iter()
                .map(|v| [v.x(), v.y(), v.z()])
                .collect(),
            edges: drawing.edges.iter().map(|&(i, j)| [i, j]).collect(),
        }
    }

    /// Validate and convert back into a drawing.
    pub fn into_drawing(self) -> Result<SphericalDrawing, DrawingFileError> {
        if self.format != FORMAT_VERSION {
            return Err(DrawingFileError::UnsupportedFormat(self.format));
        }
        let vertices = self
            .vertices
            .iter()
            .enumerate()
            .map(|(index, &[x, y, z])| {
                UnitVector::new(x, y, z).map_err(|source| DrawingFileError::BadVertex { index, source })
            })
            .collect::<Result<Vec<_>, _>>()?;
        let n = vertices.len();
        let mut edges = Vec::with_capacity(self.edges.len());
        for &[i, j] in &self.edges {
            if i >= j || (j as usize) >= n {
                return Err(DrawingFileError::BadEdge { i, j, n });
            }
            edges.push((i, j));
        }
        Ok(SphericalDrawing {
            vertices,
            edges,
            threshold_d: self.d,
            degeneracy_count: 0,
        })
    }
}

/// Serialized crossing report with its format version:
/// `{"format":1,"n":…,"e":…,"cr":…,"ratio":…,"degeneracies":…}`.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct ReportFile {
    pub format: u32,
    pub n: u64,
    pub e: u64,
    pub cr: u64,
    pub ratio: f64,
    pub degeneracies: u64,
}

impl From<CrossingReport> for ReportFile {
    fn from(r: CrossingReport) -> Self {
        Self {
            format: FORMAT_VERSION,
            n: r.n,
            e: r.e,
            cr: r.cr,
            ratio: r.ratio,
            degeneracies: r.degeneracies,
        }
    }
}
