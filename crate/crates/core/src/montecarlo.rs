//! Experiment orchestration: repeated trials, summary statistics, and the
//! ratio experiment that drives the normalized crossing ratio toward its
//! small-`d` limit.
//!
//! Trials are embarrassingly parallel: trial `t` owns the stream
//! `(master_seed, t)`, results are collected in trial order, and the
//! reductions are either integer sums or Neumaier-compensated sums over
//! that fixed order — so every summary is a pure function of its config,
//! bitwise identical for any thread count.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::io::{self, Write};
use thiserror::Error;

use crate::analytic::{
    binom2, expected_crossings, expected_edges, joint_cross_probability, ratio_function,
    AnalyticParams,
};
use crate::drawing::{build_threshold_drawing, count_crossings, CrossingReport, FORMAT_VERSION};
use crate::geom::{classify_arcs_cross, make_arc, Crossing};
use crate::sampling::SeededStream;

/// What a run estimates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    /// P[two independent pairs both form edges and their arcs cross].
    PairProbability,
    /// The per-drawing normalized ratio `cr·n²/e³`.
    DrawingRatio,
    /// Edge count of the threshold drawing.
    EdgeCount,
    /// Crossing count of the complete graph (`d = π`).
    CompleteGraph,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::PairProbability => "pair_probability",
            Mode::DrawingRatio => "drawing_ratio",
            Mode::EdgeCount => "edge_count",
            Mode::CompleteGraph => "complete_graph",
        }
    }
}

/// Full description of an experiment; everything downstream is derived
/// from these five fields.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub n: u64,
    pub d: f64,
    pub trials: u64,
    pub master_seed: u64,
    pub mode: Mode,
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<(), McError> {
        if self.trials < 1 {
            return Err(McError::InvalidConfig("trials must be ≥ 1".into()));
        }
        if !(self.d > 0.0 && self.d <= PI) {
            return Err(McError::InvalidConfig(format!(
                "d = {} outside (0, π]",
                self.d
            )));
        }
        let min_n = match self.mode {
            Mode::EdgeCount => 2,
            _ => 4,
        };
        if self.n < min_n {
            return Err(McError::InvalidConfig(format!(
                "n = {} below minimum {min_n} for mode {}",
                self.n,
                self.mode.as_str()
            )));
        }
        if self.mode == Mode::CompleteGraph && self.d != PI {
            return Err(McError::InvalidConfig(
                "complete_graph mode requires d = π".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Error)]
pub enum McError {
    #[error("invalid experiment config: {0}")]
    InvalidConfig(String),
    #[error("all {0} trials produced drawings with no edges; d is too small for n")]
    AllTrialsEmpty(u64),
}

/// Per-trial record: a scalar estimate or a full crossing report.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum TrialData {
    Scalar(f64),
    Report(CrossingReport),
}

/// Summary of one experiment run. A pure function of the config.
#[derive(Clone, Debug, Serialize)]
pub struct ExperimentSummary {
    pub format: u32,
    pub config: ExperimentConfig,
    /// Exact finite-n expectation the mean is compared against.
    pub analytic_target: f64,
    /// The asymptotic ratio `g(d)`, reported alongside the exact target for
    /// drawing-ratio runs.
    pub reference_ratio: Option<f64>,
    pub mean: f64,
    pub sample_std: f64,
    /// `sample_std / √used_trials`.
    pub std_error: f64,
    /// `(mean - analytic_target) / std_error`; 0 when the spread is zero.
    pub z_score: f64,
    pub used_trials: u64,
    /// Trials with `e = 0`, excluded from ratio statistics (the ratio is
    /// undefined there).
    pub skipped_empty_trials: u64,
    pub total_degeneracies: u64,
    pub per_trial: Vec<TrialData>,
}

/// Dispatch on the config's mode.
pub fn run(config: &ExperimentConfig) -> Result<ExperimentSummary, McError> {
    match config.mode {
        Mode::PairProbability => run_pair_probability(config),
        Mode::DrawingRatio => run_drawing_ratio(config),
        Mode::EdgeCount => run_edge_count(config),
        Mode::CompleteGraph => run_complete_graph(config),
    }
}

/// Estimate P[arcs cross ∧ both pair distances ≤ d] from independent
/// 4-tuples; each trial contributes a 0/1 indicator. Target:
/// `(sin d - d cos d)²/(8π²)`.
pub fn run_pair_probability(config: &ExperimentConfig) -> Result<ExperimentSummary, McError> {
    config.validate()?;
    let d = config.d;
    let outcomes: Vec<(f64, u64)> = (0..config.trials)
        .into_par_iter()
        .map(|t| {
            let mut stream = SeededStream::new(config.master_seed, t);
            let mut degeneracies = 0u64;
            let hit = loop {
                let p = stream.sample_unit_vector();
                let q = stream.sample_unit_vector();
                let r = stream.sample_unit_vector();
                let s = stream.sample_unit_vector();
                let (pq, rs) = match (make_arc(p, q), make_arc(r, s)) {
                    (Ok(a), Ok(b)) => (a, b),
                    // Degenerate tuple (probability ~1e-18); resample.
                    _ => {
                        degeneracies += 1;
                        continue;
                    }
                };
                if pq.length() > d || rs.length() > d {
                    break 0.0;
                }
                match classify_arcs_cross(&pq, &rs) {
                    Ok(Crossing::Proper) => break 1.0,
                    Ok(Crossing::None) => break 0.0,
                    Ok(Crossing::Ambiguous) | Err(_) => {
                        degeneracies += 1;
                        continue;
                    }
                }
            };
            (hit, degeneracies)
        })
        .collect();

    let values: Vec<f64> = outcomes.iter().map(|&(v, _)| v).collect();
    let total_degeneracies = outcomes.iter().map(|&(_, d)| d).sum();
    let target = joint_cross_probability(d).expect("validated");
    let stats = Stats::of(&values);
    Ok(ExperimentSummary {
        format: FORMAT_VERSION,
        config: *config,
        analytic_target: target,
        reference_ratio: None,
        mean: stats.mean,
        sample_std: stats.std,
        std_error: stats.se,
        z_score: stats.z(target),
        used_trials: values.len() as u64,
        skipped_empty_trials: 0,
        total_degeneracies,
        per_trial: values.into_iter().map(TrialData::Scalar).collect(),
    })
}

fn drawing_reports(config: &ExperimentConfig, d: f64) -> Vec<CrossingReport> {
    (0..config.trials)
        .into_par_iter()
        .map(|t| {
            let mut stream = SeededStream::new(config.master_seed, t);
            let drawing = build_threshold_drawing(&mut stream, config.n as usize, d);
            count_crossings(&drawing)
        })
        .collect()
}

/// Build one drawing per trial and average the normalized ratio `cr·n²/e³`.
///
/// The target is the exact finite-n quotient
/// `E[cr]·n² / E[e]³`; the asymptotic `g(d)` is reported alongside.
/// Trials with no edges are excluded and counted.
pub fn run_drawing_ratio(config: &ExperimentConfig) -> Result<ExperimentSummary, McError> {
    config.validate()?;
    let reports = drawing_reports(config, config.d);
    let params = AnalyticParams {
        d: config.d,
        n: config.n,
    };
    let target = expected_crossings(&params).expect("validated") * (config.n as f64).powi(2)
        / expected_edges(&params).powi(3);
    let values: Vec<f64> = reports.iter().filter(|r| r.e > 0).map(|r| r.ratio).collect();
    let skipped = config.trials - values.len() as u64;
    if values.is_empty() {
        return Err(McError::AllTrialsEmpty(config.trials));
    }
    let stats = Stats::of(&values);
    Ok(ExperimentSummary {
        format: FORMAT_VERSION,
        config: *config,
        analytic_target: target,
        reference_ratio: Some(ratio_function(config.d).expect("validated")),
        mean: stats.mean,
        sample_std: stats.std,
        std_error: stats.se,
        z_score: stats.z(target),
        used_trials: values.len() as u64,
        skipped_empty_trials: skipped,
        total_degeneracies: reports.iter().map(|r| r.degeneracies).sum(),
        per_trial: reports.into_iter().map(TrialData::Report).collect(),
    })
}

/// Average edge count against the exact expectation `n(n-1)(1-cos d)/4`.
///
/// Crossings are irrelevant here, so trials only build drawings; per-trial
/// data are scalar edge counts.
pub fn run_edge_count(config: &ExperimentConfig) -> Result<ExperimentSummary, McError> {
    config.validate()?;
    let counts: Vec<(u64, u64)> = (0..config.trials)
        .into_par_iter()
        .map(|t| {
            let mut stream = SeededStream::new(config.master_seed, t);
            let drawing = build_threshold_drawing(&mut stream, config.n as usize, config.d);
            (drawing.edge_count() as u64, drawing.degeneracy_count())
        })
        .collect();
    let target = expected_edges(&AnalyticParams {
        d: config.d,
        n: config.n,
    });
    let values: Vec<f64> = counts.iter().map(|&(e, _)| e as f64).collect();
    let stats = Stats::of(&values);
    Ok(ExperimentSummary {
        format: FORMAT_VERSION,
        config: *config,
        analytic_target: target,
        reference_ratio: None,
        mean: stats.mean,
        sample_std: stats.std,
        std_error: stats.se,
        z_score: stats.z(target),
        used_trials: values.len() as u64,
        skipped_empty_trials: 0,
        total_degeneracies: counts.iter().map(|&(_, d)| d).sum(),
        per_trial: values.into_iter().map(TrialData::Scalar).collect(),
    })
}

/// Average crossing count of the complete graph (`d = π`) against the
/// exact expectation `(1/16)·C(n,2)·C(n-2,2)`.
pub fn run_complete_graph(config: &ExperimentConfig) -> Result<ExperimentSummary, McError> {
    config.validate()?;
    let reports = drawing_reports(config, PI);
    let target = binom2(config.n) as f64 * binom2(config.n - 2) as f64 / 16.0;
    let values: Vec<f64> = reports.iter().map(|r| r.cr as f64).collect();
    let stats = Stats::of(&values);
    Ok(ExperimentSummary {
        format: FORMAT_VERSION,
        config: *config,
        analytic_target: target,
        reference_ratio: None,
        mean: stats.mean,
        sample_std: stats.std,
        std_error: stats.se,
        z_score: stats.z(target),
        used_trials: values.len() as u64,
        skipped_empty_trials: 0,
        total_degeneracies: reports.iter().map(|r| r.degeneracies).sum(),
        per_trial: reports.into_iter().map(TrialData::Report).collect(),
    })
}

/// Coefficients of variation for edge and crossing counts at `n` and `2n`.
#[derive(Clone, Debug, Serialize)]
pub struct ConcentrationReport {
    pub format: u32,
    pub n: u64,
    pub doubled_n: u64,
    pub d: f64,
    pub trials: u64,
    pub master_seed: u64,
    /// CV of the edge count at `n` and at `2n`.
    pub edge_cv: [f64; 2],
    /// CV of the crossing count at `n` and at `2n`; absent in edge-count
    /// mode, where crossings are never computed.
    pub crossing_cv: Option<[f64; 2]>,
    pub edge_cv_shrinks: bool,
    pub crossing_cv_shrinks: Option<bool>,
}

/// Probe the concentration claim: relative spread (sample_std/mean) of edge
/// and crossing counts must shrink when `n` doubles.
///
/// Trials at `n` use stream indices `0..trials`, trials at `2n` use
/// `trials..2·trials`, so the comparison stays reproducible. In
/// [`Mode::EdgeCount`] only the edge statistic is probed (crossing counts
/// at large `n` would dominate the runtime for no benefit).
pub fn run_concentration_probe(config: &ExperimentConfig) -> Result<ConcentrationReport, McError> {
    config.validate()?;
    if config.trials < 30 {
        return Err(McError::InvalidConfig(
            "concentration probe needs ≥ 30 trials".into(),
        ));
    }
    let with_crossings = config.mode != Mode::EdgeCount;
    let run_at = |n: u64, index_offset: u64| -> (f64, Option<f64>) {
        let reports: Vec<(u64, u64)> = (0..config.trials)
            .into_par_iter()
            .map(|t| {
                let mut stream = SeededStream::new(config.master_seed, index_offset + t);
                let drawing = build_threshold_drawing(&mut stream, n as usize, config.d);
                if with_crossings {
                    let r = count_crossings(&drawing);
                    (r.e, r.cr)
                } else {
                    (drawing.edge_count() as u64, 0)
                }
            })
            .collect();
        let edges: Vec<f64> = reports.iter().map(|&(e, _)| e as f64).collect();
        let e = Stats::of(&edges);
        let cross_cv = with_crossings.then(|| {
            let crossings: Vec<f64> = reports.iter().map(|&(_, cr)| cr as f64).collect();
            let c = Stats::of(&crossings);
            c.std / c.mean
        });
        (e.std / e.mean, cross_cv)
    };
    let (edge_cv_n, cross_cv_n) = run_at(config.n, 0);
    let (edge_cv_2n, cross_cv_2n) = run_at(2 * config.n, config.trials);
    let crossing_cv = match (cross_cv_n, cross_cv_2n) {
        (Some(a), Some(b)) => Some([a, b]),
        _ => None,
    };
    Ok(ConcentrationReport {
        format: FORMAT_VERSION,
        n: config.n,
        doubled_n: 2 * config.n,
        d: config.d,
        trials: config.trials,
        master_seed: config.master_seed,
        edge_cv: [edge_cv_n, edge_cv_2n],
        crossing_cv,
        edge_cv_shrinks: edge_cv_2n < edge_cv_n,
        crossing_cv_shrinks: crossing_cv.map(|cv| cv[1] < cv[0]),
    })
}

/// Mean / sample std / standard error via Neumaier-compensated two-pass
/// summation in the fixed input order.
struct Stats {
    mean: f64,
    std: f64,
    se: f64,
}

impl Stats {
    fn of(values: &[f64]) -> Self {
        let m = values.len() as f64;
        let mean = compensated_sum(values.iter().copied()) / m;
        let std = if values.len() < 2 {
            0.0
        } else {
            (compensated_sum(values.iter().map(|v| (v - mean) * (v - mean))) / (m - 1.0)).sqrt()
        };
        Stats {
            mean,
            std,
            se: std / m.sqrt(),
        }
    }

    fn z(&self, target: f64) -> f64 {
        if self.se > 0.0 {
            (self.mean - target) / self.se
        } else {
            0.0
        }
    }
}

fn compensated_sum(values: impl Iterator<Item = f64>) -> f64 {
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

/// Flat CSV projection of a summary, one row per trial.
///
/// Column order is fixed per format version:
/// scalar modes (pair probability, edge count)
/// `format,mode,n,d,trials,seed,trial,value`;
/// drawing modes `format,mode,n,d,trials,seed,trial,e,cr,ratio,degeneracies`.
pub fn write_csv<W: Write>(summary: &ExperimentSummary, out: &mut W) -> io::Result<()> {
    let c = &summary.config;
    let prefix = format!(
        "{},{},{},{},{},{}",
        summary.format,
        c.mode.as_str(),
        c.n,
        c.d,
        c.trials,
        c.master_seed
    );
    let scalar = matches!(c.mode, Mode::PairProbability | Mode::EdgeCount);
    if scalar {
        writeln!(out, "format,mode,n,d,trials,seed,trial,value")?;
    } else {
        writeln!(out, "format,mode,n,d,trials,seed,trial,e,cr,ratio,degeneracies")?;
    }
    for (t, data) in summary.per_trial.iter().enumerate() {
        match data {
            TrialData::Scalar(v) => writeln!(out, "{prefix},{t},{v}")?,
            TrialData::Report(r) => writeln!(
                out,
                "{prefix},{t},{},{},{},{}",
                r.e, r.cr, r.ratio, r.degeneracies
            )?,
        }
    }
    Ok(())
}
