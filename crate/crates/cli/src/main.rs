//! `geocross`: spherical random-drawing experiments from the command line.
//!
//! Subcommands map onto the library's experiment runners; every output
//! embeds the fully resolved configuration (all flags plus the seed), JSON
//! is the canonical format and CSV a flat projection for plotting tools.
//! Exit codes: 0 success, 1 failed selftest (or I/O failure), 2 invalid
//! flags or config.

mod selftest;

use std::f64::consts::PI;
use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use geocross::analytic::{
    arc_length_density, cap_area, conditional_cross_probability, expected_crossings,
    expected_edges, joint_cross_probability, midrange_upper_limit, ratio_function, AnalyticParams,
};
use geocross::drawing::{
    build_threshold_drawing, count_crossings, replicate_copies, ReportFile, FORMAT_VERSION,
};
use geocross::montecarlo::{self, ExperimentConfig, Mode};
use geocross::sampling::SeededStream;

/// Seed used when neither the flag nor the config file provides one.
const DEFAULT_SEED: u64 = 0;

#[derive(Parser)]
#[command(
    name = "geocross",
    version,
    about = "Random geodesic drawings on the sphere: closed forms, simulations, projections"
)]
struct Cli {
    /// Config file with `key=value` lines (same keys as the flags);
    /// explicit flags win over the file.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,

    /// Interpret every angle argument (d, d-min, d-max) as degrees and
    /// convert exactly at parse time.
    #[arg(long, global = true)]
    degrees: bool,

    /// Cap on parallel trial workers; results never depend on this.
    #[arg(long, global = true, value_name = "K")]
    threads: Option<usize>,

    /// Write output here instead of stdout.
    #[arg(long, short, global = true, value_name = "PATH")]
    output: Option<PathBuf>,

    /// Output format (sweep defaults to csv, everything else to json).
    #[arg(long, global = true, value_enum)]
    format: Option<OutputFormat>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the closed forms at a threshold d.
    Analytic(AnalyticArgs),
    /// Tabulate d, g(d), the joint probability and edges-per-vertex over a
    /// threshold range.
    Sweep(SweepArgs),
    /// Estimate the joint pair probability by simulation.
    Pairprob(PairprobArgs),
    /// Build threshold drawings and average the normalized crossing ratio.
    Simulate(SimulateArgs),
    /// The complete-graph case (d = π): mean crossing count vs the exact
    /// expectation.
    Complete(CompleteArgs),
    /// Replicate a counted drawing into disjoint planar copies and verify
    /// the ratio identity.
    Copies(CopiesArgs),
    /// Run the oracle-equivalence and property suites; exits 1 on failure.
    Selftest,
}

#[derive(Args)]
struct AnalyticArgs {
    /// Threshold in radians (degrees with --degrees).
    #[arg(long)]
    d: Option<f64>,
    /// Optional vertex count for the expectation formulas.
    #[arg(long)]
    n: Option<u64>,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long, value_name = "RAD")]
    d_min: Option<f64>,
    #[arg(long, value_name = "RAD")]
    d_max: Option<f64>,
    /// Number of rows (thresholds are evenly spaced, endpoints included).
    #[arg(long)]
    steps: Option<u64>,
    /// Vertex count for the edges-per-vertex column.
    #[arg(long)]
    n: Option<u64>,
}

#[derive(Args)]
struct PairprobArgs {
    #[arg(long)]
    d: Option<f64>,
    #[arg(long)]
    trials: Option<u64>,
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Args)]
struct SimulateArgs {
    #[arg(long)]
    n: Option<u64>,
    #[arg(long)]
    d: Option<f64>,
    #[arg(long)]
    trials: Option<u64>,
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Args)]
struct CompleteArgs {
    #[arg(long)]
    n: Option<u64>,
    #[arg(long)]
    trials: Option<u64>,
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Args)]
struct CopiesArgs {
    #[arg(long)]
    n: Option<u64>,
    #[arg(long)]
    d: Option<f64>,
    #[arg(long)]
    seed: Option<u64>,
    /// Number of disjoint planar copies.
    #[arg(long)]
    k: Option<u64>,
}

/// `key=value` config file contents.
struct ConfigFile {
    entries: Vec<(String, String)>,
}

impl ConfigFile {
    const KNOWN_KEYS: &'static [&'static str] = &[
        "n", "d", "d-min", "d-max", "steps", "trials", "seed", "k", "threads", "format",
        "degrees",
    ];

    fn load(path: &PathBuf) -> Result<Self, String> {
        let text = fs::read_to_string(path)
            .map_err(|e| format!("cannot read config file {}: {e}", path.display()))?;
        let mut entries = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| format!("config line {} is not key=value: {raw}", lineno + 1))?;
            let key = key.trim().to_string();
            if !Self::KNOWN_KEYS.contains(&key.as_str()) {
                return Err(format!("unknown config key `{key}` on line {}", lineno + 1));
            }
            entries.push((key, value.trim().to_string()));
        }
        Ok(Self { entries })
    }

    fn empty() -> Self {
        Self { entries: Vec::new() }
    }

    fn get<T: std::str::FromStr>(&self, key: &str) -> Result<Option<T>, String> {
        match self.entries.iter().rev().find(|(k, _)| k == key) {
            None => Ok(None),
            Some((_, v)) => v
                .parse()
                .map(Some)
                .map_err(|_| format!("config value for `{key}` is not valid: {v}")),
        }
    }
}

/// A flag value, falling back to the config file, then to a default.
fn resolve<T: std::str::FromStr + Copy>(
    flag: Option<T>,
    config: &ConfigFile,
    key: &str,
    default: Option<T>,
) -> Result<T, String> {
    if let Some(v) = flag {
        return Ok(v);
    }
    if let Some(v) = config.get::<T>(key)? {
        return Ok(v);
    }
    default.ok_or_else(|| format!("missing required value `--{key}` (flag or config file)"))
}

fn to_radians(value: f64, degrees: bool) -> f64 {
    if degrees {
        value.to_radians()
    } else {
        value
    }
}

fn check_domain(name: &str, value: f64, lo_open: f64, hi: f64) -> Result<(), String> {
    if value > lo_open && value <= hi {
        Ok(())
    } else {
        Err(format!("{name} = {value} outside ({lo_open}, {hi}]"))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            eprintln!("run `geocross --help` for usage");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    if let Some(threads) = cli.threads {
        if threads == 0 {
            return Err("--threads must be ≥ 1".into());
        }
        // Results are independent of the pool size by construction.
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .map_err(|e| format!("thread pool: {e}"))?;
    }
    let config = match &cli.config {
        Some(path) => ConfigFile::load(path)?,
        None => ConfigFile::empty(),
    };
    let degrees = cli.degrees || config.get::<bool>("degrees")?.unwrap_or(false);
    let format = match cli.format {
        Some(f) => f,
        None => match config.get::<String>("format")? {
            Some(s) if s == "json" => OutputFormat::Json,
            Some(s) if s == "csv" => OutputFormat::Csv,
            Some(s) => return Err(format!("unknown format `{s}`")),
            None => match cli.command {
                Command::Sweep(_) => OutputFormat::Csv,
                _ => OutputFormat::Json,
            },
        },
    };

    let rendered = match &cli.command {
        Command::Analytic(args) => cmd_analytic(args, &config, degrees, format)?,
        Command::Sweep(args) => cmd_sweep(args, &config, degrees, format)?,
        Command::Pairprob(args) => cmd_pairprob(args, &config, degrees, format)?,
        Command::Simulate(args) => cmd_simulate(args, &config, degrees, format)?,
        Command::Complete(args) => cmd_complete(args, &config, format)?,
        Command::Copies(args) => cmd_copies(args, &config, degrees, format)?,
        Command::Selftest => {
            return Ok(if selftest::run_all() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            });
        }
    };

    match &cli.output {
        Some(path) => {
            if let Err(e) = fs::write(path, rendered) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return Ok(ExitCode::from(1));
            }
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(rendered.as_bytes()).is_err() {
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

#[derive(Serialize)]
struct AnalyticOutput {
    format: u32,
    command: &'static str,
    config: AnalyticConfigEcho,
    /// `½ sin d`; null outside (0, π).
    arc_length_density: Option<f64>,
    /// `d/(4π)`.
    conditional_cross_probability: f64,
    /// `(sin d - d cos d)²/(8π²)`.
    joint_cross_probability: f64,
    /// `2π(1 - cos d)`.
    cap_area: f64,
    /// `g(d) = (1/π²)(sin d - d cos d)²/(1 - cos d)³`.
    ratio_g: f64,
    /// `8/(9π²)`, the d → 0 limit of g.
    midrange_upper: f64,
    expected_edges: Option<f64>,
    expected_crossings: Option<f64>,
}

#[derive(Serialize)]
struct AnalyticConfigEcho {
    d: f64,
    n: Option<u64>,
}

fn cmd_analytic(
    args: &AnalyticArgs,
    config: &ConfigFile,
    degrees: bool,
    format: OutputFormat,
) -> Result<String, String> {
    let d = to_radians(resolve(args.d, config, "d", None)?, degrees);
    check_domain("d", d, 0.0, PI)?;
    let n = match args.n {
        Some(n) => Some(n),
        None => config.get::<u64>("n")?,
    };
    let params = n.map(|n| AnalyticParams { d, n });
    let out = AnalyticOutput {
        format: FORMAT_VERSION,
        command: "analytic",
        config: AnalyticConfigEcho { d, n },
        arc_length_density: arc_length_density(d).ok(),
        conditional_cross_probability: conditional_cross_probability(d)
            .map_err(|e| e.to_string())?,
        joint_cross_probability: joint_cross_probability(d).map_err(|e| e.to_string())?,
        cap_area: cap_area(d),
        ratio_g: ratio_function(d).map_err(|e| e.to_string())?,
        midrange_upper: midrange_upper_limit(),
        expected_edges: params.as_ref().map(expected_edges),
        expected_crossings: params
            .as_ref()
            .map(|p| expected_crossings(p).map_err(|e| e.to_string()))
            .transpose()?,
    };
    Ok(match format {
        OutputFormat::Json => to_json(&out),
        OutputFormat::Csv => {
            let mut s = String::from(
                "format,d,n,arc_length_density,conditional_cross_probability,\
                 joint_cross_probability,cap_area,ratio_g,midrange_upper,\
                 expected_edges,expected_crossings\n",
            );
            s.push_str(&format!(
                "{},{},{},{},{},{},{},{},{},{},{}\n",
                out.format,
                out.config.d,
                opt(out.config.n),
                opt(out.arc_length_density),
                out.conditional_cross_probability,
                out.joint_cross_probability,
                out.cap_area,
                out.ratio_g,
                out.midrange_upper,
                opt(out.expected_edges),
                opt(out.expected_crossings),
            ));
            s
        }
    })
}

fn opt<T: std::fmt::Display>(v: Option<T>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

#[derive(Serialize)]
struct SweepRow {
    d: f64,
    ratio_g: f64,
    joint_cross_probability: f64,
    expected_edges_per_vertex: f64,
}

#[derive(Serialize)]
struct SweepOutput {
    format: u32,
    command: &'static str,
    config: SweepConfigEcho,
    rows: Vec<SweepRow>,
}

#[derive(Serialize)]
struct SweepConfigEcho {
    d_min: f64,
    d_max: f64,
    steps: u64,
    n: u64,
}

fn cmd_sweep(
    args: &SweepArgs,
    config: &ConfigFile,
    degrees: bool,
    format: OutputFormat,
) -> Result<String, String> {
    let d_min = to_radians(resolve(args.d_min, config, "d-min", None)?, degrees);
    let d_max = to_radians(resolve(args.d_max, config, "d-max", None)?, degrees);
    let steps = resolve(args.steps, config, "steps", None)?;
    let n = resolve(args.n, config, "n", Some(1000))?;
    check_domain("d-min", d_min, 0.0, PI)?;
    check_domain("d-max", d_max, 0.0, PI)?;
    if d_max <= d_min {
        return Err(format!("d-max = {d_max} must exceed d-min = {d_min}"));
    }
    if steps < 2 {
        return Err("steps must be ≥ 2".into());
    }
    if n < 2 {
        return Err("n must be ≥ 2".into());
    }
    let rows: Vec<SweepRow> = (0..steps)
        .map(|i| {
            let d = d_min + (d_max - d_min) * i as f64 / (steps - 1) as f64;
            SweepRow {
                d,
                ratio_g: ratio_function(d).expect("domain checked"),
                joint_cross_probability: joint_cross_probability(d).expect("domain checked"),
                expected_edges_per_vertex: 2.0 * expected_edges(&AnalyticParams { d, n })
                    / n as f64,
            }
        })
        .collect();
    let out = SweepOutput {
        format: FORMAT_VERSION,
        command: "sweep",
        config: SweepConfigEcho {
            d_min,
            d_max,
            steps,
            n,
        },
        rows,
    };
    Ok(match format {
        OutputFormat::Json => to_json(&out),
        OutputFormat::Csv => {
            let mut s = String::from(
                "format,n,d,ratio_g,joint_cross_probability,expected_edges_per_vertex\n",
            );
            for row in &out.rows {
                s.push_str(&format!(
                    "{},{},{},{},{},{}\n",
                    out.format,
                    out.config.n,
                    row.d,
                    row.ratio_g,
                    row.joint_cross_probability,
                    row.expected_edges_per_vertex
                ));
            }
            s
        }
    })
}

fn render_summary(
    summary: &montecarlo::ExperimentSummary,
    format: OutputFormat,
) -> Result<String, String> {
    Ok(match format {
        OutputFormat::Json => to_json(summary),
        OutputFormat::Csv => {
            let mut buf = Vec::new();
            montecarlo::write_csv(summary, &mut buf).map_err(|e| e.to_string())?;
            String::from_utf8(buf).expect("csv is utf-8")
        }
    })
}

fn cmd_pairprob(
    args: &PairprobArgs,
    config: &ConfigFile,
    degrees: bool,
    format: OutputFormat,
) -> Result<String, String> {
    let d = to_radians(resolve(args.d, config, "d", None)?, degrees);
    let trials = resolve(args.trials, config, "trials", None)?;
    let seed = resolve(args.seed, config, "seed", Some(DEFAULT_SEED))?;
    let cfg = ExperimentConfig {
        n: 4,
        d,
        trials,
        master_seed: seed,
        mode: Mode::PairProbability,
    };
    let summary = montecarlo::run_pair_probability(&cfg).map_err(|e| e.to_string())?;
    render_summary(&summary, format)
}

fn cmd_simulate(
    args: &SimulateArgs,
    config: &ConfigFile,
    degrees: bool,
    format: OutputFormat,
) -> Result<String, String> {
    let n = resolve(args.n, config, "n", None)?;
    let d = to_radians(resolve(args.d, config, "d", None)?, degrees);
    let trials = resolve(args.trials, config, "trials", None)?;
    let seed = resolve(args.seed, config, "seed", Some(DEFAULT_SEED))?;
    let cfg = ExperimentConfig {
        n,
        d,
        trials,
        master_seed: seed,
        mode: Mode::DrawingRatio,
    };
    let summary = montecarlo::run_drawing_ratio(&cfg).map_err(|e| e.to_string())?;
    render_summary(&summary, format)
}

fn cmd_complete(
    args: &CompleteArgs,
    config: &ConfigFile,
    format: OutputFormat,
) -> Result<String, String> {
    let n = resolve(args.n, config, "n", None)?;
    let trials = resolve(args.trials, config, "trials", None)?;
    let seed = resolve(args.seed, config, "seed", Some(DEFAULT_SEED))?;
    let cfg = ExperimentConfig {
        n,
        d: PI,
        trials,
        master_seed: seed,
        mode: Mode::CompleteGraph,
    };
    let summary = montecarlo::run_complete_graph(&cfg).map_err(|e| e.to_string())?;
    render_summary(&summary, format)
}

#[derive(Serialize)]
struct CopiesOutput {
    format: u32,
    command: &'static str,
    config: CopiesConfigEcho,
    base: ReportFile,
    combined: ReportFile,
    /// Exact integer identity `cr'·N²·e³ = cr·n²·e'³`; construction
    /// guarantees it, and it is re-verified on every run.
    ratio_identity_exact: bool,
}

#[derive(Serialize)]
struct CopiesConfigEcho {
    n: u64,
    d: f64,
    seed: u64,
    k: u64,
}

fn cmd_copies(
    args: &CopiesArgs,
    config: &ConfigFile,
    degrees: bool,
    format: OutputFormat,
) -> Result<String, String> {
    let n = resolve(args.n, config, "n", None)?;
    let d = to_radians(resolve(args.d, config, "d", None)?, degrees);
    let seed = resolve(args.seed, config, "seed", Some(DEFAULT_SEED))?;
    let k = resolve(args.k, config, "k", None)?;
    check_domain("d", d, 0.0, PI)?;
    if n < 2 {
        return Err("n must be ≥ 2".into());
    }
    if k < 1 {
        return Err("k must be ≥ 1".into());
    }
    let mut stream = SeededStream::new(seed, 0);
    let drawing = build_threshold_drawing(&mut stream, n as usize, d);
    let base = count_crossings(&drawing);
    let (_, combined) = replicate_copies(&drawing, k as usize).map_err(|e| e.to_string())?;
    let lhs = combined.cr as u128 * (combined.n as u128).pow(2) * (base.e as u128).pow(3);
    let rhs = base.cr as u128 * (base.n as u128).pow(2) * (combined.e as u128).pow(3);
    let out = CopiesOutput {
        format: FORMAT_VERSION,
        command: "copies",
        config: CopiesConfigEcho { n, d, seed, k },
        base: base.into(),
        combined: combined.into(),
        ratio_identity_exact: lhs == rhs,
    };
    Ok(match format {
        OutputFormat::Json => to_json(&out),
        OutputFormat::Csv => {
            let mut s =
                String::from("format,label,n,d,seed,k,vertices,e,cr,ratio,degeneracies\n");
            for (label, r) in [("base", &out.base), ("combined", &out.combined)] {
                s.push_str(&format!(
                    "{},{label},{n},{d},{seed},{k},{},{},{},{},{}\n",
                    out.format, r.n, r.e, r.cr, r.ratio, r.degeneracies
                ));
            }
            s
        }
    })
}
