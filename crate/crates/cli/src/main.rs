//! Command-line surface for the tangent-triangle toolkit: density and CDF
//! tables, medians, seeded Monte Carlo simulations and the extremal
//! constants, emitted as CSV or JSON with 17 significant digits.
//!
//! Exit codes: 0 success, 2 usage or validation error, 3 numerical
//! non-convergence.

// validation guards are written !(x > bound) so NaN arguments are rejected too
#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use tangenttri::analytic::{self, AnalyticError, DensityModel, QuadratureSpec};
use tangenttri::optimize;
use tangenttri::sampling::{
    estimate_acute_probability, simulate_alpha, simulate_perimeter, simulate_side, Histogram,
    Seed, SimulationSummary,
};

#[derive(Parser)]
#[command(
    name = "tangenttri",
    version,
    about = "Densities, simulations and extremal constants for random triangles circumscribing the unit circle"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Tabulate an analytic side density over a range
    Density(TableArgs),
    /// Tabulate an analytic CDF over a range
    Cdf(TableArgs),
    /// Compute a distribution median by quadrature and root finding
    Median(MedianArgs),
    /// Run a seeded Monte Carlo simulation
    Simulate(SimulateArgs),
    /// Report extremal constants, closed form next to numeric search
    Optimize(OptimizeArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModelArg {
    Single,
    Naive,
    Incircle,
}

impl ModelArg {
    fn model(self) -> DensityModel {
        match self {
            ModelArg::Single => DensityModel::SingleTangent,
            ModelArg::Naive => DensityModel::NaiveConvolution,
            ModelArg::Incircle => DensityModel::IncircleConditioned,
        }
    }

    fn name(self) -> &'static str {
        match self {
            ModelArg::Single => "single",
            ModelArg::Naive => "naive",
            ModelArg::Incircle => "incircle",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Args)]
struct TableArgs {
    /// Density model to tabulate
    #[arg(long, value_enum)]
    model: ModelArg,
    /// Start of the range
    #[arg(long)]
    from: f64,
    /// End of the range (exclusive of nothing; the last row lands here)
    #[arg(long)]
    to: f64,
    /// Number of evenly spaced rows
    #[arg(long)]
    steps: u32,
    /// Quadrature tolerance (cdf only)
    #[arg(long, default_value_t = 1e-12)]
    tol: f64,
    #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
    format: FormatArg,
    /// Write output here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct MedianArgs {
    #[arg(long, value_enum)]
    model: ModelArg,
    /// Target tolerance on |cdf(median) - 1/2|
    #[arg(long, default_value_t = 1e-13)]
    tol: f64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SimKind {
    Side,
    Perimeter,
    Acute,
    Alpha,
}

impl SimKind {
    fn name(self) -> &'static str {
        match self {
            SimKind::Side => "side",
            SimKind::Perimeter => "perimeter",
            SimKind::Acute => "acute",
            SimKind::Alpha => "alpha",
        }
    }
}

#[derive(Args)]
struct SimulateArgs {
    /// What to simulate
    #[arg(value_enum)]
    kind: SimKind,
    /// Side model (side simulations only; defaults to incircle)
    #[arg(long, value_enum)]
    model: Option<ModelArg>,
    /// Sample count
    #[arg(long, default_value_t = 100_000)]
    n: u64,
    /// Base seed; TANGENTTRI_SEED supplies the default
    #[arg(long, env = "TANGENTTRI_SEED", default_value_t = 0)]
    seed: u64,
    /// Histogram bin count
    #[arg(long, default_value_t = 50)]
    bins: u32,
    /// Shard count for the deterministic decomposition
    #[arg(long, default_value_t = 1)]
    shards: u32,
    /// json emits the summary, csv the histogram
    #[arg(long, value_enum, default_value_t = FormatArg::Json)]
    format: FormatArg,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ProblemArg {
    Perimeter,
    TwoSides,
}

#[derive(Args)]
struct OptimizeArgs {
    /// Which extremal problem to report
    #[arg(value_enum)]
    problem: ProblemArg,
    /// Coordinate tolerance for the numeric search
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    #[arg(long)]
    out: Option<PathBuf>,
}

enum CliError {
    Usage(String),
    Numeric(String),
}

impl From<AnalyticError> for CliError {
    fn from(e: AnalyticError) -> Self {
        match e {
            AnalyticError::Domain { .. } => CliError::Usage(e.to_string()),
            _ => CliError::Numeric(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (text, out) = match dispatch(cli.command) {
        Ok(pair) => pair,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
        Err(CliError::Numeric(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(3);
        }
    };
    match out {
        Some(path) => {
            if let Err(e) = std::fs::write(&path, &text) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{text}"),
    }
    ExitCode::SUCCESS
}

fn dispatch(command: Command) -> Result<(String, Option<PathBuf>), CliError> {
    match command {
        Command::Density(a) => {
            let text = cmd_table(&a, false)?;
            Ok((text, a.out))
        }
        Command::Cdf(a) => {
            let text = cmd_table(&a, true)?;
            Ok((text, a.out))
        }
        Command::Median(a) => {
            let text = cmd_median(&a)?;
            Ok((text, a.out))
        }
        Command::Simulate(a) => {
            let text = cmd_simulate(&a)?;
            Ok((text, a.out))
        }
        Command::Optimize(a) => {
            let text = cmd_optimize(&a)?;
            Ok((text, a.out))
        }
    }
}

/// 17 significant digits, round-trip exact for f64.
fn num(x: f64) -> String {
    format!("{x:.16e}")
}

struct JsonObject {
    buf: String,
}

impl JsonObject {
    fn new() -> Self {
        JsonObject {
            buf: String::from("{"),
        }
    }

    fn sep(&mut self) {
        if self.buf.len() > 1 {
            self.buf.push(',');
        }
    }

    fn str_field(&mut self, key: &str, value: &str) -> &mut Self {
        self.sep();
        let _ = write!(self.buf, "\"{key}\":\"{value}\"");
        self
    }

    fn num_field(&mut self, key: &str, value: f64) -> &mut Self {
        self.sep();
        let _ = write!(self.buf, "\"{key}\":{}", num(value));
        self
    }

    fn int_field(&mut self, key: &str, value: u64) -> &mut Self {
        self.sep();
        let _ = write!(self.buf, "\"{key}\":{value}");
        self
    }

    fn raw_field(&mut self, key: &str, value: &str) -> &mut Self {
        self.sep();
        let _ = write!(self.buf, "\"{key}\":{value}");
        self
    }

    fn finish(mut self) -> String {
        self.buf.push('}');
        self.buf.push('\n');
        self.buf
    }
}

fn cmd_table(args: &TableArgs, cumulative: bool) -> Result<String, CliError> {
    if !(args.from < args.to) {
        return Err(CliError::Usage(format!(
            "degenerate range: --from {} must be below --to {}",
            args.from, args.to
        )));
    }
    if args.steps < 2 {
        return Err(CliError::Usage("need --steps of at least 2".into()));
    }
    if !(args.tol > 0.0) {
        return Err(CliError::Usage("--tol must be positive".into()));
    }

    let model = args.model.model();
    let spec = QuadratureSpec::new(args.tol, args.tol, 2000);
    let column = if cumulative { "cdf" } else { "density" };

    let mut rows: Vec<(f64, f64)> = Vec::with_capacity(args.steps as usize);
    for i in 0..args.steps {
        let x = args.from + (args.to - args.from) * i as f64 / (args.steps - 1) as f64;
        let value = if cumulative {
            analytic::cdf(model, x, &spec)?
        } else {
            model.pdf(x)
        };
        rows.push((x, value));
    }

    let mut text = String::new();
    match args.format {
        FormatArg::Csv => {
            let _ = writeln!(text, "l,{column}");
            for (x, v) in rows {
                let _ = writeln!(text, "{},{}", num(x), num(v));
            }
        }
        FormatArg::Json => {
            text.push('[');
            for (i, (x, v)) in rows.iter().enumerate() {
                if i > 0 {
                    text.push(',');
                }
                let _ = write!(text, "{{\"l\":{},\"{column}\":{}}}", num(*x), num(*v));
            }
            text.push_str("]\n");
        }
    }
    Ok(text)
}

fn cmd_median(args: &MedianArgs) -> Result<String, CliError> {
    if !(args.tol > 0.0) {
        return Err(CliError::Usage("--tol must be positive".into()));
    }
    let model = args.model.model();
    let spec = QuadratureSpec::new(args.tol, args.tol, 4000);
    let median = analytic::quantile(model, 0.5, &spec, args.tol)?;
    let achieved = (analytic::cdf(model, median, &spec)? - 0.5).abs();

    let mut obj = JsonObject::new();
    obj.str_field("model", args.model.name())
        .num_field("median", median)
        .num_field("achieved_tol", achieved);
    Ok(obj.finish())
}

fn summary_json(
    kind: SimKind,
    model: Option<ModelArg>,
    args: &SimulateArgs,
    summary: &SimulationSummary,
) -> String {
    let mut obj = JsonObject::new();
    obj.str_field("kind", kind.name());
    if let Some(m) = model {
        obj.str_field("model", m.name());
    }
    obj.int_field("n", summary.n)
        .int_field("seed", args.seed)
        .int_field("shards", args.shards.max(1) as u64)
        .num_field("estimate", summary.estimate)
        .num_field("std_error", summary.std_error);
    for (key, value) in &summary.extra {
        obj.num_field(key, *value);
    }
    obj.finish()
}

fn histogram_csv(histogram: &Histogram) -> String {
    let mut text = String::from("bin_lo,bin_hi,count\n");
    let edges = histogram.bin_edges();
    for (i, count) in histogram.counts().iter().enumerate() {
        let _ = writeln!(text, "{},{},{count}", num(edges[i]), num(edges[i + 1]));
    }
    text
}

fn cmd_simulate(args: &SimulateArgs) -> Result<String, CliError> {
    if args.n < 1 {
        return Err(CliError::Usage("--n must be at least 1".into()));
    }
    if args.bins < 1 {
        return Err(CliError::Usage("--bins must be at least 1".into()));
    }
    if args.shards < 1 {
        return Err(CliError::Usage("--shards must be at least 1".into()));
    }
    if args.kind != SimKind::Side && args.model.is_some() {
        return Err(CliError::Usage(
            "--model only applies to side simulations".into(),
        ));
    }

    let seed = Seed(args.seed);
    let (summary, histogram, model) = match args.kind {
        SimKind::Side => {
            let model = args.model.unwrap_or(ModelArg::Incircle);
            let (s, h) = simulate_side(model.model(), args.n, seed, args.bins, args.shards);
            (s, Some(h), Some(model))
        }
        SimKind::Perimeter => {
            let (s, h) = simulate_perimeter(args.n, seed, args.bins, args.shards);
            (s, Some(h), None)
        }
        SimKind::Alpha => {
            let (s, h) = simulate_alpha(args.n, seed, args.bins, args.shards);
            (s, Some(h), None)
        }
        SimKind::Acute => {
            let s = estimate_acute_probability(args.n, seed, args.shards);
            (s, None, None)
        }
    };

    match args.format {
        FormatArg::Json => Ok(summary_json(args.kind, model, args, &summary)),
        FormatArg::Csv => match histogram {
            Some(h) => Ok(histogram_csv(&h)),
            None => Err(CliError::Usage(
                "acute simulations have no histogram; use --format json".into(),
            )),
        },
    }
}

fn two_side_json(opt: &optimize::TwoSideOptimum) -> String {
    let mut obj = JsonObject::new();
    obj.num_field("w_star", opt.w_star)
        .num_field("sum_uv", opt.sum_uv)
        .num_field("apex_angle_rad", opt.apex_angle)
        .num_field("apex_angle_deg", opt.apex_angle.to_degrees())
        .num_field("cos_apex", opt.cos_apex);
    obj.finish().trim_end().to_string()
}

fn cmd_optimize(args: &OptimizeArgs) -> Result<String, CliError> {
    if !(args.tol > 0.0) {
        return Err(CliError::Usage("--tol must be positive".into()));
    }
    match args.problem {
        ProblemArg::Perimeter => {
            let closed = optimize::min_perimeter();
            let numeric = optimize::min_perimeter_numeric(args.tol);
            let mut obj = JsonObject::new();
            obj.str_field("problem", "perimeter")
                .num_field("closed", closed)
                .num_field("numeric", numeric)
                .num_field("abs_difference", (closed - numeric).abs());
            Ok(obj.finish())
        }
        ProblemArg::TwoSides => {
            let closed = optimize::two_side_min_closed();
            let (numeric, uv_gap) = optimize::two_side_min_numeric(args.tol);
            let mut diff = JsonObject::new();
            diff.num_field("w_star", (closed.w_star - numeric.w_star).abs())
                .num_field("sum_uv", (closed.sum_uv - numeric.sum_uv).abs())
                .num_field(
                    "apex_angle_rad",
                    (closed.apex_angle - numeric.apex_angle).abs(),
                )
                .num_field("cos_apex", (closed.cos_apex - numeric.cos_apex).abs());

            let mut obj = JsonObject::new();
            obj.str_field("problem", "two-sides")
                .raw_field("closed", &two_side_json(&closed))
                .raw_field("numeric", &two_side_json(&numeric))
                .raw_field("abs_difference", diff.finish().trim_end())
                .num_field("uv_gap", uv_gap);
            Ok(obj.finish())
        }
    }
}
