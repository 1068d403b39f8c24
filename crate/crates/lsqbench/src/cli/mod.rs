//! Command-line front end: generate problems, solve single datasets, run
//! sweeps, and produce reports and plots.

mod dataset;

pub use dataset::{load_csv_dataset, Dataset};

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::bench::{
    describe, describe_to_markdown, group_means, group_means_to_markdown, read_records_csv,
    run_sweep, write_records_csv, BenchRecord, GroupedMeans, Series, StatsSummary, SweepGrid,
    NUMERIC_COLUMNS,
};
use crate::datagen::{make_problem, write_problem_csv, ProblemSpec};
use crate::error::{Error, Result};
use crate::matcore::{Matrix, Vector};
use crate::metrics::{coef_error, mse};
use crate::solvers::{solve_gd, solve_normal_equations, solve_pinv, FitResult, GdConfig};

const COND_HELP: &str = "Condition factor sigma_min/sigma_max of the design matrix, in (0, 1]. \
It is the reciprocal of the usual condition number: 1.0 means perfectly \
conditioned, lower values mean worse conditioning";

#[derive(Parser)]
#[command(
    name = "lsqbench",
    version,
    about = "Dense least-squares solvers (pseudoinverse, normal equations, gradient descent) \
             with a benchmark harness",
    subcommand_required = true,
    arg_required_else_help = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a synthetic problem and dump it as CSV
    Generate(GenerateArgs),
    /// Fit one dataset (synthetic or CSV) with one solver
    Solve(SolveArgs),
    /// Run the (n, d, cond) benchmark sweep and write a results CSV
    Sweep(SweepArgs),
    /// Summarize a results CSV (eight-number summary and/or grouped means)
    Report(ReportArgs),
    /// Render an SVG line chart from a results CSV
    Plot(PlotArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Pinv,
    Normal,
    Gd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Markdown,
    Csv,
}

#[derive(Args)]
struct GenerateArgs {
    /// Sample count
    #[arg(long, default_value_t = 1000)]
    n: usize,
    /// Feature count
    #[arg(long, default_value_t = 10)]
    d: usize,
    #[arg(long, default_value_t = 1.0, help = COND_HELP)]
    cond: f64,
    /// Noise standard deviation
    #[arg(long, default_value_t = 0.1)]
    noise: f64,
    /// Seed for the problem generator
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Output file (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SolveArgs {
    /// CSV dataset to fit; a synthetic problem is generated when omitted
    #[arg(long, requires = "target")]
    csv: Option<PathBuf>,
    /// Target column name of the CSV dataset
    #[arg(long, requires = "csv")]
    target: Option<String>,
    /// Standardize CSV features to mean 0 and sample std 1 before fitting
    #[arg(long, requires = "csv")]
    standardize: bool,
    /// Solver to run
    #[arg(long, value_enum, default_value_t = MethodArg::Pinv)]
    method: MethodArg,
    /// Sample count (synthetic mode)
    #[arg(long, default_value_t = 1000, conflicts_with = "csv")]
    n: usize,
    /// Feature count (synthetic mode)
    #[arg(long, default_value_t = 10, conflicts_with = "csv")]
    d: usize,
    #[arg(long, default_value_t = 1.0, conflicts_with = "csv", help = COND_HELP)]
    cond: f64,
    /// Noise standard deviation (synthetic mode)
    #[arg(long, default_value_t = 0.1, conflicts_with = "csv")]
    noise: f64,
    /// Seed for the problem generator (synthetic mode)
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Gradient descent learning rate
    #[arg(long, default_value_t = 0.01)]
    alpha: f64,
    /// Gradient descent stopping tolerance on the coefficient change norm
    #[arg(long, default_value_t = 1e-6)]
    tol: f64,
    /// Gradient descent iteration cap
    #[arg(long, default_value_t = 10_000)]
    max_iter: usize,
    /// Drop the 1/n factor from the gradient descent update
    #[arg(long)]
    unnormalized: bool,
    /// Write the report to a file instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    /// Sample counts, comma separated
    #[arg(long = "n", value_delimiter = ',', default_values_t = vec![1000, 5000])]
    ns: Vec<usize>,
    /// Feature counts, comma separated
    #[arg(long = "d", value_delimiter = ',', default_values_t = vec![10, 50])]
    ds: Vec<usize>,
    #[arg(long = "cond", value_delimiter = ',', default_values_t = vec![1.0, 0.001], help = COND_HELP)]
    conds: Vec<f64>,
    /// Noise standard deviation
    #[arg(long, default_value_t = 0.1)]
    noise: f64,
    /// Base seed; each cell derives its own seed from it
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Timing repetitions per cell (the minimum is reported)
    #[arg(long, default_value_t = 1)]
    repeats: usize,
    /// Gradient descent learning rate
    #[arg(long, default_value_t = 0.01)]
    alpha: f64,
    /// Gradient descent stopping tolerance on the coefficient change norm
    #[arg(long, default_value_t = 1e-6)]
    tol: f64,
    /// Gradient descent iteration cap
    #[arg(long, default_value_t = 10_000)]
    max_iter: usize,
    /// Drop the 1/n factor from the gradient descent update
    #[arg(long)]
    unnormalized: bool,
    /// Results CSV path
    #[arg(long, default_value = "results.csv")]
    out: PathBuf,
}

#[derive(Args)]
struct ReportArgs {
    /// Results CSV produced by `sweep`
    #[arg(long = "in")]
    input: PathBuf,
    /// Print the eight-number summary of every metric column
    #[arg(long)]
    describe: bool,
    /// Group rows by these key columns (subset of n,d,cond) and print means
    #[arg(long, value_delimiter = ',')]
    group: Vec<String>,
    /// Value columns for --group; defaults to the solver metric columns
    #[arg(long, value_delimiter = ',')]
    values: Vec<String>,
    /// Keep only rows where column=value, e.g. --filter d=10 (repeatable)
    #[arg(long)]
    filter: Vec<String>,
    /// Output format
    #[arg(long, value_enum, default_value_t = FormatArg::Markdown)]
    format: FormatArg,
    /// Write the report to a file instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct PlotArgs {
    /// Results CSV produced by `sweep`
    #[arg(long = "in")]
    input: PathBuf,
    /// Column for the horizontal axis
    #[arg(long)]
    x: String,
    /// Column for the vertical axis
    #[arg(long)]
    y: String,
    /// Keep only rows where column=value, e.g. --filter d=10 (repeatable)
    #[arg(long)]
    filter: Vec<String>,
    /// Logarithmic vertical axis
    #[arg(long)]
    log_y: bool,
    /// Output SVG path
    #[arg(long)]
    out: PathBuf,
}

/// Parses and runs an argument vector (including the program name), mapping
/// outcomes onto exit codes: 0 success, 1 usage error, 2 data or numeric
/// error.
pub fn dispatch<I, S>(argv: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match run(cli) {
        Ok(()) => 0,
        Err(Error::Config(msg)) => {
            eprintln!("error: {msg}");
            1
        }
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Generate(args) => cmd_generate(args),
        Command::Solve(args) => cmd_solve(args),
        Command::Sweep(args) => cmd_sweep(args),
        Command::Report(args) => cmd_report(args),
        Command::Plot(args) => cmd_plot(args),
    }
}

fn cmd_generate(args: GenerateArgs) -> Result<()> {
    let spec = ProblemSpec::new(args.n, args.d, args.cond, args.noise, args.seed)?;
    let problem = make_problem(&spec);
    match &args.out {
        Some(path) => {
            let file = fs::File::create(path)
                .map_err(|e| Error::io(path.display().to_string(), e))?;
            write_problem_csv(&problem, std::io::BufWriter::new(file))
                .map_err(|e| Error::io(path.display().to_string(), e))?;
            println!("wrote {} samples to {}", args.n, path.display());
        }
        None => {
            let stdout = std::io::stdout();
            write_problem_csv(&problem, stdout.lock())
                .map_err(|e| Error::io("stdout", e))?;
        }
    }
    Ok(())
}

fn cmd_solve(args: SolveArgs) -> Result<()> {
    let gd = GdConfig {
        alpha: args.alpha,
        tol: args.tol,
        max_iter: args.max_iter,
        normalized: !args.unnormalized,
    };

    let (x, y, beta_star, source): (Matrix, Vector, Option<Vector>, String) = match &args.csv {
        Some(path) => {
            let target = args.target.as_deref().expect("clap enforces --target");
            let ds = load_csv_dataset(path, target, args.standardize)?;
            let desc = format!(
                "{} (target {}{})",
                path.display(),
                target,
                if args.standardize { ", standardized" } else { "" }
            );
            (ds.x, ds.y, None, desc)
        }
        None => {
            let spec = ProblemSpec::new(args.n, args.d, args.cond, args.noise, args.seed)?;
            let p = make_problem(&spec);
            let desc = format!(
                "synthetic n={} d={} cond={} noise={} seed={}",
                args.n, args.d, args.cond, args.noise, args.seed
            );
            (p.x, p.y, Some(p.beta_star), desc)
        }
    };

    let fit: FitResult = match args.method {
        MethodArg::Pinv => solve_pinv(&x, &y)?,
        MethodArg::Normal => solve_normal_equations(&x, &y)?,
        MethodArg::Gd => solve_gd(&x, &y, &gd)?,
    };

    let mut report = String::new();
    report.push_str(&format!("method: {}\n", fit.method));
    report.push_str(&format!("source: {source}\n"));
    report.push_str(&format!("rows: {}\n", x.rows()));
    report.push_str(&format!("features: {}\n", x.cols()));
    report.push_str(&format!("mse: {}\n", mse(&x, &fit.beta_hat, &y)?));
    report.push_str(&format!("wall_seconds: {:.6e}\n", fit.wall_seconds));
    report.push_str(&format!("iterations: {}\n", fit.iterations));
    report.push_str(&format!("converged: {}\n", fit.converged));
    if let Some(beta_star) = &beta_star {
        report.push_str(&format!(
            "coef_error: {}\n",
            coef_error(&fit.beta_hat, beta_star)?
        ));
    }
    let coeffs: Vec<String> = fit.beta_hat.data().iter().map(|v| v.to_string()).collect();
    report.push_str(&format!("beta_hat: {}\n", coeffs.join(",")));

    emit(&report, args.out.as_deref())
}

fn cmd_sweep(args: SweepArgs) -> Result<()> {
    let grid = SweepGrid {
        ns: args.ns,
        ds: args.ds,
        conds: args.conds,
        noise_sigma: args.noise,
        base_seed: args.seed,
        repeats: args.repeats,
        gd: GdConfig {
            alpha: args.alpha,
            tol: args.tol,
            max_iter: args.max_iter,
            normalized: !args.unnormalized,
        },
    };
    let records = run_sweep(&grid)?;
    write_records_csv(&records, &args.out)?;
    println!("wrote {} records to {}", records.len(), args.out.display());
    Ok(())
}

fn cmd_report(args: ReportArgs) -> Result<()> {
    for key in &args.group {
        if !["n", "d", "cond"].contains(&key.as_str()) {
            return Err(Error::Config(format!(
                "unknown group key '{key}' (expected one of n, d, cond)"
            )));
        }
    }
    for value in &args.values {
        if !NUMERIC_COLUMNS.contains(&value.as_str()) {
            return Err(Error::Config(format!("unknown value column '{value}'")));
        }
    }
    let mut records = read_records_csv(&args.input)?;
    apply_filters(&mut records, &args.filter)?;
    if records.is_empty() {
        return Err(Error::Degenerate("no records match the filter".into()));
    }

    let want_describe = args.describe || args.group.is_empty();
    let mut report = String::new();

    if want_describe {
        let summaries = describe(&records)?;
        match args.format {
            FormatArg::Markdown => report.push_str(&describe_to_markdown(&summaries)),
            FormatArg::Csv => report.push_str(&describe_to_csv(&summaries)),
        }
    }
    if !args.group.is_empty() {
        let keys: Vec<&str> = args.group.iter().map(String::as_str).collect();
        let values: Vec<&str> = if args.values.is_empty() {
            NUMERIC_COLUMNS
                .iter()
                .copied()
                .filter(|c| !keys.contains(c))
                .filter(|c| records.iter().all(|r| r.column(c).is_some()))
                .collect()
        } else {
            args.values.iter().map(String::as_str).collect()
        };
        let grouped = group_means(&records, &keys, &values)?;
        if !report.is_empty() {
            report.push('\n');
        }
        match args.format {
            FormatArg::Markdown => report.push_str(&group_means_to_markdown(&grouped)),
            FormatArg::Csv => report.push_str(&grouped_to_csv(&grouped)),
        }
    }

    emit(&report, args.out.as_deref())
}

fn cmd_plot(args: PlotArgs) -> Result<()> {
    if !NUMERIC_COLUMNS.contains(&args.x.as_str()) {
        return Err(Error::Config(format!("unknown plot column '{}'", args.x)));
    }
    if !NUMERIC_COLUMNS.contains(&args.y.as_str()) {
        return Err(Error::Config(format!("unknown plot column '{}'", args.y)));
    }
    let mut records = read_records_csv(&args.input)?;
    apply_filters(&mut records, &args.filter)?;
    if records.is_empty() {
        return Err(Error::Degenerate("no records match the filter".into()));
    }

    // One series per combination of the key columns not on the x axis.
    let series_keys: Vec<&str> = ["n", "d", "cond"]
        .into_iter()
        .filter(|k| *k != args.x.as_str())
        .collect();
    let mut by_key: BTreeMap<Vec<u64>, Series> = BTreeMap::new();
    for r in &records {
        let x_val = r.column(&args.x).ok_or_else(|| {
            Error::Config(format!("column '{}' missing on some records", args.x))
        })?;
        let y_val = r.column(&args.y).ok_or_else(|| {
            Error::Config(format!("column '{}' missing on some records", args.y))
        })?;
        let key_vals: Vec<f64> = series_keys
            .iter()
            .map(|k| r.column(k).expect("key columns always present"))
            .collect();
        let bits: Vec<u64> = key_vals.iter().map(|v| v.to_bits()).collect();
        let entry = by_key.entry(bits).or_insert_with(|| Series {
            label: series_keys
                .iter()
                .zip(&key_vals)
                .map(|(k, v)| format!("{k}={v}"))
                .collect::<Vec<_>>()
                .join(", "),
            xs: Vec::new(),
            ys: Vec::new(),
        });
        entry.xs.push(x_val);
        entry.ys.push(y_val);
    }
    let series: Vec<Series> = by_key.into_values().collect();
    crate::bench::render_plot(&series, &args.x, &args.y, args.log_y, &args.out)?;
    println!("wrote plot to {}", args.out.display());
    Ok(())
}

fn apply_filters(records: &mut Vec<BenchRecord>, filters: &[String]) -> Result<()> {
    for f in filters {
        let (col, raw) = f.split_once('=').ok_or_else(|| {
            Error::Config(format!("filter '{f}' must have the form column=value"))
        })?;
        if !NUMERIC_COLUMNS.contains(&col) {
            return Err(Error::Config(format!("unknown filter column '{col}'")));
        }
        let value: f64 = raw
            .parse()
            .map_err(|_| Error::Config(format!("invalid filter value '{raw}'")))?;
        records.retain(|r| r.column(col) == Some(value));
    }
    Ok(())
}

fn describe_to_csv(summaries: &[(String, StatsSummary)]) -> String {
    let mut out = String::from("column,count,mean,std,min,q25,median,q75,max\n");
    for (name, s) in summaries {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{}\n",
            name, s.count, s.mean, s.std, s.min, s.q25, s.median, s.q75, s.max
        ));
    }
    out
}

fn grouped_to_csv(g: &GroupedMeans) -> String {
    let mut out = String::new();
    out.push_str(&g.key_names.join(","));
    out.push(',');
    out.push_str(&g.value_names.join(","));
    out.push('\n');
    for row in &g.rows {
        let mut fields: Vec<String> = row.keys.iter().map(|v| v.to_string()).collect();
        fields.extend(row.means.iter().map(|v| v.to_string()));
        out.push_str(&fields.join(","));
        out.push('\n');
    }
    out
}

fn emit(report: &str, out: Option<&Path>) -> Result<()> {
    match out {
        Some(path) => {
            fs::write(path, report).map_err(|e| Error::io(path.display().to_string(), e))?;
            println!("wrote report to {}", path.display());
        }
        None => print!("{report}"),
    }
    Ok(())
}
