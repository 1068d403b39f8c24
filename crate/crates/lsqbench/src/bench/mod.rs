//! Parameter sweep over (n, d, cond) grids: run both solvers per cell, time
//! them, and aggregate results into tables and plots.
//!
//! Cells execute strictly serially so wall-clock timings are not perturbed
//! by each other.

mod plot;
mod records;
mod stats;
mod timing;

pub use plot::{plot_svg, render_plot, Series};
pub use records::{
    parse_records_csv, read_records_csv, records_to_csv, records_to_markdown, write_records_csv,
    BenchRecord, CSV_HEADER, NUMERIC_COLUMNS,
};
pub use stats::{
    describe, describe_to_markdown, group_means, group_means_to_markdown, summarize, GroupRow,
    GroupedMeans, StatsSummary,
};
pub use timing::time_op;

use crate::datagen::{make_problem, ProblemSpec};
use crate::error::{Error, Result};
use crate::metrics::{coef_error, mse};
use crate::solvers::{solve_gd, solve_pinv, GdConfig};

/// The sweep grid. `base_seed` is mixed with each cell's position so cells
/// are independent but reproducible; `repeats` controls timing repetitions
/// per cell (minimum is reported).
#[derive(Debug, Clone, PartialEq)]
pub struct SweepGrid {
    pub ns: Vec<usize>,
    pub ds: Vec<usize>,
    pub conds: Vec<f64>,
    pub noise_sigma: f64,
    pub base_seed: u64,
    pub repeats: usize,
    pub gd: GdConfig,
}

impl Default for SweepGrid {
    fn default() -> Self {
        Self {
            ns: vec![1000, 5000],
            ds: vec![10, 50],
            conds: vec![1.0, 0.001],
            noise_sigma: 0.1,
            base_seed: 42,
            repeats: 1,
            gd: GdConfig::default(),
        }
    }
}

fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Deterministic per-cell seed from the base seed and the cell's grid
/// position.
fn cell_seed(base: u64, i_n: usize, i_d: usize, i_cond: usize) -> u64 {
    let mut s = splitmix64(base);
    for part in [i_n as u64, i_d as u64, i_cond as u64] {
        s = splitmix64(s ^ part);
    }
    s
}

/// Runs one cell: generates the problem (untimed), then times each solver
/// around exactly its numeric work.
pub fn run_cell(spec: &ProblemSpec, gd: &GdConfig, repeats: usize) -> Result<BenchRecord> {
    let problem = make_problem(spec);
    let (pinv_fit, time_pinv) = time_op(repeats, || solve_pinv(&problem.x, &problem.y));
    let pinv_fit = pinv_fit?;
    let (gd_fit, time_gd) = time_op(repeats, || solve_gd(&problem.x, &problem.y, gd));
    let gd_fit = gd_fit?;

    Ok(BenchRecord {
        n: spec.n,
        d: spec.d,
        cond: spec.cond,
        time_pinv,
        err_pinv: mse(&problem.x, &pinv_fit.beta_hat, &problem.y)?,
        time_gd,
        err_gd: mse(&problem.x, &gd_fit.beta_hat, &problem.y)?,
        iters_gd: gd_fit.iterations,
        coef_err_pinv: Some(coef_error(&pinv_fit.beta_hat, &problem.beta_star)?),
        coef_err_gd: Some(coef_error(&gd_fit.beta_hat, &problem.beta_star)?),
        gd_converged: Some(gd_fit.converged),
    })
}

/// Runs every (n, d, cond) cell in a fixed total order: n ascending, then d
/// ascending, then cond descending. A failing cell is tagged with NaN
/// metrics instead of aborting the sweep.
pub fn run_sweep(grid: &SweepGrid) -> Result<Vec<BenchRecord>> {
    if grid.ns.is_empty() || grid.ds.is_empty() || grid.conds.is_empty() {
        return Err(Error::Config("sweep grid lists must be non-empty".into()));
    }
    if grid.repeats < 1 {
        return Err(Error::Config("repeats must be at least 1".into()));
    }
    let mut ns = grid.ns.clone();
    ns.sort_unstable();
    let mut ds = grid.ds.clone();
    ds.sort_unstable();
    let mut conds = grid.conds.clone();
    conds.sort_by(|a, b| b.total_cmp(a));

    for &n in &ns {
        for &d in &ds {
            if n < d {
                return Err(Error::Config(format!(
                    "every cell needs n >= d; got n={n}, d={d}"
                )));
            }
        }
    }

    let mut out = Vec::with_capacity(ns.len() * ds.len() * conds.len());
    for (i_n, &n) in ns.iter().enumerate() {
        for (i_d, &d) in ds.iter().enumerate() {
            for (i_c, &cond) in conds.iter().enumerate() {
                let seed = cell_seed(grid.base_seed, i_n, i_d, i_c);
                let spec = ProblemSpec::new(n, d, cond, grid.noise_sigma, seed)?;
                match run_cell(&spec, &grid.gd, grid.repeats) {
                    Ok(rec) => out.push(rec),
                    Err(e) => {
                        eprintln!("warning: cell (n={n}, d={d}, cond={cond}) failed: {e}");
                        out.push(BenchRecord {
                            n,
                            d,
                            cond,
                            time_pinv: f64::NAN,
                            err_pinv: f64::NAN,
                            time_gd: f64::NAN,
                            err_gd: f64::NAN,
                            iters_gd: 0,
                            coef_err_pinv: None,
                            coef_err_gd: None,
                            gd_converged: Some(false),
                        });
                    }
                }
            }
        }
    }
    Ok(out)
}
