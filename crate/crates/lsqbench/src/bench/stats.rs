//! Descriptive statistics and grouped means over sweep records.
//!
//! Conventions: standard deviation is the sample estimate (divisor n - 1);
//! quantiles interpolate linearly at position (n - 1) * p in the sorted
//! sample.

use std::collections::BTreeMap;

use crate::bench::records::{BenchRecord, NUMERIC_COLUMNS};
use crate::error::{Error, Result};

/// Eight-number summary of one metric column.
#[derive(Debug, Clone, PartialEq)]
pub struct StatsSummary {
    pub count: usize,
    pub mean: f64,
    pub std: f64,
    pub min: f64,
    pub q25: f64,
    pub median: f64,
    pub q75: f64,
    pub max: f64,
    /// False when the sample standard deviation is undefined (count < 2);
    /// `std` is reported as 0 in that case.
    pub std_defined: bool,
}

fn quantile(sorted: &[f64], p: f64) -> f64 {
    debug_assert!(!sorted.is_empty());
    let pos = (sorted.len() - 1) as f64 * p;
    let lo = pos.floor() as usize;
    let hi = pos.ceil() as usize;
    if lo == hi {
        sorted[lo]
    } else {
        let frac = pos - lo as f64;
        sorted[lo] + frac * (sorted[hi] - sorted[lo])
    }
}

pub fn summarize(values: &[f64]) -> Result<StatsSummary> {
    if values.is_empty() {
        return Err(Error::Degenerate("cannot summarize an empty sample".into()));
    }
    let count = values.len();
    let mean = values.iter().sum::<f64>() / count as f64;
    let (std, std_defined) = if count < 2 {
        (0.0, false)
    } else {
        let ss: f64 = values.iter().map(|v| (v - mean) * (v - mean)).sum();
        ((ss / (count - 1) as f64).sqrt(), true)
    };
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    Ok(StatsSummary {
        count,
        mean,
        std,
        min: sorted[0],
        q25: quantile(&sorted, 0.25),
        median: quantile(&sorted, 0.5),
        q75: quantile(&sorted, 0.75),
        max: sorted[count - 1],
        std_defined,
    })
}

/// Summaries for every numeric column present on all records, in canonical
/// column order.
pub fn describe(records: &[BenchRecord]) -> Result<Vec<(String, StatsSummary)>> {
    if records.is_empty() {
        return Err(Error::Degenerate("cannot describe an empty record set".into()));
    }
    let mut out = Vec::new();
    for name in NUMERIC_COLUMNS {
        let values: Vec<f64> = records.iter().filter_map(|r| r.column(name)).collect();
        if values.len() == records.len() {
            out.push((name.to_string(), summarize(&values)?));
        }
    }
    Ok(out)
}

/// Key columns a grouped table may use.
const GROUP_KEYS: [&str; 3] = ["n", "d", "cond"];

/// Grouped arithmetic means: one row per distinct key combination, sorted by
/// the key values ascending.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupedMeans {
    pub key_names: Vec<String>,
    pub value_names: Vec<String>,
    pub rows: Vec<GroupRow>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GroupRow {
    pub keys: Vec<f64>,
    pub means: Vec<f64>,
    pub count: usize,
}

pub fn group_means(
    records: &[BenchRecord],
    keys: &[&str],
    value_columns: &[&str],
) -> Result<GroupedMeans> {
    if keys.is_empty() {
        return Err(Error::Config("grouping requires at least one key".into()));
    }
    for k in keys {
        if !GROUP_KEYS.contains(k) {
            return Err(Error::Config(format!(
                "unknown group key '{k}' (expected one of n, d, cond)"
            )));
        }
    }
    if value_columns.is_empty() {
        return Err(Error::Config("grouping requires at least one value column".into()));
    }
    for v in value_columns {
        if !NUMERIC_COLUMNS.contains(v) {
            return Err(Error::Config(format!("unknown value column '{v}'")));
        }
    }

    let mut groups: BTreeMap<Vec<u64>, (Vec<f64>, Vec<f64>, usize)> = BTreeMap::new();
    for r in records {
        let key_vals: Vec<f64> = keys
            .iter()
            .map(|k| r.column(k).expect("group keys are always present"))
            .collect();
        // Total order on the raw key values; f64 bits of non-negative keys
        // sort consistently with their numeric order.
        let key_bits: Vec<u64> = key_vals.iter().map(|v| v.to_bits()).collect();
        let entry = groups
            .entry(key_bits)
            .or_insert_with(|| (key_vals.clone(), vec![0.0; value_columns.len()], 0));
        for (i, v) in value_columns.iter().enumerate() {
            let val = r.column(v).ok_or_else(|| {
                Error::Config(format!("column '{v}' is missing on some records"))
            })?;
            entry.1[i] += val;
        }
        entry.2 += 1;
    }

    let mut rows: Vec<GroupRow> = groups
        .into_values()
        .map(|(keys, sums, count)| GroupRow {
            keys,
            means: sums.iter().map(|s| s / count as f64).collect(),
            count,
        })
        .collect();
    rows.sort_by(|a, b| {
        a.keys
            .iter()
            .zip(&b.keys)
            .map(|(x, y)| x.total_cmp(y))
            .find(|o| !o.is_eq())
            .unwrap_or(std::cmp::Ordering::Equal)
    });

    Ok(GroupedMeans {
        key_names: keys.iter().map(|s| s.to_string()).collect(),
        value_names: value_columns.iter().map(|s| s.to_string()).collect(),
        rows,
    })
}

/// Markdown rendering of [`describe`] output: statistics as rows, metrics as
/// columns.
pub fn describe_to_markdown(summaries: &[(String, StatsSummary)]) -> String {
    let mut out = String::new();
    out.push_str("| Statistic |");
    for (name, _) in summaries {
        out.push_str(&format!(" {name} |"));
    }
    out.push('\n');
    out.push_str("|---|");
    for _ in summaries {
        out.push_str("---|");
    }
    out.push('\n');
    type StatGetter = fn(&StatsSummary) -> f64;
    let rows: [(&str, StatGetter); 8] = [
        ("count", |s| s.count as f64),
        ("mean", |s| s.mean),
        ("std", |s| s.std),
        ("min", |s| s.min),
        ("25%", |s| s.q25),
        ("50%", |s| s.median),
        ("75%", |s| s.q75),
        ("max", |s| s.max),
    ];
    for (label, f) in rows {
        out.push_str(&format!("| {label} |"));
        for (_, s) in summaries {
            out.push_str(&format!(" {} |", trim_float(f(s))));
        }
        out.push('\n');
    }
    out
}

/// Markdown rendering of a grouped-means table: key columns then means.
pub fn group_means_to_markdown(g: &GroupedMeans) -> String {
    let mut out = String::new();
    out.push('|');
    for k in &g.key_names {
        out.push_str(&format!(" {k} |"));
    }
    for v in &g.value_names {
        out.push_str(&format!(" {v} |"));
    }
    out.push('\n');
    out.push('|');
    for _ in g.key_names.iter().chain(&g.value_names) {
        out.push_str("---|");
    }
    out.push('\n');
    for row in &g.rows {
        out.push('|');
        for k in &row.keys {
            out.push_str(&format!(" {} |", trim_float(*k)));
        }
        for m in &row.means {
            out.push_str(&format!(" {} |", trim_float(*m)));
        }
        out.push('\n');
    }
    out
}

/// Compact decimal rendering for human-readable tables.
fn trim_float(v: f64) -> String {
    if v == v.trunc() && v.abs() < 1e15 {
        return format!("{v}");
    }
    let s = format!("{v:.6}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    s.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[allow(clippy::too_many_arguments)]
    fn record(n: usize, d: usize, cond: f64, tp: f64, ep: f64, tg: f64, eg: f64, it: usize) -> BenchRecord {
        BenchRecord {
            n,
            d,
            cond,
            time_pinv: tp,
            err_pinv: ep,
            time_gd: tg,
            err_gd: eg,
            iters_gd: it,
            coef_err_pinv: None,
            coef_err_gd: None,
            gd_converged: None,
        }
    }

    fn reference_records() -> Vec<BenchRecord> {
        vec![
            record(1000, 10, 1.000, 0.00067, 0.00994, 0.10293, 0.00994, 5010),
            record(1000, 10, 0.001, 0.00056, 0.00994, 0.17713, 7.63094, 10000),
            record(1000, 50, 1.000, 0.00842, 0.00928, 0.18450, 0.00928, 6417),
            record(1000, 50, 0.001, 0.00710, 0.00928, 0.31250, 57.43222, 10000),
            record(5000, 10, 1.000, 0.00150, 0.00997, 0.20027, 0.00997, 4659),
            record(5000, 10, 0.001, 0.00098, 0.00997, 0.46454, 18.42046, 10000),
            record(5000, 50, 1.000, 0.01575, 0.01014, 3.63456, 0.01014, 5235),
            record(5000, 50, 0.001, 0.01458, 0.01014, 8.22002, 52.87313, 10000),
        ]
    }

    #[test]
    fn quantile_interpolation_hand_check() {
        let sorted = [1.0, 2.0, 3.0, 4.0];
        assert_eq!(quantile(&sorted, 0.25), 1.75);
        assert_eq!(quantile(&sorted, 0.5), 2.5);
        assert_eq!(quantile(&sorted, 0.75), 3.25);
        assert_eq!(quantile(&sorted, 0.0), 1.0);
        assert_eq!(quantile(&sorted, 1.0), 4.0);
    }

    #[test]
    fn summary_of_reference_iteration_counts() {
        let records = reference_records();
        let by_name = describe(&records).unwrap();
        let iters = &by_name.iter().find(|(n, _)| n == "iters_gd").unwrap().1;
        assert_eq!(iters.count, 8);
        assert!((iters.mean - 7665.1).abs() <= 0.1);
        assert!((iters.std - 2545.5).abs() <= 0.1);
        assert!((iters.q25 - 5178.8).abs() <= 0.1);
        assert!((iters.median - 8208.5).abs() <= 0.05);
        assert_eq!(iters.q75, 10000.0);
    }

    #[test]
    fn summary_of_reference_gd_times() {
        let records = reference_records();
        let by_name = describe(&records).unwrap();
        let tg = &by_name.iter().find(|(n, _)| n == "time_gd").unwrap().1;
        assert!((tg.mean - 1.66206).abs() <= 1e-5);
        assert!((tg.std - 2.90588).abs() <= 1e-5);
        assert!((tg.median - 0.25639).abs() <= 1e-5);
        assert!((tg.q75 - 1.25704).abs() <= 1e-5);
    }

    #[test]
    fn grouped_means_match_reference_tables() {
        let records = reference_records();
        let times = group_means(&records, &["d", "cond"], &["time_pinv", "time_gd"]).unwrap();
        assert_eq!(times.rows.len(), 4);
        // Ascending key order: (10, 0.001) first.
        assert_eq!(times.rows[0].keys, vec![10.0, 0.001]);
        assert!((times.rows[0].means[1] - 0.32083).abs() <= 1e-5);
        let errs = group_means(&records, &["d", "cond"], &["err_pinv", "err_gd"]).unwrap();
        assert!((errs.rows[0].means[1] - 13.02570).abs() <= 1e-5);
        assert!((errs.rows[3].means[0] - 0.00971).abs() <= 1e-5);
    }

    #[test]
    fn single_record_summary_is_degenerate_but_defined() {
        let records = reference_records()[..1].to_vec();
        let by_name = describe(&records).unwrap();
        let s = &by_name.iter().find(|(n, _)| n == "err_pinv").unwrap().1;
        assert_eq!(s.count, 1);
        assert!(!s.std_defined);
        assert_eq!(s.std, 0.0);
        assert_eq!(s.min, s.max);
        assert_eq!(s.mean, s.min);
    }

    #[test]
    fn grouping_single_record_returns_it() {
        let records = reference_records()[..1].to_vec();
        let g = group_means(&records, &["n"], &["err_gd"]).unwrap();
        assert_eq!(g.rows.len(), 1);
        assert_eq!(g.rows[0].count, 1);
        assert_eq!(g.rows[0].means[0], 0.00994);
    }

    #[test]
    fn unknown_columns_are_rejected() {
        let records = reference_records();
        assert!(matches!(
            group_means(&records, &["bogus"], &["err_gd"]),
            Err(Error::Config(_))
        ));
        assert!(matches!(
            group_means(&records, &["d"], &["nope"]),
            Err(Error::Config(_))
        ));
        assert!(matches!(
            group_means(&records, &[], &["err_gd"]),
            Err(Error::Config(_))
        ));
    }

    #[test]
    fn empty_input_is_rejected() {
        assert!(matches!(describe(&[]), Err(Error::Degenerate(_))));
    }

    #[test]
    fn describe_skips_columns_missing_on_some_records() {
        let mut records = reference_records();
        records[0].coef_err_pinv = Some(1.0); // present on one record only
        let by_name = describe(&records).unwrap();
        assert!(by_name.iter().all(|(n, _)| n != "coef_err_pinv"));
    }

    #[test]
    fn markdown_tables_have_expected_shape() {
        let records = reference_records();
        let md = describe_to_markdown(&describe(&records).unwrap());
        assert!(md.starts_with("| Statistic |"));
        assert_eq!(md.lines().count(), 2 + 8);
        let g = group_means(&records, &["d", "cond"], &["err_pinv", "err_gd"]).unwrap();
        let md = group_means_to_markdown(&g);
        assert_eq!(md.lines().count(), 2 + 4);
        assert!(md.contains("| d | cond | err_pinv | err_gd |"));
    }
}
