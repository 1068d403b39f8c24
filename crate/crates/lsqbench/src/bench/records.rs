//! Sweep result records and their CSV serialization.
//!
//! The on-disk schema is the fixed header below. The first eight columns are
//! the core result table; the trailing three are extensions and older files
//! without them still parse. Floats are written in scientific notation with
//! 17 significant digits so a write/read cycle is bit-exact.

use std::fs;
use std::path::Path;

use crate::error::{Error, Result};

pub const CSV_HEADER: &str =
    "n,d,cond,time_pinv,err_pinv,time_gd,err_gd,iters_gd,coef_err_pinv,coef_err_gd,gd_converged";

/// Columns that can feed summaries, grouped means, and plots.
pub const NUMERIC_COLUMNS: [&str; 10] = [
    "n",
    "d",
    "cond",
    "time_pinv",
    "err_pinv",
    "time_gd",
    "err_gd",
    "iters_gd",
    "coef_err_pinv",
    "coef_err_gd",
];

/// One sweep cell: problem shape, per-solver wall time and training MSE, and
/// the gradient descent iteration count, plus extension columns recording
/// coefficient-space errors and the convergence flag.
#[derive(Debug, Clone, PartialEq)]
pub struct BenchRecord {
    pub n: usize,
    pub d: usize,
    pub cond: f64,
    pub time_pinv: f64,
    pub err_pinv: f64,
    pub time_gd: f64,
    pub err_gd: f64,
    pub iters_gd: usize,
    pub coef_err_pinv: Option<f64>,
    pub coef_err_gd: Option<f64>,
    pub gd_converged: Option<bool>,
}

impl BenchRecord {
    /// Numeric value of a named column, if present on this record.
    pub fn column(&self, name: &str) -> Option<f64> {
        match name {
            "n" => Some(self.n as f64),
            "d" => Some(self.d as f64),
            "cond" => Some(self.cond),
            "time_pinv" => Some(self.time_pinv),
            "err_pinv" => Some(self.err_pinv),
            "time_gd" => Some(self.time_gd),
            "err_gd" => Some(self.err_gd),
            "iters_gd" => Some(self.iters_gd as f64),
            "coef_err_pinv" => self.coef_err_pinv,
            "coef_err_gd" => self.coef_err_gd,
            _ => None,
        }
    }
}

fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn records_to_csv(records: &[BenchRecord]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in records {
        let coef_p = r.coef_err_pinv.map(fmt_f64).unwrap_or_default();
        let coef_g = r.coef_err_gd.map(fmt_f64).unwrap_or_default();
        let conv = r
            .gd_converged
            .map(|b| b.to_string())
            .unwrap_or_default();
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{},{}\n",
            r.n,
            r.d,
            fmt_f64(r.cond),
            fmt_f64(r.time_pinv),
            fmt_f64(r.err_pinv),
            fmt_f64(r.time_gd),
            fmt_f64(r.err_gd),
            r.iters_gd,
            coef_p,
            coef_g,
            conv,
        ));
    }
    out
}

pub fn write_records_csv(records: &[BenchRecord], path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    fs::write(path, records_to_csv(records))
        .map_err(|e| Error::io(path.display().to_string(), e))
}

pub fn read_records_csv(path: impl AsRef<Path>) -> Result<Vec<BenchRecord>> {
    let path = path.as_ref();
    let text =
        fs::read_to_string(path).map_err(|e| Error::io(path.display().to_string(), e))?;
    parse_records_csv(&text)
}

pub fn parse_records_csv(text: &str) -> Result<Vec<BenchRecord>> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| {
        let t = l.trim();
        !t.is_empty() && !t.starts_with('#')
    });

    let (header_line, header) = lines
        .next()
        .ok_or_else(|| Error::Schema("file has no header line".into()))?;
    let names: Vec<&str> = header.trim().split(',').map(str::trim).collect();

    const REQUIRED: [&str; 8] = [
        "n", "d", "cond", "time_pinv", "err_pinv", "time_gd", "err_gd", "iters_gd",
    ];
    const OPTIONAL: [&str; 3] = ["coef_err_pinv", "coef_err_gd", "gd_converged"];
    for req in REQUIRED {
        if !names.contains(&req) {
            return Err(Error::Schema(format!("missing required column '{req}'")));
        }
    }
    for name in &names {
        if !REQUIRED.contains(name) && !OPTIONAL.contains(name) {
            return Err(Error::Schema(format!("unknown column '{name}'")));
        }
    }
    let idx = |name: &str| names.iter().position(|&n| n == name);
    let _ = header_line;

    let mut records = Vec::new();
    for (line_no, line) in lines {
        let line_display = line_no + 1; // 1-based for messages
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        if fields.len() != names.len() {
            return Err(Error::Parse {
                line: line_display,
                msg: format!(
                    "expected {} fields, found {}",
                    names.len(),
                    fields.len()
                ),
            });
        }
        let get = |name: &str| idx(name).map(|i| fields[i]);
        let parse_f64 = |name: &str| -> Result<f64> {
            let raw = get(name).expect("required column checked above");
            raw.parse::<f64>().map_err(|_| Error::Parse {
                line: line_display,
                msg: format!("invalid number '{raw}' in column '{name}'"),
            })
        };
        let parse_usize = |name: &str| -> Result<usize> {
            let raw = get(name).expect("required column checked above");
            raw.parse::<usize>().map_err(|_| Error::Parse {
                line: line_display,
                msg: format!("invalid count '{raw}' in column '{name}'"),
            })
        };
        let parse_opt_f64 = |name: &str| -> Result<Option<f64>> {
            match get(name) {
                None | Some("") => Ok(None),
                Some(raw) => raw.parse::<f64>().map(Some).map_err(|_| Error::Parse {
                    line: line_display,
                    msg: format!("invalid number '{raw}' in column '{name}'"),
                }),
            }
        };
        let gd_converged = match get("gd_converged") {
            None | Some("") => None,
            Some("true") => Some(true),
            Some("false") => Some(false),
            Some(raw) => {
                return Err(Error::Parse {
                    line: line_display,
                    msg: format!("invalid flag '{raw}' in column 'gd_converged'"),
                })
            }
        };

        records.push(BenchRecord {
            n: parse_usize("n")?,
            d: parse_usize("d")?,
            cond: parse_f64("cond")?,
            time_pinv: parse_f64("time_pinv")?,
            err_pinv: parse_f64("err_pinv")?,
            time_gd: parse_f64("time_gd")?,
            err_gd: parse_f64("err_gd")?,
            iters_gd: parse_usize("iters_gd")?,
            coef_err_pinv: parse_opt_f64("coef_err_pinv")?,
            coef_err_gd: parse_opt_f64("coef_err_gd")?,
            gd_converged,
        });
    }
    Ok(records)
}

/// Records rendered as a Markdown table with the core result columns first.
pub fn records_to_markdown(records: &[BenchRecord]) -> String {
    let mut out = String::new();
    out.push_str(
        "| n | d | cond | time_pinv (s) | err_pinv | time_gd (s) | err_gd | iters_gd |\n",
    );
    out.push_str("|---|---|------|---------------|----------|-------------|--------|----------|\n");
    for r in records {
        out.push_str(&format!(
            "| {} | {} | {} | {:.5} | {:.5} | {:.5} | {:.5} | {} |\n",
            r.n, r.d, r.cond, r.time_pinv, r.err_pinv, r.time_gd, r.err_gd, r.iters_gd
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sample_record() -> BenchRecord {
        BenchRecord {
            n: 1000,
            d: 10,
            cond: 0.001,
            time_pinv: 6.7e-4,
            err_pinv: 0.00994,
            time_gd: 0.10293,
            err_gd: 7.63094,
            iters_gd: 10_000,
            coef_err_pinv: Some(51.2),
            coef_err_gd: Some(6.1),
            gd_converged: Some(false),
        }
    }

    #[test]
    fn round_trip_is_bit_identical() {
        let records = vec![sample_record()];
        let text = records_to_csv(&records);
        let back = parse_records_csv(&text).unwrap();
        assert_eq!(back, records);
        assert_eq!(records_to_csv(&back), text);
    }

    #[test]
    fn core_only_header_parses_with_missing_extensions() {
        let text = "n,d,cond,time_pinv,err_pinv,time_gd,err_gd,iters_gd\n\
                    1000,10,1.000,0.00067,0.00994,0.10293,0.00994,5010\n";
        let records = parse_records_csv(text).unwrap();
        assert_eq!(records.len(), 1);
        assert_eq!(records[0].iters_gd, 5010);
        assert_eq!(records[0].coef_err_pinv, None);
        assert_eq!(records[0].gd_converged, None);
    }

    #[test]
    fn truncated_row_reports_its_line() {
        let text = "n,d,cond,time_pinv,err_pinv,time_gd,err_gd,iters_gd\n\
                    1000,10,1.000,0.00067\n";
        match parse_records_csv(text) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn bad_number_reports_line_and_column() {
        let text = "n,d,cond,time_pinv,err_pinv,time_gd,err_gd,iters_gd\n\
                    1000,10,oops,0.00067,0.00994,0.10293,0.00994,5010\n";
        match parse_records_csv(text) {
            Err(Error::Parse { line, msg }) => {
                assert_eq!(line, 2);
                assert!(msg.contains("cond"), "{msg}");
            }
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn missing_required_column_is_a_schema_error() {
        let text = "n,d,cond,time_pinv,err_pinv,time_gd,err_gd\n";
        assert!(matches!(
            parse_records_csv(text),
            Err(Error::Schema(_))
        ));
    }

    #[test]
    fn unknown_column_is_a_schema_error() {
        let text = "n,d,cond,time_pinv,err_pinv,time_gd,err_gd,iters_gd,bogus\n";
        assert!(matches!(parse_records_csv(text), Err(Error::Schema(_))));
    }

    proptest! {
        #[test]
        fn float_fields_survive_round_trips(
            cond in 1e-6f64..1.0,
            t1 in 0.0f64..10.0,
            e1 in 0.0f64..100.0,
            coef in proptest::option::of(0.0f64..1e6),
        ) {
            let rec = BenchRecord {
                n: 5000,
                d: 50,
                cond,
                time_pinv: t1,
                err_pinv: e1,
                time_gd: t1 * 3.0,
                err_gd: e1 * 2.0,
                iters_gd: 10_000,
                coef_err_pinv: coef,
                coef_err_gd: coef.map(|c| c / 3.0),
                gd_converged: Some(coef.is_none()),
            };
            let back = parse_records_csv(&records_to_csv(std::slice::from_ref(&rec))).unwrap();
            prop_assert_eq!(back, vec![rec]);
        }
    }
}
