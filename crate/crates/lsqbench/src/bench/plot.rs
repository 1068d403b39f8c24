//! Minimal deterministic SVG line charts.
//!
//! Output is a self-contained SVG document with axes, tick labels, a legend,
//! and one polyline per series. Identical input produces byte-identical
//! output, so rendered files are safe to diff.

use std::fs;
use std::path::Path;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    pub label: String,
    pub xs: Vec<f64>,
    pub ys: Vec<f64>,
}

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 500.0;
const MARGIN_LEFT: f64 = 80.0;
const MARGIN_RIGHT: f64 = 190.0;
const MARGIN_TOP: f64 = 30.0;
const MARGIN_BOTTOM: f64 = 70.0;

const PALETTE: [&str; 6] = [
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b",
];

/// Renders the chart to `path`. With `log_y` the vertical axis is base-10
/// logarithmic (every y must then be positive).
pub fn render_plot(
    series: &[Series],
    x_label: &str,
    y_label: &str,
    log_y: bool,
    path: impl AsRef<Path>,
) -> Result<()> {
    let svg = plot_svg(series, x_label, y_label, log_y)?;
    let path = path.as_ref();
    fs::write(path, svg).map_err(|e| Error::io(path.display().to_string(), e))
}

pub fn plot_svg(series: &[Series], x_label: &str, y_label: &str, log_y: bool) -> Result<String> {
    if series.is_empty() {
        return Err(Error::Config("plot needs at least one series".into()));
    }
    for s in series {
        if s.xs.is_empty() {
            return Err(Error::Config(format!("series '{}' is empty", s.label)));
        }
        if s.xs.len() != s.ys.len() {
            return Err(Error::Config(format!(
                "series '{}' has {} x values but {} y values",
                s.label,
                s.xs.len(),
                s.ys.len()
            )));
        }
        if log_y && s.ys.iter().any(|&y| y <= 0.0) {
            return Err(Error::Config(format!(
                "series '{}' has non-positive values; log scale needs y > 0",
                s.label
            )));
        }
        if s.xs.iter().chain(&s.ys).any(|v| !v.is_finite()) {
            return Err(Error::Config(format!(
                "series '{}' contains non-finite values",
                s.label
            )));
        }
    }

    let ty = |y: f64| if log_y { y.log10() } else { y };
    let (mut x_min, mut x_max) = (f64::INFINITY, f64::NEG_INFINITY);
    let (mut y_min, mut y_max) = (f64::INFINITY, f64::NEG_INFINITY);
    for s in series {
        for &x in &s.xs {
            x_min = x_min.min(x);
            x_max = x_max.max(x);
        }
        for &y in &s.ys {
            y_min = y_min.min(ty(y));
            y_max = y_max.max(ty(y));
        }
    }
    if x_min == x_max {
        x_min -= 1.0;
        x_max += 1.0;
    }
    if y_min == y_max {
        y_min -= 1.0;
        y_max += 1.0;
    }

    let plot_w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT;
    let plot_h = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM;
    let px = |x: f64| MARGIN_LEFT + (x - x_min) / (x_max - x_min) * plot_w;
    let py = |y: f64| MARGIN_TOP + plot_h - (y - y_min) / (y_max - y_min) * plot_h;

    let mut svg = String::new();
    svg.push_str(&format!(
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    ));
    svg.push('\n');
    svg.push_str(r#"<rect width="100%" height="100%" fill="white"/>"#);
    svg.push('\n');

    // Axes box.
    svg.push_str(&format!(
        r#"<path d="M {l:.2} {t:.2} L {l:.2} {b:.2} L {r:.2} {b:.2}" fill="none" stroke="black" stroke-width="1.5"/>"#,
        l = MARGIN_LEFT,
        t = MARGIN_TOP,
        b = MARGIN_TOP + plot_h,
        r = MARGIN_LEFT + plot_w,
    ));
    svg.push('\n');

    for (x, label) in linear_ticks(x_min, x_max) {
        let xp = px(x);
        svg.push_str(&format!(
            r#"<path d="M {xp:.2} {b:.2} L {xp:.2} {b2:.2}" stroke="black"/>"#,
            b = MARGIN_TOP + plot_h,
            b2 = MARGIN_TOP + plot_h + 6.0,
        ));
        svg.push_str(&format!(
            r#"<text x="{xp:.2}" y="{ty:.2}" font-family="sans-serif" font-size="12" text-anchor="middle">{label}</text>"#,
            ty = MARGIN_TOP + plot_h + 20.0,
        ));
        svg.push('\n');
    }
    let y_ticks = if log_y {
        log_ticks(y_min, y_max)
    } else {
        linear_ticks(y_min, y_max)
    };
    for (y, label) in y_ticks {
        let yp = py(y);
        svg.push_str(&format!(
            r#"<path d="M {l:.2} {yp:.2} L {l2:.2} {yp:.2}" stroke="black"/>"#,
            l = MARGIN_LEFT - 6.0,
            l2 = MARGIN_LEFT,
        ));
        svg.push_str(&format!(
            r#"<text x="{tx:.2}" y="{typ:.2}" font-family="sans-serif" font-size="12" text-anchor="end">{label}</text>"#,
            tx = MARGIN_LEFT - 10.0,
            typ = yp + 4.0,
        ));
        svg.push('\n');
    }

    svg.push_str(&format!(
        r#"<text x="{x:.2}" y="{y:.2}" font-family="sans-serif" font-size="14" text-anchor="middle">{label}</text>"#,
        x = MARGIN_LEFT + plot_w / 2.0,
        y = HEIGHT - 20.0,
        label = escape(x_label),
    ));
    svg.push('\n');
    svg.push_str(&format!(
        r#"<text x="20" y="{y:.2}" font-family="sans-serif" font-size="14" text-anchor="middle" transform="rotate(-90 20 {y:.2})">{label}</text>"#,
        y = MARGIN_TOP + plot_h / 2.0,
        label = escape(&if log_y {
            format!("{y_label} (log scale)")
        } else {
            y_label.to_string()
        }),
    ));
    svg.push('\n');

    for (i, s) in series.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        // Points sorted by x so lines read left to right.
        let mut pts: Vec<(f64, f64)> = s.xs.iter().zip(&s.ys).map(|(&x, &y)| (x, ty(y))).collect();
        pts.sort_by(|a, b| a.0.total_cmp(&b.0));
        let path: Vec<String> = pts
            .iter()
            .map(|(x, y)| format!("{:.2},{:.2}", px(*x), py(*y)))
            .collect();
        svg.push_str(&format!(
            r#"<polyline points="{}" fill="none" stroke="{color}" stroke-width="2"/>"#,
            path.join(" ")
        ));
        svg.push('\n');
        for (x, y) in &pts {
            svg.push_str(&format!(
                r#"<circle cx="{:.2}" cy="{:.2}" r="3" fill="{color}"/>"#,
                px(*x),
                py(*y)
            ));
        }
        svg.push('\n');

        // Legend entry.
        let ly = MARGIN_TOP + 14.0 + 20.0 * i as f64;
        let lx = MARGIN_LEFT + plot_w + 16.0;
        svg.push_str(&format!(
            r#"<path d="M {lx:.2} {ly:.2} L {lx2:.2} {ly:.2}" stroke="{color}" stroke-width="2"/>"#,
            lx2 = lx + 24.0,
        ));
        svg.push_str(&format!(
            r#"<text x="{tx:.2}" y="{ty2:.2}" font-family="sans-serif" font-size="12">{label}</text>"#,
            tx = lx + 30.0,
            ty2 = ly + 4.0,
            label = escape(&s.label),
        ));
        svg.push('\n');
    }

    svg.push_str("</svg>\n");
    Ok(svg)
}

/// Around five round-valued ticks covering [min, max].
fn linear_ticks(min: f64, max: f64) -> Vec<(f64, String)> {
    let span = max - min;
    let raw_step = span / 4.0;
    let mag = 10f64.powf(raw_step.log10().floor());
    let norm = raw_step / mag;
    let step = if norm <= 1.0 {
        mag
    } else if norm <= 2.0 {
        2.0 * mag
    } else if norm <= 5.0 {
        5.0 * mag
    } else {
        10.0 * mag
    };
    let decimals = (-(step.log10().floor() as i32)).max(0) as usize;
    let mut ticks = Vec::new();
    let mut k = (min / step).ceil() as i64;
    while (k as f64) * step <= max + 1e-9 * span {
        let v = k as f64 * step;
        ticks.push((v, format!("{v:.decimals$}")));
        k += 1;
    }
    ticks
}

/// Decade ticks for a log10-transformed axis; falls back to linear ticks on
/// the transformed values when the span is under one decade.
fn log_ticks(log_min: f64, log_max: f64) -> Vec<(f64, String)> {
    let lo = log_min.ceil() as i64;
    let hi = log_max.floor() as i64;
    if hi < lo {
        return linear_ticks(log_min, log_max)
            .into_iter()
            .map(|(v, _)| (v, format!("{:.3e}", 10f64.powf(v))))
            .collect();
    }
    (lo..=hi)
        .map(|e| (e as f64, format!("{}", 10f64.powi(e as i32))))
        .collect()
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_point_series_renders_one_polyline() {
        let s = Series {
            label: "gd".into(),
            xs: vec![0.0, 1.0],
            ys: vec![2.0, 3.0],
        };
        let svg = plot_svg(&[s], "x", "y", false).unwrap();
        assert_eq!(svg.matches("<polyline").count(), 1);
        assert!(svg.starts_with("<svg"));
        assert!(svg.trim_end().ends_with("</svg>"));
    }

    #[test]
    fn identical_input_is_byte_identical() {
        let series = vec![
            Series {
                label: "a".into(),
                xs: vec![1.0, 2.0, 4.0],
                ys: vec![1.0, 0.5, 2.0],
            },
            Series {
                label: "b".into(),
                xs: vec![1.0, 2.0, 4.0],
                ys: vec![2.0, 2.5, 1.0],
            },
        ];
        let a = plot_svg(&series, "n", "seconds", false).unwrap();
        let b = plot_svg(&series, "n", "seconds", false).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn empty_series_list_is_rejected() {
        assert!(matches!(
            plot_svg(&[], "x", "y", false),
            Err(Error::Config(_))
        ));
    }

    #[test]
    fn mismatched_lengths_are_rejected() {
        let s = Series {
            label: "bad".into(),
            xs: vec![1.0],
            ys: vec![1.0, 2.0],
        };
        assert!(matches!(
            plot_svg(&[s], "x", "y", false),
            Err(Error::Config(_))
        ));
    }

    #[test]
    fn log_scale_requires_positive_values() {
        let s = Series {
            label: "bad".into(),
            xs: vec![1.0, 2.0],
            ys: vec![1.0, 0.0],
        };
        assert!(matches!(
            plot_svg(&[s], "x", "y", true),
            Err(Error::Config(_))
        ));
    }

    #[test]
    fn log_scale_renders_decade_ticks() {
        let s = Series {
            label: "iters".into(),
            xs: vec![0.001, 1.0],
            ys: vec![10.0, 10000.0],
        };
        let svg = plot_svg(&[s], "cond", "iters_gd", true).unwrap();
        assert!(svg.contains(">10<") && svg.contains(">10000<"), "{svg}");
    }
}
