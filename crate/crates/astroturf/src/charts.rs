//! Minimal deterministic SVG charts: plain text output with no timestamps,
//! so identical data yields identical files.

use std::fmt::Write as _;

use astroturf_core::metrics::RocCurve;

use crate::analytics::{RankedCounts, TimeSeries};

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 400.0;
const MARGIN: f64 = 50.0;

const PALETTE: [&str; 6] = [
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b",
];

fn svg_open(title: &str) -> String {
    format!(
        concat!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" ",
            "viewBox=\"0 0 {w} {h}\">\n",
            "<rect width=\"{w}\" height=\"{h}\" fill=\"white\"/>\n",
            "<text x=\"{tx}\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">{title}</text>\n"
        ),
        w = WIDTH,
        h = HEIGHT,
        tx = WIDTH / 2.0,
        title = title,
    )
}

fn axes() -> String {
    format!(
        concat!(
            "<line x1=\"{m}\" y1=\"{b}\" x2=\"{r}\" y2=\"{b}\" stroke=\"black\"/>\n",
            "<line x1=\"{m}\" y1=\"{t}\" x2=\"{m}\" y2=\"{b}\" stroke=\"black\"/>\n"
        ),
        m = MARGIN,
        b = HEIGHT - MARGIN,
        r = WIDTH - MARGIN,
        t = MARGIN,
    )
}

fn fmt(v: f64) -> String {
    format!("{:.2}", v)
}

/// Line chart with one polyline per tweet type.
pub fn timeseries_svg(series: &TimeSeries, title: &str) -> String {
    let mut out = svg_open(title);
    out.push_str(&axes());
    let n_bins = series.bin_starts.len();
    let max_count = series
        .series
        .values()
        .flatten()
        .copied()
        .max()
        .unwrap_or(1)
        .max(1) as f64;
    let plot_w = WIDTH - 2.0 * MARGIN;
    let plot_h = HEIGHT - 2.0 * MARGIN;
    for (i, (name, counts)) in series.series.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let mut points = String::new();
        for (bin, &count) in counts.iter().enumerate() {
            let x = MARGIN + plot_w * bin as f64 / (n_bins.max(2) - 1) as f64;
            let y = HEIGHT - MARGIN - plot_h * count as f64 / max_count;
            let _ = write!(points, "{},{} ", fmt(x), fmt(y));
        }
        let _ = writeln!(
            out,
            "<polyline fill=\"none\" stroke=\"{color}\" points=\"{}\"/>",
            points.trim_end()
        );
        let _ = writeln!(
            out,
            "<text x=\"{}\" y=\"{}\" font-size=\"12\" fill=\"{color}\">{name}</text>",
            WIDTH - MARGIN + 2.0,
            MARGIN + 14.0 * i as f64,
        );
    }
    out.push_str("</svg>\n");
    out
}

/// Horizontal bar chart of ranked counts.
pub fn ranked_svg(counts: &RankedCounts, title: &str) -> String {
    let mut out = svg_open(title);
    let max = counts.entries.first().map(|e| e.1).unwrap_or(1).max(1) as f64;
    let plot_w = WIDTH - 2.0 * MARGIN - 120.0;
    let n = counts.entries.len().max(1);
    let bar_h = ((HEIGHT - 2.0 * MARGIN) / n as f64).min(28.0);
    for (i, (key, count)) in counts.entries.iter().enumerate() {
        let y = MARGIN + i as f64 * bar_h;
        let w = plot_w * *count as f64 / max;
        let _ = writeln!(
            out,
            "<rect x=\"{x}\" y=\"{y}\" width=\"{w}\" height=\"{h}\" fill=\"{c}\"/>",
            x = fmt(MARGIN + 120.0),
            y = fmt(y),
            w = fmt(w),
            h = fmt(bar_h - 4.0),
            c = PALETTE[0],
        );
        let _ = writeln!(
            out,
            "<text x=\"{x}\" y=\"{ty}\" font-size=\"11\" text-anchor=\"end\">{key} ({count})</text>",
            x = fmt(MARGIN + 112.0),
            ty = fmt(y + bar_h / 2.0 + 2.0),
        );
    }
    out.push_str("</svg>\n");
    out
}

/// Two-panel ROC: full range and the FPR <= 0.1 zoom.
pub fn roc_svg(curve: &RocCurve, title: &str) -> String {
    let mut out = svg_open(title);
    let panel_w = (WIDTH - 3.0 * MARGIN) / 2.0;
    let panel_h = HEIGHT - 2.0 * MARGIN;
    for (panel, fpr_limit) in [(0usize, 1.0f64), (1, 0.1)] {
        let x0 = MARGIN + panel as f64 * (panel_w + MARGIN);
        let _ = writeln!(
            out,
            "<rect x=\"{x}\" y=\"{y}\" width=\"{w}\" height=\"{h}\" fill=\"none\" stroke=\"black\"/>",
            x = fmt(x0),
            y = fmt(MARGIN),
            w = fmt(panel_w),
            h = fmt(panel_h),
        );
        let mut points = String::new();
        for p in &curve.points {
            if p.fpr > fpr_limit {
                break;
            }
            let x = x0 + panel_w * p.fpr / fpr_limit;
            let y = HEIGHT - MARGIN - panel_h * p.tpr;
            let _ = write!(points, "{},{} ", fmt(x), fmt(y));
        }
        let _ = writeln!(
            out,
            "<polyline fill=\"none\" stroke=\"{}\" points=\"{}\"/>",
            PALETTE[3],
            points.trim_end()
        );
        let label = if panel == 0 {
            format!("AUC {:.3}", curve.auc)
        } else {
            format!("bounded {:.3}", curve.bounded_auc)
        };
        let _ = writeln!(
            out,
            "<text x=\"{x}\" y=\"{y}\" font-size=\"12\">{label}</text>",
            x = fmt(x0 + 6.0),
            y = fmt(MARGIN + 16.0),
        );
    }
    out.push_str("</svg>\n");
    out
}

/// Bar chart over (label, count) pairs, used for the histogram outputs.
pub fn histogram_svg(bins: &[(String, u64)], title: &str) -> String {
    let ranked = RankedCounts {
        entries: bins.to_vec(),
    };
    ranked_svg(&ranked, title)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeMap;

    #[test]
    fn charts_are_deterministic_text() {
        let series = TimeSeries {
            bin_width_secs: 86_400,
            origin: 0,
            series: BTreeMap::from([
                ("original".to_string(), vec![3, 5, 2]),
                ("retweet".to_string(), vec![1, 0, 4]),
            ]),
            bin_starts: vec![0, 86_400, 172_800],
        };
        let a = timeseries_svg(&series, "types");
        let b = timeseries_svg(&series, "types");
        assert_eq!(a, b);
        assert!(a.starts_with("<svg"));
        assert!(a.ends_with("</svg>\n"));
        assert!(!a.contains("date"));
    }

    #[test]
    fn ranked_chart_contains_keys() {
        let counts = RankedCounts {
            entries: vec![("afd".to_string(), 10), ("spd".to_string(), 4)],
        };
        let svg = ranked_svg(&counts, "tags");
        assert!(svg.contains("afd (10)"));
    }
}
