//! Minimal self-contained SVG line charts for the emitted CSVs.
//!
//! Rendering is fully deterministic: fixed canvas, fixed palette, fixed
//! number formatting. The x axis is the first CSV column; one polyline is
//! drawn per (input file, selected column) pair.

use crate::csvio::Table;
use crate::{CliError, CliResult};

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 500.0;
const MARGIN_L: f64 = 72.0;
const MARGIN_R: f64 = 24.0;
const MARGIN_T: f64 = 24.0;
const MARGIN_B: f64 = 56.0;

const PALETTE: &[&str] = &[
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf", "#e377c2",
];

/// One curve: a label and its (x, y) samples.
pub struct Series {
    pub label: String,
    pub points: Vec<(f64, f64)>,
}

/// Extracts the selected columns of a parsed table against its first column.
pub fn table_series(table: &Table, source: &str, columns: &[String]) -> CliResult<Vec<Series>> {
    if table.rows.is_empty() {
        return Err(CliError::Config(format!("{source}: CSV has no data rows")));
    }
    let x = table.column(0);
    let mut out = Vec::new();
    for name in columns {
        let idx = table.column_index(name)?;
        let y = table.column(idx);
        out.push(Series {
            label: format!("{source}:{name}"),
            points: x.iter().copied().zip(y).collect(),
        });
    }
    Ok(out)
}

fn fmt_tick(v: f64) -> String {
    let s = format!("{v:.4}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s.is_empty() || s == "-" {
        "0".to_string()
    } else {
        s.to_string()
    }
}

fn range_of(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for v in values {
        lo = lo.min(v);
        hi = hi.max(v);
    }
    if !lo.is_finite() || !hi.is_finite() {
        return (0.0, 1.0);
    }
    if (hi - lo).abs() < 1e-300 {
        (lo - 0.5, hi + 0.5)
    } else {
        (lo, hi)
    }
}

/// Renders the curves into a standalone SVG 1.1 document.
pub fn render(series: &[Series], x_label: &str, y_label: &str) -> CliResult<String> {
    if series.is_empty() || series.iter().all(|s| s.points.is_empty()) {
        return Err(CliError::Config("nothing to plot: no data rows".into()));
    }
    let (x_lo, x_hi) = range_of(series.iter().flat_map(|s| s.points.iter().map(|p| p.0)));
    let (y_lo_raw, y_hi_raw) = range_of(series.iter().flat_map(|s| s.points.iter().map(|p| p.1)));
    let pad = 0.05 * (y_hi_raw - y_lo_raw);
    let (y_lo, y_hi) = (y_lo_raw - pad, y_hi_raw + pad);

    let plot_w = WIDTH - MARGIN_L - MARGIN_R;
    let plot_h = HEIGHT - MARGIN_T - MARGIN_B;
    let sx = |x: f64| MARGIN_L + (x - x_lo) / (x_hi - x_lo) * plot_w;
    let sy = |y: f64| MARGIN_T + (y_hi - y) / (y_hi - y_lo) * plot_h;

    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{WIDTH}\" height=\"{HEIGHT}\" viewBox=\"0 0 {WIDTH} {HEIGHT}\">\n"
    ));
    svg.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");

    // Axes.
    svg.push_str(&format!(
        "<line x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" stroke=\"black\" stroke-width=\"1\"/>\n",
        MARGIN_L, MARGIN_T, MARGIN_L, HEIGHT - MARGIN_B
    ));
    svg.push_str(&format!(
        "<line x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" stroke=\"black\" stroke-width=\"1\"/>\n",
        MARGIN_L, HEIGHT - MARGIN_B, WIDTH - MARGIN_R, HEIGHT - MARGIN_B
    ));

    // Ticks and grid.
    let n_ticks = 6;
    for i in 0..n_ticks {
        let f = i as f64 / (n_ticks - 1) as f64;
        let xv = x_lo + f * (x_hi - x_lo);
        let yv = y_lo + f * (y_hi - y_lo);
        let xp = sx(xv);
        let yp = sy(yv);
        svg.push_str(&format!(
            "<line x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" stroke=\"#cccccc\" stroke-width=\"0.5\"/>\n",
            xp, MARGIN_T, xp, HEIGHT - MARGIN_B
        ));
        svg.push_str(&format!(
            "<line x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" stroke=\"#cccccc\" stroke-width=\"0.5\"/>\n",
            MARGIN_L, yp, WIDTH - MARGIN_R, yp
        ));
        svg.push_str(&format!(
            "<text x=\"{:.2}\" y=\"{:.2}\" font-size=\"11\" text-anchor=\"middle\" fill=\"black\">{}</text>\n",
            xp,
            HEIGHT - MARGIN_B + 16.0,
            fmt_tick(xv)
        ));
        svg.push_str(&format!(
            "<text x=\"{:.2}\" y=\"{:.2}\" font-size=\"11\" text-anchor=\"end\" fill=\"black\">{}</text>\n",
            MARGIN_L - 6.0,
            yp + 4.0,
            fmt_tick(yv)
        ));
    }

    // Axis labels.
    svg.push_str(&format!(
        "<text x=\"{:.2}\" y=\"{:.2}\" font-size=\"13\" text-anchor=\"middle\" fill=\"black\">{}</text>\n",
        MARGIN_L + plot_w / 2.0,
        HEIGHT - 12.0,
        x_label
    ));
    svg.push_str(&format!(
        "<text x=\"16\" y=\"{:.2}\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 16 {:.2})\" fill=\"black\">{}</text>\n",
        MARGIN_T + plot_h / 2.0,
        MARGIN_T + plot_h / 2.0,
        y_label
    ));

    // Curves.
    for (i, s) in series.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let pts: Vec<String> = s
            .points
            .iter()
            .map(|&(x, y)| format!("{:.3},{:.3}", sx(x), sy(y)))
            .collect();
        svg.push_str(&format!(
            "<polyline fill=\"none\" stroke=\"{}\" stroke-width=\"1.5\" points=\"{}\"/>\n",
            color,
            pts.join(" ")
        ));
    }

    // Legend.
    for (i, s) in series.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let y = MARGIN_T + 14.0 + 16.0 * i as f64;
        svg.push_str(&format!(
            "<line x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" stroke=\"{}\" stroke-width=\"2\"/>\n",
            MARGIN_L + 8.0,
            y,
            MARGIN_L + 28.0,
            y,
            color
        ));
        svg.push_str(&format!(
            "<text x=\"{:.2}\" y=\"{:.2}\" font-size=\"11\" fill=\"black\">{}</text>\n",
            MARGIN_L + 34.0,
            y + 4.0,
            s.label
        ));
    }

    svg.push_str("</svg>\n");
    Ok(svg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::csvio::parse_csv;

    #[test]
    fn renders_deterministically() {
        let table = parse_csv("L,I3\n1,0\n2,-0.1\n3,-0.05\n").unwrap();
        let series = table_series(&table, "demo", &["I3".to_string()]).unwrap();
        let a = render(&series, "L", "I3").unwrap();
        let series2 = table_series(&table, "demo", &["I3".to_string()]).unwrap();
        let b = render(&series2, "L", "I3").unwrap();
        assert_eq!(a, b);
        assert!(a.starts_with("<svg"));
        assert!(a.contains("polyline"));
        assert!(a.ends_with("</svg>\n"));
    }

    #[test]
    fn empty_series_is_an_error() {
        let table = parse_csv("L,I3\n").unwrap();
        assert!(table_series(&table, "demo", &["I3".to_string()]).is_err());
    }

    #[test]
    fn missing_column_is_an_error() {
        let table = parse_csv("L,I3\n1,0\n").unwrap();
        assert!(table_series(&table, "demo", &["I9".to_string()]).is_err());
    }
}
