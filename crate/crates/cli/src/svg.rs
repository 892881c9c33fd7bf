//! Standalone SVG line charts from run CSVs.
//!
//! Output is a fixed 800x500 viewBox with linear axes, one polyline per
//! requested column plotted against the first column, tick labels, and a
//! legend. Rendering is a pure function of the input bytes, so identical
//! input produces a byte-identical document.

use std::fs;
use std::path::Path;

use thiserror::Error;

use crate::{io_err, CliError};

#[derive(Debug, Clone, Error, PartialEq)]
pub enum PlotError {
    #[error("missing column {name:?} (available: {available})")]
    MissingColumn { name: String, available: String },
    #[error("malformed CSV at line {line}: {message}")]
    MalformedCsv { line: usize, message: String },
}

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 500.0;
const MARGIN_LEFT: f64 = 72.0;
const MARGIN_RIGHT: f64 = 16.0;
const MARGIN_TOP: f64 = 16.0;
const MARGIN_BOTTOM: f64 = 48.0;

const PALETTE: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf", "#8c564b", "#e377c2",
];

/// Render the named columns of a CSV file into an SVG file.
pub fn render_svg_file(csv_path: &Path, columns: &[String], out_path: &Path) -> Result<(), CliError> {
    let text = fs::read_to_string(csv_path).map_err(io_err(csv_path))?;
    let svg = render_svg(&text, columns)?;
    if let Some(dir) = out_path.parent() {
        if !dir.as_os_str().is_empty() {
            fs::create_dir_all(dir).map_err(io_err(dir))?;
        }
    }
    fs::write(out_path, svg).map_err(io_err(out_path))?;
    Ok(())
}

/// Render the named columns of CSV text as an SVG document.
pub fn render_svg(csv_text: &str, columns: &[String]) -> Result<String, PlotError> {
    let mut lines = csv_text.lines().enumerate();
    let (_, header) = lines.next().ok_or(PlotError::MalformedCsv {
        line: 1,
        message: "empty document".into(),
    })?;
    let names: Vec<&str> = header.split(',').map(str::trim).collect();
    let mut col_idx = Vec::with_capacity(columns.len());
    for want in columns {
        let idx = names.iter().position(|n| n == want).ok_or_else(|| PlotError::MissingColumn {
            name: want.clone(),
            available: names.join(", "),
        })?;
        col_idx.push(idx);
    }

    // first column is the abscissa
    let mut xs: Vec<f64> = Vec::new();
    let mut series: Vec<Vec<Option<f64>>> = vec![Vec::new(); columns.len()];
    for (idx, line) in lines {
        let line_no = idx + 1;
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != names.len() {
            return Err(PlotError::MalformedCsv {
                line: line_no,
                message: format!("expected {} fields, got {}", names.len(), fields.len()),
            });
        }
        let parse = |raw: &str| -> Result<Option<f64>, PlotError> {
            let raw = raw.trim();
            if raw.is_empty() {
                return Ok(None);
            }
            raw.parse::<f64>().map(Some).map_err(|_| PlotError::MalformedCsv {
                line: line_no,
                message: format!("not a number: {raw:?}"),
            })
        };
        let x = parse(fields[0])?.ok_or(PlotError::MalformedCsv {
            line: line_no,
            message: "empty abscissa".into(),
        })?;
        xs.push(x);
        for (slot, &ci) in col_idx.iter().enumerate() {
            series[slot].push(parse(fields[ci])?);
        }
    }

    let (x_min, x_max) = padded_range(xs.iter().copied());
    let (y_min, y_max) = padded_range(series.iter().flatten().filter_map(|v| *v));

    let plot_w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT;
    let plot_h = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM;
    let to_px = |x: f64, y: f64| -> (f64, f64) {
        (
            MARGIN_LEFT + (x - x_min) / (x_max - x_min) * plot_w,
            MARGIN_TOP + (y_max - y) / (y_max - y_min) * plot_h,
        )
    };

    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" \
         viewBox=\"0 0 {WIDTH:.0} {HEIGHT:.0}\" font-family=\"sans-serif\" font-size=\"13\">\n"
    ));
    svg.push_str(&format!(
        "  <rect x=\"{MARGIN_LEFT:.2}\" y=\"{MARGIN_TOP:.2}\" width=\"{plot_w:.2}\" height=\"{plot_h:.2}\" \
         fill=\"white\" stroke=\"black\" stroke-width=\"1\"/>\n"
    ));

    for tick in nice_ticks(x_min, x_max, 6) {
        let (px, _) = to_px(tick, y_min);
        svg.push_str(&format!(
            "  <line x1=\"{px:.2}\" y1=\"{:.2}\" x2=\"{px:.2}\" y2=\"{:.2}\" stroke=\"black\" stroke-width=\"1\"/>\n",
            MARGIN_TOP + plot_h,
            MARGIN_TOP + plot_h + 5.0
        ));
        svg.push_str(&format!(
            "  <text x=\"{px:.2}\" y=\"{:.2}\" text-anchor=\"middle\">{}</text>\n",
            MARGIN_TOP + plot_h + 20.0,
            fmt_tick(tick)
        ));
    }
    for tick in nice_ticks(y_min, y_max, 6) {
        let (_, py) = to_px(x_min, tick);
        svg.push_str(&format!(
            "  <line x1=\"{:.2}\" y1=\"{py:.2}\" x2=\"{:.2}\" y2=\"{py:.2}\" stroke=\"black\" stroke-width=\"1\"/>\n",
            MARGIN_LEFT - 5.0,
            MARGIN_LEFT
        ));
        svg.push_str(&format!(
            "  <text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"end\">{}</text>\n",
            MARGIN_LEFT - 9.0,
            py + 4.0,
            fmt_tick(tick)
        ));
    }
    svg.push_str(&format!(
        "  <text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"middle\">{}</text>\n",
        MARGIN_LEFT + plot_w / 2.0,
        HEIGHT - 10.0,
        escape(names[0])
    ));

    for (slot, name) in columns.iter().enumerate() {
        let color = PALETTE[slot % PALETTE.len()];
        let mut points = String::new();
        for (x, y) in xs.iter().zip(&series[slot]) {
            if let Some(y) = y {
                let (px, py) = to_px(*x, *y);
                if !points.is_empty() {
                    points.push(' ');
                }
                points.push_str(&format!("{px:.2},{py:.2}"));
            }
        }
        svg.push_str(&format!(
            "  <polyline fill=\"none\" stroke=\"{color}\" stroke-width=\"1.5\" points=\"{points}\"/>\n"
        ));
        let ly = MARGIN_TOP + 18.0 + 18.0 * slot as f64;
        let lx = WIDTH - MARGIN_RIGHT - 150.0;
        svg.push_str(&format!(
            "  <line x1=\"{lx:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" stroke=\"{color}\" stroke-width=\"1.5\"/>\n",
            ly - 4.0,
            lx + 24.0,
            ly - 4.0
        ));
        svg.push_str(&format!(
            "  <text x=\"{:.2}\" y=\"{ly:.2}\">{}</text>\n",
            lx + 30.0,
            escape(name)
        ));
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}

fn padded_range(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for v in values {
        lo = lo.min(v);
        hi = hi.max(v);
    }
    if !lo.is_finite() || !hi.is_finite() {
        return (0.0, 1.0);
    }
    if lo == hi {
        return (lo - 1.0, hi + 1.0);
    }
    let pad = 0.05 * (hi - lo);
    (lo - pad, hi + pad)
}

/// Round tick positions at 1-2-5 spacing covering the range interior.
fn nice_ticks(lo: f64, hi: f64, target: usize) -> Vec<f64> {
    let span = hi - lo;
    let raw_step = span / target as f64;
    let mag = 10f64.powf(raw_step.log10().floor());
    let norm = raw_step / mag;
    let step = if norm <= 1.0 {
        1.0
    } else if norm <= 2.0 {
        2.0
    } else if norm <= 5.0 {
        5.0
    } else {
        10.0
    } * mag;
    let mut ticks = Vec::new();
    let mut t = (lo / step).ceil() * step;
    while t <= hi + 1e-9 * span {
        // snap near-zero ticks to zero to avoid -0 labels
        ticks.push(if t.abs() < step * 1e-9 { 0.0 } else { t });
        t += step;
    }
    ticks
}

fn fmt_tick(v: f64) -> String {
    if v == 0.0 {
        return "0".to_string();
    }
    let formatted = format!("{v:.6}");
    let trimmed = formatted.trim_end_matches('0').trim_end_matches('.');
    trimmed.to_string()
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
