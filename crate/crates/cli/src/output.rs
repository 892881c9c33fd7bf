//! Run execution and CSV emission.

use std::fs;
use std::path::Path;

use optomech::analytic::{delta_p_general, delta_p_resonant};
use optomech::hilbert::initial_state;
use optomech::lindblad::{integrate, TimeSeries};

use crate::config::RunConfig;
use crate::{io_err, CliError};

/// Exact column set of a run CSV.
pub const CSV_HEADER: &str = "t,delta_p_num,delta_p_eq8,delta_p_eq9,n_b,n_c,trace_error,min_eig";

/// Fixed 12-decimal-place value format; deterministic across platforms.
pub fn fmt_val(x: f64) -> String {
    let s = format!("{x:.12}");
    if s == "-0.000000000000" {
        "0.000000000000".to_string()
    } else {
        s
    }
}

/// Figures of a completed run used by the sweep summary.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RunSummary {
    pub samples: usize,
    /// Sup-norm deviation of the numerical inversion from the general closed
    /// form; absent when the closed form is undefined (g_cm = 0) or not
    /// emitted.
    pub max_dev_eq8: Option<f64>,
    pub max_n_b: f64,
    pub max_trace_error: f64,
    pub min_eig: f64,
}

/// Render a completed run as CSV text (header plus one row per sample,
/// `\n` line endings).
pub fn render_csv(series: &TimeSeries, config: &RunConfig) -> (String, RunSummary) {
    let emit_eq8 = config.emit_eq8 && config.params.g_cm > 0.0;
    let emit_eq9 = config.emit_eq9;
    let mut text = String::with_capacity(series.rows.len() * 96 + CSV_HEADER.len());
    text.push_str(CSV_HEADER);
    text.push('\n');
    let mut summary = RunSummary {
        samples: series.rows.len(),
        max_dev_eq8: None,
        max_n_b: 0.0,
        max_trace_error: 0.0,
        min_eig: f64::INFINITY,
    };
    for row in &series.rows {
        let eq8 = emit_eq8.then(|| {
            delta_p_general(row.t, &config.params).expect("g_cm > 0 checked above")
        });
        let eq9 = emit_eq9.then(|| delta_p_resonant(row.t, &config.params));
        text.push_str(&fmt_val(row.t));
        text.push(',');
        text.push_str(&fmt_val(row.delta_p));
        text.push(',');
        if let Some(v) = eq8 {
            text.push_str(&fmt_val(v));
        }
        text.push(',');
        if let Some(v) = eq9 {
            text.push_str(&fmt_val(v));
        }
        text.push(',');
        text.push_str(&fmt_val(row.n_b));
        text.push(',');
        text.push_str(&fmt_val(row.n_c));
        text.push(',');
        text.push_str(&fmt_val(row.trace_error));
        text.push(',');
        text.push_str(&fmt_val(row.min_eig));
        text.push('\n');

        if let Some(v) = eq8 {
            let dev = (row.delta_p - v).abs();
            summary.max_dev_eq8 = Some(summary.max_dev_eq8.unwrap_or(0.0).max(dev));
        }
        summary.max_n_b = summary.max_n_b.max(row.n_b);
        summary.max_trace_error = summary.max_trace_error.max(row.trace_error.abs());
        summary.min_eig = summary.min_eig.min(row.min_eig);
    }
    (text, summary)
}

/// Execute a run and write its CSV to `csv_path`.
pub fn run_to_csv(config: &RunConfig, csv_path: &Path) -> Result<RunSummary, CliError> {
    config.validate()?;
    let series = execute(config)?;
    let (text, summary) = render_csv(&series, config);
    if let Some(dir) = csv_path.parent() {
        if !dir.as_os_str().is_empty() {
            fs::create_dir_all(dir).map_err(io_err(dir))?;
        }
    }
    fs::write(csv_path, text).map_err(io_err(csv_path))?;
    Ok(summary)
}

/// Execute a run, returning the sampled series.
pub fn execute(config: &RunConfig) -> Result<TimeSeries, CliError> {
    let spec = config.evolution_spec();
    let rho0 = initial_state(&spec.params).map_err(optomech::lindblad::EngineError::from)?;
    Ok(integrate(&rho0, &spec)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::parse_config;

    #[test]
    fn value_format_matches_contract() {
        assert_eq!(fmt_val(0.0), "0.000000000000");
        assert_eq!(fmt_val(1.0), "1.000000000000");
        assert_eq!(fmt_val(-1e-15), "0.000000000000");
        assert_eq!(fmt_val(-0.25), "-0.250000000000");
        assert_eq!(fmt_val(125.66370614359172), "125.663706143592");
    }

    #[test]
    fn short_run_csv_shape_and_initial_row() {
        let config = parse_config("t_end = 1\nsample_stride = 50\nd_m = 3\n").unwrap();
        let series = execute(&config).unwrap();
        let (text, summary) = render_csv(&series, &config);
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), CSV_HEADER);
        let first = lines.next().unwrap();
        let fields: Vec<&str> = first.split(',').collect();
        assert_eq!(fields.len(), 8);
        assert_eq!(fields[0], "0.000000000000");
        assert_eq!(fields[1], "1.000000000000");
        assert_eq!(fields[2], "1.000000000000"); // eq8 at t = 0
        assert_eq!(fields[3], "1.000000000000"); // eq9 at t = 0
        assert!(summary.samples >= 2);
        assert!(text.ends_with('\n'));
    }

    #[test]
    fn analytic_columns_empty_when_toggled_off() {
        let config = parse_config("t_end = 1\nsample_stride = 100\nemit_eq8 = false\nemit_eq9 = false\nd_m = 3\n").unwrap();
        let series = execute(&config).unwrap();
        let (text, summary) = render_csv(&series, &config);
        let row = text.lines().nth(1).unwrap();
        let fields: Vec<&str> = row.split(',').collect();
        assert_eq!(fields[2], "");
        assert_eq!(fields[3], "");
        assert_eq!(summary.max_dev_eq8, None);
    }

    #[test]
    fn eq8_column_empty_without_optomechanical_coupling() {
        let config = parse_config("g_cm = 0\nt_end = 1\nsample_stride = 100\nd_m = 3\n").unwrap();
        let series = execute(&config).unwrap();
        let (text, _) = render_csv(&series, &config);
        let row = text.lines().nth(1).unwrap();
        let fields: Vec<&str> = row.split(',').collect();
        assert_eq!(fields[2], "");
        assert_ne!(fields[3], ""); // the resonant form has no precondition
    }

    #[test]
    fn csv_is_bit_identical_across_runs() {
        let config = parse_config("t_end = 2\nd_m = 4\nkappa = 0.02\n").unwrap();
        let a = render_csv(&execute(&config).unwrap(), &config).0;
        let b = render_csv(&execute(&config).unwrap(), &config).0;
        assert_eq!(a, b);
    }
}
