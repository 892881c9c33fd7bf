//! Batch sweeps over a single parameter, with a deviation summary.

use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;

use crate::config::{ConfigError, RunConfig};
use crate::output::{fmt_val, run_to_csv};
use crate::{io_err, CliError};

/// SystemParams keys accepted by `--key` (numeric fields only).
pub const SWEEPABLE_KEYS: [&str; 11] = [
    "omega_c", "omega_a", "g_ca", "g_cm", "kappa", "gamma", "mu", "n_th", "n_th0", "d_c", "d_m",
];

/// Outcome of one sweep point.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub value: f64,
    pub csv: PathBuf,
    /// `Ok((max_dev_eq8, max_n_b))` or the failure message.
    pub outcome: Result<(Option<f64>, f64), String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepReport {
    pub rows: Vec<SweepRow>,
    pub summary_path: PathBuf,
}

impl SweepReport {
    pub fn any_failed(&self) -> bool {
        self.rows.iter().any(|r| r.outcome.is_err())
    }
}

/// Set a swept parameter on a config copy.
pub fn apply_sweep_key(config: &mut RunConfig, key: &str, value: f64) -> Result<(), ConfigError> {
    let p = &mut config.params;
    match key {
        "omega_c" => p.omega_c = value,
        "omega_a" => p.omega_a = value,
        "g_ca" => p.g_ca = value,
        "g_cm" => p.g_cm = value,
        "kappa" => p.kappa = value,
        "gamma" => p.gamma = value,
        "mu" => p.mu = value,
        "n_th" => p.n_th = value,
        "n_th0" => p.n_th0 = value,
        "d_c" | "d_m" => {
            if value.is_nan() || value.fract() != 0.0 || value < 2.0 {
                return Err(ConfigError::Validation {
                    key: key.into(),
                    message: format!("truncation dimension must be an integer >= 2, got {value}"),
                });
            }
            if key == "d_c" {
                p.d_c = value as usize;
            } else {
                p.d_m = value as usize;
            }
        }
        _ => return Err(ConfigError::UnknownKey { key: key.into() }),
    }
    config.validate()
}

/// Run the base config once per value of `key`, in parallel, writing one CSV
/// per run plus `summary.csv` (columns: value, max_dev_eq8, max_n_b, status).
pub fn sweep(
    base: &RunConfig,
    key: &str,
    values: &[f64],
    out_dir: &Path,
) -> Result<SweepReport, CliError> {
    if values.is_empty() {
        return Err(ConfigError::Validation {
            key: "values".into(),
            message: "at least one value is required".into(),
        }
        .into());
    }
    // fail fast on a bad key before spawning any run
    apply_sweep_key(&mut base.clone(), key, values[0])?;
    fs::create_dir_all(out_dir).map_err(io_err(out_dir))?;

    let rows: Vec<SweepRow> = values
        .par_iter()
        .enumerate()
        .map(|(idx, &value)| {
            let csv = out_dir.join(format!("{key}_{idx:03}.csv"));
            let outcome = (|| -> Result<(Option<f64>, f64), CliError> {
                let mut config = base.clone();
                apply_sweep_key(&mut config, key, value)?;
                let summary = run_to_csv(&config, &csv)?;
                Ok((summary.max_dev_eq8, summary.max_n_b))
            })()
            .map_err(|e| e.to_string());
            SweepRow { value, csv, outcome }
        })
        .collect();

    let mut text = String::from("value,max_dev_eq8,max_n_b,status\n");
    for row in &rows {
        text.push_str(&fmt_val(row.value));
        match &row.outcome {
            Ok((dev, n_b)) => {
                text.push(',');
                if let Some(dev) = dev {
                    text.push_str(&fmt_val(*dev));
                }
                text.push(',');
                text.push_str(&fmt_val(*n_b));
                text.push_str(",ok\n");
            }
            Err(message) => {
                text.push_str(",,,error: ");
                text.push_str(&message.replace(',', ";").replace('\n', " "));
                text.push('\n');
            }
        }
    }
    let summary_path = out_dir.join("summary.csv");
    fs::write(&summary_path, text).map_err(io_err(&summary_path))?;
    Ok(SweepReport { rows, summary_path })
}
