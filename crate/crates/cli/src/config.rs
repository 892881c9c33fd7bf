//! Flat `key = value` run configuration and the bundled presets.
//!
//! Format: one `key = value` per line, `#` starts a comment, UTF-8, no
//! nesting. Unknown keys are rejected; omitted keys take defaults (the
//! resonant closed-system preset). All frequencies and rates are in units of
//! omega_m, times in 1/omega_m.

use std::fmt::Write as _;
use std::str::FromStr;

use optomech::hilbert::{Frame, SystemParams};
use optomech::lindblad::{default_t_end, EvolutionSpec, DEFAULT_DT, DEFAULT_SAMPLE_STRIDE, MAX_DT};
use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum ConfigError {
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("invalid value for {key}: {message}")]
    Validation { key: String, message: String },
    #[error("unknown key {key:?}")]
    UnknownKey { key: String },
    #[error("unknown preset {name:?} (expected fig2, fig3, or fig4)")]
    UnknownPreset { name: String },
}

/// A fully resolved run description.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub params: SystemParams,
    pub t_end: f64,
    pub dt: f64,
    pub sample_stride: usize,
    /// Emit the general closed-form inversion column.
    pub emit_eq8: bool,
    /// Emit the resonant closed-form inversion column.
    pub emit_eq9: bool,
    /// Output CSV path; when relative it is resolved against the output
    /// directory chosen on the command line.
    pub out_csv: Option<String>,
}

impl Default for RunConfig {
    fn default() -> Self {
        let params = SystemParams::default();
        let t_end = default_t_end(&params);
        Self {
            params,
            t_end,
            dt: DEFAULT_DT,
            sample_stride: DEFAULT_SAMPLE_STRIDE,
            emit_eq8: true,
            emit_eq9: true,
            out_csv: None,
        }
    }
}

impl RunConfig {
    pub fn evolution_spec(&self) -> EvolutionSpec {
        EvolutionSpec {
            params: self.params.clone(),
            t_end: self.t_end,
            dt: self.dt,
            sample_stride: self.sample_stride,
        }
    }

    /// Range checks with errors that name the offending key.
    pub fn validate(&self) -> Result<(), ConfigError> {
        let p = &self.params;
        for (key, value) in [
            ("g_ca", p.g_ca),
            ("g_cm", p.g_cm),
            ("kappa", p.kappa),
            ("gamma", p.gamma),
            ("mu", p.mu),
            ("n_th", p.n_th),
            ("n_th0", p.n_th0),
        ] {
            if value.is_nan() || value < 0.0 {
                return Err(ConfigError::Validation {
                    key: key.into(),
                    message: format!("must be nonnegative, got {value}"),
                });
            }
        }
        if p.omega_m != 1.0 {
            return Err(ConfigError::Validation {
                key: "omega_m".into(),
                message: format!("fixes the unit system and must equal 1, got {}", p.omega_m),
            });
        }
        for (key, value) in [("d_c", p.d_c), ("d_m", p.d_m)] {
            if value < 2 {
                return Err(ConfigError::Validation {
                    key: key.into(),
                    message: format!("truncation dimension must be at least 2, got {value}"),
                });
            }
        }
        if self.t_end.is_nan() || self.t_end <= 0.0 {
            return Err(ConfigError::Validation {
                key: "t_end".into(),
                message: format!("must be positive, got {}", self.t_end),
            });
        }
        if self.dt.is_nan() || self.dt <= 0.0 || self.dt > self.t_end || self.dt > MAX_DT {
            return Err(ConfigError::Validation {
                key: "dt".into(),
                message: format!(
                    "must satisfy 0 < dt <= min(t_end, {MAX_DT}), got {}",
                    self.dt
                ),
            });
        }
        if self.sample_stride == 0 {
            return Err(ConfigError::Validation {
                key: "sample_stride".into(),
                message: "must be at least 1".into(),
            });
        }
        Ok(())
    }
}

/// Parse a flat key/value document into a validated [`RunConfig`].
///
/// Defaults apply to omitted keys; the default `t_end` follows `g_cm`
/// (two modulation periods) unless set explicitly.
pub fn parse_config(text: &str) -> Result<RunConfig, ConfigError> {
    let mut config = RunConfig::default();
    let mut t_end_set = false;

    for (idx, raw_line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = match raw_line.find('#') {
            Some(pos) => &raw_line[..pos],
            None => raw_line,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| ConfigError::Parse {
            line: line_no,
            message: format!("expected `key = value`, got {line:?}"),
        })?;
        let key = key.trim();
        let value = value.trim();
        if value.is_empty() {
            return Err(ConfigError::Parse {
                line: line_no,
                message: format!("missing value for key {key:?}"),
            });
        }
        apply_key(&mut config, key, value)?;
        if key == "t_end" {
            t_end_set = true;
        }
    }
    if !t_end_set {
        config.t_end = default_t_end(&config.params);
    }
    config.validate()?;
    Ok(config)
}

fn apply_key(config: &mut RunConfig, key: &str, value: &str) -> Result<(), ConfigError> {
    let bad = |message: String| ConfigError::Validation { key: key.to_string(), message };
    let parse_f64 = |value: &str| -> Result<f64, ConfigError> {
        value.parse::<f64>().map_err(|_| bad(format!("expected a number, got {value:?}")))
    };
    let parse_usize = |value: &str| -> Result<usize, ConfigError> {
        value.parse::<usize>().map_err(|_| bad(format!("expected a nonnegative integer, got {value:?}")))
    };
    let parse_bool = |value: &str| -> Result<bool, ConfigError> {
        match value {
            "true" => Ok(true),
            "false" => Ok(false),
            _ => Err(bad(format!("expected true or false, got {value:?}"))),
        }
    };
    match key {
        "omega_c" => config.params.omega_c = parse_f64(value)?,
        "omega_a" => config.params.omega_a = parse_f64(value)?,
        "omega_m" => config.params.omega_m = parse_f64(value)?,
        "g_ca" => config.params.g_ca = parse_f64(value)?,
        "g_cm" => config.params.g_cm = parse_f64(value)?,
        "kappa" => config.params.kappa = parse_f64(value)?,
        "gamma" => config.params.gamma = parse_f64(value)?,
        "mu" => config.params.mu = parse_f64(value)?,
        "n_th" => config.params.n_th = parse_f64(value)?,
        "n_th0" => config.params.n_th0 = parse_f64(value)?,
        "d_c" => config.params.d_c = parse_usize(value)?,
        "d_m" => config.params.d_m = parse_usize(value)?,
        "frame" => {
            config.params.frame = match value {
                "lab" => Frame::Lab,
                "rotating_at_omega_c" => Frame::RotatingAtCavity,
                _ => {
                    return Err(bad(format!(
                        "expected lab or rotating_at_omega_c, got {value:?}"
                    )))
                }
            }
        }
        "t_end" => config.t_end = parse_f64(value)?,
        "dt" => config.dt = parse_f64(value)?,
        "sample_stride" => config.sample_stride = parse_usize(value)?,
        "emit_eq8" => config.emit_eq8 = parse_bool(value)?,
        "emit_eq9" => config.emit_eq9 = parse_bool(value)?,
        "out_csv" => config.out_csv = Some(value.to_string()),
        _ => return Err(ConfigError::UnknownKey { key: key.to_string() }),
    }
    Ok(())
}

/// Serialize a config as the flat key/value document accepted by
/// [`parse_config`]. Every key is written explicitly; in particular omega_a
/// carries the atom-cavity detuning, so editing it reruns a detuned variant.
pub fn print_config(config: &RunConfig) -> String {
    let mut out = String::new();
    let p = &config.params;
    let _ = writeln!(out, "# run configuration (frequencies and rates in units of omega_m, times in 1/omega_m)");
    let _ = writeln!(out, "# omega_a is explicit below: the atom-cavity detuning is omega_a - omega_c.");
    let _ = writeln!(out, "omega_c = {}", p.omega_c);
    let _ = writeln!(out, "omega_a = {}", p.omega_a);
    let _ = writeln!(out, "omega_m = {}", p.omega_m);
    let _ = writeln!(out, "g_ca = {}", p.g_ca);
    let _ = writeln!(out, "g_cm = {}", p.g_cm);
    let _ = writeln!(out, "kappa = {}", p.kappa);
    let _ = writeln!(out, "gamma = {}", p.gamma);
    let _ = writeln!(out, "mu = {}", p.mu);
    let _ = writeln!(out, "n_th = {}", p.n_th);
    let _ = writeln!(out, "n_th0 = {}", p.n_th0);
    let _ = writeln!(out, "d_c = {}", p.d_c);
    let _ = writeln!(out, "d_m = {}", p.d_m);
    let _ = writeln!(
        out,
        "frame = {}",
        match p.frame {
            Frame::Lab => "lab",
            Frame::RotatingAtCavity => "rotating_at_omega_c",
        }
    );
    let _ = writeln!(out, "t_end = {}", config.t_end);
    let _ = writeln!(out, "dt = {}", config.dt);
    let _ = writeln!(out, "sample_stride = {}", config.sample_stride);
    let _ = writeln!(out, "emit_eq8 = {}", config.emit_eq8);
    let _ = writeln!(out, "emit_eq9 = {}", config.emit_eq9);
    if let Some(path) = &config.out_csv {
        let _ = writeln!(out, "out_csv = {path}");
    }
    out
}

/// Bundled parameter sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Preset {
    /// Resonant ideal case: Rabi splitting on resonance with the mechanics,
    /// no dissipation.
    Fig2,
    /// Detuned coupling (g_ca = 0.48), no dissipation.
    Fig3,
    /// Dissipative thermal case at d_m = 30.
    Fig4,
}

impl Preset {
    pub fn name(self) -> &'static str {
        match self {
            Preset::Fig2 => "fig2",
            Preset::Fig3 => "fig3",
            Preset::Fig4 => "fig4",
        }
    }
}

impl FromStr for Preset {
    type Err = ConfigError;
    fn from_str(s: &str) -> Result<Self, ConfigError> {
        match s {
            "fig2" => Ok(Preset::Fig2),
            "fig3" => Ok(Preset::Fig3),
            "fig4" => Ok(Preset::Fig4),
            _ => Err(ConfigError::UnknownPreset { name: s.to_string() }),
        }
    }
}

/// Resolve a preset to its full run configuration.
pub fn preset(which: Preset) -> RunConfig {
    let mut config = RunConfig::default();
    match which {
        Preset::Fig2 => {}
        Preset::Fig3 => {
            config.params.g_ca = 0.48;
        }
        Preset::Fig4 => {
            config.params.omega_a = -0.01; // omega_c - 0.01 in the rotating frame
            config.params.g_ca = 0.49;
            config.params.kappa = 0.02;
            config.params.gamma = 0.005;
            config.params.mu = 2e-4;
            config.params.n_th = 10.0;
            config.params.n_th0 = 0.5;
            config.params.d_m = 30;
        }
    }
    config.t_end = default_t_end(&config.params);
    config
}
