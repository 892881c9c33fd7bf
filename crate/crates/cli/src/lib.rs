//! Command-line front end for the optomechanical-cavity simulator: flat
//! key/value run configurations, bundled presets, CSV emission, standalone
//! SVG charts, parameter sweeps, and truncation-convergence reports.

pub mod config;
pub mod output;
pub mod svg;
pub mod sweep;

use std::path::PathBuf;

use optomech::lindblad::EngineError;

pub use config::{parse_config, preset, print_config, ConfigError, Preset, RunConfig};

/// Process exit codes: 2 config error, 3 integration instability, 4 I/O.
#[derive(Debug)]
pub enum CliError {
    Config(ConfigError),
    Engine(EngineError),
    Plot(svg::PlotError),
    Io { path: PathBuf, source: std::io::Error },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) | CliError::Plot(_) => 2,
            CliError::Engine(EngineError::UnstableIntegration { .. }) => 3,
            CliError::Engine(_) => 2,
            CliError::Io { .. } => 4,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Config(e) => write!(f, "{e}"),
            CliError::Engine(e) => write!(f, "{e}"),
            CliError::Plot(e) => write!(f, "{e}"),
            CliError::Io { path, source } => write!(f, "{}: {source}", path.display()),
        }
    }
}

impl std::error::Error for CliError {}

impl From<ConfigError> for CliError {
    fn from(e: ConfigError) -> Self {
        CliError::Config(e)
    }
}

impl From<EngineError> for CliError {
    fn from(e: EngineError) -> Self {
        CliError::Engine(e)
    }
}

impl From<svg::PlotError> for CliError {
    fn from(e: svg::PlotError) -> Self {
        CliError::Plot(e)
    }
}

/// Attach the offending path to an I/O error.
pub fn io_err(path: &std::path::Path) -> impl FnOnce(std::io::Error) -> CliError + '_ {
    move |source| CliError::Io { path: path.to_path_buf(), source }
}
