use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use optomech::lindblad::convergence_check;
use optomech_cli::config::{parse_config, preset, print_config, Preset, RunConfig};
use optomech_cli::output::run_to_csv;
use optomech_cli::svg::render_svg_file;
use optomech_cli::sweep::sweep;
use optomech_cli::{io_err, CliError};

/// Simulator for a two-level atom in a dissipative optomechanical cavity.
///
/// Frequencies and rates are in units of the mechanical frequency
/// (omega_m = 1); times are in 1/omega_m.
#[derive(Parser)]
#[command(name = "optomech", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Integrate the master equation for a config file and write a CSV.
    Run {
        /// Flat key=value config file.
        #[arg(long)]
        config: PathBuf,
        /// Output directory (default: current directory).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a bundled parameter set (fig2, fig3, or fig4) and write its
    /// config and CSV.
    Preset {
        /// fig2 (resonant ideal), fig3 (detuned), or fig4 (dissipative thermal).
        name: String,
        /// Output directory (default: current directory).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Render columns of a run CSV as an SVG line chart.
    Plot {
        /// Input CSV path.
        #[arg(long)]
        csv: PathBuf,
        /// Comma-separated column names, plotted against the first column.
        #[arg(long)]
        cols: String,
        /// Output SVG path.
        #[arg(long)]
        out: PathBuf,
    },
    /// Run a config once per value of one parameter and summarize.
    Sweep {
        /// Flat key=value config file used as the base.
        #[arg(long)]
        config: PathBuf,
        /// Parameter to sweep (a SystemParams field, e.g. g_ca).
        #[arg(long)]
        key: String,
        /// Comma-separated values.
        #[arg(long)]
        values: String,
        /// Output directory for per-run CSVs and summary.csv.
        #[arg(long)]
        out: PathBuf,
    },
    /// Integrate at d_m and d_m + step and report observable deviations.
    Converge {
        /// Flat key=value config file.
        #[arg(long)]
        config: PathBuf,
        /// Truncation increment.
        #[arg(long, value_name = "STEP")]
        dm_step: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}

fn dispatch(command: Command) -> Result<(), CliError> {
    match command {
        Command::Run { config, out } => {
            let cfg = load_config(&config)?;
            let out_dir = out.unwrap_or_else(|| PathBuf::from("."));
            let stem = config
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_else(|| "run".to_string());
            let csv_path = resolve_csv_path(&cfg, &out_dir, &stem);
            let summary = run_to_csv(&cfg, &csv_path)?;
            println!(
                "wrote {} ({} samples, max |trace error| {:.3e})",
                csv_path.display(),
                summary.samples,
                summary.max_trace_error
            );
            Ok(())
        }
        Command::Preset { name, out } => {
            let which: Preset = name.parse()?;
            let cfg = preset(which);
            let out_dir = out.unwrap_or_else(|| PathBuf::from("."));
            fs::create_dir_all(&out_dir).map_err(io_err(&out_dir))?;
            let cfg_path = out_dir.join(format!("{}.cfg", which.name()));
            fs::write(&cfg_path, print_config(&cfg)).map_err(io_err(&cfg_path))?;
            let csv_path = out_dir.join(format!("{}.csv", which.name()));
            let summary = run_to_csv(&cfg, &csv_path)?;
            println!(
                "wrote {} and {} ({} samples, max |trace error| {:.3e})",
                cfg_path.display(),
                csv_path.display(),
                summary.samples,
                summary.max_trace_error
            );
            Ok(())
        }
        Command::Plot { csv, cols, out } => {
            let columns: Vec<String> =
                cols.split(',').map(str::trim).filter(|c| !c.is_empty()).map(String::from).collect();
            if columns.is_empty() {
                return Err(optomech_cli::config::ConfigError::Validation {
                    key: "cols".into(),
                    message: "at least one column name is required".into(),
                }
                .into());
            }
            render_svg_file(&csv, &columns, &out)?;
            println!("wrote {}", out.display());
            Ok(())
        }
        Command::Sweep { config, key, values, out } => {
            let cfg = load_config(&config)?;
            let parsed: Result<Vec<f64>, _> = values
                .split(',')
                .map(str::trim)
                .filter(|v| !v.is_empty())
                .map(str::parse::<f64>)
                .collect();
            let parsed = parsed.map_err(|e| {
                CliError::Config(optomech_cli::config::ConfigError::Validation {
                    key: "values".into(),
                    message: e.to_string(),
                })
            })?;
            let report = sweep(&cfg, &key, &parsed, &out)?;
            println!("wrote {}", report.summary_path.display());
            if report.any_failed() {
                return Err(CliError::Engine(
                    optomech::lindblad::EngineError::InvalidSpec(
                        "one or more sweep runs failed; see summary.csv".into(),
                    ),
                ));
            }
            Ok(())
        }
        Command::Converge { config, dm_step } => {
            let cfg = load_config(&config)?;
            let report = convergence_check(&cfg.evolution_spec(), dm_step)?;
            println!(
                "d_m = {} vs {}: max |delta_p| deviation = {:.6e}, max n_b deviation = {:.6e}",
                report.d_m_low, report.d_m_high, report.max_delta_p_dev, report.max_n_b_dev
            );
            Ok(())
        }
    }
}

fn load_config(path: &Path) -> Result<RunConfig, CliError> {
    let text = fs::read_to_string(path).map_err(io_err(path))?;
    Ok(parse_config(&text)?)
}

fn resolve_csv_path(cfg: &RunConfig, out_dir: &Path, stem: &str) -> PathBuf {
    match &cfg.out_csv {
        Some(p) => {
            let p = PathBuf::from(p);
            if p.is_absolute() {
                p
            } else {
                out_dir.join(p)
            }
        }
        None => out_dir.join(format!("{stem}.csv")),
    }
}
