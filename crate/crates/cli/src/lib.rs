//! Command-line front end for the `taskgrowth` model.
//!
//! [`run`] parses arguments, executes one subcommand and returns the process
//! exit code, writing results and diagnostics to the given streams.

// `!(x > 0.0)` style checks are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod commands;
pub mod error;
pub mod scenario;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use commands::Format;
pub use error::CliError;
pub use scenario::{Diagnostic, ScenarioFile, SimulationWindow};

/// The reference calibration shipped with the binary.
pub const BUNDLED_SCENARIO: &str = include_str!("../scenarios/paper.toml");

#[derive(Debug, Parser)]
#[command(
    name = "taskgrowth",
    version,
    about = "Growth and labor share under differential automation costs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Common {
    /// Scenario file (TOML, or JSON with a .json extension). Defaults to the
    /// bundled reference calibration.
    #[arg(long, global = true)]
    scenario: Option<PathBuf>,
    /// Output file, or `-` for standard output.
    #[arg(long, global = true, default_value = "-")]
    out: String,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
}

#[derive(Debug, Args)]
struct GridArgs {
    #[arg(long, allow_negative_numbers = true)]
    t_start: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    t_end: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    t_step: Option<f64>,
}

impl GridArgs {
    fn apply(&self, w: SimulationWindow) -> SimulationWindow {
        SimulationWindow {
            t_start: self.t_start.unwrap_or(w.t_start),
            t_end: self.t_end.unwrap_or(w.t_end),
            t_step: self.t_step.unwrap_or(w.t_step),
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Trajectory table over a time grid.
    Simulate {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        grid: GridArgs,
        /// Explicit comma-separated times; overrides the grid.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, conflicts_with_all = ["t_start", "t_end", "t_step"])]
        times: Option<Vec<f64>>,
    },
    /// Automation times, threshold compute levels, persistence and the
    /// long-run labor share.
    Thresholds {
        #[command(flatten)]
        common: Common,
    },
    /// Closed-form versus simulated output growth over a window.
    Decompose {
        #[command(flatten)]
        common: Common,
        /// Window `a,b`; defaults to the scenario's simulation range.
        #[arg(long, value_parser = parse_window, allow_hyphen_values = true)]
        window: Option<(f64, f64)>,
        #[arg(long, allow_negative_numbers = true)]
        t_step: Option<f64>,
    },
    /// Long-run verdict and automation times across values of one field.
    Sweep {
        #[command(flatten)]
        common: Common,
        /// Dotted field path, e.g. `tasks.alpha_p`.
        #[arg(long)]
        param: String,
        /// `lo,hi,count`.
        #[arg(long, value_parser = parse_range, allow_hyphen_values = true)]
        range: (f64, f64, usize),
    },
    /// Key values at the start and end of the simulation window and at each
    /// automation time in between.
    Milestones {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        grid: GridArgs,
    },
}

fn parse_window(s: &str) -> Result<(f64, f64), String> {
    let parts: Vec<&str> = s.split(',').collect();
    match parts[..] {
        [a, b] => Ok((
            a.trim()
                .parse()
                .map_err(|e| format!("bad start {a:?}: {e}"))?,
            b.trim()
                .parse()
                .map_err(|e| format!("bad end {b:?}: {e}"))?,
        )),
        _ => Err("expected a,b".into()),
    }
}

fn parse_range(s: &str) -> Result<(f64, f64, usize), String> {
    let parts: Vec<&str> = s.split(',').collect();
    match parts[..] {
        [lo, hi, n] => Ok((
            lo.trim()
                .parse()
                .map_err(|e| format!("bad lo {lo:?}: {e}"))?,
            hi.trim()
                .parse()
                .map_err(|e| format!("bad hi {hi:?}: {e}"))?,
            n.trim()
                .parse()
                .map_err(|e| format!("bad count {n:?}: {e}"))?,
        )),
        _ => Err("expected lo,hi,count".into()),
    }
}

fn load(common: &Common) -> Result<ScenarioFile, CliError> {
    match &common.scenario {
        Some(path) => ScenarioFile::load(path),
        None => ScenarioFile::parse(BUNDLED_SCENARIO, false).map_err(CliError::Validation),
    }
}

fn execute(command: &Command) -> Result<(Vec<u8>, &Common), CliError> {
    let mut buf = Vec::new();
    let common = match command {
        Command::Simulate {
            common,
            grid,
            times,
        } => {
            let file = load(common)?;
            let times = match times {
                Some(t) => t.clone(),
                None => commands::time_grid(&grid.apply(file.simulation))?,
            };
            let points = commands::run_simulate(&file, &times)?;
            commands::write_trajectory(&points, common.format.unwrap_or(Format::Csv), &mut buf)?;
            common
        }
        Command::Thresholds { common } => {
            let report = commands::run_thresholds(&load(common)?)?;
            commands::write_thresholds(&report, common.format.unwrap_or(Format::Text), &mut buf)?;
            common
        }
        Command::Decompose {
            common,
            window,
            t_step,
        } => {
            let file = load(common)?;
            let window = window.unwrap_or((file.simulation.t_start, file.simulation.t_end));
            let step = t_step.unwrap_or(file.simulation.t_step);
            let report = commands::run_decompose(&file, window, step)?;
            commands::write_decomposition(
                &report,
                common.format.unwrap_or(Format::Text),
                &mut buf,
            )?;
            common
        }
        Command::Sweep {
            common,
            param,
            range,
        } => {
            let file = load(common)?;
            let rows = commands::run_sweep(&file, param, range.0, range.1, range.2)?;
            commands::write_sweep(&rows, common.format.unwrap_or(Format::Csv), &mut buf)?;
            common
        }
        Command::Milestones { common, grid } => {
            let file = load(common)?;
            let window = grid.apply(file.simulation);
            window.check_flags()?;
            let times = commands::milestone_times(&file, &window);
            let points = commands::run_simulate(&file, &times)?;
            commands::write_milestones(&points, common.format.unwrap_or(Format::Text), &mut buf)?;
            common
        }
    };
    Ok((buf, common))
}

/// Runs one invocation and returns its exit code: 0 on success, 1 on a
/// solver or I/O error, 2 on invalid input.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let target: &mut dyn Write = if code == 0 { stdout } else { stderr };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    let result = execute(&cli.command).and_then(|(bytes, common)| {
        if common.out == "-" {
            stdout.write_all(&bytes)?;
        } else {
            std::fs::write(&common.out, &bytes)?;
        }
        Ok(())
    });
    match result {
        Ok(()) => 0,
        Err(e) => {
            for line in e.lines() {
                let _ = writeln!(stderr, "{line}");
            }
            e.exit_code()
        }
    }
}
