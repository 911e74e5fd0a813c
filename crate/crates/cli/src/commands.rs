//! Subcommand bodies and their renderers.

use std::io::{self, Write};

use serde_json::{json, Value};
use taskgrowth::{
    asymptotic_labor_share, cognitive_automation_time, compute_at, growth_decomposition,
    numeric_growth_rate, persistence_check, physical_automation_time, simulate, uniform_grid,
    AsymptoticVerdict, AutomationTime, ComputePath, Family, LimitingShare, Regime, TaskClass,
    TrajectoryPoint,
};

use crate::error::CliError;
use crate::scenario::{ScenarioFile, SimulationWindow};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

pub const CSV_HEADER: &str =
    "t,Q,Y,wage,rent,labor_share,compute_share,L_c,L_p,Q_c,Q_p,cog_automated,phys_automated";
pub const NOT_REACHED: &str = "not-reached";
pub const UNDETERMINED: &str = "undetermined";

/// Seventeen significant digits, enough to round-trip any `f64`.
pub fn num(x: f64) -> String {
    format!("{x:.16e}")
}

fn time_token(t: AutomationTime) -> Cell {
    match t {
        AutomationTime::At(y) => Cell::Num(y),
        AutomationTime::NotReached => Cell::Token(NOT_REACHED.into()),
    }
}

fn share_token(s: LimitingShare) -> Cell {
    match s {
        LimitingShare::Determined(v) => Cell::Num(v),
        LimitingShare::Undetermined => Cell::Token(UNDETERMINED.into()),
    }
}

fn regime_token(r: Regime) -> &'static str {
    match r {
        Regime::FiniteCompute => "finite-compute",
        Regime::UnboundedCompute => "unbounded-compute",
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Cell {
    Num(f64),
    Token(String),
    Bool(bool),
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Num(x) => num(*x),
            Cell::Token(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
        }
    }

    fn text(&self) -> String {
        match self {
            Cell::Num(x) if *x != 0.0 && (x.abs() >= 1e6 || x.abs() < 1e-4) => format!("{x:e}"),
            Cell::Num(x) => format!("{x}"),
            Cell::Token(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Num(x) => json!(x),
            Cell::Token(s) => json!(s),
            Cell::Bool(b) => json!(b),
        }
    }
}

/// A list of named values rendered as aligned text, two-column CSV or a
/// JSON object.
fn write_report(rows: &[(&str, Cell)], format: Format, out: &mut dyn Write) -> io::Result<()> {
    match format {
        Format::Text => {
            let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
            for (k, v) in rows {
                writeln!(out, "{k:<width$}  {}", v.text())?;
            }
        }
        Format::Csv => {
            writeln!(out, "quantity,value")?;
            for (k, v) in rows {
                writeln!(out, "{k},{}", v.csv())?;
            }
        }
        Format::Json => {
            let map: serde_json::Map<String, Value> = rows
                .iter()
                .map(|(k, v)| (k.to_string(), v.json()))
                .collect();
            writeln!(
                out,
                "{}",
                serde_json::to_string_pretty(&Value::Object(map))?
            )?;
        }
    }
    Ok(())
}

/// A table with a header row. Text and CSV render identically.
fn write_table(
    header: &[&str],
    rows: &[Vec<Cell>],
    format: Format,
    out: &mut dyn Write,
) -> io::Result<()> {
    match format {
        Format::Text | Format::Csv => {
            writeln!(out, "{}", header.join(","))?;
            for row in rows {
                let cells: Vec<String> = row.iter().map(Cell::csv).collect();
                writeln!(out, "{}", cells.join(","))?;
            }
        }
        Format::Json => {
            let items: Vec<Value> = rows
                .iter()
                .map(|row| {
                    Value::Object(
                        header
                            .iter()
                            .zip(row)
                            .map(|(k, v)| (k.to_string(), v.json()))
                            .collect(),
                    )
                })
                .collect();
            writeln!(out, "{}", serde_json::to_string_pretty(&items)?)?;
        }
    }
    Ok(())
}

pub fn time_grid(window: &SimulationWindow) -> Result<Vec<f64>, CliError> {
    window.check_flags()?;
    Ok(uniform_grid(window.t_start, window.t_end, window.t_step)?)
}

pub fn run_simulate(file: &ScenarioFile, times: &[f64]) -> Result<Vec<TrajectoryPoint>, CliError> {
    if times.iter().any(|t| !(t.is_finite() && *t >= 0.0)) {
        return Err(CliError::invalid(
            "--times",
            "times must be finite and >= 0",
        ));
    }
    if times.windows(2).any(|w| w[1] < w[0]) {
        return Err(CliError::invalid("--times", "times must be ascending"));
    }
    Ok(simulate(&file.scenario, times)?)
}

fn trajectory_row(p: &TrajectoryPoint) -> Vec<Cell> {
    let r = &p.result;
    let a = &r.allocation;
    vec![
        Cell::Num(p.t),
        Cell::Num(p.q),
        Cell::Num(r.output),
        Cell::Num(r.wage),
        Cell::Num(r.rent),
        Cell::Num(r.labor_share),
        Cell::Num(r.compute_share),
        Cell::Num(a.labor_cognitive),
        Cell::Num(a.labor_physical),
        Cell::Num(a.compute_cognitive),
        Cell::Num(a.compute_physical),
        Cell::Bool(p.flags.cognitive),
        Cell::Bool(p.flags.physical),
    ]
}

pub fn write_trajectory(
    points: &[TrajectoryPoint],
    format: Format,
    out: &mut dyn Write,
) -> io::Result<()> {
    let header: Vec<&str> = CSV_HEADER.split(',').collect();
    let rows: Vec<Vec<Cell>> = points.iter().map(trajectory_row).collect();
    write_table(&header, &rows, format, out)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThresholdReport {
    pub cognitive_time: AutomationTime,
    pub physical_time: AutomationTime,
    /// Compute level at which each class automates, at `t = 0`.
    pub cognitive_threshold: Option<f64>,
    pub physical_threshold: Option<f64>,
    /// Only for saturating compute paths.
    pub persistence: Option<bool>,
    pub verdict: AsymptoticVerdict,
}

pub fn run_thresholds(file: &ScenarioFile) -> Result<ThresholdReport, CliError> {
    let s = &file.scenario;
    let persistence = match s.compute_path {
        ComputePath::BoundedSaturating { q_max, .. } => Some(persistence_check(
            s.tasks.physical().cost,
            s.production.labor_augmenting() * s.labor_supply,
            q_max,
        )),
        ComputePath::Exponential { .. } => None,
    };
    Ok(ThresholdReport {
        cognitive_time: cognitive_automation_time(s),
        physical_time: physical_automation_time(s),
        cognitive_threshold: s.initial_threshold(TaskClass::Cognitive),
        physical_threshold: s.initial_threshold(TaskClass::Physical),
        persistence,
        verdict: asymptotic_labor_share(s)?,
    })
}

pub fn write_thresholds(
    r: &ThresholdReport,
    format: Format,
    out: &mut dyn Write,
) -> io::Result<()> {
    let level = |x: Option<f64>| x.map_or(Cell::Token("inf".into()), Cell::Num);
    let rows = [
        ("cognitive_automation_time", time_token(r.cognitive_time)),
        ("physical_automation_time", time_token(r.physical_time)),
        ("cognitive_threshold_compute", level(r.cognitive_threshold)),
        ("physical_threshold_compute", level(r.physical_threshold)),
        (
            "persistence",
            r.persistence
                .map_or(Cell::Token("not-applicable".into()), Cell::Bool),
        ),
        ("regime", Cell::Token(regime_token(r.verdict.regime).into())),
        (
            "limiting_labor_share",
            share_token(r.verdict.limiting_labor_share),
        ),
        ("reason", Cell::Token(r.verdict.reason.into())),
    ];
    write_report(&rows, format, out)
}

#[derive(Debug, Clone, PartialEq)]
pub struct DecompositionReport {
    pub window: (f64, f64),
    pub step: f64,
    /// Compute growth used in the closed form: the path's rate, or the
    /// average log growth over the window for saturating paths.
    pub compute_growth: f64,
    /// `None` outside the Cobb-Douglas family.
    pub closed_form: Option<f64>,
    pub numeric_mean: f64,
    pub numeric_min: f64,
    pub numeric_max: f64,
    /// Largest pointwise `|numeric - closed_form|`.
    pub max_abs_difference: Option<f64>,
}

pub fn run_decompose(
    file: &ScenarioFile,
    window: (f64, f64),
    step: f64,
) -> Result<DecompositionReport, CliError> {
    let (a, b) = window;
    if !(a.is_finite() && a >= 0.0 && b.is_finite() && b > a) {
        return Err(CliError::invalid("--window", "need 0 <= a < b"));
    }
    if !(step > 0.0 && step.is_finite()) {
        return Err(CliError::invalid("--t-step", "must be > 0"));
    }
    let grid = uniform_grid(a, b, step)?;
    if grid.len() < 3 {
        return Err(CliError::invalid(
            "--window",
            "window must span at least two steps",
        ));
    }
    let s = &file.scenario;
    let traj = simulate(s, &grid)?;
    let rates: Vec<f64> = numeric_growth_rate(&traj)?
        .into_iter()
        .map(|(_, g)| g)
        .collect();

    let compute_growth = match s.compute_path {
        ComputePath::Exponential { growth, .. } => growth,
        ComputePath::BoundedSaturating { .. } => {
            (compute_at(&s.compute_path, b) / compute_at(&s.compute_path, a)).ln() / (b - a)
        }
    };
    let closed_form = match s.production.family() {
        Family::CobbDouglas { beta } => Some(
            growth_decomposition(
                beta,
                compute_growth,
                s.growth.labor,
                s.growth.labor_augmenting,
            ) + s.growth.hicks_neutral,
        ),
        Family::Ces { .. } => None,
    };
    let n = rates.len() as f64;
    Ok(DecompositionReport {
        window,
        step,
        compute_growth,
        closed_form,
        numeric_mean: rates.iter().sum::<f64>() / n,
        numeric_min: rates.iter().copied().fold(f64::INFINITY, f64::min),
        numeric_max: rates.iter().copied().fold(f64::NEG_INFINITY, f64::max),
        max_abs_difference: closed_form
            .map(|c| rates.iter().map(|g| (g - c).abs()).fold(0.0, f64::max)),
    })
}

pub fn write_decomposition(
    r: &DecompositionReport,
    format: Format,
    out: &mut dyn Write,
) -> io::Result<()> {
    let opt = |x: Option<f64>| x.map_or(Cell::Token("not-applicable".into()), Cell::Num);
    let rows = [
        ("window_start", Cell::Num(r.window.0)),
        ("window_end", Cell::Num(r.window.1)),
        ("step", Cell::Num(r.step)),
        ("compute_growth", Cell::Num(r.compute_growth)),
        ("closed_form", opt(r.closed_form)),
        ("numeric_mean", Cell::Num(r.numeric_mean)),
        ("numeric_min", Cell::Num(r.numeric_min)),
        ("numeric_max", Cell::Num(r.numeric_max)),
        ("max_abs_difference", opt(r.max_abs_difference)),
    ];
    write_report(&rows, format, out)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub value: f64,
    pub verdict: AsymptoticVerdict,
    pub cognitive_time: AutomationTime,
    pub physical_time: AutomationTime,
}

/// `count` values from `lo` to `hi`, log-spaced for positive magnitudes.
pub fn sweep_values(lo: f64, hi: f64, count: usize, log: bool) -> Vec<f64> {
    let last = (count - 1) as f64;
    (0..count)
        .map(|i| {
            if i == 0 {
                return lo;
            }
            if i + 1 == count {
                return hi;
            }
            let f = i as f64 / last;
            if log {
                10f64.powf(lo.log10() + f * (hi.log10() - lo.log10()))
            } else {
                lo + f * (hi - lo)
            }
        })
        .collect()
}

pub fn run_sweep(
    file: &ScenarioFile,
    param: &str,
    lo: f64,
    hi: f64,
    count: usize,
) -> Result<Vec<SweepRow>, CliError> {
    let mut problems = Vec::new();
    if !crate::scenario::NUMERIC_FIELDS
        .iter()
        .any(|(p, _)| *p == param)
    {
        problems.push(("--param", format!("unknown parameter path {param:?}")));
    }
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        problems.push(("--range", "need finite lo < hi".to_string()));
    }
    if count < 2 {
        problems.push(("--range", "count must be >= 2".to_string()));
    }
    if !problems.is_empty() {
        return Err(CliError::Validation(
            problems
                .into_iter()
                .map(|(path, reason)| crate::scenario::Diagnostic {
                    path: path.into(),
                    reason,
                })
                .collect(),
        ));
    }
    let log = ScenarioFile::is_magnitude(param) && lo > 0.0;
    sweep_values(lo, hi, count, log)
        .into_iter()
        .map(|value| {
            let f = file
                .with_field(param, value)
                .map_err(CliError::Validation)?;
            let s = &f.scenario;
            Ok(SweepRow {
                value,
                verdict: asymptotic_labor_share(s)?,
                cognitive_time: cognitive_automation_time(s),
                physical_time: physical_automation_time(s),
            })
        })
        .collect()
}

pub const SWEEP_HEADER: &str =
    "value,regime,limiting_labor_share,reason,cognitive_time,physical_time";

pub fn write_sweep(rows: &[SweepRow], format: Format, out: &mut dyn Write) -> io::Result<()> {
    let header: Vec<&str> = SWEEP_HEADER.split(',').collect();
    let cells: Vec<Vec<Cell>> = rows
        .iter()
        .map(|r| {
            vec![
                Cell::Num(r.value),
                Cell::Token(regime_token(r.verdict.regime).into()),
                share_token(r.verdict.limiting_labor_share),
                Cell::Token(r.verdict.reason.into()),
                time_token(r.cognitive_time),
                time_token(r.physical_time),
            ]
        })
        .collect();
    write_table(&header, &cells, format, out)
}

/// Evaluation times for the milestone table: the window ends plus each
/// automation time that falls inside the window.
pub fn milestone_times(file: &ScenarioFile, window: &SimulationWindow) -> Vec<f64> {
    let s = &file.scenario;
    let mut times = vec![window.t_start, window.t_end];
    for t in [cognitive_automation_time(s), physical_automation_time(s)] {
        if let AutomationTime::At(t) = t {
            if t > window.t_start && t < window.t_end {
                times.push(t);
            }
        }
    }
    times.sort_by(f64::total_cmp);
    times.dedup();
    times
}

pub fn write_milestones(
    points: &[TrajectoryPoint],
    format: Format,
    out: &mut dyn Write,
) -> io::Result<()> {
    let yes_no = |b: bool| if b { "Yes" } else { "No" };
    match format {
        Format::Text => {
            writeln!(
                out,
                "{:>10}  {:>12}  {:>10}  {:>9}  {:>11}",
                "t", "Q", "cognitive", "physical", "labor share"
            )?;
            for p in points {
                writeln!(
                    out,
                    "{:>10.3}  {:>12.4e}  {:>10}  {:>9}  {:>11.6}",
                    p.t,
                    p.q,
                    yes_no(p.flags.cognitive),
                    yes_no(p.flags.physical),
                    p.result.labor_share
                )?;
            }
            Ok(())
        }
        Format::Csv | Format::Json => {
            let header = ["t", "Q", "cog_automated", "phys_automated", "labor_share"];
            let rows: Vec<Vec<Cell>> = points
                .iter()
                .map(|p| {
                    vec![
                        Cell::Num(p.t),
                        Cell::Num(p.q),
                        Cell::Bool(p.flags.cognitive),
                        Cell::Bool(p.flags.physical),
                        Cell::Num(p.result.labor_share),
                    ]
                })
                .collect();
            write_table(&header, &rows, format, out)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn number_format_round_trips() {
        for x in [0.1, 1e-300, 4.8516519540979e30, 1.0 / 3.0, f64::MAX, 5e-324] {
            let s = num(x);
            assert_eq!(s.parse::<f64>().unwrap().to_bits(), x.to_bits(), "{s}");
        }
        assert_eq!(num(0.5), "5.0000000000000000e-1");
    }

    #[test]
    fn sweep_spacing() {
        let v = sweep_values(1e18, 1e24, 7, true);
        assert_eq!(v.len(), 7);
        assert_eq!(v[0], 1e18);
        assert_eq!(v[6], 1e24);
        assert_eq!(v[3], 1e21);
        assert_eq!(sweep_values(0.1, 0.9, 9, false)[4], 0.5);
    }
}
