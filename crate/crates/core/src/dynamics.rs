//! Compute paths, trajectories, automation-time thresholds, the persistence
//! condition and growth accounting.

use crate::allocator::{
    allocate, automation_flags, automation_threshold, AllocationResult, AutomationFlags,
    THRESHOLD_TIE_TOL,
};
use crate::bisection::bisect;
use crate::error::{Error, Result};
use crate::model::{AutomationCost, ProductionSpec, ResourceState, TaskClass, TaskPair};

/// Deterministic path of total compute, FLOP per year.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ComputePath {
    /// `Q_t = q0 e^(growth t)`
    Exponential { q0: f64, growth: f64 },
    /// `Q_t = q_max - (q_max - q0) e^(-rate t)`
    BoundedSaturating { q0: f64, q_max: f64, rate: f64 },
}

impl ComputePath {
    pub fn exponential(q0: f64, growth: f64) -> Result<Self> {
        let path = ComputePath::Exponential { q0, growth };
        path.validate()?;
        Ok(path)
    }

    pub fn bounded(q0: f64, q_max: f64, rate: f64) -> Result<Self> {
        let path = ComputePath::BoundedSaturating { q0, q_max, rate };
        path.validate()?;
        Ok(path)
    }

    pub fn validate(&self) -> Result<()> {
        let q0 = self.initial();
        if !(q0.is_finite() && q0 > 0.0) {
            return Err(Error::invalid(
                "q0",
                format!("must be finite and > 0, got {q0}"),
            ));
        }
        match *self {
            ComputePath::Exponential { growth, .. } => {
                if !growth.is_finite() {
                    return Err(Error::invalid("growth", "must be finite"));
                }
            }
            ComputePath::BoundedSaturating { q0, q_max, rate } => {
                if !(q_max.is_finite() && q_max >= q0) {
                    return Err(Error::invalid(
                        "q_max",
                        format!("must be finite and >= q0, got {q_max}"),
                    ));
                }
                if !(rate.is_finite() && rate > 0.0) {
                    return Err(Error::invalid("rate", format!("must be > 0, got {rate}")));
                }
            }
        }
        Ok(())
    }

    pub fn initial(&self) -> f64 {
        match *self {
            ComputePath::Exponential { q0, .. } | ComputePath::BoundedSaturating { q0, .. } => q0,
        }
    }

    /// `d ln Q / dt` at `t`.
    pub fn growth_rate_at(&self, t: f64) -> f64 {
        match *self {
            ComputePath::Exponential { growth, .. } => growth,
            ComputePath::BoundedSaturating { q0, q_max, rate } => {
                rate * (q_max - q0) * (-rate * t).exp() / compute_at(self, t)
            }
        }
    }
}

/// Total compute at time `t` (years).
pub fn compute_at(path: &ComputePath, t: f64) -> f64 {
    match *path {
        ComputePath::Exponential { q0, growth } => q0 * (growth * t).exp(),
        ComputePath::BoundedSaturating { q0, q_max, rate } => {
            if t.is_infinite() {
                q_max
            } else {
                q_max - (q_max - q0) * (-rate * t).exp()
            }
        }
    }
}

/// Exponential growth rates (per year) of Hicks-neutral productivity,
/// labor-augmenting productivity and labor supply.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct GrowthRates {
    pub hicks_neutral: f64,
    pub labor_augmenting: f64,
    pub labor: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub tasks: TaskPair,
    /// Production at `t = 0`.
    pub production: ProductionSpec,
    /// `L_0`, human-hours per year.
    pub labor_supply: f64,
    pub compute_path: ComputePath,
    pub growth: GrowthRates,
}

impl Scenario {
    /// The two-task Cobb-Douglas calibration: `alpha_c = 1e14`,
    /// `alpha_p = 1e21`, `Q_t = 1e22 e^(0.2 t)`, `L = 1e9`, `beta = 0.5`.
    pub fn reference() -> Self {
        Scenario {
            tasks: TaskPair::from_costs(
                AutomationCost::finite(1e14).expect("positive"),
                AutomationCost::finite(1e21).expect("positive"),
            ),
            production: ProductionSpec::cobb_douglas(0.5).expect("valid beta"),
            labor_supply: 1e9,
            compute_path: ComputePath::Exponential {
                q0: 1e22,
                growth: 0.2,
            },
            growth: GrowthRates::default(),
        }
    }

    pub fn with_physical_cost(mut self, cost: AutomationCost) -> Self {
        let cognitive = self.tasks.cognitive().cost;
        self.tasks = TaskPair::from_costs(cognitive, cost);
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.labor_supply.is_finite() && self.labor_supply > 0.0) {
            return Err(Error::invalid(
                "labor_supply",
                format!("must be finite and > 0, got {}", self.labor_supply),
            ));
        }
        let g = &self.growth;
        if ![g.hicks_neutral, g.labor_augmenting, g.labor]
            .iter()
            .all(|r| r.is_finite())
        {
            return Err(Error::invalid("growth rates", "must be finite"));
        }
        self.compute_path.validate()?;
        let alpha_c = self.tasks.cognitive().cost;
        if alpha_c.is_infinite() {
            return Err(Error::invalid(
                "alpha_c",
                "cognitive automation cost must be finite",
            ));
        }
        if !alpha_c.le(&self.tasks.physical().cost) {
            return Err(Error::invalid(
                "alpha_p",
                "physical automation cost must be >= cognitive cost",
            ));
        }
        Ok(())
    }

    pub fn labor_at(&self, t: f64) -> f64 {
        self.labor_supply * (self.growth.labor * t).exp()
    }

    pub fn resources_at(&self, t: f64) -> Result<ResourceState> {
        ResourceState::new(compute_at(&self.compute_path, t), self.labor_at(t))
    }

    pub fn production_at(&self, t: f64) -> Result<ProductionSpec> {
        let p = &self.production;
        p.with_productivity(
            p.hicks_neutral() * (self.growth.hicks_neutral * t).exp(),
            p.labor_augmenting() * (self.growth.labor_augmenting * t).exp(),
        )
    }

    /// Growth rate of effective labor `A^L L`.
    pub fn effective_labor_growth(&self) -> f64 {
        self.growth.labor + self.growth.labor_augmenting
    }

    /// Compute threshold of a class at `t = 0`; see [`automation_threshold`].
    pub fn initial_threshold(&self, class: TaskClass) -> Option<f64> {
        automation_threshold(
            class,
            &self.tasks,
            &self.production,
            self.production.labor_augmenting() * self.labor_supply,
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrajectoryPoint {
    pub t: f64,
    pub q: f64,
    pub labor: f64,
    pub result: AllocationResult,
    pub flags: AutomationFlags,
}

/// `start, start + step, ...` up to `end` inclusive, each point computed as
/// `start + i * step` so that errors do not accumulate.
pub fn uniform_grid(start: f64, end: f64, step: f64) -> Result<Vec<f64>> {
    if !(step.is_finite() && step > 0.0) {
        return Err(Error::invalid("t_step", format!("must be > 0, got {step}")));
    }
    if !(start.is_finite() && end.is_finite() && start >= 0.0 && end >= start) {
        return Err(Error::invalid(
            "time window",
            format!("need 0 <= start <= end, got [{start}, {end}]"),
        ));
    }
    let n = ((end - start) / step + 1e-9).floor() as usize;
    Ok((0..=n).map(|i| start + i as f64 * step).collect())
}

/// Static optimum at each grid time. Points are independent of each other.
pub fn simulate(scenario: &Scenario, t_grid: &[f64]) -> Result<Vec<TrajectoryPoint>> {
    scenario.validate()?;
    if t_grid.iter().any(|t| !(t.is_finite() && *t >= 0.0)) {
        return Err(Error::invalid("t_grid", "times must be finite and >= 0"));
    }
    if t_grid.windows(2).any(|w| w[1] < w[0]) {
        return Err(Error::invalid("t_grid", "times must be ascending"));
    }
    t_grid
        .iter()
        .map(|&t| {
            point_at(scenario, t).map_err(|e| Error::AtTime {
                t,
                source: Box::new(e),
            })
        })
        .collect()
}

fn point_at(scenario: &Scenario, t: f64) -> Result<TrajectoryPoint> {
    let resources = scenario.resources_at(t)?;
    let production = scenario.production_at(t)?;
    let result = allocate(&resources, &scenario.tasks, &production)?;
    let flags = automation_flags(&result, &scenario.tasks, &resources, &production);
    Ok(TrajectoryPoint {
        t,
        q: resources.compute,
        labor: resources.labor,
        result,
        flags,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AutomationTime {
    At(f64),
    NotReached,
}

impl AutomationTime {
    pub fn years(self) -> Option<f64> {
        match self {
            AutomationTime::At(t) => Some(t),
            AutomationTime::NotReached => None,
        }
    }
}

/// First time labor fully leaves the cognitive aggregate.
pub fn cognitive_automation_time(scenario: &Scenario) -> AutomationTime {
    crossing_time(scenario, TaskClass::Cognitive)
}

/// First time compute starts flowing into the physical aggregate.
/// `NotReached` whenever the physical cost is infinite.
pub fn physical_automation_time(scenario: &Scenario) -> AutomationTime {
    crossing_time(scenario, TaskClass::Physical)
}

fn crossing_time(scenario: &Scenario, class: TaskClass) -> AutomationTime {
    let Some(thr0) = scenario.initial_threshold(class) else {
        return AutomationTime::NotReached;
    };
    let g_eff = scenario.effective_labor_growth();
    let q0 = scenario.compute_path.initial();
    if q0 >= thr0 * (1.0 - THRESHOLD_TIE_TOL) {
        return AutomationTime::At(0.0);
    }
    match scenario.compute_path {
        ComputePath::Exponential { growth, .. } => {
            let relative = growth - g_eff;
            if relative <= 0.0 {
                AutomationTime::NotReached
            } else {
                AutomationTime::At((thr0 / q0).ln() / relative)
            }
        }
        ComputePath::BoundedSaturating { q_max, .. } => {
            bounded_crossing(&scenario.compute_path, q_max, thr0, g_eff)
        }
    }
}

/// First `t` with `ln Q_t - ln thr_0 - g_eff t >= 0` on a saturating path.
/// That gap is concave in `t`, so it has one peak and at most one upward
/// crossing before it.
fn bounded_crossing(path: &ComputePath, q_max: f64, thr0: f64, g_eff: f64) -> AutomationTime {
    let gap = |t: f64| (compute_at(path, t) / thr0).ln() - g_eff * t;
    let slope = |t: f64| path.growth_rate_at(t) - g_eff;

    let peak = if g_eff > 0.0 {
        if slope(0.0) <= 0.0 {
            return AutomationTime::NotReached;
        }
        let Some(hi) = expand_until(|t| slope(t) <= 0.0) else {
            return AutomationTime::NotReached;
        };
        bisect(0.0, hi, slope)
    } else {
        if g_eff == 0.0 && q_max <= thr0 {
            return AutomationTime::NotReached;
        }
        match expand_until(|t| gap(t) >= 0.0) {
            Some(hi) => hi,
            None => return AutomationTime::NotReached,
        }
    };
    if gap(peak) < 0.0 {
        return AutomationTime::NotReached;
    }
    // bisect wants f(lo) > 0 >= f(hi); gap is negative at 0.
    let t = bisect(0.0, peak, |t| -gap(t));
    AutomationTime::At(t)
}

/// Doubles a horizon from one year until `done` holds, giving up after
/// about 10^18 years.
fn expand_until(done: impl Fn(f64) -> bool) -> Option<f64> {
    let mut t = 1.0;
    for _ in 0..64 {
        if done(t) {
            return Some(t);
        }
        t *= 2.0;
    }
    None
}

/// Whether a physical bottleneck keeps positive human labor when compute
/// saturates at `q_max`: true iff the cost is infinite or
/// `alpha_p * labor_flow > q_max`. `labor_flow` is the asymptotic labor
/// flow the task would absorb; it is an input, not derived here.
pub fn persistence_check(alpha_p: AutomationCost, labor_flow: f64, q_max: f64) -> bool {
    match alpha_p.value() {
        None => true,
        Some(alpha) => alpha * labor_flow > q_max,
    }
}

/// Output growth once cognitive work runs on compute and physical work on
/// (augmented) labor: `(1-beta) g_Q + beta g_L + beta g_AL`.
pub fn growth_decomposition(beta: f64, g_q: f64, g_l: f64, g_al: f64) -> f64 {
    (1.0 - beta) * g_q + beta * g_l + beta * g_al
}

/// Centered log-difference growth rate of output at each interior point of
/// a uniformly spaced trajectory.
pub fn numeric_growth_rate(trajectory: &[TrajectoryPoint]) -> Result<Vec<(f64, f64)>> {
    let times: Vec<f64> = trajectory.iter().map(|p| p.t).collect();
    let outputs: Vec<f64> = trajectory.iter().map(|p| p.result.output).collect();
    centered_log_growth(&times, &outputs)
}

pub(crate) fn centered_log_growth(times: &[f64], values: &[f64]) -> Result<Vec<(f64, f64)>> {
    if times.len() != values.len() || times.len() < 3 {
        return Err(Error::invalid(
            "trajectory",
            "need at least 3 points with one value each",
        ));
    }
    let step = times[1] - times[0];
    if !(step > 0.0) {
        return Err(Error::invalid("trajectory", "times must increase"));
    }
    if times
        .windows(2)
        .any(|w| ((w[1] - w[0]) - step).abs() > 1e-9 * step.max(1.0))
    {
        return Err(Error::invalid(
            "trajectory",
            "times must be uniformly spaced",
        ));
    }
    if let Some(i) = values.iter().position(|&y| !(y > 0.0)) {
        return Err(Error::NonPositiveOutput {
            t: times[i],
            value: values[i],
        });
    }
    let logs: Vec<f64> = values.iter().map(|y| y.ln()).collect();
    Ok((1..times.len() - 1)
        .map(|i| {
            (
                times[i],
                (logs[i + 1] - logs[i - 1]) / (times[i + 1] - times[i - 1]),
            )
        })
        .collect())
}
