//! Efficient static allocation of labor and compute across the cognitive
//! and physical aggregates, and the competitive prices it implies.
//!
//! The feasible set in `(X_c, X_p)` space has a two-segment efficient
//! frontier. Call `m` the class with the lower automation cost (compute has
//! a comparative advantage there) and `h` the other one. Starting from the
//! specialized vertex (all compute in `m`, all labor in `h`), output can be
//! raised either by moving labor into `m` or by moving compute into `h`, and
//! at most one of these directions improves. Each direction is a
//! one-dimensional concave problem solved by bisection on the log ratio of
//! marginal values, which stays finite and well scaled for inputs spanning
//! many orders of magnitude.

use crate::bisection::bisect;
use crate::error::{Error, Result};
use crate::model::{
    aggregate_output, marginal_products, Allocation, Family, ProductionSpec, ResourceState,
    TaskClass, TaskPair,
};

/// Relative band around an automation threshold treated as "at the
/// threshold". Boundary points count as automated.
pub const THRESHOLD_TIE_TOL: f64 = 1e-12;
/// A class is fully automated when it holds at most this fraction of labor.
pub const AUTOMATED_LABOR_EPS: f64 = 1e-9;
const PRICE_MATCH_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AllocationResult {
    pub allocation: Allocation,
    pub x_cognitive: f64,
    pub x_physical: f64,
    /// Output per year.
    pub output: f64,
    /// Output per human-hour.
    pub wage: f64,
    /// Output per FLOP.
    pub rent: f64,
    pub labor_share: f64,
    pub compute_share: f64,
}

impl AllocationResult {
    /// `|wage * L + rent * Q - Y| / Y` over employed resources.
    pub fn euler_residual(&self) -> f64 {
        let bill =
            self.wage * self.allocation.labor_used() + self.rent * self.allocation.compute_used();
        (bill - self.output).abs() / self.output
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AutomationFlags {
    /// Labor has left the cognitive aggregate.
    pub cognitive: bool,
    /// Compute is competitively employed in the physical aggregate.
    pub physical: bool,
    /// `Q` is at or above the cognitive automation threshold.
    pub threshold_cognitive: bool,
    /// `Q` is at or above the physical automation threshold.
    pub threshold_physical: bool,
}

impl AutomationFlags {
    pub fn agree(&self) -> bool {
        self.cognitive == self.threshold_cognitive && self.physical == self.threshold_physical
    }
}

/// The class with the lower automation cost; cognitive on ties.
fn compute_leader(tasks: &TaskPair) -> TaskClass {
    if tasks
        .cost(TaskClass::Cognitive)
        .le(&tasks.cost(TaskClass::Physical))
    {
        TaskClass::Cognitive
    } else {
        TaskClass::Physical
    }
}

fn check_economy(resources: &ResourceState, tasks: &TaskPair, spec: &ProductionSpec) -> Result<()> {
    let (q, l) = (resources.compute, resources.labor);
    if q == 0.0 && l == 0.0 {
        return Err(Error::DegenerateEconomy);
    }
    if l == 0.0 {
        let any_finite = [TaskClass::Cognitive, TaskClass::Physical]
            .iter()
            .any(|&c| !tasks.cost(c).is_infinite());
        if !any_finite {
            return Err(Error::InfeasibleSpec("no labor and no usable compute"));
        }
        let any_infinite = [TaskClass::Cognitive, TaskClass::Physical]
            .iter()
            .any(|&c| tasks.cost(c).is_infinite());
        if any_infinite && spec.family().is_essential() {
            return Err(Error::InfeasibleSpec(
                "no labor for a task with infinite automation cost",
            ));
        }
    }
    Ok(())
}

/// Output-maximizing allocation of `resources` with competitive prices.
pub fn allocate(
    resources: &ResourceState,
    tasks: &TaskPair,
    spec: &ProductionSpec,
) -> Result<AllocationResult> {
    check_economy(resources, tasks, spec)?;
    let (q, l) = (resources.compute, resources.labor);
    let a = spec.labor_augmenting();
    let family = spec.family();
    let m = compute_leader(tasks);
    let h = m.other();
    let alpha_m = tasks.cost(m).value();
    let alpha_h = tasks.cost(h).value();

    let usable_q = if alpha_m.is_some() { q } else { 0.0 };
    let curvature = 1.0 - family.rho();
    let ln_weights = (family.weight(m) / family.weight(h)).ln();
    let xm_base = alpha_m.map_or(0.0, |am| q / am);
    let xh_base = a * l;

    // ln(marginal value of labor in m / in h) for labor (to_m, to_h);
    // positive pulls labor into m.
    let labor_gap =
        |lm: f64, lh: f64| ln_weights + curvature * ((a * lh).ln() - (xm_base + a * lm).ln());

    let mut alloc = Allocation::default();
    alloc.set(m, 0.0, usable_q);
    alloc.set(h, l, 0.0);

    if l > 0.0 && labor_gap(0.0, l) > THRESHOLD_TIE_TOL {
        let (lm, lh) = if labor_gap(l, 0.0) >= 0.0 {
            (l, 0.0)
        } else {
            balance(l, labor_gap)
        };
        alloc.set(m, lm, usable_q);
        alloc.set(h, lh, 0.0);
    } else if let (Some(am), Some(ah)) = (alpha_m, alpha_h) {
        let ln_costs = (am / ah).ln();
        // ln(marginal value of compute in m / in h) for compute (to_m, to_h);
        // negative pushes compute into h.
        let compute_gap = |cm: f64, ch: f64| {
            ln_weights - ln_costs + curvature * ((xh_base + ch / ah).ln() - (cm / am).ln())
        };
        if q > 0.0 && compute_gap(q, 0.0) < -THRESHOLD_TIE_TOL {
            let (cm, ch) = if compute_gap(0.0, q) <= 0.0 {
                (0.0, q)
            } else {
                balance(q, compute_gap)
            };
            alloc.set(m, 0.0, cm);
            alloc.set(h, l, ch);
        }
    }

    finish(alloc, tasks, spec)
}

/// Splits `total` into `(to_m, to_h)` at the root of `gap`, which is
/// decreasing in `to_m` with `gap(0, total) > 0 > gap(total, 0)`. The
/// smaller side is the bisection variable and the larger one is derived
/// from it, so neither loses relative precision to cancellation.
fn balance(total: f64, gap: impl Fn(f64, f64) -> f64) -> (f64, f64) {
    let half = 0.5 * total;
    if gap(half, total - half) > 0.0 {
        let to_h = bisect(0.0, half, |x| -gap(total - x, x));
        (total - to_h, to_h)
    } else {
        let to_m = bisect(0.0, half, |x| gap(x, total - x));
        (to_m, total - to_m)
    }
}

fn finish(
    allocation: Allocation,
    tasks: &TaskPair,
    spec: &ProductionSpec,
) -> Result<AllocationResult> {
    let (x_cognitive, x_physical) = allocation.quantities(tasks, spec.labor_augmenting())?;
    let output = aggregate_output(x_cognitive, x_physical, spec);
    let (wage, rent) = prices(&allocation, tasks, spec)?;
    let wage_bill = wage * allocation.labor_used();
    let compute_bill = rent * allocation.compute_used();
    let income = wage_bill + compute_bill;
    Ok(AllocationResult {
        allocation,
        x_cognitive,
        x_physical,
        output,
        wage,
        rent,
        labor_share: wage_bill / income,
        compute_share: compute_bill / income,
    })
}

/// Competitive `(wage, rent)` at an allocation: the best marginal value of
/// an hour of labor and of a FLOP of compute across the two aggregates.
/// When no compute is employed the rent is the shadow value of the first
/// FLOP.
pub fn prices(
    allocation: &Allocation,
    tasks: &TaskPair,
    spec: &ProductionSpec,
) -> Result<(f64, f64)> {
    let a = spec.labor_augmenting();
    let (x_c, x_p) = allocation.quantities(tasks, a)?;
    let (mp_c, mp_p) = marginal_products(x_c, x_p, spec)?;
    let wage = a * mp_c.max(mp_p);
    let rent = [(TaskClass::Cognitive, mp_c), (TaskClass::Physical, mp_p)]
        .iter()
        .filter_map(|&(c, mp)| tasks.cost(c).value().map(|alpha| mp / alpha))
        .fold(0.0, f64::max);
    Ok((wage, rent))
}

/// Largest relative gap between a resource's price and its marginal value
/// in a use where it is employed. Zero at an exact optimum.
pub fn kkt_residual(
    result: &AllocationResult,
    tasks: &TaskPair,
    spec: &ProductionSpec,
) -> Result<f64> {
    let a = spec.labor_augmenting();
    let alloc = &result.allocation;
    let (mp_c, mp_p) = marginal_products(result.x_cognitive, result.x_physical, spec)?;
    let mut residual: f64 = 0.0;
    for (class, mp) in [(TaskClass::Cognitive, mp_c), (TaskClass::Physical, mp_p)] {
        if alloc.labor(class) > 0.0 {
            residual = residual.max((result.wage - a * mp) / result.wage);
        }
        if alloc.compute(class) > 0.0 {
            if let Some(alpha) = tasks.cost(class).value() {
                residual = residual.max((result.rent - mp / alpha) / result.rent);
            }
        }
    }
    Ok(residual)
}

/// Total compute at which a class becomes automated, for a given effective
/// labor supply `A^L * L`.
///
/// Cognitive: labor leaves the cognitive aggregate once
/// `Q >= alpha_c A^L L ((1-beta)/beta)^(1/(1-rho))`. Physical: compute starts
/// flowing into the physical aggregate once
/// `Q >= alpha_c A^L L ((1-beta) alpha_p / (beta alpha_c))^(1/(1-rho))`.
/// Under Cobb-Douglas these are `((1-beta)/beta) alpha A^L L`. Returns
/// `None` for a class that never automates (infinite cost, or infinite
/// cognitive cost). Assumes `alpha_c <= alpha_p`.
pub fn automation_threshold(
    class: TaskClass,
    tasks: &TaskPair,
    spec: &ProductionSpec,
    effective_labor: f64,
) -> Option<f64> {
    let alpha_c = tasks.cost(TaskClass::Cognitive).value()?;
    let beta = spec.beta();
    let odds = (1.0 - beta) / beta;
    let alpha = tasks.cost(class).value()?;
    match spec.family() {
        Family::CobbDouglas { .. } => Some(odds * alpha * effective_labor),
        Family::Ces { rho, .. } => {
            let ratio = (odds * alpha / alpha_c).powf(1.0 / (1.0 - rho));
            Some(alpha_c * effective_labor * ratio)
        }
    }
}

/// Allocation-based and threshold-based automation flags.
pub fn automation_flags(
    result: &AllocationResult,
    tasks: &TaskPair,
    resources: &ResourceState,
    spec: &ProductionSpec,
) -> AutomationFlags {
    let alloc = &result.allocation;
    let cognitive = alloc.labor_cognitive <= AUTOMATED_LABOR_EPS * resources.labor;
    let physical = cognitive
        && match (
            tasks.cost(TaskClass::Physical).value(),
            marginal_products(result.x_cognitive, result.x_physical, spec),
        ) {
            (Some(alpha_p), Ok((_, mp_p))) => {
                mp_p / alpha_p >= result.rent * (1.0 - PRICE_MATCH_TOL)
            }
            _ => false,
        };
    let effective_labor = spec.labor_augmenting() * resources.labor;
    let reached = |class| {
        automation_threshold(class, tasks, spec, effective_labor)
            .is_some_and(|thr| resources.compute >= thr * (1.0 - THRESHOLD_TIE_TOL))
    };
    AutomationFlags {
        cognitive,
        physical,
        threshold_cognitive: reached(TaskClass::Cognitive),
        threshold_physical: reached(TaskClass::Physical),
    }
}

/// Exhaustive grid search over the labor share sent to physical and the
/// compute share sent to physical, refined once around the best cell.
/// Independent of [`allocate`]; used as a test oracle.
pub fn brute_force_allocate(
    resources: &ResourceState,
    tasks: &TaskPair,
    spec: &ProductionSpec,
    grid_points: usize,
) -> Result<AllocationResult> {
    if grid_points < 11 {
        return Err(Error::invalid(
            "grid_points",
            format!("must be >= 11, got {grid_points}"),
        ));
    }
    check_economy(resources, tasks, spec)?;
    let (q, l) = (resources.compute, resources.labor);
    let finite_c = !tasks.cost(TaskClass::Cognitive).is_infinite();
    let finite_p = !tasks.cost(TaskClass::Physical).is_infinite();
    let split_compute = finite_c && finite_p;

    let build = |u: f64, v: f64| {
        let labor_physical = u * l;
        let (compute_cognitive, compute_physical) = match (finite_c, finite_p) {
            (true, true) => (q - v * q, v * q),
            (true, false) => (q, 0.0),
            (false, true) => (0.0, q),
            (false, false) => (0.0, 0.0),
        };
        Allocation {
            labor_cognitive: l - labor_physical,
            labor_physical,
            compute_cognitive,
            compute_physical,
        }
    };
    // Points with an empty aggregate are skipped: every family has an
    // infinite marginal product there, so they are never optimal.
    let value = |alloc: &Allocation| -> f64 {
        match alloc.quantities(tasks, spec.labor_augmenting()) {
            Ok((x_c, x_p)) if x_c > 0.0 && x_p > 0.0 => aggregate_output(x_c, x_p, spec),
            _ => f64::NEG_INFINITY,
        }
    };
    let search = |u_lo: f64, u_hi: f64, v_lo: f64, v_hi: f64| {
        let n = grid_points - 1;
        let v_steps = if split_compute { n } else { 0 };
        let mut best = (f64::NEG_INFINITY, 0.0, 0.0);
        for i in 0..=n {
            let u = u_lo + (u_hi - u_lo) * i as f64 / n as f64;
            for j in 0..=v_steps {
                let v = if v_steps == 0 {
                    v_lo
                } else {
                    v_lo + (v_hi - v_lo) * j as f64 / n as f64
                };
                let y = value(&build(u, v));
                if y > best.0 {
                    best = (y, u, v);
                }
            }
        }
        best
    };

    let cell = 1.0 / (grid_points - 1) as f64;
    let (_, u0, v0) = search(0.0, 1.0, 0.0, 1.0);
    let (_, u1, v1) = search(
        (u0 - cell).max(0.0),
        (u0 + cell).min(1.0),
        (v0 - cell).max(0.0),
        (v0 + cell).min(1.0),
    );
    finish(build(u1, v1), tasks, spec)
}
