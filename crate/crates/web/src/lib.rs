//! WebAssembly bindings for the browser demo. Each export takes plain
//! numbers and returns a JSON string; the `*_json` functions hold the logic
//! and also run natively.
//!
//! A physical cost of `Infinity` means the physical task cannot be
//! automated. `rho = 0` selects Cobb-Douglas.

use serde_json::{json, Value};
use taskgrowth::{
    allocate, asymptotic_labor_share, automation_flags, cognitive_automation_time,
    physical_automation_time, simulate, uniform_grid, AutomationCost, ComputePath, GrowthRates,
    LimitingShare, ProductionSpec, ResourceState, Scenario, TaskPair,
};
use wasm_bindgen::prelude::*;

/// Economy parameters shared by the exports.
#[derive(Debug, Clone, Copy)]
pub struct Params {
    pub beta: f64,
    pub rho: f64,
    pub alpha_c: f64,
    pub alpha_p: f64,
}

impl Params {
    fn tasks(&self) -> Result<TaskPair, String> {
        let cost = |x: f64| {
            if x == f64::INFINITY {
                Ok(AutomationCost::INFINITE)
            } else {
                AutomationCost::finite(x).map_err(|e| e.to_string())
            }
        };
        Ok(TaskPair::from_costs(
            cost(self.alpha_c)?,
            cost(self.alpha_p)?,
        ))
    }

    fn production(&self) -> Result<ProductionSpec, String> {
        if self.rho == 0.0 {
            ProductionSpec::cobb_douglas(self.beta)
        } else {
            ProductionSpec::ces(self.beta, self.rho)
        }
        .map_err(|e| e.to_string())
    }
}

fn time_json(t: Option<f64>) -> Value {
    t.map_or(Value::Null, |t| json!(t))
}

/// Trajectory under exponential compute growth `Q0 e^(g t)` with constant
/// labor, plus automation times and the long-run verdict.
#[allow(clippy::too_many_arguments)]
pub fn trajectory_json(
    p: Params,
    labor: f64,
    q0: f64,
    growth: f64,
    t_end: f64,
    t_step: f64,
) -> Result<String, String> {
    let scenario = Scenario {
        tasks: p.tasks()?,
        production: p.production()?,
        labor_supply: labor,
        compute_path: ComputePath::exponential(q0, growth).map_err(|e| e.to_string())?,
        growth: GrowthRates::default(),
    };
    let grid = uniform_grid(0.0, t_end, t_step).map_err(|e| e.to_string())?;
    let traj = simulate(&scenario, &grid).map_err(|e| e.to_string())?;
    let verdict = asymptotic_labor_share(&scenario).map_err(|e| e.to_string())?;
    let column = |f: &dyn Fn(&taskgrowth::TrajectoryPoint) -> Value| -> Vec<Value> {
        traj.iter().map(f).collect()
    };
    let out = json!({
        "t": column(&|p| json!(p.t)),
        "Q": column(&|p| json!(p.q)),
        "Y": column(&|p| json!(p.result.output)),
        "labor_share": column(&|p| json!(p.result.labor_share)),
        "cog_automated": column(&|p| json!(p.flags.cognitive)),
        "phys_automated": column(&|p| json!(p.flags.physical)),
        "cognitive_time": time_json(cognitive_automation_time(&scenario).years()),
        "physical_time": time_json(physical_automation_time(&scenario).years()),
        "limiting_labor_share": match verdict.limiting_labor_share {
            LimitingShare::Determined(s) => json!(s),
            LimitingShare::Undetermined => json!("undetermined"),
        },
        "reason": verdict.reason,
    });
    Ok(out.to_string())
}

/// Efficient allocation and prices for fixed compute and labor.
pub fn allocation_json(p: Params, compute: f64, labor: f64) -> Result<String, String> {
    let tasks = p.tasks()?;
    let spec = p.production()?;
    let res = ResourceState::new(compute, labor).map_err(|e| e.to_string())?;
    let r = allocate(&res, &tasks, &spec).map_err(|e| e.to_string())?;
    let flags = automation_flags(&r, &tasks, &res, &spec);
    let a = r.allocation;
    let out = json!({
        "labor_cognitive": a.labor_cognitive,
        "labor_physical": a.labor_physical,
        "compute_cognitive": a.compute_cognitive,
        "compute_physical": a.compute_physical,
        "output": r.output,
        "wage": r.wage,
        "rent": r.rent,
        "labor_share": r.labor_share,
        "cog_automated": flags.cognitive,
        "phys_automated": flags.physical,
    });
    Ok(out.to_string())
}

/// Static labor share at `n` log-spaced compute levels in `[q_lo, q_hi]`.
pub fn share_curve_json(
    p: Params,
    labor: f64,
    q_lo: f64,
    q_hi: f64,
    n: usize,
) -> Result<String, String> {
    if !(q_lo > 0.0 && q_hi > q_lo && n >= 2) {
        return Err("need 0 < q_lo < q_hi and n >= 2".into());
    }
    let tasks = p.tasks()?;
    let spec = p.production()?;
    let (lo, hi) = (q_lo.log10(), q_hi.log10());
    let mut qs = Vec::with_capacity(n);
    let mut shares = Vec::with_capacity(n);
    for i in 0..n {
        let q = 10f64.powf(lo + (hi - lo) * i as f64 / (n - 1) as f64);
        let res = ResourceState::new(q, labor).map_err(|e| e.to_string())?;
        let r = allocate(&res, &tasks, &spec).map_err(|e| e.to_string())?;
        qs.push(q);
        shares.push(r.labor_share);
    }
    Ok(json!({ "Q": qs, "labor_share": shares }).to_string())
}

fn js(r: Result<String, String>) -> Result<String, JsError> {
    r.map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
#[allow(clippy::too_many_arguments)]
pub fn trajectory(
    beta: f64,
    rho: f64,
    alpha_c: f64,
    alpha_p: f64,
    labor: f64,
    q0: f64,
    growth: f64,
    t_end: f64,
    t_step: f64,
) -> Result<String, JsError> {
    let p = Params {
        beta,
        rho,
        alpha_c,
        alpha_p,
    };
    js(trajectory_json(p, labor, q0, growth, t_end, t_step))
}

#[wasm_bindgen]
pub fn allocation(
    beta: f64,
    rho: f64,
    alpha_c: f64,
    alpha_p: f64,
    compute: f64,
    labor: f64,
) -> Result<String, JsError> {
    let p = Params {
        beta,
        rho,
        alpha_c,
        alpha_p,
    };
    js(allocation_json(p, compute, labor))
}

#[wasm_bindgen]
#[allow(clippy::too_many_arguments)]
pub fn share_curve(
    beta: f64,
    rho: f64,
    alpha_c: f64,
    alpha_p: f64,
    labor: f64,
    q_lo: f64,
    q_hi: f64,
    n: usize,
) -> Result<String, JsError> {
    let p = Params {
        beta,
        rho,
        alpha_c,
        alpha_p,
    };
    js(share_curve_json(p, labor, q_lo, q_hi, n))
}
