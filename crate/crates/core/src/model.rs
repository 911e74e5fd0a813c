//! Domain types, the task-output identity and the two production families.

use std::fmt;

use crate::error::{Error, Result};

/// Compute needed to replicate one human-hour of work on a task, in FLOP
/// per year per human-hour equivalent. Either a strictly positive finite
/// value or `Infinite` (the task cannot be automated at any compute level).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AutomationCost(CostRepr);

#[derive(Debug, Clone, Copy, PartialEq)]
enum CostRepr {
    Finite(f64),
    Infinite,
}

impl AutomationCost {
    pub const INFINITE: AutomationCost = AutomationCost(CostRepr::Infinite);

    pub fn finite(value: f64) -> Result<Self> {
        if value.is_finite() && value > 0.0 {
            Ok(AutomationCost(CostRepr::Finite(value)))
        } else {
            Err(Error::invalid(
                "automation cost",
                format!("must be finite and > 0, got {value}"),
            ))
        }
    }

    /// The finite cost, or `None` for `Infinite`.
    pub fn value(&self) -> Option<f64> {
        match self.0 {
            CostRepr::Finite(v) => Some(v),
            CostRepr::Infinite => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self.0, CostRepr::Infinite)
    }

    /// Orders costs with `Infinite` above every finite value.
    pub(crate) fn le(&self, other: &AutomationCost) -> bool {
        match (self.value(), other.value()) {
            (Some(a), Some(b)) => a <= b,
            (_, None) => true,
            (None, Some(_)) => false,
        }
    }
}

impl fmt::Display for AutomationCost {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            CostRepr::Finite(v) => write!(f, "{v:e}"),
            CostRepr::Infinite => f.write_str("inf"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TaskClass {
    Cognitive,
    Physical,
}

impl TaskClass {
    pub fn other(self) -> TaskClass {
        match self {
            TaskClass::Cognitive => TaskClass::Physical,
            TaskClass::Physical => TaskClass::Cognitive,
        }
    }
}

impl fmt::Display for TaskClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TaskClass::Cognitive => "cognitive",
            TaskClass::Physical => "physical",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TaskSpec {
    pub id: String,
    pub class: TaskClass,
    pub cost: AutomationCost,
}

impl TaskSpec {
    pub fn new(id: impl Into<String>, class: TaskClass, cost: AutomationCost) -> Self {
        TaskSpec {
            id: id.into(),
            class,
            cost,
        }
    }
}

/// Exactly one representative task per class.
#[derive(Debug, Clone, PartialEq)]
pub struct TaskPair {
    cognitive: TaskSpec,
    physical: TaskSpec,
}

impl TaskPair {
    pub fn new(cognitive: TaskSpec, physical: TaskSpec) -> Result<Self> {
        if cognitive.class != TaskClass::Cognitive || physical.class != TaskClass::Physical {
            return Err(Error::invalid(
                "tasks",
                "need one cognitive and one physical task",
            ));
        }
        if cognitive.id == physical.id {
            return Err(Error::invalid(
                "tasks",
                format!("duplicate task id {:?}", cognitive.id),
            ));
        }
        Ok(TaskPair {
            cognitive,
            physical,
        })
    }

    /// Shorthand for a pair with ids `"cognitive"` and `"physical"`.
    pub fn from_costs(alpha_c: AutomationCost, alpha_p: AutomationCost) -> Self {
        TaskPair {
            cognitive: TaskSpec::new("cognitive", TaskClass::Cognitive, alpha_c),
            physical: TaskSpec::new("physical", TaskClass::Physical, alpha_p),
        }
    }

    pub fn cognitive(&self) -> &TaskSpec {
        &self.cognitive
    }

    pub fn physical(&self) -> &TaskSpec {
        &self.physical
    }

    pub fn get(&self, class: TaskClass) -> &TaskSpec {
        match class {
            TaskClass::Cognitive => &self.cognitive,
            TaskClass::Physical => &self.physical,
        }
    }

    pub fn cost(&self, class: TaskClass) -> AutomationCost {
        self.get(class).cost
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Family {
    /// `x_c^(1-beta) * x_p^beta`
    CobbDouglas { beta: f64 },
    /// `[(1-beta) x_c^rho + beta x_p^rho]^(1/rho)`
    Ces { beta: f64, rho: f64 },
}

impl Family {
    pub fn beta(&self) -> f64 {
        match *self {
            Family::CobbDouglas { beta } | Family::Ces { beta, .. } => beta,
        }
    }

    /// Substitution parameter; 0 for Cobb-Douglas.
    pub fn rho(&self) -> f64 {
        match *self {
            Family::CobbDouglas { .. } => 0.0,
            Family::Ces { rho, .. } => rho,
        }
    }

    /// Distribution weight on a class's aggregate.
    pub fn weight(&self, class: TaskClass) -> f64 {
        match class {
            TaskClass::Cognitive => 1.0 - self.beta(),
            TaskClass::Physical => self.beta(),
        }
    }

    /// Whether output is zero whenever either aggregate is zero.
    pub fn is_essential(&self) -> bool {
        self.rho() <= 0.0
    }
}

/// Aggregate production: a family plus Hicks-neutral (`A`) and
/// labor-augmenting (`A^L`) productivity levels.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProductionSpec {
    family: Family,
    hicks_neutral: f64,
    labor_augmenting: f64,
}

impl ProductionSpec {
    pub fn new(family: Family, hicks_neutral: f64, labor_augmenting: f64) -> Result<Self> {
        let beta = family.beta();
        if !(beta > 0.0 && beta < 1.0) {
            return Err(Error::invalid(
                "beta",
                format!("must be in (0, 1), got {beta}"),
            ));
        }
        if let Family::Ces { rho, .. } = family {
            if !(rho.is_finite() && rho < 1.0) {
                return Err(Error::invalid("rho", format!("must be < 1, got {rho}")));
            }
            if rho == 0.0 {
                return Err(Error::invalid(
                    "rho",
                    "rho = 0 is Cobb-Douglas; use that family",
                ));
            }
        }
        if !(hicks_neutral.is_finite() && hicks_neutral > 0.0) {
            return Err(Error::invalid(
                "hicks_neutral",
                format!("must be finite and > 0, got {hicks_neutral}"),
            ));
        }
        if !(labor_augmenting.is_finite() && labor_augmenting > 0.0) {
            return Err(Error::invalid(
                "labor_augmenting",
                format!("must be finite and > 0, got {labor_augmenting}"),
            ));
        }
        Ok(ProductionSpec {
            family,
            hicks_neutral,
            labor_augmenting,
        })
    }

    pub fn cobb_douglas(beta: f64) -> Result<Self> {
        Self::new(Family::CobbDouglas { beta }, 1.0, 1.0)
    }

    pub fn ces(beta: f64, rho: f64) -> Result<Self> {
        Self::new(Family::Ces { beta, rho }, 1.0, 1.0)
    }

    pub fn with_productivity(self, hicks_neutral: f64, labor_augmenting: f64) -> Result<Self> {
        Self::new(self.family, hicks_neutral, labor_augmenting)
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn beta(&self) -> f64 {
        self.family.beta()
    }

    pub fn hicks_neutral(&self) -> f64 {
        self.hicks_neutral
    }

    pub fn labor_augmenting(&self) -> f64 {
        self.labor_augmenting
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResourceState {
    /// FLOP per year.
    pub compute: f64,
    /// Human-hours per year.
    pub labor: f64,
}

impl ResourceState {
    pub fn new(compute: f64, labor: f64) -> Result<Self> {
        if !(compute.is_finite() && compute >= 0.0) {
            return Err(Error::invalid(
                "compute",
                format!("must be finite and >= 0, got {compute}"),
            ));
        }
        if !(labor.is_finite() && labor >= 0.0) {
            return Err(Error::invalid(
                "labor",
                format!("must be finite and >= 0, got {labor}"),
            ));
        }
        Ok(ResourceState { compute, labor })
    }
}

/// Split of labor (human-hours/yr) and compute (FLOP/yr) across the two
/// aggregates.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Allocation {
    pub labor_cognitive: f64,
    pub labor_physical: f64,
    pub compute_cognitive: f64,
    pub compute_physical: f64,
}

impl Allocation {
    pub fn labor(&self, class: TaskClass) -> f64 {
        match class {
            TaskClass::Cognitive => self.labor_cognitive,
            TaskClass::Physical => self.labor_physical,
        }
    }

    pub fn compute(&self, class: TaskClass) -> f64 {
        match class {
            TaskClass::Cognitive => self.compute_cognitive,
            TaskClass::Physical => self.compute_physical,
        }
    }

    pub(crate) fn set(&mut self, class: TaskClass, labor: f64, compute: f64) {
        match class {
            TaskClass::Cognitive => {
                self.labor_cognitive = labor;
                self.compute_cognitive = compute;
            }
            TaskClass::Physical => {
                self.labor_physical = labor;
                self.compute_physical = compute;
            }
        }
    }

    pub fn labor_used(&self) -> f64 {
        self.labor_cognitive + self.labor_physical
    }

    pub fn compute_used(&self) -> f64 {
        self.compute_cognitive + self.compute_physical
    }

    /// Checks nonnegativity, both resource constraints (relative slack
    /// `tol`) and that no compute goes to an infinite-cost task.
    pub fn is_feasible(&self, resources: &ResourceState, tasks: &TaskPair, tol: f64) -> bool {
        let fields = [
            self.labor_cognitive,
            self.labor_physical,
            self.compute_cognitive,
            self.compute_physical,
        ];
        if fields.iter().any(|v| !(v.is_finite() && *v >= 0.0)) {
            return false;
        }
        if self.labor_used() > resources.labor * (1.0 + tol) {
            return false;
        }
        if self.compute_used() > resources.compute * (1.0 + tol) {
            return false;
        }
        [TaskClass::Cognitive, TaskClass::Physical]
            .iter()
            .all(|&c| !tasks.cost(c).is_infinite() || self.compute(c) == 0.0)
    }

    /// Effective task quantities `(X_c, X_p)`.
    pub fn quantities(&self, tasks: &TaskPair, labor_augmenting: f64) -> Result<(f64, f64)> {
        let x_c = task_output(
            self.labor_cognitive,
            self.compute_cognitive,
            tasks.cost(TaskClass::Cognitive),
            labor_augmenting,
        )?;
        let x_p = task_output(
            self.labor_physical,
            self.compute_physical,
            tasks.cost(TaskClass::Physical),
            labor_augmenting,
        )?;
        Ok((x_c, x_p))
    }
}

/// Effective quantity of a task: `A^L * labor + compute / cost`, in
/// human-hour equivalents per year.
pub fn task_output(
    labor: f64,
    compute: f64,
    cost: AutomationCost,
    labor_augmenting: f64,
) -> Result<f64> {
    if !(labor >= 0.0 && labor.is_finite()) {
        return Err(Error::invalid(
            "labor",
            format!("must be >= 0, got {labor}"),
        ));
    }
    if !(compute >= 0.0 && compute.is_finite()) {
        return Err(Error::invalid(
            "compute",
            format!("must be >= 0, got {compute}"),
        ));
    }
    let automated = match cost.value() {
        Some(alpha) => compute / alpha,
        None if compute > 0.0 => return Err(Error::InfiniteCostWithCompute),
        None => 0.0,
    };
    Ok(labor_augmenting * labor + automated)
}

/// CES kernel without the `A` factor: returns `(Y/A, share_c, share_p)`
/// where the shares are each aggregate's share of output under
/// competitive pricing. Works in log space around a reference input so
/// that neither large inputs nor `|rho|` near zero lose precision.
pub(crate) fn ces_kernel(x_c: f64, x_p: f64, beta: f64, rho: f64) -> (f64, f64, f64) {
    let (w_c, w_p) = (1.0 - beta, beta);
    if x_c == 0.0 && x_p == 0.0 {
        return (0.0, w_c, w_p);
    }
    // The reference input makes (other/reference)^rho <= 1.
    let cognitive_is_ref = if rho < 0.0 { x_c <= x_p } else { x_c >= x_p };
    let (x_ref, x_other, w_ref, w_other) = if cognitive_is_ref {
        (x_c, x_p, w_c, w_p)
    } else {
        (x_p, x_c, w_p, w_c)
    };
    if x_ref == 0.0 {
        // Complements with one input at zero.
        let (s_c, s_p) = if x_c == 0.0 { (1.0, 0.0) } else { (0.0, 1.0) };
        return (0.0, s_c, s_p);
    }
    let log_ratio = (x_other / x_ref).ln();
    let ln_s = (w_other * (rho * log_ratio).exp_m1()).ln_1p();
    let y = x_ref * (ln_s / rho).exp();
    let share_ref = (w_ref * (-ln_s).exp()).min(1.0);
    let share_other = (w_other * (rho * log_ratio - ln_s).exp()).min(1.0);
    if cognitive_is_ref {
        (y, share_ref, share_other)
    } else {
        (y, share_other, share_ref)
    }
}

/// Aggregate output per year from the two task quantities.
pub fn aggregate_output(x_cognitive: f64, x_physical: f64, spec: &ProductionSpec) -> f64 {
    let a = spec.hicks_neutral;
    match spec.family {
        Family::CobbDouglas { beta } => {
            if x_cognitive <= 0.0 || x_physical <= 0.0 {
                0.0
            } else {
                a * x_physical * (x_cognitive / x_physical).powf(1.0 - beta)
            }
        }
        Family::Ces { beta, rho } => a * ces_kernel(x_cognitive, x_physical, beta, rho).0,
    }
}

/// Partial derivatives of output with respect to `X_c` and `X_p`.
///
/// Both families have an infinite derivative at a zero input, which is
/// reported as [`Error::UndefinedMarginal`] rather than as `inf`.
pub fn marginal_products(
    x_cognitive: f64,
    x_physical: f64,
    spec: &ProductionSpec,
) -> Result<(f64, f64)> {
    if x_cognitive <= 0.0 {
        return Err(Error::UndefinedMarginal(TaskClass::Cognitive));
    }
    if x_physical <= 0.0 {
        return Err(Error::UndefinedMarginal(TaskClass::Physical));
    }
    let a = spec.hicks_neutral;
    let (y, s_c, s_p) = match spec.family {
        Family::CobbDouglas { beta } => (
            aggregate_output(x_cognitive, x_physical, spec),
            1.0 - beta,
            beta,
        ),
        Family::Ces { beta, rho } => {
            let (y, s_c, s_p) = ces_kernel(x_cognitive, x_physical, beta, rho);
            (a * y, s_c, s_p)
        }
    };
    Ok((s_c * y / x_cognitive, s_p * y / x_physical))
}
