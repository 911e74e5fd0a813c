//! Long-run labor share by regime, the CES share formula and bottleneck
//! classification.

use crate::allocator::allocate;
use crate::dynamics::{ComputePath, Scenario};
use crate::error::Result;
use crate::model::{ces_kernel, Family, ProductionSpec, ResourceState, TaskClass};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    /// Total compute stays bounded (`Q_t` saturates or does not grow).
    FiniteCompute,
    /// `Q_t -> infinity`.
    UnboundedCompute,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LimitingShare {
    Determined(f64),
    Undetermined,
}

impl LimitingShare {
    pub fn value(self) -> Option<f64> {
        match self {
            LimitingShare::Determined(s) => Some(s),
            LimitingShare::Undetermined => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymptoticVerdict {
    pub regime: Regime,
    pub limiting_labor_share: LimitingShare,
    /// Short machine-readable code naming the branch taken.
    pub reason: &'static str,
}

/// Limit of the labor share as `t -> infinity`.
///
/// By constant returns the share depends only on compute per effective
/// worker, `z = Q / (A^L L)`, so the verdict follows from where `z` goes:
///
/// * `z -> infinity` with a finite physical cost: compute eventually floods
///   the physical aggregate and the share goes to 0.
/// * `z -> infinity` with an infinite physical cost: physical work stays on
///   labor; under Cobb-Douglas the share is `beta`. Under CES the quantity
///   ratio diverges and the verdict is `Undetermined`.
/// * `z` converges: the share is the static share at the limiting point.
/// * `z -> 0`: compute becomes negligible and the share tends to the
///   labor-only value, 1.
pub fn asymptotic_labor_share(scenario: &Scenario) -> Result<AsymptoticVerdict> {
    scenario.validate()?;
    let (regime, q_growth, q_limit) = match scenario.compute_path {
        ComputePath::Exponential { q0, growth } if growth > 0.0 => {
            (Regime::UnboundedCompute, growth, q0)
        }
        ComputePath::Exponential { q0, growth } => (Regime::FiniteCompute, growth, q0),
        ComputePath::BoundedSaturating { q_max, .. } => (Regime::FiniteCompute, 0.0, q_max),
    };
    let ratio_growth = q_growth - scenario.effective_labor_growth();
    let production = scenario.production;
    let tasks = &scenario.tasks;

    // Static share at compute-per-effective-worker `z`, evaluated with one
    // unit of effective labor.
    let share_at = |z: f64| -> Result<f64> {
        let unit = production.with_productivity(production.hicks_neutral(), 1.0)?;
        let r = allocate(&ResourceState::new(z, 1.0)?, tasks, &unit)?;
        Ok(r.labor_share)
    };

    let (share, reason) = if ratio_growth > 0.0 {
        if !tasks.physical().cost.is_infinite() {
            (LimitingShare::Determined(0.0), "physical-automates")
        } else {
            match production.family() {
                Family::CobbDouglas { beta } => {
                    (LimitingShare::Determined(beta), "physical-labor-bottleneck")
                }
                Family::Ces { .. } => (LimitingShare::Undetermined, "ces-ratio-diverges"),
            }
        }
    } else if ratio_growth < 0.0 {
        (
            LimitingShare::Determined(share_at(0.0)?),
            "labor-outgrows-compute",
        )
    } else {
        let z = q_limit / (production.labor_augmenting() * scenario.labor_supply);
        let reason = match regime {
            Regime::FiniteCompute => "compute-saturates",
            Regime::UnboundedCompute => "ratio-stabilizes",
        };
        (LimitingShare::Determined(share_at(z)?), reason)
    };
    Ok(AsymptoticVerdict {
        regime,
        limiting_labor_share: share,
        reason,
    })
}

/// Competitive income share of the physical aggregate under CES:
/// `beta x_p^rho / ((1-beta) x_c^rho + beta x_p^rho)`. At `rho = 0` this is
/// the Cobb-Douglas value `beta`.
pub fn ces_share(x_c: f64, x_p: f64, beta: f64, rho: f64) -> f64 {
    if rho == 0.0 {
        return beta;
    }
    ces_kernel(x_c, x_p, beta, rho).2
}

/// Why a class is a bottleneck: along every unbounded-output path either
/// its quantity or its marginal product is unbounded.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BottleneckKind {
    /// Output stays bounded while this input is bounded (complements,
    /// `rho < 0`), so the quantity itself must diverge.
    QuantityEssential,
    /// Output can grow with this input fixed, but then its marginal product
    /// diverges (Cobb-Douglas and CES with `0 < rho < 1`).
    MarginalDivergence,
}

/// Both aggregates of every supported family are bottlenecks. With `X_p`
/// bounded and `Y` unbounded, `X_c / X_p -> infinity` and by constant
/// returns `F_p = F_p(X_c / X_p, 1)`, which is
/// `A beta [(1-beta) r^rho + beta]^((1-rho)/rho)` under CES. That diverges
/// for every `0 < rho < 1`; for `rho < 0` output is bounded by
/// `A beta^(1/rho) X_p` instead. The same holds with the classes swapped.
pub fn bottleneck_kind(spec: &ProductionSpec, _class: TaskClass) -> BottleneckKind {
    match spec.family() {
        Family::Ces { rho, .. } if rho < 0.0 => BottleneckKind::QuantityEssential,
        Family::CobbDouglas { .. } | Family::Ces { .. } => BottleneckKind::MarginalDivergence,
    }
}

/// Whether a class is a bottleneck in the sense that any unbounded-output
/// path makes its quantity or its marginal product unbounded.
pub fn classify_bottleneck(spec: &ProductionSpec, class: TaskClass) -> bool {
    matches!(
        bottleneck_kind(spec, class),
        BottleneckKind::QuantityEssential | BottleneckKind::MarginalDivergence
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::AutomationCost;
    use approx::assert_relative_eq;

    #[test]
    fn reference_verdicts() {
        let v = asymptotic_labor_share(&Scenario::reference()).unwrap();
        assert_eq!(v.regime, Regime::UnboundedCompute);
        assert_eq!(v.limiting_labor_share, LimitingShare::Determined(0.0));

        let s = Scenario::reference().with_physical_cost(AutomationCost::INFINITE);
        let v = asymptotic_labor_share(&s).unwrap();
        assert_eq!(v.limiting_labor_share, LimitingShare::Determined(0.5));
    }

    #[test]
    fn bounded_path_evaluates_saturation_point() {
        let mut s = Scenario::reference();
        s.compute_path = ComputePath::bounded(1e22, 1e25, 0.1).unwrap();
        let v = asymptotic_labor_share(&s).unwrap();
        assert_eq!(v.regime, Regime::FiniteCompute);
        assert_eq!(v.reason, "compute-saturates");
        // Cognitive automated at 1e25 > 1e23, physical threshold 1e30 unreached.
        assert_relative_eq!(
            v.limiting_labor_share.value().unwrap(),
            0.5,
            max_relative = 1e-12
        );
    }

    #[test]
    fn ces_with_infinite_physical_cost_is_undetermined() {
        let mut s = Scenario::reference().with_physical_cost(AutomationCost::INFINITE);
        s.production = ProductionSpec::ces(0.5, -1.0).unwrap();
        let v = asymptotic_labor_share(&s).unwrap();
        assert_eq!(v.limiting_labor_share, LimitingShare::Undetermined);
    }

    #[test]
    fn balanced_growth_keeps_initial_share() {
        let mut s = Scenario::reference();
        s.production = ProductionSpec::ces(0.5, -1.0).unwrap();
        s.growth.labor = 0.2;
        let v = asymptotic_labor_share(&s).unwrap();
        assert_eq!(v.reason, "ratio-stabilizes");
        let direct = allocate(&s.resources_at(0.0).unwrap(), &s.tasks, &s.production).unwrap();
        assert_relative_eq!(
            v.limiting_labor_share.value().unwrap(),
            direct.labor_share,
            max_relative = 1e-12
        );
    }

    #[test]
    fn labor_outgrowing_compute_gives_full_share() {
        let mut s = Scenario::reference();
        s.growth.labor = 0.3;
        let v = asymptotic_labor_share(&s).unwrap();
        assert_eq!(v.limiting_labor_share, LimitingShare::Determined(1.0));
    }

    #[test]
    fn ces_share_examples() {
        for rho in [-3.0, -1.0, 0.3, 0.9] {
            assert_eq!(ces_share(7e11, 7e11, 0.5, rho), 0.5);
        }
        // At rho = -1 the expression simplifies to x_c / (x_c + x_p).
        assert_relative_eq!(
            ces_share(1e12, 1e9, 0.5, -1.0),
            1e12 / (1e12 + 1e9),
            max_relative = 1e-14
        );
        for rho in [1e-8, -1e-8] {
            assert_relative_eq!(ces_share(3.0, 11.0, 0.3, rho), 0.3, max_relative = 1e-6);
        }
    }

    #[test]
    fn bottleneck_kinds() {
        let cd = ProductionSpec::cobb_douglas(0.5).unwrap();
        assert!(classify_bottleneck(&cd, TaskClass::Physical));
        let comp = ProductionSpec::ces(0.5, -1.0).unwrap();
        assert_eq!(
            bottleneck_kind(&comp, TaskClass::Cognitive),
            BottleneckKind::QuantityEssential
        );
        let subs = ProductionSpec::ces(0.5, 0.5).unwrap();
        assert_eq!(
            bottleneck_kind(&subs, TaskClass::Physical),
            BottleneckKind::MarginalDivergence
        );
        assert!(classify_bottleneck(&subs, TaskClass::Physical));
    }
}
