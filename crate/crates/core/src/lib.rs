//! Growth under differential automation costs.
//!
//! Two task aggregates, cognitive and physical, are each produced by human
//! labor or by compute at a per-task automation cost. The crate solves the
//! efficient static split of labor and compute, prices it competitively,
//! simulates trajectories as total compute grows, and classifies the
//! long-run labor share.
//!
//! Units are per-year flows: compute in FLOP per year, labor in human-hours
//! per year, automation cost in FLOP per year per human-hour equivalent.

// `!(x > 0.0)` style checks are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod allocator;
pub mod analysis;
mod bisection;
pub mod dynamics;
mod error;
pub mod model;

pub use allocator::{
    allocate, automation_flags, automation_threshold, brute_force_allocate, kkt_residual, prices,
    AllocationResult, AutomationFlags,
};
pub use analysis::{
    asymptotic_labor_share, bottleneck_kind, ces_share, classify_bottleneck, AsymptoticVerdict,
    BottleneckKind, LimitingShare, Regime,
};
pub use dynamics::{
    cognitive_automation_time, compute_at, growth_decomposition, numeric_growth_rate,
    persistence_check, physical_automation_time, simulate, uniform_grid, AutomationTime,
    ComputePath, GrowthRates, Scenario, TrajectoryPoint,
};
pub use error::{Error, Result};
pub use model::{
    aggregate_output, marginal_products, task_output, Allocation, AutomationCost, Family,
    ProductionSpec, ResourceState, TaskClass, TaskPair, TaskSpec,
};
