//! Closed forms, root finding over (γt, r/λ), and figure sweeps.

pub mod closed_form;
mod pipeline;
pub mod roots;
mod sweep;
mod thresholds;

pub use closed_form::{
    fidelity_psi1_closed, fidelity_psi2_closed, product_chi_closed, product_concurrence_closed,
    psi0_dicke_limit, psi0_infinite_separation, psi1_closed, psi2_closed, LimitMetrics,
};
pub use pipeline::{
    evaluate, evaluate_with, evaluate_with_rates, fidelity_with_rates, PointMetrics,
};
pub use sweep::{
    sweep, SampleRange, SweepAxis, SweepSpec, SweepTable, CURVE_COLUMNS, SURFACE_COLUMNS,
};
pub use thresholds::{
    critical_time, critical_time_within, decay_time_thresholds, nonclassical_region,
    optimal_separation, NonclassicalRegion, RegionScan, Threshold, ThresholdReport,
    ALL_DISTANCE_DEFINITION, CRITICAL_WINDOW, EXTINCTION_DEFINITION, TAIL_DEFINITION,
    THRESHOLD_TOL,
};
