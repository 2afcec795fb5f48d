//! Full pipeline at one point: couplings → channel state → χ → F, C, P.

use crate::couplings::{coupling_pair, CouplingRates, GeometryParams};
use crate::dynamics::{
    evolve_x_analytic, initial_density, trajectory, DensityMatrix4, Engine, InitialState,
    StepControl,
};
use crate::error::{domain, Result};
use crate::metrics::{concurrence, concurrence_x_fast, purity};
use crate::teleport::{
    bell_diagonal, chi_vector, max_average_fidelity_chi, ChiVector, RecoveryStrategy,
};

/// Everything reported about the channel at one (state, geometry, t).
#[derive(Debug, Clone, PartialEq)]
pub struct PointMetrics {
    pub state: DensityMatrix4,
    pub chi: ChiVector,
    pub fidelity: f64,
    pub strategy: RecoveryStrategy,
    pub concurrence: f64,
    pub purity: f64,
}

impl PointMetrics {
    pub fn of(state: DensityMatrix4) -> Result<Self> {
        let (chi, c) = if state.x_leakage() == 0.0 {
            let x = state.to_x_state();
            (chi_vector(&x), concurrence_x_fast(&x))
        } else {
            (bell_diagonal(&state), concurrence(&state)?)
        };
        let (fidelity, strategy) = max_average_fidelity_chi(&chi);
        let p = purity(&state);
        Ok(Self {
            state,
            chi,
            fidelity,
            strategy,
            concurrence: c,
            purity: p,
        })
    }

    /// The fully entangled fraction, max χ.
    pub fn fef(&self) -> f64 {
        self.chi.max()
    }
}

fn check_gt(gamma_t: f64) -> Result<()> {
    if !(gamma_t >= 0.0) || !gamma_t.is_finite() {
        return Err(domain(format!(
            "dimensionless time must be finite and non-negative, got {gamma_t}"
        )));
    }
    Ok(())
}

/// Max average fidelity at `gamma_t` for explicit rates, analytic engine.
pub fn fidelity_with_rates(
    initial: InitialState,
    rates: &CouplingRates,
    gamma: f64,
    omega0: f64,
    gamma_t: f64,
) -> Result<f64> {
    check_gt(gamma_t)?;
    let x = evolve_x_analytic(
        &initial_density(initial),
        rates,
        gamma,
        omega0,
        gamma_t / gamma,
    )?;
    Ok(max_average_fidelity_chi(&chi_vector(&x)).0)
}

pub fn evaluate_with_rates(
    initial: InitialState,
    rates: &CouplingRates,
    gamma: f64,
    omega0: f64,
    gamma_t: f64,
) -> Result<PointMetrics> {
    check_gt(gamma_t)?;
    let x = evolve_x_analytic(
        &initial_density(initial),
        rates,
        gamma,
        omega0,
        gamma_t / gamma,
    )?;
    PointMetrics::of(x.to_density())
}

/// Analytic-engine evaluation at dimensionless time `gamma_t`.
pub fn evaluate(
    initial: InitialState,
    geom: &GeometryParams,
    gamma_t: f64,
) -> Result<PointMetrics> {
    let rates = coupling_pair(geom)?;
    evaluate_with_rates(initial, &rates, geom.gamma, geom.omega0, gamma_t)
}

pub fn evaluate_with(
    initial: InitialState,
    geom: &GeometryParams,
    gamma_t: f64,
    engine: Engine,
    control: &StepControl,
) -> Result<PointMetrics> {
    check_gt(gamma_t)?;
    let rates = coupling_pair(geom)?;
    let t = gamma_t / geom.gamma;
    let mut states = trajectory(
        &initial_density(initial),
        &rates,
        geom.gamma,
        geom.omega0,
        &[t],
        engine,
        control,
    )?;
    PointMetrics::of(states.pop().expect("one time requested"))
}
