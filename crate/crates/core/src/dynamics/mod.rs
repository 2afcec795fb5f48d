//! Time evolution of the atom pair: the closed-form X-state propagator and
//! the direct master-equation integrator used to check it.

mod analytic;
mod lindblad;
mod state;

pub use analytic::{
    evolve_x_analytic, is_degenerate, x_coefficients, XCoefficients, DEGENERACY_GAP,
};
pub use lindblad::{
    default_max_step, evolve_lindblad, master_rhs, LindbladIntegrator, StepControl,
};
pub use state::{
    bell_amplitudes, initial_density, DensityMatrix4, InitialState, XState, HERMITIAN_TOL,
    POSITIVITY_SLACK, TRACE_TOL,
};

use crate::couplings::CouplingRates;
use crate::error::Result;

/// Which propagator produces the channel state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Engine {
    #[default]
    Analytic,
    Integrator,
}

/// Channel states at each of `times` (ascending) for an X-form start.
pub fn trajectory(
    x0: &XState,
    rates: &CouplingRates,
    gamma: f64,
    omega0: f64,
    times: &[f64],
    engine: Engine,
    control: &StepControl,
) -> Result<Vec<DensityMatrix4>> {
    match engine {
        Engine::Analytic => times
            .iter()
            .map(|&t| evolve_x_analytic(x0, rates, gamma, omega0, t).map(|x| x.to_density()))
            .collect(),
        Engine::Integrator => {
            x0.validate()?;
            LindbladIntegrator::new(rates, gamma, omega0, control)?
                .trajectory(&x0.to_density(), times)
        }
    }
}
