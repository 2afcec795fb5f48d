//! Fixtures shared by the benchmarks.

use atomtele::dynamics::{initial_density, XState};
use atomtele::{GeometryParams, InitialState};

/// Geometries used across the benchmark groups, r/λ perpendicular dipoles.
pub const SEPARATIONS: [f64; 4] = [0.05, 1.0 / 6.0, 0.6737, 5.0];

pub fn geometry(r_over_lambda: f64) -> GeometryParams {
    GeometryParams::perpendicular(r_over_lambda).expect("fixture geometry is valid")
}

/// A mixed X channel with complex coherences.
pub fn mixed_channel() -> XState {
    XState {
        c14: num_complex::Complex64::new(0.05, 0.02),
        c23: num_complex::Complex64::new(-0.12, 0.04),
        ..XState::diagonal(0.15, 0.35, 0.3, 0.2)
    }
}

pub fn bell(k: usize) -> XState {
    initial_density(InitialState::bell(k).expect("label in range"))
}
