//! Teleportation through a pair of dipole-coupled two-level atoms decaying
//! into a shared vacuum.
//!
//! Units: rates in units of the single-atom decay rate γ when γ = 1, separations as r/λ.
//! Two-atom basis order is |ee⟩, |eg⟩, |ge⟩, |gg⟩ throughout.

pub mod analysis;
pub mod couplings;
pub mod dynamics;
mod error;
pub mod metrics;
pub mod teleport;

pub use couplings::{coupling_pair, CouplingRates, GeometryParams};
pub use dynamics::{DensityMatrix4, Engine, InitialState, StepControl, XState};
pub use error::{Error, Result};
pub use metrics::{concurrence, concurrence_x_fast, purity, purity_x};
pub use teleport::{ChiVector, RecoveryStrategy, CLASSICAL_LIMIT};
