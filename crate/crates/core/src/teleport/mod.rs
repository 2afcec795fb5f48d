//! One-qubit teleportation through a two-atom channel.
//!
//! Alice holds the input qubit A and atom 1, Bob holds atom 2. Alice measures
//! (A, 1) in the Bell basis, reports outcome `k`, and Bob applies the Pauli
//! correction `σ^{m_k}`. Averaged over the Bloch sphere and the outcomes, the
//! fidelity only depends on the Bell-basis diagonal `χ` of the channel.

mod channel;
mod quadrature;

use std::fmt;

use crate::dynamics::{bell_amplitudes, DensityMatrix4, XState};
use crate::error::{domain, Result};

pub use channel::{average_fidelity_oracle, pauli, teleport_channel, BlochState, TeleportOutcome};
pub use quadrature::gauss_legendre;

/// Best average fidelity achievable without entanglement.
pub const CLASSICAL_LIMIT: f64 = 2.0 / 3.0;

/// `RECOVERY_TABLE[k][m] = n` such that outcome `k` corrected by `σ^m`
/// contributes `χ_n`.
pub const RECOVERY_TABLE: [[usize; 4]; 4] =
    [[0, 1, 2, 3], [1, 0, 3, 2], [2, 3, 0, 1], [3, 2, 1, 0]];

/// Bell-basis overlaps ⟨Ψⁿ|ρ|Ψⁿ⟩.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChiVector(pub [f64; 4]);

impl ChiVector {
    pub fn sum(&self) -> f64 {
        self.0.iter().sum()
    }

    pub fn max(&self) -> f64 {
        self.0.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }
}

/// Bob's Pauli label for each of Alice's outcomes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RecoveryStrategy(pub [usize; 4]);

impl RecoveryStrategy {
    pub fn new(labels: [usize; 4]) -> Result<Self> {
        if let Some(m) = labels.iter().find(|&&m| m > 3) {
            return Err(domain(format!("Pauli label {m} out of range")));
        }
        Ok(Self(labels))
    }

    /// All 256 strategies in lexicographic order.
    pub fn all() -> impl Iterator<Item = RecoveryStrategy> {
        (0..256usize).map(|c| RecoveryStrategy([c >> 6 & 3, c >> 4 & 3, c >> 2 & 3, c & 3]))
    }
}

impl fmt::Display for RecoveryStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.0;
        write!(f, "({a},{b},{c},{d})")
    }
}

pub fn recovery_index(k: usize, m: usize) -> Result<usize> {
    if k > 3 || m > 3 {
        return Err(domain(format!(
            "outcome/Pauli labels must be in 0..=3, got ({k}, {m})"
        )));
    }
    Ok(RECOVERY_TABLE[k][m])
}

pub fn chi_vector(rho: &XState) -> ChiVector {
    let outer = rho.p11 + rho.p44;
    let inner = rho.p22 + rho.p33;
    ChiVector([
        0.5 * (outer + 2.0 * rho.c14.re),
        0.5 * (inner + 2.0 * rho.c23.re),
        0.5 * (inner - 2.0 * rho.c23.re),
        0.5 * (outer - 2.0 * rho.c14.re),
    ])
}

/// Bell-basis diagonal of an arbitrary two-qubit state.
pub fn bell_diagonal(rho: &DensityMatrix4) -> ChiVector {
    ChiVector(std::array::from_fn(|n| {
        let psi = bell_amplitudes(n);
        let mut acc = num_complex::Complex64::new(0.0, 0.0);
        for i in 0..4 {
            for j in 0..4 {
                acc += psi[i].conj() * rho.get(i, j) * psi[j];
            }
        }
        acc.re
    }))
}

pub fn average_fidelity_chi(chi: &ChiVector, s: &RecoveryStrategy) -> f64 {
    let total: f64 = (0..4).map(|k| chi.0[RECOVERY_TABLE[k][s.0[k]]]).sum();
    total / 6.0 + 1.0 / 3.0
}

pub fn average_fidelity(rho: &XState, s: &RecoveryStrategy) -> f64 {
    average_fidelity_chi(&chi_vector(rho), s)
}

/// Best strategy for a given `χ`: per outcome, the lowest Pauli label
/// reaching the largest overlap.
pub fn optimal_strategy(chi: &ChiVector) -> RecoveryStrategy {
    let best = chi.max();
    RecoveryStrategy(std::array::from_fn(|k| {
        (0..4)
            .find(|&m| chi.0[RECOVERY_TABLE[k][m]] == best)
            .expect("maximum is attained")
    }))
}

pub fn max_average_fidelity_chi(chi: &ChiVector) -> (f64, RecoveryStrategy) {
    ((2.0 * chi.max() + 1.0) / 3.0, optimal_strategy(chi))
}

pub fn max_average_fidelity(rho: &XState) -> (f64, RecoveryStrategy) {
    max_average_fidelity_chi(&chi_vector(rho))
}

/// Largest Bell overlap; the fully entangled fraction for X states.
pub fn fully_entangled_fraction(rho: &XState) -> f64 {
    chi_vector(rho).max()
}
