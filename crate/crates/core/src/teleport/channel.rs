//! Explicit simulation of the protocol, used as an oracle for the closed
//! forms in the parent module.

use std::f64::consts::{PI, TAU};

use nalgebra::Matrix2;
use num_complex::Complex64 as C64;

use super::quadrature::gauss_legendre;
use super::RecoveryStrategy;
use crate::dynamics::{bell_amplitudes, DensityMatrix4};
use crate::error::{domain, Error, Result};

/// Outcomes with probability below this are reported as unreachable.
pub const MIN_OUTCOME_PROBABILITY: f64 = 1e-14;

/// Pure input `cos(θ/2)|e⟩ + e^{iφ} sin(θ/2)|g⟩`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochState {
    pub theta: f64,
    pub phi: f64,
}

impl BlochState {
    pub fn new(theta: f64, phi: f64) -> Result<Self> {
        if !(0.0..=PI).contains(&theta) {
            return Err(domain(format!("theta {theta} outside [0, pi]")));
        }
        if !(0.0..TAU).contains(&phi) {
            return Err(domain(format!("phi {phi} outside [0, 2pi)")));
        }
        Ok(Self { theta, phi })
    }

    pub fn amplitudes(&self) -> [C64; 2] {
        let (s, c) = (0.5 * self.theta).sin_cos();
        [C64::new(c, 0.0), C64::from_polar(s, self.phi)]
    }

    pub fn density(&self) -> Matrix2<C64> {
        let a = self.amplitudes();
        Matrix2::from_fn(|i, j| a[i] * a[j].conj())
    }
}

/// σ⁰ = 1, σ¹ = X, σ² = Y, σ³ = Z in the (|e⟩, |g⟩) basis.
pub fn pauli(m: usize) -> Matrix2<C64> {
    let o = C64::new(0.0, 0.0);
    let l = C64::new(1.0, 0.0);
    let i = C64::new(0.0, 1.0);
    match m {
        0 => Matrix2::new(l, o, o, l),
        1 => Matrix2::new(o, l, l, o),
        2 => Matrix2::new(o, -i, i, o),
        3 => Matrix2::new(l, o, o, -l),
        _ => panic!("Pauli label {m} out of range"),
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TeleportOutcome {
    /// Bob's normalized state after the correction.
    pub out_state: Matrix2<C64>,
    /// Probability of Alice's outcome.
    pub probability: f64,
}

/// Bob's unnormalized conditional state ⟨Ψᵏ|_{A1} (ρ_in ⊗ ρ) |Ψᵏ⟩_{A1}.
fn conditional_state(rho_chan: &DensityMatrix4, rho_in: &Matrix2<C64>, k: usize) -> Matrix2<C64> {
    let bell = bell_amplitudes(k);
    Matrix2::from_fn(|b, bp| {
        let mut acc = C64::new(0.0, 0.0);
        for a in 0..2 {
            for c in 0..2 {
                let left = bell[2 * a + c].conj();
                for ap in 0..2 {
                    for cp in 0..2 {
                        acc += left
                            * bell[2 * ap + cp]
                            * rho_in[(a, ap)]
                            * rho_chan.get(2 * c + b, 2 * cp + bp);
                    }
                }
            }
        }
        acc
    })
}

pub fn teleport_channel(
    rho_chan: &DensityMatrix4,
    input: &BlochState,
    k: usize,
    m: usize,
) -> Result<TeleportOutcome> {
    if k > 3 || m > 3 {
        return Err(domain(format!(
            "outcome/Pauli labels must be in 0..=3, got ({k}, {m})"
        )));
    }
    let raw = conditional_state(rho_chan, &input.density(), k);
    let probability = raw.trace().re;
    if probability < MIN_OUTCOME_PROBABILITY {
        return Err(Error::Unreachable {
            outcome: k,
            probability,
        });
    }
    let sigma = pauli(m);
    let out_state = sigma * raw * sigma / C64::new(probability, 0.0);
    Ok(TeleportOutcome {
        out_state,
        probability,
    })
}

/// Average fidelity by quadrature over the Bloch sphere: Gauss-Legendre
/// with `order` nodes in cos θ and a `2·order`-point periodic trapezoid in φ.
pub fn average_fidelity_oracle(
    rho_chan: &DensityMatrix4,
    s: &RecoveryStrategy,
    order: usize,
) -> Result<f64> {
    if order < 4 {
        return Err(domain(format!(
            "quadrature order must be at least 4, got {order}"
        )));
    }
    let polar = gauss_legendre(order);
    let n_phi = 2 * order;
    let d_phi = TAU / n_phi as f64;
    let mut total = 0.0;
    for &(u, w) in &polar {
        let theta = u.clamp(-1.0, 1.0).acos();
        for j in 0..n_phi {
            let input = BlochState {
                theta,
                phi: j as f64 * d_phi,
            };
            let amps = input.amplitudes();
            let mut point = 0.0;
            for k in 0..4 {
                match teleport_channel(rho_chan, &input, k, s.0[k]) {
                    Ok(out) => {
                        let mut fid = C64::new(0.0, 0.0);
                        for a in 0..2 {
                            for b in 0..2 {
                                fid += amps[a].conj() * out.out_state[(a, b)] * amps[b];
                            }
                        }
                        point += out.probability * fid.re;
                    }
                    Err(Error::Unreachable { .. }) => {}
                    Err(e) => return Err(e),
                }
            }
            total += w * d_phi * point;
        }
    }
    Ok(total / (4.0 * PI))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::{initial_density, InitialState, XState};
    use approx::assert_abs_diff_eq;

    #[test]
    fn ideal_channel_transmits_input() {
        let chan = initial_density(InitialState::Bell1).to_density();
        for &(theta, phi) in &[(0.0, 0.0), (0.7, 2.1), (PI, 5.0), (1.9, 0.3)] {
            let input = BlochState::new(theta, phi).unwrap();
            let out = teleport_channel(&chan, &input, 0, 1).unwrap();
            assert_abs_diff_eq!(out.probability, 0.25, epsilon = 1e-15);
            let diff = out.out_state - input.density();
            assert!(diff.iter().all(|z| z.norm() < 1e-15));
        }
    }

    #[test]
    fn ground_channel_delivers_ground() {
        let chan = XState::ground().to_density();
        let input = BlochState::new(0.0, 0.0).unwrap();
        let out = teleport_channel(&chan, &input, 1, 0).unwrap();
        assert_abs_diff_eq!(out.out_state[(1, 1)].re, 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(out.out_state[(0, 0)].norm(), 0.0, epsilon = 1e-15);
    }

    #[test]
    fn outcomes_are_complete() {
        let chan = XState {
            c14: C64::new(0.05, 0.1),
            c23: C64::new(0.1, -0.1),
            ..XState::diagonal(0.2, 0.3, 0.3, 0.2)
        }
        .to_density();
        let input = BlochState::new(1.1, 4.0).unwrap();
        let total: f64 = (0..4)
            .map(|k| teleport_channel(&chan, &input, k, 0).unwrap().probability)
            .sum();
        assert_abs_diff_eq!(total, 1.0, epsilon = 1e-14);
    }

    #[test]
    fn unreachable_outcome_is_flagged() {
        // Channel |gg⟩ with input |e⟩: A1 is |eg⟩, orthogonal to |Ψ⁰⟩ and |Ψ³⟩.
        let chan = XState::ground().to_density();
        let input = BlochState::new(0.0, 0.0).unwrap();
        for k in [0, 3] {
            let res = teleport_channel(&chan, &input, k, 0);
            assert!(matches!(res, Err(Error::Unreachable { outcome, .. }) if outcome == k));
        }
        assert!(teleport_channel(&chan, &input, 2, 0).is_ok());
    }

    #[test]
    fn oracle_validates_order_and_inputs() {
        let chan = XState::ground().to_density();
        let s = RecoveryStrategy([0; 4]);
        assert!(average_fidelity_oracle(&chan, &s, 3).is_err());
        assert!(BlochState::new(-0.1, 0.0).is_err());
        assert!(BlochState::new(0.1, TAU).is_err());
    }

    #[test]
    fn oracle_on_ideal_channel() {
        let chan = initial_density(InitialState::Bell2).to_density();
        let s = RecoveryStrategy([2, 3, 0, 1]);
        assert_abs_diff_eq!(
            average_fidelity_oracle(&chan, &s, 6).unwrap(),
            1.0,
            epsilon = 1e-12
        );
    }
}
