//! Closed-form trajectories for the special initial states.
//!
//! All functions take physical `t` and rates (γ, γ₁₂ in the same units).

use crate::couplings::CouplingRates;
use crate::teleport::ChiVector;

/// Fidelity, concurrence and purity at one instant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LimitMetrics {
    pub fidelity: f64,
    pub concurrence: f64,
    pub purity: f64,
}

/// Max average fidelity of a channel that is a Bell state decaying at `rate`
/// into |gg⟩: `χ_bell = e^{-rate·t}`, `χ₀ = χ₃ = (1 − χ_bell)/2`.
fn decaying_bell_fidelity(decay: f64) -> f64 {
    if decay > 1.0 / 3.0 {
        (2.0 * decay + 1.0) / 3.0
    } else {
        (2.0 - decay) / 3.0
    }
}

fn decaying_bell_metrics(decay: f64) -> LimitMetrics {
    LimitMetrics {
        fidelity: decaying_bell_fidelity(decay),
        concurrence: decay,
        purity: 1.0 - 2.0 * decay + 2.0 * decay * decay,
    }
}

/// Symmetric Bell start; branch switch at (γ+γ₁₂)t = ln 3.
pub fn fidelity_psi1_closed(t: f64, gamma: f64, gamma12: f64) -> f64 {
    decaying_bell_fidelity((-(gamma + gamma12) * t).exp())
}

/// Antisymmetric Bell start; branch switch at (γ−γ₁₂)t = ln 3.
pub fn fidelity_psi2_closed(t: f64, gamma: f64, gamma12: f64) -> f64 {
    decaying_bell_fidelity((-(gamma - gamma12) * t).exp())
}

pub fn psi1_closed(t: f64, gamma: f64, gamma12: f64) -> LimitMetrics {
    decaying_bell_metrics((-(gamma + gamma12) * t).exp())
}

pub fn psi2_closed(t: f64, gamma: f64, gamma12: f64) -> LimitMetrics {
    decaying_bell_metrics((-(gamma - gamma12) * t).exp())
}

/// |Ψ⁰⟩ start with γ₁₂ = γ (atoms at contact).
pub fn psi0_dicke_limit(t: f64, gamma: f64, omega0: f64) -> LimitMetrics {
    let gt = gamma * t;
    let e1 = (-gt).exp();
    let e2 = (-2.0 * gt).exp();
    let e4 = (-4.0 * gt).exp();
    let osc = (2.0 * omega0 * t).cos().abs();
    LimitMetrics {
        fidelity: (2.0 - gt * e2 + e1 * osc) / 3.0,
        concurrence: e1 - gt * e2,
        purity: 1.0 - (2.0 * gt + 0.5) * e2 + (2.0 * gt * gt + gt + 0.5) * e4,
    }
}

/// |Ψ⁰⟩ start with γ₁₂ = 0 (independent atoms).
pub fn psi0_infinite_separation(t: f64, gamma: f64, omega0: f64) -> LimitMetrics {
    let gt = gamma * t;
    let e1 = (-gt).exp();
    let e2 = (-2.0 * gt).exp();
    let e3 = (-3.0 * gt).exp();
    let e4 = (-4.0 * gt).exp();
    let osc = (2.0 * omega0 * t).cos().abs();
    LimitMetrics {
        fidelity: (2.0 + e2 + e1 * (osc - 1.0)) / 3.0,
        concurrence: e2,
        purity: 1.0 + e4 - 2.0 * e3 + 3.0 * e2 - 2.0 * e1,
    }
}

/// Bell overlaps for the |e₁g₂⟩ start. Ω₁₂ does not appear.
pub fn product_chi_closed(t: f64, gamma: f64, gamma12: f64) -> ChiVector {
    let plus = (-(gamma + gamma12) * t).exp();
    let minus = (-(gamma - gamma12) * t).exp();
    let outer = 0.5 - 0.25 * plus - 0.25 * minus;
    ChiVector([outer, 0.5 * plus, 0.5 * minus, outer])
}

/// Concurrence for the |e₁g₂⟩ start.
pub fn product_concurrence_closed(t: f64, gamma: f64, rates: &CouplingRates) -> f64 {
    let spread = (-rates.gamma12 * t).exp() - (rates.gamma12 * t).exp();
    let swing = (2.0 * rates.omega12 * t).sin();
    0.5 * (-gamma * t).exp() * (spread * spread + 4.0 * swing * swing).sqrt()
}
