//! Closed-form propagation of X states.
//!
//! The X block structure is preserved by the master equation: ρ₁₁ decays at
//! 2γ, ρ₁₄ rotates at 2ω₀ while decaying at γ, and the one-excitation block
//! splits into the symmetric (rate γ+γ₁₂) and antisymmetric (rate γ−γ₁₂)
//! channels coupled by the ±Ω₁₂ level shift.

use num_complex::Complex64 as C64;

use super::state::XState;
use crate::couplings::CouplingRates;
use crate::error::{domain, Error, Result};

/// |γ ∓ γ₁₂| below this fraction of γ is treated as degenerate.
pub const DEGENERACY_GAP: f64 = 1e-6;

/// The six amplitudes multiplying the exponentials of the one-excitation block.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct XCoefficients {
    pub a1: C64,
    pub a2: C64,
    pub b1: C64,
    pub b2: C64,
    pub c1: C64,
    pub c2: C64,
}

fn check_rates(rates: &CouplingRates, gamma: f64) -> Result<()> {
    if !(gamma.is_finite() && gamma > 0.0) {
        return Err(domain(format!(
            "gamma must be finite and positive, got {gamma}"
        )));
    }
    if !(rates.gamma12.is_finite() && rates.omega12.is_finite()) {
        return Err(domain("coupling rates must be finite"));
    }
    if rates.gamma12.abs() > gamma * (1.0 + 1e-12) {
        return Err(domain(format!(
            "|gamma12| = {} exceeds gamma = {gamma}",
            rates.gamma12.abs()
        )));
    }
    Ok(())
}

fn degeneracy_gap(rates: &CouplingRates, gamma: f64) -> f64 {
    (gamma - rates.gamma12)
        .abs()
        .min((gamma + rates.gamma12).abs())
}

pub fn is_degenerate(rates: &CouplingRates, gamma: f64) -> bool {
    degeneracy_gap(rates, gamma) < DEGENERACY_GAP * gamma
}

pub fn x_coefficients(x0: &XState, rates: &CouplingRates, gamma: f64) -> Result<XCoefficients> {
    check_rates(rates, gamma)?;
    if is_degenerate(rates, gamma) {
        return Err(Error::Degenerate {
            gap: degeneracy_gap(rates, gamma),
        });
    }
    let g12 = rates.gamma12;
    let (plus, minus) = (gamma + g12, gamma - g12);
    let re23 = x0.c23.re;
    let im23 = x0.c23.im;
    let real = |v: f64| C64::new(v, 0.0);
    Ok(XCoefficients {
        a1: real(0.5 * x0.p11 * plus / minus),
        a2: real(0.5 * x0.p11 * minus / plus),
        b1: real(0.25 * (x0.p22 + x0.p33 + 2.0 * re23)),
        b2: real(0.25 * (x0.p22 + x0.p33 - 2.0 * re23)),
        c1: C64::new(0.25 * (x0.p22 - x0.p33), 0.5 * im23),
        c2: C64::new(0.25 * (x0.p22 - x0.p33), -0.5 * im23),
    })
}

/// (e^{δt} − 1)/δ, exact as δ → 0.
fn expm1_ratio(delta: f64, t: f64) -> f64 {
    if delta == 0.0 {
        t
    } else {
        (delta * t).exp_m1() / delta
    }
}

/// Propagates an X state to time `t` in the lab frame.
///
/// Outside the degenerate window the coefficients of [`x_coefficients`] are
/// used directly; inside it the one-excitation populations are assembled
/// from `expm1` ratios, which stay finite as γ₁₂ → ±γ.
pub fn evolve_x_analytic(
    x0: &XState,
    rates: &CouplingRates,
    gamma: f64,
    omega0: f64,
    t: f64,
) -> Result<XState> {
    if !(t.is_finite() && t >= 0.0) {
        return Err(domain(format!(
            "time must be finite and non-negative, got {t}"
        )));
    }
    if !(omega0.is_finite() && omega0 > 0.0) {
        return Err(domain(format!(
            "omega0 must be finite and positive, got {omega0}"
        )));
    }
    check_rates(rates, gamma)?;
    x0.validate()?;

    let g12 = rates.gamma12;
    let e2 = (-2.0 * gamma * t).exp();
    let e_plus = (-(gamma + g12) * t).exp();
    let e_minus = (-(gamma - g12) * t).exp();
    let decay = (-gamma * t).exp();
    let rot = C64::from_polar(decay, -2.0 * rates.omega12 * t);

    let (sym, anti, c1, c2) = match x_coefficients(x0, rates, gamma) {
        Ok(k) => (
            k.a1.re * (e_plus - e2) + k.b1.re * e_plus,
            k.a2.re * (e_minus - e2) + k.b2.re * e_minus,
            k.c1,
            k.c2,
        ),
        Err(Error::Degenerate { .. }) => {
            let b1 = 0.25 * (x0.p22 + x0.p33 + 2.0 * x0.c23.re);
            let b2 = 0.25 * (x0.p22 + x0.p33 - 2.0 * x0.c23.re);
            let fed_sym = 0.5 * x0.p11 * (gamma + g12) * e2 * expm1_ratio(gamma - g12, t);
            let fed_anti = 0.5 * x0.p11 * (gamma - g12) * e2 * expm1_ratio(gamma + g12, t);
            let d = 0.25 * (x0.p22 - x0.p33);
            (
                fed_sym + b1 * e_plus,
                fed_anti + b2 * e_minus,
                C64::new(d, 0.5 * x0.c23.im),
                C64::new(d, -0.5 * x0.c23.im),
            )
        }
        Err(e) => return Err(e),
    };

    // c1 carries e^{-(γ-2iΩ12)t} and c2 carries e^{-(γ+2iΩ12)t}.
    let osc_c1 = c1 * rot.conj();
    let osc_c2 = c2 * rot;
    let p11 = x0.p11 * e2;
    let p22 = sym + anti + (osc_c1 + osc_c2).re;
    let p33 = sym + anti - (osc_c1 + osc_c2).re;
    let c23 = C64::new(sym - anti, 0.0) + osc_c1 - osc_c2;
    let c14 = x0.c14 * C64::from_polar(decay, -2.0 * omega0 * t);
    Ok(XState {
        p11,
        p22,
        p33,
        p44: 1.0 - p11 - p22 - p33,
        c14,
        c23,
    })
}
