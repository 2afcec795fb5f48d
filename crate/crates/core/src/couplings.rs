//! Distance dependence of the collective damping rate and the dipole-dipole
//! shift between two identical atoms sharing the vacuum field.
//!
//! With `x = k r = 2π r/λ` and `c = (μ̂·r̂)² = cos² α`:
//!
//! ```text
//! γ12 = 3γ/2 { (1 - c) sin x / x + (1 - 3c) [cos x / x² - sin x / x³] }
//! Ω12 = 3γ/4 { (c - 1) cos x / x + (1 - 3c) [sin x / x² + cos x / x³] }
//! ```
//!
//! Below [`SERIES_SWITCH`] in `x` both brackets are evaluated from their
//! truncated Laurent series, since the direct form of `cos x/x² - sin x/x³`
//! cancels two `1/x²` terms.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use crate::error::{domain, Result};

/// Value of `x = k r` below which the series branch is used.
pub const SERIES_SWITCH: f64 = 0.05;

/// Physical configuration of the atom pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeometryParams {
    /// Separation in units of the resonant wavelength.
    pub r_over_lambda: f64,
    /// Angle between the (shared) dipole direction and the interatomic axis,
    /// normalized to `[0, π/2]`.
    pub dipole_angle: f64,
    /// Single-atom spontaneous emission rate.
    pub gamma: f64,
    /// Transition frequency.
    pub omega0: f64,
}

impl GeometryParams {
    pub fn new(r_over_lambda: f64, dipole_angle: f64, gamma: f64, omega0: f64) -> Result<Self> {
        let geom = Self {
            r_over_lambda,
            dipole_angle: normalize_angle(dipole_angle)?,
            gamma,
            omega0,
        };
        geom.validate()?;
        Ok(geom)
    }

    /// Dipoles perpendicular to the axis, γ = 1, ω0 = 100γ.
    pub fn perpendicular(r_over_lambda: f64) -> Result<Self> {
        Self::new(r_over_lambda, FRAC_PI_2, 1.0, 100.0)
    }

    pub fn with_r(self, r_over_lambda: f64) -> Result<Self> {
        let geom = Self {
            r_over_lambda,
            ..self
        };
        geom.validate()?;
        Ok(geom)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.r_over_lambda.is_finite() && self.r_over_lambda > 0.0) {
            return Err(domain(format!(
                "r_over_lambda must be finite and positive, got {}",
                self.r_over_lambda
            )));
        }
        if !(self.gamma.is_finite() && self.gamma > 0.0) {
            return Err(domain(format!(
                "gamma must be finite and positive, got {}",
                self.gamma
            )));
        }
        if !(self.omega0.is_finite() && self.omega0 > 0.0) {
            return Err(domain(format!(
                "omega0 must be finite and positive, got {}",
                self.omega0
            )));
        }
        if !(self.dipole_angle.is_finite() && (0.0..=FRAC_PI_2).contains(&self.dipole_angle)) {
            return Err(domain(format!(
                "dipole_angle {} outside [0, pi/2]",
                self.dipole_angle
            )));
        }
        Ok(())
    }

    /// Dimensionless `k r`.
    pub fn kr(&self) -> f64 {
        TAU * self.r_over_lambda
    }

    fn cos2(&self) -> f64 {
        let c = self.dipole_angle.cos();
        c * c
    }
}

/// Only cos² of the angle matters, so fold it into `[0, π/2]`.
fn normalize_angle(angle: f64) -> Result<f64> {
    if !angle.is_finite() {
        return Err(domain(format!("dipole_angle must be finite, got {angle}")));
    }
    let a = angle.rem_euclid(PI);
    Ok(if a > FRAC_PI_2 { PI - a } else { a })
}

/// Collective damping rate and dipole-dipole shift, same units as γ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CouplingRates {
    pub gamma12: f64,
    pub omega12: f64,
}

impl CouplingRates {
    pub fn new(gamma12: f64, omega12: f64) -> Self {
        Self { gamma12, omega12 }
    }

    /// Atoms that do not talk to each other (r → ∞).
    pub fn independent() -> Self {
        Self::new(0.0, 0.0)
    }
}

// Coefficients below are (-1)^n 2n/(2n+1)! and friends; see the module docs.
fn sinc_series(x: f64) -> f64 {
    let x2 = x * x;
    1.0 - x2 / 6.0 * (1.0 - x2 / 20.0 * (1.0 - x2 / 42.0))
}

/// cos x/x² - sin x/x³ near zero.
fn damping_tail_series(x: f64) -> f64 {
    let x2 = x * x;
    -1.0 / 3.0 + x2 / 30.0 - x2 * x2 / 840.0 + x2 * x2 * x2 / 45360.0
}

/// cos x/x near zero.
fn cos_over_x_series(x: f64) -> f64 {
    let x2 = x * x;
    1.0 / x - x / 2.0 + x * x2 / 24.0 - x * x2 * x2 / 720.0
}

/// sin x/x² + cos x/x³ near zero.
fn shift_tail_series(x: f64) -> f64 {
    let x2 = x * x;
    1.0 / (x * x2) + 1.0 / (2.0 * x) - x / 8.0 + x * x2 / 144.0 - x * x2 * x2 / 5760.0
}

fn damping_bracket(x: f64, cos2: f64, switch: f64) -> f64 {
    let (sinc, tail) = if x < switch {
        (sinc_series(x), damping_tail_series(x))
    } else {
        let (s, c) = x.sin_cos();
        (s / x, c / (x * x) - s / (x * x * x))
    };
    (1.0 - cos2) * sinc + (1.0 - 3.0 * cos2) * tail
}

fn shift_bracket(x: f64, cos2: f64, switch: f64) -> f64 {
    let (cosx, tail) = if x < switch {
        (cos_over_x_series(x), shift_tail_series(x))
    } else {
        let (s, c) = x.sin_cos();
        (c / x, s / (x * x) + c / (x * x * x))
    };
    (cos2 - 1.0) * cosx + (1.0 - 3.0 * cos2) * tail
}

/// Collective damping rate γ12 for the given geometry.
pub fn collective_damping(geom: &GeometryParams) -> Result<f64> {
    geom.validate()?;
    Ok(1.5 * geom.gamma * damping_bracket(geom.kr(), geom.cos2(), SERIES_SWITCH))
}

/// Dipole-dipole shift Ω12. Grows like `(kr)^-3` as the atoms approach.
pub fn dipole_shift(geom: &GeometryParams) -> Result<f64> {
    geom.validate()?;
    Ok(0.75 * geom.gamma * shift_bracket(geom.kr(), geom.cos2(), SERIES_SWITCH))
}

pub fn coupling_pair(geom: &GeometryParams) -> Result<CouplingRates> {
    coupling_pair_with_switch(geom, SERIES_SWITCH)
}

/// Like [`coupling_pair`] with an explicit series/direct switchover in `kr`.
pub fn coupling_pair_with_switch(geom: &GeometryParams, switch: f64) -> Result<CouplingRates> {
    geom.validate()?;
    if !(switch.is_finite() && switch >= 0.0) {
        return Err(domain(format!(
            "series switch must be finite and >= 0, got {switch}"
        )));
    }
    let (x, c2) = (geom.kr(), geom.cos2());
    Ok(CouplingRates {
        gamma12: 1.5 * geom.gamma * damping_bracket(x, c2, switch),
        omega12: 0.75 * geom.gamma * shift_bracket(x, c2, switch),
    })
}
