//! Two-atom state representations.
//!
//! Basis order is fixed throughout the crate: index 0 → |e₁e₂⟩, 1 → |e₁g₂⟩,
//! 2 → |g₁e₂⟩, 3 → |g₁g₂⟩ (single atom: 0 → |e⟩, 1 → |g⟩).

use std::fmt;
use std::str::FromStr;

use nalgebra::Matrix4;
use num_complex::Complex64 as C64;

use crate::error::{domain, Error, Result};

pub const HERMITIAN_TOL: f64 = 1e-12;
pub const TRACE_TOL: f64 = 1e-12;
pub const POSITIVITY_SLACK: f64 = 1e-10;

const X_ENTRIES: [(usize, usize); 8] = [
    (0, 0),
    (1, 1),
    (2, 2),
    (3, 3),
    (0, 3),
    (3, 0),
    (1, 2),
    (2, 1),
];

/// Amplitudes of the Bell state |Ψᵏ⟩: |Ψ^{0,3}⟩ = (|ee⟩ ± |gg⟩)/√2,
/// |Ψ^{1,2}⟩ = (|eg⟩ ± |ge⟩)/√2.
pub fn bell_amplitudes(k: usize) -> [C64; 4] {
    let h = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let z = C64::new(0.0, 0.0);
    match k {
        0 => [h, z, z, h],
        1 => [z, h, h, z],
        2 => [z, h, -h, z],
        3 => [h, z, z, -h],
        _ => panic!("Bell label {k} out of range"),
    }
}

/// Full 4×4 two-qubit density matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityMatrix4(pub Matrix4<C64>);

impl DensityMatrix4 {
    pub fn from_matrix(m: Matrix4<C64>) -> Self {
        Self(m)
    }

    pub fn from_pure(amps: &[C64; 4]) -> Self {
        Self(Matrix4::from_fn(|i, j| amps[i] * amps[j].conj()))
    }

    pub fn matrix(&self) -> &Matrix4<C64> {
        &self.0
    }

    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.0[(i, j)]
    }

    pub fn trace(&self) -> C64 {
        self.0.trace()
    }

    pub fn hermiticity_defect(&self) -> f64 {
        let m = &self.0;
        (0..4)
            .flat_map(|i| (0..4).map(move |j| (m[(i, j)] - m[(j, i)].conj()).norm()))
            .fold(0.0, f64::max)
    }

    /// Eigenvalues of the Hermitian part, ascending.
    pub fn eigenvalues(&self) -> Result<[f64; 4]> {
        let herm = (self.0 + self.0.adjoint()) * C64::new(0.5, 0.0);
        let eig = herm
            .try_symmetric_eigen(1e-15, 10_000)
            .ok_or_else(|| Error::EigenFailure {
                matrix: format!("{}", self.0),
            })?;
        let mut ev = [0.0; 4];
        ev.copy_from_slice(eig.eigenvalues.as_slice());
        ev.sort_by(|a, b| a.total_cmp(b));
        Ok(ev)
    }

    /// Checks Hermiticity, unit trace and positivity within the crate slacks.
    pub fn validate(&self) -> Result<()> {
        let herm = self.hermiticity_defect();
        if herm > HERMITIAN_TOL {
            return Err(domain(format!(
                "density matrix not Hermitian (defect {herm:e})"
            )));
        }
        let tr = self.trace();
        if (tr - C64::new(1.0, 0.0)).norm() > TRACE_TOL {
            return Err(domain(format!("density matrix trace {tr} != 1")));
        }
        let min = self.eigenvalues()?[0];
        if min < -POSITIVITY_SLACK {
            return Err(domain(format!(
                "density matrix has negative eigenvalue {min:e}"
            )));
        }
        Ok(())
    }

    /// Largest magnitude among entries outside the diagonal and anti-diagonal.
    pub fn x_leakage(&self) -> f64 {
        let mut worst = 0.0_f64;
        for i in 0..4 {
            for j in 0..4 {
                if !X_ENTRIES.contains(&(i, j)) {
                    worst = worst.max(self.0[(i, j)].norm());
                }
            }
        }
        worst
    }

    /// Projects onto the X entries. Populations take their real parts and
    /// coherences are symmetrized.
    pub fn to_x_state(&self) -> XState {
        let m = &self.0;
        XState {
            p11: m[(0, 0)].re,
            p22: m[(1, 1)].re,
            p33: m[(2, 2)].re,
            p44: m[(3, 3)].re,
            c14: (m[(0, 3)] + m[(3, 0)].conj()) * 0.5,
            c23: (m[(1, 2)] + m[(2, 1)].conj()) * 0.5,
        }
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        (self.0 - other.0)
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }
}

impl From<XState> for DensityMatrix4 {
    fn from(x: XState) -> Self {
        x.to_density()
    }
}

/// X-form state: only the main diagonal and anti-diagonal are populated.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct XState {
    pub p11: f64,
    pub p22: f64,
    pub p33: f64,
    pub p44: f64,
    /// ρ₁₄ (ρ₄₁ is its conjugate).
    pub c14: C64,
    /// ρ₂₃ (ρ₃₂ is its conjugate).
    pub c23: C64,
}

impl XState {
    pub fn diagonal(p11: f64, p22: f64, p33: f64, p44: f64) -> Self {
        Self {
            p11,
            p22,
            p33,
            p44,
            c14: C64::new(0.0, 0.0),
            c23: C64::new(0.0, 0.0),
        }
    }

    pub fn ground() -> Self {
        Self::diagonal(0.0, 0.0, 0.0, 1.0)
    }

    pub fn maximally_mixed() -> Self {
        Self::diagonal(0.25, 0.25, 0.25, 0.25)
    }

    pub fn populations(&self) -> [f64; 4] {
        [self.p11, self.p22, self.p33, self.p44]
    }

    pub fn validate(&self) -> Result<()> {
        let pops = self.populations();
        if pops.iter().any(|p| !p.is_finite()) || !self.c14.is_finite() || !self.c23.is_finite() {
            return Err(domain("X state has non-finite entries"));
        }
        if let Some(p) = pops.iter().find(|&&p| p < -POSITIVITY_SLACK) {
            return Err(domain(format!("negative population {p:e}")));
        }
        let sum: f64 = pops.iter().sum();
        if (sum - 1.0).abs() > TRACE_TOL {
            return Err(domain(format!("populations sum to {sum}")));
        }
        if self.c14.norm_sqr() > self.p11 * self.p44 + POSITIVITY_SLACK {
            return Err(domain("|rho14|^2 exceeds rho11*rho44"));
        }
        if self.c23.norm_sqr() > self.p22 * self.p33 + POSITIVITY_SLACK {
            return Err(domain("|rho23|^2 exceeds rho22*rho33"));
        }
        Ok(())
    }

    pub fn to_density(&self) -> DensityMatrix4 {
        let mut m = Matrix4::zeros();
        for (i, p) in self.populations().into_iter().enumerate() {
            m[(i, i)] = C64::new(p, 0.0);
        }
        m[(0, 3)] = self.c14;
        m[(3, 0)] = self.c14.conj();
        m[(1, 2)] = self.c23;
        m[(2, 1)] = self.c23.conj();
        DensityMatrix4(m)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.to_density().max_abs_diff(&other.to_density())
    }
}

/// Named initial channel states.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum InitialState {
    Bell0,
    Bell1,
    Bell2,
    Bell3,
    /// |e₁⟩ ⊗ |g₂⟩.
    ProductEG,
    CustomX(XState),
}

impl InitialState {
    pub const NAMED: [InitialState; 5] = [
        InitialState::Bell0,
        InitialState::Bell1,
        InitialState::Bell2,
        InitialState::Bell3,
        InitialState::ProductEG,
    ];

    pub fn bell(k: usize) -> Option<Self> {
        [Self::Bell0, Self::Bell1, Self::Bell2, Self::Bell3]
            .get(k)
            .copied()
    }
}

impl fmt::Display for InitialState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Bell0 => f.write_str("bell0"),
            Self::Bell1 => f.write_str("bell1"),
            Self::Bell2 => f.write_str("bell2"),
            Self::Bell3 => f.write_str("bell3"),
            Self::ProductEG => f.write_str("eg"),
            Self::CustomX(x) => write!(
                f,
                "x({},{},{},{},{}{:+}i,{}{:+}i)",
                x.p11, x.p22, x.p33, x.p44, x.c14.re, x.c14.im, x.c23.re, x.c23.im
            ),
        }
    }
}

impl FromStr for InitialState {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "bell0" | "psi0" => Ok(Self::Bell0),
            "bell1" | "psi1" => Ok(Self::Bell1),
            "bell2" | "psi2" => Ok(Self::Bell2),
            "bell3" | "psi3" => Ok(Self::Bell3),
            "eg" | "product" | "product-eg" => Ok(Self::ProductEG),
            other => Err(domain(format!(
                "unknown initial state '{other}' (expected bell0..bell3 or eg)"
            ))),
        }
    }
}

/// Exact X-form matrix of a named initial state.
pub fn initial_density(s: InitialState) -> XState {
    let half = 0.5;
    let z = C64::new(0.0, 0.0);
    match s {
        InitialState::Bell0 => XState {
            c14: C64::new(half, 0.0),
            ..XState::diagonal(half, 0.0, 0.0, half)
        },
        InitialState::Bell3 => XState {
            c14: C64::new(-half, 0.0),
            ..XState::diagonal(half, 0.0, 0.0, half)
        },
        InitialState::Bell1 => XState {
            c23: C64::new(half, 0.0),
            c14: z,
            ..XState::diagonal(0.0, half, half, 0.0)
        },
        InitialState::Bell2 => XState {
            c23: C64::new(-half, 0.0),
            c14: z,
            ..XState::diagonal(0.0, half, half, 0.0)
        },
        InitialState::ProductEG => XState::diagonal(0.0, 1.0, 0.0, 0.0),
        InitialState::CustomX(x) => x,
    }
}
