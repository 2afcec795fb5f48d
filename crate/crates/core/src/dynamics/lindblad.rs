//! Direct numerical integration of the two-atom master equation.
//!
//! The generator is assembled literally from the atomic dipole operators and
//! stepped with classical fourth-order Runge-Kutta. Because the generator is
//! linear and time independent, one RK4 step is the fixed 16×16 matrix
//! `I + hL + (hL)²/2 + (hL)³/6 + (hL)⁴/24`, which is built once per step size.

use nalgebra::{Matrix2, Matrix4};
use num_complex::Complex64 as C64;

use super::state::DensityMatrix4;
use crate::couplings::CouplingRates;
use crate::error::{domain, Error, Result};

type Super = [[C64; 16]; 16];

/// Step-size policy for [`evolve_lindblad`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepControl {
    /// Upper bound on the step; `None` picks
    /// `min(0.05/γ, 0.005/ω₀, 0.005/|Ω₁₂|)`.
    pub max_step: Option<f64>,
    /// Bound on the step-doubling estimate of the accumulated error.
    pub tolerance: f64,
}

impl Default for StepControl {
    fn default() -> Self {
        Self {
            max_step: None,
            tolerance: 1e-6,
        }
    }
}

impl StepControl {
    pub fn fixed(step: f64) -> Self {
        Self {
            max_step: Some(step),
            ..Self::default()
        }
    }
}

fn kron(a: &Matrix2<C64>, b: &Matrix2<C64>) -> Matrix4<C64> {
    Matrix4::from_fn(|i, j| a[(i / 2, j / 2)] * b[(i % 2, j % 2)])
}

/// Raising, lowering and inversion operators of atoms 1 and 2.
struct DipoleOps {
    raise: [Matrix4<C64>; 2],
    lower: [Matrix4<C64>; 2],
    z: [Matrix4<C64>; 2],
}

impl DipoleOps {
    fn new() -> Self {
        let o = C64::new(0.0, 0.0);
        let l = C64::new(1.0, 0.0);
        let h = C64::new(0.5, 0.0);
        // Single atom, basis (|e⟩, |g⟩).
        let sp = Matrix2::new(o, l, o, o);
        let sm = sp.adjoint();
        let sz = Matrix2::new(h, o, o, -h);
        let id = Matrix2::identity();
        Self {
            raise: [kron(&sp, &id), kron(&id, &sp)],
            lower: [kron(&sm, &id), kron(&id, &sm)],
            z: [kron(&sz, &id), kron(&id, &sz)],
        }
    }
}

/// Right-hand side dρ/dt of the master equation.
pub fn master_rhs(
    rho: &Matrix4<C64>,
    rates: &CouplingRates,
    gamma: f64,
    omega0: f64,
) -> Matrix4<C64> {
    let ops = DipoleOps::new();
    rhs_with(&ops, rho, rates, gamma, omega0)
}

fn rhs_with(
    ops: &DipoleOps,
    rho: &Matrix4<C64>,
    rates: &CouplingRates,
    gamma: f64,
    omega0: f64,
) -> Matrix4<C64> {
    let mi = C64::new(0.0, -1.0);
    let mut out = Matrix4::zeros();
    for i in 0..2 {
        out += (ops.z[i] * rho - rho * ops.z[i]) * (mi * omega0);
    }
    let damping = [[gamma, rates.gamma12], [rates.gamma12, gamma]];
    for i in 0..2 {
        for j in 0..2 {
            let hop = ops.raise[i] * ops.lower[j];
            if i != j {
                out += (hop * rho - rho * hop) * (mi * rates.omega12);
            }
            let jump = ops.lower[j] * rho * ops.raise[i] * C64::new(2.0, 0.0);
            out += (jump - hop * rho - rho * hop) * C64::new(0.5 * damping[i][j], 0.0);
        }
    }
    out
}

fn generator(rates: &CouplingRates, gamma: f64, omega0: f64) -> Super {
    let ops = DipoleOps::new();
    let mut sup = [[C64::new(0.0, 0.0); 16]; 16];
    for col in 0..16 {
        let mut basis = Matrix4::zeros();
        basis[(col / 4, col % 4)] = C64::new(1.0, 0.0);
        let image = rhs_with(&ops, &basis, rates, gamma, omega0);
        for row in 0..16 {
            sup[row][col] = image[(row / 4, row % 4)];
        }
    }
    sup
}

fn mat_mul(a: &Super, b: &Super) -> Super {
    let mut out = [[C64::new(0.0, 0.0); 16]; 16];
    for i in 0..16 {
        for k in 0..16 {
            let aik = a[i][k];
            if aik == C64::new(0.0, 0.0) {
                continue;
            }
            for j in 0..16 {
                out[i][j] += aik * b[k][j];
            }
        }
    }
    out
}

fn rk4_step_matrix(gen: &Super, h: f64) -> Super {
    let mut hl = *gen;
    for row in hl.iter_mut() {
        for z in row.iter_mut() {
            *z *= h;
        }
    }
    // Horner: I + A(I + A/2(I + A/3(I + A/4))).
    let mut acc = identity();
    for k in [4.0, 3.0, 2.0, 1.0] {
        let mut next = mat_mul(&hl, &acc);
        for (i, row) in next.iter_mut().enumerate() {
            for z in row.iter_mut() {
                *z /= k;
            }
            row[i] += C64::new(1.0, 0.0);
        }
        acc = next;
    }
    acc
}

fn identity() -> Super {
    let mut id = [[C64::new(0.0, 0.0); 16]; 16];
    for (i, row) in id.iter_mut().enumerate() {
        row[i] = C64::new(1.0, 0.0);
    }
    id
}

fn apply(p: &Super, v: &[C64; 16]) -> [C64; 16] {
    let mut out = [C64::new(0.0, 0.0); 16];
    for (o, row) in out.iter_mut().zip(p.iter()) {
        *o = row.iter().zip(v.iter()).map(|(a, b)| a * b).sum();
    }
    out
}

fn flatten(m: &Matrix4<C64>) -> [C64; 16] {
    std::array::from_fn(|k| m[(k / 4, k % 4)])
}

fn unflatten(v: &[C64; 16]) -> Matrix4<C64> {
    Matrix4::from_fn(|i, j| v[i * 4 + j])
}

/// Default step bound resolving the fastest scale of the generator.
pub fn default_max_step(rates: &CouplingRates, gamma: f64, omega0: f64) -> f64 {
    let mut h = 0.05 / gamma;
    h = h.min(0.005 / omega0);
    if rates.omega12 != 0.0 {
        h = h.min(0.005 / rates.omega12.abs());
    }
    h
}

/// Integrator bound to one set of physical parameters.
pub struct LindbladIntegrator {
    gen: Super,
    max_step: f64,
    tolerance: f64,
    cached: Option<(f64, Super)>,
}

impl LindbladIntegrator {
    pub fn new(
        rates: &CouplingRates,
        gamma: f64,
        omega0: f64,
        control: &StepControl,
    ) -> Result<Self> {
        if !(gamma.is_finite() && gamma > 0.0) {
            return Err(domain(format!(
                "gamma must be finite and positive, got {gamma}"
            )));
        }
        if !(omega0.is_finite() && omega0 > 0.0) {
            return Err(domain(format!(
                "omega0 must be finite and positive, got {omega0}"
            )));
        }
        if !(rates.gamma12.is_finite() && rates.omega12.is_finite()) {
            return Err(domain("coupling rates must be finite"));
        }
        let max_step = control
            .max_step
            .unwrap_or_else(|| default_max_step(rates, gamma, omega0));
        if !(max_step.is_finite() && max_step > 0.0) {
            return Err(domain(format!(
                "step must be finite and positive, got {max_step}"
            )));
        }
        Ok(Self {
            gen: generator(rates, gamma, omega0),
            max_step,
            tolerance: control.tolerance,
            cached: None,
        })
    }

    pub fn max_step(&self) -> f64 {
        self.max_step
    }

    /// Step-doubling estimate of the local error of one step of size `h`,
    /// taken as the largest entry of `P(h) − P(h/2)²` scaled by 16/15.
    pub fn local_error_estimate(&self, h: f64) -> f64 {
        let full = rk4_step_matrix(&self.gen, h);
        let half = rk4_step_matrix(&self.gen, 0.5 * h);
        let two_half = mat_mul(&half, &half);
        let mut worst = 0.0_f64;
        for i in 0..16 {
            for j in 0..16 {
                worst = worst.max((full[i][j] - two_half[i][j]).norm());
            }
        }
        worst * 16.0 / 15.0
    }

    fn step_matrix(&mut self, h: f64) -> &Super {
        let stale = !matches!(self.cached, Some((ch, _)) if ch == h);
        if stale {
            self.cached = Some((h, rk4_step_matrix(&self.gen, h)));
        }
        &self.cached.as_ref().expect("cached step matrix").1
    }

    fn check_budget(&self, h: f64, steps: usize) -> Result<()> {
        let estimate = self.local_error_estimate(h) * steps as f64;
        if !(estimate <= self.tolerance) {
            return Err(Error::StepTooCoarse {
                step: h,
                estimate,
                tolerance: self.tolerance,
            });
        }
        Ok(())
    }

    /// States at each of `times` (ascending, non-negative) starting from
    /// `rho0` at t = 0.
    pub fn trajectory(
        &mut self,
        rho0: &DensityMatrix4,
        times: &[f64],
    ) -> Result<Vec<DensityMatrix4>> {
        let mut prev = 0.0;
        let mut plan = Vec::with_capacity(times.len());
        for &t in times {
            if !(t.is_finite() && t >= prev) {
                return Err(domain(format!(
                    "times must be finite, non-negative and ascending (got {t} after {prev})"
                )));
            }
            let span = t - prev;
            let steps = (span / self.max_step).ceil() as usize;
            plan.push((span, steps));
            prev = t;
        }
        let total: usize = plan.iter().map(|&(_, n)| n).sum();
        let widest = plan
            .iter()
            .filter(|&&(_, n)| n > 0)
            .map(|&(span, n)| span / n as f64)
            .fold(0.0, f64::max);
        if total > 0 {
            self.check_budget(widest, total)?;
        }

        let mut state = flatten(rho0.matrix());
        let mut out = Vec::with_capacity(times.len());
        for (span, steps) in plan {
            if steps > 0 {
                let h = span / steps as f64;
                let p = *self.step_matrix(h);
                for _ in 0..steps {
                    state = apply(&p, &state);
                }
            }
            out.push(DensityMatrix4::from_matrix(unflatten(&state)));
        }
        Ok(out)
    }
}

/// Evolves a full density matrix to time `t`.
pub fn evolve_lindblad(
    rho0: &DensityMatrix4,
    rates: &CouplingRates,
    gamma: f64,
    omega0: f64,
    t: f64,
    control: &StepControl,
) -> Result<DensityMatrix4> {
    let mut integ = LindbladIntegrator::new(rates, gamma, omega0, control)?;
    Ok(integ.trajectory(rho0, &[t])?.remove(0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::state::{initial_density, InitialState, XState};

    #[test]
    fn ground_state_is_stationary() {
        let rho0 = XState::ground().to_density();
        let rates = CouplingRates::new(0.4, 3.0);
        let out = evolve_lindblad(&rho0, &rates, 1.0, 20.0, 2.0, &StepControl::default()).unwrap();
        assert!(out.max_abs_diff(&rho0) < 1e-15);
    }

    #[test]
    fn doubly_excited_population_decays_at_twice_gamma() {
        let rho0 = XState::diagonal(1.0, 0.0, 0.0, 0.0).to_density();
        let rates = CouplingRates::new(-0.2, 1.5);
        let out = evolve_lindblad(&rho0, &rates, 1.0, 10.0, 0.9, &StepControl::default()).unwrap();
        assert!((out.get(0, 0).re - (-1.8_f64).exp()).abs() < 1e-10);
    }

    #[test]
    fn rhs_is_trace_free_and_hermiticity_preserving() {
        let x = XState {
            c14: C64::new(0.1, -0.2),
            c23: C64::new(0.05, 0.1),
            ..XState::diagonal(0.3, 0.2, 0.25, 0.25)
        };
        let d = master_rhs(
            x.to_density().matrix(),
            &CouplingRates::new(0.3, -2.0),
            1.0,
            7.0,
        );
        assert!(d.trace().norm() < 1e-15);
        assert!((d - d.adjoint()).iter().all(|z| z.norm() < 1e-15));
    }

    #[test]
    fn coarse_fixed_step_is_refused() {
        let rho0 = initial_density(InitialState::Bell0).to_density();
        let res = evolve_lindblad(
            &rho0,
            &CouplingRates::independent(),
            1.0,
            100.0,
            1.0,
            &StepControl::fixed(0.05),
        );
        assert!(matches!(res, Err(Error::StepTooCoarse { .. })));
    }

    #[test]
    fn rejects_descending_times() {
        let mut integ = LindbladIntegrator::new(
            &CouplingRates::independent(),
            1.0,
            1.0,
            &StepControl::default(),
        )
        .unwrap();
        assert!(integ
            .trajectory(&XState::ground().to_density(), &[1.0, 0.5])
            .is_err());
    }

    #[test]
    fn semigroup_composition() {
        let x0 = XState {
            c14: C64::new(0.2, 0.1),
            c23: C64::new(-0.1, 0.15),
            ..XState::diagonal(0.3, 0.3, 0.2, 0.2)
        };
        let rates = CouplingRates::new(0.35, 1.2);
        let ctl = StepControl::default();
        let (t1, t2) = (0.37, 0.81);
        let direct = evolve_lindblad(&x0.to_density(), &rates, 1.0, 5.0, t1 + t2, &ctl).unwrap();
        let mid = evolve_lindblad(&x0.to_density(), &rates, 1.0, 5.0, t1, &ctl).unwrap();
        let composed = evolve_lindblad(&mid, &rates, 1.0, 5.0, t2, &ctl).unwrap();
        assert!(direct.max_abs_diff(&composed) < 1e-8);
    }
}
