//! Entanglement and mixedness of the channel state.

use nalgebra::Matrix4;
use num_complex::Complex64 as C64;

use crate::dynamics::{DensityMatrix4, XState};
use crate::error::{Error, Result};

/// σ^y ⊗ σ^y in the |ee⟩, |eg⟩, |ge⟩, |gg⟩ basis.
fn spin_flip() -> Matrix4<C64> {
    let mut y = Matrix4::zeros();
    y[(0, 3)] = C64::new(-1.0, 0.0);
    y[(3, 0)] = C64::new(-1.0, 0.0);
    y[(1, 2)] = C64::new(1.0, 0.0);
    y[(2, 1)] = C64::new(1.0, 0.0);
    y
}

/// Wootters concurrence.
///
/// The λᵢ (square roots of the eigenvalues of ρ ρ̃) are obtained as the
/// singular values of τ = Vᵀ (σʸ⊗σʸ) V, where the columns of V are the
/// eigenvectors of ρ scaled by the square roots of their weights. This avoids
/// taking square roots of tiny, noisy eigenvalues of ρ ρ̃.
pub fn concurrence(rho: &DensityMatrix4) -> Result<f64> {
    let m = rho.matrix();
    let herm = (m + m.adjoint()) * C64::new(0.5, 0.0);
    let dump = || Error::EigenFailure {
        matrix: format!("{m}"),
    };
    let eig = herm.try_symmetric_eigen(1e-15, 10_000).ok_or_else(dump)?;
    let mut v = eig.eigenvectors;
    for (k, &w) in eig.eigenvalues.iter().enumerate() {
        let scale = C64::new(w.max(0.0).sqrt(), 0.0);
        for i in 0..4 {
            v[(i, k)] *= scale;
        }
    }
    let tau = v.transpose() * spin_flip() * v;
    let svd = tau.try_svd(false, false, 1e-15, 10_000).ok_or_else(dump)?;
    let mut lambda: Vec<f64> = svd.singular_values.iter().copied().collect();
    lambda.sort_by(|a, b| b.total_cmp(a));
    Ok((lambda[0] - lambda[1] - lambda[2] - lambda[3]).max(0.0))
}

/// Closed-form concurrence of an X state.
pub fn concurrence_x_fast(rho: &XState) -> f64 {
    let outer = 2.0 * (rho.c14.norm() - (rho.p22.max(0.0) * rho.p33.max(0.0)).sqrt());
    let inner = 2.0 * (rho.c23.norm() - (rho.p11.max(0.0) * rho.p44.max(0.0)).sqrt());
    outer.max(inner).max(0.0)
}

/// tr ρ² = Σᵢⱼ |ρᵢⱼ|².
pub fn purity(rho: &DensityMatrix4) -> f64 {
    rho.matrix().iter().map(|z| z.norm_sqr()).sum()
}

pub fn purity_x(rho: &XState) -> f64 {
    rho.populations().iter().map(|p| p * p).sum::<f64>()
        + 2.0 * (rho.c14.norm_sqr() + rho.c23.norm_sqr())
}
