use nalgebra::{DMatrix, Matrix4};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::rdm::{Concurrence, TwoSiteRdm};

/// Hermiticity and trace tolerance.
pub const DENSITY_TOLERANCE: f64 = 1e-12;
/// Most negative eigenvalue accepted as rounding.
pub const EIGENVALUE_FLOOR: f64 = -1e-10;

/// Two-qubit density matrix on `|00⟩, |01⟩, |10⟩, |11⟩` (index `2·a + b`).
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix4(Matrix4<Complex64>);

impl DensityMatrix4 {
    pub fn new(m: Matrix4<Complex64>) -> Result<Self> {
        let asymmetry = (m - m.adjoint()).iter().map(|x| x.norm()).fold(0.0, f64::max);
        if asymmetry > DENSITY_TOLERANCE {
            return Err(Error::Invariant(format!("density matrix not Hermitian (deviation {asymmetry:e})")));
        }
        let trace = m.trace();
        if (trace - Complex64::new(1.0, 0.0)).norm() > DENSITY_TOLERANCE {
            return Err(Error::Invariant(format!("density matrix trace {trace} differs from 1")));
        }
        let rho = DensityMatrix4(m);
        let smallest = rho.eigenvalues().into_iter().fold(f64::INFINITY, f64::min);
        if smallest < EIGENVALUE_FLOOR {
            return Err(Error::Invariant(format!("density matrix has eigenvalue {smallest:e} < 0")));
        }
        Ok(rho)
    }

    pub fn from_rdm(rdm: &TwoSiteRdm) -> Result<Self> {
        let rows = rdm.to_matrix();
        Self::new(Matrix4::from_fn(|r, c| rows[r][c]))
    }

    pub fn matrix(&self) -> &Matrix4<Complex64> {
        &self.0
    }

    pub fn u(&self) -> f64 {
        self.0[(0, 0)].re
    }

    /// Weight of `|10⟩`: first mode occupied, second empty.
    pub fn w1(&self) -> f64 {
        self.0[(2, 2)].re
    }

    /// Weight of `|01⟩`.
    pub fn w2(&self) -> f64 {
        self.0[(1, 1)].re
    }

    pub fn v(&self) -> f64 {
        self.0[(3, 3)].re
    }

    /// `⟨01|ρ|10⟩`, which equals `⟨c₁†c₂⟩` for the first two sites.
    pub fn z(&self) -> Complex64 {
        self.0[(1, 2)]
    }

    /// Largest entry outside the diagonal and the `|01⟩–|10⟩` coherence.
    pub fn max_outside_x_structure(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for r in 0..4 {
            for c in 0..4 {
                let allowed = r == c || (r, c) == (1, 2) || (r, c) == (2, 1);
                if !allowed {
                    worst = worst.max(self.0[(r, c)].norm());
                }
            }
        }
        worst
    }

    pub fn eigenvalues(&self) -> [f64; 4] {
        let eig = self.0.symmetric_eigen();
        [eig.eigenvalues[0], eig.eigenvalues[1], eig.eigenvalues[2], eig.eigenvalues[3]]
    }

    /// Largest entrywise deviation from another density matrix.
    pub fn max_deviation(&self, other: &DensityMatrix4) -> f64 {
        (self.0 - other.0).iter().map(|x| x.norm()).fold(0.0, f64::max)
    }
}

/// `σ_y ⊗ σ_y` in the computational basis.
fn spin_flip() -> Matrix4<Complex64> {
    let mut m = Matrix4::<Complex64>::zeros();
    m[(0, 3)] = Complex64::new(-1.0, 0.0);
    m[(3, 0)] = Complex64::new(-1.0, 0.0);
    m[(1, 2)] = Complex64::new(1.0, 0.0);
    m[(2, 1)] = Complex64::new(1.0, 0.0);
    m
}

/// Wootters concurrence `max{0, λ₁ − λ₂ − λ₃ − λ₄}`, with `λᵢ` the
/// decreasing square roots of the eigenvalues of `ρ (σ_y⊗σ_y) ρ* (σ_y⊗σ_y)`.
///
/// With `ρ = ΨΨ†` (columns `√pᵢ |ψᵢ⟩`), the `λᵢ` are the singular values of
/// the symmetric matrix `Ψᵀ (σ_y⊗σ_y) Ψ`. Taking singular values directly
/// keeps the small `λ` accurate, where square roots of eigenvalues of
/// `ρρ̃` would amplify rounding. Every positive eigenvalue is kept, however
/// small: a weight of `1e-17` still shifts `C` by `2√(uv) ~ 1e-8`.
pub fn wootters_concurrence(rho: &DensityMatrix4) -> Concurrence {
    let eig = rho.0.symmetric_eigen();
    let kept: Vec<usize> = (0..4).filter(|&i| eig.eigenvalues[i] > 0.0).collect();
    if kept.is_empty() {
        return Concurrence::ZERO;
    }
    let psi = DMatrix::<Complex64>::from_fn(4, kept.len(), |r, c| {
        let i = kept[c];
        eig.eigenvectors[(r, i)] * eig.eigenvalues[i].sqrt()
    });
    let flip = DMatrix::<Complex64>::from_fn(4, 4, |r, c| spin_flip()[(r, c)]);
    let tau = psi.transpose() * flip * &psi;
    let mut lambdas: Vec<f64> = tau.singular_values().iter().copied().collect();
    lambdas.sort_by(|a, b| b.total_cmp(a));
    let c = lambdas[0] - lambdas[1..].iter().sum::<f64>();
    Concurrence::new(c.max(0.0)).unwrap_or(Concurrence::ZERO)
}
