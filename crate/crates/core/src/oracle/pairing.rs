use nalgebra::Matrix4;
use num_complex::Complex64;

use super::density::DensityMatrix4;
use super::fock::{annihilate, create, Occupations};
use crate::bcs::BcsPoint;
use crate::error::Result;

/// Row/column of bitstring `bits` (mode `k` = bit 0, mode `−k` = bit 1) in
/// the `|n_k n_{−k}⟩` two-qubit ordering.
fn qubit_index(bits: Occupations) -> usize {
    2 * (bits & 1) + (bits >> 1 & 1)
}

/// Dense `H_k = ε(n_k + n_{−k} − 1) + Δ c_k†c_{−k}† + Δ̄ c_{−k}c_k` on the
/// two-mode Fock space, assembled from the signed creation and annihilation
/// rules.
pub fn pairing_hamiltonian(point: &BcsPoint) -> Matrix4<Complex64> {
    let mut h = Matrix4::<Complex64>::zeros();
    let delta = point.delta();
    for bits in 0..4usize {
        let col = qubit_index(bits);
        let occupied = bits.count_ones() as f64;
        h[(col, col)] += Complex64::from(point.epsilon() * (occupied - 1.0));
        // c_k† c_{−k}†
        if let Some((s1, mid)) = create(bits, 2) {
            if let Some((s2, target)) = create(mid, 1) {
                h[(qubit_index(target), col)] += delta * (s1 * s2);
            }
        }
        // c_{−k} c_k
        if let Some((s1, mid)) = annihilate(bits, 1) {
            if let Some((s2, target)) = annihilate(mid, 2) {
                h[(qubit_index(target), col)] += delta.conj() * (s1 * s2);
            }
        }
    }
    h
}

/// `e^{−βH_k}/Z` from the eigendecomposition of [`pairing_hamiltonian`];
/// at `β = ∞` the projector onto the ground space.
pub fn pairing_gibbs_state(point: &BcsPoint) -> Result<DensityMatrix4> {
    let eig = pairing_hamiltonian(point).symmetric_eigen();
    let ground = eig.eigenvalues.iter().copied().fold(f64::INFINITY, f64::min);
    let weights: Vec<f64> = eig
        .eigenvalues
        .iter()
        .map(|&e| {
            let gap = e - ground;
            if point.beta().is_infinite() {
                if gap <= 1e-12 { 1.0 } else { 0.0 }
            } else {
                (-point.beta() * gap).exp()
            }
        })
        .collect();
    let z: f64 = weights.iter().sum();
    let mut rho = Matrix4::<Complex64>::zeros();
    for (i, w) in weights.iter().enumerate() {
        let v = eig.eigenvectors.column(i);
        rho += v * v.adjoint() * Complex64::new(w / z, 0.0);
    }
    DensityMatrix4::new(rho)
}
