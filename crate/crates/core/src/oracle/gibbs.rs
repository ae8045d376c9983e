use nalgebra::DMatrix;
use num_complex::Complex64;

use super::density::DensityMatrix4;
use super::fock::{accumulate_pure_rdm, rdm_index_pairs, FockState};
use super::DENSE_CAP;
use crate::error::{Error, Result};
use crate::free_fermion::ModelParams;

/// Grand-canonical Gibbs state `e^{−βH}/Z` held in the momentum eigenbasis.
///
/// Each basis vector is built in the site picture by momentum-mode creation
/// operators; its energy is the Rayleigh quotient of the site Hamiltonian,
/// and the eigen-equation residual is recorded.
#[derive(Debug, Clone)]
pub struct GibbsState {
    sites: usize,
    probabilities: Vec<f64>,
    states: Vec<FockState>,
    energies: Vec<f64>,
    ln_partition: f64,
    max_eigen_residual: f64,
}

pub fn build_gibbs(params: &ModelParams) -> Result<GibbsState> {
    let sites = params.sites();
    if sites > DENSE_CAP {
        return Err(Error::TooLarge { l: sites, cap: DENSE_CAP });
    }
    let mut states = Vec::with_capacity(1 << sites);
    let mut energies = Vec::with_capacity(1 << sites);
    let mut max_eigen_residual: f64 = 0.0;
    for mask in 0..1usize << sites {
        let modes: Vec<usize> = (1..=sites).filter(|k| mask >> (k - 1) & 1 == 1).collect();
        let psi = FockState::momentum_eigenstate(sites, &modes)?;
        let mut h_psi = psi.apply_ring_hamiltonian(params)?;
        let energy = psi.inner(&h_psi).re;
        h_psi.add_scaled(Complex64::new(-energy, 0.0), &psi);
        max_eigen_residual = max_eigen_residual.max(h_psi.norm_sqr().sqrt());
        states.push(psi);
        energies.push(energy);
    }
    let ground = energies.iter().copied().fold(f64::INFINITY, f64::min);
    let beta = params.beta();
    let boltzmann: Vec<f64> = energies
        .iter()
        .map(|&e| {
            let gap = e - ground;
            if beta.is_infinite() {
                if gap <= 1e-10 { 1.0 } else { 0.0 }
            } else {
                (-beta * gap).exp()
            }
        })
        .collect();
    let total: f64 = boltzmann.iter().sum();
    let ln_partition = if beta.is_infinite() { f64::INFINITY } else { -beta * ground + total.ln() };
    Ok(GibbsState {
        sites,
        probabilities: boltzmann.iter().map(|w| w / total).collect(),
        states,
        energies,
        ln_partition,
        max_eigen_residual,
    })
}

impl GibbsState {
    pub fn sites(&self) -> usize {
        self.sites
    }

    pub fn ln_partition_function(&self) -> f64 {
        self.ln_partition
    }

    pub fn partition_function(&self) -> f64 {
        self.ln_partition.exp()
    }

    /// Eigen-energies of the basis vectors, in mode-bitmask order.
    pub fn energies(&self) -> &[f64] {
        &self.energies
    }

    pub fn probabilities(&self) -> &[f64] {
        &self.probabilities
    }

    /// Largest `‖H|K⟩ − E_K|K⟩‖` over the basis.
    pub fn max_eigen_residual(&self) -> f64 {
        self.max_eigen_residual
    }

    pub fn mean_number(&self) -> f64 {
        self.probabilities.iter().zip(&self.states).map(|(p, s)| p * s.number_expectation()).sum()
    }

    /// `⟨c_i† c_j⟩`
    pub fn hopping_expectation(&self, i: usize, j: usize) -> Result<Complex64> {
        let mut total = Complex64::new(0.0, 0.0);
        for (p, s) in self.probabilities.iter().zip(&self.states) {
            total += s.hopping_expectation(i, j)? * p;
        }
        Ok(total)
    }

    /// Dense `2^L × 2^L` density matrix `Σ_K p_K |K⟩⟨K|`.
    pub fn density_matrix(&self) -> DMatrix<Complex64> {
        let dim = 1usize << self.sites;
        let weighted = DMatrix::<Complex64>::from_fn(dim, dim, |r, c| {
            self.states[c].amplitude(r) * self.probabilities[c].sqrt()
        });
        &weighted * weighted.adjoint()
    }

    /// Two-qubit reduced state on sites `(i, j)`.
    pub fn two_site_rdm(&self, i: usize, j: usize) -> Result<DensityMatrix4> {
        let mut m = nalgebra::Matrix4::<Complex64>::zeros();
        for (p, s) in self.probabilities.iter().zip(&self.states) {
            if *p > 0.0 {
                m += accumulate_pure_rdm(s, i, j, *p)?;
            }
        }
        DensityMatrix4::new(m)
    }
}

/// Partial trace of a dense `2^L × 2^L` density matrix onto sites `(i, j)`.
pub fn rdm_from_dense(rho: &DMatrix<Complex64>, sites: usize, i: usize, j: usize) -> Result<DensityMatrix4> {
    if rho.nrows() != 1 << sites || rho.ncols() != 1 << sites {
        return Err(Error::InvalidInput(format!("matrix is not {0}×{0}", 1usize << sites)));
    }
    let mut m = nalgebra::Matrix4::<Complex64>::zeros();
    for idx in rdm_index_pairs(sites, i, j)? {
        for a in 0..4 {
            for b in 0..4 {
                m[(a, b)] += rho[(idx[a], idx[b])];
            }
        }
    }
    DensityMatrix4::new(m)
}

/// `Z = Π_k [1 + e^{−β(ε_k − μ)}]`, in logarithmic form.
pub fn partition_function_product(params: &ModelParams) -> f64 {
    let spectrum = params.spectrum();
    spectrum
        .energies()
        .iter()
        .map(|&e| {
            let x = -params.beta() * (e - params.mu());
            // ln(1 + e^x)
            if x > 0.0 {
                x + (-x).exp().ln_1p()
            } else {
                x.exp().ln_1p()
            }
        })
        .sum()
}
