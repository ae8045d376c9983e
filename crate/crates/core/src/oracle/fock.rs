use nalgebra::DMatrix;
use num_complex::Complex64;

use super::density::DensityMatrix4;
use super::PURE_STATE_CAP;
use crate::error::{invalid, Error, Result};
use crate::eta::EtaNumberState;
use crate::free_fermion::ModelParams;

/// Occupation bitstring; site `l` (1-based) is bit `l − 1`.
pub type Occupations = usize;

fn site_mask(site: usize) -> Occupations {
    1 << (site - 1)
}

/// `(−1)^{Σ_{k<l} n_k}`
fn parity_below(bits: Occupations, site: usize) -> f64 {
    if (bits & (site_mask(site) - 1)).count_ones().is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

/// `c_l†|bits⟩ = δ_{n_l,0} (−1)^{Σ_{k<l} n_k} |bits + l⟩`.
pub fn create(bits: Occupations, site: usize) -> Option<(f64, Occupations)> {
    let mask = site_mask(site);
    if bits & mask != 0 {
        return None;
    }
    Some((parity_below(bits, site), bits | mask))
}

/// `c_l|bits⟩ = δ_{n_l,1} (−1)^{Σ_{k<l} n_k} |bits − l⟩`.
pub fn annihilate(bits: Occupations, site: usize) -> Option<(f64, Occupations)> {
    let mask = site_mask(site);
    if bits & mask == 0 {
        return None;
    }
    Some((parity_below(bits, site), bits & !mask))
}

fn check_size(sites: usize, cap: usize) -> Result<()> {
    if sites == 0 {
        return Err(invalid("Fock space needs at least one mode"));
    }
    if sites > cap {
        return Err(Error::TooLarge { l: sites, cap });
    }
    Ok(())
}

/// Dense vector in the `2^L` occupation basis.
///
/// Operator applications return unnormalized vectors; physical states are
/// normalized with [`normalized`](Self::normalized).
#[derive(Debug, Clone, PartialEq)]
pub struct FockState {
    sites: usize,
    amplitudes: Vec<Complex64>,
}

impl FockState {
    pub fn zero(sites: usize) -> Result<Self> {
        check_size(sites, PURE_STATE_CAP)?;
        Ok(FockState { sites, amplitudes: vec![Complex64::new(0.0, 0.0); 1 << sites] })
    }

    pub fn vacuum(sites: usize) -> Result<Self> {
        Self::basis(sites, 0)
    }

    pub fn basis(sites: usize, bits: Occupations) -> Result<Self> {
        let mut state = Self::zero(sites)?;
        if bits >= state.amplitudes.len() {
            return Err(invalid(format!("bitstring {bits:#b} has more than {sites} modes")));
        }
        state.amplitudes[bits] = Complex64::new(1.0, 0.0);
        Ok(state)
    }

    pub fn from_amplitudes(sites: usize, amplitudes: Vec<Complex64>) -> Result<Self> {
        check_size(sites, PURE_STATE_CAP)?;
        if amplitudes.len() != 1 << sites {
            return Err(invalid(format!(
                "{} amplitudes given for {} modes",
                amplitudes.len(),
                sites
            )));
        }
        Ok(FockState { sites, amplitudes })
    }

    pub fn sites(&self) -> usize {
        self.sites
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn amplitude(&self, bits: Occupations) -> Complex64 {
        self.amplitudes[bits]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn normalized(&self) -> Result<Self> {
        let norm = self.norm_sqr().sqrt();
        if norm == 0.0 {
            return Err(invalid("cannot normalize the zero vector"));
        }
        Ok(self.scaled(Complex64::new(1.0 / norm, 0.0)))
    }

    pub fn scaled(&self, factor: Complex64) -> Self {
        FockState { sites: self.sites, amplitudes: self.amplitudes.iter().map(|a| a * factor).collect() }
    }

    /// `⟨self|other⟩`
    pub fn inner(&self, other: &FockState) -> Complex64 {
        self.amplitudes.iter().zip(&other.amplitudes).map(|(a, b)| a.conj() * b).sum()
    }

    /// `self += factor · other`
    pub fn add_scaled(&mut self, factor: Complex64, other: &FockState) {
        for (a, b) in self.amplitudes.iter_mut().zip(&other.amplitudes) {
            *a += factor * b;
        }
    }

    fn check_site(&self, site: usize) -> Result<()> {
        if site == 0 || site > self.sites {
            return Err(invalid(format!("site {site} outside 1..={}", self.sites)));
        }
        Ok(())
    }

    fn map_basis<F>(&self, op: F) -> FockState
    where
        F: Fn(Occupations) -> Option<(f64, Occupations)>,
    {
        let mut out = vec![Complex64::new(0.0, 0.0); self.amplitudes.len()];
        for (bits, &a) in self.amplitudes.iter().enumerate() {
            if a == Complex64::new(0.0, 0.0) {
                continue;
            }
            if let Some((sign, target)) = op(bits) {
                out[target] += a * sign;
            }
        }
        FockState { sites: self.sites, amplitudes: out }
    }

    /// `c_site† |self⟩` with the Jordan–Wigner parity sign.
    pub fn apply_creation(&self, site: usize) -> Result<FockState> {
        self.check_site(site)?;
        Ok(self.map_basis(|b| create(b, site)))
    }

    /// `c_site |self⟩`
    pub fn apply_annihilation(&self, site: usize) -> Result<FockState> {
        self.check_site(site)?;
        Ok(self.map_basis(|b| annihilate(b, site)))
    }

    /// `σ⁺_site |self⟩` in the qubit picture, without parity string.
    pub fn apply_raising(&self, site: usize) -> Result<FockState> {
        self.check_site(site)?;
        Ok(self.map_basis(|b| (b & site_mask(site) == 0).then(|| (1.0, b | site_mask(site)))))
    }

    /// `σ⁻_site |self⟩`
    pub fn apply_lowering(&self, site: usize) -> Result<FockState> {
        self.check_site(site)?;
        Ok(self.map_basis(|b| (b & site_mask(site) != 0).then(|| (1.0, b & !site_mask(site)))))
    }

    /// Momentum-mode creation `c̃_k† = L^{−1/2} Σ_l ω^{lk} c_l†`, the adjoint
    /// of `c̃_k = L^{−1/2} Σ_l ω^{−lk} c_l`, which inverts
    /// `c_l = L^{−1/2} Σ_k ω^{lk} c̃_k`.
    pub fn momentum_mode_creation(&self, k: usize) -> Result<FockState> {
        if k == 0 || k > self.sites {
            return Err(invalid(format!("mode {k} outside 1..={}", self.sites)));
        }
        let l_total = self.sites as f64;
        let mut out = FockState::zero(self.sites)?;
        for site in 1..=self.sites {
            let phase = 2.0 * std::f64::consts::PI * ((site * k) % self.sites) as f64 / l_total;
            let coefficient = Complex64::from_polar(1.0 / l_total.sqrt(), phase);
            out.add_scaled(coefficient, &self.apply_creation(site)?);
        }
        Ok(out)
    }

    /// `c̃†_{k_1} c̃†_{k_2} ⋯ c̃†_{k_N} |0⟩`
    pub fn momentum_eigenstate(sites: usize, modes: &[usize]) -> Result<FockState> {
        let mut state = FockState::vacuum(sites)?;
        for &k in modes.iter().rev() {
            state = state.momentum_mode_creation(k)?;
        }
        Ok(state)
    }

    /// `⟨c_i† c_j⟩`
    pub fn hopping_expectation(&self, i: usize, j: usize) -> Result<Complex64> {
        let moved = self.apply_annihilation(j)?.apply_creation(i)?;
        Ok(self.inner(&moved))
    }

    /// `⟨σ⁺_i σ⁻_j⟩` in the qubit picture.
    pub fn raising_lowering_expectation(&self, i: usize, j: usize) -> Result<Complex64> {
        let moved = self.apply_lowering(j)?.apply_raising(i)?;
        Ok(self.inner(&moved))
    }

    /// `⟨N̂⟩`
    pub fn number_expectation(&self) -> f64 {
        self.amplitudes
            .iter()
            .enumerate()
            .map(|(bits, a)| bits.count_ones() as f64 * a.norm_sqr())
            .sum()
    }

    /// Reduced density matrix of the qubits at sites `i` and `j` (basis
    /// `|n_i n_j⟩`, index `2·n_i + n_j`), tracing out all other qubits.
    pub fn two_site_rdm(&self, i: usize, j: usize) -> Result<DensityMatrix4> {
        let m = accumulate_pure_rdm(self, i, j, 1.0)?;
        DensityMatrix4::new(m)
    }

    /// `H|self⟩` for the ring Hamiltonian in the site picture,
    /// `−t Σ_l (c_l†c_{l+1} + c_{l+1}†c_l) − μ Σ_l n_l` with site `L+1 ≡ 1`.
    pub fn apply_ring_hamiltonian(&self, params: &ModelParams) -> Result<FockState> {
        if params.sites() != self.sites {
            return Err(invalid("Hamiltonian and state have different sizes"));
        }
        let t = params.hopping();
        let mu = params.mu();
        let mut out = vec![Complex64::new(0.0, 0.0); self.amplitudes.len()];
        for (bits, &a) in self.amplitudes.iter().enumerate() {
            if a == Complex64::new(0.0, 0.0) {
                continue;
            }
            if mu != 0.0 {
                out[bits] -= a * mu * bits.count_ones() as f64;
            }
            for (target, coefficient) in ring_hopping_terms(bits, self.sites) {
                out[target] -= a * t * coefficient;
            }
        }
        Ok(FockState { sites: self.sites, amplitudes: out })
    }
}

/// Nonzero matrix elements `(bits', s)` of `Σ_l (c_l†c_{l+1} + c_{l+1}†c_l)`
/// acting on `|bits⟩`.
fn ring_hopping_terms(bits: Occupations, sites: usize) -> Vec<(Occupations, f64)> {
    let mut terms = Vec::new();
    for l in 1..=sites {
        let next = if l == sites { 1 } else { l + 1 };
        for (to, from) in [(l, next), (next, l)] {
            if let Some((s1, mid)) = annihilate(bits, from) {
                if let Some((s2, target)) = create(mid, to) {
                    terms.push((target, s1 * s2));
                }
            }
        }
    }
    terms
}

/// Dense site-picture ring Hamiltonian, `2^L × 2^L`.
pub fn ring_hamiltonian_matrix(params: &ModelParams) -> Result<DMatrix<Complex64>> {
    let sites = params.sites();
    check_size(sites, super::DENSE_CAP)?;
    let dim = 1usize << sites;
    let mut h = DMatrix::<Complex64>::zeros(dim, dim);
    for bits in 0..dim {
        h[(bits, bits)] -= Complex64::from(params.mu() * bits.count_ones() as f64);
        for (target, coefficient) in ring_hopping_terms(bits, sites) {
            h[(target, bits)] -= Complex64::from(params.hopping() * coefficient);
        }
    }
    Ok(h)
}

pub(crate) fn rdm_index_pairs(sites: usize, i: usize, j: usize) -> Result<Vec<[Occupations; 4]>> {
    if i == 0 || j == 0 || i > sites || j > sites || i == j {
        return Err(invalid(format!("site pair ({i}, {j}) not valid for {sites} sites")));
    }
    let (mi, mj) = (site_mask(i), site_mask(j));
    Ok((0..1usize << sites)
        .filter(|rest| rest & (mi | mj) == 0)
        .map(|rest| [rest, rest | mj, rest | mi, rest | mi | mj])
        .collect())
}

/// `weight · Tr_{rest} |ψ⟩⟨ψ|` on sites `(i, j)`.
pub(crate) fn accumulate_pure_rdm(
    state: &FockState,
    i: usize,
    j: usize,
    weight: f64,
) -> Result<nalgebra::Matrix4<Complex64>> {
    let mut m = nalgebra::Matrix4::<Complex64>::zeros();
    for idx in rdm_index_pairs(state.sites, i, j)? {
        for a in 0..4 {
            let psi_a = state.amplitudes[idx[a]];
            for b in 0..4 {
                m[(a, b)] += psi_a * state.amplitudes[idx[b]].conj() * weight;
            }
        }
    }
    Ok(m)
}

/// Equal-amplitude superposition of all `C(L, N)` weight-`N` bitstrings.
pub fn dicke_state(sites: usize, excitations: usize) -> Result<FockState> {
    if excitations > sites {
        return Err(invalid(format!("{excitations} excitations do not fit on {sites} qubits")));
    }
    let mut state = FockState::zero(sites)?;
    for (bits, a) in state.amplitudes.iter_mut().enumerate() {
        if bits.count_ones() as usize == excitations {
            *a = Complex64::new(1.0, 0.0);
        }
    }
    state.normalized()
}

/// `𝒩^{−1/2} (η⁺)^N |0⟩` with `η⁺ = Σ_j σ⁺_j` acting on the pair qubits.
pub fn eta_number_state(state: &EtaNumberState) -> Result<FockState> {
    let sites = state.sites();
    let mut psi = FockState::vacuum(sites)?;
    for _ in 0..state.pairs() {
        let mut next = FockState::zero(sites)?;
        for site in 1..=sites {
            next.add_scaled(Complex64::new(1.0, 0.0), &psi.apply_raising(site)?);
        }
        psi = next;
    }
    let scale = (-0.5 * state.ln_normalization()).exp();
    Ok(psi.scaled(Complex64::new(scale, 0.0)))
}
