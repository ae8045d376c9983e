//! Closed forms against the Fock-space oracle on small lattices.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::bcs::{bcs_ground_state, bcs_thermal_concurrence, BcsPoint};
use crate::error::{invalid, Error, Result};
use crate::eta::{eta_concurrence, eta_rdm, EtaNumberState};
use crate::free_fermion::{
    eigenstate_concurrence, eigenstate_rdm, thermal_concurrence, thermal_concurrence_two_site, thermal_rdm,
    EigenstateSpec, ModelParams,
};
use crate::oracle::{
    build_gibbs, eta_number_state, pairing_gibbs_state, pairing_hamiltonian, partition_function_product,
    ring_hamiltonian_matrix, wootters_concurrence, DensityMatrix4, FockState, DENSE_CAP,
};

/// Equivalence tolerance for concurrences and RDM entries.
pub const ORACLE_TOLERANCE: f64 = 1e-10;
/// Tolerance for the two-site formula against the general one.
pub const TWO_SITE_TOLERANCE: f64 = 1e-12;
/// Largest `L` for which the full site Hamiltonian is diagonalized.
const SPECTRUM_CAP: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    All,
    Eigenstate,
    Thermal,
    Eta,
    Bcs,
    Operators,
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "all" => Suite::All,
            "eigenstate" => Suite::Eigenstate,
            "thermal" => Suite::Thermal,
            "eta" => Suite::Eta,
            "bcs" => Suite::Bcs,
            "operators" => Suite::Operators,
            other => return Err(invalid(format!("unknown suite '{other}'"))),
        })
    }
}

/// Outcome of one named check over many cases.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckResult {
    pub name: String,
    pub checked: usize,
    pub max_deviation: f64,
    pub tolerance: f64,
}

impl CheckResult {
    fn new(name: &str, tolerance: f64) -> Self {
        CheckResult { name: name.to_string(), checked: 0, max_deviation: 0.0, tolerance }
    }

    fn record(&mut self, deviation: f64) {
        self.checked += 1;
        // NaN must not hide
        if deviation.is_nan() || deviation > self.max_deviation {
            self.max_deviation = if deviation.is_nan() { f64::INFINITY } else { deviation };
        }
    }

    pub fn passed(&self) -> bool {
        self.checked > 0 && self.max_deviation <= self.tolerance
    }
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} checked={} max_dev={:.3e} tol={:e}",
            if self.passed() { "PASS" } else { "FAIL" },
            self.name,
            self.checked,
            self.max_deviation,
            self.tolerance
        )
    }
}

/// Runs `suite` on lattices of up to `max_sites` sites.
pub fn run_checks(suite: Suite, max_sites: usize) -> Result<Vec<CheckResult>> {
    if !(2..=DENSE_CAP).contains(&max_sites) {
        return Err(invalid(format!("max-L must lie in [2, {DENSE_CAP}], got {max_sites}")));
    }
    let mut results = Vec::new();
    let wants = |s: Suite| suite == Suite::All || suite == s;
    if wants(Suite::Operators) {
        results.extend(operator_checks(max_sites.min(6))?);
    }
    if wants(Suite::Eigenstate) {
        results.extend(eigenstate_checks(max_sites)?);
    }
    if wants(Suite::Thermal) {
        results.extend(thermal_checks(max_sites)?);
    }
    if wants(Suite::Eta) {
        results.push(eta_check(max_sites)?);
    }
    if wants(Suite::Bcs) {
        results.extend(bcs_checks()?);
    }
    Ok(results)
}

fn complex_deviation(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm()
}

fn operator_checks(max_sites: usize) -> Result<Vec<CheckResult>> {
    let mut anticommutator = CheckResult::new("canonical-anticommutation", 1e-14);
    let mut jordan_wigner = CheckResult::new("jordan-wigner-image", 1e-14);
    for sites in 2..=max_sites {
        for bits in 0..1usize << sites {
            let state = FockState::basis(sites, bits)?;
            for i in 1..=sites {
                for j in 1..=sites {
                    // {c_i, c_j†}|b⟩ = δ_ij |b⟩
                    let mut lhs = state.apply_creation(j)?.apply_annihilation(i)?;
                    lhs.add_scaled(Complex64::new(1.0, 0.0), &state.apply_annihilation(i)?.apply_creation(j)?);
                    if i == j {
                        lhs.add_scaled(Complex64::new(-1.0, 0.0), &state);
                    }
                    anticommutator.record(lhs.norm_sqr().sqrt());
                    // {c_i, c_j} = 0
                    let mut lhs = state.apply_annihilation(j)?.apply_annihilation(i)?;
                    lhs.add_scaled(Complex64::new(1.0, 0.0), &state.apply_annihilation(i)?.apply_annihilation(j)?);
                    anticommutator.record(lhs.norm_sqr().sqrt());
                }
                // c_i† = (Π_{k<i} (1 − 2n_k)) σ_i⁺
                let parity = (bits & ((1 << (i - 1)) - 1)).count_ones();
                let sign = if parity % 2 == 0 { 1.0 } else { -1.0 };
                let mut diff = state.apply_creation(i)?;
                diff.add_scaled(Complex64::new(-sign, 0.0), &state.apply_raising(i)?);
                jordan_wigner.record(diff.norm_sqr().sqrt());
            }
        }
    }
    Ok(vec![anticommutator, jordan_wigner])
}

fn oracle_rdm_deviation(closed: &crate::rdm::TwoSiteRdm, oracle: &DensityMatrix4) -> Result<f64> {
    let closed = DensityMatrix4::from_rdm(closed)?;
    Ok(closed.max_deviation(oracle))
}

fn eigenstate_checks(max_sites: usize) -> Result<Vec<CheckResult>> {
    let mut concurrence = CheckResult::new("eigenstate-concurrence", ORACLE_TOLERANCE);
    let mut rdm = CheckResult::new("eigenstate-rdm", ORACLE_TOLERANCE);
    let mut energy = CheckResult::new("eigenstate-energy", ORACLE_TOLERANCE);
    for sites in 2..=max_sites {
        let params = ModelParams::new(sites, 1.0, 0.3, 1.0)?;
        for mask in 0..1usize << sites {
            let modes: Vec<usize> = (1..=sites).filter(|k| mask >> (k - 1) & 1 == 1).collect();
            let spec = EigenstateSpec::new(sites, &modes)?;
            let psi = FockState::momentum_eigenstate(sites, &modes)?;
            let oracle = psi.two_site_rdm(1, 2)?;
            let closed = eigenstate_rdm(&params, &spec)?;
            rdm.record(oracle_rdm_deviation(&closed, &oracle)?);
            let c = eigenstate_concurrence(&params, &spec)?.value();
            concurrence.record((c - wootters_concurrence(&oracle).value()).abs());
            let h_psi = psi.apply_ring_hamiltonian(&params)?;
            let expect = crate::free_fermion::eigenstate_energy(&params, &spec);
            energy.record(complex_deviation(psi.inner(&h_psi), Complex64::new(expect, 0.0)));
        }
    }
    Ok(vec![concurrence, rdm, energy])
}

fn thermal_checks(max_sites: usize) -> Result<Vec<CheckResult>> {
    let mut concurrence = CheckResult::new("thermal-concurrence", ORACLE_TOLERANCE);
    let mut rdm = CheckResult::new("thermal-rdm", ORACLE_TOLERANCE);
    let mut partition = CheckResult::new("thermal-partition-function", ORACLE_TOLERANCE);
    let mut two_site = CheckResult::new("two-site-closed-form", TWO_SITE_TOLERANCE);
    let mut spectrum = CheckResult::new("site-mode-spectrum", ORACLE_TOLERANCE);
    let betas: Vec<f64> = (0..5).map(|i| 0.2 + 1.2 * i as f64).collect();
    let mus: Vec<f64> = (0..5).map(|i| -2.0 + i as f64).collect();
    for sites in 2..=max_sites {
        for &beta in &betas {
            for &mu in &mus {
                let params = ModelParams::new(sites, 1.0, mu, beta)?;
                let gibbs = build_gibbs(&params)?;
                let oracle = gibbs.two_site_rdm(1, 2)?;
                rdm.record(oracle_rdm_deviation(&thermal_rdm(&params)?, &oracle)?);
                let c = thermal_concurrence(&params)?.value();
                concurrence.record((c - wootters_concurrence(&oracle).value()).abs());
                partition.record((gibbs.ln_partition_function() - partition_function_product(&params)).abs());
                if sites == 2 {
                    two_site.record((c - thermal_concurrence_two_site(&params)?.value()).abs());
                }
            }
        }
        if sites <= SPECTRUM_CAP {
            let params = ModelParams::new(sites, 1.0, 0.3, 1.0)?;
            let mut site_energies: Vec<f64> =
                ring_hamiltonian_matrix(&params)?.symmetric_eigen().eigenvalues.iter().copied().collect();
            site_energies.sort_by(f64::total_cmp);
            let mut mode_energies: Vec<f64> = (0..1usize << sites)
                .map(|mask| {
                    let modes: Vec<usize> = (1..=sites).filter(|k| mask >> (k - 1) & 1 == 1).collect();
                    EigenstateSpec::new(sites, &modes).map(|s| crate::free_fermion::eigenstate_energy(&params, &s))
                })
                .collect::<Result<_>>()?;
            mode_energies.sort_by(f64::total_cmp);
            for (a, b) in site_energies.iter().zip(&mode_energies) {
                spectrum.record((a - b).abs());
            }
        }
    }
    Ok(vec![concurrence, rdm, partition, two_site, spectrum])
}

fn eta_check(max_sites: usize) -> Result<CheckResult> {
    let mut check = CheckResult::new("eta-dicke", 1e-12);
    for sites in 2..=max_sites {
        for pairs in 0..=sites {
            let state = EtaNumberState::new(sites, pairs)?;
            let oracle = eta_number_state(&state)?.two_site_rdm(1, 2)?;
            check.record(oracle_rdm_deviation(&eta_rdm(&state)?, &oracle)?);
            let c = eta_concurrence(&state)?.value();
            check.record((c - wootters_concurrence(&oracle).value()).abs());
        }
    }
    Ok(check)
}

fn bcs_checks() -> Result<Vec<CheckResult>> {
    let mut thermal = CheckResult::new("bcs-thermal-concurrence", ORACLE_TOLERANCE);
    let mut ground = CheckResult::new("bcs-ground-state", ORACLE_TOLERANCE);
    for &beta in &[0.5, 2.0, 8.0, 40.0] {
        for &epsilon in &[-0.4, -0.1, 0.0, 0.25] {
            for &delta in &[0.0, 0.1, 0.35, 0.5] {
                let point = BcsPoint::new(epsilon, delta, 0.7, beta)?;
                let oracle = wootters_concurrence(&pairing_gibbs_state(&point)?).value();
                thermal.record((oracle - bcs_thermal_concurrence(&point).value()).abs());
            }
        }
    }
    for &epsilon in &[-0.4, 0.0, 0.3] {
        for &delta in &[0.05, 0.2, 0.5] {
            let point = BcsPoint::new(epsilon, delta, -1.2, 1.0)?;
            let h = pairing_hamiltonian(&point);
            let gs = bcs_ground_state(&point);
            let mut psi = nalgebra::Vector4::<Complex64>::zeros();
            psi[0] = gs.empty;
            psi[3] = gs.paired;
            let energy = -point.quasiparticle_energy();
            ground.record((h * psi - psi * Complex64::new(energy, 0.0)).norm());
        }
    }
    Ok(vec![thermal, ground])
}
