//! Spinless fermions hopping on a ring of `L` sites,
//! `H = −t Σ_l (c_l†c_{l+1} + h.c.) − μ N̂`.
//!
//! The lattice Fourier transform `c_l = L^{−1/2} Σ_k ω^{lk} c̃_k`,
//! `ω = e^{i2π/L}`, `k = 1..L`, diagonalizes `H` with mode energies
//! `ε_k = −2t·cos(2πk/L)`. Every expectation value needed for the
//! nearest-neighbour reduced density matrix then follows from the mode
//! occupations alone:
//!
//! - `⟨c₁†c₂⟩ = L^{−1} Σ_k ω^k ⟨n_k⟩`
//! - `⟨n̂₁n̂₂⟩ = n² − |⟨c₁†c₂⟩|²` with `n = ⟨N̂⟩/L`
//!
//! Momentum eigenstates have occupations 0 or 1, Gibbs states have
//! Fermi–Dirac occupations.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{invalid, Error, Result};
use crate::rdm::{concurrence_from_rdm, Concurrence, TwoSiteRdm};
use crate::roots::bisect;

/// Concurrence values at or below this count as zero in threshold searches.
pub const CONCURRENCE_ZERO: f64 = 1e-13;

/// Default resolution in temperature for [`threshold_temperature`].
pub const THRESHOLD_RESOLUTION: f64 = 1e-6;

/// Parameters of the ring Hamiltonian. `beta` may be `+∞` (ground state).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    sites: usize,
    hopping: f64,
    mu: f64,
    beta: f64,
}

impl ModelParams {
    pub fn new(sites: usize, hopping: f64, mu: f64, beta: f64) -> Result<Self> {
        if sites < 2 {
            return Err(invalid(format!("lattice needs L >= 2 sites, got {sites}")));
        }
        if !hopping.is_finite() {
            return Err(invalid(format!("hopping t = {hopping} is not finite")));
        }
        if mu.is_nan() {
            return Err(invalid("chemical potential is NaN"));
        }
        if beta.is_nan() || beta <= 0.0 {
            return Err(invalid(format!("inverse temperature beta = {beta} must be > 0")));
        }
        Ok(ModelParams { sites, hopping, mu, beta })
    }

    /// Parameters at temperature `temperature` (`T = 0` maps to `β = ∞`).
    pub fn at_temperature(sites: usize, hopping: f64, mu: f64, temperature: f64) -> Result<Self> {
        if temperature.is_nan() || temperature < 0.0 {
            return Err(invalid(format!("temperature T = {temperature} must be >= 0")));
        }
        Self::new(sites, hopping, mu, 1.0 / temperature)
    }

    pub fn sites(&self) -> usize {
        self.sites
    }

    pub fn hopping(&self) -> f64 {
        self.hopping
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn temperature(&self) -> f64 {
        1.0 / self.beta
    }

    pub fn with_mu(self, mu: f64) -> Result<Self> {
        Self::new(self.sites, self.hopping, mu, self.beta)
    }

    pub fn with_beta(self, beta: f64) -> Result<Self> {
        Self::new(self.sites, self.hopping, self.mu, beta)
    }

    pub fn spectrum(&self) -> ModeSpectrum {
        ModeSpectrum::new(self.sites, self.hopping)
    }

    fn check_mode(&self, k: usize) -> Result<()> {
        if k == 0 || k > self.sites {
            return Err(invalid(format!("mode index {k} outside 1..={}", self.sites)));
        }
        Ok(())
    }
}

/// Single-particle energies `ε_k = −2t·cos(2πk/L)` for `k = 1..L`.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeSpectrum {
    energies: Vec<f64>,
}

impl ModeSpectrum {
    pub fn new(sites: usize, hopping: f64) -> Self {
        let energies = (1..=sites).map(|k| -2.0 * hopping * root_of_unity(k, sites).re).collect();
        ModeSpectrum { energies }
    }

    /// `ε_k`, 1-based.
    pub fn energy(&self, k: usize) -> f64 {
        self.energies[k - 1]
    }

    pub fn energies(&self) -> &[f64] {
        &self.energies
    }

    pub fn sites(&self) -> usize {
        self.energies.len()
    }
}

/// `ω^k = e^{i2πk/L}`, evaluated on the reduced angle so that
/// `ω^k` and `ω^{L−k}` are exact conjugates.
pub fn root_of_unity(k: usize, sites: usize) -> Complex64 {
    let m = k % sites;
    let (reduced, sign) = if 2 * m <= sites { (m, 1.0) } else { (sites - m, -1.0) };
    let angle = 2.0 * PI * reduced as f64 / sites as f64;
    Complex64::new(angle.cos(), sign * angle.sin())
}

/// Occupied momentum modes of an eigenstate `|k_N⟩ = c̃†_{k_1}⋯c̃†_{k_N}|0⟩`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EigenstateSpec {
    sites: usize,
    modes: Vec<usize>,
}

impl EigenstateSpec {
    /// Modes are 1-based and may be given in any order; repeats are rejected.
    pub fn new(sites: usize, modes: &[usize]) -> Result<Self> {
        let mut sorted = modes.to_vec();
        sorted.sort_unstable();
        if let Some(&k) = sorted.iter().find(|&&k| k == 0 || k > sites) {
            return Err(invalid(format!("mode index {k} outside 1..={sites}")));
        }
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(invalid(format!("mode {} occupied twice", w[0])));
        }
        Ok(EigenstateSpec { sites, modes: sorted })
    }

    /// The `particles` lowest modes; degenerate levels are filled in order of
    /// increasing `k`.
    pub fn ground_state(params: &ModelParams, particles: usize) -> Result<Self> {
        let sites = params.sites();
        if particles > sites {
            return Err(invalid(format!("{particles} particles do not fit on {sites} sites")));
        }
        let spectrum = params.spectrum();
        let mut order: Vec<usize> = (1..=sites).collect();
        order.sort_by(|&a, &b| {
            spectrum.energy(a).total_cmp(&spectrum.energy(b)).then(a.cmp(&b))
        });
        Self::new(sites, &order[..particles])
    }

    pub fn modes(&self) -> &[usize] {
        &self.modes
    }

    pub fn particles(&self) -> usize {
        self.modes.len()
    }

    pub fn sites(&self) -> usize {
        self.sites
    }

    pub fn filling(&self) -> f64 {
        self.modes.len() as f64 / self.sites as f64
    }
}

/// Nearest-neighbour correlators of a translation-invariant state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrelationSet {
    /// `⟨c₁†c₂⟩`
    pub s: Complex64,
    /// `⟨N̂⟩/L`
    pub n_mean: f64,
    /// `⟨n̂₁n̂₂⟩`
    pub nn: f64,
    /// `1 − n_mean`, accumulated from hole occupations.
    pub hole_mean: f64,
    /// `⟨(1−n̂₁)(1−n̂₂)⟩`, accumulated from hole occupations.
    pub empty_pair: f64,
}

impl CorrelationSet {
    /// Builds the set from per-mode particle and hole occupations. `|S|` is
    /// the same whether summed over particles or holes (`Σ_k ω^k = 0`).
    fn from_occupations(occupations: impl Iterator<Item = (f64, f64)>, sites: usize) -> Self {
        let l = sites as f64;
        let (particles, holes): (Vec<f64>, Vec<f64>) = occupations.take(sites).unzip();
        let mut s = Complex64::new(0.0, 0.0);
        let mut s_hole = Complex64::new(0.0, 0.0);
        for (k, (p, h)) in (1..=sites).zip(particles.iter().zip(&holes)) {
            let w = root_of_unity(k, sites);
            s += w * p;
            s_hole += w * h;
        }
        let s = s / l;
        let n_mean = particles.iter().sum::<f64>() / l;
        let hole_mean = holes.iter().sum::<f64>() / l;
        let (nn, empty_pair) = if sites <= PAIR_SUM_MAX_SITES {
            (pair_sum(&particles) / (l * l), pair_sum(&holes) / (l * l))
        } else {
            let s_abs = s.norm();
            let s_hole_abs = s_hole.norm() / l;
            ((n_mean - s_abs) * (n_mean + s_abs), (hole_mean - s_hole_abs) * (hole_mean + s_hole_abs))
        };
        CorrelationSet { s, n_mean, nn, hole_mean, empty_pair }
    }

    /// Reduced density matrix of sites 1 and 2 with `u = 1 − 2n + ⟨n̂₁n̂₂⟩`,
    /// `v = ⟨n̂₁n̂₂⟩`, `z = ⟨c₁†c₂⟩`.
    pub fn rdm(&self) -> Result<TwoSiteRdm> {
        TwoSiteRdm::symmetric(self.empty_pair, self.nn, self.s)
    }
}

pub fn eigenstate_correlator(params: &ModelParams, state: &EigenstateSpec) -> Result<CorrelationSet> {
    if state.sites() != params.sites() {
        return Err(invalid(format!(
            "eigenstate defined on {} sites, model has {}",
            state.sites(),
            params.sites()
        )));
    }
    for &k in state.modes() {
        params.check_mode(k)?;
    }
    let mut occupied = vec![false; params.sites()];
    for &k in state.modes() {
        occupied[k - 1] = true;
    }
    let occupations = occupied.into_iter().map(|o| if o { (1.0, 0.0) } else { (0.0, 1.0) });
    Ok(CorrelationSet::from_occupations(occupations, params.sites()))
}

pub fn eigenstate_rdm(params: &ModelParams, state: &EigenstateSpec) -> Result<TwoSiteRdm> {
    eigenstate_correlator(params, state)?.rdm()
}

/// Nearest-neighbour concurrence of `|k_N⟩`; depends only on the filling and
/// `S = L^{−1} Σ_l ω^{k_l}`.
pub fn eigenstate_concurrence(params: &ModelParams, state: &EigenstateSpec) -> Result<Concurrence> {
    Ok(concurrence_from_rdm(&eigenstate_rdm(params, state)?))
}

/// Energy `Σ_l (ε_{k_l} − μ)` of a momentum eigenstate.
pub fn eigenstate_energy(params: &ModelParams, state: &EigenstateSpec) -> f64 {
    let spectrum = params.spectrum();
    state.modes().iter().map(|&k| spectrum.energy(k) - params.mu()).sum()
}

/// Up to this many sites, `n² − |S|²` is summed pairwise instead of
/// factorized.
const PAIR_SUM_MAX_SITES: usize = 1024;

/// `(Σ_k f_k)² − |Σ_k ω^k f_k|² = 4 Σ_{k<k'} f_k f_{k'} sin²(π(k'−k)/L)`,
/// a sum of non-negative terms.
fn pair_sum(f: &[f64]) -> f64 {
    let sites = f.len();
    let sin2: Vec<f64> = (0..sites).map(|d| (PI * d as f64 / sites as f64).sin().powi(2)).collect();
    let mut total = 0.0;
    for (k, &fk) in f.iter().enumerate() {
        if fk == 0.0 {
            continue;
        }
        let inner: f64 = f[k + 1..].iter().zip(&sin2[1..]).map(|(fq, s2)| fq * s2).sum();
        total += fk * inner;
    }
    4.0 * total
}

fn check_filling(n: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&n) {
        return Err(invalid(format!("filling n = {n} outside [0, 1]")));
    }
    Ok(())
}

/// Ground-state `⟨c₁†c₂⟩ = sin(πn)/π` on the infinite lattice.
pub fn ground_state_correlator_infinite(n: f64) -> Result<f64> {
    check_filling(n)?;
    Ok((PI * n).sin() / PI)
}

/// `C(n) = 2{S − √[((n−1)² − S²)(n² − S²)]}` with `S = sin(πn)/π`. The bracket
/// is non-negative on all of `[0, 1]`.
pub fn ground_state_concurrence_infinite(n: f64) -> Result<Concurrence> {
    let s = ground_state_correlator_infinite(n)?;
    let u = ((1.0 - n) - s) * ((1.0 - n) + s);
    let v = (n - s) * (n + s);
    let c = 2.0 * (s - (u.max(0.0) * v.max(0.0)).sqrt());
    Concurrence::new(c)
}

fn fermi_function(x: f64) -> f64 {
    if x > 0.0 {
        let e = (-x).exp();
        e / (1.0 + e)
    } else {
        1.0 / (x.exp() + 1.0)
    }
}

/// Occupation and hole probability `(⟨n_k⟩, 1 − ⟨n_k⟩)` of a mode at energy
/// `energy`. At `β = ∞` the step function takes the value 1/2 on the Fermi
/// level.
fn mode_occupation(params: &ModelParams, energy: f64) -> (f64, f64) {
    let detuning = energy - params.mu();
    if params.beta().is_infinite() {
        let scale = 1.0 + params.hopping().abs() + if params.mu().is_finite() { params.mu().abs() } else { 0.0 };
        return if detuning.abs() <= 1e-12 * scale {
            (0.5, 0.5)
        } else if detuning < 0.0 {
            (1.0, 0.0)
        } else {
            (0.0, 1.0)
        };
    }
    let x = params.beta() * detuning;
    (fermi_function(x), fermi_function(-x))
}

/// Fermi–Dirac occupation `1/(e^{β(ε_k−μ)} + 1)` of mode `k` (1-based).
pub fn fermi_dirac(params: &ModelParams, k: usize) -> Result<f64> {
    params.check_mode(k)?;
    Ok(mode_occupation(params, params.spectrum().energy(k)).0)
}

/// Correlators of the grand-canonical Gibbs state.
pub fn thermal_correlators(params: &ModelParams) -> CorrelationSet {
    let spectrum = params.spectrum();
    let occupations = spectrum.energies().iter().map(|&e| mode_occupation(params, e));
    CorrelationSet::from_occupations(occupations, params.sites())
}

pub fn thermal_rdm(params: &ModelParams) -> Result<TwoSiteRdm> {
    thermal_correlators(params).rdm()
}

pub fn thermal_concurrence(params: &ModelParams) -> Result<Concurrence> {
    Ok(concurrence_from_rdm(&thermal_rdm(params)?))
}

fn require_two_sites(params: &ModelParams) -> Result<()> {
    if params.sites() != 2 {
        return Err(invalid(format!(
            "two-site closed form needs L = 2, got L = {}",
            params.sites()
        )));
    }
    Ok(())
}

/// `ln cosh(x)` without overflow.
fn ln_cosh(x: f64) -> f64 {
    let a = x.abs();
    a + (-2.0 * a).exp().ln_1p() - std::f64::consts::LN_2
}

/// `C = max{0, sinh(2β|t|) − 1} / (cosh(βμ) + cosh(2βt))` for `L = 2`.
pub fn thermal_concurrence_two_site(params: &ModelParams) -> Result<Concurrence> {
    require_two_sites(params)?;
    let (b, t, mu) = (params.beta(), params.hopping(), params.mu());
    if b.is_infinite() {
        // ground state: one delocalized particle iff |μ| < 2|t|
        let c = if t == 0.0 {
            0.0
        } else {
            match mu.abs().total_cmp(&(2.0 * t.abs())) {
                std::cmp::Ordering::Less => 1.0,
                std::cmp::Ordering::Equal => 0.5,
                std::cmp::Ordering::Greater => 0.0,
            }
        };
        return Concurrence::new(c);
    }
    if mu.is_infinite() {
        return Ok(Concurrence::ZERO);
    }
    let a = 2.0 * b * t.abs();
    let m = b * mu;
    // numerator and denominator scaled by e^{-s}
    let s = a.max(m.abs());
    let scaled_cosh = |x: f64| 0.5 * ((x - s).exp() + (-x - s).exp());
    let numerator = 0.5 * ((a - s).exp() - (-a - s).exp()) - (-s).exp();
    Concurrence::new(numerator.max(0.0) / (scaled_cosh(m) + scaled_cosh(a)))
}

/// `⟨N̂⟩ = (e^{βμ} + cosh 2βt)/(cosh βμ + cosh 2βt)` for `L = 2`.
pub fn mean_number_two_site(params: &ModelParams) -> Result<f64> {
    require_two_sites(params)?;
    let b = params.beta();
    let a = 2.0 * b * params.hopping();
    let m = b * params.mu();
    if a.is_nan() || m.is_nan() || a.is_infinite() || m.is_infinite() {
        // limits follow from the Fermi sums
        let spectrum = params.spectrum();
        return Ok(spectrum.energies().iter().map(|&e| mode_occupation(params, e).0).sum());
    }
    let s = a.abs().max(m.abs());
    let scaled_cosh = |x: f64| 0.5 * ((x - s).exp() + (-x - s).exp());
    Ok(((m - s).exp() + scaled_cosh(a)) / (scaled_cosh(m) + scaled_cosh(a)))
}

/// Inverts [`mean_number_two_site`] for `μ` given `⟨N̂⟩ ∈ (0, 2)`:
///
/// `μ = β^{−1} ln{ [cosh(2βt)(N−1) + √(cosh²(2βt)(N−1)² + 2N − N²)] / (2 − N) }`
///
/// evaluated through `asinh`, which neither overflows in `cosh` nor cancels
/// for `N < 1`.
pub fn mu_from_mean_number(mean_number: f64, hopping: f64, beta: f64) -> Result<f64> {
    if !(mean_number > 0.0 && mean_number < 2.0) {
        return Err(invalid(format!("mean number {mean_number} outside (0, 2)")));
    }
    if !(beta > 0.0 && beta.is_finite()) {
        return Err(invalid(format!("inverse temperature beta = {beta} must be finite and > 0")));
    }
    if !hopping.is_finite() {
        return Err(invalid(format!("hopping t = {hopping} is not finite")));
    }
    let a = mean_number - 1.0;
    let b = mean_number * (2.0 - mean_number);
    // ln(c·a + √(c²a² + b)) = ½ ln b + asinh(c·a/√b), with c = cosh 2βt
    let ln_ratio = a.abs().ln() + ln_cosh(2.0 * beta * hopping) - 0.5 * b.ln();
    let asinh = if ln_ratio > 300.0 {
        std::f64::consts::LN_2 + ln_ratio
    } else {
        ln_ratio.exp().asinh()
    };
    let ln_x = 0.5 * b.ln() + asinh.copysign(a);
    Ok((ln_x - (2.0 - mean_number).ln()) / beta)
}

/// Which state the energy-density relation is evaluated on.
#[derive(Debug, Clone, Copy)]
pub enum EnergySource<'a> {
    Eigenstate(&'a EigenstateSpec),
    Thermal,
}

/// At `μ = 0`, `⟨c₁†c₂⟩` is real-part-determined by the energy density:
/// `Re⟨c₁†c₂⟩ = −⟨H⟩/(2tL)`. Returns `(−⟨H⟩/(2tL), Re S)`.
pub fn energy_density_relation_check(params: &ModelParams, source: EnergySource<'_>) -> Result<(f64, f64)> {
    if params.mu() != 0.0 {
        return Err(invalid(format!("energy relation needs mu = 0, got {}", params.mu())));
    }
    if params.hopping() == 0.0 {
        return Err(invalid("energy relation is undefined for t = 0"));
    }
    let (energy, s) = match source {
        EnergySource::Eigenstate(state) => {
            let corr = eigenstate_correlator(params, state)?;
            (eigenstate_energy(params, state), corr.s)
        }
        EnergySource::Thermal => {
            let spectrum = params.spectrum();
            let energy = spectrum
                .energies()
                .iter()
                .map(|&e| e * mode_occupation(params, e).0)
                .sum();
            (energy, thermal_correlators(params).s)
        }
    };
    let l = params.sites() as f64;
    Ok((-energy / (2.0 * params.hopping() * l), s.re))
}

/// Lowest temperature in `[t_lo, t_hi]` above which the thermal concurrence
/// vanishes.
///
/// The interval is scanned upward on a uniform grid for the first point with
/// `C ≤ CONCURRENCE_ZERO`, and that grid cell is bisected to `resolution`.
/// `C(t_lo)` must be positive and `C(t_hi)` zero.
pub fn threshold_temperature(params: &ModelParams, t_lo: f64, t_hi: f64, resolution: f64) -> Result<f64> {
    if !(t_lo > 0.0 && t_hi > t_lo && t_hi.is_finite()) {
        return Err(invalid(format!("temperature bracket [{t_lo}, {t_hi}] is not valid")));
    }
    if resolution.is_nan() || resolution <= 0.0 {
        return Err(invalid(format!("resolution {resolution} must be > 0")));
    }
    let concurrence_at = |temperature: f64| -> Result<f64> {
        Ok(thermal_concurrence(&params.with_beta(1.0 / temperature)?)?.value())
    };
    if concurrence_at(t_lo)? <= CONCURRENCE_ZERO {
        return Err(invalid(format!("no entanglement at the lower bracket T = {t_lo}")));
    }
    const SCAN_POINTS: usize = 1000;
    let step = (t_hi - t_lo) / SCAN_POINTS as f64;
    let mut previous = t_lo;
    for i in 1..=SCAN_POINTS {
        let temperature = if i == SCAN_POINTS { t_hi } else { t_lo + step * i as f64 };
        if concurrence_at(temperature)? <= CONCURRENCE_ZERO {
            let mut failure = None;
            let root = bisect(
                |x| match concurrence_at(x) {
                    Ok(c) if c > CONCURRENCE_ZERO => 1.0,
                    Ok(_) => -1.0,
                    Err(e) => {
                        failure = Some(e);
                        f64::NAN
                    }
                },
                previous,
                temperature,
                resolution,
            );
            if let Some(e) = failure {
                return Err(e);
            }
            return root;
        }
        previous = temperature;
    }
    Err(Error::InvalidInput(format!(
        "concurrence does not vanish below T = {t_hi}"
    )))
}

/// `2t / ln(1 + √2)`: the two-site threshold, where `sinh(2βt) = 1`.
pub fn two_site_threshold_temperature(hopping: f64) -> f64 {
    2.0 * hopping.abs() / (1.0 + 2f64.sqrt()).ln()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(l: usize, t: f64, mu: f64, beta: f64) -> ModelParams {
        ModelParams::new(l, t, mu, beta).unwrap()
    }

    #[test]
    fn rejects_bad_params() {
        assert!(ModelParams::new(1, 1.0, 0.0, 1.0).is_err());
        assert!(ModelParams::new(4, 1.0, 0.0, 0.0).is_err());
        assert!(ModelParams::new(4, 1.0, 0.0, -1.0).is_err());
        assert!(ModelParams::new(4, f64::NAN, 0.0, 1.0).is_err());
        assert!(ModelParams::new(4, 1.0, 0.0, f64::INFINITY).is_ok());
    }

    #[test]
    fn spectrum_sums_to_zero() {
        for l in 2..40 {
            let s = ModeSpectrum::new(l, 1.3);
            let total: f64 = s.energies().iter().sum();
            assert!(total.abs() < 1e-10 * l as f64 * 1.3, "L={l}: {total}");
        }
    }

    #[test]
    fn eigenstate_spec_validation() {
        assert!(EigenstateSpec::new(4, &[0]).is_err());
        assert!(EigenstateSpec::new(4, &[5]).is_err());
        assert!(EigenstateSpec::new(4, &[2, 2]).is_err());
        assert_eq!(EigenstateSpec::new(4, &[3, 1]).unwrap().modes(), &[1, 3]);
    }

    #[test]
    fn eigenstate_correlator_two_sites() {
        let p = params(2, 1.0, 0.0, 1.0);
        let corr = eigenstate_correlator(&p, &EigenstateSpec::new(2, &[1]).unwrap()).unwrap();
        assert!((corr.s - Complex64::new(-0.5, 0.0)).norm() < 1e-15);
        assert_eq!(corr.n_mean, 0.5);
        assert!(corr.nn.abs() < 1e-15);
    }

    #[test]
    fn single_particle_correlator_magnitude() {
        for l in 2..20 {
            let p = params(l, 1.0, 0.0, 1.0);
            for k in 1..=l {
                let corr = eigenstate_correlator(&p, &EigenstateSpec::new(l, &[k]).unwrap()).unwrap();
                assert!((corr.s.norm() - 1.0 / l as f64).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn half_filled_six_site_state() {
        let p = params(6, 1.0, 0.0, 1.0);
        let state = EigenstateSpec::new(6, &[1, 2, 3]).unwrap();
        let corr = eigenstate_correlator(&p, &state).unwrap();
        // ω + ω² + ω³ = i√3 for L = 6
        assert!((corr.s.norm() - 1.0 / 3.0).abs() < 1e-15);
        assert!((corr.nn - (0.25 - 1.0 / 9.0)).abs() < 1e-15);
        let c = eigenstate_concurrence(&p, &state).unwrap().value();
        assert!((c - 7.0 / 18.0).abs() < 1e-14);
    }

    #[test]
    fn w_state_and_full_filling() {
        for l in 2..=14 {
            let p = params(l, 1.0, 0.0, 1.0);
            let c = eigenstate_concurrence(&p, &EigenstateSpec::new(l, &[1]).unwrap()).unwrap();
            assert!((c.value() - 2.0 / l as f64).abs() < 1e-15);
            let all: Vec<usize> = (1..=l).collect();
            let full = eigenstate_concurrence(&p, &EigenstateSpec::new(l, &all).unwrap()).unwrap();
            assert!(full.value() < 1e-15);
        }
    }

    #[test]
    fn eigenstate_mode_out_of_range() {
        let p = params(4, 1.0, 0.0, 1.0);
        let state = EigenstateSpec::new(6, &[5]).unwrap();
        assert!(eigenstate_correlator(&p, &state).is_err());
    }

    #[test]
    fn half_filling_reduction() {
        // C = 2·max{0, |S| + |S|² − 1/4} whenever n = 1/2
        for l in [2usize, 4, 6, 8, 10] {
            let p = params(l, 1.0, 0.0, 1.0);
            let mut mask = 0u32;
            while mask < 1 << l {
                if mask.count_ones() as usize == l / 2 {
                    let modes: Vec<usize> = (0..l).filter(|b| mask >> b & 1 == 1).map(|b| b + 1).collect();
                    let state = EigenstateSpec::new(l, &modes).unwrap();
                    let s = eigenstate_correlator(&p, &state).unwrap().s.norm();
                    let expect = 2.0 * (s + s * s - 0.25).max(0.0);
                    let c = eigenstate_concurrence(&p, &state).unwrap().value();
                    assert!((c - expect).abs() < 1e-14, "L={l} modes={modes:?}");
                }
                mask += 1;
            }
        }
    }

    #[test]
    fn ground_state_filling_and_ties() {
        let p = params(4, 1.0, 0.0, 1.0);
        // ε = (0, 2, 0, -2) for k = 1..4
        assert_eq!(EigenstateSpec::ground_state(&p, 1).unwrap().modes(), &[4]);
        assert_eq!(EigenstateSpec::ground_state(&p, 2).unwrap().modes(), &[1, 4]);
        assert_eq!(EigenstateSpec::ground_state(&p, 3).unwrap().modes(), &[1, 3, 4]);
        assert!(EigenstateSpec::ground_state(&p, 5).is_err());
    }

    #[test]
    fn infinite_lattice_values() {
        assert_eq!(ground_state_correlator_infinite(0.0).unwrap(), 0.0);
        assert!((ground_state_correlator_infinite(0.5).unwrap() - 1.0 / PI).abs() < 1e-16);
        assert!((ground_state_correlator_infinite(0.25).unwrap() - 0.2250790790392765).abs() < 1e-15);
        let half = ground_state_concurrence_infinite(0.5).unwrap().value();
        assert!((half - (2.0 / PI + 2.0 / (PI * PI) - 0.5)).abs() < 1e-15);
        assert!((half - 0.339262).abs() < 1e-6);
        assert_eq!(ground_state_concurrence_infinite(0.0).unwrap().value(), 0.0);
        assert!(ground_state_concurrence_infinite(1.0).unwrap().value().abs() < 1e-15);
        assert!(ground_state_concurrence_infinite(1.5).is_err());
    }

    #[test]
    fn infinite_lattice_symmetry_and_maximum() {
        let mut best = (0.0, -1.0);
        for i in 0..=1000 {
            let n = i as f64 / 1000.0;
            let c = ground_state_concurrence_infinite(n).unwrap().value();
            let mirrored = ground_state_concurrence_infinite(1.0 - n).unwrap().value();
            assert!((c - mirrored).abs() < 1e-12, "n={n}");
            if c > best.1 {
                best = (n, c);
            }
        }
        assert_eq!(best.0, 0.5);
    }

    #[test]
    fn finite_lattice_ground_state_approaches_infinite_limit() {
        // half and quarter filling on growing rings with N odd
        for (n, tol) in [(0.5, 2e-3), (0.25, 2e-3)] {
            let l = 2001usize;
            let particles = ((n * l as f64).round() as usize) | 1;
            let p = params(l, 1.0, 0.0, 1.0);
            let gs = EigenstateSpec::ground_state(&p, particles).unwrap();
            let s = eigenstate_correlator(&p, &gs).unwrap().s;
            let limit = ground_state_correlator_infinite(particles as f64 / l as f64).unwrap();
            assert!((s.re - limit).abs() < tol, "n={n}: {} vs {limit}", s.re);
            assert!(s.im.abs() < 1e-12);
        }
    }

    #[test]
    fn fermi_dirac_values() {
        let p = params(2, 1.0, 0.0, 1.0);
        // ε_2 = −2
        let f = fermi_dirac(&p, 2).unwrap();
        assert!((f - 1.0 / ((-2f64).exp() + 1.0)).abs() < 1e-15);
        assert!((f - 0.8807970779778823).abs() < 1e-15);
        let p4 = params(4, 1.0, 0.0, 1.0);
        // ε_1 = 0 = μ
        assert!((fermi_dirac(&p4, 1).unwrap() - 0.5).abs() < 1e-15);
        let cold = params(4, 1.0, 0.0, f64::INFINITY);
        assert_eq!(fermi_dirac(&cold, 4).unwrap(), 1.0);
        assert_eq!(fermi_dirac(&cold, 2).unwrap(), 0.0);
        assert_eq!(fermi_dirac(&cold, 1).unwrap(), 0.5);
        assert!(fermi_dirac(&p4, 0).is_err());
        assert!(fermi_dirac(&p4, 5).is_err());
    }

    #[test]
    fn thermal_limits() {
        let hot = thermal_correlators(&params(6, 1.0, 0.7, 1e-12));
        assert!(hot.s.norm() < 1e-11);
        assert!((hot.n_mean - 0.5).abs() < 1e-11);
        assert!(thermal_concurrence(&params(6, 1.0, 0.7, 1e-12)).unwrap().value() == 0.0);
        let empty = thermal_correlators(&params(6, 1.0, f64::NEG_INFINITY, 1.0));
        assert_eq!(empty.s.norm(), 0.0);
        assert_eq!(empty.n_mean, 0.0);
    }

    #[test]
    fn two_site_thermal_value() {
        let p = params(2, 1.0, 0.0, 1.0);
        let expect = (2f64.sinh() - 1.0) / (1.0 + 2f64.cosh());
        assert!((expect - 0.551_606_985_149).abs() < 1e-11);
        let closed = thermal_concurrence_two_site(&p).unwrap().value();
        let general = thermal_concurrence(&p).unwrap().value();
        assert!((closed - expect).abs() < 1e-15);
        assert!((general - expect).abs() < 1e-14);
        assert!(thermal_concurrence_two_site(&params(3, 1.0, 0.0, 1.0)).is_err());
    }

    #[test]
    fn two_site_formula_matches_general_on_grid() {
        for &t in &[1.0, -0.7, 2.0] {
            for i in 0..=20 {
                let beta = 0.1 + 0.4 * i as f64;
                for j in 0..=20 {
                    let mu = -4.0 + 0.4 * j as f64;
                    let p = params(2, t, mu, beta);
                    let a = thermal_concurrence_two_site(&p).unwrap().value();
                    let b = thermal_concurrence(&p).unwrap().value();
                    assert!((a - b).abs() < 1e-12, "t={t} beta={beta} mu={mu}: {a} vs {b}");
                }
            }
        }
    }

    #[test]
    fn two_site_extreme_parameters() {
        let p = params(2, 1.0, 1e4, 1.0);
        assert_eq!(thermal_concurrence_two_site(&p).unwrap().value(), 0.0);
        let p = params(2, 1.0, 0.0, 1e4);
        assert!((thermal_concurrence_two_site(&p).unwrap().value() - 1.0).abs() < 1e-12);
        let p = params(2, 1.0, 0.5, f64::INFINITY);
        assert_eq!(thermal_concurrence_two_site(&p).unwrap().value(), 1.0);
        let p = params(2, 1.0, f64::INFINITY, 1.0);
        assert_eq!(thermal_concurrence_two_site(&p).unwrap().value(), 0.0);
    }

    #[test]
    fn two_site_mean_number() {
        assert!((mean_number_two_site(&params(2, 1.0, 0.0, 1.0)).unwrap() - 1.0).abs() < 1e-15);
        assert!((mean_number_two_site(&params(2, 1.0, 200.0, 1.0)).unwrap() - 2.0).abs() < 1e-15);
        let n = mean_number_two_site(&params(2, 1.0, 1.0, 1.0)).unwrap();
        let e1 = 1f64.exp();
        let expect = (e1 + 2f64.cosh()) / (1f64.cosh() + 2f64.cosh());
        assert!((n - expect).abs() < 1e-15);
        assert!((n - 1.221_515_548_192).abs() < 1e-11);
        let mu = mu_from_mean_number(n, 1.0, 1.0).unwrap();
        assert!((mu - 1.0).abs() < 1e-12);
        assert!(mean_number_two_site(&params(4, 1.0, 1.0, 1.0)).is_err());
        assert!(mu_from_mean_number(2.0, 1.0, 1.0).is_err());
        assert!(mu_from_mean_number(0.0, 1.0, 1.0).is_err());
    }

    #[test]
    fn mean_number_round_trip() {
        for &beta in &[0.05, 0.3, 1.0, 5.0, 40.0, 300.0] {
            for i in 1..40 {
                let target = i as f64 / 20.0;
                let mu = mu_from_mean_number(target, 1.0, beta).unwrap();
                let back = mean_number_two_site(&params(2, 1.0, mu, beta)).unwrap();
                assert!((back - target).abs() < 1e-10, "beta={beta} N={target}: {back}");
            }
        }
    }

    #[test]
    fn mean_number_is_sum_of_occupations() {
        let p = params(2, 0.8, 0.3, 1.7);
        let direct: f64 = (1..=2).map(|k| fermi_dirac(&p, k).unwrap()).sum();
        assert!((mean_number_two_site(&p).unwrap() - direct).abs() < 1e-14);
    }

    #[test]
    fn thermal_particle_hole_symmetry() {
        for l in [2usize, 4, 6, 8, 14] {
            for &beta in &[0.3, 1.0, 4.0] {
                for &mu in &[0.1, 0.9, 2.5] {
                    let a = thermal_concurrence(&params(l, 1.0, mu, beta)).unwrap().value();
                    let b = thermal_concurrence(&params(l, 1.0, -mu, beta)).unwrap().value();
                    assert!((a - b).abs() < 1e-12, "L={l} beta={beta} mu={mu}");
                }
            }
        }
    }

    #[test]
    fn energy_relation() {
        let p = params(8, 1.0, 0.0, 1.0);
        let (a, b) = energy_density_relation_check(&p, EnergySource::Thermal).unwrap();
        assert!((a - b).abs() < 1e-10);
        let empty = EigenstateSpec::new(8, &[]).unwrap();
        let (a, b) = energy_density_relation_check(&p, EnergySource::Eigenstate(&empty)).unwrap();
        assert_eq!((a, b), (0.0, 0.0));
        let big = params(4001, 1.0, 0.0, 1.0);
        let gs = EigenstateSpec::ground_state(&big, 2001).unwrap();
        let (a, b) = energy_density_relation_check(&big, EnergySource::Eigenstate(&gs)).unwrap();
        assert!((a - b).abs() < 1e-10);
        assert!((a - 1.0 / PI).abs() < 1e-3);
        assert!(energy_density_relation_check(&params(8, 1.0, 0.5, 1.0), EnergySource::Thermal).is_err());
        assert!(energy_density_relation_check(&params(8, 0.0, 0.0, 1.0), EnergySource::Thermal).is_err());
    }

    #[test]
    fn two_site_threshold() {
        let expect = two_site_threshold_temperature(1.0);
        assert!((expect - 2.269185314).abs() < 1e-8);
        let p = params(2, 1.0, 0.4, 1.0);
        let found = threshold_temperature(&p, 0.5, 3.0, THRESHOLD_RESOLUTION).unwrap();
        assert!((found - expect).abs() < 1e-6, "{found}");
        // above the threshold the two-site concurrence is zero
        let above = p.with_beta(1.0 / (expect + 1e-3)).unwrap();
        assert_eq!(thermal_concurrence_two_site(&above).unwrap().value(), 0.0);
    }

    #[test]
    fn threshold_bracket_errors() {
        let p = params(2, 1.0, 0.0, 1.0);
        assert!(threshold_temperature(&p, 2.5, 3.0, 1e-6).is_err());
        assert!(threshold_temperature(&p, 0.5, 1.0, 1e-6).is_err());
        assert!(threshold_temperature(&p, 1.0, 0.5, 1e-6).is_err());
    }
}
