//! η-pairing number states `|N⟩ = 𝒩^{−1/2} (η⁺)^N |0⟩` with
//! `η⁺ = Σ_j c†_{j↓} c†_{j↑}` and `𝒩 = L!·N!/(L−N)!`.
//!
//! An on-site pair is a hard-core boson, so the span of the pair
//! configurations is an `L`-qubit space and `|N⟩` is the Dicke state with `N`
//! excitations. Its pair correlator `⟨c†_{j↓}c†_{j↑}c_{l↑}c_{l↓}⟩` is
//! distance independent (off-diagonal long-range order), yet the pairwise
//! concurrence decays to zero as `L → ∞` at fixed filling.

use num_complex::Complex64;

use crate::error::{invalid, Result};
use crate::rdm::{Concurrence, TwoSiteRdm};

/// `L` sites carrying `N` η pairs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EtaNumberState {
    sites: usize,
    pairs: usize,
}

impl EtaNumberState {
    pub fn new(sites: usize, pairs: usize) -> Result<Self> {
        if sites == 0 {
            return Err(invalid("eta state needs at least one site"));
        }
        if pairs > sites {
            return Err(invalid(format!("{pairs} pairs do not fit on {sites} sites")));
        }
        Ok(EtaNumberState { sites, pairs })
    }

    pub fn sites(&self) -> usize {
        self.sites
    }

    pub fn pairs(&self) -> usize {
        self.pairs
    }

    /// `ln 𝒩 = ln L! + ln N! − ln (L−N)!`
    pub fn ln_normalization(&self) -> f64 {
        ln_factorial(self.sites) + ln_factorial(self.pairs) - ln_factorial(self.sites - self.pairs)
    }

    /// `𝒩 = L!·N!/(L−N)!`, exact products up to `L = 20` and via logarithms
    /// above. Overflows to `+∞` for very large `L`; use
    /// [`ln_normalization`](Self::ln_normalization) there.
    pub fn normalization(&self) -> f64 {
        if self.sites <= 20 {
            let falling: u64 = ((self.sites - self.pairs + 1)..=self.sites).map(|x| x as u64).product();
            let pairs_factorial: u64 = (1..=self.pairs).map(|x| x as u64).product();
            falling as f64 * pairs_factorial as f64
        } else {
            self.ln_normalization().exp()
        }
    }

    fn require_pair_of_sites(&self) -> Result<()> {
        if self.sites < 2 {
            return Err(invalid(format!("two-site quantities need L >= 2, got L = {}", self.sites)));
        }
        Ok(())
    }

    /// `L(L−1)` as a float.
    fn ordered_site_pairs(&self) -> f64 {
        let l = self.sites as f64;
        l * (l - 1.0)
    }
}

fn ln_factorial(n: usize) -> f64 {
    (2..=n).map(|k| (k as f64).ln()).sum()
}

/// `𝒪_{N,L} = N(L−N) / (L(L−1))`.
pub fn odlro_correlator(state: &EtaNumberState) -> Result<f64> {
    state.require_pair_of_sites()?;
    let (l, n) = (state.sites() as f64, state.pairs() as f64);
    Ok(n * (l - n) / state.ordered_site_pairs())
}

/// Two-site reduced density matrix in the qubit picture:
/// `u = (L−N)(L−N−1)/(L(L−1))`, `v = N(N−1)/(L(L−1))`, `z = w1 = w2 = 𝒪`.
pub fn eta_rdm(state: &EtaNumberState) -> Result<TwoSiteRdm> {
    let o = odlro_correlator(state)?;
    let (l, n) = (state.sites() as f64, state.pairs() as f64);
    let denominator = state.ordered_site_pairs();
    let u = (l - n) * (l - n - 1.0) / denominator;
    let v = n * (n - 1.0) / denominator;
    TwoSiteRdm::new(u, o, o, v, Complex64::new(o, 0.0))
}

/// `C = 2{𝒪 − [𝒪·(N−1)(L−N−1)/(L(L−1))]^{1/2}}`.
pub fn eta_concurrence(state: &EtaNumberState) -> Result<Concurrence> {
    let o = odlro_correlator(state)?;
    let (l, n) = (state.sites() as f64, state.pairs() as f64);
    // (N−1)(L−N−1) is negative only for N = 0 or N = L, where 𝒪 = 0
    let inner = (o * (n - 1.0) * (l - n - 1.0) / state.ordered_site_pairs()).max(0.0);
    Concurrence::new(2.0 * (o - inner.sqrt()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rdm::concurrence_from_rdm;

    fn state(l: usize, n: usize) -> EtaNumberState {
        EtaNumberState::new(l, n).unwrap()
    }

    #[test]
    fn validation() {
        assert!(EtaNumberState::new(0, 0).is_err());
        assert!(EtaNumberState::new(3, 4).is_err());
        assert!(odlro_correlator(&state(1, 1)).is_err());
        assert!(eta_concurrence(&state(1, 0)).is_err());
    }

    #[test]
    fn normalization_values() {
        assert_eq!(state(4, 2).normalization(), 24.0);
        assert_eq!(state(5, 0).normalization(), 1.0);
        assert_eq!(state(3, 3).normalization(), 36.0);
        let exact = state(20, 7).normalization();
        assert!((exact.ln() - state(20, 7).ln_normalization()).abs() < 1e-12);
        let big = state(30, 4);
        let expect = (27..=30).map(|x| x as f64).product::<f64>() * 24.0;
        assert!((big.normalization() / expect - 1.0).abs() < 1e-12);
    }

    #[test]
    fn odlro_values() {
        assert_eq!(odlro_correlator(&state(6, 0)).unwrap(), 0.0);
        assert_eq!(odlro_correlator(&state(6, 6)).unwrap(), 0.0);
        assert!((odlro_correlator(&state(4, 2)).unwrap() - 1.0 / 3.0).abs() < 1e-15);
        for &l in &[100usize, 1000, 10_000] {
            for &n in &[0.25, 0.5, 0.8] {
                let pairs = (n * l as f64).floor() as usize;
                let f = pairs as f64 / l as f64;
                let o = odlro_correlator(&state(l, pairs)).unwrap();
                assert!((o - f * (1.0 - f)).abs() < 1.0 / l as f64);
            }
        }
    }

    #[test]
    fn rdm_values() {
        let rdm = eta_rdm(&state(4, 2)).unwrap();
        assert!((rdm.u() - 1.0 / 6.0).abs() < 1e-15);
        assert!((rdm.v() - 1.0 / 6.0).abs() < 1e-15);
        assert!((rdm.z().re - 1.0 / 3.0).abs() < 1e-15);
        let vacuum = eta_rdm(&state(5, 0)).unwrap();
        assert_eq!((vacuum.u(), vacuum.w1(), vacuum.v()), (1.0, 0.0, 0.0));
        assert_eq!(vacuum.z().norm(), 0.0);
    }

    #[test]
    fn concurrence_values() {
        for l in 2..=40 {
            let c = eta_concurrence(&state(l, 1)).unwrap().value();
            assert!((c - 2.0 / l as f64).abs() < 1e-15, "L={l}");
        }
        assert!((eta_concurrence(&state(4, 2)).unwrap().value() - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn closed_form_equals_rdm_route() {
        for l in 2..=30 {
            for n in 0..=l {
                let s = state(l, n);
                let a = eta_concurrence(&s).unwrap().value();
                let b = concurrence_from_rdm(&eta_rdm(&s).unwrap()).value();
                assert!((a - b).abs() < 1e-14, "L={l} N={n}");
                let mirrored = eta_concurrence(&state(l, l - n)).unwrap().value();
                assert!((a - mirrored).abs() < 1e-14, "L={l} N={n}");
            }
        }
    }

    #[test]
    fn thermodynamic_decay() {
        let mut previous = f64::INFINITY;
        for &l in &[10usize, 100, 1000, 10_000] {
            let c = eta_concurrence(&state(l, l / 2)).unwrap().value();
            assert!(c < previous);
            assert!(c * l as f64 <= 2.0, "L={l}: C·L = {}", c * l as f64);
            previous = c;
        }
        assert!(previous < 1e-3);
        let c = eta_concurrence(&state(10_000, 2_500)).unwrap().value();
        assert!(c < 1e-3);
    }
}
