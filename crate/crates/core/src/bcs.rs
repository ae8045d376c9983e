//! Two-mode BCS-like pairing model
//! `H_k = ε_k (n_k + n_{−k} − 1) + Δ_k c_k†c_{−k}† + h.c.`
//!
//! On the pair `(k, −k)` the Hamiltonian only couples `|00⟩` and `|11⟩`, so
//! it is a spin-1/2 in a transverse field with gap `E_k = √(ε_k² + |Δ_k|²)`
//! and mixing angle `θ_k = atan2(|Δ_k|, ε_k)`. The order parameter obeys
//!
//! ```text
//! |Δ| = sinh(βE) sin θ / (2 [cosh(βE) + 1]) = tanh(βE/2) sin θ / 2
//! ```
//!
//! with no separate coupling constant, which puts `T_c = 1/4` at `ε = 0`.
//! The thermal concurrence of the pair is
//! `max{0, sinh(βE) sin θ − 1} / (cosh(βE) + 1)`.

use num_complex::Complex64;

use crate::error::{invalid, Error, Result};
use crate::rdm::Concurrence;
use crate::roots::bisect;

/// Lower end of the bracket searched for a nontrivial gap.
pub const GAP_BRACKET_LOW: f64 = 1e-9;
/// Upper end of the gap bracket; the gap never exceeds 1/2.
pub const GAP_BRACKET_HIGH: f64 = 1.0;
/// Bracket width at which gap bisection stops.
pub const GAP_TOLERANCE: f64 = 1e-15;
/// Bisection tolerance in temperature when inverting `Δ(T)`.
pub const TEMPERATURE_TOLERANCE: f64 = 1e-10;

/// One momentum pair at inverse temperature `beta` (`+∞` allowed).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BcsPoint {
    epsilon: f64,
    delta_abs: f64,
    phi: f64,
    beta: f64,
}

impl BcsPoint {
    pub fn new(epsilon: f64, delta_abs: f64, phi: f64, beta: f64) -> Result<Self> {
        if !epsilon.is_finite() {
            return Err(invalid(format!("epsilon = {epsilon} is not finite")));
        }
        if !(delta_abs >= 0.0 && delta_abs.is_finite()) {
            return Err(invalid(format!("|Delta| = {delta_abs} must be finite and >= 0")));
        }
        if !phi.is_finite() {
            return Err(invalid(format!("phase phi = {phi} is not finite")));
        }
        if beta.is_nan() || beta <= 0.0 {
            return Err(invalid(format!("inverse temperature beta = {beta} must be > 0")));
        }
        Ok(BcsPoint { epsilon, delta_abs, phi, beta })
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn delta_abs(&self) -> f64 {
        self.delta_abs
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// `Δ = |Δ| e^{iφ}`
    pub fn delta(&self) -> Complex64 {
        Complex64::from_polar(self.delta_abs, self.phi)
    }

    /// `E = √(ε² + |Δ|²)`
    pub fn quasiparticle_energy(&self) -> f64 {
        self.epsilon.hypot(self.delta_abs)
    }

    /// `θ ∈ [0, π]`, so that `sin θ ≥ 0` for either sign of `ε`.
    pub fn theta(&self) -> f64 {
        self.delta_abs.atan2(self.epsilon)
    }

    fn sin_theta(&self) -> f64 {
        let e = self.quasiparticle_energy();
        if e == 0.0 {
            0.0
        } else {
            self.delta_abs / e
        }
    }

    /// `βE`, with `∞·0` read as 0.
    fn beta_energy(&self) -> f64 {
        let e = self.quasiparticle_energy();
        if e == 0.0 {
            0.0
        } else {
            self.beta * e
        }
    }
}

/// Ground state of one pair on the basis `(|00⟩, |11⟩)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairState {
    pub empty: Complex64,
    pub paired: Complex64,
}

impl PairState {
    /// `2|a₀₀ a₁₁|`, the concurrence of `a₀₀|00⟩ + a₁₁|11⟩`.
    pub fn concurrence(&self) -> Concurrence {
        Concurrence::new(2.0 * (self.empty * self.paired).norm()).unwrap_or(Concurrence::ZERO)
    }
}

/// `cos(θ/2)|00⟩ − e^{iφ} sin(θ/2)|11⟩`, eigenvalue `−E`.
pub fn bcs_ground_state(point: &BcsPoint) -> PairState {
    let half = 0.5 * point.theta();
    PairState {
        empty: Complex64::new(half.cos(), 0.0),
        paired: -Complex64::from_polar(half.sin(), point.phi()),
    }
}

/// `|Δ| − sinh(βE) sin θ / (2[cosh(βE) + 1])`, zero at self-consistency.
pub fn gap_self_consistency_residual(point: &BcsPoint) -> f64 {
    // sinh x / (cosh x + 1) = tanh(x/2)
    let x = point.beta_energy();
    point.delta_abs() - 0.5 * (0.5 * x).tanh() * point.sin_theta()
}

/// Critical temperature of the nontrivial branch at `ε`: the temperature
/// where the linearized gap equation `tanh(|ε|/2T) = 2|ε|` holds. Zero for
/// `|ε| ≥ 1/2`, and `1/4` at `ε = 0`.
pub fn critical_temperature(epsilon: f64) -> f64 {
    let e = epsilon.abs();
    if e == 0.0 {
        0.25
    } else if e >= 0.5 {
        0.0
    } else {
        e / (2.0 * (2.0 * e).atanh())
    }
}

/// Zero-temperature gap `√(1/4 − ε²)` (zero for `|ε| ≥ 1/2`).
pub fn zero_temperature_gap(epsilon: f64) -> f64 {
    (0.25 - epsilon * epsilon).max(0.0).sqrt()
}

/// Self-consistent order parameter at `(ε, β)`.
///
/// Returns the largest root of the residual: the nontrivial root when it
/// exists (found by bisection on `[GAP_BRACKET_LOW, GAP_BRACKET_HIGH]`),
/// otherwise `Δ = 0`. The phase is set to zero.
pub fn solve_gap(epsilon: f64, beta: f64) -> Result<BcsPoint> {
    let at = |delta: f64| BcsPoint::new(epsilon, delta, 0.0, beta);
    let low = gap_self_consistency_residual(&at(GAP_BRACKET_LOW)?);
    let high = gap_self_consistency_residual(&at(GAP_BRACKET_HIGH)?);
    if high <= 0.0 {
        return Err(Error::Numeric(format!(
            "gap residual {high:e} not positive at the upper bracket"
        )));
    }
    if low >= 0.0 {
        return at(0.0);
    }
    let delta = bisect(
        |d| gap_self_consistency_residual(&BcsPoint { epsilon, delta_abs: d, phi: 0.0, beta }),
        GAP_BRACKET_LOW,
        GAP_BRACKET_HIGH,
        GAP_TOLERANCE,
    )?;
    at(delta)
}

/// `max{0, sinh(βE) sin θ − 1} / (cosh(βE) + 1)`; tends to `sin θ` as `β → ∞`.
pub fn bcs_thermal_concurrence(point: &BcsPoint) -> Concurrence {
    let x = point.beta_energy();
    let s = point.sin_theta();
    // divided through by cosh x, with sech x = 2e^{-x}/(1 + e^{-2x})
    let decay = (-x).exp();
    let sech = 2.0 * decay / (1.0 + decay * decay);
    let c = (x.tanh() * s - sech).max(0.0) / (1.0 + sech);
    Concurrence::new(c).unwrap_or(Concurrence::ZERO)
}

/// Self-consistent `(Δ, C)` at temperature `temperature` (`0` allowed).
pub fn self_consistent_concurrence(epsilon: f64, temperature: f64) -> Result<(f64, Concurrence)> {
    if temperature.is_nan() || temperature < 0.0 {
        return Err(invalid(format!("temperature T = {temperature} must be >= 0")));
    }
    let point = solve_gap(epsilon, 1.0 / temperature)?;
    Ok((point.delta_abs(), bcs_thermal_concurrence(&point)))
}

/// Temperature above which the self-consistent pair is no longer entangled.
///
/// `C > 0` iff `sinh(βE) sin θ > 1`; the crossing is bisected on `(0, T_c]`.
pub fn entanglement_vanishing_temperature(epsilon: f64) -> Result<f64> {
    let tc = critical_temperature(epsilon);
    if tc == 0.0 {
        return Err(invalid(format!("no paired phase at epsilon = {epsilon}")));
    }
    let margin = |temperature: f64| -> f64 {
        match solve_gap(epsilon, 1.0 / temperature) {
            Ok(p) => {
                let x = p.beta_energy();
                if x > 700.0 {
                    return 1.0;
                }
                x.sinh() * p.sin_theta() - 1.0
            }
            Err(_) => f64::NAN,
        }
    };
    bisect(margin, tc * 1e-3, tc, TEMPERATURE_TOLERANCE)
}

/// One row of the concurrence-versus-order-parameter table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrderParameterRow {
    pub delta: f64,
    pub temperature: f64,
    pub concurrence: f64,
}

/// Temperature on the paired branch where the self-consistent gap equals
/// `delta`. `Δ(T)` decreases monotonically from `Δ(0)` to 0 at `T_c`.
pub fn temperature_for_gap(epsilon: f64, delta: f64) -> Result<f64> {
    let max_gap = zero_temperature_gap(epsilon);
    let tc = critical_temperature(epsilon);
    if !(0.0..=max_gap).contains(&delta) || tc == 0.0 && delta > 0.0 {
        return Err(invalid(format!(
            "order parameter {delta} outside the attainable range [0, {max_gap}]"
        )));
    }
    if delta == 0.0 {
        return Ok(tc);
    }
    if delta == max_gap {
        return Ok(0.0);
    }
    let mut failure = None;
    let t = bisect(
        |temperature| match solve_gap(epsilon, 1.0 / temperature) {
            Ok(p) => p.delta_abs() - delta,
            Err(e) => {
                failure = Some(e);
                f64::NAN
            }
        },
        0.0,
        tc,
        TEMPERATURE_TOLERANCE,
    );
    if let Some(e) = failure {
        return Err(e);
    }
    t
}

/// `(Δ, T(Δ), C)` for every `Δ` of the grid, with `C` evaluated on the
/// self-consistent branch at `T(Δ)`.
pub fn concurrence_vs_order_parameter(epsilon: f64, delta_grid: &[f64]) -> Result<Vec<OrderParameterRow>> {
    delta_grid
        .iter()
        .map(|&delta| {
            let temperature = temperature_for_gap(epsilon, delta)?;
            let point = BcsPoint::new(epsilon, delta, 0.0, 1.0 / temperature)?;
            Ok(OrderParameterRow {
                delta,
                temperature,
                concurrence: bcs_thermal_concurrence(&point).value(),
            })
        })
        .collect()
}
