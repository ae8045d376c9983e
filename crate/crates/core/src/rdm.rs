//! The two-mode reduced density matrix of a number-conserving state and its
//! concurrence.
//!
//! In the basis `|00⟩, |01⟩, |10⟩, |11⟩` (first digit = mode 1) a state that
//! commutes with the total number operator reduces on two modes to
//!
//! ```text
//! ⎛ u  .   .   . ⎞
//! ⎜ .  w2  z   . ⎟
//! ⎜ .  z*  w1  . ⎟
//! ⎝ .  .   .   v ⎠
//! ```
//!
//! with `z = ⟨c₁†c₂⟩`, so that the concurrence is `2·max{0, |z| − √(uv)}`.

use num_complex::Complex64;

use crate::error::{invalid, Error, Result};

/// Absolute tolerance for the probability and positivity invariants.
pub const RDM_TOLERANCE: f64 = 1e-12;

/// Two-qubit entanglement measure, always in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Concurrence(f64);

impl Concurrence {
    pub const ZERO: Concurrence = Concurrence(0.0);

    /// Accepts values in `[0, 1]` up to [`RDM_TOLERANCE`] and clamps them.
    pub fn new(value: f64) -> Result<Self> {
        if !value.is_finite() || !(-RDM_TOLERANCE..=1.0 + RDM_TOLERANCE).contains(&value) {
            return Err(Error::Invariant(format!(
                "concurrence {value} outside [0, 1]"
            )));
        }
        Ok(Concurrence(value.clamp(0.0, 1.0)))
    }

    pub fn value(self) -> f64 {
        self.0
    }

    pub fn is_entangled(self) -> bool {
        self.0 > 0.0
    }
}

impl From<Concurrence> for f64 {
    fn from(c: Concurrence) -> f64 {
        c.0
    }
}

/// Reduced density matrix of two local modes of a number-conserving state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoSiteRdm {
    u: f64,
    w1: f64,
    w2: f64,
    v: f64,
    z: Complex64,
}

impl TwoSiteRdm {
    /// `u`: both empty, `w1`: only mode 1 occupied, `w2`: only mode 2
    /// occupied, `v`: both occupied, `z = ⟨c₁†c₂⟩`.
    pub fn new(u: f64, w1: f64, w2: f64, v: f64, z: Complex64) -> Result<Self> {
        for (name, p) in [("u", u), ("w1", w1), ("w2", w2), ("v", v)] {
            if !p.is_finite() || !(-RDM_TOLERANCE..=1.0 + RDM_TOLERANCE).contains(&p) {
                return Err(Error::Invariant(format!(
                    "probability {name} = {p} outside [0, 1]"
                )));
            }
        }
        if !z.re.is_finite() || !z.im.is_finite() {
            return Err(Error::Invariant(format!("coherence z = {z} is not finite")));
        }
        let trace = u + w1 + w2 + v;
        if (trace - 1.0).abs() > RDM_TOLERANCE {
            return Err(Error::Invariant(format!(
                "trace u + w1 + w2 + v = {trace} differs from 1"
            )));
        }
        if z.norm_sqr() > w1 * w2 + RDM_TOLERANCE {
            return Err(Error::Invariant(format!(
                "positivity |z|^2 = {} exceeds w1*w2 = {}",
                z.norm_sqr(),
                w1 * w2
            )));
        }
        Ok(TwoSiteRdm { u, w1, w2, v, z })
    }

    /// Translation-invariant case `⟨n̂₁⟩ = ⟨n̂₂⟩`, where trace normalization
    /// fixes `w1 = w2 = (1 − u − v)/2`.
    pub fn symmetric(u: f64, v: f64, z: Complex64) -> Result<Self> {
        let w = 0.5 * (1.0 - u - v);
        Self::new(u, w, w, v, z)
    }

    pub fn u(&self) -> f64 {
        self.u
    }

    pub fn w1(&self) -> f64 {
        self.w1
    }

    pub fn w2(&self) -> f64 {
        self.w2
    }

    pub fn v(&self) -> f64 {
        self.v
    }

    pub fn z(&self) -> Complex64 {
        self.z
    }

    /// Dense 4×4 form in the basis `|n₁n₂⟩`, index `2·n₁ + n₂`.
    pub fn to_matrix(&self) -> [[Complex64; 4]; 4] {
        let zero = Complex64::new(0.0, 0.0);
        let mut m = [[zero; 4]; 4];
        m[0][0] = Complex64::from(self.u);
        m[1][1] = Complex64::from(self.w2);
        m[2][2] = Complex64::from(self.w1);
        m[3][3] = Complex64::from(self.v);
        m[1][2] = self.z;
        m[2][1] = self.z.conj();
        m
    }
}

/// `C = 2·max{0, |z| − √(uv)}`.
pub fn concurrence_from_rdm(rdm: &TwoSiteRdm) -> Concurrence {
    // u, v may sit a rounding error below zero
    let uv = rdm.u.max(0.0) * rdm.v.max(0.0);
    let c = 2.0 * (rdm.z.norm() - uv.sqrt()).max(0.0);
    // |z| ≤ √(w1 w2) ≤ (w1 + w2)/2 ≤ 1/2 keeps this in range
    Concurrence(c.min(1.0))
}

/// Whether an eigenstate with filling `n` and `|⟨c₁†c₂⟩| = z_abs` has
/// pairwise entanglement, from the closed window
/// `n²−n+1−√(2n²−2n+1) < z² < n²−n+1+√(2n²−2n+1)`.
pub fn entanglement_window(z_abs: f64, n: f64) -> Result<bool> {
    check_window_args(z_abs, n)?;
    let centre = n * n - n + 1.0;
    let half_width = (2.0 * n * n - 2.0 * n + 1.0).sqrt();
    let z2 = z_abs * z_abs;
    Ok(centre - half_width < z2 && z2 < centre + half_width)
}

/// The same predicate evaluated as `C > 0` with `u = (n−1)² − z²`,
/// `v = n² − z²`.
pub fn entanglement_window_from_concurrence(z_abs: f64, n: f64) -> Result<bool> {
    check_window_args(z_abs, n)?;
    let z2 = z_abs * z_abs;
    let u = (n - 1.0) * (n - 1.0) - z2;
    let v = n * n - z2;
    Ok(z_abs > 0.0 && z2 > u * v)
}

fn check_window_args(z_abs: f64, n: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&z_abs) {
        return Err(invalid(format!("|z| = {z_abs} outside [0, 1]")));
    }
    if !(0.0..=1.0).contains(&n) {
        return Err(invalid(format!("filling n = {n} outside [0, 1]")));
    }
    Ok(())
}
