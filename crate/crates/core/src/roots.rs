//! Bracketing root finder shared by the gap equation, the temperature
//! inversion and the threshold-temperature search.

use crate::error::{Error, Result};

pub const MAX_BISECTION_ITERATIONS: usize = 200;

/// Bisection for a sign change of `f` on `[lo, hi]`.
///
/// Stops once the bracket is narrower than `tol` or can no longer be split in
/// floating point, and returns the midpoint of the final bracket. `f(lo)` and
/// `f(hi)` must have opposite signs (a zero at either end is accepted).
pub fn bisect<F>(mut f: F, lo: f64, hi: f64, tol: f64) -> Result<f64>
where
    F: FnMut(f64) -> f64,
{
    let (mut lo, mut hi) = (lo.min(hi), lo.max(hi));
    let f_lo = f(lo);
    let f_hi = f(hi);
    if f_lo.is_nan() || f_hi.is_nan() {
        return Err(Error::Numeric(format!("NaN at bracket ends [{lo}, {hi}]")));
    }
    if f_lo == 0.0 {
        return Ok(lo);
    }
    if f_hi == 0.0 {
        return Ok(hi);
    }
    if f_lo.signum() == f_hi.signum() {
        return Err(Error::Numeric(format!(
            "no sign change on [{lo}, {hi}]: f = {f_lo:e}, {f_hi:e}"
        )));
    }
    let lo_negative = f_lo < 0.0;
    for _ in 0..MAX_BISECTION_ITERATIONS {
        let mid = 0.5 * (lo + hi);
        if hi - lo <= tol || mid <= lo || mid >= hi {
            return Ok(mid);
        }
        let f_mid = f(mid);
        if f_mid.is_nan() {
            return Err(Error::Numeric(format!("NaN at {mid}")));
        }
        if f_mid == 0.0 {
            return Ok(mid);
        }
        if (f_mid < 0.0) == lo_negative {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Err(Error::Numeric(format!(
        "bisection did not converge in {MAX_BISECTION_ITERATIONS} iterations"
    )))
}
