//! Bracketing bisection for functions known to be strictly monotone.

use serde::Serialize;

use crate::error::{BohrError, Result};

/// Final bracket of a bisection run. `f_lo` and `f_hi` have opposite signs
/// (or one of them is exactly zero), which certifies a root in `[lo, hi]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Bisection {
    pub root: f64,
    pub lo: f64,
    pub hi: f64,
    pub f_lo: f64,
    pub f_hi: f64,
    pub residual: f64,
    pub iterations: u32,
}

impl Bisection {
    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    /// The endpoint values straddle zero.
    pub fn sign_change(&self) -> bool {
        self.f_lo * self.f_hi <= 0.0
    }
}

/// Shrinks `[lo, hi]` until its width is at most `tol`.
///
/// Fails with [`BohrError::NoSignChange`] unless `f(lo)` and `f(hi)` straddle
/// zero. Iteration also stops when the midpoint is no longer representable
/// strictly inside the bracket.
pub fn bisect(mut f: impl FnMut(f64) -> f64, mut lo: f64, mut hi: f64, tol: f64) -> Result<Bisection> {
    let mut f_lo = f(lo);
    let mut f_hi = f(hi);
    if f_lo.is_nan() || f_hi.is_nan() || f_lo * f_hi > 0.0 {
        return Err(BohrError::NoSignChange { lo, hi });
    }
    let increasing = f_lo < f_hi;
    let mut iterations = 0;
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = f(mid);
        if fm.is_nan() {
            return Err(BohrError::NonFinite(format!("function value at {mid}")));
        }
        iterations += 1;
        if fm == 0.0 {
            lo = mid;
            hi = mid;
            f_lo = 0.0;
            f_hi = 0.0;
            break;
        }
        if (fm < 0.0) == increasing {
            lo = mid;
            f_lo = fm;
        } else {
            hi = mid;
            f_hi = fm;
        }
    }
    let root = 0.5 * (lo + hi);
    let residual = f(root).abs();
    Ok(Bisection { root, lo, hi, f_lo, f_hi, residual, iterations })
}
