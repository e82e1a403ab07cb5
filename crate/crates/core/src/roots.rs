//! Scalar root finding for monotone functions.

use crate::error::{Error, Result};

const MAX_DOUBLINGS: usize = 64;

/// Root of a continuous increasing `f` on `[lo, hi]` with `f(lo) ≤ 0 ≤ f(hi)`,
/// bisected until the bracket is narrower than `tol`.
pub fn bisect_increasing(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, tol: f64) -> f64 {
    debug_assert!(lo <= hi);
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if f(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Brackets the root of an increasing `f` starting from `x0`, stepping with
/// doubling widths in the direction of the sign change.
pub fn bracket_increasing(f: impl Fn(f64) -> f64, x0: f64) -> Result<(f64, f64)> {
    let f0 = f(x0);
    if f0 == 0.0 {
        return Ok((x0, x0));
    }
    let mut width = 1.0;
    if f0 < 0.0 {
        let mut lo = x0;
        for _ in 0..MAX_DOUBLINGS {
            let hi = x0 + width;
            let fh = f(hi);
            if !fh.is_finite() {
                break;
            }
            if fh >= 0.0 {
                return Ok((lo, hi));
            }
            lo = hi;
            width *= 2.0;
        }
    } else {
        let mut hi = x0;
        for _ in 0..MAX_DOUBLINGS {
            let lo = x0 - width;
            let fl = f(lo);
            if !fl.is_finite() {
                break;
            }
            if fl <= 0.0 {
                return Ok((lo, hi));
            }
            hi = lo;
            width *= 2.0;
        }
    }
    Err(Error::NoSolution("no sign change found while bracketing".into()))
}
