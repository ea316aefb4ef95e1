//! Exact profile functions of the candidate maxima as `x = √(q/p)` varies
//! over `(1, 2)` with `m = f_c(k)` held fixed.

use serde::{Deserialize, Serialize};

use crate::bounds::{f_c, J_CONSTANTS};
use crate::error::{Error, Result};
use crate::scalar::sin_turn;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProfilePoint {
    pub x: f64,
    pub m0: f64,
    pub m1: f64,
    pub m2: f64,
    /// `A = 2√(k² + 3k + c − 4)`, the Ramanujan bound at covalency `2k + 3`.
    pub a: f64,
    pub d0: f64,
    pub d1: f64,
    pub d2: f64,
}

/// `M^(0..2)`, `A` and `D^(i) = M^(i) − A` at one point.
pub fn figure_profile(c: i32, k: u64, x: f64) -> Result<ProfilePoint> {
    if !J_CONSTANTS.contains(&c) {
        return Err(Error::invalid(format!("c must be one of ±1, ±3, ±5, got {c}")));
    }
    if !(x > 1.0 && x < 2.0) {
        return Err(Error::invalid(format!("x must lie in (1, 2), got {x}")));
    }
    if x == 1.5 {
        return Err(Error::invalid("x = 3/2 is the branch point of M^(2)"));
    }
    let k128 = k as u128;
    let b2 = f_c(c, k128).ok_or_else(|| Error::invalid("k² + 5k + c must be positive"))?;
    let a_sq = (k128 * k128 + 3 * k128)
        .checked_add_signed(c as i128 - 4)
        .filter(|&v| v > 0)
        .ok_or_else(|| Error::invalid(format!("k² + 3k + c − 4 must be positive (k = {k})")))?;
    let cc = (2 * k + 3) as f64;
    let b = (b2 as f64).sqrt();
    let tau = 2.0 * std::f64::consts::PI;

    let m0 = sin_turn::<f64>(2 * k128 + 3, 2 * b2) / sin_turn::<f64>(1, 2 * b2);
    let m1 = b * x + (cc - b * x) * (tau * x / b).cos();
    let bx = b / x;
    let m2 = if x < 1.5 {
        bx + (cc - bx) * (tau / (b * x)).cos()
    } else {
        bx + 2.0 * bx * (tau / (b * x)).cos() + (cc - 3.0 * bx) * (2.0 * tau / (b * x)).cos()
    };
    let a = 2.0 * (a_sq as f64).sqrt();
    Ok(ProfilePoint {
        x,
        m0,
        m1,
        m2,
        a,
        d0: m0 - a,
        d1: m1 - a,
        d2: m2 - a,
    })
}

/// `n` equally spaced interior points of `(1, 2)`, skipping `x = 3/2`.
pub fn profile_samples(c: i32, k: u64, n: usize) -> Result<Vec<ProfilePoint>> {
    if n == 0 {
        return Err(Error::invalid("at least one sample is needed"));
    }
    (1..=n)
        .filter(|&i| 2 * i != n + 1)
        .map(|i| figure_profile(c, k, 1.0 + i as f64 / (n + 1) as f64))
        .collect()
}
