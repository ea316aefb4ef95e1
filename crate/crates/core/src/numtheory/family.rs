//! The two-prime family `p(a, y)`, `q(a, y)`, `k(a, y)` with
//! `p·q = k² + 5k + c`.

use serde::{Deserialize, Serialize};

use crate::bounds::J_CONSTANTS;
use crate::classify::{classify_factored, classify_with, Verdict};
use crate::error::{Error, Result};
use crate::spectra::{Modulus, NumericPolicy};

use super::{is_prime_u128, Factorization, Poly};

/// `p(·)`, `q(·)`, `k(·)` as polynomials in `y` for fixed `a` and `c`.
/// Any `c` is accepted here; the comparison family with `c = −7` uses it.
pub fn family_polys(a: u64, c: i32) -> Result<(Poly, Poly, Poly)> {
    if a == 0 {
        return Err(Error::invalid("a must be positive"));
    }
    let a = a as i128;
    let c = c as i128;
    let ov = || Error::overflow(format!("family coefficients overflow for a = {a}"));
    let a2 = a.checked_mul(a).ok_or_else(ov)?;
    let a3 = a2.checked_mul(a).ok_or_else(ov)?;
    let a4 = a3.checked_mul(a).ok_or_else(ov)?;
    let t = 2 * a + 1;
    let p = Poly::from_ascending(vec![
        (4 * c - 9) * a2 + (4 * c - 5) * a + c,
        -a * t * (8 * a + 5),
        a2.checked_mul(t * t).ok_or_else(ov)?,
    ]);
    let q = Poly::from_ascending(vec![
        4 * (4 * c - 9) * a2 + 16 * a + 1,
        -8 * a2 * (8 * a + 1),
        16 * a4,
    ]);
    let k = Poly::from_ascending(vec![
        2 * (4 * c - 9) * a2 + (4 * c - 1) * a,
        -a * (32 * a2 + 20 * a + 1),
        4 * a3 * t,
    ]);
    Ok((p, q, k))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FamilyPoint {
    pub a: u64,
    pub y: i64,
    pub c: i32,
    pub p: i128,
    pub q: i128,
    pub k: i128,
    /// `√(q/p)`, when both are positive.
    pub x: Option<f64>,
    /// `lim √(q/p) = 2 − 2/(2a + 1)` as `y → ∞`.
    pub x_limit: f64,
}

impl FamilyPoint {
    /// Both `p` and `q` positive.
    pub fn in_domain(&self) -> bool {
        self.p > 0 && self.q > 0
    }

    /// `p·q`, when in domain.
    pub fn modulus(&self) -> Option<u128> {
        self.in_domain()
            .then(|| (self.p as u128).checked_mul(self.q as u128))
            .flatten()
    }
}

/// Evaluates the family at `y` for any `c`, checking `p·q = k² + 5k + c` exactly.
pub fn family_point(a: u64, y: i64, c: i32) -> Result<FamilyPoint> {
    let (pp, qp, kp) = family_polys(a, c)?;
    let y128 = y as i128;
    let ov = || Error::overflow(format!("family values overflow at a = {a}, y = {y}"));
    let p = pp.eval(y128).ok_or_else(ov)?;
    let q = qp.eval(y128).ok_or_else(ov)?;
    let k = kp.eval(y128).ok_or_else(ov)?;
    let lhs = p.checked_mul(q).ok_or_else(ov)?;
    let rhs = Poly::f_c(c as i128).eval(k).ok_or_else(ov)?;
    if lhs != rhs {
        return Err(Error::invariant(format!(
            "p·q = {lhs} differs from k² + 5k + c = {rhs} at a = {a}, y = {y}, c = {c}"
        )));
    }
    let x = (p > 0 && q > 0).then(|| (q as f64 / p as f64).sqrt());
    Ok(FamilyPoint {
        a,
        y,
        c,
        p,
        q,
        k,
        x,
        x_limit: 2.0 - 2.0 / (2 * a + 1) as f64,
    })
}

/// [`family_point`] restricted to the six constants of `J`.
pub fn family_eval(a: u64, y: i64, c: i32) -> Result<FamilyPoint> {
    if !J_CONSTANTS.contains(&c) {
        return Err(Error::invalid(format!("c must be one of ±1, ±3, ±5, got {c}")));
    }
    family_point(a, y, c)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FamilyEntry {
    pub point: FamilyPoint,
    pub in_domain: bool,
    pub p_prime: bool,
    pub q_prime: bool,
    /// Classification of `p·q`, when it is an odd order we can handle.
    pub verdict: Option<Verdict>,
}

/// Family points for `y = 1..=y_max`. Points with `p <= 0` or `q <= 0` are
/// kept and flagged; with `require_prime` only pairs of primes remain.
pub fn family_scan(
    a: u64,
    c: i32,
    y_max: i64,
    require_prime: bool,
    policy: &NumericPolicy,
) -> Result<Vec<FamilyEntry>> {
    let mut out = Vec::new();
    for y in 1..=y_max {
        let point = family_eval(a, y, c)?;
        let in_domain = point.in_domain();
        let (p_prime, q_prime) = if in_domain {
            (is_prime_u128(point.p as u128)?, is_prime_u128(point.q as u128)?)
        } else {
            (false, false)
        };
        if require_prime && !(p_prime && q_prime) {
            continue;
        }
        let verdict = match point.modulus() {
            Some(m) if m % 2 == 1 && m >= 3 => {
                if p_prime && q_prime && point.p != point.q {
                    let (lo, hi) = (point.p.min(point.q) as u128, point.p.max(point.q) as u128);
                    let f = Factorization::from_factors(vec![(lo, 1), (hi, 1)])?;
                    Some(classify_factored(&f, policy)?)
                } else if m < 1 << 64 {
                    Some(classify_with(Modulus::new(m)?, policy)?)
                } else {
                    None
                }
            }
            _ => None,
        };
        out.push(FamilyEntry {
            point,
            in_domain,
            p_prime,
            q_prime,
            verdict,
        });
    }
    Ok(out)
}
