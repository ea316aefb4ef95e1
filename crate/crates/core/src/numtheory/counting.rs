//! Residue tests and counting functions for exceptional orders: the
//! Hardy–Littlewood constants, `π₂(a; x)` and polynomial prime counts.

use serde::{Deserialize, Serialize};

use crate::bounds::{cprime, f_c, min_k, J_CONSTANTS};
use crate::classify::{classify_with, MKind};
use crate::error::{Error, Result};
use crate::spectra::{Modulus, NumericPolicy};

use super::{factorize, for_each_prime, is_prime, jacobi, primes_up_to, Poly};

/// True when `(c'/p) = −1` for all six discriminants, so that no `f_c(k)`
/// is divisible by `p`.
pub fn avoids_j(p: u64) -> Result<bool> {
    if p < 3 || !is_prime(p) {
        return Err(Error::invalid(format!("{p} is not an odd prime")));
    }
    for c in J_CONSTANTS {
        if jacobi(cprime(c) as i128, p as u128)? != -1 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Number of roots of `f` modulo `p`.
pub fn nu_f(p: u64, f: &Poly) -> Result<u64> {
    if f.degree() == 0 {
        return Err(Error::invalid("polynomial must have positive degree"));
    }
    if !is_prime(p) || p >= 1_000_000 {
        return Err(Error::invalid(format!("{p} is not a prime below 10^6")));
    }
    Ok((0..p).filter(|&x| f.eval_mod(x, p) == 0).count() as u64)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HlConstant {
    pub c: i32,
    pub prime_limit: u64,
    pub value: f64,
    /// Spread of the partial products over primes in `(limit/10, limit]`.
    pub error: f64,
}

/// `∏_{3 <= p <= limit} (1 − (c'/p)/(p − 1))`, truncated.
pub fn hl_constant(c: i32, prime_limit: u64) -> Result<HlConstant> {
    if !J_CONSTANTS.contains(&c) {
        return Err(Error::invalid(format!("c must be one of ±1, ±3, ±5, got {c}")));
    }
    if prime_limit < 1000 {
        return Err(Error::invalid("prime limit must be at least 1000"));
    }
    let cp = cprime(c) as i128;
    let decade = prime_limit / 10;
    let mut value = 1.0f64;
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for_each_prime(prime_limit, |p| {
        if p < 3 {
            return;
        }
        let s = jacobi(cp, p as u128).expect("odd prime") as f64;
        value *= 1.0 - s / (p - 1) as f64;
        if p > decade {
            lo = lo.min(value);
            hi = hi.max(value);
        }
    });
    Ok(HlConstant {
        c,
        prime_limit,
        value,
        error: hi - lo,
    })
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExceptionalCounts {
    pub c: i32,
    pub type_i: Vec<u128>,
    pub type_ii: Vec<u128>,
    pub type_iii: Vec<u128>,
}

/// Indices `k <= k_max` (from the first index in `J`) at which `f_c(k)` is
/// exceptional, bucketed by type.
pub fn count_exceptionals(c: i32, k_max: u128, policy: &NumericPolicy) -> Result<ExceptionalCounts> {
    if !J_CONSTANTS.contains(&c) {
        return Err(Error::invalid(format!("c must be one of ±1, ±3, ±5, got {c}")));
    }
    if f_c(c, k_max).is_none_or(|m| m >= 1 << 63) {
        return Err(Error::invalid(format!("f_c({k_max}) must stay below 2^63")));
    }
    let mut out = ExceptionalCounts {
        c,
        ..Default::default()
    };
    for k in min_k(c)..=k_max {
        let m = f_c(c, k).expect("checked above");
        let v = classify_with(Modulus::new(m)?, policy)?;
        if !v.is_exceptional() {
            continue;
        }
        match v.kind {
            MKind::Prime => out.type_i.push(k),
            MKind::Semiprime { .. } => out.type_ii.push(k),
            MKind::PrimeSquare { .. } => out.type_iii.push(k),
            other => {
                return Err(Error::invariant(format!("exceptional {m} has kind {other:?}")));
            }
        }
    }
    Ok(out)
}

/// Membership in `P₂(a)`: `m = pq` with primes `p < q < a·p`. `p = 2` is allowed.
pub fn in_p2(m: u64, a: f64) -> Result<bool> {
    if m < 2 {
        return Ok(false);
    }
    let f = factorize(m)?;
    if f.factors.len() != 2 || f.big_omega() != 2 {
        return Ok(false);
    }
    let (p, q) = (f.factors[0].0 as f64, f.factors[1].0 as f64);
    Ok(q < a * p)
}

/// `π₂(a; x) = #{m <= x : m ∈ P₂(a)}`.
pub fn count_p2_ratio(a: f64, x: u64) -> Result<u64> {
    if !(a > 1.0) || !a.is_finite() {
        return Err(Error::invalid(format!("a must exceed 1, got {a}")));
    }
    // q <= min(x/p, a·p) <= √(a·x), and q <= x/2
    let limit = ((a * x as f64).sqrt().ceil() as u64 + 1).min(x / 2);
    let primes = primes_up_to(limit);
    let mut count = 0u64;
    for &p in &primes {
        if p.saturating_mul(p) >= x {
            break;
        }
        // largest integer strictly below a·p
        let below = (a * p as f64).ceil() as u64 - 1;
        let top = below.min(x / p);
        if top <= p {
            continue;
        }
        let hi = primes.partition_point(|&q| q <= top);
        let lo = primes.partition_point(|&q| q <= p);
        count += (hi - lo) as u64;
    }
    Ok(count)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PolyCountMode {
    Prime,
    SemiprimeDistinct,
}

impl std::str::FromStr for PolyCountMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "prime" => Ok(PolyCountMode::Prime),
            "semiprime_distinct" | "semiprime" => Ok(PolyCountMode::SemiprimeDistinct),
            _ => Err(Error::invalid(format!("unknown count mode {s:?}"))),
        }
    }
}

/// Number of `k` in `1..=x` with `f(k)` prime, or a product of two distinct primes.
pub fn count_poly(f: &Poly, x: u64, mode: PolyCountMode) -> Result<u64> {
    let mut count = 0;
    for k in 1..=x {
        let v = f
            .eval(k as i128)
            .ok_or_else(|| Error::overflow(format!("f({k}) overflows")))?;
        if v <= 0 {
            return Err(Error::invalid(format!("f({k}) = {v} is not positive")));
        }
        let v = u64::try_from(v).map_err(|_| Error::overflow(format!("f({k}) = {v} exceeds 64 bits")))?;
        let hit = match mode {
            PolyCountMode::Prime => is_prime(v),
            PolyCountMode::SemiprimeDistinct => {
                let fct = factorize(v)?;
                fct.factors.len() == 2 && fct.big_omega() == 2
            }
        };
        count += hit as u64;
    }
    Ok(count)
}

/// `x·log log x / log x`, the growth of semiprime counts up to `x`.
pub fn landau_normalizer(x: f64) -> Result<f64> {
    if !(x > std::f64::consts::E) {
        return Err(Error::invalid("normalizer needs x > e"));
    }
    Ok(x * x.ln().ln() / x.ln())
}
