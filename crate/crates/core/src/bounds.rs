//! The trivial covalency bound, the interpolating function `d`, its sign
//! windows, membership in the candidate set `J`, and explicit
//! non-Ramanujan witnesses above `l0 + 2`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{isqrt, exact_sqrt, sin_turn, Real};
use crate::spectra::{mu_sl_closed, ramanujan_bound, Modulus, NumericPolicy, Resolved};
use crate::ExtReal;

/// The six admissible constants `c` of `f_c(k) = k² + 5k + c`.
pub const J_CONSTANTS: [i32; 6] = [-5, -3, -1, 1, 3, 5];

/// Odd orders admitted into `J` outright.
pub const SMALL_WINDOW: std::ops::RangeInclusive<u128> = 15..=29;

/// Discriminant `c' = 25 - 4c` of `f_c`.
pub fn cprime(c: i32) -> i32 {
    25 - 4 * c
}

/// Smallest `k` for which `f_c(k)` belongs to `J`.
pub fn min_k(c: i32) -> u128 {
    if c == -5 {
        19
    } else {
        4
    }
}

/// `f_c(k) = k² + 5k + c`, `None` on overflow or a non-positive value.
pub fn f_c(c: i32, k: u128) -> Option<u128> {
    let v = k.checked_mul(k)?.checked_add(k.checked_mul(5)?)?;
    v.checked_add_signed(c as i128).filter(|&x| x > 0)
}

/// `k = ⌊√m − 3/2⌋`, the index of the interval `I_k` containing `m`.
pub fn interval_index(m: u128) -> u128 {
    // ⌊(√(4m) − 3)/2⌋ equals ⌊(⌊√(4m)⌋ − 3)/2⌋ because the shift is integral
    let s = isqrt(4 * m);
    s.saturating_sub(3) / 2
}

/// `l0 = 2⌊√m − 3/2⌋ + 1`, computed exactly.
pub fn trivial_bound(m: Modulus) -> u128 {
    2 * interval_index(m.get()) + 1
}

/// `d(m) = sin(π(2k+3)/m)/sin(π/m) − 2√(m − 2k − 4)` in scalar type `T`.
pub fn d_value_in<T: Real>(m: Modulus) -> Result<T> {
    let mm = m.get();
    let k = interval_index(mm);
    if k == 0 {
        return Err(Error::invalid(format!("d is defined for m >= 7, got {mm}")));
    }
    let num = sin_turn::<T>(2 * k + 3, 2 * mm);
    let den = sin_turn::<T>(1, 2 * mm);
    Ok(num / den - ramanujan_bound::<T>(mm - 2 * k - 3))
}

/// Sign-reliable `d(m)`: double precision with extended fallback.
pub fn d_value(m: Modulus, policy: &NumericPolicy) -> Result<Resolved> {
    let v: f64 = d_value_in(m)?;
    let scale = 2.0 * (m.get() as f64).sqrt();
    Ok(policy.resolve(v, scale, || d_value_in::<ExtReal>(m).expect("checked in f64 pass")))
}

/// The closed window `[k² + 5k − c, k² + 5k + 5]` on which `d < 0` inside `I_k`.
pub fn negative_d_window(k: u128) -> Result<(u128, u128)> {
    if k < 4 {
        return Err(Error::invalid(format!("window is stated for k >= 4, got {k}")));
    }
    let c = if k <= 18 { 3 } else { 5 };
    let base = k * k + 5 * k;
    Ok((base - c, base + 5))
}

/// Odd members of `I_k = [(k+3/2)², (k+5/2)²)`.
pub fn interval_members(k: u128) -> impl Iterator<Item = u128> {
    // (k+3/2)² = k² + 3k + 9/4, so the first integer is k² + 3k + 3
    let lo = k * k + 3 * k + 3;
    let hi = k * k + 5 * k + 6; // last integer below (k+5/2)²
    (lo..=hi).filter(|m| m % 2 == 1)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum JSource {
    SmallWindow,
    Quadratic,
}

/// `m = k² + 5k + c` with the discriminant `c' = 25 − 4c`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadraticWitness {
    pub c: i32,
    pub k: u128,
    pub cprime: i32,
}

/// Certificate of membership (or non-membership) in `J`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JWitness {
    pub member: bool,
    pub source: Option<JSource>,
    /// Every quadratic representation found; more than one would be a surprise.
    pub quadratic: Vec<QuadraticWitness>,
}

impl JWitness {
    pub fn c(&self) -> Option<i32> {
        self.quadratic.first().map(|w| w.c)
    }

    pub fn k(&self) -> Option<u128> {
        self.quadratic.first().map(|w| w.k)
    }
}

/// Membership in `J`, decided by exact perfect-square tests on `4m + c'`.
pub fn in_j(m: Modulus) -> JWitness {
    let mm = m.get();
    if SMALL_WINDOW.contains(&mm) {
        return JWitness {
            member: true,
            source: Some(JSource::SmallWindow),
            quadratic: Vec::new(),
        };
    }
    let mut quadratic = Vec::new();
    for c in J_CONSTANTS {
        let cp = cprime(c);
        let Some(s) = mm.checked_mul(4).and_then(|x| x.checked_add(cp as u128)).and_then(exact_sqrt)
        else {
            continue;
        };
        // s is odd since 4m + c' is odd
        if s < 5 {
            continue;
        }
        let k = (s - 5) / 2;
        if k >= min_k(c) {
            quadratic.push(QuadraticWitness { c, k, cprime: cp });
        }
    }
    JWitness {
        member: !quadratic.is_empty(),
        source: (!quadratic.is_empty()).then_some(JSource::Quadratic),
        quadratic,
    }
}

/// Largest `h` with `h <= (√m − 2)²/4`, by exact integer comparison.
pub fn witness_h_max(m: Modulus) -> u128 {
    let mm = m.get();
    // h <= (m + 4 − 4√m)/4  ⇔  m + 4 − 4h >= 0 and (m + 4 − 4h)² >= 16m
    let ok = |h: u128| {
        let t = (mm + 4).checked_sub(4 * h);
        t.is_some_and(|t| t.checked_mul(t).map_or(true, |sq| sq >= 16 * mm))
    };
    // integer square root makes this guess exact to within one step
    let mut h = (mm + 4 - 4 * isqrt(mm)) / 4;
    while h > 0 && !ok(h) {
        h -= 1;
    }
    while ok(h + 1) {
        h += 1;
    }
    h
}

/// Whether `S^(l0 + 2h)` violates the Ramanujan bound at `j = 1`.
pub fn witness_check(m: Modulus, h: u128, policy: &NumericPolicy) -> Result<bool> {
    let mm = m.get();
    if mm < 39 {
        return Err(Error::invalid(format!("witnesses are stated for m >= 39, got {mm}")));
    }
    let h_max = witness_h_max(m);
    if h < 2 || h > h_max {
        return Err(Error::invalid(format!("h must lie in [2, {h_max}] for m = {mm}, got {h}")));
    }
    let l = trivial_bound(m) + 2 * h;
    if 2 * l >= mm {
        return Err(Error::invalid(format!("covalency {l} is not below m/2")));
    }
    let eval = |l: u128| -> Result<(f64, f64)> {
        let mu: f64 = mu_sl_closed(m, l, 1)?;
        Ok((mu.abs(), ramanujan_bound::<f64>(mm - l)))
    };
    let (mu, rb) = eval(l)?;
    let r = policy.resolve(mu - rb, rb, || {
        let mu: ExtReal = mu_sl_closed(m, l, 1).expect("checked in f64 pass");
        mu.abs() - ramanujan_bound::<ExtReal>(mm - l)
    });
    Ok(r.value > 0.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn md(m: u128) -> Modulus {
        Modulus::new(m).unwrap()
    }

    #[test]
    fn trivial_bound_examples_and_sandwich() {
        assert_eq!(trivial_bound(md(15)), 5);
        assert_eq!(trivial_bound(md(43)), 11);
        assert_eq!(trivial_bound(md(25)), 7);
        for m in (15u128..200_000).step_by(2) {
            let l0 = trivial_bound(md(m)) as f64;
            let r = (m as f64).sqrt();
            assert!(l0 as u128 % 2 == 1);
            assert!(2.0 * (r - 2.0) < l0 && l0 <= 2.0 * (r - 1.0) + 1e-12, "m={m}");
        }
    }

    #[test]
    fn interval_index_matches_float_formula() {
        for m in 3u128..100_000 {
            let k = ((m as f64).sqrt() - 1.5).floor() as u128;
            assert_eq!(interval_index(m), k, "m={m}");
        }
        for k in 1..300u128 {
            for m in interval_members(k) {
                assert_eq!(interval_index(m), k);
            }
        }
    }

    #[test]
    fn d_signs() {
        let p = NumericPolicy::default();
        assert!(d_value(md(31), &p).unwrap().value > 0.0);
        assert!(d_value(md(35), &p).unwrap().value < 0.0);
        assert!(d_value(md(15), &p).unwrap().value < 0.0);
        assert!(d_value(md(5), &p).is_err());
    }

    #[test]
    fn windows() {
        assert_eq!(negative_d_window(4).unwrap(), (33, 41));
        assert_eq!(negative_d_window(18).unwrap(), (411, 419));
        assert_eq!(negative_d_window(19).unwrap(), (451, 461));
        assert!(negative_d_window(3).is_err());
    }

    #[test]
    fn membership_examples() {
        let w = in_j(md(35));
        assert!(w.member);
        assert_eq!(w.source, Some(JSource::Quadratic));
        assert_eq!((w.c(), w.k()), (Some(-1), Some(4)));
        assert!(!in_j(md(31)).member);
        assert_eq!(in_j(md(15)).source, Some(JSource::SmallWindow));
        assert!(!in_j(md(13)).member);
        let w = in_j(md(451));
        assert_eq!((w.c(), w.k()), (Some(-5), Some(19)));
    }

    #[test]
    fn quadratic_witnesses_are_exact_and_unique() {
        for m in (31u128..200_000).step_by(2) {
            let w = in_j(md(m));
            assert!(w.quadratic.len() <= 1, "m={m}");
            for q in &w.quadratic {
                assert_eq!(f_c(q.c, q.k), Some(m));
            }
        }
    }

    #[test]
    fn membership_matches_sign_of_d() {
        let p = NumericPolicy::default();
        for m in (15u128..=20_001).step_by(2) {
            let neg = d_value(md(m), &p).unwrap().value < 0.0;
            assert_eq!(in_j(md(m)).member, neg, "m={m}");
        }
    }

    #[test]
    fn witness_range_and_checks() {
        let p = NumericPolicy::default();
        assert_eq!(witness_h_max(md(39)), 4);
        for m in (39u128..2000).step_by(2) {
            let exact = (((m as f64).sqrt() - 2.0).powi(2) / 4.0).floor() as u128;
            assert_eq!(witness_h_max(md(m)), exact, "m={m}");
        }
        assert!(witness_check(md(39), 2, &p).unwrap());
        assert!(witness_check(md(39), 4, &p).unwrap());
        assert!(witness_check(md(101), 2, &p).unwrap());
        assert!(witness_check(md(39), 5, &p).is_err());
        assert!(witness_check(md(39), 1, &p).is_err());
        assert!(witness_check(md(37), 2, &p).is_err());
    }

    #[test]
    fn witnesses_hold_across_their_range() {
        let p = NumericPolicy::default();
        for m in (39u128..800).step_by(2) {
            for h in 2..=witness_h_max(md(m)) {
                assert!(witness_check(md(m), h, &p).unwrap(), "m={m} h={h}");
            }
        }
    }
}
