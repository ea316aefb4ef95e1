//! Scalar abstraction shared by every numeric routine in the crate.
//!
//! Everything that evaluates a trigonometric sum, a square root or a
//! Ramanujan margin is written once against [`Real`] and instantiated with
//! `f64` for fast scans and with [`f256`] when a comparison is too close to
//! call in double precision.
//!
//! Angles are never passed around as floating-point radians. Callers hand in
//! an exact fraction of a full turn (`num / den`), which is reduced with
//! integer arithmetic to the first octant before it ever touches a float.
//! That keeps `cos(2πbj/m)` accurate even when `m` is far beyond 2⁵³.

use std::fmt::{Debug, Display};
use std::ops::Neg;

pub use f256::f256;
use num_traits::Num;

/// A real scalar with the handful of transcendental functions the crate needs.
pub trait Real:
    Num + Copy + PartialOrd + Neg<Output = Self> + Debug + Display + Send + Sync + 'static
{
    /// Approximate number of significant decimal digits carried.
    const DIGITS: u32;

    fn pi() -> Self;
    fn sin(self) -> Self;
    fn cos(self) -> Self;
    fn sqrt(self) -> Self;
    fn abs(self) -> Self;
    fn from_u128(v: u128) -> Self;
    fn from_i128(v: i128) -> Self;
    fn from_f64(v: f64) -> Self;
    fn to_f64(self) -> f64;

    fn from_u64(v: u64) -> Self {
        Self::from_u128(v as u128)
    }

    fn from_i64(v: i64) -> Self {
        Self::from_i128(v as i128)
    }

    fn max(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }

    fn min(self, other: Self) -> Self {
        if other < self {
            other
        } else {
            self
        }
    }
}

macro_rules! impl_real_for_primitive {
    ($t:ty, $digits:expr, $pi:expr) => {
        impl Real for $t {
            const DIGITS: u32 = $digits;

            fn pi() -> Self {
                $pi
            }
            fn sin(self) -> Self {
                <$t>::sin(self)
            }
            fn cos(self) -> Self {
                <$t>::cos(self)
            }
            fn sqrt(self) -> Self {
                <$t>::sqrt(self)
            }
            fn abs(self) -> Self {
                <$t>::abs(self)
            }
            fn from_u128(v: u128) -> Self {
                v as $t
            }
            fn from_i128(v: i128) -> Self {
                v as $t
            }
            fn from_f64(v: f64) -> Self {
                v as $t
            }
            fn to_f64(self) -> f64 {
                self as f64
            }
        }
    };
}

impl_real_for_primitive!(f32, 7, std::f32::consts::PI);
impl_real_for_primitive!(f64, 15, std::f64::consts::PI);

impl Real for f256 {
    const DIGITS: u32 = 71;

    fn pi() -> Self {
        ::f256::consts::PI
    }
    fn sin(self) -> Self {
        f256::sin(&self)
    }
    fn cos(self) -> Self {
        f256::cos(&self)
    }
    fn sqrt(self) -> Self {
        f256::sqrt(self)
    }
    fn abs(self) -> Self {
        f256::abs(&self)
    }
    fn from_u128(v: u128) -> Self {
        f256::from(v)
    }
    fn from_i128(v: i128) -> Self {
        f256::from(v)
    }
    fn from_f64(v: f64) -> Self {
        f256::from(v)
    }
    fn to_f64(self) -> f64 {
        // no direct narrowing conversion is provided; 20 digits round-trip f64
        format!("{:.20e}", self).parse().unwrap_or(f64::NAN)
    }
}

/// `2π · num / den` evaluated as `T`, for an already reduced fraction.
fn turn_angle<T: Real>(num: u128, den: u128) -> T {
    let two = T::one() + T::one();
    two * T::pi() * T::from_u128(num) / T::from_u128(den)
}

/// `cos(2π · num / den)` with exact integer argument reduction.
///
/// # Panics
///
/// Panics if `den == 0` or if `den` exceeds `u128::MAX / 4`.
pub fn cos_turn<T: Real>(num: u128, den: u128) -> T {
    assert!(den > 0, "zero denominator in turn fraction");
    assert!(den <= u128::MAX / 4, "turn denominator too large");
    let mut r = num % den;
    if 2 * r > den {
        r = den - r;
    }
    // now 0 <= r/den <= 1/2
    if 4 * r > den {
        // cos(θ) = -cos(π - θ); π - θ = 2π (den - 2r) / (2 den)
        return -cos_reduced::<T>(den - 2 * r, 2 * den);
    }
    cos_reduced(r, den)
}

/// `cos(2π r/den)` for `0 <= r/den <= 1/4`.
fn cos_reduced<T: Real>(r: u128, den: u128) -> T {
    if 8 * r > den {
        // cos(θ) = sin(π/2 - θ); π/2 - θ = 2π (den - 4r) / (4 den)
        turn_angle::<T>(den - 4 * r, 4 * den).sin()
    } else {
        turn_angle::<T>(r, den).cos()
    }
}

/// `sin(2π · num / den)` with exact integer argument reduction.
///
/// # Panics
///
/// Same conditions as [`cos_turn`].
pub fn sin_turn<T: Real>(num: u128, den: u128) -> T {
    assert!(den > 0, "zero denominator in turn fraction");
    assert!(den <= u128::MAX / 4, "turn denominator too large");
    let r = num % den;
    if 2 * r > den {
        return -sin_half::<T>(den - r, den);
    }
    sin_half(r, den)
}

/// `sin(2π r/den)` for `0 <= r/den <= 1/2`.
fn sin_half<T: Real>(r: u128, den: u128) -> T {
    if 4 * r > den {
        // sin(θ) = sin(π - θ)
        return sin_quarter(den - 2 * r, 2 * den);
    }
    sin_quarter(r, den)
}

fn sin_quarter<T: Real>(r: u128, den: u128) -> T {
    if 8 * r > den {
        turn_angle::<T>(den - 4 * r, 4 * den).cos()
    } else {
        turn_angle::<T>(r, den).sin()
    }
}

/// Exact integer square root, `⌊√n⌋`.
pub fn isqrt(n: u128) -> u128 {
    if n < 2 {
        return n;
    }
    let mut x = (n as f64).sqrt() as u128;
    // float seed is within a few units; fix up exactly
    while x.checked_mul(x).map_or(true, |sq| sq > n) {
        x -= 1;
    }
    while (x + 1).checked_mul(x + 1).map_or(false, |sq| sq <= n) {
        x += 1;
    }
    x
}

/// Returns `Some(s)` when `n == s²`.
pub fn exact_sqrt(n: u128) -> Option<u128> {
    let s = isqrt(n);
    (s * s == n).then_some(s)
}

/// Finds the unique sign change of `f` on `[lo, hi]` by bisection.
///
/// Returns `None` if `f(lo)` and `f(hi)` have the same sign.
pub fn bisect<T: Real>(f: impl Fn(T) -> T, mut lo: T, mut hi: T, iterations: u32) -> Option<T> {
    let zero = T::zero();
    let two = T::one() + T::one();
    let flo = f(lo);
    let fhi = f(hi);
    if flo == zero {
        return Some(lo);
    }
    if fhi == zero {
        return Some(hi);
    }
    if (flo < zero) == (fhi < zero) {
        return None;
    }
    let lo_negative = flo < zero;
    for _ in 0..iterations {
        let mid = (lo + hi) / two;
        let fm = f(mid);
        if fm == zero {
            return Some(mid);
        }
        if (fm < zero) == lo_negative {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Some((lo + hi) / two)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn turn_reduction_matches_direct_evaluation() {
        for den in [3u128, 7, 15, 64, 101, 1000] {
            for num in 0..3 * den {
                let direct = (2.0 * std::f64::consts::PI * num as f64 / den as f64).cos();
                let reduced: f64 = cos_turn(num, den);
                assert!((direct - reduced).abs() < 1e-12, "cos {num}/{den}");
                let direct = (2.0 * std::f64::consts::PI * num as f64 / den as f64).sin();
                let reduced: f64 = sin_turn(num, den);
                assert!((direct - reduced).abs() < 1e-12, "sin {num}/{den}");
            }
        }
    }

    #[test]
    fn exact_quarter_turns() {
        assert_eq!(cos_turn::<f64>(0, 5), 1.0);
        assert!(cos_turn::<f64>(1, 4).abs() < 1e-16);
        assert_eq!(cos_turn::<f64>(1, 2), -1.0);
        assert!(sin_turn::<f64>(1, 2).abs() < 1e-16);
    }

    #[test]
    fn f256_agrees_with_f64() {
        let a: f256 = cos_turn(3, 17);
        let b: f64 = cos_turn(3, 17);
        assert!((a.to_f64() - b).abs() < 1e-15);
        let s: f256 = f256::from_u128(2).sqrt();
        assert!((s.to_f64() - std::f64::consts::SQRT_2).abs() < 1e-15);
    }

    #[test]
    fn integer_square_roots() {
        assert_eq!(isqrt(0), 0);
        assert_eq!(isqrt(15), 3);
        assert_eq!(isqrt(16), 4);
        let big = 205409786624u128 * 205409786624u128;
        assert_eq!(isqrt(big), 205409786624);
        assert_eq!(isqrt(big - 1), 205409786623);
        assert_eq!(exact_sqrt(169), Some(13));
        assert_eq!(exact_sqrt(170), None);
        assert_eq!(isqrt(u128::MAX), u64::MAX as u128);
    }

    #[test]
    fn bisection_finds_sqrt2() {
        let r = bisect(|x: f64| x * x - 2.0, 1.0, 2.0, 80).unwrap();
        assert!((r - std::f64::consts::SQRT_2).abs() < 1e-15);
        assert!(bisect(|x: f64| x * x + 1.0, 1.0, 2.0, 10).is_none());
    }
}
