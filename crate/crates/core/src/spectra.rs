//! Eigenvalues of odd-order circulant graphs, the Ramanujan predicate and
//! the canonical sets `S^(l)` that remove the residues nearest to zero.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numtheory::factorize;
use crate::scalar::{cos_turn, sin_turn, Real};
use crate::ExtReal;

/// An odd order `m >= 3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "u128", into = "u128")]
pub struct Modulus(u128);

impl Modulus {
    // keeps 4·(2m) representable for the exact turn reduction
    const MAX: u128 = 1 << 124;

    pub fn new(m: u128) -> Result<Self> {
        if m < 3 || m % 2 == 0 {
            return Err(Error::invalid(format!("order must be odd and at least 3, got {m}")));
        }
        if m > Self::MAX {
            return Err(Error::invalid(format!("order {m} is too large")));
        }
        Ok(Modulus(m))
    }

    pub fn get(self) -> u128 {
        self.0
    }

    /// The order as `u64`, for operations that materialize residues.
    pub fn small(self) -> Result<u64> {
        u64::try_from(self.0)
            .map_err(|_| Error::invalid(format!("order {} does not fit in 64 bits", self.0)))
    }
}

impl TryFrom<u128> for Modulus {
    type Error = Error;
    fn try_from(m: u128) -> Result<Self> {
        Modulus::new(m)
    }
}

impl From<Modulus> for u128 {
    fn from(m: Modulus) -> u128 {
        m.0
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// `a·b mod n` without intermediate overflow.
pub(crate) fn mul_mod_u128(a: u128, b: u128, n: u128) -> u128 {
    let (a, mut b) = (a % n, b % n);
    if let Some(p) = a.checked_mul(b) {
        return p % n;
    }
    let mut acc = 0u128;
    let mut x = a;
    while b > 0 {
        if b & 1 == 1 {
            acc = add_mod(acc, x, n);
        }
        x = add_mod(x, x, n);
        b >>= 1;
    }
    acc
}

fn add_mod(a: u128, b: u128, n: u128) -> u128 {
    if a >= n - b {
        a - (n - b)
    } else {
        a + b
    }
}

/// A symmetric generating set `S` of `Z_m`, stored through its complement
/// `T = Z_m \ S` (the removed residues, always containing 0).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CayleySet {
    m: Modulus,
    complement: Vec<u64>,
}

impl CayleySet {
    /// Validates and canonicalizes a complement given as signed residues.
    pub fn new(m: Modulus, residues: impl IntoIterator<Item = i128>) -> Result<Self> {
        let mm = m.small()?;
        let mut complement: Vec<u64> = residues
            .into_iter()
            .map(|r| r.rem_euclid(mm as i128) as u64)
            .collect();
        complement.sort_unstable();
        complement.dedup();
        Self::from_sorted(m, complement)
    }

    pub(crate) fn from_sorted(m: Modulus, complement: Vec<u64>) -> Result<Self> {
        let mm = m.small()?;
        if complement.first() != Some(&0) {
            return Err(Error::invalid("complement must contain 0"));
        }
        for &b in &complement {
            if b >= mm {
                return Err(Error::invalid(format!("residue {b} out of range")));
            }
            if complement.binary_search(&((mm - b) % mm)).is_err() {
                return Err(Error::invalid(format!("complement is not closed under negation at {b}")));
            }
        }
        let l = complement.len() as u64;
        if l > mm - 2 {
            return Err(Error::invalid(format!("covalency {l} exceeds m - 2 = {}", mm - 2)));
        }
        let set = CayleySet { m, complement };
        if !set.generates()? {
            return Err(Error::invalid("connection set does not generate Z_m"));
        }
        Ok(set)
    }

    // S lies in the subgroup pZ_m exactly when every non-multiple of p is removed.
    fn generates(&self) -> Result<bool> {
        let mm = self.m.small()?;
        for p in factorize(mm)?.primes() {
            let p = p as u64;
            let non_multiples = mm - mm / p;
            if self.covalency() >= non_multiples {
                let removed = self.complement.iter().filter(|&&b| b % p != 0).count() as u64;
                if removed == non_multiples {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    pub fn modulus(&self) -> Modulus {
        self.m
    }

    /// Sorted residues of the complement in `[0, m)`.
    pub fn complement(&self) -> &[u64] {
        &self.complement
    }

    /// `l = |T|`.
    pub fn covalency(&self) -> u64 {
        self.complement.len() as u64
    }

    /// `|S| = m - l`.
    pub fn valency(&self) -> u64 {
        self.m.get() as u64 - self.covalency()
    }
}

/// All eigenvalues of a circulant together with its Ramanujan bound.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Spectrum<T> {
    pub m: Modulus,
    pub valency: u64,
    pub values: Vec<T>,
    pub mu_max: T,
    pub rb: T,
}

/// `2·sqrt(valency - 1)`.
pub fn ramanujan_bound<T: Real>(valency: u128) -> T {
    let two = T::one() + T::one();
    two * T::from_u128(valency.saturating_sub(1)).sqrt()
}

/// `μ_j = -Σ_{b∈T} cos(2πbj/m)` for `j >= 1`, and `m - l` for `j = 0`.
pub fn eigenvalue<T: Real>(set: &CayleySet, j: u64) -> Result<T> {
    let m = set.m.small()?;
    if j >= m {
        return Err(Error::invalid(format!("eigenvalue index {j} out of range for m = {m}")));
    }
    if j == 0 {
        return Ok(T::from_u64(set.valency()));
    }
    Ok(eigenvalue_unchecked(set, j))
}

fn eigenvalue_unchecked<T: Real>(set: &CayleySet, j: u64) -> T {
    let m = set.m.get();
    let mut acc = T::zero();
    for &b in &set.complement {
        acc = acc + cos_turn::<T>(b as u128 * j as u128 % m, m);
    }
    -acc
}

/// Full spectrum; only `j <= (m-1)/2` is evaluated and mirrored.
pub fn spectrum<T: Real>(set: &CayleySet) -> Result<Spectrum<T>> {
    let m = set.m.small()?;
    let mut values = vec![T::zero(); m as usize];
    values[0] = T::from_u64(set.valency());
    let mut mu_max = T::zero();
    for j in 1..=(m - 1) / 2 {
        let v: T = eigenvalue_unchecked(set, j);
        values[j as usize] = v;
        values[(m - j) as usize] = v;
        mu_max = mu_max.max(v.abs());
    }
    Ok(Spectrum {
        m: set.m,
        valency: set.valency(),
        values,
        mu_max,
        rb: ramanujan_bound(set.valency() as u128),
    })
}

/// Tolerance and precision settings for every close numeric comparison.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NumericPolicy {
    /// Comparisons closer than this are recomputed in extended precision.
    pub escalation_margin: f64,
    /// Requested significant digits for the extended path.
    pub extended_digits: u32,
    /// Skip the double-precision pass entirely.
    pub always_extended: bool,
}

impl Default for NumericPolicy {
    fn default() -> Self {
        NumericPolicy {
            escalation_margin: 1e-9,
            extended_digits: 50,
            always_extended: false,
        }
    }
}

impl NumericPolicy {
    pub const MIN_EXTENDED_DIGITS: u32 = 30;
    pub const MAX_EXTENDED_DIGITS: u32 = <ExtReal as Real>::DIGITS;

    pub fn new(escalation_margin: f64, extended_digits: u32) -> Result<Self> {
        let p = NumericPolicy {
            escalation_margin,
            extended_digits,
            always_extended: false,
        };
        p.validate()?;
        Ok(p)
    }

    /// A policy that evaluates everything in extended precision.
    pub fn extended(extended_digits: u32) -> Result<Self> {
        let mut p = Self::new(1e-9, extended_digits)?;
        p.always_extended = true;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.escalation_margin > 0.0 && self.escalation_margin.is_finite()) {
            return Err(Error::invalid("escalation margin must be positive"));
        }
        if !(Self::MIN_EXTENDED_DIGITS..=Self::MAX_EXTENDED_DIGITS).contains(&self.extended_digits) {
            return Err(Error::invalid(format!(
                "extended precision must be between {} and {} digits, got {}",
                Self::MIN_EXTENDED_DIGITS,
                Self::MAX_EXTENDED_DIGITS,
                self.extended_digits
            )));
        }
        Ok(())
    }

    /// Resolves the sign of a quantity computed once in `f64`. `scale` is the
    /// magnitude of the terms that were subtracted, which bounds the rounding
    /// error; if the result is not clearly away from zero, `extended` is run.
    pub fn resolve(&self, value: f64, scale: f64, extended: impl FnOnce() -> ExtReal) -> Resolved {
        let rounding = scale.abs() * 64.0 * f64::EPSILON;
        if self.always_extended || !value.is_finite() || value.abs() < self.escalation_margin.max(rounding) {
            Resolved {
                value: extended().to_f64(),
                escalated: true,
            }
        } else {
            Resolved {
                value,
                escalated: false,
            }
        }
    }
}

/// A signed quantity together with how it was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Resolved {
    pub value: f64,
    pub escalated: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Decision {
    Ramanujan,
    NotRamanujan,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RamanujanCheck {
    pub decision: Decision,
    /// `rb - mu_max`; non-negative exactly when the graph is Ramanujan.
    pub margin: f64,
    pub escalated: bool,
}

/// Decides `mu_max <= rb`, escalating near-ties to extended precision.
pub fn is_ramanujan(set: &CayleySet, policy: &NumericPolicy) -> Result<RamanujanCheck> {
    policy.validate()?;
    let s: Spectrum<f64> = spectrum(set)?;
    let r = policy.resolve(s.rb - s.mu_max, s.rb, || {
        let e: Spectrum<ExtReal> = spectrum(set).expect("validated above");
        e.rb - e.mu_max
    });
    Ok(RamanujanCheck {
        decision: if r.value >= 0.0 {
            Decision::Ramanujan
        } else {
            Decision::NotRamanujan
        },
        margin: r.value,
        escalated: r.escalated,
    })
}

/// Complement `{0, ±1, …, ±(l-1)/2}` of the canonical set `S^(l)`.
pub fn sl_complement(m: Modulus, l: u64) -> Result<CayleySet> {
    let mm = m.small()?;
    if l % 2 == 0 || l == 0 || l > mm - 2 {
        return Err(Error::invalid(format!("covalency must be odd in [1, {}], got {l}", mm - 2)));
    }
    let r = (l - 1) / 2;
    let mut t: Vec<u64> = (0..=r).collect();
    t.extend((mm - r..mm).filter(|&b| b > r));
    CayleySet::from_sorted(m, t)
}

/// Closed form `μ_j(S^(l)) = -sin(πjl/m) / sin(πj/m)`, valid for any order.
pub fn mu_sl_closed<T: Real>(m: Modulus, l: u128, j: u128) -> Result<T> {
    let mm = m.get();
    if l % 2 == 0 {
        return Err(Error::invalid(format!("covalency must be odd, got {l}")));
    }
    if j % mm == 0 {
        return Err(Error::invalid("closed form is undefined for j ≡ 0 mod m"));
    }
    let den = 2 * mm;
    let num = sin_turn::<T>(mul_mod_u128(j, l, den), den);
    let base = sin_turn::<T>(j % den, den);
    Ok(-(num / base))
}
