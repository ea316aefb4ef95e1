//! Primality, factorization and prime sieving for 64-bit integers.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[inline]
pub(crate) fn mul_mod(a: u64, b: u64, n: u64) -> u64 {
    ((a as u128 * b as u128) % n as u128) as u64
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, n: u64) -> u64 {
    let mut acc = 1 % n;
    base %= n;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, n);
        }
        base = mul_mod(base, base, n);
        exp >>= 1;
    }
    acc
}

// These twelve bases make Miller-Rabin deterministic for every n < 2^64.
const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Deterministic primality test for 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &WITNESSES {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let s = d.trailing_zeros();
    d >>= s;
    'witness: for &a in &WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Primality for a `u128`, available only below 2^64.
pub fn is_prime_u128(n: u128) -> Result<bool> {
    u64::try_from(n)
        .map(is_prime)
        .map_err(|_| Error::invalid(format!("primality of {n} is outside the 64-bit range")))
}

/// Prime factorization with strictly increasing primes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Factorization {
    pub n: u128,
    pub factors: Vec<(u128, u32)>,
}

impl Factorization {
    /// Builds a factorization from caller-supplied prime powers, checking
    /// that every prime is a genuine (64-bit) prime and the list is sorted.
    pub fn from_factors(factors: Vec<(u128, u32)>) -> Result<Self> {
        let mut n: u128 = 1;
        let mut last = 1u128;
        for &(p, e) in &factors {
            if p <= last {
                return Err(Error::invalid("factor primes must be strictly increasing"));
            }
            if e == 0 {
                return Err(Error::invalid("factor exponents must be positive"));
            }
            if !is_prime_u128(p)? {
                return Err(Error::invalid(format!("{p} is not prime")));
            }
            for _ in 0..e {
                n = n
                    .checked_mul(p)
                    .ok_or_else(|| Error::overflow("factor product exceeds 128 bits"))?;
            }
            last = p;
        }
        Ok(Factorization { n, factors })
    }

    pub fn is_prime(&self) -> bool {
        self.factors.len() == 1 && self.factors[0].1 == 1
    }

    pub fn omega(&self) -> usize {
        self.factors.len()
    }

    /// Total number of prime factors counted with multiplicity.
    pub fn big_omega(&self) -> u32 {
        self.factors.iter().map(|&(_, e)| e).sum()
    }

    pub fn smallest_prime(&self) -> Option<u128> {
        self.factors.first().map(|&(p, _)| p)
    }

    pub fn primes(&self) -> impl Iterator<Item = u128> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Pollard's rho with Brent's cycle detection. `n` must be an odd composite.
fn pollard_brent(n: u64) -> u64 {
    let mut c = 1u64;
    loop {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut g, mut q) = (0u64, 2u64, 1u64, 1u64);
        let mut ys = y;
        let mut r = 1u64;
        const BATCH: u64 = 128;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..BATCH.min(r - k) {
                    y = f(y);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                g = gcd(q, n);
                k += BATCH;
            }
            r *= 2;
        }
        if g == n {
            // batch overshot; walk the last stretch one step at a time
            loop {
                ys = f(ys);
                g = gcd(x.abs_diff(ys), n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return g;
        }
        c += 1;
    }
}

fn split_into(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime(n) {
        out.push(n);
        return;
    }
    let d = pollard_brent(n);
    split_into(d, out);
    split_into(n / d, out);
}

/// Complete factorization of `1 <= n < 2^64`.
pub fn factorize(n: u64) -> Result<Factorization> {
    if n == 0 {
        return Err(Error::invalid("cannot factor 0"));
    }
    let mut primes = Vec::new();
    let mut rest = n;
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47] {
        while rest % p == 0 {
            primes.push(p);
            rest /= p;
        }
    }
    split_into(rest, &mut primes);
    primes.sort_unstable();
    let mut factors: Vec<(u128, u32)> = Vec::new();
    for p in primes {
        match factors.last_mut() {
            Some((q, e)) if *q == p as u128 => *e += 1,
            _ => factors.push((p as u128, 1)),
        }
    }
    Ok(Factorization {
        n: n as u128,
        factors,
    })
}

/// All primes `<= limit` by a plain sieve of Eratosthenes.
pub fn primes_up_to(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i.saturating_mul(i);
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

/// Calls `f` on every prime `p <= limit` in increasing order using a
/// segmented sieve, so memory stays at `O(sqrt(limit))`.
pub fn for_each_prime(limit: u64, mut f: impl FnMut(u64)) {
    if limit < 2 {
        return;
    }
    let root = crate::scalar::isqrt(limit as u128) as u64;
    let base = primes_up_to(root);
    for &p in &base {
        f(p);
    }
    const SEGMENT: u64 = 1 << 18;
    let mut lo = root + 1;
    let mut marks = vec![false; SEGMENT as usize];
    while lo <= limit {
        let hi = (lo + SEGMENT - 1).min(limit);
        let len = (hi - lo + 1) as usize;
        marks[..len].iter_mut().for_each(|m| *m = false);
        for &p in &base {
            let start = (lo.div_ceil(p) * p).max(p * p);
            let mut j = start;
            while j <= hi {
                marks[(j - lo) as usize] = true;
                j += p;
            }
        }
        for (i, &m) in marks[..len].iter().enumerate() {
            if !m {
                f(lo + i as u64);
            }
        }
        lo = hi + 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trial_is_prime(n: u64) -> bool {
        n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
    }

    #[test]
    fn miller_rabin_matches_trial_division() {
        for n in 0..20_000 {
            assert_eq!(is_prime(n), trial_is_prime(n), "{n}");
        }
    }

    #[test]
    fn known_values() {
        assert!(is_prime(181));
        assert!(!is_prime(1));
        assert!(!is_prime(19729));
        assert!(is_prime(18446744073709551557)); // largest 64-bit prime
        assert!(!is_prime(3215031751)); // strong pseudoprime to bases 2,3,5,7
        assert!(is_prime(407634920449));
    }

    #[test]
    fn factorizations() {
        let f = factorize(35).unwrap();
        assert_eq!(f.factors, vec![(5, 1), (7, 1)]);
        assert_eq!(factorize(27).unwrap().factors, vec![(3, 3)]);
        assert_eq!(factorize(19729).unwrap().factors, vec![(109, 1), (181, 1)]);
        assert_eq!(factorize(1).unwrap().factors, vec![]);
        let big = 103507276549u64 * 3;
        assert_eq!(factorize(big).unwrap().factors, vec![(3, 1), (103507276549, 1)]);
        let semi = 4294967291u64 * 4294967279;
        assert_eq!(
            factorize(semi).unwrap().factors,
            vec![(4294967279, 1), (4294967291, 1)]
        );
    }

    #[test]
    fn supplied_factors_are_checked() {
        let f = Factorization::from_factors(vec![(103507276549, 1), (407634920449, 1)]).unwrap();
        assert_eq!(f.n, 103507276549u128 * 407634920449);
        assert!(Factorization::from_factors(vec![(7, 1), (5, 1)]).is_err());
        assert!(Factorization::from_factors(vec![(9, 1)]).is_err());
    }

    #[test]
    fn segmented_sieve_agrees_with_plain_sieve() {
        for limit in [0u64, 1, 2, 10, 97, 1000, 300_000, 600_001] {
            let mut seg = Vec::new();
            for_each_prime(limit, |p| seg.push(p));
            assert_eq!(seg, primes_up_to(limit), "limit {limit}");
        }
    }
}
