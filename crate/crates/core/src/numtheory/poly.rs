use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Integer polynomial, coefficients stored lowest degree first.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Poly {
    coeffs: Vec<i128>,
}

impl Poly {
    /// From coefficients listed lowest degree first; trailing zeros are dropped.
    pub fn from_ascending(mut coeffs: Vec<i128>) -> Self {
        while coeffs.len() > 1 && coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(0);
        }
        Poly { coeffs }
    }

    /// From coefficients listed highest degree first, as in `1,5,5` for k²+5k+5.
    pub fn from_descending(coeffs: &[i128]) -> Self {
        Self::from_ascending(coeffs.iter().rev().copied().collect())
    }

    /// Parses a comma-separated list of integers, highest degree first.
    pub fn parse_descending(s: &str) -> Result<Self> {
        let coeffs = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<i128>()
                    .map_err(|_| Error::invalid(format!("bad polynomial coefficient {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        if coeffs.is_empty() {
            return Err(Error::invalid("empty coefficient list"));
        }
        Ok(Self::from_descending(&coeffs))
    }

    /// `k² + 5k + c`.
    pub fn f_c(c: i128) -> Self {
        Self::from_ascending(vec![c, 5, 1])
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs_ascending(&self) -> &[i128] {
        &self.coeffs
    }

    /// Exact evaluation, `None` on overflow.
    pub fn eval(&self, x: i128) -> Option<i128> {
        self.coeffs
            .iter()
            .rev()
            .try_fold(0i128, |acc, &c| acc.checked_mul(x)?.checked_add(c))
    }

    pub fn eval_mod(&self, x: u64, p: u64) -> u64 {
        let p128 = p as i128;
        let x = (x % p) as i128;
        let mut acc = 0i128;
        for &c in self.coeffs.iter().rev() {
            acc = (acc * x + c.rem_euclid(p128)) % p128;
        }
        acc as u64
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (deg, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 && !(first && deg == 0) {
                continue;
            }
            let mag = c.unsigned_abs();
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c < 0 { '-' } else { '+' })?;
            }
            match (deg, mag) {
                (0, _) => write!(f, "{mag}")?,
                (1, 1) => write!(f, "k")?,
                (1, _) => write!(f, "{mag}k")?,
                (_, 1) => write!(f, "k^{deg}")?,
                _ => write!(f, "{mag}k^{deg}")?,
            }
            first = false;
        }
        Ok(())
    }
}
