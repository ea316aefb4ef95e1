//! Asymptotic threshold constants for semiprime orders and the ordering of
//! the candidate maxima they predict.

use serde::{Deserialize, Serialize};

use crate::bounds::{cprime, in_j, trivial_bound, J_CONSTANTS};
use crate::error::{Error, Result};
use crate::scalar::bisect;
use crate::spectra::{ramanujan_bound, Modulus};

use super::{mu_candidates, Candidates};

const PI: f64 = std::f64::consts::PI;
const ITER: u32 = 200;

fn root(f: impl Fn(f64) -> f64) -> f64 {
    bisect(f, 1.0, 2.0, ITER).expect("sign change on (1, 2)")
}

/// Per-`c` constants: `x̄1(c) = 2 − c'/8π²`, `γ5(c)`, `x̲2(c) = 2 − c'/32π²`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThresholdRow {
    pub c: i32,
    pub xbar1: f64,
    pub gamma5: f64,
    pub xunder2: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Thresholds {
    /// Roots in `(1, 2)` of `2x³−6x+3`, `x³−12x+15`, `x⁶−2x⁵+8x−10`, `3x³−6x²+2`.
    pub gamma: [f64; 4],
    pub rows: Vec<ThresholdRow>,
    /// `x1 = x̄1(−5)`, `x2 = x̲2(5)`.
    pub x1: f64,
    pub x2: f64,
    /// `ξ1 = x1²`, `ξ2 = x2²`.
    pub xi1: f64,
    pub xi2: f64,
}

impl Thresholds {
    pub fn compute() -> Self {
        let gamma = [
            root(|x| 2.0 * x.powi(3) - 6.0 * x + 3.0),
            root(|x| x.powi(3) - 12.0 * x + 15.0),
            root(|x| x.powi(6) - 2.0 * x.powi(5) + 8.0 * x - 10.0),
            root(|x| 3.0 * x.powi(3) - 6.0 * x * x + 2.0),
        ];
        let rows: Vec<ThresholdRow> = J_CONSTANTS.iter().map(|&c| Self::row(c)).collect();
        let x1 = Self::row(-5).xbar1;
        let x2 = Self::row(5).xunder2;
        Thresholds {
            gamma,
            rows,
            x1,
            x2,
            xi1: x1 * x1,
            xi2: x2 * x2,
        }
    }

    pub fn row(c: i32) -> ThresholdRow {
        let cp = cprime(c) as f64;
        let pi2 = PI * PI;
        ThresholdRow {
            c,
            xbar1: 2.0 - cp / (8.0 * pi2),
            gamma5: root(|x| 8.0 * pi2 * x.powi(3) - 16.0 * pi2 * x * x + cp),
            xunder2: 2.0 - cp / (32.0 * pi2),
        }
    }

    /// Regime 1..=6 of `x = √(q/p)` for the constant `c`.
    pub fn regime(&self, c: i32, x: f64) -> u8 {
        let g5 = Self::row(c).gamma5;
        let bounds = [self.gamma[0], self.gamma[1], self.gamma[2], self.gamma[3], g5];
        1 + bounds.iter().filter(|&&b| x > b).count() as u8
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Quantity {
    Mu0,
    Mu1,
    Mu2,
    Rb,
}

use Quantity::{Mu0, Mu1, Mu2, Rb};

/// Ascending orders of `(μ^(0), μ^(1), μ^(2), RB)` for large `k` in each regime.
pub const REGIME_ORDER: [[Quantity; 4]; 6] = [
    [Mu1, Mu2, Mu0, Rb],
    [Mu1, Mu0, Mu2, Rb],
    [Mu1, Mu2, Mu0, Rb],
    [Mu2, Mu1, Mu0, Rb],
    [Mu2, Mu0, Mu1, Rb],
    [Mu2, Mu0, Rb, Mu1],
];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectralOrdering {
    pub p: u128,
    pub q: u128,
    pub c: i32,
    pub x: f64,
    pub regime: u8,
    pub predicted: [Quantity; 4],
    pub computed: [Quantity; 4],
    /// `μ^(i) − RB`.
    pub differences: Candidates<f64>,
}

impl SpectralOrdering {
    pub fn matches(&self) -> bool {
        self.predicted == self.computed
    }

    /// Whether each `μ^(i)` sits on the same side of `RB` as predicted.
    pub fn signs_match(&self) -> bool {
        let above = |order: &[Quantity; 4], q: Quantity| {
            order.iter().position(|&x| x == q) > order.iter().position(|&x| x == Rb)
        };
        [Mu0, Mu1, Mu2]
            .iter()
            .all(|&q| above(&self.predicted, q) == above(&self.computed, q))
    }
}

/// The regime of `x = √(q/p)` and the order the candidates actually take.
/// `pq` must lie in `J` through some `f_c`, which fixes `γ5(c)`.
pub fn spectral_ordering(p: u128, q: u128) -> Result<SpectralOrdering> {
    let m = p
        .checked_mul(q)
        .ok_or_else(|| Error::overflow("p·q exceeds 128 bits"))?;
    let md = Modulus::new(m)?;
    let c = in_j(md)
        .c()
        .ok_or_else(|| Error::invalid(format!("{p}·{q} = {m} is not of the form k² + 5k + c")))?;
    let l0 = trivial_bound(md);
    // the differences are tiny against values of size √m
    let cands: Candidates<crate::ExtReal> = mu_candidates(p, q, l0)?;
    let rb = ramanujan_bound::<crate::ExtReal>(m - l0 - 2);
    let differences = cands.map(|v| crate::scalar::Real::to_f64(v - rb));
    let mut computed = [(differences.mu0, Mu0), (differences.mu1, Mu1), (differences.mu2, Mu2), (0.0, Rb)];
    computed.sort_by(|a, b| a.0.total_cmp(&b.0));
    let x = (q as f64 / p as f64).sqrt();
    let regime = Thresholds::compute().regime(c, x);
    Ok(SpectralOrdering {
        p,
        q,
        c,
        x,
        regime,
        predicted: REGIME_ORDER[regime as usize - 1],
        computed: computed.map(|(_, q)| q),
        differences,
    })
}
