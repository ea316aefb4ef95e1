//! Ordinary/exceptional classification of odd orders and the exact value
//! of `l̂`, the largest covalency whose circulants are all Ramanujan.

mod profile;
mod thresholds;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::{self, in_j, trivial_bound, JWitness};
use crate::error::{Error, Result};
use crate::numtheory::{factorize, Factorization};
use crate::oracle::{self, OracleConfig};
use crate::scalar::{cos_turn, sin_turn, Real};
use crate::spectra::{ramanujan_bound, CayleySet, Modulus, NumericPolicy};
use crate::ExtReal;

pub use profile::{figure_profile, profile_samples, ProfilePoint};
pub use thresholds::{spectral_ordering, Quantity, SpectralOrdering, ThresholdRow, Thresholds};

/// Arithmetic shape of an order, as far as the classification cares.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "tag", rename_all = "snake_case")]
pub enum MKind {
    /// `m <= 13`, where every circulant of covalency up to `m - 2` is Ramanujan.
    SmallOrder,
    /// Prime in `J` (type I).
    Prime,
    /// `pq` in `J` with `p < q <= 4p - 5` (type II).
    Semiprime { p: u128, q: u128 },
    /// 25 or 49 (type III).
    PrimeSquare { p: u128 },
    OutsideJ,
    /// Any other composite in `J`; always ordinary.
    CompositeInJOther,
}

impl MKind {
    /// Short label used in tables: `I`, `II`, `III`, `outside_J`, …
    pub fn label(&self) -> &'static str {
        match self {
            MKind::SmallOrder => "small",
            MKind::Prime => "I",
            MKind::Semiprime { .. } => "II",
            MKind::PrimeSquare { .. } => "III",
            MKind::OutsideJ => "outside_J",
            MKind::CompositeInJOther => "composite_in_J_other",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Class {
    Ordinary,
    Exceptional,
    /// `m <= 13`: `l̂ = m - 2` and the `ε` dichotomy does not apply.
    AllRamanujan,
}

impl Class {
    pub fn label(&self) -> &'static str {
        match self {
            Class::Ordinary => "ordinary",
            Class::Exceptional => "exceptional",
            Class::AllRamanujan => "all_ramanujan",
        }
    }
}

/// The three candidate class maxima for a semiprime order.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Candidates<T> {
    pub mu0: T,
    pub mu1: T,
    pub mu2: T,
}

impl<T: Real> Candidates<T> {
    pub fn max(&self) -> T {
        self.mu0.max(self.mu1).max(self.mu2)
    }

    pub fn map<U>(self, f: impl Fn(T) -> U) -> Candidates<U> {
        Candidates {
            mu0: f(self.mu0),
            mu1: f(self.mu1),
            mu2: f(self.mu2),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub m: Modulus,
    pub l0: u128,
    pub kind: MKind,
    pub verdict: Class,
    /// 0 or 2; absent for `m <= 13`.
    pub epsilon: Option<u8>,
    pub hat_l: u128,
    /// Largest eigenvalue the decision rests on: the class maximum over
    /// covalency `l0 + 2` where it is known, otherwise the witness value.
    pub mu_hat: Option<f64>,
    /// Ramanujan bound for covalency `l0 + 2`.
    pub rb: Option<f64>,
    /// `rb - mu_hat`.
    pub margin: Option<f64>,
    pub candidates: Option<Candidates<f64>>,
    pub escalated: bool,
    /// `√(q/p)` lies strictly between the asymptotic thresholds for its `c`.
    pub near_threshold: bool,
    pub in_j: JWitness,
}

impl Verdict {
    pub fn is_exceptional(&self) -> bool {
        self.verdict == Class::Exceptional
    }
}

/// `μ^(0)`, `μ^(1)`, `μ^(2)` for `m = pq`, `p < q <= 4p - 5`.
pub fn mu_candidates<T: Real>(p: u128, q: u128, l0: u128) -> Result<Candidates<T>> {
    if p >= q {
        return Err(Error::invalid(format!("need p < q, got p = {p}, q = {q}")));
    }
    if q + 5 > 4 * p {
        return Err(Error::invalid(format!(
            "q = {q} >= 4p - 3; such orders are ordinary by a direct witness"
        )));
    }
    let l = l0 + 2;
    if l < q {
        return Err(Error::invalid(format!("l0 + 2 = {l} is smaller than q = {q}")));
    }
    let m = p
        .checked_mul(q)
        .ok_or_else(|| Error::overflow("p·q exceeds 128 bits"))?;
    let t = |v: u128| T::from_u128(v);
    let mu0 = sin_turn::<T>(l, 2 * m) / sin_turn::<T>(1, 2 * m);
    let mu1 = t(q) + t(l - q) * cos_turn::<T>(1, p);
    let mu2 = if l <= 3 * p {
        t(p) + t(l - p) * cos_turn::<T>(1, q)
    } else {
        let two = T::one() + T::one();
        t(p) + two * t(p) * cos_turn::<T>(1, q) + t(l - 3 * p) * cos_turn::<T>(2, q)
    };
    Ok(Candidates { mu0, mu1, mu2 })
}

/// Classifies an order whose factorization is computed internally
/// (orders at or above 2^64 that lie in `J` need [`classify_factored`]).
pub fn classify(m: Modulus) -> Result<Verdict> {
    classify_with(m, &NumericPolicy::default())
}

pub fn classify_with(m: Modulus, policy: &NumericPolicy) -> Result<Verdict> {
    decide(m, policy, || {
        let small = m.small().map_err(|_| {
            Error::invalid(format!(
                "{m} lies in J and exceeds 64 bits; supply its factorization"
            ))
        })?;
        factorize(small)
    })
}

/// Classification with caller-supplied prime factors.
pub fn classify_factored(f: &Factorization, policy: &NumericPolicy) -> Result<Verdict> {
    let m = Modulus::new(f.n)?;
    decide(m, policy, || Ok(f.clone()))
}

fn decide(
    m: Modulus,
    policy: &NumericPolicy,
    factor: impl FnOnce() -> Result<Factorization>,
) -> Result<Verdict> {
    policy.validate()?;
    let mm = m.get();
    let l0 = trivial_bound(m);
    let w = in_j(m);
    let mut v = Verdict {
        m,
        l0,
        kind: MKind::SmallOrder,
        verdict: Class::AllRamanujan,
        epsilon: None,
        hat_l: mm - 2,
        mu_hat: None,
        rb: None,
        margin: None,
        candidates: None,
        escalated: false,
        near_threshold: false,
        in_j: w.clone(),
    };
    if mm <= 13 {
        return Ok(v);
    }
    let l = l0 + 2;
    let rb = ramanujan_bound::<f64>(mm - l);
    v.rb = Some(rb);

    if !w.member {
        let (mu, margin, escalated) = sl_margin(m, l, policy);
        if margin >= 0.0 {
            return Err(Error::invariant(format!(
                "{m} lies outside J but S^({l}) is Ramanujan (margin {margin:e})"
            )));
        }
        v.kind = MKind::OutsideJ;
        return Ok(finish(v, false, mu, margin, escalated));
    }

    let f = factor()?;
    if f.n != mm {
        return Err(Error::invalid("factorization does not match the order"));
    }
    if f.is_prime() {
        let (mu, margin, escalated) = sl_margin(m, l, policy);
        if margin < 0.0 {
            return Err(Error::invariant(format!(
                "prime {m} in J has a non-Ramanujan S^({l}) (margin {margin:e})"
            )));
        }
        v.kind = MKind::Prime;
        return Ok(finish(v, true, mu, margin, escalated));
    }
    if f.factors.len() == 1 && f.factors[0].1 == 2 {
        let p = f.factors[0].0;
        if mm != 25 && mm != 49 {
            return Err(Error::invariant(format!("prime square {m} unexpectedly lies in J")));
        }
        let (mu, _) = oracle::class_max(m, l as u64, &OracleConfig::default())?;
        let margin = rb - mu;
        if margin < 0.0 {
            return Err(Error::invariant(format!("{m} should be exceptional")));
        }
        v.kind = MKind::PrimeSquare { p };
        return Ok(finish(v, true, mu, margin, false));
    }
    if f.factors.len() == 2 && f.big_omega() == 2 {
        let (p, q) = (f.factors[0].0, f.factors[1].0);
        if q + 5 <= 4 * p {
            return semiprime(v, p, q, policy);
        }
    }
    // smallest prime p and cofactor t >= 4p - 3: removing l0 + 2 multiples
    // of p gives |μ_t| = l0 + 2, which is at least the bound
    let p = f.smallest_prime().expect("composite");
    let t = mm / p;
    if t + 3 < 4 * p || l > t {
        return Err(Error::invariant(format!("no multiples-of-p witness for {m}")));
    }
    if l * l < 4 * (mm - l - 1) {
        return Err(Error::invariant(format!("witness for {m} does not reach the bound")));
    }
    v.kind = MKind::CompositeInJOther;
    Ok(finish(v, false, l as f64, rb - l as f64, false))
}

fn finish(mut v: Verdict, exceptional: bool, mu: f64, margin: f64, escalated: bool) -> Verdict {
    v.verdict = if exceptional {
        Class::Exceptional
    } else {
        Class::Ordinary
    };
    let eps = if exceptional { 2 } else { 0 };
    v.epsilon = Some(eps);
    v.hat_l = v.l0 + eps as u128;
    v.mu_hat = Some(mu);
    v.margin = Some(margin);
    v.escalated = escalated;
    v
}

/// `|μ_1(S^(l))|` and `rb - |μ_1|` with the escalation policy applied.
fn sl_margin(m: Modulus, l: u128, policy: &NumericPolicy) -> (f64, f64, bool) {
    fn eval<T: Real>(m: u128, l: u128) -> (T, T) {
        let mu = sin_turn::<T>(l, 2 * m) / sin_turn::<T>(1, 2 * m);
        (mu, ramanujan_bound::<T>(m - l))
    }
    let mm = m.get();
    let (mu, rb) = eval::<f64>(mm, l);
    let r = policy.resolve(rb - mu, rb, || {
        let (mu, rb) = eval::<ExtReal>(mm, l);
        rb - mu
    });
    (mu, r.value, r.escalated)
}

fn semiprime(mut v: Verdict, p: u128, q: u128, policy: &NumericPolicy) -> Result<Verdict> {
    let mm = v.m.get();
    let l = v.l0 + 2;
    let c64: Candidates<f64> = mu_candidates(p, q, v.l0)?;
    let rb = ramanujan_bound::<f64>(mm - l);
    let r = policy.resolve(rb - c64.max(), rb, || {
        let c: Candidates<ExtReal> = mu_candidates(p, q, v.l0).expect("checked in f64 pass");
        ramanujan_bound::<ExtReal>(mm - l) - c.max()
    });
    let cands = if r.escalated {
        let c: Candidates<ExtReal> = mu_candidates(p, q, v.l0)?;
        c.map(|x| x.to_f64())
    } else {
        c64
    };
    v.kind = MKind::Semiprime { p, q };
    v.candidates = Some(cands);
    if let Some(c) = v.in_j.c() {
        let x = (q as f64 / p as f64).sqrt();
        let row = Thresholds::row(c);
        v.near_threshold = row.xbar1 < x && x < row.xunder2;
    }
    Ok(finish(v, r.value >= 0.0, cands.max(), r.value, r.escalated))
}

/// Witness complement for an ordinary composite order: `l0 + 2` multiples
/// of the smallest prime `p`, which needs the cofactor `t = m/p >= 4p - 3`.
pub fn ordinary_witness(m: Modulus) -> Result<CayleySet> {
    let mm = m.small()?;
    let f = factorize(mm)?;
    if f.is_prime() {
        return Err(Error::invalid(format!("{m} is prime")));
    }
    let p = f.smallest_prime().expect("composite") as u64;
    let t = mm / p;
    if t + 3 < 4 * p {
        return Err(Error::invalid(format!(
            "{m} = {p}·{t} has cofactor below 4p - 3; no multiples-of-p witness"
        )));
    }
    let l = trivial_bound(m) as u64 + 2;
    let r = (l - 1) / 2;
    let residues = (0..=r as i128).flat_map(|i| [i * p as i128, -i * p as i128]);
    CayleySet::new(m, residues)
}

/// Every odd order in `[lo, hi]`, classified in parallel, sorted by `m`.
pub fn scan(lo: u128, hi: u128, policy: &NumericPolicy) -> Result<Vec<Verdict>> {
    let lo = lo.max(3) | 1;
    if hi < lo {
        return Ok(Vec::new());
    }
    let count = (hi - lo) / 2 + 1;
    (0..count)
        .into_par_iter()
        .map(|i| classify_with(Modulus::new(lo + 2 * i)?, policy))
        .collect()
}

/// Members of `J` up to `x` in increasing order.
pub fn j_members_up_to(x: u128) -> Vec<u128> {
    let mut out: Vec<u128> = bounds::SMALL_WINDOW.filter(|&m| m % 2 == 1 && m <= x).collect();
    for c in bounds::J_CONSTANTS {
        let mut k = bounds::min_k(c);
        while let Some(m) = bounds::f_c(c, k).filter(|&m| m <= x) {
            out.push(m);
            k += 1;
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

/// All exceptional orders up to `x` (only members of `J` can qualify).
pub fn exceptional_orders(x: u128, policy: &NumericPolicy) -> Result<Vec<Verdict>> {
    let found: Vec<Verdict> = j_members_up_to(x)
        .into_par_iter()
        .map(|m| classify_with(Modulus::new(m)?, policy))
        .collect::<Result<_>>()?;
    Ok(found.into_iter().filter(Verdict::is_exceptional).collect())
}
