//! Exhaustive ground truth: enumerate every Cayley set of a covalency class
//! and read off class maxima and `l̂` directly.
//!
//! A complement is `{0}` plus a choice of negation pairs `{b, m − b}`,
//! `1 <= b <= (m − 1)/2`, encoded as a bitmask over the pair slots.

use std::sync::atomic::{AtomicUsize, Ordering};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::trivial_bound;
use crate::classify::{mu_candidates, Candidates};
use crate::error::{Error, Result};
use crate::numtheory::factorize;
use crate::scalar::{cos_turn, Real};
use crate::spectra::{ramanujan_bound, spectrum, CayleySet, Modulus, NumericPolicy};
use crate::ExtReal;

/// Largest order the bitmask enumeration supports (127 pair slots).
pub const MAX_ORDER: u64 = 255;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleConfig {
    /// Refuse classes with more complements than this.
    pub budget: u128,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig { budget: 100_000_000 }
    }
}

pub(crate) fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // exact at every step: acc·(n−i) is divisible by (i+1)
        acc = acc.saturating_mul(n - i) / (i + 1);
    }
    acc
}

/// Number of complements of covalency `l` before the generation filter.
pub fn class_size(m: Modulus, l: u64) -> u128 {
    binomial((m.get() - 1) / 2, (l as u128).saturating_sub(1) / 2)
}

/// Depth-first search over `r`-subsets of pair slots. Row `b` of `cos` holds
/// the real parts of the nontrivial characters (one per conjugate pair) at
/// slot `b`, so a complement `{0} ∪ slots` has eigenvalues `−1 − 2·Σ rows`.
pub(crate) struct SlotSearch {
    n: usize,
    chars: usize,
    cos: Vec<f64>,
    // slot masks whose coverage means S sits inside a maximal subgroup
    nongen: Vec<u128>,
}

impl SlotSearch {
    pub(crate) fn new(n: usize, chars: usize, cos: Vec<f64>, nongen: Vec<u128>) -> Self {
        debug_assert!(n <= 127 && cos.len() == n * chars);
        SlotSearch { n, chars, cos, nongen }
    }

    pub(crate) fn slots(&self) -> usize {
        self.n
    }

    pub(crate) fn generating(&self, mask: u128) -> bool {
        self.nongen.iter().all(|&g| mask & g != g)
    }

    /// `μ` of the complement `{0} ∪ mask`.
    pub(crate) fn mu_of(&self, mask: u128) -> f64 {
        let w = self.chars;
        let mut sums = vec![0.0f64; w];
        for b in (0..self.n).filter(|&b| mask >> b & 1 == 1) {
            for (s, &x) in sums.iter_mut().zip(&self.cos[b * w..(b + 1) * w]) {
                *s += x;
            }
        }
        sums.iter().fold(0.0f64, |acc, &s| acc.max((1.0 + 2.0 * s).abs()))
    }

    /// Visits every generating `r`-subset whose smallest slot is `first`
    /// (1-based), passing the mask and `μ`. Stops when `visit` returns `false`.
    fn scan_block(&self, r: usize, first: usize, visit: &mut impl FnMut(u128, f64) -> bool) -> bool {
        let w = self.chars;
        let mut stack = vec![0.0f64; r * w];
        stack[..w].copy_from_slice(&self.cos[(first - 1) * w..first * w]);
        self.descend(r, 1, first + 1, 1u128 << (first - 1), &mut stack, visit)
    }

    fn descend(
        &self,
        r: usize,
        depth: usize,
        start: usize,
        mask: u128,
        stack: &mut [f64],
        visit: &mut impl FnMut(u128, f64) -> bool,
    ) -> bool {
        let w = self.chars;
        if depth == r {
            if !self.generating(mask) {
                return true;
            }
            let sums = &stack[(r - 1) * w..r * w];
            let mu = sums.iter().fold(0.0f64, |acc, &s| acc.max((1.0 + 2.0 * s).abs()));
            return visit(mask, mu);
        }
        for b in start..=self.n + 1 - (r - depth) {
            let (prev, cur) = stack.split_at_mut(depth * w);
            let prev = &prev[(depth - 1) * w..];
            let row = &self.cos[(b - 1) * w..b * w];
            for ((c, &p), &x) in cur[..w].iter_mut().zip(prev).zip(row) {
                *c = p + x;
            }
            if !self.descend(r, depth + 1, b + 1, mask | 1 << (b - 1), stack, visit) {
                return false;
            }
        }
        true
    }

    /// Calls `visit` on every generating `r`-subset in lexicographic order.
    pub(crate) fn for_each(&self, r: usize, mut visit: impl FnMut(u128, f64)) {
        if r == 0 {
            if self.generating(0) {
                visit(0, self.mu_of(0));
            }
            return;
        }
        for first in 1..=self.n + 1 - r {
            self.scan_block(r, first, &mut |mask, mu| {
                visit(mask, mu);
                true
            });
        }
    }

    /// Largest `μ` over generating `r`-subsets; ties go to the
    /// lexicographically first subset.
    pub(crate) fn max(&self, r: usize) -> Option<(f64, u128)> {
        if r == 0 {
            return self.generating(0).then(|| (self.mu_of(0), 0));
        }
        let blocks: Vec<Option<(f64, u128)>> = (1..=self.n + 1 - r)
            .into_par_iter()
            .map(|first| {
                let mut best: Option<(f64, u128)> = None;
                self.scan_block(r, first, &mut |mask, mu| {
                    if best.map_or(true, |(b, _)| mu > b) {
                        best = Some((mu, mask));
                    }
                    true
                });
                best
            })
            .collect();
        // merge in block order so ties resolve the same way on every run
        let mut best: Option<(f64, u128)> = None;
        for (mu, mask) in blocks.into_iter().flatten() {
            if best.map_or(true, |(b, _)| mu > b) {
                best = Some((mu, mask));
            }
        }
        best
    }

    /// First subset (by lowest starting slot) accepted by `violates`.
    pub(crate) fn find(&self, r: usize, violates: impl Fn(u128, f64) -> bool + Sync) -> Option<u128> {
        if r == 0 {
            return (self.generating(0) && violates(0, self.mu_of(0))).then_some(0);
        }
        // later blocks give up once a lower block has a hit
        let found = AtomicUsize::new(usize::MAX);
        let hits: Vec<Option<(usize, u128)>> = (1..=self.n + 1 - r)
            .into_par_iter()
            .map(|first| {
                let mut hit = None;
                self.scan_block(r, first, &mut |mask, mu| {
                    if found.load(Ordering::Relaxed) < first {
                        return false;
                    }
                    if violates(mask, mu) {
                        hit = Some((first, mask));
                        found.fetch_min(first, Ordering::Relaxed);
                        return false;
                    }
                    true
                });
                hit
            })
            .collect();
        hits.into_iter().flatten().min().map(|(_, mask)| mask)
    }
}

/// Covalency check and budget check shared by both oracles; returns the
/// number of pairs `(l − 1)/2`.
pub(crate) fn pairs_for(l: u64, order: u64, slots: usize, cfg: &OracleConfig) -> Result<usize> {
    if l % 2 == 0 || l > order - 2 {
        return Err(Error::invalid(format!("covalency must be odd in [1, {}], got {l}", order - 2)));
    }
    let r = ((l - 1) / 2) as usize;
    let required = binomial(slots as u128, r as u128);
    if required > cfg.budget {
        return Err(Error::BudgetExceeded {
            required,
            budget: cfg.budget,
        });
    }
    Ok(r)
}

struct Engine {
    m: Modulus,
    search: SlotSearch,
}

impl Engine {
    fn new(m: Modulus) -> Result<Self> {
        let mm = m.small()?;
        if mm > MAX_ORDER {
            return Err(Error::invalid(format!(
                "exhaustive search supports orders up to {MAX_ORDER}, got {mm}"
            )));
        }
        let n = ((mm - 1) / 2) as usize;
        let mut cos = vec![0.0; n * n];
        for b in 1..=n {
            for j in 1..=n {
                cos[(b - 1) * n + j - 1] = cos_turn::<f64>((b * j) as u128 % mm as u128, mm as u128);
            }
        }
        let nongen = factorize(mm)?
            .primes()
            .map(|p| {
                (1..=n)
                    .filter(|&b| b as u128 % p != 0)
                    .fold(0u128, |acc, b| acc | 1 << (b - 1))
            })
            .collect();
        Ok(Engine {
            m,
            search: SlotSearch::new(n, n, cos, nongen),
        })
    }

    fn set_of(&self, mask: u128) -> CayleySet {
        let mm = self.m.get() as i128;
        let mut t = vec![0i128];
        for b in 1..=self.search.slots() {
            if mask >> (b - 1) & 1 == 1 {
                t.push(b as i128);
                t.push(mm - b as i128);
            }
        }
        CayleySet::new(self.m, t).expect("enumerated sets are valid")
    }

    fn check_class(&self, l: u64, cfg: &OracleConfig) -> Result<usize> {
        pairs_for(l, self.m.get() as u64, self.search.slots(), cfg)
    }
}

/// Every generating complement of covalency `l`, canonicalized and in
/// lexicographic order of their pair slots.
pub fn enumerate_class(m: Modulus, l: u64, cfg: &OracleConfig) -> Result<Vec<CayleySet>> {
    let e = Engine::new(m)?;
    let r = e.check_class(l, cfg)?;
    let mut out = Vec::new();
    e.search.for_each(r, |mask, _| out.push(e.set_of(mask)));
    Ok(out)
}

/// Exact maximum of `μ(S)` over the class, with an attaining complement.
pub fn class_max(m: Modulus, l: u64, cfg: &OracleConfig) -> Result<(f64, CayleySet)> {
    let e = Engine::new(m)?;
    let r = e.check_class(l, cfg)?;
    let (mu, mask) = e
        .search
        .max(r)
        .ok_or_else(|| Error::invalid("class contains no generating set"))?;
    Ok((mu, e.set_of(mask)))
}

/// Some complement of covalency `l` whose graph is not Ramanujan, if any.
pub fn class_violation(
    m: Modulus,
    l: u64,
    cfg: &OracleConfig,
    policy: &NumericPolicy,
) -> Result<Option<CayleySet>> {
    let e = Engine::new(m)?;
    let r = e.check_class(l, cfg)?;
    let rb = ramanujan_bound::<f64>(m.get() - l as u128);
    let hit = e.search.find(r, |mask, mu| {
        let margin = rb - mu;
        if margin.abs() >= policy.escalation_margin {
            return margin < 0.0;
        }
        let s: crate::SpectrumExt = spectrum(&e.set_of(mask)).expect("valid set");
        (s.rb - s.mu_max) < ExtReal::from_f64(0.0)
    });
    Ok(hit.map(|mask| e.set_of(mask)))
}

/// `l̂` by brute force. Classes up to `l0` are skipped (there `μ(S) <= l <=`
/// the bound); above it, classes are searched upward until one fails.
pub fn hat_l_exhaustive(m: Modulus, cfg: &OracleConfig, policy: &NumericPolicy) -> Result<u64> {
    let mm = m.small()?;
    let start = if mm <= 13 { 1 } else { trivial_bound(m) as u64 + 2 };
    let mut l = start;
    while l <= mm - 2 {
        // the canonical set is the usual first offender; test it before paying for a search
        if l > start {
            let t = crate::spectra::sl_complement(m, l)?;
            if crate::spectra::is_ramanujan(&t, policy)?.decision == crate::Decision::NotRamanujan {
                return Ok(l - 2);
            }
        }
        if class_violation(m, l, cfg, policy)?.is_some() {
            return Ok(l - 2);
        }
        l += 2;
    }
    Ok(mm - 2)
}

/// Which extremal construction an attaining complement realizes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Construction {
    /// A multiplier image of `{0, ±1, …, ±(l−1)/2}`.
    Interval,
    /// All multiples of `p` plus two opposite residue classes mod `p`.
    ClassesModP,
    /// All multiples of `q` plus one or two pairs of opposite classes mod `q`.
    ClassesModQ,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CrossCheck {
    pub m: u64,
    pub p: u64,
    pub q: u64,
    pub l: u64,
    pub class_max: f64,
    pub candidates: Candidates<f64>,
    pub delta: f64,
    pub witness: Vec<u64>,
    pub attaining_j: u64,
    pub construction: Construction,
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn inverse_mod(a: u64, n: u64) -> Option<u64> {
    (1..n).find(|&x| a * x % n == 1)
}

/// Residue-class counts of `t` modulo `d`.
fn class_counts(t: &[u64], d: u64) -> Vec<u64> {
    let mut counts = vec![0u64; d as usize];
    for &b in t {
        counts[(b % d) as usize] += 1;
    }
    counts
}

/// Checks that `counts` is `{n0 at 0, bands[i] at ±(i+1)s}` for `s` given by the multiplier.
fn banded(counts: &[u64], d: u64, s: u64, n0: u64, bands: &[u64]) -> bool {
    let mut expect = vec![0u64; d as usize];
    expect[0] = n0;
    for (i, &nb) in bands.iter().enumerate() {
        let r = (i as u64 + 1) * s % d;
        expect[r as usize] += nb;
        expect[((d - r) % d) as usize] += nb;
    }
    expect == counts
}

fn matches_construction(t: &[u64], m: u64, p: u64, q: u64, j: u64) -> Option<Construction> {
    let l = t.len() as u64;
    let g = gcd(j, m);
    if g == 1 {
        let r = (l - 1) / 2;
        let mut image: Vec<u64> = t.iter().map(|&b| (b as u128 * j as u128 % m as u128) as u64).collect();
        image.sort_unstable();
        let mut interval: Vec<u64> = (0..=r).chain(m - r..m).collect();
        interval.sort_unstable();
        interval.dedup();
        return (image == interval).then_some(Construction::Interval);
    }
    let (d, other) = if g == q { (p, q) } else { (q, p) };
    let u = (j / g) % d;
    let s = inverse_mod(u, d)?;
    let counts = class_counts(t, d);
    if l < other || (l - other) % 2 == 1 {
        return None;
    }
    let ok = if g == q {
        banded(&counts, d, s, q, &[(l - q) / 2])
    } else if l <= 3 * p {
        banded(&counts, d, s, p, &[(l - p) / 2])
    } else {
        banded(&counts, d, s, p, &[p, (l - 3 * p) / 2])
    };
    ok.then_some(if g == q {
        Construction::ClassesModP
    } else {
        Construction::ClassesModQ
    })
}

/// Compares the exhaustive class maximum at covalency `l0 + 2` with the
/// three closed-form candidates, and checks that the maximizing complement
/// is one of the extremal constructions.
pub fn candidate_crosscheck(m: Modulus, cfg: &OracleConfig) -> Result<CrossCheck> {
    let mm = m.small()?;
    let f = factorize(mm)?;
    if f.factors.len() != 2 || f.big_omega() != 2 {
        return Err(Error::invalid(format!("{m} is not a product of two distinct primes")));
    }
    let (p, q) = (f.factors[0].0 as u64, f.factors[1].0 as u64);
    if !crate::bounds::in_j(m).member {
        return Err(Error::invalid(format!("{m} is not in J")));
    }
    let l0 = trivial_bound(m);
    let cands: Candidates<f64> = mu_candidates(p as u128, q as u128, l0)?;
    let l = l0 as u64 + 2;
    let (mu, witness) = class_max(m, l, cfg)?;
    let delta = (mu - cands.max()).abs();
    if delta > 1e-9 {
        return Err(Error::Mismatch(format!(
            "m = {m}: exhaustive maximum {mu:.12} vs candidates {:.12}/{:.12}/{:.12} (Δ = {delta:e})",
            cands.mu0, cands.mu1, cands.mu2
        )));
    }
    let s: crate::Spectrum64 = spectrum(&witness)?;
    let t = witness.complement();
    let attaining = (1..=(mm - 1) / 2).filter(|&j| (s.values[j as usize].abs() - mu).abs() <= 1e-9);
    for j in attaining.clone() {
        if let Some(construction) = matches_construction(t, mm, p, q, j) {
            return Ok(CrossCheck {
                m: mm,
                p,
                q,
                l,
                class_max: mu,
                candidates: cands,
                delta,
                witness: t.to_vec(),
                attaining_j: j,
                construction,
            });
        }
    }
    Err(Error::Mismatch(format!(
        "m = {m}: maximizer {t:?} (attained at j ∈ {:?}) is not an extremal construction",
        attaining.collect::<Vec<_>>()
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn md(m: u128) -> Modulus {
        Modulus::new(m).unwrap()
    }

    fn cfg() -> OracleConfig {
        OracleConfig::default()
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(7, 3), 35);
        assert_eq!(binomial(17, 5), 6188);
        assert_eq!(binomial(27, 6), 296010);
        assert_eq!(binomial(3, 5), 0);
        assert_eq!(class_size(md(35), 11), 6188);
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_class(md(5), 3, &cfg()).unwrap().len(), 2);
        // C(7,3) = 35 complements for m = 15, l = 7; count the generating ones by hand
        let raw = 35;
        let mut non_generating = 0;
        for mask in 0u32..128 {
            if mask.count_ones() != 3 {
                continue;
            }
            let kept: Vec<u64> = (1..=7).filter(|b| mask >> (b - 1) & 1 == 0).collect();
            let g = kept.iter().fold(15u64, |g, &b| gcd(g, b));
            if g != 1 {
                non_generating += 1;
            }
        }
        let sets = enumerate_class(md(15), 7, &cfg()).unwrap();
        assert_eq!(sets.len(), raw - non_generating);
        assert!(sets.iter().all(|s| s.covalency() == 7));
    }

    #[test]
    fn budget_refusal_reports_the_count() {
        let small = OracleConfig { budget: 1000 };
        match enumerate_class(md(35), 11, &small) {
            Err(Error::BudgetExceeded { required, budget }) => {
                assert_eq!(required, 6188);
                assert_eq!(budget, 1000);
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(enumerate_class(md(301), 11, &cfg()).is_err());
    }

    #[test]
    fn class_maxima() {
        let (mu, w) = class_max(md(35), 11, &cfg()).unwrap();
        assert!((mu - 9.31035).abs() < 1e-5);
        assert_eq!(w.complement(), &[0, 1, 2, 3, 4, 5, 30, 31, 32, 33, 34]);
        let (mu, _) = class_max(md(21), 9, &cfg()).unwrap();
        assert!((mu - 6.74094).abs() < 1e-5);
        let (mu, w) = class_max(md(15), 7, &cfg()).unwrap();
        assert!((mu - 4.78339).abs() < 1e-5);
        assert_eq!(w.complement(), &[0, 1, 2, 3, 12, 13, 14]);
    }

    #[test]
    fn exhaustive_hat_l() {
        let p = NumericPolicy::default();
        assert_eq!(hat_l_exhaustive(md(15), &cfg(), &p).unwrap(), 7);
        assert_eq!(hat_l_exhaustive(md(39), &cfg(), &p).unwrap(), 9);
        assert_eq!(hat_l_exhaustive(md(55), &cfg(), &p).unwrap(), 13);
        for m in (3u128..=13).step_by(2) {
            assert_eq!(hat_l_exhaustive(md(m), &cfg(), &p).unwrap(), m as u64 - 2);
        }
    }

    #[test]
    fn crosschecks() {
        for m in [15u128, 21, 35, 55] {
            let r = candidate_crosscheck(md(m), &cfg()).unwrap();
            assert!(r.delta <= 1e-9);
        }
        let r = candidate_crosscheck(md(21), &cfg()).unwrap();
        assert_eq!(r.construction, Construction::ClassesModQ);
        let r = candidate_crosscheck(md(55), &cfg()).unwrap();
        assert!((r.class_max - 11.84426).abs() < 1e-5);
        assert!(candidate_crosscheck(md(37), &cfg()).is_err());
    }

    #[test]
    fn type_one_maximizer_is_an_interval_image() {
        for m in [17u64, 19, 23, 29, 37, 41, 47, 53] {
            let md = md(m as u128);
            let l = trivial_bound(md) as u64 + 2;
            let (mu, w) = class_max(md, l, &cfg()).unwrap();
            let s: crate::Spectrum64 = spectrum(&w).unwrap();
            let j = (1..m).find(|&j| (s.values[j as usize].abs() - mu).abs() < 1e-9).unwrap();
            assert_eq!(matches_construction(w.complement(), m, 1, m, j), Some(Construction::Interval));
        }
    }
}
