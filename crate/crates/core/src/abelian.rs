//! Cayley graphs of finite abelian groups of odd order: character
//! eigenvalues, `l̂` for non-cyclic groups and an exhaustive check for
//! small ones.

use serde::{Deserialize, Serialize};

use crate::bounds::trivial_bound;
use crate::classify::{classify, Class};
use crate::error::{Error, Result};
use crate::numtheory::factorize;
use crate::oracle::{pairs_for, OracleConfig, SlotSearch};
use crate::scalar::{cos_turn, Real};
use crate::spectra::{ramanujan_bound, Modulus, NumericPolicy};
use crate::ExtReal;

/// `Z_{m1} ⊕ … ⊕ Z_{mr}` with `m1 | m2 | … | mr`, all odd and at least 3.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct AbelianGroup {
    orders: Vec<u64>,
}

impl TryFrom<Vec<u64>> for AbelianGroup {
    type Error = Error;

    fn try_from(orders: Vec<u64>) -> Result<Self> {
        AbelianGroup::new(orders)
    }
}

impl From<AbelianGroup> for Vec<u64> {
    fn from(g: AbelianGroup) -> Self {
        g.orders
    }
}

impl AbelianGroup {
    pub fn new(orders: Vec<u64>) -> Result<Self> {
        if orders.is_empty() {
            return Err(Error::invalid("a group needs at least one cyclic factor"));
        }
        for &m in &orders {
            if m < 3 || m % 2 == 0 {
                return Err(Error::invalid(format!("cyclic factors must be odd and >= 3, got {m}")));
            }
        }
        for w in orders.windows(2) {
            if w[1] % w[0] != 0 {
                return Err(Error::invalid(format!(
                    "factors must form a divisibility chain, but {} does not divide {}",
                    w[0], w[1]
                )));
            }
        }
        orders
            .iter()
            .try_fold(1u64, |acc, &m| acc.checked_mul(m))
            .ok_or_else(|| Error::overflow("group order exceeds 64 bits"))?;
        Ok(AbelianGroup { orders })
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn order(&self) -> u64 {
        self.orders.iter().product()
    }

    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    pub fn exponent(&self) -> u64 {
        *self.orders.last().expect("nonempty")
    }

    pub fn is_cyclic(&self) -> bool {
        self.orders.len() == 1
    }

    /// Mixed-radix index of an element tuple.
    fn index(&self, g: &[u64]) -> usize {
        g.iter()
            .zip(&self.orders)
            .fold(0usize, |acc, (&x, &m)| acc * m as usize + x as usize)
    }

    fn element(&self, mut i: usize) -> Vec<u64> {
        let mut g = vec![0; self.orders.len()];
        for (x, &m) in g.iter_mut().zip(&self.orders).rev() {
            *x = (i % m as usize) as u64;
            i /= m as usize;
        }
        g
    }

    fn neg(&self, g: &[u64]) -> Vec<u64> {
        g.iter().zip(&self.orders).map(|(&x, &m)| (m - x) % m).collect()
    }

    fn check(&self, g: &[u64]) -> Result<()> {
        if g.len() != self.orders.len() || g.iter().zip(&self.orders).any(|(&x, &m)| x >= m) {
            return Err(Error::invalid(format!("{g:?} is not an element of Z{:?}", self.orders)));
        }
        Ok(())
    }

    /// `Σ jᵢ gᵢ (M/mᵢ) mod M` for the exponent `M`: `χ_j(g) = e^{2πi·this/M}`.
    fn pairing(&self, j: &[u64], g: &[u64]) -> u128 {
        let e = self.exponent() as u128;
        j.iter()
            .zip(g)
            .zip(&self.orders)
            .fold(0u128, |acc, ((&a, &b), &m)| (acc + a as u128 * b as u128 % m as u128 * (e / m as u128)) % e)
    }

    /// One representative of each pair `{g, −g}` of non-identity elements.
    fn pair_reps(&self) -> Vec<Vec<u64>> {
        (1..self.order() as usize)
            .filter_map(|i| {
                let g = self.element(i);
                (i < self.index(&self.neg(&g))).then_some(g)
            })
            .collect()
    }
}

impl std::fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.orders.iter().map(|m| format!("Z{m}")).collect();
        write!(f, "{}", parts.join("+"))
    }
}

/// Complement `G ∖ S` of a Cayley subset `S`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbelianCayleySet {
    group: AbelianGroup,
    complement: Vec<Vec<u64>>,
}

impl AbelianCayleySet {
    /// Checks that the complement holds the identity, is closed under
    /// negation, and that `S` generates the group.
    pub fn new(group: AbelianGroup, complement: Vec<Vec<u64>>) -> Result<Self> {
        let n = group.order() as usize;
        let mut in_t = vec![false; n];
        for g in &complement {
            group.check(g)?;
            in_t[group.index(g)] = true;
        }
        if !in_t[0] {
            return Err(Error::invalid("complement must contain the identity"));
        }
        for i in 0..n {
            if in_t[i] && !in_t[group.index(&group.neg(&group.element(i)))] {
                return Err(Error::invalid(format!(
                    "complement is not closed under negation at {:?}",
                    group.element(i)
                )));
            }
        }
        if in_t.iter().filter(|&&b| b).count() > n - 2 {
            return Err(Error::invalid("S must contain at least one pair"));
        }
        // closure of S under addition
        let gens: Vec<Vec<u64>> = (0..n).filter(|&i| !in_t[i]).map(|i| group.element(i)).collect();
        let mut reached = vec![false; n];
        reached[0] = true;
        let mut frontier = vec![0usize];
        while let Some(i) = frontier.pop() {
            let x = group.element(i);
            for s in &gens {
                let y: Vec<u64> = x.iter().zip(s).zip(&group.orders).map(|((&a, &b), &m)| (a + b) % m).collect();
                let k = group.index(&y);
                if !reached[k] {
                    reached[k] = true;
                    frontier.push(k);
                }
            }
        }
        if reached.iter().any(|&r| !r) {
            return Err(Error::invalid("S does not generate the group"));
        }
        let mut complement: Vec<Vec<u64>> = (0..n).filter(|&i| in_t[i]).map(|i| group.element(i)).collect();
        complement.sort();
        Ok(AbelianCayleySet { group, complement })
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn complement(&self) -> &[Vec<u64>] {
        &self.complement
    }

    pub fn covalency(&self) -> u64 {
        self.complement.len() as u64
    }

    pub fn valency(&self) -> u64 {
        self.group.order() - self.covalency()
    }
}

/// `λ_χ = −Σ_{b ∈ G∖S} χ(b)` for `χ ≠ 1`, and `|S|` for the trivial character.
pub fn abelian_eigenvalue<T: Real>(set: &AbelianCayleySet, chi: &[u64]) -> Result<T> {
    let g = &set.group;
    g.check(chi)
        .map_err(|_| Error::invalid(format!("{chi:?} is not a character index of {g}")))?;
    if chi.iter().all(|&x| x == 0) {
        return Ok(T::from_u64(set.valency()));
    }
    let e = g.exponent() as u128;
    let mut acc = T::zero();
    for b in &set.complement {
        acc = acc + cos_turn::<T>(g.pairing(chi, b), e);
    }
    Ok(-acc)
}

/// All eigenvalues, indexed like the group elements.
pub fn abelian_spectrum(set: &AbelianCayleySet) -> Vec<f64> {
    let g = &set.group;
    (0..g.order() as usize)
        .map(|i| abelian_eigenvalue(set, &g.element(i)).expect("valid index"))
        .collect()
}

/// `μ(S)`, the largest nontrivial `|λ_χ|`.
pub fn abelian_mu<T: Real>(set: &AbelianCayleySet) -> T {
    let g = &set.group;
    (1..g.order() as usize)
        .map(|i| abelian_eigenvalue::<T>(set, &g.element(i)).expect("valid index").abs())
        .fold(T::zero(), |a, b| a.max(b))
}

/// `d(p, h) = p + (p − 3 + 2h)cos(2π/p) − 2√(p² − 2p + 2 − 2h)`.
pub fn d_ph<T: Real>(p: u64, h: u64) -> Result<T> {
    if p < 5 || !crate::numtheory::is_prime(p) {
        return Err(Error::invalid(format!("p must be a prime >= 5, got {p}")));
    }
    if h == 0 || p + 3 < 2 * h {
        return Err(Error::invalid(format!("h must satisfy 1 <= h and 2h − 3 <= p, got h = {h}")));
    }
    let rad = (p * p + 2).checked_sub(2 * p + 2 * h).filter(|&r| r > 0);
    let rad = rad.ok_or_else(|| Error::invalid("p² − 2p + 2 − 2h must be positive"))?;
    let t = |v: u64| T::from_u64(v);
    Ok(t(p) + t(p + 2 * h - 3) * cos_turn::<T>(1, p as u128) - (t(4 * rad)).sqrt())
}

/// Complement for covalency `l0 + 2h` in `Z_p ⊕ Z_p`: the subgroup `{0} ⊕ Z_p`,
/// `(±1, 0)`, and pairs `±(1, g)` for `g = 1, 2, …`.
pub fn square_construction(p: u64, h: u64) -> Result<AbelianCayleySet> {
    if p < 5 || p + 3 < 2 * h || h == 0 {
        return Err(Error::invalid(format!("construction needs p >= 5 and 1 <= h <= (p + 3)/2, got p = {p}, h = {h}")));
    }
    let g = AbelianGroup::new(vec![p, p])?;
    let mut t: Vec<Vec<u64>> = (0..p).map(|y| vec![0, y]).collect();
    t.push(vec![1, 0]);
    t.push(vec![p - 1, 0]);
    let extra = (p + 2 * h - 5) / 2;
    for y in 1..=extra {
        t.push(vec![1, y]);
        t.push(vec![p - 1, p - y]);
    }
    AbelianCayleySet::new(g, t)
}

/// Why a group has the `l̂` it has.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "case", rename_all = "snake_case")]
pub enum AbelianCase {
    /// Cyclic: decided by the circulant classification.
    Cyclic,
    /// `Z3 ⊕ Z3`: every Cayley graph is Ramanujan.
    AllRamanujan,
    /// Three or more factors; the last ones dwarf the first.
    RankThreeOrMore,
    /// Two factors, one of them divisible by two primes.
    MixedPrimes,
    /// `p^s ⊕ p^t` with `p^t >= 4p^s − 3`.
    UnbalancedPowers,
    /// `3^s ⊕ 3^(s+1)`, `s >= 2`.
    AdjacentPowersOfThree,
    /// `p^s ⊕ p^s`, `s >= 2`.
    EqualPowers,
    /// `Z_p ⊕ Z_p`, `p >= 5`, with the largest admissible `h`.
    PrimeSquare { p: u64, h: u64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AbelianVerdict {
    pub group: AbelianGroup,
    pub order: u64,
    pub l0: u64,
    pub hat_l: u64,
    pub class: Class,
    pub case: AbelianCase,
}

fn prime_power(n: u64) -> Result<Option<(u64, u32)>> {
    let f = factorize(n)?;
    Ok((f.factors.len() == 1).then(|| (f.factors[0].0 as u64, f.factors[0].1)))
}

/// Exact `l̂` for an odd abelian group.
pub fn abelian_hat_l(g: &AbelianGroup) -> Result<AbelianVerdict> {
    let order = g.order();
    let l0 = trivial_bound(Modulus::new(order as u128)?) as u64;
    let done = |hat_l: u64, class: Class, case: AbelianCase| AbelianVerdict {
        group: g.clone(),
        order,
        l0,
        hat_l,
        class,
        case,
    };
    if g.is_cyclic() {
        let v = classify(Modulus::new(order as u128)?)?;
        return Ok(done(v.hat_l as u64, v.verdict, AbelianCase::Cyclic));
    }
    if g.orders() == [3, 3] {
        return Ok(done(order - 2, Class::AllRamanujan, AbelianCase::AllRamanujan));
    }
    if g.rank() >= 3 {
        return Ok(done(l0, Class::Ordinary, AbelianCase::RankThreeOrMore));
    }
    let (m1, m2) = (g.orders()[0], g.orders()[1]);
    let (Some((p, s)), Some((_, t))) = (prime_power(m1)?, prime_power(m2)?) else {
        return Ok(done(l0, Class::Ordinary, AbelianCase::MixedPrimes));
    };
    if m2 + 3 >= 4 * m1 {
        return Ok(done(l0, Class::Ordinary, AbelianCase::UnbalancedPowers));
    }
    if p == 3 && t == s + 1 && s >= 2 {
        return Ok(done(l0, Class::Ordinary, AbelianCase::AdjacentPowersOfThree));
    }
    if s == t && s >= 2 {
        return Ok(done(l0, Class::Ordinary, AbelianCase::EqualPowers));
    }
    if s == 1 && t == 1 && p >= 5 {
        let mut h = 0;
        while h < 3 && d_ph::<ExtReal>(p, h + 1)? <= ExtReal::from_u64(0) {
            h += 1;
        }
        let class = if h > 0 { Class::Exceptional } else { Class::Ordinary };
        return Ok(done(l0 + 2 * h, class, AbelianCase::PrimeSquare { p, h }));
    }
    Err(Error::invariant(format!("{g} escapes the non-cyclic case analysis")))
}

/// `l̂` by enumerating every Cayley set in the classes `l0 + 2, l0 + 4, …`
/// until one contains a non-Ramanujan graph.
pub fn abelian_oracle(g: &AbelianGroup, cfg: &OracleConfig, policy: &NumericPolicy) -> Result<u64> {
    let order = g.order();
    if order > 255 {
        return Err(Error::invalid(format!("exhaustive search supports orders up to 255, got {order}")));
    }
    let reps = g.pair_reps();
    let n = reps.len();
    let e = g.exponent() as u128;
    let mut cos = vec![0.0; n * n];
    for (b, x) in reps.iter().enumerate() {
        for (j, chi) in reps.iter().enumerate() {
            cos[b * n + j] = cos_turn::<f64>(g.pairing(chi, x), e);
        }
    }
    // maximal subgroups are kernels of characters of prime order
    let mut nongen: Vec<u128> = Vec::new();
    for chi in &reps {
        let prime_order = factorize(g.exponent())?
            .primes()
            .any(|p| chi.iter().zip(g.orders()).all(|(&x, &m)| x as u128 * p % m as u128 == 0));
        if !prime_order {
            continue;
        }
        let mask = reps
            .iter()
            .enumerate()
            .filter(|(_, x)| g.pairing(chi, x) != 0)
            .fold(0u128, |acc, (b, _)| acc | 1 << b);
        if !nongen.contains(&mask) {
            nongen.push(mask);
        }
    }
    let search = SlotSearch::new(n, n, cos, nongen);
    let set_of = |mask: u128| {
        let mut t = vec![vec![0u64; g.rank()]];
        for (_, x) in reps.iter().enumerate().filter(|(b, _)| mask >> b & 1 == 1) {
            t.push(x.clone());
            t.push(g.neg(x));
        }
        AbelianCayleySet::new(g.clone(), t).expect("enumerated sets are valid")
    };
    let l0 = trivial_bound(Modulus::new(order as u128)?) as u64;
    let mut l = l0 + 2;
    while l <= order - 2 {
        let r = pairs_for(l, order, n, cfg)?;
        let rb = ramanujan_bound::<f64>((order - l) as u128);
        let hit = search.find(r, |mask, mu| {
            let margin = rb - mu;
            if margin.abs() >= policy.escalation_margin {
                return margin < 0.0;
            }
            let mu: ExtReal = abelian_mu(&set_of(mask));
            ramanujan_bound::<ExtReal>((order - l) as u128) < mu
        });
        if hit.is_some() {
            return Ok(l - 2);
        }
        l += 2;
    }
    Ok(order - 2)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grp(o: &[u64]) -> AbelianGroup {
        AbelianGroup::new(o.to_vec()).unwrap()
    }

    #[test]
    fn group_validation() {
        assert!(AbelianGroup::new(vec![3, 9]).is_ok());
        assert!(AbelianGroup::new(vec![9, 3]).is_err());
        assert!(AbelianGroup::new(vec![3, 4]).is_err());
        assert!(AbelianGroup::new(vec![1, 3]).is_err());
        assert_eq!(grp(&[3, 15]).order(), 45);
        assert_eq!(grp(&[5, 5]).to_string(), "Z5+Z5");
    }

    #[test]
    fn set_validation() {
        let g = grp(&[3, 3]);
        assert!(AbelianCayleySet::new(g.clone(), vec![vec![0, 0]]).is_ok());
        assert!(AbelianCayleySet::new(g.clone(), vec![vec![0, 1]]).is_err());
        assert!(AbelianCayleySet::new(g.clone(), vec![vec![0, 0], vec![0, 1]]).is_err());
        // S = {(±1, 0), (±1, ±1), …} minus the subgroup {(0, y)} generates
        let t = vec![vec![0, 0], vec![0, 1], vec![0, 2]];
        assert!(AbelianCayleySet::new(g.clone(), t).is_ok());
        // S inside {(x, 0)}: not generating
        let t: Vec<Vec<u64>> = (0..3).flat_map(|x| [vec![x, 1], vec![x, 2]]).chain([vec![0, 0]]).collect();
        assert!(AbelianCayleySet::new(g, t).is_err());
    }

    #[test]
    fn eigenvalue_examples() {
        let k9 = AbelianCayleySet::new(grp(&[3, 3]), vec![vec![0, 0]]).unwrap();
        for i in 1..9 {
            let chi = grp(&[3, 3]).element(i);
            let v: f64 = abelian_eigenvalue(&k9, &chi).unwrap();
            assert!((v + 1.0).abs() < 1e-12);
        }
        assert_eq!(abelian_eigenvalue::<f64>(&k9, &[0, 0]).unwrap(), 8.0);
        assert!(abelian_eigenvalue::<f64>(&k9, &[3, 0]).is_err());

        let t = square_construction(5, 2).unwrap();
        assert_eq!(t.covalency(), 11);
        let v: f64 = abelian_eigenvalue(&t, &[1, 0]).unwrap();
        assert!((v.abs() - 6.85410).abs() < 1e-5);
        assert!((v.abs() - (5.0 + 6.0 * (2.0 * std::f64::consts::PI / 5.0).cos())).abs() < 1e-12);

        // T inside {0} ⊕ Z9 with |T| = l0 + 2 = 9 pins χ = η ⊗ 1 at |T|
        let g = grp(&[3, 9]);
        let t: Vec<Vec<u64>> = (0..9).map(|y| vec![0, y]).collect();
        let set = AbelianCayleySet::new(g, t).unwrap();
        let v: f64 = abelian_eigenvalue(&set, &[1, 0]).unwrap();
        assert!((v.abs() - 9.0).abs() < 1e-12);
    }

    #[test]
    fn spectrum_invariants() {
        use rand::{seq::SliceRandom, Rng, SeedableRng};
        let mut rng = rand::rngs::StdRng::seed_from_u64(11);
        for orders in [vec![3u64, 3], vec![5, 5], vec![3, 9], vec![3, 3, 3], vec![7, 7], vec![9, 9], vec![3, 27]] {
            let g = grp(&orders);
            let reps = g.pair_reps();
            for _ in 0..20 {
                let k = rng.gen_range(0..reps.len() / 2);
                let mut t = vec![vec![0; g.rank()]];
                for x in reps.choose_multiple(&mut rng, k) {
                    t.push(x.clone());
                    t.push(g.neg(x));
                }
                let Ok(set) = AbelianCayleySet::new(g.clone(), t) else { continue };
                let spec = abelian_spectrum(&set);
                let s = set.valency() as f64;
                let trace: f64 = spec.iter().sum();
                let squares: f64 = spec.iter().map(|x| x * x).sum();
                assert!(trace.abs() < 1e-8);
                assert!((squares - g.order() as f64 * s).abs() < 1e-7);
            }
        }
    }

    #[test]
    fn d_sign_claims() {
        for p in (5u64..=199).filter(|&p| crate::numtheory::is_prime(p)) {
            let d = |h| d_ph::<ExtReal>(p, h).unwrap() > ExtReal::from_u64(0);
            assert_eq!(d(1), p >= 19, "p={p}");
            assert_eq!(d(2), p >= 7, "p={p}");
            assert!(d(3), "p={p}");
        }
        assert!(d_ph::<f64>(3, 1).is_err());
        assert!(d_ph::<f64>(9, 1).is_err());
    }

    #[test]
    fn hat_l_cases() {
        let h = |o: &[u64]| abelian_hat_l(&grp(o)).unwrap();
        assert_eq!(h(&[5, 5]).hat_l, 11);
        assert_eq!(h(&[7, 7]).hat_l, 13);
        assert_eq!(h(&[3, 9]).hat_l, 7);
        assert_eq!(h(&[19, 19]).hat_l, 35);
        assert_eq!(h(&[19, 19]).class, Class::Ordinary);
        assert_eq!(h(&[17, 17]).hat_l, 33);
        assert_eq!(h(&[3, 3]).hat_l, 7);
        assert_eq!(h(&[3, 3]).class, Class::AllRamanujan);
        assert_eq!(h(&[3, 3, 3]).case, AbelianCase::RankThreeOrMore);
        assert_eq!(h(&[3, 15]).case, AbelianCase::MixedPrimes);
        assert_eq!(h(&[9, 27]).case, AbelianCase::AdjacentPowersOfThree);
        assert_eq!(h(&[25, 25]).case, AbelianCase::EqualPowers);
        assert_eq!(h(&[5, 25]).case, AbelianCase::UnbalancedPowers);
        for m in [15u64, 35, 37, 39] {
            let v = h(&[m]);
            assert_eq!(v.hat_l as u128, classify(Modulus::new(m as u128).unwrap()).unwrap().hat_l);
        }
    }

    #[test]
    fn oracle_small_groups() {
        let cfg = OracleConfig::default();
        let p = NumericPolicy::default();
        for o in [vec![3u64, 3], vec![5, 5], vec![3, 9]] {
            let g = grp(&o);
            assert_eq!(abelian_oracle(&g, &cfg, &p).unwrap(), abelian_hat_l(&g).unwrap().hat_l, "{g}");
        }
    }
}
