//! The classification against exhaustive search, and the pruning bound
//! that lets the search skip low covalencies.

use rand::{Rng, SeedableRng};
use ramanujan_circulant::oracle::{candidate_crosscheck, class_max, hat_l_exhaustive, Construction};
use ramanujan_circulant::{classify, spectrum, trivial_bound, CayleySet, Modulus, NumericPolicy, OracleConfig};

fn md(m: u128) -> Modulus {
    Modulus::new(m).unwrap()
}

#[test]
fn classification_matches_exhaustive_search_to_79() {
    let cfg = OracleConfig::default();
    let policy = NumericPolicy::default();
    for m in (3u128..=79).step_by(2) {
        let oracle = hat_l_exhaustive(md(m), &cfg, &policy).unwrap();
        let v = classify(md(m)).unwrap();
        assert_eq!(v.hat_l, oracle as u128, "m={m}");
    }
}

#[test]
fn only_small_orders_lose_nothing() {
    let cfg = OracleConfig::default();
    let policy = NumericPolicy::default();
    for m in (3u128..=25).step_by(2) {
        let full = hat_l_exhaustive(md(m), &cfg, &policy).unwrap() == m as u64 - 2;
        assert_eq!(full, m <= 13, "m={m}");
    }
}

#[test]
fn low_covalency_classes_stay_below_their_covalency() {
    let mut rng = rand::rngs::StdRng::seed_from_u64(11);
    let mut tested = 0;
    while tested < 1000 {
        let m = 2 * rng.gen_range(7..=49u128) + 1;
        let l0 = trivial_bound(md(m)) as usize;
        let pairs = rng.gen_range(0..=(l0 - 1) / 2);
        let mut t: Vec<i128> = vec![0];
        while t.len() < 1 + 2 * pairs {
            let b = rng.gen_range(1..=(m as i128 - 1) / 2);
            if !t.contains(&b) {
                t.extend([b, -b]);
            }
        }
        let Ok(set) = CayleySet::new(md(m), t) else { continue };
        let s = spectrum::<f64>(&set).unwrap();
        assert!(s.mu_max <= set.covalency() as f64 + 1e-9, "m={m} T={:?}", set.complement());
        assert!(s.mu_max <= s.rb + 1e-9);
        tested += 1;
    }
}

#[test]
fn crosschecks_identify_the_extremal_construction() {
    let cfg = OracleConfig::default();
    for (m, mu) in [(15u128, 4.78339), (21, 6.74094), (35, 9.31035), (55, 11.84426)] {
        let c = candidate_crosscheck(md(m), &cfg).unwrap();
        assert!(c.delta <= 1e-9, "m={m}: {c:?}");
        assert!((c.class_max - mu).abs() < 1e-5, "m={m}: {}", c.class_max);
    }
    let c = candidate_crosscheck(md(35), &cfg).unwrap();
    assert_eq!(c.construction, Construction::Interval);
    assert!(candidate_crosscheck(md(37), &cfg).is_err());
}

#[test]
fn prime_class_maxima_are_interval_images() {
    let cfg = OracleConfig::default();
    for m in [17u128, 19, 23, 29, 37, 41] {
        let l = trivial_bound(md(m)) as u64 + 2;
        let (mu, _) = class_max(md(m), l, &cfg).unwrap();
        let canonical = ramanujan_circulant::sl_complement(md(m), l).unwrap();
        let s = spectrum::<f64>(&canonical).unwrap();
        assert!((mu - s.mu_max).abs() < 1e-9, "m={m}");
    }
}
