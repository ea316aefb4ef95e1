//! End-to-end reproduction checks. Prints one PASS/FAIL line per criterion
//! and fails unless every criterion passes, apart from the single known
//! misprint in the Hardy–Littlewood constants.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use ramanujan_circulant::abelian::{abelian_oracle, d_ph};
use ramanujan_circulant::bounds::{d_value, interval_members, negative_d_window};
use ramanujan_circulant::golden;
use ramanujan_circulant::numtheory::{avoids_j, hl_constant, is_prime};
use ramanujan_circulant::oracle::{candidate_crosscheck, hat_l_exhaustive};
use ramanujan_circulant::tables;
use ramanujan_circulant::{
    abelian_hat_l, eigenvalue, mu_sl_closed, sl_complement, spectrum, AbelianGroup, CayleySet, Class, Modulus,
    NumericPolicy, OracleConfig,
};

struct Outcome {
    id: u32,
    pass: bool,
    detail: String,
}

fn md(m: u128) -> Modulus {
    Modulus::new(m).unwrap()
}

fn small_order_table(policy: &NumericPolicy) -> (bool, String) {
    let start = Instant::now();
    let rows = tables::table1(Some(&OracleConfig::default()), policy).unwrap();
    let elapsed = start.elapsed();
    let bad: Vec<u64> = rows.iter().filter(|r| !r.pass).map(|r| r.m).collect();
    let hat: Vec<u64> = rows.iter().map(|r| r.hat_l).collect();
    (
        bad.is_empty() && elapsed < Duration::from_secs(60),
        format!("{} orders, hat_l = {hat:?}, mismatches {bad:?}, {:.1?}", rows.len(), elapsed),
    )
}

fn small_orders_all_ramanujan(policy: &NumericPolicy) -> (bool, String) {
    let cfg = OracleConfig::default();
    let mut ok = true;
    for m in (3u128..=13).step_by(2) {
        ok &= hat_l_exhaustive(md(m), &cfg, policy).unwrap() == m as u64 - 2;
    }
    let h15 = hat_l_exhaustive(md(15), &cfg, policy).unwrap();
    (ok && h15 < 13, format!("m <= 13 all equal m - 2: {ok}; hat_l(15) = {h15}"))
}

fn exceptional_table(policy: &NumericPolicy) -> (bool, String) {
    let start = Instant::now();
    let rows = tables::table3(50, policy).unwrap();
    let elapsed = start.elapsed();
    let mut bad = Vec::new();
    let mut cells = 0;
    for r in &rows {
        for c in &r.cells {
            cells += 1;
            if c.pass() != Some(true) {
                bad.push((r.k, c.c));
            }
        }
    }
    (
        bad.is_empty() && elapsed < Duration::from_secs(5),
        format!("{cells} cells, mismatches {bad:?}, {elapsed:.1?}"),
    )
}

fn margin_rows(rows: &[tables::MarginCheck]) -> (bool, String) {
    let bad: Vec<i64> = rows.iter().filter(|r| r.pass != Some(true)).map(|r| r.y).collect();
    (bad.is_empty(), format!("{} rows, mismatches at y = {bad:?}", rows.len()))
}

fn comparison_family(policy: &NumericPolicy) -> (bool, String) {
    let rows = tables::table5(policy).unwrap();
    let signs = rows
        .iter()
        .all(|r| r.margins[0] > 0.0 && r.margins[1] < 0.0 && r.margins[2] < 0.0);
    let (values, detail) = margin_rows(&rows);
    (signs && values, format!("signs {signs}; {detail}"))
}

fn extended_family(policy: &NumericPolicy) -> (bool, String) {
    let rows = tables::table6(policy).unwrap();
    let ext = rows.iter().all(|r| r.escalated);
    let (values, detail) = margin_rows(&rows);
    let first = rows.first().map(|r| r.margins[1]).unwrap_or(f64::NAN);
    (
        ext && values,
        format!("all extended {ext}; {detail}; y=39 mu1 - RB = {first:.3e}"),
    )
}

fn threshold_constants() -> (bool, String) {
    let (checks, order) = tables::table2();
    let table: Vec<_> = checks.iter().filter(|c| !c.name.starts_with("xi")).collect();
    let bad: Vec<&str> = table.iter().filter(|c| !c.pass).map(|c| c.name.as_str()).collect();
    let ordered = order.iter().all(|&(_, ok)| ok);
    (
        bad.is_empty() && ordered,
        format!("{} constants, mismatches {bad:?}; ordering holds for all c: {ordered}", table.len()),
    )
}

fn d_windows(policy: &NumericPolicy) -> (bool, String) {
    let mut checked = 0;
    let mut bad = Vec::new();
    for k in 1..=200u128 {
        for m in interval_members(k) {
            let negative = d_value(md(m), policy).unwrap().value < 0.0;
            let expect = if k <= 3 {
                true
            } else {
                let (lo, hi) = negative_d_window(k).unwrap();
                (lo..=hi).contains(&m)
            };
            checked += 1;
            if negative != expect {
                bad.push(m);
            }
        }
    }
    (bad.is_empty(), format!("{checked} odd orders, mismatches {bad:?}"))
}

fn residue_test() -> (bool, String) {
    let first: Vec<u64> = (3..)
        .filter(|&p| is_prime(p) && avoids_j(p).unwrap())
        .take(5)
        .collect();
    (first == golden::AVOIDS_J_FIRST, format!("first five {first:?}"))
}

/// Returns (pass, detail, c values that miss).
fn hl_constants() -> (bool, String, Vec<i32>) {
    let mut misses = Vec::new();
    let mut parts = Vec::new();
    for (c, printed) in golden::HL_CONSTANTS {
        let h = hl_constant(c, 10_000_000).unwrap();
        if (h.value - printed).abs() > 0.02 {
            misses.push(c);
        }
        parts.push(format!("c={c}: {:.6} (printed {printed})", h.value));
    }
    (misses.is_empty(), parts.join(", "), misses)
}

fn abelian_groups(policy: &NumericPolicy) -> (bool, String) {
    let g = |o: &[u64]| AbelianGroup::new(o.to_vec()).unwrap();
    let mut ok = true;
    let mut notes = Vec::new();
    let v = abelian_hat_l(&g(&[5, 5])).unwrap();
    ok &= v.hat_l == v.l0 + 4;
    for p in [7u64, 11, 13, 17] {
        let v = abelian_hat_l(&g(&[p, p])).unwrap();
        ok &= v.hat_l == v.l0 + 2;
    }
    let mut big = 0;
    for p in (19..=199).filter(|&p| is_prime(p)) {
        let v = abelian_hat_l(&g(&[p, p])).unwrap();
        ok &= v.hat_l == v.l0 && d_ph::<f64>(p, 1).unwrap() > 0.0;
        big += 1;
    }
    notes.push(format!("{big} primes 19..=199 ordinary"));
    let v = abelian_hat_l(&g(&[3, 3])).unwrap();
    ok &= v.class == Class::AllRamanujan;
    let cfg = OracleConfig::default();
    for p in [5u64, 7] {
        let grp = g(&[p, p]);
        let o = abelian_oracle(&grp, &cfg, policy).unwrap();
        let v = abelian_hat_l(&grp).unwrap();
        ok &= o == v.hat_l;
        notes.push(format!("{grp}: oracle {o}, closed form {}", v.hat_l));
    }
    (ok, notes.join("; "))
}

fn power_sum_ok(set: &CayleySet) -> bool {
    let s = spectrum::<f64>(set).unwrap();
    let m = set.modulus().get() as f64;
    let k = set.valency() as f64;
    let trace: f64 = s.values.iter().sum();
    let squares: f64 = s.values.iter().map(|v| v * v).sum();
    let n = s.values.len();
    let symmetric = (1..n).all(|j| (s.values[j] - s.values[n - j]).abs() < 1e-9);
    trace.abs() < 1e-7 * m && (squares - m * k).abs() < 1e-7 * m * k && symmetric
}

fn oracle_equivalence() -> (bool, String) {
    let cfg = OracleConfig::default();
    let mut ok = true;
    let mut deltas = Vec::new();
    for m in [15u128, 21, 35, 55] {
        let c = candidate_crosscheck(md(m), &cfg).unwrap();
        ok &= c.delta <= 1e-9;
        deltas.push(format!("{m}: {:.1e}", c.delta));
    }
    let mut rng = rand::rngs::StdRng::seed_from_u64(2024);
    let mut bad = 0;
    for _ in 0..1000 {
        let m = 2 * rng.gen_range(1..=150u128) + 1;
        let mm = md(m);
        // half canonical sets checked against the closed form, half random
        if rng.gen_bool(0.5) {
            let l = 2 * rng.gen_range(0..=(m as u64 - 3) / 2) + 1;
            let set = sl_complement(mm, l).unwrap();
            let j = rng.gen_range(1..m as u64);
            let direct: f64 = eigenvalue(&set, j).unwrap();
            let closed: f64 = mu_sl_closed(mm, l as u128, j as u128).unwrap();
            if (direct - closed).abs() > 1e-8 || !power_sum_ok(&set) {
                bad += 1;
            }
        } else {
            let pairs = rng.gen_range(0..=(m - 3) / 2);
            let mut t: Vec<i128> = vec![0];
            while t.len() < 1 + 2 * pairs as usize {
                let b = rng.gen_range(1..=(m as i128 - 1) / 2);
                if !t.contains(&b) {
                    t.push(b);
                    t.push(-b);
                }
            }
            // skip non-generating draws
            if let Ok(set) = CayleySet::new(mm, t) {
                if !power_sum_ok(&set) {
                    bad += 1;
                }
            }
        }
    }
    ok &= bad == 0;
    (
        ok,
        format!("crosscheck deltas [{}]; spectrum invariant failures {bad}/1000", deltas.join(", ")),
    )
}

fn census(policy: &NumericPolicy) -> (bool, String) {
    let c = tables::census_100(policy).unwrap();
    (
        c.pass() && c.computed.len() == 18,
        format!("{} exceptional orders: {:?}", c.computed.len(), c.computed),
    )
}

#[test]
fn acceptance() {
    let policy = NumericPolicy::default();
    let mut out: Vec<Outcome> = Vec::new();
    let mut push = |id: u32, (pass, detail): (bool, String)| out.push(Outcome { id, pass, detail });

    push(1, small_order_table(&policy));
    push(2, small_orders_all_ramanujan(&policy));
    push(3, exceptional_table(&policy));
    push(4, margin_rows(&tables::table4(&policy).unwrap()));
    push(5, comparison_family(&policy));
    push(6, extended_family(&policy));
    push(7, threshold_constants());
    push(8, d_windows(&policy));
    push(9, residue_test());
    let (hl_pass, hl_detail, hl_misses) = hl_constants();
    push(10, (hl_pass, hl_detail));
    push(11, abelian_groups(&policy));
    push(12, oracle_equivalence());
    push(13, census(&policy));

    for o in &out {
        println!("criterion {:>2}: {} - {}", o.id, if o.pass { "PASS" } else { "FAIL" }, o.detail);
    }

    // The printed constant for c = -3 repeats the c = -5 entry; the product
    // itself converges near 0.621. Any other miss is a real failure.
    let unexpected: Vec<u32> = out
        .iter()
        .filter(|o| !o.pass && !(o.id == 10 && hl_misses == [-3]))
        .map(|o| o.id)
        .collect();
    assert!(unexpected.is_empty(), "failing criteria: {unexpected:?}");
}
