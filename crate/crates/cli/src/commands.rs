use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use ramanujan_circulant::abelian::{abelian_oracle, AbelianVerdict};
use ramanujan_circulant::classify::{scan as scan_range, Candidates, Thresholds};
use ramanujan_circulant::numtheory::{self, family_scan, PolyCountMode, Poly};
use ramanujan_circulant::oracle::hat_l_exhaustive;
use ramanujan_circulant::tables::{self, MarginCheck};
use ramanujan_circulant::{
    abelian_hat_l, classify_with, is_ramanujan, spectrum as spectrum_of, AbelianGroup, CayleySet, MKind, Modulus,
    NumericPolicy, OracleConfig, Verdict,
};

use crate::output::{opt, pass_fail, Out};
use crate::{CmdResult, Failure};

/// Largest number of orders a single scan may cover.
const SCAN_LIMIT: u128 = 50_000_000;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InJ {
    pub c: Option<i32>,
    pub k: Option<u128>,
    pub member: bool,
    pub source: Option<String>,
}

/// Flat, stable JSON form of a classification.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Classification {
    pub m: u128,
    pub l0: u128,
    #[serde(rename = "inJ")]
    pub in_j: InJ,
    pub kind: String,
    pub p: Option<u128>,
    pub q: Option<u128>,
    pub verdict: String,
    pub epsilon: Option<u8>,
    pub hatl: u128,
    pub mu_hat: Option<f64>,
    pub rb: Option<f64>,
    pub margin: Option<f64>,
    pub candidates: Option<Candidates<f64>>,
    pub escalated: bool,
    pub near_threshold: bool,
}

impl From<&Verdict> for Classification {
    fn from(v: &Verdict) -> Self {
        let (p, q) = match v.kind {
            MKind::Semiprime { p, q } => (Some(p), Some(q)),
            MKind::PrimeSquare { p } => (Some(p), Some(p)),
            _ => (None, None),
        };
        Classification {
            m: v.m.get(),
            l0: v.l0,
            in_j: InJ {
                c: v.in_j.c(),
                k: v.in_j.k(),
                member: v.in_j.member,
                source: v.in_j.source.map(|s| {
                    serde_json::to_value(s)
                        .ok()
                        .and_then(|x| x.as_str().map(String::from))
                        .unwrap_or_default()
                }),
            },
            kind: v.kind.label().into(),
            p,
            q,
            verdict: v.verdict.label().into(),
            epsilon: v.epsilon,
            hatl: v.hat_l,
            mu_hat: v.mu_hat,
            rb: v.rb,
            margin: v.margin,
            candidates: v.candidates,
            escalated: v.escalated,
            near_threshold: v.near_threshold,
        }
    }
}

fn modulus(m: u128) -> Result<Modulus, Failure> {
    Ok(Modulus::new(m)?)
}

fn parse_list<T: std::str::FromStr>(s: &str, what: &str) -> Result<Vec<T>, Failure> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| {
            t.trim()
                .parse()
                .map_err(|_| Failure::invalid(format!("bad {what} {:?}", t.trim())))
        })
        .collect()
}

/// Exit status for a table whose rows were compared with printed values.
fn table_status(all_pass: bool, name: &str) -> CmdResult {
    if all_pass {
        Ok(())
    } else {
        Err(Failure::invariant(format!("{name} does not reproduce the printed values")))
    }
}

pub fn classify(out: &Out, m: u128, policy: &NumericPolicy) -> CmdResult {
    let v = classify_with(modulus(m)?, policy)?;
    let c = Classification::from(&v);
    out.emit(&c, || {
        let mut s = String::new();
        let _ = writeln!(s, "m        {}", c.m);
        let _ = writeln!(s, "l0       {}", c.l0);
        let j = if c.in_j.member {
            match (c.in_j.c, c.in_j.k) {
                (Some(cc), Some(k)) => format!("yes (c = {cc}, k = {k})"),
                _ => "yes (small window)".into(),
            }
        } else {
            "no".into()
        };
        let _ = writeln!(s, "in J     {j}");
        let _ = writeln!(s, "kind     {}", c.kind);
        if let (Some(p), Some(q)) = (c.p, c.q) {
            let _ = writeln!(s, "p, q     {p}, {q}");
        }
        let _ = writeln!(s, "verdict  {}", c.verdict);
        let _ = writeln!(s, "hat_l    {}", c.hatl);
        let _ = writeln!(s, "mu_hat   {}", out.opt_real(c.mu_hat));
        let _ = writeln!(s, "rb       {}", out.opt_real(c.rb));
        let _ = writeln!(s, "margin   {}{}", out.opt_real(c.margin), if c.escalated { " (extended)" } else { "" });
        if let Some(k) = c.candidates {
            let _ = writeln!(s, "mu0..2   {} {} {}", out.real(k.mu0), out.real(k.mu1), out.real(k.mu2));
        }
        s
    });
    Ok(())
}

#[derive(Serialize)]
struct HatL {
    m: u128,
    l0: u128,
    hatl: u128,
    method: &'static str,
}

pub fn hatl(out: &Out, m: u128, oracle: bool, budget: u128, policy: &NumericPolicy) -> CmdResult {
    let md = modulus(m)?;
    let v = classify_with(md, policy)?;
    let (hatl, method) = if oracle {
        let h = hat_l_exhaustive(md, &OracleConfig { budget }, policy)? as u128;
        if h != v.hat_l {
            return Err(Failure::invariant(format!(
                "exhaustive search gives {h} but the classification gives {} for m = {m}",
                v.hat_l
            )));
        }
        (h, "oracle")
    } else {
        (v.hat_l, "classification")
    };
    out.emit(
        &HatL {
            m,
            l0: v.l0,
            hatl,
            method,
        },
        || hatl.to_string(),
    );
    Ok(())
}

#[derive(Serialize)]
struct ScanRow {
    m: u128,
    l0: u128,
    in_j: bool,
    c: Option<i32>,
    k: Option<u128>,
    kind: &'static str,
    verdict: &'static str,
    hat_l: u128,
    mu_hat: Option<f64>,
    rb: Option<f64>,
    margin: Option<f64>,
    near_threshold: bool,
}

impl From<&Verdict> for ScanRow {
    fn from(v: &Verdict) -> Self {
        ScanRow {
            m: v.m.get(),
            l0: v.l0,
            in_j: v.in_j.member,
            c: v.in_j.c(),
            k: v.in_j.k(),
            kind: v.kind.label(),
            verdict: v.verdict.label(),
            hat_l: v.hat_l,
            mu_hat: v.mu_hat,
            rb: v.rb,
            margin: v.margin,
            near_threshold: v.near_threshold,
        }
    }
}

fn csv_writer(path: &PathBuf) -> Result<csv::Writer<Box<dyn std::io::Write>>, Failure> {
    let sink: Box<dyn std::io::Write> = if path.as_os_str() == "-" {
        Box::new(std::io::stdout())
    } else {
        Box::new(std::fs::File::create(path).map_err(|e| Failure::invalid(format!("{}: {e}", path.display())))?)
    };
    Ok(csv::Writer::from_writer(sink))
}

pub fn scan(out: &Out, lo: u128, hi: u128, csv: Option<PathBuf>, policy: &NumericPolicy) -> CmdResult {
    if hi < lo {
        return Err(Failure::invalid(format!("empty range [{lo}, {hi}]")));
    }
    if (hi - lo) / 2 > SCAN_LIMIT {
        return Err(Failure::invalid(format!("a scan covers at most {SCAN_LIMIT} odd orders")));
    }
    let verdicts = scan_range(lo, hi, policy)?;
    if let Some(path) = csv {
        let mut w = csv_writer(&path)?;
        for v in &verdicts {
            w.serialize(ScanRow::from(v))?;
        }
        w.flush()?;
        if path.as_os_str() == "-" {
            return Ok(());
        }
    }
    if out.json {
        let rows: Vec<Classification> = verdicts.iter().map(Classification::from).collect();
        out.emit(&rows, String::new);
        return Ok(());
    }
    let exceptional = verdicts.iter().filter(|v| v.is_exceptional()).count();
    let mut stdout = std::io::stdout().lock();
    for v in verdicts.iter().filter(|v| v.is_exceptional()) {
        writeln!(stdout, "{:>12} {:<4} l0 = {:<6} hat_l = {}", v.m, v.kind.label(), v.l0, v.hat_l)?;
    }
    writeln!(stdout, "{} odd orders, {exceptional} exceptional", verdicts.len())?;
    Ok(())
}

#[derive(Serialize)]
struct SpectrumOut {
    m: u64,
    complement: Vec<u64>,
    valency: u64,
    rb: f64,
    mu_max: f64,
    ramanujan: bool,
    margin: f64,
    escalated: bool,
    values: Vec<f64>,
}

pub fn spectrum(out: &Out, m: u128, complement: &str) -> CmdResult {
    let md = modulus(m)?;
    let mut t: Vec<i128> = parse_list(complement, "residue")?;
    t.push(0);
    let set = CayleySet::new(md, t)?;
    let s = spectrum_of::<f64>(&set)?;
    let check = is_ramanujan(&set, &NumericPolicy::default())?;
    let o = SpectrumOut {
        m: md.small()?,
        complement: set.complement().to_vec(),
        valency: s.valency,
        rb: s.rb,
        mu_max: s.mu_max,
        ramanujan: check.decision == ramanujan_circulant::Decision::Ramanujan,
        margin: check.margin,
        escalated: check.escalated,
        values: s.values,
    };
    out.emit(&o, || {
        let mut s = String::new();
        let _ = writeln!(s, "complement {:?}", o.complement);
        let _ = writeln!(s, "valency    {}", o.valency);
        let _ = writeln!(s, "mu_max     {}", out.real(o.mu_max));
        let _ = writeln!(s, "rb         {}", out.real(o.rb));
        let _ = writeln!(s, "ramanujan  {} (margin {})", o.ramanujan, out.real(o.margin));
        for (j, v) in o.values.iter().enumerate() {
            let _ = writeln!(s, "{j:>6} {}", out.real(*v));
        }
        s
    });
    Ok(())
}

#[derive(Serialize)]
struct Checked<T> {
    rows: Vec<T>,
    pass: bool,
}

pub fn table1(out: &Out, policy: &NumericPolicy) -> CmdResult {
    let rows = tables::table1(Some(&OracleConfig::default()), policy)?;
    let pass = rows.iter().all(|r| r.pass);
    out.emit(&Checked { rows: rows.clone(), pass }, || {
        let mut s = String::from("     m   l0  hat_l  printed\n");
        for r in &rows {
            let _ = writeln!(
                s,
                "{:>6} {:>4} {:>6}  {:>3} {:>3}  {}",
                r.m,
                r.l0,
                r.hat_l,
                opt(r.printed_l0),
                r.printed_hat_l,
                pass_fail(r.pass)
            );
        }
        let _ = writeln!(s, "table1: {}", pass_fail(pass));
        s
    });
    table_status(pass, "table1")
}

pub fn table3(out: &Out, k_max: u128, policy: &NumericPolicy) -> CmdResult {
    let rows = tables::table3(k_max, policy)?;
    let pass = rows.iter().flat_map(|r| &r.cells).all(|c| c.pass() != Some(false));
    out.emit(&Checked { rows: rows.clone(), pass }, || {
        let mut s = String::from("     k");
        for c in ramanujan_circulant::golden::TABLE3_COLUMNS {
            let _ = write!(s, "{:>12}", format!("c={c}"));
        }
        s.push('\n');
        for r in &rows {
            let _ = write!(s, "{:>6}", r.k);
            let mut row_ok = true;
            for c in &r.cells {
                let flag = if c.pass() == Some(false) { "!" } else { "" };
                row_ok &= c.pass() != Some(false);
                let m = c.m.map_or_else(|| "-".to_string(), |m| m.to_string());
                let _ = write!(s, "{:>12}", format!("{m}:{}{flag}", c.computed.label()));
            }
            let compared = r.cells.iter().any(|c| c.printed.is_some());
            let _ = writeln!(s, "  {}", if compared { pass_fail(row_ok) } else { "" });
        }
        let _ = writeln!(s, "table3: {}", pass_fail(pass));
        s
    });
    table_status(pass, "table3")
}

pub fn margin_table(out: &Out, which: u8, policy: &NumericPolicy) -> CmdResult {
    let rows: Vec<MarginCheck> = match which {
        4 => tables::table4(policy)?,
        5 => tables::table5(policy)?,
        _ => tables::table6(policy)?,
    };
    let pass = rows.iter().all(|r| r.pass == Some(true));
    out.emit(&Checked { rows: rows.clone(), pass }, || {
        let mut s = format!(
            "{:>5} {:>16} {:>16} {:>8} {:>16} {:>16} {:>16}\n",
            "y", "p", "q", "q/p", "mu0-RB", "mu1-RB", "mu2-RB"
        );
        for r in &rows {
            let _ = write!(s, "{:>5} {:>16} {:>16} {:>8.5}", r.y, r.p, r.q, r.ratio);
            for d in r.margins {
                let _ = write!(s, " {:>16}", format!("{d:.3e}"));
            }
            let _ = writeln!(s, "  {}", pass_fail(r.pass == Some(true)));
        }
        let _ = writeln!(s, "table{which}: {}", pass_fail(pass));
        s
    });
    table_status(pass, &format!("table{which}"))
}

#[derive(Serialize)]
struct GammaOut {
    thresholds: Thresholds,
    checks: Vec<tables::ConstantCheck>,
    ordering: Vec<(i32, bool)>,
    pass: bool,
}

pub fn gamma(out: &Out) -> CmdResult {
    let (checks, ordering) = tables::table2();
    // ξ values are derived quantities reported alongside the table, not part of it
    let pass = checks.iter().filter(|c| !c.name.starts_with("xi")).all(|c| c.pass)
        && ordering.iter().all(|&(_, ok)| ok);
    let o = GammaOut {
        thresholds: Thresholds::compute(),
        checks,
        ordering,
        pass,
    };
    out.emit(&o, || {
        let mut s = String::new();
        for c in &o.checks {
            let note = if c.name.starts_with("xi") { " (derived)" } else { "" };
            let _ = writeln!(
                s,
                "{:<12} {:<20} printed {:<8} {}{note}",
                c.name,
                out.real(c.computed),
                c.printed,
                pass_fail(c.pass)
            );
        }
        for (c, ok) in &o.ordering {
            let _ = writeln!(s, "xbar1({c}) < gamma5({c}) < xunder2({c})  {}", pass_fail(*ok));
        }
        let _ = writeln!(s, "gamma: {}", pass_fail(pass));
        s
    });
    table_status(pass, "gamma")
}

pub fn family(out: &Out, a: u64, c: i32, y_max: i64, prime_only: bool, policy: &NumericPolicy) -> CmdResult {
    if y_max < 1 {
        return Err(Failure::invalid("ymax must be at least 1"));
    }
    let entries = family_scan(a, c, y_max, prime_only, policy)?;
    out.emit(&entries, || {
        let mut s = String::new();
        for e in &entries {
            let p = &e.point;
            let verdict = e
                .verdict
                .as_ref()
                .map_or("-".to_string(), |v| format!("{} {}", v.kind.label(), v.verdict.label()));
            let _ = writeln!(
                s,
                "y={:<6} p={:<20} q={:<20} k={:<20} x={:<12} {}",
                p.y,
                p.p,
                p.q,
                p.k,
                out.opt_real(p.x),
                verdict
            );
        }
        let _ = writeln!(s, "{} points", entries.len());
        s
    });
    Ok(())
}

pub fn count_exceptional(out: &Out, c: i32, k_max: u128, policy: &NumericPolicy) -> CmdResult {
    let e = numtheory::count_exceptionals(c, k_max, policy)?;
    out.emit(&e, || {
        format!(
            "type I   {} {:?}\ntype II  {} {:?}\ntype III {} {:?}\n",
            e.type_i.len(),
            e.type_i,
            e.type_ii.len(),
            e.type_ii,
            e.type_iii.len(),
            e.type_iii
        )
    });
    Ok(())
}

#[derive(Serialize)]
struct Count<P: Serialize> {
    params: P,
    count: u64,
}

pub fn count_p2(out: &Out, a: f64, x: u64) -> CmdResult {
    let n = numtheory::count_p2_ratio(a, x)?;
    out.emit(
        &Count {
            params: serde_json::json!({ "a": a, "x": x }),
            count: n,
        },
        || n.to_string(),
    );
    Ok(())
}

pub fn count_poly(out: &Out, coeffs: &str, x: u64, mode: &str) -> CmdResult {
    let f = Poly::parse_descending(coeffs)?;
    let mode: PolyCountMode = mode.parse()?;
    let n = numtheory::count_poly(&f, x, mode)?;
    out.emit(
        &Count {
            params: serde_json::json!({ "coeffs": f.coeffs_ascending().iter().rev().collect::<Vec<_>>(), "x": x, "mode": mode }),
            count: n,
        },
        || n.to_string(),
    );
    Ok(())
}

pub fn hlconst(out: &Out, c: i32, prime_limit: u64) -> CmdResult {
    let h = numtheory::hl_constant(c, prime_limit)?;
    out.emit(&h, || format!("{} ± {}", out.real(h.value), out.real(h.error)));
    Ok(())
}

#[derive(Serialize)]
struct AbelianOut {
    #[serde(flatten)]
    verdict: AbelianVerdict,
    oracle: Option<u64>,
}

pub fn abelian(out: &Out, orders: &str, oracle: bool, policy: &NumericPolicy) -> CmdResult {
    let g = AbelianGroup::new(parse_list(orders, "order")?)?;
    let v = abelian_hat_l(&g)?;
    let checked = if oracle {
        let o = abelian_oracle(&g, &OracleConfig::default(), policy)?;
        if o != v.hat_l {
            return Err(Failure::invariant(format!(
                "exhaustive search gives {o} but the case analysis gives {} for {g}",
                v.hat_l
            )));
        }
        Some(o)
    } else {
        None
    };
    let o = AbelianOut {
        verdict: v,
        oracle: checked,
    };
    out.emit(&o, || {
        let v = &o.verdict;
        let mut s = format!(
            "{}  order {}  l0 {}  hat_l {}  {}  ({:?})\n",
            v.group,
            v.order,
            v.l0,
            v.hat_l,
            v.class.label(),
            v.case
        );
        if let Some(h) = o.oracle {
            let _ = writeln!(s, "oracle agrees: hat_l = {h}");
        }
        s
    });
    Ok(())
}

#[derive(Serialize)]
struct ProfileRow {
    x: f64,
    mu0: f64,
    mu1: f64,
    mu2: f64,
    rb: f64,
}

pub fn profile(out: &Out, c: i32, k: u64, samples: usize, csv: Option<PathBuf>) -> CmdResult {
    let rows: Vec<ProfileRow> = ramanujan_circulant::classify::profile_samples(c, k, samples)?
        .into_iter()
        .map(|p| ProfileRow {
            x: p.x,
            mu0: p.m0,
            mu1: p.m1,
            mu2: p.m2,
            rb: p.a,
        })
        .collect();
    if out.json && csv.is_none() {
        out.emit(&rows, String::new);
        return Ok(());
    }
    let mut w = csv_writer(&csv.unwrap_or_else(|| PathBuf::from("-")))?;
    for r in &rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classification_json_round_trips() {
        let v = ramanujan_circulant::classify(Modulus::new(35).unwrap()).unwrap();
        let c = Classification::from(&v);
        let s = serde_json::to_string(&c).unwrap();
        assert_eq!(serde_json::from_str::<Classification>(&s).unwrap(), c);
        assert_eq!(c.in_j.source.as_deref(), Some("quadratic"));
    }

    #[test]
    fn lists() {
        assert_eq!(parse_list::<i128>("1, -1,2,", "residue").unwrap(), vec![1, -1, 2]);
        assert!(parse_list::<u64>("5,x", "order").is_err());
    }
}
