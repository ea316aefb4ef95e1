use std::process::{Command, Output};

fn rcirc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rcirc")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> serde_json::Value {
    let o = rcirc(args);
    assert!(o.status.success(), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_str(&stdout(&o)).unwrap()
}

#[test]
fn classify_json_shape() {
    let v = json(&["classify", "35", "--json"]);
    assert_eq!(v["m"], 35);
    assert_eq!(v["l0"], 9);
    assert_eq!(v["inJ"]["c"], -1);
    assert_eq!(v["inJ"]["k"], 4);
    assert_eq!(v["kind"], "II");
    assert_eq!((v["p"].as_u64(), v["q"].as_u64()), (Some(5), Some(7)));
    assert_eq!(v["verdict"], "exceptional");
    assert_eq!(v["hatl"], 11);
    let text = stdout(&rcirc(&["classify", "35", "--json"]));
    assert!(text.starts_with(r#"{"m":35,"l0":9,"inJ":{"c":-1,"k":4,"#));
    let again: serde_json::Value = serde_json::from_str(&serde_json::to_string(&v).unwrap()).unwrap();
    assert_eq!(again, v);
}

#[test]
fn oracle_hat_l() {
    assert_eq!(stdout(&rcirc(&["hatl", "21", "--oracle"])).trim(), "7");
    assert_eq!(json(&["hatl", "55", "--json"])["hatl"], 13);
}

#[test]
fn exit_codes() {
    assert_eq!(rcirc(&["classify", "36"]).status.code(), Some(2));
    assert_eq!(rcirc(&["classify", "abc"]).status.code(), Some(2));
    assert_eq!(rcirc(&["hatl", "301", "--oracle"]).status.code(), Some(2));
    assert_eq!(rcirc(&["spectrum", "15", "--complement", "1"]).status.code(), Some(2));
    assert_eq!(rcirc(&["classify", "35", "--precision", "10"]).status.code(), Some(2));
    assert_eq!(rcirc(&["count", "poly", "--coeffs", "1,0,1", "--x", "5", "--mode", "odd"]).status.code(), Some(2));
    assert_eq!(rcirc(&["abelian", "--orders", "3,3"]).status.code(), Some(0));
}

#[test]
fn scan_csv_columns_and_order() {
    let dir = std::env::temp_dir().join(format!("rcirc-scan-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("scan.csv");
    let o = rcirc(&["scan", "3", "99", "--csv", path.to_str().unwrap()]);
    assert!(o.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "m,l0,in_j,c,k,kind,verdict,hat_l,mu_hat,rb,margin,near_threshold"
    );
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 49);
    let ms: Vec<u64> = rows.iter().map(|r| r[0].parse().unwrap()).collect();
    assert!(ms.windows(2).all(|w| w[0] + 2 == w[1]));
    let exceptional = rows.iter().filter(|r| r[6] == "exceptional").count();
    assert_eq!(exceptional, 18);
    let row35 = rows.iter().find(|r| r[0] == "35").unwrap();
    assert_eq!(&row35[1..8], &["9", "true", "-1", "4", "II", "exceptional", "11"]);
    assert!(stdout(&o).contains("49 odd orders, 18 exceptional"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn scan_json_is_an_ordered_array() {
    let v = json(&["scan", "15", "41", "--json"]);
    let ms: Vec<u64> = v.as_array().unwrap().iter().map(|x| x["m"].as_u64().unwrap()).collect();
    assert_eq!(ms, (15..=41).step_by(2).collect::<Vec<_>>());
}

#[test]
fn tables_pass() {
    for t in ["table1", "table4", "table5", "table6", "gamma"] {
        let o = rcirc(&[t]);
        assert!(o.status.success(), "{t}");
        assert!(stdout(&o).trim_end().ends_with(&format!("{t}: PASS")), "{t}");
    }
    let o = rcirc(&["table3", "--kmax", "50"]);
    assert!(o.status.success());
    assert!(!stdout(&o).contains("FAIL"));
    let v = json(&["table6", "--json"]);
    assert_eq!(v["pass"], true);
    assert_eq!(v["rows"][0]["p"], 103507276549u64);
}

#[test]
fn spectrum_canonicalizes_residues() {
    let v = json(&["spectrum", "15", "--complement", "-1,1,17,-2", "--json"]);
    assert_eq!(v["complement"], serde_json::json!([0, 1, 2, 13, 14]));
    assert_eq!(v["valency"], 10);
    assert_eq!(v["values"].as_array().unwrap().len(), 15);
}

#[test]
fn counts_and_constants() {
    let e = json(&["count", "exceptional", "--c", "-5", "--kmax", "50", "--json"]);
    assert_eq!(e["type_ii"], serde_json::json!([22, 39, 43]));
    assert_eq!(json(&["count", "p2", "--a", "4", "--x", "100", "--json"])["count"], 13);
    let p = stdout(&rcirc(&["count", "poly", "--coeffs", "1,0,1", "--x", "10", "--mode", "prime"]));
    assert_eq!(p.trim(), "5");
    let h = json(&["hlconst", "--c", "5", "--plimit", "100000", "--json"]);
    assert!((h["value"].as_f64().unwrap() - 1.77328).abs() < 0.02);
}

#[test]
fn family_and_abelian() {
    let f = json(&["family", "--a", "1", "--c", "-5", "--ymax", "20", "--prime-only", "--json"]);
    let ys: Vec<i64> = f.as_array().unwrap().iter().map(|e| e["point"]["y"].as_i64().unwrap()).collect();
    assert_eq!(ys, vec![7, 17]);
    let a = json(&["abelian", "--orders", "7,7", "--oracle", "--json"]);
    assert_eq!(a["hat_l"], 13);
    assert_eq!(a["oracle"], 13);
}

#[test]
fn profile_csv() {
    let o = rcirc(&["profile", "--c", "-1", "--k", "10", "--samples", "9"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "x,mu0,mu1,mu2,rb");
    // the branch point x = 3/2 is skipped
    assert_eq!(lines.len(), 1 + 8);
}

#[test]
fn precision_controls_printed_digits() {
    let short = stdout(&rcirc(&["classify", "37"]));
    let long = stdout(&rcirc(&["classify", "37", "--precision", "40"]));
    assert!(short.contains("9.4804359\n"));
    assert!(long.contains("9.480435") && long.len() > short.len());
}
