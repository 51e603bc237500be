use std::collections::BTreeMap;
use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

fn shapeforge(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_shapeforge"))
        .args(args)
        .env_remove("SHAPEFORGE_MAX_N")
        .output()
        .expect("binary runs")
}

fn stdout_ok(args: &[&str]) -> String {
    let out = shapeforge(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    let v: Value = serde_json::from_str(&stdout_ok(&full)).unwrap();
    assert_eq!(v["schema"], "shapeforge/1");
    v
}

fn csv_rows(args: &[&str]) -> (Vec<String>, Vec<Vec<String>>) {
    let mut full = args.to_vec();
    full.extend(["--format", "csv"]);
    let text = stdout_ok(&full);
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let header = reader.headers().unwrap().iter().map(str::to_owned).collect();
    let rows = reader
        .records()
        .map(|r| r.unwrap().iter().map(str::to_owned).collect())
        .collect();
    (header, rows)
}

#[test]
fn abstract_chain() {
    let s = "...((((...)..((...))))..)";
    assert_eq!(stdout_ok(&["abstract", "--level", "pi", "--in", s]), "[[][]]\n");
    assert_eq!(stdout_ok(&["abstract", "--level", "pi-prime", "--in", s]), "_[[[_]_[_]]_]\n");
    assert_eq!(stdout_ok(&["abstract", "--level", "island", "--in", s]), "((((_)_((_))))_)\n");
}

#[test]
fn encode_empty_path() {
    assert_eq!(stdout_ok(&["bijection", "encode2", "--path", ""]), "()\n");
}

#[test]
fn encode_decode_worked_example() {
    let encoded = stdout_ok(&["bijection", "encode2", "--path", "UBURDD"]);
    assert_eq!(encoded, "(()((())()()))\n");
    let decoded = stdout_ok(&["bijection", "decode2", "--in", encoded.trim()]);
    assert_eq!(decoded, "UBURDD\n");
    let shape = stdout_ok(&["bijection", "encode1", "--path", "UHDH"]);
    assert_eq!(stdout_ok(&["bijection", "decode1", "--in", shape.trim()]), "UHDH\n");
}

#[test]
fn level0_distribution_csv() {
    let (header, rows) = csv_rows(&["distribution", "level0", "--n", "100", "--r0-max", "8"]);
    assert_eq!(header, ["r0", "exact", "asymptotic", "deviation"]);
    assert_eq!(rows.len(), 9);
    for (r0, row) in rows.iter().enumerate() {
        assert_eq!(row[0], r0.to_string());
        let limit = (r0 as f64 + 1.0) / 2f64.powi(r0 as i32 + 2);
        assert!((row[2].parse::<f64>().unwrap() - limit).abs() < 1e-12);
        assert!(row[3].parse::<f64>().unwrap() <= 0.03);
    }
}

#[test]
fn pi_distribution_json() {
    let v = json(&["distribution", "pi", "--lambda", "4", "--nu", "200"]);
    assert_eq!(v["parameters"]["lambda"], 4);
    assert_eq!(v["rows"].as_array().unwrap().len(), 9);
    assert!(v["max_deviation"].as_f64().unwrap() <= 0.03);
}

#[test]
fn zeta_for_lambda_four() {
    let v = json(&["asymptotics", "zeta", "--lambda", "4"]);
    let zeta = v["zeta"].as_f64().unwrap();
    assert!((0.7562..=0.7564).contains(&zeta));
    assert!((v["a"].as_f64().unwrap() - 0.3639).abs() <= 5e-4);
    assert!((v["expected_components"].as_f64().unwrap() - 2.316).abs() <= 2e-3);
}

#[test]
fn asymptotic_ratio_for_motzkin() {
    let v = json(&["asymptotics", "motzkin_number", "--n", "400"]);
    let ratio = v["ratio"].as_f64().unwrap();
    assert!((0.95..=1.05).contains(&ratio));
    assert!(v["exact"].as_str().unwrap().len() > 180);
}

#[test]
fn floats_have_at_most_twelve_digits() {
    let out = stdout_ok(&["asymptotics", "zeta", "--lambda", "5"]);
    let zeta = out
        .lines()
        .find_map(|l| l.strip_prefix("zeta: "))
        .expect("zeta line");
    let digits = zeta.chars().filter(char::is_ascii_digit).count();
    assert!(digits <= 13, "{zeta}");
}

#[test]
fn verify_all_passes() {
    let (header, rows) = csv_rows(&["verify", "all"]);
    assert_eq!(header[..3], ["identity", "range", "status"]);
    assert_eq!(rows.len(), 8);
    assert!(rows.iter().all(|r| r[2] == "pass"), "{rows:?}");
}

#[test]
fn verify_with_range() {
    let v = json(&["verify", "parity_m0m1", "--lo", "1", "--hi", "5"]);
    let reports = v["reports"].as_array().unwrap();
    assert_eq!(reports[0]["status"], "pass");
    assert_eq!(reports[0]["instances"].as_array().unwrap().len(), 5);
}

#[test]
fn island_counts_match_generated_diagrams() {
    for ell in 1..=5 {
        let ell = ell.to_string();
        let (_, table) = csv_rows(&["count", "island", "--ell", &ell]);
        let (_, diagrams) = csv_rows(&["count", "island-diagrams", "--ell", &ell]);
        let mut by_class: BTreeMap<(String, String), u64> = BTreeMap::new();
        for d in &diagrams {
            *by_class.entry((d[1].clone(), d[2].clone())).or_default() += 1;
        }
        let formula: BTreeMap<(String, String), u64> = table
            .iter()
            .map(|r| ((r[1].clone(), r[2].clone()), r[3].parse().unwrap()))
            .collect();
        assert_eq!(formula, by_class, "ell = {ell}");
    }
}

#[test]
fn bijection_list_is_catalan_sized() {
    let (header, rows) = csv_rows(&["bijection", "list", "--n", "4"]);
    assert_eq!(header, ["path", "image", "r0"]);
    assert_eq!(rows.len(), 42);
    let (_, rows) = csv_rows(&["bijection", "list", "--n", "5", "--kind", "motzkin1"]);
    assert_eq!(rows.len(), 21);
}

#[test]
fn count_tables() {
    let (_, rows) = csv_rows(&["count", "level0", "--n", "12"]);
    let total: u64 = rows.iter().map(|r| r[2].parse::<u64>().unwrap()).sum();
    let motzkin = stdout_ok(&["count", "motzkin", "--n", "12", "--format", "csv"]);
    assert_eq!(motzkin, format!("n,count\n12,{total}\n"));
    assert_eq!(total, 15511);
    let (_, rows) = csv_rows(&["count", "narayana", "--n", "4"]);
    let row: Vec<&str> = rows.iter().map(|r| r[2].as_str()).collect();
    assert_eq!(row, ["1", "6", "6", "1"]);
    let (_, rows) = csv_rows(&["count", "g", "--order", "2", "--form", "closed"]);
    assert_eq!(rows[1][1], "x*y^2");
}

#[test]
fn compatible_table() {
    let v = json(&["compatible", "--lambda", "1", "--nu", "12"]);
    let rows = v["rows"].as_array().unwrap();
    let sum: u64 = rows
        .iter()
        .map(|r| r["count"].as_str().unwrap().parse::<u64>().unwrap())
        .sum();
    assert_eq!(v["total"].as_str().unwrap().parse::<u64>().unwrap(), sum);
}

#[test]
fn file_input_skips_comments() {
    let mut f = std::env::temp_dir();
    f.push(format!("shapeforge-cli-test-{}.db", std::process::id()));
    let mut file = std::fs::File::create(&f).unwrap();
    writeln!(file, "# two structures\n..((...))..\n\n>named\n((...)(...))").unwrap();
    drop(file);
    let out = stdout_ok(&["abstract", "--level", "pi", "--file", f.to_str().unwrap()]);
    assert_eq!(out, "[]\n[[][]]\n");
    let (_, rows) = csv_rows(&["analyze", "--file", f.to_str().unwrap()]);
    assert_eq!(rows.len(), 2);
    std::fs::remove_file(&f).unwrap();
}

#[test]
fn domain_errors_exit_one_without_output() {
    for args in [
        &["validate", "--in", "(.()..)"][..],
        &["abstract", "--level", "pi", "--in", "...."],
        &["bijection", "decode2", "--in", "(()"],
        &["bijection", "encode2", "--path", "UDD"],
        &["asymptotics", "zeta", "--lambda", "40"],
        &["count", "island-diagrams", "--ell", "11"],
    ] {
        let out = shapeforge(args);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
        let err = String::from_utf8(out.stderr).unwrap();
        assert_eq!(err.lines().count(), 1, "{args:?}: {err}");
    }
    let err = String::from_utf8(shapeforge(&["validate", "--in", "(.()..)"]).stderr).unwrap();
    assert!(err.contains("AdjacentPair"));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["distribution", "level0"][..],
        &["count", "binomial"],
        &["verify", "no_such_identity"],
        &["abstract", "--in", "((...))"],
        &["frobnicate"],
        &["count", "catalan", "--n", "-3"],
    ] {
        let out = shapeforge(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
    }
    let err = String::from_utf8(shapeforge(&["distribution", "pi", "--lambda", "4"]).stderr).unwrap();
    assert!(err.contains("--nu"), "{err}");
}

#[test]
fn guard_override() {
    let run = |limit: &str| {
        Command::new(env!("CARGO_BIN_EXE_shapeforge"))
            .args(["bijection", "list", "--n", "3", "--format", "csv"])
            .env("SHAPEFORGE_MAX_N", limit)
            .output()
            .unwrap()
    };
    let blocked = run("2");
    assert_eq!(blocked.status.code(), Some(1));
    assert!(String::from_utf8(blocked.stderr).unwrap().contains("limit 2"));
    assert!(run("3").status.success());
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["asymptotics", "pi_total", "--lambda", "3", "--nu", "120", "--format", "json"][..],
        &["analyze", "--in", ".((.((...)).((...))..)).(...)", "--format", "json"],
        &["distribution", "pi", "--lambda", "2", "--nu", "80", "--format", "csv"],
    ] {
        assert_eq!(shapeforge(args).stdout, shapeforge(args).stdout);
    }
}
