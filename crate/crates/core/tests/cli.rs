use std::process::{Command, Output};

fn dimalg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dimalg")).args(args).output().expect("binary runs")
}

fn fixture(rel: &str) -> String {
    format!("{}/fixtures/{rel}", env!("CARGO_MANIFEST_DIR"))
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).trim_end().to_string()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).trim_end().to_string()
}

#[test]
fn flow_example() {
    let o = dimalg(&["eval", "2.2 L/min + 2.1 L/min"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "4.300 L/min");
    let o = dimalg(&["convert", "300 cm^3 / (2.2 L/min + 2.1 L/min)", "s"]);
    assert_eq!(stdout(&o), "4.186 s");
    let o = dimalg(&["eval", "300 cm^3 / (2.2 L/min + 2.1 L/min)", "--to", "min"]);
    assert_eq!(stdout(&o), "0.06977 min");
    let o = dimalg(&["--exact", "eval", "36.7 cm^3/s + 2.1 L/min"]);
    assert_eq!(stdout(&o), "(717/10) cm^3/s");
    let o = dimalg(&["--exact", "eval", "36.7 cm^3/s + 2.1 L/min", "--to", "L/min"]);
    assert_eq!(stdout(&o), "(2151/500) L/min");
}

#[test]
fn digits_and_signs() {
    assert_eq!(stdout(&dimalg(&["--digits", "7", "eval", "1 min / 7"])), "0.1428571 min");
    assert_eq!(stdout(&dimalg(&["--digits", "2", "eval", "1/3"])), "0.33");
    assert_eq!(stdout(&dimalg(&["eval", "-2 m * 3 m"])), "-6.000 m^2");
    assert_eq!(stdout(&dimalg(&["--exact", "eval", "(3 m)^2 / 2 s"])), "(9/2) m^2/s");
    assert_eq!(dimalg(&["--digits", "0", "eval", "1"]).status.code(), Some(2));
}

#[test]
fn dimension_errors_exit_1() {
    let o = dimalg(&["eval", "2 m + 3 s"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stderr(&o), "error: dimension mismatch: length vs time");
    let o = dimalg(&["convert", "2 L", "m"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stderr(&o), "error: cannot express length³ in length");
}

#[test]
fn input_errors_exit_2() {
    let o = dimalg(&["eval", "3 furlong"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(stderr(&o), "error: unknown unit `furlong` at byte 2");
    let o = dimalg(&["eval", "3 m $"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("byte 4"), "{}", stderr(&o));
    assert_eq!(dimalg(&["eval", "1 m / (0 s)"]).status.code(), Some(2));
    assert_eq!(dimalg(&["convert", "1 m", "3 cm"]).status.code(), Some(2));
    assert_eq!(dimalg(&["--registry", "/nonexistent.json", "eval", "1 m"]).status.code(), Some(2));
}

#[test]
fn registries() {
    let o = dimalg(&["registry", "validate"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("ok: 2 base dimensions (length, time)"), "{out}");
    assert!(out.contains("L: 1/1000 × length³"));
    let dir = std::env::temp_dir().join(format!("dimalg-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let good = dir.join("imperial.json");
    std::fs::write(
        &good,
        r#"{"base": ["length"], "units": [{"symbol": "m", "dims": [1], "factor": "1"}, {"symbol": "ft", "dims": [1], "factor": "0.3048"}]}"#,
    )
    .unwrap();
    let g = good.to_str().unwrap();
    assert_eq!(dimalg(&["registry", "validate", g]).status.code(), Some(0));
    assert_eq!(stdout(&dimalg(&["--registry", g, "convert", "10 ft", "m"])), "3.048 m");
    let bad = dir.join("bad.json");
    std::fs::write(&bad, r#"{"base": ["length"], "units": [{"symbol": "ft", "dims": [1], "factor": "0.3048"}]}"#).unwrap();
    let o = dimalg(&["registry", "validate", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("no coherent unit for `length`"));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn structure_checks() {
    for good in ["f3_z2.json", "f3_z2_named.json"] {
        let o = dimalg(&["check", &fixture(&format!("structures/{good}"))]);
        assert_eq!(o.status.code(), Some(0), "{good}: {}", stdout(&o));
        assert!(!stdout(&o).contains("[FAIL]"));
        assert!(stdout(&o).contains("[PASS] unit section"));
    }
    let cases = [
        ("broken_associativity.json", "[FAIL] multiplication associative", "witness: (2 * 2) * 1'"),
        ("broken_absorbency.json", "[FAIL] absorbency", "witness: 0_(0) * 1"),
        ("broken_dimension_morphism.json", "[FAIL] dimension morphism", "dim(1 * 1') = (0) but expected (1)"),
        ("zero_slice.json", "[FAIL] unit section", "slice (1) contains only zero"),
        ("bad_unit_candidate.json", "[FAIL] unit section", "u(sign) is zero"),
    ];
    for (file, law, witness) in cases {
        let o = dimalg(&["check", &fixture(&format!("structures/{file}"))]);
        assert_eq!(o.status.code(), Some(1), "{file}");
        let out = stdout(&o);
        let line = out.lines().find(|l| l.contains(law)).unwrap_or_else(|| panic!("{file}: {out}"));
        assert!(line.contains(witness), "{file}: {line}");
    }
    let o = dimalg(&["check", &fixture("structures/undeclared_dimension.json")]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("undeclared dimension `2`"), "{}", stderr(&o));
    assert_eq!(dimalg(&["check", "/nonexistent.json"]).status.code(), Some(2));
}

#[test]
fn poisson_commands() {
    let canonical = fixture("poisson/canonical.json");
    assert_eq!(stdout(&dimalg(&["poisson", "bracket", &canonical, "q^2", "p"])), "2*q");
    assert_eq!(stdout(&dimalg(&["poisson", "bracket", &canonical, "p", "q"])), "-1");
    let o = dimalg(&["poisson", "reduce", &canonical, "--cutoff", "6"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "N(I)/I for I = (q), degree <= 6: rank 1\n  (0): 1");
    let o = dimalg(&["poisson", "reduce", &fixture("poisson/canonical2.json"), "--cutoff", "3"]);
    assert!(stdout(&o).contains("rank 10"), "{}", stdout(&o));
    for good in ["canonical.json", "canonical2.json", "so3.json"] {
        let o = dimalg(&["poisson", "check", &fixture(&format!("poisson/{good}")), "--count", "60"]);
        assert_eq!(o.status.code(), Some(0), "{good}: {}", stdout(&o));
    }
    let broken = fixture("poisson/broken_antisymmetry.json");
    let o = dimalg(&["poisson", "check", &broken]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("[FAIL] antisymmetric on generators (4 checks)  witness: {q, p} = 1, {p, q} = 1"));
    let o = dimalg(&["poisson", "reduce", &broken]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("not a Poisson bracket"));
    assert_eq!(dimalg(&["poisson", "bracket", &canonical, "q", "r"]).status.code(), Some(2));
    assert_eq!(dimalg(&["poisson", "reduce", &canonical, "--cutoff", "13"]).status.code(), Some(2));
}
