use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::{json, Value};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_modp-satake"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn goldens_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../goldens")
}

#[test]
fn satake_prints_the_laurent_operator() {
    let o = run(&["satake", "--p", "5", "--r", "2", "--op", "phi", "--degree", "0"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "{\"X^1\": 1}\n");
    let o = run(&["satake", "--p", "5", "--r", "2", "--op", "phi", "--degree", "1"]);
    assert_eq!(stdout(&o), "{\"X^-1\": 1}\n");
    let o = run(&["satake", "--p", "3", "--r", "1", "--op", "phi^3", "--degree", "1"]);
    assert_eq!(stdout(&o), "{\"X^-3\": 1}\n");
    let o = run(&["satake", "--p", "3", "--r", "0", "--op", "1+phi^2", "--degree", "0"]);
    assert_eq!(stdout(&o), "{\"X^0\": 1, \"X^2\": 1}\n");
}

#[test]
fn satake_json_carries_the_run() {
    let o = run(&["--format", "json", "satake", "--p", "3", "--r", "2", "--degree", "1"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["laurent"], json!({"X^-1": 1}));
    // ω^{r+1} ⊠ ω^{-1} with r = 2, p = 3, exponents mod 2
    assert_eq!(v["units"], json!([1, 1]));
    assert!(v["shell_checked"].as_u64().unwrap() > 0);
}

#[test]
fn table_for_p3_by_hand() {
    let o = run(&["table1", "--p", "3", "--all"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let rows: Vec<Vec<&str>> = text.lines().skip(1).map(|l| l.split("  ").map(str::trim).filter(|s| !s.is_empty()).collect()).collect();
    assert_eq!(rows.len(), 4);
    // 1 ∘ det: L^0 = 1 ⊠ 1
    assert_eq!(rows[0][2..], ["1 ⊠ 1", "0", "yes"]);
    // Sp: L^-1 = ω ⊠ ω^{-1}, and ω^{-1} = ω when p = 3
    assert_eq!(rows[1][2..], ["0", "ω^1 ⊠ ω^1", "yes"]);
    // i(1 ⊠ ω): L^0 = 1 ⊠ ω, L^-1 = ω·ω ⊠ ω^{-1} = 1 ⊠ ω
    assert_eq!(rows[2][2..], ["1 ⊠ ω^1", "1 ⊠ ω^1", "yes"]);
    assert_eq!(rows[3][2..], ["0", "0", "yes"]);
}

#[test]
fn table_rows_over_an_extension() {
    let o = run(&["--format", "json", "table1", "--p", "5", "--ext-degree", "2", "--type", "principal", "--chi", "[0,1],1", "--chi2", "2,0"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["rows"][0]["matches"], json!(true));
}

#[test]
fn cohomology_of_a_weight() {
    let o = run(&["cohomology", "--p", "3", "--weight", "1,0"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("dims (1, 1)  oracle (1, 1)\n"));
    assert!(stdout(&o).contains("Hecke diag(p,p) on H^1"));
}

#[test]
fn delta_verb_matches() {
    let o = run(&["--format", "json", "delta", "--p", "5"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["matches"], json!(true));
    assert_eq!(v["delta"], json!({"chi1": {"lambda": 1, "e": 1}, "chi2": {"lambda": 1, "e": 3}}));
}

#[test]
fn invalid_configurations_exit_2() {
    for args in [
        vec!["satake", "--p", "4", "--r", "0"],
        vec!["satake", "--p", "3", "--r", "5"],
        vec!["satake", "--p", "3", "--r", "0", "--op", "phi^x"],
        vec!["satake", "--p", "3", "--r", "0", "--degree", "2"],
        vec!["satake", "--p", "3"],
        vec!["table1", "--p", "3"],
        vec!["table1", "--p", "3", "--type", "principal", "--chi", "1,0", "--chi2", "1,0"],
        vec!["cohomology", "--p", "3", "--weight", "1"],
        vec!["verify", "--criteria", "99", "--no-goldens"],
        vec!["frobnicate"],
    ] {
        let o = run(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    }
}

#[test]
fn output_is_byte_identical() {
    let args = ["--format", "json", "table1", "--p", "5", "--all", "--chi", "2,1"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
    let args = ["verify", "--criteria", "5,7,9", "--no-goldens", "--seed", "17"];
    let a = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, run(&args).stdout);
    assert_eq!(stdout(&a).lines().filter(|l| l.starts_with("[PASS]")).count(), 3);
}

#[test]
fn stored_goldens_hold_the_expected_values() {
    let dir = goldens_dir();
    for p in [2, 3, 5, 7] {
        for r in 0..p {
            for (degree, n) in [(0, 1), (1, -1)] {
                let path = dir.join(format!("p{p}/satake/r{r}_d{degree}_phi.json"));
                let v: Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
                assert_eq!(v["laurent"], json!({ format!("X^{n}"): 1 }), "{}", path.display());
            }
        }
    }
    for p in [3, 5] {
        let v: Value = serde_json::from_str(&fs::read_to_string(dir.join(format!("p{p}/table1/all.json"))).unwrap()).unwrap();
        let rows = v["rows"].as_array().unwrap();
        assert_eq!(rows.len(), 4);
        assert!(rows.iter().all(|r| r["matches"] == json!(true)));
    }
}

fn copy_dir(from: &Path, to: &Path) {
    fs::create_dir_all(to).unwrap();
    for entry in fs::read_dir(from).unwrap() {
        let entry = entry.unwrap();
        let target = to.join(entry.file_name());
        if entry.file_type().unwrap().is_dir() {
            copy_dir(&entry.path(), &target);
        } else {
            fs::copy(entry.path(), target).unwrap();
        }
    }
}

#[test]
fn golden_drift_fails_verify() {
    let tmp = std::env::temp_dir().join(format!("modp-satake-goldens-{}", std::process::id()));
    let _ = fs::remove_dir_all(&tmp);
    copy_dir(&goldens_dir(), &tmp);
    let ok = bin().args(["verify", "--goldens-only"]).env("MODP_SATAKE_GOLDENS", &tmp).output().unwrap();
    assert_eq!(ok.status.code(), Some(0), "{}", stdout(&ok));
    fs::write(tmp.join("p3/satake/r1_d0_phi.json"), "{\"laurent\": {\"X^2\": 1}}").unwrap();
    let bad = bin().args(["verify", "--goldens-only"]).env("MODP_SATAKE_GOLDENS", &tmp).output().unwrap();
    assert_eq!(bad.status.code(), Some(1));
    assert!(stdout(&bad).contains("[FAIL] golden p3/satake/r1_d0_phi.json differs"));
    let _ = fs::remove_dir_all(&tmp);
}
