//! Golden files: the JSON output of fixed invocations, stored as
//! `<dir>/p<p>/<verb>/<params>.json`.

use std::fs;
use std::path::PathBuf;

use clap::Parser;
use serde_json::Value;

use crate::args::Cli;
use crate::run::{execute, Failure};

pub const ENV_DIR: &str = "MODP_SATAKE_GOLDENS";

pub struct Case {
    pub path: String,
    pub argv: Vec<String>,
}

fn case(p: u64, verb: &str, key: &str, args: &str) -> Case {
    let argv = format!("{verb} --p {p} {args}").split_whitespace().map(String::from).collect();
    Case { path: format!("p{p}/{verb}/{key}.json"), argv }
}

pub fn cases() -> Vec<Case> {
    let mut out = Vec::new();
    for p in [2u64, 3, 5, 7] {
        for r in 0..p {
            for degree in 0..2 {
                out.push(case(p, "satake", &format!("r{r}_d{degree}_phi"), &format!("--r {r} --degree {degree} --op phi")));
                if p <= 5 {
                    out.push(case(p, "satake", &format!("r{r}_d{degree}_phi2"), &format!("--r {r} --degree {degree} --op phi^2")));
                }
            }
        }
    }
    for p in [3u64, 5] {
        out.push(case(p, "table1", "all", "--all"));
        out.push(case(p, "table1", "all_chi_omega_lambda2", "--all --chi 1,1 --r 1 --lambda 2"));
        out.push(case(p, "delta", "default", ""));
    }
    out.push(case(5, "table1", "all_ext2", "--all --ext-degree 2 --lambda [0,1]"));
    for p in [2u64, 3, 5] {
        for r in 0..p {
            out.push(case(p, "cohomology", &format!("weight_{r}_0"), &format!("--weight {r},0")));
        }
        out.push(case(p, "cohomology", "inflated_trivial", "--chi 1,0"));
    }
    out
}

pub fn dir() -> PathBuf {
    if let Some(d) = std::env::var_os(ENV_DIR) {
        return PathBuf::from(d);
    }
    let local = PathBuf::from("goldens");
    if local.is_dir() {
        return local;
    }
    PathBuf::from(concat!(env!("CARGO_MANIFEST_DIR"), "/../../goldens"))
}

pub fn evaluate(case: &Case) -> Result<Value, Failure> {
    let argv = ["modp-satake", "--format", "json"].into_iter().map(String::from).chain(case.argv.iter().cloned());
    let cli = Cli::try_parse_from(argv).map_err(|e| Failure::Config(format!("golden {}: {e}", case.path)))?;
    Ok(execute(&cli.verb, cli.seed)?.json)
}

#[derive(Default)]
pub struct Summary {
    pub checked: usize,
    pub written: usize,
    pub mismatches: Vec<String>,
}

pub fn check(bless: bool) -> Result<Summary, Failure> {
    let root = dir();
    let mut summary = Summary::default();
    for case in cases() {
        let value = evaluate(&case)?;
        let path = root.join(&case.path);
        if bless {
            let io = |e: std::io::Error| Failure::Config(format!("cannot write {}: {e}", path.display()));
            fs::create_dir_all(path.parent().expect("nested path")).map_err(io)?;
            let body = serde_json::to_string_pretty(&value).expect("serializable") + "\n";
            fs::write(&path, body).map_err(io)?;
            summary.written += 1;
            continue;
        }
        summary.checked += 1;
        let stored = fs::read_to_string(&path).ok().and_then(|s| serde_json::from_str::<Value>(&s).ok());
        match stored {
            None => summary.mismatches.push(format!("{} missing or unreadable", case.path)),
            Some(v) if v != value => summary.mismatches.push(format!("{} differs", case.path)),
            Some(_) => {}
        }
    }
    Ok(summary)
}
