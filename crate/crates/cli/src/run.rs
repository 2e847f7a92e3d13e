//! Verb execution. Every verb yields a JSON value, a text rendering and a
//! pass/fail flag; failures to even run are sorted into configuration
//! errors (exit 2) and check failures (exit 1).

use std::fmt::Write as _;

use modp_satake_core::cohomology::{cocycle_oracle, delta_character, delta_from_cohomology, transfer_hecke_oracle, InflatedCharacter, KuCohomology, KuModule};
use modp_satake_core::ffield::{primitive_root, FieldElement, FieldSpec};
use modp_satake_core::gl2ind::HeckePoly;
use modp_satake_core::jacquet::{table1, table1_closed_form, IrreducibleLabel};
use modp_satake_core::padic::{GMatrix, PScalar};
use modp_satake_core::satake::{satake, satake_checked, Degree};
use modp_satake_core::torus::{PadicCharacter, TorusCharacter};
use modp_satake_core::weights::Weight;
use modp_satake_core::{verify, Error};
use serde_json::{json, Value};

use crate::args::{FieldArgs, RowKind, Verb};
use crate::goldens;
use crate::jsonfmt::spaced;

#[derive(Debug)]
pub enum Failure {
    Config(String),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NotPrime(_) | Error::InvalidDegree(_) | Error::InvalidParameters(_) | Error::Parse(_) | Error::FieldMismatch(_) | Error::NotPositive(_) => {
                Failure::Config(e.to_string())
            }
            _ => Failure::Check(e.to_string()),
        }
    }
}

pub struct Outcome {
    pub json: Value,
    pub text: String,
    pub ok: bool,
}

pub fn execute(verb: &Verb, seed: u64) -> Result<Outcome, Failure> {
    match verb {
        Verb::Satake { field, r, e, op, degree, depth } => satake_verb(field, *r, *e, op, *degree, *depth),
        Verb::Table1 { field, all, kind, chi, chi2, r, lambda } => table1_verb(field, *all, *kind, chi.as_deref(), chi2.as_deref(), *r, lambda),
        Verb::Cohomology { field, weight, chi, chi2 } => cohomology_verb(field, weight.as_deref(), chi.as_deref(), chi2.as_deref()),
        Verb::Delta { field } => delta_verb(field),
        Verb::Verify { bless, criteria, goldens_only, no_goldens } => verify_verb(seed, *bless, criteria.as_deref(), *goldens_only, *no_goldens),
    }
}

fn field(args: &FieldArgs) -> Result<FieldSpec, Failure> {
    Ok(FieldSpec::new(args.p, args.ext_degree)?)
}

fn parse_element(k: &FieldSpec, s: &str) -> Result<FieldElement, Failure> {
    let v: Value = serde_json::from_str(s.trim()).map_err(|e| Failure::Config(format!("bad field element {s:?}: {e}")))?;
    Ok(k.element_from_json(&v)?)
}

/// `lambda,e`, where lambda may itself be a bracketed list.
fn parse_chi(k: &FieldSpec, s: &str) -> Result<PadicCharacter, Failure> {
    let (lambda, e) = s.rsplit_once(',').ok_or_else(|| Failure::Config(format!("expected lambda,e, got {s:?}")))?;
    let e: i64 = e.trim().parse().map_err(|_| Failure::Config(format!("bad exponent in {s:?}")))?;
    Ok(PadicCharacter::new(parse_element(k, lambda)?, e)?)
}

fn satake_verb(f: &FieldArgs, r: u32, e: u32, op: &str, degree: u8, depth: Option<u32>) -> Result<Outcome, Failure> {
    let k = field(f)?;
    let w = Weight::new(&k, r, e)?;
    let q = HeckePoly::parse(&k, op)?;
    let deg = Degree::from_index(degree)?;
    let run = match depth {
        Some(d) => satake(deg, &q, &w, Some(d))?,
        None => satake_checked(deg, &q, &w)?,
    };
    let mut json = run.to_json();
    let obj = json.as_object_mut().expect("object");
    obj.insert("weight".into(), w.to_json());
    obj.insert("op".into(), Value::from(q.to_string()));
    Ok(Outcome { text: spaced(&run.laurent.to_json()), json, ok: true })
}

fn table1_verb(
    f: &FieldArgs,
    all: bool,
    kind: Option<RowKind>,
    chi: Option<&str>,
    chi2: Option<&str>,
    r: u32,
    lambda: &str,
) -> Result<Outcome, Failure> {
    let k = field(f)?;
    let chi = match chi {
        Some(s) => parse_chi(&k, s)?,
        None => PadicCharacter::trivial(&k),
    };
    let principal = match chi2 {
        Some(s) => IrreducibleLabel::Principal { chi1: chi.clone(), chi2: parse_chi(&k, s)? },
        None => {
            // the principal series V(r, λ, χ) is isomorphic to
            let lambda = parse_element(&k, lambda)?;
            let inv = lambda.inv().ok_or_else(|| Failure::Config("--lambda must be nonzero".into()))?;
            IrreducibleLabel::Principal {
                chi1: chi.mul(&PadicCharacter::mu(inv)?),
                chi2: chi.mul(&PadicCharacter::new(lambda, r as i64)?),
            }
        }
    };
    let labels = match (all, kind) {
        (true, _) => vec![
            IrreducibleLabel::Character { chi: chi.clone() },
            IrreducibleLabel::Special { chi: chi.clone() },
            principal,
            IrreducibleLabel::Supersingular { r, chi: chi.clone() },
        ],
        (false, Some(RowKind::Character)) => vec![IrreducibleLabel::Character { chi }],
        (false, Some(RowKind::Special)) => vec![IrreducibleLabel::Special { chi }],
        (false, Some(RowKind::Principal)) => vec![principal],
        (false, Some(RowKind::Supersingular)) => vec![IrreducibleLabel::Supersingular { r, chi }],
        (false, None) => return Err(Failure::Config("give --all or --type".into())),
    };
    let mut rows = Vec::new();
    let mut text = format!("{:<14} {:<32} {:<28} {:<28} {}\n", "row", "representation", "L^0", "L^-1", "matches");
    let mut ok = true;
    for label in &labels {
        let got = table1(label)?;
        let want = table1_closed_form(label)?;
        let matches = got.agrees_with(&want);
        ok &= matches;
        let show = |c: &Option<TorusCharacter>| c.as_ref().map_or("0".to_string(), |c| c.to_string());
        writeln!(
            text,
            "{:<14} {:<32} {:<28} {:<28} {}",
            label.kind(),
            label.to_string(),
            show(&got.l0),
            show(&got.l1),
            if matches { "yes" } else { "NO" }
        )
        .unwrap();
        rows.push(json!({"label": label.to_json(), "result": got.to_json(), "expected": want.to_json(), "matches": matches}));
    }
    let json = json!({"p": k.p(), "ext_degree": k.degree(), "rows": rows});
    Ok(Outcome { json, text: text.trim_end().to_string(), ok })
}

fn parse_weight(k: &FieldSpec, s: &str) -> Result<Weight, Failure> {
    let (r, e) = s.split_once(',').ok_or_else(|| Failure::Config(format!("expected r,e, got {s:?}")))?;
    let parse = |x: &str| x.trim().parse::<u32>().map_err(|_| Failure::Config(format!("bad weight {s:?}")));
    Ok(Weight::new(k, parse(r)?, parse(e)?)?)
}

/// Hecke operators at the given diagonal elements; a weight only sees `ZK`,
/// an inflated character sees the whole torus.
fn cohomology_report<M: KuModule>(module: &M, description: Value, at: &[(&str, GMatrix)]) -> Result<Outcome, Failure> {
    let coh = KuCohomology::new(module)?;
    let dims = (coh.h0_dim(), coh.h1_dim());
    let oracle = cocycle_oracle(module)?;
    let mut ok = dims == oracle;
    let mut text = format!("dims ({}, {})  oracle ({}, {})\n", dims.0, dims.1, oracle.0, oracle.1);
    let mut hecke = serde_json::Map::new();
    for (name, m) in at {
        let h0 = coh.hecke(m, 0)?;
        let h1 = coh.hecke(m, 1)?;
        let h1_oracle = transfer_hecke_oracle(&coh, m)?;
        ok &= h1 == h1_oracle;
        writeln!(text, "Hecke {name} on H^0: {}", spaced(&h0.to_json())).unwrap();
        writeln!(text, "Hecke {name} on H^1: {}", spaced(&h1.to_json())).unwrap();
        hecke.insert(name.to_string(), json!({"H^0": h0.to_json(), "H^1": h1.to_json(), "H^1_oracle_agrees": h1 == h1_oracle}));
    }
    let json = json!({"module": description, "dims": [dims.0, dims.1], "oracle_dims": [oracle.0, oracle.1], "hecke": hecke});
    Ok(Outcome { json, text: text.trim_end().to_string(), ok })
}

fn cohomology_verb(f: &FieldArgs, weight: Option<&str>, chi: Option<&str>, chi2: Option<&str>) -> Result<Outcome, Failure> {
    let k = field(f)?;
    let p = k.p();
    let g = primitive_root(p) as i64;
    let s = |n: i64| PScalar::from_int(p, n);
    let mut at = vec![("diag(p,p)", GMatrix::diag_p(p, 1, 1)), ("diag(g,1)", GMatrix::diag(p, s(g), s(1))), ("diag(1,g)", GMatrix::diag(p, s(1), s(g)))];
    match (weight, chi) {
        (Some(w), _) => {
            let w = parse_weight(&k, w)?;
            cohomology_report(&w, json!({"weight": w.to_json()}), &at)
        }
        (None, Some(c)) => {
            let chi1 = parse_chi(&k, c)?;
            let chi2 = match chi2 {
                Some(c) => parse_chi(&k, c)?,
                None => PadicCharacter::trivial(&k),
            };
            let chi = TorusCharacter::new(chi1, chi2);
            at.insert(0, ("diag(p,1)", GMatrix::diag_p(p, 1, 0)));
            cohomology_report(&InflatedCharacter::new(chi.clone()), json!({"inflated": chi.to_json()}), &at)
        }
        (None, None) => Err(Failure::Config("give --weight r,e or --chi lambda,e".into())),
    }
}

fn delta_verb(f: &FieldArgs) -> Result<Outcome, Failure> {
    let k = field(f)?;
    let p = k.p();
    let expected = TorusCharacter::new(PadicCharacter::omega(&k), PadicCharacter::omega_pow(&k, -1));
    let found = delta_character(&k)?;
    let mut ok = found == expected;
    let mut text = format!("delta = {found}  (expected {expected})\n");
    let s = |n: i64| PScalar::from_int(p, n);
    let mut gens = vec![GMatrix::diag_p(p, 1, 0), GMatrix::diag_p(p, 0, 1)];
    for u in 2..p as i64 {
        gens.push(GMatrix::diag(p, s(u), s(1)));
        gens.push(GMatrix::diag(p, s(1), s(u)));
    }
    let mut values = Vec::new();
    for m in &gens {
        let got = delta_from_cohomology(&k, m)?;
        let want = expected.eval(m)?;
        ok &= got == want;
        writeln!(text, "delta({m}) = {got}").unwrap();
        values.push(json!({"at": m.to_json(), "value": got.to_compact_json(), "expected": want.to_compact_json()}));
    }
    let json = json!({"p": p, "ext_degree": k.degree(), "delta": found.to_json(), "matches": ok, "values": values});
    Ok(Outcome { json, text: text.trim_end().to_string(), ok })
}

fn verify_verb(seed: u64, bless: bool, criteria: Option<&[u8]>, goldens_only: bool, no_goldens: bool) -> Result<Outcome, Failure> {
    let ids: Vec<u8> = match (goldens_only, criteria) {
        (true, _) => Vec::new(),
        (false, Some(ids)) => ids.to_vec(),
        (false, None) => verify::CRITERIA.iter().map(|(id, _)| *id).collect(),
    };
    let mut ok = true;
    let mut text = String::new();
    let mut reports = Vec::new();
    for id in ids {
        let report = verify::run(id, seed)?;
        ok &= report.passed;
        writeln!(text, "{}", report.line()).unwrap();
        reports.push(json!({"id": report.id, "name": report.name, "passed": report.passed, "detail": report.detail}));
    }
    let mut golden_json = Value::Null;
    if !no_goldens {
        let summary = goldens::check(bless)?;
        ok &= summary.mismatches.is_empty();
        for m in &summary.mismatches {
            writeln!(text, "[FAIL] golden {m}").unwrap();
        }
        if bless {
            writeln!(text, "[BLESS] goldens: {} files written", summary.written).unwrap();
        } else if summary.mismatches.is_empty() {
            writeln!(text, "[PASS] goldens: {} files match", summary.checked).unwrap();
        }
        golden_json = json!({"checked": summary.checked, "written": summary.written, "mismatches": summary.mismatches});
    }
    let json = json!({"seed": seed, "criteria": reports, "goldens": golden_json, "passed": ok});
    Ok(Outcome { json, text: text.trim_end().to_string(), ok })
}
