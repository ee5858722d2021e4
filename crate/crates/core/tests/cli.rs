use std::process::Command;

use endotriv::classify::{OracleReport, TClassification};
use endotriv::cli::{run, CorpusReport, RhoReport, SylowReport};
use endotriv::liea::LieParams;
use endotriv::rho::Verdict;
use serde::de::DeserializeOwned;
use serde::Serialize;

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("endotriv").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

/// Parses the JSON output, reprints it and checks both the value and the text survive.
fn round_trip<T: DeserializeOwned + Serialize + PartialEq + std::fmt::Debug>(args: &[&str]) -> T {
    let (code, out, err) = call(args);
    assert_eq!(code, 0, "{args:?}: {err}");
    let x: T = serde_json::from_str(&out).unwrap_or_else(|e| panic!("{args:?}: {e}\n{out}"));
    let again = serde_json::to_value(&x).unwrap();
    assert_eq!(serde_json::from_value::<T>(again.clone()).unwrap(), x);
    assert_eq!(serde_json::to_string_pretty(&again).unwrap().trim_end(), out.trim_end());
    x
}

#[test]
fn exit_codes() {
    let cases: &[(&[&str], i32)] = &[
        (&["classify", "2", "5", "2"], 0),
        (&["classify", "2", "9", "3"], 1),
        (&["classify", "2", "5", "2", "--det", "3"], 1),
        (&["oracle", "GL(4,5)", "2", "--cap", "1000"], 2),
        (&["rho", "SL(3,3)", "2", "--cap", "100"], 2),
        (&["classify", "2", "5", "2", "--det", "4", "--z", "2"], 3),
        (&["oracle", "XL(2,3)", "2"], 64),
        (&["rho", "SL(2", "2"], 64),
        (&["classify", "two", "5", "2"], 64),
        (&["frobnicate"], 64),
        (&["certify", "nope", "3", "7", "3"], 64),
        (&["corpus", "run", "section=8"], 64),
        (&["corpus", "run", "--file", "/nonexistent/corpus.tsv"], 1),
        (&["certify", "sl62"], 0),
        (&["params", "4", "5", "2", "--det", "4"], 0),
        (&["--help"], 0),
    ];
    for (args, want) in cases {
        let (code, _, err) = call(args);
        assert_eq!(code, *want, "{args:?}: {err}");
    }
}

#[test]
fn classify_json_matches_documented_shape() {
    let c: TClassification = round_trip(&["classify", "2", "5", "2", "--json"]);
    assert_eq!(c.result.to_string(), "Z/2 + Z/4");
    let (_, out, _) = call(&["classify", "2", "5", "2", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["rank"], 0);
    assert_eq!(v["torsion"], serde_json::json!([2, 4]));
    let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
}

#[test]
fn verify_runs_the_oracle() {
    let (code, out, _) = call(&["classify", "3", "4", "3", "--det", "1", "--z", "3", "--verify", "--json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["verify"]["status"], "PASS");
    assert_eq!(v["verify"]["oracle"]["n_g"], 1);
    let (_, out, _) = call(&["classify", "4", "5", "2", "--det", "4", "--verify", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["verify"]["status"], "SKIP");
}

#[test]
fn every_record_type_round_trips() {
    let _: TClassification = round_trip(&["classify", "2", "7", "3", "--z", "2", "--json"]);
    let p: LieParams = round_trip(&["params", "3", "7", "3", "--det", "6", "--z", "6", "--json"]);
    assert_eq!(p.p_rank, 3);
    let s: SylowReport = round_trip(&["sylow", "3", "7", "2", "--json"]);
    assert_eq!(s.closure_order, Some(32));
    let o: OracleReport = round_trip(&["oracle", "PGL(3,4)", "3", "--json"]);
    assert_eq!(o.n_g, 3);
    let r: RhoReport = round_trip(&["rho", "SL(2,7)", "2", "--max-i", "3", "--json"]);
    assert_eq!(r.chain.chain_orders, vec![4, 16, 16]);
    let v: Vec<Verdict> = round_trip(&["certify", "rp-case", "3", "19", "3", "--json"]);
    assert_eq!(v[0].status.to_string(), "PASS");
    let c: CorpusReport = round_trip(&["corpus", "run", "family=sl3-char3", "--json"]);
    assert_eq!(c.failed, 0);
}

#[test]
fn corpus_filters_and_negative_control() {
    let (code, out, _) = call(&["corpus", "run", "family=sl2-odd", "--no-oracle"]);
    assert_eq!(code, 0);
    assert!(out.contains("4 entries: 4 passed"), "{out}");
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("corpus.tsv");
    let corrupted = endotriv::cli::BUILTIN_CORPUS.replace("SL(2,5)@p=2\t2\t5\t2\t1\t1\tZ/2 + Z/4", "SL(2,5)@p=2\t2\t5\t2\t1\t1\tZ/8");
    assert_ne!(corrupted, endotriv::cli::BUILTIN_CORPUS);
    std::fs::write(&path, corrupted).unwrap();
    let (code, out, _) = call(&["corpus", "run", "--no-oracle", "--file", path.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(out.contains("FAIL SL(2,5)@p=2"), "{out}");
    assert!(out.contains("diff: expected Z/8, got Z/2 + Z/4"), "{out}");
}

#[test]
fn binary_honours_cap_env_and_flag() {
    let bin = env!("CARGO_BIN_EXE_endotriv");
    let st = Command::new(bin).args(["oracle", "SL(2,7)", "2"]).env("ENDOTRIV_CAP", "10").output().unwrap();
    assert_eq!(st.status.code(), Some(2));
    let st = Command::new(bin).args(["oracle", "SL(2,7)", "2", "--cap", "1000"]).env("ENDOTRIV_CAP", "10").output().unwrap();
    assert_eq!(st.status.code(), Some(0));
    let st = Command::new(bin).args(["classify", "2", "5", "2", "--det", "4", "--z", "2"]).output().unwrap();
    assert_eq!(st.status.code(), Some(3));
    let st = Command::new(bin).args(["oracle", "PSL(2"]).output().unwrap();
    assert_eq!(st.status.code(), Some(64));
}
