use std::process::{Command, Output};

use serre_core::consistency::ProofTrace;
use serre_core::localgalois::enumerate_local_reps;
use serre_core::record::LocalRepRecord;
use serre_core::{LocalModPRep, Prime, SerreWeight, TameType};

fn serre(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_serre"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

#[test]
fn weights_of_niveau_two() {
    let out = serre(&["weights", "--p", "5", "--niveau2", "--k", "2", "--format", "json"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).trim(), r#"{"weights":[[0,1],[1,3]]}"#);
}

#[test]
fn record_input_matches_flags() {
    let by_flags = serre(&["--format", "json", "weights", "--p", "5", "--sub", "1", "--quo", "0", "--split"]);
    let by_record = serre(&[
        "--format",
        "json",
        "weights",
        "--p",
        "5",
        "--rep",
        r#"{"niveau":1,"sub":1,"quo":0,"flags":["split"]}"#,
    ]);
    assert_eq!(code(&by_flags), 0);
    assert_eq!(stdout(&by_flags), stdout(&by_record));
    assert_eq!(stdout(&by_flags).trim(), r#"{"weights":[[0,0],[0,4],[1,2]]}"#);
}

#[test]
fn gl3_table_has_nine_rows() {
    for p in ["7", "11", "13"] {
        let out = serre(&["gl3-table", "--p", p]);
        assert_eq!(code(&out), 0, "p = {p}");
        let text = stdout(&out);
        assert_eq!(text.lines().count(), 10, "{text}");
        assert!(!text.contains("MISMATCH"));
        assert!(!text.contains("none found"));
    }
    let out = serre(&["gl3-table", "--p", "11", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["rows"].as_array().unwrap().len(), 9);
}

#[test]
fn sweep_reports_case_count() {
    let p = Prime::new(5).unwrap();
    let n = enumerate_local_reps(p).unwrap().len() * SerreWeight::all(p).len();
    let out = serre(&["sweep", "--p", "5"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).lines().next().unwrap(), format!("AllPass: {n} cases"));
}

#[test]
fn traces_round_trip() {
    let args = ["--format", "json", "certify", "--p", "5", "--niveau2", "--k", "2", "--m", "0", "--n", "1"];
    let out = serre(&args);
    assert_eq!(code(&out), 0);
    let trace = ProofTrace::from_json(stdout(&out).trim()).unwrap();
    trace.replay().unwrap();
    assert_eq!(trace.to_json(), stdout(&out).trim());
    let p = Prime::new(5).unwrap();
    assert_eq!(trace.companions(), vec![SerreWeight::new(p, 2, 1).unwrap()]);

    let out = serre(&["--format", "json", "eliminate", "--p", "7", "--sub", "3", "--quo", "1", "--m", "2", "--n", "4"]);
    assert_eq!(code(&out), 0);
    ProofTrace::from_json(stdout(&out).trim()).unwrap().replay().unwrap();
}

#[test]
fn types_json_uses_records() {
    let out = serre(&["--format", "json", "types", "--p", "5"]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let types = v["types"].as_array().unwrap();
    let p = Prime::new(5).unwrap();
    for (row, tau) in types.iter().zip(serre_core::tametypes::enumerate_types(p)) {
        let rec = serde_json::from_value(row["type"].clone()).unwrap();
        assert_eq!(TameType::from_record(p, &rec).unwrap(), tau);
    }
    assert_eq!(types.len(), serre_core::tametypes::enumerate_types(p).len());
}

#[test]
fn pbt_verdict() {
    let out = serre(&["--format", "json", "pbt", "--p", "5", "--niveau2", "--k", "2", "--cusp", "21"]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["verdict"], "yes");
    let rep: LocalRepRecord = serde_json::from_value(v["rep"].clone()).unwrap();
    let p = Prime::new(5).unwrap();
    assert_eq!(LocalModPRep::from_record(p, &rep).unwrap(), LocalModPRep::irreducible(p, 2).unwrap());
}

#[test]
fn reduce_all_verifies() {
    let out = serre(&["reduce", "--p", "5", "--all", "--verify"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 24);
    assert!(text.lines().all(|l| l.ends_with("[verified]")));
}

#[test]
fn sympair_and_ledger() {
    let out = serre(&["sympair-check", "--p", "7", "--seed", "9"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).lines().count(), 5);
    assert!(!stdout(&out).contains("FAIL"));

    let out = serre(&["--format", "json", "ledger", "sigma", "--sigma", "3", "--degree", "2"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["dim_sigma"], 12);
    assert_eq!(v["framed_bound"], 12);

    let out = serre(&["--format", "json", "ledger", "unitary", "--n", "4", "--mu", "0", "--degree", "1"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["value"], 1);
}

#[test]
fn exit_codes() {
    // usage errors
    assert_eq!(code(&serre(&["weights", "--p", "9", "--niveau2", "--k", "2"])), 2);
    assert_eq!(code(&serre(&["weights", "--p", "5", "--niveau2", "--k", "6"])), 2);
    assert_eq!(code(&serre(&["weights", "--p", "5", "--sub", "1", "--quo", "0"])), 2);
    assert_eq!(code(&serre(&["weights", "--p", "5", "--bogus"])), 2);
    assert_eq!(code(&serre(&["types", "--p", "5", "--scalar", "1", "--cusp", "2"])), 2);
    assert_eq!(code(&serre(&["weights", "--p", "5", "--rep", "{}"])), 2);
    // a weight outside W cannot be certified
    let out = serre(&["certify", "--p", "5", "--niveau2", "--k", "2", "--m", "2", "--n", "1"]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("cannot certify"));
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["--format", "json", "sweep", "--p", "7"][..],
        &["--format", "json", "sympair-check", "--p", "5"][..],
        &["types", "--p", "7"][..],
    ] {
        assert_eq!(serre(args).stdout, serre(args).stdout);
    }
    let a = serre(&["--format", "json", "sympair-check", "--p", "5", "--seed", "1"]);
    let b = serre(&["--format", "json", "sympair-check", "--p", "5"]);
    assert_eq!(a.stdout, b.stdout);
}
