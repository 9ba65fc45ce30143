use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_patfreq"))
        .args(args)
        .env("RUST_LOG", "warn")
        .output()
        .expect("spawn patfreq")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> serde_json::Value {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn count_prints_number() {
    let out = run(&["count", "41523", "132"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "2");
}

#[test]
fn table_last_row() {
    let v = json(&["table", "--l", "2", "--nmax", "11"]);
    let last = v["rows"].as_array().unwrap().last().unwrap();
    assert_eq!(last["n"], 11);
    assert_eq!(last["M"], 87);
    assert_eq!(last["k"], 4);

    let csv = stdout(&run(&["table", "--l", "2", "--nmax", "11", "--format", "csv"]));
    assert_eq!(csv.lines().next(), Some("n,M,k,l_n"));
    assert!(csv.lines().last().unwrap().starts_with("11,87,4,"));
}

#[test]
fn freq_132_has_internal_zero_at_6() {
    let v = json(&["freq", "--n", "6", "--pattern", "132"]);
    assert_eq!(v["classification"], "iz");
    assert_eq!(v["internal_zeros"], serde_json::json!([11]));
    let total: u64 = v["counts"].as_array().unwrap().iter().map(|c| c.as_u64().unwrap()).sum();
    assert_eq!(total, 720);
}

#[test]
fn family_matches_explicit_pattern() {
    assert_eq!(
        json(&["freq", "--n", "6", "--family", "l=3"]),
        json(&["freq", "--n", "6", "--pattern", "1432"])
    );
}

#[test]
fn realize_round_trips_through_count() {
    let p = stdout(&run(&["realize", "--n", "7", "--c", "20"]));
    let c = stdout(&run(&["count", p.trim(), "132"]));
    assert_eq!(c.trim(), "20");
    assert_eq!(stdout(&run(&["realize", "--n", "6", "--c", "11"])).trim(), "UNREALIZABLE");
}

#[test]
fn poset_ops() {
    assert_eq!(json(&["poset", "2413", "count", "--l", "2"]), 1);
    assert_eq!(json(&["poset", "1,3", "--profile", "is-lot"]), true);
    assert!(json(&["poset", "2413", "decompose", "--l", "2"]).is_null());
}

#[test]
fn verify_single_claim() {
    let v = json(&["verify", "--claim", "fund", "--dp-nmax", "40"]);
    assert_eq!(v["unexpected_failures"], 0);
    assert_eq!(v["reports"][0]["claim_id"], "fund");
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(&["count", "1223", "12"]).status.code(), Some(2));
    assert_eq!(run(&["table", "--l", "1", "--nmax", "5"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--claim", "no-such-claim"]).status.code(), Some(2));
    assert_eq!(run(&["poset", "25143", "reassign", "--x", "3", "--y", "1"]).status.code(), Some(2));
}

#[test]
fn bound_refusal_exits_3() {
    let out = run(&["freq", "--n", "14", "--pattern", "132"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(out.stdout.is_empty());
    assert_eq!(run(&["--max-n", "15", "freq", "--n", "5", "--pattern", "12"]).status.code(), Some(3));
}

#[test]
fn output_is_deterministic() {
    let args = ["freq", "--n", "7", "--pattern", "1432", "--threads", "2"];
    let a = run(&args);
    let b = run(&["freq", "--n", "7", "--pattern", "1432", "--threads", "1"]);
    assert_eq!(a.stdout, b.stdout);
}
