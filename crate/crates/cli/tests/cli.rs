use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_ectorsion"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn fixture() -> String {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures/records_paper.json");
    p.to_str().unwrap().to_string()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr_json(o: &Output) -> Value {
    serde_json::from_slice(&o.stderr).expect("error body is JSON")
}

#[test]
fn param_z12_t2_prints_the_polynomial_coefficients() {
    let o = run(&["param", "--group", "z12", "--t", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let rec = &v["records"][0];
    // y^2 = x^3 + a x^2 + b x, evaluated from the polynomials directly
    let t = 2i128;
    let a = 2 * (3 * t.pow(8) + 24 * t.pow(6) + 6 * t.pow(4) - 1);
    let b = (t * t - 1).pow(6) * (1 + 3 * t * t).pow(2);
    let expected: Vec<Value> = [0, a, 0, b, 0]
        .iter()
        .map(|c| Value::from(c.to_string()))
        .collect();
    assert_eq!(rec["curve"]["coefficients"], Value::Array(expected));
    assert_eq!(rec["torsion"]["order"], Value::from("12"));
    assert_eq!(rec["provenance"]["params"]["t"], Value::from("2"));
}

#[test]
fn param_z12_t1_is_a_parse_level_failure() {
    let o = run(&["param", "--group", "z12", "--t", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(stderr_json(&o)["error"]["kind"], Value::from("param"));
    assert!(o.stdout.is_empty());
}

#[test]
fn param_z14_at_11_over_5_lands_in_q_sqrt_430() {
    let o = run(&["param", "--group", "z14", "--u", "11/5", "--sign", "plus"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(
        v["records"][0]["curve"]["field"],
        Value::from("Q(sqrt(430))")
    );
}

#[test]
fn negative_parameters_are_accepted() {
    let o = run(&["param", "--group", "z16", "--m", "-9"]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(
        v["records"][0]["curve"]["field"],
        Value::from("Q(sqrt(205))")
    );
}

#[test]
fn missing_flag_and_unknown_subcommand_exit_2() {
    let o = run(&["param", "--group", "z10"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(stderr_json(&o)["error"]["kind"], Value::from("usage"));
    let o = run(&["frobnicate"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(stderr_json(&o)["error"]["kind"], Value::from("usage"));
    let o = run(&["cw", "index", "3/x"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn cw_index_matches_the_table() {
    let o = run(&["cw", "index", "2244/1271"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "307485\n");
    let o = run(&["cw", "frac", "307485"]);
    assert_eq!(stdout(&o), "2244/1271\n");
    let o = run(&["cw", "next", "1/2"]);
    assert_eq!(stdout(&o), "2\n");
    let o = run(&["cw", "frac", "0"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn family_two_k1_reports_79_and_390() {
    let o = run(&["family", "--index", "2", "--k", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["t"], Value::from("2"));
    assert_eq!(v["one_minus_c"], Value::from("79"));
    assert_eq!(v["b"], Value::from("390"));
    assert_eq!(v["record"]["label"], Value::from("family2-k1"));
}

#[test]
fn family_with_negative_k() {
    let o = run(&["family", "--index", "1", "--k", "-2"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["t"], Value::from("-5"));
    let o = run(&["family", "--index", "1", "--k", "-1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_fixture_passes() {
    let o = run(&["verify", &fixture()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["passed"], Value::Bool(true));
    assert_eq!(v["records"].as_array().unwrap().len(), 6);
}

#[test]
fn verify_detects_a_tampered_record() {
    let text = std::fs::read_to_string(fixture()).unwrap();
    let mut v: Value = serde_json::from_str(&text).unwrap();
    v["records"][1]["torsion"]["order"] = Value::from("6");
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, serde_json::to_string(&v).unwrap()).unwrap();
    let o = run(&["verify", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let r: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(r["passed"], Value::Bool(false));
}

#[test]
fn malformed_file_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("junk.json");
    std::fs::write(&path, "{\"version\": 1, \"records\": [{}]}").unwrap();
    for sub in ["verify", "export"] {
        let o = run(&[sub, path.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(2), "{sub}");
        assert_eq!(stderr_json(&o)["error"]["kind"], Value::from("parse"));
    }
    let o = run(&["verify", dir.path().join("missing.json").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn fisher_cas_line() {
    let o = run(&["export", &fixture(), "--format", "cas"]);
    assert_eq!(o.status.code(), Some(0));
    let lines: Vec<String> = stdout(&o).lines().map(str::to_string).collect();
    assert_eq!(lines.len(), 6);
    assert!(lines.contains(
        &"[1,0,0,-4422329901784763147754792226039053294186858800,98943710602886706347390586357680210847183616798063680624530387016000]"
            .to_string()
    ));
}

#[test]
fn empty_file_gives_empty_output() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("empty.json");
    std::fs::write(&path, "").unwrap();
    for format in ["json", "cas"] {
        let o = run(&["export", path.to_str().unwrap(), "--format", format]);
        assert_eq!(o.status.code(), Some(0));
        assert!(o.stdout.is_empty());
    }
}

#[test]
fn json_export_round_trips() {
    let o = run(&["export", &fixture()]);
    assert_eq!(o.status.code(), Some(0));
    let first = stdout(&o);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("again.json");
    std::fs::write(&path, &first).unwrap();
    let o = run(&["export", path.to_str().unwrap()]);
    assert_eq!(stdout(&o), first);
}

#[test]
fn sweep_is_the_same_for_one_and_four_workers() {
    let args = [
        "sweep",
        "--group",
        "z12",
        "--start",
        "1",
        "--end",
        "30",
        "--top",
        "5",
        "--prime-bound",
        "200",
    ];
    let one = bin().args(args).args(["--workers", "1"]).output().unwrap();
    let four = bin()
        .args(args)
        .env("ECTORSION_WORKERS", "4")
        .output()
        .unwrap();
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, four.stdout);
    let v: Value = serde_json::from_slice(&one.stdout).unwrap();
    assert_eq!(v["records"].as_array().unwrap().len(), 5);
    let o = bin().args(args).args(["--workers", "0"]).output().unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn orbit_and_mgroups() {
    let o = run(&["orbit", "--u", "4/9"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v["orbit"]
        .as_array()
        .unwrap()
        .contains(&Value::from("5/13")));
    let o = run(&["mgroups", "--m", "3"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["groups"][0][0]["d"], Value::from("10"));
    let o = run(&["orbit", "--u", "1"]);
    assert_eq!(o.status.code(), Some(2));
}
