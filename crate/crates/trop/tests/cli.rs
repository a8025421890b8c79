//! End-to-end tests of the installed binary: spawn `trop`, feed it
//! arguments/stdin, and check stdout, stderr, and exit codes.

use std::io::Write;
use std::process::{Command, Output, Stdio};

fn trop(args: &[&str], stdin: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_trop"));
    cmd.args(args).stdout(Stdio::piped()).stderr(Stdio::piped());
    cmd.stdin(if stdin.is_some() { Stdio::piped() } else { Stdio::null() });
    let mut child = cmd.spawn().expect("spawn trop");
    if let Some(text) = stdin {
        child
            .stdin
            .take()
            .expect("piped stdin")
            .write_all(text.as_bytes())
            .expect("write stdin");
    }
    child.wait_with_output().expect("wait for trop")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 stdout")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("utf8 stderr")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

#[test]
fn per_prints_scalar_tokens() {
    let out = trop(&["per", "2 4;4 8"], None);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert_eq!(stdout(&out), "10\n");

    let out = trop(&["per", "4 6;6 8", "--json"], None);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).trim(), r#"{"per":"12v"}"#);
}

#[test]
fn matrix_inputs_stdin_json_file() {
    let out = trop(&["per", "-"], Some("0 4\n4 8\n"));
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "8v\n");

    let out = trop(&["per", r#"{"n":2,"rows":[["2","4"],["4","8"]]}"#], None);
    assert_eq!(stdout(&out), "10\n");

    let dir = std::env::temp_dir().join("trop-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("m.txt");
    std::fs::write(&path, "2 4\n4 8\n").unwrap();
    let out = trop(&["per", path.to_str().unwrap()], None);
    assert_eq!(stdout(&out), "10\n");
}

#[test]
fn parse_errors_exit_one_with_position() {
    let out = trop(&["per", "1 2;3"], None);
    assert_eq!(code(&out), 1);
    assert!(stderr(&out).contains("line 2"), "stderr: {}", stderr(&out));

    let out = trop(&["per", "1 2;3 x"], None);
    assert_eq!(code(&out), 1);
    assert!(stderr(&out).contains("line 2"));
    assert!(stderr(&out).contains("column 3"));
}

#[test]
fn bid_splits_the_permanent() {
    let out = trop(&["bid", "0 0 _;_ 0 0;0 _ 0"], None);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "per_plus: 0v\nper_minus: _\nper: 0v\n");
}

#[test]
fn nabla_gates_ghost_permanents() {
    let out = trop(&["nabla", "0 0;0 0"], None);
    assert_eq!(code(&out), 1);
    assert!(stderr(&out).contains("singular"), "stderr: {}", stderr(&out));

    let out = trop(&["nabla", "0 0;0 0", "--allow-ghost"], None);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "0v 0v\n0v 0v\n");
}

#[test]
fn nabla_twice_is_the_closure() {
    let a = "0 -1 _;_ 0 -2;_ _ 0";
    let out = trop(&["nabla", a, "--twice"], None);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "0 -1 -3v\n_  0  -2\n_  _   0\n");
}

#[test]
fn adj_of_identity_is_identity() {
    let out = trop(&["adj", "0 _;_ 0"], None);
    assert_eq!(stdout(&out), "0 _\n_ 0\n");
}

#[test]
fn quasi_reports_the_four_matrices_and_reversibility() {
    let out = trop(&["quasi", "--json", "--", "-1 -1;0 1"], None);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("json");
    assert_eq!(v["reversible"], serde_json::Value::Bool(false));
    assert_eq!(v["left"]["rows"][0][1], "-2v");
    assert_eq!(v["right"]["rows"][0][1], "0v");
}

#[test]
fn classify_emits_a_json_report() {
    let out = trop(&["classify", "0 0 _;_ 0 0;0 _ 0"], None);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("json");
    assert_eq!(v["singularity"], "Singular");
    assert_eq!(v["in_bqsl"], serde_json::Value::Bool(true));
    assert_eq!(v["in_sl"], serde_json::Value::Bool(false));
    // Compact mode is also valid JSON with the same content.
    let compact = trop(&["classify", "0 0 _;_ 0 0;0 _ 0", "--json"], None);
    let w: serde_json::Value = serde_json::from_str(&stdout(&compact)).expect("json");
    assert_eq!(v, w);
}

#[test]
fn member_prints_three_booleans() {
    let out = trop(&["member", "--unit", "0 5v;_ 0", "--candidate", "0 5v;_ 0"], None);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "left: true\nright: true\nboth: true\n");

    // Candidates outside BQSL are refused as a domain error.
    let out = trop(&["member", "--unit", "0 5v;_ 0", "--candidate", "1 _;_ 0"], None);
    assert_eq!(code(&out), 1);
    assert!(stderr(&out).contains("BQSL"));
}

#[test]
fn conj_matches_the_definite_conjugation_example() {
    let out = trop(&["conj", "0 _;1 0", "0 5v;_ 0"], None);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "6v 5v\n7v 6v\n");
}

#[test]
fn sns_prints_a_verified_witness() {
    let out = trop(&["sns", "_ 5 0;0 _ _;_ 0 _"], None);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("witness: G "), "{text}");
    assert!(text.contains("flipped per: 0v"), "{text}");

    // Invertible inputs admit no witness.
    let out = trop(&["sns", "0 _;_ 0"], None);
    assert_eq!(code(&out), 1);
    assert!(stderr(&out).contains("witness"));
}

#[test]
fn ed_emits_the_correction_word() {
    let out = trop(&["ed", "0 -1 _;_ 0 -2;_ _ 0", "--json"], None);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("json");
    assert_eq!(v["word"], serde_json::json!(["G 1 3 -3v"]));

    // A quasi-identity is its own closure: empty word.
    let out = trop(&["ed", "0 5v;_ 0"], None);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "(empty word)\n");
}

#[test]
fn bridge_emits_the_four_pieces() {
    let out = trop(&["bridge", "0 -1;_ 0", "0 _;-2 0", "--json"], None);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("json");
    assert!(v["common"]["rows"].is_array());
    assert!(v["e2"]["fully_elementary"].is_boolean());
    // Mismatched sizes are a shape error.
    let out = trop(&["bridge", "0 -1;_ 0", "0"], None);
    assert_eq!(code(&out), 1);
}

#[test]
fn steinberg_splits_or_reports_irreducible() {
    let out = trop(&["steinberg", "G 1 3 -1;G 3 2 -2", "--json"], None);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("json");
    assert_eq!(v["reducible"], serde_json::Value::Bool(true));
    assert_eq!(v["lower"], serde_json::json!(["G 3 2 -2"]));
    assert_eq!(v["upper"], serde_json::json!(["G 1 3 -1", "G 1 2 -3"]));

    let out = trop(&["steinberg", "G 1 2 5;G 3 1 5"], None);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "reducible: false\n");

    // Words read from stdin too, and --n must cover the word.
    let out = trop(&["steinberg", "-", "--n", "4"], Some("G 1 3 -1\nG 3 2 -2\n"));
    assert_eq!(code(&out), 0);
    let out = trop(&["steinberg", "G 1 3 -1", "--n", "2"], None);
    assert_eq!(code(&out), 1);
    assert!(stderr(&out).contains("minimum dimension"));
}

#[test]
fn check_runs_properties_and_reports() {
    let out = trop(
        &["check", "--property", "per_mul_surpass", "--trials", "50", "--seed", "1"],
        None,
    );
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert!(stdout(&out).contains("ok   per_mul_surpass (50 trials)"));

    let out = trop(&["check", "--property", "no_such_property", "--trials", "1"], None);
    assert_eq!(code(&out), 1);
    assert!(stderr(&out).contains("unknown property"));

    let out = trop(&["check", "--all", "--trials", "4", "--seed", "9", "--json"], None);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("json");
    let reports = v.as_array().expect("array");
    assert_eq!(reports.len(), 37);
    assert!(reports.iter().all(|r| r["status"] == "Passed"));

    let out = trop(&["check", "--list"], None);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).lines().count(), 37);
}

#[test]
fn oversized_determinant_requests_fail_cleanly() {
    // 11×11 identity: the enumeration bound gates bid, while per falls back
    // to the assignment solver.
    let rows: Vec<String> = (0..11)
        .map(|i| (0..11).map(|j| if i == j { "0" } else { "_" }).collect::<Vec<_>>().join(" "))
        .collect();
    let m = rows.join(";");
    let out = trop(&["per", &m], None);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "0\n");
    let out = trop(&["bid", &m], None);
    assert_eq!(code(&out), 1);
    assert!(stderr(&out).contains("domain"));
}
