use std::path::PathBuf;
use std::process::{Command, Output};

fn relmod(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_relmod"))
        .args(args)
        .output()
        .expect("run relmod")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8 stdout")
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).expect("utf-8 stderr")
}

fn grid_file(name: &str, json: &str) -> PathBuf {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&path, json).expect("write grid file");
    path
}

#[test]
fn predicate_examples() {
    let o = relmod(&[
        "check",
        "reduced-wrt",
        "--ring",
        "Z",
        "--ideal",
        "2",
        "Z/2",
        "Z/4",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "true\n");

    let o = relmod(&["check", "coreduced", "--ring", "Z", "--ideal", "2", "Z/4"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "false\n");

    let o = relmod(&["check", "reduced", "--ideal", "2", "Z/4"]);
    assert_eq!(stdout(&o), "false\n");
    let o = relmod(&["check", "coreduced-wrt", "--ideal", "2", "Z/2", "Z/4"]);
    assert_eq!(stdout(&o), "true\n");
}

#[test]
fn completion_of_free_part_does_not_stabilize() {
    let o = relmod(&["lambda", "--ring", "Z", "--ideal", "2", "Z"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("NonStabilizing"));
}

#[test]
fn operations() {
    let cases: &[(&[&str], &str)] = &[
        (&["canon", "Z/4 + Z/6 + Z"], "Z + Z/2 + Z/12"),
        (&["canon", "coker[[2,4],[6,8]]"], "Z/2 + Z/4"),
        (&["hom", "Z/4", "Z/6"], "Z/2"),
        (&["tensor", "Z", "Z/6"], "Z/6"),
        (&["dual", "Z/2 + Z/3"], "Z/6"),
        (&["ext", "1", "Z/4", "Z"], "Z/4"),
        (&["tor", "1", "Z/4", "Z/6"], "Z/2"),
        (&["gamma", "--ideal", "2", "Z + Z/12"], "Z/4"),
        (&["lambda", "--ideal", "2", "Z/12"], "Z/4"),
        (&["gammagen", "--ideal", "3", "Z/9", "Z/6"], "Z/3"),
        (&["lambdagen", "--ideal", "3", "Z", "Z/6"], "Z/3"),
        (&["glc", "0", "--ideal", "2", "Z/2", "Z/4"], "Z/2"),
        (&["glc", "1", "--ideal", "2", "Z/2", "Z/4"], "Z/2"),
        (&["glh", "0", "--ideal", "2", "Z/2", "Z/4"], "Z/2"),
        (&["glh", "1", "--ideal", "2", "Z/2", "Z/2"], "Z/2"),
        (&["hom", "--ring", "Z/8", "Z/4", "Z/8"], "Z/4"),
        (&["tensor", "--ring", "Z/6", "Z/6", "Z/6"], "Z/6"),
    ];
    for (args, want) in cases {
        let o = relmod(args);
        assert_eq!(o.status.code(), Some(0), "{args:?}: {}", stderr(&o));
        assert_eq!(stdout(&o).trim_end(), *want, "{args:?}");
    }
}

#[test]
fn canon_output_reparses() {
    for src in ["Z^2 + Z/6 + Z/4", "coker[[2,4],[6,8]] + Z/3", "0", "Z/1"] {
        let first = stdout(&relmod(&["canon", src]));
        let second = stdout(&relmod(&["canon", first.trim_end()]));
        assert_eq!(first, second, "{src}");
    }
}

#[test]
fn usage_errors_print_grammar() {
    for args in [
        &["canon", "Z/("][..],
        &["frobnicate"],
        &["gamma", "Z/4"],
        &["canon", "--ring", "Q", "Z"],
        &["canon", "--ring", "Z/6", "Z"],
        &["verify", "--claims", "no-such-claim"],
    ] {
        let o = relmod(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(stderr(&o).contains("expr := term"), "{args:?}");
    }
}

#[test]
fn help_succeeds() {
    let o = relmod(&["--help"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("verify"));
}

#[test]
fn other_errors_exit_one() {
    let o = relmod(&["dual", "Z"]);
    assert_eq!(o.status.code(), Some(1));
    let o = relmod(&["verify", "--grid", "/nonexistent/grid.json"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn json_result_lines() {
    let o = relmod(&["hom", "Z/4", "Z/6", "--format", "json-lines"]);
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim_end()).expect("json");
    assert_eq!(v["result"], "Z/2");
}

const SMALL_Z: &str =
    r#"{"ring": "Z", "max_torsion_order": 4, "max_free_rank": 1, "ideal_generators": [2]}"#;

#[test]
fn verify_expected_failure_exits_zero() {
    let grid = grid_file("small_z.json", SMALL_Z);
    let o = relmod(&[
        "verify",
        "--claims",
        "extension-closure-R,equiv-reduced-wrt",
        "--grid",
        grid.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let text = stdout(&o);
    assert!(text.contains("extension-closure-R [Z] fail (expected fail)"));
    assert!(text.contains("equiv-reduced-wrt [Z] pass (expected pass)"));
    assert!(text.ends_with("2 reports, 0 unexpected\n"));
}

#[test]
fn verify_unexpected_failure_exits_four() {
    let grid = grid_file("small_z_fast.json", SMALL_Z);
    let o = relmod(&[
        "verify",
        "--claims",
        "glc-fastpath",
        "--grid",
        grid.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(4), "{}", stdout(&o));
    assert!(stdout(&o).contains("[UNEXPECTED]"));
}

#[test]
fn verify_json_lines_are_parseable_and_stable() {
    let grid = grid_file(
        "two_grids.json",
        r#"[{"ring": "Z/6", "max_torsion_order": 6, "ideal_generators": [2, 3]},
            {"ring": "Z", "max_torsion_order": 4, "ideal_generators": [2]}]"#,
    );
    let args = [
        "verify",
        "--claims",
        "tensor-coreduced,closure-sums",
        "--grid",
        grid.to_str().unwrap(),
        "--format",
        "json-lines",
    ];
    let first = relmod(&args);
    assert_eq!(first.status.code(), Some(0));
    let text = stdout(&first);
    let records: Vec<serde_json::Value> = text
        .lines()
        .map(|l| serde_json::from_str(l).expect("json line"))
        .collect();
    assert_eq!(records.len(), 5);
    let order: Vec<(String, String)> = records[..4]
        .iter()
        .map(|r| {
            assert_eq!(r["record"], "claim");
            (
                r["claim_id"].as_str().unwrap().into(),
                r["ring"].as_str().unwrap().into(),
            )
        })
        .collect();
    let want = [
        ("closure-sums", "Z/6"),
        ("closure-sums", "Z"),
        ("tensor-coreduced", "Z/6"),
        ("tensor-coreduced", "Z"),
    ];
    for ((id, ring), (wid, wring)) in order.iter().zip(want) {
        assert_eq!((id.as_str(), ring.as_str()), (wid, wring));
    }
    assert_eq!(records[4]["record"], "summary");
    assert_eq!(records[4]["unexpected"].as_array().unwrap().len(), 0);
    assert_eq!(stdout(&relmod(&args)), text);
}

#[test]
fn verify_ring_flag_selects_default_grid() {
    let o = relmod(&["verify", "--ring", "Z/6", "--claims", "tensor-coreduced"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("tensor-coreduced [Z/6] pass"));
}
