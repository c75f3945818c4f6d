//! Command line interface: exit status contract, format selection, and
//! byte-identical reports across runs.

use std::process::{Command, Output};

fn fbr(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fbr"))
        .args(args)
        .output()
        .expect("binary runs")
}

#[test]
fn basis_examples() {
    let out = fbr(&["basis", "--group", "C2", "--n", "2", "--format", "tsv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    // three basis rows plus title and header
    assert_eq!(text.lines().count(), 5, "{text}");

    let out = fbr(&["species", "--group", "C1", "--n", "1", "--format", "tsv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 3, "{text}");
    assert!(text.lines().last().unwrap().ends_with('1'));
}

#[test]
fn species_table_is_seven_square_for_s3_n6() {
    let out = fbr(&["species", "--group", "S3", "--n", "6", "--format", "json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let rows = v["tables"][0]["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 7);
    for row in rows {
        assert_eq!(row["values"].as_array().unwrap().len(), 7);
    }
}

#[test]
fn conductor_report_columns() {
    let out = fbr(&["conductors", "--group", "Q8", "--n", "4", "--format", "json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let rows = v["tables"][0]["rows"].as_array().unwrap();
    for row in rows {
        assert_eq!(row["coprime_case"], serde_json::json!(true));
        assert_eq!(row["match"], serde_json::json!(true));
        assert_eq!(row["c"].as_u64().unwrap() % 1, 0);
    }
    // every top point has conductor 4
    let tops: Vec<&serde_json::Value> = rows
        .iter()
        .filter(|r| r["H"].as_array().unwrap().len() == 8)
        .collect();
    assert!(!tops.is_empty());
    assert!(tops.iter().all(|r| r["c"] == serde_json::json!(4)));
}

#[test]
fn golden_tsv_for_c2_fiber2() {
    let out = fbr(&["conductors", "--group", "C2", "--n", "2", "--format", "tsv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let expected = "\
# conductors n=2
point\tH\th\tstab_order\tc\trhs\tr\tu\tcoprime_case\tmatch
0\t0\t0\t2\t2\t2\t1\t1\ttrue\ttrue
1\t0 1\t0\t2\t2\t2\t1\t1\ttrue\ttrue
2\t0 1\t1\t2\t2\t2\t1\t1\ttrue\ttrue
";
    assert_eq!(text, expected);

    let out = fbr(&["species", "--group", "C2", "--n", "2", "--format", "tsv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let expected = "\
# species n=2
point\tH\th\tvalues
0\t0\t0\t2 | 1 | 1
1\t0 1\t0\t0 | 1 | 1
2\t0 1\t1\t0 | 1 | -1
";
    assert_eq!(text, expected);
}

#[test]
fn reports_are_byte_identical_across_runs() {
    for args in [
        vec!["conductors", "--group", "S4", "--format", "json"],
        vec!["marks", "--group", "Q8", "--n", "4", "--format", "tsv"],
        vec!["idempotents", "--group", "S3", "--n", "6", "--format", "text"],
    ] {
        let a = fbr(&args);
        let b = fbr(&args);
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn exit_codes() {
    // 0: verification pass
    let out = fbr(&["verify", "splitting", "--group", "C1", "--n", "1"]);
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    // 2: configuration errors
    let out = fbr(&["basis", "--group", "NoSuchGroup"]);
    assert_eq!(out.status.code(), Some(2));
    let out = fbr(&["verify", "nosuite", "--group", "C2"]);
    assert_eq!(out.status.code(), Some(2));
    let out = fbr(&["verify", "naturality", "--group", "C2", "--f", "bad"]);
    assert_eq!(out.status.code(), Some(2));
    // clap usage errors also exit 2
    let out = fbr(&["basis"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_thm51_single_group() {
    let out = fbr(&["verify", "thm51", "--group", "S3"]);
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("thm51.coprime-equality"));
    assert!(text.contains("pass"));
}

#[test]
fn verify_naturality_reports_deflation_defect() {
    // the naturality counterexample: f = pi_{2,1} against def^{C2}_1
    let out = fbr(&["verify", "naturality", "--group", "C2", "--f", "2,1,0"]);
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("deflation defects"), "{text}");
    assert!(text.contains("defect on basis element"), "{text}");
    assert!(text.contains("[[0], 1]"), "{text}");
}

#[test]
fn group_file_input_and_cap() {
    let dir = std::env::temp_dir().join("fbr-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("s3.json");
    std::fs::write(&path, r#"{"name":"myS3","permutations":["(1 2)","(1 2 3)"]}"#).unwrap();
    let out = fbr(&["basis", "--group", path.to_str().unwrap(), "--n", "1", "--format", "tsv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 6, "{text}"); // 4 classes + title + header

    let out = fbr(&["basis", "--group", path.to_str().unwrap(), "--cap", "3"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn n_is_normalized_with_warning() {
    let out = fbr(&["basis", "--group", "C2", "--n", "8", "--format", "tsv"]);
    assert!(out.status.success());
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("normalized"));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("basis n=2"));
}
