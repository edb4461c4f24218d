//! End-to-end tests of the fcring binary: exit codes, output contracts and
//! byte-level determinism of the machine format.

use std::io::Write;
use std::process::{Command, Output};

fn fcring(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fcring"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn validate_succeeds_on_every_bundled_model() {
    for name in fcring::zoo::BUNDLED_NAMES {
        let out = fcring(&["validate", name]);
        assert_eq!(out.status.code(), Some(0), "{name}: {}", stderr(&out));
    }
}

#[test]
fn verify_succeeds_on_every_bundled_model() {
    for name in fcring::zoo::BUNDLED_NAMES {
        let out = fcring(&["verify", name]);
        assert_eq!(out.status.code(), Some(0), "{name}: {}", stderr(&out));
    }
}

#[test]
fn usage_errors_exit_with_one() {
    let out = fcring(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("kind=Usage"));
}

#[test]
fn unknown_model_exits_with_two() {
    let out = fcring(&["validate", "no-such-model"]);
    assert_eq!(out.status.code(), Some(2));
    let err = stderr(&out);
    let tail = err.lines().last().unwrap();
    assert!(tail.starts_with("error kind=UnknownModel code=2"), "{tail}");
}

#[test]
fn axiom_violations_exit_with_two_and_a_machine_tail() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("broken.json");
    let mut file = std::fs::File::create(&path).unwrap();
    // z2 with the unit axiom broken at (0,1,0)
    write!(
        file,
        r#"{{
            "format_version": 1,
            "name": "broken",
            "n": 2,
            "fusion": [[0,0,0,1],[0,1,0,1],[1,0,1,1],[1,1,0,1]]
        }}"#
    )
    .unwrap();
    let out = fcring(&["validate", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = stderr(&out);
    assert!(err.contains("kind=UnitViolation"), "{err}");
}

#[test]
fn fcsets_lists_the_single_set_of_the_trivial_model() {
    let out = fcring(&["--format", "machine", "fcsets", "trivial"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 1);
    assert!(
        lines[0].starts_with("rec=fcset id=0 members=0 size=1 dual=0"),
        "{}",
        lines[0]
    );
}

#[test]
fn local_flags_the_ising_fermion_line() {
    let out = fcring(&["--format", "machine", "local", "ising"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let line = text
        .lines()
        .find(|l| l.contains("members=0,1 "))
        .expect("profile for {0,1}");
    assert!(line.contains("local=true"), "{line}");
    assert!(line.contains("twister=false"), "{line}");
    assert!(line.contains("ramond_class=1"), "{line}");
    assert!(line.contains("nilpotent=true"), "{line}");
}

#[test]
fn machine_output_is_byte_identical_across_runs() {
    for name in ["ising", "toric", "double_s3", "rep_s3", "z4"] {
        for command in ["verify", "local"] {
            let a = fcring(&["--format", "machine", "--seed", "7", command, name]);
            let b = fcring(&["--format", "machine", "--seed", "7", command, name]);
            assert_eq!(a.status.code(), Some(0));
            assert_eq!(a.stdout, b.stdout, "{command} {name} not deterministic");
        }
    }
}

#[test]
fn classes_applies_closure_with_a_note() {
    let out = fcring(&["--format", "machine", "classes", "ising", "--fcset", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(
        text.lines()
            .any(|l| l.starts_with("rec=closure input=2 closed=0,1,2")),
        "{text}"
    );
}

#[test]
fn overlaps_flags_the_vanishing_ising_entry() {
    let out = fcring(&["--format", "machine", "overlaps", "ising", "--fcset", "0,1"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(
        text.lines()
            .any(|l| l.contains("block=1 class=1 value=0 szero=true")),
        "{text}"
    );
}

#[test]
fn lattice_check_reports_modularity() {
    let out = fcring(&["--format", "machine", "lattice", "toric", "--check-modular"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let summary = text
        .lines()
        .find(|l| l.starts_with("rec=lattice"))
        .expect("lattice record");
    assert!(summary.contains("modular=true"), "{summary}");
    assert!(summary.contains("distributive=false"), "{summary}");
    assert!(summary.contains("complemented=true"), "{summary}");
}

#[test]
fn quotient_and_extend_round_trip_on_ising() {
    let out = fcring(&[
        "--format", "machine", "quotient", "ising", "--fcset", "0,1,2", "--subgroup", "1",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(
        stdout(&out).contains("rec=quotient members=0,1 dual=0,1 subgroup_union=0,1"),
        "{}",
        stdout(&out)
    );

    let out = fcring(&[
        "--format", "machine", "extend", "ising", "--fcset", "0", "--group", "2",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(
        stdout(&out).contains("rec=extension id=0 members=0,1"),
        "{}",
        stdout(&out)
    );

    let out = fcring(&["extend", "ising", "--fcset", "0", "--group", "3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("kind=NoSuchExtension"));
}

#[test]
fn model_files_on_disk_are_accepted() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fib.json");
    let model = fcring::zoo::bundled_model("fibonacci").unwrap();
    std::fs::write(&path, fcring::serialize_model(&model)).unwrap();
    let out = fcring(&["validate", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
}

#[test]
fn divisor_scan_lists_witnesses() {
    let out = fcring(&["--format", "machine", "divisors", "ising", "--fcset", "0,1,2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert_eq!(
        text.lines().collect::<Vec<_>>(),
        vec![
            "rec=divisor value=1 witness=0",
            "rec=divisor value=2 witness=0,1",
            "rec=divisor value=4 witness=0,1,2",
        ]
    );

    // Non-nilpotent sets are a precondition violation.
    let out = fcring(&["divisors", "fibonacci", "--fcset", "0,1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("kind=Precondition"));
}

#[test]
fn quiet_suppresses_text_output() {
    let out = fcring(&["--quiet", "validate", "ising"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).is_empty());
}
