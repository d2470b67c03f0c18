//! End-to-end tests of the flagtower binary: documented outputs, exit
//! codes, and byte-level determinism.

use std::process::{Command, Output};

fn flagtower(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_flagtower"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = flagtower(args);
    assert!(
        out.status.success(),
        "{:?} failed: {}",
        args,
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn enumerate_count_length_5_is_41() {
    assert_eq!(stdout(&["enumerate", "--m", "2", "--length", "5", "--count"]), "41\n");
}

#[test]
fn enumerate_lists_are_sorted_and_sized() {
    let out = stdout(&["enumerate", "--m", "2", "--length", "3"]);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 5);
    assert_eq!(lines[0], "1.1.1");
    let mut sorted = lines.clone();
    sorted.sort();
    assert_eq!(lines, sorted);
}

#[test]
fn codim_of_theorem_classes() {
    assert_eq!(stdout(&["codim", "--code", "1.2.3.1.2"]), "4\n");
    assert_eq!(stdout(&["codim", "--code", "1.2.2.1.2"]), "3\n");
    assert_eq!(stdout(&["codim", "--code", "1.2.1.2.1"]), "2\n");
}

#[test]
fn sandwich_collapses_letters() {
    assert_eq!(stdout(&["sandwich", "--code", "1.2.3.1.2"]), "1.S.S.1.S\n");
}

#[test]
fn fixtures_lists_all_six() {
    let out = stdout(&["fixtures"]);
    assert_eq!(out.lines().count(), 6);
    assert!(out.contains("zzz\t1.2.3.1.2"));
    assert!(out.contains("121three\t1.2.1.3.1"));
}

#[test]
fn chart_json_is_valid_and_versioned() {
    let out = stdout(&[
        "chart", "--code", "1.2.3.1.2", "--const", "step4=1,1", "--const", "step5=y:a",
        "--format", "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["schema"], "chart/1");
    assert_eq!(v["code"], "1.2.3.1.2");
    assert_eq!(v["coordinates"].as_array().unwrap().len(), 13);
}

#[test]
fn derived_flag_rank_profile() {
    let out = stdout(&["derived-flag", "--fixture", "zzz"]);
    let ranks: Vec<&str> = out
        .lines()
        .map(|l| l.split("rank ").nth(1).unwrap().split(' ').next().unwrap())
        .collect();
    assert_eq!(ranks, ["3", "5", "7", "9", "11", "13"]);
}

#[test]
fn cauchy_of_square_has_rank_two() {
    let out = stdout(&["cauchy", "--fixture", "zzz", "--of-square"]);
    assert!(out.starts_with("rank: 2\n"));
    let out = stdout(&["cauchy", "--fixture", "zzz"]);
    assert!(out.starts_with("rank: 0\n"));
}

#[test]
fn verify_sandwich_reports_ok() {
    for name in ["zzz", "212", "121", "123one", "121two", "121three"] {
        let out = stdout(&["verify-sandwich", "--fixture", name]);
        assert!(out.ends_with("sandwich: ok\n"), "{name}: {out}");
    }
}

#[test]
fn symmetries_at_origin_shows_known_slots() {
    let out = stdout(&["symmetries", "--fixture", "121two", "--at-origin"]);
    assert!(out.contains("t: A\n"));
    assert!(out.contains("x2: 0\n"));
    assert!(out.contains("y3: A_t - 2*B_x0 + C_y0\n"));
}

#[test]
fn moduli_scan_finds_the_three_classes() {
    let out = stdout(&["moduli-scan", "--length", "5", "--grid", "0,1", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["schema"], "moduli-scan/1");
    let candidates: Vec<&str> = v["candidates"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c.as_str().unwrap())
        .collect();
    assert_eq!(candidates, ["1.2.1.2.1", "1.2.2.1.2", "1.2.3.1.2"]);
}

#[test]
fn rescale_verifies_121two() {
    let out = stdout(&[
        "rescale", "--fixture", "121two", "--target", "b=1,c=1", "--verify",
        "--format", "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["schema"], "rescale/1");
    assert_eq!(v["verified"], true);
}

#[test]
fn domain_errors_exit_2() {
    for args in [
        vec!["codim", "--code", "1.9.9"],
        vec!["codim", "--code", "2.1.1"],
        vec!["fixtures-unknown"],
        vec!["chart", "--fixture", "nope"],
        vec!["chart", "--code", "1.2", "--const", "step2=x:1"],
        vec!["moduli-scan", "--length", "5", "--grid", "0,q"],
    ] {
        let out = flagtower(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn output_is_byte_deterministic() {
    for args in [
        vec!["enumerate", "--m", "2", "--length", "4"],
        vec!["chart", "--fixture", "123one", "--format", "json"],
        vec!["pfaff", "--fixture", "212"],
        vec!["symmetries", "--fixture", "121two", "--at-origin", "--format", "json"],
        vec!["moduli-scan", "--length", "3", "--grid", "0,1", "--all", "--format", "json"],
        vec!["rescale", "--fixture", "123one", "--target", "b=1,c=sgn", "--verify"],
    ] {
        let a = flagtower(&args);
        let b = flagtower(&args);
        assert!(a.status.success(), "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}
