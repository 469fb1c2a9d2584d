//! End-to-end checks of the command-line interface: exit codes, report
//! shapes, determinism, and the error paths.

use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_dpcolor"))
}

fn write_file(dir: &tempfile::TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn cycle_json(n: u32, outer: bool) -> String {
    let rotation: Vec<String> = (0..n)
        .map(|i| format!("\"{i}\":[{},{}]", (i + n - 1) % n, (i + 1) % n))
        .collect();
    let vertices: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    let outer_part = if outer {
        format!(",\"outer\":[{}]", vertices.join(","))
    } else {
        String::new()
    };
    format!(
        "{{\"vertices\":[{}],\"rotation\":{{{}}}{}}}",
        vertices.join(","),
        rotation.join(","),
        outer_part
    )
}

fn parse_report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is a JSON report")
}

#[test]
fn structure_reports_hypotheses_for_a_chordless_seven_cycle() {
    let dir = tempfile::tempdir().unwrap();
    let graph = write_file(&dir, "c7.json", &cycle_json(7, true));
    let out = bin().arg("structure").arg(&graph).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let report = parse_report(&out);
    assert_eq!(report["schema"], "dpcolor/v1");
    assert_eq!(
        report["payload"]["hypotheses"]["no456_dist2"]["satisfied"],
        Value::Bool(true)
    );
    assert_eq!(report["payload"]["outer"]["chordless"], Value::Bool(true));
    assert_eq!(report["payload"]["triangle_distance"], Value::Null);
}

#[test]
fn certify_c4_two_colors_exits_one_with_a_counterexample() {
    let dir = tempfile::tempdir().unwrap();
    let graph = write_file(&dir, "c4.json", &cycle_json(4, true));
    let out = bin()
        .args(["certify", "--k", "2"])
        .arg(&graph)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let report = parse_report(&out);
    assert_eq!(report["verdict"], "counterexample");
    assert!(report["payload"]["counterexample"]["matchings"].is_object());
}

#[test]
fn certify_c5_three_colors_exits_zero() {
    let dir = tempfile::tempdir().unwrap();
    let graph = write_file(&dir, "c5.json", &cycle_json(5, true));
    let out = bin()
        .args(["certify", "--k", "3"])
        .arg(&graph)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let report = parse_report(&out);
    assert_eq!(report["verdict"], "certified");
    assert_eq!(report["payload"]["total"], 7776);
}

#[test]
fn solve_distinguishes_sat_from_unsat() {
    let dir = tempfile::tempdir().unwrap();
    let graph = write_file(&dir, "c4.json", &cycle_json(4, true));
    let sat = write_file(
        &dir,
        "sat.json",
        r#"{"lists":{"0":[1,2],"1":[1,2],"2":[1,2],"3":[1,2]},
            "matchings":{"0-1":[[1,1],[2,2]],"1-2":[[1,1],[2,2]],
                         "2-3":[[1,1],[2,2]],"0-3":[[1,1],[2,2]]}}"#,
    );
    let out = bin().arg("solve").arg(&graph).arg(&sat).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(parse_report(&out)["verdict"], "SAT");

    let unsat = write_file(
        &dir,
        "unsat.json",
        r#"{"lists":{"0":[1,2],"1":[1,2],"2":[1,2],"3":[1,2]},
            "matchings":{"0-1":[[1,1],[2,2]],"1-2":[[1,1],[2,2]],
                         "2-3":[[1,1],[2,2]],"0-3":[[1,2],[2,1]]}}"#,
    );
    let out = bin().arg("solve").arg(&graph).arg(&unsat).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(parse_report(&out)["verdict"], "UNSAT");
}

#[test]
fn extend_certifies_a_pendant_interior_vertex() {
    // 7-cycle with an interior vertex adjacent to rim vertices 0 and 2
    let dir = tempfile::tempdir().unwrap();
    let graph = write_file(
        &dir,
        "c7p.json",
        r#"{"vertices":[0,1,2,3,4,5,6,7],
            "rotation":{"0":[6,7,1],"1":[0,2],"2":[1,7,3],"3":[2,4],
                        "4":[3,5],"5":[4,6],"6":[5,0],"7":[2,0]},
            "outer":[0,1,2,3,4,5,6]}"#,
    );
    let out = bin()
        .args(["extend", "--k", "3", "--sample", "120", "--seed", "5"])
        .arg(&graph)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(parse_report(&out)["verdict"], "no-counterexample-found");
}

#[test]
fn reduce_replays_and_unknown_names() {
    let out = bin().args(["reduce", "lemma-2.5"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let report = parse_report(&out);
    assert_eq!(report["verdict"], "replayed");
    assert_eq!(report["payload"]["success"], Value::Bool(true));

    let out = bin().args(["reduce", "nosuch"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let err: Value = serde_json::from_slice(&out.stderr).expect("structured error");
    assert!(err["error"]["message"]
        .as_str()
        .unwrap()
        .contains("unknown configuration"));
}

#[test]
fn discharge_is_clean_on_a_nine_cycle_and_refuses_k4_in_strict_mode() {
    let dir = tempfile::tempdir().unwrap();
    let c9 = write_file(&dir, "c9.json", &cycle_json(9, true));
    let out = bin()
        .args(["discharge", "--rules", "section-2"])
        .arg(&c9)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let report = parse_report(&out);
    assert_eq!(report["verdict"], "clean");
    assert_eq!(report["payload"]["audit"]["identity_holds"], Value::Bool(true));
    assert_eq!(report["payload"]["total2"], 0);

    let k4 = write_file(
        &dir,
        "k4.json",
        r#"{"vertices":[0,1,2,3],
            "rotation":{"0":[1,2,3],"1":[2,0,3],"2":[3,0,1],"3":[1,0,2]},
            "outer":[1,2,3]}"#,
    );
    let out = bin()
        .args(["discharge", "--rules", "section-2", "--strict"])
        .arg(&k4)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert!(err["error"]["detail"]["violations"]
        .as_array()
        .unwrap()
        .iter()
        .any(|v| v.as_str().unwrap().contains("triangle distance")));
}

#[test]
fn reports_are_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let graph = write_file(&dir, "c9.json", &cycle_json(9, true));
    let run = || {
        bin()
            .args(["discharge", "--rules", "section-2", "--trace"])
            .arg(&graph)
            .output()
            .unwrap()
            .stdout
    };
    assert_eq!(run(), run());
    let certify = || {
        bin()
            .args(["certify", "--k", "2", "--sample", "64", "--seed", "3"])
            .arg(&graph)
            .output()
            .unwrap()
            .stdout
    };
    assert_eq!(certify(), certify());
}

#[test]
fn parse_errors_are_structured_and_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write_file(&dir, "bad.json", "{\"vertices\":[0,1],\"rotation\":{\"0\":[1],\"1\":[]}}");
    let out = bin().arg("structure").arg(&bad).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert!(err["error"]["message"].as_str().unwrap().contains("rotation"));

    let out = bin().arg("structure").arg(dir.path().join("missing.json")).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn out_flag_writes_the_report_to_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let graph = write_file(&dir, "c7.json", &cycle_json(7, true));
    let out_path = dir.path().join("report.json");
    let out = bin()
        .arg("structure")
        .arg(&graph)
        .arg("--out")
        .arg(&out_path)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&out_path).unwrap();
    let report: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(report["command"], "structure");
}
