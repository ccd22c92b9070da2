use std::process::{Command, Output};

use serde_json::Value;

fn novikov(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_novikov")).args(args).env_remove("NOVIKOV_HORIZON").output().expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid json")
}

fn data(name: &str) -> String {
    format!("{}/tests/data/{name}", env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn trefoil_braid_passes() {
    let v = json_of(&novikov(&["fiber-check", "--braid", "1,1,1"]));
    assert_eq!(v["verdict"], "passed");
    assert_eq!(v["degree"], "1");
    assert_eq!(v["monic"], true);
}

#[test]
fn five_two_is_obstructed_by_monicness() {
    let out = novikov(&["fiber-check", "--braid", "1,1,1,2,-1,2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["verdict"]["obstructed"], "non-monic");
    assert_eq!(v["monic"], false);
}

#[test]
fn oracle_agrees_on_figure_eight() {
    let out = novikov(&["novikov", "--braid", "1,-2,1,-2", "--oracle", "--horizon", "8"]);
    let v = json_of(&out);
    assert_eq!(v["plus"]["vanishing"], "vanishes");
    assert_eq!(v["plus"]["oracle"], true);
    assert_eq!(v["minus"]["oracle"], true);
}

#[test]
fn alexander_of_figure_eight() {
    let v = json_of(&novikov(&["alexander", "--braid", "1,-2,1,-2"]));
    assert_eq!(v["alexander"], "1 - 3*t + t^2");
}

#[test]
fn presentation_file_and_inline_agree() {
    let a = novikov(&["torsion", &data("trefoil.txt")]);
    let b = novikov(&["torsion", "--inline", "gens: a b; rel: abaBAB"]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json_of(&a)["tau"], "(1 - t + t^2) / (1 - t)");
}

#[test]
fn output_is_byte_identical_across_runs() {
    let args = ["novikov", "--braid", "1,1,1,2,-1,2", "--horizon", "6"];
    assert_eq!(novikov(&args).stdout, novikov(&args).stdout);
}

#[test]
fn horizon_comes_from_environment() {
    let run = |env: Option<&str>| {
        let mut c = Command::new(env!("CARGO_BIN_EXE_novikov"));
        c.args(["novikov", "--braid", "1,1,1", "--direction", "+"]);
        match env {
            Some(h) => c.env("NOVIKOV_HORIZON", h),
            None => c.env_remove("NOVIKOV_HORIZON"),
        };
        json_of(&c.output().unwrap())
    };
    let short = run(Some("2"));
    assert_eq!(short["plus"]["inverse"][0][0], "t + t^2 + O(level >= 3)");
    assert_ne!(run(None)["plus"]["inverse"], short["plus"]["inverse"]);
}

#[test]
fn twocycle_reduces_to_weight_two() {
    let v = json_of(&novikov(&["weight-reduce", &data("twocycle.json")]));
    assert_eq!(v["total"], 2);
    assert_eq!(v["complement_connected"], true);
    assert_eq!(v["class_preserved"], true);
}

#[test]
fn twocycle_obstruction_for_primitive_class() {
    let v = json_of(&novikov(&["weight-reduce", &data("twocycle.json"), "--obstruction"]));
    assert_eq!(v["obstruction"]["verdict"], "contradiction");
    let v = json_of(&novikov(&["weight-reduce", &data("twocycle.json"), "--obstruction", "--non-primitive"]));
    assert_eq!(v["obstruction"]["verdict"], "consistent");
    assert_eq!(v["obstruction"]["multiplicity"], 2);
}

#[test]
fn hnn_witness_is_verified() {
    let v = json_of(&novikov(&["hnn-witness", &data("doubling.json"), "--depth", "3"]));
    assert_eq!(v["ascending"], "not-ascending");
    assert_eq!(v["witness"]["verified"], true);
    assert_eq!(v["witness"]["terms"].as_array().unwrap().len(), 4);
}

#[test]
fn heisenberg_demo_examples() {
    let v = json_of(&novikov(&["heisenberg-demo"]));
    assert_eq!(v["collect"]["y*x"], "x*y*z^-1");
    assert_eq!(v["invertibility"]["1 - x"], "Invertible");
    assert_eq!(v["invertibility"]["2 - x"], "NotInvertible");
    assert_eq!(v["invertibility"]["y - x"], "Invertible");
    assert_eq!(v["invertibility"]["diag(1, x)"], "Degenerate");
}

#[test]
fn delta0_of_trefoil() {
    assert_eq!(json_of(&novikov(&["delta0", "--braid", "1,1,1"]))["delta0"], 2);
}

#[test]
fn parse_error_exits_one_with_position() {
    let out = novikov(&["torsion", "--inline", "gens: a b; rel: aB("]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 2, column 8"), "{err}");
}

#[test]
fn missing_file_exits_one() {
    let out = novikov(&["torsion", "/nonexistent/presentation.txt"]);
    assert_eq!(out.status.code(), Some(1));
}
