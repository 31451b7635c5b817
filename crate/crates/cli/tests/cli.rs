use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::{json, Value};

fn fixture(rel: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(rel)
}

fn csg(args: &[&str]) -> Output {
    csg_env(args, &[])
}

fn csg_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_csg"));
    cmd.args(args).env_remove("CSG_MAX_BINOMIALS");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn report(args: &[&str]) -> (i32, Value) {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let out = csg(&full);
    let v: Value = serde_json::from_slice(&out.stdout).expect("stdout is JSON");
    (out.status.code().unwrap(), v)
}

fn points(v: &Value) -> Vec<Vec<i64>> {
    serde_json::from_value(v.clone()).unwrap()
}

#[test]
fn info_example_4_8() {
    let f = fixture("paper/example_4_8.json");
    let (code, r) = report(&["info", f.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(r["command"], "info");
    assert_eq!(r["label"], "example_4_8");
    assert_eq!(r["results"]["genus"], 2);
    assert_eq!(points(&r["results"]["gaps"]), vec![vec![1, 1], vec![2, 1]]);
    assert_eq!(points(&r["results"]["cone_rays"]), vec![vec![1, 1], vec![3, 1]]);
}

#[test]
fn info_full_cone_and_example_4_5() {
    let (code, r) = report(&["info", fixture("misc/full_orthant.json").to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(r["results"]["genus"], 0);
    assert_eq!(r["results"]["gaps"], json!([]));
    let (code, r) = report(&["info", fixture("paper/example_4_5.json").to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(r["results"]["genus"], 15);
}

#[test]
fn buchsbaum_verdicts() {
    for name in ["paper/example_5_3_s3.json", "paper/example_4_2.json"] {
        let (code, r) = report(&["buchsbaum", fixture(name).to_str().unwrap()]);
        assert_eq!(code, 0, "{name}");
        assert_eq!(r["results"]["verdict"]["buchsbaum"], true, "{name}");
    }
    let (code, r) = report(&["buchsbaum", fixture("misc/not_closed.json").to_str().unwrap()]);
    assert_eq!(code, 2);
    assert_eq!(r["error"]["kind"], "validation");
}

#[test]
fn presentation_sizes() {
    let f = fixture("paper/example_4_8.json");
    let (code, r) = report(&["presentation", "--formula-check", f.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(r["results"]["mu"], 17);
    assert_eq!(r["results"]["formula_check"]["formula_mu"], 17);
    assert_eq!(r["results"]["formula_check"]["agrees"], true);

    let (_, r) = report(&["presentation", fixture("misc/numerical_2_3.json").to_str().unwrap()]);
    assert_eq!(r["results"]["mu"], 1);
    assert_eq!(points(&r["results"]["betti_degrees"]), vec![vec![6]]);

    let (_, r) = report(&["presentation", fixture("misc/full_orthant.json").to_str().unwrap()]);
    assert_eq!(r["results"]["mu"], 0);
}

#[test]
fn elimination_route_matches() {
    let f = fixture("paper/example_4_8.json");
    let (_, a) = report(&["presentation", f.to_str().unwrap()]);
    let (code, b) = report(&["presentation", "--elimination", f.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(a["results"]["betti_degrees"], b["results"]["betti_degrees"]);
    assert_eq!(a["results"]["mu"], b["results"]["mu"]);
}

#[test]
fn regions_example_2_3() {
    let f = fixture("paper/example_2_3.json");
    let (code, r) = report(&["regions", "--k", "1", f.to_str().unwrap()]);
    assert_eq!(code, 0);
    let regions = r["results"]["regions"].as_array().unwrap();
    assert_eq!(regions.len(), 2);
    assert_eq!(points(&regions[0]["points"]), vec![vec![0, 0]]);
    assert_eq!(
        points(&regions[1]["points"]),
        vec![vec![1, 1], vec![2, 1], vec![2, 2], vec![3, 1], vec![4, 2], vec![5, 2]]
    );

    let (code, r) = report(&["regions", "--k", "0", f.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(r["results"]["regions"].as_array().unwrap().len(), 1);

    let (code, _) = report(&["regions", "--k", "5", "--k-max", "4", f.to_str().unwrap()]);
    assert_eq!(code, 2);
    let (code, r) = report(&["regions", fixture("misc/empty_multset.json").to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(r["error"]["message"].as_str().unwrap().contains("not a multset"));
}

#[test]
fn gluing_commands() {
    let (code, r) = report(&["gluing", "--paper-example"]);
    assert_eq!(code, 0);
    assert_eq!(r["results"]["all_passed"], true);
    assert_eq!(r["results"]["buchsbaum"], false);

    let f = fixture("paper/example_5_3.json");
    let f = f.to_str().unwrap();
    let (code, r) = report(&["gluing", f, "--part1", "0,1,2,3", "--part2", "4,5", "--d", "14,28"]);
    assert_eq!(code, 0);
    let w = &r["results"]["witness"];
    assert_eq!(w["fact1"], json!([2, 0, 0, 2]));
    assert_eq!(w["fact2"], json!([1, 1]));
    let mu = &r["results"]["mu"];
    assert_eq!(mu["s"], mu["sum_plus_one"]);

    let (code, r) = report(&["gluing", f, "--part1", "0,1,2,3", "--part2", "4,5", "--d", "28,56"]);
    assert_eq!(code, 2);
    assert!(r["error"]["message"].as_str().unwrap().contains("(14,28)"));
    let (code, _) = report(&["gluing", f, "--part1", "0,1,2", "--part2", "4,5", "--d", "14,28"]);
    assert_eq!(code, 2);
}

#[test]
fn exit_codes() {
    let (code, r) = report(&["info", fixture("misc/not_c_semigroup.json").to_str().unwrap()]);
    assert_eq!(code, 3);
    assert_eq!(r["error"]["kind"], "not_verified");

    let out = csg_env(
        &["presentation", "--elimination", fixture("paper/example_4_8.json").to_str().unwrap()],
        &[("CSG_MAX_BINOMIALS", "2")],
    );
    assert_eq!(out.status.code(), Some(4));

    let (code, r) = report(&["info", fixture("misc/unknown_key.json").to_str().unwrap()]);
    assert_eq!(code, 2);
    assert_eq!(r["error"]["kind"], "schema");
    assert!(r["error"]["message"].as_str().unwrap().contains("line 7"));

    let (code, r) = report(&["info", "/nonexistent/instance.json"]);
    assert_eq!(code, 2);
    assert_eq!(r["error"]["kind"], "io");

    assert_eq!(csg(&["info"]).status.code(), Some(2));
}

#[test]
fn json_is_deterministic_apart_from_timings() {
    let cases: [&[&str]; 4] = [
        &["info", "paper/example_4_5.json"],
        &["buchsbaum", "paper/example_4_8.json"],
        &["presentation", "paper/example_4_2.json"],
        &["regions", "paper/example_2_3.json"],
    ];
    for case in cases {
        let path = fixture(case[1]);
        let args = [case[0], path.to_str().unwrap()];
        let strip = || {
            let out = csg(&["--json", args[0], args[1]]);
            let text = String::from_utf8(out.stdout).unwrap();
            text.lines()
                .filter(|l| !l.contains("\"total_ms\""))
                .collect::<Vec<_>>()
                .join("\n")
        };
        assert_eq!(strip(), strip(), "{case:?}");
    }
}

#[test]
fn text_output_renders_the_report() {
    let out = csg(&["info", fixture("paper/example_4_8.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("genus: 2"));
    assert!(text.contains("gaps: {(1, 1), (2, 1)}"));
    assert!(text.contains("label: example_4_8"));
}

#[test]
fn every_fixture_loads() {
    for entry in std::fs::read_dir(fixture("paper")).unwrap() {
        let path = entry.unwrap().path();
        let (code, r) = report(&["info", path.to_str().unwrap()]);
        // the glued semigroup has a non-finite complement in its cone
        let expected = if path.ends_with("example_5_3.json") { 3 } else { 0 };
        assert_eq!(code, expected, "{}", path.display());
        let label = r["label"].as_str().unwrap();
        assert_eq!(Some(label), path.file_stem().and_then(|s| s.to_str()));
    }
}
