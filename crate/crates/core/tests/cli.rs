use std::path::PathBuf;

use curvelab::farey::{FareyBall, Slope, ToralMatrix, matrix_act};
use curvelab::lab::{run, EXIT_INCONCLUSIVE, EXIT_OK, EXIT_PRECONDITION, EXIT_USAGE};

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name).display().to_string()
}

fn lab(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("curvelab").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn farey_dist_and_geodesic() {
    assert_eq!(lab(&["farey", "dist", "--from", "1/0", "--to", "2/5"]), (EXIT_OK, "3\n".into(), String::new()));
    let (code, out, _) = lab(&["farey", "geodesic", "--from", "1/0", "--to", "2/5"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out, "1/0 0/1 1/2 2/5\n");
}

#[test]
fn malformed_input_is_usage() {
    let (code, _, err) = lab(&["farey", "dist", "--from", "1/x", "--to", "2/5"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("bad slope"));
    assert_eq!(lab(&["farey", "tl", "--matrix", "2,1,1,2"]).0, EXIT_USAGE);
    assert_eq!(lab(&["farey", "tl"]).0, EXIT_USAGE);
    assert_eq!(lab(&["frobnicate"]).0, EXIT_USAGE);
    assert_eq!(lab(&["verify", "no-such-suite"]).0, EXIT_USAGE);
}

#[test]
fn farey_tl_outputs() {
    assert_eq!(lab(&["farey", "tl", "--matrix", "1,1,0,1"]).1, "exact 0 (parabolic)\n");
    let (code, out, _) = lab(&["farey", "tl", "--matrix", "2,1,1,1", "--mmax", "8", "--kmax", "6"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out, "exact 1 (m = 1, D = 1, base -1/1)\ngeodesic -1/1 1/0\nverified k <= 6\n");
    // the pinned values against breadth-first search
    let a: ToralMatrix = "2,1,1,1".parse().unwrap();
    let ball = FareyBall::new(400);
    let c: Slope = "-1/1".parse().unwrap();
    let mut img = c.clone();
    for k in 1..=6u32 {
        img = matrix_act(&a, &img);
        assert_eq!(ball.distance(&c, &img), Some(k));
    }
}

#[test]
fn farey_tl_without_axis_is_inconclusive() {
    let (code, out, _) = lab(&["farey", "tl", "--matrix", "5,2,2,1", "--mmax", "0"]);
    assert_eq!(code, EXIT_INCONCLUSIVE);
    assert!(out.starts_with("inconclusive"));
}

#[test]
fn fine_dist() {
    let (code, out, _) = lab(&["fine", "dist", "--alpha", &fixture("horizontal.poly"), "--beta", &fixture("vertical.poly"), "--punctures", &fixture("origin.pts")]);
    assert_eq!(code, EXIT_OK);
    assert!(out.starts_with("d† = 1\n"));
    let (code, out, _) = lab(&["fine", "dist", "--alpha", &fixture("horizontal.poly"), "--beta", &fixture("slope_2_5.poly"), "--punctures", &fixture("origin.pts")]);
    assert_eq!(code, EXIT_OK);
    assert!(out.starts_with("d† = 3\n"));
}

#[test]
fn fine_dist_with_empty_bigon() {
    let (code, _, err) = lab(&["fine", "dist", "--alpha", &fixture("flat.poly"), "--beta", &fixture("bump.poly"), "--punctures", &fixture("below.pts")]);
    assert_eq!(code, EXIT_PRECONDITION);
    assert!(err.contains("(5/8, 3/4)"), "{err}");
}

#[test]
fn sweep_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let (code, out, _) = lab(&["sweep", &fixture("fibonacci.json"), "--out", d]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out, "matrix,P_size,lower,upper,exact,period_m,verdict\n\"2,1,1,1\",1,1,1,true,,PASS\n");
    let first = std::fs::read(dir.path().join("fibonacci.json")).unwrap();
    assert_eq!(lab(&["sweep", &fixture("fibonacci.json"), "--out", d]).0, EXIT_OK);
    assert_eq!(std::fs::read(dir.path().join("fibonacci.json")).unwrap(), first);

    let (code, out, _) = lab(&["sweep", &fixture("tiny_budget.json"), "--out", d]);
    assert_eq!(code, EXIT_INCONCLUSIVE);
    assert!(out.contains("INCONCLUSIVE"));
    let report: serde_json::Value = serde_json::from_slice(&std::fs::read(dir.path().join("tiny_budget.json")).unwrap()).unwrap();
    for e in report["entries"].as_array().unwrap() {
        assert!(e["bracket"]["lower"].is_string());
    }
    assert!(report["params"].is_object());

    assert_eq!(lab(&["sweep", &fixture("not_invariant.json"), "--out", d]).0, EXIT_USAGE);
    assert_eq!(lab(&["sweep", &fixture("unknown_field.json"), "--out", d]).0, EXIT_USAGE);
}

#[test]
fn verify_suites() {
    let (code, out, _) = lab(&["verify", "periodic"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.starts_with("PASS periodic-points"));
    let (code, out, _) = lab(&["verify", "lemma34-independence", "--json"]);
    assert_eq!(code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v[0]["suite"], "fine-independence");
    assert_eq!(lab(&["verify", "sandwich", "--matrix", "2,1,1,1"]).0, EXIT_OK);
    assert_eq!(lab(&["verify", "sandwich", "--matrix", "1,1,0,1"]).0, EXIT_PRECONDITION);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_curvelab");
    let st = |args: &[&str]| std::process::Command::new(bin).args(args).output().unwrap();
    let o = st(&["farey", "dist", "--from", "0/1", "--to", "1/0"]);
    assert_eq!(o.status.code(), Some(EXIT_OK));
    assert_eq!(String::from_utf8_lossy(&o.stdout), "1\n");
    assert_eq!(st(&["farey", "dist", "--from", "2/4", "--to", "1/0"]).status.code(), Some(EXIT_USAGE));
    assert_eq!(st(&["--help"]).status.code(), Some(EXIT_OK));
}
