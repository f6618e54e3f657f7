use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

fn catloc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_catloc")).args(args).env_remove("CATLOC_FIXTURES").output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn span_fails_square_completion() {
    let o = catloc(&["check-lf", "fixtures/span.cat", "--sigma", "σ"]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.contains("LF2 square completion: fail, (σ, α) = (XY, XZ)"), "{out}");
    assert!(out.contains(r#"summary: {"sections":2,"passed":0,"failed":1,"info":1}"#));
}

#[test]
fn interval_localizes_to_singletons() {
    let o = catloc(&["localize", "fixtures/interval.cat", "--sigma", "σ"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let out = stdout(&o);
    for line in ["X -> X: 1", "X -> Y: 1", "Y -> X: 1", "Y -> Y: 1"] {
        assert!(out.contains(line), "{out}");
    }
    assert!(out.contains("[PASS] agreement with the path-category localization"));
}

#[test]
fn z6_away_from_three_has_order_two() {
    let o = catloc(&["modloc", "--ring", "z6", "--mult", "1,3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let out = stdout(&o);
    assert!(out.contains("order 2"));
    assert!(out.contains("local: 0, Z/2, Z/2xZ/2, Z/2xZ/2xZ/2"));
}

#[test]
fn z4_with_two_is_the_zero_ring() {
    let o = catloc(&["modloc", "--ring", "z4", "--mult", "2", "--module-order-cap", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("order 1") && out.contains("zero ring: true"), "{out}");
}

#[test]
fn ring_files_are_read() {
    let ring = fixtures().join("z6.ring");
    let o = catloc(&["modloc", "--ring", ring.to_str().unwrap(), "--mult", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("order 2"));
}

#[test]
fn parse_errors_exit_two_with_position() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.cat");
    std::fs::write(&bad, "{\n  \"objects\": [\"X\",\n}").unwrap();
    let o = catloc(&["check-category", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 3"), "{}", stderr(&o));
    let alg = dir.path().join("bad.alg");
    std::fs::write(&alg, "{\"modulus\": 2,\n\"labels\": [1]}").unwrap();
    let o = catloc(&["kb-build", "--algebra", alg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 2"), "{}", stderr(&o));
}

#[test]
fn invalid_inputs_exit_two() {
    assert_eq!(catloc(&["localize", "missing.cat"]).status.code(), Some(2));
    assert_eq!(catloc(&["check-lf", "span.cat", "--sigma", "nope"]).status.code(), Some(2));
    assert_eq!(catloc(&["kb-build", "--window", "0"]).status.code(), Some(2));
    assert_eq!(catloc(&["kb-build", "--p", "4"]).status.code(), Some(2));
    assert_eq!(catloc(&["recollement-idem", "--algebra", "dual", "--idempotent", "0,1"]).status.code(), Some(2));
    assert_eq!(catloc(&["modloc", "--ring", "z12", "--module-order-cap", "4"]).status.code(), Some(2));
}

#[test]
fn invalid_category_is_reported() {
    let o = catloc(&["check-category", "broken.cat"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("violation: composite (g, f) is undefined"));
    assert_eq!(catloc(&["check-category", "idempotent.cat"]).status.code(), Some(0));
}

#[test]
fn local_objects_of_a_retraction() {
    let o = catloc(&["local-objects", "idempotent.cat"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("local: Y"));
    assert!(out.contains("[PASS] characterizations of local objects"));
}

#[test]
fn saturation_of_the_chain() {
    let o = catloc(&["saturate", "chain3.cat"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("saturation: {id_X, id_Y, id_Z, YZ}"));
}

#[test]
fn output_file_matches_stdout_and_runs_repeat() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.txt");
    let args = ["verify-tr", "--algebra", "field", "--tr4-budget", "10", "--seed", "5"];
    let mut with_output: Vec<&str> = args.to_vec();
    with_output.extend(["--output", path.to_str().unwrap()]);
    let a = catloc(&with_output);
    let b = catloc(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(stdout(&a), stdout(&b));
    assert_eq!(std::fs::read_to_string(&path).unwrap(), stdout(&a));
    assert!(stdout(&a).contains("seed: 5"));
}

#[test]
fn fixture_directory_override() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::copy(fixtures().join("interval.cat"), dir.path().join("custom.cat")).unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_catloc"))
        .args(["localize", "custom.cat"])
        .env("CATLOC_FIXTURES", dir.path())
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
}

#[test]
fn corrupted_cones_fail_rotation() {
    let o = catloc(&["verify-tr", "--algebra", "dual", "--p", "3", "--dim-cap", "1", "--tr4-budget", "5", "--corrupt"]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.contains("## [PASS] TR1") && out.contains("## [FAIL] TR2"), "{out}");
}

#[test]
fn triangulated_commands_on_the_product() {
    let gen = ["--algebra", "product", "--objects", "P1@0"];
    for cmd in ["thick", "verdier", "perp", "bousfield"] {
        let mut args = vec![cmd];
        args.extend(gen);
        let o = catloc(&args);
        assert_eq!(o.status.code(), Some(0), "{cmd}: {}", stdout(&o));
    }
    let o = catloc(&["gamma", "--algebra", "product", "--objects", "P1@0", "--at", "P1@0+P2@0"]);
    assert!(stdout(&o).contains("P1@0+P2@0: Γ = P1@0, L = P2@0"), "{}", stdout(&o));
    let o = catloc(&["recollement-idem", "--algebra", "product", "--idempotent", "1,0"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn algebra_files_and_abelianization() {
    let alg = fixtures().join("dual2.alg");
    let o = catloc(&["kb-build", "--algebra", alg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("dimension 2 over F_2"));
    let o = catloc(&["abelianize", "--algebra", "field", "--tr4-budget", "20"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("[PASS] semisimple collapse"));
}
