use morita_cli::{run, Report, EXIT_OK, EXIT_USAGE};

fn json(args: &[&str]) -> Report {
    let mut argv = vec!["morita", "--format", "json"];
    argv.extend_from_slice(args);
    let out = run(argv);
    assert_eq!(out.code, EXIT_OK, "stderr: {}", out.stderr);
    serde_json::from_str(&out.stdout).expect("valid report")
}

fn code(args: &[&str]) -> i32 {
    let mut argv = vec!["morita"];
    argv.extend_from_slice(args);
    run(argv).code
}

#[test]
fn orbit_example() {
    let r = json(&["orbit", "A3", "1,0,0", "0,1,0"]);
    assert_eq!(r.status, "equivalent");
    assert!(r.witness.unwrap().contains("sigma"));
    assert_eq!(r.inputs["quiver"], "A3");
}

#[test]
fn orbit_not_equivalent() {
    let r = json(&["orbit", "A3", "1,0,0", "1/2,1/4,1/4"]);
    assert_eq!(r.status, "not-equivalent");
    assert!(r.witness.is_none());
    let r = json(&["orbit", "A3", "1,0,0", "2,0,0"]);
    assert_eq!(r.status, "not-equivalent");
    assert!(r.diagnostics[0].contains("levels differ"));
}

#[test]
fn gwa_example() {
    let r = json(&["gwa-decide", "0,1/2,1", "1/2,1,5/2"]);
    assert_eq!(r.status, "equivalent");
    assert!(r.witness.unwrap().starts_with("eps="));
    let r = json(&["gwa-decide", "0,1/3,1", "0,1/2,1"]);
    assert_eq!(r.status, "not-equivalent");
}

#[test]
fn cherednik_examples() {
    assert_eq!(
        json(&["cherednik", "--n", "3", "--c", "1/5", "--cprime", "2/7"]).status,
        "not-equivalent"
    );
    assert_eq!(
        json(&["cherednik", "--n", "3", "--c", "1/5", "--cprime", "1/3"]).status,
        "hypotheses-not-met"
    );
    let r = json(&["cherednik", "--n", "3", "--c", "1/5", "--cprime", "11/5"]);
    assert_eq!(r.status, "equivalent");
    assert_eq!(r.result["prime"], 79);
    assert_eq!(r.result["component"], "[0,26)");
    let r = json(&["cherednik", "--n", "3", "--c", "-1/7", "--cprime", "-8/7"]);
    assert_eq!(r.status, "equivalent");
}

#[test]
fn negative_vectors_parse() {
    let r = json(&["canon", "A3", "-1/2,3/4,3/4"]);
    assert_eq!(r.result["canonical"], "(1/4,1/4,1/2)");
    assert!(r.witness.is_some());
}

#[test]
fn complex_parameters() {
    let r = json(&["canon", "A3", "1+i,0,-i"]);
    assert_eq!(r.status, "ok");
    let r = json(&["classify", "A3", "1/3+1/2i,1/3,1/3-1/2i"]);
    assert_eq!(r.result["level"], "1");
}

#[test]
fn product_example() {
    let r = json(&["orbit-product", "A3:1,0,0;A2:1,0", "A2:0,1;A3:0,1,0"]);
    assert_eq!(r.status, "equivalent");
    assert!(r.witness.unwrap().contains("0->1"));
    let r = json(&["orbit-product", "A3:1,0,0", "A3:1/3,1/3,1/3"]);
    assert_eq!(r.status, "not-equivalent");
}

#[test]
fn reflect_module_dims() {
    let r = json(&[
        "reflect-module",
        "A3",
        "1,0,0",
        "--simple",
        "1",
        "--at",
        "1,0",
    ]);
    let steps = r.result["steps"].as_array().unwrap();
    assert_eq!(steps[1]["dims"], "(1,1,0)");
    assert!(r.diagnostics[0].contains("skipped"));
    let r = json(&[
        "reflect-module",
        "D4",
        "1,0,0,0,0",
        "--simple",
        "4",
        "--at",
        "0",
        "--prime",
        "101",
    ]);
    assert_eq!(r.result["field"], "F_101");
    assert_eq!(
        code(&[
            "reflect-module",
            "A3",
            "1,0,0",
            "--simple",
            "1",
            "--at",
            "0",
            "--prime",
            "4"
        ]),
        EXIT_USAGE
    );
    assert_eq!(
        code(&[
            "reflect-module",
            "A3",
            "1,0,0",
            "--simple",
            "0",
            "--at",
            "1"
        ]),
        EXIT_USAGE
    );
}

#[test]
fn quiver_info() {
    let r = json(&["quiver-info", "D4"]);
    assert_eq!(r.result["delta"], "(1,1,1,1,2)");
    assert_eq!(r.result["diagram_automorphisms"], 24);
}

#[test]
fn unsupported_is_a_verdict() {
    let r = json(&["quiver-info", "F4"]);
    assert_eq!(r.status, "unsupported");
    let r = json(&["orbit", "A3", "-1,0,0", "0,-1,0"]);
    assert_eq!(r.status, "unsupported");
}

#[test]
fn usage_errors() {
    assert_eq!(code(&["frobnicate"]), EXIT_USAGE);
    assert_eq!(code(&["orbit", "A3", "1,x,0", "0,1,0"]), EXIT_USAGE);
    assert_eq!(code(&["orbit", "A3", "1,0", "0,1,0"]), EXIT_USAGE);
    assert_eq!(
        code(&["cherednik", "--n", "3", "--c", "1/0", "--cprime", "1"]),
        EXIT_USAGE
    );
    assert_eq!(
        code(&["cherednik", "--n", "30", "--c", "1", "--cprime", "1"]),
        EXIT_USAGE
    );
    assert_eq!(code(&["--help"]), EXIT_OK);
}

#[test]
fn text_matches_json() {
    let text = run(["morita", "orbit", "A3", "1,0,0", "0,1,0"]);
    let report = json(&["orbit", "A3", "1,0,0", "0,1,0"]);
    assert!(text.stdout.contains("status: equivalent"));
    assert!(text
        .stdout
        .contains(&format!("witness: {}", report.witness.unwrap())));
}

#[test]
fn deterministic() {
    let a = run([
        "morita",
        "--format",
        "json",
        "gwa-decide",
        "1/3,2/3+i,1",
        "-1/3,-2/3-i,1",
    ]);
    let b = run([
        "morita",
        "--format",
        "json",
        "gwa-decide",
        "1/3,2/3+i,1",
        "-1/3,-2/3-i,1",
    ]);
    assert_eq!(a, b);
}
