use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn gpdcalc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gpdcalc"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn path(name: &str) -> String {
    fixture(name).to_string_lossy().into_owned()
}

#[test]
fn bracket_reproduces_the_closing_example() {
    let f = path("cotangent_bracket.toml");
    let o = gpdcalc(&["bracket", &f, "--poisson", "P", "--left", "a", "--right", "b"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert_eq!(stdout(&o), "q*p*dq\n");
}

#[test]
fn bracket_of_an_odd_form_with_itself_vanishes() {
    let f = path("cotangent_bracket.toml");
    let o = gpdcalc(&["bracket", &f, "--poisson", "P", "--left", "a", "--right", "a"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "0\n");
}

#[test]
fn bracket_errors() {
    let f = path("cotangent_bracket.toml");
    let o = gpdcalc(&["bracket", &f, "--poisson", "P", "--left", "a", "--right", "nope"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("object not found"));

    let o = gpdcalc(&["bracket", &f, "--poisson", "P", "--left", "a", "--right", "X"]);
    assert_eq!(code(&o), 3, "form with multivector: {}", stderr(&o));

    let o = gpdcalc(&["bracket", &f, "--poisson", "a", "--left", "a", "--right", "b"]);
    assert_eq!(code(&o), 3);

    let o = gpdcalc(&["bracket", &f, "--left", "a", "--right", "b"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn schouten_bracket_of_vector_fields() {
    let f = path("cotangent_bracket.toml");
    let o = gpdcalc(&["bracket", &f, "--left", "X", "--right", "P", "--schouten"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    // [X, P] = L_X P for a vector field X
    assert_eq!(stdout(&o), "-d/dq∧d/dp\n");
}

#[test]
fn differentials() {
    let f = path("cotangent_bracket.toml");
    let o = gpdcalc(&["d", &f, "--object", "a"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "-q*dq∧dp\n");

    let o = gpdcalc(&["d", &f, "--object", "X", "--poisson", "P"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "-d/dq∧d/dp\n");

    let o = gpdcalc(&["d", &f, "--object", "X"]);
    assert_eq!(code(&o), 3);

    let t = path("tangent_algebroid.toml");
    let o = gpdcalc(&["d", &t, "--object", "lambda"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert_eq!(stdout(&o), "0\n");
}

#[test]
fn check_tangent_algebroid_passes() {
    let o = gpdcalc(&["check", &path("tangent_algebroid.toml")]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let out = stdout(&o);
    assert!(out.contains("check algebroid/anchor-morphism pass"));
    assert!(out.contains("check characteristic-pair/theta-rho-compatible pass"));
    assert!(out.contains("\nstatus pass ("));
}

#[test]
fn check_anchor_violation_fails_with_a_witness() {
    let o = gpdcalc(&["check", &path("anchor_violating.toml")]);
    assert_eq!(code(&o), 1);
    let out = stdout(&o);
    assert!(out.contains("check algebroid/anchor-morphism fail"), "{out}");
    assert!(out.contains("(e_1, e_2)"), "{out}");
    assert!(out.contains("status fail"));
}

#[test]
fn check_empty_objects_passes() {
    let o = gpdcalc(&["check", &path("empty_objects.toml")]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("check objects-well-formed pass instances=0"));
}

#[test]
fn check_tags() {
    let o = gpdcalc(&["check", &path("cotangent_bracket.toml")]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).contains("check poisson pass"));

    let o = gpdcalc(&["check", &path("not_multiplicative.toml")]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("fiber degree 2"), "{}", stdout(&o));

    let o = gpdcalc(&["check", &path("bialgebra.toml"), "--json"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["status"], "pass");
}

#[test]
fn check_parse_errors_exit_2() {
    let o = gpdcalc(&["check", &path("bad_poly.toml")]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("syntax error"));

    let o = gpdcalc(&["check", &path("missing.toml")]);
    assert_eq!(code(&o), 2);
}

#[test]
fn check_rejects_malformed_files() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("m.toml");
    std::fs::write(&f, "[chart]\ncoordinates = [\"x\"]\n[objects.w]\ndegree = 2\nterms = [{ coeff = \"1\", frame = [\"dx\"] }]\n")
        .unwrap();
    let o = gpdcalc(&["check", f.to_str().unwrap()]);
    assert_eq!(code(&o), 3);

    std::fs::write(&f, "[chart]\ncoordinates = [\"x\"]\n[objects.w]\ndegree = 1\nterms = [{ coeff = \"1\", frame = [\"dz\"] }]\n")
        .unwrap();
    let o = gpdcalc(&["check", f.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("unknown frame label"));

    std::fs::write(&f, "[chart]\ncoordinates = [\"x\"]\n[objects.w]\ndegree = 0\ntags = [\"shiny\"]\n").unwrap();
    let o = gpdcalc(&["check", f.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
}

#[test]
fn verify_tstar_example() {
    let o = gpdcalc(&["verify", "tstar-example", "--n", "1", "--trials", "50", "--seed", "7"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let out = stdout(&o);
    for i in 1..=4 {
        assert!(out.contains(&format!("closing-example-line-{i} pass")), "line {i}");
    }
    assert!(!out.contains(" s\n"), "timing stays on stderr");
    assert!(stderr(&o).contains("verify tstar-example"));
}

#[test]
fn verify_all_once() {
    let o = gpdcalc(&["verify", "all", "--trials", "1", "--seed", "0"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let out = stdout(&o);
    for suite in ["exterior/", "algebroid/", "tstar-example", "crossed-module", "bialgebra/"] {
        assert!(out.contains(&format!("check {suite}")), "{suite}");
    }
}

#[test]
fn verify_usage_errors() {
    assert_eq!(code(&gpdcalc(&["verify", "bogus"])), 2);
    assert_eq!(code(&gpdcalc(&["verify", "exterior", "--trials", "many"])), 2);
    assert_eq!(code(&gpdcalc(&["verify", "exterior", "--trials", "0"])), 2);
    assert_eq!(code(&gpdcalc(&["verify", "tstar-example", "--n", "0"])), 2);
    assert_eq!(code(&gpdcalc(&["frobnicate"])), 2);
}

#[test]
fn reports_are_byte_identical() {
    let args = ["verify", "exterior", "--trials", "3", "--seed", "11"];
    let (a, b) = (gpdcalc(&args), gpdcalc(&args));
    assert_eq!(a.stdout, b.stdout);
    let args = ["verify", "bialgebra", "--json"];
    assert_eq!(gpdcalc(&args).stdout, gpdcalc(&args).stdout);
    let f = path("tangent_algebroid.toml");
    assert_eq!(gpdcalc(&["check", &f]).stdout, gpdcalc(&["check", &f]).stdout);
}

#[test]
fn json_report_lists_anchors() {
    let o = gpdcalc(&["verify", "bialgebra", "--json"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["suite"], "bialgebra");
    let checks = v["checks"].as_array().unwrap();
    assert!(!checks.is_empty());
    assert!(checks.iter().all(|c| c["anchor"].as_str().is_some_and(|a| !a.is_empty())));
}
