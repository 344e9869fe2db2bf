use std::io::Write;
use std::process::{Command, Output, Stdio};

use superkit::random::Sampler;
use superkit::script::json::{export_string, import_str};
use superkit::script::Value;
use superkit::Context;

const BIN: &str = env!("CARGO_BIN_EXE_superkit");
const GOLDEN: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/examples/scripts/golden.sk");

fn with_stdin(args: &[&str], input: &str) -> Output {
    let mut child =
        Command::new(BIN).args(args).stdin(Stdio::piped()).stdout(Stdio::piped()).stderr(Stdio::piped()).spawn().unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn text(b: &[u8]) -> String {
    String::from_utf8(b.to_vec()).unwrap()
}

#[test]
fn golden_session_matches_recorded_output() {
    let out = Command::new(BIN).args(["--script", GOLDEN]).output().unwrap();
    assert!(out.status.success(), "{}", text(&out.stderr));
    assert_eq!(text(&out.stdout), include_str!("../examples/scripts/golden.out"));
}

#[test]
fn empty_script_is_silent() {
    let out = with_stdin(&[], "");
    assert!(out.status.success());
    assert!(out.stdout.is_empty() && out.stderr.is_empty());
    let out = with_stdin(&[], "# only a comment\n\n");
    assert!(out.status.success() && out.stdout.is_empty());
}

#[test]
fn spec_examples() {
    let out = with_stdin(&[], "context g even=[t] odd=[theta]\ngroup r on g mu=[t + t' + theta*theta', theta + theta'] unit=(0)\nlivf d/dtheta\n");
    assert_eq!(text(&out.stdout), "-theta*d/dt + d/dtheta\n");
    let out = with_stdin(&[], "context even=[x, y] odd=[xi, eta]\nvariety v ideal=[x*xi + y*eta] point=(1, 1, 0, 0)\ntangent v\n");
    assert_eq!(text(&out.stdout), "Xi + Eta = 0\ndim 2|1\n");
}

#[test]
fn first_error_stops_the_run() {
    let script = "context even=[t] odd=[theta]\neval t + u\neval t^2\n";
    let out = with_stdin(&[], script);
    assert!(!out.status.success());
    assert!(out.stdout.is_empty());
    assert_eq!(text(&out.stderr), "error: line 2, column 10: unknown identifier `u`\n");

    let out = with_stdin(&["--keep-going"], script);
    assert!(!out.status.success());
    assert_eq!(text(&out.stdout), "t^2\n");
}

#[test]
fn module_errors_name_the_statement() {
    let out = with_stdin(&[], "context even=[t] odd=[theta]\nmatrix m dims 1|1 -> 1|1 rows [[0, theta], [theta, 0]]\nber m\n");
    assert!(!out.status.success());
    let err = text(&out.stderr);
    assert!(err.starts_with("error: line 3: `ber m`: "), "{err}");
}

#[test]
fn json_out_collects_exports() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.json");
    let script = "context even=[t] odd=[theta1, theta2]\nlet f = theta1*theta2\nexport f\n";
    let out = with_stdin(&["--json-out", path.to_str().unwrap()], script);
    assert!(out.status.success());
    let json: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(json["f"]["terms"][0]["odd"], serde_json::json!([1, 2]));
    assert_eq!(json["f"]["terms"][0]["coefficient"], "1");
    let line = text(&out.stdout);
    assert!(matches!(import_str(line.trim()).unwrap(), Value::Poly(_)));
}

#[test]
fn seeded_selftests_are_reproducible() {
    let script = "selftest ber_mult 10\nselftest str_cyclic 10\nselftest jacobi 10\nselftest json_roundtrip 10\n";
    let a = with_stdin(&["--seed", "42"], script);
    let b = with_stdin(&["--seed", "42"], script);
    assert!(a.status.success(), "{}", text(&a.stderr));
    assert_eq!(a.stdout, b.stdout);
    assert!(text(&a.stdout).lines().all(|l| l.ends_with("10/10 passed")));
}

#[test]
fn json_roundtrip_of_random_values() {
    let c = Context::new(["t", "s"], ["theta1", "theta2", "theta3"]).unwrap();
    let mut s = Sampler::new(2024);
    for i in 0..100 {
        let p = s.parity();
        let d = s.dims(2, 2);
        let v = match i % 4 {
            0 => Value::Poly(s.element(&c, p)),
            1 => Value::Matrix(s.matrix(&c, d, d, p)),
            2 => Value::Field(s.derivation(&c, p)),
            _ => Value::Morphism(s.morphism(&c, &c)),
        };
        let text = export_string(&v);
        let back = import_str(&text).unwrap();
        assert_eq!(back, v, "{text}");
        assert_eq!(export_string(&back), text);
    }
}
