use std::process::{Command, Output};

use doublefield::Error;
use doublefield_cli::exit_code;
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_doublefield")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut v = args.to_vec();
    v.push("--json");
    let o = run(&v);
    assert!(o.status.success(), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).unwrap()
}

fn schema() -> jsonschema::Validator {
    let text = include_str!("../schema/report.schema.json");
    jsonschema::validator_for(&serde_json::from_str(text).unwrap()).unwrap()
}

#[test]
fn worked_pairing() {
    let o = run(&["pair", "--a", "x - y^2", "--b", "x - y", "--side", "Kprime"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "(y) + (y-1) + inf_y");
}

#[test]
fn six_term_divisor() {
    let v = json(&["divisor", "(x^2-y^2)/(x*y)"]);
    let terms = v["result"]["terms"].as_array().unwrap();
    assert_eq!(terms.len(), 6);
    let get = |place: &str| terms.iter().find(|t| t["place"] == place).map(|t| t["coeff"].as_i64().unwrap());
    assert_eq!(get("(x-y)"), Some(1));
    assert_eq!(get("(x+y)"), Some(1));
    assert_eq!(get("(x)"), Some(-1));
    assert_eq!(get("(y)"), Some(-1));
    assert_eq!(get("inf_x"), Some(-1));
    assert_eq!(get("inf_y"), Some(-1));
}

#[test]
fn explore_is_byte_identical() {
    let args = ["explore", "--trials", "5", "--seed", "7", "--json"];
    let (a, b) = (run(&args), run(&args));
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn juxtaposition_is_an_input_error() {
    let o = run(&["divisor", "x y"]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("byte 2"), "{err}");
    assert!(o.stdout.is_empty());
}

#[test]
fn error_classes_map_to_exit_codes() {
    assert_eq!(run(&["pair", "--a", "x-y", "--b", "x-y", "--side", "K"]).status.code(), Some(2));
    assert_eq!(run(&["selfpair", "--m", "x^2 - y", "--side", "K"]).status.code(), Some(2));
    assert_eq!(run(&["arakelov-deg", "--d", "x - 1"]).status.code(), Some(2));
    assert_eq!(run(&["pair", "--a", "x-y", "--side", "K"]).status.code(), Some(2));
    let o = run(&["pair", "--a", "x - y^2", "--b", "x - y", "--side", "K", "--shift-bound", "0"]);
    assert_eq!(o.status.code(), Some(3));
    assert_eq!(run(&["pair", "--a", "x - y^2", "--b", "x - y", "--side", "K"]).status.code(), Some(0));
}

#[test]
fn exit_code_mapping_is_total() {
    use doublefield::parse::ParseError;
    let cases = [
        (Error::Parse(ParseError { offset: 0, expected: vec![], found: String::new() }), 2),
        (Error::Invalid(String::new()), 2),
        (Error::DegreeBound { degree: 9, bound: 8 }, 2),
        (Error::UncertifiedFactor(String::new()), 2),
        (Error::NotDegreeOne(String::new()), 2),
        (Error::EqualIsoms, 2),
        (Error::NotCoprime(String::new()), 2),
        (Error::CommonSupport(String::new()), 2),
        (Error::NonGeneric(String::new()), 3),
        (Error::PointwiseUnavailable(String::new()), 3),
        (Error::ShiftExhausted(4), 3),
        (Error::MoveFailure, 3),
        (Error::PrecisionFailure(String::new()), 4),
    ];
    for (e, code) in cases {
        assert_eq!(exit_code(&e), code, "{e:?}");
    }
}

#[test]
fn reports_validate_against_schema() {
    let validator = schema();
    let commands: [&[&str]; 8] = [
        &["divisor", "(x^2-y^2)/(x*y)"],
        &["residue", "--A", "x - y^2; 2*(y+1)", "--n", "x - y"],
        &["correspond", "--A", "x - y^2", "--p", "y - 2"],
        &["pair", "--a", "x - y^2", "--b", "x - y", "--side", "K"],
        &["selfpair", "--m", "y*x - 1", "--side", "Kprime"],
        &["arakelov-deg", "--d", "2*(y^2+1); -3*inf_y", "--timing"],
        &["rsp", "--a", "x - y^2", "--b", "x - y"],
        &["explore", "--trials", "3", "--seed", "1"],
    ];
    for args in commands {
        let v = json(args);
        let errors: Vec<String> = validator.iter_errors(&v).map(|e| e.to_string()).collect();
        assert!(errors.is_empty(), "{args:?}: {errors:?}");
        assert_eq!(v["version"], 1);
    }
}

#[test]
fn verify_reports_one_suite() {
    let v = json(&["verify", "--suite", "symmetry"]);
    assert!(schema().is_valid(&v));
    assert_eq!(v["result"]["suites"][0]["name"], "symmetry");
    assert_eq!(v["result"]["passed"], true);
    assert_eq!(run(&["verify", "--suite", "nonexistent"]).status.code(), Some(2));
}

#[test]
fn rsp_worked_value() {
    let v = json(&["rsp", "--a", "x - y^2", "--b", "x - y"]);
    assert!((v["result"]["value"].as_f64().unwrap() - 6.0).abs() < 1e-9);
}

#[test]
fn precision_is_capped_and_reported() {
    let v = json(&["arakelov-deg", "--d", "y; -1*inf_y", "--precision", "120"]);
    assert_eq!(v["precision"]["requested"], 120);
    assert_eq!(v["precision"]["used"], 53);
    assert_eq!(v["notes"].as_array().unwrap().len(), 1);
    assert!(v["result"]["deg_kp"].as_f64().unwrap().abs() < 1e-9);
}

#[test]
fn out_file_receives_the_report() {
    let path = std::env::temp_dir().join(format!("doublefield-report-{}.json", std::process::id()));
    let o = run(&["divisor", "x - y", "--json", "--out", path.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert_eq!(v["inputs"]["expr"], "x-y");
}

#[test]
fn assumed_primes_are_recorded() {
    let f = "x^25*y^2 + x + y^2 + 2";
    let args = ["pair", "--a", f, "--b", "x - 2", "--side", "Kprime"];
    assert_eq!(run(&args).status.code(), Some(2));
    let mut assumed = args.to_vec();
    assumed.push("--assume-irreducible");
    let v = json(&assumed);
    assert!(schema().is_valid(&v));
    assert_eq!(v["assumed_irreducible"], serde_json::json!(["x^25*y^2+x+y^2+2"]));
    assert_eq!(v["result"]["text"], "(33554433*y^2+4)");
}
