//! End-to-end tests of the binary: exit codes, pipelines, and the
//! text/JSON output contract.

use std::io::Write;
use std::process::{Command, Output, Stdio};

use graphmotive::graph::MultiGraph;
use graphmotive::motivic::{family_graph, Family};
use graphmotive::poly::BiPoly;

const TRIANGLE: &str = "a b\na c\nb c\n";

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_graphmotive"))
}

fn run_with_stdin(args: &[&str], stdin: &str) -> Output {
    let mut child = bin()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary spawns");
    child.stdin.as_mut().expect("stdin piped").write_all(stdin.as_bytes()).expect("write");
    child.wait_with_output().expect("binary runs")
}

fn stdout_of(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).trim().to_string()
}

#[test]
fn tutte_of_triangle() {
    let out = run_with_stdin(&["tutte"], TRIANGLE);
    assert!(out.status.success());
    assert_eq!(stdout_of(&out), "x^2 + x + y");
}

#[test]
fn psi_and_count() {
    let out = run_with_stdin(&["psi"], TRIANGLE);
    assert_eq!(stdout_of(&out), "t1 + t2 + t3");
    let out = run_with_stdin(&["count", "-q", "3"], TRIANGLE);
    assert!(stdout_of(&out).contains("complement 18"));
}

#[test]
fn gen_class_pipeline() {
    let gen = bin().args(["gen", "lemon", "-m", "8"]).output().expect("runs");
    assert!(gen.status.success());
    let lemon_text = String::from_utf8_lossy(&gen.stdout).to_string();
    let out = run_with_stdin(&["class"], &lemon_text);
    assert!(out.status.success());
    assert_eq!(stdout_of(&out), "T^4*(T+1)^10*(T^3 + 6*T^2 + 9*T + 1)");
}

#[test]
fn gen_round_trips_to_isomorphic_graphs() {
    let cases: Vec<(Vec<&str>, MultiGraph)> = vec![
        (vec!["gen", "banana", "-m", "4"], family_graph(&Family::Banana(4), None).unwrap()),
        (vec!["gen", "lemon", "-m", "3"], family_graph(&Family::Lemon(3), None).unwrap()),
        (
            vec!["gen", "chain", "--sides", "3,4,3"],
            family_graph(&Family::Chain(vec![3, 4, 3]), None).unwrap(),
        ),
    ];
    for (args, expected) in cases {
        let out = bin().args(&args).output().expect("runs");
        assert!(out.status.success());
        let parsed = MultiGraph::parse_text(&String::from_utf8_lossy(&out.stdout)).unwrap();
        assert_eq!(
            parsed.canonical_key().unwrap(),
            expected.canonical_key().unwrap(),
            "{args:?}"
        );
    }
    // chains of triangles are lemons
    let chain = bin().args(["gen", "chain", "--sides", "3,3"]).output().expect("runs");
    let parsed = MultiGraph::parse_text(&String::from_utf8_lossy(&chain.stdout)).unwrap();
    let lemon2 = family_graph(&Family::Lemon(2), None).unwrap();
    assert_eq!(parsed.canonical_key().unwrap(), lemon2.canonical_key().unwrap());
    // lemonade fans a lemon out of an edge of the base graph
    let out = run_with_stdin(&["gen", "lemonade", "-e", "3", "-m", "2"], TRIANGLE);
    assert!(out.status.success());
    let parsed = MultiGraph::parse_text(&stdout_of(&out)).unwrap();
    let triangle = MultiGraph::parse_text(TRIANGLE).unwrap();
    let expected = graphmotive::motivic::lemonade_graph(&triangle, 3, 2).unwrap();
    assert_eq!(parsed.canonical_key().unwrap(), expected.canonical_key().unwrap());
}

#[test]
fn json_and_text_encode_the_same_polynomial() {
    let text_out = run_with_stdin(&["tutte"], TRIANGLE);
    let text_poly: BiPoly = stdout_of(&text_out).parse().unwrap();

    let json_out = run_with_stdin(&["tutte", "--json"], TRIANGLE);
    let value: serde_json::Value = serde_json::from_str(&stdout_of(&json_out)).unwrap();
    // rebuild from the JSON term list
    let mut from_terms = BiPoly::default();
    for term in value["terms"].as_array().unwrap() {
        let dx = term[0].as_u64().unwrap() as u32;
        let dy = term[1].as_u64().unwrap() as u32;
        let c: num::BigInt = term[2].as_str().unwrap().parse().unwrap();
        from_terms = from_terms.add(&BiPoly::monomial(dx, dy, c));
    }
    assert_eq!(from_terms, text_poly);
    // and the embedded text agrees with the text mode
    assert_eq!(value["text"].as_str().unwrap(), stdout_of(&text_out));
}

#[test]
fn exit_codes() {
    // parse error -> 2
    let out = run_with_stdin(&["tutte"], "only-one-token\n");
    assert_eq!(out.status.code(), Some(2));
    // guard violation -> 3
    let big_banana = "u v\n".repeat(17);
    let out = run_with_stdin(&["psi"], &big_banana);
    assert_eq!(out.status.code(), Some(3));
    // failed verification -> 1
    let out = run_with_stdin(&["verify-class", "--class", "T^3 + T", "--primes", "2,3"], TRIANGLE);
    assert_eq!(out.status.code(), Some(1));
    // passed verification -> 0
    let out = run_with_stdin(&["verify-class", "--primes", "2,3,5"], TRIANGLE);
    assert_eq!(out.status.code(), Some(0));
    // unknown edge -> 1
    let out = run_with_stdin(&["verify-delcon", "-e", "9", "--primes", "2"], TRIANGLE);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn chromatic_uses_lambda() {
    let out = run_with_stdin(&["chromatic"], TRIANGLE);
    assert_eq!(stdout_of(&out), "lambda^3 - 3*lambda^2 + 2*lambda");
}

#[test]
fn class_reports_unknown_residues() {
    let k4 = "a b\na c\na d\nb c\nb d\nc d\n";
    let out = run_with_stdin(&["class"], k4);
    assert!(out.status.success());
    assert!(stdout_of(&out).contains("provenance: unknown"));
    // with a fallback the class interpolates
    let out = run_with_stdin(
        &["class", "--fallback-primes", "2,3,5,7,11,13,17", "--holdout", "19"],
        k4,
    );
    assert!(out.status.success());
    assert!(stdout_of(&out).contains("T^2"));
}

#[test]
fn csm_predict_from_fixture() {
    let fixture = concat!(env!("CARGO_MANIFEST_DIR"), "/../../fixtures/csm_triangle.json");
    let out = bin().args(["csm-predict", "--base-file", fixture, "-m", "1"]).output().unwrap();
    assert!(out.status.success());
    assert_eq!(stdout_of(&out), "T^4 + 2*T^3 + 2*T^2 + T");
}

#[test]
fn renorm_toy_character() {
    let banana3 = "u v\nu v\nu v\n";
    let out = run_with_stdin(&["renorm", "--character", "toy"], banana3);
    assert!(out.status.success());
    let text = stdout_of(&out);
    assert!(text.contains("U_- = 2*z^-2"));
    assert!(text.contains("U_+ = 3 + z"));
    // table characters come from files
    let fixture = concat!(env!("CARGO_MANIFEST_DIR"), "/../../fixtures/character_example.json");
    let out = run_with_stdin(&["renorm", "--character", fixture], TRIANGLE);
    assert!(out.status.success());
    assert!(stdout_of(&out).contains("U_+ = 7"));
}

#[test]
fn universal_coefficients() {
    let out = bin().args(["universal", "--kind", "motivic", "-m", "2"]).output().unwrap();
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("f_2 = T - 1"));
    assert!(text.contains("g_2 = T"));
    assert!(text.contains("h_2 = T + 1"));
}

#[test]
fn budget_env_var_is_honored() {
    let mut child = bin()
        .args(["count", "-q", "5"])
        .env("GRAPHMOTIVE_BUDGET", "3")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary spawns");
    child.stdin.as_mut().unwrap().write_all(TRIANGLE.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("budget"));
    // a --threads cap still counts correctly
    let out = run_with_stdin(&["count", "-q", "3", "--threads", "1"], TRIANGLE);
    assert!(stdout_of(&out).contains("complement 18"));
}

#[test]
fn corpus_runs_clean() {
    let out = bin().args(["corpus"]).output().expect("runs");
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    assert_eq!(text.matches("[PASS]").count(), 11);
    assert_eq!(text.matches("[FAIL]").count(), 0);
}
