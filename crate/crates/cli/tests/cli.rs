use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sugawara")).args(args).output().expect("binary runs")
}

fn golden(name: &str, args: &[&str]) {
    let out = run(args);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    let expected = std::fs::read_to_string(&path).expect("golden file");
    assert_eq!(String::from_utf8(out.stdout).unwrap(), expected, "{name}");
}

fn json(args: &[&str]) -> (i32, serde_json::Value) {
    let out = run(args);
    let v = serde_json::from_slice(&out.stdout).unwrap_or(serde_json::Value::Null);
    (out.status.code().unwrap(), v)
}

#[test]
fn goldens() {
    golden("verify_main_theorem_b1_m2.json", &["verify", "main-theorem", "--family", "B", "--n", "1", "--m", "2"]);
    golden("characters_count_c2_m2.json", &["characters", "count", "--family", "C", "--n", "2", "--m", "2"]);
    golden("sugawara_phi_d2_m1.txt", &["sugawara", "phi", "--family", "D", "--n", "2", "--m", "1", "--format", "text"]);
    golden("casimir_b1_k1.json", &["casimir", "--family", "B", "--n", "1", "--k", "1"]);
    golden("harmonic_c2_m2.json", &["harmonic", "--family", "C", "--n", "2", "--m", "2"]);
    golden("miura_b1_m3.json", &["miura", "--family", "B", "--n", "1", "--m", "3"]);
    golden("pfaffian_n2.json", &["pfaffian", "--n", "2"]);
    golden("symmetrizer_b1_m2.json", &["symmetrizer", "--family", "B", "--n", "1", "--m", "2"]);
}

#[test]
fn schema_and_count() {
    let (code, v) = json(&["characters", "count", "--family", "C", "--n", "2", "--m", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["schema"], "1");
    assert_eq!(v["count"], 5);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "no-such-suite"]).status.code(), Some(2));
    // C with m > n is refused before any work
    assert_eq!(run(&["verify", "main-theorem", "--family", "C", "--n", "1", "--m", "2"]).status.code(), Some(2));
    assert_eq!(run(&["hc", "--family", "B", "--n", "1", "--element", "F[1,1;-1] +"]).status.code(), Some(2));
    let (code, v) = json(&["walg-screen", "--family", "A", "--n", "2", "--element", "mu[1;-1]"]);
    assert_eq!(code, 1);
    assert_eq!(v["annihilated"], false);
    let (code, v) = json(&["walg-screen", "--family", "A", "--n", "2", "--element", "mu[1;-1] + mu[2;-1]"]);
    assert_eq!(code, 0);
    assert_eq!(v["annihilated"], true);
}

#[test]
fn deterministic_for_fixed_seed() {
    let args = ["characters", "kappa", "--n", "2", "--trials", "4", "--seed", "11"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
    let a = ["verify", "casimir"];
    assert_eq!(run(&a).stdout, run(&a).stdout);
}

#[test]
fn timings_only_on_request() {
    let (_, plain) = json(&["verify", "main-theorem", "--family", "B", "--n", "1", "--m", "1"]);
    assert!(plain.get("timings").is_none());
    let (_, timed) = json(&["--timings", "verify", "main-theorem", "--family", "B", "--n", "1", "--m", "1"]);
    assert!(timed.get("timings").is_some());
}

#[test]
fn suites_report_per_criterion() {
    let (code, v) = json(&["verify", "commutativity"]);
    assert_eq!(code, 0);
    assert_eq!(v["criteria"][0]["id"], 11);
    assert_eq!(v["match"], true);
    let out = run(&["verify", "harmonic", "--format", "text"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "PASS criterion 9: harmonic bases\n");
}

#[test]
fn hc_of_parsed_element() {
    let (code, v) = json(&["hc", "--family", "B", "--n", "1", "--element", "F[1,1;-1]*F[1,1;-1] + tau"]);
    assert_eq!(code, 0);
    assert_eq!(v["image"], "(1)*tau + (mu[1;-1]*mu[1;-1])");
    let (_, v) = json(&["hc", "--family", "B", "--n", "1", "--map", "classical", "--element", "F[1,2;0]*F[2,1;0]"]);
    assert_eq!(v["image"], "mu[1]");
}
