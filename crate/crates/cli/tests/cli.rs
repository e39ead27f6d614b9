use std::path::PathBuf;
use std::process::{Command, Output};

use matgrowth_cli::report::parse_rational;
use matgrowth_cli::{run_text, Overrides, ResultDocument, Status};

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("matgrowth-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn run_bin(config: &str, name: &str, args: &[&str]) -> Output {
    let path = scratch(name);
    std::fs::write(&path, config).unwrap();
    Command::new(env!("CARGO_BIN_EXE_matgrowth"))
        .arg("run")
        .arg(&path)
        .args(args)
        .output()
        .unwrap()
}

fn document(out: &Output) -> ResultDocument {
    ResultDocument::from_json(std::str::from_utf8(&out.stdout).unwrap()).unwrap()
}

const SUMSET: &str = r#"{"backend":"trivial","operators":[0,1],"A":[0],"mode":"sumset"}"#;
const OSCILLATOR: &str = r#"{"backend":"graphic","backend_data":{"builtin":"counterexample"},"mode":"dimension"}"#;

#[test]
fn sumset_exits_zero() {
    let out = run_bin(SUMSET, "sumset.json", &[]);
    assert_eq!(out.status.code(), Some(0));
    let doc = document(&out);
    let p = doc.polynomial("P").unwrap();
    assert_eq!(p.display, "Y + 1");
    assert_eq!(p.threshold, vec![0]);
    assert_eq!(doc.status, Status::Certified);
}

#[test]
fn oscillator_dimension_exits_three_with_witness() {
    let out = run_bin(OSCILLATOR, "osc.json", &[]);
    assert_eq!(out.status.code(), Some(3));
    let doc = document(&out);
    let err = doc.error.unwrap();
    assert!(err.contains("part 1 failed the triangular rank inequality"), "{err}");
    assert!(err.contains("marginal rank"), "{err}");
}

#[test]
fn oscillator_cumulative_exits_zero() {
    let out = run_bin(OSCILLATOR, "osc-cum.json", &["--mode", "cumulative"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(document(&out).polynomial("Q").unwrap().display, "2*Y + 2");
}

#[test]
fn malformed_config_exits_one() {
    let out = run_bin("{\"backend\": 3}", "bad.json", &[]);
    assert_eq!(out.status.code(), Some(1));
    assert!(out.stdout.is_empty());
    let missing = Command::new(env!("CARGO_BIN_EXE_matgrowth"))
        .args(["run", "/nonexistent/config.json"])
        .output()
        .unwrap();
    assert_eq!(missing.status.code(), Some(1));
}

#[test]
fn semantic_input_errors_exit_one() {
    for (cfg, needle) in [
        (r#"{"backend":"trivial","operators":[1],"partition":[2],"mode":"dimension"}"#, "partition"),
        (r#"{"backend":"linear","backend_data":{"vars":2},"mode":"betti"}"#, "chain backend"),
        (r#"{"backend":"linear","mode":"dimension"}"#, "vars"),
        (r#"{"backend":"chain","backend_data":{"simplices":[[0,1]]},"operators":[{"shift":1}],"A":[[0,1]],"betti":{"n":0},"mode":"betti"}"#, "not"),
    ] {
        let o = run_text(cfg, &Overrides::default());
        assert_eq!(o.exit_code, 1, "{cfg}: {:?}", o.message);
        assert!(o.message.unwrap().contains(needle), "{cfg}");
    }
}

#[test]
fn truncated_box_exits_two_and_still_writes() {
    let cfg = r#"{"backend":"ideal-count","backend_data":{"complement":[[2,0]]},"mode":"dimension","box":[2,2],"max_box":2}"#;
    let out = run_bin(cfg, "trunc.json", &[]);
    assert_eq!(out.status.code(), Some(2));
    let doc = document(&out);
    assert_ne!(doc.status, Status::Certified);
    assert_eq!(doc.exit_code, 2);
    assert!(doc.polynomial("P").is_some());
}

#[test]
fn output_is_byte_identical_across_runs() {
    let cfg = r#"{"backend":"linear","backend_data":{"vars":3},"partition":[1,2],"mode":"phi-rank"}"#;
    let a = run_bin(cfg, "det1.json", &["--threads", "1"]);
    let b = run_bin(cfg, "det2.json", &["--threads", "3"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn out_flag_writes_the_file() {
    let target = scratch("result.json");
    let out = run_bin(SUMSET, "sumset-out.json", &["--out", target.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let doc = ResultDocument::from_json(&std::fs::read_to_string(&target).unwrap()).unwrap();
    assert_eq!(doc.polynomial("P").unwrap().display, "Y + 1");
}

#[test]
fn documents_round_trip_on_their_windows() {
    let configs = [
        SUMSET,
        r#"{"backend":"trivial","operators":[0,1,3,7],"partition":[2,2],"A":[0],"mode":"dimension"}"#,
        r#"{"backend":"ideal-count","backend_data":{"complement":[[2,1],[0,3]]},"partition":[1,1],"mode":"ideal-count"}"#,
        r#"{"backend":"linear","backend_data":{"vars":2,"generators":2,"relations":[{"generator":1,"monomial":[1,1]}]},"mode":"cumulative"}"#,
    ];
    for cfg in configs {
        let o = run_text(cfg, &Overrides::default());
        assert_eq!(o.exit_code, 0, "{cfg}: {:?}", o.message);
        let text = o.document.unwrap().to_json();
        let doc = ResultDocument::from_json(&text).unwrap();
        assert_eq!(doc.to_json(), text);
        for p in &doc.polynomials {
            assert!(!p.window.is_empty());
            for w in &p.window {
                let v = p.eval(&w.point).unwrap();
                assert_eq!(v, parse_rational(&w.predicted).unwrap());
                assert_eq!(v, parse_rational(&w.actual.to_string()).unwrap());
            }
        }
    }
}

#[test]
fn check_mode_reports_both_hypotheses() {
    let cfg = r#"{"backend":"graphic","backend_data":{"builtin":"counterexample"},"mode":"check"}"#;
    let out = run_bin(cfg, "check.json", &["--seed-sample", "99"]);
    assert_eq!(out.status.code(), Some(3));
    let doc = document(&out);
    let c = doc.check.unwrap();
    assert_eq!(c.seed, 99);
    assert!(c.commutes);
    assert!(!c.parts[0].triangular);
    assert!(c.parts[0].quasi_triangular);
    assert!(c.parts[0].triangular_witness.is_some());
}

#[test]
fn noncommuting_maps_fail_the_check() {
    let cfg = r#"{"backend":"graphic","operators":[{"shift":1},{"affine":{"mul":2,"add":0}}],"partition":[1,1],"A":[[0,1]],"mode":"check"}"#;
    let o = run_text(cfg, &Overrides::default());
    assert_eq!(o.exit_code, 3);
    let c = o.document.unwrap().check.unwrap();
    assert!(!c.commutes);
    assert!(!c.commutation_failures.is_empty());
}

#[test]
fn context_and_graphs() {
    let cfg = r#"{"backend":"trivial","operators":[0,1,5],"A":[0],"mode":"context","selection":[[0,1]]}"#;
    let o = run_text(cfg, &Overrides::default());
    assert_eq!(o.exit_code, 0, "{:?}", o.message);
    assert!(o.document.unwrap().polynomial("P").is_some());

    let path = r#"{"backend":"graphic","operators":[{"shift":1}],"A":[[0,1]],"mode":"cumulative"}"#;
    let o = run_text(path, &Overrides::default());
    assert_eq!(o.exit_code, 0, "{:?}", o.message);
    assert_eq!(o.document.unwrap().polynomial("Q").unwrap().display, "Y + 1");

    let off_graph = r#"{"backend":"graphic","backend_data":{"edges":[[0,1],[1,2]]},"operators":[{"shift":1}],"A":[[0,1]],"mode":"cumulative"}"#;
    let o = run_text(off_graph, &Overrides::default());
    assert_eq!(o.exit_code, 1, "{:?}", o.message);
}

#[test]
fn module_elements_from_terms() {
    let cfg = r#"{"backend":"linear","backend_data":{"vars":2},
        "A":[[{"monomial":[1,0]},{"monomial":[0,1],"coefficient":"-3/2"}]],"mode":"dimension"}"#;
    let o = run_text(cfg, &Overrides::default());
    assert_eq!(o.exit_code, 0, "{:?}", o.message);
    assert_eq!(o.document.unwrap().polynomial("P").unwrap().display, "Y + 1");
}

#[test]
fn selfcheck_passes() {
    let out = Command::new(env!("CARGO_BIN_EXE_matgrowth"))
        .arg("selfcheck")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(!text.contains("FAIL"), "{text}");
    assert!(text.contains("phi-rank 0") && text.contains("phi-rank 1"));
    assert!(text.contains("C(t+2,2)"));
}
