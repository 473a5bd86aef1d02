use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_modal-interp"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

#[test]
fn interpolate_nabla() {
    let o = run(&["interpolate", "--method", "nabla", "<>(p&q)", "<>(p|r)"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.starts_with("nabla: "));
    assert!(out.contains("phi->theta true  theta->psi true  signature true"));
}

#[test]
fn interpolate_all_json_with_report() {
    let o = run(&["interpolate", "[]p & []q", "[](p & q | r)", "--json", "--report"]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let rows = v.as_array().unwrap();
    let methods: Vec<&str> = rows.iter().map(|r| r["method"].as_str().unwrap()).collect();
    assert_eq!(methods, ["nabla", "automata", "quasimodel", "sequent"]);
    for r in rows {
        assert_eq!(r["verified"], true);
        let rep = &r["report"];
        for k in ["left_valid", "right_valid", "signature_ok", "size_string", "size_dag"] {
            assert!(!rep[k].is_null(), "{k}");
        }
    }
    assert_eq!(rows[2]["report"]["lyndon_ok"], true);
}

#[test]
fn invalid_implication_is_negative() {
    let o = run(&["interpolate", "<>p", "[]p"]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("not valid"));
}

#[test]
fn sat_and_valid() {
    let o = run(&["sat", "p & ~p"]);
    assert_eq!((code(&o), stdout(&o).as_str()), (1, "UNSAT\n"));
    let o = run(&["sat", "<>p & []q"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("SAT\nwitness "));
    assert_eq!(code(&run(&["valid", "[](p -> q) -> ([]p -> []q)"])), 0);
    let o = run(&["valid", "<>p", "[]p", "--json"]);
    assert_eq!(code(&o), 1);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["valid"], false);
    assert!(v["countermodel"]["worlds"].is_array());
}

#[test]
fn explain_trace_is_json() {
    let o = run(&["sat", "<>p & []~p", "--json", "--explain"]);
    assert_eq!(code(&o), 1);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let trace = &v["trace"];
    assert!(trace["initial_count"].as_u64().unwrap() > 0);
    assert!(trace["steps"]
        .as_array()
        .unwrap()
        .iter()
        .all(|s| s["type"]["L"].is_array()));
}

#[test]
fn seeded_runs_are_deterministic() {
    let args = [
        "interpolate",
        "--method",
        "quasimodel",
        "<>(p & q)",
        "<>(p | r)",
        "--seed",
        "7",
    ];
    let (a, b) = (run(&args), run(&args));
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn usage_and_guard_exit_codes() {
    assert_eq!(code(&run(&["parse", "p &"])), 2);
    assert_eq!(code(&run(&["frobnicate"])), 2);
    assert_eq!(code(&run(&["--json", "--format", "csv", "parse", "p"])), 2);
    assert_eq!(code(&run(&["sat", "<>p & <>q", "--max-types", "3"])), 3);
    assert_eq!(code(&run(&["interpolate", "p", "p", "--method", "tableau"])), 2);
}

#[test]
fn normal_forms() {
    let o = run(&["nnf", "~[](p -> q)"]);
    assert_eq!(stdout(&o), "<>(p & ~q)\n");
    let o = run(&["nabla-nf", "<>q"]);
    assert_eq!(stdout(&o), "nabla{q, true}\n");
    let o = run(&["uniform", "<>(p & q)", "--keep", "p"]);
    assert_eq!(code(&o), 0);
    let o = run(&["parse", "[]p | <>q", "--json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["modal_depth"], 1);
}

#[test]
fn formulas_and_models_from_files() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("phi.txt");
    std::fs::File::create(&f).unwrap().write_all(b"<>p & []q\n").unwrap();
    let arg = format!("@{}", f.display());
    assert_eq!(code(&run(&["sat", &arg])), 0);

    let m = dir.path().join("m.json");
    let model = r#"{"worlds":["w","v"],"edges":[["w","v"]],"valuation":{"p":["v"]},"point":"w"}"#;
    std::fs::write(&m, model).unwrap();
    let marg = format!("@{}", m.display());
    assert_eq!(stdout(&run(&["check-model", &marg, "<>p"])), "TRUE\n");
    assert_eq!(code(&run(&["check-model", &marg, "p"])), 1);
    assert_eq!(code(&run(&["check-model", &marg, "p", "--world", "v"])), 0);

    let n = dir.path().join("n.json");
    let other = r#"{"worlds":["a","b","c"],"edges":[["a","b"],["a","c"]],"valuation":{"p":["b","c"]},"point":"a"}"#;
    std::fs::write(&n, other).unwrap();
    let narg = format!("@{}", n.display());
    let o = run(&["bisim", &marg, &narg]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.contains("w ~ a") && out.contains("v ~ c") && out.ends_with("points bisimilar\n"));
}

#[test]
fn prove_renders_proof() {
    let o = run(&["prove", "[]p & []q", "[](p & q)", "--explain"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.starts_with("PROVABLE\n"));
    assert!(out.contains("[R□]") && out.contains("[Ax_id]"));
    assert_eq!(code(&run(&["prove", "p", "q"])), 1);
}

#[test]
fn bench_lower_bound_json() {
    let o = run(&[
        "bench",
        "lower-bound",
        "--n",
        "2",
        "--method",
        "all",
        "--format",
        "json",
    ]);
    assert_eq!(code(&o), 0);
    let rows: Vec<Value> = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(rows.len(), 8);
    for r in &rows {
        let n = r["n"].as_u64().unwrap();
        assert_eq!(r["verified"], true);
        assert!(r["size_dag"].as_u64().unwrap() >= 1 << n);
    }
    let o = run(&["bench", "lower-bound", "--n", "1", "--format", "csv", "--jobs", "2"]);
    let out = stdout(&o);
    assert!(out.starts_with("n,method,size_string,size_dag,millis,verified\n"));
    assert_eq!(out.lines().count(), 5);
}
