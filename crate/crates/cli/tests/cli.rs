use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_edge-betti")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> serde_json::Value {
    let o = run(args);
    assert!(o.status.success(), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_str(&stdout(&o)).unwrap()
}

#[test]
fn worked_example_row_three() {
    let o = run(&["betti", "C 1:1:1,1", "--csv"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("i,j,beta"));
    let row3: u64 = lines
        .map(|l| l.split(',').map(|x| x.parse::<u64>().unwrap()).collect::<Vec<_>>())
        .filter(|r| r[0] == 3)
        .map(|r| r[2])
        .sum();
    assert_eq!(row3, 15);
}

#[test]
fn verify_two_ear_passes() {
    let v = json(&["verify", "TE 2", "--json"]);
    for (name, verdict) in v["verdicts"].as_object().unwrap() {
        assert_eq!(verdict["status"], "pass", "{name}");
    }
    assert_eq!(v["pdim"], 2);
}

#[test]
fn classify_k23() {
    let v = json(&["classify", "MP 2,2,2", "--json"]);
    assert_eq!(v["result"]["classified"], "K2D 3");
    assert_eq!(v["family"], "complete-bipartite-2d");
    let v = json(&["classify", "EDGES p-q,q-r,r-p,p-s,s-t,t-p", "--json"]);
    assert_eq!(v["result"]["classified"], "A 1,1");
    let v = json(&["classify", "EDGES a-b,b-c,c-d", "--json"]);
    assert_eq!(v["family"], "custom");
}

#[test]
fn json_is_byte_stable_and_thread_independent() {
    let args = ["betti", "MP 2,2,3,3", "--oracle", "--graded", "--json"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.stdout, b.stdout);
    let mut more = args.to_vec();
    more.extend(["--threads", "3"]);
    assert_eq!(run(&more).stdout, a.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    for key in ["spec", "family", "pdim", "betti", "graded", "verdicts"] {
        assert!(v.get(key).is_some(), "{key}");
    }
    assert!(v.get("timing_ms").is_none());
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["betti", "Q 1"]).status.code(), Some(2));
    assert_eq!(run(&["betti", "A 1"]).status.code(), Some(2));
    assert_eq!(run(&["betti", "B s=1 1:1"]).status.code(), Some(2));
    // a path is not a supported family
    assert_eq!(run(&["betti", "EDGES a-b,b-c"]).status.code(), Some(2));
    assert_eq!(run(&["quotients", "MP 2,2"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "A 1,1,1,1,1,1", "--cap", "10"]).status.code(), Some(2));
}

#[test]
fn a_small_box_skips_the_global_checks() {
    let v = json(&["verify", "TE 2", "--region", "box:2", "--json"]);
    assert_eq!(v["verdicts"]["duality"]["status"], "skipped");
    assert_eq!(v["verdicts"]["formula_vs_oracle"]["status"], "pass");
}

#[test]
fn oracle_only_for_unsupported_graphs() {
    // a square with a triangle hanging off a corner
    let v = json(&["betti", "EDGES a-b,b-c,c-d,d-a,a-e,e-f,f-a", "--oracle", "--json"]);
    assert_eq!(v["result"]["source"], "oracle");
    assert_eq!(v["result"]["totals"], serde_json::json!([1, 1]));
    assert_eq!(v["verdicts"]["formula_vs_oracle"]["status"], "skipped");
}

#[test]
fn quotients_report() {
    let v = json(&["quotients", "TE 4", "--oracle", "--json"]);
    assert_eq!(v["result"]["k_sequence"], serde_json::json!([1, 1, 2, 2, 2, 3, 3, 3, 3]));
    assert_eq!(v["verdicts"]["initial_vs_toric"]["status"], "pass");
    assert_eq!(v["verdicts"]["mapping_cone_bound"]["status"], "pass");
}

#[test]
fn canonical_and_cone() {
    let v = json(&["canonical", "TE 3", "--oracle", "--json"]);
    assert_eq!(v["result"]["cm_type"], 3);
    assert_eq!(v["verdicts"]["generators_vs_enumeration"]["status"], "pass");
    let v = json(&["cone", "MP 2,4", "--json"]);
    assert_eq!(v["result"]["lattice"], "balanced");
    let v = json(&["cone", "TE 2", "--json"]);
    assert!(!v["result"]["fundamental_sets"].as_array().unwrap().is_empty());
}

#[test]
fn complexes_are_emitted() {
    let v = json(&["betti", "A 1,1", "--oracle", "--emit-complexes", "--json"]);
    let cx = v["result"]["complexes"].as_array().unwrap();
    assert_eq!(cx.len(), 2);
    // the relation lives where Γ is two points
    let rel = cx.iter().find(|c| c["degree"] != "1").unwrap();
    assert_eq!(rel["facets"].as_array().unwrap().len(), 2);
}
