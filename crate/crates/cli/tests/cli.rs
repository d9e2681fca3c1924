use std::process::{Command, Output};

use serde_json::Value;

const F: &str = "<[0 1 3]@1->2 ; [0 1 2 2]@2->1 ; [0 1 1 3]@2->2>";
const G: &str = "<[0 1 1 3]@2->2 ; [0 1 3]@1->2 ; [0 1 2 3]@2->2>";

fn smi(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_smi"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let o = smi(&all);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    serde_json::from_str(&stdout(&o)).unwrap()
}

#[test]
fn canon_sai_prints_the_interchange() {
    let o = smi(&["canon-sai", "(p/\\q)\\/(s/\\t)", "(p\\/s)/\\(q\\/t)"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "ck(p;q;s;t)");
}

#[test]
fn canon_arrow_none_and_strict_exit() {
    let o = smi(&["canon-arrow", "p\\/q", "p/\\q"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "NONE");
    let o = smi(&["--strict", "canon-arrow", "p\\/q", "p/\\q"]);
    assert_eq!(o.status.code(), Some(1));
    let o = smi(&["--strict", "canon-arrow", "p\\/p", "p/\\p"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o).trim(), "UNDECIDED");
}

#[test]
fn input_errors_exit_two() {
    assert_eq!(smi(&["nu", "p \\/"]).status.code(), Some(2));
    assert_eq!(smi(&["canon-sai", "p\\/bot", "p"]).status.code(), Some(2));
    assert_eq!(smi(&["simp", "hj", "[0 2 1]@1->1"]).status.code(), Some(2));
    assert_eq!(smi(&["frobnicate"]).status.code(), Some(2));
    let o = smi(&["--json", "ck-count", "ck(p;q"]);
    assert_eq!(o.status.code(), Some(2));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v["error"].as_str().unwrap().contains("syntax error"));
}

#[test]
fn omega_components_of_the_example() {
    let o = smi(&[
        "bar", "omega", "--n", "2", "--m", "1", "--shape", "1,2,2", F, G,
    ]);
    assert_eq!(o.status.code(), Some(0));
    let terms: Vec<String> = stdout(&o)
        .lines()
        .map(|l| l.split_once(' ').unwrap().1.to_string())
        .collect();
    let mut expect = vec!["ck(p_1_1_1;p_1_1_2;bot;bot)", "w_or_fw"];
    for _ in 0..3 {
        expect.extend(["w_and_bw", "kappa"]);
    }
    assert_eq!(terms, expect);
}

#[test]
fn omega_json_schema() {
    let v = json(&[
        "bar", "omega", "--n", "2", "--m", "1", "--shape", "1,2,2", F, G,
    ]);
    let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    assert_eq!(keys, ["source", "target", "witness"]);
    assert_eq!(v["witness"].as_array().unwrap().len(), 8);
    assert_eq!(v["source"][1], "top\\/top");
    assert_eq!(v["target"][0], "p_1_1_1/\\p_1_1_2");
}

#[test]
fn bar_eval_gives_the_first_image() {
    let v = json(&[
        "bar", "eval", "--n", "2", "--m", "1", "--shape", "1,2,2", "--maps", F,
    ]);
    assert_eq!(
        v["target"],
        serde_json::json!(["p_1_1_1/\\p_1_1_2", "top", "bot/\\bot", "top"])
    );
    assert_eq!(v["sizes"], serde_json::json!([2, 1, 2]));
    assert_eq!(v["coherent"], true);
    assert_eq!(v["violation"], Value::Null);
}

#[test]
fn laxcheck_commutes_on_the_example() {
    let h = "<[0 1 2 3]@2->2 ; [0 1 1 3]@2->2 ; [0 1 1 3]@2->2>";
    let o = smi(&[
        "--strict", "bar", "laxcheck", "--n", "2", "--m", "1", "--shape", "1,2,2", F, G, h,
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().last(), Some("COMMUTES"));
    let v = json(&[
        "bar", "laxcheck", "--n", "2", "--m", "1", "--shape", "1,2,2", F, G, h,
    ]);
    assert_eq!(v["commutes"], true);
    assert_eq!(v["intermediates"].as_array().unwrap().len(), 8);
    for c in v["cells"].as_array().unwrap() {
        assert_eq!(c["verdict"], "EqualByCoherence");
        assert!(c["left"].is_array());
    }
}

#[test]
fn canonical_term_reparses_with_oracle_length() {
    let (a, b) = ("(p/\\q/\\r)\\/(s/\\t/\\u)", "(p\\/s)/\\(q\\/t)/\\(r\\/u)");
    let v = json(&["canon-arrow", a, b]);
    assert_eq!(v["result"], "some");
    let term = v["term"].as_str().unwrap();
    let k = json(&["ck-count", term]);
    let reach = json(&["oracle", "reach", a, b]);
    assert_eq!(reach["exists"], true);
    assert_eq!(reach["path_lengths"], serde_json::json!([k["ck_count"]]));
    assert_eq!(k["ck_count"], 2);
}

#[test]
fn oracle_unreachable_is_negative_under_strict() {
    let o = smi(&["--strict", "oracle", "reach", "p\\/q", "p/\\q"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("UNREACHABLE"));
}

#[test]
fn equal_verdicts() {
    let o = smi(&["equal", "kappa", "kappa"]);
    assert_eq!(stdout(&o).trim(), "EQUAL");
    let o = smi(&["--strict", "equal", "c_or(p;p)", "id(p\\/p)"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o).trim(), "UNKNOWN");
    let o = smi(&["equal", "c_or(p;q)", "id(p\\/q)"]);
    assert_eq!(stdout(&o).trim(), "NOT-PARALLEL");
    let o = smi(&["equal", "--explain", "ck(p;q;s;t)", "ck(p;q;s;t)"]);
    let text = stdout(&o);
    assert!(text.starts_with("EQUAL\n"));
    assert!(text.contains("diversified: true"));
}

#[test]
fn object_commands() {
    assert_eq!(stdout(&smi(&["nu", "(top\\/top)/\\p"])).trim(), "p");
    assert_eq!(
        stdout(&smi(&["--unicode", "nu", "bot/\\(p\\/bot)"])).trim(),
        "⊥∧p"
    );
    let v = json(&["purity", "p\\/(q/\\bot)"]);
    assert_eq!(v["pure"], false);
    assert_eq!(v["top_pure"], true);
    assert_eq!(v["diversified"], true);
}

#[test]
fn term_commands() {
    let v = json(&["develop", "(c_or(q;p) . c_or(p;q)) | kappa"]);
    let factors = v["factors"].as_array().unwrap();
    assert!(!factors.is_empty());
    for f in factors {
        assert_eq!(json(&["ck-count", f.as_str().unwrap()])["ck_count"], 0);
    }
    let v = json(&[
        "unit-reduce",
        "ck(p;q;s;t) . (id(p/\\q) | s_or_bw((s/\\t)))",
    ]);
    assert_eq!(v["source"], "(p/\\q)\\/(s/\\t)");
    assert_eq!(v["target"], "(p\\/s)/\\(q\\/t)");
    assert_eq!(v["ck_count"], 1);
}

#[test]
fn simplicial_commands() {
    assert_eq!(
        stdout(&smi(&["simp", "hj", "[0 1 1 2]@2->1"])).trim(),
        "{0 0}@2->1"
    );
    assert_eq!(
        stdout(&smi(&[
            "simp",
            "compose",
            "[0 1 1 2]@2->1",
            "[0 1 2 3]@2->2"
        ]))
        .trim(),
        "[0 1 1 2]@2->1"
    );
    let o = stdout(&smi(&["simp", "render", "{- 0}@2->1"]));
    assert!(o.starts_with("Dp 2->1\n"));
}

#[test]
fn sweep_is_deterministic_per_seed() {
    let a = json(&["--seed", "11", "sweep", "--count", "15"]);
    let b = json(&["--seed", "11", "sweep", "--count", "15"]);
    assert_eq!(a, b);
    assert_eq!(a["failures"], serde_json::json!([]));
    assert_eq!(a["triples"], 15);
}
