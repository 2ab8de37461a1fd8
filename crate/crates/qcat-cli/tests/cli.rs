use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn qcat(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qcat")).current_dir(dir).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

fn setup() -> tempfile::TempDir {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("pair.json"), r#"{"base": "two", "objects": [{"name": "a"}, {"name": "b"}]}"#).unwrap();
    fs::write(
        dir.path().join("chain.json"),
        r#"{"base": "two", "objects": [{"name": "0"}, {"name": "1"}, {"name": "2"}],
            "hom": {"0,1": "1", "0,2": "1", "1,2": "1"}}"#,
    )
    .unwrap();
    fs::write(
        dir.path().join("luk.json"),
        r#"{"base": "luk3", "objects": [{"name": "p"}, {"name": "q"}], "hom": {"p,q": "1"}}"#,
    )
    .unwrap();
    dir
}

#[test]
fn validate_accepts_a_category() {
    let d = setup();
    assert_eq!(qcat(d.path(), &["validate", "pair.json"]).status.code(), Some(0));
}

#[test]
fn validate_reports_a_broken_category() {
    let d = setup();
    // 0 <= 1 <= 2 without 0 <= 2 breaks transitivity
    fs::write(
        d.path().join("bad.json"),
        r#"{"base": "two", "objects": [{"name": "0"}, {"name": "1"}, {"name": "2"}], "hom": {"0,1": "1", "1,2": "1"}}"#,
    )
    .unwrap();
    let out = qcat(d.path(), &["validate", "bad.json", "--json"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(!json(&out)["problems"].as_array().unwrap().is_empty());
}

#[test]
fn complete_discrete_pair() {
    let d = setup();
    let out = qcat(d.path(), &["complete", "pair.json", "--weights", "all", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["count"], 4);
    assert_eq!(v["verify_cocompletion"]["property"], "verify_cocompletion");
    assert_eq!(v["verify_cocompletion"]["verdict"], "pass");
}

#[test]
fn written_outputs_reload_and_check() {
    let d = setup();
    assert_eq!(qcat(d.path(), &["complete", "chain.json", "--out", "out"]).status.code(), Some(0));
    for f in ["base.json", "carrier.json", "psh.json", "yoneda.json", "pi.json"] {
        let out = qcat(d.path(), &["validate", &format!("out/{f}")]);
        assert_eq!(out.status.code(), Some(0), "{f}: {}", String::from_utf8_lossy(&out.stderr));
    }
    assert_eq!(qcat(d.path(), &["check", "dense", "--functor", "out/yoneda.json"]).status.code(), Some(0));
    assert_eq!(qcat(d.path(), &["check", "fully-faithful", "--functor", "out/yoneda.json"]).status.code(), Some(0));
    assert_eq!(
        qcat(d.path(), &["check", "dense", "--functor", "yoneda", "--category", "chain.json"]).status.code(),
        Some(0)
    );
}

#[test]
fn dualize_twice_is_identity() {
    let d = setup();
    for f in ["chain.json", "luk.json"] {
        assert_eq!(qcat(d.path(), &["dualize", f, "--out", "d1.json"]).status.code(), Some(0));
        assert_eq!(qcat(d.path(), &["dualize", "d1.json", "--out", "d2.json"]).status.code(), Some(0));
        let a: Value = serde_json::from_str(&fs::read_to_string(d.path().join(f)).unwrap()).unwrap();
        let b: Value = serde_json::from_str(&fs::read_to_string(d.path().join("d2.json")).unwrap()).unwrap();
        assert_eq!(a, b);
        assert_eq!(qcat(d.path(), &["validate", "d1.json"]).status.code(), Some(0));
    }
}

#[test]
fn presheaves_counts_down_sets() {
    let d = setup();
    let out = qcat(d.path(), &["presheaves", "chain.json", "--json"]);
    assert_eq!(json(&out)["count"], 4);
}

#[test]
fn input_errors_exit_two() {
    let d = setup();
    assert_eq!(qcat(d.path(), &["validate", "missing.json"]).status.code(), Some(2));
    assert_eq!(qcat(d.path(), &["complete", "pair.json", "--bogus"]).status.code(), Some(2));
    assert_eq!(qcat(d.path(), &["lemmas", "--only", "L99"]).status.code(), Some(2));
}

#[test]
fn cap_exhaustion_exits_three() {
    let d = setup();
    assert_eq!(qcat(d.path(), &["presheaves", "luk.json", "--cap", "1"]).status.code(), Some(3));
}

#[test]
fn lemma_scoreboard_is_json() {
    let d = setup();
    let out = qcat(d.path(), &["lemmas", "--cases", "2", "--only", "L1,L4", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["scoreboard"]["results"].as_array().unwrap().len(), 2);
}

#[test]
fn sheafify_point_pair_site() {
    let d = setup();
    fs::write(
        d.path().join("site.json"),
        r#"{"objects": ["U", "V", "X"],
            "arrows": [{"name": "u", "src": "U", "dst": "X"}, {"name": "v", "src": "V", "dst": "X"}],
            "coverage": {"X": [["u", "v"]]}}"#,
    )
    .unwrap();
    fs::write(
        d.path().join("f.json"),
        r#"{"sections": {"U": ["0", "1"], "V": ["0", "1"], "X": ["0", "1"]},
            "restrictions": {"u": {"0": "0", "1": "1"}, "v": {"0": "0", "1": "1"}}}"#,
    )
    .unwrap();
    let out = qcat(d.path(), &["sheafify", "site.json", "f.json", "--json", "--out", "sheaf.json"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert_eq!(v["sheaf"]["sections"]["X"].as_array().unwrap().len(), 4);
    let again = qcat(d.path(), &["sheafify", "site.json", "sheaf.json", "--json"]);
    assert_eq!(json(&again)["input_violations"].as_array().unwrap().len(), 0);
    assert_eq!(qcat(d.path(), &["validate", "sheaf.json", "--site", "site.json"]).status.code(), Some(0));
}
