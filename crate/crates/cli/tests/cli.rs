use std::process::{Command, Output};

use serde_json::Value;

fn arcat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_arcat"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("json report")
}

#[test]
fn tau_of_s1_on_a2_is_s2() {
    let o = arcat(&["tau", "--quiver", "A2", "--object", "S1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["result"]["translate"]["label"], "S2");
}

#[test]
fn projective_input_is_a_usage_error() {
    assert_eq!(
        arcat(&["tau", "--quiver", "A2", "--object", "P2"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        arcat(&["ass", "--quiver", "A3", "--ending-at", "P3"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn bad_inputs_exit_with_two() {
    assert_eq!(
        arcat(&["tau", "--quiver", "A2", "--object", "S9"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(arcat(&["verify", "no-such-suite"]).status.code(), Some(2));
    assert_eq!(
        arcat(&["--p", "4", "hom", "--quiver", "A2", "--source", "S1", "--target", "S1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(arcat(&["hom", "--quiver", "A2"]).status.code(), Some(2));
}

#[test]
fn exceeding_the_cap_exits_with_three() {
    let o = arcat(&[
        "--cap", "1", "radical", "--quiver", "A4", "--source", "[1,4]", "--target", "[1,4]",
        "--check",
    ]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn reports_embed_config_and_are_reproducible() {
    let args = ["--seed", "7", "verify", "lemma-factor", "--samples", "20"];
    let a = arcat(&args);
    let b = arcat(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    assert_eq!(v["config"]["seed"], 7);
    assert_eq!(v["config"]["cap"], 65536);
}

#[test]
fn infinite_tau_reports_the_stabilized_translate_with_a_note() {
    let o = arcat(&[
        "tau",
        "--preset",
        "paper-ainf-zigzag",
        "--object",
        "S1",
        "--truncate",
        "8",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["result"]["verdict"], "member");
    assert_eq!(v["result"]["stableTranslate"]["label"], "[2,3]");
    assert!(v["notes"][0].as_str().unwrap().contains("S2"));
}

#[test]
fn no_almost_split_triangle_starts_at_p4() {
    let o = arcat(&["ass", "--starting-at", "P4", "--preset", "ainf-zigzag"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["result"]["verdict"], "no-evidence");
}

#[test]
fn determine_on_the_infinite_quiver_finds_no_determiner() {
    let o = arcat(&["determine", "--quiver", "ainf-zigzag", "--cover", "S4"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["result"]["determinedWithinHorizon"], false);
    assert_eq!(v["result"]["windows"][0]["weakKernel"], "[5,8]");
}

#[test]
fn determine_with_a_candidate() {
    let m = r#"{"source":"P1","target":"S1","comps":{"1":[[1]]}}"#;
    let o = arcat(&["determine", "--quiver", "A2", "--morphism", m, "--by", "S1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["result"]["verdict"], true);
}

#[test]
fn construct_emits_the_certification_triple() {
    let o = arcat(&[
        "construct",
        "--quiver",
        "A3",
        "--object",
        "S2",
        "--target",
        "[1,2]",
        "--gens",
        "[]",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let c = &json(&o)["result"]["certification"];
    assert_eq!(c["kernelInAddTauC"], true);
    assert_eq!(c["imageEqualsH"], true);
    assert_eq!(c["rightDetermined"]["verdict"], true);
}

#[test]
fn named_suites_pass() {
    for s in ["lemma31-nondegeneracy", "thm-exist-sweep"] {
        let o = arcat(&[
            "verify",
            s,
            "--quiver",
            if s.starts_with("lemma") { "A4" } else { "A3" },
            "--p",
            "2",
        ]);
        assert_eq!(o.status.code(), Some(0), "{s}");
    }
    let o = arcat(&["verify", "paper-5-2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(!json(&o)["notes"].as_array().unwrap().is_empty());
}

#[test]
fn text_format_is_derived_from_json() {
    let o = arcat(&[
        "--format", "text", "hom", "--quiver", "A3", "--source", "P3", "--target", "P1",
    ]);
    let s = String::from_utf8(o.stdout).unwrap();
    assert!(s.contains("command: hom"));
    assert!(s.contains("dim: 1"));
}
