use std::path::PathBuf;

use kolmo::run;

fn golden(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name);
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

fn kolmo(args: &[&str]) -> kolmo::Output {
    run(std::iter::once("kolmo").chain(args.iter().copied()))
}

const GOLDEN: &[(&str, &[&str])] = &[
    ("relations", &["relations"]),
    ("casimir", &["casimir"]),
    ("dims_max_n_8", &["dims", "--max-n", "8"]),
    ("polysols_n_3", &["polysols", "--n", "3"]),
];

#[test]
fn golden_text_and_json() {
    for (name, args) in GOLDEN {
        let text = kolmo(args);
        assert_eq!(text.code, 0, "{name}");
        assert_eq!(text.stdout, golden(&format!("{name}.txt")), "{name}.txt");

        let mut json_args = vec!["--json"];
        json_args.extend_from_slice(args);
        let json = kolmo(&json_args);
        assert_eq!(json.code, 0, "{name}");
        assert_eq!(json.stdout, golden(&format!("{name}.json")), "{name}.json");
        let v: serde_json::Value = serde_json::from_str(&json.stdout).unwrap();
        assert_eq!(v["outcome"], "pass");
    }
}

#[test]
fn output_is_deterministic() {
    for (_, args) in GOLDEN {
        assert_eq!(kolmo(args), kolmo(args));
    }
}

#[test]
fn normal_form_round_trips() {
    let out = kolmo(&["normal-form", "P1*P2"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("P2*P1 + 1"), "{}", out.stdout);

    let one = kolmo(&["normal-form", "(P0)^0"]);
    assert_eq!(one.code, 0);
    assert_eq!(one.stdout.lines().next(), Some("1"));

    let c = kolmo(&["normal-form", "C"]);
    let cas = kolmo(&["--json", "casimir"]);
    let v: serde_json::Value = serde_json::from_str(&cas.stdout).unwrap();
    let cj = kolmo(&["--json", "normal-form", "C"]);
    let w: serde_json::Value = serde_json::from_str(&cj.stdout).unwrap();
    assert_eq!(c.code, 0);
    assert_eq!(w["payload"]["element"], v["payload"]["element"]);
}

#[test]
fn exit_codes() {
    assert_eq!(kolmo(&["check", "x^2 + 2*t"]).code, 0);
    assert_eq!(kolmo(&["check", "y"]).code, 1);

    let bad = kolmo(&["normal-form", "P1*("]);
    assert_eq!(bad.code, 2);
    assert!(bad.stdout.is_empty());
    assert!(bad.stderr.starts_with("error: "));
    assert_eq!(bad.stderr.lines().count(), 1);

    assert_eq!(kolmo(&["no-such-command"]).code, 2);
    assert_eq!(kolmo(&["dims"]).code, 2);
    assert_eq!(
        kolmo(&["kernel-decomp", "--a", "P0", "--b", "P2", "--r", "1", "--n", "2"]).code,
        2
    );
    assert_eq!(kolmo(&["--budget-seconds", "-1", "dims", "--max-n", "2"]).code, 2);
    assert_eq!(kolmo(&["--help"]).code, 0);
}

#[test]
fn budget_exhaustion_is_reported() {
    let out = kolmo(&["--json", "--budget-seconds", "0", "solve-determining", "--n", "2"]);
    assert_eq!(out.code, 0);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["incomplete"], true);
    assert_eq!(v["outcome"], "info");
}

#[test]
fn timing_is_opt_in() {
    let plain = kolmo(&["casimir"]);
    assert!(!plain.stdout.contains("elapsed"));
    let timed = kolmo(&["--timing", "casimir"]);
    assert!(timed.stdout.contains("elapsed: "));
}

#[test]
fn apply_and_group_act() {
    let out = kolmo(&["apply", "P2", "1"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains('x'), "{}", out.stdout);

    let g = kolmo(&["group-act", "--l1", "1", "x"]);
    assert_eq!(g.code, 0);
    assert!(g.stdout.contains("x + 1"), "{}", g.stdout);
}
