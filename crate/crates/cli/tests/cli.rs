use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn corpus(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus").join(name)
}

fn acrw(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_acrw")).args(args).output().expect("binary runs")
}

fn run(sig: &str, args: &[&str]) -> (i32, String, String) {
    let path = corpus(sig);
    let mut all = vec![args[0], "-s", path.to_str().unwrap()];
    all.extend_from_slice(&args[1..]);
    let out = acrw(&all);
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn json(sig: &str, args: &[&str]) -> (i32, Value) {
    let mut all = args.to_vec();
    all.push("--json");
    let (code, out, err) = run(sig, &all);
    let value = serde_json::from_str(&out).unwrap_or_else(|e| panic!("{e}: {out}\n{err}"));
    (code, value)
}

#[test]
fn check_equal_through_units() {
    let (code, out, _) = run("units.sig", &["check", "max(0, b*1) + a", "a + b"]);
    assert_eq!(code, 0);
    assert_eq!(out, "EQUAL\n");
}

#[test]
fn check_not_equal_prints_normal_forms() {
    let (code, out, _) = run("units.sig", &["check", "a*b", "b*a"]);
    assert_eq!(code, 1);
    assert_eq!(out, "NOT EQUAL\na*b\nb*a\n");
}

#[test]
fn unparseable_input_exits_2() {
    for bad in ["a*", "a + b * a", "?x + a", "h(a)"] {
        let (code, out, err) = run("units.sig", &["check", bad, "a"]);
        assert_eq!(code, 2, "{bad}");
        assert!(out.is_empty());
        assert!(err.starts_with("acrw: "), "{err}");
    }
}

#[test]
fn bad_signature_exits_2() {
    let dir = std::env::temp_dir().join(format!("acrw-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad.sig");
    std::fs::write(&path, "op + : AC\nunit 0 : +\nunit e : +\n").unwrap();
    let out = acrw(&["normalize", "-s", path.to_str().unwrap(), "0"]);
    assert_eq!(out.status.code(), Some(2));
    let out = acrw(&["normalize", "-s", dir.join("missing.sig").to_str().unwrap(), "0"]);
    assert_eq!(out.status.code(), Some(2));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(acrw(&["frobnicate"]).status.code(), Some(2));
    let path = corpus("units.sig");
    let out = acrw(&["rewrite", "-s", path.to_str().unwrap(), "a+b"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn normalize_examples() {
    for (input, want) in [("b+0", "b"), ("(b+a)+a", "a+a+b"), ("max(0, b*1)+a", "a+b"), ("a + b", "a+b")] {
        let (code, out, _) = run("units.sig", &["normalize", input]);
        assert_eq!(code, 0);
        assert_eq!(out.trim_end(), want, "{input}");
    }
}

#[test]
fn instances_at_root_list_two_substitutions() {
    let (code, v) = json("units.sig", &["instances", "--rule", "?x+?y+?y = ?y+?x", "a+a+b+b"]);
    assert_eq!(code, 0);
    let root: Vec<&Value> = v["solutions"].as_array().unwrap().iter().filter(|s| s["context"] == "[]").collect();
    assert!(root.iter().all(|s| s["occurrence"] == 0));
    let mut found: Vec<(String, String)> = root
        .iter()
        .map(|s| {
            let b = &s["bindings"];
            (b["x"].as_str().unwrap().to_owned(), b["y"].as_str().unwrap().to_owned())
        })
        .collect();
    found.sort();
    // the two substitutions that use no unit
    assert!(found.contains(&("a+a".into(), "b".into())));
    assert!(found.contains(&("b+b".into(), "a".into())));
    // ?x := 0, ?y := 0 gives the unit as instance
    assert_eq!(v["warning"], true);
}

#[test]
fn instances_text_listing() {
    let (code, out, _) = run("lattice.sig", &["instances", "-r", "(?x&?y) | (?x&?z) = ?x&(?y|?z)", "(a&b)|(a&c)"]);
    assert_eq!(code, 0);
    assert_eq!(
        out,
        "occurrence 0: []\n  substitution 0: ?x := a, ?y := b, ?z := c\n  substitution 1: ?x := a, ?y := c, ?z := b\n"
    );
}

#[test]
fn rewrite_negation() {
    let (code, out, _) = run("negation.sig", &["rewrite", "--rule", "?x + n(?x) = 0", "a+b+c+n(c+a)"]);
    assert_eq!(code, 0);
    let (code, eq, _) = run("negation.sig", &["check", out.trim_end(), "b+0"]);
    assert_eq!((code, eq.as_str()), (0, "EQUAL\n"));
    let (_, normal, _) = run("negation.sig", &["rewrite", "--post-normalize", "-r", "?x + n(?x) = 0", "a+b+c+n(c+a)"]);
    assert_eq!(normal, "b\n");
}

#[test]
fn rewrite_right_to_left() {
    let (code, out, _) = run("lattice.sig", &["rewrite", "--rtl", "-r", "(?x&?y) | (?x&?z) = ?x&(?y|?z)", "c&(a|b)"]);
    assert_eq!(code, 0);
    let (code, _, _) = run("lattice.sig", &["check", out.trim_end(), "(a&c)|(b&c)"]);
    assert_eq!(code, 0);
}

#[test]
fn unit_instances_exit_1_with_warning() {
    let (code, out, err) = run("units.sig", &["rewrite", "--rule", "?x+?x = ?x", "a*b"]);
    assert_eq!(code, 1);
    assert!(out.is_empty());
    assert!(err.contains("equals a unit"), "{err}");

    let (code, out, err) = run("units.sig", &["instances", "--rule", "?x+?x = ?x", "a*b"]);
    assert_eq!(code, 1);
    assert_eq!(out, "no instances\n");
    assert!(err.contains("equals a unit"), "{err}");

    let (code, v) = json("units.sig", &["instances", "--rule", "?x+?x = ?x", "a*b"]);
    assert_eq!(code, 1);
    assert_eq!(v["warning"], true);
    assert_eq!(v["solutions"].as_array().unwrap().len(), 0);
}

#[test]
fn plain_no_match_exits_1() {
    let (code, _, err) = run("negation.sig", &["rewrite", "-r", "n(?x) = ?x", "a+b"]);
    assert_eq!(code, 1);
    assert!(!err.contains("equals a unit"));
}

#[test]
fn selection_out_of_range_exits_3() {
    let (code, _, err) = run("units.sig", &["rewrite", "--occ", "40", "-r", "?x+?y+?y = ?y+?x", "a+a+b+b"]);
    assert_eq!(code, 3, "{err}");
    let (code, _, _) = run("units.sig", &["rewrite", "--subst", "9", "-r", "?x+?y+?y = ?y+?x", "a+a+b+b"]);
    assert_eq!(code, 3);
}

#[test]
fn ill_formed_rule_exits_2() {
    let (code, _, _) = run("units.sig", &["rewrite", "-r", "?x = ?x+a", "a"]);
    assert_eq!(code, 2);
    let (code, _, _) = run("units.sig", &["rewrite", "-r", "a+?x = ?y", "a+b"]);
    assert_eq!(code, 2);
}

#[test]
fn selection_follows_listing() {
    let rule = "?x+?y+?y = ?y+?x";
    let (_, listing) = json("units.sig", &["instances", "-r", rule, "a+a+b+b"]);
    for s in listing["solutions"].as_array().unwrap() {
        let occ = s["occurrence"].to_string();
        let sub = s["substitution_index"].to_string();
        let (code, v) = json("units.sig", &["rewrite", "--occ", &occ, "--subst", &sub, "-r", rule, "a+a+b+b"]);
        assert_eq!(code, 0);
        assert_eq!(v["solutions"][0]["context"], s["context"]);
        assert_eq!(v["solutions"][0]["bindings"], s["bindings"]);
        assert_eq!(v["transcript"][0]["verified"], true);
    }
}

#[test]
fn chained_rules_record_a_transcript() {
    let (code, v) = json(
        "lattice.sig",
        &["rewrite", "-r", "(?x&?y) | (?x&?z) = ?x&(?y|?z)", "-r", "?x&(?y|?y) = ?x&?y", "(a&b)|(a&b)"],
    );
    assert_eq!(code, 0);
    assert_eq!(v["transcript"].as_array().unwrap().len(), 2);
    assert_eq!(v["result"], "a&b");
}

#[test]
fn signature_hash_ignores_layout() {
    let dir = std::env::temp_dir().join(format!("acrw-hash-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let original = std::fs::read_to_string(corpus("units.sig")).unwrap();
    let path = dir.join("units.sig");
    std::fs::write(&path, original.replace("sym a 0", "\n\nsym   a 0  # spaced")).unwrap();
    let a = acrw(&["normalize", "--json", "-s", corpus("units.sig").to_str().unwrap(), "a"]);
    let b = acrw(&["normalize", "--json", "-s", path.to_str().unwrap(), "a"]);
    std::fs::remove_dir_all(&dir).unwrap();
    let a: Value = serde_json::from_slice(&a.stdout).unwrap();
    let b: Value = serde_json::from_slice(&b.stdout).unwrap();
    assert_eq!(a["signature_hash"], b["signature_hash"]);
}

#[test]
fn oracle_flag_agrees() {
    let (code, _, err) = run("units.sig", &["check", "--oracle", "max(0, b*1) + a", "a + b"]);
    assert_eq!(code, 0);
    assert!(err.contains("oracle: EQUAL"), "{err}");
    let (_, _, err) = run("lattice.sig", &["instances", "--oracle", "-r", "(?x&?y) | (?x&?z) = ?x&(?y|?z)", "(a&b)|(a&c)"]);
    assert!(err.contains("oracle: 2 solution class(es)"), "{err}");
}

#[test]
fn json_matches_schema_on_corpus() {
    let schema: Value =
        serde_json::from_str(&std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("schema/output.schema.json")).unwrap())
            .unwrap();
    let validator = jsonschema::validator_for(&schema).unwrap();
    let cases = std::fs::read_to_string(corpus("cases.txt")).unwrap();
    let mut seen = std::collections::BTreeSet::new();
    for line in cases.lines().filter(|l| !l.trim().is_empty() && !l.starts_with('#')) {
        let fields: Vec<&str> = line.split("::").map(str::trim).collect();
        let [sig, command, rules, terms] = fields[..] else { panic!("bad case line: {line}") };
        let mut args = vec![command];
        for r in rules.split(';').map(str::trim).filter(|r| !r.is_empty()) {
            args.extend(["--rule", r]);
        }
        args.extend(terms.split(';').map(str::trim));
        let (code, v) = json(sig, &args);
        assert!(code <= 1, "{line}: exit {code}");
        let errors: Vec<String> = validator.iter_errors(&v).map(|e| e.to_string()).collect();
        assert!(errors.is_empty(), "{line}: {errors:?}\n{v:#}");
        assert_eq!(v["command"], command);
        seen.insert(command.to_owned());
    }
    assert_eq!(seen.len(), 4);
}
