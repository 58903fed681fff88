use jinf_cli::{run, Output};
use serde_json::Value;

fn jinf(args: &[&str]) -> Output {
    run(std::iter::once("jinf").chain(args.iter().copied()))
}

const SWAPPED: &str = "union({1},diff(evens,{2}))";

fn field<'a>(out: &'a str, key: &str) -> &'a str {
    out.lines()
        .find_map(|l| l.strip_prefix(key))
        .unwrap_or_else(|| panic!("no `{key}` line in {out}"))
        .trim()
}

#[test]
fn adjacency_example() {
    let out = jinf(&["adj", "--x", "evens", "--y", SWAPPED]);
    assert_eq!((out.code, out.stdout.as_str()), (0, "adjacent: true\n"));
    let out = jinf(&["component", "--x", "evens", "--y", "union(evens,{1})"]);
    assert_eq!(out.stdout, "same component: false\n");
}

#[test]
fn set_commands() {
    assert_eq!(jinf(&["set", "eval", "inter(evens, mod(3,0))"]).stdout, "per(;000001)\n");
    assert_eq!(jinf(&["set", "canon", "evens"]).stdout, "prefix: \nperiod: 01\n");
    assert_eq!(jinf(&["set", "classify", "{1,5}"]).stdout, "finite of size 2\n");
    assert_eq!(jinf(&["set", "classify", "odds"]).stdout, "balanced\n");
}

#[test]
fn usage_and_parse_errors_exit_2() {
    let out = jinf(&["set", "eval", "union(evens,"]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("parse error at 1:13"));
    assert!(out.stderr.contains("expr := evens | odds"));
    assert_eq!(jinf(&["adj", "--x", "evens"]).code, 2);
    assert_eq!(jinf(&["frobnicate"]).code, 2);
}

#[test]
fn domain_errors_exit_1() {
    let out = jinf(&["dist", "--x", "evens", "--y", "odds"]);
    assert_eq!(out.code, 1);
    assert!(out.stderr.contains("different components"));
    let out = jinf(&["adj", "--x", "{1,2}", "--y", "evens"]);
    assert_eq!(out.code, 1);
    let shift = r#"{"kind":"regular","perm":{"modulus":1,"threshold":0,"classes":[{"from":0,"to":0,"offset":2}]}}"#;
    let out = jinf(&["auto", "apply", "--spec", shift, "--x", "evens"]);
    assert_eq!(out.code, 1);
    assert!(out.stderr.contains("not surjective: 1 has no preimage"));
}

#[test]
fn aut_order_of_johnson_6_3() {
    let out = jinf(&["oracle", "aut-order", "--family", "johnson", "--n", "6", "--k", "3"]);
    assert_eq!((out.code, out.stdout.as_str()), (0, "1440\n"));
    let out = jinf(&["oracle", "aut-order", "--family", "kneser", "--n", "5", "--k", "2"]);
    assert_eq!(out.stdout, "120\n");
}

#[test]
fn finite_graphs() {
    assert_eq!(jinf(&["oracle", "johnson", "--n", "5", "--k", "2"]).stdout, "vertices: 10\nedges: 30\n");
    let out = jinf(&["oracle", "kneser", "--n", "4", "--k", "2"]);
    assert!(out.stdout.contains("edges: 3") && out.stdout.contains("warning"));
    let out = jinf(&["oracle", "truncate", "--base", "evens", "--window", "4", "--radius", "1"]);
    assert_eq!(out.stdout, "vertices: 5\nedges: 8\n");
    let cliques = jinf(&["oracle", "cliques", "--n", "5", "--k", "2"]).stdout;
    assert_eq!(cliques.lines().filter(|l| l.starts_with("Star")).count(), 5);
    assert_eq!(cliques.lines().filter(|l| l.starts_with("Top")).count(), 10);
    let out = jinf(&["oracle", "induced-perm", "--n", "5", "--k", "2", "--perm", "2,3,4,5,1"]);
    assert_eq!(out.stdout, "permutation: 2,3,4,5,1\ncomplemented: false\n");
}

#[test]
fn example_one_pipeline() {
    let out = jinf(&["auto", "example1", "--a", "evens", "--b", SWAPPED]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert_eq!(field(&out.stdout, "verified:"), "true");
    let spec = field(&out.stdout, "automorphism:").to_string();
    let cert = field(&out.stdout, "certificate:").to_string();
    let cert_json: Value = serde_json::from_str(&cert).unwrap();
    assert_eq!(cert_json["y"], "per(01;0100)");

    let out = jinf(&["auto", "verify-cert", "--spec", &spec, "--cert", &cert]);
    assert_eq!((out.code, out.stdout.as_str()), (0, "verified: true\n"));
    let identity = r#"{"kind":"identity"}"#;
    let out = jinf(&["auto", "verify-cert", "--spec", identity, "--cert", &cert]);
    assert_eq!(out.code, 1);

    let out = jinf(&["auto", "reconstruct", "--spec", &spec, "--a", "evens", "--upto", "4", "--exact"]);
    assert_eq!(field(&out.stdout, "flip:"), "false");
    assert_eq!(field(&out.stdout, "sigma:"), "1->2 2->1 3->3 4->4");
    assert!(field(&out.stdout, "exact:").contains("\"patch\":{\"1\":2,\"2\":1}"));

    let out = jinf(&["order", "check", "--spec", &spec, "--x", "per(01;0100)", "--y", "evens"]);
    assert_eq!(out.code, 1);
    assert!(out.stdout.starts_with("order preserved: false"));
}

#[test]
fn descriptions_from_files() {
    let dir = std::env::temp_dir().join(format!("jinf-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("star.json");
    std::fs::write(&path, r#"{"kind": "complement"}"#).unwrap();
    let spec = format!("@{}", path.display());
    assert_eq!(jinf(&["auto", "classify", "--spec", &spec, "--a", "evens"]).stdout, "case: B (stars to tops)\n");
    assert_eq!(jinf(&["auto", "apply", "--spec", &spec, "--x", "evens"]).stdout, "per(;10)\n");
    let out = jinf(&["order", "sigma", "--spec", &spec, "--n", "3"]);
    assert_eq!(out.code, 1);
    assert!(out.stderr.contains("infinitely many"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn order_reconstruction() {
    let t = r#"{"kind":"regular","perm":{"modulus":1,"threshold":2,"classes":[{"from":0,"to":0,"offset":0}],"patch":{"1":2,"2":1}}}"#;
    assert_eq!(jinf(&["order", "sigma", "--spec", t, "--n", "1"]).stdout, "2\n");
    assert_eq!(
        jinf(&["order", "reconstruct", "--spec", t, "--window", "3"]).stdout,
        "sigma: 1->2 2->1 3->3\n"
    );
}

#[test]
fn kneser_commands() {
    let out = jinf(&["kneser", "dist", "--x", "evens", "--y", "union(odds,{2})"]);
    assert_eq!(field(&out.stdout, "distance:"), "3");
    assert_eq!(jinf(&["kneser", "adj", "--x", "evens", "--y", "odds"]).stdout, "adjacent: true\n");
    let out = jinf(&["kneser", "witness", "--x", "evens", "--y", "odds"]);
    assert_eq!(out.code, 0);
}

fn without_timings(mut report: Value) -> Value {
    for check in report["checks"].as_array_mut().unwrap() {
        check.as_object_mut().unwrap().remove("millis");
    }
    report
}

#[test]
fn suite_filter_and_determinism() {
    let out = jinf(&["suite", "run", "--filter", "theorem2", "--json"]);
    assert_eq!(out.code, 0, "{}", out.stdout);
    let report: Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(report["checks"].as_array().unwrap().len(), 1);
    assert_eq!(report["checks"][0]["name"], "theorem2.order_preserving");

    let again = |seed: &str| {
        let out = jinf(&["suite", "run", "--filter", "kneser", "--seed", seed, "--json"]);
        without_timings(serde_json::from_str(&out.stdout).unwrap())
    };
    assert_eq!(again("9"), again("9"));
}

#[test]
fn suite_reports_planted_fault() {
    let out = jinf(&["suite", "run", "--filter", "oracle", "--mutate"]);
    assert_eq!(out.code, 1);
    assert!(out.stdout.starts_with("FAIL oracle.finite_ground_truth"));
    assert!(out.stdout.contains("witness:"));
}
