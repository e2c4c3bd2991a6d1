use std::path::PathBuf;

use bindform::cli::{run, CliOutput, EXIT_NO, EXIT_OK, EXIT_SEMANTIC, EXIT_USAGE, EXIT_YES};
use bindform::format::parse_signature;
use bindform::solver::decide_sat;
use bindform::syntax::{parse_formula, to_binding_normal_form};

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples/data").join(name).to_string_lossy().into_owned()
}

fn bindform(args: &[&str]) -> CliOutput {
    run(std::iter::once("bindform").chain(args.iter().copied()))
}

#[test]
fn eval_running_example() {
    let out = bindform(&[
        "eval",
        "--sig",
        &data("running.sig"),
        "--str",
        &data("running.str"),
        "--formula",
        &data("running.fol"),
    ]);
    assert_eq!(out.code, EXIT_YES, "{}", out.stderr);
    assert_eq!(out.stdout, "true\n");
    let out = bindform(&[
        "eval",
        "--sig",
        &data("running.sig"),
        "--str",
        &data("running.str"),
        "--expr",
        "exists x. (a,x) r",
        "--assign",
        "x=0,b=1",
    ]);
    assert_eq!((out.code, out.stdout.as_str()), (EXIT_YES, "true\n"));
    let out = bindform(&["eval", "--sig", &data("running.sig"), "--str", &data("running.str"), "--expr", "(a,x) r"]);
    assert_eq!(out.code, EXIT_SEMANTIC);
    assert!(out.stderr.contains("unbound placeholder"), "{}", out.stderr);
}

#[test]
fn sat_writes_certificate_and_matches_library() {
    let dir = tempfile::tempdir().unwrap();
    let sig = parse_signature(&std::fs::read_to_string(data("abc.sig")).unwrap()).unwrap();
    for i in 1..=4 {
        let cert = dir.path().join(format!("phi{i}.json"));
        let formula = data(&format!("phi{i}.fol"));
        let out = bindform(&[
            "sat",
            "--sig",
            &data("abc.sig"),
            "--formula",
            &formula,
            "--certificate",
            cert.to_str().unwrap(),
        ]);
        let text = std::fs::read_to_string(&formula).unwrap();
        let nf = to_binding_normal_form(&parse_formula(&text, &sig).unwrap(), &sig).unwrap();
        let expected = if decide_sat(&nf, &sig).unwrap().is_sat() { EXIT_YES } else { EXIT_NO };
        assert_eq!(out.code, expected, "phi{i}");
        let json: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&cert).unwrap()).unwrap();
        assert_eq!(json, serde_json::from_str::<serde_json::Value>(&out.stdout).unwrap());
        assert_eq!(json["verdict"], if i == 1 { "unsat" } else { "sat" });
    }
}

#[test]
fn parallel_sat_output_is_identical() {
    let args = |jobs: &'static str| ["sat", "--sig", "", "--formula", "", "--jobs", jobs];
    let (sig, f) = (data("abc.sig"), data("phi1.fol"));
    let go = |jobs| {
        let mut a = args(jobs);
        a[2] = &sig;
        a[4] = &f;
        bindform(&a)
    };
    assert_eq!(go("1"), go("4"));
}

#[test]
fn refuses_non_one_binding_input() {
    let out = bindform(&["sat", "--sig", &data("edge.sig"), "--formula", &data("infinity.fol")]);
    assert_eq!(out.code, EXIT_SEMANTIC);
    assert!(out.stderr.contains("DB"));
    assert!(out.stdout.is_empty());
    let out = bindform(&["classify", "--sig", &data("edge.sig"), "--formula", &data("infinity.fol")]);
    assert_eq!((out.code, out.stdout.as_str()), (EXIT_OK, "DB\n"));
}

#[test]
fn model_search() {
    let out = bindform(&["model", "--sig", &data("abc.sig"), "--formula", &data("phi3.fol"), "--max-order", "2"]);
    assert_eq!(out.code, EXIT_YES);
    assert!(out.stdout.starts_with("structure {"));
    let out = bindform(&["model", "--sig", &data("edge.sig"), "--formula", &data("infinity.fol"), "--max-order", "3"]);
    assert_eq!((out.code, out.stdout.as_str()), (EXIT_NO, ""));
}

#[test]
fn bisimulation_verdicts() {
    let out = bindform(&["bisim", "--sig", &data("edge.sig"), "--str1", &data("r1.str"), "--str2", &data("r2.str")]);
    assert_eq!((out.code, out.stdout.as_str()), (EXIT_YES, "bisimilar\n"));
    let out = bindform(&["bisim", "--sig", &data("edge.sig"), "--str1", &data("r3.str"), "--str2", &data("r4.str")]);
    assert_eq!(out.code, EXIT_NO);
    assert!(out.stdout.contains("distinguishing: forall x. forall y."), "{}", out.stdout);
}

#[test]
fn graphs_are_written() {
    let dir = tempfile::tempdir().unwrap();
    let out = bindform(&[
        "graphs",
        "--sig",
        &data("abc.sig"),
        "--formula",
        &data("phi2.fol"),
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    assert_eq!(out.stdout, "a,b,c: 3 schemas, conflict s1.b s2.c\n");
    let dep = std::fs::read_to_string(dir.path().join("dependence_a-b-c.dot")).unwrap();
    assert!(dep.starts_with("digraph dependence {"));
    let col = std::fs::read_to_string(dir.path().join("collapsing_a-b-c.dot")).unwrap();
    assert!(col.starts_with("graph collapsing {"));
}

#[test]
fn normalize_interpolate_and_tables() {
    let out = bindform(&["normalize", "--sig", &data("running.sig"), "--formula", &data("running.fol")]);
    assert_eq!(out.code, EXIT_OK);
    assert!(out.stdout.starts_with("exists x0. forall x1. exists x2."));
    let out = bindform(&[
        "interpolate",
        "--sig",
        &data("props.sig"),
        "--left",
        &data("left.fol"),
        "--right",
        &data("right.fol"),
    ]);
    assert_eq!((out.code, out.stdout.as_str()), (EXIT_OK, "q\n"));
    let out = bindform(&[
        "interpolate",
        "--sig",
        &data("props.sig"),
        "--left",
        &data("right.fol"),
        "--right",
        &data("left.fol"),
    ]);
    assert_eq!(out.code, EXIT_SEMANTIC);
    let out = bindform(&["skolem-check", "--table", &data("table.json")]);
    assert_eq!(out.code, EXIT_OK);

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    let text =
        std::fs::read_to_string(data("table.json")).unwrap().replacen("\"y\": \"1\", \"z\"", "\"y\": \"0\", \"z\"", 1);
    std::fs::write(&bad, text).unwrap();
    let out = bindform(&["skolem-check", "--table", bad.to_str().unwrap()]);
    assert_eq!(out.code, EXIT_SEMANTIC, "{}", out.stdout);
    assert!(out.stderr.contains("universal"), "{}", out.stderr);
}

#[test]
fn seeded_entanglement_is_reproducible() {
    let args = [
        "entangle",
        "--sig",
        &data("abc.sig"),
        "--formula",
        &data("phi1.fol"),
        "--seed",
        "42",
        "--samples",
        "5",
        "--carrier",
        "3",
    ];
    let first = bindform(&args);
    assert_eq!(first.code, EXIT_OK, "{}", first.stderr);
    assert_eq!(first, bindform(&args));
    assert!(!first.stdout.contains("{}"), "phi1 samples are entangled:\n{}", first.stdout);
}

#[test]
fn usage_and_semantic_errors() {
    assert_eq!(bindform(&[]).code, EXIT_USAGE);
    assert_eq!(bindform(&["sat", "--sig", &data("abc.sig")]).code, EXIT_USAGE);
    let help = bindform(&["--help"]);
    assert_eq!(help.code, EXIT_OK);
    assert!(help.stdout.contains("skolem-check"));

    let out = bindform(&["classify", "--sig", &data("abc.sig"), "--expr", "forall x. (a,x) q &"]);
    assert_eq!(out.code, EXIT_USAGE);
    assert!(out.stderr.contains("--expr:1:"), "{}", out.stderr);
    let out = bindform(&["check", "--sig", "/nonexistent.sig"]);
    assert_eq!(out.code, EXIT_USAGE);

    let dir = tempfile::tempdir().unwrap();
    let sig = dir.path().join("bad.sig");
    std::fs::write(&sig, "signature { arguments: a; relation q(a, b); }").unwrap();
    let out = bindform(&["check", "--sig", sig.to_str().unwrap()]);
    assert_eq!(out.code, EXIT_SEMANTIC, "{}", out.stderr);
    let m = dir.path().join("bad.str");
    std::fs::write(&m, "structure { domain: 0; s: [a=0, b=0]; }").unwrap();
    let out = bindform(&["check", "--sig", &data("running.sig"), "--str", m.to_str().unwrap()]);
    assert_eq!(out.code, EXIT_SEMANTIC, "{}", out.stderr);
    std::fs::write(&m, "structure { domain: 0; s: [a=0 }").unwrap();
    let out = bindform(&["check", "--sig", &data("running.sig"), "--str", m.to_str().unwrap()]);
    assert_eq!(out.code, EXIT_USAGE, "{}", out.stderr);
}

#[test]
fn check_reports_free_placeholders() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("open.fol");
    std::fs::write(&f, "exists x. (a,x) r").unwrap();
    let out = bindform(&[
        "check",
        "--sig",
        &data("running.sig"),
        "--str",
        &data("running.str"),
        "--formula",
        f.to_str().unwrap(),
    ]);
    assert_eq!(out.code, EXIT_OK);
    assert!(out.stdout.ends_with("formula: free {b}\n"), "{}", out.stdout);
}
