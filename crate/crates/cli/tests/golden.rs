mod common;

use std::fs;

use common::{check_golden, run, INVOCATIONS};

#[test]
fn documented_invocations_match_goldens() {
    let failures: Vec<String> = INVOCATIONS
        .iter()
        .filter_map(|(name, args, code)| check_golden(name, args, *code).err())
        .collect();
    assert!(failures.is_empty(), "{failures:#?}");
}

#[test]
fn spec_draws_two_points() {
    let (_, dot, _) = run(&["spec", "--algebra", "z6.doc", "--topology", "zar", "--out", "dot"]);
    assert_eq!(dot.lines().filter(|l| l.trim_end().ends_with("\";")).count(), 2);
    assert!(!dot.contains("->"));
}

#[test]
fn emitted_scheme_reloads() {
    let out = std::env::temp_dir().join(format!("cohspec-p1-{}.toml", std::process::id()));
    let out_s = out.to_str().unwrap();
    assert_eq!(run(&["glue", "--glue", "p1.doc", "-o", out_s]).0, 0);
    let (code, report, _) = run(&["affine", "--scheme", out_s]);
    let (_, direct, _) = run(&["affine", "--glue", "p1.doc"]);
    let (_, gamma, _) = run(&["gamma", "--scheme", out_s]);
    fs::remove_file(&out).ok();
    assert_eq!(code, 1);
    assert_eq!(report, direct);
    assert_eq!(gamma, run(&["gamma", "--glue", "p1.doc"]).1);
}

#[test]
fn emitted_space_reloads_as_lattice_of_opens() {
    let (_, text, _) = run(&["duality", "--lattice", "diamond.doc"]);
    let space = cohspec::doc::load_space(&text).unwrap();
    let diamond = cohspec::doc::load_lattice(&std::fs::read_to_string(common::dir("fixtures").join("diamond.doc")).unwrap()).unwrap();
    assert!(cohspec::lattice::find_isomorphism(space.opens(), &diamond).is_some());
}

#[test]
fn input_errors_exit_2() {
    let (code, _, err) = run(&["spec", "--algebra", "missing.doc"]);
    assert_eq!(code, 2);
    assert!(err.contains("missing.doc"));
    let (code, _, err) = run(&["spec", "--algebra", "broken.doc"]);
    assert_eq!(code, 2);
    assert!(err.contains("line 2"), "{err}");
    let (code, _, _) = run(&["cover-check", "--algebra", "z6.doc", "--elements", "7"]);
    assert_eq!(code, 2);
    assert_eq!(run(&["frobnicate"]).0, 2);
    assert_eq!(run(&["sweep", "--catalog", "groups"]).0, 2);
}

#[test]
fn size_guard_exits_3() {
    let (code, _, err) = run(&["spec", "--algebra", "z6.doc", "--max-lattice", "1"]);
    assert_eq!(code, 3);
    assert!(err.contains("bound is 1"), "{err}");
}
