#![allow(dead_code)]

use std::fs;
use std::path::PathBuf;
use std::process::Command;

/// Every documented invocation: golden file, arguments and expected exit code.
pub const INVOCATIONS: &[(&str, &[&str], i32)] = &[
    ("spec_z6.dot", &["spec", "--algebra", "z6.doc", "--topology", "zar", "--out", "dot"], 0),
    ("spec_z6.toml", &["spec", "--algebra", "z6.doc"], 0),
    ("spec_f1xy.toml", &["spec", "--algebra", "f1xy.doc"], 0),
    ("cover_z6.txt", &["cover-check", "--algebra", "z6.doc", "--elements", "2,3", "--topology", "zar"], 0),
    ("cover_f1xy.txt", &["cover-check", "--algebra", "f1xy.doc", "--elements", "x,y", "--topology", "zar"], 1),
    ("descent_z6.toml", &["descent", "--algebra", "z6.doc", "--elements", "2,3"], 0),
    ("descent_f1xy_trunc.toml", &["descent", "--algebra", "f1xy_trunc.doc", "--elements", "x,y"], 1),
    ("glue_p1.toml", &["glue", "--glue", "p1.doc"], 0),
    ("glue_p1.dot", &["glue", "--glue", "p1.doc", "--out", "dot"], 0),
    ("affine_p1.toml", &["affine", "--glue", "p1.doc"], 1),
    ("gamma_p1.toml", &["gamma", "--glue", "p1.doc"], 0),
    ("gamma_z6.toml", &["gamma", "--algebra", "z6.doc"], 0),
    ("affine_z6.toml", &["affine", "--algebra", "z6.doc"], 0),
    ("duality_diamond.dot", &["duality", "--lattice", "diamond.doc", "--out", "dot"], 0),
    ("duality_diamond.toml", &["duality", "--lattice", "diamond.doc"], 0),
    ("vanish_z6_mod2.toml", &["vanish", "--algebra", "z6.doc", "--module", "z6_mod2.doc"], 1),
    ("vanish_z6_zero.toml", &["vanish", "--algebra", "z6.doc", "--module", "zero.doc"], 0),
    ("sweep_rings6.toml", &["sweep", "--catalog", "rings:6", "--topology", "zar"], 0),
    ("axioms_rings4.toml", &["axioms", "--catalog", "rings:4", "--topology", "zar"], 0),
];

pub fn dir(sub: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests").join(sub)
}

/// Runs the binary from the fixtures directory: exit code, stdout, stderr.
pub fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_cohspec"))
        .args(args)
        .current_dir(dir("fixtures"))
        .output()
        .expect("binary runs");
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

/// Runs twice and compares exit code and stdout with `golden/<name>`.
/// With `COHSPEC_BLESS` set the golden file is rewritten first.
pub fn check_golden(name: &str, args: &[&str], code: i32) -> Result<(), String> {
    let (c1, out1, err1) = run(args);
    let (c2, out2, _) = run(args);
    if c1 != code {
        return Err(format!("{args:?}: exit {c1}, expected {code}: {err1}"));
    }
    if (c1, &out1) != (c2, &out2) {
        return Err(format!("{args:?}: output differs between runs"));
    }
    let path = dir("golden").join(name);
    if std::env::var_os("COHSPEC_BLESS").is_some() {
        fs::create_dir_all(dir("golden")).unwrap();
        fs::write(&path, &out1).unwrap();
    }
    let expected = fs::read_to_string(&path).map_err(|_| format!("missing golden file {}", path.display()))?;
    if out1 != expected {
        return Err(format!("{args:?} differs from {name}"));
    }
    Ok(())
}
