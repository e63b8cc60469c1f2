#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::Command;

use bgsplit_cli::{run_command, Outcome};

pub fn data(name: &str) -> String {
    format!("tests/data/{name}")
}

/// In-process run; paths are relative to the crate root.
pub fn run(args: &[&str]) -> Outcome {
    run_command(std::iter::once("bgsplit").chain(args.iter().copied()))
}

/// Runs the built binary and returns (exit code, stdout, stderr).
pub fn run_binary(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_bgsplit"))
        .args(args)
        .current_dir(env!("CARGO_MANIFEST_DIR"))
        .output()
        .expect("spawn bgsplit");
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).expect("utf-8"),
        String::from_utf8(out.stderr).expect("utf-8"),
    )
}

fn golden_path(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name)
}

/// Compares against `tests/golden/<name>`; `UPDATE_GOLDEN=1` rewrites it.
pub fn check_golden(name: &str, actual: &str) -> Result<(), String> {
    let path = golden_path(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, actual).map_err(|e| e.to_string())?;
        return Ok(());
    }
    let expected =
        std::fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
    if expected == actual {
        Ok(())
    } else {
        Err(format!(
            "{name} differs\n--- expected\n{expected}\n--- actual\n{actual}"
        ))
    }
}

/// Golden cases: (golden file, argv).
pub const GOLDEN_CASES: &[(&str, &[&str])] = &[
    (
        "split_euler.json",
        &["split", "tests/data/euler.bundle", "--json"],
    ),
    ("split_euler.txt", &["split", "tests/data/euler.bundle"]),
    (
        "split_jump.json",
        &["split", "tests/data/jump.bundle", "--json"],
    ),
    (
        "split_scrambled.txt",
        &["split", "tests/data/scrambled.bundle"],
    ),
    ("h0_o3.txt", &["h0", "tests/data/o3.bundle"]),
    ("h0_o3.json", &["h0", "tests/data/o3.bundle", "--json"]),
    (
        "h0_scrambled.json",
        &["h0", "tests/data/scrambled.bundle", "--json"],
    ),
    (
        "iso_true.json",
        &[
            "iso",
            "tests/data/euler.bundle",
            "tests/data/scrambled_trivial.bundle",
            "--json",
        ],
    ),
    (
        "iso_false.json",
        &[
            "iso",
            "tests/data/euler.bundle",
            "tests/data/jump.bundle",
            "--json",
        ],
    ),
    (
        "random_2_-1_-1.bundle",
        &[
            "random",
            "--type",
            "2,-1,-1",
            "--gauge-degree",
            "2",
            "--seed",
            "11",
        ],
    ),
    (
        "profile_jump.txt",
        &[
            "profile",
            "tests/data/jump.bundle",
            "--from",
            "-3",
            "--to",
            "2",
        ],
    ),
];

pub fn check_goldens() -> Result<(), String> {
    for (golden, args) in GOLDEN_CASES {
        let out = run(args);
        if out.code != 0 {
            return Err(format!("{args:?} exited {}: {}", out.code, out.stderr));
        }
        check_golden(golden, &out.stdout)?;
    }
    Ok(())
}

/// `random -o`, `split -o`, `verify` through the binary; checks that the
/// generated bundle matches its golden, the recovered type matches, and the
/// certificate verifies.
pub fn random_split_verify(dir: &Path) -> Result<(), String> {
    let bundle = dir.join("r.bundle");
    let fact = dir.join("r.fact");
    let b = bundle.to_str().unwrap();
    let f = fact.to_str().unwrap();
    let steps: [&[&str]; 2] = [
        &[
            "random",
            "--type",
            "2,-1,-1",
            "--gauge-degree",
            "2",
            "--seed",
            "11",
            "-o",
            b,
        ],
        &["split", b, "-o", f],
    ];
    for args in steps {
        let (code, _, err) = run_binary(args);
        if code != 0 {
            return Err(format!("{args:?} exited {code}: {err}"));
        }
    }
    let text = std::fs::read_to_string(&bundle).map_err(|e| e.to_string())?;
    check_golden("random_2_-1_-1.bundle", &text)?;
    let (code, out, err) = run_binary(&["verify", b, f, "--json"]);
    let v: serde_json::Value = serde_json::from_str(&out).map_err(|e| format!("{e}: {err}"))?;
    if code != 0 || v["result"]["verified"] != true {
        return Err(format!("verify exited {code}: {out}{err}"));
    }
    let (_, out, _) = run_binary(&["split", b, "--json"]);
    let v: serde_json::Value = serde_json::from_str(&out).map_err(|e| e.to_string())?;
    if v["result"]["type"] != serde_json::json!([2, -1, -1]) {
        return Err(format!("recovered type {}", v["result"]["type"]));
    }
    // A tampered certificate must be rejected.
    let tampered = std::fs::read_to_string(&fact)
        .map_err(|e| e.to_string())?
        .replacen("D:\nz^-2", "D:\nz^-3", 1);
    std::fs::write(&fact, tampered).map_err(|e| e.to_string())?;
    let (code, out, _) = run_binary(&["verify", b, f]);
    if code != 0 || out.trim() != "false" {
        return Err(format!("tampered certificate: exit {code}, output {out}"));
    }
    Ok(())
}

/// One case per exit code: (expected code, argv).
pub const EXIT_CASES: &[(i32, &[&str])] = &[
    (0, &["deg", "tests/data/euler.bundle"]),
    (1, &["h0", "tests/data/singular.bundle"]),
    (2, &["h0", "tests/data/malformed.bundle"]),
    (2, &["frobnicate"]),
    (3, &["h0", "tests/data/scrambled.bundle", "--window", "0"]),
];

pub fn check_exit_codes() -> Result<(), String> {
    for (expected, args) in EXIT_CASES {
        let (code, _, err) = run_binary(args);
        if code != *expected {
            return Err(format!("{args:?}: exit {code}, expected {expected}: {err}"));
        }
    }
    Ok(())
}
