//! Runs the fixture corpus: each `fixtures/*.mf` starts with a `#! <args>` line; stdout,
//! stderr and the exit code must match the sibling `.out`, `.err` and `.code` files.
#![allow(dead_code)]

use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

pub fn fixtures() -> Vec<PathBuf> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures");
    let mut v: Vec<PathBuf> = fs::read_dir(dir)
        .expect("fixture directory")
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "mf"))
        .collect();
    v.sort();
    v
}

pub fn run(input: &Path) -> (String, String, i32) {
    let text = fs::read_to_string(input).unwrap();
    let args = text.lines().next().and_then(|l| l.strip_prefix("#! ")).expect("fixture must start with '#! <args>'");
    let out = Command::new(env!("CARGO_BIN_EXE_monofan"))
        .args(args.split_whitespace())
        .arg(input)
        .output()
        .expect("binary runs");
    (
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
        out.status.code().expect("exit code"),
    )
}

/// Compares every fixture, or rewrites the expectations when `bless` is set.
pub fn compare_all(bless: bool) -> Vec<String> {
    let mut failures = Vec::new();
    for input in &fixtures() {
        let (stdout, stderr, code) = run(input);
        let code = format!("{code}\n");
        for (ext, got) in [("out", &stdout), ("err", &stderr), ("code", &code)] {
            let path = input.with_extension(ext);
            if bless {
                fs::write(&path, got).unwrap();
                continue;
            }
            let want = fs::read_to_string(&path).unwrap_or_default();
            if &want != got {
                failures.push(format!("{}.{ext}:\n--- expected\n{want}--- got\n{got}", input.display()));
            }
        }
    }
    failures
}
