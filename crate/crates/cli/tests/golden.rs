//! Golden fixtures for the command-line tool. Set `MONOFAN_BLESS=1` to rewrite expectations.

mod support;

use support::{compare_all, fixtures, run};

#[test]
fn fixtures_match() {
    assert!(fixtures().len() >= 40, "fixture corpus is missing files");
    let failures = compare_all(std::env::var_os("MONOFAN_BLESS").is_some());
    assert!(failures.is_empty(), "{}", failures.join("\n"));
}

#[test]
fn exit_codes_by_category() {
    for input in fixtures() {
        let name = input.file_stem().unwrap().to_string_lossy().into_owned();
        let (_, stderr, code) = run(&input);
        if name.starts_with("error_") {
            assert!(code == 1 || code == 2, "{name}: {code}");
            assert!(stderr.starts_with("error"), "{name}: {stderr}");
        } else {
            assert_eq!(code, 0, "{name}: {stderr}");
            assert!(stderr.is_empty(), "{name}: {stderr}");
        }
    }
}

#[test]
fn output_is_deterministic() {
    for input in fixtures() {
        assert_eq!(run(&input), run(&input), "{}", input.display());
    }
}
