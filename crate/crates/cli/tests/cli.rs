use std::io::Write;
use std::process::{Command, Output, Stdio};

fn monofan(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_monofan"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn reads_standard_input() {
    let o = monofan(&["saturate"], "monoid P embedded ambient Z^1 gens [2] [3]\n");
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("summary: P^sat = N, new generators: [1]"));
}

#[test]
fn implicit_target_is_last_fitting_definition() {
    let doc = "monoid A free 1\nmonoid B free 3\nfan X projective 1\n";
    let o = monofan(&["faces"], doc);
    assert!(stdout(&o).starts_with("# faces B\n"), "{}", stdout(&o));
    let o = monofan(&["spec"], doc);
    assert!(stdout(&o).starts_with("# spec X\n"));
}

#[test]
fn unknown_command_is_a_usage_error() {
    let o = monofan(&["frobnicate"], "monoid P free 1\n");
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn nothing_to_run_is_an_operand_error() {
    let o = monofan(&["classify-refinement"], "monoid P free 1\n");
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn dot_is_rejected_where_it_has_no_meaning() {
    let o = monofan(&["faces", "--dot"], "monoid P free 1\n");
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn parse_errors_carry_positions() {
    for (doc, at) in [
        ("monoid P embedded ambient Z^2 gens [1,0] [0,1,2]\n", "1:"),
        ("monoid P free 2\nideal I in Q maximal\n", "2:"),
        ("monoid P free\n", "1:"),
        ("monoid P free 2\nmonoid P free 1\n", "2:"),
        ("monoid P embedded ambient Z^1 gens [1\n", "1:"),
        ("monoid P embedded ambient Z/0 gens [1]\n", "1:"),
    ] {
        let o = monofan(&["faces"], doc);
        assert_eq!(o.status.code(), Some(2), "{doc}");
        let err = String::from_utf8(o.stderr).unwrap();
        assert!(err.starts_with(&format!("error: {at}")), "{doc}: {err}");
    }
}

#[test]
fn json_is_well_formed() {
    let doc = "monoid P free 2\nfan X projective 2\nfaces P\nspec X\n";
    for cmd in ["faces", "spec"] {
        let o = monofan(&[cmd, "--json"], doc);
        assert_eq!(o.status.code(), Some(0));
        let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
        assert_eq!(v.as_array().unwrap().len(), 1);
    }
    let v: serde_json::Value = serde_json::from_str(&stdout(&monofan(&["spec", "--json"], doc))).unwrap();
    assert_eq!(v[0]["result"]["points"], "7");
    assert_eq!(v[0]["result"]["global sections"], "<> in Z^2 (0)");
}

#[test]
fn projective_point_counts() {
    for n in 1..=4u32 {
        let o = monofan(&["spec"], &format!("fan X projective {n}\n"));
        let want = format!("points: {}\n", 2u64.pow(n + 1) - 1);
        assert!(stdout(&o).contains(&want), "n = {n}");
    }
}
