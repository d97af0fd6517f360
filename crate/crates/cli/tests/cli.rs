use std::path::PathBuf;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_halftwist"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn tmp(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("halftwist-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, contents).unwrap();
    p
}

#[test]
fn rp2_partition_function() {
    let o = run(&["partition", "cl(1,0)", "rp2:1"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("e^{i*pi/4}"), "{out}");
    assert!(out.contains("0 + 1*z + 0*z^2 + 0*z^3"), "{out}");
    assert!(out.contains("0.7071067812+0.7071067812i"), "{out}");
    assert!(out.contains("ABK^1"), "{out}");
}

#[test]
fn partition_kv() {
    let o = run(&["--format", "kv", "partition", "clc(1)", "torus:r,r"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("value = -2 + 0*z + 0*z^2 + 0*z^3\n"), "{out}");
    assert!(out.contains("chi = 0\n"), "{out}");
    assert!(!out.contains("label"), "{out}");
}

#[test]
fn alpha_flag_scales() {
    let o = run(&["partition", "cl(1,0)", "sphere", "--alpha", "sqrt2"]);
    let out = stdout(&o);
    assert!(out.contains("Z(sphere) = 2\n"), "{out}");
    assert!(out.contains("2 * ABK^1"), "{out}");
    let o = run(&["states", "cl(1,0)", "--alpha", "-1"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("not a positive real"));
}

#[test]
fn classify_cl30() {
    let o = run(&["classify", "cl(3,0)"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("k = 3 (ABK^3)\n"));
    let o = run(&["classify", "clc(1)"]);
    assert!(stdout(&o).contains("not invertible (NS dim 2, R dim 2)"));
}

#[test]
fn check_matrix_algebra() {
    let o = run(&["check", "mat(1|1)"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    for i in 1..=13 {
        let line = out.lines().find(|l| l.starts_with(&format!("a{i} "))).unwrap();
        assert!(line.ends_with("pass"), "{line}");
    }
    assert!(out.contains("summary: all checks pass"));
}

#[test]
fn failing_custom_algebra_exits_one() {
    let exported = stdout(&run(&["export", "cl(1,0)"]));
    let broken: String = exported
        .lines()
        .map(|l| if l.starts_with("tau 0 0 ") { "tau 0 0 2".to_string() } else { l.to_string() })
        .collect::<Vec<_>>()
        .join("\n");
    let path = tmp("broken.alg", &broken);
    let arg = format!("file:{}", path.display());
    let o = run(&["check", &arg]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.contains("a13    Two half twists                    FAIL at (1,1)"), "{out}");

    let good = tmp("good.alg", &exported);
    let o = run(&["check", &format!("file:{}", good.display())]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        vec!["bogus"],
        vec!["partition", "cl(1,0)"],
        vec!["partition", "cl(1,0)", "cube"],
        vec!["partition", "cl(1,", "sphere"],
        vec!["check", "cl(1,0)", "--alpha", "zz"],
        vec!["abk", "g=1,c=0,q=[1,2|]"],
        vec!["--format", "json", "check", "cl(1,0)"],
        vec!["check", "file:/nonexistent/alg"],
    ] {
        let o = run(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn eval_reports_parse_position() {
    let d = tmp("bad.rib", "bottom 0\ncup\n  node oops\n");
    let o = run(&["eval", "cl(1,0)", d.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("line 3, column 8"), "{err}");
}

#[test]
fn eval_scalar_and_map() {
    let d = tmp("rp2.rib", &halftwist::tqft::rp2_diagram(1));
    let o = run(&["eval", "cl(1,0)", d.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("polar: e^{i*pi/4}"));

    let d = tmp("cup.rib", "cup\n");
    let o = run(&["--format", "kv", "eval", "cl(1,0)", d.to_str().unwrap()]);
    let out = stdout(&o);
    assert!(out.contains("inputs = 0\noutputs = 2\nnonzero = 2\n"), "{out}");
    assert!(out.contains("entry.->1,1 = "), "{out}");
    assert!(out.contains("entry.->G1,G1 = "), "{out}");
}

#[test]
fn eval_width_guard() {
    let d = tmp("wide.rib", "cup\ncup\n");
    let o = run(&["--max-width", "3", "eval", "cl(1,0)", d.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let o = run(&["--max-width", "4", "eval", "cl(1,0)", d.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn abk_and_stack() {
    let o = run(&["abk", "g=1,c=0,q=[2,2|]"]);
    assert!(stdout(&o).starts_with("ABK(g=1,c=0,q=[2,2|]) = -1\n"));
    let o = run(&["abk", "g=0,c=1,q=[|3]", "--format", "kv"]);
    assert!(stdout(&o).contains("polar = e^{i*7pi/4}\n"));

    let o = run(&["stack", "cl(1,0)", "cl(2,0)", "rp2:1", "klein:1,1"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("rp2:1        e^{i*3pi/4} = e^{i*pi/4} * i  ok"), "{out}");
    assert!(out.ends_with("summary: stacking holds\n"), "{out}");
}

#[test]
fn output_is_deterministic() {
    for args in [
        vec!["--format", "kv", "check", "cl(1,1)"],
        vec!["states", "mat(2|1)"],
        vec!["export", "[cl(1,0) (+) cl(0,1)]"],
        vec!["stack", "cl(1,0)", "mat(1|1)"],
    ] {
        let a = run(&args);
        let b = run(&args);
        assert!(a.status.success(), "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}
