use std::path::PathBuf;
use std::process::{Command, Output};

fn polycf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_polycf")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

/// A scratch file unique to this test process.
fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("polycf-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

const PLANE_CONE: &str = "slset dim=2\nlin c= 0 0 | p= 1 2 ; p= 0 1\nend\n";

#[test]
fn identity_word_exits_zero() {
    let out = polycf(&["group", "eval", "--group", "zn:3", "--word", "x1x2x3X1X2X3"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with("# polycf "), "{text}");
    assert!(text.contains("identity: true"), "{text}");
}

#[test]
fn non_identity_word_is_reported() {
    let out = polycf(&["group", "eval", "--group", "bs:1,2", "--word", "tx"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("identity: false"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(polycf(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(polycf(&["group", "eval", "--group", "zn:2"]).status.code(), Some(2));
    assert_eq!(polycf(&["selftest", "--box", "0"]).status.code(), Some(2));
}

#[test]
fn domain_errors_exit_one() {
    let out = polycf(&["group", "eval", "--group", "nonsense:1", "--word", "x"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).starts_with("error:"));
}

#[test]
fn corrupted_input_names_the_line() {
    let bad = scratch("bad.slset", "slset dim=2\nlin c= 0 0 | p= 1 2\nlin c= 0 x | p= 1 1\nend\n");
    let out = polycf(&["slset", "show", "--in", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let err = stderr(&out);
    assert!(err.contains("line 3"), "{err}");
    assert!(err.contains("bad.slset"), "{err}");
}

#[test]
fn missing_file_exits_one() {
    let out = polycf(&["slset", "show", "--in", "/nonexistent/polycf/input.slset"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn membership_prints_a_certificate() {
    let input = scratch("cone.slset", PLANE_CONE);
    let out = polycf(&["slset", "member", "--in", input.to_str().unwrap(), "--vec", "2 5"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("member: true"), "{text}");
    assert!(text.contains("component: 1 coefficients: 2 1"), "{text}");
}

#[test]
fn report_file_carries_version_seed_and_caps() {
    let report = std::env::temp_dir().join(format!("polycf-cli-report-{}.txt", std::process::id()));
    let out = polycf(&["--seed", "17", "--report", report.to_str().unwrap(), "selftest", "--box", "3"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&report).unwrap();
    let header = text.lines().next().unwrap();
    assert_eq!(header, format!("# polycf {} command=selftest seed=17 caps[box=3]", env!("CARGO_PKG_VERSION")));
    assert!(text.lines().last().unwrap().contains("all suites passed"), "{text}");
    std::fs::remove_file(report).ok();
}

#[test]
fn seeded_runs_are_byte_identical() {
    for args in [
        &["--seed", "5", "group", "random", "--group", "gc:1,-2", "--count", "40"][..],
        &["--seed", "9", "selftest", "--box", "3"][..],
    ] {
        let first = polycf(args);
        let second = polycf(args);
        assert_eq!(first.status.code(), Some(0));
        assert_eq!(first.stdout, second.stdout, "{args:?}");
    }
}

#[test]
fn refutation_replays() {
    let input = scratch("refute.slset", PLANE_CONE);
    let out = polycf(&["witness", "refute", "--in", input.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("replayed: true"), "{text}");
}

#[test]
fn builtin_recognizer_runs() {
    let accept = polycf(&["pda", "builtin", "--name", "zk:2", "--word", "x1x2X1X2"]);
    assert_eq!(accept.status.code(), Some(0));
    let reject = polycf(&["pda", "builtin", "--name", "zk:2", "--word", "x1x2X1"]);
    assert_eq!(reject.status.code(), Some(0));
    assert_ne!(stdout(&accept), stdout(&reject));
}
