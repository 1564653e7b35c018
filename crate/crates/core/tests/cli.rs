use std::path::PathBuf;
use std::process::Command;

use locality::cli::{ContextsResult, DescentResult, NetResult, ReportEnvelope, ValuationsResult};
use locality::independence::HierarchyReport;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples/data").join(name)
}

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn run(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_locality")).args(args).output().unwrap();
    Run {
        code: out.status.code().unwrap(),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn json(cmd: &str, file: &str, extra: &[&str]) -> (i32, ReportEnvelope) {
    let path = data(file);
    let mut args = vec![cmd, path.to_str().unwrap(), "--json"];
    args.extend_from_slice(extra);
    let r = run(&args);
    let env: ReportEnvelope = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(env.exit_status, r.code);
    assert_eq!(env.command, cmd);
    (r.code, env)
}

#[test]
fn check_pair_reports_the_hierarchy() {
    let (code, env) = json("check-pair", "four_point.json", &[]);
    assert_eq!(code, 0);
    let h: HierarchyReport = serde_json::from_value(env.result).unwrap();
    assert!(h.cstar_independent.is_true());
    assert!(h.unit_law.is_false());
    assert_eq!(env.ambient.len(), 4);
    assert_eq!(env.input_sha256.unwrap().len(), 64);
}

#[test]
fn failed_requirement_exits_two() {
    let path = data("four_point.json");
    let p = path.to_str().unwrap();
    assert_eq!(run(&["check-pair", p, "--require", "cstar-independence"]).code, 0);
    assert_eq!(run(&["check-pair", p, "--require", "unit-law"]).code, 2);
    assert_eq!(run(&["descent", p, "--require", "sheaf"]).code, 2);
    assert_eq!(run(&["check-pair", p, "--require", "nonsense"]).code, 1);
}

#[test]
fn descent_round_trips() {
    let (code, env) = json("descent", "four_point.json", &[]);
    assert_eq!(code, 0);
    let d: DescentResult = serde_json::from_value(env.result).unwrap();
    assert_eq!((d.descent.map.source_size, d.descent.map.target_size), (15, 4));
    assert!(!d.descent.sheaf);
    assert_eq!(d.stability_violations.len(), 11);
}

#[test]
fn matrix_pairs_are_refused_by_descent() {
    let path = data("pauli.json");
    let r = run(&["descent", path.to_str().unwrap()]);
    assert_eq!(r.code, 1);
    assert!(r.stderr.contains("partition engine"));
    let (code, env) = json("check-pair", "pauli.json", &[]);
    assert_eq!(code, 0);
    let h: HierarchyReport = serde_json::from_value(env.result).unwrap();
    assert!(h.microcausality.is_false());
}

#[test]
fn net_reports() {
    let (code, env) = json("check-net", "diamond_net.json", &[]);
    assert_eq!(code, 0);
    let n: NetResult = serde_json::from_value(env.result).unwrap();
    let s = n.report.unwrap().summary;
    assert!(s.strongly_local && !s.sheaf);

    let (code, env) = json("check-net", "isotony_violation.json", &[]);
    assert_eq!(code, 2);
    let n: NetResult = serde_json::from_value(env.result).unwrap();
    assert!(!n.validation.valid && n.report.is_none());

    let (code, env) = json("check-net", "chain_net.json", &[]);
    assert_eq!(code, 0);
    let s = serde_json::from_value::<NetResult>(env.result).unwrap().report.unwrap().summary;
    assert_eq!(s.spacelike_pairs, 0);
    assert!(s.microcausal && s.extended_locality && s.strongly_local && s.cstar_independent && s.sheaf);
}

#[test]
fn valuations_command() {
    let (code, env) = json("valuations", "halves.json", &[]);
    assert_eq!(code, 0);
    let v: ValuationsResult = serde_json::from_value(env.result).unwrap();
    assert!(!v.independence.independent);
    assert!(!v.extension.extended);

    let (code, env) = json("valuations", "four_point.json", &["--mu1", "1/4,3/4"]);
    assert_eq!(code, 0);
    let v: ValuationsResult = serde_json::from_value(env.result).unwrap();
    assert!(v.extension.extended && v.independence.independent);

    let path = data("four_point.json");
    assert_eq!(run(&["valuations", path.to_str().unwrap(), "--mu1", "1/2,1/3"]).code, 1);
}

#[test]
fn contexts_command() {
    let (code, env) = json("contexts", "four_point.json", &["--algebra", "A"]);
    assert_eq!(code, 0);
    let c: ContextsResult = serde_json::from_value(env.result).unwrap();
    assert_eq!(c.count, 2);
}

#[test]
fn output_is_deterministic() {
    for (cmd, file) in [("check-pair", "qubit_pair.json"), ("descent", "four_point.json"), ("valuations", "halves.json"), ("check-net", "diamond_net.json")] {
        let path = data(file);
        let p = path.to_str().unwrap();
        let a = run(&[cmd, p, "--json"]);
        let b = run(&[cmd, p, "--json"]);
        assert_eq!(a.stdout, b.stdout, "{cmd}");
        let t = run(&[cmd, p]);
        assert_eq!(t.stdout, run(&[cmd, p]).stdout);
    }
}

#[test]
fn dot_files_are_written() {
    let dir = tempfile::tempdir().unwrap();
    for (cmd, file) in [("descent", "four_point.json"), ("check-net", "diamond_net.json"), ("contexts", "halves.json")] {
        let out = dir.path().join(format!("{cmd}.dot"));
        let path = data(file);
        let r = run(&[cmd, path.to_str().unwrap(), "--dot", out.to_str().unwrap()]);
        assert_eq!(r.code, 0, "{}", r.stderr);
        let text = std::fs::read_to_string(&out).unwrap();
        assert!(text.starts_with("digraph") && text.trim_end().ends_with('}'));
    }
    let path = data("halves.json");
    let out = dir.path().join("x.dot");
    assert_eq!(run(&["check-pair", path.to_str().unwrap(), "--dot", out.to_str().unwrap()]).code, 1);
}

#[test]
fn bad_invocations_exit_one() {
    assert_eq!(run(&["check-pair"]).code, 1);
    assert_eq!(run(&["frobnicate", "x.json"]).code, 1);
    assert_eq!(run(&["check-pair", "/nonexistent/file.json"]).code, 1);
    let r = run(&["check-pair", data("unknown_algebra.json").to_str().unwrap()]);
    assert_eq!(r.code, 1);
    assert!(r.stderr.starts_with("error:"));
    assert_eq!(run(&["--help"]).code, 0);
}

#[test]
fn resource_guard_is_reported() {
    let path = data("four_point.json");
    let r = run(&["descent", path.to_str().unwrap(), "--max-bell", "3"]);
    assert_eq!(r.code, 1);
    assert!(!r.stderr.is_empty());
}
