use std::process::{Command, Output};

use darboux::orbit::OrbitGraph;

fn darboux(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_darboux"))
        .args(args)
        .env_remove("DARBOUX_SIGN")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn lift_prints_tuple_and_pivot() {
    let o = darboux(&["lift", "-i", "0,0,0,0,x", "-d", "px"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "-1/x, 0, 0, 0, x\nf = x\n");
}

#[test]
fn zero_pivot_exits_one() {
    let o = darboux(&["lift", "-i", "0,0,0,0,0", "-d", "px"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("pivot f = 0: transformation does not exist"));
}

#[test]
fn parse_error_exits_two_with_position() {
    let o = darboux(&["invariants", "-e", "Dx^2*Dy + Dx*Dy^2 + x y"]);
    assert_eq!(o.status.code(), Some(2));
    let err = stderr(&o);
    assert!(err.contains("line 1, column 23"), "{err}");
    assert!(err.contains("`y`"), "{err}");
}

#[test]
fn unknown_flag_is_usage_error() {
    let o = darboux(&["chain", "--n", "1", "--bogus"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn sign_env_overrides_default_only() {
    let bin = env!("CARGO_BIN_EXE_darboux");
    let run = |extra: &[&str]| {
        let o = Command::new(bin)
            .args(["lift", "-i", "0,0,0,0,x", "-d", "px"])
            .args(extra)
            .env("DARBOUX_SIGN", "derived")
            .output()
            .unwrap();
        stdout(&o)
    };
    assert!(run(&[]).starts_with("1/x, 0, 0, 0, x"));
    assert!(run(&["--sign", "paper"]).starts_with("-1/x, 0, 0, 0, x"));
}

#[test]
fn chain_reports_verification() {
    let o = darboux(&["chain", "--n", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("verified"));
}

#[test]
fn factor_reports_failing_stage() {
    let l0 = darboux::fixtures::L0;
    let o = darboux(&["factor", "-e", l0, "-s", "px,pxy,py"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 3);
    let o = darboux(&["factor", "-e", l0, "-s", "py,px,pxy"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("stage 1"));
}

#[test]
fn transform_without_decomposition_exits_one() {
    let o = darboux(&["transform", "-e", "Dx^2*Dy + Dx*Dy^2 + x*Dy", "-d", "px"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn verify_json_lists_identities() {
    let o = darboux(&["verify", "-e", "(Dx*Dy + Dy^2)*(Dx + y) + x", "-d", "px", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    for name in darboux::darboux::CORE_IDENTITIES {
        assert!(out.contains(name), "{name}");
    }
}

#[test]
fn orbit_json_round_trips() {
    let o = darboux(&["orbit", "-i", "0,0,0,0,x*y", "--depth", "4", "--max-nodes", "50", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let g = OrbitGraph::from_json(&stdout(&o)).unwrap();
    assert_eq!(g.nodes.len(), 9);
    assert!(!g.truncated);
}

#[test]
fn orbit_dot() {
    let o = darboux(&["orbit", "-i", "0,0,x,0,1", "--depth", "1"]);
    let out = stdout(&o);
    assert!(out.starts_with("digraph orbit {"));
    assert!(out.contains("n0 -> n1 [label=\"p_x\"]"));
}

#[test]
fn fixtures_is_deterministic() {
    let dir = std::env::temp_dir().join(format!("darboux-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let (a, b) = (dir.join("a.md"), dir.join("b.md"));
    let o1 = darboux(&["fixtures", "--errata", a.to_str().unwrap()]);
    let o2 = darboux(&["fixtures", "--errata", b.to_str().unwrap()]);
    assert_eq!(o1.status.code(), Some(0));
    let (ea, eb) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert_eq!(ea, eb);
    assert_eq!(
        stdout(&o1).replace(a.to_str().unwrap(), ""),
        stdout(&o2).replace(b.to_str().unwrap(), "")
    );
    assert!(String::from_utf8(ea).unwrap().starts_with("# Errata"));
    std::fs::remove_dir_all(&dir).unwrap();
}
