use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::NamedTempFile;

fn copwin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_copwin"))
        .args(args)
        .env_remove("RUST_LOG")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn figure_file(name: &str) -> NamedTempFile {
    let mut f = NamedTempFile::new().unwrap();
    let out = copwin(&["corpus", "emit", name]);
    assert!(out.status.success());
    f.write_all(&out.stdout).unwrap();
    f
}

fn path(f: &NamedTempFile) -> &str {
    f.path().to_str().unwrap()
}

#[test]
fn rank_of_figure_one() {
    let f = figure_file("fig1");
    let out = copwin(&["rank", path(&f)]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["ranks"]["a"], 1);
    assert_eq!(v["ranks"]["c"], 3);
    assert_eq!(v["alpha"], 3);
    assert_eq!(v["class"], "R1");
    assert_eq!(v["capture_time"], 2);
}

#[test]
fn escape_exit_codes() {
    let f = figure_file("fig2");
    let out = copwin(&["capture-time", path(&f)]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["capture_time"], "escape");
    let out = copwin(&["capture-time", "--allow-escape", path(&f)]);
    assert_eq!(out.status.code(), Some(0));
    let out = copwin(&["classify", path(&f)]);
    assert_eq!(json(&out)["class"], "NotCopWin");
    assert_eq!(json(&out)["alpha"], "inf");
}

#[test]
fn simulate_figure_one() {
    let f = figure_file("fig1");
    let out = copwin(&[
        "simulate",
        path(&f),
        "--cop",
        "lowerway",
        "--robber",
        "higherway",
        "--seed",
        "7",
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let v = json(&out);
    assert_eq!(v["outcome"]["result"], "caught");
    assert_eq!(v["outcome"]["cop_moves"], 2);
    assert_eq!(v["conditions"]["LW"], true);
}

#[test]
fn simulate_rejects_bad_strategies() {
    let out = copwin(&["simulate", "corpus:fig1", "--cop", "higherway"]);
    assert_eq!(out.status.code(), Some(1));
    let out = copwin(&["simulate", "corpus:fig1", "--robber", "nosuch"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn project_and_oracle() {
    let out = copwin(&["project", "corpus:fig1", "--k", "3", "--vertex", "a"]);
    assert_eq!(json(&out), serde_json::json!(["c", "d", "e"]));
    let out = copwin(&["project", "corpus:fig1", "--k", "4", "--vertex", "a"]);
    assert_eq!(out.status.code(), Some(1));
    let out = copwin(&["project", "corpus:fig1", "--k", "x", "--vertex", "a"]);
    assert_eq!(out.status.code(), Some(2));
    let out = copwin(&["project", "corpus:fig1", "--k", "2", "--vertex", "zz"]);
    assert_eq!(out.status.code(), Some(1));

    let out = copwin(&["oracle", "corpus:fig5"]);
    let v = json(&out);
    assert_eq!(v["game_value"], 5);
    assert!(v["optimal_starts"]
        .as_array()
        .unwrap()
        .contains(&"x".into()));
    let out = copwin(&["oracle", "--full", "corpus:path_2"]);
    assert_eq!(json(&out)["table"].as_array().unwrap().len(), 8);
}

#[test]
fn dismantle_and_verify() {
    let out = copwin(&["dismantle", "corpus:fig1"]);
    assert_eq!(
        json(&out)["ordering"],
        serde_json::json!(["a", "g", "h", "b", "f", "c", "d", "e"])
    );
    let out = copwin(&["dismantle", "corpus:fig2"]);
    assert_eq!(json(&out)["ordering"], "none");
    let out = copwin(&[
        "dismantle",
        "corpus:fig1",
        "--verify",
        "--order",
        "a,d,e,g,h,f,c,b",
    ]);
    assert_eq!(json(&out)["dismantling"], true);
    let out = copwin(&["dismantle", "corpus:fig1", "--verify", "--order", "a,b"]);
    assert_eq!(out.status.code(), Some(1));
    let out = copwin(&["dismantle", "corpus:fig1", "--verify"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn twins_report() {
    let out = copwin(&["twins", "corpus:fig5"]);
    let v = json(&out);
    assert_eq!(v["iteratively_twin_free"], false);
    assert!(v["k_twin_pairs"]["4"]
        .as_array()
        .unwrap()
        .contains(&serde_json::json!(["v4", "v6"])));
    let out = copwin(&["twins", "--verify", "corpus:path_5"]);
    assert_eq!(json(&out)["verification"]["passed"], true);
    let out = copwin(&["twins", "--verify", "corpus:fig5"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn corpus_listing_and_emit() {
    let out = copwin(&["corpus", "list"]);
    assert!(json(&out).as_array().unwrap().contains(&"fig3".into()));
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("fig4.g");
    let out = copwin(&["corpus", "emit", "fig4", "-o", target.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&target).unwrap();
    assert!(text.starts_with("10 12\n"));
    let out = copwin(&["corpus", "emit", "fig9"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn parse_and_usage_errors_exit_two() {
    let mut f = NamedTempFile::new().unwrap();
    writeln!(f, "2 1\na\nb\na c").unwrap();
    let out = copwin(&["rank", path(&f)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 4"));
    assert_eq!(copwin(&["rank", "/no/such/file"]).status.code(), Some(2));
    assert_eq!(copwin(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(copwin(&["rank"]).status.code(), Some(2));
    assert_eq!(
        copwin(&["verify-theorems", "--max-n", "6"]).status.code(),
        Some(2)
    );
}

#[test]
fn pretty_format_is_the_same_document() {
    let a = json(&copwin(&["rank", "corpus:fig3"]));
    let out = copwin(&["--format", "pretty", "rank", "corpus:fig3"]);
    assert!(String::from_utf8_lossy(&out.stdout).contains("\n  "));
    assert_eq!(json(&out), a);
}

#[test]
fn verify_theorems_is_deterministic() {
    let run = || {
        let out = Command::new(env!("CARGO_BIN_EXE_copwin"))
            .args([
                "verify-theorems",
                "--max-n",
                "4",
                "--samples",
                "10",
                "--seed",
                "3",
            ])
            .env("COPWIN_THREADS", "2")
            .output()
            .unwrap();
        assert_eq!(out.status.code(), Some(0));
        json(&out)
    };
    let a = run();
    assert_eq!(a["all_passed"], true, "{a:#}");
    assert_eq!(a["graphs"], 1 + 2 + 8 + 64 + 10 + 5);
    assert_eq!(a, run());
}

#[test]
fn bad_thread_setting_is_a_usage_error() {
    let out = Command::new(env!("CARGO_BIN_EXE_copwin"))
        .args(["rank", "corpus:fig1"])
        .env("COPWIN_THREADS", "many")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn stdin_graph() {
    use std::process::Stdio;
    let mut child = Command::new(env!("CARGO_BIN_EXE_copwin"))
        .args(["classify", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(b"3 3\nx\ny\nz\nx y\ny z\nz x\n")
        .unwrap();
    let out = child.wait_with_output().unwrap();
    let v = json(&out);
    assert_eq!(v["alpha"], 1);
    assert_eq!(v["class"], "R0");
}
