use std::fs;
use std::io::Write;
use std::path::Path;
use std::process::{Command, Output, Stdio};

use tempfile::TempDir;

const K4: &str = "1 2\n1 3\n1 4\n2 3\n2 4\n3 4\n";
const K4_MINUS_EDGE: &str = "1 2\n1 3\n1 4\n2 3\n2 4\n";
const COUNTEREXAMPLE: &str = "1 2\n1 3\n1 4\n2 3\n2 4\n3 4\n5 1\n5 2\n5 3\n";

fn tricert(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_tricert"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    let mut pipe = child.stdin.take().unwrap();
    pipe.write_all(stdin.unwrap_or("").as_bytes()).unwrap();
    drop(pipe);
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn file(dir: &TempDir, name: &str, text: &str) -> String {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

fn path(dir: &TempDir, name: &str) -> String {
    dir.path().join(name).to_str().unwrap().to_string()
}

#[test]
fn certify_k4_has_no_steps() {
    let dir = TempDir::new().unwrap();
    let g = file(&dir, "k4.txt", K4);
    let o = tricert(&["certify", &g], None);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).ends_with("STEPS 0\n"));
}

#[test]
fn check_reports_a_separation_pair() {
    let dir = TempDir::new().unwrap();
    let g = file(&dir, "g.txt", "1 2\n1 3\n1 4\n2 3\n2 4\n3 4\n1 5\n1 6\n2 5\n2 6\n5 6\n");
    let o = tricert(&["check", &g], None);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o), "WITNESS SEPPAIR 1 2\n");
    let w = file(&dir, "w.txt", &stdout(&o));
    assert_eq!(tricert(&["verify", &g, &w], None).status.code(), Some(0));

    let g = file(&dir, "k4m.txt", K4_MINUS_EDGE);
    let o = tricert(&["check", &g], None);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("WITNESS "));
}

#[test]
fn certify_pipes_into_verify() {
    let dir = TempDir::new().unwrap();
    let g = path(&dir, "g.txt");
    for seed in 0..5 {
        let gen = tricert(&["gen", "--n", "40", "--seed", &seed.to_string(), "--mix", "1:2:1", "-o", &g], None);
        assert_eq!(gen.status.code(), Some(0));
        let cert = tricert(&["certify", &g], None);
        assert_eq!(cert.status.code(), Some(0));
        let o = tricert(&["verify", &g, "-"], Some(&stdout(&cert)));
        assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    }
}

#[test]
fn gen_is_deterministic() {
    let a = tricert(&["gen", "--n", "25", "--seed", "3"], None);
    let b = tricert(&["gen", "--n", "25", "--seed", "3"], None);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(tricert(&["gen", "--n", "25", "--seed", "3", "--mix", "1:0:0"], None).status.code(), Some(2));
}

#[test]
fn tampered_certificate_is_rejected() {
    let dir = TempDir::new().unwrap();
    let g = file(&dir, "g.txt", COUNTEREXAMPLE);
    let cert = stdout(&tricert(&["certify", &g], None));
    // swap the last step for a duplicate of the first S0 edge
    let mut lines: Vec<&str> = cert.lines().collect();
    lines.pop();
    let tampered = format!("{}\nP 1 1 2\n", lines.join("\n"));
    let o = tricert(&["verify", &g, "-"], Some(&tampered));
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("REJECT "));

    let unknown = cert.replacen("\n1 2\n", "\n1 99\n", 1);
    assert_eq!(tricert(&["verify", &g, "-"], Some(&unknown)).status.code(), Some(1));
    assert_eq!(tricert(&["verify", &g, "-"], Some("tricert v1\nn 5\n")).status.code(), Some(2));
}

#[test]
fn prescribed_s0_and_basic() {
    let dir = TempDir::new().unwrap();
    let g = file(&dir, "g.txt", COUNTEREXAMPLE);
    let s0 = file(&dir, "s0.txt", K4);
    let o = tricert(&["certify", &g, "--s0", &s0], None);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).ends_with("STEPS 2\nP 2 1 5 2\nP 1 5 3\n"), "{}", stdout(&o));
    let nonbasic = file(&dir, "c.txt", &stdout(&o));
    assert_eq!(tricert(&["verify", &g, &nonbasic, "--basic"], None).status.code(), Some(1));

    let o = tricert(&["certify", &g, "--s0", &s0, "--basic"], None);
    assert!(stdout(&o).ends_with("STEPS 1\nX 5 1 5 1 1 5 2 1 5 3\n"), "{}", stdout(&o));
    let basic = file(&dir, "b.txt", &stdout(&o));
    assert_eq!(tricert(&["verify", &g, &basic, "--basic"], None).status.code(), Some(0));

    let o = tricert(&["transform", &basic, "--to", "nonbasic"], None);
    assert_eq!(stdout(&o), fs::read_to_string(&nonbasic).unwrap());
}

#[test]
fn transforms_round_trip_through_files() {
    let dir = TempDir::new().unwrap();
    let g = path(&dir, "g.txt");
    tricert(&["gen", "--n", "30", "--seed", "11", "-o", &g], None);
    let c = path(&dir, "c.txt");
    let e = path(&dir, "e.txt");
    let back = path(&dir, "back.txt");
    assert_eq!(tricert(&["certify", &g, "-o", &c], None).status.code(), Some(0));
    assert_eq!(tricert(&["transform", &c, "--graph", &g, "--to", "edge", "-o", &e], None).status.code(), Some(0));
    assert_eq!(tricert(&["verify", &g, &e], None).status.code(), Some(0));
    assert_eq!(tricert(&["transform", &e, "--to", "path", "-o", &back], None).status.code(), Some(0));
    assert_eq!(fs::read(&c).unwrap(), fs::read(&back).unwrap());

    let direct = tricert(&["certify", &g, "--edge-rep"], None);
    assert_eq!(direct.stdout, fs::read(&e).unwrap());

    let seq = stdout(&tricert(&["transform", &e, "--to", "contractions"], None));
    let n = fs::read_to_string(&g).unwrap().split_whitespace().collect::<std::collections::BTreeSet<_>>().len();
    assert_eq!(seq.lines().count(), n - 4);
    assert!(seq.lines().all(|l| l.starts_with("c ")));
}

#[test]
fn oracle_and_dot() {
    let dir = TempDir::new().unwrap();
    let g = file(&dir, "g.txt", COUNTEREXAMPLE);
    assert_eq!(tricert(&["oracle", &g], None).status.code(), Some(0));
    let bad = file(&dir, "bad.txt", K4_MINUS_EDGE);
    assert_eq!(tricert(&["oracle", &bad], None).status.code(), Some(1));

    let s0 = file(&dir, "s0.txt", K4);
    let c = path(&dir, "c.txt");
    tricert(&["certify", &g, "--s0", &s0, "-o", &c], None);
    let d = path(&dir, "d.dot");
    assert_eq!(tricert(&["dot", &g, &c, "--stage", "1", "-o", &d], None).status.code(), Some(0));
    let text = fs::read_to_string(&d).unwrap();
    assert!(text.starts_with("graph stage1 {"));
    assert!(text.contains("3 -- 5 [style=dashed, color=grey];"));
}

#[test]
fn usage_errors_exit_two() {
    let o = tricert(&["certify", "--frobnicate"], None);
    assert_eq!(o.status.code(), Some(2));
    assert!(!o.stderr.is_empty());
    assert_eq!(tricert(&["check", "/nonexistent/graph.txt"], None).status.code(), Some(2));
    assert_eq!(tricert(&["transform", "x", "--to", "sideways"], None).status.code(), Some(2));
    assert!(Path::new(env!("CARGO_BIN_EXE_tricert")).exists());
}
