use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "data", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_novsheaf")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn distance_fixture() {
    let o = run(&["dist", &data("e.nf"), &data("f.nf")]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "d_I lower=3 upper=3 exact=true\n");
}

#[test]
fn distance_witness() {
    let o = run(&["dist", "--witness", &data("e.nf"), &data("f.nf")]);
    let out = stdout(&o);
    assert!(out.starts_with("d_I lower=3 upper=3 exact=true\nepsilon=3\nalpha:\n"), "{}", out);
    assert!(out.contains("beta:"));
}

#[test]
fn cutoff_flag_truncates_normal_form_modules() {
    let o = run(&["dist", "--cutoff", "4", &data("e.nf"), &data("f.nf")]);
    assert_eq!(stdout(&o), "d_I lower=2 upper=2 exact=true\n");
}

#[test]
fn normal_form() {
    let o = run(&["nf", &data("m.mat")]);
    assert_eq!(stdout(&o), "torsion: [3, 1], free: 0\n");
    let o = run(&["nf", "--field", "fp:7", &data("m.mat")]);
    assert_eq!(stdout(&o), "torsion: [3, 1], free: 0\n");
}

#[test]
fn maurer_cartan() {
    let o = run(&["mc", "--witness", &data("curved.dga")]);
    assert_eq!(stdout(&o), "mc solved\n  x = -T^2 level=2\nresidual [0, 0, 0]\n");
    let o = run(&["mc", &data("obstructed.dga")]);
    assert!(stdout(&o).starts_with("mc obstructed level=1\nclass [y: 1]\n"));
}

#[test]
fn twisted() {
    let good = stdout(&run(&["tc", &data("good.tw")]));
    assert!(good.starts_with("residual nonzero=[]\nsquares_to_zero=true\n"), "{}", good);
    let broken = stdout(&run(&["tc", &data("broken.tw")]));
    assert!(broken.contains("squares_to_zero=false"));
}

#[test]
fn persistence_commands() {
    assert_eq!(stdout(&run(&["persist", "bars", &data("f.pl")])), "-1 inf\n0 1\n2 inf 1\n");
    assert_eq!(stdout(&run(&["persist", "intersect", &data("f.pl"), &data("g.pl")])), "lhs=4 rhs=4 equal=true\n");
    let s = stdout(&run(&["persist", "stability", &data("f.pl"), &data("g.pl"), &data("h.pl")]));
    assert!(s.ends_with("osc=1/4 holds=true\n"), "{}", s);
}

#[test]
fn classification() {
    assert_eq!(stdout(&run(&["cl", "T^(1/2)", "T^(1/2)"])), "monodromy 1 + T^(1/2)\nclass T^(1/2)\nisomorphic=true\n");
}

#[test]
fn exit_codes() {
    // domain errors
    assert_eq!(run(&["cl", "1"]).status.code(), Some(1));
    assert_eq!(run(&["persist", "intersect", &data("e.nf"), &data("f.nf")]).status.code(), Some(2));
    // parse and usage errors
    assert_eq!(run(&["nf", "/nonexistent/file"]).status.code(), Some(2));
    assert_eq!(run(&["nf", &data("e.nf")]).status.code(), Some(2));
    assert_eq!(run(&["dist", "--cutoff", "x", &data("e.nf"), &data("f.nf")]).status.code(), Some(2));
    assert_eq!(run(&["dist", "--field", "fp:4", &data("e.nf"), &data("f.nf")]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["demo", "nope"]).status.code(), Some(2));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn demo_is_deterministic() {
    let a = run(&["demo", "metric", "--seed", "9"]);
    let b = run(&["demo", "metric", "--seed", "9"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let c = run(&["demo", "intersection", "--seed", "1"]);
    let d = run(&["demo", "intersection", "--seed", "2"]);
    assert_ne!(c.stdout, d.stdout);
}
