use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn condrev(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_condrev"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

/// Bundled fixtures written to a fresh directory.
struct Figures {
    dir: TempDir,
}

impl Figures {
    fn new() -> Figures {
        let dir = TempDir::new().unwrap();
        let o = condrev(&["figures", "--out", dir.path().to_str().unwrap()]);
        assert!(o.status.success(), "{}", stderr(&o));
        Figures { dir }
    }

    fn path(&self, name: &str) -> String {
        self.dir.path().join(format!("{name}.scenario")).to_str().unwrap().to_string()
    }

    fn run(&self, cmd: &str, name: &str, extra: &[&str]) -> Output {
        let path = self.path(name);
        let mut args = vec![cmd, "--scenario", path.as_str()];
        args.extend_from_slice(extra);
        condrev(&args)
    }
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

#[test]
fn figures_writes_fixtures_and_manifest() {
    let f = Figures::new();
    let fig1 = std::fs::read_to_string(f.path("fig1")).unwrap();
    assert!(fig1.contains(r#"prior = "8 < 7 < 6 < 4,5 < 1,2,3""#));
    assert!(std::fs::read_to_string(f.path("example1")).unwrap().contains(r#"prior = "x,y < z,w""#));
    assert!(std::fs::read_to_string(f.path("example2")).unwrap().contains(r#"prior = "w < x,y < z""#));
    let manifest = std::fs::read_to_string(f.dir.path().join("MANIFEST.txt")).unwrap();
    for name in ["fig1", "fig8", "example2", "prop1", "prop7"] {
        assert!(manifest.contains(&format!("{name}.scenario")), "{name}");
    }
}

#[test]
fn revise_prints_the_circledast_trace() {
    let f = Figures::new();
    let o = f.run("revise", "fig1", &["--input", "A => B", "--op", "circledast:restrained"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("step1:       7 < 8 < 6 < 4,5 < 1,2 < 3"), "{out}");
    assert!(out.contains("result:      7 < 6 < 4,5 < 8 < 1,2 < 3"), "{out}");
    assert!(out.contains("accepted:    yes"));
}

#[test]
fn revise_with_an_elementary_operator() {
    let f = Figures::new();
    let o = f.run("revise", "fig1", &["--input", "A -> B", "--op", "lexicographic"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("result:      7 < 6 < 4,5 < 1,2 < 8 < 3"));
}

#[test]
fn revise_is_deterministic() {
    let f = Figures::new();
    let a = f.run("revise", "fig7", &["--format", "structured"]);
    let b = f.run("revise", "fig7", &["--format", "structured"]);
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["minimizers"].as_array().unwrap().len(), 2);
    assert!(v["result"].is_null());
}

#[test]
fn exit_codes() {
    let f = Figures::new();
    let inconsistent = f.run("revise", "fig1", &["--input", "A => !A"]);
    assert_eq!(inconsistent.status.code(), Some(3));
    assert!(stderr(&inconsistent).contains("inconsistent"));

    let syntax = f.run("revise", "fig1", &["--input", "A &"]);
    assert_eq!(syntax.status.code(), Some(2));
    let unknown_atom = f.run("revise", "fig1", &["--input", "C"]);
    assert_eq!(unknown_atom.status.code(), Some(2));
    let bad_op = f.run("revise", "fig1", &["--op", "circledast:foo"]);
    assert_eq!(bad_op.status.code(), Some(2));

    let dir = TempDir::new().unwrap();
    let broken = std::fs::read_to_string(f.path("fig1")).unwrap().replace("4,5 < 1,2,3", "4,5 < 1,2");
    let p = write(dir.path(), "broken.scenario", &broken);
    let o = condrev(&["revise", "--scenario", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("prior"), "{}", stderr(&o));

    let mut nine = String::from("atoms = [\"A\", \"B\"]\nprior = \"1,2,3,4,5,6,7,8,9\"\ninput = \"A => B\"\nworlds = [\n");
    for i in 1..=9 {
        nine.push_str(&format!("  {{ id = \"{i}\", valuation = {{ A = true, B = {} }} }},\n", i % 2 == 0));
    }
    nine.push_str("]\n");
    let p = write(dir.path(), "nine.scenario", &nine);
    let o = condrev(&["oracle", "--scenario", p.to_str().unwrap(), "--oracle", "theorem1"]);
    assert_eq!(o.status.code(), Some(5), "{}", stderr(&o));
}

#[test]
fn check_reports_the_primed_countermodel() {
    let f = Figures::new();
    let o = f.run("check", "fig6", &["--postulates", "P3,P3p"]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.contains("P3     FAILS at pair=(1,4)"), "{out}");
    assert!(out.contains("P3'    holds"), "{out}");

    let o = f.run("check", "fig6", &["--postulates", "P3", "--format", "structured"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["reports"][0]["witness_worlds"], serde_json::json!(["1", "4"]));
    assert_eq!(v["reports"][0]["holds"], false);
}

#[test]
fn check_circledast_passes_everything() {
    let f = Figures::new();
    let o = f.run("check", "fig1", &["--op", "circledast:restrained", "--postulates", "all"]);
    assert!(o.status.success(), "{}", stdout(&o));
    for p in ["S ", "P1 ", "P6 ", "KI3 ", "DE ", "V "] {
        assert!(stdout(&o).lines().any(|l| l.starts_with(p) && l.contains("holds")), "{p}");
    }
}

#[test]
fn check_bg_fails_p1() {
    let f = Figures::new();
    let o = f.run("check", "fig5", &["--postulates", "P1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("pair=(4,7)"));
}

#[test]
fn oracles() {
    let f = Figures::new();
    let o = f.run("oracle", "fig1", &["--oracle", "theorem1"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("unique minimizer; equals circledast result"));

    let o = f.run("oracle", "fig7", &["--oracle", "hansson"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("minimizer: 1 < 2 < 3 < 4") && out.contains("minimizer: 1 < 4 < 2 < 3"), "{out}");
    assert!(out.contains("DI violated: witness X={2,3,4}, Y={3,4}"), "{out}");

    let o = f.run("oracle", "fig1", &["--oracle", "flattest"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("precondition"));

    let o = f.run("oracle", "fig1", &["--oracle", "characterization"]);
    assert!(o.status.success());
    let o = f.run("oracle", "fig1", &["--oracle", "restriction"]);
    assert!(o.status.success());
    let o = f.run("oracle", "fig4", &["--oracle", "closest-nat"]);
    assert!(o.status.success());
}

#[test]
fn search_witnesses_round_trip_through_check() {
    let dir = TempDir::new().unwrap();
    let cases: [(&[&str], &str); 3] = [
        (&["--op", "restrained", "--predicate", "material-success", "--exhaustive", "--worlds", "4"], "S"),
        (&["--op", "natural", "--predicate", "recalcitrance"], "Rec"),
        (&["--op", "bg", "--predicate", "P1", "--exhaustive", "--worlds", "3"], "P1"),
    ];
    for (i, (args, postulate)) in cases.iter().enumerate() {
        let out = dir.path().join(format!("w{i}.scenario"));
        let mut full = vec!["search"];
        full.extend_from_slice(args);
        full.extend_from_slice(&["--out", out.to_str().unwrap()]);
        let o = condrev(&full);
        assert!(o.status.success(), "{}", stderr(&o));
        let text = std::fs::read_to_string(&out).unwrap();
        assert!(text.contains(&format!("--postulates \"{postulate}\"")));
        let o = condrev(&["check", "--scenario", out.to_str().unwrap(), "--postulates", postulate]);
        assert_eq!(o.status.code(), Some(1), "{args:?}: {}", stdout(&o));
    }
}

#[test]
fn search_prints_witness_or_exhaustion() {
    let o = condrev(&["search", "--op", "lexicographic", "--predicate", "material-success", "--exhaustive", "--worlds", "4"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "no counterexample in 5138 scenarios");

    let o = condrev(&["search", "--op", "restrained", "--predicate", "material-success", "--exhaustive", "--worlds", "4"]);
    assert!(stdout(&o).contains("atoms = [\"A\", \"B\"]"));

    let seeded = |seed: &str| condrev(&["search", "--op", "natural", "--predicate", "recalcitrance", "--seed", seed]).stdout;
    assert_eq!(seeded("9"), seeded("9"));
}
