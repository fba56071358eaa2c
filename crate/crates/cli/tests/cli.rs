use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn cgw(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cgw"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

const NOT: &str = "from Bool\nto Bool\nε\nq@1 q@0\nq@1 q@0 V@0 F@1\nq@1 q@0 F@0 V@1\n";

#[test]
fn suites_are_reproducible() {
    let a = cgw(&["suite", "category-laws", "--seed", "3"]);
    let b = cgw(&["suite", "category-laws", "--seed", "3", "--jobs", "4"]);
    assert_eq!(code(&a), 0, "{}", stdout(&a));
    assert_eq!(a.stdout, b.stdout);
    let c = cgw(&["suite", "category-laws", "--seed", "4"]);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn tsv_reports() {
    let o = cgw(&["--format", "tsv", "suite", "payoff-axioms"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.lines().all(|l| l.split('\t').count() == 3), "{out}");
    assert!(out.contains("reject compatibility\tpass"));
}

#[test]
fn usage_errors() {
    assert_eq!(code(&cgw(&["suite", "no-such-suite"])), 64);
    assert_eq!(code(&cgw(&["suite", "comonoid", "--copies", "0"])), 64);
    assert_eq!(code(&cgw(&["frobnicate"])), 64);
    assert_eq!(code(&cgw(&["game", "show", "Bool -o"])), 64);
    let dir = TempDir::new().unwrap();
    let bad = write(dir.path(), "bad.txt", "broken | new x := in 1\n");
    let o = cgw(&[
        "suite",
        "algol-correction",
        "--corpus",
        bad.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 64);
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 1"));
}

#[test]
fn corpus_file_for_correction() {
    let dir = TempDir::new().unwrap();
    let ok = write(
        dir.path(),
        "ok.txt",
        "w | new u := (x := 5) in !x | x := 2\nid | \\y:Bool. y\n",
    );
    let o = cgw(&[
        "suite",
        "algol-correction",
        "--corpus",
        ok.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let deep = write(
        dir.path(),
        "deep.txt",
        "deep | (\\f:Nat -> Nat. f (f (f 1))) (\\x:Nat. x)\n",
    );
    let o = cgw(&[
        "suite",
        "algol-correction",
        "--corpus",
        deep.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("resource bound"));
}

#[test]
fn algol_exit_codes() {
    let dir = TempDir::new().unwrap();
    let p = write(
        dir.path(),
        "p.alg",
        "new x := 0 in new u := (x := 5) in !x\n",
    );
    let p = p.to_str().unwrap();
    let o = cgw(&["algol", "run", p]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("value: 5\n"));
    assert_eq!(stdout(&cgw(&["algol", "type", p])), "type: Nat\n");
    let o = cgw(&["algol", "denote", p]);
    assert!(stdout(&o).contains("play q 5"));
    assert_eq!(code(&cgw(&["algol", "correction", p])), 0);
    assert_eq!(code(&cgw(&["algol", "run", p, "--fuel", "2"])), 2);

    let deep = write(
        dir.path(),
        "deep.alg",
        "(\\f:Nat -> Nat. f (f (f 1))) (\\x:Nat. x)",
    );
    let deep = deep.to_str().unwrap();
    assert_eq!(code(&cgw(&["algol", "correction", deep])), 2);
    assert_eq!(
        code(&cgw(&["algol", "correction", deep, "--copies", "3"])),
        0
    );

    let bad = write(dir.path(), "bad.alg", "if T then 1 else F");
    assert_eq!(code(&cgw(&["algol", "type", bad.to_str().unwrap()])), 1);
    let o = cgw(&["algol", "run", p, "--cell", "y := 3"]);
    assert!(stdout(&o).contains("store y: 3"));
}

#[test]
fn strategy_files() {
    let dir = TempDir::new().unwrap();
    let not = write(dir.path(), "not.strat", NOT);
    let not = not.to_str().unwrap();
    let o = cgw(&["strategy", "compose", not, not]);
    assert_eq!(code(&o), 0);
    let composite = stdout(&o);
    assert!(composite.contains("q@1 q@0 V@0 V@1"));
    let id = write(dir.path(), "id.strat", &composite);
    assert_eq!(
        code(&cgw(&["strategy", "validate", id.to_str().unwrap()])),
        0
    );

    let o = cgw(&["strategy", "witness", not, not, "--play", "q@1 q@0 F@0 F@1"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("on A,B: q@1 q@0 F@0 V@1"));
    let o = cgw(&["strategy", "witness", not, not, "--play", "q@1 q@0 V@0 F@1"]);
    assert_eq!(code(&o), 1);

    let early = write(
        dir.path(),
        "early.strat",
        "game (Bool -o Bool) -o Bool\nε\nq@2 q@1\nq@2 q@1 q@0 V@2\n",
    );
    let early = early.to_str().unwrap();
    assert_eq!(code(&cgw(&["strategy", "validate", early])), 0);
    let o = cgw(&["strategy", "winning", early]);
    assert_eq!(code(&o), 1);
    assert!(
        stdout(&o).contains("q@0 V@2 payoff (0,1)"),
        "{}",
        stdout(&o)
    );
}

#[test]
fn async_and_bang() {
    let dir = TempDir::new().unwrap();
    let not = write(dir.path(), "not.strat", NOT);
    let not = not.to_str().unwrap();
    assert_eq!(code(&cgw(&["async", "check", not, "--innocent"])), 0);
    let o = cgw(&["async", "check", not, "--functorial", "--with", not]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("compose: true"));
    let o = cgw(&["bang", "build", "Bool", "--copies", "2"]);
    assert!(stdout(&o).contains("positions: 13"));
    let o = cgw(&["bang", "laws", "Bool", "--copies", "2", "--max-len", "8"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).lines().count(), 4);
}

#[test]
fn trace_commands() {
    let dir = TempDir::new().unwrap();
    // The symmetry on Bool ⊗ Bool; tracing out one Bool leaves copycat.
    let b = cgw::game::bool_game();
    let plays = cgw::monoidal::symmetry(&b, &b)
        .strategy()
        .unwrap()
        .to_text();
    let f = write(
        dir.path(),
        "sym.strat",
        &format!("from Bool * Bool\nto Bool * Bool\n{plays}"),
    );
    let o = cgw(&[
        "trace",
        "apply",
        f.to_str().unwrap(),
        "--x",
        "Bool",
        "--a",
        "Bool",
        "--b",
        "Bool",
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(
        stdout(&o),
        "from Bool\nto Bool\nε\nq@1 q@0\nq@1 q@0 V@0 V@1\nq@1 q@0 F@0 F@1\n"
    );
    let o = cgw(&["trace", "axioms", "--seed", "1", "--count", "5"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).lines().count(), 20);
}
