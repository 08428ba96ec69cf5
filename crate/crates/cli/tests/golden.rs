//! Golden-file and end-to-end tests of the `adgame` binary.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

const INSTANCES: [&str; 3] = ["i1", "eq", "mismatch"];

fn root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn instance(name: &str) -> String {
    root().join("fixtures/instances").join(format!("{name}.pcp")).display().to_string()
}

fn golden(name: &str, file: &str) -> PathBuf {
    root().join("fixtures/golden").join(name).join(file)
}

fn read(path: &Path) -> String {
    std::fs::read_to_string(path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

fn adgame(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_adgame")).args(args).output().unwrap()
}

fn stdout_ok(args: &[&str]) -> String {
    let out = adgame(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn assert_golden(name: &str, file: &str, actual: &str) {
    assert_eq!(actual, read(&golden(name, file)), "{name}/{file} differs from its golden file");
}

#[test]
fn build_matches_golden_files() {
    for name in INSTANCES {
        let i = instance(name);
        assert_golden(name, "automaton.dot", &stdout_ok(&["build", "-i", &i, "--emit", "automaton"]));
        assert_golden(name, "automaton-reverse-unfold.dot", &stdout_ok(&["build", "-i", &i, "--reverse", "--unfold"]));
        for kind in ["word-game", "matrix-game", "braid3-game", "braid5-game"] {
            assert_golden(name, &format!("{kind}.txt"), &stdout_ok(&["build", "-i", &i, "--emit", kind]));
        }
    }
}

#[test]
fn build_writes_a_directory_for_several_artifacts() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("eq");
    let i = instance("eq");
    let o = out.display().to_string();
    stdout_ok(&["build", "-i", &i, "--emit", "automaton", "--emit", "word-game", "--emit", "pair-game", "-o", &o]);
    assert_eq!(read(&out.join("automaton.dot")), read(&golden("eq", "automaton.dot")));
    assert_eq!(read(&out.join("word-game.txt")), read(&golden("eq", "word-game.txt")));
    assert!(read(&out.join("pair-game.txt")).starts_with("game=pair\n"));
}

#[test]
fn automaton_shapes() {
    let dot = read(&golden("i1", "automaton.dot"));
    assert_eq!(dot.matches("shape=circle").count() + dot.matches("shape=doublecircle").count(), 5);
    assert!(dot.contains("init -> q0;"));
    let unfolded = read(&golden("i1", "automaton-reverse-unfold.dot"));
    assert_eq!(unfolded.matches("shape=circle").count() + unfolded.matches("shape=doublecircle").count(), 9);
    assert!(unfolded.contains("init -> q4;"));
}

#[test]
fn check_matches_golden_files() {
    for name in INSTANCES {
        let i = instance(name);
        assert_golden(name, "universality.txt", &stdout_ok(&["check", "-i", &i, "--universality", "--max-len", "6"]));
        assert_golden(name, "check-aaa.txt", &stdout_ok(&["check", "-i", &i, "--word", "aaa"]));
    }
    assert_eq!(read(&golden("i1", "universality.txt")), "counterexample: aaaaaa\n");
    assert!(stdout_ok(&["check", "-i", &instance("eq"), "--word", "a"]).ends_with("accepted (case i)\n"));
}

#[test]
fn solve_and_play_match_golden_files() {
    let dir = tempfile::tempdir().unwrap();
    for name in INSTANCES {
        let game = golden(name, "word-game.txt").display().to_string();
        let strategy = dir.path().join(format!("{name}.strategy"));
        let s = strategy.display().to_string();
        assert_golden(name, "solve.txt", &stdout_ok(&["solve", "-g", &game, "-r", "3", "-o", &s]));
        assert_eq!(read(&strategy), read(&golden(name, "strategy.txt")));
        let trace = dir.path().join(format!("{name}.trace"));
        let t = trace.display().to_string();
        let args = ["play", "-g", &game, "-r", "2", "--defender", "script:aa", "--attacker", "random:7", "-o", &t];
        assert_golden(name, "play-random.txt", &stdout_ok(&args));
        assert_eq!(read(&trace), read(&golden(name, "trace.txt")));
        let check = stdout_ok(&["crosscheck", "--trace", &t, "-i", &instance(name)]);
        assert_golden(name, "crosscheck.txt", &check);
    }
}

#[test]
fn solve_is_independent_of_jobs() {
    let game = golden("i1", "word-game.txt").display().to_string();
    let one = stdout_ok(&["solve", "-g", &game, "-r", "3", "--jobs", "1"]);
    let four = stdout_ok(&["solve", "-g", &game, "-r", "3", "--jobs", "4"]);
    assert_eq!(one, four);
    assert!(one.starts_with("verdict: DefenderSurvives(3)\n"));
}

/// build -> solve -> play(strategy) -> crosscheck on every encoding.
#[test]
fn end_to_end_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    for name in ["eq", "mismatch", "i1"] {
        let out = d.join(name);
        let o = out.display().to_string();
        let i = instance(name);
        stdout_ok(&["build", "-i", &i, "--emit", "word-game", "--emit", "matrix-game", "--emit", "braid3-game", "--emit", "braid5-game", "-o", &o]);
        for kind in ["word-game", "matrix-game", "braid3-game", "braid5-game"] {
            let game = out.join(format!("{kind}.txt")).display().to_string();
            let s = out.join(format!("{kind}.strategy")).display().to_string();
            // braid normal forms of I1 configurations grow by hundreds of factors per round
            let horizon = if name == "i1" && kind.starts_with("braid") { "2" } else { "3" };
            let report = stdout_ok(&["solve", "-g", &game, "-r", horizon, "-o", &s]);
            let t = out.join(format!("{kind}.trace")).display().to_string();
            let policy = format!("strategy:{s}");
            let wins = report.contains("AttackerWinsWithin(2)");
            let (defender, attacker, rounds) = if wins {
                ("script:0,0".to_string(), policy, "2")
            } else {
                assert!(report.contains(&format!("DefenderSurvives({horizon})")), "{name} {kind}: {report}");
                (policy, "random:11".to_string(), horizon)
            };
            let played = stdout_ok(&["play", "-g", &game, "-r", rounds, "--defender", &defender, "--attacker", &attacker, "-o", &t]);
            assert_eq!(played.contains("attacker reached the target"), wins, "{name} {kind}: {played}");
            let check = stdout_ok(&["crosscheck", "--trace", &t, "-i", &i]);
            assert!(check.starts_with("AGREE at all rounds"), "{name} {kind}: {check}");
        }
    }
}

#[test]
fn scripted_defender_by_letter_against_a_strategy() {
    let dir = tempfile::tempdir().unwrap();
    let s = dir.path().join("eq.strategy").display().to_string();
    let game = golden("eq", "word-game.txt").display().to_string();
    stdout_ok(&["solve", "-g", &game, "-r", "2", "-o", &s]);
    let args = ["play", "-g", &game, "-r", "2", "--defender", "script:aa", "--attacker", &format!("strategy:{s}")];
    let first = stdout_ok(&args);
    assert_eq!(first, stdout_ok(&args));
    assert!(first.ends_with("attacker reached the target in round 2\n"));
    // a win found within 2 rounds also serves a longer game
    let longer = stdout_ok(&["play", "-g", &game, "-r", "4", "--defender", "random:3", "--attacker", &format!("strategy:{s}")]);
    assert!(longer.ends_with("attacker reached the target in round 2\n"), "{longer}");
}

#[test]
fn human_play_matches_the_scripted_session() {
    let game = golden("eq", "word-game.txt").display().to_string();
    let mut child = Command::new(env!("CARGO_BIN_EXE_adgame"))
        .args(["play", "-g", &game, "-r", "2", "--defender", "human", "--attacker", "random:7"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    // an out-of-range index is re-prompted; moves by index and by label
    child.stdin.take().unwrap().write_all(b"9\n0\na\n").unwrap();
    let out = child.wait_with_output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("expected an index below 1 or a move label"));
    let scripted = stdout_ok(&["play", "-g", &game, "-r", "2", "--defender", "script:0,0", "--attacker", "random:7"]);
    // the first record follows the last prompt on the same line
    let records: Vec<&str> = text.lines().filter_map(|l| l.find("round=").map(|i| &l[i..])).collect();
    assert_eq!(records, scripted.lines().filter(|l| l.starts_with("round=")).collect::<Vec<_>>());
}

#[test]
fn exit_codes() {
    let missing = adgame(&["build", "-i", "/no/such/instance.pcp"]);
    assert_eq!(missing.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&missing.stderr).contains("/no/such/instance.pcp"));
    let illegal = adgame(&["check", "-i", &instance("i1"), "--word", "ab"]);
    assert_eq!(illegal.status.code(), Some(1));
    assert_eq!(adgame(&["build", "--frobnicate"]).status.code(), Some(2));
    assert_eq!(adgame(&["solve"]).status.code(), Some(2));
    let game = golden("eq", "word-game.txt").display().to_string();
    let bad_policy = adgame(&["play", "-g", &game, "-r", "1", "--defender", "psychic", "--attacker", "random:1"]);
    assert_eq!(bad_policy.status.code(), Some(1));
}

#[test]
fn crosscheck_rejects_malformed_traces() {
    let dir = tempfile::tempdir().unwrap();
    let t = dir.path().join("bad.trace");
    std::fs::write(&t, "round=1 player=A move=0 config=x\n").unwrap();
    let out = adgame(&["crosscheck", "--trace", &t.display().to_string(), "-i", &instance("eq")]);
    assert_eq!(out.status.code(), Some(1));
    std::fs::write(&t, "round=1 player=D move=7 config=x\n").unwrap();
    let out = adgame(&["crosscheck", "--trace", &t.display().to_string(), "-i", &instance("eq")]);
    assert_eq!(out.status.code(), Some(1));
}
