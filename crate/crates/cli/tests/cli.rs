//! End-to-end checks of the binary: exit codes, output shapes, and the
//! stability of serialized artifacts.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn zigzag(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zigzag"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).to_string()
}

fn gen(dir: &Path, family: &str, n: &str, variant: &str, file: &str) -> PathBuf {
    let out = zigzag(
        &["gen", "--family", family, "--n", n, "--variant", variant, "-o", file],
        dir,
    );
    assert_eq!(out.status.code(), Some(0), "gen failed: {out:?}");
    dir.join(file)
}

#[test]
fn run_exit_codes_partition_the_outcomes() {
    let dir = TempDir::new().unwrap();
    gen(dir.path(), "L", "3", "sweeping-quadratic", "l3.aut");
    let accept = zigzag(&["run", "--machine", "l3.aut", "--input", "abba"], dir.path());
    assert_eq!(accept.status.code(), Some(0));
    assert_eq!(stdout(&accept).trim(), "accept");
    let reject = zigzag(&["run", "--machine", "l3.aut", "--input", "bbbb"], dir.path());
    assert_eq!(reject.status.code(), Some(1));
    assert_eq!(stdout(&reject).trim(), "reject");
}

#[test]
fn usage_errors_exit_2_and_print_nothing_to_stdout() {
    let dir = TempDir::new().unwrap();
    let out = zigzag(&["run", "--bogus"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    assert!(stdout(&out).is_empty());
    let missing = zigzag(&["run", "--machine", "nope.aut", "--input", "a"], dir.path());
    assert_eq!(missing.status.code(), Some(2));
    assert!(stdout(&missing).is_empty());
    assert!(!missing.stderr.is_empty());
}

#[test]
fn generated_machines_reparse_identically() {
    let dir = TempDir::new().unwrap();
    let path = gen(dir.path(), "I", "3", "rotating", "rot.aut");
    let text = std::fs::read_to_string(&path).unwrap();
    let machine = zigzag::format::parse(&text).unwrap();
    assert_eq!(zigzag::format::serialize(&machine), text);
}

#[test]
fn analyze_reports_failures_with_a_witness() {
    let dir = TempDir::new().unwrap();
    gen(dir.path(), "L", "2", "naive", "naive.aut");
    let out = zigzag(
        &["analyze", "--check", "sweeping", "--max-len", "12", "naive.aut"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.starts_with("fails: reversal at position"), "{text}");
    assert!(text.contains("on word"), "{text}");

    let holds = zigzag(
        &["analyze", "--check", "oblivious", "--max-len", "8", "naive.aut"],
        dir.path(),
    );
    assert_eq!(holds.status.code(), Some(0));
    assert!(stdout(&holds).contains("holds"));
}

#[test]
fn equiv_compares_machines_across_kinds() {
    let dir = TempDir::new().unwrap();
    gen(dir.path(), "I", "3", "nfa", "i3.aut");
    gen(dir.path(), "I", "3", "one-reversal", "i3tw.aut");
    let out = zigzag(&["equiv", "i3.aut", "i3tw.aut", "--max-len", "10"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "equivalent (bounded 10)");

    gen(dir.path(), "L", "2", "nfa", "l2.aut");
    gen(dir.path(), "L", "3", "nfa", "l3.aut");
    let out = zigzag(&["equiv", "l2.aut", "l3.aut", "--max-len", "6"], dir.path());
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("counterexample"));
}

#[test]
fn gap_pipeline_round_trips_through_the_cli() {
    let dir = TempDir::new().unwrap();
    std::fs::write(
        dir.path().join("walk.g"),
        "n 4\nedge 0 1\nedge 1 0\nedge 1 2\nedge 2 3\nedge 3 1\n",
    )
    .unwrap();
    let solve = zigzag(&["gap", "solve", "--graph", "walk.g"], dir.path());
    assert_eq!(solve.status.code(), Some(0));
    assert_eq!(stdout(&solve).trim(), "yes");

    let encode = zigzag(&["gap", "encode", "--graph", "walk.g"], dir.path());
    assert_eq!(stdout(&encode).trim(), "892551");

    let primes = zigzag(&["gap", "prime-encode", "--length", "892551"], dir.path());
    assert_eq!(stdout(&primes).trim(), "3#11#17#37#43");
    let back = zigzag(
        &["gap", "prime-decode", "--encoding", "43#3#37#11#17"],
        dir.path(),
    );
    assert_eq!(stdout(&back).trim(), "892551");

    // an inaccessible instance answers no with exit 1
    std::fs::write(dir.path().join("no.g"), "n 3\nedge 1 2\n").unwrap();
    let solve = zigzag(&["gap", "solve", "--graph", "no.g"], dir.path());
    assert_eq!(solve.status.code(), Some(1));
    assert_eq!(stdout(&solve).trim(), "no");
}

#[test]
fn unary_lengths_route_to_the_length_only_simulation() {
    let dir = TempDir::new().unwrap();
    let build = zigzag(&["gap", "build-nfa", "--n", "2", "-o", "a2.aut"], dir.path());
    assert_eq!(build.status.code(), Some(0));
    let accept = zigzag(
        &["run", "--machine", "a2.aut", "--unary-length", "892551"],
        dir.path(),
    );
    assert_eq!(accept.status.code(), Some(0));
    let reject = zigzag(
        &["run", "--machine", "a2.aut", "--unary-length", "10"],
        dir.path(),
    );
    assert_eq!(reject.status.code(), Some(1));
    // machines that are not quasi-sweeping are refused
    gen(dir.path(), "L", "2", "nfa", "l2.aut");
    let refuse = zigzag(
        &["run", "--machine", "l2.aut", "--unary-length", "5"],
        dir.path(),
    );
    assert_eq!(refuse.status.code(), Some(2));
}

#[test]
fn report_emits_stable_csv() {
    let dir = TempDir::new().unwrap();
    let specs = [
        "I:1:nfa", "I:2:nfa", "I:3:nfa", "I:4:nfa", "I:5:nfa", "I:6:nfa", "L:2:nfa", "L:3:nfa",
    ];
    let mut args = vec!["report", "--csv", "r1.csv"];
    args.extend_from_slice(&specs);
    let first = zigzag(&args, dir.path());
    assert_eq!(first.status.code(), Some(0));
    let mut args = vec!["report", "--csv", "r2.csv"];
    args.extend_from_slice(&specs);
    zigzag(&args, dir.path());
    let r1 = std::fs::read(dir.path().join("r1.csv")).unwrap();
    let r2 = std::fs::read(dir.path().join("r2.csv")).unwrap();
    assert_eq!(r1, r2, "CSV output is bit-identical across runs");
    let text = String::from_utf8(r1).unwrap();
    assert!(text.starts_with("family,n,variant,states,min_dfa_states,max_reversals\n"));
    // the one-way minimal column doubles per step of n
    assert!(text.contains("I,1,nfa,2,2,0"));
    assert!(text.contains("I,2,nfa,3,4,0"));
    assert!(text.contains("I,3,nfa,4,8,0"));
    assert!(text.contains("I,4,nfa,5,16,0"));
    assert!(text.contains("I,5,nfa,6,32,0"));
    assert!(text.contains("I,6,nfa,7,64,0"));
    assert!(text.contains("L,2,nfa,4,5,0"));
    assert!(text.contains("L,3,nfa,5,9,0"));

    // an empty spec list still prints the header
    let empty = zigzag(&["report"], dir.path());
    assert_eq!(empty.status.code(), Some(0));
    assert!(stdout(&empty).starts_with("family"));
}

#[test]
fn convert_writes_derived_machines() {
    let dir = TempDir::new().unwrap();
    gen(dir.path(), "I", "2", "nfa", "i2.aut");
    let det = zigzag(
        &["convert", "--to", "determinize", "i2.aut", "-o", "i2d.aut"],
        dir.path(),
    );
    assert_eq!(det.status.code(), Some(0));
    let min = zigzag(
        &["convert", "--to", "minimize", "i2d.aut", "-o", "i2m.aut"],
        dir.path(),
    );
    assert_eq!(min.status.code(), Some(0));
    let text = std::fs::read_to_string(dir.path().join("i2m.aut")).unwrap();
    let machine = zigzag::format::parse(&text).unwrap();
    assert_eq!(machine.num_states(), 4);

    gen(dir.path(), "L", "2", "rotating", "rot.aut");
    let sweep = zigzag(
        &["convert", "--to", "sweeping", "rot.aut", "-o", "sw.aut"],
        dir.path(),
    );
    assert_eq!(sweep.status.code(), Some(0));
    let check = zigzag(
        &["analyze", "--check", "sweeping", "--max-len", "8", "sw.aut"],
        dir.path(),
    );
    assert_eq!(check.status.code(), Some(0));
}
