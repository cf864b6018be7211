//! End-to-end tests of the `wincore` binary: exit codes, output formats,
//! malformed-input handling, determinism of `generate`, and the benchmark
//! CSV contract.

use std::path::{Path, PathBuf};
use std::process::Command;

use wincore_cli::{read_records, BenchStatus};

/// Four states in a square; every color is odd for its position's player to
/// exploit. The partial solver decides nothing here, yet player 0 wins all.
const ALL_ODD_SQUARE: &str = "parity 3;\n0 2 1 0,1;\n1 4 1 2;\n2 2 1 2,3;\n3 3 1 0;\n";

/// Player 0 wins everywhere; three of the four states form the winning core.
const STABLE_TRIANGLE: &str = "parity 3;\n0 1 1 2,3;\n1 3 0 0;\n2 4 0 1;\n3 2 0 0;\n";

struct Outcome {
    code: i32,
    stdout: String,
    stderr: String,
}

fn run_in(dir: &Path, args: &[&str], env: &[(&str, Option<&str>)]) -> Outcome {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_wincore"));
    cmd.current_dir(dir).args(args);
    for (key, value) in env {
        match value {
            Some(v) => cmd.env(key, v),
            None => cmd.env_remove(key),
        };
    }
    let out = cmd.output().expect("the binary should be runnable");
    Outcome {
        code: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8_lossy(&out.stdout).into_owned(),
        stderr: String::from_utf8_lossy(&out.stderr).into_owned(),
    }
}

fn run(dir: &Path, args: &[&str]) -> Outcome {
    run_in(dir, args, &[])
}

fn write(dir: &Path, name: &str, content: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, content).expect("fixture write");
    path
}

#[test]
fn solve_square_trace_and_partial_regions() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "square.pg", ALL_ODD_SQUARE);

    let out = run(dir.path(), &["solve", "square.pg", "--algo", "wc-partial", "--trace"]);
    assert_eq!(out.code, 0, "stderr: {}", out.stderr);
    assert_eq!(
        out.stdout,
        "B^0 = {0, 1, 2, 3}\n\
         B^1 = {0, 1, 3}\n\
         B^2 = {0, 3}\n\
         B^3 = {3}\n\
         B^4 = {}\n\
         W0:\nW1:\nU: 0 1 2 3\n"
    );

    let exact = run(dir.path(), &["solve", "square.pg", "--algo", "zielonka"]);
    assert_eq!(exact.code, 0);
    assert_eq!(exact.stdout, "W0: 0 1 2 3\nW1:\n");

    let via_core = run(dir.path(), &["solve", "square.pg", "--algo", "wc-exact", "--emit", "summary"]);
    assert_eq!(via_core.code, 0);
    assert_eq!(via_core.stdout, "n=4 m=6 d=4 algo=wc-exact solved=4 unknown=0 w0=4 w1=0\n");
}

#[test]
fn partial_solver_completes_the_triangle_game() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "triangle.pg", STABLE_TRIANGLE);

    let out = run(dir.path(), &["solve", "triangle.pg", "--algo", "wc-partial"]);
    assert_eq!(out.code, 0);
    assert_eq!(out.stdout, "W0: 0 1 2 3\nW1:\n");

    let core = run(dir.path(), &["wcore", "triangle.pg", "--player", "0"]);
    assert_eq!(core.code, 0);
    assert_eq!(core.stdout, "B = {0, 1, 3}\n");

    let exact = run(dir.path(), &["wcore", "triangle.pg", "--player", "0", "--mode", "exact"]);
    assert_eq!(exact.code, 0);
    assert_eq!(exact.stdout, "A = {0, 1, 3}\n");
}

#[test]
fn malformed_corpus_produces_the_documented_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    // (case, file content, expected exit code)
    let corpus: &[(&str, &str, i32)] = &[
        ("missing semicolon", "parity 1;\n0 2 0 1\n1 1 1 0;\n", 2),
        ("dangling successor id", "parity 1;\n0 2 0 1,5;\n1 1 1 0;\n", 2),
        ("empty successor list", "parity 1;\n0 2 0 ;\n1 1 1 0;\n", 3),
        ("duplicate state id", "parity 1;\n0 2 0 1;\n0 1 1 0;\n1 1 1 0;\n", 2),
        ("bad owner", "parity 1;\n0 2 7 1;\n1 1 1 0;\n", 2),
        ("gap in state ids", "parity 2;\n0 2 0 2;\n2 1 1 0;\n", 2),
        ("zero priorities are normalized", "parity 1;\n0 0 0 1;\n1 1 1 0;\n", 0),
        (
            "whitespace variants",
            "  parity   1 ;\n\n 0  2 0  1 , 0 ;\n\t1 1 1\t0;\n",
            0,
        ),
    ];
    for (what, content, expected) in corpus {
        let path = write(dir.path(), "case.pg", content);
        let out = run(dir.path(), &["solve", "case.pg"]);
        assert_eq!(out.code, *expected, "{what}: stderr `{}`", out.stderr);
        std::fs::remove_file(path).unwrap();
    }

    // The zero-priority repair announces the color shift on stderr.
    write(dir.path(), "zero.pg", "parity 1;\n0 0 0 1;\n1 1 1 0;\n");
    let out = run(dir.path(), &["solve", "zero.pg"]);
    assert_eq!(out.code, 0);
    assert!(out.stderr.contains("shifted by +2"), "stderr: {}", out.stderr);

    // An empty successor list is only an error without the repair flag.
    write(dir.path(), "stuck.pg", "parity 1;\n0 2 0 ;\n1 1 1 0;\n");
    let repaired = run(dir.path(), &["solve", "stuck.pg", "--add-self-loops"]);
    assert_eq!(repaired.code, 0, "stderr: {}", repaired.stderr);
}

#[test]
fn usage_errors_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "square.pg", ALL_ODD_SQUARE);

    let unknown_algo = run(dir.path(), &["solve", "square.pg", "--algo", "fancy"]);
    assert_eq!(unknown_algo.code, 1);

    let no_subcommand = run(dir.path(), &[]);
    assert_eq!(no_subcommand.code, 1);

    let trace_exact = run(
        dir.path(),
        &["wcore", "square.pg", "--mode", "exact", "--trace"],
    );
    assert_eq!(trace_exact.code, 1);
    assert!(trace_exact.stderr.contains("--trace"), "stderr: {}", trace_exact.stderr);

    let bad_family = run(dir.path(), &["generate", "steady", "--n", "4"]);
    assert_eq!(bad_family.code, 1);
    assert!(bad_family.stderr.contains("unknown family"));

    let stray_flag = run(dir.path(), &["generate", "ladder", "--k", "3", "--n", "9"]);
    assert_eq!(stray_flag.code, 1);
    assert!(stray_flag.stderr.contains("--n"), "stderr: {}", stray_flag.stderr);

    let no_seed = run_in(
        dir.path(),
        &["generate", "random", "--n", "5", "--d", "2"],
        &[("WINCORE_SEED", None)],
    );
    assert_eq!(no_seed.code, 1);
    assert!(no_seed.stderr.contains("WINCORE_SEED"), "stderr: {}", no_seed.stderr);

    let bad_env = run_in(
        dir.path(),
        &["generate", "random", "--n", "5", "--d", "2"],
        &[("WINCORE_SEED", Some("oops"))],
    );
    assert_eq!(bad_env.code, 1);
    assert!(bad_env.stderr.contains("unsigned integer"));

    let bad_player = run(dir.path(), &["wcore", "square.pg", "--player", "2"]);
    assert_eq!(bad_player.code, 1);
}

#[test]
fn help_and_version_exit_zero() {
    let dir = tempfile::tempdir().unwrap();
    for args in [&["--help"][..], &["--version"][..], &["solve", "--help"][..]] {
        let out = run(dir.path(), args);
        assert_eq!(out.code, 0, "{args:?}");
    }
    assert!(run(dir.path(), &["--help"]).stdout.contains("wincore"));
}

#[test]
fn missing_input_file_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), &["solve", "no-such-game.pg"]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("cannot read"));
}

#[test]
fn verify_accepts_exact_and_partial_claims_and_rejects_wrong_ones() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "square.pg", ALL_ODD_SQUARE);

    // Exact output piped back verbatim.
    let solved = run(dir.path(), &["solve", "square.pg", "--algo", "zielonka"]);
    write(dir.path(), "exact.regions", &solved.stdout);
    let ok = run(dir.path(), &["verify", "square.pg", "exact.regions"]);
    assert_eq!(ok.code, 0, "stderr: {}", ok.stderr);
    assert!(ok.stdout.contains("match"));

    // One state moved to the wrong side of a complete claim.
    write(dir.path(), "tampered.regions", "W0: 0 1 3\nW1: 2\n");
    let mismatch = run(dir.path(), &["verify", "square.pg", "tampered.regions"]);
    assert_eq!(mismatch.code, 4);
    assert!(mismatch.stderr.contains("state 2"), "stderr: {}", mismatch.stderr);

    // A partial claim that is consistent (here: maximally timid).
    write(dir.path(), "partial.regions", "W0:\nW1:\nU: 0 1 2 3\n");
    let partial = run(dir.path(), &["verify", "square.pg", "partial.regions"]);
    assert_eq!(partial.code, 0);
    assert!(partial.stdout.contains("4 states unknown"));

    // A partial claim that decides a state for the wrong player.
    write(dir.path(), "wrong.regions", "W1: 2\nU: 0 1 3\n");
    let wrong = run(dir.path(), &["verify", "square.pg", "wrong.regions"]);
    assert_eq!(wrong.code, 4);
    assert!(wrong.stderr.contains("player 1"), "stderr: {}", wrong.stderr);

    // A regions file that does not parse.
    write(dir.path(), "broken.regions", "W2: 1\n");
    let broken = run(dir.path(), &["verify", "square.pg", "broken.regions"]);
    assert_eq!(broken.code, 2);
}

#[test]
fn product_guard_exits_five() {
    let dir = tempfile::tempdir().unwrap();
    // 25,000 states with d = 2,500 put the explicit product at 62.5M states,
    // past the 50M guard; the threshold path stays available.
    let gen = run(
        dir.path(),
        &["generate", "random", "--n", "25000", "--d", "2500", "--seed", "5", "-o", "big.pg"],
    );
    assert_eq!(gen.code, 0, "stderr: {}", gen.stderr);

    let guarded = run(dir.path(), &["wcore", "big.pg", "--mode", "exact"]);
    assert_eq!(guarded.code, 5, "stderr: {}", guarded.stderr);
    assert!(guarded.stderr.contains("guard"), "stderr: {}", guarded.stderr);

    let solve_guarded = run(dir.path(), &["solve", "big.pg", "--algo", "wc-exact"]);
    assert_eq!(solve_guarded.code, 5);
}

#[test]
fn generate_is_deterministic_and_its_output_parses() {
    let dir = tempfile::tempdir().unwrap();
    let families: &[&[&str]] = &[
        &["generate", "random", "--n", "40", "--d", "5", "--seed", "9"],
        &["generate", "clique", "--n", "9"],
        &["generate", "ladder", "--k", "6"],
        &["generate", "recursive_ladder", "--k", "5"],
        &["generate", "mc_ladder", "--k", "4"],
        &["generate", "jurdzinski", "--layers", "3", "--blocks", "3"],
    ];
    for base in families {
        let mut first = base.to_vec();
        first.extend(["-o", "a.pg"]);
        let mut second = base.to_vec();
        second.extend(["-o", "b.pg"]);
        assert_eq!(run(dir.path(), &first).code, 0, "{base:?}");
        assert_eq!(run(dir.path(), &second).code, 0);
        let a = std::fs::read_to_string(dir.path().join("a.pg")).unwrap();
        let b = std::fs::read_to_string(dir.path().join("b.pg")).unwrap();
        assert_eq!(a, b, "{base:?} must be deterministic");

        let solved = run(dir.path(), &["solve", "a.pg", "--emit", "summary"]);
        assert_eq!(solved.code, 0, "{base:?}: stderr {}", solved.stderr);
    }

    // --seed and WINCORE_SEED are interchangeable.
    let flag = run(dir.path(), &["generate", "random", "--n", "12", "--d", "3", "--seed", "77"]);
    let env = run_in(
        dir.path(),
        &["generate", "random", "--n", "12", "--d", "3"],
        &[("WINCORE_SEED", Some("77"))],
    );
    assert_eq!(flag.code, 0);
    assert_eq!(env.code, 0);
    assert_eq!(flag.stdout, env.stdout);
}

#[test]
fn bench_timeout_keeps_the_csv_intact() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(
        dir.path(),
        &[
            "bench",
            "--instance",
            "clique:n=60",
            "--algo",
            "wc-exact",
            "--algo",
            "zielonka",
            "--timeout-secs",
            "0",
            "--reps",
            "2",
            "--csv",
            "report.csv",
        ],
    );
    assert_eq!(out.code, 0, "stderr: {}", out.stderr);
    assert!(out.stdout.contains("timeout=2"), "stdout: {}", out.stdout);

    let records = read_records(&dir.path().join("report.csv")).expect("CSV parses back");
    assert_eq!(records.len(), 4);
    for r in &records {
        assert_eq!(r.status, BenchStatus::Timeout);
        assert_eq!(r.n, 60);
        assert_eq!(r.solved, 0);
        assert_eq!(r.unknown, 60);
    }
}

#[test]
fn bench_usage_errors_exit_one() {
    let dir = tempfile::tempdir().unwrap();

    let bad_sweep = run(dir.path(), &["bench", "--instance", "steady:n=1"]);
    assert_eq!(bad_sweep.code, 1);
    assert!(bad_sweep.stderr.contains("unknown family"));

    let zero_workers = run(
        dir.path(),
        &["bench", "--instance", "clique:n=4", "--workers", "0"],
    );
    assert_eq!(zero_workers.code, 1);

    let bad_csv = run(
        dir.path(),
        &[
            "bench",
            "--instance",
            "clique:n=4",
            "--csv",
            "no-such-dir/report.csv",
        ],
    );
    assert_eq!(bad_csv.code, 1);
    assert!(bad_csv.stderr.contains("no-such-dir"), "stderr: {}", bad_csv.stderr);
}
