//! The `wincore` command line: solve and verify parity games, compute
//! winning cores, generate benchmark families, and run timed comparisons.
//!
//! Exit codes, used consistently by every subcommand:
//! - 0: success
//! - 1: usage error (bad flags, unknown family, unusable seed, CSV write failure)
//! - 2: input could not be parsed (file unreadable, syntax error, duplicate
//!   or gapped state ids, dangling successors, malformed regions file)
//! - 3: the game is invalid (a state without successors, a color below 1)
//! - 4: `verify` found a mismatch between claimed and computed regions
//! - 5: a product size guard tripped (exact winning-core reduction only)

use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::{Args, Parser, Subcommand};
use wincore::bstep::{compute_B, BStepMode};
use wincore::generate::GenSpec;
use wincore::pgsolver::{parse_pgsolver_with, ParseOptions, ParsedGame, serialize_pgsolver};
use wincore::solvers::zielonka_solve;
use wincore::wcore::{partial_solve, solve_via_core, winning_core_exact};
use wincore::{Error, Player, Regions, StateSet};
use wincore_cli::{parse_sweep, run_bench, summarize, Algo, BenchConfig};

#[derive(Parser)]
#[command(
    name = "wincore",
    version,
    about = "Parity game solving, winning cores, generators, and benchmarks"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Solve a game and print winning regions (W0/W1, U for unknown)
    Solve(SolveArgs),
    /// Check a claimed region file against a freshly computed solution
    Verify(VerifyArgs),
    /// Compute the winning core (exact) or its under-approximation
    Wcore(WcoreArgs),
    /// Generate a benchmark game in PGSolver syntax
    Generate(GenerateArgs),
    /// Run timed solver comparisons and write a CSV report
    Bench(BenchArgs),
}

#[derive(Args)]
struct SolveArgs {
    /// Input game in PGSolver syntax
    file: PathBuf,
    /// Solver to run
    #[arg(long, value_enum, default_value_t = Algo::Zielonka)]
    algo: Algo,
    /// Output form: the region listing or a one-line summary
    #[arg(long, value_enum, default_value_t = EmitMode::Regions)]
    emit: EmitMode,
    /// Print player 0's B-iterate sequence before the result
    #[arg(long)]
    trace: bool,
    /// Repair states without successors by adding a self-loop while parsing
    #[arg(long)]
    add_self_loops: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
enum EmitMode {
    /// W0:/W1: (and U: when states stay unknown) listings
    Regions,
    /// One line with sizes and the algorithm id
    Summary,
}

#[derive(Args)]
struct VerifyArgs {
    /// Input game in PGSolver syntax
    game: PathBuf,
    /// Regions file in the W0:/W1:/U: format printed by `solve`
    regions: PathBuf,
    /// Repair states without successors by adding a self-loop while parsing
    #[arg(long)]
    add_self_loops: bool,
}

#[derive(Args)]
struct WcoreArgs {
    /// Input game in PGSolver syntax
    file: PathBuf,
    /// Player whose core is computed
    #[arg(long, default_value_t = 0, value_parser = clap::value_parser!(u8).range(0..=1))]
    player: u8,
    /// Core computation to run
    #[arg(long, value_enum, default_value_t = CoreMode::Thresholds)]
    mode: CoreMode,
    /// Print every B-iterate, not just the fixpoint (iterative modes only)
    #[arg(long)]
    trace: bool,
    /// Repair states without successors by adding a self-loop while parsing
    #[arg(long)]
    add_self_loops: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
enum CoreMode {
    /// Iterate the threshold-based step (no product construction)
    Thresholds,
    /// Iterate the explicit product-attractor step
    Naive,
    /// Exact winning core through the product reduction
    Exact,
}

#[derive(Args)]
struct GenerateArgs {
    /// Family: random, clique, ladder, recursive_ladder, mc_ladder, jurdzinski
    family: String,
    /// States (random, clique)
    #[arg(long)]
    n: Option<usize>,
    /// Highest color (random)
    #[arg(long)]
    d: Option<u32>,
    /// Lowest out-degree (random), default 1
    #[arg(long)]
    l: Option<usize>,
    /// Highest out-degree (random), default 5
    #[arg(long)]
    u: Option<usize>,
    /// Size parameter (ladder, recursive_ladder, mc_ladder)
    #[arg(long)]
    k: Option<usize>,
    /// Layer count (jurdzinski)
    #[arg(long)]
    layers: Option<usize>,
    /// Blocks per layer (jurdzinski)
    #[arg(long)]
    blocks: Option<usize>,
    /// PRNG seed (random); falls back to the WINCORE_SEED environment variable
    #[arg(long)]
    seed: Option<u64>,
    /// Output file; stdout when omitted
    #[arg(short, long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct BenchArgs {
    /// Instance spec `family` or `family:key=value,...`; repeatable
    #[arg(long = "instance", required = true)]
    instances: Vec<String>,
    /// Algorithm to include; repeatable; all three when omitted
    #[arg(long = "algo")]
    algos: Vec<Algo>,
    /// Wall-clock budget per timed repetition, in seconds
    #[arg(long)]
    timeout_secs: Option<u64>,
    /// Timed repetitions per (instance, algorithm) cell
    #[arg(long, default_value_t = 1)]
    reps: usize,
    /// Worker threads; defaults to the available parallelism
    #[arg(long)]
    workers: Option<usize>,
    /// Write the records to this CSV file
    #[arg(long)]
    csv: Option<PathBuf>,
    /// Base seed for `random` sweeps without an explicit seed; falls back to
    /// the WINCORE_SEED environment variable, then to 1
    #[arg(long)]
    seed: Option<u64>,
}

/// A subcommand failure: the message goes to stderr, the code to the shell.
struct Failure {
    code: u8,
    msg: String,
}

fn fail(code: u8, msg: impl Into<String>) -> Failure {
    Failure { code, msg: msg.into() }
}

/// Maps a core-library error to the documented exit code.
fn game_failure(e: Error) -> Failure {
    let code = match &e {
        Error::Parse { .. }
        | Error::DanglingSuccessor { .. }
        | Error::DuplicateState { .. }
        | Error::IdGap { .. } => 2,
        Error::NonTotal { .. } | Error::BadColor { .. } => 3,
        Error::ProductTooLarge { .. } => 5,
        _ => 1,
    };
    fail(code, e.to_string())
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            std::process::exit(code);
        }
    };

    match run(cli) {
        Ok(output) => {
            print!("{output}");
            std::process::exit(0);
        }
        Err(f) => {
            eprintln!("error: {}", f.msg);
            std::process::exit(f.code as i32);
        }
    }
}

fn run(cli: Cli) -> Result<String, Failure> {
    match cli.cmd {
        Cmd::Solve(args) => cmd_solve(args),
        Cmd::Verify(args) => cmd_verify(args),
        Cmd::Wcore(args) => cmd_wcore(args),
        Cmd::Generate(args) => cmd_generate(args),
        Cmd::Bench(args) => cmd_bench(args),
    }
}

/// Reads and parses a game file, mapping failures to exit codes 2/3.
fn load_game(path: &Path, add_self_loops: bool) -> Result<ParsedGame, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| fail(2, format!("cannot read {}: {e}", path.display())))?;
    let parsed = parse_pgsolver_with(&text, ParseOptions { add_self_loops })
        .map_err(game_failure)?;
    if parsed.color_shift > 0 {
        eprintln!(
            "note: colors were shifted by +{} so the least color is 1; \
             winners and state ids are unaffected",
            parsed.color_shift
        );
    }
    Ok(parsed)
}

fn render_set(set: &StateSet) -> String {
    let ids: Vec<String> = set.iter().map(|s| s.to_string()).collect();
    format!("{{{}}}", ids.join(", "))
}

fn render_trace(iterates: &[StateSet]) -> String {
    let mut out = String::new();
    for (i, b) in iterates.iter().enumerate() {
        out.push_str(&format!("B^{i} = {}\n", render_set(b)));
    }
    out
}

fn cmd_solve(args: SolveArgs) -> Result<String, Failure> {
    let parsed = load_game(&args.file, args.add_self_loops)?;
    let game = &parsed.game;
    let mut out = String::new();

    if args.trace {
        let (_, trace) = compute_B(game, Player::Even, BStepMode::Thresholds, true)
            .map_err(game_failure)?;
        out.push_str(&render_trace(&trace.expect("trace was requested").iterates));
    }

    let regions = match args.algo {
        Algo::Zielonka => zielonka_solve(game),
        Algo::WcExact => solve_via_core(game).map_err(game_failure)?,
        Algo::WcPartial => partial_solve(game),
    };

    match args.emit {
        EmitMode::Regions => out.push_str(&regions.to_text()),
        EmitMode::Summary => out.push_str(&format!(
            "n={} m={} d={} algo={} solved={} unknown={} w0={} w1={}\n",
            game.state_count(),
            game.edge_count(),
            game.max_color(),
            args.algo.id(),
            game.state_count() - regions.unknown.len(),
            regions.unknown.len(),
            regions.win0.len(),
            regions.win1.len(),
        )),
    }
    Ok(out)
}

fn cmd_verify(args: VerifyArgs) -> Result<String, Failure> {
    let parsed = load_game(&args.game, args.add_self_loops)?;
    let game = &parsed.game;

    let text = std::fs::read_to_string(&args.regions)
        .map_err(|e| fail(2, format!("cannot read {}: {e}", args.regions.display())))?;
    let claimed = Regions::from_text(&text, game.state_count())
        .map_err(|e| fail(2, format!("bad regions file {}: {e}", args.regions.display())))?;

    let truth = zielonka_solve(game);

    if claimed.unknown.is_empty() {
        // A complete claim must match the computed regions exactly.
        if claimed.win0 == truth.win0 {
            return Ok("ok: regions match the computed solution exactly\n".to_string());
        }
        let witness = game
            .states()
            .find(|&s| claimed.win0.contains(s) != truth.win0.contains(s))
            .expect("regions differ at some state");
        let (claimed_for, won_by) = if claimed.win0.contains(witness) {
            (0, 1)
        } else {
            (1, 0)
        };
        Err(fail(
            4,
            format!(
                "mismatch at state {witness}: claimed for player {claimed_for}, \
                 won by player {won_by}"
            ),
        ))
    } else {
        // A partial claim only needs to be consistent: every decided state
        // must lie in the true winning region of the same player.
        for (player, set) in [(0, &claimed.win0), (1, &claimed.win1)] {
            if let Some(witness) = set.iter().find(|&s| !truth.win(Player::from_index(player).expect("0 or 1")).contains(s)) {
                return Err(fail(
                    4,
                    format!(
                        "state {witness} is claimed for player {player} but won \
                         by player {}",
                        1 - player
                    ),
                ));
            }
        }
        Ok(format!(
            "ok: partial regions are consistent with the computed solution \
             ({} states unknown)\n",
            claimed.unknown.len()
        ))
    }
}

fn cmd_wcore(args: WcoreArgs) -> Result<String, Failure> {
    let parsed = load_game(&args.file, args.add_self_loops)?;
    let game = &parsed.game;
    let player = Player::from_index(args.player as usize).expect("clap restricts to 0 or 1");

    match args.mode {
        CoreMode::Exact => {
            if args.trace {
                return Err(fail(
                    1,
                    "--trace applies to the iterative modes (thresholds, naive); \
                     the exact core is not computed through B-iterates",
                ));
            }
            let core = winning_core_exact(game, player).map_err(game_failure)?;
            Ok(format!("A = {}\n", render_set(&core)))
        }
        mode => {
            let step = match mode {
                CoreMode::Thresholds => BStepMode::Thresholds,
                CoreMode::Naive => BStepMode::Naive,
                CoreMode::Exact => unreachable!("handled above"),
            };
            let (fixpoint, trace) =
                compute_B(game, player, step, args.trace).map_err(game_failure)?;
            let mut out = String::new();
            if let Some(trace) = trace {
                out.push_str(&render_trace(&trace.iterates));
            }
            out.push_str(&format!("B = {}\n", render_set(&fixpoint)));
            Ok(out)
        }
    }
}

/// Resolves the WINCORE_SEED environment variable; unset is fine, a value
/// that is not an unsigned integer is a usage error.
fn env_seed() -> Result<Option<u64>, Failure> {
    match std::env::var("WINCORE_SEED") {
        Ok(text) => text.trim().parse::<u64>().map(Some).map_err(|_| {
            fail(1, format!("WINCORE_SEED must be an unsigned integer, got `{text}`"))
        }),
        Err(std::env::VarError::NotPresent) => Ok(None),
        Err(e) => Err(fail(1, format!("cannot read WINCORE_SEED: {e}"))),
    }
}

fn cmd_generate(args: GenerateArgs) -> Result<String, Failure> {
    // Reject flags that do not belong to the chosen family so a typo cannot
    // silently produce a different game than intended.
    let allowed: &[&str] = match args.family.as_str() {
        "random" => &["n", "d", "l", "u", "seed"],
        "clique" => &["n"],
        "ladder" | "recursive_ladder" | "mc_ladder" => &["k"],
        "jurdzinski" => &["layers", "blocks"],
        other => {
            return Err(fail(
                1,
                format!(
                    "unknown family `{other}` (expected random, clique, ladder, \
                     recursive_ladder, mc_ladder, or jurdzinski)"
                ),
            ))
        }
    };
    let provided: &[(&str, bool)] = &[
        ("n", args.n.is_some()),
        ("d", args.d.is_some()),
        ("l", args.l.is_some()),
        ("u", args.u.is_some()),
        ("k", args.k.is_some()),
        ("layers", args.layers.is_some()),
        ("blocks", args.blocks.is_some()),
        ("seed", args.seed.is_some()),
    ];
    for (name, given) in provided {
        if *given && !allowed.contains(name) {
            return Err(fail(
                1,
                format!("--{name} does not apply to the `{}` family", args.family),
            ));
        }
    }

    let missing = |flag: &str| fail(1, format!("family `{}` requires --{flag}", args.family));
    let spec = match args.family.as_str() {
        "random" => {
            let seed = match args.seed {
                Some(s) => s,
                None => env_seed()?.ok_or_else(|| {
                    fail(
                        1,
                        "family `random` needs --seed or the WINCORE_SEED \
                         environment variable",
                    )
                })?,
            };
            GenSpec::Random {
                n: args.n.ok_or_else(|| missing("n"))?,
                d: args.d.ok_or_else(|| missing("d"))?,
                l: args.l.unwrap_or(1),
                u: args.u.unwrap_or(5),
                seed,
            }
        }
        "clique" => GenSpec::Clique { n: args.n.ok_or_else(|| missing("n"))? },
        "ladder" => GenSpec::Ladder { k: args.k.ok_or_else(|| missing("k"))? },
        "recursive_ladder" => {
            GenSpec::RecursiveLadder { k: args.k.ok_or_else(|| missing("k"))? }
        }
        "mc_ladder" => GenSpec::McLadder { k: args.k.ok_or_else(|| missing("k"))? },
        "jurdzinski" => GenSpec::Jurdzinski {
            layers: args.layers.ok_or_else(|| missing("layers"))?,
            blocks: args.blocks.ok_or_else(|| missing("blocks"))?,
        },
        _ => unreachable!("family was validated above"),
    };

    let game = spec.generate().map_err(|e| fail(1, e.to_string()))?;
    let text = serialize_pgsolver(&game);
    match &args.out {
        Some(path) => {
            std::fs::write(path, text)
                .map_err(|e| fail(1, format!("cannot write {}: {e}", path.display())))?;
            Ok(String::new())
        }
        None => Ok(text),
    }
}

fn cmd_bench(args: BenchArgs) -> Result<String, Failure> {
    let base_seed = match args.seed {
        Some(s) => s,
        None => env_seed()?.unwrap_or(1),
    };

    let mut instances = Vec::new();
    for spec in &args.instances {
        instances.extend(parse_sweep(spec, base_seed).map_err(|e| fail(1, e))?);
    }

    let algos = if args.algos.is_empty() { Algo::all() } else { args.algos.clone() };
    let workers = match args.workers {
        Some(w) if w >= 1 => w,
        Some(_) => return Err(fail(1, "--workers must be at least 1")),
        None => std::thread::available_parallelism().map(|p| p.get()).unwrap_or(1),
    };

    let cfg = BenchConfig {
        instances,
        algos,
        timeout: args.timeout_secs.map(Duration::from_secs),
        reps: args.reps.max(1),
        workers,
        csv_path: args.csv.clone(),
    };

    let records = run_bench(&cfg).map_err(|e| fail(1, e))?;
    let mut out = summarize(&records);
    if let Some(path) = &cfg.csv_path {
        out.push_str(&format!("csv: {}\n", path.display()));
    }
    Ok(out)
}
