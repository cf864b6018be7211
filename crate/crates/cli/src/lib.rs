//! Library half of the `wincore` command-line tool: the benchmark harness
//! (instance sweeps, timed runs, CSV reports) shared between the binary and
//! the integration tests.
//!
//! The harness runs every (instance, algorithm) cell on a worker pool,
//! repeats each cell a configurable number of times with a fresh cooperative
//! deadline per repetition, and collects one [`BenchRecord`] per repetition.
//! Records are emitted in a deterministic order (instances × algorithms ×
//! repetitions, as configured) regardless of worker scheduling, and the CSV
//! file is written through a temporary file renamed into place so an aborted
//! run never leaves a truncated report behind.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};
use wincore::generate::GenSpec;
use wincore::product::DEFAULT_PRODUCT_GUARD;
use wincore::solvers::{zielonka_solve_within, Deadline};
use wincore::wcore::{partial_solve_within, solve_via_core_within};
use wincore::{Error, ParityGame};

/// Solver selector shared by the `solve` and `bench` subcommands.
#[derive(Clone, Copy, PartialEq, Eq, Debug, clap::ValueEnum)]
pub enum Algo {
    /// Winning-core partial solver: fast, may leave states unknown, never wrong.
    WcPartial,
    /// Exact solver that repeatedly peels the winning core computed through
    /// the product reduction.
    WcExact,
    /// Classical recursive attractor solver (exact).
    Zielonka,
}

impl Algo {
    /// Stable identifier used in CSV reports and summaries.
    pub fn id(self) -> &'static str {
        match self {
            Algo::WcPartial => "wc-partial",
            Algo::WcExact => "wc-exact",
            Algo::Zielonka => "zielonka",
        }
    }

    /// Every selectable algorithm, in report order.
    pub fn all() -> Vec<Algo> {
        vec![Algo::WcPartial, Algo::WcExact, Algo::Zielonka]
    }
}

/// How a single timed repetition ended.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BenchStatus {
    /// The solver returned regions within the deadline.
    Ok,
    /// The cooperative deadline expired inside the solver.
    Timeout,
    /// Generation or solving failed (for example, a size guard tripped).
    Error,
}

/// One benchmark measurement: a single repetition of one algorithm on one
/// instance. Field order defines the CSV column order.
///
/// Invariant: `solved + unknown == n` (timeouts and errors count every state
/// as unknown), and `solved == w0 + w1`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct BenchRecord {
    pub family: String,
    pub params: String,
    pub n: usize,
    pub m: usize,
    pub d: u32,
    pub algo: String,
    pub seed: u64,
    pub time_ms: u64,
    pub solved: usize,
    pub unknown: usize,
    pub w0: usize,
    pub w1: usize,
    pub status: BenchStatus,
}

/// A full benchmark request: which instances, which algorithms, and how to
/// run and report them.
#[derive(Clone, Debug)]
pub struct BenchConfig {
    /// Concrete game instances, already expanded from sweep specs.
    pub instances: Vec<GenSpec>,
    /// Algorithms to run on every instance.
    pub algos: Vec<Algo>,
    /// Per-repetition wall-clock budget; `None` runs to completion.
    pub timeout: Option<Duration>,
    /// Timed repetitions per (instance, algorithm) cell; at least 1.
    pub reps: usize,
    /// Worker threads; at least 1.
    pub workers: usize,
    /// When set, the records are also written here as CSV.
    pub csv_path: Option<PathBuf>,
}

/// Parses one instance-sweep spec of the form `family` or
/// `family:key=value,key=value,...` into concrete generator specs.
///
/// Families and keys:
/// - `random`: requires `n` and `d`; `l` (default 1) and `u` (default 5)
///   bound the out-degrees; `seed` (default `base_seed`) seeds the PRNG and
///   `seeds=<count>` expands into `count` instances with seeds
///   `seed, seed+1, ...`.
/// - `clique`: requires `n`.
/// - `ladder`, `recursive_ladder`, `mc_ladder`: require `k`.
/// - `jurdzinski`: requires `layers` (alias `l`) and `blocks` (alias `b`).
pub fn parse_sweep(text: &str, base_seed: u64) -> Result<Vec<GenSpec>, String> {
    let (family, rest) = match text.split_once(':') {
        Some((f, r)) => (f, r),
        None => (text, ""),
    };
    let family = family.trim();

    let mut kv: BTreeMap<String, u64> = BTreeMap::new();
    if !rest.trim().is_empty() {
        for part in rest.split(',') {
            let part = part.trim();
            let (k, v) = part
                .split_once('=')
                .ok_or_else(|| format!("expected key=value in instance spec, got `{part}`"))?;
            let (k, v) = (k.trim(), v.trim());
            let value: u64 = v
                .parse()
                .map_err(|_| format!("key `{k}` needs an unsigned integer, got `{v}`"))?;
            if kv.insert(k.to_string(), value).is_some() {
                return Err(format!("duplicate key `{k}` in instance spec"));
            }
        }
    }

    let mut require = |key: &str| -> Result<u64, String> {
        kv.remove(key)
            .ok_or_else(|| format!("family `{family}` requires `{key}=<value>`"))
    };

    let specs = match family {
        "random" => {
            let n = require("n")? as usize;
            let d_raw = require("d")?;
            let d = u32::try_from(d_raw).map_err(|_| format!("`d={d_raw}` is out of range"))?;
            let l = kv.remove("l").unwrap_or(1) as usize;
            let u = kv.remove("u").unwrap_or(5) as usize;
            let seed0 = kv.remove("seed").unwrap_or(base_seed);
            let count = kv.remove("seeds").unwrap_or(1);
            if count == 0 {
                return Err("`seeds` must be at least 1".to_string());
            }
            (0..count)
                .map(|i| GenSpec::Random { n, d, l, u, seed: seed0.wrapping_add(i) })
                .collect()
        }
        "clique" => vec![GenSpec::Clique { n: require("n")? as usize }],
        "ladder" => vec![GenSpec::Ladder { k: require("k")? as usize }],
        "recursive_ladder" => vec![GenSpec::RecursiveLadder { k: require("k")? as usize }],
        "mc_ladder" => vec![GenSpec::McLadder { k: require("k")? as usize }],
        "jurdzinski" => {
            let layers = kv
                .remove("layers")
                .or_else(|| kv.remove("l"))
                .ok_or_else(|| format!("family `{family}` requires `layers=<value>`"))?;
            let blocks = kv
                .remove("blocks")
                .or_else(|| kv.remove("b"))
                .ok_or_else(|| format!("family `{family}` requires `blocks=<value>`"))?;
            vec![GenSpec::Jurdzinski { layers: layers as usize, blocks: blocks as usize }]
        }
        other => {
            return Err(format!(
                "unknown family `{other}` (expected random, clique, ladder, \
                 recursive_ladder, mc_ladder, or jurdzinski)"
            ))
        }
    };

    if let Some(stray) = kv.keys().next() {
        return Err(format!("unrecognized key `{stray}` for family `{family}`"));
    }
    Ok(specs)
}

/// Runs the configured benchmark on a worker pool and returns one record per
/// (instance, algorithm, repetition), in that deterministic order. When
/// `csv_path` is set, the records are also written there atomically.
pub fn run_bench(cfg: &BenchConfig) -> Result<Vec<BenchRecord>, String> {
    if cfg.instances.is_empty() {
        return Err("no instances to run".to_string());
    }
    if cfg.algos.is_empty() {
        return Err("no algorithms selected".to_string());
    }
    let reps = cfg.reps.max(1);
    let workers = cfg.workers.max(1);

    // One job per (instance, algorithm) cell; repetitions stay inside the job
    // so a cell's repetitions run back to back on one worker.
    let jobs: Vec<(&GenSpec, Algo)> = cfg
        .instances
        .iter()
        .flat_map(|spec| cfg.algos.iter().map(move |&algo| (spec, algo)))
        .collect();

    let next = AtomicUsize::new(0);
    let finished: Mutex<Vec<Option<Vec<BenchRecord>>>> = Mutex::new(vec![None; jobs.len()]);

    std::thread::scope(|scope| {
        for _ in 0..workers.min(jobs.len()) {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= jobs.len() {
                    break;
                }
                let (spec, algo) = jobs[i];
                let records = run_job(spec, algo, reps, cfg.timeout);
                finished.lock().expect("no worker panics while holding the lock")[i] =
                    Some(records);
            });
        }
    });

    let mut records = Vec::with_capacity(jobs.len() * reps);
    for slot in finished.into_inner().expect("workers have exited") {
        records.extend(slot.expect("every job index was claimed by a worker"));
    }

    if let Some(path) = &cfg.csv_path {
        write_records(path, &records)?;
    }
    Ok(records)
}

/// Runs all repetitions of one (instance, algorithm) cell. Generation happens
/// once, outside the timed section; a generator failure yields `error`
/// records with `n = 0`.
fn run_job(spec: &GenSpec, algo: Algo, reps: usize, timeout: Option<Duration>) -> Vec<BenchRecord> {
    let family = spec.family().to_string();
    let params = spec.params_string();
    let seed = spec.seed().unwrap_or(0);
    match spec.generate() {
        Ok(game) => (0..reps)
            .map(|_| run_once(&game, algo, timeout, &family, &params, seed))
            .collect(),
        Err(_) => (0..reps)
            .map(|_| BenchRecord {
                family: family.clone(),
                params: params.clone(),
                n: 0,
                m: 0,
                d: 0,
                algo: algo.id().to_string(),
                seed,
                time_ms: 0,
                solved: 0,
                unknown: 0,
                w0: 0,
                w1: 0,
                status: BenchStatus::Error,
            })
            .collect(),
    }
}

/// One timed repetition. The deadline starts when the solver starts; parsing
/// and generation are never inside the timed section.
fn run_once(
    game: &ParityGame,
    algo: Algo,
    timeout: Option<Duration>,
    family: &str,
    params: &str,
    seed: u64,
) -> BenchRecord {
    let deadline = match timeout {
        Some(budget) => Deadline::after(budget),
        None => Deadline::none(),
    };
    let start = Instant::now();
    let outcome = match algo {
        Algo::Zielonka => zielonka_solve_within(game, &deadline),
        Algo::WcExact => solve_via_core_within(game, DEFAULT_PRODUCT_GUARD, &deadline),
        Algo::WcPartial => partial_solve_within(game, &deadline),
    };
    let time_ms = start.elapsed().as_millis() as u64;

    let n = game.state_count();
    let (solved, unknown, w0, w1, status) = match outcome {
        Ok(regions) => (
            n - regions.unknown.len(),
            regions.unknown.len(),
            regions.win0.len(),
            regions.win1.len(),
            BenchStatus::Ok,
        ),
        Err(Error::Timeout) => (0, n, 0, 0, BenchStatus::Timeout),
        Err(_) => (0, n, 0, 0, BenchStatus::Error),
    };

    BenchRecord {
        family: family.to_string(),
        params: params.to_string(),
        n,
        m: game.edge_count(),
        d: game.max_color(),
        algo: algo.id().to_string(),
        seed,
        time_ms,
        solved,
        unknown,
        w0,
        w1,
        status,
    }
}

/// Writes the records as CSV through a temporary file in the same directory,
/// renamed into place once complete, so an interrupted run never leaves a
/// truncated report at `path`.
pub fn write_records(path: &Path, records: &[BenchRecord]) -> Result<(), String> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p.to_path_buf(),
        _ => PathBuf::from("."),
    };
    let base = path
        .file_name()
        .and_then(|s| s.to_str())
        .unwrap_or("bench.csv");
    let tmp = dir.join(format!(".{base}.tmp{}", std::process::id()));

    let mut writer = csv::Writer::from_path(&tmp)
        .map_err(|e| format!("cannot write {}: {e}", tmp.display()))?;
    for record in records {
        writer
            .serialize(record)
            .map_err(|e| format!("cannot write CSV row: {e}"))?;
    }
    writer
        .flush()
        .map_err(|e| format!("cannot flush {}: {e}", tmp.display()))?;
    drop(writer);

    std::fs::rename(&tmp, path)
        .map_err(|e| format!("cannot move the CSV into place at {}: {e}", path.display()))
}

/// Reads back a CSV report written by [`write_records`].
pub fn read_records(path: &Path) -> Result<Vec<BenchRecord>, String> {
    let mut reader =
        csv::Reader::from_path(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    reader
        .deserialize()
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| format!("bad CSV row in {}: {e}", path.display()))
}

/// Renders a human-readable per-group summary: one line per
/// (family, params, algorithm) group in first-seen order, with run counts,
/// the median wall time over successful repetitions, and how many successful
/// runs were incomplete (left states unknown).
pub fn summarize(records: &[BenchRecord]) -> String {
    struct Agg {
        runs: usize,
        ok: usize,
        timeout: usize,
        error: usize,
        incomplete: usize,
        ok_times: Vec<u64>,
    }

    let mut order: Vec<(String, String, String)> = Vec::new();
    let mut groups: BTreeMap<(String, String, String), Agg> = BTreeMap::new();
    for r in records {
        let key = (r.family.clone(), r.params.clone(), r.algo.clone());
        let agg = groups.entry(key.clone()).or_insert_with(|| {
            order.push(key);
            Agg { runs: 0, ok: 0, timeout: 0, error: 0, incomplete: 0, ok_times: Vec::new() }
        });
        agg.runs += 1;
        match r.status {
            BenchStatus::Ok => {
                agg.ok += 1;
                agg.ok_times.push(r.time_ms);
                if r.unknown > 0 {
                    agg.incomplete += 1;
                }
            }
            BenchStatus::Timeout => agg.timeout += 1,
            BenchStatus::Error => agg.error += 1,
        }
    }

    let mut out = String::new();
    for key in &order {
        let agg = groups.get_mut(key).expect("group was inserted above");
        agg.ok_times.sort_unstable();
        let median = match agg.ok_times.len() {
            0 => "-".to_string(),
            len if len % 2 == 1 => agg.ok_times[len / 2].to_string(),
            len => ((agg.ok_times[len / 2 - 1] + agg.ok_times[len / 2]) / 2).to_string(),
        };
        let (family, params, algo) = key;
        let shown = if params.is_empty() { String::new() } else { format!("[{params}]") };
        out.push_str(&format!(
            "{family}{shown} {algo}: runs={} ok={} timeout={} error={} median_ms={median} incomplete={}",
            agg.runs, agg.ok, agg.timeout, agg.error, agg.incomplete
        ));
        if agg.ok > 0 {
            out.push_str(&format!(
                " ({:.2}%)",
                100.0 * agg.incomplete as f64 / agg.ok as f64
            ));
        }
        out.push('\n');
    }
    out.push_str(&format!("{} records total\n", records.len()));
    out
}
