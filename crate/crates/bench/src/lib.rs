//! Benchmark-only crate; the measurements live in `benches/solvers.rs` and
//! run with `cargo bench -p wincore-bench`. This library target exists so the
//! bench target has a package to live in and exposes the shared instance
//! table the benchmarks measure.

use wincore::generate::GenSpec;
use wincore::ParityGame;

/// The fixed instance table used by the benchmark target: one representative
/// per family at a size where every solver finishes in milliseconds, plus a
/// high-color random game where the product-based exact path starts to feel
/// its size.
pub fn instances() -> Vec<(&'static str, ParityGame)> {
    let specs: Vec<(&'static str, GenSpec)> = vec![
        ("random-n200-d5", GenSpec::Random { n: 200, d: 5, l: 1, u: 5, seed: 61 }),
        ("random-n200-d50", GenSpec::Random { n: 200, d: 50, l: 1, u: 5, seed: 62 }),
        ("random-n200-d5-dense", GenSpec::Random { n: 200, d: 5, l: 5, u: 10, seed: 63 }),
        ("clique-n100", GenSpec::Clique { n: 100 }),
        ("ladder-k1000", GenSpec::Ladder { k: 1000 }),
        ("recursive-ladder-k10", GenSpec::RecursiveLadder { k: 10 }),
        ("mc-ladder-k50", GenSpec::McLadder { k: 50 }),
        ("jurdzinski-5x5", GenSpec::Jurdzinski { layers: 5, blocks: 5 }),
    ];
    specs
        .into_iter()
        .map(|(name, spec)| (name, spec.generate().expect("benchmark parameters are valid")))
        .collect()
}
