//! Deterministic benchmark families and the seeded random-game model.
//!
//! Every generator is a pure function of its parameters: the same call
//! produces the same game bit-for-bit on every platform. The random model
//! draws, per state in id order: owner, color, out-degree, then the successor
//! sample — so adding draws for one feature never shifts another family's
//! stream.

use crate::error::{Error, Result};
use crate::game::{ParityGame, Player};
use std::collections::HashMap;

/// Owner convention shared by the structured families: player `i mod 2`.
fn parity_owner(i: usize) -> Player {
    if i % 2 == 0 {
        Player::Even
    } else {
        Player::Odd
    }
}

/// SplitMix64: the 64-bit state advances by the golden-gamma constant
/// 0x9E3779B97F4A7C15 and each output is finalized with the
/// xor-shift/multiply chain (constants 0xBF58476D1CE4E5B9 and
/// 0x94D049BB133111EB). Small, fast, and stable across platforms.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> SplitMix64 {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E3779B97F4A7C15);
        let mut x = self.state;
        x = (x ^ (x >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
        x = (x ^ (x >> 27)).wrapping_mul(0x94D049BB133111EB);
        x ^ (x >> 31)
    }

    /// Uniform draw from `0..bound` without modulo bias: values below
    /// `2^64 mod bound` are rejected and redrawn.
    pub fn below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0);
        let threshold = bound.wrapping_neg() % bound;
        loop {
            let x = self.next_u64();
            if x >= threshold {
                return x % bound;
            }
        }
    }

    /// Uniform draw from the inclusive range `lo..=hi`.
    pub fn range(&mut self, lo: u64, hi: u64) -> u64 {
        debug_assert!(lo <= hi);
        lo + self.below(hi - lo + 1)
    }
}

/// A benchmark instance description: family plus parameters. Identical specs
/// generate identical games.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GenSpec {
    Random { n: usize, d: u32, l: usize, u: usize, seed: u64 },
    Clique { n: usize },
    Ladder { k: usize },
    RecursiveLadder { k: usize },
    McLadder { k: usize },
    Jurdzinski { layers: usize, blocks: usize },
}

impl GenSpec {
    pub fn family(&self) -> &'static str {
        match self {
            GenSpec::Random { .. } => "random",
            GenSpec::Clique { .. } => "clique",
            GenSpec::Ladder { .. } => "ladder",
            GenSpec::RecursiveLadder { .. } => "recursive_ladder",
            GenSpec::McLadder { .. } => "mc_ladder",
            GenSpec::Jurdzinski { .. } => "jurdzinski",
        }
    }

    /// Parameter list as `key=value` pairs joined with `;` (seed excluded —
    /// it travels separately).
    pub fn params_string(&self) -> String {
        match self {
            GenSpec::Random { n, d, l, u, .. } => format!("n={n};d={d};l={l};u={u}"),
            GenSpec::Clique { n } => format!("n={n}"),
            GenSpec::Ladder { k } | GenSpec::RecursiveLadder { k } | GenSpec::McLadder { k } => {
                format!("k={k}")
            }
            GenSpec::Jurdzinski { layers, blocks } => format!("l={layers};b={blocks}"),
        }
    }

    pub fn seed(&self) -> Option<u64> {
        match self {
            GenSpec::Random { seed, .. } => Some(*seed),
            _ => None,
        }
    }

    pub fn generate(&self) -> Result<ParityGame> {
        match *self {
            GenSpec::Random { n, d, l, u, seed } => gen_random(n, d, l, u, seed),
            GenSpec::Clique { n } => gen_clique(n),
            GenSpec::Ladder { k } => gen_ladder(k),
            GenSpec::RecursiveLadder { k } => gen_recursive_ladder(k),
            GenSpec::McLadder { k } => gen_mc_ladder(k),
            GenSpec::Jurdzinski { layers, blocks } => gen_jurdzinski(layers, blocks),
        }
    }
}

/// Seeded random game: owners and colors uniform, out-degrees uniform in
/// `[l, u]`, successors drawn uniformly without replacement from all states
/// except the source (no self-loops).
pub fn gen_random(n: usize, d: u32, l: usize, u: usize, seed: u64) -> Result<ParityGame> {
    if n < 2 {
        return Err(Error::InvalidArgument("random game needs n >= 2".into()));
    }
    if d < 1 {
        return Err(Error::InvalidArgument("random game needs d >= 1".into()));
    }
    if !(1 <= l && l <= u && u <= n - 1) {
        return Err(Error::InvalidArgument(format!(
            "degree bounds must satisfy 1 <= l <= u <= n-1, got l={l} u={u} n={n}"
        )));
    }

    let mut rng = SplitMix64::new(seed);
    let mut owner = Vec::with_capacity(n);
    let mut color = Vec::with_capacity(n);
    let mut succ = Vec::with_capacity(n);
    for s in 0..n {
        owner.push(parity_owner(rng.below(2) as usize));
        color.push(rng.range(1, d as u64) as u32);
        let degree = rng.range(l as u64, u as u64) as usize;
        // Partial Fisher–Yates over the n-1 candidate slots; slot x stands
        // for state x, skipping the source. Only touched slots are stored.
        let mut slots: HashMap<usize, usize> = HashMap::new();
        let pool = n - 1;
        let mut picks = Vec::with_capacity(degree);
        for i in 0..degree {
            let jmp = i + rng.below((pool - i) as u64) as usize;
            let slot_i = slots.get(&i).copied().unwrap_or(i);
            let slot_j = slots.get(&jmp).copied().unwrap_or(jmp);
            slots.insert(jmp, slot_i);
            slots.insert(i, slot_j);
            let x = slot_j;
            picks.push(if x < s { x } else { x + 1 });
        }
        succ.push(picks);
    }
    ParityGame::new(owner, color, succ, None)
}

/// Complete directed graph without self-loops; state `i` has color `i+1` and
/// owner `i mod 2`.
pub fn gen_clique(n: usize) -> Result<ParityGame> {
    if n < 2 {
        return Err(Error::InvalidArgument("clique needs n >= 2".into()));
    }
    let owner = (0..n).map(parity_owner).collect();
    let color = (0..n).map(|i| i as u32 + 1).collect();
    let succ = (0..n)
        .map(|i| (0..n).filter(|&j| j != i).collect())
        .collect();
    ParityGame::new(owner, color, succ, None)
}

/// Ring of `2k` states with steps of +1 and +2: state `i` has owner `i mod 2`
/// and color 2 on even ids, 1 on odd ids.
pub fn gen_ladder(k: usize) -> Result<ParityGame> {
    if k < 1 {
        return Err(Error::InvalidArgument("ladder needs k >= 1".into()));
    }
    let n = 2 * k;
    let owner = (0..n).map(parity_owner).collect();
    let color = (0..n).map(|i| if i % 2 == 0 { 2 } else { 1 }).collect();
    let succ = (0..n).map(|i| vec![(i + 1) % n, (i + 2) % n]).collect();
    ParityGame::new(owner, color, succ, None)
}

/// `k` five-state blocks. Block `i` (base `b = 5i`, colors around `2i`):
/// a two-state odd cycle owned by player 1 (`b`, `b+1`, color `2i+1`), a
/// two-state even cycle owned by player 0 (`b+2`, `b+3`, color `2i+2`), and
/// a bridge state `b+4` (owner 0, color `2i+3`) that may retreat into the
/// even cycle or advance to the next block.
pub fn gen_recursive_ladder(k: usize) -> Result<ParityGame> {
    if k < 1 {
        return Err(Error::InvalidArgument("recursive ladder needs k >= 1".into()));
    }
    let n = 5 * k;
    let mut owner = Vec::with_capacity(n);
    let mut color = Vec::with_capacity(n);
    let mut succ: Vec<Vec<usize>> = Vec::with_capacity(n);
    for i in 0..k {
        let b = 5 * i;
        let c = 2 * i as u32;
        owner.extend([Player::Odd, Player::Odd, Player::Even, Player::Even, Player::Even]);
        color.extend([c + 1, c + 1, c + 2, c + 2, c + 3]);
        succ.push(vec![b + 1]);
        succ.push(vec![b, b + 2]);
        succ.push(vec![b + 3]);
        succ.push(vec![b + 2, b + 4]);
        if i + 1 < k {
            succ.push(vec![b + 2, b + 5]);
        } else {
            succ.push(vec![b + 2]);
        }
    }
    ParityGame::new(owner, color, succ, None)
}

/// `3k + 1` states: `k` three-state diamonds funneling into a final
/// self-loop of color 2. Diamond `i` (base `b = 3i`): a fork `b` (owner 0,
/// color 1) into two color-2 states owned by player 1 that both continue to
/// the next diamond.
pub fn gen_mc_ladder(k: usize) -> Result<ParityGame> {
    if k < 1 {
        return Err(Error::InvalidArgument("mc ladder needs k >= 1".into()));
    }
    let n = 3 * k + 1;
    let mut owner = Vec::with_capacity(n);
    let mut color = Vec::with_capacity(n);
    let mut succ: Vec<Vec<usize>> = Vec::with_capacity(n);
    for i in 0..k {
        let b = 3 * i;
        owner.extend([Player::Even, Player::Odd, Player::Odd]);
        color.extend([1, 2, 2]);
        succ.push(vec![b + 1, b + 2]);
        succ.push(vec![b + 3]);
        succ.push(vec![b + 3]);
    }
    owner.push(Player::Even);
    color.push(2);
    succ.push(vec![n - 1]);
    ParityGame::new(owner, color, succ, None)
}

/// Repeller/attractor grid: `layers` levels of `blocks` two-state cycles.
/// Level `i` cycles carry color `i+1` and are owned by the player whose
/// parity that is, and each cycle's head may also escape one level up.
/// `2·layers·blocks` states, maximum color `layers`.
pub fn gen_jurdzinski(layers: usize, blocks: usize) -> Result<ParityGame> {
    if layers < 1 || blocks < 1 {
        return Err(Error::InvalidArgument("jurdzinski needs layers, blocks >= 1".into()));
    }
    let n = 2 * layers * blocks;
    let mut owner = Vec::with_capacity(n);
    let mut color = Vec::with_capacity(n);
    let mut succ: Vec<Vec<usize>> = Vec::with_capacity(n);
    for i in 0..layers {
        let c = i as u32 + 1;
        let who = Player::from_color(c);
        for b in 0..blocks {
            let u = 2 * (i * blocks + b);
            owner.extend([who, who]);
            color.extend([c, c]);
            if i + 1 < layers {
                succ.push(vec![u + 1, u + 2 * blocks]);
            } else {
                succ.push(vec![u + 1]);
            }
            succ.push(vec![u]);
        }
    }
    ParityGame::new(owner, color, succ, None)
}
