//! The record-the-maximum product construction.
//!
//! For a player `j`, the product tracks alongside each base state the greatest
//! color seen so far in the play. A product state `(s, v)` keeps `s`'s owner;
//! an edge `(s, s')` becomes `((s, v), (s', max(v, c(s'))))`. The color of
//! `(s, v)` is `c(s)` while the recorded value `v` has `j`'s parity and `v`
//! itself otherwise — so whenever the record is against `j`, the record
//! dominates the colors fed to the parity condition.

use crate::error::{Error, Result};
use crate::game::{ParityGame, Player};
use crate::set::StateSet;

/// Cap on explicitly materialized product states.
pub const DEFAULT_PRODUCT_GUARD: usize = 50_000_000;

/// Explicit product of a base game with the value track `{0, …, d}`.
///
/// Product state ids are `s·(d+1) + v`. The contained [`ParityGame`] is a
/// faithful materialization except that all colors are shifted by +2 when the
/// construction yields a color 0 (the model requires colors ≥ 1; a uniform
/// shift preserves winners and strategies). [`ProductGame::raw_color`] exposes
/// the unshifted values.
#[derive(Debug)]
pub struct ProductGame {
    player: Player,
    base_states: usize,
    d: u32,
    game: ParityGame,
    raw_color: Vec<u32>,
    color_shift: u32,
}

impl ProductGame {
    pub fn player(&self) -> Player {
        self.player
    }

    /// The materialized game over product states.
    pub fn game(&self) -> &ParityGame {
        &self.game
    }

    pub fn base_states(&self) -> usize {
        self.base_states
    }

    /// Highest trackable value = the base game's maximum color.
    pub fn max_value(&self) -> u32 {
        self.d
    }

    /// Product state id of `(s, v)`.
    pub fn index(&self, s: usize, v: u32) -> usize {
        debug_assert!(s < self.base_states && v <= self.d);
        s * (self.d as usize + 1) + v as usize
    }

    /// Base state of a product id.
    pub fn st(&self, p: usize) -> usize {
        p / (self.d as usize + 1)
    }

    /// Recorded value of a product id.
    pub fn val(&self, p: usize) -> u32 {
        (p % (self.d as usize + 1)) as u32
    }

    /// The construction's color before the uniform shift (may be 0).
    pub fn raw_color(&self, p: usize) -> u32 {
        self.raw_color[p]
    }

    pub fn color_shift(&self) -> u32 {
        self.color_shift
    }

    /// Base states `s` whose `(s, 0)` product state lies in `product_set`.
    pub fn zero_fiber(&self, product_set: &StateSet) -> StateSet {
        let mut out = StateSet::empty(self.base_states);
        for s in 0..self.base_states {
            if product_set.contains(self.index(s, 0)) {
                out.insert(s);
            }
        }
        out
    }
}

/// Materialize the product for player `j` with the default size guard.
pub fn product_game(game: &ParityGame, j: Player) -> Result<ProductGame> {
    product_game_guarded(game, j, DEFAULT_PRODUCT_GUARD)
}

/// Materialize the product for player `j`, refusing above `guard` states.
pub fn product_game_guarded(game: &ParityGame, j: Player, guard: usize) -> Result<ProductGame> {
    let n = game.state_count();
    let d = game.max_color();
    let values = d as usize + 1;
    let states = n
        .checked_mul(values)
        .ok_or(Error::ProductTooLarge { states: usize::MAX, guard })?;
    if states > guard {
        return Err(Error::ProductTooLarge { states, guard });
    }

    let mut raw_color = Vec::with_capacity(states);
    let mut owner = Vec::with_capacity(states);
    let mut succ: Vec<Vec<usize>> = Vec::with_capacity(states);
    for s in 0..n {
        for v in 0..=d {
            owner.push(game.owner(s));
            raw_color.push(if j.wins_color(v) { game.color(s) } else { v });
            succ.push(
                game.successors(s)
                    .iter()
                    .map(|&t| (values * t) + v.max(game.color(t)) as usize)
                    .collect(),
            );
        }
    }
    let color_shift = if raw_color.contains(&0) { 2 } else { 0 };
    let color = raw_color.iter().map(|&c| c + color_shift).collect();
    let game = ParityGame::new(owner, color, succ, None)?;
    Ok(ProductGame { player: j, base_states: n, d, game, raw_color, color_shift })
}

/// Image of a base path in the product: pairs `(state, running max)` where
/// the record starts at `v0` and absorbs each visited state's color after the
/// first. A single state is a valid (empty) path.
pub fn lift_path(game: &ParityGame, path: &[usize], v0: u32) -> Result<Vec<(usize, u32)>> {
    if path.is_empty() {
        return Err(Error::InvalidArgument("path must contain at least one state".into()));
    }
    if v0 > game.max_color() {
        return Err(Error::InvalidArgument(format!(
            "start value {v0} exceeds the maximum color {}",
            game.max_color()
        )));
    }
    for &s in path {
        if s >= game.state_count() {
            return Err(Error::InvalidArgument(format!("state {s} out of range")));
        }
    }
    for (i, pair) in path.windows(2).enumerate() {
        if !game.has_edge(pair[0], pair[1]) {
            return Err(Error::NotAPath { index: i, from: pair[0], to: pair[1] });
        }
    }
    let mut out = Vec::with_capacity(path.len());
    let mut v = v0;
    out.push((path[0], v));
    for &s in &path[1..] {
        v = v.max(game.color(s));
        out.push((s, v));
    }
    Ok(out)
}
