//! Finite paths and lassos: domination by a player and lasso classification.
//!
//! A finite path dominates for player `j` when the highest color seen *after*
//! the first state has `j`'s parity. The first state is deliberately excluded:
//! when paths are chained end-to-start, each state's color is counted by
//! exactly one segment.

use crate::error::{Error, Result};
use crate::game::{ParityGame, Player};

/// Does the maximum non-initial color along `path` belong to player `j`?
///
/// `path` must list at least two states and follow edges of the game.
pub fn is_j_dominating(game: &ParityGame, j: Player, path: &[usize]) -> Result<bool> {
    check_path(game, path)?;
    let max = path[1..].iter().map(|&s| game.color(s)).max().unwrap();
    Ok(j.wins_color(max))
}

/// Longest chain of `j`-dominating segments that starts at the beginning of
/// `path`, where each segment ends on the state the next one starts from.
/// States after the final segment are free. Returns 0 when not even one
/// dominating prefix exists.
pub fn max_consecutive_dominating(game: &ParityGame, j: Player, path: &[usize]) -> Result<usize> {
    check_path(game, path)?;
    // best[i] = Some(q): a chain of exactly q dominating segments covers
    // path[0..=i]; None: no chain ends at i. Quadratic in the path length.
    let mut best: Vec<Option<usize>> = vec![None; path.len()];
    best[0] = Some(0);
    for i in 1..path.len() {
        // running maximum of colors over path[k+1..=i], maintained as k descends
        let mut seg_max = 0;
        for k in (0..i).rev() {
            seg_max = seg_max.max(game.color(path[k + 1]));
            if j.wins_color(seg_max) {
                if let Some(q) = best[k] {
                    best[i] = Some(best[i].map_or(q + 1, |b| b.max(q + 1)));
                }
            }
        }
    }
    Ok(best.iter().flatten().copied().max().unwrap_or(0))
}

/// Which of the four lasso classes a `prefix · cycle^ω` play falls in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LassoClass {
    /// Winner of the play: owner of the parity of the highest color on the cycle.
    pub winner: Player,
    /// Whether the play additionally dominates for its winner from the start,
    /// i.e. the highest color over all non-initial positions (rest of the
    /// prefix plus the whole cycle) has the winner's parity.
    pub dominating: bool,
}

/// Classify the infinite play that follows `prefix` once and then repeats
/// `cycle` forever.
///
/// The prefix may be empty; the cycle may not. Every consecutive pair —
/// within the prefix, from the prefix into the cycle, within the cycle, and
/// from the cycle's last state back to its first — must be an edge.
pub fn classify_lasso(game: &ParityGame, prefix: &[usize], cycle: &[usize]) -> Result<LassoClass> {
    if cycle.is_empty() {
        return Err(Error::BadLasso("cycle part must be nonempty".into()));
    }
    for &s in prefix.iter().chain(cycle) {
        if s >= game.state_count() {
            return Err(Error::BadLasso(format!("state {s} out of range")));
        }
    }
    // Walk prefix · cycle · cycle[0] and demand an edge at every step.
    let mut walk: Vec<usize> = Vec::with_capacity(prefix.len() + cycle.len() + 1);
    walk.extend_from_slice(prefix);
    walk.extend_from_slice(cycle);
    walk.push(cycle[0]);
    for (i, pair) in walk.windows(2).enumerate() {
        if !game.has_edge(pair[0], pair[1]) {
            return Err(Error::NotAPath { index: i, from: pair[0], to: pair[1] });
        }
    }

    let cycle_max = cycle.iter().map(|&s| game.color(s)).max().unwrap();
    let winner = Player::from_color(cycle_max);
    // Non-initial positions: prefix[1..] once, then the cycle forever. With an
    // empty prefix the cycle still revisits its own head, so every cycle state
    // is non-initial eventually.
    let tail_max = prefix
        .iter()
        .skip(1)
        .chain(cycle)
        .map(|&s| game.color(s))
        .max()
        .unwrap();
    Ok(LassoClass { winner, dominating: winner.wins_color(tail_max) })
}

fn check_path(game: &ParityGame, path: &[usize]) -> Result<()> {
    if path.len() < 2 {
        return Err(Error::InvalidArgument(
            "path must contain at least one transition".into(),
        ));
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
    Ok(())
}
