//! Exact solvers and verification: Zielonka's algorithm as the production
//! oracle, brute-force profile enumeration as ground truth on tiny games, and
//! a soundness checker for memoryless strategies.

mod brute;
mod verify;
mod zielonka;

pub use brute::{
    brute_force_regions, brute_force_regions_bounded, brute_force_winning_core,
    DEFAULT_PROFILE_BOUND,
};
pub use verify::verify_memoryless_winning;
pub use zielonka::{zielonka_solve, zielonka_solve_within};

use crate::error::{Error, Result};
use crate::game::Player;
use crate::set::StateSet;
use std::time::{Duration, Instant};

/// A positional strategy for one player: at most one chosen successor per
/// state, defined only on states that player owns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MemorylessStrategy {
    owner: Player,
    choice: Vec<Option<usize>>,
}

impl MemorylessStrategy {
    pub fn new(owner: Player, state_count: usize) -> MemorylessStrategy {
        MemorylessStrategy { owner, choice: vec![None; state_count] }
    }

    pub fn owner(&self) -> Player {
        self.owner
    }

    pub fn state_count(&self) -> usize {
        self.choice.len()
    }

    /// The chosen successor of `s`, if any.
    pub fn get(&self, s: usize) -> Option<usize> {
        self.choice[s]
    }

    pub fn set(&mut self, s: usize, t: usize) {
        self.choice[s] = Some(t);
    }

    pub fn clear(&mut self, s: usize) {
        self.choice[s] = None;
    }

    /// States with a defined choice, ascending.
    pub fn defined(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.choice
            .iter()
            .enumerate()
            .filter_map(|(s, c)| c.map(|t| (s, t)))
    }

    /// Copy `other`'s choices (given over a subgame) into `self`, translating
    /// states through `to_parent`.
    pub fn absorb_mapped(&mut self, other: &MemorylessStrategy, to_parent: &[usize]) {
        debug_assert_eq!(self.owner, other.owner);
        for (s, t) in other.defined() {
            self.choice[to_parent[s]] = Some(to_parent[t]);
        }
    }
}

/// Result of solving a game: the two winning regions, the states a partial
/// solver left undecided, and (when the algorithm produces them) a winning
/// strategy for each player on its own region.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Regions {
    pub win0: StateSet,
    pub win1: StateSet,
    pub unknown: StateSet,
    pub strategy0: Option<MemorylessStrategy>,
    pub strategy1: Option<MemorylessStrategy>,
}

impl Regions {
    /// All-unknown regions over `n` states, no strategies.
    pub fn undecided(n: usize) -> Regions {
        Regions {
            win0: StateSet::empty(n),
            win1: StateSet::empty(n),
            unknown: StateSet::full(n),
            strategy0: None,
            strategy1: None,
        }
    }

    pub fn win(&self, j: Player) -> &StateSet {
        match j {
            Player::Even => &self.win0,
            Player::Odd => &self.win1,
        }
    }

    pub fn win_mut(&mut self, j: Player) -> &mut StateSet {
        match j {
            Player::Even => &mut self.win0,
            Player::Odd => &mut self.win1,
        }
    }

    pub fn strategy(&self, j: Player) -> Option<&MemorylessStrategy> {
        match j {
            Player::Even => self.strategy0.as_ref(),
            Player::Odd => self.strategy1.as_ref(),
        }
    }

    /// Do win0/win1/unknown partition the state space?
    pub fn is_partition(&self) -> bool {
        let n = self.win0.capacity();
        self.win1.capacity() == n
            && self.unknown.capacity() == n
            && self.win0.is_disjoint_from(&self.win1)
            && self.win0.is_disjoint_from(&self.unknown)
            && self.win1.is_disjoint_from(&self.unknown)
            && self.win0.len() + self.win1.len() + self.unknown.len() == n
    }

    /// Render as the text exchange format: `W0:`/`W1:` lines with ascending
    /// ids, plus a `U:` line only when states are undecided.
    pub fn to_text(&self) -> String {
        fn line(label: &str, set: &StateSet) -> String {
            let mut s = String::from(label);
            s.push(':');
            for id in set.iter() {
                s.push(' ');
                s.push_str(&id.to_string());
            }
            s.push('\n');
            s
        }
        let mut out = line("W0", &self.win0);
        out.push_str(&line("W1", &self.win1));
        if !self.unknown.is_empty() {
            out.push_str(&line("U", &self.unknown));
        }
        out
    }

    /// Parse the text format back over a game with `state_count` states.
    /// States left unmentioned count as undecided; strategies are not part of
    /// the format. Rejects out-of-range ids and states claimed twice.
    pub fn from_text(text: &str, state_count: usize) -> Result<Regions> {
        let mut win0 = StateSet::empty(state_count);
        let mut win1 = StateSet::empty(state_count);
        let mut explicit_unknown = StateSet::empty(state_count);
        let mut seen = StateSet::empty(state_count);
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() {
                continue;
            }
            let (label, rest) = line.split_once(':').ok_or_else(|| Error::Parse {
                line: lineno + 1,
                col: 1,
                msg: "expected `W0:`, `W1:`, or `U:`".into(),
            })?;
            let set = match label.trim() {
                "W0" => &mut win0,
                "W1" => &mut win1,
                "U" => &mut explicit_unknown,
                other => {
                    return Err(Error::Parse {
                        line: lineno + 1,
                        col: 1,
                        msg: format!("unknown region label `{other}`"),
                    })
                }
            };
            for tok in rest.split_whitespace() {
                let id: usize = tok.parse().map_err(|_| Error::Parse {
                    line: lineno + 1,
                    col: 1,
                    msg: format!("bad state id `{tok}`"),
                })?;
                if id >= state_count {
                    return Err(Error::InvalidArgument(format!(
                        "state {id} out of range for a {state_count}-state game"
                    )));
                }
                if !seen.insert(id) {
                    return Err(Error::InvalidArgument(format!(
                        "state {id} listed in more than one region"
                    )));
                }
                set.insert(id);
            }
        }
        let mut unknown = seen.complement();
        unknown.union_with(&explicit_unknown);
        Ok(Regions { win0, win1, unknown, strategy0: None, strategy1: None })
    }
}

/// Cooperative cutoff for long-running solves: loops poll it at iteration
/// boundaries and bail out with [`Error::Timeout`] once it has passed.
#[derive(Debug, Clone, Copy)]
pub struct Deadline {
    at: Option<Instant>,
}

impl Deadline {
    /// Never expires.
    pub fn none() -> Deadline {
        Deadline { at: None }
    }

    pub fn after(budget: Duration) -> Deadline {
        Deadline { at: Some(Instant::now() + budget) }
    }

    pub fn expired(&self) -> bool {
        self.at.is_some_and(|t| Instant::now() >= t)
    }

    pub fn check(&self) -> Result<()> {
        if self.expired() {
            Err(Error::Timeout)
        } else {
            Ok(())
        }
    }
}
