//! The parity game model: state owners, colors, and a total transition relation.

use crate::error::{Error, Result};
use crate::set::StateSet;

/// The two players. `Even` (player 0) wins a play iff the maximum color seen
/// infinitely often is even; `Odd` (player 1) wins the other plays.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Player {
    Even,
    Odd,
}

impl Player {
    pub fn opponent(self) -> Player {
        match self {
            Player::Even => Player::Odd,
            Player::Odd => Player::Even,
        }
    }

    /// 0 for `Even`, 1 for `Odd`; matches the owner digit in game files.
    pub fn index(self) -> usize {
        match self {
            Player::Even => 0,
            Player::Odd => 1,
        }
    }

    pub fn from_index(index: usize) -> Result<Player> {
        match index {
            0 => Ok(Player::Even),
            1 => Ok(Player::Odd),
            other => Err(Error::InvalidArgument(format!("player index {other}, expected 0 or 1"))),
        }
    }

    /// The player whose parity matches `color`.
    pub fn from_color(color: u32) -> Player {
        if color % 2 == 0 {
            Player::Even
        } else {
            Player::Odd
        }
    }

    /// True iff a play whose maximal recurring color is `color` is won by `self`.
    pub fn wins_color(self, color: u32) -> bool {
        color as usize % 2 == self.index()
    }
}

impl std::fmt::Display for Player {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.index())
    }
}

/// A parity game: every state has an owner, a color in `1..=max_color`, and at
/// least one successor.
///
/// Successor lists are stored sorted and deduplicated, so two games built from
/// the same structure compare equal regardless of input edge order, and all
/// worklist iterations are deterministic. Predecessor lists are derived at
/// construction.
#[derive(Clone, PartialEq, Eq)]
pub struct ParityGame {
    owner: Vec<Player>,
    color: Vec<u32>,
    succ_index: Vec<usize>,
    succ: Vec<usize>,
    pred_index: Vec<usize>,
    pred: Vec<usize>,
    max_color: u32,
    names: Option<Vec<Option<String>>>,
}

impl ParityGame {
    /// Builds a game from per-state data. Successor lists are sorted and
    /// deduplicated; empty lists and out-of-range targets or colors are
    /// rejected.
    pub fn new(
        owner: Vec<Player>,
        color: Vec<u32>,
        successors: Vec<Vec<usize>>,
        names: Option<Vec<Option<String>>>,
    ) -> Result<ParityGame> {
        let n = owner.len();
        if n == 0 {
            return Err(Error::InvalidArgument("a game needs at least one state".into()));
        }
        if color.len() != n || successors.len() != n {
            return Err(Error::InvalidArgument(format!(
                "inconsistent state counts: {} owners, {} colors, {} successor lists",
                n,
                color.len(),
                successors.len()
            )));
        }
        if let Some(ns) = &names {
            if ns.len() != n {
                return Err(Error::InvalidArgument(format!(
                    "inconsistent state counts: {} owners, {} names",
                    n,
                    ns.len()
                )));
            }
        }
        for (s, &c) in color.iter().enumerate() {
            if c == 0 {
                return Err(Error::BadColor { state: s, color: c });
            }
        }

        let mut succ_index = Vec::with_capacity(n + 1);
        let mut succ = Vec::new();
        succ_index.push(0);
        for (s, mut list) in successors.into_iter().enumerate() {
            list.sort_unstable();
            list.dedup();
            if list.is_empty() {
                return Err(Error::NonTotal { state: s });
            }
            if let Some(&t) = list.last() {
                if t >= n {
                    return Err(Error::DanglingSuccessor { state: s, succ: t });
                }
            }
            succ.extend_from_slice(&list);
            succ_index.push(succ.len());
        }

        // Counting sort of the reversed edges; keeps each predecessor list in
        // ascending order because edges are visited by ascending source.
        let mut pred_count = vec![0usize; n];
        for &t in &succ {
            pred_count[t] += 1;
        }
        let mut pred_index = Vec::with_capacity(n + 1);
        pred_index.push(0);
        for s in 0..n {
            pred_index.push(pred_index[s] + pred_count[s]);
        }
        let mut pred = vec![0usize; succ.len()];
        let mut cursor = pred_index.clone();
        for s in 0..n {
            for &t in &succ[succ_index[s]..succ_index[s + 1]] {
                pred[cursor[t]] = s;
                cursor[t] += 1;
            }
        }

        let max_color = color.iter().copied().max().unwrap();
        Ok(ParityGame {
            owner,
            color,
            succ_index,
            succ,
            pred_index,
            pred,
            max_color,
            names,
        })
    }

    pub fn state_count(&self) -> usize {
        self.owner.len()
    }

    /// Number of distinct transitions.
    pub fn edge_count(&self) -> usize {
        self.succ.len()
    }

    /// Largest color in the game.
    pub fn max_color(&self) -> u32 {
        self.max_color
    }

    pub fn owner(&self, state: usize) -> Player {
        self.owner[state]
    }

    pub fn color(&self, state: usize) -> u32 {
        self.color[state]
    }

    /// Successors of `state`, ascending.
    pub fn successors(&self, state: usize) -> &[usize] {
        &self.succ[self.succ_index[state]..self.succ_index[state + 1]]
    }

    /// Predecessors of `state`, ascending.
    pub fn predecessors(&self, state: usize) -> &[usize] {
        &self.pred[self.pred_index[state]..self.pred_index[state + 1]]
    }

    pub fn out_degree(&self, state: usize) -> usize {
        self.succ_index[state + 1] - self.succ_index[state]
    }

    pub fn has_edge(&self, from: usize, to: usize) -> bool {
        self.successors(from).binary_search(&to).is_ok()
    }

    pub fn name(&self, state: usize) -> Option<&str> {
        self.names.as_ref()?.get(state)?.as_deref()
    }

    pub fn states(&self) -> std::ops::Range<usize> {
        0..self.state_count()
    }

    /// The states owned by `player`.
    pub fn states_of(&self, player: Player) -> StateSet {
        StateSet::from_states(
            self.state_count(),
            self.states().filter(|&s| self.owner[s] == player),
        )
    }

    /// The states with color exactly `color`.
    pub fn states_with_color(&self, color: u32) -> StateSet {
        StateSet::from_states(
            self.state_count(),
            self.states().filter(|&s| self.color[s] == color),
        )
    }

    /// Restricts the game to `keep`, compacting state ids.
    ///
    /// Fails with `NonTotal` (reporting the offending state under its original
    /// id) if some kept state loses all its successors. The maximal color is
    /// recomputed from the kept states.
    pub fn restrict(&self, keep: &StateSet) -> Result<Restriction> {
        if keep.capacity() != self.state_count() {
            return Err(Error::InvalidArgument(
                "keep set capacity does not match the game".into(),
            ));
        }
        if keep.is_empty() {
            return Err(Error::InvalidArgument("cannot restrict a game to no states".into()));
        }
        let mut to_sub = vec![usize::MAX; self.state_count()];
        let mut to_parent = Vec::with_capacity(keep.len());
        for (new_id, s) in keep.iter().enumerate() {
            to_sub[s] = new_id;
            to_parent.push(s);
        }
        let mut owner = Vec::with_capacity(keep.len());
        let mut color = Vec::with_capacity(keep.len());
        let mut successors = Vec::with_capacity(keep.len());
        let mut names = self.names.as_ref().map(|_| Vec::with_capacity(keep.len()));
        for &s in &to_parent {
            let list: Vec<usize> = self
                .successors(s)
                .iter()
                .filter(|&&t| keep.contains(t))
                .map(|&t| to_sub[t])
                .collect();
            if list.is_empty() {
                return Err(Error::NonTotal { state: s });
            }
            owner.push(self.owner[s]);
            color.push(self.color[s]);
            successors.push(list);
            if let Some(ns) = &mut names {
                ns.push(self.names.as_ref().unwrap()[s].clone());
            }
        }
        let game = ParityGame::new(owner, color, successors, names)?;
        Ok(Restriction { game, to_parent })
    }
}

impl std::fmt::Debug for ParityGame {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(
            f,
            "ParityGame({} states, {} edges, max color {})",
            self.state_count(),
            self.edge_count(),
            self.max_color
        )?;
        for s in self.states() {
            writeln!(
                f,
                "  {} c{} p{} -> {:?}",
                s,
                self.color(s),
                self.owner(s),
                self.successors(s)
            )?;
        }
        Ok(())
    }
}

/// A compacted subgame together with the map back to the parent's ids.
pub struct Restriction {
    pub game: ParityGame,
    /// `to_parent[new_id]` is the id the state had in the parent game.
    pub to_parent: Vec<usize>,
}

impl Restriction {
    /// Translates a set of subgame states into parent ids.
    pub fn lift_set(&self, sub: &StateSet, parent_capacity: usize) -> StateSet {
        StateSet::from_states(parent_capacity, sub.iter().map(|s| self.to_parent[s]))
    }
}
