//! Ground truth by exhaustive enumeration of memoryless strategy profiles.
//!
//! Only usable on tiny games: the number of profiles is the product of all
//! out-degrees. Each winning region is computed independently from its own
//! player's perspective (exists-forall over profiles), and the two results
//! must partition the state space — a free determinacy check.

use crate::error::{Error, Result};
use crate::game::{ParityGame, Player};
use crate::product::product_game;
use crate::set::StateSet;
use crate::solvers::{MemorylessStrategy, Regions};

/// Default cap on the profile product.
pub const DEFAULT_PROFILE_BOUND: u128 = 1_000_000;

/// Exact regions by strategy enumeration, with the default profile bound.
pub fn brute_force_regions(game: &ParityGame) -> Result<Regions> {
    brute_force_regions_bounded(game, DEFAULT_PROFILE_BOUND)
}

/// Exact regions by strategy enumeration. `s ∈ win_j` iff some memoryless
/// strategy of `j` beats every memoryless reply from `s`; by memoryless
/// determinacy the sets of both players partition the states, which is
/// asserted. Also emits, per player, one strategy that wins on the whole
/// region (the enumerated strategy with the largest winning set).
pub fn brute_force_regions_bounded(game: &ParityGame, bound: u128) -> Result<Regions> {
    let n = game.state_count();
    let mut profiles: u128 = 1;
    for s in 0..n {
        profiles = profiles.saturating_mul(game.out_degree(s) as u128);
    }
    if profiles > bound {
        return Err(Error::TooManyProfiles { profiles, bound });
    }

    let (win0, strategy0) = winning_side(game, Player::Even);
    let (win1, strategy1) = winning_side(game, Player::Odd);
    assert!(
        win0.is_disjoint_from(&win1) && win0.len() + win1.len() == n,
        "memoryless determinacy violated — enumeration bug"
    );

    Ok(Regions {
        win0,
        win1,
        unknown: StateSet::empty(n),
        strategy0: Some(strategy0),
        strategy1: Some(strategy1),
    })
}

/// Ground-truth winning core of `j` on a tiny game: states whose `(s, 0)`
/// product state is won by `j` in the record-the-maximum product, with the
/// product itself solved by profile enumeration.
pub fn brute_force_winning_core(game: &ParityGame, j: Player) -> Result<StateSet> {
    let product = product_game(game, j)?;
    let solved = brute_force_regions(product.game())?;
    Ok(product.zero_fiber(solved.win(j)))
}

/// States from which `j` has a strategy that wins against all replies, plus
/// the single best strategy found (covers the whole region by determinacy).
fn winning_side(game: &ParityGame, j: Player) -> (StateSet, MemorylessStrategy) {
    let n = game.state_count();
    let own: Vec<usize> = game.states_of(j).iter().collect();
    let opp: Vec<usize> = game.states_of(j.opponent()).iter().collect();

    let mut choice = vec![0usize; n]; // successor index per state
    let mut win = StateSet::empty(n);
    let mut best = MemorylessStrategy::new(j, n);
    let mut best_len = 0;
    let mut eval = LassoEval::new(n);

    let mut own_iter = ProfileIter::new(game, &own);
    loop {
        own_iter.write(&mut choice);
        // wins_here[s]: so far, j's current strategy beat every reply from s.
        let mut survivors = StateSet::full(n);
        let mut opp_iter = ProfileIter::new(game, &opp);
        loop {
            opp_iter.write(&mut choice);
            for s in survivors.clone().iter() {
                if eval.winner(game, &choice, s) != j {
                    survivors.remove(s);
                }
            }
            if survivors.is_empty() || !opp_iter.advance() {
                break;
            }
        }
        if survivors.len() > best_len {
            best_len = survivors.len();
            best = MemorylessStrategy::new(j, n);
            for &s in &own {
                best.set(s, game.successors(s)[choice[s]]);
            }
        }
        win.union_with(&survivors);
        if !own_iter.advance() {
            break;
        }
    }
    (win, best)
}

/// Mixed-radix counter over the successor choices of a fixed list of states.
struct ProfileIter<'g> {
    game: &'g ParityGame,
    states: &'g [usize],
    idx: Vec<usize>,
}

impl<'g> ProfileIter<'g> {
    fn new(game: &'g ParityGame, states: &'g [usize]) -> ProfileIter<'g> {
        ProfileIter { game, states, idx: vec![0; states.len()] }
    }

    fn write(&self, choice: &mut [usize]) {
        for (i, &s) in self.states.iter().enumerate() {
            choice[s] = self.idx[i];
        }
    }

    /// Step to the next profile; false when wrapped around.
    fn advance(&mut self) -> bool {
        for (i, &s) in self.states.iter().enumerate() {
            self.idx[i] += 1;
            if self.idx[i] < self.game.out_degree(s) {
                return true;
            }
            self.idx[i] = 0;
        }
        false
    }
}

/// Resolves the unique play from a start state under a full choice profile
/// and reports who wins its cycle. Scratch space is epoch-stamped.
struct LassoEval {
    epoch: u32,
    seen: Vec<u32>,
    pos: Vec<usize>,
    walk: Vec<usize>,
}

impl LassoEval {
    fn new(n: usize) -> LassoEval {
        LassoEval { epoch: 0, seen: vec![0; n], pos: vec![0; n], walk: Vec::with_capacity(n + 1) }
    }

    fn winner(&mut self, game: &ParityGame, choice: &[usize], start: usize) -> Player {
        self.epoch += 1;
        self.walk.clear();
        let mut s = start;
        while self.seen[s] != self.epoch {
            self.seen[s] = self.epoch;
            self.pos[s] = self.walk.len();
            self.walk.push(s);
            s = game.successors(s)[choice[s]];
        }
        let cycle_max = self.walk[self.pos[s]..]
            .iter()
            .map(|&t| game.color(t))
            .max()
            .expect("cycle is nonempty");
        Player::from_color(cycle_max)
    }
}
