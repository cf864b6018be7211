//! Zielonka's recursive algorithm, realized with an explicit work stack.
//!
//! Each level removes the attractor of the top-color states, solves the rest,
//! and either keeps that attractor for the top color's player or re-solves
//! after removing the opponent's established dominion. Subgames are compacted
//! copies; every frame carries a map back to root ids, so winning sets and
//! strategies are assembled directly in the input game's id space.

use crate::attractor::{attractor, Attraction};
use crate::error::Result;
use crate::game::{ParityGame, Player};
use crate::set::StateSet;
use crate::solvers::{Deadline, MemorylessStrategy, Regions};

/// Solve `game` exactly: every state is assigned to a winner and both players
/// get a memoryless strategy on their region.
pub fn zielonka_solve(game: &ParityGame) -> Regions {
    zielonka_solve_within(game, &Deadline::none()).expect("no deadline set")
}

struct Frame {
    game: ParityGame,
    to_root: Vec<usize>,
    phase: u8,
    k: Player,
    target: StateSet,
    attr: Option<Attraction>,
    bset: Option<Attraction>,
}

impl Frame {
    fn new(game: ParityGame, to_root: Vec<usize>) -> Frame {
        Frame {
            game,
            to_root,
            phase: 0,
            k: Player::Even,
            target: StateSet::empty(0),
            attr: None,
            bset: None,
        }
    }
}

/// [`zielonka_solve`] with a cooperative cutoff, polled once per stack frame.
pub fn zielonka_solve_within(game: &ParityGame, deadline: &Deadline) -> Result<Regions> {
    let root_n = game.state_count();
    let mut strat = [
        MemorylessStrategy::new(Player::Even, root_n),
        MemorylessStrategy::new(Player::Odd, root_n),
    ];

    let mut stack = vec![Frame::new(game.clone(), (0..root_n).collect())];
    // Winning sets handed back by the frame that just finished, in root ids.
    let mut returned: Option<[StateSet; 2]> = None;

    while let Some(frame) = stack.last_mut() {
        match frame.phase {
            // Entering: peel the attractor of the top-color states.
            0 => {
                deadline.check()?;
                let d = frame.game.max_color();
                frame.k = Player::from_color(d);
                frame.target = frame.game.states_with_color(d);
                let attr = attractor(&frame.game, frame.k, &frame.target);
                let keep = attr.set.complement();
                frame.attr = Some(attr);
                frame.phase = 1;

                if keep.is_empty() {
                    returned = Some([StateSet::empty(root_n), StateSet::empty(root_n)]);
                } else {
                    let child = subframe(&frame.game, &frame.to_root, &keep);
                    stack.push(child);
                }
            }
            // First recursion done: decide which case applies.
            1 => {
                let child = returned.take().expect("child result pending");
                let k = frame.k;
                let opp = k.opponent();
                if child[opp.index()].is_empty() {
                    // The whole level is won by k: attracted states move
                    // toward the top color, k's own top-color states may move
                    // anywhere, the rest follows the sub-solution.
                    let attr = frame.attr.take().expect("attractor stored");
                    let mut wins = child;
                    for s in attr.set.iter() {
                        wins[k.index()].insert(frame.to_root[s]);
                        if frame.game.owner(s) != k {
                            continue;
                        }
                        if let Some(t) = attr.strategy.get(s) {
                            strat[k.index()].set(frame.to_root[s], frame.to_root[t]);
                        } else if frame.target.contains(s) {
                            let t = frame.game.successors(s)[0];
                            strat[k.index()].set(frame.to_root[s], frame.to_root[t]);
                        }
                    }
                    returned = Some(wins);
                    stack.pop();
                } else {
                    // The opponent holds a dominion; remove its attractor and
                    // solve what is left.
                    let local_dominion =
                        localize(&child[opp.index()], &frame.to_root, frame.game.state_count());
                    let b = attractor(&frame.game, opp, &local_dominion);
                    let keep = b.set.complement();
                    frame.bset = Some(b);
                    frame.phase = 2;
                    if keep.is_empty() {
                        returned = Some([StateSet::empty(root_n), StateSet::empty(root_n)]);
                    } else {
                        let child = subframe(&frame.game, &frame.to_root, &keep);
                        stack.push(child);
                    }
                }
            }
            // Second recursion done: opponent keeps the dominion attractor.
            _ => {
                let mut wins = returned.take().expect("child result pending");
                let opp = frame.k.opponent();
                let b = frame.bset.take().expect("dominion attractor stored");
                for s in b.set.iter() {
                    wins[opp.index()].insert(frame.to_root[s]);
                }
                for (s, t) in b.strategy.defined() {
                    strat[opp.index()].set(frame.to_root[s], frame.to_root[t]);
                }
                returned = Some(wins);
                stack.pop();
            }
        }
    }

    let [win0, win1] = returned.expect("root result");
    // Later frames overwrite earlier tentative choices; drop what ended up
    // outside the winner's region.
    let [s0, s1] = strat;
    let strategy0 = prune(s0, &win0, game);
    let strategy1 = prune(s1, &win1, game);
    let regions = Regions {
        win0,
        win1,
        unknown: StateSet::empty(root_n),
        strategy0: Some(strategy0),
        strategy1: Some(strategy1),
    };
    debug_assert!(regions.is_partition());
    Ok(regions)
}

/// Build the child frame for the compacted subgame on `keep`.
fn subframe(game: &ParityGame, to_root: &[usize], keep: &StateSet) -> Frame {
    let r = game
        .restrict(keep)
        .expect("the complement of an attractor always induces a total subgame");
    let child_map: Vec<usize> = r.to_parent.iter().map(|&p| to_root[p]).collect();
    Frame::new(r.game, child_map)
}

/// Local view of a root-id set inside a compacted frame.
fn localize(root_set: &StateSet, to_root: &[usize], local_n: usize) -> StateSet {
    let mut local = StateSet::empty(local_n);
    for (s, &r) in to_root.iter().enumerate() {
        if root_set.contains(r) {
            local.insert(s);
        }
    }
    local
}

fn prune(mut s: MemorylessStrategy, region: &StateSet, game: &ParityGame) -> MemorylessStrategy {
    let owner = s.owner();
    for st in 0..game.state_count() {
        if s.get(st).is_some() && (!region.contains(st) || game.owner(st) != owner) {
            s.clear(st);
        }
    }
    s
}
