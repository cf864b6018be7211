//! Attractor computations on parity games.

use crate::game::{ParityGame, Player};
use crate::set::StateSet;
use crate::solvers::MemorylessStrategy;

/// An attractor set together with the attracting player's strategy on the
/// states it pulled in (no choice is recorded on the target itself).
pub struct Attraction {
    pub set: StateSet,
    pub strategy: MemorylessStrategy,
}

/// Least set containing `target` that player `j` can force the play into:
/// grown backwards by adding `j`-states with some successor inside and
/// opponent states with all successors inside.
///
/// Counter-based backward search, O(n + m). The worklist is FIFO seeded with
/// the target in ascending id order, so the recorded strategy always moves one
/// discovery layer closer to the target and is deterministic.
pub fn attractor(game: &ParityGame, j: Player, target: &StateSet) -> Attraction {
    let n = game.state_count();
    assert_eq!(target.capacity(), n, "target set capacity does not match the game");
    let mut set = target.clone();
    let mut strategy = MemorylessStrategy::new(j, n);
    // For opponent states: number of successors not yet inside the set.
    let mut escapes: Vec<usize> = (0..n).map(|s| game.out_degree(s)).collect();
    let mut queue: std::collections::VecDeque<usize> = target.iter().collect();

    while let Some(t) = queue.pop_front() {
        for &s in game.predecessors(t) {
            if set.contains(s) {
                continue;
            }
            if game.owner(s) == j {
                set.insert(s);
                strategy.set(s, t);
                queue.push_back(s);
            } else {
                escapes[s] -= 1;
                if escapes[s] == 0 {
                    set.insert(s);
                    queue.push_back(s);
                }
            }
        }
    }
    Attraction { set, strategy }
}

/// Attractor of the states from which player `j` can force *entering* `target`
/// with at least one transition: the attractor of the set
/// `{s in S_j | some successor in target} union
///  {s in S_(1-j) | all successors in target}`.
///
/// Unlike [`attractor`], a target state outside this seed is not automatically
/// included, so the result can be disjoint from `target`.
pub fn positive_attractor(game: &ParityGame, j: Player, target: &StateSet) -> StateSet {
    let n = game.state_count();
    assert_eq!(target.capacity(), n, "target set capacity does not match the game");
    let mut seed = StateSet::empty(n);
    for s in game.states() {
        let succs = game.successors(s);
        let hit = if game.owner(s) == j {
            succs.iter().any(|&t| target.contains(t))
        } else {
            succs.iter().all(|&t| target.contains(t))
        };
        if hit {
            seed.insert(s);
        }
    }
    attractor(game, j, &seed).set
}

/// True iff `region` is closed for player `j`: the opponent cannot leave it
/// (no opponent state inside has a successor outside) and `j` can stay
/// (every `j`-state inside has a successor inside).
pub fn is_closed(game: &ParityGame, j: Player, region: &StateSet) -> bool {
    assert_eq!(region.capacity(), game.state_count());
    region.iter().all(|s| {
        let succs = game.successors(s);
        if game.owner(s) == j {
            succs.iter().any(|&t| region.contains(t))
        } else {
            succs.iter().all(|&t| region.contains(t))
        }
    })
}
