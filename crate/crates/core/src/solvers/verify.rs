//! Soundness checking for claimed winning regions and strategies.

use crate::error::{Error, Result};
use crate::game::{ParityGame, Player};
use crate::set::StateSet;
use crate::solvers::MemorylessStrategy;

/// Check that `strategy` wins for player `j` from every state of `region`:
/// (a) the play can never leave `region` — `j`'s choices stay inside and no
/// opponent state has an edge out — and (b) every cycle of the
/// strategy-restricted subgraph inside `region` has a maximum color of `j`'s
/// parity.
///
/// Errors if the strategy is missing a choice on a `j`-state of the region; a
/// choice along a non-edge makes the answer `false`.
pub fn verify_memoryless_winning(
    game: &ParityGame,
    j: Player,
    region: &StateSet,
    strategy: &MemorylessStrategy,
) -> Result<bool> {
    assert_eq!(region.capacity(), game.state_count());
    for s in region.iter() {
        if game.owner(s) == j {
            let t = strategy
                .get(s)
                .ok_or(Error::StrategyUndefined { state: s })?;
            if !game.has_edge(s, t) || !region.contains(t) {
                return Ok(false);
            }
        } else if game.successors(s).iter().any(|&t| !region.contains(t)) {
            return Ok(false);
        }
    }
    Ok(no_bad_cycle(game, j, region, strategy))
}

/// (b) above: decompose the restricted subgraph into strongly-connected
/// components; in each, the maximum color must have `j`'s parity, and after
/// peeling the states carrying that maximum the remainder must recursively
/// satisfy the same condition (a subset worklist stands in for recursion).
fn no_bad_cycle(
    game: &ParityGame,
    j: Player,
    region: &StateSet,
    strategy: &MemorylessStrategy,
) -> bool {
    let n = game.state_count();
    // Restricted successors: the single chosen edge on j's states, all edges
    // elsewhere. Closure was already checked, so everything stays in region.
    let succs = |s: usize| -> &[usize] {
        if game.owner(s) == j {
            let t = strategy.get(s).expect("closure checked");
            let list = game.successors(s);
            let i = list.binary_search(&t).expect("edge checked");
            &list[i..=i]
        } else {
            game.successors(s)
        }
    };

    let mut scc = SccScratch::new(n);
    let mut pending: Vec<Vec<usize>> = vec![region.iter().collect()];
    while let Some(subset) = pending.pop() {
        for component in scc.run(&subset, succs) {
            let trivial = component.len() == 1 && {
                let s = component[0];
                !succs(s).contains(&s)
            };
            if trivial {
                continue;
            }
            let max = component.iter().map(|&s| game.color(s)).max().unwrap();
            if !j.wins_color(max) {
                return false;
            }
            let peeled: Vec<usize> = component
                .iter()
                .copied()
                .filter(|&s| game.color(s) != max)
                .collect();
            if !peeled.is_empty() {
                pending.push(peeled);
            }
        }
    }
    true
}

/// Reusable iterative Tarjan over an induced subgraph. Membership and visit
/// state are epoch-stamped so repeated runs skip re-initialization.
struct SccScratch {
    epoch: u32,
    member: Vec<u32>,
    visited: Vec<u32>,
    index: Vec<u32>,
    low: Vec<u32>,
    on_stack: Vec<bool>,
}

impl SccScratch {
    fn new(n: usize) -> SccScratch {
        SccScratch {
            epoch: 0,
            member: vec![0; n],
            visited: vec![0; n],
            index: vec![0; n],
            low: vec![0; n],
            on_stack: vec![false; n],
        }
    }

    fn run<'a, F>(&mut self, subset: &[usize], succs: F) -> Vec<Vec<usize>>
    where
        F: Fn(usize) -> &'a [usize],
    {
        self.epoch += 1;
        let epoch = self.epoch;
        for &s in subset {
            self.member[s] = epoch;
        }

        let mut components = Vec::new();
        let mut next_index = 0u32;
        let mut stack: Vec<usize> = Vec::new();
        // (state, position in its successor list)
        let mut call: Vec<(usize, usize)> = Vec::new();

        for &root in subset {
            if self.visited[root] == epoch {
                continue;
            }
            self.visit(root, epoch, &mut next_index, &mut stack);
            call.push((root, 0));
            while let Some(top) = call.last_mut() {
                let (v, pos) = *top;
                top.1 += 1;
                let list = succs(v);
                if pos < list.len() {
                    let w = list[pos];
                    if self.member[w] != epoch {
                        continue;
                    }
                    if self.visited[w] != epoch {
                        self.visit(w, epoch, &mut next_index, &mut stack);
                        call.push((w, 0));
                    } else if self.on_stack[w] {
                        self.low[v] = self.low[v].min(self.index[w]);
                    }
                } else {
                    call.pop();
                    if let Some(&(parent, _)) = call.last() {
                        self.low[parent] = self.low[parent].min(self.low[v]);
                    }
                    if self.low[v] == self.index[v] {
                        let mut component = Vec::new();
                        loop {
                            let w = stack.pop().expect("root still on stack");
                            self.on_stack[w] = false;
                            component.push(w);
                            if w == v {
                                break;
                            }
                        }
                        components.push(component);
                    }
                }
            }
        }
        components
    }

    fn visit(&mut self, v: usize, epoch: u32, next_index: &mut u32, stack: &mut Vec<usize>) {
        self.visited[v] = epoch;
        self.index[v] = *next_index;
        self.low[v] = *next_index;
        *next_index += 1;
        self.on_stack[v] = true;
        stack.push(v);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pgsolver::parse_pgsolver;

    const FIVE_STATE: &str = "parity 4;\n\
        0 2 1 1,2;\n\
        1 1 0 0,4;\n\
        2 5 0 3;\n\
        3 4 0 3;\n\
        4 3 0 4;\n";

    fn game(text: &str) -> ParityGame {
        parse_pgsolver(text).unwrap().game
    }

    fn set(n: usize, ids: &[usize]) -> StateSet {
        StateSet::from_states(n, ids.iter().copied())
    }

    #[test]
    fn empty_region_is_vacuously_winning() {
        let g = game(FIVE_STATE);
        let s = MemorylessStrategy::new(Player::Even, 5);
        assert_eq!(verify_memoryless_winning(&g, Player::Even, &StateSet::empty(5), &s), Ok(true));
    }

    #[test]
    fn choice_leaving_the_region_fails() {
        let g = game(FIVE_STATE);
        let mut s = MemorylessStrategy::new(Player::Even, 5);
        s.set(1, 4);
        assert_eq!(
            verify_memoryless_winning(&g, Player::Even, &set(5, &[0, 1]), &s),
            Ok(false)
        );
    }

    #[test]
    fn missing_choice_is_an_error() {
        let g = game(FIVE_STATE);
        let s = MemorylessStrategy::new(Player::Even, 5);
        assert_eq!(
            verify_memoryless_winning(&g, Player::Even, &set(5, &[3]), &s),
            Err(Error::StrategyUndefined { state: 3 })
        );
    }

    #[test]
    fn opponent_escape_fails_and_self_loop_verifies() {
        let g = game(FIVE_STATE);
        // State 3 (owner 0) looping on color 4 is winning for player 0 …
        let mut s = MemorylessStrategy::new(Player::Even, 5);
        s.set(3, 3);
        assert_eq!(verify_memoryless_winning(&g, Player::Even, &set(5, &[3]), &s), Ok(true));
        // … and the same singleton seen as player 1's region has a bad cycle.
        let s1 = MemorylessStrategy::new(Player::Odd, 5);
        assert_eq!(verify_memoryless_winning(&g, Player::Odd, &set(5, &[3]), &s1), Ok(false));
    }

    #[test]
    fn peeling_finds_nested_bad_cycles() {
        // Big even color on the outer cycle hides an odd self-loop below.
        let g = game("0 4 1 1;\n1 1 1 0,1;");
        let s = MemorylessStrategy::new(Player::Even, 2);
        assert_eq!(
            verify_memoryless_winning(&g, Player::Even, &StateSet::full(2), &s),
            Ok(false)
        );
        // Remove the inner loop and the region verifies.
        let g = game("0 4 1 1;\n1 1 1 0;");
        assert_eq!(
            verify_memoryless_winning(&g, Player::Even, &StateSet::full(2), &s),
            Ok(true)
        );
        let mut s1 = MemorylessStrategy::new(Player::Odd, 2);
        s1.set(0, 1);
        s1.set(1, 0);
        assert_eq!(
            verify_memoryless_winning(&g, Player::Odd, &StateSet::full(2), &s1),
            Ok(false)
        );
    }
}
