//! The winning core — the largest set of states from which a player can force
//! every play to eventually dominate in their favor — computed exactly via
//! the record-the-maximum product, and the two solvers built on top of it:
//! an exact solver that peels player-0 cores, and a fast partial solver that
//! peels the under-approximation from [`compute_B`] instead.

use crate::attractor::attractor;
use crate::bstep::{compute_B_within, BStepMode};
use crate::error::Result;
use crate::game::{ParityGame, Player};
use crate::product::{product_game_guarded, DEFAULT_PRODUCT_GUARD};
use crate::set::StateSet;
use crate::solvers::{zielonka_solve_within, Deadline, Regions};

/// Repeatedly restricts a game while remembering, for each surviving state,
/// its id in the original game.
struct Peeler<'g> {
    root: &'g ParityGame,
    sub: Option<ParityGame>,
    to_root: Vec<usize>,
}

impl<'g> Peeler<'g> {
    fn new(root: &'g ParityGame) -> Peeler<'g> {
        Peeler { root, sub: None, to_root: (0..root.state_count()).collect() }
    }

    fn game(&self) -> &ParityGame {
        self.sub.as_ref().unwrap_or(self.root)
    }

    fn root_id(&self, s: usize) -> usize {
        self.to_root[s]
    }

    /// Drop `removed` (current ids) from the game. Returns `false` when no
    /// state remains. `removed` must be a set whose complement stays total —
    /// the complement of an attractor always is.
    fn remove(&mut self, removed: &StateSet) -> bool {
        let keep = removed.complement();
        if keep.is_empty() {
            return false;
        }
        let r = self
            .game()
            .restrict(&keep)
            .expect("complement of an attractor induces a total subgame");
        self.to_root = r.to_parent.iter().map(|&s| self.to_root[s]).collect();
        self.sub = Some(r.game);
        true
    }
}

/// The exact winning core of player `j`: states `s` whose product state
/// `(s, 0)` is won by `j` in the record-the-maximum product game.
///
/// Fails when the product would exceed the default size guard.
pub fn winning_core_exact(game: &ParityGame, j: Player) -> Result<StateSet> {
    winning_core_exact_guarded(game, j, DEFAULT_PRODUCT_GUARD)
}

/// [`winning_core_exact`] with an explicit product-size guard.
pub fn winning_core_exact_guarded(game: &ParityGame, j: Player, guard: usize) -> Result<StateSet> {
    winning_core_exact_within(game, j, guard, &Deadline::none())
}

/// [`winning_core_exact_guarded`] with a cooperative cutoff.
pub fn winning_core_exact_within(
    game: &ParityGame,
    j: Player,
    guard: usize,
    deadline: &Deadline,
) -> Result<StateSet> {
    let product = product_game_guarded(game, j, guard)?;
    let solved = zielonka_solve_within(product.game(), deadline)?;
    Ok(product.zero_fiber(solved.win(j)))
}

/// Solves the game completely by repeatedly removing the attractor of
/// player 0's exact winning core; once that core is empty, player 0's whole
/// winning region is gone and everything left belongs to player 1.
///
/// Returns exact regions with `unknown = ∅` and no strategies. Fails when a
/// product along the way exceeds the default size guard.
pub fn solve_via_core(game: &ParityGame) -> Result<Regions> {
    solve_via_core_within(game, DEFAULT_PRODUCT_GUARD, &Deadline::none())
}

/// [`solve_via_core`] with an explicit guard and cooperative cutoff.
pub fn solve_via_core_within(
    game: &ParityGame,
    guard: usize,
    deadline: &Deadline,
) -> Result<Regions> {
    let mut regions = Regions::undecided(game.state_count());
    let mut peel = Peeler::new(game);
    loop {
        let g = peel.game();
        let core = winning_core_exact_within(g, Player::Even, guard, deadline)?;
        if core.is_empty() {
            for s in g.states() {
                let r = peel.root_id(s);
                regions.win1.insert(r);
                regions.unknown.remove(r);
            }
            break;
        }
        let attracted = attractor(g, Player::Even, &core).set;
        for s in attracted.iter() {
            let r = peel.root_id(s);
            regions.win0.insert(r);
            regions.unknown.remove(r);
        }
        if !peel.remove(&attracted) {
            break;
        }
    }
    debug_assert!(regions.is_partition() && regions.unknown.is_empty());
    Ok(regions)
}

/// Partial solver: repeatedly computes the core under-approximation (player 0
/// first, threshold mode), removes its attractor into the corresponding
/// winning region, and stops when both approximations are empty. The
/// remainder — possibly nonempty — is reported as `unknown`. Sound but not
/// complete in general; complete on games with at most two colors and on
/// every generator family shipped here. No strategies are emitted.
pub fn partial_solve(game: &ParityGame) -> Regions {
    partial_solve_within(game, &Deadline::none())
        .expect("threshold steps cannot fail and the deadline never expires")
}

/// [`partial_solve`] with a cooperative cutoff (the only error source).
pub fn partial_solve_within(game: &ParityGame, deadline: &Deadline) -> Result<Regions> {
    let mut regions = Regions::undecided(game.state_count());
    let mut peel = Peeler::new(game);
    loop {
        let g = peel.game();
        let (j, b) = {
            let (b0, _) = compute_B_within(g, Player::Even, BStepMode::Thresholds, false, deadline)?;
            if !b0.is_empty() {
                (Player::Even, b0)
            } else {
                let (b1, _) =
                    compute_B_within(g, Player::Odd, BStepMode::Thresholds, false, deadline)?;
                if b1.is_empty() {
                    break;
                }
                (Player::Odd, b1)
            }
        };
        let attracted = attractor(g, j, &b).set;
        for s in attracted.iter() {
            let r = peel.root_id(s);
            regions.win_mut(j).insert(r);
            regions.unknown.remove(r);
        }
        if !peel.remove(&attracted) {
            break;
        }
    }
    debug_assert!(regions.is_partition());
    Ok(regions)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::pgsolver::parse_pgsolver;
    use crate::solvers::zielonka_solve;

    const FIVE_STATE: &str = "parity 4;\n\
        0 2 1 1,2;\n\
        1 1 0 0,4;\n\
        2 5 0 3;\n\
        3 4 0 3;\n\
        4 3 0 4;\n";

    const ALL_ODD_SQUARE: &str = "parity 3;\n\
        0 2 1 0,1;\n\
        1 4 1 2;\n\
        2 2 1 2,3;\n\
        3 3 1 0;\n";

    const STABLE_TRIANGLE: &str = "parity 3;\n\
        0 1 1 2,3;\n\
        1 3 0 0;\n\
        2 4 0 1;\n\
        3 2 0 0;\n";

    fn game(text: &str) -> ParityGame {
        parse_pgsolver(text).unwrap().game
    }

    fn set(n: usize, ids: &[usize]) -> StateSet {
        StateSet::from_states(n, ids.iter().copied())
    }

    #[test]
    fn exact_core_of_the_square_game() {
        let g = game(ALL_ODD_SQUARE);
        assert_eq!(winning_core_exact(&g, Player::Even).unwrap(), set(4, &[0, 3]));
        assert_eq!(winning_core_exact(&g, Player::Odd).unwrap(), set(4, &[]));
    }

    #[test]
    fn exact_core_of_the_triangle_game() {
        let g = game(STABLE_TRIANGLE);
        assert_eq!(winning_core_exact(&g, Player::Even).unwrap(), set(4, &[0, 1, 3]));
    }

    #[test]
    fn guard_propagates() {
        let g = game(ALL_ODD_SQUARE);
        // 4 states × 5 values = 20 product states.
        assert_eq!(
            winning_core_exact_guarded(&g, Player::Even, 19).unwrap_err(),
            Error::ProductTooLarge { states: 20, guard: 19 }
        );
        assert!(winning_core_exact_guarded(&g, Player::Even, 20).is_ok());
    }

    #[test]
    fn partial_solver_leaves_the_square_game_open() {
        let g = game(ALL_ODD_SQUARE);
        let r = partial_solve(&g);
        assert!(r.win0.is_empty());
        assert!(r.win1.is_empty());
        assert_eq!(r.unknown, StateSet::full(4));
    }

    #[test]
    fn partial_solver_finishes_the_triangle_game() {
        let g = game(STABLE_TRIANGLE);
        let r = partial_solve(&g);
        assert_eq!(r.win0, StateSet::full(4));
        assert!(r.win1.is_empty());
        assert!(r.unknown.is_empty());
    }

    #[test]
    fn partial_solver_takes_a_trivial_self_loop() {
        let g = game("0 2 0 0;");
        let r = partial_solve(&g);
        assert_eq!(r.win0, StateSet::full(1));
        assert!(r.unknown.is_empty());
    }

    #[test]
    fn core_solver_matches_known_regions() {
        let five = game(FIVE_STATE);
        let r = solve_via_core(&five).unwrap();
        assert_eq!(r.win0, set(5, &[0, 1, 2, 3]));
        assert_eq!(r.win1, set(5, &[4]));
        assert!(r.unknown.is_empty());

        let square = game(ALL_ODD_SQUARE);
        let r = solve_via_core(&square).unwrap();
        assert_eq!(r.win0, StateSet::full(4));
        assert!(r.win1.is_empty());
    }

    #[test]
    fn core_solver_agrees_with_zielonka_on_fixtures() {
        for text in [FIVE_STATE, ALL_ODD_SQUARE, STABLE_TRIANGLE] {
            let g = game(text);
            let z = zielonka_solve(&g);
            let c = solve_via_core(&g).unwrap();
            assert_eq!(c.win0, z.win0, "{text:?}");
            assert_eq!(c.win1, z.win1, "{text:?}");
        }
    }

    #[test]
    fn partial_regions_are_sound_on_fixtures() {
        for text in [FIVE_STATE, ALL_ODD_SQUARE, STABLE_TRIANGLE] {
            let g = game(text);
            let z = zielonka_solve(&g);
            let p = partial_solve(&g);
            assert!(p.win0.is_subset_of(&z.win0), "{text:?}");
            assert!(p.win1.is_subset_of(&z.win1), "{text:?}");
            assert!(p.is_partition());
        }
    }
}
