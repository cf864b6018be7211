//! The decreasing under-approximation sequence B⁰ ⊇ B¹ ⊇ … of the winning
//! core, with two interchangeable step implementations:
//!
//! * [`b_step_naive`] materializes the record-the-maximum product and runs a
//!   plain attractor — the oracle.
//! * [`b_step_thresholds`] never builds the product. For the upward-closed
//!   product attractor it maintains, per base state, only the cheapest
//!   attracted record value (a [`ThresholdMap`]), relaxed over a backward
//!   worklist in O(d·(n+m)) time and O(n+m+d) space.

use crate::attractor::attractor;
use crate::error::Result;
use crate::game::{ParityGame, Player};
use crate::product::{product_game, ProductGame};
use crate::reward::{reward_le, reward_less};
use crate::set::StateSet;
use crate::solvers::Deadline;
use std::collections::VecDeque;

/// Which step implementation [`compute_B`] iterates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BStepMode {
    Naive,
    Thresholds,
}

/// The distinct iterates B⁰ ⊃ B¹ ⊃ … down to the fixpoint (which is the last
/// entry; it is not repeated).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoreTrace {
    pub iterates: Vec<StateSet>,
}

/// Per-state cheapest attracted record value; `None` (⊥) when no value of
/// that state's fiber is attracted. ⊥ sits above every value in the reward
/// order, and entries only ever move down.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThresholdMap {
    player: Player,
    max_value: u32,
    entries: Vec<Option<u32>>,
}

impl ThresholdMap {
    pub fn new_bottom(player: Player, state_count: usize, max_value: u32) -> ThresholdMap {
        ThresholdMap { player, max_value, entries: vec![None; state_count] }
    }

    pub fn player(&self) -> Player {
        self.player
    }

    pub fn max_value(&self) -> u32 {
        self.max_value
    }

    pub fn get(&self, s: usize) -> Option<u32> {
        self.entries[s]
    }

    pub fn set(&mut self, s: usize, v: Option<u32>) {
        debug_assert!(v.is_none_or(|v| v <= self.max_value));
        self.entries[s] = v;
    }

    /// `a ≺ b` in the reward order of this map's player, ⊥ greatest.
    pub fn value_less(&self, a: Option<u32>, b: Option<u32>) -> bool {
        match (a, b) {
            (_, None) => a.is_some(),
            (None, Some(_)) => false,
            (Some(x), Some(y)) => reward_less(self.player, x, y),
        }
    }

    /// States whose entry is at or below `v` in the reward order — exactly
    /// the base states whose `(s, v)` product state is attracted.
    pub fn slice(&self, v: u32) -> StateSet {
        let mut out = StateSet::empty(self.entries.len());
        for (s, k) in self.entries.iter().enumerate() {
            if k.is_some_and(|k| reward_le(self.player, k, v)) {
                out.insert(s);
            }
        }
        out
    }
}

/// Cheapest record value `v` at state `s` (in `j`'s reward order) such that
/// stepping along an edge into a state of color `succ_color` lands at or
/// above the successor's own threshold `succ_threshold`; `None` when no value
/// in `{0, …, d}` works. The full solution set is always the reward-up-set of
/// the returned value, which is what makes per-state thresholds lossless.
pub fn edge_threshold(
    j: Player,
    succ_color: u32,
    succ_threshold: Option<u32>,
    d: u32,
) -> Option<u32> {
    let k = succ_threshold?;
    let c = succ_color;
    debug_assert!((1..=d).contains(&c) && k <= d);
    if reward_le(j, k, c) {
        // Any value at or below c numerically leaves the running max at c,
        // which already suffices. The cheapest of those is the largest
        // opposite-parity value ≤ c — unless k itself is an opposite-parity
        // value just above c, in which case sitting exactly at k is cheaper
        // than overshooting past it.
        let opp_c = if j.wins_color(c) { c - 1 } else { c };
        if !j.wins_color(k) && k > opp_c {
            Some(k)
        } else {
            Some(opp_c)
        }
    } else {
        // c alone falls short, so the record must arrive lifted: a j-parity
        // value above c, and also at least k when k has j's parity.
        let lo = if j.wins_color(k) { (c + 1).max(k) } else { c + 1 };
        let v0 = if j.wins_color(lo) { lo } else { lo + 1 };
        (v0 <= d).then_some(v0)
    }
}

/// Outcome of one oracle step with its intermediates exposed for
/// cross-checking against the threshold implementation.
#[derive(Debug)]
pub struct NaiveStep {
    pub product: ProductGame,
    /// Product attractor of the target band `B_i × {j-parity values in 1..=d}`.
    pub attracted: StateSet,
    pub next: StateSet,
}

/// One step of the sequence via the explicit product: `s` survives iff `s`
/// was in `b_i` and `(s, 0)` is attracted to the band of `b_i` states whose
/// record has `j`'s parity (and is ≥ 1).
pub fn b_step_naive(game: &ParityGame, j: Player, b_i: &StateSet) -> Result<StateSet> {
    Ok(b_step_naive_detailed(game, j, b_i)?.next)
}

/// [`b_step_naive`] keeping the product and its attractor.
pub fn b_step_naive_detailed(game: &ParityGame, j: Player, b_i: &StateSet) -> Result<NaiveStep> {
    let product = product_game(game, j)?;
    let d = product.max_value();
    let pn = product.game().state_count();
    let mut target = StateSet::empty(pn);
    for s in b_i.iter() {
        let mut v = if j == Player::Even { 2 } else { 1 };
        while v <= d {
            target.insert(product.index(s, v));
            v += 2;
        }
    }
    let attracted = attractor(product.game(), j, &target).set;
    let mut next = product.zero_fiber(&attracted);
    next.intersect_with(b_i);
    Ok(NaiveStep { product, attracted, next })
}

/// One step of the sequence without materializing the product; semantically
/// identical to [`b_step_naive`]. Returns the surviving set; see
/// [`b_step_thresholds_map`] for the final per-state thresholds.
///
/// When player 0's target band is empty because the game has no even color
/// ≥ 2 (that is, `d < 2`), the step is empty by definition and returns ∅.
pub fn b_step_thresholds(game: &ParityGame, j: Player, b_i: &StateSet) -> StateSet {
    b_step_thresholds_map(game, j, b_i).0
}

/// [`b_step_thresholds`] exposing the fixpoint [`ThresholdMap`].
pub fn b_step_thresholds_map(game: &ParityGame, j: Player, b_i: &StateSet) -> (StateSet, ThresholdMap) {
    let n = game.state_count();
    let d = game.max_color();
    let seed = match j {
        Player::Even if d >= 2 => 2,
        Player::Even => {
            // No even value in 1..=d: the target band is empty.
            return (StateSet::empty(n), ThresholdMap::new_bottom(j, n, d));
        }
        Player::Odd => 1,
    };

    let mut map = ThresholdMap::new_bottom(j, n, d);
    let mut queue: VecDeque<usize> = VecDeque::new();
    let mut queued = vec![false; n];
    for s in b_i.iter() {
        map.set(s, Some(seed));
        queue.push_back(s);
        queued[s] = true;
    }

    while let Some(t) = queue.pop_front() {
        queued[t] = false;
        for &s in game.predecessors(t) {
            // Recompute s's candidate from scratch over its successors:
            // reward-min of the edge thresholds when s belongs to j,
            // reward-max when it belongs to the opponent. ⊥ is the top
            // element, so it loses every min and absorbs every max.
            let own = game.owner(s) == j;
            let mut acc: Option<Option<u32>> = None;
            for &t2 in game.successors(s) {
                let e = edge_threshold(j, game.color(t2), map.get(t2), d);
                acc = Some(match acc {
                    None => e,
                    Some(b) if own => {
                        if map.value_less(e, b) {
                            e
                        } else {
                            b
                        }
                    }
                    Some(b) => {
                        if map.value_less(b, e) {
                            e
                        } else {
                            b
                        }
                    }
                });
                if !own && acc == Some(None) {
                    break;
                }
            }
            let mut cand = acc.unwrap_or(None);
            // Membership in the target band caps the threshold at the seed.
            if b_i.contains(s) && map.value_less(Some(seed), cand) {
                cand = Some(seed);
            }
            if map.value_less(cand, map.get(s)) {
                map.set(s, cand);
                if !queued[s] {
                    queue.push_back(s);
                    queued[s] = true;
                }
            }
        }
    }

    let mut next = map.slice(0);
    next.intersect_with(b_i);
    (next, map)
}

/// Iterate the chosen step from B⁰ = S to the fixpoint. The optional trace
/// records every distinct iterate including B⁰ and the fixpoint.
#[allow(non_snake_case)]
pub fn compute_B(
    game: &ParityGame,
    j: Player,
    mode: BStepMode,
    want_trace: bool,
) -> Result<(StateSet, Option<CoreTrace>)> {
    compute_B_within(game, j, mode, want_trace, &Deadline::none())
}

/// [`compute_B`] with a cooperative cutoff, polled between iterations.
#[allow(non_snake_case)]
pub fn compute_B_within(
    game: &ParityGame,
    j: Player,
    mode: BStepMode,
    want_trace: bool,
    deadline: &Deadline,
) -> Result<(StateSet, Option<CoreTrace>)> {
    let n = game.state_count();
    let mut cur = StateSet::full(n);
    let mut trace = want_trace.then(|| CoreTrace { iterates: vec![cur.clone()] });
    loop {
        deadline.check()?;
        let next = match mode {
            BStepMode::Naive => b_step_naive(game, j, &cur)?,
            BStepMode::Thresholds => b_step_thresholds(game, j, &cur),
        };
        debug_assert!(next.is_subset_of(&cur), "B sequence must decrease");
        if next == cur {
            break;
        }
        if let Some(t) = &mut trace {
            t.iterates.push(next.clone());
            debug_assert!(t.iterates.len() <= n + 1);
        }
        let hit_bottom = next.is_empty();
        cur = next;
        if hit_bottom {
            break;
        }
    }
    Ok((cur, trace))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pgsolver::parse_pgsolver;
    use crate::reward::reward_le;

    const ALL_ODD_SQUARE: &str = "parity 3;\n\
        0 2 1 0,1;\n\
        1 4 1 2;\n\
        2 2 1 2,3;\n\
        3 3 1 0;\n";

    // Triangle with a detour: the core and its approximation agree here.
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
    fn edge_threshold_reference_points() {
        use Player::*;
        assert_eq!(edge_threshold(Even, 3, Some(2), 6), Some(4));
        assert_eq!(edge_threshold(Even, 4, Some(3), 6), Some(3));
        assert_eq!(edge_threshold(Odd, 2, Some(3), 6), Some(3));
        assert_eq!(edge_threshold(Even, 3, None, 6), None);
        // No even value ≥ 6 exists below d = 4.
        assert_eq!(edge_threshold(Even, 4, Some(6), 6), Some(6));
        assert_eq!(edge_threshold(Even, 4, Some(4), 4), Some(3));
        assert_eq!(edge_threshold(Even, 3, Some(4), 4), Some(4));
        assert_eq!(edge_threshold(Even, 3, Some(2), 3), None);
    }

    #[test]
    fn edge_threshold_solution_set_is_its_up_set() {
        for j in [Player::Even, Player::Odd] {
            for d in 1..=12u32 {
                for c in 1..=d {
                    for k in (0..=d).map(Some).chain([None]) {
                        let got = edge_threshold(j, c, k, d);
                        for v in 0..=d {
                            let works = k.is_some_and(|k| reward_le(j, k, v.max(c)));
                            let in_up_set = got.is_some_and(|g| reward_le(j, g, v));
                            assert_eq!(
                                works, in_up_set,
                                "j={j} d={d} c={c} k={k:?} v={v} got={got:?}"
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn square_game_sequence_collapses_to_empty() {
        let g = game(ALL_ODD_SQUARE);
        let expect = [
            StateSet::full(4),
            set(4, &[0, 1, 3]),
            set(4, &[0, 3]),
            set(4, &[3]),
            set(4, &[]),
        ];
        // step oracle
        for w in expect.windows(2) {
            assert_eq!(b_step_naive(&g, Player::Even, &w[0]).unwrap(), w[1]);
            assert_eq!(b_step_thresholds(&g, Player::Even, &w[0]), w[1]);
        }
        // full iteration + trace, in both modes
        for mode in [BStepMode::Naive, BStepMode::Thresholds] {
            let (fix, trace) = compute_B(&g, Player::Even, mode, true).unwrap();
            assert!(fix.is_empty());
            assert_eq!(trace.unwrap().iterates, expect);
        }
    }

    #[test]
    fn empty_input_stays_empty() {
        let g = game(ALL_ODD_SQUARE);
        assert!(b_step_naive(&g, Player::Even, &StateSet::empty(4)).unwrap().is_empty());
        assert!(b_step_thresholds(&g, Player::Even, &StateSet::empty(4)).is_empty());
    }

    #[test]
    fn stable_triangle_reaches_a_nonempty_fixpoint() {
        let g = game(STABLE_TRIANGLE);
        for mode in [BStepMode::Naive, BStepMode::Thresholds] {
            let (fix, trace) = compute_B(&g, Player::Even, mode, true).unwrap();
            assert_eq!(fix, set(4, &[0, 1, 3]));
            let trace = trace.unwrap();
            assert_eq!(*trace.iterates.last().unwrap(), fix);
        }
    }

    #[test]
    fn all_own_parity_colors_fixes_in_one_iteration() {
        let g = game("0 2 1 1;\n1 4 1 0,1;");
        let (fix, trace) = compute_B(&g, Player::Even, BStepMode::Thresholds, true).unwrap();
        assert_eq!(fix, StateSet::full(2));
        assert_eq!(trace.unwrap().iterates.len(), 1);
    }

    #[test]
    fn even_band_empty_when_no_even_color_exists() {
        let g = game("0 1 0 0;");
        let (next, map) = b_step_thresholds_map(&g, Player::Even, &StateSet::full(1));
        assert!(next.is_empty());
        assert_eq!(map.get(0), None);
        assert!(b_step_naive(&g, Player::Even, &StateSet::full(1)).unwrap().is_empty());
        // The odd player's band is fine at d = 1.
        assert_eq!(b_step_thresholds(&g, Player::Odd, &StateSet::full(1)), StateSet::full(1));
    }

    #[test]
    fn threshold_slices_match_the_product_attractor() {
        for (text, j) in [
            (ALL_ODD_SQUARE, Player::Even),
            (ALL_ODD_SQUARE, Player::Odd),
            (STABLE_TRIANGLE, Player::Even),
            (STABLE_TRIANGLE, Player::Odd),
        ] {
            let g = game(text);
            let mut b = StateSet::full(g.state_count());
            loop {
                let naive = b_step_naive_detailed(&g, j, &b).unwrap();
                let (next, map) = b_step_thresholds_map(&g, j, &b);
                assert_eq!(next, naive.next);
                for v in 0..=g.max_color() {
                    let mut from_product = StateSet::empty(g.state_count());
                    for s in g.states() {
                        if naive.attracted.contains(naive.product.index(s, v)) {
                            from_product.insert(s);
                        }
                    }
                    assert_eq!(map.slice(v), from_product, "{text:?} j={j} v={v}");
                }
                if next == b {
                    break;
                }
                let stop = next.is_empty();
                b = next;
                if stop {
                    break;
                }
            }
        }
    }
}
