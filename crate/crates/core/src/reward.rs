//! The reward order on colors: how desirable a color value is for a player.

use crate::game::Player;

/// Strict total order `v < u` by desirability for player `j`: high colors of
/// `j`'s parity are best, high colors of the opposite parity are worst, and
/// values of `j`'s parity always beat values of the other parity. For player 0
/// and d = 6 the ascending chain is `5, 3, 1, 0, 2, 4, 6`.
///
/// Defined by `(v < u and u = j mod 2) or (u < v and v = 1-j mod 2)`.
pub fn reward_less(j: Player, v: u32, u: u32) -> bool {
    reward_rank(j, v) < reward_rank(j, u)
}

/// `v <= u` in the reward order.
pub fn reward_le(j: Player, v: u32, u: u32) -> bool {
    v == u || reward_less(j, v, u)
}

/// Signed rank realizing the order: values of `j`'s parity count positive,
/// the rest negative, so comparing ranks compares rewards.
pub fn reward_rank(j: Player, v: u32) -> i64 {
    if j.wins_color(v) {
        v as i64
    } else {
        -(v as i64)
    }
}

/// The reward-smaller of two values.
pub fn reward_min(j: Player, v: u32, u: u32) -> u32 {
    if reward_less(j, u, v) {
        u
    } else {
        v
    }
}

/// The reward-larger of two values.
pub fn reward_max(j: Player, v: u32, u: u32) -> u32 {
    if reward_less(j, v, u) {
        u
    } else {
        v
    }
}
