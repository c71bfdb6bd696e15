//! Exhaustive generators over canonical positions, used by the sweeps.

use crate::game::Game;

/// Limits for [`for_each_game`]. `None` means unbounded in that dimension;
/// at least one of `max_pile` / `max_total` must be set for termination.
#[derive(Debug, Clone, Copy, Default)]
pub struct Space {
    pub max_piles: usize,
    pub max_pile: Option<u32>,
    pub max_total: Option<u64>,
    /// Only games whose total is exactly this value.
    pub exact_total: Option<u64>,
}

impl Space {
    pub fn piles(max_piles: usize, max_pile: u32) -> Self {
        Space {
            max_piles,
            max_pile: Some(max_pile),
            ..Space::default()
        }
    }

    pub fn total_upto(max_total: u64) -> Self {
        Space {
            max_piles: usize::MAX,
            max_total: Some(max_total),
            ..Space::default()
        }
    }

    pub fn exact(total: u64) -> Self {
        Space {
            max_piles: usize::MAX,
            max_total: Some(total),
            exact_total: Some(total),
            ..Space::default()
        }
    }

    pub fn with_max_piles(mut self, max_piles: usize) -> Self {
        self.max_piles = max_piles;
        self
    }

    pub fn with_max_pile(mut self, max_pile: u32) -> Self {
        self.max_pile = Some(max_pile);
        self
    }
}

/// Visits every canonical game inside `space` (including the empty game when
/// admitted), in lexicographic order of the descending pile vector.
pub fn for_each_game<F: FnMut(&Game)>(space: Space, mut visit: F) {
    let cap = match (space.max_pile, space.max_total) {
        (Some(p), Some(t)) => (p as u64).min(t),
        (Some(p), None) => p as u64,
        (None, Some(t)) => t,
        (None, None) => panic!("unbounded enumeration space"),
    };
    let budget = space.max_total.unwrap_or(u64::MAX);
    let mut piles = Vec::new();
    walk(&space, cap, budget, &mut piles, &mut visit);
}

fn walk<F: FnMut(&Game)>(space: &Space, cap: u64, budget: u64, piles: &mut Vec<u32>, visit: &mut F) {
    let total: u64 = piles.iter().map(|&p| p as u64).sum();
    if space.exact_total.is_none_or(|t| t == total) {
        visit(&Game::new(piles.iter().copied()));
    }
    if piles.len() >= space.max_piles {
        return;
    }
    let upper = cap.min(budget);
    // next pile no larger than the previous one keeps the vector canonical
    for next in 1..=upper {
        piles.push(next as u32);
        walk(space, next, budget - next, piles, visit);
        piles.pop();
    }
}

/// All games in `space`.
pub fn games(space: Space) -> Vec<Game> {
    let mut out = Vec::new();
    for_each_game(space, |g| out.push(g.clone()));
    out.sort();
    out
}

/// All P positions in `space`.
pub fn p_positions(space: Space) -> Vec<Game> {
    let mut out = Vec::new();
    for_each_game(space, |g| {
        if g.is_p() {
            out.push(g.clone());
        }
    });
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_partitions() {
        // p(10) = 42 partitions of ten
        assert_eq!(games(Space::exact(10)).len(), 42);
        // multisets of size <= 2 from 1..=3, plus the empty game
        assert_eq!(games(Space::piles(2, 3)).len(), 1 + 3 + 6);
    }

    #[test]
    fn p_positions_with_total() {
        let ps = p_positions(Space::exact(10));
        assert!(ps.iter().all(|g| g.total() == 10 && g.is_p()));
        assert!(ps.contains(&Game::new([1, 4, 5])));
        assert!(ps.contains(&Game::new([5, 5])));
        assert!(p_positions(Space::exact(9)).is_empty());
        assert_eq!(p_positions(Space::exact(0)), vec![Game::empty()]);
    }

    #[test]
    fn limits_are_respected() {
        let all = games(Space::total_upto(12).with_max_piles(3).with_max_pile(5));
        assert!(all
            .iter()
            .all(|g| g.len() <= 3 && g.total() <= 12 && g.largest().unwrap_or(0) <= 5));
        let mut sorted = all.clone();
        sorted.dedup();
        assert_eq!(sorted.len(), all.len());
    }
}
