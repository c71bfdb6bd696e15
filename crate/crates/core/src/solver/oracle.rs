//! Plain game-tree recursion with no memo and no pruning.
//!
//! Shares nothing with the memoized search beyond the [`Game`] type itself:
//! successors are rebuilt from scratch and winning replies are found by
//! trying every ply and testing the nim-sum, not by the xor shortcut.

use crate::error::{Error, Result};
use crate::game::{Game, Ply};

use super::SolveResult;

#[derive(Debug, Clone, Copy)]
pub struct OracleConfig {
    pub max_total: u64,
    pub node_budget: u64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            max_total: 16,
            node_budget: 50_000_000,
        }
    }
}

pub fn oracle_solve(g: &Game) -> Result<SolveResult> {
    oracle_solve_with(g, OracleConfig::default())
}

pub fn oracle_solve_with(g: &Game, config: OracleConfig) -> Result<SolveResult> {
    if g.total() > config.max_total {
        return Err(Error::Budget(format!(
            "oracle limited to {} candies, got {}",
            config.max_total,
            g.total()
        )));
    }
    let mut nodes = 0u64;
    let (value, line) = search(g.piles(), &mut nodes, config.node_budget)?;
    let mut loser = 0u64;
    let mut winner = 0u64;
    let mut p_position = xor(g.piles()) == 0;
    for ply in &line {
        let take = (ply.from - ply.to) as u64;
        if p_position {
            loser += take;
        } else {
            winner += take;
        }
        p_position = !p_position;
    }
    Ok(SolveResult {
        game: g.clone(),
        value,
        n_loser: loser,
        n_winner: winner,
        principal_line: line,
    })
}

fn xor(piles: &[u32]) -> u32 {
    let mut acc = 0;
    for &p in piles {
        acc ^= p;
    }
    acc
}

fn successor(piles: &[u32], index: usize, to: u32) -> Vec<u32> {
    let mut next: Vec<u32> = piles.to_vec();
    next[index] = to;
    next.retain(|&p| p != 0);
    next.sort_unstable_by(|a, b| b.cmp(a));
    next
}

fn search(piles: &[u32], nodes: &mut u64, budget: u64) -> Result<(i64, Vec<Ply>)> {
    if piles.is_empty() {
        return Ok((0, Vec::new()));
    }
    *nodes += 1;
    if *nodes > budget {
        return Err(Error::Budget(format!("oracle visited more than {budget} nodes")));
    }
    let loser_to_move = xor(piles) == 0;
    let mut best: Option<(i64, Vec<u32>, Vec<Ply>)> = None;
    for (i, &p) in piles.iter().enumerate() {
        for to in 0..p {
            let next = successor(piles, i, to);
            if !loser_to_move && xor(&next) != 0 {
                continue;
            }
            let (v, rest) = search(&next, nodes, budget)?;
            let take = (p - to) as i64;
            let total = if loser_to_move { take + v } else { v - take };
            let better = match &best {
                None => true,
                Some((bv, bnext, _)) => {
                    let strictly = if loser_to_move { total > *bv } else { total < *bv };
                    strictly || (total == *bv && next < *bnext)
                }
            };
            if better {
                let mut line = Vec::with_capacity(rest.len() + 1);
                line.push(Ply::new(i, p, to));
                line.extend(rest);
                best = Some((total, next, line));
            }
        }
    }
    let (v, _, line) = best.expect("nonempty position has a move");
    Ok((v, line))
}
