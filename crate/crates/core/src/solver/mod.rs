//! Exact Candy Nim values by memoized search.
//!
//! The mover is fixed by the outcome class. In a P position the loser moves
//! and may make any ply; she maximizes `V = N_L - N_W`. In an N position the
//! winner moves, restricted to plies that restore nim-sum zero; he maximizes
//! his own haul, which is the same as minimizing `V` because the total number
//! of candies is fixed. Ties are broken toward the lexicographically smallest
//! canonical successor so the reported line is deterministic.

mod oracle;
mod table;

pub use oracle::{oracle_solve, oracle_solve_with, OracleConfig};
pub use table::{MemoEntry, Side, TranspositionTable};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::game::{Game, Ply};

const RED_ZONE: usize = 128 * 1024;
const STACK_CHUNK: usize = 4 * 1024 * 1024;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolverConfig {
    pub memo_cap: usize,
    pub pile_cap: u64,
    /// Search the root plies on the rayon pool.
    pub parallel: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            memo_cap: 10_000_000,
            pile_cap: 1 << 16,
            parallel: false,
        }
    }
}

/// Exact outcome of optimal play from `game`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveResult {
    pub game: Game,
    pub value: i64,
    pub n_loser: u64,
    pub n_winner: u64,
    /// Plies from the root, alternating between the players.
    #[serde(rename = "line")]
    pub principal_line: Vec<Ply>,
}

impl SolveResult {
    /// Replays the principal line and returns the `(loser, winner)` candy split.
    pub fn replay(&self) -> Result<(u64, u64)> {
        let mut game = self.game.clone();
        let (mut loser, mut winner) = (0, 0);
        for ply in &self.principal_line {
            let loser_moves = game.is_p();
            let next = game.apply(ply)?;
            if !loser_moves && !next.is_p() {
                return Err(Error::Invariant(format!("winner ply {ply} is not winning")));
            }
            if loser_moves {
                loser += ply.taken();
            } else {
                winner += ply.taken();
            }
            game = next;
        }
        if !game.is_empty() {
            return Err(Error::Invariant(format!("line stops at {game}")));
        }
        Ok((loser, winner))
    }
}

#[derive(Clone)]
struct LoserCandidate {
    value: i64,
    child: Game,
    loser: Ply,
    winner: Ply,
}

impl LoserCandidate {
    fn beats(&self, other: &LoserCandidate) -> bool {
        self.value > other.value || (self.value == other.value && self.child < other.child)
    }
}

struct WinnerChoice {
    value: i64,
    ply: Ply,
    next: Game,
}

pub struct Solver {
    config: SolverConfig,
    table: TranspositionTable,
}

impl Default for Solver {
    fn default() -> Self {
        Solver::new()
    }
}

impl Solver {
    pub fn new() -> Self {
        Solver::with_config(SolverConfig::default())
    }

    pub fn with_config(config: SolverConfig) -> Self {
        Solver {
            config,
            table: TranspositionTable::new(config.memo_cap),
        }
    }

    pub fn config(&self) -> &SolverConfig {
        &self.config
    }

    pub fn table(&self) -> &TranspositionTable {
        &self.table
    }

    /// `V(g)`.
    pub fn value(&self, g: &Game) -> Result<i64> {
        g.check_cap(self.config.pile_cap)?;
        if g.is_p() {
            self.loser_value(g, self.config.parallel)
        } else {
            Ok(self.winner_choice(g)?.value)
        }
    }

    /// Candies the winner collects under optimal play.
    pub fn n_winner(&self, g: &Game) -> Result<u64> {
        let v = self.value(g)?;
        Ok(((g.total() as i64 - v) / 2) as u64)
    }

    pub fn solve(&self, g: &Game) -> Result<SolveResult> {
        let value = self.value(g)?;
        let mut line = Vec::new();
        let (mut loser, mut winner) = (0u64, 0u64);
        let mut cur = g.clone();
        if !cur.is_p() {
            let choice = self.winner_choice(&cur)?;
            winner += choice.ply.taken();
            line.push(choice.ply);
            cur = choice.next;
        }
        while !cur.is_empty() {
            let entry = match self.table.get(&cur, Side::Loser) {
                Some(e) => e,
                None => {
                    self.loser_value(&cur, false)?;
                    self.table
                        .get(&cur, Side::Loser)
                        .ok_or_else(|| Error::Invariant(format!("{cur} missing from memo")))?
                }
            };
            let mid = cur.apply(&entry.loser)?;
            let next = mid.apply(&entry.winner)?;
            loser += entry.loser.taken();
            winner += entry.winner.taken();
            line.push(entry.loser);
            line.push(entry.winner);
            cur = next;
        }
        if loser as i64 - winner as i64 != value {
            return Err(Error::Invariant(format!(
                "principal line of {g} splits {loser}/{winner} but value is {value}"
            )));
        }
        Ok(SolveResult {
            game: g.clone(),
            value,
            n_loser: loser,
            n_winner: winner,
            principal_line: line,
        })
    }

    /// The ply the search itself plays: optimal, with the smallest successor among ties.
    pub fn best_ply(&self, g: &Game) -> Result<Ply> {
        if g.is_empty() {
            return Err(Error::NoMoves);
        }
        g.check_cap(self.config.pile_cap)?;
        if g.is_p() {
            self.loser_value(g, self.config.parallel)?;
            self.table
                .get(g, Side::Loser)
                .map(|e| e.loser)
                .ok_or_else(|| Error::Invariant(format!("{g} missing from memo")))
        } else {
            Ok(self.winner_choice(g)?.ply)
        }
    }

    /// Every ply that attains the mover's optimum, ordered by `(pile, from, to)`.
    pub fn best_plies(&self, g: &Game) -> Result<Vec<Ply>> {
        if g.is_empty() {
            return Err(Error::NoMoves);
        }
        g.check_cap(self.config.pile_cap)?;
        let mut scored: Vec<(i64, Ply)> = Vec::new();
        if g.is_p() {
            for (i, &p) in g.piles().iter().enumerate() {
                for to in 0..p {
                    let ply = Ply::new(i, p, to);
                    scored.push((self.score_loser_ply(g, ply)?.value, ply));
                }
            }
            let best = scored.iter().map(|s| s.0).max().unwrap();
            scored.retain(|s| s.0 == best);
        } else {
            let n = g.grundy();
            for (i, &p) in g.piles().iter().enumerate() {
                let to = p ^ n;
                if to < p {
                    let v = self.loser_value(&g.with_pile(i, to), false)? - (p - to) as i64;
                    scored.push((v, Ply::new(i, p, to)));
                }
            }
            let best = scored.iter().map(|s| s.0).min().unwrap();
            scored.retain(|s| s.0 == best);
        }
        let mut plies: Vec<Ply> = scored.into_iter().map(|s| s.1).collect();
        plies.sort();
        Ok(plies)
    }

    fn loser_value(&self, g: &Game, parallel: bool) -> Result<i64> {
        if g.is_empty() {
            return Ok(0);
        }
        if let Some(e) = self.table.get(g, Side::Loser) {
            return Ok(e.value);
        }
        let best = stacker::maybe_grow(RED_ZONE, STACK_CHUNK, || self.expand_loser(g, parallel))?;
        self.table.insert(
            g.clone(),
            Side::Loser,
            MemoEntry {
                value: best.value,
                loser: best.loser,
                winner: best.winner,
            },
        )?;
        Ok(best.value)
    }

    fn expand_loser(&self, g: &Game, parallel: bool) -> Result<LoserCandidate> {
        let piles = g.piles();
        // equal piles give identical successors; only the first is searched
        let plies: Vec<Ply> = piles
            .iter()
            .enumerate()
            .filter(|&(i, &p)| i == 0 || piles[i - 1] != p)
            .flat_map(|(i, &p)| (0..p).map(move |to| Ply::new(i, p, to)))
            .collect();
        let candidates: Vec<LoserCandidate> = if parallel {
            plies
                .par_iter()
                .map(|&ply| self.score_loser_ply(g, ply))
                .collect::<Result<_>>()?
        } else {
            plies
                .iter()
                .map(|&ply| self.score_loser_ply(g, ply))
                .collect::<Result<_>>()?
        };
        let mut best: Option<LoserCandidate> = None;
        for c in candidates {
            if best.as_ref().is_none_or(|b| c.beats(b)) {
                best = Some(c);
            }
        }
        Ok(best.expect("nonempty position has a ply"))
    }

    fn score_loser_ply(&self, g: &Game, ply: Ply) -> Result<LoserCandidate> {
        let child = g.with_pile(ply.pile, ply.to);
        let reply = self.winner_choice(&child)?;
        Ok(LoserCandidate {
            value: ply.taken() as i64 + reply.value,
            child,
            loser: ply,
            winner: reply.ply,
        })
    }

    fn winner_choice(&self, g: &Game) -> Result<WinnerChoice> {
        let n = g.grundy();
        debug_assert!(n != 0, "winner moves only from N positions");
        let piles = g.piles();
        let mut best: Option<WinnerChoice> = None;
        for (i, &p) in piles.iter().enumerate() {
            if i > 0 && piles[i - 1] == p {
                continue;
            }
            let to = p ^ n;
            if to >= p {
                continue;
            }
            let next = g.with_pile(i, to);
            let value = self.loser_value(&next, false)? - (p - to) as i64;
            let better = best
                .as_ref()
                .is_none_or(|b| value < b.value || (value == b.value && next < b.next));
            if better {
                best = Some(WinnerChoice {
                    value,
                    ply: Ply::new(i, p, to),
                    next,
                });
            }
        }
        best.ok_or_else(|| Error::Invariant(format!("no winning move from {g}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> Game {
        s.parse().unwrap()
    }

    #[test]
    fn small_values() {
        let s = Solver::new();
        let r = s.solve(&g("[1,2,3]")).unwrap();
        assert_eq!((r.value, r.n_loser, r.n_winner), (2, 4, 2));
        assert_eq!(r.replay().unwrap(), (4, 2));
        for a in 1..20 {
            assert_eq!(s.value(&Game::new([a, a])).unwrap(), 0);
        }
        assert_eq!(s.value(&g("[1,2,4,7]")).unwrap(), 8);
        assert_eq!(s.value(&g("[3,5,6]")).unwrap(), 6);
        assert_eq!(s.value(&g("[1,2,5,6]")).unwrap(), 6);
        assert_eq!(s.value(&g("[1,5,16,20]")).unwrap(), 28);
    }

    #[test]
    fn empty_game() {
        let r = Solver::new().solve(&Game::empty()).unwrap();
        assert_eq!((r.value, r.n_loser, r.n_winner), (0, 0, 0));
        assert!(r.principal_line.is_empty());
        assert_eq!(Solver::new().best_plies(&Game::empty()), Err(Error::NoMoves));
    }

    #[test]
    fn n_position_root() {
        let s = Solver::new();
        // winner takes the 4 down to 3, then [1,2,3] is worth 2 to the loser
        let r = s.solve(&g("[1,2,4]")).unwrap();
        assert_eq!(r.value, -1 + 2);
        assert_eq!(r.principal_line[0], Ply::new(0, 4, 3));
        assert_eq!(r.replay().unwrap(), (r.n_loser, r.n_winner));
        assert_eq!(s.value(&g("[5]")).unwrap(), -5);
    }

    #[test]
    fn best_plies_examples() {
        let s = Solver::new();
        let b = s.best_plies(&g("[1,5,16,20]")).unwrap();
        assert!(b.contains(&Ply::new(2, 5, 2)), "{b:?}");
        // every ply on [a,a] is mirrored, so all of them tie at 0
        let b = s.best_plies(&g("[4,4]")).unwrap();
        assert!(b.contains(&Ply::new(0, 4, 0)) && b.contains(&Ply::new(1, 4, 0)));
        assert_eq!(b.len(), 8);
        let b = s.best_plies(&g("[1,2,3]")).unwrap();
        assert!(b.contains(&Ply::new(0, 3, 0)));
    }

    #[test]
    fn principal_line_alternates_and_replays() {
        let s = Solver::new();
        let r = s.solve(&g("[1,5,16,20]")).unwrap();
        assert_eq!(r.principal_line[0], Ply::new(2, 5, 2));
        assert_eq!(r.replay().unwrap(), (r.n_loser, r.n_winner));
        assert_eq!(r.n_loser + r.n_winner, 42);
    }

    #[test]
    fn budgets() {
        let tight = Solver::with_config(SolverConfig {
            memo_cap: 3,
            ..SolverConfig::default()
        });
        assert!(tight.solve(&g("[7,8,15]")).unwrap_err().is_budget());
        let capped = Solver::with_config(SolverConfig {
            pile_cap: 10,
            ..SolverConfig::default()
        });
        assert!(matches!(capped.solve(&g("[1,11,10]")), Err(Error::PileCap { .. })));
    }

    #[test]
    fn json_shape() {
        let r = Solver::new().solve(&g("[1,2,3]")).unwrap();
        let v: serde_json::Value = serde_json::to_value(&r).unwrap();
        assert_eq!(v["game"], serde_json::json!([3, 2, 1]));
        assert_eq!(v["value"], 2);
        assert_eq!(v["n_loser"], 4);
        assert_eq!(v["n_winner"], 2);
        assert_eq!(v["line"][0], serde_json::json!({"pile": 0, "from": 3, "to": 0}));
    }

    #[test]
    fn cached_entries_match_fresh_solves() {
        let s = Solver::new();
        s.solve(&g("[3,5,6]")).unwrap();
        s.solve(&g("[1,4,5]")).unwrap();
        for (game, side, entry) in s.table().entries() {
            assert_eq!(side, Side::Loser);
            assert_eq!(Solver::new().value(&game).unwrap(), entry.value, "{game}");
        }
        assert!(s.table().hits() > 0);
    }

    #[test]
    fn parallel_matches_sequential() {
        let par = Solver::with_config(SolverConfig {
            parallel: true,
            ..SolverConfig::default()
        });
        for game in ["[1,5,16,20]", "[7,16,23]", "[3,5,6]", "[1,2,4,7]"] {
            let game = g(game);
            assert_eq!(par.solve(&game).unwrap(), Solver::new().solve(&game).unwrap());
        }
    }

    #[test]
    fn oracle_agrees_on_examples() {
        for game in ["[1,2,3]", "[3,5,6]", "[1,4,5]", "[2,2]", "[1,2,4]"] {
            let game = g(game);
            assert_eq!(oracle_solve(&game).unwrap(), Solver::new().solve(&game).unwrap());
        }
        assert_eq!(oracle_solve(&g("[1,2,3]")).unwrap().value, 2);
        assert_eq!(oracle_solve(&g("[3,5,6]")).unwrap().value, 6);
        assert!(oracle_solve(&g("[9,10,3]")).unwrap_err().is_budget());
    }
}
