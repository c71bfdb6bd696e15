//! Distributing `N` candies into a P position that minimizes the winner's haul.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::five_pile_upper;
use crate::enumerate::{p_positions, Space};
use crate::error::{Error, Result};
use crate::game::{family_game, floor_log2, Game, Ply};
use crate::solver::{SolveResult, Solver};

/// Which rule produced an allocation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum Construction {
    /// `N = 2^n`: `[1, 1, 1, 2, …, 2^{n-2}, 2^{n-1} - 1]`.
    EqualityPower {
        n: u32,
    },
    /// `N = 2^n - 2`: `[1, 2, …, 2^{n-2}, 2^{n-1} - 1]`.
    EqualityBest {
        n: u32,
    },
    /// `N = 2^n - 2^k - 2`: the best arrangement with `2^{k-1}` folded into the top pile.
    EqualityGap {
        n: u32,
        k: u32,
    },
    /// Three-pile family plus a duplicate pair; `template` records whether the
    /// unpadded pile formula was already a valid P position of the right total.
    FivePile {
        template: bool,
    },
    Exhaustive,
}

impl fmt::Display for Construction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Construction::EqualityPower { n } => write!(f, "equality-power:n={n}"),
            Construction::EqualityBest { n } => write!(f, "equality-best:n={n}"),
            Construction::EqualityGap { n, k } => write!(f, "equality-gap:n={n},k={k}"),
            Construction::FivePile { template: true } => write!(f, "five-pile:template"),
            Construction::FivePile { template: false } => write!(f, "five-pile:repaired"),
            Construction::Exhaustive => write!(f, "exhaustive"),
        }
    }
}

impl From<Construction> for String {
    fn from(c: Construction) -> String {
        c.to_string()
    }
}

impl TryFrom<String> for Construction {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl FromStr for Construction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse {
            input: s.to_string(),
            reason: "unknown construction tag".into(),
        };
        let num = |kv: &str, key: &str| -> Result<u32> {
            kv.strip_prefix(key)
                .and_then(|v| v.strip_prefix('='))
                .and_then(|v| v.parse().ok())
                .ok_or_else(bad)
        };
        match s.split_once(':') {
            Some(("equality-power", rest)) => Ok(Construction::EqualityPower { n: num(rest, "n")? }),
            Some(("equality-best", rest)) => Ok(Construction::EqualityBest { n: num(rest, "n")? }),
            Some(("equality-gap", rest)) => {
                let (n, k) = rest.split_once(',').ok_or_else(bad)?;
                Ok(Construction::EqualityGap {
                    n: num(n, "n")?,
                    k: num(k, "k")?,
                })
            }
            Some(("five-pile", "template")) => Ok(Construction::FivePile { template: true }),
            Some(("five-pile", "repaired")) => Ok(Construction::FivePile { template: false }),
            None if s == "exhaustive" => Ok(Construction::Exhaustive),
            _ => Err(bad()),
        }
    }
}

/// A solver-verified allocation; serializes as the solve result plus `"construction"`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AllocationResult {
    #[serde(flatten)]
    pub result: SolveResult,
    pub construction: Construction,
}

impl AllocationResult {
    pub fn game(&self) -> &Game {
        &self.result.game
    }

    pub fn n_winner(&self) -> u64 {
        self.result.n_winner
    }
}

fn verified(solver: &Solver, game: Game, total: u64, construction: Construction) -> Result<AllocationResult> {
    if !game.is_p() || game.total() != total {
        return Err(Error::Construction(format!(
            "{construction} produced {game}, which is not a P position of total {total}"
        )));
    }
    Ok(AllocationResult {
        result: solver.solve(&game)?,
        construction,
    })
}

fn check_even(total: u64) -> Result<()> {
    if total % 2 == 1 {
        return Err(Error::Parity(total));
    }
    Ok(())
}

/// Side conditions on the equality cases.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum EqualityReading {
    /// `n > 2` throughout, as stated; misses `N = 2` and `[1,1,1,1]`.
    Literal,
    /// `n ≥ 2` for the power and best cases, which the exhaustive search confirms.
    #[default]
    Extended,
}

/// `[1, 2, 4, …, 2^{n-2}, 2^{n-1} - 1]`.
fn best_piles(n: u32) -> Vec<u32> {
    let mut piles: Vec<u32> = (0..n - 1).map(|i| 1 << i).collect();
    piles.push((1 << (n - 1)) - 1);
    piles
}

/// `[1, …, 2^{k-2}, 2^k, …, 2^{n-2}, 2^{n-1} - 1 - 2^{k-1}]`.
fn gap_piles(n: u32, k: u32) -> Vec<u32> {
    let mut piles: Vec<u32> = (0..n - 1).filter(|&i| i + 1 != k).map(|i| 1 << i).collect();
    piles.push((1 << (n - 1)) - 1 - (1 << (k - 1)));
    piles
}

/// The arrangements whose winner haul meets `⌊log₂ N⌋`, unverified.
pub fn equality_arrangements(total: u64, reading: EqualityReading) -> Result<Vec<(Game, Construction)>> {
    check_even(total)?;
    if !(2..=1 << 31).contains(&total) {
        return Ok(Vec::new());
    }
    let n_min = match reading {
        EqualityReading::Literal => 3,
        EqualityReading::Extended => 2,
    };
    let mut out = Vec::new();
    let n = floor_log2(total);
    if total.is_power_of_two() && n >= n_min {
        let mut piles = best_piles(n);
        piles.extend([1, 1]);
        out.push((Game::new(piles), Construction::EqualityPower { n }));
    }
    let n = floor_log2(total + 2);
    if (total + 2).is_power_of_two() && n >= n_min {
        out.push((Game::new(best_piles(n)), Construction::EqualityBest { n }));
    }
    // 2^n - 2^k - 2 with n > k + 1 ≥ 2
    for k in 1..32u32 {
        let rest = total + 2 + (1u64 << k);
        let n = floor_log2(rest);
        if rest.is_power_of_two() && n > k + 1 && n >= 3 {
            out.push((Game::new(gap_piles(n, k)), Construction::EqualityGap { n, k }));
        }
    }
    out.sort();
    Ok(out)
}

/// Solver-verified equality arrangements for `total`; empty when no case applies.
pub fn equality_family(solver: &Solver, total: u64) -> Result<Vec<AllocationResult>> {
    equality_arrangements(total, EqualityReading::Extended)?
        .into_iter()
        .map(|(g, c)| verified(solver, g, total, c))
        .collect()
}

/// `[1, 2, …, 2^{n-2}, 2^{n-1} - 1]` with `N = 2^n - 2`.
pub fn best_power_arrangement(solver: &Solver, n: u32) -> Result<AllocationResult> {
    if !(2..32).contains(&n) {
        return Err(Error::FamilyParams(format!(
            "best arrangement needs 2 <= n < 32, got {n}"
        )));
    }
    verified(
        solver,
        Game::new(best_piles(n)),
        (1u64 << n) - 2,
        Construction::EqualityBest { n },
    )
}

/// Recovers `(n, k)` for a gap arrangement.
pub fn recognize_gap(g: &Game) -> Result<(u32, u32)> {
    let total = g.total();
    for k in 1..32u32 {
        let rest = total + 2 + (1u64 << k);
        let n = floor_log2(rest);
        if rest.is_power_of_two() && n > k + 1 && Game::new(gap_piles(n, k)) == *g {
            return Ok((n, k));
        }
    }
    Err(Error::Family {
        family: "gap arrangement",
        game: g.to_string(),
    })
}

/// Reduces the top pile `2^{n-1} - 1 - 2^{k-1}` to `2^{k-1}`, leaving the best arrangement.
pub fn lemma_optimal_ply(g: &Game) -> Result<Ply> {
    let (n, k) = recognize_gap(g)?;
    let top = (1u32 << (n - 1)) - 1 - (1 << (k - 1));
    debug_assert_eq!(g.piles()[0], top);
    Ok(Ply::new(0, top, 1 << (k - 1)))
}

/// The literal pile formula: `[2^{h-1} - 1, H/2 - 2^{h-1}, H/2 - 1, L/2 - 1, L/2 - 1]`
/// where `h = ⌊k₁/2⌋` and `H`, `L` are the bits of `N` at or above and below `2^h`.
/// `None` when a pile would be negative.
pub fn five_pile_template(total: u64) -> Option<Vec<i64>> {
    let h = floor_log2(total) / 2;
    if h == 0 {
        return None;
    }
    let high = (total >> h << h) as i64;
    let low = (total & ((1 << h) - 1)) as i64;
    let half = 1i64 << (h - 1);
    let piles = vec![half - 1, high / 2 - half, high / 2 - 1, low / 2 - 1, low / 2 - 1];
    piles.iter().all(|&p| p >= 0).then_some(piles)
}

fn template_is_valid(total: u64) -> bool {
    five_pile_template(total).is_some_and(|piles| {
        let sum: i64 = piles.iter().sum();
        let g = Game::new(piles.iter().map(|&p| p as u32));
        sum as u64 == total && g.is_p()
    })
}

/// Three-pile part `𝔊(2^h - 1, m, 0)` with `h = max(⌊k₁/2⌋, 1)` and the largest
/// admissible `m`, then a duplicate pair `[d, d]` carrying the remaining candies.
pub fn five_pile_construct(solver: &Solver, total: u64) -> Result<AllocationResult> {
    check_even(total)?;
    if total < 2 {
        return Err(Error::FamilyParams(format!(
            "five-pile construction needs N >= 2, got {total}"
        )));
    }
    let h = (floor_log2(total) / 2).max(1);
    let a = (1u32 << h) - 1;
    let blocks = total >> (h + 1);
    let three = if blocks == 0 {
        Game::empty()
    } else {
        let m = u32::try_from(blocks - 1).map_err(|_| Error::Budget(format!("total {total} too large")))?;
        family_game(a, m, 0)?
    };
    // the family total is 2^{h+1}·blocks − 2, so the remainder is even and positive
    let d = (total - three.total()) / 2;
    let d = u32::try_from(d).map_err(|_| Error::Budget(format!("total {total} too large")))?;
    let mut piles = three.piles().to_vec();
    piles.extend([d, d]);
    let construction = Construction::FivePile {
        template: template_is_valid(total),
    };
    let out = verified(solver, Game::new(piles), total, construction)?;
    if out.game().len() > 5 {
        return Err(Error::Construction(format!("{} has more than five piles", out.game())));
    }
    Ok(out)
}

/// `true` when the allocation's winner haul is within `⌈(3/2)√(2N) - 2⌉`.
pub fn meets_five_pile_bound(r: &AllocationResult) -> bool {
    r.n_winner() as i64 <= five_pile_upper(r.game().total()).ceiling
}

/// Default pile-count limit for [`exhaustive_min_winner`].
pub const DEFAULT_MAX_PILES: usize = 6;

/// Every P position of `total` candies (within the limits) achieving the least winner haul.
pub fn exhaustive_min_winner(
    solver: &Solver,
    total: u64,
    max_piles: usize,
    max_pile: Option<u32>,
) -> Result<Vec<AllocationResult>> {
    check_even(total)?;
    let mut space = Space::exact(total).with_max_piles(max_piles);
    if let Some(p) = max_pile {
        space = space.with_max_pile(p);
    }
    let candidates: Vec<Game> = p_positions(space).into_iter().filter(|g| !g.is_empty()).collect();
    let hauls: Vec<u64> = candidates
        .par_iter()
        .map(|g| solver.n_winner(g))
        .collect::<Result<_>>()?;
    let Some(&best) = hauls.iter().min() else {
        return Ok(Vec::new());
    };
    candidates
        .into_iter()
        .zip(hauls)
        .filter(|&(_, h)| h == best)
        .map(|(g, _)| verified(solver, g, total, Construction::Exhaustive))
        .collect()
}
