//! Nim arithmetic and the position model.
//!
//! A [`Game`] is a multiset of pile sizes kept in canonical form: sorted
//! descending with empty piles dropped. Every equality, hash and memo key in
//! the crate goes through that form, so `[1,2,3]`, `[3,0,2,1]` and `[2,3,1]`
//! are the same position.

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::{Error, Result};

/// Inline storage for pile sizes; positions with more piles spill to the heap.
pub type Piles = SmallVec<[u32; 8]>;

/// Largest pile size accepted by the parser unless a smaller cap is configured.
pub const DEFAULT_PILE_CAP: u64 = u32::MAX as u64;

/// Carry-free binary addition of all values.
pub fn nim_sum<I: IntoIterator<Item = u64>>(values: I) -> u64 {
    values.into_iter().fold(0, |acc, v| acc ^ v)
}

/// Outcome class of a Nim position under normal play.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum OutcomeClass {
    /// The previous player (the one who just moved) wins.
    P,
    /// The next player to move wins.
    N,
}

impl fmt::Display for OutcomeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OutcomeClass::P => f.write_str("P"),
            OutcomeClass::N => f.write_str("N"),
        }
    }
}

/// A Nim position in canonical form.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(from = "Vec<u32>", into = "Vec<u32>")]
pub struct Game {
    piles: Piles,
}

impl Game {
    pub fn new<I: IntoIterator<Item = u32>>(piles: I) -> Self {
        let mut piles: Piles = piles.into_iter().filter(|&p| p > 0).collect();
        piles.sort_unstable_by(|a, b| b.cmp(a));
        Game { piles }
    }

    /// The finished position.
    pub fn empty() -> Self {
        Game::default()
    }

    /// Builds a game from wide integers, rejecting any pile above `cap`.
    pub fn try_from_sizes(sizes: &[u64], cap: u64) -> Result<Self> {
        let cap = cap.min(DEFAULT_PILE_CAP);
        let mut piles = Piles::with_capacity(sizes.len());
        for &s in sizes {
            if s > cap {
                return Err(Error::PileCap { size: s, cap });
            }
            piles.push(s as u32);
        }
        Ok(Game::new(piles))
    }

    /// Parses the textual notation with an explicit pile cap.
    ///
    /// Accepts `[1,2,3]`, `1,2,3`, `[ ]` and the empty string; whitespace is
    /// ignored everywhere.
    pub fn parse_with_cap(input: &str, cap: u64) -> Result<Self> {
        let compact: String = input.chars().filter(|c| !c.is_whitespace()).collect();
        let body = match (compact.strip_prefix('['), compact.ends_with(']')) {
            (Some(rest), true) => &rest[..rest.len() - 1],
            (None, false) => compact.as_str(),
            _ => {
                return Err(Error::Parse {
                    input: input.to_string(),
                    reason: "unbalanced brackets".into(),
                })
            }
        };
        if body.is_empty() {
            return Ok(Game::empty());
        }
        let mut sizes = Vec::new();
        for tok in body.split(',') {
            let v: u64 = tok.parse().map_err(|_| Error::Parse {
                input: input.to_string(),
                reason: format!("{tok:?} is not a nonnegative integer"),
            })?;
            sizes.push(v);
        }
        Game::try_from_sizes(&sizes, cap)
    }

    pub fn piles(&self) -> &[u32] {
        &self.piles
    }

    pub fn len(&self) -> usize {
        self.piles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.piles.is_empty()
    }

    /// Total number of candies.
    pub fn total(&self) -> u64 {
        self.piles.iter().map(|&p| p as u64).sum()
    }

    /// Grundy value: the nim-sum of the piles.
    pub fn grundy(&self) -> u32 {
        self.piles.iter().fold(0, |acc, &p| acc ^ p)
    }

    pub fn outcome(&self) -> OutcomeClass {
        if self.grundy() == 0 {
            OutcomeClass::P
        } else {
            OutcomeClass::N
        }
    }

    pub fn is_p(&self) -> bool {
        self.grundy() == 0
    }

    pub fn largest(&self) -> Option<u32> {
        self.piles.first().copied()
    }

    /// True when no pile size occurs twice.
    pub fn is_duplicate_free(&self) -> bool {
        self.piles.windows(2).all(|w| w[0] != w[1])
    }

    /// The position after setting pile `index` to `to`, re-canonicalized.
    ///
    /// `to` must be smaller than the current size; callers that cannot
    /// guarantee this go through [`Game::apply`].
    pub(crate) fn with_pile(&self, index: usize, to: u32) -> Game {
        debug_assert!(to < self.piles[index]);
        let mut piles = self.piles.clone();
        piles.remove(index);
        if to > 0 {
            let pos = piles.partition_point(|&p| p >= to);
            piles.insert(pos, to);
        }
        Game { piles }
    }

    /// Checks `ply` against this position and returns the successor.
    pub fn apply(&self, ply: &Ply) -> Result<Game> {
        self.check(ply)?;
        Ok(self.with_pile(ply.pile, ply.to))
    }

    pub fn check(&self, ply: &Ply) -> Result<()> {
        let legal = self
            .piles
            .get(ply.pile)
            .is_some_and(|&size| size == ply.from && ply.to < ply.from);
        if legal {
            Ok(())
        } else {
            Err(Error::IllegalPly {
                game: self.to_string(),
                ply: ply.to_string(),
            })
        }
    }

    pub fn check_cap(&self, cap: u64) -> Result<()> {
        match self.largest() {
            Some(p) if p as u64 > cap => Err(Error::PileCap { size: p as u64, cap }),
            _ => Ok(()),
        }
    }
}

impl From<Vec<u32>> for Game {
    fn from(piles: Vec<u32>) -> Self {
        Game::new(piles)
    }
}

impl From<Game> for Vec<u32> {
    fn from(g: Game) -> Self {
        g.piles.into_vec()
    }
}

impl<const N: usize> From<[u32; N]> for Game {
    fn from(piles: [u32; N]) -> Self {
        Game::new(piles)
    }
}

impl FromStr for Game {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Game::parse_with_cap(s, DEFAULT_PILE_CAP)
    }
}

impl fmt::Display for Game {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, p) in self.piles.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str("]")
    }
}

impl fmt::Debug for Game {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A single move: pile `pile` (index in canonical order) goes from `from` to `to`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Ply {
    pub pile: usize,
    pub from: u32,
    pub to: u32,
}

impl Ply {
    pub fn new(pile: usize, from: u32, to: u32) -> Self {
        Ply { pile, from, to }
    }

    /// Candies removed by this ply.
    pub fn taken(&self) -> u64 {
        (self.from - self.to) as u64
    }
}

impl fmt::Display for Ply {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}->{} (pile {})", self.from, self.to, self.pile)
    }
}

pub fn classify(g: &Game) -> OutcomeClass {
    g.outcome()
}

/// All plies that leave a P position, at most one per pile.
pub fn winning_moves(g: &Game) -> Vec<Ply> {
    let n = g.grundy();
    if n == 0 {
        return Vec::new();
    }
    g.piles()
        .iter()
        .enumerate()
        .filter_map(|(i, &p)| {
            let t = p ^ n;
            (t < p).then(|| Ply::new(i, p, t))
        })
        .collect()
}

/// Every legal Nim ply; there are exactly `g.total()` of them.
pub fn loser_moves(g: &Game) -> Result<Vec<Ply>> {
    if g.is_empty() {
        return Err(Error::NoMoves);
    }
    Ok(g.piles()
        .iter()
        .enumerate()
        .flat_map(|(i, &p)| (0..p).rev().map(move |t| Ply::new(i, p, t)))
        .collect())
}

/// The winner's only reply after `ply` in a P position of at most three piles.
pub fn unique_response(g: &Game, ply: &Ply) -> Result<Ply> {
    if !g.is_p() || !(2..=3).contains(&g.len()) {
        return Err(Error::NotThreePileP { game: g.to_string() });
    }
    let after = g.apply(ply)?;
    let mut replies = winning_moves(&after);
    if replies.len() != 1 {
        return Err(Error::Invariant(format!(
            "{} winning replies after {ply} on {g}",
            replies.len()
        )));
    }
    Ok(replies.pop().unwrap())
}

/// One loser ply followed by one winner ply, starting and ending at P positions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "TurnRecord")]
pub struct Turn {
    before: Game,
    loser_ply: Ply,
    after_loser: Game,
    winner_ply: Ply,
    after_winner: Game,
}

#[derive(Deserialize)]
struct TurnRecord {
    before: Game,
    loser_ply: Ply,
    winner_ply: Ply,
}

impl TryFrom<TurnRecord> for Turn {
    type Error = Error;

    fn try_from(r: TurnRecord) -> Result<Self> {
        Turn::new(r.before, r.loser_ply, r.winner_ply)
    }
}

impl Turn {
    pub fn new(before: Game, loser_ply: Ply, winner_ply: Ply) -> Result<Self> {
        if !before.is_p() {
            return Err(Error::Invariant(format!("turn starts at N position {before}")));
        }
        let after_loser = before.apply(&loser_ply)?;
        let after_winner = after_loser.apply(&winner_ply)?;
        if !after_winner.is_p() {
            return Err(Error::Invariant(format!(
                "winner ply {winner_ply} leaves N position {after_winner}"
            )));
        }
        Ok(Turn {
            before,
            loser_ply,
            after_loser,
            winner_ply,
            after_winner,
        })
    }

    pub fn before(&self) -> &Game {
        &self.before
    }
    pub fn after_loser(&self) -> &Game {
        &self.after_loser
    }
    pub fn after_winner(&self) -> &Game {
        &self.after_winner
    }
    pub fn loser_ply(&self) -> &Ply {
        &self.loser_ply
    }
    pub fn winner_ply(&self) -> &Ply {
        &self.winner_ply
    }
    pub fn loser_take(&self) -> u64 {
        self.loser_ply.taken()
    }
    pub fn winner_take(&self) -> u64 {
        self.winner_ply.taken()
    }
}

/// Loser's take minus winner's take within one turn.
pub fn single_turn_value(t: &Turn) -> i64 {
    t.loser_take() as i64 - t.winner_take() as i64
}

/// Loser's take over winner's take, exactly.
pub fn semiratio(t: &Turn) -> Ratio<u64> {
    Ratio::new(t.loser_take(), t.winner_take())
}

/// Concatenation of two positions.
pub fn game_sum(g: &Game, h: &Game) -> Game {
    Game::new(g.piles().iter().chain(h.piles()).copied())
}

/// Greedily strips pairs of equal piles; returns the remainder and one size per removed pair.
pub fn reduce_duplicates(g: &Game) -> (Game, Vec<u32>) {
    let mut kept = Piles::new();
    let mut removed = Vec::new();
    let mut it = g.piles().iter().copied().peekable();
    while let Some(p) = it.next() {
        if it.peek() == Some(&p) {
            it.next();
            removed.push(p);
        } else {
            kept.push(p);
        }
    }
    (Game { piles: kept }, removed)
}

/// `a ⊕ (a-1)`, always of the form `2^k - 1`.
pub fn xor_adjacent(a: u64) -> u64 {
    assert!(a >= 1, "xor_adjacent needs a positive argument");
    a ^ (a - 1)
}

/// `⌊log₂ a⌋` for `a ≥ 1`.
pub fn floor_log2(a: u64) -> u32 {
    assert!(a >= 1);
    63 - a.leading_zeros()
}

/// The three-pile family `[a, 2^{k+1}m + x, 2^{k+1}m + (a ⊕ x)]` with `k = ⌊log₂ a⌋`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GFamily {
    a: u32,
    m: u32,
    x: u32,
}

impl GFamily {
    /// Validates `a ≥ 1`, `m ≥ 1` and `0 ≤ x < 2^k`.
    pub fn new(a: u32, m: u32, x: u32) -> Result<Self> {
        if a == 0 {
            return Err(Error::FamilyParams("a must be positive".into()));
        }
        if m == 0 {
            return Err(Error::FamilyParams("m must be at least 1".into()));
        }
        let k = floor_log2(a as u64);
        if (x as u64) >= 1u64 << k {
            return Err(Error::FamilyParams(format!("x = {x} must be below 2^{k}")));
        }
        Ok(GFamily { a, m, x })
    }

    /// Standard form `(2^{k+1} - 1, m, 0)`.
    pub fn standard(k: u32, m: u32) -> Result<Self> {
        if k >= 31 {
            return Err(Error::FamilyParams(format!("k = {k} is too large")));
        }
        GFamily::new((1u32 << (k + 1)) - 1, m, 0)
    }

    pub fn a(&self) -> u32 {
        self.a
    }
    pub fn m(&self) -> u32 {
        self.m
    }
    pub fn x(&self) -> u32 {
        self.x
    }

    /// `⌊log₂ a⌋`.
    pub fn k(&self) -> u32 {
        floor_log2(self.a as u64)
    }

    pub fn is_standard_form(&self) -> bool {
        self.x == 0 && (self.a as u64 + 1).is_power_of_two()
    }

    pub fn realize(&self) -> Result<Game> {
        family_game(self.a, self.m, self.x)
    }
}

/// Same piles as [`GFamily::realize`] without the parameter checks, so `m = 0`
/// and offsets up to `2^{k+1}` are allowed. `a` must be positive.
pub fn family_game(a: u32, m: u32, x: u32) -> Result<Game> {
    if a == 0 {
        return Err(Error::FamilyParams("a must be positive".into()));
    }
    let step = 2u64 << floor_log2(a as u64);
    let base = step * m as u64;
    let piles = [a as u64, base + x as u64, base + (a ^ x) as u64];
    Game::try_from_sizes(&piles, DEFAULT_PILE_CAP)
}

/// `[2^e - 1, 2^e m, 2^e (m+1) - 1]` for `e ≥ 1`; with `m = 0` this is the pair `[2^e-1, 2^e-1]`.
pub fn exponent_family(e: u32, m: u32) -> Result<Game> {
    if e == 0 || e >= 32 {
        return Err(Error::FamilyParams(format!("exponent {e} out of range")));
    }
    family_game((1u32 << e) - 1, m, 0)
}
