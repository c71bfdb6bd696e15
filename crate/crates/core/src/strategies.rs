//! Explicit loser strategies and full-game simulation.
//!
//! The 3-pile families here are indexed by the exponent `e` of the small
//! pile `2^e - 1`: `[2^e - 1, 2^e m, 2^e (m+1) - 1]`, with `m = 0` giving the
//! pair `[2^e - 1, 2^e - 1]`.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::game::{exponent_family, single_turn_value, unique_response, Game, Ply, Turn};
use crate::solver::Solver;

/// Chooses the loser's ply at a P position.
pub trait LoserPolicy {
    fn name(&self) -> String;
    fn pick(&self, g: &Game) -> Result<Ply>;
}

/// Chooses the winner's reply after the loser played `ply` from `before`.
pub trait WinnerPolicy {
    fn respond(&self, before: &Game, ply: &Ply) -> Result<Ply>;
}

/// Empties the largest pile. Never scores below zero: the winner can take
/// at most as much as the loser just did.
#[derive(Debug, Clone, Copy, Default)]
pub struct LargestPile;

impl LoserPolicy for LargestPile {
    fn name(&self) -> String {
        "largest-pile".into()
    }

    fn pick(&self, g: &Game) -> Result<Ply> {
        let largest = g.largest().ok_or(Error::NoMoves)?;
        Ok(Ply::new(0, largest, 0))
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct FlipFlop;

impl LoserPolicy for FlipFlop {
    fn name(&self) -> String {
        "flip-flop".into()
    }

    fn pick(&self, g: &Game) -> Result<Ply> {
        flip_flop_policy(g)
    }
}

/// A map on exponents with `f(e) ≤ e`, checked at each use.
#[derive(Clone)]
pub struct ContractiveFn {
    name: String,
    f: Arc<dyn Fn(u32) -> u32 + Send + Sync>,
}

impl ContractiveFn {
    pub fn new(name: impl Into<String>, f: impl Fn(u32) -> u32 + Send + Sync + 'static) -> Self {
        ContractiveFn {
            name: name.into(),
            f: Arc::new(f),
        }
    }

    pub fn identity() -> Self {
        ContractiveFn::new("identity", |e| e)
    }

    /// `e ↦ ⌊e/2⌋`.
    pub fn halve() -> Self {
        ContractiveFn::new("halve", |e| e / 2)
    }

    /// Table lookup, `values[e - 1] = f(e)`; exponents past the table map to themselves.
    pub fn from_table(values: Vec<u32>) -> Self {
        let name = format!("table{values:?}");
        ContractiveFn::new(name, move |e| {
            values.get((e as usize).wrapping_sub(1)).copied().unwrap_or(e)
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn apply(&self, e: u32) -> Result<u32> {
        let out = (self.f)(e);
        if out > e {
            return Err(Error::NotContractive {
                name: self.name.clone(),
                input: e,
                output: out,
            });
        }
        Ok(out)
    }
}

impl fmt::Debug for ContractiveFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ContractiveFn({})", self.name)
    }
}

#[derive(Debug, Clone)]
pub struct Fractal(pub ContractiveFn);

impl LoserPolicy for Fractal {
    fn name(&self) -> String {
        format!("fractal({})", self.0.name())
    }

    fn pick(&self, g: &Game) -> Result<Ply> {
        fractal_policy(&self.0, g)
    }
}

/// Replies with the only winning move; 2- and 3-pile positions only.
#[derive(Debug, Clone, Copy, Default)]
pub struct UniqueResponder;

impl WinnerPolicy for UniqueResponder {
    fn respond(&self, before: &Game, ply: &Ply) -> Result<Ply> {
        unique_response(before, ply)
    }
}

/// Replies with the solver's value-minimizing winning move.
pub struct SolverResponder<'a>(pub &'a Solver);

impl WinnerPolicy for SolverResponder<'_> {
    fn respond(&self, before: &Game, ply: &Ply) -> Result<Ply> {
        self.0.best_ply(&before.apply(ply)?)
    }
}

/// Unique reply for at most three piles, solver play otherwise.
pub struct DefaultResponder {
    solver: Solver,
}

impl DefaultResponder {
    pub fn new() -> Self {
        DefaultResponder { solver: Solver::new() }
    }

    pub fn with_solver(solver: Solver) -> Self {
        DefaultResponder { solver }
    }
}

impl Default for DefaultResponder {
    fn default() -> Self {
        DefaultResponder::new()
    }
}

impl WinnerPolicy for DefaultResponder {
    fn respond(&self, before: &Game, ply: &Ply) -> Result<Ply> {
        if before.len() <= 3 {
            unique_response(before, ply)
        } else {
            SolverResponder(&self.solver).respond(before, ply)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StrategyTrace {
    pub root: Game,
    pub turns: Vec<Turn>,
    pub strategic_value: i64,
    pub loser_total: u64,
    pub winner_total: u64,
}

impl StrategyTrace {
    /// Checks that the turns chain from the root to the empty game and that the totals agree.
    pub fn validate(&self) -> Result<()> {
        let mut cur = &self.root;
        let (mut loser, mut winner) = (0, 0);
        for (i, t) in self.turns.iter().enumerate() {
            if t.before() != cur {
                return Err(Error::IllegalTurn {
                    turn: i,
                    reason: format!("starts at {} but the game is at {cur}", t.before()),
                });
            }
            loser += t.loser_take();
            winner += t.winner_take();
            cur = t.after_winner();
        }
        if !cur.is_empty() {
            return Err(Error::Invariant(format!("trace stops at {cur}")));
        }
        if loser != self.loser_total
            || winner != self.winner_total
            || loser as i64 - winner as i64 != self.strategic_value
        {
            return Err(Error::Invariant("trace totals disagree with its turns".into()));
        }
        Ok(())
    }
}

/// Plays `policy` against `responder` from the P position `g` to the end.
pub fn simulate(policy: &dyn LoserPolicy, g: &Game, responder: &dyn WinnerPolicy) -> Result<StrategyTrace> {
    if !g.is_p() {
        return Err(Error::Invariant(format!(
            "simulation must start at a P position, got {g}"
        )));
    }
    let mut turns = Vec::new();
    let mut cur = g.clone();
    while !cur.is_empty() {
        let index = turns.len();
        let ply = policy.pick(&cur)?;
        cur.check(&ply).map_err(|e| Error::IllegalTurn {
            turn: index,
            reason: format!("{} chose an illegal ply: {e}", policy.name()),
        })?;
        let reply = responder.respond(&cur, &ply)?;
        let turn = Turn::new(cur, ply, reply).map_err(|e| Error::IllegalTurn {
            turn: index,
            reason: e.to_string(),
        })?;
        cur = turn.after_winner().clone();
        turns.push(turn);
    }
    let loser_total: u64 = turns.iter().map(Turn::loser_take).sum();
    let winner_total: u64 = turns.iter().map(Turn::winner_take).sum();
    Ok(StrategyTrace {
        root: g.clone(),
        strategic_value: turns.iter().map(single_turn_value).sum(),
        turns,
        loser_total,
        winner_total,
    })
}

/// Recovers `(e, m)` with `g = [2^e - 1, 2^e m, 2^e (m+1) - 1]`, `e ≥ 1`.
pub fn recognize_family(g: &Game) -> Result<(u32, u32)> {
    let out = || Error::Family {
        family: "flip-flop",
        game: g.to_string(),
    };
    let small = *g.piles().last().ok_or_else(out)?;
    let e = (small as u64 + 1).trailing_zeros();
    if (small as u64 + 1).count_ones() != 1 || e == 0 {
        return Err(out());
    }
    let m = match g.piles() {
        [a, b] if a == b => 0,
        [_, b, _] if b % (1u32 << e) == 0 => b >> e,
        _ => return Err(out()),
    };
    if exponent_family(e, m).ok().as_ref() != Some(g) {
        return Err(out());
    }
    Ok((e, m))
}

/// Largest pile loses `2^{e+1} - 1` candies; the pair `[a, a]` loses one whole pile.
pub fn flip_flop_policy(g: &Game) -> Result<Ply> {
    let (e, m) = recognize_family(g)?;
    let top = g.piles()[0];
    if m == 0 {
        return Ok(Ply::new(0, top, 0));
    }
    Ok(Ply::new(0, top, top - ((2 << e) - 1)))
}

/// Flip-flop until `m = 1`; there the largest pile drops to `2^{f(e)} - 1`,
/// after which the winner's reply lands on the family with exponent `f(e)`.
pub fn fractal_policy(f: &ContractiveFn, g: &Game) -> Result<Ply> {
    let (e, m) = recognize_family(g)?;
    if m != 1 {
        return flip_flop_policy(g);
    }
    let fe = f.apply(e)?;
    if fe == e {
        return flip_flop_policy(g);
    }
    let top = g.piles()[0];
    Ok(Ply::new(0, top, (1u32 << fe) - 1))
}

/// `(m - 1)(2^{k+1} - 2)`, the stated flip-flop value.
pub fn flip_flop_stated_value(k: u32, m: u32) -> i64 {
    (m as i64 - 1) * ((2i64 << k) - 2)
}

/// Value the flip-flop trace actually collects: one `2^{k+1} - 2` turn per unit of `m`.
pub fn flip_flop_simulated_value(k: u32, m: u32) -> i64 {
    m as i64 * ((2i64 << k) - 2)
}

/// The supremum formula for `Fractal_f` on the exponent-`k` family, taken literally.
pub fn fractal_closed_form(k: u32, m: u32) -> i64 {
    let pow = |x: u32| 1i64 << x;
    let mut sum = 0i64;
    let upper = if k <= 1 { 0 } else { 32 - (k - 1).leading_zeros() };
    for i in 0..=upper {
        let hi = k >> i;
        let lo = k >> (i + 1);
        sum += pow(hi + 1) - pow(lo + 1) + (pow(lo + 1) - 1) * (pow(hi - lo) - 2);
    }
    (m as i64 - 2) * (pow(k + 1) - 2) + sum
}

/// Value of `Fractal_f` on the exponent-`e` family by direct recurrence on the
/// turn structure, without simulating plies.
pub fn fractal_recurrence(f: &ContractiveFn, e: u32, m: u32) -> Result<i64> {
    let turn = (2i64 << e) - 2;
    if m == 0 {
        return Ok(0);
    }
    let fe = f.apply(e)?;
    let tail = if fe == e {
        turn
    } else {
        // loser drops 2^{e+1} - 2^{fe}, winner answers with 2^{fe}
        let drop = (2i64 << e) - (1i64 << fe) - (1i64 << fe);
        let next_m = (1u32 << (e - fe)) - 1;
        if fe == 0 {
            drop
        } else {
            drop + fractal_recurrence(f, fe, next_m)?
        }
    };
    Ok((m as i64 - 1) * turn + tail)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> Game {
        s.parse().unwrap()
    }

    #[test]
    fn flip_flop_on_123() {
        let t = simulate(&FlipFlop, &g("[1,2,3]"), &UniqueResponder).unwrap();
        assert_eq!(t.turns.len(), 2);
        assert_eq!(t.turns[0].after_loser(), &g("[1,2]"));
        assert_eq!(t.turns[0].after_winner(), &g("[1,1]"));
        assert_eq!(t.turns[1].after_loser(), &g("[1]"));
        assert!(t.turns[1].after_winner().is_empty());
        assert_eq!((t.strategic_value, t.loser_total, t.winner_total), (2, 4, 2));
        t.validate().unwrap();
    }

    #[test]
    fn flip_flop_plies() {
        assert_eq!(flip_flop_policy(&g("[1,8,9]")).unwrap(), Ply::new(0, 9, 6));
        assert_eq!(flip_flop_policy(&g("[7,7]")).unwrap(), Ply::new(0, 7, 0));
        assert_eq!(flip_flop_policy(&g("[7,8,15]")).unwrap(), Ply::new(0, 15, 0));
        assert!(matches!(flip_flop_policy(&g("[2,4,6]")), Err(Error::Family { .. })));
        assert!(matches!(flip_flop_policy(&g("[5,5]")), Err(Error::Family { .. })));
        assert!(matches!(flip_flop_policy(&g("[1,5,16,20]")), Err(Error::Family { .. })));
    }

    #[test]
    fn recognizes_family() {
        for e in 1..6 {
            for m in 0..6 {
                assert_eq!(recognize_family(&exponent_family(e, m).unwrap()).unwrap(), (e, m));
            }
        }
        assert!(recognize_family(&Game::empty()).is_err());
        assert!(recognize_family(&g("[3,5,6]")).is_err());
    }

    #[test]
    fn flip_flop_counts_turns() {
        for e in 1..=4 {
            for m in 0..=8 {
                let t = simulate(&FlipFlop, &exponent_family(e, m).unwrap(), &UniqueResponder).unwrap();
                assert_eq!(t.turns.len() as u32, m + 1);
                assert_eq!(t.strategic_value, flip_flop_simulated_value(e, m));
            }
        }
    }

    #[test]
    fn fractal_on_7_16_23() {
        let t = simulate(&Fractal(ContractiveFn::halve()), &g("[7,16,23]"), &UniqueResponder).unwrap();
        let takes: Vec<u64> = t
            .turns
            .iter()
            .flat_map(|t| [t.loser_take(), t.winner_take()])
            .take(4)
            .collect();
        assert_eq!(takes, [15, 1, 14, 2]);
        assert_eq!(t.turns[1].before(), &g("[7,15,8]"));
        assert_eq!(t.turns[1].after_winner(), &g("[1,6,7]"));
        // the loser gets 24 of the 30 candies of [7,15,8]
        let rest: u64 = t.turns[1..].iter().map(Turn::loser_take).sum();
        assert_eq!(rest, 24);
    }

    #[test]
    fn fractal_identity_is_flip_flop() {
        for e in 1..=4 {
            for m in 0..=4 {
                let game = exponent_family(e, m).unwrap();
                let a = simulate(&Fractal(ContractiveFn::identity()), &game, &UniqueResponder).unwrap();
                let b = simulate(&FlipFlop, &game, &UniqueResponder).unwrap();
                assert_eq!(a, b);
            }
        }
    }

    #[test]
    fn thirty_one_family() {
        for m in 1..=4 {
            let game = exponent_family(5, m).unwrap();
            let t = simulate(&Fractal(ContractiveFn::halve()), &game, &UniqueResponder).unwrap();
            assert_eq!(t.strategic_value, 62 * (m as i64 - 1) + 98);
        }
    }

    #[test]
    fn recurrence_matches_simulation() {
        let fs = [
            ContractiveFn::halve(),
            ContractiveFn::identity(),
            ContractiveFn::new("dec", |e| e - 1),
        ];
        for f in &fs {
            for e in 1..=6 {
                for m in 0..=4 {
                    let sim = simulate(&Fractal(f.clone()), &exponent_family(e, m).unwrap(), &UniqueResponder)
                        .unwrap()
                        .strategic_value;
                    assert_eq!(fractal_recurrence(f, e, m).unwrap(), sim, "{} e={e} m={m}", f.name());
                }
            }
        }
    }

    #[test]
    fn closed_form_slope() {
        for k in 1..8 {
            for m in 1..10 {
                assert_eq!(fractal_closed_form(k, m + 1) - fractal_closed_form(k, m), (2 << k) - 2);
            }
        }
    }

    #[test]
    fn non_contractive_is_rejected() {
        let bad = Fractal(ContractiveFn::new("succ", |e| e + 1));
        let err = simulate(&bad, &g("[7,8,15]"), &UniqueResponder).unwrap_err();
        assert!(matches!(
            err,
            Error::NotContractive {
                input: 3,
                output: 4,
                ..
            }
        ));
    }

    struct Cheat;
    impl LoserPolicy for Cheat {
        fn name(&self) -> String {
            "cheat".into()
        }
        fn pick(&self, g: &Game) -> Result<Ply> {
            Ok(Ply::new(0, g.piles()[0], g.piles()[0] + 1))
        }
    }

    #[test]
    fn illegal_policy_names_turn() {
        let err = simulate(&Cheat, &g("[1,2,3]"), &UniqueResponder).unwrap_err();
        assert!(matches!(err, Error::IllegalTurn { turn: 0, .. }), "{err}");
    }

    #[test]
    fn largest_pile_with_solver_replies() {
        let d = DefaultResponder::new();
        for s in ["[1,5,16,20]", "[1,2,4,7]", "[3,3]", "[1,1,1,2,4,7]"] {
            let t = simulate(&LargestPile, &g(s), &d).unwrap();
            assert!(t.strategic_value >= 0);
            assert!(t.strategic_value <= Solver::new().value(&g(s)).unwrap());
            t.validate().unwrap();
        }
    }

    #[test]
    fn trace_json_round_trip() {
        let t = simulate(&FlipFlop, &g("[3,4,7]"), &UniqueResponder).unwrap();
        let json = serde_json::to_string(&t).unwrap();
        let back: StrategyTrace = serde_json::from_str(&json).unwrap();
        assert_eq!(back, t);
    }
}
