use std::fmt::Write as _;

use crate::game::Ply;
use crate::strategies::StrategyTrace;

/// Piles stay in fixed slots (ascending at the root) and emptied piles show as 0,
/// so each line differs from the previous one in a single slot.
pub fn render_trace(trace: &StrategyTrace) -> String {
    let mut slots: Vec<u32> = trace.root.piles().iter().rev().copied().collect();
    let plies: Vec<(char, &Ply)> = trace
        .turns
        .iter()
        .flat_map(|t| [('L', t.loser_ply()), ('W', t.winner_ply())])
        .collect();
    let mut out = String::new();
    for (i, (who, ply)) in plies.iter().enumerate() {
        let shown = slots.iter().map(u32::to_string).collect::<Vec<_>>().join(", ");
        let _ = write!(out, "[{shown}]  {who} (\u{2212}{})", ply.taken());
        if i + 1 == plies.len() {
            out.push_str(" \u{2192} \u{2205}");
        }
        out.push('\n');
        // any slot holding `from` is equivalent; take the leftmost
        if let Some(s) = slots.iter_mut().find(|s| **s == ply.from) {
            *s = ply.to;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::Game;
    use crate::strategies::{simulate, ContractiveFn, FlipFlop, Fractal, UniqueResponder};

    #[test]
    fn one_two_three() {
        let t = simulate(&FlipFlop, &Game::new([1, 2, 3]), &UniqueResponder).unwrap();
        let text = render_trace(&t);
        assert_eq!(text.lines().count(), 4);
        assert!(text.starts_with("[1, 2, 3]  L (\u{2212}3)\n"));
        assert!(text.trim_end().ends_with("(\u{2212}1) \u{2192} \u{2205}"));
    }

    #[test]
    fn fractal_slots() {
        let t = simulate(
            &Fractal(ContractiveFn::halve()),
            &Game::new([7, 16, 23]),
            &UniqueResponder,
        )
        .unwrap();
        let text = render_trace(&t);
        let lines: Vec<&str> = text.lines().take(4).collect();
        assert_eq!(
            lines,
            [
                "[7, 16, 23]  L (\u{2212}15)",
                "[7, 16, 8]  W (\u{2212}1)",
                "[7, 15, 8]  L (\u{2212}14)",
                "[7, 1, 8]  W (\u{2212}2)",
            ]
        );
    }

    #[test]
    fn empty_trace() {
        let t = simulate(&FlipFlop, &Game::empty(), &UniqueResponder).unwrap();
        assert_eq!(render_trace(&t), "");
    }
}
