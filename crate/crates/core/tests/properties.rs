use candynim::allocation::Construction;
use candynim::bounds::corollary_lower;
use candynim::strategies::{flip_flop_simulated_value, simulate, FlipFlop, UniqueResponder};
use candynim::{
    exponent_family, family_game, floor_log2, game_sum, loser_moves, nim_sum, oracle_solve, reduce_duplicates,
    unique_response, winning_moves, xor_adjacent, Game, Solver,
};
use proptest::prelude::*;

fn any_game(max_piles: usize, max_pile: u32) -> impl Strategy<Value = Game> {
    prop::collection::vec(0..=max_pile, 0..=max_piles).prop_map(Game::new)
}

/// Appends the nim-sum pile, so the result is always a P position.
fn p_game(max_piles: usize, max_pile: u32) -> impl Strategy<Value = Game> {
    prop::collection::vec(1..=max_pile, 0..max_piles).prop_map(|mut piles| {
        let x = nim_sum(piles.iter().map(|&p| p as u64)) as u32;
        piles.push(x);
        Game::new(piles)
    })
}

proptest! {
    #[test]
    fn canonical_form_ignores_order(mut piles in prop::collection::vec(0u32..40, 0..6)) {
        let g = Game::new(piles.clone());
        piles.reverse();
        prop_assert_eq!(&Game::new(piles), &g);
        prop_assert!(g.piles().windows(2).all(|w| w[0] >= w[1]));
        prop_assert!(g.piles().iter().all(|&p| p > 0));
        prop_assert_eq!(g.to_string().parse::<Game>().unwrap(), g);
    }

    #[test]
    fn winning_moves_restore_zero(g in any_game(5, 30)) {
        let moves = winning_moves(&g);
        if g.is_p() {
            prop_assert!(moves.is_empty());
        } else {
            prop_assert_eq!(moves.len() % 2, 1);
            for ply in moves {
                prop_assert!(g.apply(&ply).unwrap().is_p());
            }
        }
    }

    #[test]
    fn three_pile_reply_is_unique(g in p_game(3, 60), pick in any::<prop::sample::Index>()) {
        prop_assume!(!g.is_empty() && g.len() <= 3);
        let plies = loser_moves(&g).unwrap();
        let ply = plies[pick.index(plies.len())];
        let reply = unique_response(&g, &ply).unwrap();
        let after = g.apply(&ply).unwrap();
        prop_assert!(after.apply(&reply).unwrap().is_p());
        let replies = winning_moves(&after);
        prop_assert_eq!(replies, vec![reply]);
    }

    #[test]
    fn xor_adjacent_is_all_ones(a in 1u64..u64::MAX) {
        let r = xor_adjacent(a);
        prop_assert!((r + 1).is_power_of_two());
        prop_assert_eq!(r, (2u64 << a.trailing_zeros()) - 1);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn value_parity_and_split(g in any_game(4, 10)) {
        let s = Solver::new();
        let r = s.solve(&g).unwrap();
        prop_assert_eq!(r.n_loser + r.n_winner, g.total());
        prop_assert_eq!(r.value, r.n_loser as i64 - r.n_winner as i64);
        prop_assert_eq!(r.replay().unwrap(), (r.n_loser, r.n_winner));
        if g.is_p() {
            prop_assert!(r.value >= 0);
            prop_assert!(2 * g.largest().unwrap_or(0) as u64 <= g.total());
            if !g.is_empty() {
                prop_assert!(r.n_winner >= floor_log2(g.total()) as u64);
            }
        }
    }

    #[test]
    fn memo_matches_oracle(g in any_game(4, 10).prop_filter("oracle budget", |g| g.total() <= 16)) {
        prop_assert_eq!(Solver::new().solve(&g).unwrap(), oracle_solve(&g).unwrap());
    }

    #[test]
    fn duplicate_pairs_are_free(g in p_game(3, 8), a in 1u32..9) {
        let s = Solver::new();
        let padded = game_sum(&g, &Game::new([a, a]));
        prop_assert_eq!(s.value(&padded).unwrap(), s.value(&g).unwrap());
        let (reduced, pairs) = reduce_duplicates(&padded);
        prop_assert!(pairs.contains(&a));
        prop_assert_eq!(s.value(&reduced).unwrap(), s.value(&g).unwrap());
    }

    #[test]
    fn corollary_is_a_floor(a in 1u32..8, m in 1u32..4, x_seed in any::<u32>()) {
        let x = x_seed % (1 << floor_log2(a as u64));
        let v = Solver::new().value(&family_game(a, m, x).unwrap()).unwrap();
        prop_assert!(corollary_lower(a, m, x).unwrap() <= v);
    }

    #[test]
    fn flip_flop_traces_are_consistent(k in 1u32..5, m in 1u32..7) {
        let g = exponent_family(k, m).unwrap();
        let t = simulate(&FlipFlop, &g, &UniqueResponder).unwrap();
        t.validate().unwrap();
        prop_assert_eq!(t.strategic_value, flip_flop_simulated_value(k, m));
        prop_assert!(t.strategic_value <= Solver::new().value(&g).unwrap());
    }

    #[test]
    fn json_round_trip(g in any_game(4, 10)) {
        let r = Solver::new().solve(&g).unwrap();
        let text = serde_json::to_string(&r).unwrap();
        prop_assert_eq!(serde_json::from_str::<candynim::SolveResult>(&text).unwrap(), r);
    }

    #[test]
    fn construction_tags_round_trip(n in 2u32..30, k in 1u32..30, which in 0usize..5) {
        let c = [
            Construction::EqualityPower { n },
            Construction::EqualityBest { n },
            Construction::EqualityGap { n, k },
            Construction::FivePile { template: k % 2 == 0 },
            Construction::Exhaustive,
        ][which];
        prop_assert_eq!(c.to_string().parse::<Construction>().unwrap(), c);
    }
}
