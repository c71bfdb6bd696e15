//! Exact analysis of Candy Nim: Nim in which the doomed loser and the forced
//! winner both try to collect as many candies as possible.
//!
//! Positions are [`Game`] values in canonical form. [`Solver`] computes the
//! exact value `V = N_L - N_W` under optimal play; the remaining modules hold
//! explicit loser strategies, closed-form bounds, minimum-haul allocations and
//! a claim-replay harness built on top of the solver.

pub mod allocation;
pub mod bounds;
pub mod enumerate;
pub mod error;
pub mod game;
pub mod harness;
pub mod solver;
pub mod strategies;

pub use error::{Error, Result};
pub use game::{
    classify, exponent_family, family_game, floor_log2, game_sum, loser_moves, nim_sum, reduce_duplicates, semiratio,
    single_turn_value, unique_response, winning_moves, xor_adjacent, GFamily, Game, OutcomeClass, Ply, Turn,
};
pub use solver::{oracle_solve, SolveResult, Solver, SolverConfig};
