//! Reduction chain from infinite Post correspondence instances to
//! Attacker-Defender games over words, integer matrices and braids.
//!
//! The pipeline is
//!
//! 1. [`pcp`]: instances, prefix classification and brute-force oracles;
//! 2. [`automaton`]: the five-state integer-weighted automaton that accepts
//!    exactly the non-solutions, its reverse and its self-loop unfolding;
//! 3. [`free_group`]: freely reduced group words and the binary encoding;
//! 4. [`word_game`]: weighted and pair word games built from the automaton;
//! 5. [`matrix`]: the `SL(4, Z)` matrix game and the robot-game embedding;
//! 6. [`braid`]: Garside normal forms, reduced Burau and the `B3`/`B5` games;
//! 7. [`engine`]: a bounded-horizon solver, play loop and cross-checking.
//!
//! Every game is only ever solved up to a fixed number of rounds. The
//! unbounded question is undecidable, so nothing here claims more than the
//! horizon that was searched.

pub mod automaton;
pub mod braid;
pub mod engine;
pub mod free_group;
pub mod matrix;
pub mod pcp;
pub mod word_game;

pub use automaton::{Transition, WeightedAutomaton};
pub use braid::{BraidWord, GarsideNormalForm};
pub use engine::{GameDomain, Player, SolveResult, Verdict};
pub use free_group::{Alphabet, GroupLetter, GroupWord};
pub use matrix::{IntMatrix, MatrixGame, RobotGame};
pub use pcp::{PcpInstance, PrefixStatus};
pub use word_game::{PairWordGame, WeightedWordGame};
