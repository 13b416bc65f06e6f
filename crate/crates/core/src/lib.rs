//! Exact-arithmetic toolkit for strong, super strong and k-strong Nash equilibria
//! of finite normal-form games.

pub mod bench;
pub mod catalog;
pub mod cli;
pub mod engine;
pub mod error;
pub mod format;
pub mod game;
pub mod geometry;
pub mod lp;
pub mod nash;
pub mod pareto;
pub mod poly;
pub mod rational;
pub mod semialgebraic;

pub use error::{Error, Result};
pub use game::{
    BimatrixGame, Game, MixedProfile, NormalForm, PayoffVector, SupportProfile, TensorGame,
};
pub use rational::Rational;
