//! Payoff Conway games: games, strategies, the compact-closed structure,
//! a truncated exponential, asynchronous innocence and an Algol-like
//! language interpreted both operationally and through strategies.

pub mod algol;
pub mod async_graph;
pub mod corpus;
pub mod exponential;
pub mod game;
pub mod lazy;
pub mod monoidal;
pub mod random;
pub mod strategy;
pub mod suites;
