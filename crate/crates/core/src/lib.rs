//! Numerical engine for two-player Bayesian bidding games on a two-node
//! market with transmission losses: expected payoffs by quadrature, best
//! replies, the monotone differential dynamic that reaches the smallest and
//! largest pure Nash equilibria, and numerical certificates for the
//! assumptions that make the equilibrium unique.

pub mod diagnostics;
pub mod equilibrium;
pub mod error;
pub mod model;
pub mod payoff;

mod exec;
mod sampling;

pub use error::{Error, Result};
