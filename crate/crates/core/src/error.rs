use thiserror::Error;

/// Errors raised by model construction and kernel evaluation.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("interval requires lo < hi, got [{lo}, {hi}]")]
    EmptyInterval { lo: f64, hi: f64 },

    #[error("interval must have a strictly positive lower end, got [{lo}, {hi}]")]
    NonPositiveInterval { lo: f64, hi: f64 },

    #[error("bid sum must be strictly positive, got x = {x}, y = {y}")]
    NonPositiveBidSum { x: f64, y: f64 },

    #[error("corner allocation requires 2*d*r <= 1, got d = {demand}, r = {loss_coeff}")]
    CornerUndefined { demand: f64, loss_coeff: f64 },

    #[error("demand and loss coefficient must be strictly positive, got d = {demand}, r = {loss_coeff}")]
    NonPositiveMarket { demand: f64, loss_coeff: f64 },

    #[error("type grid needs at least two strictly increasing positive nodes")]
    BadGrid,

    #[error("density weights must be nonnegative with positive total mass")]
    BadDensity,

    #[error("density has {got} weights, grid has {expected} nodes")]
    DensityShape { got: usize, expected: usize },

    #[error("exactly two players are supported, got {got}")]
    PlayerCount { got: usize },

    #[error("bid {bid} outside bid interval [{lo}, {hi}] for player {player}")]
    BidOutOfInterval {
        player: usize,
        bid: f64,
        lo: f64,
        hi: f64,
    },

    #[error("strategy for player {player} has {got} bids, grid has {expected} nodes")]
    StrategyShape {
        player: usize,
        got: usize,
        expected: usize,
    },

    #[error("{0}")]
    InvalidInput(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;
