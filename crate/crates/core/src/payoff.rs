//! Pointwise payoff, ex-ante expected payoff by quadrature over the opponent
//! type grid, and the analytic own-bid gradient that drives the flow.

use crate::error::Result;
use crate::model::{Density, ElectricityKernel, Kernel, MarketParams, StrategyProfile, TypeGrid};

/// Quadrature weights aligned with a type grid (composite trapezoid).
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    weights: Vec<f64>,
}

impl QuadratureRule {
    pub fn trapezoid(grid: &TypeGrid) -> Self {
        Self {
            weights: grid.trapezoid_weights(),
        }
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn integrate(&self, values: &[f64]) -> f64 {
        assert_eq!(values.len(), self.weights.len());
        self.weights.iter().zip(values).map(|(w, v)| w * v).sum()
    }

    /// Integral of `values` against `density` on the rule's grid.
    pub fn expectation(&self, density: &Density, values: &[f64]) -> f64 {
        assert_eq!(values.len(), self.weights.len());
        self.weights
            .iter()
            .zip(density.weights())
            .zip(values)
            .map(|((w, p), v)| w * p * v)
            .sum()
    }
}

/// Payoff of bidding `own_bid` at cost `cost` against a single opponent bid:
/// `(own_bid - cost) * K(own_bid, opp_bid)`.
pub fn pointwise_payoff(own_bid: f64, cost: f64, opp_bid: f64, kernel: &dyn Kernel) -> f64 {
    (own_bid - cost) * kernel.eval(own_bid, opp_bid)
}

/// Precomputed opponent-side data for repeated payoff evaluations at varying
/// own bids: the kernel plus, per opponent node, the opponent's bid and the
/// combined quadrature-times-density mass.
pub(crate) struct PayoffIntegral {
    kernel: ElectricityKernel,
    opp_bids: Vec<f64>,
    mass: Vec<f64>,
}

impl PayoffIntegral {
    pub(crate) fn new(
        player: usize,
        opp_strategy: &StrategyProfile,
        params: &MarketParams,
    ) -> Result<Self> {
        let opp = params.opponent_of(player);
        let spec = params.player(opp);
        let quad = QuadratureRule::trapezoid(spec.type_grid());
        let mass = quad
            .weights()
            .iter()
            .zip(spec.density().weights())
            .map(|(w, p)| w * p)
            .collect();
        Ok(Self {
            kernel: params.kernel()?,
            opp_bids: opp_strategy.bids(opp).to_vec(),
            mass,
        })
    }

    pub(crate) fn value(&self, own_bid: f64, cost: f64) -> f64 {
        let quantity: f64 = self
            .mass
            .iter()
            .zip(&self.opp_bids)
            .map(|(m, y)| m * self.kernel.eval(own_bid, *y))
            .sum();
        (own_bid - cost) * quantity
    }

    pub(crate) fn gradient(&self, own_bid: f64, cost: f64) -> f64 {
        let margin = own_bid - cost;
        self.mass
            .iter()
            .zip(&self.opp_bids)
            .map(|(m, y)| {
                m * (self.kernel.eval(own_bid, *y) + margin * self.kernel.partial_own(own_bid, *y))
            })
            .sum()
    }
}

/// Ex-ante expected payoff of player `player` bidding `own_bid` at cost
/// `cost`, integrating the pointwise payoff over the opponent's types.
pub fn expected_payoff(
    player: usize,
    own_bid: f64,
    cost: f64,
    opp_strategy: &StrategyProfile,
    params: &MarketParams,
) -> Result<f64> {
    Ok(PayoffIntegral::new(player, opp_strategy, params)?.value(own_bid, cost))
}

/// Own-bid derivative of [`expected_payoff`], computed analytically as the
/// quadrature of `K + (b - c) dK/db`. On kernel branch switches the one-sided
/// derivative of the active branch is used.
pub fn expected_payoff_gradient(
    player: usize,
    own_bid: f64,
    cost: f64,
    opp_strategy: &StrategyProfile,
    params: &MarketParams,
) -> Result<f64> {
    Ok(PayoffIntegral::new(player, opp_strategy, params)?.gradient(own_bid, cost))
}
