//! Static game data: intervals, type grids, densities, strategy profiles,
//! market parameters, and the dispatch kernel with its analytic derivatives.

mod kernel;

pub use kernel::{
    corner_allocation, interior_allocation, interior_own_derivative, ElectricityKernel, Kernel,
};

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Closed interval `[lo, hi]` with `0 < lo < hi`, serialized as a two-element
/// array. Used for both type (cost) and bid ranges.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[f64; 2]", into = "[f64; 2]")]
pub struct Interval {
    lo: f64,
    hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !lo.is_finite() || !hi.is_finite() || !(lo < hi) {
            return Err(Error::EmptyInterval { lo, hi });
        }
        if !(lo > 0.0) {
            return Err(Error::NonPositiveInterval { lo, hi });
        }
        Ok(Self { lo, hi })
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn clamp(&self, x: f64) -> f64 {
        x.clamp(self.lo, self.hi)
    }
}

impl TryFrom<[f64; 2]> for Interval {
    type Error = Error;

    fn try_from(value: [f64; 2]) -> Result<Self> {
        Interval::new(value[0], value[1])
    }
}

impl From<Interval> for [f64; 2] {
    fn from(value: Interval) -> Self {
        [value.lo, value.hi]
    }
}

/// Discretization of a type interval: strictly increasing nodes with the
/// interval endpoints included. A single-node grid represents a point mass
/// (the full-information case).
#[derive(Debug, Clone, PartialEq)]
pub struct TypeGrid {
    nodes: Vec<f64>,
}

impl TypeGrid {
    /// Uniform grid of `n >= 2` nodes spanning `interval`.
    pub fn uniform(interval: Interval, n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::BadGrid);
        }
        let step = interval.width() / (n - 1) as f64;
        let mut nodes: Vec<f64> = (0..n).map(|j| interval.lo() + step * j as f64).collect();
        nodes[n - 1] = interval.hi();
        Ok(Self { nodes })
    }

    pub fn from_nodes(nodes: Vec<f64>) -> Result<Self> {
        if nodes.len() < 2 || !(nodes[0] > 0.0) {
            return Err(Error::BadGrid);
        }
        if nodes.windows(2).any(|w| !(w[0] < w[1])) || nodes.iter().any(|x| !x.is_finite()) {
            return Err(Error::BadGrid);
        }
        Ok(Self { nodes })
    }

    /// Single-node grid carrying a point mass at `cost`.
    pub fn degenerate(cost: f64) -> Result<Self> {
        if !(cost > 0.0) || !cost.is_finite() {
            return Err(Error::BadGrid);
        }
        Ok(Self { nodes: vec![cost] })
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn is_degenerate(&self) -> bool {
        self.nodes.len() == 1
    }

    pub fn lo(&self) -> f64 {
        self.nodes[0]
    }

    pub fn hi(&self) -> f64 {
        *self.nodes.last().unwrap()
    }

    /// Composite trapezoid weights aligned with the nodes. A degenerate grid
    /// gets the single weight 1 so quadrature reduces to point evaluation.
    pub fn trapezoid_weights(&self) -> Vec<f64> {
        let n = self.nodes.len();
        if n == 1 {
            return vec![1.0];
        }
        let mut w = vec![0.0; n];
        w[0] = 0.5 * (self.nodes[1] - self.nodes[0]);
        w[n - 1] = 0.5 * (self.nodes[n - 1] - self.nodes[n - 2]);
        for j in 1..n - 1 {
            w[j] = 0.5 * (self.nodes[j + 1] - self.nodes[j - 1]);
        }
        w
    }

    /// Midpoint-refined grid: `n` nodes become `2n - 1`, endpoints unchanged.
    pub fn refined(&self) -> Self {
        if self.is_degenerate() {
            return self.clone();
        }
        let mut nodes = Vec::with_capacity(2 * self.nodes.len() - 1);
        for w in self.nodes.windows(2) {
            nodes.push(w[0]);
            nodes.push(0.5 * (w[0] + w[1]));
        }
        nodes.push(*self.nodes.last().unwrap());
        Self { nodes }
    }
}

/// Probability density sampled on a type grid, renormalized at construction
/// so its trapezoid quadrature is exactly one.
#[derive(Debug, Clone, PartialEq)]
pub struct Density {
    weights: Vec<f64>,
}

impl Density {
    pub fn new(grid: &TypeGrid, raw: Vec<f64>) -> Result<Self> {
        if raw.len() != grid.len() {
            return Err(Error::DensityShape {
                got: raw.len(),
                expected: grid.len(),
            });
        }
        if raw.iter().any(|w| !w.is_finite() || *w < 0.0) {
            return Err(Error::BadDensity);
        }
        let quad = grid.trapezoid_weights();
        let mass: f64 = quad.iter().zip(&raw).map(|(q, w)| q * w).sum();
        if !(mass > 0.0) {
            return Err(Error::BadDensity);
        }
        Ok(Self {
            weights: raw.into_iter().map(|w| w / mass).collect(),
        })
    }

    pub fn uniform(grid: &TypeGrid) -> Self {
        Self::new(grid, vec![1.0; grid.len()]).expect("uniform weights are valid")
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Linear interpolation of the weights onto `fine`, renormalized there.
    /// `coarse` must be the grid this density lives on.
    pub fn resampled(&self, coarse: &TypeGrid, fine: &TypeGrid) -> Result<Self> {
        if coarse.is_degenerate() {
            return Ok(self.clone());
        }
        let raw = fine
            .nodes()
            .iter()
            .map(|&c| interp_linear(coarse.nodes(), &self.weights, c))
            .collect();
        Self::new(fine, raw)
    }
}

fn interp_linear(xs: &[f64], ys: &[f64], x: f64) -> f64 {
    if xs.len() == 1 || x <= xs[0] {
        return ys[0];
    }
    if x >= *xs.last().unwrap() {
        return *ys.last().unwrap();
    }
    // partition_point gives the first node strictly above x
    let j = xs.partition_point(|&n| n <= x);
    let (x0, x1) = (xs[j - 1], xs[j]);
    if x == x0 {
        return ys[j - 1];
    }
    let t = (x - x0) / (x1 - x0);
    ys[j - 1] * (1.0 - t) + ys[j] * t
}

/// One bidder's static data: type grid, density of the type, bid interval.
#[derive(Debug, Clone, PartialEq)]
pub struct PlayerSpec {
    type_grid: TypeGrid,
    density: Density,
    bid_interval: Interval,
}

impl PlayerSpec {
    pub fn new(type_grid: TypeGrid, density: Density, bid_interval: Interval) -> Result<Self> {
        if density.weights().len() != type_grid.len() {
            return Err(Error::DensityShape {
                got: density.weights().len(),
                expected: type_grid.len(),
            });
        }
        Ok(Self {
            type_grid,
            density,
            bid_interval,
        })
    }

    pub fn type_grid(&self) -> &TypeGrid {
        &self.type_grid
    }

    pub fn density(&self) -> &Density {
        &self.density
    }

    pub fn bid_interval(&self) -> Interval {
        self.bid_interval
    }

    pub fn refined(&self) -> Result<Self> {
        let fine = self.type_grid.refined();
        let density = self.density.resampled(&self.type_grid, &fine)?;
        Self::new(fine, density, self.bid_interval)
    }
}

/// Full description of a two-player market instance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "MarketParamsDto", into = "MarketParamsDto")]
pub struct MarketParams {
    demand: f64,
    loss_coeff: f64,
    players: Vec<PlayerSpec>,
}

impl MarketParams {
    pub fn new(demand: f64, loss_coeff: f64, players: Vec<PlayerSpec>) -> Result<Self> {
        if !(demand > 0.0) || !(loss_coeff > 0.0) || !demand.is_finite() || !loss_coeff.is_finite()
        {
            return Err(Error::NonPositiveMarket { demand, loss_coeff });
        }
        if players.len() != 2 {
            return Err(Error::PlayerCount { got: players.len() });
        }
        Ok(Self {
            demand,
            loss_coeff,
            players,
        })
    }

    /// Symmetric instance: both players share the type interval, bid interval
    /// and a uniform density on an `n`-node grid.
    pub fn symmetric_uniform(
        type_interval: Interval,
        bid_interval: Interval,
        demand: f64,
        loss_coeff: f64,
        n: usize,
    ) -> Result<Self> {
        let grid = TypeGrid::uniform(type_interval, n)?;
        let density = Density::uniform(&grid);
        let player = PlayerSpec::new(grid, density, bid_interval)?;
        Self::new(demand, loss_coeff, vec![player.clone(), player])
    }

    /// Full-information instance: each player's cost is common knowledge,
    /// represented by a point mass on a single-node grid.
    pub fn full_information(
        costs: [f64; 2],
        bid_interval: Interval,
        demand: f64,
        loss_coeff: f64,
    ) -> Result<Self> {
        let players = costs
            .iter()
            .map(|&c| {
                let grid = TypeGrid::degenerate(c)?;
                let density = Density::uniform(&grid);
                PlayerSpec::new(grid, density, bid_interval)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(demand, loss_coeff, players)
    }

    pub fn demand(&self) -> f64 {
        self.demand
    }

    pub fn loss_coeff(&self) -> f64 {
        self.loss_coeff
    }

    pub fn n_players(&self) -> usize {
        self.players.len()
    }

    pub fn players(&self) -> &[PlayerSpec] {
        &self.players
    }

    pub fn player(&self, i: usize) -> &PlayerSpec {
        &self.players[i]
    }

    pub fn opponent_of(&self, i: usize) -> usize {
        1 - i
    }

    pub fn kernel(&self) -> Result<ElectricityKernel> {
        ElectricityKernel::new(self.demand, self.loss_coeff)
    }

    /// Smallest bid floor and largest bid ceiling over the players.
    pub fn bid_hull(&self) -> Interval {
        let lo = self
            .players
            .iter()
            .map(|p| p.bid_interval.lo())
            .fold(f64::INFINITY, f64::min);
        let hi = self
            .players
            .iter()
            .map(|p| p.bid_interval.hi())
            .fold(f64::NEG_INFINITY, f64::max);
        Interval { lo, hi }
    }

    pub fn type_floor(&self) -> f64 {
        self.players
            .iter()
            .map(|p| p.type_grid.lo())
            .fold(f64::INFINITY, f64::min)
    }

    pub fn type_ceiling(&self) -> f64 {
        self.players
            .iter()
            .map(|p| p.type_grid.hi())
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// Full-information symmetric best reply `c / (1 - 2 r d)`.
    pub fn full_information_bid(&self, cost: f64) -> Result<f64> {
        let denom = 1.0 - 2.0 * self.loss_coeff * self.demand;
        if !(denom > 0.0) {
            return Err(Error::CornerUndefined {
                demand: self.demand,
                loss_coeff: self.loss_coeff,
            });
        }
        Ok(cost / denom)
    }

    /// Same instance with every non-degenerate grid rebuilt as a uniform
    /// `n`-node grid; densities are resampled and renormalized.
    pub fn with_grid_nodes(&self, n: usize) -> Result<Self> {
        let players = self
            .players
            .iter()
            .map(|p| {
                if p.type_grid.is_degenerate() {
                    return Ok(p.clone());
                }
                let interval = Interval::new(p.type_grid.lo(), p.type_grid.hi())?;
                let fine = TypeGrid::uniform(interval, n)?;
                let density = p.density.resampled(&p.type_grid, &fine)?;
                PlayerSpec::new(fine, density, p.bid_interval)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(self.demand, self.loss_coeff, players)
    }

    /// Midpoint-refined instance (every grid doubled in resolution).
    pub fn refined(&self) -> Result<Self> {
        let players = self
            .players
            .iter()
            .map(|p| p.refined())
            .collect::<Result<Vec<_>>>()?;
        Self::new(self.demand, self.loss_coeff, players)
    }
}

/// One bid function per player, sampled on that player's type grid.
/// Evaluation between nodes is piecewise linear.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StrategyProfile {
    bids: Vec<Vec<f64>>,
}

impl StrategyProfile {
    pub fn new(params: &MarketParams, bids: Vec<Vec<f64>>) -> Result<Self> {
        if bids.len() != params.n_players() {
            return Err(Error::PlayerCount { got: bids.len() });
        }
        for (i, (player, row)) in params.players().iter().zip(&bids).enumerate() {
            if row.len() != player.type_grid().len() {
                return Err(Error::StrategyShape {
                    player: i,
                    got: row.len(),
                    expected: player.type_grid().len(),
                });
            }
            let iv = player.bid_interval();
            if let Some(&bad) = row.iter().find(|b| !iv.contains(**b)) {
                return Err(Error::BidOutOfInterval {
                    player: i,
                    bid: bad,
                    lo: iv.lo(),
                    hi: iv.hi(),
                });
            }
        }
        Ok(Self { bids })
    }

    pub fn from_fn(params: &MarketParams, f: impl Fn(usize, f64) -> f64) -> Result<Self> {
        let bids = params
            .players()
            .iter()
            .enumerate()
            .map(|(i, p)| p.type_grid().nodes().iter().map(|&c| f(i, c)).collect())
            .collect();
        Self::new(params, bids)
    }

    /// Truth-telling start `sigma(c) = c`, clamped into each bid interval.
    pub fn identity(params: &MarketParams) -> Self {
        Self::from_fn(params, |i, c| params.player(i).bid_interval().clamp(c))
            .expect("clamped bids are feasible")
    }

    /// Constant profile at each player's bid ceiling.
    pub fn constant_top(params: &MarketParams) -> Self {
        Self::from_fn(params, |i, _| params.player(i).bid_interval().hi())
            .expect("ceiling bids are feasible")
    }

    pub fn constant(params: &MarketParams, value: f64) -> Result<Self> {
        Self::from_fn(params, |_, _| value)
    }

    pub fn bids(&self, player: usize) -> &[f64] {
        &self.bids[player]
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.bids
    }

    /// Piecewise-linear evaluation of player `i`'s bid function at `cost`.
    /// Exact at grid nodes, clamped to the end nodes outside the grid.
    pub fn eval(&self, params: &MarketParams, player: usize, cost: f64) -> f64 {
        interp_linear(
            params.player(player).type_grid().nodes(),
            &self.bids[player],
            cost,
        )
    }

    pub fn sup_distance(&self, other: &Self) -> f64 {
        self.bids
            .iter()
            .zip(&other.bids)
            .flat_map(|(a, b)| a.iter().zip(b).map(|(x, y)| (x - y).abs()))
            .fold(0.0, f64::max)
    }

    /// Largest amount by which `self` exceeds `other` anywhere;
    /// nonpositive means `self <= other` pointwise.
    pub fn max_excess(&self, other: &Self) -> f64 {
        self.bids
            .iter()
            .zip(&other.bids)
            .flat_map(|(a, b)| a.iter().zip(b).map(|(x, y)| x - y))
            .fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn le_within(&self, other: &Self, tol: f64) -> bool {
        self.max_excess(other) <= tol
    }

    /// Every bid multiplied by `alpha`; fails if a scaled bid leaves its
    /// player's bid interval.
    pub fn scaled(&self, params: &MarketParams, alpha: f64) -> Result<Self> {
        let bids = self
            .bids
            .iter()
            .map(|row| row.iter().map(|b| b * alpha).collect())
            .collect();
        Self::new(params, bids)
    }
}

// ---------------------------------------------------------------------------
// Validity flags
// ---------------------------------------------------------------------------

/// The independent feasibility flags reported by [`validate_params`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FlagId {
    /// Every type floor is strictly positive.
    PositiveTypeFloor,
    /// Each player's type interval sits inside their bid interval.
    TypesWithinBids,
    /// `2 d r < 1`, so the corner allocation is real and the benchmark
    /// denominator positive.
    DemandLossProduct,
    /// `b^* < 2 b_*` over the bid hull.
    BidSpreadBelowTwo,
    /// `F(b^*, b_*) >= 0`: the most extreme bid pair stays on the interior
    /// branch, so corner branches never activate.
    ExtremePairInterior,
    /// `c^* / (1 - 2 r d) <= b^*` per player: the optimal-bid band fits
    /// inside the bid interval.
    BenchmarkBoundInsideBids,
}

impl FlagId {
    pub const ALL: [FlagId; 6] = [
        FlagId::PositiveTypeFloor,
        FlagId::TypesWithinBids,
        FlagId::DemandLossProduct,
        FlagId::BidSpreadBelowTwo,
        FlagId::ExtremePairInterior,
        FlagId::BenchmarkBoundInsideBids,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            FlagId::PositiveTypeFloor => "positive_type_floor",
            FlagId::TypesWithinBids => "types_within_bids",
            FlagId::DemandLossProduct => "demand_loss_product",
            FlagId::BidSpreadBelowTwo => "bid_spread_below_two",
            FlagId::ExtremePairInterior => "extreme_pair_interior",
            FlagId::BenchmarkBoundInsideBids => "benchmark_bound_inside_bids",
        }
    }
}

/// One validity flag with its signed margin (positive means satisfied with
/// that much room; the margin is in the natural units of the condition).
#[derive(Debug, Clone, Serialize)]
pub struct ValidityFlag {
    pub id: FlagId,
    pub pass: bool,
    pub margin: f64,
    pub detail: String,
}

/// Outcome of [`validate_params`]: all flags, never aborting.
#[derive(Debug, Clone, Serialize)]
pub struct ValidityReport {
    pub flags: Vec<ValidityFlag>,
}

impl ValidityReport {
    pub fn all_pass(&self) -> bool {
        self.flags.iter().all(|f| f.pass)
    }

    pub fn satisfied_count(&self) -> usize {
        self.flags.iter().filter(|f| f.pass).count()
    }

    pub fn flag(&self, id: FlagId) -> &ValidityFlag {
        self.flags
            .iter()
            .find(|f| f.id == id)
            .expect("all flags present")
    }

    pub fn passes(&self, ids: &[FlagId]) -> bool {
        ids.iter().all(|id| self.flag(*id).pass)
    }

    pub fn min_margin(&self) -> f64 {
        self.flags
            .iter()
            .map(|f| f.margin)
            .fold(f64::INFINITY, f64::min)
    }
}

/// Evaluates every feasibility flag on `params`. Flags are independent
/// reports, not preconditions: the solver runs regardless of their state.
pub fn validate_params(params: &MarketParams) -> ValidityReport {
    let hull = params.bid_hull();
    let d = params.demand();
    let r = params.loss_coeff();
    let mut flags = Vec::with_capacity(FlagId::ALL.len());

    let floor = params.type_floor();
    flags.push(ValidityFlag {
        id: FlagId::PositiveTypeFloor,
        pass: floor > 0.0,
        margin: floor,
        detail: format!("type floor = {floor}"),
    });

    let containment = params
        .players()
        .iter()
        .map(|p| {
            let g = p.type_grid();
            let b = p.bid_interval();
            (g.lo() - b.lo()).min(b.hi() - g.hi())
        })
        .fold(f64::INFINITY, f64::min);
    flags.push(ValidityFlag {
        id: FlagId::TypesWithinBids,
        pass: containment >= 0.0,
        margin: containment,
        detail: format!("min containment slack = {containment}"),
    });

    let product_margin = 1.0 - 2.0 * d * r;
    flags.push(ValidityFlag {
        id: FlagId::DemandLossProduct,
        pass: product_margin > 0.0,
        margin: product_margin,
        detail: format!("2 d r = {}", 2.0 * d * r),
    });

    let spread_margin = 2.0 * hull.lo() - hull.hi();
    flags.push(ValidityFlag {
        id: FlagId::BidSpreadBelowTwo,
        pass: spread_margin > 0.0,
        margin: spread_margin,
        detail: format!("b_hi = {}, 2 b_lo = {}", hull.hi(), 2.0 * hull.lo()),
    });

    let extreme = interior_allocation(hull.hi(), hull.lo(), d, r).unwrap_or(f64::NEG_INFINITY);
    flags.push(ValidityFlag {
        id: FlagId::ExtremePairInterior,
        pass: extreme >= 0.0,
        margin: extreme,
        detail: format!("F(b_hi, b_lo) = {extreme}"),
    });

    let bound_margin = if product_margin > 0.0 {
        params
            .players()
            .iter()
            .map(|p| p.bid_interval().hi() - p.type_grid().hi() / product_margin)
            .fold(f64::INFINITY, f64::min)
    } else {
        f64::NEG_INFINITY
    };
    flags.push(ValidityFlag {
        id: FlagId::BenchmarkBoundInsideBids,
        pass: bound_margin >= 0.0,
        margin: bound_margin,
        detail: format!("min bid-ceiling slack over the optimal-bid band = {bound_margin}"),
    });

    ValidityReport { flags }
}

// ---------------------------------------------------------------------------
// Serde DTOs (JSON schema documented in the README)
// ---------------------------------------------------------------------------

fn default_grid_nodes() -> usize {
    51
}

#[derive(Debug, Clone, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
enum DensityDto {
    #[default]
    Uniform,
    PointMass(f64),
    Weights(Vec<f64>),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PlayerDto {
    type_interval: [f64; 2],
    bid_interval: [f64; 2],
    #[serde(default = "default_grid_nodes")]
    grid_nodes: usize,
    #[serde(default)]
    density: DensityDto,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MarketParamsDto {
    demand: f64,
    loss_coeff: f64,
    players: Vec<PlayerDto>,
}

impl TryFrom<MarketParamsDto> for MarketParams {
    type Error = Error;

    fn try_from(dto: MarketParamsDto) -> Result<Self> {
        let players = dto
            .players
            .into_iter()
            .map(|p| {
                let bid_interval = Interval::new(p.bid_interval[0], p.bid_interval[1])?;
                let (grid, density) = match p.density {
                    DensityDto::PointMass(c) => {
                        let [lo, hi] = p.type_interval;
                        if !(lo <= c && c <= hi) {
                            return Err(Error::InvalidInput(
                                "point mass must lie inside the type interval",
                            ));
                        }
                        let grid = TypeGrid::degenerate(c)?;
                        let density = Density::uniform(&grid);
                        (grid, density)
                    }
                    DensityDto::Uniform => {
                        let iv = Interval::new(p.type_interval[0], p.type_interval[1])?;
                        let grid = TypeGrid::uniform(iv, p.grid_nodes)?;
                        let density = Density::uniform(&grid);
                        (grid, density)
                    }
                    DensityDto::Weights(raw) => {
                        let iv = Interval::new(p.type_interval[0], p.type_interval[1])?;
                        let grid = TypeGrid::uniform(iv, p.grid_nodes)?;
                        let density = Density::new(&grid, raw)?;
                        (grid, density)
                    }
                };
                PlayerSpec::new(grid, density, bid_interval)
            })
            .collect::<Result<Vec<_>>>()?;
        MarketParams::new(dto.demand, dto.loss_coeff, players)
    }
}

impl From<MarketParams> for MarketParamsDto {
    fn from(params: MarketParams) -> Self {
        let players = params
            .players
            .iter()
            .map(|p| {
                let g = p.type_grid();
                let density = if g.is_degenerate() {
                    DensityDto::PointMass(g.lo())
                } else if p
                    .density()
                    .weights()
                    .windows(2)
                    .all(|w| (w[0] - w[1]).abs() < 1e-12)
                {
                    DensityDto::Uniform
                } else {
                    DensityDto::Weights(p.density().weights().to_vec())
                };
                PlayerDto {
                    type_interval: [g.lo(), g.hi()],
                    bid_interval: p.bid_interval().into(),
                    grid_nodes: g.len(),
                    density,
                }
            })
            .collect();
        MarketParamsDto {
            demand: params.demand,
            loss_coeff: params.loss_coeff,
            players,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn demo_params() -> MarketParams {
        MarketParams::symmetric_uniform(
            Interval::new(1.0, 1.05).unwrap(),
            Interval::new(0.9, 1.6).unwrap(),
            1.0,
            0.1,
            11,
        )
        .unwrap()
    }

    #[test]
    fn interval_rejects_degenerate_and_nonpositive() {
        assert!(matches!(
            Interval::new(1.0, 1.0),
            Err(Error::EmptyInterval { .. })
        ));
        assert!(matches!(
            Interval::new(2.0, 1.0),
            Err(Error::EmptyInterval { .. })
        ));
        assert!(matches!(
            Interval::new(0.0, 1.0),
            Err(Error::NonPositiveInterval { .. })
        ));
    }

    #[test]
    fn grid_endpoints_and_monotonicity() {
        let iv = Interval::new(1.0, 2.0).unwrap();
        let grid = TypeGrid::uniform(iv, 7).unwrap();
        assert_eq!(grid.lo(), 1.0);
        assert_eq!(grid.hi(), 2.0);
        assert!(grid.nodes().windows(2).all(|w| w[0] < w[1]));
        assert!(TypeGrid::uniform(iv, 1).is_err());
        assert!(TypeGrid::from_nodes(vec![1.0, 1.0, 2.0]).is_err());
    }

    #[test]
    fn density_normalizes_to_unit_mass() {
        let grid = TypeGrid::uniform(Interval::new(1.0, 3.0).unwrap(), 9).unwrap();
        let density = Density::new(&grid, vec![2.0; 9]).unwrap();
        let quad = grid.trapezoid_weights();
        let mass: f64 = quad
            .iter()
            .zip(density.weights())
            .map(|(q, w)| q * w)
            .sum();
        assert!((mass - 1.0).abs() < 1e-10);
        assert!(Density::new(&grid, vec![-1.0; 9]).is_err());
        assert!(Density::new(&grid, vec![0.0; 9]).is_err());
    }

    #[test]
    fn degenerate_grid_is_a_point_evaluation() {
        let grid = TypeGrid::degenerate(1.25).unwrap();
        assert!(grid.is_degenerate());
        assert_eq!(grid.trapezoid_weights(), vec![1.0]);
        let density = Density::uniform(&grid);
        assert_eq!(density.weights(), &[1.0]);
    }

    #[test]
    fn profile_eval_is_exact_at_nodes() {
        let params = demo_params();
        let profile = StrategyProfile::from_fn(&params, |_, c| 0.9 + 0.4 * (c - 1.0)).unwrap();
        let nodes = params.player(0).type_grid().nodes().to_vec();
        for (j, &c) in nodes.iter().enumerate() {
            assert_eq!(profile.eval(&params, 0, c), profile.bids(0)[j]);
        }
        // Between nodes: linear.
        let mid = 0.5 * (nodes[0] + nodes[1]);
        let want = 0.5 * (profile.bids(0)[0] + profile.bids(0)[1]);
        assert!((profile.eval(&params, 0, mid) - want).abs() < 1e-15);
    }

    #[test]
    fn profile_rejects_out_of_interval_bids() {
        let params = demo_params();
        let n = params.player(0).type_grid().len();
        let bad = StrategyProfile::new(&params, vec![vec![2.0; n], vec![1.0; n]]);
        assert!(matches!(bad, Err(Error::BidOutOfInterval { .. })));
    }

    #[test]
    fn validate_flags_on_the_demo_instance() {
        // types [1, 1.05], bids [0.9, 1.6], d = 1, r = 0.1
        let report = validate_params(&demo_params());
        assert!(report.flag(FlagId::PositiveTypeFloor).pass);
        assert!(report.flag(FlagId::TypesWithinBids).pass);
        assert!(report.flag(FlagId::DemandLossProduct).pass);
        assert!(report.flag(FlagId::BidSpreadBelowTwo).pass);
        // Extreme pair (1.6, 0.9) has u = 0.28 > 1 - sqrt(0.8): zero branch.
        assert!(!report.flag(FlagId::ExtremePairInterior).pass);
        // 1.05 / 0.8 = 1.3125 <= 1.6.
        assert!(report.flag(FlagId::BenchmarkBoundInsideBids).pass);
    }

    #[test]
    fn validate_flags_hand_checked_interior_failure() {
        // types [1, 1.2], bids [1, 1.9], d = 1, r = 0.1:
        // F(1.9, 1) = 1 + 5 (0.9/2.9)^2 - 10 (0.9/2.9) < 0.
        let params = MarketParams::symmetric_uniform(
            Interval::new(1.0, 1.2).unwrap(),
            Interval::new(1.0, 1.9).unwrap(),
            1.0,
            0.1,
            5,
        )
        .unwrap();
        let report = validate_params(&params);
        let flag = report.flag(FlagId::ExtremePairInterior);
        assert!(!flag.pass);
        assert!((flag.margin - (-1.6218787158145068)).abs() < 1e-9);
    }

    #[test]
    fn market_params_json_round_trip() {
        let json = r#"{
            "demand": 1.0,
            "loss_coeff": 0.1,
            "players": [
                {"type_interval": [1.0, 1.05], "bid_interval": [0.9, 1.6], "grid_nodes": 11},
                {"type_interval": [1.0, 1.05], "bid_interval": [0.9, 1.6], "grid_nodes": 11, "density": "uniform"}
            ]
        }"#;
        let params: MarketParams = serde_json::from_str(json).unwrap();
        assert_eq!(params.n_players(), 2);
        assert_eq!(params.player(0).type_grid().len(), 11);
        let back = serde_json::to_string(&params).unwrap();
        let again: MarketParams = serde_json::from_str(&back).unwrap();
        assert_eq!(params, again);
    }

    #[test]
    fn market_params_json_rejects_unknown_keys() {
        let json = r#"{"demand": 1.0, "loss_coeff": 0.1, "players": [], "extra": 3}"#;
        assert!(serde_json::from_str::<MarketParams>(json).is_err());
    }

    #[test]
    fn point_mass_json() {
        let json = r#"{
            "demand": 1.0,
            "loss_coeff": 0.1,
            "players": [
                {"type_interval": [0.5, 1.5], "bid_interval": [0.8, 2.0], "density": {"point_mass": 1.0}},
                {"type_interval": [0.5, 1.5], "bid_interval": [0.8, 2.0], "density": {"point_mass": 1.0}}
            ]
        }"#;
        let params: MarketParams = serde_json::from_str(json).unwrap();
        assert!(params.player(0).type_grid().is_degenerate());
        assert_eq!(params.player(0).type_grid().lo(), 1.0);
    }

    #[test]
    fn refinement_preserves_endpoints_and_mass() {
        let params = demo_params();
        let fine = params.refined().unwrap();
        let g0 = params.player(0).type_grid();
        let g1 = fine.player(0).type_grid();
        assert_eq!(g1.len(), 2 * g0.len() - 1);
        assert_eq!(g1.lo(), g0.lo());
        assert_eq!(g1.hi(), g0.hi());
        let quad = g1.trapezoid_weights();
        let mass: f64 = quad
            .iter()
            .zip(fine.player(0).density().weights())
            .map(|(q, w)| q * w)
            .sum();
        assert!((mass - 1.0).abs() < 1e-10);
    }
}
