//! Best-reply computation, best-reply iteration, the monotone differential
//! dynamic, and extraction of the smallest and largest equilibria with a
//! uniqueness verdict.

use crate::error::{Error, Result};
use crate::exec;
use crate::model::{validate_params, FlagId, MarketParams, StrategyProfile, ValidityReport};
use crate::payoff::PayoffIntegral;
use serde::Serialize;

/// Coarse-scan resolution of the non-concave best-reply path.
const SCAN_POINTS: usize = 1000;
/// Scan cells within this payoff distance of the maximum count as ties; the
/// smallest bid among them wins.
const TIE_TOL: f64 = 1e-12;
/// Golden-section iterations; enough to shrink any bracket to fp noise.
const GOLDEN_ITERS: usize = 90;

/// True when the instance certifies a strictly concave ex-ante payoff in the
/// own bid over the whole bid hull: every bid pair stays on the interior
/// branch and the hull spread stays below two, which keeps the own-bid
/// curvature negative.
pub fn concavity_certified(params: &MarketParams) -> bool {
    let report = validate_params(params);
    report.passes(&[
        FlagId::DemandLossProduct,
        FlagId::BidSpreadBelowTwo,
        FlagId::ExtremePairInterior,
    ])
}

/// Golden-section maximization on `[lo, hi]`. Ties prefer the left (smaller)
/// subinterval so tie-broken argmaxes are deterministic and minimal.
fn golden_max(f: &impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> (f64, f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    for _ in 0..GOLDEN_ITERS {
        if f1 >= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2);
        }
        if hi - lo < 1e-13 * (1.0 + hi.abs()) {
            break;
        }
    }
    let x = if f1 >= f2 { x1 } else { x2 };
    (x, lo, hi)
}

/// Sharpens a located maximum with bisection on the analytic gradient, and
/// snaps boundary maxima to the exact endpoint when the one-sided gradient
/// sign condition holds there.
fn refine_with_gradient(
    integral: &PayoffIntegral,
    cost: f64,
    lo: f64,
    hi: f64,
    best: f64,
    bracket_lo: f64,
    bracket_hi: f64,
) -> f64 {
    let g = |b: f64| integral.gradient(b, cost);
    let eps = 1e-9 * (hi - lo);
    if best <= lo + eps && g(lo) <= 0.0 {
        return lo;
    }
    if best >= hi - eps && g(hi) >= 0.0 {
        return hi;
    }
    let mut a = bracket_lo.max(lo);
    let mut b = bracket_hi.min(hi);
    let mut ga = g(a);
    let mut gb = g(b);
    // The golden bracket can sit entirely on one side of the stationary
    // point at fp scale; widen geometrically until the gradient straddles.
    let mut width = (b - a).max(1e-12 * (hi - lo));
    for _ in 0..14 {
        if ga >= 0.0 && gb <= 0.0 {
            break;
        }
        if a <= lo && b >= hi {
            break;
        }
        width *= 4.0;
        a = (best - width).max(lo);
        b = (best + width).min(hi);
        ga = g(a);
        gb = g(b);
    }
    if !(ga >= 0.0 && gb <= 0.0) {
        return best;
    }
    for _ in 0..200 {
        let mid = 0.5 * (a + b);
        let gm = g(mid);
        if gm.abs() < 1e-11 {
            return mid;
        }
        if gm > 0.0 {
            a = mid;
        } else {
            b = mid;
        }
        if b - a < 1e-15 * (1.0 + b.abs()) {
            break;
        }
    }
    0.5 * (a + b)
}

fn locate_best_reply(
    integral: &PayoffIntegral,
    cost: f64,
    lo: f64,
    hi: f64,
    certified: bool,
) -> f64 {
    let f = |b: f64| integral.value(b, cost);
    let (best, bracket_lo, bracket_hi) = if certified {
        golden_max(&f, lo, hi)
    } else {
        // Coarse scan, smallest-bid tie-break, golden refinement in the
        // winning cell's neighborhood.
        let n = SCAN_POINTS;
        let step = (hi - lo) / (n - 1) as f64;
        let node = |k: usize| if k == n - 1 { hi } else { lo + step * k as f64 };
        let values: Vec<f64> = (0..n).map(|k| f(node(k))).collect();
        let vmax = values.iter().fold(f64::NEG_INFINITY, |a, &v| a.max(v));
        let k = values
            .iter()
            .position(|&v| v >= vmax - TIE_TOL)
            .unwrap_or(0);
        let cell_lo = node(k.saturating_sub(1));
        let cell_hi = node((k + 1).min(n - 1));
        golden_max(&f, cell_lo, cell_hi)
    };
    refine_with_gradient(integral, cost, lo, hi, best, bracket_lo, bracket_hi)
}

/// A maximizer of the ex-ante expected payoff over the player's bid interval.
///
/// Located by golden-section search when the instance's concavity certificate
/// holds, otherwise by a coarse scan followed by golden-section refinement;
/// either way a gradient bisection polishes the result, so an interior argmax
/// satisfies the first-order condition to well below 1e-6.
pub fn best_reply_bid(
    player: usize,
    cost: f64,
    opp_strategy: &StrategyProfile,
    params: &MarketParams,
) -> Result<f64> {
    let integral = PayoffIntegral::new(player, opp_strategy, params)?;
    let iv = params.player(player).bid_interval();
    let certified = concavity_certified(params);
    Ok(locate_best_reply(
        &integral,
        cost,
        iv.lo(),
        iv.hi(),
        certified,
    ))
}

/// Best-reply bid at every node of the player's type grid. Node evaluations
/// are independent and run on the rayon pool when `parallel` is enabled.
pub fn best_reply_profile(
    player: usize,
    opp_strategy: &StrategyProfile,
    params: &MarketParams,
) -> Result<Vec<f64>> {
    let integral = PayoffIntegral::new(player, opp_strategy, params)?;
    let iv = params.player(player).bid_interval();
    let certified = concavity_certified(params);
    let nodes = params.player(player).type_grid().nodes();
    Ok(exec::map_range(nodes.len(), |j| {
        locate_best_reply(&integral, nodes[j], iv.lo(), iv.hi(), certified)
    }))
}

/// Sequential twin of [`best_reply_profile`], kept for benchmarking the
/// parallel speedup.
pub fn best_reply_profile_seq(
    player: usize,
    opp_strategy: &StrategyProfile,
    params: &MarketParams,
) -> Result<Vec<f64>> {
    let integral = PayoffIntegral::new(player, opp_strategy, params)?;
    let iv = params.player(player).bid_interval();
    let certified = concavity_certified(params);
    let nodes = params.player(player).type_grid().nodes();
    Ok(exec::map_range_seq(nodes.len(), |j| {
        locate_best_reply(&integral, nodes[j], iv.lo(), iv.hi(), certified)
    }))
}

/// Jacobi best-reply map: every player replies to the same input profile.
pub fn simultaneous_best_reply(
    profile: &StrategyProfile,
    params: &MarketParams,
) -> Result<StrategyProfile> {
    let rows = (0..params.n_players())
        .map(|i| best_reply_profile(i, profile, params))
        .collect::<Result<Vec<_>>>()?;
    StrategyProfile::new(params, rows)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum IterationStatus {
    Converged,
    CycleDetected,
    MaxIter,
}

#[derive(Debug, Clone)]
pub struct IterationConfig {
    pub max_iter: usize,
    /// Successive sup-distance below this counts as converged.
    pub tol: f64,
    /// How many previous iterates to compare against for cycles.
    pub cycle_window: usize,
    pub cycle_tol: f64,
    /// Gauss-Seidel updates instead of the default Jacobi sweep.
    pub gauss_seidel: bool,
}

impl Default for IterationConfig {
    fn default() -> Self {
        Self {
            max_iter: 200,
            tol: 1e-9,
            cycle_window: 8,
            cycle_tol: 1e-6,
            gauss_seidel: false,
        }
    }
}

/// Trace of a best-reply iteration. Non-convergence is a status, not an
/// error.
#[derive(Debug, Clone, Serialize)]
pub struct IterationTrace {
    pub profiles: Vec<StrategyProfile>,
    pub status: IterationStatus,
    /// Detected cycle period (>= 2) when status is `CycleDetected`.
    pub cycle_period: Option<usize>,
}

impl IterationTrace {
    pub fn last(&self) -> &StrategyProfile {
        self.profiles.last().expect("trace holds the initial profile")
    }

    pub fn iterations(&self) -> usize {
        self.profiles.len() - 1
    }
}

pub fn best_reply_iteration(
    initial: &StrategyProfile,
    params: &MarketParams,
    max_iter: usize,
    tol: f64,
) -> Result<IterationTrace> {
    best_reply_iteration_with(
        initial,
        params,
        &IterationConfig {
            max_iter,
            tol,
            ..IterationConfig::default()
        },
    )
}

pub fn best_reply_iteration_with(
    initial: &StrategyProfile,
    params: &MarketParams,
    cfg: &IterationConfig,
) -> Result<IterationTrace> {
    let mut profiles = vec![initial.clone()];
    for _ in 0..cfg.max_iter {
        let prev = profiles.last().unwrap();
        let next = if cfg.gauss_seidel {
            let row0 = best_reply_profile(0, prev, params)?;
            let mid = StrategyProfile::new(params, vec![row0, prev.bids(1).to_vec()])?;
            let row1 = best_reply_profile(1, &mid, params)?;
            StrategyProfile::new(params, vec![mid.bids(0).to_vec(), row1])?
        } else {
            simultaneous_best_reply(prev, params)?
        };
        let dist = next.sup_distance(prev);
        profiles.push(next);
        if dist < cfg.tol {
            return Ok(IterationTrace {
                profiles,
                status: IterationStatus::Converged,
                cycle_period: None,
            });
        }
        let k = profiles.len() - 1;
        for period in 2..=cfg.cycle_window.min(k) {
            if profiles[k].sup_distance(&profiles[k - period]) < cfg.cycle_tol {
                return Ok(IterationTrace {
                    profiles,
                    status: IterationStatus::CycleDetected,
                    cycle_period: Some(period),
                });
            }
        }
    }
    Ok(IterationTrace {
        profiles,
        status: IterationStatus::MaxIter,
        cycle_period: None,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FlowStatus {
    Converged,
    MaxTime,
    /// Clipping at the bid interval stayed active for longer than the
    /// configured patience: the equilibrium sits outside the interval.
    LeftBidInterval,
}

#[derive(Debug, Clone)]
pub struct FlowConfig {
    /// Euler step in flow time.
    pub step: f64,
    pub t_max: f64,
    /// Convergence threshold on the sup-norm of the drift.
    pub drift_tol: f64,
    /// Record a sample every this many steps (the initial and final states
    /// are always recorded).
    pub record_stride: usize,
    /// Consecutive clipped steps tolerated before giving up.
    pub clip_patience: usize,
}

impl FlowConfig {
    pub fn for_params(params: &MarketParams) -> Self {
        Self {
            step: 0.01 * params.bid_hull().width(),
            t_max: 1e4,
            drift_tol: 1e-8,
            record_stride: 100,
            clip_patience: 100,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FlowSample {
    pub time: f64,
    pub profile: StrategyProfile,
    pub drift_norm: f64,
}

/// Time-indexed trace of the differential dynamic.
#[derive(Debug, Clone, Serialize)]
pub struct FlowTrace {
    pub samples: Vec<FlowSample>,
    pub status: FlowStatus,
    pub steps: usize,
    /// Most negative single-step bid move over the whole run; a from-below
    /// run on a certified instance keeps this above roughly -1e-9.
    pub min_step_increment: f64,
    /// Most positive single-step bid move over the whole run.
    pub max_step_increment: f64,
}

impl FlowTrace {
    pub fn final_profile(&self) -> &StrategyProfile {
        &self.samples.last().expect("trace never empty").profile
    }

    pub fn final_drift_norm(&self) -> f64 {
        self.samples.last().expect("trace never empty").drift_norm
    }

    pub fn final_time(&self) -> f64 {
        self.samples.last().expect("trace never empty").time
    }
}

/// Drift of the differential dynamic: the own-bid payoff gradient at every
/// (player, grid node) pair of `profile`. The pairs are independent and run
/// on the rayon pool when `parallel` is enabled.
pub fn drift_field(profile: &StrategyProfile, params: &MarketParams) -> Result<Vec<Vec<f64>>> {
    let mut field = Vec::with_capacity(params.n_players());
    for i in 0..params.n_players() {
        let integral = PayoffIntegral::new(i, profile, params)?;
        let nodes = params.player(i).type_grid().nodes();
        let own = profile.bids(i);
        field.push(exec::map_range(nodes.len(), |j| {
            integral.gradient(own[j], nodes[j])
        }));
    }
    Ok(field)
}

/// Sequential twin of [`drift_field`], kept for benchmarking.
pub fn drift_field_seq(profile: &StrategyProfile, params: &MarketParams) -> Result<Vec<Vec<f64>>> {
    let mut field = Vec::with_capacity(params.n_players());
    for i in 0..params.n_players() {
        let integral = PayoffIntegral::new(i, profile, params)?;
        let nodes = params.player(i).type_grid().nodes();
        let own = profile.bids(i);
        field.push(exec::map_range_seq(nodes.len(), |j| {
            integral.gradient(own[j], nodes[j])
        }));
    }
    Ok(field)
}

fn sup_norm(field: &[Vec<f64>]) -> f64 {
    field
        .iter()
        .flatten()
        .fold(0.0, |acc, g| acc.max(g.abs()))
}

pub fn flow_dynamics(
    initial: &StrategyProfile,
    params: &MarketParams,
    step: f64,
    t_max: f64,
    tol: f64,
) -> Result<FlowTrace> {
    let cfg = FlowConfig {
        step,
        t_max,
        drift_tol: tol,
        ..FlowConfig::for_params(params)
    };
    flow_dynamics_with(initial, params, &cfg)
}

/// Explicit Euler integration of the drift for every (player, node) pair
/// simultaneously, with bids clipped to the bid interval after each step.
///
/// Terminates `Converged` when the drift sup-norm drops below the tolerance
/// (checked before stepping, so a start at an equilibrium yields a length-one
/// trace), `MaxTime` at the horizon, and `LeftBidInterval` when clipping
/// stays active beyond the configured patience - a sign of parameter
/// infeasibility rather than failure.
pub fn flow_dynamics_with(
    initial: &StrategyProfile,
    params: &MarketParams,
    cfg: &FlowConfig,
) -> Result<FlowTrace> {
    if !(cfg.step > 0.0) || !(cfg.t_max > 0.0) || !(cfg.drift_tol > 0.0) {
        return Err(Error::InvalidInput(
            "flow step, horizon and tolerance must be positive",
        ));
    }
    // Re-validate the initial profile against this instance.
    let mut state = StrategyProfile::new(params, initial.rows().to_vec())?;
    let stride = cfg.record_stride.max(1);
    let max_steps = (cfg.t_max / cfg.step).ceil() as usize;

    let mut samples: Vec<FlowSample> = Vec::new();
    let mut steps = 0usize;
    let mut min_inc = 0.0f64;
    let mut max_inc = 0.0f64;
    let mut consecutive_clipped = 0usize;

    let status = loop {
        let drift = drift_field(&state, params)?;
        let norm = sup_norm(&drift);
        let time = steps as f64 * cfg.step;
        let converged = norm < cfg.drift_tol;
        let exhausted = steps >= max_steps;
        if converged || exhausted || steps % stride == 0 {
            samples.push(FlowSample {
                time,
                profile: state.clone(),
                drift_norm: norm,
            });
        }
        if converged {
            break FlowStatus::Converged;
        }
        if exhausted {
            break FlowStatus::MaxTime;
        }

        let mut clipped = false;
        let next = state
            .rows()
            .iter()
            .enumerate()
            .map(|(i, row)| {
                let iv = params.player(i).bid_interval();
                row.iter()
                    .zip(&drift[i])
                    .map(|(b, g)| {
                        let raw = b + cfg.step * g;
                        let new = iv.clamp(raw);
                        if new != raw {
                            clipped = true;
                        }
                        let inc = new - b;
                        min_inc = min_inc.min(inc);
                        max_inc = max_inc.max(inc);
                        new
                    })
                    .collect::<Vec<f64>>()
            })
            .collect::<Vec<_>>();
        state = StrategyProfile::new(params, next)?;
        steps += 1;
        consecutive_clipped = if clipped { consecutive_clipped + 1 } else { 0 };
        if consecutive_clipped > cfg.clip_patience {
            let drift = drift_field(&state, params)?;
            samples.push(FlowSample {
                time: steps as f64 * cfg.step,
                profile: state.clone(),
                drift_norm: sup_norm(&drift),
            });
            break FlowStatus::LeftBidInterval;
        }
    };

    Ok(FlowTrace {
        samples,
        status,
        steps,
        min_step_increment: min_inc,
        max_step_increment: max_inc,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum UniquenessVerdict {
    Unique,
    NotUnique,
    Undetermined,
}

#[derive(Debug, Clone)]
pub struct SolveConfig {
    pub flow: FlowConfig,
    /// Sup-distance between the extremal profiles below which the
    /// equilibrium counts as unique.
    pub distance_tol: f64,
    /// Certification threshold on the per-node best-reply residual.
    pub residual_tol: f64,
    /// Margin for the strict-interiority report on the lower equilibrium.
    pub interior_margin: f64,
}

impl SolveConfig {
    pub fn for_params(params: &MarketParams) -> Self {
        Self {
            flow: FlowConfig::for_params(params),
            distance_tol: 1e-4,
            residual_tol: 1e-4,
            interior_margin: 1e-6,
        }
    }
}

/// Extremal equilibria with certification data.
#[derive(Debug, Clone, Serialize)]
pub struct EquilibriumResult {
    /// Flow limit from the truth-telling start (smallest equilibrium).
    pub lower: StrategyProfile,
    /// Flow limit from the constant bid-ceiling start (largest equilibrium).
    pub upper: StrategyProfile,
    pub sup_distance: f64,
    pub verdict: UniquenessVerdict,
    /// Per-player sup-norm of `|sigma(c) - best_reply(c)|` for each profile.
    pub residual_lower: Vec<f64>,
    pub residual_upper: Vec<f64>,
    pub lower_status: FlowStatus,
    pub upper_status: FlowStatus,
    /// Whether the lower profile sits strictly inside every bid interval.
    pub strictly_interior: bool,
    /// How the upper flow was initialized (no canonical start exists for it).
    pub upper_initialization: &'static str,
    pub validity: ValidityReport,
}

/// Per-player sup-norm best-reply residual of `profile`.
pub fn best_reply_residuals(profile: &StrategyProfile, params: &MarketParams) -> Result<Vec<f64>> {
    (0..params.n_players())
        .map(|i| {
            let reply = best_reply_profile(i, profile, params)?;
            Ok(profile
                .bids(i)
                .iter()
                .zip(&reply)
                .map(|(b, r)| (b - r).abs())
                .fold(0.0, f64::max))
        })
        .collect()
}

/// Runs the differential dynamic from below and from above and certifies the
/// limits. Validity flags are consulted and attached, never enforced.
pub fn extremal_equilibria(params: &MarketParams, cfg: &SolveConfig) -> Result<EquilibriumResult> {
    let validity = validate_params(params);
    let lower_trace = flow_dynamics_with(&StrategyProfile::identity(params), params, &cfg.flow)?;
    let upper_trace =
        flow_dynamics_with(&StrategyProfile::constant_top(params), params, &cfg.flow)?;
    let lower = lower_trace.final_profile().clone();
    let upper = upper_trace.final_profile().clone();
    let sup_distance = lower.sup_distance(&upper);
    let residual_lower = best_reply_residuals(&lower, params)?;
    let residual_upper = best_reply_residuals(&upper, params)?;

    let both_converged = lower_trace.status == FlowStatus::Converged
        && upper_trace.status == FlowStatus::Converged;
    let certified = residual_lower
        .iter()
        .chain(&residual_upper)
        .all(|r| *r < cfg.residual_tol);
    let verdict = if !both_converged || !certified {
        UniquenessVerdict::Undetermined
    } else if sup_distance < cfg.distance_tol {
        UniquenessVerdict::Unique
    } else {
        UniquenessVerdict::NotUnique
    };

    let strictly_interior = params.players().iter().enumerate().all(|(i, p)| {
        let iv = p.bid_interval();
        lower
            .bids(i)
            .iter()
            .all(|b| b - iv.lo() > cfg.interior_margin && iv.hi() - b > cfg.interior_margin)
    });

    Ok(EquilibriumResult {
        lower,
        upper,
        sup_distance,
        verdict,
        residual_lower,
        residual_upper,
        lower_status: lower_trace.status,
        upper_status: upper_trace.status,
        strictly_interior,
        upper_initialization: "constant profile at each player's bid ceiling",
        validity,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Interval;

    fn full_info_params() -> MarketParams {
        MarketParams::full_information([1.0, 1.0], Interval::new(0.8, 2.0).unwrap(), 1.0, 0.1)
            .unwrap()
    }

    #[test]
    fn full_information_best_reply_matches_benchmark() {
        // Opponent bids c/(1-2rd) = 1.25; the best reply is 1.25 as well.
        let params = full_info_params();
        let opp = StrategyProfile::constant(&params, 1.25).unwrap();
        let br = best_reply_bid(0, 1.0, &opp, &params).unwrap();
        assert!(
            (br - 1.25).abs() / 1.25 < 1e-5,
            "best reply {br}, want 1.25"
        );
    }

    #[test]
    fn best_reply_stays_in_the_bid_interval() {
        let params = MarketParams::symmetric_uniform(
            Interval::new(1.0, 1.05).unwrap(),
            Interval::new(0.9, 1.6).unwrap(),
            1.0,
            0.1,
            11,
        )
        .unwrap();
        let opp = StrategyProfile::identity(&params);
        for &c in params.player(0).type_grid().nodes() {
            let br = best_reply_bid(0, c, &opp, &params).unwrap();
            assert!((0.9..=1.6).contains(&br));
        }
    }

    #[test]
    fn iteration_from_a_fixed_point_converges_immediately() {
        let params = full_info_params();
        // The symmetric full-information equilibrium profile.
        let eq = StrategyProfile::constant(&params, 1.25).unwrap();
        let trace = best_reply_iteration(&eq, &params, 50, 1e-7).unwrap();
        assert_eq!(trace.status, IterationStatus::Converged);
        assert_eq!(trace.iterations(), 1);
    }

    #[test]
    fn flow_started_at_the_equilibrium_records_a_single_sample() {
        let params = full_info_params();
        let eq = StrategyProfile::constant(&params, 1.25).unwrap();
        let trace = flow_dynamics(&eq, &params, 0.01, 100.0, 1e-6).unwrap();
        assert_eq!(trace.status, FlowStatus::Converged);
        assert_eq!(trace.samples.len(), 1);
        assert_eq!(trace.final_time(), 0.0);
    }

    #[test]
    fn flow_reports_left_bid_interval_when_the_ceiling_binds() {
        // Benchmark bid 1/(1-0.26) = 1.3514 exceeds the ceiling 1.3: the
        // from-below flow pins at the ceiling and must say so.
        let params = MarketParams::symmetric_uniform(
            Interval::new(1.0, 1.05).unwrap(),
            Interval::new(1.0, 1.3).unwrap(),
            1.0,
            0.13,
            9,
        )
        .unwrap();
        let trace = flow_dynamics(
            &StrategyProfile::identity(&params),
            &params,
            0.005,
            2000.0,
            1e-10,
        )
        .unwrap();
        assert_eq!(trace.status, FlowStatus::LeftBidInterval);
    }

    #[test]
    fn extremal_equilibria_on_the_full_information_instance() {
        let params = full_info_params();
        let result = extremal_equilibria(&params, &SolveConfig::for_params(&params)).unwrap();
        assert_eq!(result.verdict, UniquenessVerdict::Unique);
        let want = 1.25;
        for i in 0..2 {
            for b in result.lower.bids(i).iter().chain(result.upper.bids(i)) {
                assert!((b - want).abs() / want < 1e-5, "bid {b}, want {want}");
            }
        }
        assert!(result.lower.le_within(&result.upper, 1e-9));
        assert!(result.strictly_interior);
    }
}
