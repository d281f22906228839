//! Numerical certificates for the model assumptions and uniqueness
//! conditions on a concrete instance, finite-difference cross-checks of the
//! analytic derivative formulas, and a low-discrepancy feasibility sweep
//! over parameter space.

use crate::equilibrium::{best_reply_bid, best_reply_profile, EquilibriumResult};
use crate::error::{Error, Result};
use crate::exec;
use crate::model::{
    validate_params, FlagId, Interval, Kernel, MarketParams, StrategyProfile, ValidityReport,
};
use crate::sampling::{halton_point, lerp};
use serde::Serialize;

/// Worst sample seen by a check: raw inputs plus the offending value.
#[derive(Debug, Clone, Serialize)]
pub struct Witness {
    pub inputs: Vec<f64>,
    pub value: f64,
}

/// One certificate entry. `margin` is signed: positive means the condition
/// holds with that much room, negative measures the worst violation.
#[derive(Debug, Clone, Serialize)]
pub struct CheckEntry {
    pub name: String,
    pub pass: bool,
    pub margin: f64,
    pub witness: Option<Witness>,
    pub tolerance: f64,
    pub samples: usize,
}

/// Pass/fail certificate for each assumption on a given instance.
#[derive(Debug, Clone, Serialize, Default)]
pub struct AssumptionReport {
    pub entries: Vec<CheckEntry>,
}

impl AssumptionReport {
    pub fn all_pass(&self) -> bool {
        self.entries.iter().all(|e| e.pass)
    }

    pub fn entry(&self, name: &str) -> Option<&CheckEntry> {
        self.entries.iter().find(|e| e.name == name)
    }

    pub fn push(&mut self, entry: CheckEntry) {
        self.entries.push(entry);
    }

    pub fn extend(&mut self, entries: impl IntoIterator<Item = CheckEntry>) {
        self.entries.extend(entries);
    }
}

// ---------------------------------------------------------------------------
// Closed-form payoff partials on the interior branch
// ---------------------------------------------------------------------------

/// Mixed bid partial of the pointwise payoff on the interior branch:
/// `4y (x(2y - x) + c(2x - y)) / (r (x + y)^4)`.
/// Positive whenever bids stay within a factor of two of each other.
pub fn payoff_mixed_partial(x: f64, y: f64, cost: f64, r: f64) -> f64 {
    let s = x + y;
    4.0 * y * (x * (2.0 * y - x) + cost * (2.0 * x - y)) / (r * s.powi(4))
}

/// Own-bid curvature of the pointwise payoff on the interior branch:
/// `4y^2 (x - 2y - 3c) / (r (x + y)^4)`. Negative when `x < 2y + 3c`.
pub fn payoff_own_curvature(x: f64, y: f64, cost: f64, r: f64) -> f64 {
    let s = x + y;
    4.0 * y * y * (x - 2.0 * y - 3.0 * cost) / (r * s.powi(4))
}

/// Bid-cost cross partial of the pointwise payoff on the interior branch:
/// `4y^2 / (r (x + y)^3)`. Always positive.
pub fn payoff_cross_type(x: f64, y: f64, r: f64) -> f64 {
    let s = x + y;
    4.0 * y * y / (r * s.powi(3))
}

// ---------------------------------------------------------------------------
// Sampling helpers
// ---------------------------------------------------------------------------

/// Where the sampled checks draw bid pairs from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SampleRegion {
    /// Interior-branch pairs with bid ratio below two (where the instance's
    /// derivations certify the signs).
    Certified,
    /// Interior-branch pairs anywhere in the bid hull.
    FullBidBox,
}

fn interior_pair(params: &MarketParams, x: f64, y: f64) -> bool {
    let d = params.demand();
    let r = params.loss_coeff();
    let fxy = crate::model::interior_allocation(x, y, d, r);
    let fyx = crate::model::interior_allocation(y, x, d, r);
    matches!((fxy, fyx), (Ok(a), Ok(b)) if a >= 0.0 && b >= 0.0)
}

/// Deterministic stream of interior-branch bid pairs plus a cost coordinate.
/// Returns fewer than `want` triples when the region is thin in the hull.
fn sample_region_triples(
    params: &MarketParams,
    region: SampleRegion,
    want: usize,
    seed: u64,
) -> Vec<[f64; 3]> {
    let hull = params.bid_hull();
    let (c_lo, c_hi) = (params.type_floor(), params.type_ceiling());
    let mut out = Vec::with_capacity(want);
    let budget = 64 * want as u64 + 1024;
    let mut index = 0u64;
    while out.len() < want && index < budget {
        let p = halton_point::<3>(seed.wrapping_add(index));
        index += 1;
        let y = lerp(hull.lo(), hull.hi(), p[1]);
        let x = match region {
            SampleRegion::FullBidBox => lerp(hull.lo(), hull.hi(), p[0]),
            SampleRegion::Certified => {
                // keep the pair within a factor of two of each other
                let lo = hull.lo().max(0.5 * y * 1.001);
                let hi = hull.hi().min(2.0 * y * 0.999);
                if !(lo < hi) {
                    continue;
                }
                lerp(lo, hi, p[0])
            }
        };
        if !interior_pair(params, x, y) {
            continue;
        }
        let c = if c_hi > c_lo {
            lerp(c_lo, c_hi, p[2])
        } else {
            c_lo
        };
        out.push([x, y, c]);
    }
    out
}

fn pointwise(params: &MarketParams, x: f64, y: f64, c: f64) -> f64 {
    let kernel = params.kernel().expect("checked by caller");
    crate::payoff::pointwise_payoff(x, c, y, &kernel)
}

// ---------------------------------------------------------------------------
// Checks
// ---------------------------------------------------------------------------

/// Kernel monotonicity against any kernel implementation (used directly by
/// the negative-control tests): decreasing in the own bid, increasing in the
/// opponent bid, over sorted sample pairs from `bids`.
pub fn check_kernel_monotonicity_for(
    kernel: &dyn Kernel,
    bids: Interval,
    samples: usize,
    seed: u64,
) -> Result<CheckEntry> {
    if samples < 2 {
        return Err(Error::InvalidInput(
            "monotonicity check needs at least two samples",
        ));
    }
    let tol = 1e-12;
    let mut worst = f64::INFINITY;
    let mut witness = None;
    for k in 0..samples {
        let [a, b, c] = halton_point::<3>(seed.wrapping_add(k as u64));
        let lo = bids.lo();
        let hi = bids.hi();
        let x1 = lerp(lo, hi, a.min(b));
        let x2 = lerp(lo, hi, a.max(b));
        let y = lerp(lo, hi, c);
        if x1 < x2 {
            let m = kernel.eval(x1, y) - kernel.eval(x2, y);
            if m < worst {
                worst = m;
                witness = Some(Witness {
                    inputs: vec![x1, x2, y],
                    value: m,
                });
            }
        }
        let y1 = lerp(lo, hi, b.min(c));
        let y2 = lerp(lo, hi, b.max(c));
        let x = lerp(lo, hi, a);
        if y1 < y2 {
            let m = kernel.eval(x, y2) - kernel.eval(x, y1);
            if m < worst {
                worst = m;
                witness = Some(Witness {
                    inputs: vec![x, y1, y2],
                    value: m,
                });
            }
        }
    }
    Ok(CheckEntry {
        name: "kernel_monotonicity".into(),
        pass: worst >= -tol,
        margin: worst,
        witness,
        tolerance: tol,
        samples,
    })
}

/// Kernel monotonicity of the instance's dispatch kernel over its bid hull.
pub fn check_kernel_monotonicity(
    params: &MarketParams,
    samples: usize,
    seed: u64,
) -> Result<CheckEntry> {
    let kernel = params.kernel()?;
    check_kernel_monotonicity_for(&kernel, params.bid_hull(), samples, seed)
}

/// Strict increasing differences: the closed-form mixed partial must be
/// positive on the sampled region; its sign is cross-checked against a
/// second-order finite difference of the pointwise payoff.
pub fn check_increasing_differences(
    params: &MarketParams,
    samples: usize,
    seed: u64,
    region: SampleRegion,
) -> Result<CheckEntry> {
    if samples < 1 {
        return Err(Error::InvalidInput("need at least one sample"));
    }
    params.kernel()?;
    let r = params.loss_coeff();
    let triples = sample_region_triples(params, region, samples, seed);
    let mut worst = f64::INFINITY;
    let mut witness = None;
    let mut signs_agree = true;
    for &[x, y, c] in &triples {
        let analytic = payoff_mixed_partial(x, y, c, r);
        if analytic < worst {
            worst = analytic;
            witness = Some(Witness {
                inputs: vec![x, y, c],
                value: analytic,
            });
        }
        let h = 1e-5 * (1.0 + x.abs());
        let k = 1e-5 * (1.0 + y.abs());
        let fd = (pointwise(params, x + h, y + k, c) - pointwise(params, x + h, y - k, c)
            - pointwise(params, x - h, y + k, c)
            + pointwise(params, x - h, y - k, c))
            / (4.0 * h * k);
        if analytic.abs() > 1e-6 && fd.signum() != analytic.signum() {
            signs_agree = false;
            witness = Some(Witness {
                inputs: vec![x, y, c],
                value: fd,
            });
        }
    }
    Ok(CheckEntry {
        name: "strict_increasing_differences".into(),
        pass: worst > 0.0 && signs_agree,
        margin: worst,
        witness,
        tolerance: 0.0,
        samples: triples.len(),
    })
}

/// Own-bid concavity and type monotonicity: the two closed forms evaluated
/// on the certified region, plus an empirical check that the best reply is
/// strictly increasing in the cost along the grid.
pub fn check_concavity_and_type_monotonicity(
    params: &MarketParams,
    samples: usize,
    seed: u64,
) -> Result<Vec<CheckEntry>> {
    if samples < 1 {
        return Err(Error::InvalidInput("need at least one sample"));
    }
    params.kernel()?;
    let r = params.loss_coeff();
    let triples = sample_region_triples(params, SampleRegion::Certified, samples, seed);

    let mut entries = Vec::with_capacity(3);

    // Own-bid curvature must be negative: margin is the negated worst value.
    let mut worst = f64::INFINITY;
    let mut witness = None;
    for &[x, y, c] in &triples {
        let margin = -payoff_own_curvature(x, y, c, r);
        if margin < worst {
            worst = margin;
            witness = Some(Witness {
                inputs: vec![x, y, c],
                value: -margin,
            });
        }
    }
    entries.push(CheckEntry {
        name: "payoff_own_concavity".into(),
        pass: worst > 0.0,
        margin: worst,
        witness,
        tolerance: 0.0,
        samples: triples.len(),
    });

    let mut worst = f64::INFINITY;
    let mut witness = None;
    for &[x, y, _] in &triples {
        let v = payoff_cross_type(x, y, r);
        if v < worst {
            worst = v;
            witness = Some(Witness {
                inputs: vec![x, y],
                value: v,
            });
        }
    }
    entries.push(CheckEntry {
        name: "payoff_cross_type_positive".into(),
        pass: worst > 0.0,
        margin: worst,
        witness,
        tolerance: 0.0,
        samples: triples.len(),
    });

    // Empirical type monotonicity of the best reply against a truth-telling
    // opponent.
    let grid_len = params.player(0).type_grid().len();
    let entry = if grid_len < 2 {
        CheckEntry {
            name: "best_reply_type_monotone".into(),
            pass: true,
            margin: 0.0,
            witness: None,
            tolerance: 0.0,
            samples: 0,
        }
    } else {
        let opp = StrategyProfile::identity(params);
        let reply = best_reply_profile(0, &opp, params)?;
        let mut worst = f64::INFINITY;
        let mut witness = None;
        for (j, w) in reply.windows(2).enumerate() {
            let diff = w[1] - w[0];
            if diff < worst {
                worst = diff;
                witness = Some(Witness {
                    inputs: vec![params.player(0).type_grid().nodes()[j], w[0], w[1]],
                    value: diff,
                });
            }
        }
        CheckEntry {
            name: "best_reply_type_monotone".into(),
            pass: worst > 0.0,
            margin: worst,
            witness,
            tolerance: 0.0,
            samples: grid_len - 1,
        }
    };
    entries.push(entry);

    Ok(entries)
}

/// Kernel scale invariance for any kernel implementation: `K(ax, ay)` must
/// equal `K(x, y)` to 1e-12 for every scale in `alphas`.
pub fn check_scaling_invariance_for(
    kernel: &dyn Kernel,
    bids: Interval,
    alphas: &[f64],
    samples: usize,
    seed: u64,
) -> Result<CheckEntry> {
    if samples < 1 || alphas.is_empty() {
        return Err(Error::InvalidInput("need samples and at least one alpha"));
    }
    if alphas.iter().any(|a| !(*a > 0.0)) {
        return Err(Error::InvalidInput("scales must be strictly positive"));
    }
    let tol = 1e-12;
    let mut worst_diff = 0.0f64;
    let mut witness = None;
    for k in 0..samples {
        let [a, b] = halton_point::<2>(seed.wrapping_add(k as u64));
        let x = lerp(bids.lo(), bids.hi(), a);
        let y = lerp(bids.lo(), bids.hi(), b);
        let base = kernel.eval(x, y);
        for &alpha in alphas {
            let diff = (kernel.eval(alpha * x, alpha * y) - base).abs();
            if diff > worst_diff {
                worst_diff = diff;
                witness = Some(Witness {
                    inputs: vec![alpha, x, y],
                    value: diff,
                });
            }
        }
    }
    Ok(CheckEntry {
        name: "kernel_scaling_invariance".into(),
        pass: worst_diff <= tol,
        margin: tol - worst_diff,
        witness,
        tolerance: tol,
        samples,
    })
}

/// Scale invariance of the instance kernel plus the argmax covariance it
/// induces: the best reply against a scaled strategy is the scaled best
/// reply at the scaled cost, whenever all quantities stay strictly inside
/// the bid interval. Scales that would leave the interval are skipped and
/// do not count into the entry's sample count.
pub fn check_scaling_invariance(
    params: &MarketParams,
    alphas: &[f64],
    samples: usize,
    seed: u64,
) -> Result<Vec<CheckEntry>> {
    let kernel = params.kernel()?;
    let kernel_entry =
        check_scaling_invariance_for(&kernel, params.bid_hull(), alphas, samples, seed)?;

    let tol = 1e-6;
    let identity = StrategyProfile::identity(params);
    let iv = params.player(0).bid_interval();
    let interior =
        |b: f64| b - iv.lo() > 1e-6 * iv.width() && iv.hi() - b > 1e-6 * iv.width();
    let cost = 0.5 * (params.type_floor() + params.type_ceiling());
    let mut applied = 0usize;
    let mut worst_diff = 0.0f64;
    let mut witness = None;
    for &alpha in alphas {
        if (alpha - 1.0).abs() < 1e-15 {
            continue;
        }
        let scaled = match identity.scaled(params, alpha) {
            Ok(p) => p,
            Err(_) => continue, // scaled strategy leaves the bid interval
        };
        let base = best_reply_bid(0, cost / alpha, &identity, params)?;
        if !interior(base) || !interior(alpha * base) {
            continue;
        }
        let lhs = best_reply_bid(0, cost, &scaled, params)?;
        if !interior(lhs) {
            continue;
        }
        applied += 1;
        let diff = (lhs - alpha * base).abs();
        if diff > worst_diff {
            worst_diff = diff;
            witness = Some(Witness {
                inputs: vec![alpha, cost, base, lhs],
                value: diff,
            });
        }
    }
    let argmax_entry = CheckEntry {
        name: "argmax_scaling_covariance".into(),
        pass: worst_diff <= tol,
        margin: tol - worst_diff,
        witness,
        tolerance: tol,
        samples: applied,
    };
    Ok(vec![kernel_entry, argmax_entry])
}

/// Grid-refinement proxy for continuity of the extremal best replies: the
/// maximum inter-node jump of the best-reply profile must shrink by a factor
/// below 0.6 when the grid resolution doubles.
pub fn check_continuity_proxy(params: &MarketParams) -> Result<CheckEntry> {
    const RATIO_LIMIT: f64 = 0.6;
    let max_jump = |p: &MarketParams| -> Result<f64> {
        let opp = StrategyProfile::identity(p);
        let reply = best_reply_profile(0, &opp, p)?;
        Ok(reply
            .windows(2)
            .map(|w| (w[1] - w[0]).abs())
            .fold(0.0, f64::max))
    };
    let coarse = max_jump(params)?;
    if coarse < 1e-12 {
        return Ok(CheckEntry {
            name: "best_reply_continuity_proxy".into(),
            pass: true,
            margin: RATIO_LIMIT,
            witness: None,
            tolerance: RATIO_LIMIT,
            samples: params.player(0).type_grid().len(),
        });
    }
    let refined = params.refined()?;
    let fine = max_jump(&refined)?;
    let ratio = fine / coarse;
    Ok(CheckEntry {
        name: "best_reply_continuity_proxy".into(),
        pass: ratio < RATIO_LIMIT,
        margin: RATIO_LIMIT - ratio,
        witness: Some(Witness {
            inputs: vec![coarse, fine],
            value: ratio,
        }),
        tolerance: RATIO_LIMIT,
        samples: refined.player(0).type_grid().len(),
    })
}

/// Every bid of both extremal profiles must lie in the optimal-bid band
/// `[c_lo/(1-2rd), c_hi/(1-2rd)]` of its player.
pub fn check_bid_bounds(params: &MarketParams, result: &EquilibriumResult) -> CheckEntry {
    let tol = 1e-6;
    let denom = 1.0 - 2.0 * params.loss_coeff() * params.demand();
    if !(denom > 0.0) {
        return CheckEntry {
            name: "optimal_bid_band".into(),
            pass: false,
            margin: f64::NEG_INFINITY,
            witness: None,
            tolerance: tol,
            samples: 0,
        };
    }
    let mut worst = f64::INFINITY;
    let mut witness = None;
    let mut count = 0usize;
    for (i, spec) in params.players().iter().enumerate() {
        let band_lo = spec.type_grid().lo() / denom;
        let band_hi = spec.type_grid().hi() / denom;
        for profile in [&result.lower, &result.upper] {
            for (&c, &b) in spec.type_grid().nodes().iter().zip(profile.bids(i)) {
                count += 1;
                let margin = (b - band_lo).min(band_hi - b);
                if margin < worst {
                    worst = margin;
                    witness = Some(Witness {
                        inputs: vec![i as f64, c, b],
                        value: margin,
                    });
                }
            }
        }
    }
    CheckEntry {
        name: "optimal_bid_band".into(),
        pass: worst >= -tol,
        margin: worst,
        witness,
        tolerance: tol,
        samples: count,
    }
}

/// Uniqueness ratio condition evaluated on the computed extremal pair:
/// `upper_i(c_hi) * lower_i(c) / upper_i(c)` must stay below the player's
/// bid ceiling for every node.
pub fn check_alpha_bound(params: &MarketParams, result: &EquilibriumResult) -> CheckEntry {
    let tol = 1e-9;
    let mut worst = f64::INFINITY;
    let mut witness = None;
    let mut count = 0usize;
    for (i, spec) in params.players().iter().enumerate() {
        let ceiling = spec.bid_interval().hi();
        let top = *result.upper.bids(i).last().expect("non-empty grid");
        for (&c, (&lo_b, &up_b)) in spec
            .type_grid()
            .nodes()
            .iter()
            .zip(result.lower.bids(i).iter().zip(result.upper.bids(i)))
        {
            count += 1;
            let value = top * lo_b / up_b;
            let margin = ceiling - value;
            if margin < worst {
                worst = margin;
                witness = Some(Witness {
                    inputs: vec![i as f64, c, value],
                    value: margin,
                });
            }
        }
    }
    CheckEntry {
        name: "alpha_ratio_bound".into(),
        pass: worst >= -tol,
        margin: worst,
        witness,
        tolerance: tol,
        samples: count,
    }
}

/// All checks that need no equilibrium computation.
pub fn run_pre_solve_checks(
    params: &MarketParams,
    samples: usize,
    alphas: &[f64],
    seed: u64,
) -> Result<AssumptionReport> {
    let mut report = AssumptionReport::default();
    report.push(check_kernel_monotonicity(params, samples, seed)?);
    report.push(check_increasing_differences(
        params,
        samples,
        seed,
        SampleRegion::Certified,
    )?);
    report.extend(check_concavity_and_type_monotonicity(
        params, samples, seed,
    )?);
    report.extend(check_scaling_invariance(params, alphas, samples, seed)?);
    report.push(check_continuity_proxy(params)?);
    Ok(report)
}

/// The checks that consume a computed equilibrium pair.
pub fn run_post_solve_checks(params: &MarketParams, result: &EquilibriumResult) -> Vec<CheckEntry> {
    vec![
        check_bid_bounds(params, result),
        check_alpha_bound(params, result),
    ]
}

// ---------------------------------------------------------------------------
// Feasibility sweep
// ---------------------------------------------------------------------------

/// Per-parameter search ranges for the feasibility sweep, each as `[lo, hi]`.
#[derive(Debug, Clone, Serialize, serde::Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SearchRanges {
    pub demand: [f64; 2],
    pub loss_coeff: [f64; 2],
    pub type_floor: [f64; 2],
    pub type_ceiling: [f64; 2],
    pub bid_floor: [f64; 2],
    pub bid_ceiling: [f64; 2],
}

impl SearchRanges {
    /// A broad default window around the reference instance scales.
    pub fn broad() -> Self {
        Self {
            demand: [0.5, 2.0],
            loss_coeff: [0.02, 0.45],
            type_floor: [0.5, 2.0],
            type_ceiling: [0.55, 4.0],
            bid_floor: [0.1, 2.0],
            bid_ceiling: [0.6, 12.0],
        }
    }
}

/// A parameter set found by the sweep with its flag report, the number of
/// satisfied flags, and the smallest flag margin.
#[derive(Debug, Clone, Serialize)]
pub struct SearchHit {
    pub params: MarketParams,
    pub report: ValidityReport,
    pub satisfied: usize,
    pub margin: f64,
    pub sample_index: u64,
}

/// Deterministic low-discrepancy sweep over `(d, r, c_lo, c_hi, b_lo, b_hi)`.
/// Exactly `budget` samples are drawn; samples with inverted or nonpositive
/// intervals are skipped. Hits failing any `required` flag are dropped; the
/// rest come back sorted by satisfied-flag count, then margin, then draw
/// order. An empty result certifies that no sampled instance satisfies the
/// requested flags.
pub fn feasibility_search(
    ranges: &SearchRanges,
    budget: usize,
    required: &[FlagId],
    grid_nodes: usize,
    seed: u64,
) -> Result<Vec<SearchHit>> {
    if budget < 1 {
        return Err(Error::InvalidInput("sweep budget must be at least 1"));
    }
    let candidates = exec::map_range(budget, |k| {
        let p = halton_point::<6>(seed.wrapping_add(k as u64));
        let d = lerp(ranges.demand[0], ranges.demand[1], p[0]);
        let r = lerp(ranges.loss_coeff[0], ranges.loss_coeff[1], p[1]);
        let c_lo = lerp(ranges.type_floor[0], ranges.type_floor[1], p[2]);
        let c_hi = lerp(ranges.type_ceiling[0], ranges.type_ceiling[1], p[3]);
        let b_lo = lerp(ranges.bid_floor[0], ranges.bid_floor[1], p[4]);
        let b_hi = lerp(ranges.bid_ceiling[0], ranges.bid_ceiling[1], p[5]);
        let types = Interval::new(c_lo, c_hi).ok()?;
        let bids = Interval::new(b_lo, b_hi).ok()?;
        let params = MarketParams::symmetric_uniform(types, bids, d, r, grid_nodes).ok()?;
        let report = validate_params(&params);
        if !report.passes(required) {
            return None;
        }
        Some(SearchHit {
            satisfied: report.satisfied_count(),
            margin: report.min_margin(),
            params,
            report,
            sample_index: k as u64,
        })
    });
    let mut hits: Vec<SearchHit> = candidates.into_iter().flatten().collect();
    hits.sort_by(|a, b| {
        b.satisfied
            .cmp(&a.satisfied)
            .then(b.margin.total_cmp(&a.margin))
            .then(a.sample_index.cmp(&b.sample_index))
    });
    Ok(hits)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn reference_params() -> MarketParams {
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
    fn monotonicity_passes_on_the_dispatch_kernel() {
        let entry = check_kernel_monotonicity(&reference_params(), 500, 1).unwrap();
        assert!(entry.pass, "margin {}", entry.margin);
    }

    #[test]
    fn monotonicity_requires_two_samples() {
        assert!(check_kernel_monotonicity(&reference_params(), 0, 1).is_err());
        assert!(check_kernel_monotonicity(&reference_params(), 1, 1).is_err());
    }

    #[test]
    fn increasing_differences_positive_in_certified_region() {
        let entry =
            check_increasing_differences(&reference_params(), 400, 1, SampleRegion::Certified)
                .unwrap();
        assert!(entry.pass, "margin {}", entry.margin);
        assert!(entry.margin > 0.0);
    }

    #[test]
    fn mixed_partial_sign_by_hand() {
        // (x, y, c) = (1.8, 1.5, 1.0): both brackets positive.
        assert!(payoff_mixed_partial(1.8, 1.5, 1.0, 0.2) > 0.0);
        // Own bid beyond twice the opponent's with a small cost flips the
        // sign: 4(2 - 4) + 0.5 (8 - 1) < 0.
        assert!(payoff_mixed_partial(4.0, 1.0, 0.5, 0.2) < 0.0);
    }

    #[test]
    fn scaling_invariance_passes_and_reversal_fails_monotonicity() {
        let params = reference_params();
        let entries = check_scaling_invariance(&params, &[0.5, 2.0, 10.0], 300, 1).unwrap();
        assert!(entries.iter().all(|e| e.pass));

        // Negative control: a kernel increasing in the own bid trips the
        // monotonicity check and nothing else.
        struct Reversed(crate::model::ElectricityKernel);
        impl Kernel for Reversed {
            fn eval(&self, own: f64, opp: f64) -> f64 {
                self.0.eval(opp, own)
            }
            fn partial_own(&self, own: f64, opp: f64) -> f64 {
                -self.0.partial_own(opp, own)
            }
            fn cap(&self) -> f64 {
                self.0.cap()
            }
        }
        let reversed = Reversed(params.kernel().unwrap());
        let hull = params.bid_hull();
        let mono = check_kernel_monotonicity_for(&reversed, hull, 300, 1).unwrap();
        assert!(!mono.pass);
        assert!(mono.witness.is_some());
        let scaling =
            check_scaling_invariance_for(&reversed, hull, &[0.5, 2.0, 10.0], 300, 1).unwrap();
        assert!(scaling.pass);
    }

    #[test]
    fn additive_shift_kernel_fails_scaling_only() {
        // K(x, y) = clamp(d - (x - y), 0, cap): right monotonicity directions
        // but not scale-free.
        struct Shift {
            demand: f64,
        }
        impl Kernel for Shift {
            fn eval(&self, own: f64, opp: f64) -> f64 {
                (self.demand - (own - opp)).clamp(0.0, 2.0 * self.demand)
            }
            fn partial_own(&self, _own: f64, _opp: f64) -> f64 {
                -1.0
            }
            fn cap(&self) -> f64 {
                2.0 * self.demand
            }
        }
        let shift = Shift { demand: 1.0 };
        let hull = Interval::new(0.9, 1.6).unwrap();
        let mono = check_kernel_monotonicity_for(&shift, hull, 300, 1).unwrap();
        assert!(mono.pass);
        let scaling = check_scaling_invariance_for(&shift, hull, &[0.5, 2.0], 300, 1).unwrap();
        assert!(!scaling.pass);
        assert!(scaling.witness.is_some());
    }

    #[test]
    fn reports_are_reproducible() {
        let params = reference_params();
        let a = run_pre_solve_checks(&params, 200, &[0.5, 2.0], 7).unwrap();
        let b = run_pre_solve_checks(&params, 200, &[0.5, 2.0], 7).unwrap();
        let ja = serde_json::to_string(&a).unwrap();
        let jb = serde_json::to_string(&b).unwrap();
        assert_eq!(ja, jb);
    }

    #[test]
    fn sweep_contract() {
        let ranges = SearchRanges::broad();
        // A single sample is evaluated when the budget is one.
        let one = feasibility_search(&ranges, 1, &[], 5, 1).unwrap();
        assert!(one.len() <= 1);
        assert!(feasibility_search(&ranges, 0, &[], 5, 1).is_err());
        // The open condition 2dr < 1 alone is easy to satisfy.
        let hits =
            feasibility_search(&ranges, 200, &[FlagId::DemandLossProduct], 5, 1).unwrap();
        assert!(!hits.is_empty());
        // Sorted by satisfied flags, descending.
        assert!(hits.windows(2).all(|w| w[0].satisfied >= w[1].satisfied));
    }
}
