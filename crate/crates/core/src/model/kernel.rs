//! The two-node dispatch kernel: the quantity the market operator asks a
//! bidder to deliver given both marginal-price bids. Demand `d` at each node,
//! quadratic line losses with coefficient `r`.

use crate::error::{Error, Result};

/// Interior-branch allocation for the bidder posting `x` against `y`:
/// `d + u^2/(2r) - u/r` with `u = (x - y)/(x + y)`.
///
/// The allocation depends on the bids only through `u`, so it is invariant
/// under scaling both bids by the same positive factor.
pub fn interior_allocation(x: f64, y: f64, d: f64, r: f64) -> Result<f64> {
    if !(x + y > 0.0) {
        return Err(Error::NonPositiveBidSum { x, y });
    }
    if !(r > 0.0) {
        return Err(Error::NonPositiveMarket {
            demand: d,
            loss_coeff: r,
        });
    }
    let u = (x - y) / (x + y);
    Ok(d + u * u / (2.0 * r) - u / r)
}

/// Own-bid derivative of [`interior_allocation`]: `-4y^2 / (r (x + y)^3)`.
/// Strictly negative for positive bids.
pub fn interior_own_derivative(x: f64, y: f64, r: f64) -> Result<f64> {
    if !(x + y > 0.0) {
        return Err(Error::NonPositiveBidSum { x, y });
    }
    if !(r > 0.0) {
        return Err(Error::NonPositiveMarket {
            demand: f64::NAN,
            loss_coeff: r,
        });
    }
    let s = x + y;
    Ok(-4.0 * y * y / (r * s * s * s))
}

/// Corner allocation when the opponent is priced out: the single remaining
/// bidder covers both demands plus line losses.
///
/// Computed as `4d / (1 + sqrt(1 - 2dr))`, the conjugate form of
/// `2(1 - sqrt(1 - 2dr))/r`, which stays accurate as `d` or `r` go to zero.
pub fn corner_allocation(d: f64, r: f64) -> Result<f64> {
    let disc = 1.0 - 2.0 * d * r;
    if disc < 0.0 {
        return Err(Error::CornerUndefined {
            demand: d,
            loss_coeff: r,
        });
    }
    Ok(4.0 * d / (1.0 + disc.sqrt()))
}

/// Demand response `K`: maps an own bid and the (single) opponent bid to the
/// quantity the bidder must deliver, inside `[0, cap]`.
///
/// Implementations must be deterministic and require strictly positive bids.
pub trait Kernel: Sync {
    /// Quantity allocated to the bidder posting `own` against `opp`.
    fn eval(&self, own: f64, opp: f64) -> f64;

    /// One-sided own-bid derivative of [`Kernel::eval`] on the active branch.
    fn partial_own(&self, own: f64, opp: f64) -> f64;

    /// Upper bound of the allocation range.
    fn cap(&self) -> f64;
}

/// The two-node electricity dispatch kernel with its three branches:
/// the interior split, zero when the bidder is priced out, and the corner
/// allocation when the opponent is priced out.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ElectricityKernel {
    demand: f64,
    loss_coeff: f64,
    corner: f64,
}

impl ElectricityKernel {
    pub fn new(demand: f64, loss_coeff: f64) -> Result<Self> {
        if !(demand > 0.0) || !(loss_coeff > 0.0) {
            return Err(Error::NonPositiveMarket { demand, loss_coeff });
        }
        let corner = corner_allocation(demand, loss_coeff)?;
        Ok(Self {
            demand,
            loss_coeff,
            corner,
        })
    }

    pub fn demand(&self) -> f64 {
        self.demand
    }

    pub fn loss_coeff(&self) -> f64 {
        self.loss_coeff
    }

    fn interior(&self, x: f64, y: f64) -> f64 {
        let u = (x - y) / (x + y);
        self.demand + u * u / (2.0 * self.loss_coeff) - u / self.loss_coeff
    }
}

impl Kernel for ElectricityKernel {
    fn eval(&self, own: f64, opp: f64) -> f64 {
        assert!(own + opp > 0.0, "bids must have a positive sum");
        let f_own = self.interior(own, opp);
        if f_own < 0.0 {
            return 0.0; // priced out
        }
        let f_opp = self.interior(opp, own);
        if f_opp < 0.0 {
            return self.corner; // opponent priced out
        }
        f_own
    }

    fn partial_own(&self, own: f64, opp: f64) -> f64 {
        assert!(own + opp > 0.0, "bids must have a positive sum");
        let f_own = self.interior(own, opp);
        if f_own < 0.0 {
            return 0.0;
        }
        let f_opp = self.interior(opp, own);
        if f_opp < 0.0 {
            return 0.0; // corner allocation is flat in the own bid
        }
        let s = own + opp;
        -4.0 * opp * opp / (self.loss_coeff * s * s * s)
    }

    fn cap(&self) -> f64 {
        self.corner
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn equal_bids_split_the_demand() {
        // Both correction terms vanish at x = y.
        assert!((interior_allocation(1.0, 1.0, 1.0, 0.4).unwrap() - 1.0).abs() < 1e-15);
        assert!((interior_allocation(3.7, 3.7, 2.5, 0.1).unwrap() - 2.5).abs() < 1e-12);
    }

    #[test]
    fn interior_allocation_hand_value() {
        // u = 0.3/3.3, d = 1, r = 0.2
        let got = interior_allocation(1.8, 1.5, 1.0, 0.2).unwrap();
        assert!((got - 0.5661157024793389).abs() < 1e-12);
    }

    #[test]
    fn interior_allocation_rejects_nonpositive_bid_sum() {
        assert!(matches!(
            interior_allocation(0.0, 0.0, 1.0, 0.1),
            Err(Error::NonPositiveBidSum { .. })
        ));
        assert!(matches!(
            interior_allocation(1.0, -1.0, 1.0, 0.1),
            Err(Error::NonPositiveBidSum { .. })
        ));
    }

    #[test]
    fn corner_allocation_hand_value() {
        let got = corner_allocation(1.0, 0.4).unwrap();
        assert!((got - 2.7639320225002103).abs() < 1e-12);
        // Covers both demands plus losses.
        assert!(got >= 2.0);
    }

    #[test]
    fn corner_allocation_limits() {
        assert_eq!(corner_allocation(0.0, 0.7).unwrap(), 0.0);
        // First-order in d r: qbar -> 2d as r -> 0+.
        let got = corner_allocation(1.0, 1e-8).unwrap();
        assert!((got - 2.0).abs() < 1e-6);
        assert!(matches!(
            corner_allocation(1.0, 0.51),
            Err(Error::CornerUndefined { .. })
        ));
    }

    #[test]
    fn eval_branches() {
        let kernel = ElectricityKernel::new(1.0, 0.2).unwrap();
        // Equal bids: interior branch, K = d.
        assert!((kernel.eval(1.3, 1.3) - 1.0).abs() < 1e-15);
        // Own bid double the opponent's: u = 1/3 > 1 - sqrt(0.6), priced out.
        assert_eq!(kernel.eval(2.0, 1.0), 0.0);
        // Mirror pair: the opponent is priced out, corner allocation.
        assert_eq!(kernel.eval(1.0, 2.0), kernel.cap());
        // Interior hand value; the mirror allocation is positive there.
        assert!((kernel.eval(1.8, 1.5) - 0.5661157024793389).abs() < 1e-12);
        assert!(kernel.eval(1.5, 1.8) > 0.0);
    }

    #[test]
    fn partial_own_symmetric_point() {
        let kernel = ElectricityKernel::new(1.0, 0.2).unwrap();
        // -1/(2 r y) at x = y.
        let y = 1.4;
        let want = -1.0 / (2.0 * 0.2 * y);
        assert!((kernel.partial_own(y, y) - want).abs() < 1e-12);
        assert!(kernel.partial_own(1.8, 1.5) < 0.0);
    }

    #[test]
    fn partial_own_is_zero_off_the_interior_branch() {
        let kernel = ElectricityKernel::new(1.0, 0.2).unwrap();
        assert_eq!(kernel.partial_own(2.0, 1.0), 0.0);
        assert_eq!(kernel.partial_own(1.0, 2.0), 0.0);
    }
}
