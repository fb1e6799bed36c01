//! Observed convergence order from residuals at two step sizes.

use serde::{Deserialize, Serialize};

/// Residuals at or below this are treated as roundoff.
pub const ROUNDOFF_FLOOR: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Convergence {
    /// Residual at step `h`.
    pub coarse: f64,
    /// Residual at step `h/2`.
    pub fine: f64,
    pub ratio: f64,
    /// `log₂(coarse/fine)`, absent when both residuals are at the floor.
    pub order: Option<f64>,
    pub at_floor: bool,
}

impl Convergence {
    pub fn new(coarse: f64, fine: f64, floor: f64) -> Self {
        let at_floor = coarse <= floor && fine <= floor;
        let ratio = coarse / fine;
        Convergence {
            coarse,
            fine,
            ratio,
            order: (!at_floor).then(|| ratio.log2()),
            at_floor,
        }
    }

    /// Order within `target ± tol`, or both residuals at the floor.
    pub fn order_ok(&self, target: f64, tol: f64) -> bool {
        self.at_floor || self.order.is_some_and(|p| (p - target).abs() <= tol)
    }

    /// Ratio within `[lo, hi]`, or both residuals at the floor.
    pub fn ratio_ok(&self, lo: f64, hi: f64) -> bool {
        self.at_floor || (lo..=hi).contains(&self.ratio)
    }
}
