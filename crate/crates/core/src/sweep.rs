//! Grid check of the η₁η₂ ≤ 1/3 threshold: the analytic PPT margin against
//! numerically channelled Schmidt states.

use serde::Serialize;

use crate::channels::{analytic_ppt_margin, apply_isotropic, theta_grid, threshold_ok, worst_case_margin};
use crate::error::Result;
use crate::factory::schmidt;
use crate::separability::ppt_verdict;

/// Points with |η₁η₂ − 1/3| below this are excluded from disagreement counts.
pub const BOUNDARY_BAND: f64 = 1e-3;
/// Analytic margins smaller than this in magnitude are not sign-compared.
pub const MARGIN_RESOLUTION: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepRow {
    pub eta1: f64,
    pub eta2: f64,
    pub product: f64,
    pub worst_margin: f64,
    /// Every channelled Schmidt state on the θ grid is PPT.
    pub ppt_all_theta: bool,
    pub threshold_predict: bool,
    pub agree: bool,
}

impl SweepRow {
    pub const CSV_HEADER: &'static str = "eta1,eta2,product,worst_margin,ppt_all_theta,threshold_predict,agree";

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{}",
            self.eta1, self.eta2, self.product, self.worst_margin, self.ppt_all_theta, self.threshold_predict, self.agree
        )
    }

    pub fn in_boundary_band(&self) -> bool {
        (self.product - 1.0 / 3.0).abs() < BOUNDARY_BAND
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepResult {
    /// Sorted by η₁, then η₂.
    pub rows: Vec<SweepRow>,
    /// Rows outside the boundary band where the PPT scan and the threshold disagree.
    pub disagreements: usize,
    /// (η₁, η₂, θ) points where sign(analytic margin) and the numerical PPT
    /// verdict differ while |margin| > [`MARGIN_RESOLUTION`].
    pub oracle_mismatches: usize,
    /// Points compared for `oracle_mismatches`.
    pub oracle_compared: usize,
}

/// Uniform grid of `steps` points on [0, 1].
pub fn eta_grid(steps: usize) -> Vec<f64> {
    (0..steps).map(|i| i as f64 / (steps - 1) as f64).collect()
}

pub fn threshold_sweep(eta_steps: usize, theta_steps: usize) -> Result<SweepResult> {
    assert!(eta_steps >= 2 && theta_steps >= 2, "grids need at least two points");
    let etas = eta_grid(eta_steps);
    let thetas: Vec<f64> = theta_grid(theta_steps).collect();
    let states: Vec<_> = thetas.iter().map(|&th| schmidt(th)).collect();

    let mut rows = Vec::with_capacity(eta_steps * eta_steps);
    let mut oracle_mismatches = 0;
    let mut oracle_compared = 0;
    for &eta1 in &etas {
        for &eta2 in &etas {
            let mut ppt_all = true;
            for (&th, rho) in thetas.iter().zip(&states) {
                let separable = ppt_verdict(&apply_isotropic(rho, eta1, eta2)?).is_separable();
                ppt_all &= separable;
                let margin = analytic_ppt_margin(th, eta1, eta2);
                if margin.abs() > MARGIN_RESOLUTION {
                    oracle_compared += 1;
                    if (margin > 0.0) != separable {
                        oracle_mismatches += 1;
                    }
                }
            }
            let predict = threshold_ok(eta1, eta2);
            rows.push(SweepRow {
                eta1,
                eta2,
                product: eta1 * eta2,
                worst_margin: worst_case_margin(eta1, eta2, theta_steps),
                ppt_all_theta: ppt_all,
                threshold_predict: predict,
                agree: ppt_all == predict,
            });
        }
    }
    let disagreements = rows.iter().filter(|r| !r.agree && !r.in_boundary_band()).count();
    Ok(SweepResult {
        rows,
        disagreements,
        oracle_mismatches,
        oracle_compared,
    })
}
