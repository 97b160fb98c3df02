//! Peres–Horodecki separability for two qubits, product-state detection and
//! the det M product-form condition.

use serde::{Deserialize, Serialize};

use crate::geometry::decompose;
use crate::linalg::singular_values3;
use crate::matrix::eig_hermitian;
use crate::state::{partial_trace, partial_transpose, tensor_product, Subsystem, TwoQubitState};

/// A PT eigenvalue must fall below −PPT_TOL to count as negative.
pub const PPT_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Separable,
    Entangled,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Separable => "separable",
            Verdict::Entangled => "entangled",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeparabilityVerdict {
    pub verdict: Verdict,
    pub min_pt_eigenvalue: f64,
    pub negativity_margin: f64,
}

impl SeparabilityVerdict {
    pub const CSV_HEADER: &'static str = "verdict,min_pt_eig";

    pub fn from_min_eigenvalue(min: f64) -> Self {
        let entangled = min < -PPT_TOL;
        SeparabilityVerdict {
            verdict: if entangled { Verdict::Entangled } else { Verdict::Separable },
            min_pt_eigenvalue: min,
            negativity_margin: if entangled { -min } else { 0.0 },
        }
    }

    pub fn is_separable(&self) -> bool {
        self.verdict == Verdict::Separable
    }

    pub fn csv_row(&self) -> String {
        format!("{},{}", self.verdict.as_str(), self.min_pt_eigenvalue)
    }
}

/// Smallest eigenvalue of the partial transpose on `subsystem`.
pub fn min_pt_eigenvalue(rho: &TwoQubitState, subsystem: Subsystem) -> f64 {
    eig_hermitian(&partial_transpose(rho, subsystem)).expect("partial transpose of a state is Hermitian")[0]
}

pub fn ppt_verdict(rho: &TwoQubitState) -> SeparabilityVerdict {
    SeparabilityVerdict::from_min_eigenvalue(min_pt_eigenvalue(rho, Subsystem::Second))
}

/// max|ρ − Tr₂ρ ⊗ Tr₁ρ| ≤ tol.
pub fn is_product(rho: &TwoQubitState, tol: f64) -> bool {
    let a = partial_trace(rho, Subsystem::First);
    let b = partial_trace(rho, Subsystem::Second);
    rho.matrix().max_abs_diff(tensor_product(&a, &b).matrix()) <= tol
}

/// det M = σ₁σ₂σ₃ over the singular values of T.
pub fn det_m(rho: &TwoQubitState) -> f64 {
    let d = decompose(rho).expect("validated state has real Pauli coefficients");
    singular_values3(&d.t).iter().product()
}
