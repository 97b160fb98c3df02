//! Ideal disentanglement by dephasing qubit B.
//!
//! Dephasing B in an orthonormal basis {|k⟩}, ρ ↦ Σₖ (I⊗Pₖ) ρ (I⊗Pₖ), is the
//! net effect of a CNOT from B onto a fresh ancilla followed by tracing the
//! ancilla out. The output Σₖ ωₖ ρ_A⁽ᵏ⁾ ⊗ |k⟩⟨k| is classical-quantum and
//! hence separable; Tr_B is always preserved, and Tr_A is preserved whenever
//! the basis diagonalizes ρ_B. A family of states whose ρ_B commute share
//! such a basis, so one fixed operation disentangles all of them.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::profile;
use crate::matrix::{eigh, ComplexMatrix};
use crate::separability::{ppt_verdict, SeparabilityVerdict};
use crate::state::{partial_trace, QubitState, Subsystem, TwoQubitState};

/// Reduced states whose eigenvalues differ by no more than this are
/// treated as degenerate (ρ_B = I/2).
pub const DEGENERACY_TOL: f64 = 1e-9;

/// Default tolerance on reduced-state deltas for an ideal verdict.
pub const IDEAL_TOL: f64 = 1e-10;

/// An orthonormal single-qubit basis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QubitBasis {
    vectors: [[Complex64; 2]; 2],
}

impl QubitBasis {
    pub fn new(vectors: [[Complex64; 2]; 2]) -> Result<Self> {
        let ip = |a: &[Complex64; 2], b: &[Complex64; 2]| a[0].conj() * b[0] + a[1].conj() * b[1];
        let [u, v] = &vectors;
        let dev = (ip(u, u) - 1.0)
            .norm()
            .max((ip(v, v) - 1.0).norm())
            .max(ip(u, v).norm());
        if dev > 1e-10 {
            return Err(Error::NonOrthonormalBasis(dev));
        }
        Ok(Self { vectors })
    }

    pub fn computational() -> Self {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        Self {
            vectors: [[one, zero], [zero, one]],
        }
    }

    /// Eigenbasis of a qubit state, descending eigenvalue first; the
    /// computational basis when the spectrum is degenerate.
    pub fn eigenbasis(rho: &QubitState) -> Self {
        match Self::nondegenerate_eigenbasis(rho) {
            Some(b) => b,
            None => Self::computational(),
        }
    }

    fn nondegenerate_eigenbasis(rho: &QubitState) -> Option<Self> {
        let (values, vectors) = eigh(rho.matrix()).expect("validated state is Hermitian");
        if (values[1] - values[0]).abs() <= DEGENERACY_TOL {
            return None;
        }
        let v = |k: usize| [vectors[k][0], vectors[k][1]];
        Some(Self {
            vectors: [v(1), v(0)],
        })
    }

    pub fn vectors(&self) -> &[[Complex64; 2]; 2] {
        &self.vectors
    }

    fn projectors(&self) -> [ComplexMatrix; 2] {
        self.vectors.map(|v| ComplexMatrix::projector(&v).unwrap())
    }
}

/// One term ω ρ_A ⊗ ρ_B of a separable decomposition.
#[derive(Debug, Clone, Serialize)]
pub struct ProductTerm {
    pub weight: f64,
    pub a: QubitState,
    pub b: QubitState,
}

#[derive(Debug, Clone, Serialize)]
pub struct DisentanglementReport {
    /// max-entry deviation of Tr_B (qubit A's state) before vs after.
    pub reduced_a_delta: f64,
    /// max-entry deviation of Tr_A (qubit B's state) before vs after.
    pub reduced_b_delta: f64,
    pub verdict: SeparabilityVerdict,
    pub ic_before: f64,
    pub ic_after: f64,
    pub product_weights: Vec<ProductTerm>,
}

impl DisentanglementReport {
    /// Reduced states preserved within `tol` and the output separable.
    pub fn is_ideal(&self, tol: f64) -> bool {
        self.reduced_a_delta <= tol && self.reduced_b_delta <= tol && self.verdict.is_separable()
    }
}

/// max|ab − ba| ≤ tol.
pub fn commuting(a: &QubitState, b: &QubitState, tol: f64) -> bool {
    let ab = a.matrix() * b.matrix();
    let ba = b.matrix() * a.matrix();
    ab.max_abs_diff(&ba) <= tol
}

/// Dephases qubit B in `basis` (default: eigenbasis of Tr_A ρ) and reports
/// how well the reduced states survived.
pub fn dephase_disentangle(
    rho: &TwoQubitState,
    basis: Option<&QubitBasis>,
) -> Result<(TwoQubitState, DisentanglementReport)> {
    let basis = match basis {
        Some(b) => *b,
        None => QubitBasis::eigenbasis(&partial_trace(rho, Subsystem::Second)),
    };
    let id = ComplexMatrix::identity(2)?;
    let mut out = ComplexMatrix::zeros(4)?;
    let mut terms = Vec::with_capacity(2);
    for (proj, v) in basis.projectors().iter().zip(basis.vectors()) {
        let branch = id.kron(proj)?.conjugate(rho.matrix())?;
        let weight = branch.trace().re;
        out = out + branch;
        if weight > 1e-15 {
            let a = TwoQubitState::trusted(branch.scale_real(1.0 / weight)).reduced(Subsystem::First);
            let b = QubitState::new(ComplexMatrix::projector(v)?)?;
            terms.push(ProductTerm { weight, a, b });
        }
    }
    let out = TwoQubitState::new((out + out.adjoint()).scale_real(0.5))?;

    let before_a = partial_trace(rho, Subsystem::First);
    let before_b = partial_trace(rho, Subsystem::Second);
    let report = DisentanglementReport {
        reduced_a_delta: partial_trace(&out, Subsystem::First)
            .matrix()
            .max_abs_diff(before_a.matrix()),
        reduced_b_delta: partial_trace(&out, Subsystem::Second)
            .matrix()
            .max_abs_diff(before_b.matrix()),
        verdict: ppt_verdict(&out),
        ic_before: profile(rho)?.ic,
        ic_after: profile(&out)?.ic,
        product_weights: terms,
    };
    Ok((out, report))
}

#[derive(Debug, Clone, Serialize)]
pub struct BatchReport {
    pub commuting_family: bool,
    /// First pair (by index) whose reduced B states fail to commute.
    pub failing_pair: Option<(usize, usize)>,
    pub all_ideal: bool,
    pub reports: Vec<DisentanglementReport>,
}

/// Applies one dephasing operation to every state: the basis comes from the
/// first non-degenerate ρ_B (computational if all are degenerate). When the
/// family does not commute, the same operation is still applied and the
/// reports show where it falls short.
pub fn batch_ideal_check(states: &[TwoQubitState], tol: f64) -> Result<BatchReport> {
    if states.is_empty() {
        return Err(Error::InvalidSpec("empty state list".into()));
    }
    let reduced: Vec<QubitState> = states.iter().map(|s| partial_trace(s, Subsystem::Second)).collect();
    let mut failing_pair = None;
    'outer: for i in 0..reduced.len() {
        for j in (i + 1)..reduced.len() {
            if !commuting(&reduced[i], &reduced[j], tol) {
                failing_pair = Some((i, j));
                break 'outer;
            }
        }
    }
    let basis = reduced
        .iter()
        .find_map(QubitBasis::nondegenerate_eigenbasis)
        .unwrap_or_else(QubitBasis::computational);
    let reports = states
        .iter()
        .map(|s| dephase_disentangle(s, Some(&basis)).map(|(_, r)| r))
        .collect::<Result<Vec<_>>>()?;
    let commuting_family = failing_pair.is_none();
    let all_ideal = commuting_family && reports.iter().all(|r| r.is_ideal(tol));
    Ok(BatchReport {
        commuting_family,
        failing_pair,
        all_ideal,
        reports,
    })
}
