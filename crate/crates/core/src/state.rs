//! Validated density operators and the subsystem operations on them.

use num_complex::Complex64;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::matrix::{eig_hermitian, ComplexMatrix};

/// Default validation tolerance.
pub const DEFAULT_TOL: f64 = 1e-9;

/// One of the two qubits of a bipartite system.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Subsystem {
    /// Qubit 1 (A), the most significant bit of the basis index.
    First,
    /// Qubit 2 (B).
    Second,
}

impl Subsystem {
    pub fn other(self) -> Self {
        match self {
            Subsystem::First => Subsystem::Second,
            Subsystem::Second => Subsystem::First,
        }
    }
}

/// Checks Hermiticity, unit trace and positivity of `m` at `tol`.
fn check_density(m: &ComplexMatrix, tol: f64) -> Result<()> {
    let herm = m.hermiticity_defect();
    if herm > tol {
        return Err(Error::NotHermitian(herm));
    }
    let trace_dev = (m.trace() - Complex64::new(1.0, 0.0)).norm();
    if trace_dev > tol {
        return Err(Error::TraceDeviation(trace_dev));
    }
    // symmetrize before the eigen solve; tol may exceed the solver's own check
    let sym = (*m + m.adjoint()).scale_real(0.5);
    let min = eig_hermitian(&sym)?[0];
    if min < -tol {
        return Err(Error::NegativeEigenvalue(min));
    }
    Ok(())
}

macro_rules! density_type {
    ($(#[$doc:meta])* $name:ident, $dim:expr) => {
        $(#[$doc])*
        #[derive(Clone, Copy, Debug, PartialEq)]
        pub struct $name {
            matrix: ComplexMatrix,
            tol: f64,
        }

        impl $name {
            /// Validates `matrix` at the default tolerance.
            pub fn new(matrix: ComplexMatrix) -> Result<Self> {
                Self::with_tol(matrix, DEFAULT_TOL)
            }

            pub fn with_tol(matrix: ComplexMatrix, tol: f64) -> Result<Self> {
                if matrix.dim() != $dim {
                    return Err(Error::DimensionMismatch(matrix.dim(), $dim));
                }
                check_density(&matrix, tol)?;
                Ok(Self { matrix, tol })
            }

            /// Wraps a matrix known to be a state by construction.
            pub(crate) fn trusted(matrix: ComplexMatrix) -> Self {
                debug_assert_eq!(matrix.dim(), $dim);
                Self { matrix, tol: DEFAULT_TOL }
            }

            pub fn matrix(&self) -> &ComplexMatrix {
                &self.matrix
            }

            pub fn tol(&self) -> f64 {
                self.tol
            }

            pub fn eigenvalues(&self) -> Vec<f64> {
                eig_hermitian(&self.matrix).expect("validated state is Hermitian")
            }
        }

        impl AsRef<ComplexMatrix> for $name {
            fn as_ref(&self) -> &ComplexMatrix {
                &self.matrix
            }
        }

        impl Serialize for $name {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                self.matrix.serialize(s)
            }
        }
    };
}

density_type!(
    /// A single-qubit density matrix.
    QubitState,
    2
);
density_type!(
    /// A two-qubit density matrix in the basis |00⟩, |01⟩, |10⟩, |11⟩.
    TwoQubitState,
    4
);

impl QubitState {
    /// ½(I + v·σ). Errors if |v| > 1 beyond tolerance.
    pub fn from_bloch(v: [f64; 3]) -> Result<Self> {
        let m = (crate::matrix::pauli::identity() + crate::matrix::pauli::dot(v)).scale_real(0.5);
        Self::new(m)
    }

    pub fn bloch_vector(&self) -> [f64; 3] {
        let m = &self.matrix;
        [2.0 * m[(0, 1)].re, -2.0 * m[(0, 1)].im, (m[(0, 0)] - m[(1, 1)]).re]
    }

    pub fn maximally_mixed() -> Self {
        Self::trusted(ComplexMatrix::identity(2).unwrap().scale_real(0.5))
    }
}

impl TwoQubitState {
    pub fn maximally_mixed() -> Self {
        Self::trusted(ComplexMatrix::identity(4).unwrap().scale_real(0.25))
    }

    /// |ψ⟩⟨ψ| for a normalized (or normalizable) 4-vector.
    pub fn from_pure(psi: &[Complex64; 4]) -> Result<Self> {
        let norm: f64 = psi.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            return Err(Error::TraceDeviation(1.0));
        }
        let v: Vec<Complex64> = psi.iter().map(|z| z / norm).collect();
        Self::new(ComplexMatrix::projector(&v)?)
    }

    pub fn reduced(&self, keep: Subsystem) -> QubitState {
        partial_trace(self, keep)
    }
}

/// A validated state of either size.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum State {
    Qubit(QubitState),
    TwoQubit(TwoQubitState),
}

impl AsRef<ComplexMatrix> for State {
    fn as_ref(&self) -> &ComplexMatrix {
        match self {
            State::Qubit(s) => s.matrix(),
            State::TwoQubit(s) => s.matrix(),
        }
    }
}

/// Validates a matrix as a density operator of the matching size.
pub fn validate_state(m: &ComplexMatrix, tol: f64) -> Result<State> {
    match m.dim() {
        2 => QubitState::with_tol(*m, tol).map(State::Qubit),
        4 => TwoQubitState::with_tol(*m, tol).map(State::TwoQubit),
        d => Err(Error::InvalidDimension(d)),
    }
}

pub fn tensor_product(a: &QubitState, b: &QubitState) -> TwoQubitState {
    TwoQubitState::trusted(a.matrix().kron(b.matrix()).expect("qubit dims"))
}

/// Reduced state of the `keep` qubit.
pub fn partial_trace(rho: &TwoQubitState, keep: Subsystem) -> QubitState {
    let m = rho.matrix();
    let mut out = ComplexMatrix::zeros(2).unwrap();
    for i in 0..2 {
        for j in 0..2 {
            out[(i, j)] = (0..2)
                .map(|k| match keep {
                    Subsystem::First => m[(2 * i + k, 2 * j + k)],
                    Subsystem::Second => m[(2 * k + i, 2 * k + j)],
                })
                .sum();
        }
    }
    QubitState::trusted(out)
}

/// Partial transpose on the given qubit. The result is Hermitian with unit
/// trace but need not be positive.
pub fn partial_transpose(rho: &TwoQubitState, subsystem: Subsystem) -> ComplexMatrix {
    partial_transpose_matrix(rho.matrix(), subsystem)
}

pub fn partial_transpose_matrix(m: &ComplexMatrix, subsystem: Subsystem) -> ComplexMatrix {
    let mut out = *m;
    for a in 0..2 {
        for b in 0..2 {
            for c in 0..2 {
                for d in 0..2 {
                    // element ⟨a b| m |c d⟩
                    let (row, col) = match subsystem {
                        Subsystem::First => (2 * c + b, 2 * a + d),
                        Subsystem::Second => (2 * a + d, 2 * c + b),
                    };
                    out[(2 * a + b, 2 * c + d)] = m[(row, col)];
                }
            }
        }
    }
    out
}

/// Uhlmann fidelity between two validated states.
pub fn fidelity(rho: &impl AsRef<ComplexMatrix>, sigma: &impl AsRef<ComplexMatrix>) -> Result<f64> {
    crate::matrix::fidelity(rho.as_ref(), sigma.as_ref())
}
