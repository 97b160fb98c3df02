//! Local qubit channels in operator-sum form and the reduction-factor
//! threshold machinery.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{pauli, ComplexMatrix};
use crate::state::{QubitState, TwoQubitState};

/// Allowed deviation of ΣK†K from the identity.
pub const COMPLETENESS_TOL: f64 = 1e-10;

/// A channel's Kraus operators (2×2).
#[derive(Debug, Clone, PartialEq)]
pub struct KrausSet {
    operators: Vec<ComplexMatrix>,
    completeness_defect: f64,
}

impl KrausSet {
    /// Accepts any non-empty list of 2×2 operators; completeness is
    /// measured here and enforced when the channel is applied.
    pub fn new(operators: Vec<ComplexMatrix>) -> Result<Self> {
        if operators.is_empty() {
            return Err(Error::IncompleteKrausSet(1.0));
        }
        if let Some(bad) = operators.iter().find(|k| k.dim() != 2) {
            return Err(Error::DimensionMismatch(bad.dim(), 2));
        }
        let mut sum = ComplexMatrix::zeros(2)?;
        for k in &operators {
            sum = sum + &k.adjoint() * k;
        }
        let completeness_defect = sum.max_abs_diff(&ComplexMatrix::identity(2)?);
        Ok(Self {
            operators,
            completeness_defect,
        })
    }

    pub fn identity() -> Self {
        Self::new(vec![pauli::identity()]).unwrap()
    }

    pub fn operators(&self) -> &[ComplexMatrix] {
        &self.operators
    }

    pub fn completeness_defect(&self) -> f64 {
        self.completeness_defect
    }

    fn ensure_complete(&self) -> Result<()> {
        if self.completeness_defect > COMPLETENESS_TOL {
            return Err(Error::IncompleteKrausSet(self.completeness_defect));
        }
        Ok(())
    }
}

/// ρ ↦ ηρ + (1−η)I/2 on one qubit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IsotropicChannel {
    eta: f64,
}

impl IsotropicChannel {
    pub fn new(eta: f64) -> Result<Self> {
        if !(-1.0 / 3.0..=1.0).contains(&eta) {
            return Err(Error::EtaOutOfRange(eta));
        }
        Ok(Self { eta })
    }

    pub fn eta(&self) -> f64 {
        self.eta
    }

    pub fn kraus(&self) -> KrausSet {
        isotropic_kraus(self.eta).expect("eta validated on construction")
    }
}

/// Depolarizing Kraus quadruple with Bloch shrink factor `eta`.
pub fn isotropic_kraus(eta: f64) -> Result<KrausSet> {
    if !(-1.0 / 3.0..=1.0).contains(&eta) {
        return Err(Error::EtaOutOfRange(eta));
    }
    let p0 = (1.0 + 3.0 * eta) / 4.0;
    let p = (1.0 - eta) / 4.0;
    KrausSet::new(vec![
        pauli::identity().scale_real(p0.max(0.0).sqrt()),
        pauli::x().scale_real(p.max(0.0).sqrt()),
        pauli::y().scale_real(p.max(0.0).sqrt()),
        pauli::z().scale_real(p.max(0.0).sqrt()),
    ])
}

/// Mixture of Pauli conjugations with probabilities (p₀, p₁, p₂, p₃); a
/// unital channel whose Bloch map is diagonal with no shift.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PauliMixture {
    p: [f64; 4],
}

impl PauliMixture {
    pub fn new(p: [f64; 4]) -> Result<Self> {
        if let Some(x) = p.iter().find(|x| !(**x >= 0.0)) {
            return Err(Error::InvalidProbabilities(format!("negative or NaN entry {x}")));
        }
        let sum: f64 = p.iter().sum();
        if (sum - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidProbabilities(format!("sum {sum} != 1")));
        }
        Ok(Self { p })
    }

    /// The mixture that acts as the isotropic channel with factor `eta`.
    pub fn isotropic(eta: f64) -> Result<Self> {
        if !(-1.0 / 3.0..=1.0).contains(&eta) {
            return Err(Error::EtaOutOfRange(eta));
        }
        let q = (1.0 - eta) / 4.0;
        Self::new([1.0 - 3.0 * q, q, q, q])
    }

    pub fn probabilities(&self) -> [f64; 4] {
        self.p
    }

    /// Diagonal of the induced Bloch matrix B.
    pub fn bloch_diagonal(&self) -> [f64; 3] {
        let [p0, p1, p2, p3] = self.p;
        [p0 + p1 - p2 - p3, p0 - p1 + p2 - p3, p0 - p1 - p2 + p3]
    }

    /// The Bloch shift; identically zero for Pauli mixtures.
    pub fn bloch_shift(&self) -> [f64; 3] {
        [0.0; 3]
    }
}

pub fn pauli_mixture_kraus(p: &PauliMixture) -> KrausSet {
    let [p0, p1, p2, p3] = p.p;
    KrausSet::new(vec![
        pauli::identity().scale_real(p0.sqrt()),
        pauli::x().scale_real(p1.sqrt()),
        pauli::y().scale_real(p2.sqrt()),
        pauli::z().scale_real(p3.sqrt()),
    ])
    .expect("probabilities validated")
}

fn hermitize(m: ComplexMatrix) -> ComplexMatrix {
    (m + m.adjoint()).scale_real(0.5)
}

/// ρ′ = Σᵢ Kᵢ ρ Kᵢ†.
pub fn apply_channel(k: &KrausSet, rho: &QubitState) -> Result<QubitState> {
    k.ensure_complete()?;
    let mut out = ComplexMatrix::zeros(2)?;
    for op in k.operators() {
        out = out + op.conjugate(rho.matrix())?;
    }
    QubitState::new(hermitize(out))
}

/// Σᵢⱼ (Aᵢ⊗Bⱼ) ρ (Aᵢ⊗Bⱼ)†.
pub fn apply_local(rho: &TwoQubitState, ka: &KrausSet, kb: &KrausSet) -> Result<TwoQubitState> {
    ka.ensure_complete()?;
    kb.ensure_complete()?;
    let mut out = ComplexMatrix::zeros(4)?;
    for a in ka.operators() {
        for b in kb.operators() {
            out = out + a.kron(b)?.conjugate(rho.matrix())?;
        }
    }
    TwoQubitState::new(hermitize(out))
}

/// Both qubits through isotropic channels.
pub fn apply_isotropic(rho: &TwoQubitState, eta1: f64, eta2: f64) -> Result<TwoQubitState> {
    apply_local(rho, &isotropic_kraus(eta1)?, &isotropic_kraus(eta2)?)
}

/// Q = (η₁ + η₂)/2.
pub fn quality_factor(eta1: f64, eta2: f64) -> f64 {
    (eta1 + eta2) / 2.0
}

/// The disentangling threshold η₁η₂ ≤ 1/3 (with 1e−12 slack).
pub fn threshold_ok(eta1: f64, eta2: f64) -> bool {
    eta1 * eta2 <= 1.0 / 3.0 + 1e-12
}

/// [1−η₁η₂+(η₁−η₂)s][1−η₁η₂−(η₁−η₂)s] − 4η₁²η₂²t² with s = cos 2θ and
/// t = sin 2θ: the determinant (×16) of the central block of the partial
/// transpose of the channel output on cos θ|00⟩ + sin θ|11⟩. Non-negative
/// exactly when that output is separable.
pub fn analytic_ppt_margin(theta: f64, eta1: f64, eta2: f64) -> f64 {
    let (t, s) = (2.0 * theta).sin_cos();
    let prod = eta1 * eta2;
    let diff = (eta1 - eta2) * s;
    (1.0 - prod + diff) * (1.0 - prod - diff) - 4.0 * prod * prod * t * t
}

/// Uniform grid of `steps` angles on [0, π/2].
pub fn theta_grid(steps: usize) -> impl Iterator<Item = f64> {
    let h = std::f64::consts::FRAC_PI_2 / (steps - 1) as f64;
    (0..steps).map(move |i| i as f64 * h)
}

/// Minimum of [`analytic_ppt_margin`] over a uniform θ grid.
pub fn worst_case_margin(eta1: f64, eta2: f64, theta_steps: usize) -> f64 {
    assert!(theta_steps >= 2, "theta_steps must be at least 2");
    theta_grid(theta_steps)
        .map(|th| analytic_ppt_margin(th, eta1, eta2))
        .fold(f64::INFINITY, f64::min)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factory::{bell, schmidt, werner, Bell};
    use crate::geometry::decompose;
    use num_complex::Complex64;
    use std::f64::consts::{FRAC_PI_4, PI};

    #[test]
    fn isotropic_endpoints() {
        let id = isotropic_kraus(1.0).unwrap();
        assert!(id.operators()[1..].iter().all(|k| k.max_abs_diff(&ComplexMatrix::zeros(2).unwrap()) == 0.0));
        let zero = QubitState::from_bloch([0.0, 0.0, 1.0]).unwrap();
        let out = apply_channel(&isotropic_kraus(0.0).unwrap(), &zero).unwrap();
        assert!(out.matrix().max_abs_diff(QubitState::maximally_mixed().matrix()) < 1e-15);
        let out = apply_channel(&isotropic_kraus(1.0 / 3.0).unwrap(), &zero).unwrap();
        let expected = ComplexMatrix::from_real_diag(&[2.0 / 3.0, 1.0 / 3.0]).unwrap();
        assert!(out.matrix().max_abs_diff(&expected) < 1e-15);
        assert!(matches!(isotropic_kraus(1.01), Err(Error::EtaOutOfRange(_))));
        assert!(matches!(isotropic_kraus(-0.34), Err(Error::EtaOutOfRange(_))));
        assert!(isotropic_kraus(-1.0 / 3.0).unwrap().completeness_defect() < 1e-15);
    }

    #[test]
    fn isotropic_shrinks_bloch_vectors() {
        for eta in [-1.0 / 3.0, 0.0, 0.25, 0.7, 1.0] {
            let k = isotropic_kraus(eta).unwrap();
            let v = [0.3, -0.5, 0.6];
            let out = apply_channel(&k, &QubitState::from_bloch(v).unwrap()).unwrap();
            let w = out.bloch_vector();
            for i in 0..3 {
                assert!((w[i] - eta * v[i]).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn incomplete_set_rejected() {
        let k = KrausSet::new(vec![pauli::identity().scale_real(0.5)]).unwrap();
        assert!((k.completeness_defect() - 0.75).abs() < 1e-15);
        let q = QubitState::maximally_mixed();
        assert!(matches!(apply_channel(&k, &q), Err(Error::IncompleteKrausSet(_))));
        let rho = TwoQubitState::maximally_mixed();
        assert!(matches!(apply_local(&rho, &KrausSet::identity(), &k), Err(Error::IncompleteKrausSet(_))));
        assert!(KrausSet::new(vec![]).is_err());
    }

    #[test]
    fn pauli_mixtures() {
        let q = QubitState::from_bloch([0.1, 0.2, 0.3]).unwrap();
        let twirl = PauliMixture::new([0.25; 4]).unwrap();
        assert_eq!(twirl.bloch_diagonal(), [0.0; 3]);
        let out = apply_channel(&pauli_mixture_kraus(&twirl), &q).unwrap();
        assert!(out.matrix().max_abs_diff(QubitState::maximally_mixed().matrix()) < 1e-15);
        let id = PauliMixture::new([1.0, 0.0, 0.0, 0.0]).unwrap();
        assert_eq!(id.bloch_diagonal(), [1.0; 3]);
        assert!(apply_channel(&pauli_mixture_kraus(&id), &q).unwrap().matrix().max_abs_diff(q.matrix()) < 1e-15);
        for eta in [0.0, 0.3, 0.9] {
            let iso = PauliMixture::isotropic(eta).unwrap();
            for b in iso.bloch_diagonal() {
                assert!((b - eta).abs() < 1e-15);
            }
            let a = apply_channel(&pauli_mixture_kraus(&iso), &q).unwrap();
            let b = apply_channel(&isotropic_kraus(eta).unwrap(), &q).unwrap();
            assert!(a.matrix().max_abs_diff(b.matrix()) < 1e-15);
        }
        assert!(PauliMixture::new([0.5, 0.6, -0.1, 0.0]).is_err());
        assert!(PauliMixture::new([0.5, 0.4, 0.0, 0.0]).is_err());
    }

    #[test]
    fn bell_through_isotropic_is_werner() {
        for (e1, e2) in [(1.0, 1.0 / 3.0), (0.5, 0.5), (0.9, 0.2)] {
            let out = apply_isotropic(&bell(Bell::PhiPlus), e1, e2).unwrap();
            assert!(out.matrix().max_abs_diff(werner(e1 * e2).matrix()) < 1e-15);
        }
        let rho = bell(Bell::PsiMinus);
        let same = apply_local(&rho, &KrausSet::identity(), &KrausSet::identity()).unwrap();
        assert_eq!(same.matrix(), rho.matrix());
    }

    #[test]
    fn schmidt_output_matches_closed_form_matrix() {
        for (th, e1, e2) in [(PI / 6.0, 0.8, 0.5), (0.3, 1.0, 0.2), (1.2, 0.4, 0.9)] {
            let out = apply_isotropic(&schmidt(th), e1, e2).unwrap();
            let (t, s) = (2.0 * th).sin_cos();
            let p = e1 * e2;
            let diag = [
                1.0 + p + (e1 + e2) * s,
                1.0 - p + (e1 - e2) * s,
                1.0 - p - (e1 - e2) * s,
                1.0 + p - (e1 + e2) * s,
            ];
            let mut expected = ComplexMatrix::from_real_diag(&diag).unwrap();
            expected[(0, 3)] = Complex64::new(2.0 * p * t, 0.0);
            expected[(3, 0)] = Complex64::new(2.0 * p * t, 0.0);
            assert!(out.matrix().max_abs_diff(&expected.scale_real(0.25)) < 1e-15);
            // structure of the decomposition
            let d0 = decompose(&schmidt(th)).unwrap();
            let d1 = decompose(&out).unwrap();
            for i in 0..3 {
                assert!((d1.r[i] - e1 * d0.r[i]).abs() < 1e-15);
                assert!((d1.s[i] - e2 * d0.s[i]).abs() < 1e-15);
                for j in 0..3 {
                    assert!((d1.t[i][j] - p * d0.t[i][j]).abs() < 1e-15);
                }
            }
        }
    }

    #[test]
    fn quality_and_threshold() {
        assert!((quality_factor(1.0, 1.0 / 3.0) - 2.0 / 3.0).abs() < 1e-15);
        assert_eq!(quality_factor(0.0, 0.0), 0.0);
        let r = 1.0 / 3.0f64.sqrt();
        assert!((quality_factor(r, r) - 0.577_350_269_189_625_8).abs() < 1e-15);
        assert!(threshold_ok(1.0, 1.0 / 3.0));
        assert!(!threshold_ok(1.0, 1.0));
        assert!(threshold_ok(0.6, 0.5));
    }

    #[test]
    fn analytic_margin_examples() {
        assert!(analytic_ppt_margin(FRAC_PI_4, 1.0, 1.0 / 3.0).abs() < 1e-15);
        assert!((analytic_ppt_margin(FRAC_PI_4, 0.5, 0.5) - 0.3125).abs() < 1e-15);
        assert!((analytic_ppt_margin(FRAC_PI_4, 1.0, 0.4) + 0.28).abs() < 1e-15);
    }

    #[test]
    fn worst_case_examples() {
        assert!(worst_case_margin(1.0, 1.0 / 3.0, 181).abs() < 1e-12);
        for steps in [2, 3, 91, 181] {
            assert!(worst_case_margin(0.5, 0.5, steps) > 0.0);
        }
        assert!((worst_case_margin(1.0, 1.0, 181) + 4.0).abs() < 1e-12);
    }
}
