//! Named state families and seeded random states.

use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::channels::KrausSet;
use crate::error::{Error, Result};
use crate::matrix::{eigh, ComplexMatrix};
use crate::state::{tensor_product, QubitState, TwoQubitState};

/// Portable seeded generator used for every random family.
pub type StateRng = ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> StateRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// The four Bell states, indexed 0..=3.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bell {
    PhiPlus,
    PhiMinus,
    PsiPlus,
    PsiMinus,
}

impl Bell {
    pub const ALL: [Bell; 4] = [Bell::PhiPlus, Bell::PhiMinus, Bell::PsiPlus, Bell::PsiMinus];

    pub fn from_index(index: u8) -> Result<Self> {
        Self::ALL
            .get(index as usize)
            .copied()
            .ok_or_else(|| Error::InvalidSpec(format!("bell index {index} not in 0..=3")))
    }

    pub fn index(self) -> u8 {
        self as u8
    }

    pub fn vector(self) -> [Complex64; 4] {
        let h = Complex64::new(FRAC_1_SQRT_2, 0.0);
        let z = Complex64::new(0.0, 0.0);
        match self {
            Bell::PhiPlus => [h, z, z, h],
            Bell::PhiMinus => [h, z, z, -h],
            Bell::PsiPlus => [z, h, h, z],
            Bell::PsiMinus => [z, h, -h, z],
        }
    }
}

/// Recipe for a two-qubit state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StateSpec {
    Bell(Bell),
    /// cos θ|00⟩ + sin θ|11⟩, θ ∈ [0, π/2].
    Schmidt { theta: f64 },
    /// p·Φ⁺ + (1−p)·I/4, p ∈ [0, 1].
    Werner { p: f64 },
    RandomPure { seed: u64 },
    RandomMixed { seed: u64 },
    RandomProduct { seed: u64 },
}

impl StateSpec {
    pub fn validate(&self) -> Result<()> {
        match *self {
            StateSpec::Schmidt { theta } if !(0.0..=std::f64::consts::FRAC_PI_2).contains(&theta) => {
                Err(Error::InvalidSpec(format!("theta {theta} outside [0, pi/2]")))
            }
            StateSpec::Werner { p } if !(0.0..=1.0).contains(&p) => {
                Err(Error::InvalidSpec(format!("p {p} outside [0, 1]")))
            }
            _ => Ok(()),
        }
    }
}

impl fmt::Display for StateSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StateSpec::Bell(b) => write!(f, "bell:{}", b.index()),
            StateSpec::Schmidt { theta } => write!(f, "schmidt:{theta}"),
            StateSpec::Werner { p } => write!(f, "werner:{p}"),
            StateSpec::RandomPure { seed } => write!(f, "pure:{seed}"),
            StateSpec::RandomMixed { seed } => write!(f, "mixed:{seed}"),
            StateSpec::RandomProduct { seed } => write!(f, "product:{seed}"),
        }
    }
}

/// Parses `kind:value`, e.g. `schmidt:0.7854`, `bell:3`, `pure:42`.
impl FromStr for StateSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (kind, value) = s
            .split_once(':')
            .ok_or_else(|| Error::InvalidSpec(format!("expected kind:value, got {s:?}")))?;
        let bad = |what: &str| Error::InvalidSpec(format!("bad {what} {value:?}"));
        let spec = match kind {
            "bell" => StateSpec::Bell(Bell::from_index(value.parse().map_err(|_| bad("index"))?)?),
            "schmidt" => StateSpec::Schmidt {
                theta: value.parse().map_err(|_| bad("theta"))?,
            },
            "werner" => StateSpec::Werner {
                p: value.parse().map_err(|_| bad("p"))?,
            },
            "pure" => StateSpec::RandomPure {
                seed: value.parse().map_err(|_| bad("seed"))?,
            },
            "mixed" => StateSpec::RandomMixed {
                seed: value.parse().map_err(|_| bad("seed"))?,
            },
            "product" => StateSpec::RandomProduct {
                seed: value.parse().map_err(|_| bad("seed"))?,
            },
            other => return Err(Error::InvalidSpec(format!("unknown kind {other:?}"))),
        };
        spec.validate()?;
        Ok(spec)
    }
}

pub fn make_state(spec: &StateSpec) -> Result<TwoQubitState> {
    spec.validate()?;
    match *spec {
        StateSpec::Bell(b) => TwoQubitState::from_pure(&b.vector()),
        StateSpec::Schmidt { theta } => Ok(schmidt(theta)),
        StateSpec::Werner { p } => Ok(werner(p)),
        StateSpec::RandomPure { seed } => Ok(random_pure(&mut rng_from_seed(seed))),
        StateSpec::RandomMixed { seed } => Ok(random_mixed(&mut rng_from_seed(seed))),
        StateSpec::RandomProduct { seed } => Ok(random_product(&mut rng_from_seed(seed))),
    }
}

pub fn bell(b: Bell) -> TwoQubitState {
    TwoQubitState::from_pure(&b.vector()).expect("Bell vectors are normalized")
}

/// cos θ|00⟩ + sin θ|11⟩ as a density matrix, entries written directly.
pub fn schmidt(theta: f64) -> TwoQubitState {
    let (s, c) = theta.sin_cos();
    let mut m = ComplexMatrix::zeros(4).unwrap();
    m[(0, 0)] = Complex64::new(c * c, 0.0);
    m[(0, 3)] = Complex64::new(s * c, 0.0);
    m[(3, 0)] = Complex64::new(s * c, 0.0);
    m[(3, 3)] = Complex64::new(s * s, 0.0);
    TwoQubitState::new(m).expect("Schmidt family is a valid state")
}

pub fn werner(p: f64) -> TwoQubitState {
    let phi = *bell(Bell::PhiPlus).matrix();
    let mixed = ComplexMatrix::identity(4).unwrap().scale_real(0.25);
    TwoQubitState::new(phi.scale_real(p) + mixed.scale_real(1.0 - p)).expect("Werner state with p in [0,1]")
}

fn gaussian_complex<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Haar-random pure state from a normalized complex Gaussian vector.
pub fn random_pure<R: Rng + ?Sized>(rng: &mut R) -> TwoQubitState {
    loop {
        let psi: [Complex64; 4] = std::array::from_fn(|_| gaussian_complex(rng));
        if psi.iter().map(|z| z.norm_sqr()).sum::<f64>() > 1e-12 {
            return TwoQubitState::from_pure(&psi).expect("normalized vector");
        }
    }
}

/// G G† / Tr(G G†) for a complex Gaussian matrix G.
fn ginibre_state<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> ComplexMatrix {
    let entries: Vec<Complex64> = (0..dim * dim).map(|_| gaussian_complex(rng)).collect();
    let g = ComplexMatrix::from_entries(&entries).unwrap();
    let mut w = &g * &g.adjoint();
    w = (w + w.adjoint()).scale_real(0.5);
    let tr = w.trace().re;
    w.scale_real(1.0 / tr)
}

pub fn random_mixed<R: Rng + ?Sized>(rng: &mut R) -> TwoQubitState {
    TwoQubitState::new(ginibre_state(rng, 4)).expect("Ginibre state is valid")
}

pub fn random_qubit<R: Rng + ?Sized>(rng: &mut R) -> QubitState {
    QubitState::new(ginibre_state(rng, 2)).expect("Ginibre state is valid")
}

pub fn random_product<R: Rng + ?Sized>(rng: &mut R) -> TwoQubitState {
    let a = random_qubit(rng);
    let b = random_qubit(rng);
    tensor_product(&a, &b)
}

/// Haar-random element of SU(2) from a uniformly random unit quaternion.
pub fn random_unitary<R: Rng + ?Sized>(rng: &mut R) -> ComplexMatrix {
    let q: [f64; 4] = loop {
        let q: [f64; 4] = std::array::from_fn(|_| rng.sample(StandardNormal));
        let n = q.iter().map(|x| x * x).sum::<f64>().sqrt();
        if n > 1e-12 {
            break q.map(|x| x / n);
        }
    };
    let a = Complex64::new(q[0], q[1]);
    let b = Complex64::new(q[2], q[3]);
    ComplexMatrix::from_entries(&[a, -b.conj(), b, a.conj()]).unwrap()
}

/// A random CPTP qubit channel with `n` Kraus operators, cut from a random
/// isometry V = G (G†G)^(−1/2) with G a 2n×2 complex Gaussian matrix.
pub fn random_kraus<R: Rng + ?Sized>(rng: &mut R, n: usize) -> KrausSet {
    assert!(n >= 1);
    let g: Vec<[Complex64; 2]> = (0..2 * n).map(|_| [gaussian_complex(rng), gaussian_complex(rng)]).collect();
    let mut gram = ComplexMatrix::zeros(2).unwrap();
    for row in &g {
        for i in 0..2 {
            for j in 0..2 {
                gram[(i, j)] += row[i].conj() * row[j];
            }
        }
    }
    let (values, vectors) = eigh(&gram).expect("Gram matrix is Hermitian");
    let mut inv_sqrt = ComplexMatrix::zeros(2).unwrap();
    for (l, v) in values.iter().zip(&vectors) {
        for i in 0..2 {
            for j in 0..2 {
                inv_sqrt[(i, j)] += v[i] * v[j].conj() / l.sqrt();
            }
        }
    }
    let ops = (0..n)
        .map(|k| {
            let mut op = ComplexMatrix::zeros(2).unwrap();
            for r in 0..2 {
                for c in 0..2 {
                    op[(r, c)] = (0..2).map(|m| g[2 * k + r][m] * inv_sqrt[(m, c)]).sum();
                }
            }
            op
        })
        .collect();
    KrausSet::new(ops).expect("2x2 operators")
}

/// Hadamard gate.
pub fn hadamard() -> ComplexMatrix {
    let h = Complex64::new(FRAC_1_SQRT_2, 0.0);
    ComplexMatrix::from_entries(&[h, h, h, -h]).unwrap()
}

/// (U_A ⊗ U_B) ρ (U_A ⊗ U_B)†.
pub fn local_unitary(rho: &TwoQubitState, ua: &ComplexMatrix, ub: &ComplexMatrix) -> Result<TwoQubitState> {
    let u = ua.kron(ub)?;
    let mut out = u.conjugate(rho.matrix())?;
    out = (out + out.adjoint()).scale_real(0.5);
    TwoQubitState::new(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state::{partial_transpose, Subsystem};
    use std::f64::consts::FRAC_PI_4;

    #[test]
    fn schmidt_endpoints() {
        let s0 = make_state(&StateSpec::Schmidt { theta: 0.0 }).unwrap();
        let mut e00 = ComplexMatrix::zeros(4).unwrap();
        e00[(0, 0)] = Complex64::new(1.0, 0.0);
        assert!(s0.matrix().max_abs_diff(&e00) < 1e-15);
        let s = make_state(&StateSpec::Schmidt { theta: FRAC_PI_4 }).unwrap();
        assert!(s.matrix().max_abs_diff(bell(Bell::PhiPlus).matrix()) < 1e-15);
    }

    #[test]
    fn werner_third_sits_on_ppt_boundary() {
        let w = werner(1.0 / 3.0);
        let ev = crate::matrix::eig_hermitian(&partial_transpose(&w, Subsystem::Second)).unwrap();
        assert!(ev[0].abs() < 1e-15, "{}", ev[0]);
        // (1 + p)/4 threefold
        for &l in &ev[1..] {
            assert!((l - (1.0 + 1.0 / 3.0) / 4.0).abs() < 1e-15);
        }
    }

    #[test]
    fn invalid_specs_rejected() {
        assert!(make_state(&StateSpec::Schmidt { theta: 2.0 }).is_err());
        assert!(make_state(&StateSpec::Werner { p: -0.1 }).is_err());
        assert!("bell:4".parse::<StateSpec>().is_err());
        assert!("foo:1".parse::<StateSpec>().is_err());
        assert!("schmidt".parse::<StateSpec>().is_err());
    }

    #[test]
    fn random_kinds_are_deterministic() {
        for spec in [
            StateSpec::RandomPure { seed: 5 },
            StateSpec::RandomMixed { seed: 5 },
            StateSpec::RandomProduct { seed: 5 },
        ] {
            assert_eq!(make_state(&spec).unwrap(), make_state(&spec).unwrap());
        }
        assert_ne!(
            make_state(&StateSpec::RandomPure { seed: 1 }).unwrap(),
            make_state(&StateSpec::RandomPure { seed: 2 }).unwrap()
        );
    }

    #[test]
    fn random_pure_is_rank_one() {
        for seed in 0..200 {
            let ev = make_state(&StateSpec::RandomPure { seed }).unwrap().eigenvalues();
            assert!(ev[2] <= 1e-10, "seed {seed}: {ev:?}");
        }
    }

    #[test]
    fn random_kraus_is_complete() {
        let mut rng = rng_from_seed(8);
        for n in 1..=4 {
            for _ in 0..50 {
                assert!(random_kraus(&mut rng, n).completeness_defect() < 1e-12);
            }
        }
    }

    #[test]
    fn random_unitary_is_unitary() {
        let mut rng = rng_from_seed(3);
        for _ in 0..100 {
            let u = random_unitary(&mut rng);
            let id = ComplexMatrix::identity(2).unwrap();
            assert!((&u * &u.adjoint()).max_abs_diff(&id) < 1e-14);
        }
    }

    proptest::proptest! {
        #[test]
        fn spec_text_roundtrip(theta in 0.0..=std::f64::consts::FRAC_PI_2, p in 0.0..=1.0f64, seed: u64, idx in 0u8..4) {
            for spec in [
                StateSpec::Schmidt { theta },
                StateSpec::Werner { p },
                StateSpec::RandomMixed { seed },
                StateSpec::Bell(Bell::from_index(idx).unwrap()),
            ] {
                let back: StateSpec = spec.to_string().parse().unwrap();
                proptest::prop_assert_eq!(back, spec);
            }
        }
    }
}
