//! Hilbert–Schmidt (Pauli) decomposition and the correlation geometry built
//! on the 3×3 correlation matrix `T`: singular values, the canonical
//! characteristic vector, the fully entangled fraction and the
//! inseparability correlation coefficient.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{det3, singular_values3};
use crate::matrix::{eig_hermitian, pauli, ComplexMatrix};
use crate::state::{TwoQubitState, DEFAULT_TOL};

/// Imaginary parts above this signal an unphysical input.
const IMAG_ERROR: f64 = 1e-8;

/// ρ = ¼(I⊗I + r·σ⊗I + I⊗s·σ + Σ t_mn σ_m⊗σ_n).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BlochDecomposition {
    pub r: [f64; 3],
    pub s: [f64; 3],
    pub t: [[f64; 3]; 3],
}

/// Which side of the plane N = 1 the state's correlations fall on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CorrelationRegion {
    SeparabilityCorrelation,
    InseparabilityCorrelation,
}

impl CorrelationRegion {
    pub fn as_str(self) -> &'static str {
        match self {
            CorrelationRegion::SeparabilityCorrelation => "separability_correlation",
            CorrelationRegion::InseparabilityCorrelation => "inseparability_correlation",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CorrelationProfile {
    /// Singular values of T, descending (the spectrum of M = √(TTᵀ)).
    pub m: [f64; 3],
    /// Canonical signed characteristic vector.
    pub t_canonical: [f64; 3],
    /// Tr M.
    #[serde(rename = "N")]
    pub n: f64,
    /// Fully entangled fraction (1 + N)/4.
    pub f: f64,
    /// Inseparability correlation coefficient max(0, N − 1).
    #[serde(rename = "Ic")]
    pub ic: f64,
    pub region: CorrelationRegion,
}

impl CorrelationProfile {
    pub const CSV_HEADER: &'static str = "sigma1,sigma2,sigma3,t1,t2,t3,N,f,Ic,region";

    pub fn csv_row(&self) -> String {
        let [s1, s2, s3] = self.m;
        let [t1, t2, t3] = self.t_canonical;
        format!(
            "{s1},{s2},{s3},{t1},{t2},{t3},{},{},{},{}",
            self.n,
            self.f,
            self.ic,
            self.region.as_str()
        )
    }
}

fn pauli_basis() -> [ComplexMatrix; 4] {
    [pauli::identity(), pauli::x(), pauli::y(), pauli::z()]
}

/// Tr(ρ P) where P = σ_a ⊗ σ_b (index 0 is the identity).
fn expectation(rho: &ComplexMatrix, p: &ComplexMatrix) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..4 {
        for k in 0..4 {
            acc += rho[(i, k)] * p[(k, i)];
        }
    }
    acc
}

pub fn decompose(rho: &TwoQubitState) -> Result<BlochDecomposition> {
    let basis = pauli_basis();
    let mut coeff = [[0.0f64; 4]; 4];
    for (a, sa) in basis.iter().enumerate() {
        for (b, sb) in basis.iter().enumerate() {
            if a == 0 && b == 0 {
                continue;
            }
            let z = expectation(rho.matrix(), &sa.kron(sb)?);
            if z.im.abs() > IMAG_ERROR {
                return Err(Error::NonRealCoefficient(z.im));
            }
            coeff[a][b] = z.re;
        }
    }
    let mut t = [[0.0; 3]; 3];
    for (m, row) in t.iter_mut().enumerate() {
        for (n, x) in row.iter_mut().enumerate() {
            *x = coeff[m + 1][n + 1];
        }
    }
    Ok(BlochDecomposition {
        r: [coeff[1][0], coeff[2][0], coeff[3][0]],
        s: [coeff[0][1], coeff[0][2], coeff[0][3]],
        t,
    })
}

impl BlochDecomposition {
    /// The operator ¼(I⊗I + …) without any physicality check.
    pub fn operator(&self) -> ComplexMatrix {
        let basis = pauli_basis();
        let mut m = ComplexMatrix::identity(4).unwrap();
        for i in 0..3 {
            m = m + basis[i + 1].kron(&basis[0]).unwrap().scale_real(self.r[i]);
            m = m + basis[0].kron(&basis[i + 1]).unwrap().scale_real(self.s[i]);
            for j in 0..3 {
                if self.t[i][j] != 0.0 {
                    m = m + basis[i + 1].kron(&basis[j + 1]).unwrap().scale_real(self.t[i][j]);
                }
            }
        }
        m.scale_real(0.25)
    }
}

/// Builds the state from its coefficients, failing when they do not
/// describe a positive operator.
pub fn recompose(d: &BlochDecomposition) -> Result<TwoQubitState> {
    let m = d.operator();
    let min = eig_hermitian(&m)?[0];
    if min < -DEFAULT_TOL {
        return Err(Error::UnphysicalCoefficients(min));
    }
    TwoQubitState::new(m)
}

fn check_unit(v: &[f64; 3]) -> Result<()> {
    let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
    if (n - 1.0).abs() > 1e-9 {
        return Err(Error::NonUnitDirection(n));
    }
    Ok(())
}

/// E(a, b) = (a, T b).
pub fn correlation_value(d: &BlochDecomposition, a: &[f64; 3], b: &[f64; 3]) -> Result<f64> {
    check_unit(a)?;
    check_unit(b)?;
    let mut acc = 0.0;
    for i in 0..3 {
        for j in 0..3 {
            acc += a[i] * d.t[i][j] * b[j];
        }
    }
    Ok(acc)
}

/// (σ₁, σ₂, sign(det T)·σ₃), the canonical representative of the
/// diagonal reached by proper rotations on both sides.
pub fn characteristic_vector(t: &[[f64; 3]; 3]) -> [f64; 3] {
    let [s1, s2, s3] = singular_values3(t);
    let sign = if det3(t) < 0.0 { -1.0 } else { 1.0 };
    [s1, s2, sign * s3]
}

/// Vertices of the tetrahedron containing every state's characteristic vector.
pub const TETRAHEDRON: [[f64; 3]; 4] = [[-1.0, -1.0, -1.0], [-1.0, 1.0, 1.0], [1.0, -1.0, 1.0], [1.0, 1.0, -1.0]];

/// Barycentric coordinates of `t` with respect to [`TETRAHEDRON`]: (1 + vᵢ·t)/4.
pub fn tetrahedron_barycentric(t: &[f64; 3]) -> [f64; 4] {
    TETRAHEDRON.map(|v| (1.0 + v[0] * t[0] + v[1] * t[1] + v[2] * t[2]) / 4.0)
}

pub fn in_tetrahedron(t: &[f64; 3], tol: f64) -> bool {
    tetrahedron_barycentric(t).iter().all(|&l| l >= -tol)
}

pub fn profile_of(d: &BlochDecomposition) -> CorrelationProfile {
    let m = singular_values3(&d.t);
    let n = m.iter().sum::<f64>();
    let ic = if n > 1.0 { n - 1.0 } else { 0.0 };
    CorrelationProfile {
        m,
        t_canonical: characteristic_vector(&d.t),
        n,
        f: (1.0 + n) / 4.0,
        ic,
        region: if n > 1.0 {
            CorrelationRegion::InseparabilityCorrelation
        } else {
            CorrelationRegion::SeparabilityCorrelation
        },
    }
}

pub fn profile(rho: &TwoQubitState) -> Result<CorrelationProfile> {
    Ok(profile_of(&decompose(rho)?))
}

/// Shorthand for `profile(rho).ic`.
pub fn inseparability_coefficient(rho: &TwoQubitState) -> Result<f64> {
    Ok(profile(rho)?.ic)
}

/// Default evaluation budget for [`fef_direct`].
pub const FEF_DEFAULT_BUDGET: usize = 100_000;
const FEF_GRID: usize = 20;

/// ⟨e|ρ|e⟩ for e = (U⊗I)|Φ⁺⟩ with U = Rz(a)·Ry(b)·Rz(c).
fn overlap(rho: &ComplexMatrix, angles: &[f64; 3]) -> f64 {
    let [a, b, c] = *angles;
    let (sb, cb) = (b / 2.0).sin_cos();
    let plus = |x: f64| Complex64::from_polar(1.0, x / 2.0);
    let minus = |x: f64| Complex64::from_polar(1.0, -x / 2.0);
    let u = [
        [minus(a) * minus(c) * cb, -(minus(a) * plus(c)) * sb],
        [plus(a) * minus(c) * sb, plus(a) * plus(c) * cb],
    ];
    let h = std::f64::consts::FRAC_1_SQRT_2;
    // e[2i + j] = U[i][j] / √2
    let e = [u[0][0] * h, u[0][1] * h, u[1][0] * h, u[1][1] * h];
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..4 {
        let mut row = Complex64::new(0.0, 0.0);
        for j in 0..4 {
            row += rho[(i, j)] * e[j];
        }
        acc += e[i].conj() * row;
    }
    acc.re
}

/// Direct numerical maximization of the overlap with maximally entangled
/// states (U⊗I)|Φ⁺⟩: a 20³ angle grid followed by Nelder–Mead refinement of
/// the best grid points, using at most `budget` evaluations in total (the
/// grid always runs). The result is a lower bound on the true maximum.
pub fn fef_direct(rho: &TwoQubitState, budget: usize) -> f64 {
    let m = rho.matrix();
    let two_pi = 2.0 * std::f64::consts::PI;
    let step = [two_pi / FEF_GRID as f64, std::f64::consts::PI / (FEF_GRID - 1) as f64, two_pi / FEF_GRID as f64];
    let mut grid: Vec<([f64; 3], f64)> = Vec::with_capacity(FEF_GRID.pow(3));
    for i in 0..FEF_GRID {
        for j in 0..FEF_GRID {
            for k in 0..FEF_GRID {
                let x = [i as f64 * step[0], j as f64 * step[1], k as f64 * step[2]];
                grid.push((x, overlap(m, &x)));
            }
        }
    }
    let mut used = grid.len();
    grid.sort_by(|a, b| b.1.total_cmp(&a.1));
    let mut best = grid[0].1;
    const STARTS: usize = 4;
    for (start, _) in grid.iter().take(STARTS) {
        if used >= budget {
            break;
        }
        let share = (budget - used) / STARTS;
        let (value, evals) = nelder_mead_max(|x| overlap(m, x), *start, step.map(|s| s / 2.0), share.max(1));
        used += evals;
        best = best.max(value);
    }
    best
}

/// Maximizes `f` from `x0`; returns the best value and the number of
/// evaluations spent.
fn nelder_mead_max(f: impl Fn(&[f64; 3]) -> f64, x0: [f64; 3], step: [f64; 3], max_evals: usize) -> (f64, usize) {
    let neg = |x: &[f64; 3]| -f(x);
    let mut evals = 0usize;
    let eval = |x: [f64; 3], evals: &mut usize| {
        *evals += 1;
        (x, neg(&x))
    };
    let mut simplex: Vec<([f64; 3], f64)> = Vec::with_capacity(4);
    simplex.push(eval(x0, &mut evals));
    for d in 0..3 {
        let mut x = x0;
        x[d] += step[d];
        simplex.push(eval(x, &mut evals));
    }
    let lerp = |a: &[f64; 3], b: &[f64; 3], t: f64| -> [f64; 3] { std::array::from_fn(|i| a[i] + t * (b[i] - a[i])) };

    while evals + 2 <= max_evals {
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        let spread = simplex[3].1 - simplex[0].1;
        let origin = simplex[0].0;
        let size = simplex[1..]
            .iter()
            .flat_map(|(x, _)| (0..3).map(move |i| (x[i] - origin[i]).abs()))
            .fold(0.0, f64::max);
        if spread <= 1e-16 && size <= 1e-9 {
            break;
        }
        let centroid: [f64; 3] = std::array::from_fn(|i| (simplex[0].0[i] + simplex[1].0[i] + simplex[2].0[i]) / 3.0);
        let worst = simplex[3];
        let reflected = eval(lerp(&centroid, &worst.0, -1.0), &mut evals);
        if reflected.1 < simplex[0].1 {
            let expanded = eval(lerp(&centroid, &worst.0, -2.0), &mut evals);
            simplex[3] = if expanded.1 < reflected.1 { expanded } else { reflected };
        } else if reflected.1 < simplex[2].1 {
            simplex[3] = reflected;
        } else {
            let contracted = if reflected.1 < worst.1 {
                eval(lerp(&centroid, &reflected.0, 0.5), &mut evals)
            } else {
                eval(lerp(&centroid, &worst.0, 0.5), &mut evals)
            };
            if contracted.1 < worst.1.min(reflected.1) {
                simplex[3] = contracted;
            } else {
                let best = simplex[0].0;
                for v in simplex.iter_mut().skip(1) {
                    *v = eval(lerp(&best, &v.0, 0.5), &mut evals);
                }
            }
        }
    }
    let best = simplex.iter().map(|(_, v)| *v).fold(f64::INFINITY, f64::min);
    (-best, evals)
}

/// ¼(I⊗I + Σ t_mn σ_m⊗σ_n): the input with both Bloch vectors removed.
pub fn bell_auxiliary(rho: &TwoQubitState) -> Result<TwoQubitState> {
    let d = decompose(rho)?;
    recompose(&BlochDecomposition {
        r: [0.0; 3],
        s: [0.0; 3],
        t: d.t,
    })
}

fn binary_entropy(x: f64) -> f64 {
    let term = |p: f64| if p <= 0.0 { 0.0 } else { -p * p.log2() };
    term(x) + term(1.0 - x)
}

/// Entanglement of formation of a Bell-diagonal state with fully entangled
/// fraction `f`: H(½ + √(f(1−f))) for f ≥ ½, zero below.
pub fn bell_diag_eof(f: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&f) {
        return Err(Error::DomainError(f));
    }
    if f < 0.5 {
        return Ok(0.0);
    }
    Ok(binary_entropy(0.5 + (f * (1.0 - f)).sqrt()))
}
