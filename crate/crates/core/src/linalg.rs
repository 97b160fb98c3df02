//! Iterative eigensolvers for the tiny matrices used here.

use num_complex::Complex64;

const MAX_SWEEPS: usize = 64;

/// Cyclic Jacobi diagonalization of a Hermitian matrix, in place.
///
/// Returns the (unsorted) diagonal and the unitary `V` whose columns are the
/// eigenvectors, `V[row][col]`.
pub(crate) fn jacobi_hermitian(a: &mut [Vec<Complex64>]) -> (Vec<f64>, Vec<Vec<Complex64>>) {
    let n = a.len();
    let mut v: Vec<Vec<Complex64>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Complex64::new(1.0, 0.0) } else { Complex64::new(0.0, 0.0) })
                .collect()
        })
        .collect();
    for i in 0..n {
        a[i][i] = Complex64::new(a[i][i].re, 0.0);
    }
    let scale: f64 = a.iter().flatten().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if scale == 0.0 {
        return (vec![0.0; n], v);
    }

    for _ in 0..MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i][j].norm_sqr())
            .sum::<f64>()
            .sqrt();
        if off <= 1e-17 * scale {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p][q];
                let mag = apq.norm();
                if mag <= 1e-300 {
                    continue;
                }
                // Phase u makes the (p, q) element real and positive, then a
                // real symmetric Schur rotation zeroes it. W = diag(.., u, ..)·R.
                let u = apq.conj() / mag;
                let app = a[p][p].re;
                let aqq = a[q][q].re;
                let tau = (aqq - app) / (2.0 * mag);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                let w_pp = Complex64::new(c, 0.0);
                let w_pq = Complex64::new(s, 0.0);
                let w_qp = u * (-s);
                let w_qq = u * c;

                // A <- A W (columns p, q)
                for row in a.iter_mut() {
                    let (x, y) = (row[p], row[q]);
                    row[p] = x * w_pp + y * w_qp;
                    row[q] = x * w_pq + y * w_qq;
                }
                // A <- W^H A (rows p, q)
                for col in 0..n {
                    let (x, y) = (a[p][col], a[q][col]);
                    a[p][col] = w_pp.conj() * x + w_qp.conj() * y;
                    a[q][col] = w_pq.conj() * x + w_qq.conj() * y;
                }
                a[p][q] = Complex64::new(0.0, 0.0);
                a[q][p] = Complex64::new(0.0, 0.0);
                a[p][p] = Complex64::new(a[p][p].re, 0.0);
                a[q][q] = Complex64::new(a[q][q].re, 0.0);
                // V <- V W
                for row in v.iter_mut() {
                    let (x, y) = (row[p], row[q]);
                    row[p] = x * w_pp + y * w_qp;
                    row[q] = x * w_pq + y * w_qq;
                }
            }
        }
    }
    ((0..n).map(|i| a[i][i].re).collect(), v)
}

/// Singular values of a real 3×3 matrix, descending, by one-sided
/// (Hestenes) Jacobi orthogonalization of the columns.
pub fn singular_values3(m: &[[f64; 3]; 3]) -> [f64; 3] {
    // columns as vectors
    let mut cols = [[0.0f64; 3]; 3];
    for (j, col) in cols.iter_mut().enumerate() {
        for i in 0..3 {
            col[i] = m[i][j];
        }
    }
    let dot = |a: &[f64; 3], b: &[f64; 3]| a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..3 {
            for q in (p + 1)..3 {
                let alpha = dot(&cols[p], &cols[p]);
                let beta = dot(&cols[q], &cols[q]);
                let gamma = dot(&cols[p], &cols[q]);
                if gamma.abs() <= 1e-17 * (alpha * beta).sqrt() || gamma == 0.0 {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (2.0 * gamma);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let t = if zeta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                for i in 0..3 {
                    let x = cols[p][i];
                    let y = cols[q][i];
                    cols[p][i] = c * x - s * y;
                    cols[q][i] = s * x + c * y;
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let mut sv = cols.map(|c| dot(&c, &c).sqrt());
    sv.sort_by(|a, b| b.total_cmp(a));
    sv
}

pub fn det3(m: &[[f64; 3]; 3]) -> f64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}
