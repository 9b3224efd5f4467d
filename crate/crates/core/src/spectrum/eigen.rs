//! Eigenvalues of dense complex Hermitian matrices.
//!
//! Two solvers share one contract (real eigenvalues, descending):
//! cyclic complex Jacobi for small dimensions and Householder reduction to a
//! real symmetric tridiagonal matrix followed by implicit-shift QL for larger
//! ones. [`hermitian_eigenvalues`] picks by dimension.

use num_complex::Complex64;

use crate::error::{domain, Error, Result};

/// Jacobi is used up to this dimension, Householder + QL above.
pub const JACOBI_MAX_DIM: usize = 24;
pub const JACOBI_MAX_SWEEPS: usize = 30;
pub const JACOBI_TOLERANCE: f64 = 1e-13;
const QL_MAX_ITERATIONS: usize = 60;

/// Dense Hermitian matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl HermitianMatrix {
    /// Accepts a row-major matrix that is Hermitian to within 1e-12
    /// (relative to its Frobenius norm) and stores `(A + Aᴴ)/2`.
    pub fn from_row_major(dim: usize, data: Vec<Complex64>) -> Result<Self> {
        if dim == 0 || data.len() != dim * dim {
            return domain(format!("expected {dim}×{dim} entries, got {}", data.len()));
        }
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return domain("matrix has non-finite entries");
        }
        let norm = data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let mut sym = data.clone();
        for i in 0..dim {
            for j in i..dim {
                let a = data[i * dim + j];
                let b = data[j * dim + i].conj();
                if (a - b).norm() > 1e-12 * norm.max(f64::MIN_POSITIVE) {
                    return domain(format!("matrix is not Hermitian at ({i}, {j})"));
                }
                let m = 0.5 * (a + b);
                sym[i * dim + j] = m;
                sym[j * dim + i] = m.conj();
            }
            sym[i * dim + i].im = 0.0;
        }
        Ok(Self { dim, data: sym })
    }

    /// Builds from the upper triangle (`upper[i*dim + j]` for `j ≥ i`),
    /// mirroring it and forcing a real diagonal.
    pub(crate) fn from_upper(dim: usize, mut data: Vec<Complex64>) -> Self {
        for i in 0..dim {
            data[i * dim + i].im = 0.0;
            for j in i + 1..dim {
                data[j * dim + i] = data[i * dim + j].conj();
            }
        }
        Self { dim, data }
    }

    pub fn real_diagonal(values: &[f64]) -> Self {
        let dim = values.len();
        let mut data = vec![Complex64::new(0.0, 0.0); dim * dim];
        for (i, v) in values.iter().enumerate() {
            data[i * dim + i] = Complex64::new(*v, 0.0);
        }
        Self { dim, data }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.dim + j]
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn trace(&self) -> f64 {
        (0..self.dim).map(|i| self.data[i * self.dim + i].re).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }
}

/// Eigenvalues in descending order.
pub fn hermitian_eigenvalues(matrix: &HermitianMatrix) -> Result<Vec<f64>> {
    if matrix.dim() <= JACOBI_MAX_DIM {
        jacobi_eigenvalues(matrix)
    } else {
        tridiagonal_ql_eigenvalues(matrix)
    }
}

/// Cyclic Jacobi with complex rotations.
///
/// Each rotation first removes the phase of `a_pq` (a diagonal unitary on
/// column `q`), then applies a real plane rotation. Only eigenvalues are
/// needed, so the accumulated basis change is discarded.
pub fn jacobi_eigenvalues(matrix: &HermitianMatrix) -> Result<Vec<f64>> {
    jacobi_with_cap(matrix, JACOBI_MAX_SWEEPS)
}

fn jacobi_with_cap(matrix: &HermitianMatrix, max_sweeps: usize) -> Result<Vec<f64>> {
    let n = matrix.dim();
    let mut a = matrix.as_slice().to_vec();
    let norm = matrix.frobenius_norm();
    let target = JACOBI_TOLERANCE * norm;
    let off_norm = |a: &[Complex64]| -> f64 {
        let mut s = 0.0;
        for i in 0..n {
            for j in i + 1..n {
                s += 2.0 * a[i * n + j].norm_sqr();
            }
        }
        s.sqrt()
    };

    let mut sweeps = 0;
    loop {
        let off = off_norm(&a);
        if off <= target || norm == 0.0 {
            break;
        }
        if sweeps == max_sweeps {
            return Err(Error::Convergence { sweeps, off_norm: off, norm });
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                let mag = apq.norm();
                if mag == 0.0 {
                    continue;
                }
                let app = a[p * n + p].re;
                let aqq = a[q * n + q].re;
                // negligible compared with both diagonal entries
                if sweeps > 3 && mag <= 1e-18 * app.abs() && mag <= 1e-18 * aqq.abs() {
                    a[p * n + q] = Complex64::new(0.0, 0.0);
                    a[q * n + p] = Complex64::new(0.0, 0.0);
                    continue;
                }
                let phase = apq / mag; // e^{iφ}
                let theta = (aqq - app) / (2.0 * mag);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;

                for r in 0..n {
                    if r == p || r == q {
                        continue;
                    }
                    let x = a[r * n + p];
                    let y = a[r * n + q] * phase.conj();
                    let new_p = x * c - y * s;
                    let new_q = x * s + y * c;
                    a[r * n + p] = new_p;
                    a[p * n + r] = new_p.conj();
                    a[r * n + q] = new_q;
                    a[q * n + r] = new_q.conj();
                }
                a[p * n + p] = Complex64::new(app - t * mag, 0.0);
                a[q * n + q] = Complex64::new(aqq + t * mag, 0.0);
                a[p * n + q] = Complex64::new(0.0, 0.0);
                a[q * n + p] = Complex64::new(0.0, 0.0);
            }
        }
    }
    let mut eig: Vec<f64> = (0..n).map(|i| a[i * n + i].re).collect();
    eig.sort_by(|x, y| y.total_cmp(x));
    Ok(eig)
}

/// Householder tridiagonalization followed by implicit-shift QL.
pub fn tridiagonal_ql_eigenvalues(matrix: &HermitianMatrix) -> Result<Vec<f64>> {
    let (mut d, mut e) = householder_tridiagonal(matrix);
    tridiagonal_ql(&mut d, &mut e, matrix.frobenius_norm())?;
    d.sort_by(|x, y| y.total_cmp(x));
    Ok(d)
}

/// Reduces to real symmetric tridiagonal form: returns the diagonal and the
/// moduli of the subdiagonal (`e[i]` couples `i` and `i + 1`).
fn householder_tridiagonal(matrix: &HermitianMatrix) -> (Vec<f64>, Vec<f64>) {
    let n = matrix.dim();
    let mut a = matrix.as_slice().to_vec();
    let mut sub = vec![0.0; n.saturating_sub(1)];
    let zero = Complex64::new(0.0, 0.0);
    let mut w = vec![zero; n];
    let mut p = vec![zero; n];
    for k in 0..n.saturating_sub(2) {
        let m = n - k - 1; // length of the column below the diagonal
        let x0 = a[(k + 1) * n + k];
        let xnorm = (k + 1..n).map(|i| a[i * n + k].norm_sqr()).sum::<f64>().sqrt();
        if xnorm == 0.0 {
            sub[k] = 0.0;
            continue;
        }
        let phase = if x0.norm() == 0.0 { Complex64::new(1.0, 0.0) } else { x0 / x0.norm() };
        let alpha = -phase * xnorm;
        // v = x − α e₁, scaled so that H = I − w wᴴ with w = √2 v/‖v‖
        for i in 0..m {
            w[i] = a[(k + 1 + i) * n + k];
        }
        w[0] -= alpha;
        let vnorm = w[..m].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let scale = std::f64::consts::SQRT_2 / vnorm;
        for wi in &mut w[..m] {
            *wi *= scale;
        }
        // p = B w on the trailing block B
        for i in 0..m {
            let row = (k + 1 + i) * n + k + 1;
            let mut acc = zero;
            for j in 0..m {
                acc += a[row + j] * w[j];
            }
            p[i] = acc;
        }
        let whp: Complex64 = (0..m).map(|i| w[i].conj() * p[i]).sum();
        let half = 0.5 * whp.re;
        for i in 0..m {
            p[i] -= w[i] * half; // p now holds q
        }
        for i in 0..m {
            let row = (k + 1 + i) * n + k + 1;
            for j in 0..m {
                a[row + j] -= w[i] * p[j].conj() + p[i] * w[j].conj();
            }
        }
        sub[k] = xnorm;
        for i in k + 1..n {
            a[i * n + k] = zero;
            a[k * n + i] = zero;
        }
    }
    if n >= 2 {
        sub[n - 2] = a[(n - 1) * n + n - 2].norm();
    }
    let diag = (0..n).map(|i| a[i * n + i].re).collect();
    (diag, sub)
}

/// Implicit QL on a symmetric tridiagonal matrix; eigenvalues overwrite `d`.
fn tridiagonal_ql(d: &mut [f64], sub: &mut [f64], norm: f64) -> Result<()> {
    let n = d.len();
    if n < 2 {
        return Ok(());
    }
    let mut e = vec![0.0; n];
    e[..n - 1].copy_from_slice(sub);
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m < n - 1 {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            if iter == QL_MAX_ITERATIONS {
                return Err(Error::Convergence { sweeps: iter, off_norm: e[l].abs(), norm });
            }
            iter += 1;
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut i = m;
            let mut deflated = false;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if deflated {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(())
}
