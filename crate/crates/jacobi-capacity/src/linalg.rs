//! Minimal dense complex linear algebra: Householder QR for Haar sampling,
//! Cholesky log-determinant for the Monte Carlo capacity, and a Hermitian
//! eigensolver for spectral validation. Matrices are dense row-major
//! `Complex64`; everything here is sized for dimensions up to a few hundred.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Dense complex matrix, row-major storage.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        Self {
            rows,
            cols,
            data: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim, dim);
        for i in 0..dim {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn<F: FnMut(usize, usize) -> Complex64>(
        rows: usize,
        cols: usize,
        mut f: F,
    ) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Upper-left `rows x cols` block.
    pub fn top_left(&self, rows: usize, cols: usize) -> Self {
        assert!(rows <= self.rows && cols <= self.cols);
        Self::from_fn(rows, cols, |i, j| self[(i, j)])
    }

    /// Conjugate transpose.
    pub fn conj_transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    /// Plain matrix product.
    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in mul");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let lik = self[(i, k)];
                if lik == Complex64::new(0.0, 0.0) {
                    continue;
                }
                let row = &mut out.data[i * rhs.cols..(i + 1) * rhs.cols];
                let rrow = &rhs.data[k * rhs.cols..(k + 1) * rhs.cols];
                for (o, r) in row.iter_mut().zip(rrow) {
                    *o += lik * r;
                }
            }
        }
        out
    }

    /// Gram matrix `A^H A`, Hermitian by construction (the lower triangle is
    /// the mirrored conjugate of the computed upper triangle, diagonal real).
    pub fn gram(&self) -> Self {
        let n = self.cols;
        let mut out = Self::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                let mut acc = Complex64::new(0.0, 0.0);
                for r in 0..self.rows {
                    acc += self[(r, i)].conj() * self[(r, j)];
                }
                if i == j {
                    out[(i, i)] = Complex64::new(acc.re, 0.0);
                } else {
                    out[(i, j)] = acc;
                    out[(j, i)] = acc.conj();
                }
            }
        }
        out
    }

    /// Largest entry magnitude.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest deviation from Hermitian symmetry, `max |A_ij - conj(A_ji)|`.
    pub fn hermiticity_error(&self) -> f64 {
        assert!(self.is_square());
        let mut worst = 0.0f64;
        for i in 0..self.rows {
            for j in i..self.cols {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }
}

impl std::ops::Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.cols + j]
    }
}

/// Householder QR of a matrix with `rows >= cols`.
///
/// Returns `(Q, R)` with `Q` of shape `rows x cols` having orthonormal
/// columns (`Q^H Q = I` to ~1e-14 per entry) and `R` upper triangular of
/// shape `cols x cols`, such that `A = Q R`. A zero pivot reports rank
/// deficiency; callers that feed random input resample.
pub fn qr_unitary(a: &ComplexMatrix) -> Result<(ComplexMatrix, ComplexMatrix)> {
    let (m, n) = (a.rows(), a.cols());
    assert!(m >= n, "qr_unitary requires rows >= cols");
    let mut r = a.clone();
    // Householder vectors, one per column, each of length m - j.
    let mut reflectors: Vec<Vec<Complex64>> = Vec::with_capacity(n);
    for j in 0..n {
        let mut v: Vec<Complex64> = (j..m).map(|i| r[(i, j)]).collect();
        let norm = vnorm(&v);
        if norm == 0.0 {
            return Err(Error::RankDeficient(j));
        }
        let tail_norm = vnorm(&v[1..]);
        if tail_norm == 0.0 {
            // Column already annihilated below the diagonal; no reflection.
            reflectors.push(Vec::new());
            continue;
        }
        // alpha = -exp(i arg(v0)) * ||v|| keeps v0 - alpha well conditioned.
        let phase = if v[0].norm() > 0.0 {
            v[0] / v[0].norm()
        } else {
            Complex64::new(1.0, 0.0)
        };
        let alpha = -phase * norm;
        v[0] -= alpha;
        let vn = vnorm(&v);
        for z in v.iter_mut() {
            *z /= vn;
        }
        apply_reflector_left(&mut r, &v, j, j);
        // Clean the annihilated part of the column.
        r[(j, j)] = alpha;
        for i in j + 1..m {
            r[(i, j)] = Complex64::new(0.0, 0.0);
        }
        reflectors.push(v);
    }
    // Accumulate thin Q by applying the reflectors to the first n columns of
    // the identity, in reverse order.
    let mut q = ComplexMatrix::from_fn(m, n, |i, j| {
        if i == j {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    for j in (0..n).rev() {
        if !reflectors[j].is_empty() {
            apply_reflector_left(&mut q, &reflectors[j], j, 0);
        }
    }
    let r_square = r.top_left(n, n);
    Ok((q, r_square))
}

/// Applies `(I - 2 v v^H)` to rows `row0..` of columns `col0..` of `m`.
fn apply_reflector_left(m: &mut ComplexMatrix, v: &[Complex64], row0: usize, col0: usize) {
    let rows = m.rows();
    let cols = m.cols();
    for c in col0..cols {
        let mut dot = Complex64::new(0.0, 0.0);
        for (k, vi) in v.iter().enumerate() {
            dot += vi.conj() * m[(row0 + k, c)];
        }
        if dot != Complex64::new(0.0, 0.0) {
            let scale = dot * 2.0;
            for (k, vi) in v.iter().enumerate() {
                let val = m[(row0 + k, c)] - scale * vi;
                m[(row0 + k, c)] = val;
            }
        }
    }
    debug_assert!(row0 + v.len() <= rows);
}

fn vnorm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Relative tolerance used to accept nearly-Hermitian input before
/// factorizations; products like `H^H H` accumulate roundoff of this order.
const HERMITIAN_TOL: f64 = 1e-10;

fn check_hermitian(h: &ComplexMatrix) -> Result<()> {
    if !h.is_square() {
        return Err(Error::NotHermitian(f64::INFINITY));
    }
    let scale = h.max_abs().max(1.0);
    let err = h.hermiticity_error();
    if err > HERMITIAN_TOL * scale {
        return Err(Error::NotHermitian(err));
    }
    Ok(())
}

/// Symmetrized copy `(H + H^H) / 2`.
fn symmetrize(h: &ComplexMatrix) -> ComplexMatrix {
    let n = h.rows();
    ComplexMatrix::from_fn(n, n, |i, j| {
        if i == j {
            Complex64::new(h[(i, i)].re, 0.0)
        } else {
            (h[(i, j)] + h[(j, i)].conj()) * 0.5
        }
    })
}

/// `ln det` of a Hermitian positive-definite matrix via Cholesky:
/// `2 * sum ln(L_jj)`. Input asymmetry above tolerance or a non-positive
/// pivot is an error.
pub fn cholesky_logdet(h: &ComplexMatrix) -> Result<f64> {
    check_hermitian(h)?;
    cholesky_logdet_hermitian(&symmetrize(h))
}

/// Cholesky log-determinant for input that is Hermitian by construction
/// (used on `I + rho * gram` in the Monte Carlo hot path).
pub(crate) fn cholesky_logdet_hermitian(h: &ComplexMatrix) -> Result<f64> {
    let n = h.rows();
    let mut l = vec![Complex64::new(0.0, 0.0); n * n];
    let mut logdet = 0.0;
    for j in 0..n {
        let mut diag = h[(j, j)].re;
        for k in 0..j {
            diag -= l[j * n + k].norm_sqr();
        }
        if diag <= 0.0 || !diag.is_finite() {
            return Err(Error::NotPositiveDefinite {
                pivot: diag,
                index: j,
            });
        }
        let dsqrt = diag.sqrt();
        l[j * n + j] = Complex64::new(dsqrt, 0.0);
        logdet += dsqrt.ln();
        for i in j + 1..n {
            let mut acc = h[(i, j)];
            for k in 0..j {
                acc -= l[i * n + k] * l[j * n + k].conj();
            }
            l[i * n + j] = acc / dsqrt;
        }
    }
    Ok(2.0 * logdet)
}

/// Eigenvalues of a Hermitian matrix, ascending, by cyclic complex Jacobi
/// rotations. Dimension is expected to stay at or below 256; the residual
/// `||H v - lambda v||` of the implied decomposition is well below
/// `1e-9 * ||H||`.
pub fn hermitian_eigenvalues(h: &ComplexMatrix) -> Result<Vec<f64>> {
    check_hermitian(h)?;
    let (vals, _) = hermitian_eigen(&symmetrize(h));
    Ok(vals)
}

/// Full Jacobi eigendecomposition on Hermitian input; returns ascending
/// eigenvalues and the unitary matrix of eigenvectors (as columns).
pub(crate) fn hermitian_eigen(h: &ComplexMatrix) -> (Vec<f64>, ComplexMatrix) {
    let n = h.rows();
    let mut a = h.clone();
    let mut v = ComplexMatrix::identity(n);
    let scale = a.max_abs().max(f64::MIN_POSITIVE);
    for _sweep in 0..60 {
        let mut off = 0.0f64;
        for p in 0..n {
            for q in p + 1..n {
                off += a[(p, q)].norm_sqr();
            }
        }
        if off.sqrt() <= 1e-15 * scale * n as f64 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[(p, q)];
                let mag = apq.norm();
                if mag <= 1e-300 {
                    continue;
                }
                let phase = apq / mag;
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                let theta = (aqq - app) / (2.0 * mag);
                let t = if theta >= 0.0 {
                    1.0 / (theta + (1.0 + theta * theta).sqrt())
                } else {
                    -1.0 / (-theta + (1.0 + theta * theta).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                // Unitary 2x2 block: J_pp = c, J_pq = s,
                // J_qp = -s * conj(phase), J_qq = c * conj(phase).
                let jqp = -s * phase.conj();
                let jqq = c * phase.conj();
                // Right-multiply A and V by J on columns (p, q).
                for i in 0..n {
                    let aip = a[(i, p)];
                    let aiq = a[(i, q)];
                    a[(i, p)] = aip * c + aiq * jqp;
                    a[(i, q)] = aip * s + aiq * jqq;
                    let vip = v[(i, p)];
                    let viq = v[(i, q)];
                    v[(i, p)] = vip * c + viq * jqp;
                    v[(i, q)] = vip * s + viq * jqq;
                }
                // Left-multiply A by J^H on rows (p, q).
                for i in 0..n {
                    let api = a[(p, i)];
                    let aqi = a[(q, i)];
                    a[(p, i)] = api * c + aqi * jqp.conj();
                    a[(q, i)] = api * s + aqi * jqq.conj();
                }
                a[(p, q)] = Complex64::new(0.0, 0.0);
                a[(q, p)] = Complex64::new(0.0, 0.0);
                a[(p, p)] = Complex64::new(a[(p, p)].re, 0.0);
                a[(q, q)] = Complex64::new(a[(q, q)].re, 0.0);
            }
        }
    }
    let mut idx: Vec<usize> = (0..n).collect();
    let diag: Vec<f64> = (0..n).map(|i| a[(i, i)].re).collect();
    idx.sort_by(|&i, &j| diag[i].partial_cmp(&diag[j]).unwrap());
    let vals: Vec<f64> = idx.iter().map(|&i| diag[i]).collect();
    let vecs = ComplexMatrix::from_fn(n, n, |i, j| v[(i, idx[j])]);
    (vals, vecs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::randmat::{sample_ginibre, RngStream};
    use approx::assert_relative_eq;

    fn random_hermitian(dim: usize, stream: RngStream) -> ComplexMatrix {
        let g = sample_ginibre(dim, dim, stream);
        let gh = g.conj_transpose();
        ComplexMatrix::from_fn(dim, dim, |i, j| (g[(i, j)] + gh[(i, j)]) * 0.5)
    }

    #[test]
    fn qr_identity_is_trivial() {
        let id = ComplexMatrix::identity(4);
        let (q, r) = qr_unitary(&id).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                let expect = if i == j { 1.0 } else { 0.0 };
                assert_relative_eq!(q[(i, j)].re, expect, epsilon = 1e-14);
                assert_relative_eq!(q[(i, j)].im, 0.0, epsilon = 1e-14);
                assert_relative_eq!(r[(i, j)].re.abs(), expect, epsilon = 1e-14);
            }
        }
    }

    #[test]
    fn qr_diagonal_matrix() {
        let mut a = ComplexMatrix::zeros(2, 2);
        a[(0, 0)] = Complex64::new(2.0, 0.0);
        a[(1, 1)] = Complex64::new(3.0, 0.0);
        let (q, r) = qr_unitary(&a).unwrap();
        // Q diagonal with unimodular entries, |R_ii| = {2, 3}.
        assert_relative_eq!(q[(0, 0)].norm(), 1.0, epsilon = 1e-14);
        assert_relative_eq!(q[(1, 1)].norm(), 1.0, epsilon = 1e-14);
        assert!(q[(0, 1)].norm() < 1e-14 && q[(1, 0)].norm() < 1e-14);
        assert_relative_eq!(r[(0, 0)].norm(), 2.0, epsilon = 1e-14);
        assert_relative_eq!(r[(1, 1)].norm(), 3.0, epsilon = 1e-14);
    }

    #[test]
    fn qr_reconstructs_random_input() {
        for &(m, n) in &[(8usize, 8usize), (12, 5), (64, 24)] {
            let a = sample_ginibre(m, n, RngStream::new(11, 3));
            let (q, r) = qr_unitary(&a).unwrap();
            let qr = q.mul(&r);
            let mut worst = 0.0f64;
            for i in 0..m {
                for j in 0..n {
                    worst = worst.max((qr[(i, j)] - a[(i, j)]).norm());
                }
            }
            assert!(worst <= 1e-12, "reconstruction error {worst:.3e}");
            // Orthonormal columns.
            let gram = q.gram();
            let mut ortho = 0.0f64;
            for i in 0..n {
                for j in 0..n {
                    let expect = if i == j { 1.0 } else { 0.0 };
                    ortho = ortho.max((gram[(i, j)] - Complex64::new(expect, 0.0)).norm());
                }
            }
            assert!(ortho <= 1e-12 * n as f64, "orthogonality error {ortho:.3e}");
            // R upper triangular.
            for i in 0..n {
                for j in 0..i {
                    assert_eq!(r[(i, j)], Complex64::new(0.0, 0.0));
                }
            }
        }
    }

    #[test]
    fn cholesky_logdet_examples() {
        assert_relative_eq!(
            cholesky_logdet(&ComplexMatrix::identity(5)).unwrap(),
            0.0,
            epsilon = 1e-14
        );
        let mut d = ComplexMatrix::zeros(2, 2);
        d[(0, 0)] = Complex64::new(2.0, 0.0);
        d[(1, 1)] = Complex64::new(2.0, 0.0);
        assert_relative_eq!(cholesky_logdet(&d).unwrap(), 4f64.ln(), epsilon = 1e-14);
    }

    #[test]
    fn cholesky_rank_one_update_lemma() {
        // det(I + rho v v^H) = 1 + rho for a unit vector v.
        let dim = 6;
        let g = sample_ginibre(dim, 1, RngStream::new(5, 0));
        let norm: f64 = (0..dim).map(|i| g[(i, 0)].norm_sqr()).sum::<f64>().sqrt();
        let rho = 3.0;
        let h = ComplexMatrix::from_fn(dim, dim, |i, j| {
            let vij = g[(i, 0)] / norm * (g[(j, 0)] / norm).conj();
            let base = if i == j {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            };
            base + vij * rho
        });
        assert_relative_eq!(cholesky_logdet(&h).unwrap(), 4f64.ln(), max_relative = 1e-12);
    }

    #[test]
    fn cholesky_rejects_bad_input() {
        let mut nh = ComplexMatrix::identity(2);
        nh[(0, 1)] = Complex64::new(0.5, 0.0);
        assert!(matches!(cholesky_logdet(&nh), Err(Error::NotHermitian(_))));

        let mut npd = ComplexMatrix::identity(2);
        npd[(1, 1)] = Complex64::new(-1.0, 0.0);
        assert!(matches!(
            cholesky_logdet(&npd),
            Err(Error::NotPositiveDefinite { .. })
        ));
    }

    #[test]
    fn eigenvalues_diagonal_and_identity() {
        let mut d = ComplexMatrix::zeros(2, 2);
        d[(0, 0)] = Complex64::new(0.7, 0.0);
        d[(1, 1)] = Complex64::new(0.2, 0.0);
        let vals = hermitian_eigenvalues(&d).unwrap();
        assert_relative_eq!(vals[0], 0.2, epsilon = 1e-12);
        assert_relative_eq!(vals[1], 0.7, epsilon = 1e-12);

        let vals = hermitian_eigenvalues(&ComplexMatrix::identity(4)).unwrap();
        for v in vals {
            assert_relative_eq!(v, 1.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn eigen_trace_and_residual_on_random_input() {
        for &dim in &[3usize, 8, 24, 64] {
            let h = random_hermitian(dim, RngStream::new(21, dim as u64));
            let trace: f64 = (0..dim).map(|i| h[(i, i)].re).sum();
            let (vals, vecs) = hermitian_eigen(&h);
            let sum: f64 = vals.iter().sum();
            assert_relative_eq!(trace, sum, max_relative = 1e-10);
            // Residual ||H v - lambda v|| per eigenpair.
            let hv = h.mul(&vecs);
            let norm = h.max_abs().max(1.0);
            for j in 0..dim {
                let mut res = 0.0f64;
                for i in 0..dim {
                    res += (hv[(i, j)] - vecs[(i, j)] * vals[j]).norm_sqr();
                }
                assert!(
                    res.sqrt() <= 1e-9 * norm * dim as f64,
                    "residual {:.3e} too large at dim {dim}",
                    res.sqrt()
                );
            }
        }
    }

    #[test]
    fn logdet_matches_eigenvalue_sum() {
        for &dim in &[4usize, 16, 64] {
            // Positive definite: gram of a random tall matrix plus I.
            let g = sample_ginibre(dim + 4, dim, RngStream::new(33, dim as u64));
            let mut h = g.gram();
            for i in 0..dim {
                h[(i, i)] += Complex64::new(1.0, 0.0);
            }
            let ld = cholesky_logdet(&h).unwrap();
            let sum: f64 = hermitian_eigenvalues(&h)
                .unwrap()
                .iter()
                .map(|v| v.ln())
                .sum();
            assert_relative_eq!(ld, sum, max_relative = 1e-9);
        }
    }

    #[test]
    fn eigensolver_rejects_non_hermitian() {
        let mut nh = ComplexMatrix::identity(3);
        nh[(0, 2)] = Complex64::new(0.0, 0.3);
        assert!(matches!(
            hermitian_eigenvalues(&nh),
            Err(Error::NotHermitian(_))
        ));
    }
}
