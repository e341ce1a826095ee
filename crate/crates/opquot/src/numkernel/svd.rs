//! Singular value decomposition with full unitary factors, and the Hermitian
//! eigendecomposition, both via Jacobi rotations.
//!
//! One-sided Jacobi orthogonalizes the columns of the working matrix, which
//! gives singular values to high relative accuracy and keeps the computed
//! left vectors orthonormal regardless of conditioning; the Hermitian solver
//! is classical cyclic two-sided Jacobi. Both are deterministic for a fixed
//! input.

use num_complex::Complex64;

use super::matrix::Matrix;
use super::tolerance::ToleranceConfig;
use crate::error::{Error, Result};

const MAX_SWEEPS: usize = 64;

/// Full singular value decomposition `m = u * diag(sigma) * v^*` with
/// `u` (m×m) and `v` (n×n) unitary, singular values nonincreasing, and the
/// numerical rank decided by the tolerance policy at factorization time.
#[derive(Debug, Clone)]
pub struct SvdFactorization {
    pub u: Matrix,
    pub sigma: Vec<f64>,
    pub v: Matrix,
    pub rank: usize,
}

impl SvdFactorization {
    /// Largest singular value (0 for the zero matrix).
    pub fn sigma_max(&self) -> f64 {
        self.sigma.first().copied().unwrap_or(0.0)
    }

    /// Smallest singular value kept by the rank cutoff.
    pub fn sigma_min_kept(&self) -> Option<f64> {
        if self.rank == 0 {
            None
        } else {
            Some(self.sigma[self.rank - 1])
        }
    }

    /// Moore-Penrose pseudoinverse from the factors: kept singular values are
    /// inverted, discarded ones become exact zeros.
    pub fn pseudoinverse(&self) -> Matrix {
        let m = self.u.rows();
        let n = self.v.rows();
        let mut out = Matrix::zeros(n, m);
        for k in 0..self.rank {
            let inv = 1.0 / self.sigma[k];
            for i in 0..n {
                let vik = self.v.get(i, k);
                for j in 0..m {
                    let cur = out.get(i, j);
                    out.set(i, j, cur + vik * self.u.get(j, k).conj() * inv);
                }
            }
        }
        out
    }

    /// Orthogonal projector onto the range, `u_r * u_r^*`.
    pub fn range_projector(&self) -> Matrix {
        Self::span_projector(&self.u, self.rank)
    }

    /// Orthogonal projector onto the corange `R(m^*) = N(m)^perp`, `v_r * v_r^*`.
    pub fn corange_projector(&self) -> Matrix {
        Self::span_projector(&self.v, self.rank)
    }

    /// Orthonormal basis of the range (first `rank` columns of `u`), or
    /// `None` for the zero matrix.
    pub fn range_basis(&self) -> Option<Matrix> {
        if self.rank == 0 {
            None
        } else {
            Some(self.u.columns(0, self.rank))
        }
    }

    /// Orthonormal basis of the left null space `N(m^*)` (trailing columns
    /// of `u`), or `None` when the matrix has full row rank.
    pub fn left_null_basis(&self) -> Option<Matrix> {
        if self.rank == self.u.rows() {
            None
        } else {
            Some(self.u.columns(self.rank, self.u.rows()))
        }
    }

    /// Orthonormal basis of the null space `N(m)` (trailing columns of `v`),
    /// or `None` when the matrix has full column rank.
    pub fn null_basis(&self) -> Option<Matrix> {
        if self.rank == self.v.rows() {
            None
        } else {
            Some(self.v.columns(self.rank, self.v.rows()))
        }
    }

    /// `u * diag(sigma) * v^*`.
    pub fn reconstruct(&self) -> Matrix {
        let m = self.u.rows();
        let n = self.v.rows();
        let mut scaled = Matrix::zeros(m, n);
        for k in 0..self.sigma.len() {
            for i in 0..m {
                scaled.set(i, k, self.u.get(i, k) * self.sigma[k]);
            }
        }
        &scaled * &self.v.adjoint()
    }

    fn span_projector(basis: &Matrix, rank: usize) -> Matrix {
        let dim = basis.rows();
        let mut out = Matrix::zeros(dim, dim);
        for k in 0..rank {
            for i in 0..dim {
                let bik = basis.get(i, k);
                for j in 0..dim {
                    let cur = out.get(i, j);
                    out.set(i, j, cur + bik * basis.get(j, k).conj());
                }
            }
        }
        out
    }
}

/// Jacobi rotation parameters `(c, s, phase)` diagonalizing the Hermitian
/// 2x2 Gram block `[[app, apq], [conj(apq), aqq]]`: the unitary is
/// `[[c, s], [-s*conj(phase), c*conj(phase)]]` with `phase = apq / |apq|`.
fn rotation(app: f64, aqq: f64, apq: Complex64) -> (f64, f64, Complex64) {
    let abs = apq.norm();
    let phase = apq / abs;
    let tau = (aqq - app) / (2.0 * abs);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    (c, t * c, phase)
}

/// One-sided Jacobi on a matrix with `rows >= cols`: returns the orthogonal
/// working columns (None where the column vanished), singular values sorted
/// nonincreasing, and the accumulated square unitary of right vectors.
#[allow(clippy::type_complexity)]
fn one_sided_jacobi(m: &Matrix) -> Result<(Vec<Option<Vec<Complex64>>>, Vec<f64>, Matrix)> {
    let rows = m.rows();
    let cols = m.cols();
    debug_assert!(rows >= cols);

    let mut w: Vec<Vec<Complex64>> = (0..cols).map(|j| m.column(j)).collect();
    let mut v: Vec<Vec<Complex64>> = (0..cols)
        .map(|j| {
            let mut e = vec![Complex64::new(0.0, 0.0); cols];
            e[j] = Complex64::new(1.0, 0.0);
            e
        })
        .collect();

    let mut converged = cols < 2;
    for _ in 0..MAX_SWEEPS {
        if converged {
            break;
        }
        let mut rotated = false;
        for p in 0..cols - 1 {
            for q in p + 1..cols {
                let app: f64 = w[p].iter().map(|z| z.norm_sqr()).sum();
                let aqq: f64 = w[q].iter().map(|z| z.norm_sqr()).sum();
                if app == 0.0 || aqq == 0.0 {
                    continue;
                }
                let apq: Complex64 = w[p].iter().zip(&w[q]).map(|(a, b)| a.conj() * b).sum();
                if apq.norm() <= f64::EPSILON * (app * aqq).sqrt() {
                    continue;
                }
                rotated = true;
                let (c, s, phase) = rotation(app, aqq, apq);
                let sp = phase.conj() * s;
                let cp = phase.conj() * c;
                for i in 0..rows {
                    let (wp, wq) = (w[p][i], w[q][i]);
                    w[p][i] = wp * c - wq * sp;
                    w[q][i] = wp * s + wq * cp;
                }
                for i in 0..cols {
                    let (vp, vq) = (v[p][i], v[q][i]);
                    v[p][i] = vp * c - vq * sp;
                    v[q][i] = vp * s + vq * cp;
                }
            }
        }
        converged = !rotated;
    }
    if !converged {
        return Err(Error::ConvergenceFailure);
    }

    // Sort by column norm, descending; stable so exact ties keep their
    // sweep order.
    let mut order: Vec<(f64, usize)> = w
        .iter()
        .enumerate()
        .map(|(j, col)| (col.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt(), j))
        .collect();
    order.sort_by(|a, b| b.0.total_cmp(&a.0));

    let sigma: Vec<f64> = order.iter().map(|&(s, _)| s).collect();
    let u_cols: Vec<Option<Vec<Complex64>>> = order
        .iter()
        .map(|&(s, j)| {
            if s == 0.0 {
                None
            } else {
                Some(w[j].iter().map(|z| z / s).collect())
            }
        })
        .collect();
    let mut v_sorted = Matrix::zeros(cols, cols);
    for (dst, &(_, j)) in order.iter().enumerate() {
        for i in 0..cols {
            v_sorted.set(i, dst, v[j][i]);
        }
    }
    Ok((u_cols, sigma, v_sorted))
}

/// Extends a set of orthonormal columns to a full square unitary by greedy
/// Gram-Schmidt over the standard basis, always absorbing the direction with
/// the largest residual. Deterministic. Vanished columns (`None`) only occur
/// after all present ones thanks to the descending sort, so the completion
/// simply appends.
fn complete_columns(cols: Vec<Option<Vec<Complex64>>>, dim: usize) -> Matrix {
    let mut known: Vec<Vec<Complex64>> = cols.iter().flatten().cloned().collect();
    debug_assert!(cols.iter().take(known.len()).all(|c| c.is_some()));
    while known.len() < dim {
        let mut best: Option<(f64, Vec<Complex64>)> = None;
        for j in 0..dim {
            let mut cand = vec![Complex64::new(0.0, 0.0); dim];
            cand[j] = Complex64::new(1.0, 0.0);
            // Two projection passes keep the completion orthogonal to
            // working precision.
            for _ in 0..2 {
                for col in &known {
                    let coeff: Complex64 = col.iter().zip(&cand).map(|(a, b)| a.conj() * b).sum();
                    for (c, k) in cand.iter_mut().zip(col) {
                        *c -= coeff * k;
                    }
                }
            }
            let norm = cand.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if best.as_ref().is_none_or(|(b, _)| norm > *b) {
                best = Some((norm, cand));
            }
        }
        let (norm, cand) = best.expect("dim > 0");
        debug_assert!(norm > 0.0, "standard basis spans the complement");
        known.push(cand.iter().map(|z| z / norm).collect());
    }
    let mut out = Matrix::zeros(dim, dim);
    for (j, col) in known.iter().enumerate() {
        for i in 0..dim {
            out.set(i, j, col[i]);
        }
    }
    out
}

/// Computes the full SVD. Fails with `ConvergenceFailure` if the Jacobi
/// sweeps do not settle.
pub fn svd(m: &Matrix, tol: &ToleranceConfig) -> Result<SvdFactorization> {
    let (u, sigma, v) = if m.rows() >= m.cols() {
        let (u_cols, sigma, v) = one_sided_jacobi(m)?;
        (complete_columns(u_cols, m.rows()), sigma, v)
    } else {
        // Factor the adjoint and swap the roles of the unitaries.
        let (v_cols, sigma, u) = one_sided_jacobi(&m.adjoint())?;
        (u, sigma, complete_columns(v_cols, m.cols()))
    };
    let cutoff = tol.rank_cutoff(m.rows(), m.cols()) * sigma.first().copied().unwrap_or(0.0);
    let rank = sigma.iter().filter(|&&s| s > cutoff && s > 0.0).count();
    Ok(SvdFactorization { u, sigma, v, rank })
}

/// Largest singular value.
pub fn spectral_norm(m: &Matrix) -> Result<f64> {
    let tall = if m.rows() >= m.cols() {
        one_sided_jacobi(m)?
    } else {
        one_sided_jacobi(&m.adjoint())?
    };
    Ok(tall.1.first().copied().unwrap_or(0.0))
}

/// Eigendecomposition of a Hermitian matrix by cyclic two-sided Jacobi:
/// eigenvalues sorted in nonincreasing order with matching eigenvector
/// columns. The caller is responsible for Hermiticity; only the Hermitian
/// part is consumed.
pub fn hermitian_eigen(m: &Matrix) -> Result<(Vec<f64>, Matrix)> {
    assert_eq!(m.rows(), m.cols(), "hermitian_eigen needs a square matrix");
    let n = m.rows();
    let mut h = m.hermitian_part();
    let mut v = Matrix::identity(n);

    let mut converged = n < 2;
    for _ in 0..MAX_SWEEPS {
        if converged {
            break;
        }
        let mut rotated = false;
        for p in 0..n - 1 {
            for q in p + 1..n {
                let hpq = h.get(p, q);
                let app = h.get(p, p).re;
                let aqq = h.get(q, q).re;
                let scale = (app.abs() * aqq.abs()).sqrt().max(f64::MIN_POSITIVE);
                if hpq.norm() <= f64::EPSILON * scale {
                    continue;
                }
                rotated = true;
                let (c, s, phase) = rotation(app, aqq, hpq);
                let sp = phase.conj() * s;
                let cp = phase.conj() * c;
                // Columns: H <- H R.
                for i in 0..n {
                    let (hp, hq) = (h.get(i, p), h.get(i, q));
                    h.set(i, p, hp * c - hq * sp);
                    h.set(i, q, hp * s + hq * cp);
                }
                // Rows: H <- R^* H.
                for j in 0..n {
                    let (hp, hq) = (h.get(p, j), h.get(q, j));
                    h.set(p, j, hp * c - hq * sp.conj());
                    h.set(q, j, hp * s + hq * cp.conj());
                }
                // The rotation annihilates the pair exactly in exact
                // arithmetic; enforce it and keep the diagonal real.
                h.set(p, q, Complex64::new(0.0, 0.0));
                h.set(q, p, Complex64::new(0.0, 0.0));
                h.set(p, p, Complex64::new(h.get(p, p).re, 0.0));
                h.set(q, q, Complex64::new(h.get(q, q).re, 0.0));
                for i in 0..n {
                    let (vp, vq) = (v.get(i, p), v.get(i, q));
                    v.set(i, p, vp * c - vq * sp);
                    v.set(i, q, vp * s + vq * cp);
                }
            }
        }
        converged = !rotated;
    }
    if !converged {
        return Err(Error::ConvergenceFailure);
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| h.get(b, b).re.total_cmp(&h.get(a, a).re));
    let values: Vec<f64> = order.iter().map(|&j| h.get(j, j).re).collect();
    let mut vectors = Matrix::zeros(n, n);
    for (dst, &j) in order.iter().enumerate() {
        for i in 0..n {
            vectors.set(i, dst, v.get(i, j));
        }
    }
    Ok((values, vectors))
}
