//! Dense complex linear-algebra kernel: SVD, numerical rank, Moore-Penrose
//! pseudoinverse, orthogonal projectors, Hermitian PSD square roots,
//! Löwner-order tests, and subspace predicates.
//!
//! All operations are pure functions of their inputs and deterministic for a
//! fixed input and tolerance.

mod matrix;
mod svd;
mod tolerance;

pub use matrix::{c64, vec_norm, Matrix};
pub use svd::{hermitian_eigen, spectral_norm, svd, SvdFactorization};
pub use tolerance::ToleranceConfig;

use crate::error::{Error, Result};

/// Moore-Penrose pseudoinverse via the SVD.
pub fn pseudoinverse(m: &Matrix, tol: &ToleranceConfig) -> Result<Matrix> {
    Ok(svd(m, tol)?.pseudoinverse())
}

/// Orthogonal projector onto the range of `m` (equals `m * m^dagger`).
pub fn projector_onto_range(m: &Matrix, tol: &ToleranceConfig) -> Result<Matrix> {
    Ok(svd(m, tol)?.range_projector())
}

/// Orthogonal projector onto `N(m)^perp = R(m^*)` (equals `m^dagger * m`).
pub fn projector_onto_corange(m: &Matrix, tol: &ToleranceConfig) -> Result<Matrix> {
    Ok(svd(m, tol)?.corange_projector())
}

/// Range projector with an absolute singular-value floor. For a product of
/// matrices the noise scale comes from the factors, not from the product's
/// own largest singular value, so the relative cutoff of `svd` would promote
/// noise to rank when the product is near zero; callers pass the floor
/// derived from the factor scales instead.
pub fn projector_onto_range_with_floor(m: &Matrix, floor: f64) -> Result<Matrix> {
    let f = svd(m, &ToleranceConfig::default())?;
    let rank = f.sigma.iter().filter(|&&s| s > floor).count();
    Ok(SvdFactorization { rank, ..f }.range_projector())
}

/// Numerical rank under the tolerance policy.
pub fn rank(m: &Matrix, tol: &ToleranceConfig) -> Result<usize> {
    Ok(svd(m, tol)?.rank)
}

/// Hermitian positive-semidefinite square root.
///
/// Eigenvalues in `[-psd_rel * |p|, 0)` are clamped to zero; anything more
/// negative is an error rather than silently repaired. Eigenvalues below the
/// same floor on the positive side are zeroed too: their square roots would
/// otherwise turn eigensolver noise into spurious rank (an eps-sized noise
/// eigenvalue has a 1e-8-sized square root that no eps-relative singular
/// value cutoff can see).
pub fn hermitian_psd_sqrt(p: &Matrix, tol: &ToleranceConfig) -> Result<Matrix> {
    let (values, vectors) = checked_hermitian_eigen(p, tol)?;
    let scale = values.iter().fold(0.0f64, |acc, &v| acc.max(v.abs()));
    let floor = tol.psd_rel * scale;
    if let Some(&min) = values
        .iter()
        .filter(|&&v| v < -floor)
        .min_by(|a, b| a.total_cmp(b))
    {
        return Err(Error::NotPositiveSemidefinite {
            min_eigenvalue: min,
            floor: -floor,
        });
    }
    let roots: Vec<f64> = values
        .iter()
        .map(|&v| if v > floor { v.sqrt() } else { 0.0 })
        .collect();
    Ok(eigen_reconstruct(&vectors, &roots))
}

/// Löwner-order test `p <= q`: the minimum eigenvalue of `q - p` must stay
/// above `-psd_rel * max(|p|, |q|, 1)`.
pub fn loewner_leq(p: &Matrix, q: &Matrix, tol: &ToleranceConfig) -> Result<bool> {
    if p.rows() != q.rows() || p.cols() != q.cols() {
        return Err(Error::DimensionMismatch {
            detail: format!(
                "loewner_leq needs equal shapes, got {}x{} and {}x{}",
                p.rows(),
                p.cols(),
                q.rows(),
                q.cols()
            ),
        });
    }
    let (pv, _) = checked_hermitian_eigen(p, tol)?;
    let (qv, _) = checked_hermitian_eigen(q, tol)?;
    let p_norm = pv.iter().fold(0.0f64, |acc, &v| acc.max(v.abs()));
    let q_norm = qv.iter().fold(0.0f64, |acc, &v| acc.max(v.abs()));
    let (dv, _) = hermitian_eigen(&(q - p))?;
    let min = dv.last().copied().unwrap_or(0.0);
    Ok(min >= -tol.psd_rel * p_norm.max(q_norm).max(1.0))
}

/// Residual of the range-inclusion test `R(a) subset R(b)`:
/// `|(I - b b^dagger) a|_F`.
pub fn range_inclusion_residual(a: &Matrix, b: &Matrix, tol: &ToleranceConfig) -> Result<f64> {
    if a.rows() != b.rows() {
        return Err(Error::DimensionMismatch {
            detail: format!(
                "range inclusion needs equal row counts, got {} and {}",
                a.rows(),
                b.rows()
            ),
        });
    }
    let p = projector_onto_range(b, tol)?;
    Ok((a - &(&p * a)).norm_fro())
}

/// `R(a) subset R(b)` decided by the projector residual criterion.
pub fn range_included(a: &Matrix, b: &Matrix, tol: &ToleranceConfig) -> Result<bool> {
    let residual = range_inclusion_residual(a, b, tol)?;
    Ok(residual <= tol.residual_threshold(a.norm_fro()))
}

/// Residual of the kernel-inclusion test `N(b) subset N(a)`:
/// `|a (I - b^dagger b)|_F`, i.e. how far `a` is from annihilating `N(b)`.
pub fn kernel_inclusion_residual(b: &Matrix, a: &Matrix, tol: &ToleranceConfig) -> Result<f64> {
    if a.cols() != b.cols() {
        return Err(Error::DimensionMismatch {
            detail: format!(
                "kernel inclusion needs equal column counts, got {} and {}",
                b.cols(),
                a.cols()
            ),
        });
    }
    let p = projector_onto_corange(b, tol)?;
    Ok((a - &(a * &p)).norm_fro())
}

/// `N(b) subset N(a)` decided by the annihilation residual.
pub fn kernel_included(b: &Matrix, a: &Matrix, tol: &ToleranceConfig) -> Result<bool> {
    let residual = kernel_inclusion_residual(b, a, tol)?;
    Ok(residual <= tol.residual_threshold(a.norm_fro()))
}

/// `R(a) = R(b)`: inclusion both ways.
pub fn subspace_equal_ranges(a: &Matrix, b: &Matrix, tol: &ToleranceConfig) -> Result<bool> {
    Ok(range_included(a, b, tol)? && range_included(b, a, tol)?)
}

/// Frobenius distance between two projectors; the crate's subspace-equality
/// measure (bases are non-unique, projectors are not).
pub fn projector_distance(p1: &Matrix, p2: &Matrix) -> f64 {
    (p1 - p2).norm_fro()
}

fn checked_hermitian_eigen(p: &Matrix, tol: &ToleranceConfig) -> Result<(Vec<f64>, Matrix)> {
    if p.rows() != p.cols() {
        return Err(Error::DimensionMismatch {
            detail: format!("expected a square matrix, got {}x{}", p.rows(), p.cols()),
        });
    }
    let residual = p.hermitian_residual();
    if residual > tol.residual_threshold(p.norm_fro()) {
        return Err(Error::NotHermitian { residual });
    }
    hermitian_eigen(p)
}

fn eigen_reconstruct(vectors: &Matrix, values: &[f64]) -> Matrix {
    let n = vectors.rows();
    let mut out = Matrix::zeros(n, n);
    for k in 0..values.len() {
        if values[k] == 0.0 {
            continue;
        }
        for i in 0..n {
            let vik = vectors.get(i, k) * values[k];
            for j in 0..n {
                let cur = out.get(i, j);
                out.set(i, j, cur + vik * vectors.get(j, k).conj());
            }
        }
    }
    // The rank-one sum is Hermitian up to rounding; symmetrize exactly.
    out.hermitian_part()
}
