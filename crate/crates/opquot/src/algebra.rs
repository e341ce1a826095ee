//! Quotient algebra: parallel sums, the S operators, sums and products of
//! left/right quotients with witness verification, the reverse-order law for
//! pseudoinverses, simplification rules, and canonical decompositions.

use crate::error::{Error, Result};
use crate::numkernel::{self, hermitian_eigen, projector_distance, svd, Matrix, ToleranceConfig};
use crate::quotient::{LeftQuotient, RightQuotient};

/// Parallel sum `p : q = p (p + q)^dagger q` of two Hermitian PSD matrices,
/// together with its PSD square root `S` and the projector onto `R(S)`.
///
/// One eigendecomposition backs `s`, `range_projector`, and `rank`, so the
/// three are always mutually consistent. The rank floor is `psd_rel` against
/// the natural scale of the product, so cancellation noise in a
/// near-degenerate sum is not mistaken for intersection directions.
#[derive(Debug, Clone)]
pub struct ParallelSumResult {
    /// The parallel sum `p (p + q)^dagger q` as computed.
    pub value: Matrix,
    /// Hermitian PSD square root of the parallel sum.
    pub s: Matrix,
    /// Orthogonal projector onto `R(s)`.
    pub range_projector: Matrix,
    /// Numerical rank of `s`; equals `dim(R(p) intersect R(q))` for healthy
    /// spectra.
    pub rank: usize,
}

/// Computes the parallel sum of two Hermitian PSD matrices of equal size.
pub fn parallel_sum(p: &Matrix, q: &Matrix, tol: &ToleranceConfig) -> Result<ParallelSumResult> {
    if p.rows() != q.rows() || p.cols() != q.cols() {
        return Err(Error::DimensionMismatch {
            detail: format!(
                "parallel sum needs equal shapes, got {}x{} and {}x{}",
                p.rows(),
                p.cols(),
                q.rows(),
                q.cols()
            ),
        });
    }
    let p_norm = assert_hermitian_psd(p, tol)?;
    let q_norm = assert_hermitian_psd(q, tol)?;

    let sum_pinv = numkernel::pseudoinverse(&(p + q), tol)?;
    let value = &(p * &sum_pinv) * q;

    let (values, vectors) = hermitian_eigen(&value)?;
    let lambda_max = values.first().copied().unwrap_or(0.0).max(0.0);
    let floor = tol.psd_rel * lambda_max.max(p_norm.min(q_norm));
    let kept: Vec<f64> = values.iter().copied().take_while(|&l| l > floor).collect();
    let rank = kept.len();

    let n = value.rows();
    let mut s = Matrix::zeros(n, n);
    let mut proj = Matrix::zeros(n, n);
    for (k, &lambda) in kept.iter().enumerate() {
        let root = lambda.sqrt();
        for i in 0..n {
            let vik = vectors.get(i, k);
            for j in 0..n {
                let term = vik * vectors.get(j, k).conj();
                let cur_s = s.get(i, j);
                s.set(i, j, cur_s + term * root);
                let cur_p = proj.get(i, j);
                proj.set(i, j, cur_p + term);
            }
        }
    }
    Ok(ParallelSumResult {
        value,
        s: s.hermitian_part(),
        range_projector: proj.hermitian_part(),
        rank,
    })
}

/// The auxiliary quotients entering the sum theorems: for the left sum
/// `b1 = S B^dagger` and `d1 = S D^dagger` (the right quotients
/// `[S/B]`, `[S/D]`); for the right sum `b1 = B^dagger S` and
/// `d1 = D^dagger S` (the left quotients `[B\S]`, `[D\S]`).
#[derive(Debug, Clone)]
pub struct SumWitness {
    pub b1: Matrix,
    pub d1: Matrix,
}

fn left_sum_parts(
    lq1: &LeftQuotient,
    lq2: &LeftQuotient,
    tol: &ToleranceConfig,
) -> Result<(ParallelSumResult, SumWitness)> {
    let b = lq1.denominator();
    let d = lq2.denominator();
    if b.cols() != d.cols() {
        return Err(Error::DimensionMismatch {
            detail: format!(
                "left sum needs denominators with equal column counts, got {} and {}",
                b.cols(),
                d.cols()
            ),
        });
    }
    if lq1.numerator().cols() != lq2.numerator().cols() {
        return Err(Error::DimensionMismatch {
            detail: format!(
                "left sum needs numerators with equal column counts, got {} and {}",
                lq1.numerator().cols(),
                lq2.numerator().cols()
            ),
        });
    }
    let psum = parallel_sum(&(&b.adjoint() * b), &(&d.adjoint() * d), tol)?;
    let b1 = &psum.s * &numkernel::pseudoinverse(b, tol)?;
    let d1 = &psum.s * &numkernel::pseudoinverse(d, tol)?;
    Ok((psum, SumWitness { b1, d1 }))
}

/// Witness pair for the left sum theorem.
pub fn sum_witness_left(
    lq1: &LeftQuotient,
    lq2: &LeftQuotient,
    tol: &ToleranceConfig,
) -> Result<SumWitness> {
    Ok(left_sum_parts(lq1, lq2, tol)?.1)
}

/// Sum of two left quotients `[B\A] + [D\C] = [S \ (B1 A + D1 C)]` with
/// `S = (B^*B : D^*D)^{1/2}`.
///
/// The constructed quotient satisfies `result.q = P_{R(S)} (q1 + q2)`; the
/// returned defect `|(I - P_{R(S)})(q1 + q2)|_F` measures how far the
/// unprojected sum is from the quotient. A zero defect certifies that the
/// plain matrix sum itself is the quotient on this instance.
pub fn sum_left(
    lq1: &LeftQuotient,
    lq2: &LeftQuotient,
    tol: &ToleranceConfig,
) -> Result<(LeftQuotient, f64)> {
    let (psum, witness) = left_sum_parts(lq1, lq2, tol)?;
    let numerator = &(&witness.b1 * lq1.numerator()) + &(&witness.d1 * lq2.numerator());
    let result = LeftQuotient::new(&numerator, &psum.s, tol)?;
    let plain = lq1.q() + lq2.q();
    let defect = (&plain - &(&psum.range_projector * &plain)).norm_fro();
    Ok((result, defect))
}

/// `[D\A] + [D\B] = [D\(A + B)]` for quotients sharing a denominator
/// (exact object equality).
pub fn sum_left_same_denominator(
    lq1: &LeftQuotient,
    lq2: &LeftQuotient,
    tol: &ToleranceConfig,
) -> Result<LeftQuotient> {
    if lq1.denominator() != lq2.denominator() {
        return Err(Error::DenominatorMismatch);
    }
    if lq1.numerator().cols() != lq2.numerator().cols() {
        return Err(Error::DimensionMismatch {
            detail: format!(
                "numerators must share column counts, got {} and {}",
                lq1.numerator().cols(),
                lq2.numerator().cols()
            ),
        });
    }
    LeftQuotient::new(&(lq1.numerator() + lq2.numerator()), lq1.denominator(), tol)
}

fn right_sum_parts(
    rq1: &RightQuotient,
    rq2: &RightQuotient,
    tol: &ToleranceConfig,
) -> Result<(ParallelSumResult, SumWitness)> {
    let b = rq1.denominator();
    let d = rq2.denominator();
    if b.rows() != d.rows() {
        return Err(Error::DimensionMismatch {
            detail: format!(
                "right sum needs denominators with equal row counts, got {} and {}",
                b.rows(),
                d.rows()
            ),
        });
    }
    if rq1.numerator().rows() != rq2.numerator().rows() {
        return Err(Error::DimensionMismatch {
            detail: format!(
                "right sum needs numerators with equal row counts, got {} and {}",
                rq1.numerator().rows(),
                rq2.numerator().rows()
            ),
        });
    }
    let psum = parallel_sum(&(b * &b.adjoint()), &(d * &d.adjoint()), tol)?;
    let b1 = &numkernel::pseudoinverse(b, tol)? * &psum.s;
    let d1 = &numkernel::pseudoinverse(d, tol)? * &psum.s;
    Ok((psum, SumWitness { b1, d1 }))
}

/// Witness pair for the right sum theorem.
pub fn sum_witness_right(
    rq1: &RightQuotient,
    rq2: &RightQuotient,
    tol: &ToleranceConfig,
) -> Result<SumWitness> {
    Ok(right_sum_parts(rq1, rq2, tol)?.1)
}

/// Sum of two right quotients `[A/B] + [C/D] = [(A B1 + C D1) / S]` with
/// `S = (B B^* : D D^*)^{1/2}`; the domain of the sum is
/// `R(B) intersect R(D) = R(S)`.
///
/// The quotient satisfies `result.q = (q1 + q2) P_{R(S)}`; the defect is
/// `|(q1 + q2)(I - P_{R(S)})|_F`, mirroring the left case.
pub fn sum_right(
    rq1: &RightQuotient,
    rq2: &RightQuotient,
    tol: &ToleranceConfig,
) -> Result<(RightQuotient, f64)> {
    let (psum, witness) = right_sum_parts(rq1, rq2, tol)?;
    let numerator = &(rq1.numerator() * &witness.b1) + &(rq2.numerator() * &witness.d1);
    let result = RightQuotient::new(&numerator, &psum.s, tol)?;
    let plain = rq1.q() + rq2.q();
    let defect = (&plain - &(&plain * &psum.range_projector)).norm_fro();
    Ok((result, defect))
}

/// `[A/D] + [B/D] = [(A + B)/D]` for quotients sharing a denominator.
pub fn sum_right_same_denominator(
    rq1: &RightQuotient,
    rq2: &RightQuotient,
    tol: &ToleranceConfig,
) -> Result<RightQuotient> {
    if rq1.denominator() != rq2.denominator() {
        return Err(Error::DenominatorMismatch);
    }
    if rq1.numerator().rows() != rq2.numerator().rows() {
        return Err(Error::DimensionMismatch {
            detail: format!(
                "numerators must share row counts, got {} and {}",
                rq1.numerator().rows(),
                rq2.numerator().rows()
            ),
        });
    }
    RightQuotient::new(&(rq1.numerator() + rq2.numerator()), rq1.denominator(), tol)
}

/// Reverse-order law `(s t)^dagger = t^dagger s^dagger`, valid under
/// `R(t) = N(s)^perp`. Also implies `R(s t) = R(s)`.
pub fn pinv_product(s: &Matrix, t: &Matrix, tol: &ToleranceConfig) -> Result<Matrix> {
    if s.cols() != t.rows() {
        return Err(Error::DimensionMismatch {
            detail: format!(
                "pinv_product needs cols(s) = rows(t), got {} and {}",
                s.cols(),
                t.rows()
            ),
        });
    }
    let sf = svd(s, tol)?;
    let tf = svd(t, tol)?;
    let dist = projector_distance(&tf.range_projector(), &sf.corange_projector());
    if dist > tol.projector_threshold(s.cols()) {
        return Err(Error::ReverseOrderConditionViolated {
            projector_distance: dist,
        });
    }
    Ok(&tf.pseudoinverse() * &sf.pseudoinverse())
}

/// Witness pair `(M, N)` making a product of quotients rewritable as a
/// single quotient. Validity is data, not an error: the residual of the
/// compatibility equation and the projector distance of the kernel condition
/// are recorded either way.
#[derive(Debug, Clone)]
pub struct ProductWitness {
    pub m: Matrix,
    pub n: Matrix,
    pub valid: bool,
    /// Residual of `M D = N A` (left) or `B M = C N` (right).
    pub compatibility_residual: f64,
    /// Projector distance of `N(N)^perp = R(B)` (left) or
    /// `R(N) = N(D)^perp` (right).
    pub kernel_residual: f64,
}

impl ProductWitness {
    /// Validates `(m, n)` for the left product `[B\A][D\C] = [NB \ MC]`:
    /// requires `M D = N A` and `N(N)^perp = R(B)`.
    pub fn for_left(
        m: Matrix,
        n: Matrix,
        lq1: &LeftQuotient,
        lq2: &LeftQuotient,
        tol: &ToleranceConfig,
    ) -> Result<ProductWitness> {
        let a = lq1.numerator();
        let b = lq1.denominator();
        let d = lq2.denominator();
        if m.rows() != n.rows() || m.cols() != d.rows() || n.cols() != a.rows() {
            return Err(Error::DimensionMismatch {
                detail: "left witness shapes must satisfy MD = NA".to_string(),
            });
        }
        let na = &n * a;
        let compatibility_residual = (&(&m * d) - &na).norm_fro();
        let compat_ok = compatibility_residual <= tol.residual_threshold(na.norm_fro());
        let kernel_residual = projector_distance(
            &numkernel::projector_onto_corange(&n, tol)?,
            &numkernel::projector_onto_range(b, tol)?,
        );
        let kernel_ok = kernel_residual <= tol.projector_threshold(b.rows());
        Ok(ProductWitness {
            m,
            n,
            valid: compat_ok && kernel_ok,
            compatibility_residual,
            kernel_residual,
        })
    }

    /// Validates `(m, n)` for the right product
    /// `[A/B][C/D] = [A P_{N(B)^perp} M / D N]`: requires `B M = C N` and
    /// `R(N) = N(D)^perp`.
    pub fn for_right(
        m: Matrix,
        n: Matrix,
        rq1: &RightQuotient,
        rq2: &RightQuotient,
        tol: &ToleranceConfig,
    ) -> Result<ProductWitness> {
        let b = rq1.denominator();
        let c = rq2.numerator();
        let d = rq2.denominator();
        if m.cols() != n.cols() || m.rows() != b.cols() || n.rows() != c.cols() {
            return Err(Error::DimensionMismatch {
                detail: "right witness shapes must satisfy BM = CN".to_string(),
            });
        }
        let cn = c * &n;
        let compatibility_residual = (&(b * &m) - &cn).norm_fro();
        let compat_ok = compatibility_residual <= tol.residual_threshold(cn.norm_fro());
        let kernel_residual = projector_distance(
            &numkernel::projector_onto_range(&n, tol)?,
            &numkernel::projector_onto_corange(d, tol)?,
        );
        let kernel_ok = kernel_residual <= tol.projector_threshold(d.cols());
        Ok(ProductWitness {
            m,
            n,
            valid: compat_ok && kernel_ok,
            compatibility_residual,
            kernel_residual,
        })
    }
}

/// Best-effort witness for the left product: `N = B^dagger` (which satisfies
/// the kernel condition by construction) and `M = (B^dagger A) D^dagger`.
/// The compatibility residual is then `|B^dagger A (D^dagger D - I)|`.
pub fn auto_witness_left(
    lq1: &LeftQuotient,
    lq2: &LeftQuotient,
    tol: &ToleranceConfig,
) -> Result<ProductWitness> {
    let n = numkernel::pseudoinverse(lq1.denominator(), tol)?;
    let m = lq1.q() * &numkernel::pseudoinverse(lq2.denominator(), tol)?;
    ProductWitness::for_left(m, n, lq1, lq2, tol)
}

/// Best-effort witness for the right product: `N = D^dagger` and `M` the
/// least-squares solution of `B M = C N`, i.e. `B^dagger (C D^dagger)`.
pub fn auto_witness_right(
    rq1: &RightQuotient,
    rq2: &RightQuotient,
    tol: &ToleranceConfig,
) -> Result<ProductWitness> {
    let n = numkernel::pseudoinverse(rq2.denominator(), tol)?;
    let m = &numkernel::pseudoinverse(rq1.denominator(), tol)? * &(rq2.numerator() * &n);
    ProductWitness::for_right(m, n, rq1, rq2, tol)
}

/// Product of two left quotients through a valid witness:
/// `[B\A][D\C] = [NB \ MC]`; the result matrix equals `q1 q2`.
pub fn product_left(
    lq1: &LeftQuotient,
    lq2: &LeftQuotient,
    witness: &ProductWitness,
    tol: &ToleranceConfig,
) -> Result<LeftQuotient> {
    if lq1.numerator().cols() != lq2.denominator().cols() {
        return Err(Error::DimensionMismatch {
            detail: format!(
                "product needs cols of the first numerator to match cols of the second denominator, got {} and {}",
                lq1.numerator().cols(),
                lq2.denominator().cols()
            ),
        });
    }
    if !witness.valid {
        return Err(Error::InvalidWitness {
            compatibility: witness.compatibility_residual,
            kernel: witness.kernel_residual,
        });
    }
    LeftQuotient::new(
        &(&witness.m * lq2.numerator()),
        &(&witness.n * lq1.denominator()),
        tol,
    )
}

/// Product of two right quotients through a valid witness:
/// `[A/B][C/D] = [A P_{N(B)^perp} M / D N]`; the result matrix equals `q1 q2`.
pub fn product_right(
    rq1: &RightQuotient,
    rq2: &RightQuotient,
    witness: &ProductWitness,
    tol: &ToleranceConfig,
) -> Result<RightQuotient> {
    if rq1.denominator().rows() != rq2.numerator().rows() {
        return Err(Error::DimensionMismatch {
            detail: format!(
                "product needs rows of the first denominator to match rows of the second numerator, got {} and {}",
                rq1.denominator().rows(),
                rq2.numerator().rows()
            ),
        });
    }
    if !witness.valid {
        return Err(Error::InvalidWitness {
            compatibility: witness.compatibility_residual,
            kernel: witness.kernel_residual,
        });
    }
    let p = numkernel::projector_onto_corange(rq1.denominator(), tol)?;
    let numerator = &(rq1.numerator() * &p) * &witness.m;
    let denominator = rq2.denominator() * &witness.n;
    RightQuotient::new(&numerator, &denominator, tol)
}

/// Cancels a common left factor: `[MB \ MA] = [B\A]` whenever
/// `N(M)^perp = R(B)`. With `M = B^*` the condition holds automatically.
pub fn simplify_left(m: &Matrix, lq: &LeftQuotient, tol: &ToleranceConfig) -> Result<LeftQuotient> {
    if m.cols() != lq.denominator().rows() {
        return Err(Error::DimensionMismatch {
            detail: format!(
                "simplifier must accept vectors of length {}, got {}",
                lq.denominator().rows(),
                m.cols()
            ),
        });
    }
    let dist = projector_distance(
        &numkernel::projector_onto_corange(m, tol)?,
        &numkernel::projector_onto_range(lq.denominator(), tol)?,
    );
    if dist > tol.projector_threshold(m.cols()) {
        return Err(Error::SimplificationConditionViolated {
            projector_distance: dist,
        });
    }
    LeftQuotient::new(&(m * lq.numerator()), &(m * lq.denominator()), tol)
}

/// Cancels a common right factor: `[AM / BM] = [A/B]` whenever
/// `R(M) = N(B)^perp`. With `M = B^*` the condition holds automatically.
pub fn simplify_right(
    m: &Matrix,
    rq: &RightQuotient,
    tol: &ToleranceConfig,
) -> Result<RightQuotient> {
    if m.rows() != rq.denominator().cols() {
        return Err(Error::DimensionMismatch {
            detail: format!(
                "simplifier must produce vectors of length {}, got {}",
                rq.denominator().cols(),
                m.rows()
            ),
        });
    }
    let dist = projector_distance(
        &numkernel::projector_onto_range(m, tol)?,
        &numkernel::projector_onto_corange(rq.denominator(), tol)?,
    );
    if dist > tol.projector_threshold(m.rows()) {
        return Err(Error::SimplificationConditionViolated {
            projector_distance: dist,
        });
    }
    RightQuotient::new(&(rq.numerator() * m), &(rq.denominator() * m), tol)
}

/// Canonical quotient decomposition: `A = [A^* \ A^* A]` and
/// `A^dagger = [A^* A \ A^*]`.
pub fn canonical_decomposition(
    a: &Matrix,
    tol: &ToleranceConfig,
) -> Result<(LeftQuotient, LeftQuotient)> {
    let a_adj = a.adjoint();
    let gram = &a_adj * a;
    let first = LeftQuotient::new(&gram, &a_adj, tol)?;
    let second = LeftQuotient::new(&a_adj, &gram, tol)?;
    Ok((first, second))
}

fn assert_hermitian_psd(p: &Matrix, tol: &ToleranceConfig) -> Result<f64> {
    if p.rows() != p.cols() {
        return Err(Error::DimensionMismatch {
            detail: format!("expected a square matrix, got {}x{}", p.rows(), p.cols()),
        });
    }
    let residual = p.hermitian_residual();
    if residual > tol.residual_threshold(p.norm_fro()) {
        return Err(Error::NotHermitian { residual });
    }
    let (values, _) = hermitian_eigen(p)?;
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
    Ok(scale)
}
