//! Left and right quotient objects: validated constructors, application,
//! norms, adjoint duality, inverses, and graph-level representations.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numkernel::{
    self, kernel_inclusion_residual, range_inclusion_residual, spectral_norm, svd, vec_norm,
    Matrix, ToleranceConfig,
};

/// The left quotient `[B\A]`: the Douglas solution of `B X = A`, stored as
/// the validated triple `(A, B, q = B^dagger A)`. It is a total operator
/// into `N(B)^perp`.
///
/// Construction requires `R(A) subset R(B)`; the stored `q` then satisfies
/// `B q = A`, `N(q) = N(A)`, and `R(q) subset R(B^*)` within tolerance.
#[derive(Debug, Clone)]
pub struct LeftQuotient {
    numerator: Matrix,
    denominator: Matrix,
    q: Matrix,
    tol: ToleranceConfig,
}

impl LeftQuotient {
    /// Builds `[B\A]`, re-validating the range inclusion with the caller's
    /// tolerance. The numerator is never silently projected.
    pub fn new(a: &Matrix, b: &Matrix, tol: &ToleranceConfig) -> Result<Self> {
        if a.rows() != b.rows() {
            return Err(Error::DimensionMismatch {
                detail: format!(
                    "left quotient needs equal row counts, got {} and {}",
                    a.rows(),
                    b.rows()
                ),
            });
        }
        let residual = range_inclusion_residual(a, b, tol)?;
        let threshold = tol.residual_threshold(a.norm_fro());
        if residual > threshold {
            return Err(Error::RangeInclusionViolated {
                residual,
                tolerance: threshold,
            });
        }
        Self::new_unchecked(a, b, tol)
    }

    /// Constructor for callers that already hold a proof of the range
    /// inclusion (e.g. adjoint duality).
    pub(crate) fn new_unchecked(a: &Matrix, b: &Matrix, tol: &ToleranceConfig) -> Result<Self> {
        let q = &numkernel::pseudoinverse(b, tol)? * a;
        Ok(Self {
            numerator: a.clone(),
            denominator: b.clone(),
            q,
            tol: *tol,
        })
    }

    pub fn numerator(&self) -> &Matrix {
        &self.numerator
    }

    pub fn denominator(&self) -> &Matrix {
        &self.denominator
    }

    /// The quotient matrix `B^dagger A`.
    pub fn q(&self) -> &Matrix {
        &self.q
    }

    pub fn tol(&self) -> &ToleranceConfig {
        &self.tol
    }

    /// Applies the quotient to a vector: `x -> q x`, so that `B (q x) = A x`.
    pub fn apply(&self, x: &[Complex64]) -> Result<Vec<Complex64>> {
        if x.len() != self.q.cols() {
            return Err(Error::DimensionMismatch {
                detail: format!(
                    "left quotient acts on vectors of length {}, got {}",
                    self.q.cols(),
                    x.len()
                ),
            });
        }
        Ok(self.q.apply(x))
    }

    /// Operator norm `|q|_2`; its square is `inf of mu with A A^* <= mu B B^*`.
    pub fn spectral_norm(&self) -> Result<f64> {
        spectral_norm(&self.q)
    }

    /// Adjoint duality `[B\A]^* = [A^*/B^*]`: the adjoint of a left quotient
    /// is the right quotient of the adjoints, computed honestly as
    /// `A^* (B^*)^dagger` rather than by transposing `q`.
    pub fn adjoint(&self) -> Result<RightQuotient> {
        RightQuotient::new_unchecked(
            &self.numerator.adjoint(),
            &self.denominator.adjoint(),
            &self.tol,
        )
    }

    /// Inverse on equal ranges: `[B\A]^{-1} = [A\B]`. The compositions of the
    /// two quotient matrices are the projectors onto `N(B)^perp` and
    /// `N(A)^perp`.
    pub fn invert(&self, tol: &ToleranceConfig) -> Result<LeftQuotient> {
        if !numkernel::subspace_equal_ranges(&self.numerator, &self.denominator, tol)? {
            return Err(Error::RangesNotEqual);
        }
        LeftQuotient::new(&self.denominator, &self.numerator, tol)
    }
}

/// The right quotient `[A/B]`: the partial operator `B x -> A x` with domain
/// `R(B)`, stored as the triple `(A, B, q = A B^dagger)` together with the
/// orthogonal projector onto its domain.
///
/// The matrix `q` is total on the ambient space; `apply` enforces the
/// partial-operator domain. The unrestricted action of `q` corresponds to the
/// extension `[A P_{R(B^*)} / B]`.
#[derive(Debug, Clone)]
pub struct RightQuotient {
    numerator: Matrix,
    denominator: Matrix,
    q: Matrix,
    domain_projector: Matrix,
    tol: ToleranceConfig,
}

impl RightQuotient {
    /// Builds `[A/B]`, re-validating the kernel inclusion `N(B) subset N(A)`
    /// with the caller's tolerance.
    pub fn new(a: &Matrix, b: &Matrix, tol: &ToleranceConfig) -> Result<Self> {
        if a.cols() != b.cols() {
            return Err(Error::DimensionMismatch {
                detail: format!(
                    "right quotient needs equal column counts, got {} and {}",
                    a.cols(),
                    b.cols()
                ),
            });
        }
        let residual = kernel_inclusion_residual(b, a, tol)?;
        let threshold = tol.residual_threshold(a.norm_fro());
        if residual > threshold {
            return Err(Error::KernelInclusionViolated {
                residual,
                tolerance: threshold,
            });
        }
        Self::new_unchecked(a, b, tol)
    }

    pub(crate) fn new_unchecked(a: &Matrix, b: &Matrix, tol: &ToleranceConfig) -> Result<Self> {
        let f = svd(b, tol)?;
        let q = a * &f.pseudoinverse();
        let domain_projector = f.range_projector();
        Ok(Self {
            numerator: a.clone(),
            denominator: b.clone(),
            q,
            domain_projector,
            tol: *tol,
        })
    }

    pub fn numerator(&self) -> &Matrix {
        &self.numerator
    }

    pub fn denominator(&self) -> &Matrix {
        &self.denominator
    }

    /// The quotient matrix `A B^dagger`.
    pub fn q(&self) -> &Matrix {
        &self.q
    }

    /// Orthogonal projector onto the domain `R(B)`.
    pub fn domain_projector(&self) -> &Matrix {
        &self.domain_projector
    }

    pub fn tol(&self) -> &ToleranceConfig {
        &self.tol
    }

    /// Applies the partial operator. `y` must lie in the domain `R(B)`;
    /// for `y = B x` the result is `A x`.
    pub fn apply(&self, y: &[Complex64]) -> Result<Vec<Complex64>> {
        if y.len() != self.q.cols() {
            return Err(Error::DimensionMismatch {
                detail: format!(
                    "right quotient acts on vectors of length {}, got {}",
                    self.q.cols(),
                    y.len()
                ),
            });
        }
        let projected = self.domain_projector.apply(y);
        let off: Vec<Complex64> = y.iter().zip(&projected).map(|(a, b)| a - b).collect();
        let residual = vec_norm(&off);
        let threshold = self.tol.residual_threshold(vec_norm(y));
        if residual > threshold {
            return Err(Error::OutOfDomain {
                residual,
                tolerance: threshold,
            });
        }
        Ok(self.q.apply(y))
    }

    /// Adjoint duality `[A/B]^* = [B^*\A^*]`.
    pub fn adjoint(&self) -> Result<LeftQuotient> {
        LeftQuotient::new_unchecked(
            &self.numerator.adjoint(),
            &self.denominator.adjoint(),
            &self.tol,
        )
    }

    /// Inverse on equal kernels: `[A/B]^{-1} = [B/A]`. The compositions of
    /// the two quotient matrices are the projectors onto `R(A)` and `R(B)`.
    pub fn invert(&self, tol: &ToleranceConfig) -> Result<RightQuotient> {
        let forward = numkernel::kernel_included(&self.denominator, &self.numerator, tol)?;
        let backward = numkernel::kernel_included(&self.numerator, &self.denominator, tol)?;
        if !(forward && backward) {
            return Err(Error::KernelsNotEqual);
        }
        RightQuotient::new(&self.denominator, &self.numerator, tol)
    }
}

/// Graph-level data of a right quotient `[A/B]`: the stacked operator
/// `T = [B; A]`, an orthonormal basis of the graph `G(B,A) = R(T)`, and an
/// orthonormal basis of the adjoint graph `G(B,A)^* = V(N(T^*))` where
/// `V(x, y) = (-y, x)`.
///
/// Bases of zero-dimensional subspaces are `None`.
#[derive(Debug, Clone)]
pub struct GraphData {
    pub t: Matrix,
    pub graph_basis: Option<Matrix>,
    pub adjoint_graph_basis: Option<Matrix>,
    /// Rows contributed by the denominator (the `H3` block of `T`).
    pub denominator_rows: usize,
    /// Rows contributed by the numerator (the `H2` block of `T`).
    pub numerator_rows: usize,
}

/// Builds the graph data for the pair `(B, A)`; `a` and `b` must act on the
/// same space (equal column counts).
pub fn graph(a: &Matrix, b: &Matrix, tol: &ToleranceConfig) -> Result<GraphData> {
    if a.cols() != b.cols() {
        return Err(Error::DimensionMismatch {
            detail: format!(
                "graph needs equal column counts, got {} and {}",
                a.cols(),
                b.cols()
            ),
        });
    }
    let t = Matrix::vstack(b, a);
    let f = svd(&t, tol)?;
    let graph_basis = f.range_basis();
    let adjoint_graph_basis = f.left_null_basis().map(|null| {
        // Split each null column u = (x; y) with x in the denominator block
        // and y in the numerator block, then map through V(x, y) = (-y, x).
        let p = b.rows();
        let m = a.rows();
        let k = null.cols();
        let mut out = Matrix::zeros(m + p, k);
        for j in 0..k {
            for i in 0..m {
                out.set(i, j, -null.get(p + i, j));
            }
            for i in 0..p {
                out.set(m + i, j, null.get(i, j));
            }
        }
        out
    });
    Ok(GraphData {
        t,
        graph_basis,
        adjoint_graph_basis,
        denominator_rows: b.rows(),
        numerator_rows: a.rows(),
    })
}

/// The operator `R_{A^*,B^*} = (A^* A + B^* B)^{1/2}`; its range equals
/// `R(A^*) + R(B^*)`.
pub fn r_operator(a: &Matrix, b: &Matrix, tol: &ToleranceConfig) -> Result<Matrix> {
    if a.cols() != b.cols() {
        return Err(Error::DimensionMismatch {
            detail: format!(
                "r_operator needs equal column counts, got {} and {}",
                a.cols(),
                b.cols()
            ),
        });
    }
    let gram = &(&a.adjoint() * a) + &(&b.adjoint() * b);
    numkernel::hermitian_psd_sqrt(&gram, tol)
}

/// Isometry defect of `J x = (B R^dagger x, A R^dagger x)` with
/// `R = R_{A^*,B^*}`: returns `| |Jx| - |x'| |` where `x'` is the projection
/// of `x` onto `R(R)`. The defect is bounded by `tol * (1 + |x|)` whenever
/// the kernel is healthy; `x` outside `R(A^*) + R(B^*)` is projected first
/// because the isometry is only claimed there.
pub fn j_isometry_defect(
    a: &Matrix,
    b: &Matrix,
    x: &[Complex64],
    tol: &ToleranceConfig,
) -> Result<f64> {
    let r = r_operator(a, b, tol)?;
    if x.len() != r.cols() {
        return Err(Error::DimensionMismatch {
            detail: format!("expected a vector of length {}, got {}", r.cols(), x.len()),
        });
    }
    let f = svd(&r, tol)?;
    let w = f.pseudoinverse().apply(x);
    let jx_norm = (vec_norm(&b.apply(&w)).powi(2) + vec_norm(&a.apply(&w)).powi(2)).sqrt();
    let projected = f.range_projector().apply(x);
    Ok((jx_norm - vec_norm(&projected)).abs())
}

/// Closedness certificate for `[A/B]`: reports the dimension of
/// `R(A^*) + R(B^*)` and the closedness flag, which is always `true` in
/// finite dimension. The report surface mirrors the closed-range criterion
/// even though the check cannot fail here.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosednessCertificate {
    pub rank: usize,
    pub closed: bool,
}

pub fn closedness_certificate(
    a: &Matrix,
    b: &Matrix,
    tol: &ToleranceConfig,
) -> Result<ClosednessCertificate> {
    if a.cols() != b.cols() {
        return Err(Error::DimensionMismatch {
            detail: format!(
                "closedness certificate needs equal column counts, got {} and {}",
                a.cols(),
                b.cols()
            ),
        });
    }
    let rank = numkernel::rank(&Matrix::vstack(b, a), tol)?;
    Ok(ClosednessCertificate { rank, closed: true })
}
