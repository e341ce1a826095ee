//! Structured verification reports: the full invariant suite for one
//! quotient instance, emitted by the CLI as JSON.

use serde::{Deserialize, Serialize};

use crate::algebra;
use crate::error::Result;
use crate::numkernel::{
    self, kernel_inclusion_residual, range_inclusion_residual, spectral_norm, svd, Matrix,
    ToleranceConfig,
};
use crate::oracle;
use crate::quotient::{LeftQuotient, RightQuotient};

/// One named residual check with the tolerance it was held to.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerificationCheck {
    pub name: String,
    pub residual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

/// Echo of the verified inputs.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct InstanceEcho {
    pub paths: Vec<String>,
    pub dims: Vec<(usize, usize)>,
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct Summary {
    pub passed: usize,
    pub failed: usize,
}

/// Residuals and pass flags produced by the oracle cross-checks. The summary
/// counts are maintained on insertion, so they are consistent with the check
/// list by construction.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerificationReport {
    pub instance: InstanceEcho,
    pub checks: Vec<VerificationCheck>,
    pub summary: Summary,
}

impl VerificationReport {
    pub fn new(instance: InstanceEcho) -> Self {
        Self {
            instance,
            checks: Vec::new(),
            summary: Summary::default(),
        }
    }

    pub fn push(&mut self, name: impl Into<String>, residual: f64, tolerance: f64) {
        let pass = residual <= tolerance;
        if pass {
            self.summary.passed += 1;
        } else {
            self.summary.failed += 1;
        }
        self.checks.push(VerificationCheck {
            name: name.into(),
            residual,
            tolerance,
            pass,
        });
    }

    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
    }
}

fn echo(paths: &[&str], mats: &[&Matrix]) -> InstanceEcho {
    InstanceEcho {
        paths: paths.iter().map(|s| s.to_string()).collect(),
        dims: mats.iter().map(|m| (m.rows(), m.cols())).collect(),
        seed: None,
    }
}

/// Full invariant suite for the left quotient `[B\A]`: the Douglas
/// conditions, the norm identity against the bisection oracle, agreement
/// with the QR-path least-squares oracle, and adjoint duality.
///
/// If the range inclusion fails, the report carries that single failed check
/// and the dependent checks are skipped.
pub fn verify_left(
    a: &Matrix,
    b: &Matrix,
    tol: &ToleranceConfig,
    paths: &[&str],
) -> Result<VerificationReport> {
    let mut report = VerificationReport::new(echo(paths, &[a, b]));

    let inclusion = range_inclusion_residual(a, b, tol)?;
    let inclusion_tol = tol.residual_threshold(a.norm_fro());
    report.push("range_inclusion", inclusion, inclusion_tol);
    if inclusion > inclusion_tol {
        return Ok(report);
    }

    let lq = LeftQuotient::new(a, b, tol)?;
    let q = lq.q();

    let factorization = (&(b * q) - a).norm_fro();
    report.push(
        "douglas_factorization",
        factorization,
        tol.residual_threshold(a.norm_fro()),
    );

    let af = svd(a, tol)?;
    let kernel_excess = (q - &(q * &af.corange_projector())).norm_fro();
    report.push(
        "douglas_b_kernel",
        kernel_excess,
        tol.residual_threshold(q.norm_fro()),
    );
    let qf = svd(q, tol)?;
    report.push(
        "douglas_b_rank",
        (qf.rank as f64 - af.rank as f64).abs(),
        0.0,
    );

    let bf = svd(b, tol)?;
    let corange_excess = (q - &(&bf.corange_projector() * q)).norm_fro();
    report.push(
        "douglas_c_corange",
        corange_excess,
        tol.residual_threshold(q.norm_fro()),
    );

    let mu = oracle::mu_bisection(a, b, tol)?;
    let norm = spectral_norm(q)?;
    report.push(
        "norm_matches_mu",
        (norm * norm - mu).abs(),
        1e-6 * (1.0 + mu),
    );

    let lsq = oracle::least_squares_douglas(a, b, tol)?;
    report.push(
        "oracle_least_squares",
        (q - &lsq).norm_fro(),
        1e-8 * (1.0 + q.norm_fro()),
    );

    let adj = lq.adjoint()?;
    report.push(
        "adjoint_duality",
        (adj.q() - &q.adjoint()).norm_fro(),
        1e-10 * (1.0 + q.norm_fro()),
    );

    Ok(report)
}

/// Full invariant suite for the right quotient `[A/B]`: the defining
/// factorization, domain annihilation, the kernel law
/// `N(q) intersect R(B) = B(N(A))`, and the dual norm/oracle checks obtained
/// from `[A/B]^* = [B^*\A^*]`.
pub fn verify_right(
    a: &Matrix,
    b: &Matrix,
    tol: &ToleranceConfig,
    paths: &[&str],
) -> Result<VerificationReport> {
    let mut report = VerificationReport::new(echo(paths, &[a, b]));

    let inclusion = kernel_inclusion_residual(b, a, tol)?;
    let inclusion_tol = tol.residual_threshold(a.norm_fro());
    report.push("kernel_inclusion", inclusion, inclusion_tol);
    if inclusion > inclusion_tol {
        return Ok(report);
    }

    let rq = RightQuotient::new(a, b, tol)?;
    let q = rq.q();

    let factorization = (&(q * b) - a).norm_fro();
    report.push(
        "defining_factorization",
        factorization,
        tol.residual_threshold(a.norm_fro()),
    );

    let domain_excess = (q - &(q * rq.domain_projector())).norm_fro();
    report.push(
        "domain_annihilation",
        domain_excess,
        tol.residual_threshold(q.norm_fro()),
    );

    report.push(
        "kernel_law",
        kernel_law_residual(a, b, q, tol)?,
        tol.projector_threshold(b.rows()),
    );

    let adj = rq.adjoint()?;
    report.push(
        "adjoint_duality",
        (adj.q() - &q.adjoint()).norm_fro(),
        1e-10 * (1.0 + q.norm_fro()),
    );

    let mu = oracle::mu_bisection(&a.adjoint(), &b.adjoint(), tol)?;
    let norm = spectral_norm(q)?;
    report.push(
        "norm_matches_mu_dual",
        (norm * norm - mu).abs(),
        1e-6 * (1.0 + mu),
    );

    let lsq = oracle::least_squares_douglas(&a.adjoint(), &b.adjoint(), tol)?;
    report.push(
        "oracle_least_squares_dual",
        (&q.adjoint() - &lsq).norm_fro(),
        1e-8 * (1.0 + q.norm_fro()),
    );

    Ok(report)
}

/// Distance between the projector onto `N(q) intersect R(B)` (via the
/// Anderson-Duffin formula `2 (P1 : P2)`) and the projector onto `B(N(A))`.
/// The image projector uses a singular-value floor at the scale of `b`:
/// `b * basis` is a product whose noise would otherwise count as rank.
fn kernel_law_residual(a: &Matrix, b: &Matrix, q: &Matrix, tol: &ToleranceConfig) -> Result<f64> {
    let qf = svd(q, tol)?;
    // Built from the null basis as a Gram sum, not as I - P, so the
    // projector is positive semidefinite to working precision even when the
    // kernel is trivial.
    let p_nq = match qf.null_basis() {
        Some(basis) => &basis * &basis.adjoint(),
        None => Matrix::zeros(q.cols(), q.cols()),
    };
    let p_rb = numkernel::projector_onto_range(b, tol)?;
    let intersection = algebra::parallel_sum(&p_nq, &p_rb, tol)?
        .value
        .scale_re(2.0);

    let af = svd(a, tol)?;
    let image = match af.null_basis() {
        Some(basis) => numkernel::projector_onto_range_with_floor(
            &(b * &basis),
            tol.residual_threshold(b.norm_fro()),
        )?,
        None => Matrix::zeros(b.rows(), b.rows()),
    };
    Ok(numkernel::projector_distance(&intersection, &image))
}
