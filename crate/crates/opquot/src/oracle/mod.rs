//! Independent brute-force verifiers and structured random-instance
//! generators. Every main-path formula has a cross-check here that shares no
//! factorization code with the SVD kernel.

mod cod;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::numkernel::{
    self, loewner_leq, range_inclusion_residual, spectral_norm, svd, Matrix, ToleranceConfig,
};

/// Instance-generation modes; each guarantees its defining predicate by
/// construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GenMode {
    RangeIncluded,
    KernelIncluded,
    SameRange,
    SameKernel,
    PinvProductPair,
    WitnessCompatible,
}

/// Deterministic description of a generated instance. Identical specs yield
/// bitwise-identical matrices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InstanceSpec {
    pub m: usize,
    pub n: usize,
    pub p: usize,
    pub rank_b: usize,
    pub seed: u64,
    pub mode: GenMode,
    /// Push the smallest retained singular value down to 1e-7 for
    /// conditioning stress tests.
    pub stress: bool,
}

impl InstanceSpec {
    pub fn new(m: usize, n: usize, p: usize, rank_b: usize, seed: u64, mode: GenMode) -> Self {
        Self {
            m,
            n,
            p,
            rank_b,
            seed,
            mode,
            stress: false,
        }
    }
}

/// What a generator hands back: a matrix pair for the two-operand modes or a
/// quadruple for product tests.
///
/// Pair semantics per mode: `(a, b)` with `R(a) subset R(b)`
/// (range_included), `N(b) subset N(a)` (kernel_included), equal ranges /
/// kernels (same_range, same_kernel), or `(s, t)` with `R(t) = N(s)^perp`
/// (pinv_product_pair).
#[derive(Debug, Clone)]
pub enum GeneratedInstance {
    Pair {
        a: Matrix,
        b: Matrix,
    },
    Quad {
        a: Matrix,
        b: Matrix,
        c: Matrix,
        d: Matrix,
    },
}

/// Complex matrix with independent standard-normal real and imaginary parts.
pub fn gaussian_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> Matrix {
    let entries = (0..rows * cols)
        .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
        .collect();
    Matrix::new(rows, cols, entries).expect("gaussian entries are finite")
}

/// Random unitary from the QR factor of a complex Gaussian square matrix.
pub fn random_unitary(rng: &mut ChaCha8Rng, n: usize) -> Matrix {
    let g = gaussian_matrix(rng, n, n);
    cod::qr_factor(&g, false).q
}

/// Singular values placed linearly from 1.0 down to 0.1 (a single value is
/// 1.0); the stress flag forces the smallest to 1e-7.
fn placed_sigma(rank: usize, stress: bool) -> Vec<f64> {
    let mut sigma: Vec<f64> = (0..rank)
        .map(|i| {
            if rank == 1 {
                1.0
            } else {
                1.0 - 0.9 * (i as f64) / (rank as f64 - 1.0)
            }
        })
        .collect();
    if stress {
        if let Some(last) = sigma.last_mut() {
            *last = 1e-7;
        }
    }
    sigma
}

/// Matrix with an exactly controlled spectrum: `rank` singular values placed
/// by `placed_sigma`, random unitary factors.
pub fn controlled_rank_matrix(
    rng: &mut ChaCha8Rng,
    rows: usize,
    cols: usize,
    rank: usize,
    stress: bool,
) -> Matrix {
    assert!(rank >= 1 && rank <= rows.min(cols));
    let u = random_unitary(rng, rows);
    let v = random_unitary(rng, cols);
    let sigma = placed_sigma(rank, stress);
    let mut out = Matrix::zeros(rows, cols);
    for (k, &s) in sigma.iter().enumerate() {
        for i in 0..rows {
            let uik = u.get(i, k) * s;
            for j in 0..cols {
                let cur = out.get(i, j);
                out.set(i, j, cur + uik * v.get(j, k).conj());
            }
        }
    }
    out
}

fn check(cond: bool, reason: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::InvalidSpec {
            reason: reason.to_string(),
        })
    }
}

/// Draws the instance described by `spec`. Construction is by factorization,
/// so each mode's defining predicate holds exactly rather than merely within
/// tolerance.
pub fn generate(spec: &InstanceSpec) -> Result<GeneratedInstance> {
    let InstanceSpec {
        m,
        n,
        p,
        rank_b,
        seed,
        mode,
        stress,
    } = *spec;
    check(m >= 1 && n >= 1 && p >= 1, "dimensions must be positive")?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match mode {
        GenMode::RangeIncluded => {
            check(
                rank_b >= 1 && rank_b <= m.min(p),
                "rank_b must fit in m x p",
            )?;
            let b = controlled_rank_matrix(&mut rng, m, p, rank_b, stress);
            let x = gaussian_matrix(&mut rng, p, n);
            let a = &b * &x;
            Ok(GeneratedInstance::Pair { a, b })
        }
        GenMode::KernelIncluded => {
            check(
                rank_b >= 1 && rank_b <= p.min(n),
                "rank_b must fit in p x n",
            )?;
            let b = controlled_rank_matrix(&mut rng, p, n, rank_b, stress);
            let x = gaussian_matrix(&mut rng, m, p);
            let a = &x * &b;
            Ok(GeneratedInstance::Pair { a, b })
        }
        GenMode::SameRange => {
            check(
                rank_b >= 1 && rank_b <= m.min(p).min(n),
                "rank_b must fit in both m x p and m x n",
            )?;
            // Shared column space: both factor through the same orthonormal
            // u_r, so P_{R(A)} = P_{R(B)} exactly.
            let u = random_unitary(&mut rng, m).columns(0, rank_b);
            let vb = random_unitary(&mut rng, p).columns(0, rank_b);
            let va = random_unitary(&mut rng, n).columns(0, rank_b);
            let b = assemble(&u, &placed_sigma(rank_b, stress), &vb);
            let a = assemble(&u, &placed_sigma(rank_b, false), &va);
            Ok(GeneratedInstance::Pair { a, b })
        }
        GenMode::SameKernel => {
            check(
                rank_b >= 1 && rank_b <= p.min(n).min(m),
                "rank_b must fit in both p x n and m x n",
            )?;
            // Shared row space: N(A) = N(B) = R(v_r)^perp exactly.
            let v = random_unitary(&mut rng, n).columns(0, rank_b);
            let ub = random_unitary(&mut rng, p).columns(0, rank_b);
            let ua = random_unitary(&mut rng, m).columns(0, rank_b);
            let b = assemble(&ub, &placed_sigma(rank_b, stress), &v);
            let a = assemble(&ua, &placed_sigma(rank_b, false), &v);
            Ok(GeneratedInstance::Pair { a, b })
        }
        GenMode::PinvProductPair => {
            check(
                rank_b >= 1 && rank_b <= p.min(n) && rank_b <= m,
                "rank_b must fit in p x n with full-column-rank m x rank_b factor",
            )?;
            // t with known range basis q; s = f q^* has N(s) = R(t)^perp.
            let ut = random_unitary(&mut rng, p);
            let vt = random_unitary(&mut rng, n).columns(0, rank_b);
            let basis = ut.columns(0, rank_b);
            let t = assemble(&basis, &placed_sigma(rank_b, stress), &vt);
            let f = controlled_rank_matrix(&mut rng, m, rank_b, rank_b, false);
            let s = &f * &basis.adjoint();
            Ok(GeneratedInstance::Pair { a: s, b: t })
        }
        GenMode::WitnessCompatible => {
            check(
                rank_b >= 1 && rank_b <= m.min(n),
                "rank_b must fit in m x n",
            )?;
            check(
                p >= n,
                "witness compatibility needs p >= n for a full-column-rank d",
            )?;
            let b = controlled_rank_matrix(&mut rng, m, n, rank_b, stress);
            let d = controlled_rank_matrix(&mut rng, p, n, n, false);
            let x = gaussian_matrix(&mut rng, n, n);
            let y = gaussian_matrix(&mut rng, n, n);
            let a = &b * &x;
            let c = &d * &y;
            Ok(GeneratedInstance::Quad { a, b, c, d })
        }
    }
}

fn assemble(u: &Matrix, sigma: &[f64], v: &Matrix) -> Matrix {
    let mut out = Matrix::zeros(u.rows(), v.rows());
    for (k, &s) in sigma.iter().enumerate() {
        for i in 0..u.rows() {
            let uik = u.get(i, k) * s;
            for j in 0..v.rows() {
                let cur = out.get(i, j);
                out.set(i, j, cur + uik * v.get(j, k).conj());
            }
        }
    }
    out
}

/// `inf of mu >= 0 with a a^* <= mu b b^*` by bisection; infinite when the
/// range inclusion fails (no finite mu exists). The search interval is
/// `[0, (|a|_2 / sigma_min_kept(b))^2 + 1]`; if the Löwner test fails even at
/// the upper bound the answer is infinite rather than widening the search.
pub fn mu_bisection(a: &Matrix, b: &Matrix, tol: &ToleranceConfig) -> Result<f64> {
    if a.rows() != b.rows() {
        return Err(Error::DimensionMismatch {
            detail: format!(
                "mu_bisection needs equal row counts, got {} and {}",
                a.rows(),
                b.rows()
            ),
        });
    }
    if !numkernel::range_included(a, b, tol)? {
        return Ok(f64::INFINITY);
    }
    let bf = svd(b, tol)?;
    let Some(sigma_min) = bf.sigma_min_kept() else {
        // b is numerically zero; the inclusion then forces a ~ 0.
        return Ok(0.0);
    };
    let aat = a * &a.adjoint();
    let bbt = b * &b.adjoint();
    let a_norm = spectral_norm(a)?;
    let upper = (a_norm / sigma_min).powi(2) + 1.0;

    let feasible = |mu: f64| loewner_leq(&aat, &bbt.scale_re(mu), tol);
    if !feasible(upper)? {
        return Ok(f64::INFINITY);
    }
    if feasible(0.0)? {
        return Ok(0.0);
    }
    let width = 1e-10 * (1.0 + upper);
    let mut lo = 0.0;
    let mut hi = upper;
    while hi - lo > width {
        let mid = 0.5 * (lo + hi);
        if feasible(mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

/// Douglas solution of `B X = A` by minimum-norm least squares on a QR
/// factorization path. Must agree with `B^dagger A` within combined
/// tolerance; this is the oracle for left quotients.
pub fn least_squares_douglas(a: &Matrix, b: &Matrix, tol: &ToleranceConfig) -> Result<Matrix> {
    let residual = range_inclusion_residual(a, b, tol)?;
    let threshold = tol.residual_threshold(a.norm_fro());
    if residual > threshold {
        return Err(Error::RangeInclusionViolated {
            residual,
            tolerance: threshold,
        });
    }
    Ok(cod::min_norm_solve(
        b,
        a,
        tol.rank_cutoff(b.rows(), b.cols()),
    ))
}

/// Outcome of probing the uniqueness clause of the Douglas solution.
#[derive(Debug, Clone, PartialEq)]
pub struct UniquenessReport {
    pub trials: usize,
    /// Trials whose perturbed solution differs measurably from `B^dagger A`.
    pub alternatives_found: usize,
    /// Alternatives whose range escapes `R(B^*)`; must equal
    /// `alternatives_found`.
    pub alternatives_violating_c: usize,
    /// Largest `|B X - A|` over all trials; every `X` must still solve the
    /// equation.
    pub max_factorization_residual: f64,
    pub kernel_dimension: usize,
}

/// For `trials` random `W`, forms `X = B^dagger A + (I - B^dagger B) W`.
/// Every `X` solves `B X = A`; `X` satisfies the range condition
/// `R(X) subset R(B^*)` only when the added kernel component vanishes. With
/// a nontrivial `N(B)` the probe therefore finds alternative solutions, all
/// of which violate the range condition.
pub fn douglas_uniqueness_probe(
    a: &Matrix,
    b: &Matrix,
    trials: usize,
    seed: u64,
    tol: &ToleranceConfig,
) -> Result<UniquenessReport> {
    let residual = range_inclusion_residual(a, b, tol)?;
    let threshold = tol.residual_threshold(a.norm_fro());
    if residual > threshold {
        return Err(Error::RangeInclusionViolated {
            residual,
            tolerance: threshold,
        });
    }
    let bf = svd(b, tol)?;
    let q0 = &bf.pseudoinverse() * a;
    let corange = bf.corange_projector();
    let annihilator = &Matrix::identity(b.cols()) - &corange;
    let kernel_dimension = b.cols() - bf.rank;

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut alternatives_found = 0;
    let mut alternatives_violating_c = 0;
    let mut max_factorization_residual: f64 = 0.0;
    let alt_threshold = tol.residual_threshold(q0.norm_fro());

    for _ in 0..trials {
        let w = gaussian_matrix(&mut rng, q0.rows(), q0.cols());
        let x = &q0 + &(&annihilator * &w);
        let fact = (&(b * &x) - a).norm_fro();
        max_factorization_residual = max_factorization_residual.max(fact);
        let delta = (&x - &q0).norm_fro();
        if delta > alt_threshold {
            alternatives_found += 1;
            // Condition (c) measured on X itself, not on the perturbation.
            let escape = (&x - &(&corange * &x)).norm_fro();
            if escape > alt_threshold {
                alternatives_violating_c += 1;
            }
        }
    }
    Ok(UniquenessReport {
        trials,
        alternatives_found,
        alternatives_violating_c,
        max_factorization_residual,
        kernel_dimension,
    })
}
