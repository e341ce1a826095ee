//! Property-based invariants: every law the quotient algebra promises,
//! checked on structured random instances with shrinking.

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use opquot::algebra;
use opquot::numkernel::{self, c64, svd, vec_norm, Matrix, ToleranceConfig};
use opquot::oracle::{self, GenMode, GeneratedInstance, InstanceSpec};
use opquot::quotient::{self, LeftQuotient, RightQuotient};

fn tol() -> ToleranceConfig {
    ToleranceConfig::default()
}

fn close(a: &Matrix, b: &Matrix, eps: f64) -> bool {
    (a - b).norm_fro() <= eps
}

/// Random complex matrix with entries in a tame box.
fn complex_matrix(max_dim: usize) -> impl Strategy<Value = Matrix> {
    (1..=max_dim, 1..=max_dim).prop_flat_map(|(r, c)| {
        proptest::collection::vec((-3.0..3.0f64, -3.0..3.0f64), r * c).prop_map(move |vals| {
            Matrix::new(r, c, vals.into_iter().map(|(re, im)| c64(re, im)).collect()).unwrap()
        })
    })
}

/// Dimensions plus a rank bounded by the first two, plus a seed.
fn spec_dims() -> impl Strategy<Value = (usize, usize, usize, usize, u64)> {
    (1usize..=6, 1usize..=6, 1usize..=6, any::<u64>())
        .prop_flat_map(|(m, p, n, seed)| (Just(m), Just(p), Just(n), 1..=m.min(p), Just(seed)))
}

fn gen_pair(
    mode: GenMode,
    m: usize,
    n: usize,
    p: usize,
    rank: usize,
    seed: u64,
) -> (Matrix, Matrix) {
    // Each mode has its own shape constraint on the controlled rank.
    let rank = match mode {
        GenMode::RangeIncluded => rank.min(m).min(p),
        GenMode::KernelIncluded => rank.min(p).min(n),
        GenMode::SameRange | GenMode::SameKernel | GenMode::PinvProductPair => {
            rank.min(m).min(p).min(n)
        }
        GenMode::WitnessCompatible => rank.min(m).min(n),
    }
    .max(1);
    match oracle::generate(&InstanceSpec::new(m, n, p, rank, seed, mode)).unwrap() {
        GeneratedInstance::Pair { a, b } => (a, b),
        GeneratedInstance::Quad { .. } => unreachable!(),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn penrose_axioms_hold(m in complex_matrix(6)) {
        let f = svd(&m, &tol()).unwrap();
        let p = f.pseudoinverse();
        let scale = 1e-12 * (1.0 + f.sigma_max());
        prop_assert!(close(&(&(&m * &p) * &m), &m, scale));
        let pscale = 1e-12 * (1.0 + numkernel::spectral_norm(&p).unwrap());
        prop_assert!(close(&(&(&p * &m) * &p), &p, pscale));
        prop_assert!((&m * &p).hermitian_residual() <= scale);
        prop_assert!((&p * &m).hermitian_residual() <= scale);
    }

    #[test]
    fn projector_laws(m in complex_matrix(6)) {
        let t = tol();
        let pr = numkernel::projector_onto_range(&m, &t).unwrap();
        let pc = numkernel::projector_onto_corange(&m, &t).unwrap();
        for p in [&pr, &pc] {
            prop_assert!(close(&(p * p), p, 1e-12));
            prop_assert!(p.hermitian_residual() <= 1e-12);
        }
        // The range projector fixes the matrix.
        prop_assert!(close(&(&pr * &m), &m, 1e-11 * (1.0 + m.norm_fro())));
    }

    #[test]
    fn rank_is_shared_by_pinv_and_projectors(m in complex_matrix(6)) {
        let t = tol();
        let f = svd(&m, &t).unwrap();
        let p = f.pseudoinverse();
        prop_assert_eq!(f.rank, numkernel::rank(&p, &t).unwrap());
        prop_assert_eq!(f.rank, numkernel::rank(&(&m * &p), &t).unwrap());
        prop_assert_eq!(f.rank, numkernel::rank(&(&p * &m), &t).unwrap());
    }

    #[test]
    fn sqrt_squares_and_commutes(g in complex_matrix(5)) {
        let t = tol();
        let p = &g.adjoint() * &g;
        let s = numkernel::hermitian_psd_sqrt(&p, &t).unwrap();
        prop_assert!(close(&(&s * &s), &p, t.residual_threshold(p.norm_fro())));
        prop_assert!(close(&(&s * &p), &(&p * &s), 1e-10 * (1.0 + p.norm_fro())));
    }

    #[test]
    fn range_kernel_duality(a in complex_matrix(5), b in complex_matrix(5)) {
        prop_assume!(a.rows() == b.rows());
        let t = tol();
        let lhs = numkernel::range_included(&a, &b, &t).unwrap();
        let rhs = numkernel::kernel_included(&b.adjoint(), &a.adjoint(), &t).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn majorization_matches_inclusion((m, p, n, rank, seed) in spec_dims()) {
        let t = tol();
        // Included by construction: mu must be finite and match the norm.
        let (a, b) = gen_pair(GenMode::RangeIncluded, m, n, p, rank, seed);
        let mu = oracle::mu_bisection(&a, &b, &t).unwrap();
        prop_assert!(mu.is_finite());
        let lq = LeftQuotient::new(&a, &b, &t).unwrap();
        let norm = lq.spectral_norm().unwrap();
        prop_assert!((norm * norm - mu).abs() <= 1e-6 * (1.0 + mu));
    }

    #[test]
    fn non_included_pairs_have_infinite_mu(seed in any::<u64>()) {
        let t = tol();
        // b spans a proper subspace; a random a escapes it almost surely.
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let b = oracle::controlled_rank_matrix(&mut rng, 4, 3, 1, false);
        let a = oracle::gaussian_matrix(&mut rng, 4, 2);
        prop_assume!(!numkernel::range_included(&a, &b, &t).unwrap());
        prop_assert!(oracle::mu_bisection(&a, &b, &t).unwrap().is_infinite());
    }

    #[test]
    fn douglas_solution_properties((m, p, n, rank, seed) in spec_dims()) {
        let t = tol();
        let (a, b) = gen_pair(GenMode::RangeIncluded, m, n, p, rank, seed);
        let lq = LeftQuotient::new(&a, &b, &t).unwrap();
        let q = lq.q();
        // B q = A.
        prop_assert!(close(&(&b * q), &a, 1e-10 * (1.0 + a.norm_fro())));
        // N(q) = N(A): q annihilates N(A), ranks agree.
        let af = svd(&a, &t).unwrap();
        prop_assert!((q - &(q * &af.corange_projector())).norm_fro() <= 1e-10 * (1.0 + q.norm_fro()));
        prop_assert_eq!(numkernel::rank(q, &t).unwrap(), af.rank);
        // R(q) inside R(B^*).
        let bf = svd(&b, &t).unwrap();
        prop_assert!((q - &(&bf.corange_projector() * q)).norm_fro() <= 1e-10 * (1.0 + q.norm_fro()));
        // QR-path oracle agrees.
        let lsq = oracle::least_squares_douglas(&a, &b, &t).unwrap();
        prop_assert!(close(q, &lsq, 1e-8 * (1.0 + q.norm_fro())));
    }

    #[test]
    fn douglas_uniqueness_family((m, p, n, rank, seed) in spec_dims()) {
        let t = tol();
        let (a, b) = gen_pair(GenMode::RangeIncluded, m, n, p, rank, seed);
        let report = oracle::douglas_uniqueness_probe(&a, &b, 8, seed ^ 0xA17, &t).unwrap();
        prop_assert!(report.max_factorization_residual <= 1e-9);
        prop_assert_eq!(report.alternatives_violating_c, report.alternatives_found);
        if report.kernel_dimension > 0 {
            prop_assert!(report.alternatives_found > 0);
        } else {
            prop_assert_eq!(report.alternatives_found, 0);
        }
    }

    #[test]
    fn adjoint_duality_and_involution((m, p, n, rank, seed) in spec_dims()) {
        let t = tol();
        let (a, b) = gen_pair(GenMode::RangeIncluded, m, n, p, rank, seed);
        let lq = LeftQuotient::new(&a, &b, &t).unwrap();
        let rq = lq.adjoint().unwrap();
        prop_assert!(close(rq.q(), &lq.q().adjoint(), 1e-10 * (1.0 + lq.q().norm_fro())));
        let back = rq.adjoint().unwrap();
        prop_assert!(close(back.q(), lq.q(), 1e-10 * (1.0 + lq.q().norm_fro())));
    }

    #[test]
    fn scalar_quotients_divide(re in -2.0..2.0f64, im in -2.0..2.0f64,
                               bre in 0.5..2.0f64, bim in -2.0..2.0f64) {
        let t = tol();
        let a = Matrix::new(1, 1, vec![c64(re, im)]).unwrap();
        let b = Matrix::new(1, 1, vec![c64(bre, bim)]).unwrap();
        let lq = LeftQuotient::new(&a, &b, &t).unwrap();
        let expected = c64(re, im) / c64(bre, bim);
        prop_assert!((lq.q().get(0, 0) - expected).norm() <= 1e-12);
        let rq = RightQuotient::new(&a, &b, &t).unwrap();
        prop_assert!((rq.q().get(0, 0) - expected).norm() <= 1e-12);
    }

    #[test]
    fn apply_left_factorization((m, p, n, rank, seed) in spec_dims(),
                                xs in proptest::collection::vec((-2.0..2.0f64, -2.0..2.0f64), 6)) {
        let t = tol();
        let (a, b) = gen_pair(GenMode::RangeIncluded, m, n, p, rank, seed);
        let x: Vec<_> = xs.iter().take(a.cols()).map(|&(re, im)| c64(re, im)).collect();
        prop_assume!(x.len() == a.cols());
        let lq = LeftQuotient::new(&a, &b, &t).unwrap();
        let y = lq.apply(&x).unwrap();
        // B (q x) = A x.
        let lhs = b.apply(&y);
        let rhs = a.apply(&x);
        let diff: Vec<_> = lhs.iter().zip(&rhs).map(|(l, r)| l - r).collect();
        prop_assert!(vec_norm(&diff) <= 1e-9 * (1.0 + vec_norm(&rhs)));
    }

    #[test]
    fn apply_right_defining_property((m, p, n, rank, seed) in spec_dims(),
                                     xs in proptest::collection::vec((-2.0..2.0f64, -2.0..2.0f64), 6)) {
        let t = tol();
        let (a, b) = gen_pair(GenMode::KernelIncluded, m, n, p, rank, seed);
        let x: Vec<_> = xs.iter().take(b.cols()).map(|&(re, im)| c64(re, im)).collect();
        prop_assume!(x.len() == b.cols());
        let rq = RightQuotient::new(&a, &b, &t).unwrap();
        let y = b.apply(&x);
        let got = rq.apply(&y).unwrap();
        let want = a.apply(&x);
        let diff: Vec<_> = got.iter().zip(&want).map(|(g, w)| g - w).collect();
        prop_assert!(vec_norm(&diff) <= 1e-9 * (1.0 + vec_norm(&want)));
    }

    #[test]
    fn inverse_compositions_are_projectors((m, p, n, rank, seed) in spec_dims()) {
        let t = tol();
        let r = rank.min(n);
        let (a, b) = gen_pair(GenMode::SameRange, m, n, p, r, seed);
        let lq = LeftQuotient::new(&a, &b, &t).unwrap();
        let inv = lq.invert(&t).unwrap();
        let p_nb = numkernel::projector_onto_corange(&b, &t).unwrap();
        let p_na = numkernel::projector_onto_corange(&a, &t).unwrap();
        prop_assert!(close(&(lq.q() * inv.q()), &p_nb, 1e-9));
        prop_assert!(close(&(inv.q() * lq.q()), &p_na, 1e-9));
    }

    #[test]
    fn right_quotient_kernel_law((m, p, n, rank, seed) in spec_dims()) {
        let t = tol();
        let (a, b) = gen_pair(GenMode::KernelIncluded, m, n, p, rank, seed);
        let rq = RightQuotient::new(&a, &b, &t).unwrap();
        // Projector onto N(q) intersect R(B) (Anderson-Duffin through the
        // parallel sum) equals the projector onto B(N(A)).
        let qf = svd(rq.q(), &t).unwrap();
        let p_nq = match qf.null_basis() {
            Some(basis) => &basis * &basis.adjoint(),
            None => Matrix::zeros(rq.q().cols(), rq.q().cols()),
        };
        let p_rb = numkernel::projector_onto_range(&b, &t).unwrap();
        let inter = algebra::parallel_sum(&p_nq, &p_rb, &t).unwrap().value.scale_re(2.0);
        let af = svd(&a, &t).unwrap();
        let image = match af.null_basis() {
            Some(basis) => numkernel::projector_onto_range_with_floor(
                &(&b * &basis),
                t.residual_threshold(b.norm_fro()),
            )
            .unwrap(),
            None => Matrix::zeros(b.rows(), b.rows()),
        };
        prop_assert!(numkernel::projector_distance(&inter, &image) <= t.projector_threshold(b.rows()));
    }

    #[test]
    fn graph_adjoint_relation((m, p, n, rank, seed) in spec_dims()) {
        let t = tol();
        let (a, b) = gen_pair(GenMode::KernelIncluded, m, n, p, rank, seed);
        let g = quotient::graph(&a, &b, &t).unwrap();
        let gdim = g.graph_basis.as_ref().map_or(0, |m| m.cols());
        let adim = g.adjoint_graph_basis.as_ref().map_or(0, |m| m.cols());
        prop_assert_eq!(gdim + adim, a.rows() + b.rows());
        if let Some(basis) = &g.graph_basis {
            // Orthonormal columns spanning R(t).
            let gram = &basis.adjoint() * basis;
            prop_assert!(close(&gram, &Matrix::identity(basis.cols()), 1e-11));
            let span = basis * &basis.adjoint();
            let p_rt = numkernel::projector_onto_range(&g.t, &t).unwrap();
            prop_assert!(numkernel::projector_distance(&span, &p_rt) <= t.projector_threshold(g.t.rows()));
        }
        if let Some(adj) = &g.adjoint_graph_basis {
            for j in 0..adj.cols() {
                let col = adj.column(j);
                let x = &col[..g.numerator_rows];
                let y = &col[g.numerator_rows..];
                let lhs = a.adjoint().apply(x);
                let rhs = b.adjoint().apply(y);
                let diff: Vec<_> = lhs.iter().zip(&rhs).map(|(l, r)| l - r).collect();
                prop_assert!(vec_norm(&diff) <= 1e-10);
            }
        }
    }

    #[test]
    fn r_operator_range_is_the_row_space_sum((m, p, n, rank, seed) in spec_dims()) {
        let t = tol();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = oracle::controlled_rank_matrix(&mut rng, m, n, rank.min(m).min(n), false);
        let b = oracle::controlled_rank_matrix(&mut rng, p, n, rank.min(p).min(n), false);
        let r = quotient::r_operator(&a, &b, &t).unwrap();
        let stacked = Matrix::vstack(&b, &a);
        prop_assert_eq!(
            numkernel::rank(&r, &t).unwrap(),
            numkernel::rank(&stacked, &t).unwrap()
        );
        let cert = quotient::closedness_certificate(&a, &b, &t).unwrap();
        prop_assert!(cert.closed);
        prop_assert_eq!(cert.rank, numkernel::rank(&stacked, &t).unwrap());
    }

    #[test]
    fn parallel_sum_laws((m, p, n, rank, seed) in spec_dims()) {
        let t = tol();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let b = oracle::controlled_rank_matrix(&mut rng, m, n, rank.min(n), false);
        let d = oracle::controlled_rank_matrix(&mut rng, p, n, p.min(n), false);
        let btb = &b.adjoint() * &b;
        let dtd = &d.adjoint() * &d;
        let fwd = algebra::parallel_sum(&btb, &dtd, &t).unwrap();
        let bwd = algebra::parallel_sum(&dtd, &btb, &t).unwrap();
        prop_assert!(close(&fwd.value, &bwd.value, 1e-10));
        // Range of S is the intersection of the row spaces.
        let stacked = Matrix::hstack(&b.adjoint(), &d.adjoint());
        let expected = rank.min(n) + p.min(n) - numkernel::rank(&stacked, &t).unwrap();
        prop_assert_eq!(fwd.rank, expected);
    }

    #[test]
    fn sum_left_literal_form((m, p, n, rank, seed) in spec_dims()) {
        let t = tol();
        let (a, b) = gen_pair(GenMode::RangeIncluded, m, n, p, rank, seed);
        let (c, d) = gen_pair(GenMode::RangeIncluded, m, n, p, rank, seed ^ 0xFEED);
        let lq1 = LeftQuotient::new(&a, &b, &t).unwrap();
        let lq2 = LeftQuotient::new(&c, &d, &t).unwrap();
        let (sum, defect) = algebra::sum_left(&lq1, &lq2, &t).unwrap();
        let psum = algebra::parallel_sum(&(&b.adjoint() * &b), &(&d.adjoint() * &d), &t).unwrap();
        let plain = lq1.q() + lq2.q();
        prop_assert!(close(sum.q(), &(&psum.range_projector * &plain), 1e-8));
        // Zero defect certifies the unprojected identity.
        if defect <= 1e-10 {
            prop_assert!(close(sum.q(), &plain, 1e-8));
        }
        // The witness matrices satisfy their defining equations.
        let w = algebra::sum_witness_left(&lq1, &lq2, &t).unwrap();
        let bp = numkernel::pseudoinverse(&b, &t).unwrap();
        let dp = numkernel::pseudoinverse(&d, &t).unwrap();
        prop_assert!(close(&w.b1, &(&psum.s * &bp), 1e-10));
        prop_assert!(close(&w.d1, &(&psum.s * &dp), 1e-10));
    }

    #[test]
    fn sum_right_literal_form((m, p, n, rank, seed) in spec_dims()) {
        let t = tol();
        let (a, b) = gen_pair(GenMode::RangeIncluded, m, n, p, rank, seed);
        let (c, d) = gen_pair(GenMode::RangeIncluded, m, n, p, rank, seed ^ 0xBEEF);
        let rq1 = RightQuotient::new(&a.adjoint(), &b.adjoint(), &t).unwrap();
        let rq2 = RightQuotient::new(&c.adjoint(), &d.adjoint(), &t).unwrap();
        let (sum, _) = algebra::sum_right(&rq1, &rq2, &t).unwrap();
        let psum = algebra::parallel_sum(
            &(&b.adjoint() * &b),
            &(&d.adjoint() * &d),
            &t,
        ).unwrap();
        let plain = rq1.q() + rq2.q();
        prop_assert!(close(sum.q(), &(&plain * &psum.range_projector), 1e-8));
        // The right witness pair is (B^dagger S, D^dagger S).
        let w = algebra::sum_witness_right(&rq1, &rq2, &t).unwrap();
        let bp = numkernel::pseudoinverse(rq1.denominator(), &t).unwrap();
        let dp = numkernel::pseudoinverse(rq2.denominator(), &t).unwrap();
        prop_assert!(close(&w.b1, &(&bp * &psum.s), 1e-10));
        prop_assert!(close(&w.d1, &(&dp * &psum.s), 1e-10));
        // Adjoint consistency with the left sum.
        let lq1 = LeftQuotient::new(&a, &b, &t).unwrap();
        let lq2 = LeftQuotient::new(&c, &d, &t).unwrap();
        let (lsum, _) = algebra::sum_left(&lq1, &lq2, &t).unwrap();
        prop_assert!(close(&sum.q().adjoint(), lsum.q(), 1e-8));
    }

    #[test]
    fn same_denominator_sums_are_plain_sums((m, p, n, rank, seed) in spec_dims()) {
        let t = tol();
        let (a, b) = gen_pair(GenMode::RangeIncluded, m, n, p, rank, seed);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xABC);
        let c = &b * &oracle::gaussian_matrix(&mut rng, b.cols(), a.cols());
        let lq1 = LeftQuotient::new(&a, &b, &t).unwrap();
        let lq2 = LeftQuotient::new(&c, &b, &t).unwrap();
        let sum = algebra::sum_left_same_denominator(&lq1, &lq2, &t).unwrap();
        prop_assert!(close(sum.q(), &(lq1.q() + lq2.q()), 1e-9 * (1.0 + lq1.q().norm_fro() + lq2.q().norm_fro())));

        let rq1 = RightQuotient::new(&a.adjoint(), &b.adjoint(), &t).unwrap();
        let rq2 = RightQuotient::new(&c.adjoint(), &b.adjoint(), &t).unwrap();
        let rsum = algebra::sum_right_same_denominator(&rq1, &rq2, &t).unwrap();
        prop_assert!(close(rsum.q(), &(rq1.q() + rq2.q()), 1e-9 * (1.0 + rq1.q().norm_fro() + rq2.q().norm_fro())));
    }

    #[test]
    fn witness_products_match_direct_products(n in 1usize..=4, m in 1usize..=4, extra in 0usize..=2, seed in any::<u64>()) {
        let t = tol();
        let p = n + extra;
        let rank = 1 + seed as usize % m.min(n);
        let quad = oracle::generate(&InstanceSpec::new(m, n, p, rank, seed, GenMode::WitnessCompatible)).unwrap();
        let GeneratedInstance::Quad { a, b, c, d } = quad else { unreachable!() };
        let lq1 = LeftQuotient::new(&a, &b, &t).unwrap();
        let lq2 = LeftQuotient::new(&c, &d, &t).unwrap();
        let w = algebra::auto_witness_left(&lq1, &lq2, &t).unwrap();
        prop_assert!(w.valid);
        let prod = algebra::product_left(&lq1, &lq2, &w, &t).unwrap();
        prop_assert!(close(prod.q(), &(lq1.q() * lq2.q()), 1e-8));
    }

    #[test]
    fn reverse_order_law((m, p, n, rank, seed) in spec_dims()) {
        let t = tol();
        let r = rank.min(n).min(m);
        let (s, tm) = gen_pair(GenMode::PinvProductPair, m, n, p, r, seed);
        let got = algebra::pinv_product(&s, &tm, &t).unwrap();
        let st = &s * &tm;
        let direct = numkernel::pseudoinverse(&st, &t).unwrap();
        prop_assert!(close(&got, &direct, 1e-9));
        prop_assert_eq!(numkernel::rank(&st, &t).unwrap(), numkernel::rank(&s, &t).unwrap());
    }

    #[test]
    fn simplification_with_adjoint_factor_is_invariant((m, p, n, rank, seed) in spec_dims()) {
        let t = tol();
        let (a, b) = gen_pair(GenMode::RangeIncluded, m, n, p, rank, seed);
        let lq = LeftQuotient::new(&a, &b, &t).unwrap();
        let s = algebra::simplify_left(&b.adjoint(), &lq, &t).unwrap();
        prop_assert!(close(s.q(), lq.q(), 1e-9));

        let rq = RightQuotient::new(&a.adjoint(), &b.adjoint(), &t).unwrap();
        let rs = algebra::simplify_right(&b, &rq, &t).unwrap();
        prop_assert!(close(rs.q(), rq.q(), 1e-9));
    }

    #[test]
    fn canonical_decomposition_reproduces((m, p, n, rank, seed) in spec_dims()) {
        let t = tol();
        let _ = p;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = oracle::controlled_rank_matrix(&mut rng, m, n, rank.min(n), false);
        let (first, second) = algebra::canonical_decomposition(&a, &t).unwrap();
        prop_assert!(close(first.q(), &a, 1e-9));
        let pinv = numkernel::pseudoinverse(&a, &t).unwrap();
        prop_assert!(close(second.q(), &pinv, 1e-9));
    }

    #[test]
    fn io_round_trips_are_bitwise(m in complex_matrix(5)) {
        let mm = opquot::io::format_matrix(&m, opquot::io::MatrixFormat::MatrixMarket);
        prop_assert!(opquot::io::parse_matrix(&mm).unwrap() == m);
        let csv = opquot::io::format_matrix(&m, opquot::io::MatrixFormat::Csv);
        prop_assert!(opquot::io::parse_matrix(&csv).unwrap() == m);
    }

    #[test]
    fn verify_reports_pass_on_valid_instances((m, p, n, rank, seed) in spec_dims()) {
        let t = tol();
        let (a, b) = gen_pair(GenMode::RangeIncluded, m, n, p, rank, seed);
        let left = opquot::report::verify_left(&a, &b, &t, &[]).unwrap();
        prop_assert!(left.all_passed(), "{:?}", left);
        let (a2, b2) = gen_pair(GenMode::KernelIncluded, m, n, p, rank, seed ^ 0x11);
        let right = opquot::report::verify_right(&a2, &b2, &t, &[]).unwrap();
        prop_assert!(right.all_passed(), "{:?}", right);
    }
}
