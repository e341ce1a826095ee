//! Householder QR with column pivoting and the complete orthogonal
//! decomposition built on it. This is the oracle's factorization path: it
//! shares no numerics with the SVD-based kernel, so agreement between the
//! two is evidence of correctness rather than shared error.

use num_complex::Complex64;

use crate::numkernel::Matrix;

fn czero() -> Complex64 {
    Complex64::new(0.0, 0.0)
}

/// Householder reflector for `x`: returns `(u, tau)` with
/// `(I - tau u u^*) x = beta e1` and `|beta| = |x|`. The sign of `beta` is
/// chosen opposite to the phase of `x[0]` so the subtraction never cancels.
fn householder(x: &[Complex64]) -> Option<(Vec<Complex64>, f64)> {
    let norm = x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if norm == 0.0 {
        return None;
    }
    let x0 = x[0];
    let phase = if x0.norm() == 0.0 {
        Complex64::new(1.0, 0.0)
    } else {
        x0 / x0.norm()
    };
    let beta = -phase * norm;
    let mut u = x.to_vec();
    u[0] -= beta;
    let uu: f64 = u.iter().map(|z| z.norm_sqr()).sum();
    Some((u, 2.0 / uu))
}

/// QR factorization `m P = Q R` with explicit square `Q`, upper-trapezoidal
/// `R`, and the column permutation `perm` (column `j` of `m P` is column
/// `perm[j]` of `m`). Pivoting greedily maximizes the working column norm,
/// so `|R[0,0]| >= |R[1,1]| >= ...`.
pub(crate) struct ColPivQr {
    pub q: Matrix,
    pub r: Matrix,
    pub perm: Vec<usize>,
}

pub(crate) fn qr_factor(m: &Matrix, pivot: bool) -> ColPivQr {
    let rows = m.rows();
    let cols = m.cols();
    let mut r = m.clone();
    let mut q = Matrix::identity(rows);
    let mut perm: Vec<usize> = (0..cols).collect();

    for k in 0..rows.min(cols) {
        if pivot {
            // Recompute working norms exactly; cheap at the sizes we serve.
            let mut best = k;
            let mut best_norm = -1.0;
            for j in k..cols {
                let norm: f64 = (k..rows).map(|i| r.get(i, j).norm_sqr()).sum();
                if norm > best_norm {
                    best_norm = norm;
                    best = j;
                }
            }
            if best != k {
                for i in 0..rows {
                    let tmp = r.get(i, k);
                    r.set(i, k, r.get(i, best));
                    r.set(i, best, tmp);
                }
                perm.swap(k, best);
            }
        }

        let x: Vec<Complex64> = (k..rows).map(|i| r.get(i, k)).collect();
        let Some((u, tau)) = householder(&x) else {
            continue;
        };

        // R[k.., k..] -= tau * u (u^* R[k.., k..])
        for j in k..cols {
            let w: Complex64 = (0..u.len()).map(|t| u[t].conj() * r.get(k + t, j)).sum();
            let w = w * tau;
            for t in 0..u.len() {
                let cur = r.get(k + t, j);
                r.set(k + t, j, cur - w * u[t]);
            }
        }
        // Q[:, k..] -= tau * (Q[:, k..] u) u^*
        for i in 0..rows {
            let w: Complex64 = (0..u.len()).map(|t| q.get(i, k + t) * u[t]).sum();
            let w = w * tau;
            for t in 0..u.len() {
                let cur = q.get(i, k + t);
                q.set(i, k + t, cur - w * u[t].conj());
            }
        }
        // Zero the annihilated part exactly to keep R clean.
        for i in k + 1..rows {
            r.set(i, k, czero());
        }
    }

    ColPivQr { q, r, perm }
}

/// Numerical rank from the pivoted R factor: diagonal entries above
/// `cutoff_rel * |R[0,0]|` are kept.
pub(crate) fn qr_rank(f: &ColPivQr, cutoff_rel: f64) -> usize {
    let kmax = f.r.rows().min(f.r.cols());
    let head = f.r.get(0, 0).norm();
    if head == 0.0 {
        return 0;
    }
    (0..kmax)
        .take_while(|&k| f.r.get(k, k).norm() > cutoff_rel * head)
        .count()
}

/// Minimum-norm least-squares solution of `b X = rhs`, columnwise, via the
/// complete orthogonal decomposition `b P = Q [T^* Z^*; 0]`.
///
/// For `R(rhs) subset R(b)` this is the Douglas solution `b^dagger rhs`.
pub(crate) fn min_norm_solve(b: &Matrix, rhs: &Matrix, cutoff_rel: f64) -> Matrix {
    assert_eq!(b.rows(), rhs.rows(), "solve shape mismatch");
    let p_cols = b.cols();
    let n = rhs.cols();

    let f = qr_factor(b, true);
    let rank = qr_rank(&f, cutoff_rel);
    if rank == 0 {
        return Matrix::zeros(p_cols, n);
    }

    // W = top rank rows of R (rank x p). Second, unpivoted QR of W^* gives
    // W^* = Z T with T upper triangular, hence W = T^* Z^* with T^* lower
    // triangular and invertible in its leading rank x rank block.
    let w = top_rows(&f.r, rank);
    let g = qr_factor(&w.adjoint(), false);
    let z = g.q; // p x p
    let t = g.r; // p x rank, top rank x rank block upper triangular

    // c = Q_r^* rhs (rank x n)
    let q_r = f.q.columns(0, rank);
    let c = &q_r.adjoint() * rhs;

    // Forward-substitute T^* y = c (T^* lower triangular).
    let mut y = Matrix::zeros(rank, n);
    for col in 0..n {
        for i in 0..rank {
            let mut acc = c.get(i, col);
            for j in 0..i {
                acc -= t.get(j, i).conj() * y.get(j, col);
            }
            y.set(i, col, acc / t.get(i, i).conj());
        }
    }

    // x = P Z_r y with row permutation undone.
    let z_r = z.columns(0, rank);
    let x_packed = &z_r * &y;
    let mut x = Matrix::zeros(p_cols, n);
    for i in 0..p_cols {
        for j in 0..n {
            x.set(f.perm[i], j, x_packed.get(i, j));
        }
    }
    x
}

fn top_rows(m: &Matrix, rows: usize) -> Matrix {
    let mut out = Matrix::zeros(rows, m.cols());
    for i in 0..rows {
        for j in 0..m.cols() {
            out.set(i, j, m.get(i, j));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numkernel::c64;

    fn close(a: &Matrix, b: &Matrix, eps: f64) -> bool {
        (a - b).norm_fro() <= eps
    }

    #[test]
    fn qr_reproduces_input() {
        let m = Matrix::from_rows(&[
            vec![c64(1.0, 2.0), c64(0.0, -1.0), c64(3.0, 0.0)],
            vec![c64(0.5, 0.0), c64(2.0, 1.0), c64(-1.0, 1.0)],
            vec![c64(0.0, 1.0), c64(1.0, 0.0), c64(0.0, 0.0)],
            vec![c64(2.0, 0.0), c64(0.0, 0.0), c64(1.0, -1.0)],
        ])
        .unwrap();
        let f = qr_factor(&m, true);
        // Apply the permutation to m.
        let mut mp = Matrix::zeros(4, 3);
        for j in 0..3 {
            for i in 0..4 {
                mp.set(i, j, m.get(i, f.perm[j]));
            }
        }
        assert!(close(&(&f.q * &f.r), &mp, 1e-12));
        let qtq = &f.q.adjoint() * &f.q;
        assert!(close(&qtq, &Matrix::identity(4), 1e-12));
    }

    #[test]
    fn qr_rank_detects_deficiency() {
        let m = Matrix::from_real_rows(&[&[1.0, 2.0], &[2.0, 4.0]]).unwrap();
        let f = qr_factor(&m, true);
        assert_eq!(qr_rank(&f, 1e-12), 1);
        let z = Matrix::zeros(3, 2);
        let fz = qr_factor(&z, true);
        assert_eq!(qr_rank(&fz, 1e-12), 0);
    }

    #[test]
    fn min_norm_solve_matches_exact_inverse() {
        let b = Matrix::from_real_rows(&[&[2.0, 1.0], &[1.0, 3.0]]).unwrap();
        let rhs = Matrix::from_real_rows(&[&[1.0, 0.0], &[0.0, 1.0]]).unwrap();
        let x = min_norm_solve(&b, &rhs, 1e-12);
        assert!(close(&(&b * &x), &rhs, 1e-12));
    }

    #[test]
    fn min_norm_solve_picks_douglas_solution() {
        // b = [[1,1],[0,0]], rhs = first column e1 scaled: the minimum-norm
        // solution of b x = e1 is (1/2, 1/2).
        let b = Matrix::from_real_rows(&[&[1.0, 1.0], &[0.0, 0.0]]).unwrap();
        let rhs = Matrix::from_real_rows(&[&[1.0], &[0.0]]).unwrap();
        let x = min_norm_solve(&b, &rhs, 1e-12);
        assert!((x.get(0, 0).re - 0.5).abs() < 1e-13);
        assert!((x.get(1, 0).re - 0.5).abs() < 1e-13);
    }
}
