//! Conditioning probe: repeated and graded spectra, clustered eigenvalues,
//! and timing at the upper end of the supported dense sizes.

use num_complex::Complex64;
use opquot::numkernel::{hermitian_eigen, svd, Matrix, ToleranceConfig};
use opquot::oracle;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn diag(values: &[f64]) -> Matrix {
    let n = values.len();
    let mut entries = vec![Complex64::new(0.0, 0.0); n * n];
    for (i, &v) in values.iter().enumerate() {
        entries[i * n + i] = Complex64::new(v, 0.0);
    }
    Matrix::new(n, n, entries).unwrap()
}

fn main() {
    let t = ToleranceConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(1);

    // Repeated singular values: a random unitary has all sigma = 1.
    let u = oracle::random_unitary(&mut rng, 8);
    let f = svd(&u, &t).unwrap();
    let max_dev = f.sigma.iter().map(|s| (s - 1.0).abs()).fold(0.0, f64::max);
    println!(
        "unitary svd: sigma deviation {max_dev:.2e}, rank {}",
        f.rank
    );
    println!(
        "unitary recon err {:.2e}",
        (&f.reconstruct() - &u).norm_fro()
    );

    // Graded spectrum over 12 orders of magnitude.
    let v = oracle::random_unitary(&mut rng, 4);
    let w = oracle::random_unitary(&mut rng, 4);
    let g = &(&v * &diag(&[1.0, 1e-4, 1e-8, 1e-12])) * &w.adjoint();
    let fg = svd(&g, &t).unwrap();
    println!("graded sigma: {:?}", fg.sigma);
    println!(
        "graded recon err {:.2e}",
        (&fg.reconstruct() - &g).norm_fro()
    );
    println!("graded rank {}", fg.rank);

    // Clustered Hermitian eigenvalues including a 1e-9 gap.
    let q = oracle::random_unitary(&mut rng, 6);
    let h = &(&q * &diag(&[2.0, 2.0, 2.0, 1.0 + 1e-9, 1.0, -3.0])) * &q.adjoint();
    let (vals, vecs) = hermitian_eigen(&h).unwrap();
    println!("clustered eigvals: {vals:?}");
    let ortho = (&(&vecs.adjoint() * &vecs) - &Matrix::identity(6)).norm_fro();
    println!("clustered eigvec orthogonality err {ortho:.2e}");

    // 100x100 complex: timing + Penrose residual.
    let big = oracle::gaussian_matrix(&mut rng, 100, 100);
    let start = std::time::Instant::now();
    let fb = svd(&big, &t).unwrap();
    let elapsed = start.elapsed();
    let p = fb.pseudoinverse();
    let ax1 = (&(&(&big * &p) * &big) - &big).norm_fro();
    println!(
        "100x100 svd in {elapsed:?}, penrose-1 residual {ax1:.2e} (sigma_max {:.2})",
        fb.sigma_max()
    );

    // 256x256 release-scale timing probe.
    let huge = oracle::gaussian_matrix(&mut rng, 256, 256);
    let start = std::time::Instant::now();
    let fh = svd(&huge, &t).unwrap();
    println!("256x256 svd in {:?}, rank {}", start.elapsed(), fh.rank);
}
