//! Left and right quotients of dense complex matrices.
//!
//! For matrices with compatible ranges the left quotient `[B\A]` is the
//! Douglas solution of `B X = A`, the unique solution whose range lies in
//! `R(B^*)`; it equals `B^dagger A`. For matrices with compatible kernels the
//! right quotient `[A/B]` is the partial operator `B x -> A x` with domain
//! `R(B)`; its matrix is `A B^dagger`. This crate builds both objects, their
//! algebra (adjoints, inverses, sums through parallel sums, witness-verified
//! products, simplification rules), and cross-checks every identity against
//! independent brute-force oracles.

// Indexed loops mirror the subscript formulas throughout the kernels.
#![allow(clippy::needless_range_loop)]

pub mod algebra;
pub mod error;
pub mod io;
pub mod numkernel;
pub mod oracle;
pub mod quotient;
pub mod report;

pub use error::{Error, Result};
pub use numkernel::{c64, Matrix, SvdFactorization, ToleranceConfig};
pub use quotient::{GraphData, LeftQuotient, RightQuotient};
