//! Eigenvalues of anti-regular and threshold graphs.
//!
//! * [`graph`]: creation sequences, canonical and block adjacency matrices,
//!   the closed-form inverse of the block form, Laplacians.
//! * [`chebyshev`]: Chebyshev polynomials of the second kind and the path
//!   matrix characteristic polynomial.
//! * [`antiregular`]: the bracketed trigonometric solver for the spectrum of
//!   `A_n` plus the interval bounds and estimates derived from it.
//! * [`oracle`]: a self-contained Jacobi eigensolver and LU determinant used
//!   as independent ground truth.
//! * [`threshold`]: quotient matrices of general threshold graphs,
//!   exhaustive enumeration and the forbidden-interval / extremal scans.

pub mod antiregular;
pub mod chebyshev;
pub mod error;
pub mod graph;
pub mod matrix;
pub mod oracle;
pub mod threshold;

pub use error::{Error, Result};
