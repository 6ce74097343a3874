use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid order {n}: must be at least {min}")]
    InvalidOrder { n: usize, min: usize },

    #[error("order {n} outside supported range {min}..={max}")]
    OrderOutOfRange { n: usize, min: usize, max: usize },

    #[error("invalid creation sequence: {0}")]
    InvalidSequence(String),

    #[error("expected {expected} order, got {n}")]
    Parity { expected: &'static str, n: usize },

    #[error("matrix is not an adjacency matrix: {0}")]
    NotAdjacency(String),

    #[error("matrix is not symmetric (max |a_ij - a_ji| = {max_asymmetry:e})")]
    NotSymmetric { max_asymmetry: f64 },

    #[error("quotient is not equitable for the given cells (max asymmetry {max_asymmetry:e})")]
    NotEquitable { max_asymmetry: f64 },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("jacobi iteration did not converge after {sweeps} sweeps (off-norm {off_norm:e})")]
    NoConvergence { sweeps: usize, off_norm: f64 },

    #[error("sin(theta) vanishes at theta = {theta}; use the named endpoint limits")]
    SingularArgument { theta: f64 },

    #[error("{what}: argument {value} outside the domain")]
    Domain { what: &'static str, value: f64 },

    #[error("theta = {theta} lies within the inset of asymptote gamma_{index}")]
    NearAsymptote { theta: f64, index: usize },

    #[error("no {branch} root located in bracket {bracket} for k = {k}")]
    SolverFailure {
        k: usize,
        branch: &'static str,
        bracket: usize,
    },

    #[error("index {index} outside 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("creation sequence does not end in 1; the graph is disconnected")]
    Disconnected,

    #[error("consistency check failed: {0}")]
    Consistency(String),
}
