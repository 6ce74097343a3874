//! Spectrum of the connected anti-regular graph `A_n` from its trigonometric
//! eigenvalue equations.
//!
//! Every nontrivial eigenvalue corresponds to exactly one intersection of
//! `F` with a branch curve inside one bracket between consecutive
//! asymptotes of `F`. [`solve_spectrum`] isolates each intersection by a
//! sign scan and refines it by bisection, so no eigenvalue can be missed or
//! found twice.

mod bounds;
mod curves;
mod solve;

pub use bounds::{
    closure_witness, eigenvalue_estimates, eigenvalue_estimates_for, extreme_eigenvalue_bounds,
    forbidden_interval_check, symmetry_bound, symmetry_defect, ClosureWitness, EigenvalueEstimate,
    ExtremeBounds, WitnessParity, MAX_WITNESS_ORDER,
};
pub use curves::{
    big_f_even, big_f_odd, brackets, f1, f1_derivative, f2, g1, g2, theta_of_lambda, BracketSet,
    Branch, Parity, OMEGA_HIGH, OMEGA_LOW,
};
pub use solve::{
    lambda_max_midpoint_estimate, solve_bracket, solve_spectrum, t_k_ratio, EigenRoot,
    SolverConfig, SpectrumResult, T_K_REFERENCE,
};
