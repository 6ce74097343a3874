//! Interval bounds, estimates and the closure construction that follow from
//! the bracketing of the eigenvalue angles.

use serde::Serialize;

use super::curves::{
    f1, f1_derivative, f2, theta_of_lambda, Branch, Parity, OMEGA_HIGH, OMEGA_LOW,
};
use super::solve::{solve_bracket, SolverConfig, SpectrumResult};
use crate::error::{Error, Result};

/// Largest graph order `closure_witness` will try.
pub const MAX_WITNESS_ORDER: usize = 1_000_000;

/// True iff every nontrivial eigenvalue lies outside
/// `(OMEGA_LOW - margin, OMEGA_HIGH + margin)`.
pub fn forbidden_interval_check(spectrum: &SpectrumResult, margin: f64) -> bool {
    spectrum
        .nontrivial()
        .all(|l| l <= OMEGA_LOW - margin || l >= OMEGA_HIGH + margin)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExtremeBounds {
    /// `n / 2`, a strict lower bound for `lambda_max` once `n >= 4`.
    pub lower_max: f64,
    /// `f2(2 (n/2 - 1) pi / (n - 1))`, a strict lower bound for `lambda_min`.
    pub lower_min: f64,
    pub lambda_max: f64,
    pub lambda_min: f64,
}

impl ExtremeBounds {
    pub fn holds(&self) -> bool {
        self.lambda_max > self.lower_max && self.lambda_min > self.lower_min
    }
}

/// Lower bounds for the extreme eigenvalues of `A_n`, `n` even.
pub fn extreme_eigenvalue_bounds(spectrum: &SpectrumResult) -> Result<ExtremeBounds> {
    if spectrum.parity != Parity::Even {
        return Err(Error::Parity {
            expected: "even",
            n: spectrum.n,
        });
    }
    let n = spectrum.n as f64;
    let gamma = 2.0 * (n / 2.0 - 1.0) * std::f64::consts::PI / (n - 1.0);
    Ok(ExtremeBounds {
        lower_max: n / 2.0,
        lower_min: f2(gamma),
        lambda_max: spectrum.lambda_max(),
        lambda_min: spectrum.lambda_min(),
    })
}

fn gamma(parity: Parity, k: usize, j: usize) -> f64 {
    j as f64 * parity.spacing(k)
}

/// `|lambda+_j + lambda-_j + 1|` for `1 <= j <= k - 1`.
pub fn symmetry_defect(spectrum: &SpectrumResult, j: usize) -> Result<f64> {
    let max = spectrum.k.saturating_sub(1);
    if !(1..=max).contains(&j) {
        return Err(Error::IndexOutOfRange { index: j, max });
    }
    Ok((spectrum.positives[j - 1].lambda + spectrum.negatives[j - 1].lambda + 1.0).abs())
}

/// `2 h f1'(gamma_j)` with `h` the bracket spacing: `4 pi f1'(gamma_j) / (2k - 1)`
/// for even order, `2 pi f1'(gamma_j) / k` for odd order.
pub fn symmetry_bound(parity: Parity, k: usize, j: usize) -> Result<f64> {
    Ok(2.0 * estimate_error_bound(parity, k, j)?)
}

fn estimate_error_bound(parity: Parity, k: usize, j: usize) -> Result<f64> {
    let max = k.saturating_sub(1);
    if !(1..=max).contains(&j) {
        return Err(Error::IndexOutOfRange { index: j, max });
    }
    Ok(parity.spacing(k) * f1_derivative(gamma(parity, k, j))?)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EigenvalueEstimate {
    /// `f1(gamma_j)`
    pub est_pos: f64,
    /// `f2(gamma_j)`
    pub est_neg: f64,
    /// `2 pi f1'(gamma_j) / (2k - 1)`
    pub err_bound: f64,
}

/// Estimates of `lambda+_j` and `lambda-_j` of `A_{2k}` with a common error bound.
pub fn eigenvalue_estimates(k: usize, j: usize) -> Result<EigenvalueEstimate> {
    eigenvalue_estimates_for(Parity::Even, k, j)
}

/// As [`eigenvalue_estimates`], with the odd-order spacing `pi / k` when
/// `parity` is odd.
pub fn eigenvalue_estimates_for(parity: Parity, k: usize, j: usize) -> Result<EigenvalueEstimate> {
    let err_bound = estimate_error_bound(parity, k, j)?;
    let g = gamma(parity, k, j);
    Ok(EigenvalueEstimate {
        est_pos: f1(g),
        est_neg: f2(g),
        err_bound,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum WitnessParity {
    Even,
    Odd,
    Any,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ClosureWitness {
    pub n: usize,
    pub mu: f64,
    /// Bracket holding the eigenvalue; 0 for a trivial witness.
    pub bracket: usize,
    /// Lipschitz bound on `|mu - y|` for this bracket, when it applies.
    pub bound: Option<f64>,
}

/// Finds an eigenvalue `mu` of some `A_n` with `|mu - y| < epsilon`.
///
/// The angle `theta' = theta(y)` is located in a bracket of spacing `h`; the
/// root in that bracket is within `h f1'(gamma_j)` of `y` in eigenvalue
/// terms, which falls below `epsilon` as `k` grows. `k` is increased
/// geometrically and the first order whose bracket root is close enough is
/// returned.
pub fn closure_witness(y: f64, epsilon: f64, parity: WitnessParity) -> Result<ClosureWitness> {
    if epsilon.is_nan() || epsilon <= 0.0 {
        return Err(Error::Domain {
            what: "closure_witness epsilon",
            value: epsilon,
        });
    }
    if y == -1.0 && parity != WitnessParity::Odd {
        return Ok(ClosureWitness {
            n: 2,
            mu: -1.0,
            bracket: 0,
            bound: None,
        });
    }
    if y == 0.0 && parity != WitnessParity::Even {
        return Ok(ClosureWitness {
            n: 3,
            mu: 0.0,
            bracket: 0,
            bound: None,
        });
    }
    let theta = theta_of_lambda(y)?;
    let branch = if y > 0.0 {
        Branch::Positive
    } else {
        Branch::Negative
    };
    let parities: &[Parity] = match parity {
        WitnessParity::Even => &[Parity::Even],
        WitnessParity::Odd => &[Parity::Odd],
        WitnessParity::Any => &[Parity::Even, Parity::Odd],
    };
    let cfg = SolverConfig::default();

    let mut k = 1usize;
    loop {
        for &p in parities {
            let n = p.order(k);
            if n > MAX_WITNESS_ORDER {
                return Err(Error::Consistency(format!(
                    "no eigenvalue within {epsilon} of {y} for n <= {MAX_WITNESS_ORDER}"
                )));
            }
            let h = p.spacing(k);
            let j = ((theta / h).floor() as usize + 1).min(k);
            let usable = match (p, branch) {
                (Parity::Even, Branch::Negative) => j < k,
                _ => true,
            };
            if !usable {
                continue;
            }
            let root = solve_bracket(k, p, branch, j, &cfg)?;
            let bound = if j < k {
                estimate_error_bound(p, k, j).ok()
            } else {
                None
            };
            if (root.lambda - y).abs() < epsilon {
                return Ok(ClosureWitness {
                    n,
                    mu: root.lambda,
                    bracket: j,
                    bound,
                });
            }
            if let Some(b) = bound {
                if b < epsilon {
                    return Err(Error::Consistency(format!(
                        "bracket {j} of n = {n} violates its own bound {b:e} at y = {y}"
                    )));
                }
            }
        }
        k = (k + k / 4).max(k + 1);
    }
}
