use std::io;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::curves::{
    big_f_even_local, big_f_odd_local, f1_from_half_cos, Branch, LocalBracket, LocalPoint, Parity,
};
use crate::error::{Error, Result};

/// Brackets solved per spectrum before the work is spread over the rayon pool.
const PARALLEL_THRESHOLD: usize = 512;
const INSET_RETRIES: u32 = 6;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolverConfig {
    /// Bisection stops once the bracket is this narrow (radians).
    pub theta_tolerance: f64,
    pub max_bisection_iters: usize,
    /// Closest approach to an asymptote, as a fraction of the bracket width.
    pub bracket_inset: f64,
    pub scan_points_per_bracket: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            theta_tolerance: 1e-13,
            max_bisection_iters: 200,
            bracket_inset: 1e-9,
            scan_points_per_bracket: 32,
        }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |what, value| Err(Error::Domain { what, value });
        if self.theta_tolerance.is_nan() || self.theta_tolerance <= 0.0 {
            return bad("theta_tolerance", self.theta_tolerance);
        }
        if !(self.bracket_inset > 0.0 && self.bracket_inset < 0.5) {
            return bad("bracket_inset", self.bracket_inset);
        }
        if self.max_bisection_iters == 0 {
            return bad("max_bisection_iters", 0.0);
        }
        if self.scan_points_per_bracket < 2 {
            return bad(
                "scan_points_per_bracket",
                self.scan_points_per_bracket as f64,
            );
        }
        Ok(())
    }
}

/// One nontrivial eigenvalue together with the angle that produced it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EigenRoot {
    /// 1-based bracket index `j`; the root lies in `(gamma_{j-1}, gamma_j)`.
    pub bracket: usize,
    pub theta: f64,
    pub lambda: f64,
    /// `|F(theta) - f(theta)|` (or `- g(theta)` for odd order) at the root.
    pub residual: f64,
    pub bracket_lo: f64,
    pub bracket_hi: f64,
    /// `theta - bracket_lo`, kept separately because it is known to full
    /// relative precision.
    pub offset: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectrumResult {
    pub n: usize,
    pub k: usize,
    pub parity: Parity,
    /// `-1` for even `n`, `0` for odd `n`.
    pub trivial: f64,
    /// `lambda+_1 < ... < lambda+_k`.
    pub positives: Vec<EigenRoot>,
    /// `lambda-_1 > lambda-_2 > ...`, ordered by bracket like the positives.
    pub negatives: Vec<EigenRoot>,
}

#[derive(Serialize)]
struct SpectrumJson {
    n: usize,
    trivial: f64,
    positives: Vec<f64>,
    negatives: Vec<f64>,
    thetas_pos: Vec<f64>,
    thetas_neg: Vec<f64>,
    residuals: Vec<f64>,
}

impl SpectrumResult {
    /// All `n` eigenvalues, ascending.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let mut all: Vec<f64> = self
            .positives
            .iter()
            .chain(&self.negatives)
            .map(|r| r.lambda)
            .collect();
        all.push(self.trivial);
        all.sort_by(f64::total_cmp);
        all
    }

    pub fn nontrivial(&self) -> impl Iterator<Item = f64> + '_ {
        self.positives
            .iter()
            .chain(&self.negatives)
            .map(|r| r.lambda)
    }

    pub fn lambda_max(&self) -> f64 {
        self.positives.last().map_or(self.trivial, |r| r.lambda)
    }

    pub fn lambda_min(&self) -> f64 {
        self.negatives.last().map_or(self.trivial, |r| r.lambda)
    }

    /// Largest residual; NaN if any residual is NaN.
    pub fn max_residual(&self) -> f64 {
        self.positives
            .iter()
            .chain(&self.negatives)
            .map(|r| r.residual)
            .fold(0.0, |m: f64, d| if d > m || d.is_nan() { d } else { m })
    }

    pub fn to_json(&self) -> serde_json::Value {
        let json = SpectrumJson {
            n: self.n,
            trivial: self.trivial,
            positives: self.positives.iter().map(|r| r.lambda).collect(),
            negatives: self.negatives.iter().map(|r| r.lambda).collect(),
            thetas_pos: self.positives.iter().map(|r| r.theta).collect(),
            thetas_neg: self.negatives.iter().map(|r| r.theta).collect(),
            residuals: self
                .positives
                .iter()
                .chain(&self.negatives)
                .map(|r| r.residual)
                .collect(),
        };
        serde_json::to_value(json).expect("spectrum serializes")
    }

    /// Columns `index, sign_class, theta, lambda, residual, bracket_lo,
    /// bracket_hi`; the trivial eigenvalue is row 0 with empty angle fields.
    pub fn write_csv<W: io::Write>(&self, out: W) -> csv::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record([
            "index",
            "sign_class",
            "theta",
            "lambda",
            "residual",
            "bracket_lo",
            "bracket_hi",
        ])?;
        w.write_record(["0", "trivial", "", &self.trivial.to_string(), "", "", ""])?;
        for (class, roots) in [("positive", &self.positives), ("negative", &self.negatives)] {
            for r in roots {
                w.write_record([
                    r.bracket.to_string(),
                    class.to_string(),
                    r.theta.to_string(),
                    r.lambda.to_string(),
                    r.residual.to_string(),
                    r.bracket_lo.to_string(),
                    r.bracket_hi.to_string(),
                ])?;
            }
        }
        w.flush()?;
        Ok(())
    }
}

/// Residual of the eigenvalue equation in bracket-local form, oriented so
/// that it is positive next to the bracket's left end and negative next to
/// its right end.
struct Equation {
    bracket: LocalBracket,
    branch: Branch,
}

impl Equation {
    fn raw(&self, p: &LocalPoint) -> f64 {
        let hc = p.half_cos();
        match self.bracket.parity {
            Parity::Even => {
                let f = f1_from_half_cos(hc);
                let f = match self.branch {
                    Branch::Positive => f,
                    Branch::Negative => -1.0 - f,
                };
                big_f_even_local(&self.bracket, p) - f
            }
            Parity::Odd => {
                let c_plus_1 = 2.0 * hc * hc;
                let root = (c_plus_1 * (c_plus_1 + 2.0)).sqrt();
                let g = match self.branch {
                    Branch::Positive => 2.0 + 3.0 * (c_plus_1 - 1.0) + root,
                    Branch::Negative => 2.0 + 3.0 * (c_plus_1 - 1.0) - root,
                };
                big_f_odd_local(&self.bracket, p) - g
            }
        }
    }

    fn oriented(&self, offset: f64) -> f64 {
        let r = self.raw(&self.bracket.point(offset));
        match self.bracket.parity {
            Parity::Even => r,
            Parity::Odd => -r,
        }
    }

    fn lambda(&self, p: &LocalPoint) -> f64 {
        let f = f1_from_half_cos(p.half_cos());
        match self.branch {
            Branch::Positive => f,
            Branch::Negative => -1.0 - f,
        }
    }

    /// Offsets sampled across the bracket. The even-case last bracket is
    /// extended by points approaching `pi` geometrically, where `f1` blows up.
    fn scan_offsets(&self, inset: f64, count: usize) -> Vec<f64> {
        let b = &self.bracket;
        let w = b.width;
        let left = if b.j == 1 { 0.0 } else { inset * w };
        let geometric_tail = b.last && b.parity == Parity::Even;
        let right = if geometric_tail {
            w * (1.0 - 1.0 / 32.0)
        } else if b.last {
            w
        } else {
            w - inset * w
        };
        let mut pts: Vec<f64> = (0..count)
            .map(|i| left + (right - left) * i as f64 / (count - 1) as f64)
            .collect();
        if geometric_tail {
            for i in 6..=60 {
                let u = w - w * 0.5f64.powi(i);
                if u >= w || u <= *pts.last().unwrap() {
                    break;
                }
                pts.push(u);
            }
        }
        pts
    }
}

fn check_bracket(k: usize, parity: Parity, branch: Branch, j: usize) -> Result<()> {
    if k < 1 {
        return Err(Error::InvalidOrder { n: k, min: 1 });
    }
    let max = match (parity, branch) {
        (Parity::Even, Branch::Negative) => k - 1,
        _ => k,
    };
    if !(1..=max).contains(&j) {
        return Err(Error::IndexOutOfRange { index: j, max });
    }
    Ok(())
}

/// The unique root of the eigenvalue equation for branch `branch` inside
/// bracket `j` (1-based) of `A_{2k}` or `A_{2k+1}`.
///
/// For even order the negative branch has roots only in brackets `1..k`.
pub fn solve_bracket(
    k: usize,
    parity: Parity,
    branch: Branch,
    j: usize,
    cfg: &SolverConfig,
) -> Result<EigenRoot> {
    check_bracket(k, parity, branch, j)?;
    let eq = Equation {
        bracket: LocalBracket::new(k, parity, j),
        branch,
    };
    let failure = || Error::SolverFailure {
        k,
        branch: branch.name(),
        bracket: j,
    };

    let mut bracket = None;
    'attempts: for attempt in 0..=INSET_RETRIES {
        let inset = cfg.bracket_inset * 0.5f64.powi(attempt as i32);
        let offsets = eq.scan_offsets(inset, cfg.scan_points_per_bracket);
        let mut prev: Option<(f64, f64)> = None;
        for &u in &offsets {
            let q = eq.oriented(u);
            if q == 0.0 {
                bracket = Some((u, u));
                break 'attempts;
            }
            if let Some((pu, pq)) = prev {
                if pq > 0.0 && q < 0.0 {
                    bracket = Some((pu, u));
                    break 'attempts;
                }
            }
            if !q.is_nan() {
                prev = Some((u, q));
            }
        }
    }
    let (mut lo, mut hi) = bracket.ok_or_else(failure)?;

    let mut iters = 0;
    while hi - lo > cfg.theta_tolerance && iters < cfg.max_bisection_iters {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let q = eq.oriented(mid);
        if q == 0.0 {
            lo = mid;
            hi = mid;
            break;
        }
        if q > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        iters += 1;
    }

    // Pick the better of the final endpoints and a secant step between them.
    let mut best = lo;
    let mut best_q = eq.oriented(lo).abs();
    if hi > lo {
        let (ql, qh) = (eq.oriented(lo), eq.oriented(hi));
        let mut candidates = vec![hi];
        if ql.is_finite() && qh.is_finite() && ql != qh {
            let s = lo + (hi - lo) * ql / (ql - qh);
            if s > lo && s < hi {
                candidates.push(s);
            }
        }
        for u in candidates {
            let q = eq.oriented(u).abs();
            if q < best_q {
                best = u;
                best_q = q;
            }
        }
    }

    let p = eq.bracket.point(best);
    let lambda = eq.lambda(&p);
    if !lambda.is_finite() || !best_q.is_finite() {
        return Err(failure());
    }
    Ok(EigenRoot {
        bracket: j,
        theta: p.theta,
        lambda,
        residual: best_q,
        bracket_lo: eq.bracket.lo,
        bracket_hi: eq.bracket.hi(),
        offset: best,
    })
}

fn solve_branch(
    k: usize,
    parity: Parity,
    branch: Branch,
    count: usize,
    cfg: &SolverConfig,
) -> Result<Vec<EigenRoot>> {
    if count >= PARALLEL_THRESHOLD {
        (1..=count)
            .into_par_iter()
            .map(|j| solve_bracket(k, parity, branch, j, cfg))
            .collect()
    } else {
        (1..=count)
            .map(|j| solve_bracket(k, parity, branch, j, cfg))
            .collect()
    }
}

/// Full spectrum of `A_n` from the trigonometric eigenvalue equations. The
/// trivial eigenvalue is inserted analytically.
pub fn solve_spectrum(n: usize, cfg: &SolverConfig) -> Result<SpectrumResult> {
    if n < 2 {
        return Err(Error::InvalidOrder { n, min: 2 });
    }
    cfg.validate()?;
    let parity = Parity::of(n);
    let k = n / 2;
    let (neg_count, trivial) = match parity {
        Parity::Even => (k - 1, -1.0),
        Parity::Odd => (k, 0.0),
    };
    let positives = solve_branch(k, parity, Branch::Positive, k, cfg)?;
    let negatives = solve_branch(k, parity, Branch::Negative, neg_count, cfg)?;
    Ok(SpectrumResult {
        n,
        k,
        parity,
        trivial,
        positives,
        negatives,
    })
}

/// Reference values of `t_k` for `n = 2k`, one row per order.
pub const T_K_REFERENCE: [(usize, f64); 8] = [
    (250, 0.5020031290),
    (500, 0.5010007838),
    (1000, 0.5005001962),
    (2000, 0.5002500492),
    (4000, 0.5001250123),
    (8000, 0.5000625018),
    (16000, 0.5000312567),
    (32000, 0.5000156204),
];

/// `t_k = (theta+_k - gamma_{k-1}) / (pi - gamma_{k-1})` for `n = 2k`.
pub fn t_k_ratio(k: usize, cfg: &SolverConfig) -> Result<f64> {
    if k < 2 {
        return Err(Error::InvalidOrder { n: k, min: 2 });
    }
    cfg.validate()?;
    let root = solve_bracket(k, Parity::Even, Branch::Positive, k, cfg)?;
    let last = LocalBracket::new(k, Parity::Even, k);
    Ok(root.offset / last.width)
}

/// `F` at the midpoint `(4k - 3) pi / (2 (2k - 1))` of the last bracket, an
/// approximation of `lambda_max(A_{2k})`.
pub fn lambda_max_midpoint_estimate(k: usize) -> Result<f64> {
    if k < 2 {
        return Err(Error::InvalidOrder { n: k, min: 2 });
    }
    let b = LocalBracket::new(k, Parity::Even, k);
    Ok(big_f_even_local(&b, &b.point(0.5 * b.width)))
}
