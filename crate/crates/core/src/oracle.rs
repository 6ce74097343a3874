//! Reference dense eigensolver and determinant, written without external
//! linear-algebra dependencies so they stay independent of the Chebyshev
//! route they are used to check.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::RealMatrix;

pub const DEFAULT_TOLERANCE: f64 = 1e-12;
pub const MAX_SWEEPS: usize = 100;

const SYMMETRY_TOLERANCE: f64 = 1e-12;
const EQUITABLE_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EigenResult {
    pub order: usize,
    /// Ascending.
    pub eigenvalues: Vec<f64>,
    pub sweeps: usize,
    /// Off-diagonal Frobenius norm at exit.
    pub off_norm: f64,
}

fn max_abs(m: &RealMatrix) -> f64 {
    m.entries().iter().fold(0.0f64, |acc, x| acc.max(x.abs()))
}

fn off_diagonal_norm(a: &RealMatrix) -> f64 {
    let n = a.order();
    let mut sum = 0.0;
    for i in 0..n {
        for j in i + 1..n {
            let x = a.get(i, j);
            sum += x * x;
        }
    }
    (2.0 * sum).sqrt()
}

/// Eigenvalues of a symmetric matrix by cyclic-by-row Jacobi rotations with
/// a threshold on the first sweeps. Stops once the off-diagonal Frobenius
/// norm drops below `tol * ||m||_F`.
pub fn jacobi_eigenvalues(m: &RealMatrix, tol: f64) -> Result<EigenResult> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::Domain {
            what: "jacobi tolerance",
            value: tol,
        });
    }
    let asym = m.max_asymmetry();
    if asym > SYMMETRY_TOLERANCE * max_abs(m).max(1.0) {
        return Err(Error::NotSymmetric {
            max_asymmetry: asym,
        });
    }
    let n = m.order();
    let mut a = m.clone();
    let target = tol * m.frobenius_norm();
    let mut off = off_diagonal_norm(&a);
    let mut sweeps = 0;

    while off > target {
        if sweeps == MAX_SWEEPS {
            return Err(Error::NoConvergence {
                sweeps,
                off_norm: off,
            });
        }
        sweeps += 1;
        let threshold = if sweeps < 4 {
            let mut s = 0.0;
            for i in 0..n {
                for j in i + 1..n {
                    s += a.get(i, j).abs();
                }
            }
            0.2 * s / (n * n) as f64
        } else {
            0.0
        };

        for p in 0..n {
            for q in p + 1..n {
                let apq = a.get(p, q);
                if apq == 0.0 {
                    continue;
                }
                let g = 100.0 * apq.abs();
                let app = a.get(p, p);
                let aqq = a.get(q, q);
                if sweeps > 4 && app.abs() + g == app.abs() && aqq.abs() + g == aqq.abs() {
                    a.set(p, q, 0.0);
                    a.set(q, p, 0.0);
                    continue;
                }
                if apq.abs() <= threshold {
                    continue;
                }
                rotate(&mut a, p, q);
            }
        }
        off = off_diagonal_norm(&a);
    }

    let mut eigenvalues: Vec<f64> = (0..n).map(|i| a.get(i, i)).collect();
    eigenvalues.sort_by(f64::total_cmp);
    Ok(EigenResult {
        order: n,
        eigenvalues,
        sweeps,
        off_norm: off,
    })
}

/// Annihilates `a[p][q]` with a plane rotation applied on both sides.
fn rotate(a: &mut RealMatrix, p: usize, q: usize) {
    let n = a.order();
    let apq = a.get(p, q);
    let h = a.get(q, q) - a.get(p, p);
    let t = if h.abs() + 100.0 * apq.abs() == h.abs() {
        apq / h
    } else {
        let theta = 0.5 * h / apq;
        let t = 1.0 / (theta.abs() + (1.0 + theta * theta).sqrt());
        if theta < 0.0 {
            -t
        } else {
            t
        }
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    let tau = s / (1.0 + c);

    a.set(p, p, a.get(p, p) - t * apq);
    a.set(q, q, a.get(q, q) + t * apq);
    a.set(p, q, 0.0);
    a.set(q, p, 0.0);

    let e = a.entries_mut();
    for r in 0..n {
        if r == p || r == q {
            continue;
        }
        let g = e[r * n + p];
        let h = e[r * n + q];
        let rp = g - s * (h + g * tau);
        let rq = h + s * (g - h * tau);
        e[r * n + p] = rp;
        e[p * n + r] = rp;
        e[r * n + q] = rq;
        e[q * n + r] = rq;
    }
}

/// Eigenvalues of an equitable-partition quotient `m` with the given cell
/// sizes. `D^{1/2} m D^{-1/2}` (with `D = diag(cell_sizes)`) is symmetric for
/// such matrices and is handed to [`jacobi_eigenvalues`].
pub fn quotient_eigenvalues(m: &RealMatrix, cell_sizes: &[usize], tol: f64) -> Result<EigenResult> {
    let n = m.order();
    if cell_sizes.len() != n {
        return Err(Error::Dimension(format!(
            "{} cell sizes for a {n}x{n} quotient",
            cell_sizes.len()
        )));
    }
    if let Some(i) = cell_sizes.iter().position(|&c| c == 0) {
        return Err(Error::Dimension(format!("cell {i} is empty")));
    }
    let roots: Vec<f64> = cell_sizes.iter().map(|&c| (c as f64).sqrt()).collect();
    let s = RealMatrix::from_fn(n, |i, j| m.get(i, j) * roots[i] / roots[j]);
    let asym = s.max_asymmetry();
    if asym > EQUITABLE_TOLERANCE * max_abs(&s).max(1.0) {
        return Err(Error::NotEquitable {
            max_asymmetry: asym,
        });
    }
    let sym = RealMatrix::from_fn(n, |i, j| 0.5 * (s.get(i, j) + s.get(j, i)));
    jacobi_eigenvalues(&sym, tol)
}

/// Determinant by LU factorisation with partial pivoting.
pub fn determinant(m: &RealMatrix) -> f64 {
    let n = m.order();
    let mut a = m.clone();
    let mut det = 1.0;
    for col in 0..n {
        let (pivot_row, pivot_abs) =
            (col..n)
                .map(|r| (r, a.get(r, col).abs()))
                .fold(
                    (col, -1.0),
                    |best, cur| if cur.1 > best.1 { cur } else { best },
                );
        if pivot_abs == 0.0 {
            return 0.0;
        }
        if pivot_row != col {
            for j in 0..n {
                let tmp = a.get(col, j);
                a.set(col, j, a.get(pivot_row, j));
                a.set(pivot_row, j, tmp);
            }
            det = -det;
        }
        let pivot = a.get(col, col);
        det *= pivot;
        for r in col + 1..n {
            let factor = a.get(r, col) / pivot;
            if factor == 0.0 {
                continue;
            }
            for j in col + 1..n {
                a.set(r, j, a.get(r, j) - factor * a.get(col, j));
            }
        }
    }
    det
}

/// `det(tI - m)`.
pub fn char_poly_eval(m: &RealMatrix, t: f64) -> f64 {
    let shifted = RealMatrix::from_fn(m.order(), |i, j| {
        if i == j {
            t - m.get(i, j)
        } else {
            -m.get(i, j)
        }
    });
    determinant(&shifted)
}
