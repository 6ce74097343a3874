//! Chebyshev polynomials of the second kind, `U_m(cos t) = sin((m+1)t) / sin t`.
//!
//! [`chebyshev_u`] runs the three-term recurrence forward. On `[-1, 1]` the
//! recurrence is stable and `|U_m| <= m + 1`. Outside that interval `U_m`
//! grows like `(|x| + sqrt(x^2 - 1))^m` and overflows to an infinity well
//! before the degree cap unless `|x|` is within about `1e-6` of 1.

use crate::error::{Error, Result};
use crate::matrix::IntMatrix;

/// Largest degree accepted for arguments with `|x| > 1`.
pub const MAX_DEGREE_OUTSIDE_UNIT: usize = 1_000_000;

/// `U_m(x)` by the recurrence `U_m = 2x U_{m-1} - U_{m-2}` from `U_0 = 1`,
/// `U_1 = 2x`.
///
/// # Panics
///
/// If `|x| > 1` and `m` exceeds [`MAX_DEGREE_OUTSIDE_UNIT`].
pub fn chebyshev_u(m: usize, x: f64) -> f64 {
    assert!(
        x.abs() <= 1.0 || m <= MAX_DEGREE_OUTSIDE_UNIT,
        "degree {m} too large for |x| = {} > 1",
        x.abs()
    );
    let mut prev = 1.0;
    if m == 0 {
        return prev;
    }
    let two_x = 2.0 * x;
    let mut cur = two_x;
    for _ in 1..m {
        let next = two_x * cur - prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// `sin((m+1) theta) / sin(theta)`. Fails where `sin(theta)` vanishes; use
/// [`chebyshev_u_at_one`] / [`chebyshev_u_at_minus_one`] for the endpoint
/// limits.
pub fn chebyshev_u_trig(m: usize, theta: f64) -> Result<f64> {
    if !(theta > 0.0 && theta < std::f64::consts::PI) {
        return Err(Error::SingularArgument { theta });
    }
    let s = theta.sin();
    if s == 0.0 {
        return Err(Error::SingularArgument { theta });
    }
    Ok(((m as f64 + 1.0) * theta).sin() / s)
}

/// `U_m(1) = m + 1`, the `theta -> 0` limit of the trigonometric form.
pub fn chebyshev_u_at_one(m: usize) -> f64 {
    m as f64 + 1.0
}

/// `U_m(-1) = (-1)^m (m + 1)`, the `theta -> pi` limit.
pub fn chebyshev_u_at_minus_one(m: usize) -> f64 {
    let v = m as f64 + 1.0;
    if m.is_multiple_of(2) {
        v
    } else {
        -v
    }
}

/// Zeros `cos(j pi / (m + 1))`, `j = 1..=m`, in descending order.
pub fn chebyshev_u_roots(m: usize) -> Vec<f64> {
    let denom = m as f64 + 1.0;
    (1..=m)
        .map(|j| (j as f64 * std::f64::consts::PI / denom).cos())
        .collect()
}

/// Characteristic polynomial `det(tI - M)` of the `m x m` path matrix `M`
/// (zero diagonal, ones on the first off-diagonals), equal to `U_m(t/2)`.
pub fn toeplitz_char_poly(m: usize, t: f64) -> f64 {
    chebyshev_u(m, t / 2.0)
}

/// The `m x m` tridiagonal 0/1 matrix `M` whose characteristic polynomial is
/// [`toeplitz_char_poly`].
pub fn path_matrix(m: usize) -> IntMatrix {
    IntMatrix::from_fn(m, |i, j| i64::from(i.abs_diff(j) == 1))
}
