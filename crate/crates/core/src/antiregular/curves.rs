//! The curves whose intersections are the eigenvalues of `A_n`.
//!
//! An eigenvalue `lambda` is mapped to an angle by [`theta_of_lambda`]; the
//! two inverse branches are [`f1`] (positive eigenvalues) and [`f2`]
//! (negative ones). For `n = 2k` eigenvalues solve `F(theta) = f(theta)` with
//! `F` = [`big_f_even`]; for `n = 2k + 1` they solve `F(theta) = g(theta)`
//! with `F` = [`big_f_odd`] and `g` = [`g1`] / [`g2`].
//!
//! Both `F` functions are evaluated in bracket-local coordinates: an angle is
//! represented by its bracket index and its offset from the bracket's left
//! asymptote, so the large multiples `k * theta` are reduced modulo `pi`
//! exactly instead of being formed in floating point.

use std::f64::consts::{FRAC_PI_2, PI, SQRT_2};

use serde::Serialize;

use crate::error::{Error, Result};

/// Lower end of the forbidden interval, `(-1 - sqrt 2) / 2`.
pub const OMEGA_LOW: f64 = (-1.0 - SQRT_2) / 2.0;
/// Upper end of the forbidden interval, `(-1 + sqrt 2) / 2`.
pub const OMEGA_HIGH: f64 = (-1.0 + SQRT_2) / 2.0;

const DOMAIN_SLACK: f64 = 1e-12;
const DEFAULT_ASYMPTOTE_INSET: f64 = 1e-9;

/// `arccos((1 - 2 lambda - 2 lambda^2) / (2 lambda (lambda + 1)))`, defined
/// for `lambda` outside the open forbidden interval. Range `[0, pi)`.
pub fn theta_of_lambda(lambda: f64) -> Result<f64> {
    let p = lambda * (lambda + 1.0);
    if !lambda.is_finite() || p <= 0.0 {
        return Err(Error::Domain {
            what: "theta_of_lambda",
            value: lambda,
        });
    }
    let x = (1.0 - 2.0 * p) / (2.0 * p);
    if x > 1.0 + DOMAIN_SLACK {
        return Err(Error::Domain {
            what: "theta_of_lambda",
            value: lambda,
        });
    }
    Ok(x.clamp(-1.0, 1.0).acos())
}

/// `f1` written through `cos(theta / 2)`: `(-1 + sqrt(1 + sec^2(theta/2))) / 2`.
#[inline]
pub(crate) fn f1_from_half_cos(half_cos: f64) -> f64 {
    0.5 * (-1.0 + (1.0 + 1.0 / (half_cos * half_cos)).sqrt())
}

/// Positive branch of the inverse of [`theta_of_lambda`]. Increases from
/// `OMEGA_HIGH` at 0 to `+inf` at `pi`; returns `+inf` for `theta >= pi`.
pub fn f1(theta: f64) -> f64 {
    if theta >= PI {
        return f64::INFINITY;
    }
    f1_from_half_cos((0.5 * theta).cos())
}

/// Negative branch, `f2 = -1 - f1`. Returns `-inf` for `theta >= pi`.
pub fn f2(theta: f64) -> f64 {
    -1.0 - f1(theta)
}

/// `f1'(theta) = sin t / (2 (cos t + 1) sqrt((cos t + 1)(cos t + 3)))` on `(0, pi)`.
/// `f2' = -f1'`.
pub fn f1_derivative(theta: f64) -> Result<f64> {
    if !(theta > 0.0 && theta < PI) {
        return Err(Error::Domain {
            what: "f1_derivative",
            value: theta,
        });
    }
    let half_cos = (0.5 * theta).cos();
    let c_plus_1 = 2.0 * half_cos * half_cos;
    Ok(theta.sin() / (2.0 * c_plus_1 * (c_plus_1 * (c_plus_1 + 2.0)).sqrt()))
}

#[inline]
fn g_from_half_cos(half_cos: f64, sign: f64) -> f64 {
    let c_plus_1 = 2.0 * half_cos * half_cos;
    2.0 + 3.0 * (c_plus_1 - 1.0) + sign * (c_plus_1 * (c_plus_1 + 2.0)).sqrt()
}

/// `2 + 3 cos t + sqrt((cos t + 1)(cos t + 3))`.
pub fn g1(theta: f64) -> f64 {
    g_from_half_cos((0.5 * theta).cos(), 1.0)
}

/// `2 + 3 cos t - sqrt((cos t + 1)(cos t + 3))`.
pub fn g2(theta: f64) -> f64 {
    g_from_half_cos((0.5 * theta).cos(), -1.0)
}

/// `n = 2k` is [`Parity::Even`]; `n = 2k + 1` is [`Parity::Odd`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(n: usize) -> Parity {
        if n.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn order(self, k: usize) -> usize {
        match self {
            Parity::Even => 2 * k,
            Parity::Odd => 2 * k + 1,
        }
    }

    /// Spacing of the asymptotes of `F`: `2 pi / (2k - 1)` or `pi / k`.
    pub fn spacing(self, k: usize) -> f64 {
        match self {
            Parity::Even => 2.0 * PI / (2 * k - 1) as f64,
            Parity::Odd => PI / k as f64,
        }
    }
}

/// Which inverse branch an angle is mapped through.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    Positive,
    Negative,
}

impl Branch {
    pub fn name(self) -> &'static str {
        match self {
            Branch::Positive => "positive",
            Branch::Negative => "negative",
        }
    }
}

/// Asymptotes `gamma_0 = 0 < gamma_1 < ... < gamma_{k-1}` of `F` in `[0, pi)`.
/// Bracket `j` (1-based) is `(gamma_{j-1}, gamma_j)`, the last one closing
/// at `pi`. In the even case `pi` is a regular point of `F`; in the odd case
/// it is the removable point `gamma_k`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BracketSet {
    pub k: usize,
    pub parity: Parity,
    pub gammas: Vec<f64>,
}

/// Asymptote points for `k` and parity.
pub fn brackets(k: usize, parity: Parity) -> Result<BracketSet> {
    if k < 1 {
        return Err(Error::InvalidOrder { n: k, min: 1 });
    }
    let h = parity.spacing(k);
    Ok(BracketSet {
        k,
        parity,
        gammas: (0..k).map(|j| j as f64 * h).collect(),
    })
}

impl BracketSet {
    pub fn len(&self) -> usize {
        self.k
    }

    pub fn is_empty(&self) -> bool {
        self.k == 0
    }

    /// `(gamma_{j-1}, gamma_j)` with `gamma_k := pi`.
    pub fn interval(&self, j: usize) -> (f64, f64) {
        assert!(
            (1..=self.k).contains(&j),
            "bracket {j} outside 1..={}",
            self.k
        );
        let hi = if j == self.k { PI } else { self.gammas[j] };
        (self.gammas[j - 1], hi)
    }
}

/// Geometry of bracket `j` used by local evaluation.
#[derive(Debug, Clone, Copy)]
pub(crate) struct LocalBracket {
    pub k: usize,
    pub parity: Parity,
    pub j: usize,
    pub lo: f64,
    pub width: f64,
    /// `pi - lo`, computed from integers.
    pub lo_to_pi: f64,
    pub last: bool,
}

impl LocalBracket {
    pub fn new(k: usize, parity: Parity, j: usize) -> LocalBracket {
        assert!(k >= 1 && (1..=k).contains(&j));
        let last = j == k;
        let (lo, width, lo_to_pi) = match parity {
            Parity::Even => {
                let d = (2 * k - 1) as f64;
                let lo = 2.0 * (j - 1) as f64 * PI / d;
                let lo_to_pi = (2 * k - 2 * j + 1) as f64 * PI / d;
                let width = if last { PI / d } else { 2.0 * PI / d };
                (lo, width, lo_to_pi)
            }
            Parity::Odd => {
                let kf = k as f64;
                let lo = (j - 1) as f64 * PI / kf;
                let lo_to_pi = (k - j + 1) as f64 * PI / kf;
                (lo, PI / kf, lo_to_pi)
            }
        };
        LocalBracket {
            k,
            parity,
            j,
            lo,
            width,
            lo_to_pi,
            last,
        }
    }

    pub fn hi(&self) -> f64 {
        if self.last {
            PI
        } else {
            self.lo + self.width
        }
    }

    pub fn point(&self, offset: f64) -> LocalPoint {
        let theta = self.lo + offset;
        let to_pi = self.lo_to_pi - offset;
        LocalPoint {
            offset,
            theta,
            to_pi,
            to_hi: self.width - offset,
        }
    }
}

/// An angle inside a bracket, carried with its distances to both ends.
#[derive(Debug, Clone, Copy)]
pub(crate) struct LocalPoint {
    pub offset: f64,
    pub theta: f64,
    pub to_pi: f64,
    pub to_hi: f64,
}

impl LocalPoint {
    pub fn half_cos(&self) -> f64 {
        if self.theta <= FRAC_PI_2 {
            (0.5 * self.theta).cos()
        } else {
            (0.5 * self.to_pi).sin()
        }
    }

    pub fn half_sin(&self) -> f64 {
        if self.theta <= FRAC_PI_2 {
            (0.5 * self.theta).sin()
        } else {
            (0.5 * self.to_pi).cos()
        }
    }

    pub fn sin(&self) -> f64 {
        if self.theta <= FRAC_PI_2 {
            self.theta.sin()
        } else {
            self.to_pi.sin()
        }
    }

    pub fn cos(&self) -> f64 {
        if self.theta <= FRAC_PI_2 {
            self.theta.cos()
        } else {
            -self.to_pi.cos()
        }
    }
}

/// `F(theta)` for `n = 2k` at a bracket-local point, using
/// `F = (1 + cot((2k-1) theta / 2) tan(theta / 2)) / 2`.
pub(crate) fn big_f_even_local(b: &LocalBracket, p: &LocalPoint) -> f64 {
    let k = b.k as f64;
    let m = 2.0 * k - 1.0;
    if b.j == 1 && p.offset == 0.0 {
        return k / m;
    }
    if b.last && p.to_hi == 0.0 {
        return k;
    }
    // (2k-1) theta / 2 = (j-1) pi + (2k-1) offset / 2
    let cot = if b.last {
        if p.offset <= 0.5 * b.width {
            1.0 / (0.5 * m * p.offset).tan()
        } else {
            (0.5 * m * p.to_hi).tan()
        }
    } else if p.offset <= 0.5 * b.width {
        1.0 / (0.5 * m * p.offset).tan()
    } else {
        -1.0 / (0.5 * m * p.to_hi).tan()
    };
    0.5 * (1.0 + cot * p.half_sin() / p.half_cos())
}

/// `F(theta) = sin((k-1) theta) / sin(k theta) = cos t - sin t cot(k t)` for
/// `n = 2k + 1` at a bracket-local point.
pub(crate) fn big_f_odd_local(b: &LocalBracket, p: &LocalPoint) -> f64 {
    let k = b.k as f64;
    if b.j == 1 && p.offset == 0.0 {
        return (k - 1.0) / k;
    }
    if b.last && p.to_hi == 0.0 {
        return -(k - 1.0) / k;
    }
    let tail = if p.offset <= 0.5 * b.width {
        -p.sin() / (k * p.offset).tan()
    } else {
        p.sin() / (k * p.to_hi).tan()
    };
    p.cos() + tail
}

fn locate(theta: f64, k: usize, parity: Parity, inset: f64) -> Result<(LocalBracket, LocalPoint)> {
    if k < 1 {
        return Err(Error::InvalidOrder { n: k, min: 1 });
    }
    if !(0.0..=PI).contains(&theta) {
        return Err(Error::Domain {
            what: "F",
            value: theta,
        });
    }
    let h = parity.spacing(k);
    let j = ((theta / h).floor() as usize + 1).min(k);
    let b = LocalBracket::new(k, parity, j);
    let p = b.point(theta - b.lo);
    let margin = inset * h;
    let near_left = j > 1 && p.offset < margin;
    let near_right = !b.last && p.to_hi < margin;
    if p.offset < 0.0 || near_left {
        return Err(Error::NearAsymptote {
            theta,
            index: j - 1,
        });
    }
    if near_right {
        return Err(Error::NearAsymptote { theta, index: j });
    }
    Ok((b, p))
}

/// `F(theta) = sin(k t) / (sin(k t) + sin((k-1) t))` with the continuous
/// extensions `F(0) = k / (2k - 1)` and `F(pi) = k`.
///
/// Angles within a relative `1e-9` of an asymptote `gamma_j` are rejected
/// with [`Error::NearAsymptote`].
pub fn big_f_even(theta: f64, k: usize) -> Result<f64> {
    let (b, p) = locate(theta, k, Parity::Even, DEFAULT_ASYMPTOTE_INSET)?;
    Ok(big_f_even_local(&b, &p))
}

/// `F(theta) = sin((k-1) t) / sin(k t)` with `F(0) = (k-1)/k` and
/// `F(pi) = -(k-1)/k`. Asymptotes at `j pi / k`.
pub fn big_f_odd(theta: f64, k: usize) -> Result<f64> {
    let (b, p) = locate(theta, k, Parity::Odd, DEFAULT_ASYMPTOTE_INSET)?;
    Ok(big_f_odd_local(&b, &p))
}
