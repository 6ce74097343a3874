//! Threshold graphs built from binary creation sequences, and the special
//! block labeling of the connected anti-regular graph `A_n`.
//!
//! Vertices are 0-based throughout. The block relabeling of `A_{2k}` is
//! usually written 1-based as
//!
//! ```text
//! v1 -> v_k, v2 -> v_{k+1}, v3 -> v_{k-1}, v4 -> v_{k+2}, ..., v_{2k-1} -> v1, v_{2k} -> v_{2k}
//! ```
//!
//! which in 0-based form sends vertex `2m` to `k - 1 - m` and vertex
//! `2m + 1` to `k + m`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{IntMatrix, SquareMatrix};

/// Binary creation sequence of a threshold graph. `true` marks a vertex added
/// as dominating, `false` one added as isolated. The first bit is always 0.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CreationSequence {
    bits: Vec<bool>,
}

impl CreationSequence {
    pub fn new(bits: Vec<bool>) -> Result<Self> {
        if bits.len() < 2 {
            return Err(Error::InvalidSequence(format!(
                "length {} is below the minimum of 2",
                bits.len()
            )));
        }
        if bits[0] {
            return Err(Error::InvalidSequence("first bit must be 0".into()));
        }
        Ok(CreationSequence { bits })
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn is_connected(&self) -> bool {
        *self.bits.last().expect("length >= 2")
    }
}

impl fmt::Display for CreationSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for CreationSequence {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bits = s
            .trim()
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::InvalidSequence(format!(
                    "unexpected character {other:?}"
                ))),
            })
            .collect::<Result<Vec<_>>>()?;
        CreationSequence::new(bits)
    }
}

impl Serialize for CreationSequence {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for CreationSequence {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Creation sequence of `A_n`: `0101...01` for even `n`, `00101...01` for odd `n`.
pub fn antiregular_sequence(n: usize) -> Result<CreationSequence> {
    if n < 2 {
        return Err(Error::InvalidOrder { n, min: 2 });
    }
    let bits = if n.is_multiple_of(2) {
        (0..n).map(|i| i % 2 == 1).collect()
    } else {
        std::iter::once(false)
            .chain((0..n - 1).map(|i| i % 2 == 1))
            .collect()
    };
    CreationSequence::new(bits)
}

/// Adjacency matrix in the canonical labeling: for `i < j`, vertices `i` and
/// `j` are adjacent iff vertex `j` was added as dominating.
pub fn adjacency_from_sequence(b: &CreationSequence) -> IntMatrix {
    let bits = b.bits();
    SquareMatrix::from_fn(bits.len(), |i, j| {
        if i == j {
            0
        } else {
            i64::from(bits[i.max(j)])
        }
    })
}

/// Degrees sorted non-increasing.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeSequence(pub Vec<usize>);

impl DegreeSequence {
    /// Number of values appearing more than once.
    pub fn repeated_values(&self) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .0
            .windows(2)
            .filter(|w| w[0] == w[1])
            .map(|w| w[0])
            .collect();
        out.dedup();
        out
    }
}

fn check_adjacency(a: &IntMatrix) -> Result<()> {
    let n = a.order();
    for i in 0..n {
        if a.get(i, i) != 0 {
            return Err(Error::NotAdjacency(format!("nonzero diagonal at {i}")));
        }
        for j in 0..n {
            let v = a.get(i, j);
            if v != 0 && v != 1 {
                return Err(Error::NotAdjacency(format!("entry ({i},{j}) = {v}")));
            }
            if v != a.get(j, i) {
                return Err(Error::NotAdjacency(format!("asymmetric at ({i},{j})")));
            }
        }
    }
    Ok(())
}

pub fn degree_sequence(a: &IntMatrix) -> Result<DegreeSequence> {
    check_adjacency(a)?;
    let mut d: Vec<usize> = a.row_sums().into_iter().map(|s| s as usize).collect();
    d.sort_unstable_by(|x, y| y.cmp(x));
    Ok(DegreeSequence(d))
}

/// A bijection on `0..n`; `images[i]` is the new label of vertex `i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || std::mem::replace(&mut seen[x], true) {
                return Err(Error::Dimension(format!("{images:?} is not a bijection")));
            }
        }
        Ok(Permutation { images })
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x] = i;
        }
        Permutation { images: inv }
    }

    /// `P A P^T` for the permutation matrix `P` of this relabeling.
    pub fn conjugate<T: Copy + Default>(&self, a: &SquareMatrix<T>) -> SquareMatrix<T> {
        a.relabel(&self.images)
    }
}

/// The relabeling that takes the canonical adjacency matrix of `A_n` to the
/// block form returned by [`block_adjacency`].
pub fn block_permutation(n: usize) -> Result<Permutation> {
    if n < 2 {
        return Err(Error::InvalidOrder { n, min: 2 });
    }
    if !n.is_multiple_of(2) {
        return Err(Error::Parity {
            expected: "even",
            n,
        });
    }
    let k = n / 2;
    let images = (0..n)
        .map(|i| {
            let m = i / 2;
            if i % 2 == 0 {
                k - 1 - m
            } else {
                k + m
            }
        })
        .collect();
    Permutation::new(images)
}

/// `[[0, B], [B, J - I]]` where `B` is the `k x k` Hankel matrix with ones on
/// and below the anti-diagonal.
pub fn block_adjacency(k: usize) -> Result<IntMatrix> {
    if k < 1 {
        return Err(Error::InvalidOrder { n: k, min: 1 });
    }
    Ok(SquareMatrix::from_fn(2 * k, |i, j| match (i < k, j < k) {
        (true, true) => 0,
        (true, false) => i64::from(i + (j - k) >= k - 1),
        (false, true) => i64::from((i - k) + j >= k - 1),
        (false, false) => i64::from(i != j),
    }))
}

/// Closed-form inverse of [`block_adjacency`]: `[[V, W], [W, 0]]` with `W`
/// Hankel (1 on the anti-diagonal, -1 just above it) and `V` tridiagonal with
/// diagonal `(2, ..., 2, 0)` and off-diagonal -1.
pub fn inverse_block_adjacency(k: usize) -> Result<IntMatrix> {
    if k < 1 {
        return Err(Error::InvalidOrder { n: k, min: 1 });
    }
    let w = |i: usize, j: usize| -> i64 {
        if i + j == k - 1 {
            1
        } else if i + j + 2 == k {
            -1
        } else {
            0
        }
    };
    Ok(SquareMatrix::from_fn(2 * k, |i, j| match (i < k, j < k) {
        (true, true) => {
            if i == j {
                if i + 1 == k {
                    0
                } else {
                    2
                }
            } else if i.abs_diff(j) == 1 {
                -1
            } else {
                0
            }
        }
        (true, false) => w(i, j - k),
        (false, true) => w(i - k, j),
        (false, false) => 0,
    }))
}

/// `D - A` with `D` the diagonal matrix of row sums.
pub fn laplacian(a: &IntMatrix) -> Result<IntMatrix> {
    check_adjacency(a)?;
    let deg = a.row_sums();
    Ok(SquareMatrix::from_fn(a.order(), |i, j| {
        if i == j {
            deg[i]
        } else {
            -a.get(i, j)
        }
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(s: &str) -> CreationSequence {
        s.parse().unwrap()
    }

    #[test]
    fn antiregular_sequences() {
        assert_eq!(antiregular_sequence(8).unwrap().to_string(), "01010101");
        assert_eq!(antiregular_sequence(2).unwrap().to_string(), "01");
        assert_eq!(antiregular_sequence(5).unwrap().to_string(), "00101");
        assert_eq!(
            antiregular_sequence(1).unwrap_err(),
            Error::InvalidOrder { n: 1, min: 2 }
        );
    }

    #[test]
    fn sequence_parsing() {
        assert!("1010".parse::<CreationSequence>().is_err());
        assert!("0".parse::<CreationSequence>().is_err());
        assert!("01x".parse::<CreationSequence>().is_err());
        assert!(!seq("0110").is_connected());
        let json = serde_json::to_string(&seq("0011")).unwrap();
        assert_eq!(json, "\"0011\"");
    }

    #[test]
    fn canonical_adjacency_of_a8() {
        let expected = vec![
            vec![0, 1, 0, 1, 0, 1, 0, 1],
            vec![1, 0, 0, 1, 0, 1, 0, 1],
            vec![0, 0, 0, 1, 0, 1, 0, 1],
            vec![1, 1, 1, 0, 0, 1, 0, 1],
            vec![0, 0, 0, 0, 0, 1, 0, 1],
            vec![1, 1, 1, 1, 1, 0, 0, 1],
            vec![0, 0, 0, 0, 0, 0, 0, 1],
            vec![1, 1, 1, 1, 1, 1, 1, 0],
        ];
        assert_eq!(
            adjacency_from_sequence(&seq("01010101")).to_rows(),
            expected
        );
    }

    #[test]
    fn small_adjacencies() {
        assert_eq!(
            adjacency_from_sequence(&seq("01")).to_rows(),
            vec![vec![0, 1], vec![1, 0]]
        );
        assert_eq!(
            adjacency_from_sequence(&seq("001")).to_rows(),
            vec![vec![0, 0, 1], vec![0, 0, 1], vec![1, 1, 0]]
        );
    }

    #[test]
    fn degree_sequences() {
        let a8 = adjacency_from_sequence(&antiregular_sequence(8).unwrap());
        assert_eq!(
            degree_sequence(&a8).unwrap().0,
            vec![7, 6, 5, 4, 4, 3, 2, 1]
        );
        let k2 = adjacency_from_sequence(&seq("01"));
        assert_eq!(degree_sequence(&k2).unwrap().0, vec![1, 1]);
        let a7 = adjacency_from_sequence(&seq("0010101"));
        // direct summation of rows
        let mut direct: Vec<usize> = a7
            .rows()
            .map(|r| r.iter().filter(|&&x| x == 1).count())
            .collect();
        direct.sort_unstable_by(|a, b| b.cmp(a));
        assert_eq!(direct, vec![6, 5, 4, 3, 3, 2, 1]);
        assert_eq!(degree_sequence(&a7).unwrap().0, direct);
    }

    #[test]
    fn degree_sequence_rejects_non_adjacency() {
        let m = IntMatrix::from_rows(vec![vec![0, 2], vec![2, 0]]).unwrap();
        assert!(matches!(degree_sequence(&m), Err(Error::NotAdjacency(_))));
        let m = IntMatrix::from_rows(vec![vec![1, 1], vec![1, 0]]).unwrap();
        assert!(matches!(degree_sequence(&m), Err(Error::NotAdjacency(_))));
        let m = IntMatrix::from_rows(vec![vec![0, 1], vec![0, 0]]).unwrap();
        assert!(matches!(laplacian(&m), Err(Error::NotAdjacency(_))));
    }

    fn a8_block_rows() -> Vec<Vec<i64>> {
        vec![
            vec![0, 0, 0, 0, 0, 0, 0, 1],
            vec![0, 0, 0, 0, 0, 0, 1, 1],
            vec![0, 0, 0, 0, 0, 1, 1, 1],
            vec![0, 0, 0, 0, 1, 1, 1, 1],
            vec![0, 0, 0, 1, 0, 1, 1, 1],
            vec![0, 0, 1, 1, 1, 0, 1, 1],
            vec![0, 1, 1, 1, 1, 1, 0, 1],
            vec![1, 1, 1, 1, 1, 1, 1, 0],
        ]
    }

    #[test]
    fn block_form_of_a8() {
        assert_eq!(block_adjacency(4).unwrap().to_rows(), a8_block_rows());
        let sigma = block_permutation(8).unwrap();
        let canon = adjacency_from_sequence(&antiregular_sequence(8).unwrap());
        assert_eq!(sigma.conjugate(&canon).to_rows(), a8_block_rows());
        assert_eq!(
            block_adjacency(1).unwrap().to_rows(),
            vec![vec![0, 1], vec![1, 0]]
        );
    }

    #[test]
    fn block_permutation_small_cases() {
        assert_eq!(block_permutation(2).unwrap().images(), &[0, 1]);
        assert_eq!(
            block_permutation(5).unwrap_err(),
            Error::Parity {
                expected: "even",
                n: 5
            }
        );
        let sigma = block_permutation(6).unwrap();
        let canon = adjacency_from_sequence(&antiregular_sequence(6).unwrap());
        let sums = sigma.conjugate(&canon).row_sums();
        assert!(sums.windows(2).all(|w| w[0] <= w[1]), "{sums:?}");
        let inv = sigma.inverse();
        assert_eq!(inv.conjugate(&sigma.conjugate(&canon)), canon);
    }

    #[test]
    fn inverse_of_a8_block() {
        let expected = vec![
            vec![2, -1, 0, 0, 0, 0, -1, 1],
            vec![-1, 2, -1, 0, 0, -1, 1, 0],
            vec![0, -1, 2, -1, -1, 1, 0, 0],
            vec![0, 0, -1, 0, 1, 0, 0, 0],
            vec![0, 0, -1, 1, 0, 0, 0, 0],
            vec![0, -1, 1, 0, 0, 0, 0, 0],
            vec![-1, 1, 0, 0, 0, 0, 0, 0],
            vec![1, 0, 0, 0, 0, 0, 0, 0],
        ];
        assert_eq!(inverse_block_adjacency(4).unwrap().to_rows(), expected);
        assert_eq!(
            inverse_block_adjacency(1).unwrap().to_rows(),
            vec![vec![0, 1], vec![1, 0]]
        );
    }

    #[test]
    fn laplacian_of_k2() {
        let l = laplacian(&adjacency_from_sequence(&seq("01"))).unwrap();
        assert_eq!(l.to_rows(), vec![vec![1, -1], vec![-1, 1]]);
    }

    #[test]
    fn permutation_rejects_non_bijection() {
        assert!(Permutation::new(vec![0, 0]).is_err());
        assert!(Permutation::new(vec![0, 2]).is_err());
    }
}
