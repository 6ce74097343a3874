//! Dense row-major square matrices.
//!
//! Graph constructions produce [`IntMatrix`] values so that identities such
//! as `A * A^-1 = I` can be checked exactly; conversion to [`RealMatrix`]
//! happens only when a matrix is handed to an eigensolver.

use std::fmt::Display;
use std::io;
use std::ops::{Add, Mul};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquareMatrix<T> {
    order: usize,
    entries: Vec<T>,
}

pub type IntMatrix = SquareMatrix<i64>;
pub type RealMatrix = SquareMatrix<f64>;

impl<T: Copy + Default> SquareMatrix<T> {
    pub fn zeros(order: usize) -> Self {
        SquareMatrix {
            order,
            entries: vec![T::default(); order * order],
        }
    }

    pub fn from_fn(order: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut entries = Vec::with_capacity(order * order);
        for i in 0..order {
            for j in 0..order {
                entries.push(f(i, j));
            }
        }
        SquareMatrix { order, entries }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let order = rows.len();
        if let Some(bad) = rows.iter().position(|r| r.len() != order) {
            return Err(Error::Dimension(format!(
                "row {bad} has {} entries, expected {order}",
                rows[bad].len()
            )));
        }
        Ok(SquareMatrix {
            order,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> T {
        self.entries[i * self.order + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: T) {
        self.entries[i * self.order + j] = value;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.entries[i * self.order..(i + 1) * self.order]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[T]> {
        self.entries.chunks(self.order.max(1)).take(self.order)
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        self.rows().map(|r| r.to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.order, |i, j| self.get(j, i))
    }

    /// Relabels rows and columns: entry `(i, j)` moves to `(images[i], images[j])`.
    pub fn relabel(&self, images: &[usize]) -> Self {
        assert_eq!(images.len(), self.order, "relabeling length mismatch");
        let mut out = Self::zeros(self.order);
        for i in 0..self.order {
            for j in 0..self.order {
                out.set(images[i], images[j], self.get(i, j));
            }
        }
        out
    }
}

impl<T> SquareMatrix<T>
where
    T: Copy + Default + Add<Output = T> + Mul<Output = T>,
{
    pub fn matmul(&self, rhs: &Self) -> Result<Self> {
        if self.order != rhs.order {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.order, self.order, rhs.order, rhs.order
            )));
        }
        let n = self.order;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for l in 0..n {
                let a = self.get(i, l);
                for j in 0..n {
                    let idx = i * n + j;
                    out.entries[idx] = out.entries[idx] + a * rhs.get(l, j);
                }
            }
        }
        Ok(out)
    }

    pub fn row_sums(&self) -> Vec<T> {
        self.rows()
            .map(|r| r.iter().fold(T::default(), |acc, &x| acc + x))
            .collect()
    }

    pub fn trace(&self) -> T {
        (0..self.order).fold(T::default(), |acc, i| acc + self.get(i, i))
    }
}

impl IntMatrix {
    pub fn identity(order: usize) -> Self {
        Self::from_fn(order, |i, j| i64::from(i == j))
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.order).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn to_real(&self) -> RealMatrix {
        SquareMatrix {
            order: self.order,
            entries: self.entries.iter().map(|&x| x as f64).collect(),
        }
    }
}

impl RealMatrix {
    pub fn identity(order: usize) -> Self {
        Self::from_fn(order, |i, j| if i == j { 1.0 } else { 0.0 })
    }

    pub fn max_asymmetry(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.order {
            for j in 0..i {
                worst = worst.max((self.get(i, j) - self.get(j, i)).abs());
            }
        }
        worst
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub(crate) fn entries_mut(&mut self) -> &mut [f64] {
        &mut self.entries
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixJson<T> {
    order: usize,
    entries: Vec<Vec<T>>,
}

impl<T> Serialize for SquareMatrix<T>
where
    T: Copy + Default + Serialize,
{
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MatrixJson {
            order: self.order,
            entries: self.to_rows(),
        }
        .serialize(s)
    }
}

impl<'de, T> Deserialize<'de> for SquareMatrix<T>
where
    T: Copy + Default + Deserialize<'de>,
{
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = MatrixJson::<T>::deserialize(d)?;
        let m = SquareMatrix::from_rows(raw.entries).map_err(serde::de::Error::custom)?;
        if m.order != raw.order {
            return Err(serde::de::Error::custom(format!(
                "declared order {} but found {} rows",
                raw.order, m.order
            )));
        }
        Ok(m)
    }
}

impl<T: Copy + Default + Display> SquareMatrix<T> {
    /// One row per line, no header.
    pub fn write_csv<W: io::Write>(&self, out: W) -> csv::Result<()> {
        let mut w = csv::WriterBuilder::new()
            .has_headers(false)
            .from_writer(out);
        for row in self.rows() {
            w.write_record(row.iter().map(|x| x.to_string()))?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn to_csv_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("csv output is utf-8")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn from_rows_rejects_ragged() {
        let err = IntMatrix::from_rows(vec![vec![1, 2], vec![3]]).unwrap_err();
        assert!(matches!(err, Error::Dimension(_)));
    }

    #[test]
    fn matmul_identity() {
        let a = IntMatrix::from_rows(vec![vec![1, 2], vec![3, 4]]).unwrap();
        assert_eq!(a.matmul(&IntMatrix::identity(2)).unwrap(), a);
        let sq = a.matmul(&a).unwrap();
        assert_eq!(sq.to_rows(), vec![vec![7, 10], vec![15, 22]]);
    }

    #[test]
    fn json_layout() {
        let a = IntMatrix::from_rows(vec![vec![0, 1], vec![1, 0]]).unwrap();
        let s = serde_json::to_string(&a).unwrap();
        assert_eq!(s, r#"{"order":2,"entries":[[0,1],[1,0]]}"#);
        let back: IntMatrix = serde_json::from_str(&s).unwrap();
        assert_eq!(back, a);
        assert!(
            serde_json::from_str::<IntMatrix>(r#"{"order":3,"entries":[[0,1],[1,0]]}"#).is_err()
        );
    }

    #[test]
    fn csv_layout() {
        let a = IntMatrix::from_rows(vec![vec![0, 1], vec![-1, 0]]).unwrap();
        assert_eq!(a.to_csv_string(), "0,1\n-1,0\n");
    }

    #[test]
    fn relabel_moves_entries() {
        let a = IntMatrix::from_rows(vec![vec![0, 5], vec![7, 0]]).unwrap();
        let b = a.relabel(&[1, 0]);
        assert_eq!(b.to_rows(), vec![vec![0, 7], vec![5, 0]]);
    }
}
