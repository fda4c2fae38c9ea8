//! Dense exact vectors and matrices.

use std::fmt;
use std::ops::Index;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::rat::{format_rat, list_as_strings, Rat};
use crate::error::{Error, Result};

/// A vector of exact rationals. Dimension zero is the zero lattice.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RatVec(Vec<Rat>);

impl RatVec {
    pub fn new(entries: Vec<Rat>) -> Self {
        RatVec(entries)
    }

    pub fn zeros(dim: usize) -> Self {
        RatVec(vec![Rat::zero(); dim])
    }

    pub fn unit(dim: usize, k: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.0[k] = Rat::one();
        v
    }

    pub fn from_ints(values: &[i64]) -> Self {
        RatVec(values.iter().map(|&v| super::rat::int(v)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[Rat] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<Rat> {
        self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Rat> {
        self.0.iter()
    }

    pub fn set(&mut self, k: usize, value: Rat) {
        self.0[k] = value;
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|x| !x.is_negative())
    }

    /// Indices of the nonzero coordinates, ascending.
    pub fn support(&self) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(k, _)| k)
            .collect()
    }

    fn check_dim(&self, other: &RatVec) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(())
    }

    pub fn zip_with(&self, other: &RatVec, f: impl Fn(&Rat, &Rat) -> Rat) -> Result<RatVec> {
        self.check_dim(other)?;
        Ok(RatVec(self.0.iter().zip(&other.0).map(|(a, b)| f(a, b)).collect()))
    }

    pub fn map(&self, f: impl Fn(&Rat) -> Rat) -> RatVec {
        RatVec(self.0.iter().map(f).collect())
    }

    pub fn add(&self, other: &RatVec) -> Result<RatVec> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &RatVec) -> Result<RatVec> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, factor: &Rat) -> RatVec {
        self.map(|a| a * factor)
    }

    pub fn dot(&self, other: &RatVec) -> Result<Rat> {
        self.check_dim(other)?;
        Ok(self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum())
    }

    /// Coordinatewise `self <= other`.
    pub fn le(&self, other: &RatVec) -> Result<bool> {
        self.check_dim(other)?;
        Ok(self.0.iter().zip(&other.0).all(|(a, b)| a <= b))
    }

    pub fn norm_l1(&self) -> Rat {
        self.0.iter().map(|x| x.abs()).sum()
    }

    pub fn norm_linf(&self) -> Rat {
        self.0.iter().map(|x| x.abs()).max().unwrap_or_else(Rat::zero)
    }
}

impl Index<usize> for RatVec {
    type Output = Rat;
    fn index(&self, k: usize) -> &Rat {
        &self.0[k]
    }
}

impl fmt::Display for RatVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, x) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", format_rat(x))?;
        }
        write!(f, ")")
    }
}

impl Serialize for RatVec {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        list_as_strings::serialize(&self.0, serializer)
    }
}

impl<'de> Deserialize<'de> for RatVec {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        list_as_strings::deserialize(deserializer).map(RatVec)
    }
}

/// Row-major dense matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RatMat {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl RatMat {
    pub fn new(rows: usize, cols: usize, data: Vec<Rat>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                found: data.len(),
            });
        }
        Ok(RatMat { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMat {
            rows,
            cols,
            data: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for k in 0..n {
            m.set(k, k, Rat::one());
        }
        m
    }

    pub fn diagonal(values: &[Rat]) -> Self {
        let mut m = Self::zeros(values.len(), values.len());
        for (k, v) in values.iter().enumerate() {
            m.set(k, k, v.clone());
        }
        m
    }

    /// Builds a matrix from rows; every row must have `cols` entries.
    pub fn from_rows(cols: usize, rows: Vec<Vec<Rat>>) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: row.len(),
                });
            }
            data.extend(row);
        }
        Self::new(n, cols, data)
    }

    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let data = rows
            .iter()
            .flat_map(|r| r.iter().map(|&v| super::rat::int(v)))
            .collect();
        Self::new(rows.len(), cols, data).expect("ragged integer rows")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rat {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: Rat) {
        self.data[r * self.cols + c] = value;
    }

    pub fn entries(&self) -> &[Rat] {
        &self.data
    }

    pub fn row(&self, r: usize) -> RatVec {
        RatVec::new(self.data[r * self.cols..(r + 1) * self.cols].to_vec())
    }

    pub fn column(&self, c: usize) -> RatVec {
        RatVec::new((0..self.rows).map(|r| self.get(r, c).clone()).collect())
    }

    pub fn row_vecs(&self) -> Vec<Vec<Rat>> {
        (0..self.rows).map(|r| self.row(r).into_entries()).collect()
    }

    pub fn from_columns(rows: usize, columns: &[RatVec]) -> Result<Self> {
        let mut m = Self::zeros(rows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            if col.dim() != rows {
                return Err(Error::DimensionMismatch {
                    expected: rows,
                    found: col.dim(),
                });
            }
            for r in 0..rows {
                m.set(r, c, col[r].clone());
            }
        }
        Ok(m)
    }

    pub fn transpose(&self) -> RatMat {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn apply(&self, x: &RatVec) -> Result<RatVec> {
        if x.dim() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: x.dim(),
            });
        }
        Ok(RatVec::new(
            (0..self.rows)
                .map(|r| {
                    (0..self.cols)
                        .filter(|&c| !self.get(r, c).is_zero())
                        .map(|c| self.get(r, c) * &x[c])
                        .sum()
                })
                .collect(),
        ))
    }

    /// Matrix product `self * other`.
    pub fn mul(&self, other: &RatMat) -> Result<RatMat> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if !b.is_zero() {
                        let v = out.get(r, c) + a * b;
                        out.set(r, c, v);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Stacks `self` on top of `other`.
    pub fn vstack(&self, other: &RatMat) -> Result<RatMat> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.cols,
            });
        }
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Self::new(self.rows + other.rows, self.cols, data)
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (RatMat, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut lead = 0;
        for c in 0..m.cols {
            if lead == m.rows {
                break;
            }
            let Some(p) = (lead..m.rows).find(|&r| !m.get(r, c).is_zero()) else {
                continue;
            };
            m.swap_rows(p, lead);
            let inv = m.get(lead, c).recip();
            for k in 0..m.cols {
                let v = m.get(lead, k) * &inv;
                m.set(lead, k, v);
            }
            for r in 0..m.rows {
                if r == lead || m.get(r, c).is_zero() {
                    continue;
                }
                let factor = m.get(r, c).clone();
                for k in 0..m.cols {
                    let v = m.get(r, k) - &factor * m.get(lead, k);
                    m.set(r, k, v);
                }
            }
            pivots.push(c);
            lead += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for k in 0..self.cols {
            self.data.swap(a * self.cols + k, b * self.cols + k);
        }
    }

    pub fn determinant(&self) -> Result<Rat> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: self.cols,
            });
        }
        let mut m = self.clone();
        let mut det = Rat::one();
        for c in 0..m.cols {
            let Some(p) = (c..m.rows).find(|&r| !m.get(r, c).is_zero()) else {
                return Ok(Rat::zero());
            };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let pivot = m.get(c, c).clone();
            det *= &pivot;
            for r in c + 1..m.rows {
                if m.get(r, c).is_zero() {
                    continue;
                }
                let factor = m.get(r, c) / &pivot;
                for k in c..m.cols {
                    let v = m.get(r, k) - &factor * m.get(c, k);
                    m.set(r, k, v);
                }
            }
        }
        Ok(det)
    }

    /// Principal submatrix on the given index set.
    pub fn principal(&self, indices: &[usize]) -> RatMat {
        let mut m = Self::zeros(indices.len(), indices.len());
        for (a, &r) in indices.iter().enumerate() {
            for (b, &c) in indices.iter().enumerate() {
                m.set(a, b, self.get(r, c).clone());
            }
        }
        m
    }

    pub fn max_column_abs_sum(&self) -> Rat {
        (0..self.cols)
            .map(|c| self.column(c).norm_l1())
            .max()
            .unwrap_or_else(Rat::zero)
    }

    pub fn max_row_abs_sum(&self) -> Rat {
        (0..self.rows)
            .map(|r| self.row(r).norm_l1())
            .max()
            .unwrap_or_else(Rat::zero)
    }
}

/// True when `v` lies in the span of `basis` (all of dimension `dim`).
pub fn in_span(dim: usize, basis: &[RatVec], v: &RatVec) -> Result<bool> {
    let base = RatMat::from_columns(dim, basis)?;
    let mut cols = basis.to_vec();
    cols.push(v.clone());
    let extended = RatMat::from_columns(dim, &cols)?;
    Ok(base.rank() == extended.rank())
}

impl fmt::Display for RatMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", self.row(r))?;
        }
        write!(f, "]")
    }
}

impl Serialize for RatMat {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<RatVec> = (0..self.rows).map(|r| self.row(r)).collect();
        rows.serialize(serializer)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratcore::rat::{int, rat};

    #[test]
    fn product_and_transpose() {
        let a = RatMat::from_int_rows(&[&[1, 2], &[0, 1]]);
        let b = RatMat::from_int_rows(&[&[1, 0], &[2, 1]]);
        assert_eq!(a.transpose(), b);
        assert_eq!(a.transpose().transpose(), a);
        let ab = a.mul(&b).unwrap();
        assert_eq!(ab, RatMat::from_int_rows(&[&[5, 2], &[2, 1]]));
        assert!(a.mul(&RatMat::zeros(3, 1)).is_err());
    }

    #[test]
    fn rank_and_span() {
        let m = RatMat::from_int_rows(&[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1]]);
        assert_eq!(m.rank(), 2);
        let basis = vec![RatVec::from_ints(&[1, 1])];
        assert!(in_span(2, &basis, &RatVec::from_ints(&[3, 3])).unwrap());
        assert!(!in_span(2, &basis, &RatVec::from_ints(&[1, 0])).unwrap());
        assert!(in_span(2, &[], &RatVec::zeros(2)).unwrap());
    }

    #[test]
    fn determinant_matches_hand_value() {
        let m = RatMat::from_rows(2, vec![vec![rat(1, 2), int(1)], vec![int(3), int(4)]]).unwrap();
        assert_eq!(m.determinant().unwrap(), int(-1));
        assert_eq!(RatMat::identity(3).determinant().unwrap(), int(1));
    }
}
