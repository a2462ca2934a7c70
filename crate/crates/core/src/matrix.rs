//! Finite lower-triangular matrices: the leading principal block of an
//! infinite Riordan-type matrix.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::series::{Coefficient, Series};

/// Square lower-triangular matrix of size `size`; row `n` stores entries
/// `(n, 0) ..= (n, n)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriangularMatrix {
    rows: Vec<Vec<Coefficient>>,
}

impl TriangularMatrix {
    pub fn identity(size: usize) -> Self {
        let rows = (0..size)
            .map(|n| {
                let mut row = vec![Coefficient::zero(); n + 1];
                row[n] = Coefficient::one();
                row
            })
            .collect();
        TriangularMatrix { rows }
    }

    /// Assembles a matrix whose column `k` holds the first `size` coefficients
    /// of `columns[k]`. Entries above the diagonal must be zero.
    pub fn from_columns(columns: &[Series], size: usize) -> Result<Self> {
        if columns.len() < size {
            return Err(Error::Precision { needed: size, available: columns.len() });
        }
        let mut rows = Vec::with_capacity(size);
        for n in 0..size {
            let mut row = Vec::with_capacity(n + 1);
            for col in &columns[..=n] {
                row.push(col.coefficient(n)?.clone());
            }
            rows.push(row);
        }
        for (k, col) in columns[..size].iter().enumerate() {
            if let Some(n) = col.coeffs()[..k.min(col.coeffs().len())].iter().position(|c| !c.is_zero()) {
                return Err(Error::Domain(format!(
                    "column {k} has a nonzero entry above the diagonal at row {n}"
                )));
            }
        }
        Ok(TriangularMatrix { rows })
    }

    /// Builds a matrix from explicit lower-triangle rows; row `n` must have `n + 1` entries.
    pub fn from_rows(rows: Vec<Vec<Coefficient>>) -> Result<Self> {
        if let Some(n) = rows.iter().enumerate().position(|(n, r)| r.len() != n + 1) {
            return Err(Error::Domain(format!("row {n} must have {} entries", n + 1)));
        }
        Ok(TriangularMatrix { rows })
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<Coefficient>] {
        &self.rows
    }

    /// Entry `(n, k)`; zero above the diagonal.
    pub fn get(&self, n: usize, k: usize) -> Coefficient {
        if k > n {
            Coefficient::zero()
        } else {
            self.rows[n][k].clone()
        }
    }

    pub fn column(&self, k: usize) -> Vec<Coefficient> {
        (0..self.size()).map(|n| self.get(n, k)).collect()
    }

    pub fn diagonal(&self) -> Vec<Coefficient> {
        self.rows.iter().enumerate().map(|(n, r)| r[n].clone()).collect()
    }

    pub fn mul(&self, other: &TriangularMatrix) -> Result<TriangularMatrix> {
        if self.size() != other.size() {
            return Err(Error::TruncationMismatch { left: self.size(), right: other.size() });
        }
        let rows = (0..self.size())
            .map(|n| {
                (0..=n)
                    .map(|k| {
                        (k..=n).fold(Coefficient::zero(), |acc, j| {
                            acc + &self.rows[n][j] * &other.rows[j][k]
                        })
                    })
                    .collect()
            })
            .collect();
        Ok(TriangularMatrix { rows })
    }

    /// Product with a column vector; missing trailing entries count as zero.
    pub fn mul_vector(&self, v: &[Coefficient]) -> Vec<Coefficient> {
        self.rows
            .iter()
            .map(|row| {
                row.iter()
                    .zip(v)
                    .fold(Coefficient::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    /// Inverse by forward substitution; fails on a zero diagonal entry.
    pub fn inverse(&self) -> Result<TriangularMatrix> {
        let size = self.size();
        let mut inv: Vec<Vec<Coefficient>> = (0..size).map(|n| vec![Coefficient::zero(); n + 1]).collect();
        for k in 0..size {
            for n in k..size {
                let diag = &self.rows[n][n];
                if diag.is_zero() {
                    return Err(Error::Domain(format!("zero diagonal entry at row {n}")));
                }
                let mut acc = if n == k { Coefficient::one() } else { Coefficient::zero() };
                for j in k..n {
                    acc -= &self.rows[n][j] * &inv[j][k];
                }
                inv[n][k] = acc / diag;
            }
        }
        Ok(TriangularMatrix { rows: inv })
    }

    pub fn is_identity(&self) -> bool {
        *self == TriangularMatrix::identity(self.size())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::int;

    fn m(rows: &[&[i64]]) -> TriangularMatrix {
        TriangularMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect())
            .unwrap()
    }

    #[test]
    fn product_and_inverse() {
        let a = m(&[&[1], &[1, 1], &[1, 2, 1]]);
        let inv = a.inverse().unwrap();
        assert_eq!(inv, m(&[&[1], &[-1, 1], &[1, -2, 1]]));
        assert!(a.mul(&inv).unwrap().is_identity());
        assert_eq!(a.mul_vector(&[int(1), int(1), int(1)]), vec![int(1), int(2), int(4)]);
    }

    #[test]
    fn rejects_ragged_rows() {
        assert!(TriangularMatrix::from_rows(vec![vec![int(1)], vec![int(1)]]).is_err());
    }

    #[test]
    fn columns_above_diagonal_rejected() {
        let cols = vec![Series::from_ints(&[1], 1), Series::from_ints(&[1, 1], 1)];
        assert!(TriangularMatrix::from_columns(&cols, 2).is_err());
    }
}
