//! The ordinary Riordan group.

use crate::error::{Error, Result};
use crate::matrix::TriangularMatrix;
use crate::series::{Series, SeriesClass};

/// A Riordan array `(g, f)`: column `k` of its matrix is `g * f^k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RiordanArray {
    g: Series,
    f: Series,
}

impl RiordanArray {
    /// Validates `g0 != 0`, `f0 == 0`, `f1 != 0` and equal truncations.
    pub fn new(g: Series, f: Series) -> Result<Self> {
        if g.truncation() != f.truncation() {
            return Err(Error::TruncationMismatch { left: g.truncation(), right: f.truncation() });
        }
        if g.classify() != SeriesClass::Unit {
            return Err(Error::InvalidG);
        }
        if f.classify() != SeriesClass::Delta {
            return Err(Error::InvalidF);
        }
        Ok(RiordanArray { g, f })
    }

    /// `(1, z)`.
    pub fn identity(n: usize) -> Self {
        RiordanArray { g: Series::one(n), f: Series::z(n) }
    }

    /// `(1/(1-z), z/(1-z))`, whose matrix holds the binomial coefficients.
    pub fn pascal(n: usize) -> Self {
        let g = Series::geometric(n);
        let f = g.shift_up(1).retruncate(n).expect("shorter truncation");
        RiordanArray { g, f }
    }

    pub fn g(&self) -> &Series {
        &self.g
    }

    pub fn f(&self) -> &Series {
        &self.f
    }

    pub fn truncation(&self) -> usize {
        self.g.truncation()
    }

    /// Leading `(n+1) x (n+1)` block, capped at the truncation; column `k+1` is column `k` times `f`.
    pub fn to_matrix(&self, n: usize) -> Result<TriangularMatrix> {
        let n = n.min(self.truncation());
        let g = self.g.retruncate(n)?;
        let f = self.f.retruncate(n)?;
        let mut columns = Vec::with_capacity(n + 1);
        columns.push(g);
        for k in 1..=n {
            let next = columns[k - 1].mul(&f)?;
            columns.push(next);
        }
        TriangularMatrix::from_columns(&columns, n + 1)
    }

    /// Action on a column vector with generating function `a`: `g * a(f)`.
    pub fn apply(&self, a: &Series) -> Result<Series> {
        self.g.mul(&a.compose(&self.f)?)
    }

    /// `(g, f) * (G, F) = (g * G(f), F(f))`.
    pub fn multiply(&self, other: &RiordanArray) -> Result<RiordanArray> {
        let g = self.g.mul(&other.g.compose(&self.f)?)?;
        let f = other.f.compose(&self.f)?;
        Ok(RiordanArray { g, f })
    }

    /// `(g, f)^-1 = (1 / g(fbar), fbar)`.
    pub fn inverse(&self) -> Result<RiordanArray> {
        let fbar = self.f.comp_inverse()?;
        let g = self.g.compose(&fbar)?.reciprocal()?;
        Ok(RiordanArray { g, f: fbar })
    }

    /// Even `g` and odd `f`.
    pub fn is_checkerboard(&self) -> bool {
        self.g.support_is(2, 0) && self.f.support_is(2, 1)
    }

    pub fn retruncate(&self, n: usize) -> Result<RiordanArray> {
        RiordanArray::new(self.g.retruncate(n)?, self.f.retruncate(n)?)
    }
}
