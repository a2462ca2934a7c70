//! Double Riordan and k-Riordan arrays.
//!
//! A k-Riordan array `(g, m1, ..., mk)` has an initial column `g` and each
//! subsequent column is the previous one times the next multiplier, cycling
//! through `m1..mk`. `g` is supported on exponents `≡ 0 (mod k)` and every
//! multiplier on exponents `≡ 1 (mod k)`; `k = 2` is the Double Riordan group.
//!
//! Products and inverses never take roots. Writing `g = ĝ(z^k)`,
//! `mi = z·μi(z^k)` and `P = m1···mk = P̂(z^k)`, the group law reads
//!
//! ```text
//! (ĝ; μ1..μk) * (Ĝ; M̂1..M̂k) = (ĝ·Ĝ(P̂); μ1·M̂1(P̂), ..., μk·M̂k(P̂))
//! ```
//!
//! which stays over the rationals even when `P` has no rational k-th root.
//! The root-based forms are kept in [`roots`] as an independent route.

use crate::error::{Error, Result};
use crate::matrix::TriangularMatrix;
use crate::riordan::RiordanArray;
use crate::series::{Series, SeriesClass};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct KRiordanArray {
    g: Series,
    multipliers: Vec<Series>,
}

/// The multiplier product `P = m1···mk` and its de-aerated form `P̂`, with
/// `P̂(z^k) = P`. `P̂` has order one, so it has a compositional inverse.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AeratedProfile {
    product: Series,
    reduced: Series,
}

impl AeratedProfile {
    pub fn product(&self) -> &Series {
        &self.product
    }

    pub fn reduced(&self) -> &Series {
        &self.reduced
    }
}

fn membership(function: impl Into<String>, reason: impl Into<String>) -> Error {
    Error::Membership { function: function.into(), reason: reason.into() }
}

/// `mi = z·μi(z^k)` → `μi`, at truncation `(N - 1) / k`.
fn reduce_multiplier(m: &Series, k: usize) -> Result<Series> {
    m.shift_down(1)?.deaerate(k, 0)
}

/// `z·μ(z^k)` at truncation `n`.
fn expand_multiplier(mu: &Series, k: usize, n: usize) -> Result<Series> {
    Ok(mu.aerate_to(k, n - 1)?.shift_up(1))
}

/// `u · x` where `u` has order at least `r` and `x` is known to `N - r`;
/// result at the truncation of `u`.
fn mul_shifted(u: &Series, r: usize, x: &Series) -> Result<Series> {
    Ok(u.shift_down(r)?.mul(x)?.shift_up(r))
}

impl KRiordanArray {
    pub fn new(g: Series, multipliers: Vec<Series>) -> Result<Self> {
        let k = multipliers.len();
        if k == 0 {
            return Err(Error::Arity { left: 0, right: 1 });
        }
        let n = g.truncation();
        if g.classify() != SeriesClass::Unit {
            return Err(membership("g", "constant term must be nonzero"));
        }
        if !g.support_is(k, 0) {
            return Err(membership("g", format!("must be supported on exponents ≡ 0 mod {k}")));
        }
        for (i, m) in multipliers.iter().enumerate() {
            let name = format!("m{}", i + 1);
            if m.truncation() != n {
                return Err(Error::TruncationMismatch { left: n, right: m.truncation() });
            }
            if m.classify() != SeriesClass::Delta {
                return Err(membership(name, "must have zero constant term and nonzero linear term"));
            }
            if !m.support_is(k, 1) {
                return Err(membership(name, format!("must be supported on exponents ≡ 1 mod {k}")));
            }
        }
        Ok(KRiordanArray { g, multipliers })
    }

    /// `(1, z, ..., z)` with `k` multipliers.
    pub fn identity(k: usize, n: usize) -> Self {
        KRiordanArray { g: Series::one(n), multipliers: vec![Series::z(n); k] }
    }

    pub fn from_riordan(r: &RiordanArray) -> Self {
        KRiordanArray { g: r.g().clone(), multipliers: vec![r.f().clone()] }
    }

    pub fn to_riordan(&self) -> Result<RiordanArray> {
        if self.arity() != 1 {
            return Err(Error::Arity { left: self.arity(), right: 1 });
        }
        RiordanArray::new(self.g.clone(), self.multipliers[0].clone())
    }

    pub fn arity(&self) -> usize {
        self.multipliers.len()
    }

    pub fn truncation(&self) -> usize {
        self.g.truncation()
    }

    pub fn g(&self) -> &Series {
        &self.g
    }

    pub fn multipliers(&self) -> &[Series] {
        &self.multipliers
    }

    pub fn into_parts(self) -> (Series, Vec<Series>) {
        (self.g, self.multipliers)
    }

    pub fn retruncate(&self, n: usize) -> Result<KRiordanArray> {
        let multipliers = self.multipliers.iter().map(|m| m.retruncate(n)).collect::<Result<_>>()?;
        KRiordanArray::new(self.g.retruncate(n)?, multipliers)
    }

    pub fn profile(&self) -> Result<AeratedProfile> {
        let mut product = self.multipliers[0].clone();
        for m in &self.multipliers[1..] {
            product = product.mul(m)?;
        }
        let reduced = product.deaerate(self.arity(), 0)?;
        Ok(AeratedProfile { product, reduced })
    }

    /// `ĝ` with `g = ĝ(z^k)`, at truncation `N / k`.
    pub fn reduced_g(&self) -> Result<Series> {
        self.g.deaerate(self.arity(), 0)
    }

    /// `μi` with `mi = z·μi(z^k)`, at truncation `(N - 1) / k`.
    pub fn reduced_multipliers(&self) -> Result<Vec<Series>> {
        let k = self.arity();
        self.multipliers.iter().map(|m| reduce_multiplier(m, k)).collect()
    }

    /// Rebuilds an array from its de-aerated data at truncation `n`.
    pub fn from_reduced(k: usize, g_hat: &Series, mus: &[Series], n: usize) -> Result<Self> {
        if mus.len() != k {
            return Err(Error::Arity { left: mus.len(), right: k });
        }
        let g = g_hat.aerate_to(k, n)?;
        let multipliers = mus.iter().map(|mu| expand_multiplier(mu, k, n)).collect::<Result<_>>()?;
        KRiordanArray::new(g, multipliers)
    }

    /// Leading `(n+1) x (n+1)` block, capped at the truncation. Column `j` is column `j-1` times the
    /// multiplier `m_((j-1) mod k + 1)`.
    pub fn to_matrix(&self, n: usize) -> Result<TriangularMatrix> {
        let n = n.min(self.truncation());
        let multipliers: Vec<Series> =
            self.multipliers.iter().map(|m| m.retruncate(n)).collect::<Result<_>>()?;
        let mut columns = Vec::with_capacity(n + 1);
        columns.push(self.g.retruncate(n)?);
        for j in 1..=n {
            let next = columns[j - 1].mul(&multipliers[(j - 1) % self.arity()])?;
            columns.push(next);
        }
        TriangularMatrix::from_columns(&columns, n + 1)
    }

    /// Action on a column vector with generating function `a`.
    ///
    /// The part of `a` on residue `r (mod k)` is `z^r·Ǎ(z^k)` and maps to
    /// `g·m1···mr·Ǎ(P)`.
    pub fn apply(&self, a: &Series) -> Result<Series> {
        let n = self.truncation();
        if a.truncation() != n {
            return Err(Error::TruncationMismatch { left: n, right: a.truncation() });
        }
        let k = self.arity();
        let reduced = self.profile()?.reduced;
        let mut total = Series::zero(n);
        let mut head = self.g.clone();
        for r in 0..k.min(n + 1) {
            if r > 0 {
                head = head.mul(&self.multipliers[r - 1])?;
            }
            let a_hat = Series::new(a.coeffs()[r..].iter().step_by(k).cloned().collect());
            if a_hat.is_zero() {
                continue;
            }
            let inner = reduced.retruncate(a_hat.truncation())?;
            let x = a_hat.compose(&inner)?.aerate_to(k, n - r)?;
            total = total.add(&mul_shifted(&head, r, &x)?)?;
        }
        Ok(total)
    }

    /// Double Riordan action on an even column vector.
    pub fn apply_even(&self, a: &Series) -> Result<Series> {
        self.require_double()?;
        if !a.support_is(2, 0) {
            return Err(Error::Parity { expected: "even" });
        }
        self.apply(a)
    }

    /// Double Riordan action on an odd column vector.
    pub fn apply_odd(&self, a: &Series) -> Result<Series> {
        self.require_double()?;
        if !a.support_is(2, 1) {
            return Err(Error::Parity { expected: "odd" });
        }
        self.apply(a)
    }

    fn require_double(&self) -> Result<()> {
        if self.arity() != 2 {
            return Err(Error::Arity { left: self.arity(), right: 2 });
        }
        Ok(())
    }

    fn check_compatible(&self, other: &KRiordanArray) -> Result<()> {
        if self.arity() != other.arity() {
            return Err(Error::Arity { left: self.arity(), right: other.arity() });
        }
        if self.truncation() != other.truncation() {
            return Err(Error::TruncationMismatch { left: self.truncation(), right: other.truncation() });
        }
        Ok(())
    }

    /// Group product, computed without roots.
    pub fn multiply(&self, other: &KRiordanArray) -> Result<KRiordanArray> {
        self.check_compatible(other)?;
        let k = self.arity();
        let n = self.truncation();
        let p_hat = self.profile()?.reduced;

        let g_hat = other.reduced_g()?;
        let g = self.g.mul(&g_hat.compose(&p_hat)?.aerate_to(k, n)?)?;

        let p_hat_short = p_hat.retruncate((n - 1) / k)?;
        let mut multipliers = Vec::with_capacity(k);
        for (m, big_m) in self.multipliers.iter().zip(&other.multipliers) {
            let x = reduce_multiplier(big_m, k)?.compose(&p_hat_short)?.aerate_to(k, n - 1)?;
            multipliers.push(mul_shifted(m, 1, &x)?);
        }
        Ok(KRiordanArray { g, multipliers })
    }

    /// Group inverse: `(1/ĝ(P̄); 1/μ1(P̄), ..., 1/μk(P̄))` with `P̄` the
    /// compositional inverse of `P̂`.
    pub fn inverse(&self) -> Result<KRiordanArray> {
        let k = self.arity();
        let n = self.truncation();
        let p_bar = self.profile()?.reduced.comp_inverse()?;
        let g_hat = self.reduced_g()?.compose(&p_bar)?.reciprocal()?;
        let p_bar_short = p_bar.retruncate((n - 1) / k)?;
        let mus = self
            .reduced_multipliers()?
            .iter()
            .map(|mu| mu.compose(&p_bar_short)?.reciprocal())
            .collect::<Result<Vec<_>>>()?;
        KRiordanArray::from_reduced(k, &g_hat, &mus, n)
    }

    /// Positions (1-based) whose multiplier is exactly `z`.
    pub fn appell_positions(&self) -> Vec<usize> {
        let z = Series::z(self.truncation());
        self.multipliers.iter().enumerate().filter(|(_, m)| **m == z).map(|(i, _)| i + 1).collect()
    }
}

/// Root-based forms of the group operations, where `h` is the k-th root of
/// the multiplier product. Defined only when the product of the multipliers'
/// linear coefficients has a rational k-th root.
pub mod roots {
    use super::*;

    /// `h` with `h^k = m1···mk`, at the array's truncation.
    pub fn h(d: &KRiordanArray) -> Result<Series> {
        let n = d.truncation();
        let mut q = Series::one(n - 1);
        for m in d.multipliers() {
            q = q.mul(&m.shift_down(1)?)?;
        }
        Ok(q.kth_root(d.arity())?.shift_up(1))
    }

    /// `(g·G(h), (m1/h)·M1(h), ..., (mk/h)·Mk(h))`.
    pub fn multiply(a: &KRiordanArray, b: &KRiordanArray) -> Result<KRiordanArray> {
        a.check_compatible(b)?;
        let h = h(a)?;
        let h_unit = h.shift_down(1)?;
        let g = a.g().mul(&b.g().compose(&h)?)?;
        let mut multipliers = Vec::with_capacity(a.arity());
        for (m, big_m) in a.multipliers().iter().zip(b.multipliers()) {
            let ratio = m.shift_down(1)?.div(&h_unit)?;
            let composed = big_m.compose(&h)?.shift_down(1)?;
            multipliers.push(ratio.mul(&composed)?.shift_up(1));
        }
        KRiordanArray::new(g, multipliers)
    }

    /// `(1/g(h̄), z·h̄/m1(h̄), ..., z·h̄/mk(h̄))` with `h̄` the compositional inverse of `h`.
    pub fn inverse(d: &KRiordanArray) -> Result<KRiordanArray> {
        let h_bar = h(d)?.comp_inverse()?;
        let g = d.g().compose(&h_bar)?.reciprocal()?;
        let h_bar_unit = h_bar.shift_down(1)?;
        let multipliers = d
            .multipliers()
            .iter()
            .map(|m| Ok(h_bar_unit.div(&m.compose(&h_bar)?.shift_down(1)?)?.shift_up(1)))
            .collect::<Result<Vec<_>>>()?;
        KRiordanArray::new(g, multipliers)
    }

    /// Action on a vector supported on a single residue `r (mod k)`:
    /// `g · (m1···mr / h^r) · a(h)`. For `k = 2` these are `g·a(h)` and
    /// `g·sqrt(f1/f2)·a(h)`.
    pub fn apply(d: &KRiordanArray, a: &Series) -> Result<Series> {
        let k = d.arity();
        let n = d.truncation();
        let r = match a.order() {
            None => return Ok(Series::zero(n)),
            Some(e) => e % k,
        };
        if !a.support_is(k, r) {
            return Err(Error::Parity { expected: "supported on a single residue class" });
        }
        let h = h(d)?;
        let h_unit = h.shift_down(1)?;
        let mut factor = Series::one(n - 1);
        for m in &d.multipliers()[..r] {
            factor = factor.mul(&m.shift_down(1)?.div(&h_unit)?)?;
        }
        let composed = a.compose(&h)?;
        if r == 0 {
            return d.g().mul(&composed);
        }
        let x = mul_shifted(&composed, r, &factor.retruncate(n - r)?)?;
        d.g().mul(&x)
    }
}
