//! Truncated formal power series with exact rational coefficients.
//!
//! A [`Series`] of truncation `N` stores the coefficients of `z^0 ..= z^N`.
//! Binary operations require both operands at the same truncation; use
//! [`Series::retruncate`] to shorten one explicitly.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational coefficient. Always normalized, denominator positive.
pub type Coefficient = BigRational;

/// Shorthand for an integer coefficient.
pub fn int(n: i64) -> Coefficient {
    Coefficient::from_integer(BigInt::from(n))
}

/// Shorthand for the coefficient `p/q`. Panics when `q == 0`.
pub fn rat(p: i64, q: i64) -> Coefficient {
    Coefficient::new(BigInt::from(p), BigInt::from(q))
}

/// Coarse classification of a series by its first two coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SeriesClass {
    Zero,
    /// Nonzero constant term.
    Unit,
    /// Zero constant term, nonzero linear term.
    Delta,
    Other,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Series {
    coeffs: Vec<Coefficient>,
}

impl Series {
    /// Builds a series from its coefficients; truncation is `coeffs.len() - 1`.
    /// An empty list yields the zero series at truncation 0.
    pub fn new(mut coeffs: Vec<Coefficient>) -> Self {
        if coeffs.is_empty() {
            coeffs.push(Coefficient::zero());
        }
        Series { coeffs }
    }

    /// Builds a series at truncation `n` from a prefix of coefficients,
    /// padding with zeros. Coefficients past `n` are dropped.
    pub fn from_coeffs(prefix: &[Coefficient], n: usize) -> Self {
        let mut coeffs: Vec<Coefficient> = prefix.iter().take(n + 1).cloned().collect();
        coeffs.resize(n + 1, Coefficient::zero());
        Series { coeffs }
    }

    pub fn from_ints(prefix: &[i64], n: usize) -> Self {
        let prefix: Vec<Coefficient> = prefix.iter().map(|&c| int(c)).collect();
        Self::from_coeffs(&prefix, n)
    }

    pub fn zero(n: usize) -> Self {
        Series { coeffs: vec![Coefficient::zero(); n + 1] }
    }

    pub fn one(n: usize) -> Self {
        Self::constant(Coefficient::one(), n)
    }

    pub fn constant(c: Coefficient, n: usize) -> Self {
        Self::monomial(c, 0, n)
    }

    /// The series `z`.
    pub fn z(n: usize) -> Self {
        Self::monomial(Coefficient::one(), 1, n)
    }

    /// `c * z^e`, which is the zero series when `e > n`.
    pub fn monomial(c: Coefficient, e: usize, n: usize) -> Self {
        let mut s = Self::zero(n);
        if e <= n {
            s.coeffs[e] = c;
        }
        s
    }

    /// `1 / (1 - z)`.
    pub fn geometric(n: usize) -> Self {
        Series { coeffs: vec![Coefficient::one(); n + 1] }
    }

    pub fn truncation(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Coefficient] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Coefficient> {
        self.coeffs
    }

    /// `[z^k] self`.
    pub fn coefficient(&self, k: usize) -> Result<&Coefficient> {
        self.coeffs.get(k).ok_or(Error::OutOfRange { index: k, truncation: self.truncation() })
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Exponent of the lowest nonzero coefficient, `None` for the zero series.
    pub fn order(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn classify(&self) -> SeriesClass {
        if self.is_zero() {
            SeriesClass::Zero
        } else if !self.coeffs[0].is_zero() {
            SeriesClass::Unit
        } else if self.coeffs.get(1).is_some_and(|c| !c.is_zero()) {
            SeriesClass::Delta
        } else {
            SeriesClass::Other
        }
    }

    /// Shortens the series to truncation `n`.
    pub fn retruncate(&self, n: usize) -> Result<Series> {
        if n > self.truncation() {
            return Err(Error::Precision { needed: n, available: self.truncation() });
        }
        Ok(Series { coeffs: self.coeffs[..=n].to_vec() })
    }

    fn check_same(&self, other: &Series) -> Result<()> {
        if self.truncation() != other.truncation() {
            return Err(Error::TruncationMismatch {
                left: self.truncation(),
                right: other.truncation(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Series) -> Result<Series> {
        self.check_same(other)?;
        Ok(Series { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect() })
    }

    pub fn sub(&self, other: &Series) -> Result<Series> {
        self.check_same(other)?;
        Ok(Series { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect() })
    }

    pub fn neg(&self) -> Series {
        Series { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn scale(&self, c: &Coefficient) -> Series {
        Series { coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    /// Cauchy product truncated at the common truncation.
    pub fn mul(&self, other: &Series) -> Result<Series> {
        self.check_same(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &Series) -> Series {
        let n = self.truncation();
        let mut out = vec![Coefficient::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=n - i].iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        Series { coeffs: out }
    }

    pub fn pow(&self, mut e: u32) -> Series {
        let mut base = self.clone();
        let mut acc = Series::one(self.truncation());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_unchecked(&base);
            }
        }
        acc
    }

    /// Multiplicative inverse; requires a nonzero constant term.
    pub fn reciprocal(&self) -> Result<Series> {
        let c0 = &self.coeffs[0];
        if c0.is_zero() {
            return Err(Error::NotAUnit);
        }
        let inv0 = c0.recip();
        let n = self.truncation();
        let mut r: Vec<Coefficient> = Vec::with_capacity(n + 1);
        r.push(inv0.clone());
        for k in 1..=n {
            let mut acc = Coefficient::zero();
            for j in 1..=k {
                let s = &self.coeffs[j];
                if !s.is_zero() {
                    acc += s * &r[k - j];
                }
            }
            r.push(-(acc * &inv0));
        }
        Ok(Series { coeffs: r })
    }

    /// `self / other`, requiring `other` to be a unit.
    pub fn div(&self, other: &Series) -> Result<Series> {
        self.check_same(other)?;
        Ok(self.mul_unchecked(&other.reciprocal()?))
    }

    /// `self(inner(z))` by Horner evaluation. `inner` must have zero constant term.
    pub fn compose(&self, inner: &Series) -> Result<Series> {
        self.check_same(inner)?;
        if !inner.coeffs[0].is_zero() {
            return Err(Error::CompositionDomain);
        }
        let n = self.truncation();
        let mut acc = Series::constant(self.coeffs[n].clone(), n);
        for c in self.coeffs[..n].iter().rev() {
            acc = acc.mul_unchecked(inner);
            acc.coeffs[0] += c;
        }
        Ok(acc)
    }

    /// Compositional inverse of a series of order exactly one.
    ///
    /// Solves `compose(inv, self) = z` one coefficient at a time: the
    /// coefficient of `z^n` in `sum_j b_j self^j` is linear in `b_n` with
    /// pivot `f1^n`.
    pub fn comp_inverse(&self) -> Result<Series> {
        if self.classify() != SeriesClass::Delta {
            return Err(Error::NotInvertible);
        }
        let n = self.truncation();
        // powers[j] = self^j for j = 1..=n
        let mut powers: Vec<Series> = Vec::with_capacity(n + 1);
        powers.push(Series::one(n));
        for j in 1..=n {
            let next = powers[j - 1].mul_unchecked(self);
            powers.push(next);
        }
        let mut b = vec![Coefficient::zero(); n + 1];
        for m in 1..=n {
            let mut rhs = if m == 1 { Coefficient::one() } else { Coefficient::zero() };
            for j in 1..m {
                if !b[j].is_zero() {
                    rhs -= &b[j] * &powers[j].coeffs[m];
                }
            }
            b[m] = rhs / &powers[m].coeffs[m];
        }
        Ok(Series { coeffs: b })
    }

    /// `self(z^k)` at the same truncation; coefficients past `N / k` are dropped.
    pub fn aerate(&self, k: usize) -> Result<Series> {
        self.aerate_to(k, self.truncation())
    }

    /// `self(z^k)` at truncation `n`. Known exactly up to `k*N + k - 1`.
    pub fn aerate_to(&self, k: usize, n: usize) -> Result<Series> {
        if k == 0 {
            return Err(Error::InvalidStep { step: k, residue: 0 });
        }
        let available = k * self.truncation() + k - 1;
        if n > available {
            return Err(Error::Precision { needed: n, available });
        }
        let mut out = Series::zero(n);
        for (i, c) in self.coeffs.iter().enumerate() {
            if k * i > n {
                break;
            }
            out.coeffs[k * i] = c.clone();
        }
        Ok(out)
    }

    /// True iff every nonzero coefficient sits at an exponent `≡ r (mod k)`.
    pub fn support_is(&self, k: usize, r: usize) -> bool {
        self.support_violation(k, r).is_none()
    }

    fn support_violation(&self, k: usize, r: usize) -> Option<usize> {
        if k == 0 {
            return self.order();
        }
        self.coeffs.iter().enumerate().find(|(e, c)| !c.is_zero() && e % k != r % k).map(|(e, _)| e)
    }

    /// Inverse of aeration on the residue class `r (mod k)`:
    /// `[z^i] result = [z^(k*i + r)] self`, at truncation `(N - r) / k`.
    pub fn deaerate(&self, k: usize, r: usize) -> Result<Series> {
        if k == 0 || r >= k {
            return Err(Error::InvalidStep { step: k, residue: r });
        }
        if let Some(exponent) = self.support_violation(k, r) {
            return Err(Error::Support { step: k, residue: r, exponent });
        }
        let n = self.truncation();
        if r > n {
            return Err(Error::Precision { needed: r, available: n });
        }
        Ok(Series { coeffs: self.coeffs[r..].iter().step_by(k).cloned().collect() })
    }

    /// Multiplies by `z^r`; truncation grows by `r`.
    pub fn shift_up(&self, r: usize) -> Series {
        let mut coeffs = vec![Coefficient::zero(); r];
        coeffs.extend(self.coeffs.iter().cloned());
        Series { coeffs }
    }

    /// Divides by `z^r`; the low `r` coefficients must vanish. Truncation shrinks by `r`.
    pub fn shift_down(&self, r: usize) -> Result<Series> {
        let n = self.truncation();
        if r > n {
            return Err(Error::Precision { needed: r, available: n });
        }
        if self.coeffs[..r].iter().any(|c| !c.is_zero()) {
            return Err(Error::Domain(format!("series is not divisible by z^{r}")));
        }
        Ok(Series { coeffs: self.coeffs[r..].to_vec() })
    }

    /// Exact `k`-th root.
    ///
    /// The order `d` of the input must be a multiple of `k` and its leading
    /// coefficient must have a rational `k`-th root. The result is known to
    /// truncation `N - d + d/k`, which is what the input determines.
    pub fn kth_root(&self, k: usize) -> Result<Series> {
        if k == 0 {
            return Err(Error::InvalidStep { step: 0, residue: 0 });
        }
        let order = self.order();
        let d = match order {
            Some(d) if d % k == 0 => d,
            _ => return Err(Error::RootOrder { order, degree: k }),
        };
        let lead = self.coeffs[d].clone();
        let lead_root = rational_root(&lead, k)
            .ok_or_else(|| Error::IrrationalRoot { leading: lead.to_string(), degree: k })?;
        // x = self / (lead * z^d), constant term 1
        let x = self.shift_down(d)?.scale(&lead.recip());
        let alpha = rat(1, k as i64);
        let m = x.truncation();
        let mut y: Vec<Coefficient> = Vec::with_capacity(m + 1);
        y.push(Coefficient::one());
        for n in 1..=m {
            let mut acc = Coefficient::zero();
            for j in 1..=n {
                let xj = &x.coeffs[j];
                if xj.is_zero() {
                    continue;
                }
                let w = (&alpha + Coefficient::one()) * int(j as i64) - int(n as i64);
                acc += w * xj * &y[n - j];
            }
            y.push(acc / int(n as i64));
        }
        Ok(Series { coeffs: y }.scale(&lead_root).shift_up(d / k))
    }
}

/// The rational `k`-th root of `c`, when one exists.
pub fn rational_root(c: &Coefficient, k: usize) -> Option<Coefficient> {
    if c.is_zero() {
        return Some(Coefficient::zero());
    }
    let k32 = u32::try_from(k).ok()?;
    if c.is_negative() && k % 2 == 0 {
        return None;
    }
    let exact = |v: &BigInt| -> Option<BigInt> {
        let r = v.nth_root(k32);
        (num_traits::pow(r.clone(), k) == *v).then_some(r)
    };
    Some(Coefficient::new(exact(c.numer())?, exact(c.denom())?))
}

impl fmt::Display for Series {
    /// Polynomial form, e.g. `1 - z + 1/2*z^3`. Re-parses with the CLI grammar.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            first = false;
            let var = match e {
                0 => String::new(),
                1 => "z".to_string(),
                _ => format!("z^{e}"),
            };
            if var.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                f.write_str(&var)?;
            } else {
                write!(f, "{mag}*{var}")?;
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}
