//! Seeded generators for random series and arrays.
//!
//! Coefficients are small rationals: numerators in `[-5, 5]`, denominators
//! in `{1, 2, 3}`. Leading terms that must be nonzero are redrawn until they are.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::multi_riordan::KRiordanArray;
use crate::riordan::RiordanArray;
use crate::series::{rat, Coefficient, Series};

pub type TrialRng = ChaCha8Rng;

/// Independent stream `stream` of the generator seeded with `seed`.
pub fn rng_for(seed: u64, stream: u64) -> TrialRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

pub fn coefficient<R: Rng>(rng: &mut R) -> Coefficient {
    let p = rng.gen_range(-5i64..=5);
    let q = rng.gen_range(1i64..=3);
    rat(p, q)
}

pub fn nonzero_coefficient<R: Rng>(rng: &mut R) -> Coefficient {
    loop {
        let c = coefficient(rng);
        if !c.is_zero() {
            return c;
        }
    }
}

pub fn series<R: Rng>(rng: &mut R, n: usize) -> Series {
    Series::new((0..=n).map(|_| coefficient(rng)).collect())
}

/// Random series with nonzero constant term.
pub fn unit_series<R: Rng>(rng: &mut R, n: usize) -> Series {
    let mut coeffs = vec![nonzero_coefficient(rng)];
    coeffs.extend((1..=n).map(|_| coefficient(rng)));
    Series::new(coeffs)
}

/// Same as [`unit_series`] but with constant term 1.
pub fn monic_unit_series<R: Rng>(rng: &mut R, n: usize) -> Series {
    let mut coeffs = vec![Coefficient::from_integer(1.into())];
    coeffs.extend((1..=n).map(|_| coefficient(rng)));
    Series::new(coeffs)
}

/// Random series of order exactly one.
pub fn delta_series<R: Rng>(rng: &mut R, n: usize) -> Series {
    unit_series(rng, n - 1).shift_up(1)
}

/// Random series supported on exponents `≡ r (mod k)`.
pub fn series_on_residue<R: Rng>(rng: &mut R, k: usize, r: usize, n: usize) -> Series {
    if r > n {
        return Series::zero(n);
    }
    series(rng, (n - r) / k).aerate_to(k, n - r).expect("within aerated precision").shift_up(r)
}

pub fn riordan<R: Rng>(rng: &mut R, n: usize) -> RiordanArray {
    RiordanArray::new(unit_series(rng, n), delta_series(rng, n)).expect("valid by construction")
}

/// Random array with even `g` and odd `f`.
pub fn checkerboard<R: Rng>(rng: &mut R, n: usize) -> RiordanArray {
    let d = kriordan(rng, 2, n);
    RiordanArray::new(d.g().clone(), d.multipliers()[0].clone()).expect("valid by construction")
}

pub fn kriordan<R: Rng>(rng: &mut R, k: usize, n: usize) -> KRiordanArray {
    let g_hat = unit_series(rng, n / k);
    let mus: Vec<Series> = (0..k).map(|_| unit_series(rng, (n - 1) / k)).collect();
    KRiordanArray::from_reduced(k, &g_hat, &mus, n).expect("valid by construction")
}

/// Random k-array whose multipliers all have linear coefficient 1, so the
/// multiplier product has a rational k-th root.
pub fn monic_kriordan<R: Rng>(rng: &mut R, k: usize, n: usize) -> KRiordanArray {
    let g_hat = unit_series(rng, n / k);
    let mus: Vec<Series> = (0..k).map(|_| monic_unit_series(rng, (n - 1) / k)).collect();
    KRiordanArray::from_reduced(k, &g_hat, &mus, n).expect("valid by construction")
}

/// Random member of the type-`position` almost Appell subgroup: multiplier
/// `position` (1-based) is `z`.
pub fn almost_appell<R: Rng>(rng: &mut R, k: usize, position: usize, n: usize) -> KRiordanArray {
    let g_hat = unit_series(rng, n / k);
    let b = (n - 1) / k;
    let mus: Vec<Series> = (1..=k)
        .map(|i| if i == position { Series::one(b) } else { unit_series(rng, b) })
        .collect();
    KRiordanArray::from_reduced(k, &g_hat, &mus, n).expect("valid by construction")
}
