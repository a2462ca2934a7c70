//! Embeddings of the Riordan group into k-Riordan groups and of the
//! k-Riordan group into the (k+1)-Riordan group, plus a randomized harness
//! that checks the homomorphism laws exactly.
//!
//! Every map works on de-aerated data: `g = ĝ(z^k)` and `mi = z·μi(z^k)`.
//! Rebasing from modulus `k` to `k + 1` re-aerates the same `ĝ, μi`, and the
//! inserted multiplier `z` has `μ = 1`. Preimages are recovered the same way.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::multi_riordan::KRiordanArray;
use crate::random::{self, TrialRng};
use crate::riordan::RiordanArray;
use crate::series::Series;

/// The maps under study. Positions are 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MorphismId {
    /// `(g, f) ↦ (g, f, f)` on the checkerboard subgroup.
    PsiCheckerboard,
    /// `(g, f) ↦ (g(z²), z, f(z²)/z)`.
    Phi,
    /// `(g, f) ↦ (g(z²), f(z²)/z, z)`.
    PsiType2,
    /// `(g, f) ↦ (g(z^k), z, ..., f(z^k)/z^(k-1), ..., z)` with the non-`z`
    /// multiplier at `position`.
    PhiK { k: usize, position: usize },
    /// Double Riordan into 3-Riordan, `z` inserted first.
    Chi,
    /// k-Riordan into (k+1)-Riordan, `z` inserted at position `i`.
    ChiI { k: usize, i: usize },
}

impl MorphismId {
    pub fn phi_k(k: usize, position: usize) -> Result<Self> {
        if k == 0 || position == 0 || position > k {
            return Err(Error::Position { position, max: k });
        }
        Ok(MorphismId::PhiK { k, position })
    }

    pub fn chi_i(k: usize, i: usize) -> Result<Self> {
        if k == 0 || i == 0 || i > k + 1 {
            return Err(Error::Position { position: i, max: k + 1 });
        }
        Ok(MorphismId::ChiI { k, i })
    }

    /// Every map family instance with `k ≤ max_k`.
    pub fn all(max_k: usize) -> Vec<MorphismId> {
        let mut ids = vec![MorphismId::PsiCheckerboard, MorphismId::Phi, MorphismId::PsiType2, MorphismId::Chi];
        for k in 1..=max_k {
            ids.extend((1..=k).map(|position| MorphismId::PhiK { k, position }));
            ids.extend((1..=k + 1).map(|i| MorphismId::ChiI { k, i }));
        }
        ids
    }

    /// Normalizes the named special cases to their `PhiK` / `ChiI` forms.
    fn canonical(self) -> MorphismId {
        match self {
            MorphismId::Phi => MorphismId::PhiK { k: 2, position: 2 },
            MorphismId::PsiType2 => MorphismId::PhiK { k: 2, position: 1 },
            MorphismId::Chi => MorphismId::ChiI { k: 2, i: 1 },
            other => other,
        }
    }
}

impl fmt::Display for MorphismId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MorphismId::PsiCheckerboard => f.write_str("psi"),
            MorphismId::Phi => f.write_str("phi"),
            MorphismId::PsiType2 => f.write_str("psi2"),
            MorphismId::PhiK { k, position } => write!(f, "phik({k},{position})"),
            MorphismId::Chi => f.write_str("chi"),
            MorphismId::ChiI { k, i } => write!(f, "chii({k},{i})"),
        }
    }
}

impl FromStr for MorphismId {
    type Err = Error;

    /// Accepts the forms produced by `Display`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Domain(format!("unknown map `{s}`"));
        match s {
            "psi" => return Ok(MorphismId::PsiCheckerboard),
            "phi" => return Ok(MorphismId::Phi),
            "psi2" => return Ok(MorphismId::PsiType2),
            "chi" => return Ok(MorphismId::Chi),
            _ => {}
        }
        let (name, rest) = s.split_once('(').ok_or_else(bad)?;
        let args = rest.strip_suffix(')').ok_or_else(bad)?;
        let (a, b) = args.split_once(',').ok_or_else(bad)?;
        let a: usize = a.trim().parse().map_err(|_| bad())?;
        let b: usize = b.trim().parse().map_err(|_| bad())?;
        match name {
            "phik" => MorphismId::phi_k(a, b),
            "chii" => MorphismId::chi_i(a, b),
            _ => Err(bad()),
        }
    }
}

impl Serialize for MorphismId {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// `(g, f) ↦ (g, f, f)`, defined on the checkerboard subgroup only.
pub fn psi_checkerboard(r: &RiordanArray) -> Result<KRiordanArray> {
    if !r.is_checkerboard() {
        return Err(Error::Domain("psi is defined on checkerboard arrays only".into()));
    }
    KRiordanArray::new(r.g().clone(), vec![r.f().clone(), r.f().clone()])
}

pub fn phi(r: &RiordanArray) -> Result<KRiordanArray> {
    phi_k(r, 2, 2)
}

pub fn psi_type2(r: &RiordanArray) -> Result<KRiordanArray> {
    phi_k(r, 2, 1)
}

/// `φ_k` with `f(z^k)/z^(k-1)` at `position`, at the input's truncation.
pub fn phi_k(r: &RiordanArray, k: usize, position: usize) -> Result<KRiordanArray> {
    phi_k_to(r, k, position, r.truncation())
}

/// `φ_k` at truncation `n`; exact up to `n = k·N`.
pub fn phi_k_to(r: &RiordanArray, k: usize, position: usize, n: usize) -> Result<KRiordanArray> {
    MorphismId::phi_k(k, position)?;
    let b = r.truncation() - 1;
    let mus: Vec<Series> = (1..=k)
        .map(|i| if i == position { r.f().shift_down(1) } else { Ok(Series::one(b)) })
        .collect::<Result<_>>()?;
    KRiordanArray::from_reduced(k, r.g(), &mus, n)
}

/// Recovers `(g, f)` from an image of `φ_k`.
pub fn phi_k_preimage(d: &KRiordanArray, position: usize) -> Result<RiordanArray> {
    let k = d.arity();
    MorphismId::phi_k(k, position)?;
    if !is_phi_k_image(d, position) {
        return Err(Error::Domain(format!("array is not in the image of phik({k},{position})")));
    }
    let g = d.reduced_g()?;
    let f = d.reduced_multipliers()?.swap_remove(position - 1).shift_up(1);
    let n = g.truncation().min(f.truncation());
    RiordanArray::new(g.retruncate(n)?, f.retruncate(n)?)
}

/// All multipliers other than `position` are `z`.
pub fn is_phi_k_image(d: &KRiordanArray, position: usize) -> bool {
    let k = d.arity();
    (1..=k).filter(|&i| i != position).all(|i| is_type_almost_appell(d, i))
}

/// `χ`: Double Riordan into 3-Riordan with `z` as first multiplier.
pub fn chi(d: &KRiordanArray) -> Result<KRiordanArray> {
    if d.arity() != 2 {
        return Err(Error::Arity { left: d.arity(), right: 2 });
    }
    chi_i(d, 1)
}

/// `χᵢ` at the input's truncation.
pub fn chi_i(d: &KRiordanArray, i: usize) -> Result<KRiordanArray> {
    chi_i_to(d, i, d.truncation())
}

/// `χᵢ` at truncation `n`.
pub fn chi_i_to(d: &KRiordanArray, i: usize, n: usize) -> Result<KRiordanArray> {
    let k = d.arity();
    MorphismId::chi_i(k, i)?;
    let mut mus = d.reduced_multipliers()?;
    let b = mus[0].truncation();
    mus.insert(i - 1, Series::one(b));
    KRiordanArray::from_reduced(k + 1, &d.reduced_g()?, &mus, n)
}

/// Largest truncation at which `χᵢ` of a `k`-array at truncation `n` is
/// known exactly; the image at this truncation determines its preimage.
pub fn chi_i_lossless_truncation(k: usize, n: usize) -> usize {
    let a = n / k;
    let b = (n - 1) / k;
    ((k + 1) * a + k).min((k + 1) * b + k + 1)
}

/// Recovers the `k`-array from an image of `χᵢ`. The result carries every
/// coefficient the image determines.
pub fn chi_i_preimage(d: &KRiordanArray, i: usize) -> Result<KRiordanArray> {
    let arity = d.arity();
    if arity < 2 {
        return Err(Error::Arity { left: arity, right: 2 });
    }
    let k = arity - 1;
    MorphismId::chi_i(k, i)?;
    if !is_type_almost_appell(d, i) {
        return Err(Error::Domain(format!("array is not in the image of chii({k},{i})")));
    }
    let g_hat = d.reduced_g()?;
    let mut mus = d.reduced_multipliers()?;
    mus.remove(i - 1);
    let n = (k * g_hat.truncation() + k - 1).min(k * mus[0].truncation() + k);
    KRiordanArray::from_reduced(k, &g_hat, &mus, n)
}

/// Multiplier `i` (1-based) is exactly `z`.
pub fn is_type_almost_appell(d: &KRiordanArray, i: usize) -> bool {
    i >= 1 && i <= d.arity() && d.multipliers()[i - 1] == Series::z(d.truncation())
}

/// Searches for a conjugate `X·D·X⁻¹` of a type-1 almost Appell Double
/// Riordan array `D` that leaves the subgroup. Returns `(X, D)`.
pub fn find_conjugation_witness(
    trials: usize,
    n: usize,
    seed: u64,
) -> Result<Option<(KRiordanArray, KRiordanArray)>> {
    for t in 0..trials {
        let mut rng = random::rng_for(seed, t as u64);
        let d = random::almost_appell(&mut rng, 2, 1, n);
        let x = random::kriordan(&mut rng, 2, n);
        let conj = x.multiply(&d)?.multiply(&x.inverse()?)?;
        if !is_type_almost_appell(&conj, 1) {
            return Ok(Some((x, d)));
        }
    }
    Ok(None)
}

/// Group operations shared by the ordinary and k-Riordan arrays.
pub trait GroupElement: Clone + PartialEq + fmt::Display + Send + Sync {
    fn product(&self, other: &Self) -> Result<Self>;
    fn invert(&self) -> Result<Self>;
    fn unit_like(&self) -> Self;
    fn truncation(&self) -> usize;
    fn retruncated(&self, n: usize) -> Result<Self>;
}

impl GroupElement for RiordanArray {
    fn product(&self, other: &Self) -> Result<Self> {
        self.multiply(other)
    }
    fn invert(&self) -> Result<Self> {
        self.inverse()
    }
    fn unit_like(&self) -> Self {
        RiordanArray::identity(self.truncation())
    }
    fn truncation(&self) -> usize {
        RiordanArray::truncation(self)
    }
    fn retruncated(&self, n: usize) -> Result<Self> {
        self.retruncate(n)
    }
}

impl GroupElement for KRiordanArray {
    fn product(&self, other: &Self) -> Result<Self> {
        self.multiply(other)
    }
    fn invert(&self) -> Result<Self> {
        self.inverse()
    }
    fn unit_like(&self) -> Self {
        KRiordanArray::identity(self.arity(), self.truncation())
    }
    fn truncation(&self) -> usize {
        KRiordanArray::truncation(self)
    }
    fn retruncated(&self, n: usize) -> Result<Self> {
        self.retruncate(n)
    }
}

impl fmt::Display for RiordanArray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.g(), self.f())
    }
}

impl fmt::Display for KRiordanArray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}", self.g())?;
        for m in self.multipliers() {
            write!(f, ", {m}")?;
        }
        f.write_str(")")
    }
}

/// An injective map into a k-Riordan group, as seen by the verification harness.
pub trait Embedding: Sync {
    type Domain: GroupElement;

    fn sample(&self, rng: &mut TrialRng, n: usize) -> Self::Domain;
    /// Image at truncation `n`.
    fn map_to(&self, x: &Self::Domain, n: usize) -> Result<KRiordanArray>;
    /// Truncation at which the image of an input at truncation `n` loses nothing.
    fn lossless_truncation(&self, n: usize) -> usize;
    fn preimage(&self, y: &KRiordanArray) -> Result<Self::Domain>;
    fn in_image(&self, y: &KRiordanArray) -> bool;
}

/// Embeddings whose domain is the ordinary Riordan group.
struct FromRiordan {
    id: MorphismId,
}

impl Embedding for FromRiordan {
    type Domain = RiordanArray;

    fn sample(&self, rng: &mut TrialRng, n: usize) -> RiordanArray {
        match self.id {
            MorphismId::PsiCheckerboard => random::checkerboard(rng, n),
            _ => random::riordan(rng, n),
        }
    }

    fn map_to(&self, x: &RiordanArray, n: usize) -> Result<KRiordanArray> {
        match self.id {
            MorphismId::PsiCheckerboard => psi_checkerboard(&x.retruncate(n)?),
            MorphismId::PhiK { k, position } => phi_k_to(x, k, position, n),
            other => Err(Error::Domain(format!("{other} does not act on the Riordan group"))),
        }
    }

    fn lossless_truncation(&self, n: usize) -> usize {
        match self.id {
            MorphismId::PhiK { k, .. } => k * n,
            _ => n,
        }
    }

    fn preimage(&self, y: &KRiordanArray) -> Result<RiordanArray> {
        match self.id {
            MorphismId::PsiCheckerboard => {
                if y.arity() != 2 || y.multipliers()[0] != y.multipliers()[1] {
                    return Err(Error::Domain("array is not in the image of psi".into()));
                }
                RiordanArray::new(y.g().clone(), y.multipliers()[0].clone())
            }
            MorphismId::PhiK { position, .. } => phi_k_preimage(y, position),
            other => Err(Error::Domain(format!("{other} does not act on the Riordan group"))),
        }
    }

    fn in_image(&self, y: &KRiordanArray) -> bool {
        match self.id {
            MorphismId::PsiCheckerboard => y.arity() == 2 && y.multipliers()[0] == y.multipliers()[1],
            MorphismId::PhiK { k, position } => y.arity() == k && is_phi_k_image(y, position),
            _ => false,
        }
    }
}

/// `χᵢ : kR → (k+1)R`.
struct Rebase {
    k: usize,
    i: usize,
}

impl Embedding for Rebase {
    type Domain = KRiordanArray;

    fn sample(&self, rng: &mut TrialRng, n: usize) -> KRiordanArray {
        random::kriordan(rng, self.k, n)
    }

    fn map_to(&self, x: &KRiordanArray, n: usize) -> Result<KRiordanArray> {
        chi_i_to(x, self.i, n)
    }

    fn lossless_truncation(&self, n: usize) -> usize {
        chi_i_lossless_truncation(self.k, n)
    }

    fn preimage(&self, y: &KRiordanArray) -> Result<KRiordanArray> {
        chi_i_preimage(y, self.i)
    }

    fn in_image(&self, y: &KRiordanArray) -> bool {
        y.arity() == self.k + 1 && is_type_almost_appell(y, self.i)
    }
}

/// Where two arrays first differ: component name (`g`, `m1`, ...) and exponent.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DiffLocation {
    pub component: String,
    pub index: usize,
}

pub fn first_difference(a: &KRiordanArray, b: &KRiordanArray) -> Option<DiffLocation> {
    if a.arity() != b.arity() || a.truncation() != b.truncation() {
        return Some(DiffLocation { component: "shape".into(), index: 0 });
    }
    let named = std::iter::once(("g".to_string(), a.g(), b.g())).chain(
        a.multipliers()
            .iter()
            .zip(b.multipliers())
            .enumerate()
            .map(|(i, (x, y))| (format!("m{}", i + 1), x, y)),
    );
    for (component, x, y) in named {
        if let Some(index) = x.coeffs().iter().zip(y.coeffs()).position(|(p, q)| p != q) {
            return Some(DiffLocation { component, index });
        }
    }
    None
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub trial: usize,
    pub check: &'static str,
    /// The random domain pair `(A, B)` of the trial.
    pub inputs: [String; 2],
    pub location: Option<DiffLocation>,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomomorphismReport {
    pub map: MorphismId,
    pub trials: usize,
    pub truncation: usize,
    pub seed: u64,
    pub failures: Vec<Failure>,
}

impl HomomorphismReport {
    pub fn verified(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks one of the library's maps on `trials` random pairs at truncation `n`.
pub fn verify_homomorphism(map: MorphismId, trials: usize, n: usize, seed: u64) -> HomomorphismReport {
    let failures = match map.canonical() {
        MorphismId::ChiI { k, i } => verify_embedding(&Rebase { k, i }, trials, n, seed),
        id => verify_embedding(&FromRiordan { id }, trials, n, seed),
    };
    HomomorphismReport { map, trials, truncation: n, seed, failures }
}

/// Runs the checks for any [`Embedding`]. Trials run in parallel; each has
/// its own random stream, so the outcome depends only on `seed`.
///
/// Per trial: `map(A·B) = map(A)·map(B)`, `map(A⁻¹) = map(A)⁻¹`,
/// `map(1) = 1`, image membership, preimage recovery from the lossless
/// image, and distinct inputs giving distinct lossless images.
pub fn verify_embedding<E: Embedding>(e: &E, trials: usize, n: usize, seed: u64) -> Vec<Failure> {
    let per_trial: Vec<Vec<Failure>> =
        (0..trials).into_par_iter().map(|t| run_trial(e, t, n, seed)).collect();
    per_trial.into_iter().flatten().collect()
}

fn run_trial<E: Embedding>(e: &E, trial: usize, n: usize, seed: u64) -> Vec<Failure> {
    let mut rng = random::rng_for(seed, trial as u64);
    let a = e.sample(&mut rng, n);
    let b = e.sample(&mut rng, n);
    let inputs = [a.to_string(), b.to_string()];
    let mut failures = Vec::new();
    let mut fail = |check: &'static str, location: Option<DiffLocation>, detail: String| {
        failures.push(Failure { trial, check, inputs: inputs.clone(), location, detail });
    };

    let outcome = (|| -> Result<Vec<(&'static str, KRiordanArray, KRiordanArray)>> {
        let fa = e.map_to(&a, n)?;
        let fb = e.map_to(&b, n)?;
        Ok(vec![
            ("homomorphism", e.map_to(&a.product(&b)?, n)?, fa.multiply(&fb)?),
            ("inverse", e.map_to(&a.invert()?, n)?, fa.inverse()?),
            (
                "identity",
                e.map_to(&a.unit_like(), n)?,
                KRiordanArray::identity(fa.arity(), n),
            ),
        ])
    })();
    match outcome {
        Ok(pairs) => {
            for (check, lhs, rhs) in pairs {
                if let Some(location) = first_difference(&lhs, &rhs) {
                    fail(check, Some(location), "sides differ".into());
                }
            }
        }
        Err(err) => fail("evaluation", None, err.to_string()),
    }

    let lossless = e.lossless_truncation(n);
    match (e.map_to(&a, lossless), e.map_to(&b, lossless)) {
        (Ok(ia), Ok(ib)) => {
            if !e.in_image(&ia) {
                fail("image", None, "image leaves the target subgroup".into());
            }
            match e.preimage(&ia).and_then(|p| p.retruncated(n)) {
                Ok(p) if p == a => {}
                Ok(_) => fail("preimage", None, "recovered preimage differs from input".into()),
                Err(err) => fail("preimage", None, err.to_string()),
            }
            if a != b && ia == ib {
                fail("injectivity", None, "distinct inputs share an image".into());
            }
        }
        (Err(err), _) | (_, Err(err)) => fail("evaluation", None, err.to_string()),
    }
    failures
}
