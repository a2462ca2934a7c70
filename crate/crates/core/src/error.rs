use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Failures raised by series arithmetic and the group operations built on it.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("coefficient index {index} is beyond truncation order {truncation}")]
    OutOfRange { index: usize, truncation: usize },
    #[error("truncation mismatch: {left} vs {right}")]
    TruncationMismatch { left: usize, right: usize },
    #[error("operation needs precision up to z^{needed} but only z^{available} is known")]
    Precision { needed: usize, available: usize },
    #[error("series is not a unit (constant term is zero)")]
    NotAUnit,
    #[error("inner series of a composition must have zero constant term")]
    CompositionDomain,
    #[error("series has no compositional inverse (needs zero constant and nonzero linear term)")]
    NotInvertible,
    #[error("invalid step {step} / residue {residue}")]
    InvalidStep { step: usize, residue: usize },
    #[error("nonzero coefficient at z^{exponent} is not congruent to {residue} mod {step}")]
    Support { step: usize, residue: usize, exponent: usize },
    #[error("series of order {order:?} has no {degree}-th root with integral order")]
    RootOrder { order: Option<usize>, degree: usize },
    #[error("leading coefficient {leading} has no rational {degree}-th root")]
    IrrationalRoot { leading: String, degree: usize },
    #[error("g must have nonzero constant term")]
    InvalidG,
    #[error("f must have zero constant term and nonzero linear term")]
    InvalidF,
    #[error("{function} violates subgroup membership: {reason}")]
    Membership { function: String, reason: String },
    #[error("arity mismatch: {left} vs {right}")]
    Arity { left: usize, right: usize },
    #[error("input series must be {expected}")]
    Parity { expected: &'static str },
    #[error("position {position} is outside 1..={max}")]
    Position { position: usize, max: usize },
    #[error("{0}")]
    Domain(String),
}
