//! Exact arithmetic for the Riordan group, the Double Riordan group and the
//! k-Riordan groups over truncated formal power series, together with the
//! embeddings between them.

pub mod error;
pub mod matrix;
pub mod morphisms;
pub mod multi_riordan;
pub mod random;
pub mod riordan;
pub mod series;

pub use error::{Error, Result};
pub use matrix::TriangularMatrix;
pub use morphisms::{HomomorphismReport, MorphismId};
pub use multi_riordan::{AeratedProfile, KRiordanArray};
pub use riordan::RiordanArray;
pub use series::{Coefficient, Series, SeriesClass};
