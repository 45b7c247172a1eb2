//! Exact linearization coefficients of orthogonal polynomial families.
//!
//! Every quantity is computed twice: once through the normalized moment
//! functional of a three-term recurrence, and once by weighted enumeration of
//! matchings, set partitions or permutations on a boxed ground set. 

pub mod bijections;
pub mod combi;
pub mod error;
pub mod families;
pub mod linearize;
pub mod moments;
pub mod scalar;
pub mod series;
pub mod suites;

pub use error::{Error, Result};
pub use families::{BirthDeathSpec, FamilyKind, FamilySpec, PrefactorRule};
pub use scalar::{GaussianRational, Poly, Rational};
