//! Alternative polarization and Alexander duality for strongly stable
//! monomial ideals, with the irreducible decompositions and homological
//! invariants that the duality computes, each paired with a brute-force
//! oracle.

pub mod cli;
pub mod decompose;
pub mod duality;
pub mod error;
pub mod homology;
pub mod ideal;
pub mod monomial;
pub mod polarize;
pub mod series;
pub mod verify;

pub use error::{Error, Result};
pub use ideal::{borel_closure, minimalize, MonomialIdeal};
pub use monomial::Monomial;
pub use series::{hilbert_series_quotient, RationalSeries};
