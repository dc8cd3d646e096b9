//! Three-dimensional projective space built from lines and an abstract
//! incidence relation.
//!
//! * [`galois`] and [`pg3`] construct the finite models PG(3,q) and their line
//!   incidence, cross-checked through shared points and the Klein form.
//! * [`incidence`] works on any [`IncidenceStructure`]: perps, skewness,
//!   `Σ(a, b)` and its two classes, derived points and planes.
//! * [`reguli`] builds reguli and conjugate reguli and checks their
//!   theorems.
//! * [`audit`] checks the axioms, including the projectivity axioms P1 and
//!   P2, and assembles witness-carrying reports.
//! * [`io`] reads and writes structure and report files and generates
//!   mutation corpora.

pub mod audit;
pub mod galois;
pub mod incidence;
pub mod io;
pub mod lineset;
pub mod pg3;
pub mod reguli;
pub mod report;

pub use incidence::{IncidenceStructure, LineId};
pub use lineset::LineSet;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Field(#[from] galois::FieldError),
    #[error(transparent)]
    Model(#[from] pg3::ModelError),
    #[error(transparent)]
    Structure(#[from] incidence::StructureError),
    #[error(transparent)]
    Regulus(#[from] reguli::RegulusError),
    #[error(transparent)]
    Format(#[from] io::FormatError),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
