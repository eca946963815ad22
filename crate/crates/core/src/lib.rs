//! Finite-dimensional modified Rota-Baxter algebras over the rationals:
//! validation, cohomology, the comparison with Rota-Baxter cohomology,
//! truncated formal deformations and abelian extensions.
//!
//! Everything is exact. Structures are given by structure constants on a
//! fixed basis and every identity is checked on basis tuples.

pub mod algebra;
pub mod bridge;
pub mod cli;
pub mod cochain;
pub mod cohomology;
pub mod deformation;
pub mod document;
pub mod error;
pub mod exec;
pub mod extensions;
pub mod instances;
pub mod linalg;

pub use error::{Error, Result};
pub use exec::Execution;
