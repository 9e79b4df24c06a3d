//! Exact computation in quantum matrix algebras: normal forms, quantum minors,
//! Ore localizations at quantum minors, and the quantum Gauss decomposition
//! with its coaction-theoretic checks.

pub mod error;
pub mod gaussbundle;
pub mod orelocal;
pub mod qalgebra;
pub mod qminor;
pub mod report;
pub mod scalar;

pub use error::{Error, Result};
