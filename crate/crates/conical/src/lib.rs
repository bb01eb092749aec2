//! Exact-arithmetic analysis of conical semigroups.
//!
//! Decides finite generation up to unimodular symmetry for pointed
//! polyhedral cones and half-spaces with real-algebraic extreme rays,
//! builds the accompanying certificates (symmetry generators, rational
//! sub-cone, Hilbert basis), and reconstructs integer points as
//! nonnegative combinations of group images of the basis.

pub mod algebraic;
pub mod cone;
pub mod error;
pub mod generation;
pub mod hilbert;
pub mod io;
pub mod lab;
pub mod linalg;
pub mod parallel;
pub mod pell;
pub mod symmetry;

pub use error::Error;

pub type Result<T> = std::result::Result<T, Error>;
