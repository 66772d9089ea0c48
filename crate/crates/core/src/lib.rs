//! Exact tools for the dilated empty simplices `kP(a₁,…,a_{k−1},m)`:
//! lattice-point enumeration and δ-polynomials, the integer decomposition
//! threshold, the toric ideal of `kP` with an explicit Gröbner basis, the
//! induced regular unimodular triangulation, and obstruction certificates
//! for the parameters where no such triangulation exists.

pub mod error;
pub mod families;
pub mod family;
pub mod algebra;
pub mod lattice;
pub mod linalg;
pub mod obstruction;
pub mod triangulation;

pub use error::{Error, Result};
