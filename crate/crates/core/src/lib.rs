//! Absorption and translate indices of n-dimensional simplices.
//!
//! For a convex body `C` and a nondegenerate simplex `S` in R^n, the
//! absorption index `xi(C;S)` is the smallest `sigma >= 1` such that the
//! homothetic copy `sigma S` (dilated about the centroid) contains `C`,
//! and the translate index `alpha(C;S)` is the smallest `tau > 0` such
//! that some translate of `tau S` contains `C`. Both reduce to evaluating
//! the basic Lagrange polynomials of `S` against the support function of
//! `C`, which this crate implements for balls and cubes together with the
//! derived simplex metrics (inradius, heights, axial diameters,
//! circumradius), extremal constructions (regular simplices, Hadamard
//! simplices) and independent verification oracles.

pub mod absorption;
pub mod bodies;
pub mod constructions;
pub mod error;
pub mod io;
pub mod linalg;
pub mod metrics;
pub mod oracle;
pub mod scalar;
pub mod search;
pub mod simplex;

pub use bodies::ConvexBody;
pub use error::{Error, Result};
pub use simplex::{LagrangeCoeffs, Simplex};
