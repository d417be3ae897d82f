//! K-type multiplicities of discrete series representations of `U(p,q)`.
//!
//! Multiplicities come from Blattner's formula, a signed sum over the compact
//! Weyl group of Kostant partition function values. Partition functions of the
//! noncompact positive roots are evaluated exactly as sums of iterated
//! residues over ordered bases attached to maximal proper nested sets.
//!
//! Modules, bottom up:
//!
//! - [`algebra`]: rationals, polynomials in one parameter, piecewise polynomials
//! - [`roots`]: `Δ⁺(A,B)`, noncompact walls, cones, deformations
//! - [`mpns`]: ordered bases adapted to a vector
//! - [`partition`]: partition functions, numeric and along rays
//! - [`blattner`]: multiplicities, lowest K-types, asymptotic directions

pub mod algebra;
pub mod blattner;
pub mod mpns;
pub mod partition;
pub mod roots;
pub mod sample;
pub mod selftest;

pub use algebra::{PiecewisePolynomial, Rational, UniPoly};
