//! Exact construction and verification of torsion points on superelliptic
//! curves `y^d = f(x)` with a single point at infinity.
//!
//! Arithmetic is over `Q` and `Q(i)`. [`constructors`] builds curves with a
//! point of prescribed order, [`certify`] checks the resulting certificates
//! and decides which orders are reachable, and [`jacobian2`] cross-checks
//! orders on hyperelliptic curves with divisor arithmetic.

pub mod certify;
pub mod cli;
pub mod constructors;
pub mod curves;
pub mod error;
pub mod jacobian2;
pub mod polyring;
pub mod scalars;
pub mod series;

pub use error::{Error, Result};
pub use polyring::Poly;
pub use scalars::{Field, GaussianRational, PAdicValue, Rational};
