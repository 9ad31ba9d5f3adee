//! Exact formal Legendre transforms of polynomials over ℚ, their tree-diagram
//! expansion, polynomial map inversion through the Legendre bridge
//! `φ(v, x) = v·f(x)`, and the Wick-pairing combinatorics of the quartic
//! Gaussian model.

pub mod algebra;
pub mod combinatorics;
pub mod error;
pub mod inversion;
pub mod legendre;
pub mod samples;
pub mod trees;
pub mod verify;
pub mod wick;

pub use error::{Error, ParseError, Result};
