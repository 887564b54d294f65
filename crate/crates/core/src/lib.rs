//! Exact computer algebra for complete differential graded Lie algebras over
//! the rationals, truncated by bracket length: free graded Lie algebras,
//! BCH and gauge calculus, Lie models of finite simplicial complexes, and
//! classification of Maurer-Cartan elements up to gauge equivalence.

pub mod cdgl;
pub mod checks;
pub mod classify;
pub mod contraction;
pub mod error;
pub mod lie;
pub mod linalg;
pub mod rational;
pub mod series;
pub mod simplicial;

pub use error::{CdglError, Result};
pub use rational::Rational;
