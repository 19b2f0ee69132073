//! Exact rational scalars, dense matrices and a small simplex solver.

pub mod lp;
pub mod matrix;
pub mod rational;

pub use lp::{lp_max_min, LinearProgram, LpResult, LpStatus, Relation};
pub use matrix::RatMatrix;
pub use rational::{format_rational, parse_rational, Rational};
