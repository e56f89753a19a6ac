//! Exact combinatorics of root systems, strongly orthogonal root sets,
//! apartments of affine buildings, harmonic cochains and Poincare series.

// index loops read better than iterator chains in the matrix code
#![allow(clippy::needless_range_loop)]

pub mod apartment;
pub mod cochain;
pub mod linalg;
pub mod prasad;
pub mod rootsys;
pub mod series;
pub mod sorth;
pub mod tree_oracle;
