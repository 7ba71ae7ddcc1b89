//! Exact F2 computations with nil Hecke algebras, affine strand categories
//! and strand categories of singular curves.
//!
//! The modules build on each other in order: [`f2core`] holds formal sums
//! and the grading group, [`hecke`] the (affine) nil Hecke algebras,
//! [`affinecat`] the periodic-map categories, [`curve`] the chord-diagram
//! curve models, [`strands`] braids and strand categories, and [`tworep`]
//! the end actions, duality and gluing checks. [`cli`] drives everything
//! from the command line.

pub mod f2core;
pub mod hecke;
pub mod affinecat;
pub mod curve;
pub mod strands;
pub mod tworep;
pub mod cli;
