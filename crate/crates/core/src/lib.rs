//! Exact computations with reduced-expression graphs of symmetric-group
//! elements and the braid-move morphisms they induce between Bott-Samelson
//! bimodules.
//!
//! The crate is organised bottom-up:
//!
//! * [`symgroup`]: permutations, words in simple reflections, braid moves and
//!   enumeration of reduced expressions.
//! * [`poly`]: exact multivariate polynomials over the rationals with the
//!   variable-permuting action and Demazure operators.
//! * [`bsbimod`]: elements of Bott-Samelson bimodules in left normal form.
//! * [`braidmor`]: local braid morphisms, edge matrices and path morphisms.
//! * [`rexgraph`]: expanded and conflated expression graphs, orientation,
//!   clouds, path lifting and enumeration.
//! * [`fpc`]: checkers for path-morphism equalities (forking paths, the
//!   idempotent identities, and the known counterexamples).
//!
//! Everything is `no_std` + `alloc`; IO, file formats and the command line
//! live in the companion `rexcalc` crate.

#![cfg_attr(not(test), no_std)]
#![deny(unsafe_code)]

extern crate alloc;

pub mod braidmor;
pub mod bsbimod;
mod error;
pub mod fpc;
pub mod poly;
mod rational;
pub mod rexgraph;
pub mod symgroup;

pub use error::{Error, Result};
pub use rational::Rational;
