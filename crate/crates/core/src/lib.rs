//! Exact construction of the Hurwitz algebras, their Jordan algebras and the
//! Freudenthal–Tits magic-square Lie algebras, with real-form identification
//! by Killing-form character and symmetric-coset realizations of the
//! octonionic Rosenfeld planes and lines.

pub mod hurwitz;
pub mod jordan;
pub mod liealg;
pub mod magic;
pub mod ratlin;
pub mod rosenfeld;

mod error;

pub use error::Error;
