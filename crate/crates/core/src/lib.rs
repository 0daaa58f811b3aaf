//! Exact Gröbner-basis machinery for the ideals of barred two-row matrices
//! and for verifying candidate defining-equation sets of their varieties.

pub mod constructions;
pub mod error;
pub mod groebner;
pub mod ideal;
pub mod minvar;
pub mod poly;
pub mod verify;
