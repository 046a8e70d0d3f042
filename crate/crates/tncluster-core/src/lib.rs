//! Quantum cluster combinatorics for the type A-infinity quiver Hecke category,
//! its truncations `T_N`, and the dictionaries to quantum affine module labels.
//!
//! Everything is exact: weights carry integer coefficients, forms take
//! half-integer values stored doubled, and powers of `q` are kept in
//! half-units.
#![no_std]

extern crate alloc;

pub mod affine;
pub mod error;
pub mod lattice;
pub mod multiseg;
pub mod qcluster;
pub mod quiver;
pub mod tnring;
pub mod word;

pub use error::{Error, Result};
