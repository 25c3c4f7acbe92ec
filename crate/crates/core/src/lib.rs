//! Two-atom van der Waals potentials and forces for ground-state atoms in
//! free space and near a planar half space.
//!
//! Everything is expressed in reduced units with `ħ = c = ε0 = μ0 = 1`:
//! lengths in units of `c/ω_ref`, frequencies in units of `ω_ref` and
//! energies in units of `ħω_ref`. Response functions are evaluated on the
//! imaginary frequency axis `ω = iu`, where they are real.

// `!(x > 0.0)` is used deliberately so that NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod forces;
pub mod greens;
pub mod imaging;
pub mod materials;
pub mod potentials;
pub mod quadrature;
pub mod specfun;
pub mod validation;

pub use error::{Error, Result};
