//! Exact arithmetic in real cyclotomic fields and exact signatures of
//! symmetric matrices over them. No tolerance parameter exists anywhere
//! in this module.

mod cyclo;
pub mod interval;
mod matrix;

pub use cyclo::{
    cyclotomic_poly, euler_phi, CycloNumber, ExactError, Sign, DEFAULT_SIGN_BUDGET_BITS,
};
pub use matrix::{Signature, SymMatrix};
