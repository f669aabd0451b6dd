//! Direct-product decompositions of groups arising from Coxeter systems.
//!
//! The crate has three layers:
//!
//! * [`exact`] — arithmetic in real cyclotomic fields and exact signatures
//!   of symmetric matrices over them;
//! * [`coxeter`] and [`decomp`] — Coxeter systems, their Tits forms,
//!   classification, explicit generation of the finite groups, and the
//!   canonical factorization into indecomposable direct factors;
//! * [`grouptheory`] and [`liealg`] — brute-force verifiers: Remak
//!   decompositions of finite groups given by Cayley tables, and
//!   centroid-based decompositions of rational Lie algebras.
//!
//! Everything is exact; no floating point enters any decision.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod coxeter;
pub mod decomp;
pub mod exact;
pub mod grouptheory;
pub mod liealg;

pub use exact::{CycloNumber, Sign, Signature, SymMatrix};
