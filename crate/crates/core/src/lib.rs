//! Exact computer algebra for difference rings with a finite automorphism
//! group.
//!
//! The crate is `no_std` and only needs `alloc`. Everything here is pure
//! computation: finite groups given by Cayley tables, exact coefficient
//! fields, pseudofields `Fun(K)` and their product generalisations,
//! difference polynomial rings, a Buchberger engine, the adjoint
//! correspondence between difference ideals over `Fun(K){y}` and ordinary
//! ideals of `K[Σ·Y]`, desk-scale pseudovariety computations and a
//! brute-force laboratory of small finite difference rings.
//!
//! Session parsing, JSON output and the command line live in the companion
//! `dakernel` crate.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod adjoint;
pub mod coeff;
pub mod diffideal;
pub mod diffpoly;
mod error;
pub mod finitering;
pub mod groebner;
pub mod group;
pub mod monomial;
pub mod pseudofield;
pub mod univariate;
pub mod variety;

pub use adjoint::{AdjPoint, TaylorHom};
pub use coeff::{Field, FieldElem};
pub use diffideal::{ComponentIdeal, DiffIdeal};
pub use diffpoly::{DiffPoly, DiffRing};
pub use error::{Error, Result};
pub use groebner::{Ideal, MonomialOrder, Poly, PolyRing};
pub use group::{Group, GroupElem};
pub use monomial::Monomial;
pub use pseudofield::{PseudoInversePair, Pseudofield, PseudofieldElem};
