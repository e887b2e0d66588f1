//! Determinant identities for power-residue matrices over small finite
//! fields, checked two ways: brute-force linear algebra on one side,
//! closed-form predictions on the other. The two routes share no code
//! past the field arithmetic itself; they meet only in the verification
//! harness, which reports agreement case by case.
//!
//! The main objects are k x k matrices indexed by a coset or subgroup of
//! the multiplicative group, with entries like (a_i + a_j)^e or
//! (a_i^2 + a_i a_j + a_j^2)^e for e = (q-3)/2, plus a gallery of related
//! reciprocal-entry determinants and an imaginary quadratic class number
//! cross-check.

pub mod builders;
pub mod classnum;
pub mod closed;
pub mod comb;
pub mod error;
pub mod field;
pub mod gallery;
pub mod harness;
pub mod matrix;

pub use error::{Error, Result};
pub use field::{FieldElement, FieldSpec, FIELD_BOUND};
