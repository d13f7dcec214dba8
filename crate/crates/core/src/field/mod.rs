//! Finite fields GF(q), q <= 256, and the linear algebra used by every
//! other module: matrices, canonical generator forms, duals and
//! coordinate-subspace intersections.

mod code;
mod gf;
mod matrix;

pub use code::{LinearCode, NestedCodePair};
pub use gf::{prime_power, supported_orders, Elem, FieldElement, FieldSpec, MAX_ORDER};
pub use matrix::{Matrix, Rref};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("unsupported field order {0} (need a prime power <= 256)")]
    UnsupportedOrder(usize),
    #[error("built-in modulus for GF({p}^{e}) is reducible")]
    ReducibleModulus { p: u32, e: u32 },
    #[error("element {value} out of range for GF({q})")]
    ElementOutOfRange { value: u64, q: usize },
    #[error("shape error: {0}")]
    Shape(String),
    #[error("codes differ in field or length")]
    Mismatch,
    #[error("C2 is not contained in C1")]
    NotNested,
    #[error("C2 = C1; the pair must be strictly nested")]
    NotStrict,
    #[error("malformed code file: {0}")]
    Format(String),
}
