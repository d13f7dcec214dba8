//! Linear ramp secret sharing from nested code pairs.
//!
//! The crate computes generalized and relative generalized Hamming weights
//! by exhaustive search, builds ramp schemes and measures their information
//! leakage exactly, evaluates the semigroup bounds for one-point algebraic
//! geometric codes against concrete Reed-Solomon and Hermitian codes, counts
//! code pairs exactly for the Gilbert-Varshamov style existence inequality,
//! and evaluates the asymptotic bounds on weights and scheme deficiencies.

pub mod ag;
pub mod asymptotic;
pub mod counting;
pub mod field;
pub mod scheme;
pub mod semigroup;
pub mod weights;

/// Default cap on exhaustive enumerations.
pub const DEFAULT_BUDGET: u64 = 100_000_000;

/// An exhaustive search refused to start because its size exceeds the budget.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("enumeration of {needed} candidates exceeds budget {budget}")]
pub struct TooLarge {
    pub needed: String,
    pub budget: u64,
}

impl TooLarge {
    pub fn new(needed: impl ToString, budget: u64) -> Self {
        Self {
            needed: needed.to_string(),
            budget,
        }
    }
}
