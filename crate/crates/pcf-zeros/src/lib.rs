//! Complex zeros of the parabolic cylinder function `U(a,z)`.
//!
//! The zeros in the second quadrant are followed as a chain: each zero is
//! displaced toward the next one and polished by a fourth-order fixed-point
//! map, with `U/U'` obtained by Taylor-series integration of the differential
//! equation. Absolute values of `U` and `U'` (for the first zero and for
//! verification) come from integration out of the origin or, for large `a`,
//! from Liouville-Green expansions.

pub mod airy;
pub mod chain;
pub mod coeffs;
pub mod error;
pub mod lg;
pub mod pcf;
pub mod report;
pub mod scaled;
pub mod taylor;

pub use chain::{run_chain, verify_zeros, ChainConfig, ZeroRecord};
pub use error::{AiryError, ChainError, CoeffError, EvalError, LgError, TaylorError};
pub use scaled::ScaledValue;
