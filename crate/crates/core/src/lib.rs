// `!(x >= a)` is used on purpose so that NaN arguments are rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod conjecture;
pub mod error;
pub mod explicit;
pub mod numerics;
pub mod pair_correlation;
pub mod primes;
pub mod report;
pub mod zeros;

pub use error::{Error, Result};
