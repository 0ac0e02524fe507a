//! Exact evaluation and certified sign classification of
//! `x(n) = z(n) - (r(n)+1) * m(n)`, where for a positive integer `n`:
//!
//! * `z(n)` is the largest integer with `3 z(n) < 2n`,
//! * `m(n)` is the largest integer with `m(n)^2 <= 2n`,
//! * `r(n)` is the least non-negative integer with `n <= 2^r(n)`.
//!
//! The crate provides three layers:
//!
//! * [`eval`] — exact closed-form evaluation at machine-word and
//!   arbitrary precision, plus the power-of-two closed forms;
//! * [`oracle`] — brute-force ground truth: sign scans, zero sets,
//!   extrema, the sample table and a constructive witness that `x` is
//!   unbounded;
//! * [`certifier`] — machine-checkable certificates that classify the sign
//!   of `x(n)` for *every* `n >= 1`: a segment tiling of `[1, 4096]` with
//!   per-segment justification and an exact tail bound for everything
//!   beyond, all re-derivable by an independent checker.
//!
//! Everything is integer arithmetic; no floating point anywhere.

pub mod certifier;
pub mod error;
pub mod eval;
pub mod isqrt;
pub mod oracle;

pub use error::{Error, Result};
pub use eval::{
    eval_row, eval_row_big, m_big, m_of, r_big, r_of, sign_of, x_big, x_of, z_at_power, z_big,
    z_of, BigEvalRow, EvalRow, PowerOfTwoFacts, Sign, WORD_TIER_MAX,
};
pub use isqrt::{isqrt_big, isqrt_u64};
pub use oracle::{
    exercise1_table, find_exceeding, merge_runs, scan_signs, scan_summary, second_minimum,
    ExceedWitness, ScanSummary, SignRun, EXERCISE1_POINTS,
};
