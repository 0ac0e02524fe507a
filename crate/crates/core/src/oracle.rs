//! Brute-force ground truth: exhaustive sign scans, zero sets, extrema and
//! the sample table, plus the constructive unboundedness witness.
//!
//! Scans evaluate `x(n)` directly for every `n` in range. Large ranges are
//! split on a fixed chunk grid and processed in parallel; the merge is
//! associative, so the output is bit-identical no matter how the work is
//! partitioned.

use num_bigint::{BigInt, BigUint};
use num_traits::One;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::eval::{eval_row, x_big, x_raw, EvalRow, Sign, WORD_TIER_MAX};

/// Spans at least this long are scanned in parallel.
const PAR_CHUNK: u64 = 1 << 16;

/// Maximal interval on which `x` has one sign class.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SignRun {
    pub lo: u64,
    pub hi: u64,
    pub sign: Sign,
}

fn check_range(lo: u64, hi: u64) -> Result<()> {
    if lo == 0 {
        return Err(Error::domain("range must start at a positive integer"));
    }
    if lo > hi {
        return Err(Error::domain(format!("empty range: lo = {lo} > hi = {hi}")));
    }
    if hi > WORD_TIER_MAX {
        return Err(Error::domain(format!(
            "hi = {hi} exceeds 2^62; the scanner is word-tier only"
        )));
    }
    Ok(())
}

fn scan_signs_seq(lo: u64, hi: u64) -> Vec<SignRun> {
    let mut runs: Vec<SignRun> = Vec::new();
    for n in lo..=hi {
        let sign = Sign::of(x_raw(n));
        match runs.last_mut() {
            Some(run) if run.sign == sign => run.hi = n,
            _ => runs.push(SignRun { lo: n, hi: n, sign }),
        }
    }
    runs
}

/// Concatenate two adjacent run lists, fusing equal-sign runs at the seam.
pub fn merge_runs(mut left: Vec<SignRun>, right: Vec<SignRun>) -> Vec<SignRun> {
    for run in right {
        match left.last_mut() {
            Some(last) if last.sign == run.sign && last.hi + 1 == run.lo => last.hi = run.hi,
            _ => left.push(run),
        }
    }
    left
}

fn chunk_bounds(lo: u64, hi: u64, index: u64) -> (u64, u64) {
    let c_lo = lo + index * PAR_CHUNK;
    let c_hi = c_lo.saturating_add(PAR_CHUNK - 1).min(hi);
    (c_lo, c_hi)
}

/// Maximal constant-sign runs covering `[lo, hi]`, by direct evaluation.
pub fn scan_signs(lo: u64, hi: u64) -> Result<Vec<SignRun>> {
    check_range(lo, hi)?;
    let span = hi - lo + 1;
    if span <= PAR_CHUNK {
        return Ok(scan_signs_seq(lo, hi));
    }
    Ok((0..span.div_ceil(PAR_CHUNK))
        .into_par_iter()
        .map(|i| {
            let (c_lo, c_hi) = chunk_bounds(lo, hi, i);
            scan_signs_seq(c_lo, c_hi)
        })
        .reduce(Vec::new, merge_runs))
}

/// Zeros, extrema and the last non-positive index of a scanned range.
///
/// Ties in the extrema break toward the smallest `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanSummary {
    pub lo: u64,
    pub hi: u64,
    pub zeros: Vec<u64>,
    pub min_at: u64,
    pub min_value: i64,
    pub max_at: u64,
    pub max_value: i64,
    pub last_nonpositive: Option<u64>,
}

fn scan_summary_seq(lo: u64, hi: u64) -> ScanSummary {
    let mut zeros = Vec::new();
    let mut min_at = lo;
    let mut min_value = i64::MAX;
    let mut max_at = lo;
    let mut max_value = i64::MIN;
    let mut last_nonpositive = None;
    for n in lo..=hi {
        let x = x_raw(n);
        if x == 0 {
            zeros.push(n);
        }
        if x < min_value {
            min_at = n;
            min_value = x;
        }
        if x > max_value {
            max_at = n;
            max_value = x;
        }
        if x <= 0 {
            last_nonpositive = Some(n);
        }
    }
    ScanSummary {
        lo,
        hi,
        zeros,
        min_at,
        min_value,
        max_at,
        max_value,
        last_nonpositive,
    }
}

fn merge_summaries(left: ScanSummary, right: ScanSummary) -> ScanSummary {
    let mut zeros = left.zeros;
    zeros.extend(right.zeros);
    let (min_at, min_value) = if right.min_value < left.min_value
        || (right.min_value == left.min_value && right.min_at < left.min_at)
    {
        (right.min_at, right.min_value)
    } else {
        (left.min_at, left.min_value)
    };
    let (max_at, max_value) = if right.max_value > left.max_value
        || (right.max_value == left.max_value && right.max_at < left.max_at)
    {
        (right.max_at, right.max_value)
    } else {
        (left.max_at, left.max_value)
    };
    ScanSummary {
        lo: left.lo.min(right.lo),
        hi: left.hi.max(right.hi),
        zeros,
        min_at,
        min_value,
        max_at,
        max_value,
        last_nonpositive: right.last_nonpositive.or(left.last_nonpositive),
    }
}

/// Exact zeros and extrema of `x` over `[lo, hi]` by exhaustive evaluation.
pub fn scan_summary(lo: u64, hi: u64) -> Result<ScanSummary> {
    check_range(lo, hi)?;
    let span = hi - lo + 1;
    if span <= PAR_CHUNK {
        return Ok(scan_summary_seq(lo, hi));
    }
    let merged = (0..span.div_ceil(PAR_CHUNK))
        .into_par_iter()
        .map(|i| {
            let (c_lo, c_hi) = chunk_bounds(lo, hi, i);
            scan_summary_seq(c_lo, c_hi)
        })
        .reduce_with(merge_summaries)
        .expect("non-empty chunk list");
    Ok(merged)
}

/// The minimizing `(n, x(n))` over `[1, hi]` with one index excluded.
/// Ties break toward the smallest `n`.
pub fn second_minimum(hi: u64, exclude: u64) -> Result<(u64, i64)> {
    if hi < exclude {
        return Err(Error::domain(format!(
            "hi = {hi} is below the excluded index {exclude}"
        )));
    }
    if hi == 1 && exclude == 1 {
        return Err(Error::domain("search set [1, 1] \\ {1} is empty"));
    }
    if hi > WORD_TIER_MAX {
        return Err(Error::domain("hi exceeds 2^62"));
    }
    let mut best: Option<(u64, i64)> = None;
    for n in 1..=hi {
        if n == exclude {
            continue;
        }
        let x = x_raw(n);
        match best {
            Some((_, bx)) if bx <= x => {}
            _ => best = Some((n, x)),
        }
    }
    Ok(best.expect("non-empty search set"))
}

/// The `n` values of the `exercise1` sample preset.
pub const EXERCISE1_POINTS: [u64; 21] = [
    1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 20, 50, 100, 200, 300, 400, 500, 1000,
];

/// Evaluated rows for the `exercise1` sample preset.
pub fn exercise1_table() -> Vec<EvalRow> {
    EXERCISE1_POINTS
        .iter()
        .map(|&n| eval_row(n).expect("preset points are in range"))
        .collect()
}

/// A verified witness that `x` exceeds a requested bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExceedWitness {
    /// Exponent parameter: the witness is `n = 2^(2k+2)`.
    pub k: u64,
    pub n: BigUint,
    /// `x(n)`, evaluated exactly; always greater than the requested bound.
    pub x: BigInt,
}

/// A witness `n = 2^(2k+2)` with `x(n) > bound`, verified exactly.
///
/// `k` is the least integer `>= 6` with `2^(k+2) > 3*bound + 1`, so the
/// construction costs `O(log bound)` big-integer operations instead of a
/// search. The returned `x` is recomputed from scratch; the loop advances
/// `k` if the verification ever failed, so the witness is trustworthy even
/// without the bound derivation.
pub fn find_exceeding(bound: &BigUint) -> ExceedWitness {
    let threshold: BigUint = bound * 3u32 + 1u32;
    // least t with 2^t > threshold is the bit length of threshold
    let mut k = threshold.bits().max(8) - 2;
    loop {
        let n = BigUint::one() << (2 * k + 2);
        let x = x_big(&n).expect("n is positive");
        if x > BigInt::from(bound.clone()) {
            return ExceedWitness { k, n, x };
        }
        k += 1;
    }
}
