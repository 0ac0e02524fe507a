//! Exact evaluation of the four sequences and their power-of-two closed forms.
//!
//! For a positive integer `n`:
//!
//! * `z(n)` is the largest integer with `3*z(n) < 2n`, i.e. `floor((2n-1)/3)`;
//! * `m(n)` is the largest integer with `m(n)^2 <= 2n`, i.e. `isqrt(2n)`;
//! * `r(n)` is the least non-negative integer with `n <= 2^r(n)`, i.e. the
//!   bit length of `n - 1`;
//! * `x(n) = z(n) - (r(n)+1)*m(n)` is the studied quantity.
//!
//! Two tiers are provided: a machine-word path for `n <= 2^62` (used by the
//! scanners) and an arbitrary-precision path for everything else (used by the
//! tail bound and the unboundedness witness). The tiers agree on the overlap;
//! the tests check this.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::isqrt::{isqrt_big, isqrt_u64};

/// Largest `n` served by the word-tier functions. Beyond this, `2n` no
/// longer leaves headroom in a `u64` and callers must switch to the
/// `*_big` path.
pub const WORD_TIER_MAX: u64 = 1 << 62;

// ---------------------------------------------------------------------------
// word tier
// ---------------------------------------------------------------------------

fn check_word_tier(n: u64) -> Result<()> {
    if n == 0 {
        return Err(Error::domain("n must be a positive integer"));
    }
    if n > WORD_TIER_MAX {
        return Err(Error::domain(format!(
            "n = {n} exceeds the word tier limit 2^62; use the arbitrary-precision path"
        )));
    }
    Ok(())
}

pub(crate) fn z_raw(n: u64) -> u64 {
    debug_assert!((1..=WORD_TIER_MAX).contains(&n));
    (2 * n - 1) / 3
}

pub(crate) fn m_raw(n: u64) -> u64 {
    debug_assert!((1..=WORD_TIER_MAX).contains(&n));
    isqrt_u64(2 * n)
}

pub(crate) fn r_raw(n: u64) -> u32 {
    debug_assert!((1..=WORD_TIER_MAX).contains(&n));
    64 - (n - 1).leading_zeros()
}

pub(crate) fn x_raw(n: u64) -> i64 {
    let z = z_raw(n) as i64;
    let rm = (r_raw(n) as i64 + 1) * m_raw(n) as i64;
    z - rm
}

/// Largest integer `z` with `3z < 2n`.
pub fn z_of(n: u64) -> Result<u64> {
    check_word_tier(n)?;
    Ok(z_raw(n))
}

/// Largest integer `m` with `m^2 <= 2n`.
pub fn m_of(n: u64) -> Result<u64> {
    check_word_tier(n)?;
    Ok(m_raw(n))
}

/// Least non-negative integer `r` with `n <= 2^r`.
pub fn r_of(n: u64) -> Result<u32> {
    check_word_tier(n)?;
    Ok(r_raw(n))
}

/// `x(n) = z(n) - (r(n)+1)*m(n)`, exact.
pub fn x_of(n: u64) -> Result<i64> {
    check_word_tier(n)?;
    Ok(x_raw(n))
}

/// Sign class of an `x` value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "neg")]
    Negative,
    #[serde(rename = "zero")]
    Zero,
    #[serde(rename = "pos")]
    Positive,
}

impl Sign {
    pub fn of(x: i64) -> Sign {
        match x.cmp(&0) {
            std::cmp::Ordering::Less => Sign::Negative,
            std::cmp::Ordering::Equal => Sign::Zero,
            std::cmp::Ordering::Greater => Sign::Positive,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Negative => "neg",
            Sign::Zero => "zero",
            Sign::Positive => "pos",
        })
    }
}

/// Sign class of `x(n)`.
pub fn sign_of(n: u64) -> Result<Sign> {
    Ok(Sign::of(x_of(n)?))
}

/// One fully evaluated row `(n, z, m, r, x)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EvalRow {
    pub n: u64,
    pub z: u64,
    pub m: u64,
    pub r: u32,
    pub x: i64,
}

/// Evaluate all four sequences at `n`.
pub fn eval_row(n: u64) -> Result<EvalRow> {
    check_word_tier(n)?;
    Ok(EvalRow {
        n,
        z: z_raw(n),
        m: m_raw(n),
        r: r_raw(n),
        x: x_raw(n),
    })
}

// ---------------------------------------------------------------------------
// arbitrary-precision tier
// ---------------------------------------------------------------------------

fn check_big(n: &BigUint) -> Result<()> {
    if n.is_zero() {
        return Err(Error::domain("n must be a positive integer"));
    }
    Ok(())
}

/// `z(n)` for arbitrary-precision `n`.
pub fn z_big(n: &BigUint) -> Result<BigUint> {
    check_big(n)?;
    Ok(((n << 1) - 1u32) / 3u32)
}

/// `m(n)` for arbitrary-precision `n`.
pub fn m_big(n: &BigUint) -> Result<BigUint> {
    check_big(n)?;
    Ok(isqrt_big(&(n << 1)))
}

/// `r(n)` for arbitrary-precision `n`. The value itself always fits a word:
/// it is the bit length of `n - 1`.
pub fn r_big(n: &BigUint) -> Result<u64> {
    check_big(n)?;
    Ok((n - 1u32).bits())
}

/// `x(n)` for arbitrary-precision `n`.
pub fn x_big(n: &BigUint) -> Result<BigInt> {
    let z = z_big(n)?;
    let m = m_big(n)?;
    let r = r_big(n)?;
    Ok(BigInt::from(z) - BigInt::from(r + 1) * BigInt::from(m))
}

/// One fully evaluated arbitrary-precision row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BigEvalRow {
    pub n: BigUint,
    pub z: BigUint,
    pub m: BigUint,
    pub r: u64,
    pub x: BigInt,
}

/// Evaluate all four sequences at an arbitrary-precision `n`.
pub fn eval_row_big(n: &BigUint) -> Result<BigEvalRow> {
    check_big(n)?;
    let z = z_big(n)?;
    let m = m_big(n)?;
    let r = r_big(n)?;
    let x = BigInt::from(z.clone()) - BigInt::from(r + 1) * BigInt::from(m.clone());
    Ok(BigEvalRow {
        n: n.clone(),
        z,
        m,
        r,
        x,
    })
}

// ---------------------------------------------------------------------------
// closed forms at powers of two
// ---------------------------------------------------------------------------

/// Exact facts about `z` and `m` at `n = 2^s`.
///
/// `2^(s+1)` is congruent to 2 mod 3 for even `s` and to 1 mod 3 for odd
/// `s`, so `z(2^s)` has an exact closed form in both cases. For odd `s`,
/// `2^(s+1)` is an even power of two and `m(2^s)` is exactly a power of two;
/// for even `s` only the enclosing power-of-two bounds are available without
/// extracting a square root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerOfTwoFacts {
    pub s: u64,
    /// `z(2^s)`, exact: `(2^(s+1) - 2)/3` for even `s`, `(2^(s+1) - 1)/3` for odd `s`.
    pub z_val: BigUint,
    /// Inclusive lower bound for `m(2^s)`: `2^(s/2)`.
    pub m_lower: BigUint,
    /// Exclusive upper bound for `m(2^s)`.
    pub m_upper_exclusive: BigUint,
    /// Present for odd `s`, where `m(2^s) = 2^((s+1)/2)` exactly.
    pub m_exact: Option<BigUint>,
}

/// Closed forms for `z(2^s)` and the `m(2^s)` bounds, any `s >= 0`.
pub fn z_at_power(s: u64) -> PowerOfTwoFacts {
    let two_pow = |e: u64| BigUint::one() << e;
    if s.is_multiple_of(2) {
        let k = s / 2;
        PowerOfTwoFacts {
            s,
            z_val: (two_pow(s + 1) - 2u32) / 3u32,
            m_lower: two_pow(k),
            m_upper_exclusive: two_pow(k + 1),
            m_exact: None,
        }
    } else {
        let k = (s - 1) / 2;
        let m = two_pow(k + 1);
        PowerOfTwoFacts {
            s,
            z_val: (two_pow(s + 1) - 1u32) / 3u32,
            m_lower: m.clone(),
            m_upper_exclusive: &m + 1u32,
            m_exact: Some(m),
        }
    }
}
