//! Positivity of `x` beyond the word-scale region, certified exactly.
//!
//! For `2^s < n <= 2^(s+1)` we have `r(n) = s + 1` and, by the sandwich
//! bound anchored at `a = 2^s`, `x(n) >= L(s)` where
//!
//! ```text
//! L(s) = z(2^s) - (s+2) * m(2^(s+1))
//! ```
//!
//! is computable exactly from the power-of-two closed forms and one integer
//! square root. A margin list carries `L(s)` for a finite stretch of
//! exponents; a dominance record covers every larger exponent at once.
//!
//! The dominance record proves `2^k >= a*k + b` for all `k >= k0` by a
//! finitary induction: an exact base check at `k0` plus the observation that
//! doubling preserves the bound as soon as `a*k >= a - b`, a linear
//! inequality with non-negative slope that only needs checking at `k0`.
//! With `(a, b, k0) = (6, 10, 6)` the bound gives `2^k - 6k - 6 >= 4` and
//! `2^k - 6k - 9 >= 1`, which makes `3*L(s)` positive for even and odd
//! `s >= 12` respectively.

use num_bigint::{BigInt, BigUint};
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::eval::z_at_power;
use crate::isqrt::isqrt_big;

/// Least exponent the tail machinery covers: the margin bound is only
/// positive once `s/2 >= 6`.
pub const TAIL_S_MIN: u64 = 12;

/// The fixed dominance parameters used by every certificate.
pub const TAIL_DOMINANCE: DominanceParams = DominanceParams {
    coeff_a: 6,
    coeff_b: 10,
    k0: 6,
};

/// Exact lower bound `L(s)` for `x` on `(2^s, 2^(s+1)]`.
pub fn tail_margin(s: u64) -> Result<BigInt> {
    if s < TAIL_S_MIN {
        return Err(Error::domain(format!(
            "tail margin needs s >= {TAIL_S_MIN}, got {s}"
        )));
    }
    let z = z_at_power(s).z_val;
    let m_next = isqrt_big(&(BigUint::one() << (s + 2)));
    Ok(BigInt::from(z) - BigInt::from(s + 2) * BigInt::from(m_next))
}

/// Claim `2^k >= coeff_a * k + coeff_b` for all `k >= k0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DominanceParams {
    #[serde(rename = "a")]
    pub coeff_a: u64,
    #[serde(rename = "b")]
    pub coeff_b: i64,
    pub k0: u64,
}

/// Outcome of checking a dominance claim: the base inequality at `k0` and
/// the induction-step inequality, both with their evaluated sides.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DominanceRecord {
    pub params: DominanceParams,
    /// `2^k0`
    pub base_lhs: BigUint,
    /// `coeff_a * k0 + coeff_b`
    pub base_rhs: BigInt,
    pub base_ok: bool,
    /// `coeff_a * k0`
    pub step_lhs: BigInt,
    /// `coeff_a - coeff_b`
    pub step_rhs: BigInt,
    pub step_ok: bool,
}

impl DominanceRecord {
    pub fn proven(&self) -> bool {
        self.base_ok && self.step_ok
    }

    /// Human-readable account of whichever inequality failed, if any.
    pub fn failure(&self) -> Option<String> {
        let p = &self.params;
        if !self.base_ok {
            return Some(format!(
                "base case fails: 2^{} = {} < {}*{} + {} = {}",
                p.k0, self.base_lhs, p.coeff_a, p.k0, p.coeff_b, self.base_rhs
            ));
        }
        if !self.step_ok {
            return Some(format!(
                "induction step fails: {}*{} = {} < {} - {} = {}",
                p.coeff_a, p.k0, self.step_lhs, p.coeff_a, p.coeff_b, self.step_rhs
            ));
        }
        None
    }
}

/// Verify `2^k >= coeff_a * k + coeff_b` for all `k >= k0`.
///
/// Base: the inequality at `k0`, exact. Step: doubling the bound gives
/// `2^(k+1) >= 2(a*k + b) >= a*(k+1) + b` provided `a*k >= a - b`; since
/// `coeff_a >= 1` the left side is non-decreasing in `k`, so checking it at
/// `k0` settles every larger `k`. A failed check is reported in the record,
/// not an error.
pub fn dominance_check(params: DominanceParams) -> DominanceRecord {
    let a = BigInt::from(params.coeff_a);
    let b = BigInt::from(params.coeff_b);
    let k0 = BigInt::from(params.k0);

    let base_lhs = BigUint::one() << params.k0;
    let base_rhs = &a * &k0 + &b;
    let base_ok = BigInt::from(base_lhs.clone()) >= base_rhs;

    let step_lhs = &a * &k0;
    let step_rhs = &a - &b;
    let step_ok = step_lhs >= step_rhs;

    DominanceRecord {
        params,
        base_lhs,
        base_rhs,
        base_ok,
        step_lhs,
        step_rhs,
        step_ok,
    }
}

/// Exact margins for `s_min..=s_checked_max` plus a dominance record that
/// covers all larger exponents.
///
/// On the wire, margins are `[s, "L(s)"]` pairs with the margin as a decimal
/// string, since the values outgrow double precision quickly.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TailCertificate {
    pub s_min: u64,
    pub s_checked_max: u64,
    #[serde(with = "margins_wire")]
    pub margins: Vec<(u64, BigInt)>,
    pub dominance: DominanceParams,
}

mod margins_wire {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(
        margins: &[(u64, BigInt)],
        serializer: S,
    ) -> Result<S::Ok, S::Error> {
        let strings: Vec<(u64, String)> =
            margins.iter().map(|(s, l)| (*s, l.to_string())).collect();
        strings.serialize(serializer)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        deserializer: D,
    ) -> Result<Vec<(u64, BigInt)>, D::Error> {
        let strings: Vec<(u64, String)> = Vec::deserialize(deserializer)?;
        strings
            .into_iter()
            .map(|(s, l)| {
                l.parse::<BigInt>()
                    .map(|value| (s, value))
                    .map_err(|e| serde::de::Error::custom(format!("margin L({s}): {e}")))
            })
            .collect()
    }
}

/// Build the tail certificate: every margin is computed exactly and must be
/// positive, and the fixed dominance claim must be proven.
pub fn build_tail(s_checked_max: u64) -> Result<TailCertificate> {
    if s_checked_max < TAIL_S_MIN {
        return Err(Error::domain(format!(
            "tail must check margins at least up to s = {TAIL_S_MIN}"
        )));
    }
    let mut margins = Vec::with_capacity((s_checked_max - TAIL_S_MIN + 1) as usize);
    for s in TAIL_S_MIN..=s_checked_max {
        let margin = tail_margin(s)?;
        if margin <= BigInt::from(0) {
            return Err(Error::Certification(format!(
                "margin L({s}) = {margin} is not positive"
            )));
        }
        margins.push((s, margin));
    }
    let record = dominance_check(TAIL_DOMINANCE);
    if let Some(reason) = record.failure() {
        return Err(Error::Certification(reason));
    }
    Ok(TailCertificate {
        s_min: TAIL_S_MIN,
        s_checked_max,
        margins,
        dominance: TAIL_DOMINANCE,
    })
}
