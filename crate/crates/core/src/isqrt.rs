//! Exact integer square roots at machine-word and arbitrary precision.
//!
//! Both widths use the same scheme: start from a power of two at least as
//! large as the root (derived from the bit length), run the integer Newton
//! iteration downward, and finish with a correction step so that the result
//! `m` always satisfies `m^2 <= v < (m+1)^2`. No floating point is involved
//! at any width.

use num_bigint::BigUint;
use num_traits::{One, Zero};

/// `floor(sqrt(v))` for a machine word.
pub fn isqrt_u64(v: u64) -> u64 {
    if v < 2 {
        return v;
    }
    let bits = 64 - v.leading_zeros() as u64;
    // 2^ceil(bits/2) >= sqrt(v), so the iteration approaches from above.
    let mut x = 1u64 << bits.div_ceil(2);
    loop {
        let next = (x + v / x) / 2;
        if next >= x {
            break;
        }
        x = next;
    }
    // x is floor(sqrt(v)) already; the correction is the documented
    // invariant restated as code and guards the start-value edge cases.
    while (x as u128) * (x as u128) > v as u128 {
        x -= 1;
    }
    debug_assert!((x as u128 + 1) * (x as u128 + 1) > v as u128);
    x
}

/// `floor(sqrt(v))` for an arbitrary-precision integer.
pub fn isqrt_big(v: &BigUint) -> BigUint {
    if v.is_zero() {
        return BigUint::zero();
    }
    let bits = v.bits();
    let mut x: BigUint = BigUint::one() << bits.div_ceil(2);
    loop {
        let next: BigUint = (&x + v / &x) >> 1;
        if next >= x {
            break;
        }
        x = next;
    }
    while &x * &x > *v {
        x -= 1u32;
    }
    debug_assert!({
        let next = &x + 1u32;
        &next * &next > *v
    });
    x
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn word_exhaustive_small() {
        for v in 0..2_000_000u64 {
            let m = isqrt_u64(v);
            assert!(m * m <= v, "isqrt({v}) = {m}");
            assert!((m + 1) * (m + 1) > v, "isqrt({v}) = {m}");
        }
    }

    #[test]
    fn word_matches_std() {
        for v in [
            0,
            1,
            2,
            3,
            4,
            15,
            16,
            17,
            24,
            25,
            1 << 53,
            u64::MAX - 1,
            u64::MAX,
        ] {
            assert_eq!(isqrt_u64(v), v.isqrt(), "v = {v}");
        }
        // dense sweep around perfect squares near 2^32
        for r in 4_294_967_000u64..4_294_967_295 {
            for v in [r * r - 1, r * r, r * r + 1] {
                assert_eq!(isqrt_u64(v), v.isqrt(), "v = {v}");
            }
        }
    }

    #[test]
    fn word_extremes() {
        assert_eq!(isqrt_u64(u64::MAX), (1u64 << 32) - 1);
        assert_eq!(isqrt_u64(1 << 62), 1 << 31);
        assert_eq!(isqrt_u64((1 << 62) - 1), (1 << 31) - 1);
    }

    #[test]
    fn big_agrees_with_word() {
        for v in (0..5_000u64).chain([1 << 40, (1 << 62) + 12345, u64::MAX]) {
            let big = isqrt_big(&BigUint::from(v));
            assert_eq!(big, BigUint::from(isqrt_u64(v)), "v = {v}");
        }
    }

    #[test]
    fn big_perfect_squares_round_trip() {
        // (2^k + 3)^2 style values well beyond word width
        for k in [64u64, 100, 200, 511] {
            let root = (BigUint::one() << k) + 3u32;
            let sq = &root * &root;
            assert_eq!(isqrt_big(&sq), root);
            assert_eq!(isqrt_big(&(&sq - 1u32)), &root - 1u32);
            assert_eq!(isqrt_big(&(&sq + 1u32)), root);
        }
    }
}
