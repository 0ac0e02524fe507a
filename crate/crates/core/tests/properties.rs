//! Property-based invariants: definitional maximality, tier agreement,
//! scanner tiling/determinism, extension-rule and block soundness.

use num_bigint::{BigInt, BigUint};
use proptest::collection::vec;
use proptest::prelude::*;

use xsign::certifier::{
    block_end, block_of, build_certificate, check_certificate, extend_positive, sandwich_bounds,
    Certificate,
};
use xsign::{
    eval_row, eval_row_big, find_exceeding, isqrt_big, isqrt_u64, m_of, merge_runs, r_of,
    scan_signs, second_minimum, x_of, Sign, WORD_TIER_MAX,
};

proptest! {
    #[test]
    fn isqrt_big_is_exact(bytes in vec(any::<u8>(), 0..80)) {
        let v = BigUint::from_bytes_be(&bytes);
        let m = isqrt_big(&v);
        prop_assert!(&m * &m <= v);
        let m1 = &m + 1u32;
        prop_assert!(&m1 * &m1 > v);
    }

    #[test]
    fn isqrt_word_matches_std(v in any::<u64>()) {
        prop_assert_eq!(isqrt_u64(v), v.isqrt());
    }

    #[test]
    fn eval_satisfies_maximality(n in 1u64..=WORD_TIER_MAX) {
        let row = eval_row(n).unwrap();
        prop_assert!(3 * (row.z as u128) < 2 * n as u128);
        prop_assert!(3 * (row.z as u128 + 1) >= 2 * n as u128);
        prop_assert!((row.m as u128).pow(2) <= 2 * n as u128);
        prop_assert!((row.m as u128 + 1).pow(2) > 2 * n as u128);
        prop_assert!(n <= 1u64 << row.r);
        if row.r > 0 {
            prop_assert!(n > 1u64 << (row.r - 1));
        }
        prop_assert_eq!(row.x, row.z as i64 - (row.r as i64 + 1) * row.m as i64);
    }

    #[test]
    fn tiers_agree(n in 1u64..=WORD_TIER_MAX) {
        let word = eval_row(n).unwrap();
        let big = eval_row_big(&BigUint::from(n)).unwrap();
        prop_assert_eq!(BigUint::from(word.z), big.z);
        prop_assert_eq!(BigUint::from(word.m), big.m);
        prop_assert_eq!(word.r as u64, big.r);
        prop_assert_eq!(BigInt::from(word.x), big.x);
    }

    #[test]
    fn runs_tile_and_match_samples(lo in 1u64..1_000_000, span in 0u64..2_000) {
        let hi = lo + span;
        let runs = scan_signs(lo, hi).unwrap();
        prop_assert_eq!(runs.first().unwrap().lo, lo);
        prop_assert_eq!(runs.last().unwrap().hi, hi);
        for w in runs.windows(2) {
            prop_assert_eq!(w[0].hi + 1, w[1].lo);
            prop_assert_ne!(w[0].sign, w[1].sign);
        }
        for run in &runs {
            prop_assert_eq!(Sign::of(x_of(run.lo).unwrap()), run.sign);
            prop_assert_eq!(Sign::of(x_of(run.hi).unwrap()), run.sign);
        }
    }

    #[test]
    fn scan_is_partition_independent(lo in 1u64..100_000, span in 1u64..2_000, cut_offset in 0u64..2_000) {
        let hi = lo + span;
        let cut = lo + cut_offset.min(span - 1);
        let whole = scan_signs(lo, hi).unwrap();
        let left = scan_signs(lo, cut).unwrap();
        let right = scan_signs(cut + 1, hi).unwrap();
        prop_assert_eq!(merge_runs(left, right), whole);
    }

    #[test]
    fn sandwich_brackets(a in 1u64..(1 << 40), span_b in 0u64..(1 << 20), pick in any::<u64>()) {
        let b = a + span_b;
        let n = a + pick % (b - a + 1);
        let (lower, upper) = sandwich_bounds(a, b).unwrap();
        let x = x_of(n).unwrap();
        prop_assert!(lower <= x && x <= upper);
    }

    #[test]
    fn positive_extension_is_sound(b in 547u64..(1 << 40), picks in vec(any::<u64>(), 8)) {
        prop_assume!(x_of(b).unwrap() > 0);
        let a = extend_positive(b).unwrap();
        prop_assert!(a <= b);
        prop_assert!(x_of(a).unwrap() > 0);
        for pick in picks {
            let n = a + pick % (b - a + 1);
            prop_assert!(x_of(n).unwrap() > 0, "x({}) not positive", n);
        }
    }

    #[test]
    fn blocks_have_constant_r_m_and_monotone_x(seed in 1u64..(1 << 40), picks in vec(any::<u64>(), 8)) {
        let block = block_of(seed).unwrap();
        prop_assert!(block.start <= seed && seed <= block.end);
        prop_assert_eq!(block_end(block.start).unwrap(), block.end);
        prop_assert_eq!(r_of(block.end).unwrap(), block.r_val);
        prop_assert_eq!(m_of(block.end).unwrap(), block.m_val);
        // maximal on both sides
        let r_next = r_of(block.end + 1).unwrap();
        let m_next = m_of(block.end + 1).unwrap();
        prop_assert!(r_next > block.r_val || m_next > block.m_val);
        if block.start > 1 {
            let r_prev = r_of(block.start - 1).unwrap();
            let m_prev = m_of(block.start - 1).unwrap();
            prop_assert!(r_prev < block.r_val || m_prev < block.m_val);
        }
        // sampled constancy and local monotonicity of x
        for pick in picks {
            let n = block.start + pick % (block.end - block.start + 1);
            prop_assert_eq!(r_of(n).unwrap(), block.r_val);
            prop_assert_eq!(m_of(n).unwrap(), block.m_val);
            if n < block.end {
                prop_assert!(x_of(n).unwrap() <= x_of(n + 1).unwrap());
            }
            let x = x_of(n).unwrap();
            prop_assert!(block.x_min <= x && x <= block.x_max);
        }
    }

    #[test]
    fn exceed_witness_always_verifies(bytes in vec(any::<u8>(), 0..32)) {
        let bound = BigUint::from_bytes_be(&bytes);
        let witness = find_exceeding(&bound);
        prop_assert!(witness.x > BigInt::from(bound));
        prop_assert_eq!(witness.n, BigUint::from(1u32) << (2 * witness.k + 2));
    }

    #[test]
    fn second_minimum_matches_naive(hi in 2u64..5_000, exclude_pick in any::<u64>()) {
        let exclude = 1 + exclude_pick % hi;
        let got = second_minimum(hi, exclude).unwrap();
        let naive = (1..=hi)
            .filter(|&n| n != exclude)
            .map(|n| (x_of(n).unwrap(), n))
            .min()
            .map(|(x, n)| (n, x))
            .unwrap();
        prop_assert_eq!(got, naive);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn certificate_serde_round_trip(tail_s_max in 12u64..40) {
        let cert = build_certificate(tail_s_max).unwrap();
        let doc = cert.to_json();
        let parsed = Certificate::from_json(&doc).unwrap();
        prop_assert_eq!(&parsed, &cert);
        prop_assert!(check_certificate(&parsed).is_ok());
    }
}
