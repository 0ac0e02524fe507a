//! Interval extension rules derived from the monotonicity of `z`, `m`, `r`.
//!
//! Since all three sequences are non-decreasing, `x` over any interval
//! `[a, b]` is sandwiched between `z(a) - (r(b)+1)m(b)` and
//! `z(b) - (r(a)+1)m(a)`. Two one-sided consequences drive the certifier:
//!
//! * if `x(a) < 0`, then `x` stays negative up to `b = floor(3(r(a)+1)m(a)/2)`,
//!   because `3z(b) < 2b <= 3(r(a)+1)m(a)`;
//! * if `x(b) > 0`, then `x` stays positive down to
//!   `a = ceil((3(r(b)+1)m(b) + 4)/2)`, because `3z(a) + 3 >= 2a >= 3(r(b)+1)m(b) + 4`.
//!
//! Chaining these rules tiles long sign-constant stretches with a handful of
//! anchor evaluations.

use crate::error::{Error, Result};
use crate::eval::{m_of, r_of, x_of, z_of};

/// Which way an anchor's sign was extended.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    /// Negative anchor pushed upward: covers `[anchor, derived_bound]`.
    NegativeUp,
    /// Positive anchor pushed downward: covers `[derived_bound, anchor]`.
    PositiveDown,
}

/// One application of an extension rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ChainStep {
    pub anchor: u64,
    pub derived_bound: u64,
    pub direction: Direction,
    pub anchor_x: i64,
}

impl ChainStep {
    /// The closed interval this step certifies.
    pub fn interval(&self) -> (u64, u64) {
        match self.direction {
            Direction::NegativeUp => (self.anchor, self.derived_bound),
            Direction::PositiveDown => (self.derived_bound, self.anchor),
        }
    }
}

/// Bounds `(lower, upper)` with `lower <= x(n) <= upper` for all `n` in `[a, b]`.
pub fn sandwich_bounds(a: u64, b: u64) -> Result<(i64, i64)> {
    if a > b {
        return Err(Error::domain(format!(
            "sandwich interval reversed: {a} > {b}"
        )));
    }
    let lower = z_of(a)? as i64 - (r_of(b)? as i64 + 1) * m_of(b)? as i64;
    let upper = z_of(b)? as i64 - (r_of(a)? as i64 + 1) * m_of(a)? as i64;
    Ok((lower, upper))
}

/// Largest `b` such that `x(n) < 0` is guaranteed for all `a <= n <= b`,
/// namely `floor(3(r(a)+1)m(a)/2)`. Requires `x(a) < 0`.
pub fn extend_negative(a: u64) -> Result<u64> {
    let xa = x_of(a)?;
    if xa >= 0 {
        return Err(Error::precondition(format!(
            "extend_negative needs x(a) < 0, but x({a}) = {xa}"
        )));
    }
    Ok(3 * (r_of(a)? as u64 + 1) * m_of(a)? / 2)
}

/// Least `a` such that `x(n) > 0` is guaranteed for all `a <= n <= b`,
/// namely `ceil((3(r(b)+1)m(b) + 4)/2)`. Requires `x(b) > 0`.
pub fn extend_positive(b: u64) -> Result<u64> {
    let xb = x_of(b)?;
    if xb <= 0 {
        return Err(Error::precondition(format!(
            "extend_positive needs x(b) > 0, but x({b}) = {xb}"
        )));
    }
    Ok((3 * (r_of(b)? as u64 + 1) * m_of(b)? + 4).div_ceil(2))
}

/// Repeatedly push a negative anchor upward, hopping to `b + 1` after each
/// extension, until the next candidate anchor is no longer negative.
pub fn negative_chain(start: u64) -> Result<Vec<ChainStep>> {
    let mut steps = Vec::new();
    let mut anchor = start;
    loop {
        let anchor_x = x_of(anchor)?;
        let bound = extend_negative(anchor)?;
        debug_assert!(bound >= anchor);
        steps.push(ChainStep {
            anchor,
            derived_bound: bound,
            direction: Direction::NegativeUp,
            anchor_x,
        });
        let next = bound + 1;
        if x_of(next)? >= 0 {
            return Ok(steps);
        }
        anchor = next;
    }
}

/// Repeatedly push a positive anchor downward, hopping to `a - 1` after each
/// extension, until the next candidate is non-positive (or progress stalls).
pub fn positive_chain(top: u64) -> Result<Vec<ChainStep>> {
    let mut steps = Vec::new();
    let mut anchor = top;
    loop {
        let anchor_x = x_of(anchor)?;
        let bound = extend_positive(anchor)?;
        debug_assert!(bound <= anchor);
        steps.push(ChainStep {
            anchor,
            derived_bound: bound,
            direction: Direction::PositiveDown,
            anchor_x,
        });
        if bound <= 1 {
            return Ok(steps);
        }
        let next = bound - 1;
        if next >= anchor || x_of(next)? <= 0 {
            return Ok(steps);
        }
        anchor = next;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::eval::x_of;

    #[test]
    fn sandwich_degenerate_interval_is_exact() {
        for n in [1u64, 13, 436, 4096] {
            assert_eq!(
                sandwich_bounds(n, n).unwrap(),
                (x_of(n).unwrap(), x_of(n).unwrap())
            );
        }
    }

    #[test]
    fn sandwich_reversed_is_domain_error() {
        assert!(matches!(sandwich_bounds(10, 9), Err(Error::Domain(_))));
    }

    #[test]
    fn sandwich_brackets_interior_values() {
        let (lower, upper) = sandwich_bounds(4097, 8192).unwrap();
        assert_eq!(lower, 2731 - 14 * 128); // z(4097) - (r(8192)+1) * m(8192)
        assert!(lower > 0);
        for n in [4097u64, 5000, 6000, 8192] {
            let x = x_of(n).unwrap();
            assert!(lower <= x && x <= upper, "n = {n}");
        }
    }

    #[test]
    fn extend_negative_pinned() {
        assert_eq!(extend_negative(13).unwrap(), 37);
        assert_eq!(extend_negative(38).unwrap(), 84);
        assert_eq!(extend_negative(1).unwrap(), 1);
    }

    #[test]
    fn extend_negative_rejects_nonnegative_anchor() {
        assert!(matches!(extend_negative(436), Err(Error::Precondition(_))));
        assert!(matches!(extend_negative(437), Err(Error::Precondition(_))));
    }

    #[test]
    fn extend_positive_pinned() {
        assert_eq!(extend_positive(4095).unwrap(), 1757);
        assert_eq!(extend_positive(1756).unwrap(), 1064);
        assert_eq!(extend_positive(562).unwrap(), 547);
    }

    #[test]
    fn extend_positive_rejects_nonpositive_anchor() {
        assert!(matches!(extend_positive(436), Err(Error::Precondition(_))));
        assert!(matches!(extend_positive(129), Err(Error::Precondition(_))));
    }

    #[test]
    fn extensions_are_sound_exhaustively() {
        // every negative n below the last negative index
        for a in 1..=528u64 {
            if x_of(a).unwrap() >= 0 {
                continue;
            }
            let b = extend_negative(a).unwrap();
            assert!(b >= a);
            for n in a..=b {
                assert!(x_of(n).unwrap() < 0, "a = {a}, n = {n}");
            }
        }
        // positive anchors across the first few thousand values
        for b in 437..=6000u64 {
            if x_of(b).unwrap() <= 0 {
                continue;
            }
            let a = extend_positive(b).unwrap();
            assert!(a <= b);
            for n in a..=b {
                assert!(x_of(n).unwrap() > 0, "b = {b}, n = {n}");
            }
        }
    }

    #[test]
    fn negative_chain_visits_pinned_anchors() {
        let steps = negative_chain(13).unwrap();
        let anchors: Vec<u64> = steps.iter().map(|s| s.anchor).collect();
        assert_eq!(anchors, vec![13, 38, 85, 157, 230, 284, 346, 391, 406, 421]);
        assert_eq!(steps.last().unwrap().derived_bound, 435);
        for step in &steps {
            assert_eq!(step.direction, Direction::NegativeUp);
            assert!(step.anchor_x < 0);
            let (lo, hi) = step.interval();
            for n in lo..=hi {
                assert!(x_of(n).unwrap() < 0, "n = {n}");
            }
        }
        // steps tile [13, 435]
        for w in steps.windows(2) {
            assert_eq!(w[0].derived_bound + 1, w[1].anchor);
        }
    }

    #[test]
    fn negative_chain_from_one_terminates_and_is_sound() {
        let steps = negative_chain(1).unwrap();
        assert_eq!(steps.first().unwrap().anchor, 1);
        assert_eq!(steps.last().unwrap().derived_bound, 435);
        for step in &steps {
            let (lo, hi) = step.interval();
            for n in lo..=hi {
                assert!(x_of(n).unwrap() < 0, "n = {n}");
            }
        }
    }

    #[test]
    fn negative_chain_rejects_nonnegative_start() {
        assert!(negative_chain(436).is_err());
    }

    #[test]
    fn positive_chain_pinned_bounds() {
        let steps = positive_chain(4095).unwrap();
        let bounds: Vec<u64> = steps.iter().map(|s| s.derived_bound).collect();
        assert!(bounds.contains(&1757));
        assert!(bounds.contains(&1064));
        assert_eq!(*bounds.last().unwrap(), 547);
        for step in &steps {
            assert_eq!(step.direction, Direction::PositiveDown);
            assert!(step.anchor_x > 0);
            let (lo, hi) = step.interval();
            for n in lo..=hi {
                assert!(x_of(n).unwrap() > 0, "n = {n}");
            }
        }
        // steps tile [547, 4095] downward
        for w in steps.windows(2) {
            assert_eq!(w[0].derived_bound - 1, w[1].anchor);
        }
        assert_eq!(steps.first().unwrap().anchor, 4095);
    }

    #[test]
    fn positive_chain_overlapping_anchor_variant_reaches_547() {
        // Re-running each extension on the alternative anchor set (which
        // reuses a derived endpoint as the next anchor once) lands on the
        // same terminal bound; the certified intervals jointly cover
        // [547, 4095].
        let anchors = [4095u64, 1756, 1063, 829, 661, 596, 562];
        let expected_bounds = [1757u64, 1064, 830, 662, 596, 563, 547];
        let mut covered_down_to = 4096;
        for (&b, &expect_a) in anchors.iter().zip(&expected_bounds) {
            let a = extend_positive(b).unwrap();
            assert_eq!(a, expect_a, "anchor {b}");
            assert!(b + 1 >= covered_down_to, "coverage must stay contiguous");
            covered_down_to = covered_down_to.min(a);
        }
        assert_eq!(covered_down_to, 547);
    }
}
