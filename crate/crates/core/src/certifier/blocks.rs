//! Maximal intervals on which `r` and `m` are simultaneously constant.
//!
//! With `s = r(a)` and `t = m(a)` fixed, `x(n) = z(n) - (s+1)t` is
//! non-decreasing across the block, so a block's `x` range is read off its
//! endpoints and its sign structure is at most one negative, one zero and
//! one positive stretch, in that order.

use crate::error::{Error, Result};
use crate::eval::{m_of, r_of, x_of};

/// A maximal constant-`(r, m)` interval with its exact `x` range.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Block {
    pub start: u64,
    pub end: u64,
    pub r_val: u32,
    pub m_val: u64,
    pub x_min: i64,
    pub x_max: i64,
}

/// Largest `k` with `r(k) = r(a)` and `m(k) = m(a)`:
/// `min(floor(((m(a)+1)^2 - 1)/2), 2^r(a))`.
pub fn block_end(a: u64) -> Result<u64> {
    let s = r_of(a)?;
    let t = m_of(a)?;
    // largest q with 2q < (t+1)^2
    let q = (((t as u128 + 1) * (t as u128 + 1) - 1) / 2) as u64;
    Ok(q.min(1u64 << s))
}

/// Smallest `k` with `r(k) = r(a)` and `m(k) = m(a)`.
pub fn block_start(a: u64) -> Result<u64> {
    let s = r_of(a)?;
    let t = m_of(a)?;
    // least k with 2k >= t^2
    let m_floor = ((t as u128 * t as u128).div_ceil(2)) as u64;
    let r_floor = if s == 0 { 1 } else { (1u64 << (s - 1)) + 1 };
    Ok(m_floor.max(r_floor).max(1))
}

/// The block containing `n`, with exact `x` endpoints.
pub fn block_of(n: u64) -> Result<Block> {
    let start = block_start(n)?;
    let end = block_end(n)?;
    debug_assert!(start <= n && n <= end);
    Ok(Block {
        start,
        end,
        r_val: r_of(n)?,
        m_val: m_of(n)?,
        x_min: x_of(start)?,
        x_max: x_of(end)?,
    })
}

/// The first `count` blocks, starting from `n = 1`.
pub fn block_chain(count: usize) -> Result<Vec<Block>> {
    if count == 0 {
        return Err(Error::domain("block count must be positive"));
    }
    let mut blocks = Vec::with_capacity(count);
    let mut start = 1u64;
    for _ in 0..count {
        let block = block_of(start)?;
        start = block.end + 1;
        blocks.push(block);
    }
    Ok(blocks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eval::{m_of, r_of};

    #[test]
    fn block_end_pinned() {
        assert_eq!(block_end(436).unwrap(), 449);
        assert_eq!(block_end(481).unwrap(), 511);
        assert_eq!(block_end(513).unwrap(), 544);
        assert_eq!(block_end(1).unwrap(), 1);
        assert_eq!(block_end(512).unwrap(), 512);
    }

    #[test]
    fn block_start_pinned() {
        assert_eq!(block_start(436).unwrap(), 421);
        assert_eq!(block_start(421).unwrap(), 421);
        assert_eq!(block_start(545).unwrap(), 545);
        assert_eq!(block_start(1).unwrap(), 1);
        assert_eq!(block_start(512).unwrap(), 512);
    }

    #[test]
    fn pinned_blocks() {
        assert_eq!(
            block_of(129).unwrap(),
            Block {
                start: 129,
                end: 144,
                r_val: 8,
                m_val: 16,
                x_min: -59,
                x_max: -49
            }
        );
        assert_eq!(
            block_of(450).unwrap(),
            Block {
                start: 450,
                end: 480,
                r_val: 9,
                m_val: 30,
                x_min: -1,
                x_max: 19
            }
        );
        assert_eq!(
            block_of(1).unwrap(),
            Block {
                start: 1,
                end: 1,
                r_val: 0,
                m_val: 1,
                x_min: -1,
                x_max: -1
            }
        );
    }

    #[test]
    fn chain_tiles_from_one() {
        let blocks = block_chain(200).unwrap();
        assert_eq!(blocks[0].start, 1);
        for w in blocks.windows(2) {
            assert_eq!(w[0].end + 1, w[1].start);
        }
    }

    #[test]
    fn blocks_are_maximal_and_monotone() {
        let blocks = block_chain(200).unwrap();
        for b in &blocks {
            for n in b.start..=b.end {
                assert_eq!(r_of(n).unwrap(), b.r_val, "r constant, n = {n}");
                assert_eq!(m_of(n).unwrap(), b.m_val, "m constant, n = {n}");
            }
            // r or m strictly increases at end + 1
            let r_next = r_of(b.end + 1).unwrap();
            let m_next = m_of(b.end + 1).unwrap();
            assert!(
                r_next > b.r_val || m_next > b.m_val,
                "block [{}, {}] is not maximal",
                b.start,
                b.end
            );
            // x non-decreasing across the block
            let mut prev = x_of(b.start).unwrap();
            assert_eq!(prev, b.x_min);
            for n in b.start + 1..=b.end {
                let x = x_of(n).unwrap();
                assert!(x >= prev, "x not monotone at n = {n}");
                prev = x;
            }
            assert_eq!(prev, b.x_max);
        }
    }

    #[test]
    fn block_membership_respects_closed_forms() {
        // within the block [513, 544], x(n) = z(n) - 352 exactly
        for n in 513..=544u64 {
            let x = x_of(n).unwrap();
            let z = crate::eval::z_of(n).unwrap();
            assert_eq!(x, z as i64 - 352);
        }
    }

    #[test]
    fn block_of_agrees_across_members() {
        for a in [
            1u64,
            2,
            3,
            5,
            129,
            436,
            440,
            449,
            513,
            544,
            545,
            4096,
            1 << 20,
        ] {
            let b = block_of(a).unwrap();
            assert_eq!(block_of(b.start).unwrap(), b);
            assert_eq!(block_of(b.end).unwrap(), b);
        }
    }

    #[test]
    fn zero_count_rejected() {
        assert!(block_chain(0).is_err());
    }
}
