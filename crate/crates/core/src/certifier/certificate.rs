//! Self-contained sign-classification certificates and their checker.
//!
//! A certificate tiles `[1, boundary - 1]` with sign-classified segments,
//! each carrying the method and anchor needed to re-derive its claim, and
//! attaches a tail certificate covering every `n >= boundary`. The checker
//! re-derives everything from the closed forms alone and additionally
//! cross-checks every sub-boundary claim against direct evaluation, so a
//! certificate never has to be trusted on the producer's word.
//!
//! The serialized form is a single JSON document; the only integers that can
//! outgrow double precision (the tail margins) travel as decimal strings.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::certifier::blocks::{block_end, block_of, block_start};
use crate::certifier::lemmas::{negative_chain, positive_chain};
use crate::certifier::tail::{
    build_tail, dominance_check, tail_margin, TailCertificate, TAIL_DOMINANCE, TAIL_S_MIN,
};
use crate::error::{Error, Result};
use crate::eval::{m_of, r_of, x_of, x_raw, Sign};

/// Serialization format version.
pub const CERT_VERSION: &str = "1";

/// First index covered by the tail certificate: `2^12 + 1`.
pub const TAIL_BOUNDARY: u64 = (1 << TAIL_S_MIN) + 1;

/// How a segment's sign claim is justified.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Method {
    /// Direct evaluation of every index in the segment.
    #[serde(rename = "brute")]
    Brute,
    /// Negative anchor at `lo` extended upward; `hi` must not exceed
    /// `floor(3(r(lo)+1)m(lo)/2)`.
    #[serde(rename = "lemma2-neg")]
    Lemma2NegUp,
    /// Positive anchor at `hi` extended downward; `lo` must not undercut
    /// `ceil((3(r(hi)+1)m(hi)+4)/2)`.
    #[serde(rename = "lemma2-pos")]
    Lemma2PosDown,
    /// Monotone stretch inside one constant-`(r, m)` block; the anchor is
    /// the block start and endpoint evaluations settle the whole segment.
    #[serde(rename = "lemma3-block")]
    Lemma3Block,
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Method::Brute => "brute",
            Method::Lemma2NegUp => "lemma2-neg",
            Method::Lemma2PosDown => "lemma2-pos",
            Method::Lemma3Block => "lemma3-block",
        })
    }
}

/// One sign-classified stretch with its justification.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Segment {
    pub lo: u64,
    pub hi: u64,
    pub sign: Sign,
    pub method: Method,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub anchor: Option<u64>,
}

/// A complete, independently checkable classification of the sign of `x(n)`
/// for every positive integer `n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub version: String,
    pub boundary: u64,
    pub segments: Vec<Segment>,
    pub tail: TailCertificate,
}

impl Certificate {
    pub fn to_json(&self) -> String {
        let mut doc = serde_json::to_string_pretty(self).expect("certificate serializes");
        doc.push('\n');
        doc
    }

    pub fn from_json(text: &str) -> Result<Certificate> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }
}

/// First index in `[lo, hi]` (x non-decreasing there) for which `pred`
/// fails, or `hi + 1` when it never does.
fn partition_point(lo: u64, hi: u64, pred: impl Fn(u64) -> bool) -> u64 {
    let mut lo = lo;
    let mut hi_exclusive = hi + 1;
    while lo < hi_exclusive {
        let mid = lo + (hi_exclusive - lo) / 2;
        if pred(mid) {
            lo = mid + 1;
        } else {
            hi_exclusive = mid;
        }
    }
    lo
}

/// Split `[lo, hi]` (inside one block, so `x` is non-decreasing) into at
/// most negative, zero and positive segments anchored at `block_anchor`.
fn split_block_piece(lo: u64, hi: u64, block_anchor: u64, out: &mut Vec<Segment>) {
    let first_nonneg = partition_point(lo, hi, |n| x_raw(n) < 0);
    let first_pos = partition_point(first_nonneg, hi, |n| x_raw(n) <= 0);
    let anchor = Some(block_anchor);
    if first_nonneg > lo {
        out.push(Segment {
            lo,
            hi: first_nonneg - 1,
            sign: Sign::Negative,
            method: Method::Lemma3Block,
            anchor,
        });
    }
    if first_pos > first_nonneg {
        out.push(Segment {
            lo: first_nonneg,
            hi: first_pos - 1,
            sign: Sign::Zero,
            method: Method::Lemma3Block,
            anchor,
        });
    }
    if first_pos <= hi {
        out.push(Segment {
            lo: first_pos,
            hi,
            sign: Sign::Positive,
            method: Method::Lemma3Block,
            anchor,
        });
    }
}

/// Assemble a certificate covering every `n >= 1`: chained extensions for
/// the long sign-constant stretches, block splitting for the mixed region
/// in between, single-point brute segments where nothing cheaper applies,
/// and a tail certificate with exact margins up to `tail_s_max`.
pub fn build_certificate(tail_s_max: u64) -> Result<Certificate> {
    let tail = build_tail(tail_s_max)?;
    let mut segments: Vec<Segment> = Vec::new();

    // [1, 12] by direct evaluation
    for n in 1..=12u64 {
        if x_of(n)? >= 0 {
            return Err(Error::Certification(format!(
                "expected x({n}) < 0 in the leading brute segment"
            )));
        }
    }
    segments.push(Segment {
        lo: 1,
        hi: 12,
        sign: Sign::Negative,
        method: Method::Brute,
        anchor: None,
    });

    // negative stretch [13, 435]
    let neg_steps = negative_chain(13)?;
    for step in &neg_steps {
        segments.push(Segment {
            lo: step.anchor,
            hi: step.derived_bound,
            sign: Sign::Negative,
            method: Method::Lemma2NegUp,
            anchor: Some(step.anchor),
        });
    }
    let neg_end = neg_steps.last().expect("chain is non-empty").derived_bound;

    // positive stretch [547, 4095], derived before the mixed region so the
    // block splitting knows where to stop
    let pos_steps = positive_chain((1 << TAIL_S_MIN) - 1)?;
    let pos_start = pos_steps.last().expect("chain is non-empty").derived_bound;

    // mixed region, one block piece at a time
    let mut n = neg_end + 1;
    while n < pos_start {
        let block = block_of(n)?;
        let piece_hi = block.end.min(pos_start - 1);
        split_block_piece(n, piece_hi, block.start, &mut segments);
        n = piece_hi + 1;
    }

    for step in pos_steps.iter().rev() {
        segments.push(Segment {
            lo: step.derived_bound,
            hi: step.anchor,
            sign: Sign::Positive,
            method: Method::Lemma2PosDown,
            anchor: Some(step.anchor),
        });
    }

    // the power of two itself sits between chain top and tail
    let power = 1u64 << TAIL_S_MIN;
    if x_of(power)? <= 0 {
        return Err(Error::Certification(format!(
            "expected x({power}) > 0 at the tail boundary"
        )));
    }
    segments.push(Segment {
        lo: power,
        hi: power,
        sign: Sign::Positive,
        method: Method::Brute,
        anchor: None,
    });

    let cert = Certificate {
        version: CERT_VERSION.to_string(),
        boundary: TAIL_BOUNDARY,
        segments,
        tail,
    };

    // structural self-check; a failure here is a construction bug
    let mut expected = 1u64;
    for seg in &cert.segments {
        if seg.lo != expected || seg.hi < seg.lo {
            return Err(Error::Certification(format!(
                "segments do not tile: expected lo = {expected}, found [{}, {}]",
                seg.lo, seg.hi
            )));
        }
        expected = seg.hi + 1;
    }
    if expected != cert.boundary {
        return Err(Error::Certification(format!(
            "segments stop at {expected}, boundary is {}",
            cert.boundary
        )));
    }
    Ok(cert)
}

/// A failed re-derivation, naming the offending segment and rule.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CheckFailure {
    #[error("unsupported certificate version {0:?}")]
    Version(String),
    #[error("boundary must be {expected}, certificate claims {found}")]
    Boundary { expected: u64, found: u64 },
    #[error("coverage broken at n = {expected_lo}: {detail}")]
    Coverage { expected_lo: u64, detail: String },
    #[error("segment [{lo}, {hi}] ({method}, {sign}) fails rule `{rule}`: {detail}")]
    Segment {
        lo: u64,
        hi: u64,
        sign: Sign,
        method: Method,
        rule: &'static str,
        detail: String,
    },
    #[error("cross-check: x({n}) has sign {actual}, certificate claims {claimed}")]
    SignMismatch { n: u64, claimed: Sign, actual: Sign },
    #[error("tail certificate invalid: {0}")]
    Tail(String),
}

/// Counters from a successful check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CheckReport {
    pub segments_verified: usize,
    pub values_cross_checked: u64,
    pub margins_verified: usize,
}

impl std::fmt::Display for CheckReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{} segments re-derived, {} values cross-checked, {} tail margins re-verified",
            self.segments_verified, self.values_cross_checked, self.margins_verified
        )
    }
}

fn segment_failure(seg: &Segment, rule: &'static str, detail: String) -> CheckFailure {
    CheckFailure::Segment {
        lo: seg.lo,
        hi: seg.hi,
        sign: seg.sign,
        method: seg.method,
        rule,
        detail,
    }
}

/// Re-derive one segment's claim from its method and anchor.
fn verify_segment(seg: &Segment) -> std::result::Result<(), CheckFailure> {
    match seg.method {
        Method::Brute => {
            for n in seg.lo..=seg.hi {
                let actual = Sign::of(x_raw(n));
                if actual != seg.sign {
                    return Err(segment_failure(
                        seg,
                        "brute",
                        format!("x({n}) has sign {actual}"),
                    ));
                }
            }
            Ok(())
        }
        Method::Lemma2NegUp => {
            let a = seg
                .anchor
                .ok_or_else(|| segment_failure(seg, "anchor-present", "missing anchor".into()))?;
            if seg.sign != Sign::Negative {
                return Err(segment_failure(seg, "neg-sign", "sign must be neg".into()));
            }
            if a != seg.lo {
                return Err(segment_failure(
                    seg,
                    "anchor-at-lo",
                    format!("anchor {a} must equal lo"),
                ));
            }
            let xa = x_of(a).map_err(|e| segment_failure(seg, "anchor-domain", e.to_string()))?;
            if xa >= 0 {
                return Err(segment_failure(
                    seg,
                    "anchor-negative",
                    format!("x({a}) = {xa} is not negative"),
                ));
            }
            let bound =
                3 * (r_of(a).expect("in range") as u64 + 1) * m_of(a).expect("in range") / 2;
            if seg.hi > bound {
                return Err(segment_failure(
                    seg,
                    "within-derived-bound",
                    format!("hi exceeds derived bound {bound}"),
                ));
            }
            Ok(())
        }
        Method::Lemma2PosDown => {
            let b = seg
                .anchor
                .ok_or_else(|| segment_failure(seg, "anchor-present", "missing anchor".into()))?;
            if seg.sign != Sign::Positive {
                return Err(segment_failure(seg, "pos-sign", "sign must be pos".into()));
            }
            if b != seg.hi {
                return Err(segment_failure(
                    seg,
                    "anchor-at-hi",
                    format!("anchor {b} must equal hi"),
                ));
            }
            let xb = x_of(b).map_err(|e| segment_failure(seg, "anchor-domain", e.to_string()))?;
            if xb <= 0 {
                return Err(segment_failure(
                    seg,
                    "anchor-positive",
                    format!("x({b}) = {xb} is not positive"),
                ));
            }
            let bound = (3 * (r_of(b).expect("in range") as u64 + 1) * m_of(b).expect("in range")
                + 4)
            .div_ceil(2);
            if seg.lo < bound {
                return Err(segment_failure(
                    seg,
                    "within-derived-bound",
                    format!("lo undercuts derived bound {bound}"),
                ));
            }
            Ok(())
        }
        Method::Lemma3Block => {
            let anchor = seg
                .anchor
                .ok_or_else(|| segment_failure(seg, "anchor-present", "missing anchor".into()))?;
            let start = block_start(anchor)
                .map_err(|e| segment_failure(seg, "anchor-domain", e.to_string()))?;
            if start != anchor {
                return Err(segment_failure(
                    seg,
                    "anchor-is-block-start",
                    format!("block containing {anchor} starts at {start}"),
                ));
            }
            let end = block_end(anchor).expect("anchor in range");
            if seg.lo < start || seg.hi > end {
                return Err(segment_failure(
                    seg,
                    "within-block",
                    format!("segment leaves block [{start}, {end}]"),
                ));
            }
            // x is non-decreasing on the block, so endpoints decide
            let x_lo = x_of(seg.lo).expect("in range");
            let x_hi = x_of(seg.hi).expect("in range");
            let ok = match seg.sign {
                Sign::Negative => x_hi < 0,
                Sign::Zero => x_lo == 0 && x_hi == 0,
                Sign::Positive => x_lo > 0,
            };
            if !ok {
                return Err(segment_failure(
                    seg,
                    "monotone-endpoints",
                    format!(
                        "x({}) = {x_lo}, x({}) = {x_hi} do not justify sign",
                        seg.lo, seg.hi
                    ),
                ));
            }
            Ok(())
        }
    }
}

fn verify_tail(tail: &TailCertificate) -> std::result::Result<usize, CheckFailure> {
    if tail.s_min != TAIL_S_MIN {
        return Err(CheckFailure::Tail(format!(
            "s_min must be {TAIL_S_MIN}, found {}",
            tail.s_min
        )));
    }
    if tail.s_checked_max < tail.s_min {
        return Err(CheckFailure::Tail(format!(
            "s_checked_max {} below s_min {}",
            tail.s_checked_max, tail.s_min
        )));
    }
    let expected_len = (tail.s_checked_max - tail.s_min + 1) as usize;
    if tail.margins.len() != expected_len {
        return Err(CheckFailure::Tail(format!(
            "margin list has {} entries, expected {expected_len}",
            tail.margins.len()
        )));
    }
    let first_bad = tail
        .margins
        .par_iter()
        .enumerate()
        .filter_map(|(i, (s, claimed))| {
            if *s != tail.s_min + i as u64 {
                return Some((
                    i,
                    format!("margin list out of order at position {i}: s = {s}"),
                ));
            }
            let recomputed = match tail_margin(*s) {
                Ok(v) => v,
                Err(e) => return Some((i, e.to_string())),
            };
            if recomputed != *claimed {
                return Some((
                    i,
                    format!("L({s}) recomputes to {recomputed}, claimed {claimed}"),
                ));
            }
            if recomputed <= num_bigint::BigInt::from(0) {
                return Some((i, format!("L({s}) = {recomputed} is not positive")));
            }
            None
        })
        .min_by_key(|(i, _)| *i);
    if let Some((_, detail)) = first_bad {
        return Err(CheckFailure::Tail(detail));
    }
    // the dominance parameters are pinned: these exact constants are what
    // makes both parity cases of the margin bound positive for s >= 12
    if tail.dominance != TAIL_DOMINANCE {
        return Err(CheckFailure::Tail(format!(
            "dominance parameters must be (a = {}, b = {}, k0 = {}), found (a = {}, b = {}, k0 = {})",
            TAIL_DOMINANCE.coeff_a,
            TAIL_DOMINANCE.coeff_b,
            TAIL_DOMINANCE.k0,
            tail.dominance.coeff_a,
            tail.dominance.coeff_b,
            tail.dominance.k0
        )));
    }
    let record = dominance_check(tail.dominance);
    if let Some(reason) = record.failure() {
        return Err(CheckFailure::Tail(reason));
    }
    Ok(tail.margins.len())
}

/// Re-derive every claim in the certificate without trusting its producer.
///
/// Structure first (version, boundary, exact tiling), then each segment's
/// rule, then an exhaustive sign cross-check of `[1, boundary - 1]` against
/// direct evaluation, then the tail margins and dominance record. The first
/// discrepancy (smallest segment / index) is reported.
pub fn check_certificate(cert: &Certificate) -> std::result::Result<CheckReport, CheckFailure> {
    if cert.version != CERT_VERSION {
        return Err(CheckFailure::Version(cert.version.clone()));
    }
    if cert.boundary != TAIL_BOUNDARY {
        return Err(CheckFailure::Boundary {
            expected: TAIL_BOUNDARY,
            found: cert.boundary,
        });
    }

    let mut expected = 1u64;
    for seg in &cert.segments {
        if seg.hi < seg.lo {
            return Err(CheckFailure::Coverage {
                expected_lo: expected,
                detail: format!("segment [{}, {}] is reversed", seg.lo, seg.hi),
            });
        }
        if seg.lo != expected {
            return Err(CheckFailure::Coverage {
                expected_lo: expected,
                detail: format!("next segment starts at {}", seg.lo),
            });
        }
        expected = seg.hi + 1;
    }
    if expected != cert.boundary {
        return Err(CheckFailure::Coverage {
            expected_lo: expected,
            detail: format!("segments stop before the boundary {}", cert.boundary),
        });
    }

    // per-segment re-derivation, order-independent, smallest segment reported
    if let Some(failure) = cert
        .segments
        .par_iter()
        .filter_map(|seg| verify_segment(seg).err().map(|f| (seg.lo, f)))
        .min_by_key(|(lo, _)| *lo)
    {
        return Err(failure.1);
    }

    // exhaustive cross-check against direct evaluation
    let signs: Vec<(u64, u64, Sign)> = cert.segments.iter().map(|s| (s.lo, s.hi, s.sign)).collect();
    if let Some((n, claimed, actual)) = (1..cert.boundary)
        .into_par_iter()
        .filter_map(|n| {
            let claimed = signs
                .iter()
                .find(|(lo, hi, _)| *lo <= n && n <= *hi)
                .map(|(_, _, sign)| *sign)
                .expect("tiling was checked");
            let actual = Sign::of(x_raw(n));
            (actual != claimed).then_some((n, claimed, actual))
        })
        .min_by_key(|(n, _, _)| *n)
    {
        return Err(CheckFailure::SignMismatch { n, claimed, actual });
    }

    let margins_verified = verify_tail(&cert.tail)?;

    Ok(CheckReport {
        segments_verified: cert.segments.len(),
        values_cross_checked: cert.boundary - 1,
        margins_verified,
    })
}
