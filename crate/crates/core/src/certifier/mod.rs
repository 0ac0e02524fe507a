//! Certificate production and independent checking.
//!
//! The pieces, bottom up: monotonicity-based interval extension rules
//! ([`lemmas`]), constant-`(r, m)` block decomposition ([`blocks`]), the
//! exact tail bound with its dominance induction ([`tail`]), and the
//! assembled certificate with its checker ([`certificate`]).

pub mod blocks;
pub mod certificate;
pub mod lemmas;
pub mod tail;

pub use blocks::{block_chain, block_end, block_of, block_start, Block};
pub use certificate::{
    build_certificate, check_certificate, Certificate, CheckFailure, CheckReport, Method, Segment,
    CERT_VERSION, TAIL_BOUNDARY,
};
pub use lemmas::{
    extend_negative, extend_positive, negative_chain, positive_chain, sandwich_bounds, ChainStep,
    Direction,
};
pub use tail::{
    build_tail, dominance_check, tail_margin, DominanceParams, DominanceRecord, TailCertificate,
    TAIL_DOMINANCE, TAIL_S_MIN,
};
