//! Exact middle-thirds construction: the removed open intervals at each
//! depth, and the remaining closed pieces with their measures.
//!
//! Stage `n` removes the open middle third of every remaining piece, so
//! `remaining(n)` has `2^n` closed parts of length `3^-n` each and exact
//! measure `(2/3)^n`, while the removals accumulate to `1 - (2/3)^n`.
//! The remaining set is computed by repeated set difference and can be
//! cross-checked against a direct ternary-digit construction.

use num_bigint::BigInt;
use thiserror::Error;

use crate::interval::Interval;
use crate::numeric::{ExtReal, Rational};
use crate::set::IntervalSet;

/// Default depth cap: 2^16 parts with denominators around 4.3e7 stays
/// desk-scale.
pub const DEFAULT_DEPTH_CAP: u32 = 16;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CantorError {
    #[error("depth {n} exceeds the configured cap {cap}")]
    DepthCapExceeded { n: u32, cap: u32 },
    #[error("depth must be at least 1")]
    ZeroDepth,
}

/// One construction stage: what has been removed so far and what remains.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CantorStage {
    pub n: u32,
    /// Union of the first `n` removal batches: `2^n - 1` open parts.
    pub removed: IntervalSet,
    /// `[0,1]` minus `removed`: `2^n` closed parts of length `3^-n`.
    pub remaining: IntervalSet,
}

fn pow(base: u64, exp: u32) -> BigInt {
    BigInt::from(base).pow(exp)
}

/// The `n`-th removal batch: `2^(n-1)` open middle thirds, each of length
/// `3^-n`, listed left to right.
///
/// The left ends of the surviving depth-`(n-1)` pieces are the rationals
/// whose base-3 digits are all 0 or 2; enumerating those digit strings in
/// binary order walks the pieces left to right.
pub fn d_n(n: u32) -> IntervalSet {
    assert!(n >= 1, "removal batches start at depth 1");
    let denom = pow(3, n);
    let mut parts = Vec::with_capacity(1 << (n - 1));
    for j in 0u64..(1 << (n - 1)) {
        // Left end of the surviving piece, scaled by 3^n.
        let mut left = BigInt::from(0);
        for i in 0..(n - 1) {
            let bit = (j >> (n - 2 - i)) & 1;
            if bit == 1 {
                left += 2 * pow(3, n - 1 - i);
            }
        }
        let lo = Rational::new(&left + 1, denom.clone());
        let hi = Rational::new(&left + 2, denom.clone());
        parts.push(Interval::new(ExtReal::Finite(lo), false, ExtReal::Finite(hi), false).unwrap());
    }
    IntervalSet::normalize(parts)
}

/// Stage `n` under the default depth cap.
///
/// ```
/// let s = mensura::stage(3).unwrap();
/// assert_eq!(s.remaining.measure().to_string(), "8/27");
/// assert_eq!(s.remaining.part_count(), 8);
/// ```
pub fn stage(n: u32) -> Result<CantorStage, CantorError> {
    stage_with_cap(n, DEFAULT_DEPTH_CAP)
}

/// Stage `n`, computed by repeatedly subtracting each removal batch from
/// `[0,1]`.
pub fn stage_with_cap(n: u32, cap: u32) -> Result<CantorStage, CantorError> {
    if n == 0 {
        return Err(CantorError::ZeroDepth);
    }
    if n > cap {
        return Err(CantorError::DepthCapExceeded { n, cap });
    }
    let mut removed = IntervalSet::empty();
    let mut remaining = IntervalSet::from(Interval::closed(0, 1));
    for k in 1..=n {
        let batch = d_n(k);
        removed = removed.union(&batch);
        remaining = remaining.difference(&batch);
    }
    Ok(CantorStage {
        n,
        removed,
        remaining,
    })
}

/// Direct construction of stage `n`'s remaining set from ternary digits:
/// the `2^n` closed pieces `[L, L + 3^-n]` where `L` ranges over sums of
/// digits 0/2 at the first `n` ternary places. Independent of the repeated
/// difference route.
pub fn remaining_direct(n: u32) -> IntervalSet {
    assert!(n >= 1);
    let denom = pow(3, n);
    let mut parts = Vec::with_capacity(1 << n);
    for j in 0u64..(1 << n) {
        let mut left = BigInt::from(0);
        for i in 0..n {
            let bit = (j >> (n - 1 - i)) & 1;
            if bit == 1 {
                left += 2 * pow(3, n - 1 - i);
            }
        }
        let lo = Rational::new(left.clone(), denom.clone());
        let hi = Rational::new(&left + 1, denom.clone());
        parts.push(Interval::new(ExtReal::Finite(lo), true, ExtReal::Finite(hi), true).unwrap());
    }
    IntervalSet::normalize(parts)
}
