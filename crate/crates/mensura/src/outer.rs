//! Constructive open-cover machinery for outer measure on interval sets:
//! geometric epsilon-inflation covers, cover verification, a greedy finite
//! subcover for closed bounded targets, and cover splitting at a gap point.
//!
//! Together these certify the two-sided sandwich
//! `measure(S) <= total(epsilon_cover(S, eps)) <= measure(S) + eps`,
//! which pins the infimum definition of outer measure on canonical sets
//! without ever searching a cover space.

use num_bigint::BigInt;
use num_traits::Signed;
use thiserror::Error;

use crate::interval::Interval;
use crate::numeric::{measure_sum, ExtReal, MeasureValue, Rational};
use crate::set::IntervalSet;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OuterError {
    #[error("epsilon cover requires a bounded target")]
    UnboundedTarget,
    #[error("cover interval at index {index} is not a bounded open interval")]
    InvalidCoverInterval { index: usize },
    #[error("cover leaves the frontier point {frontier} exposed")]
    NotCovered { frontier: Rational },
    #[error("finite subcover target must be a closed bounded interval")]
    TargetNotClosedBounded,
}

/// A finite list of bounded open intervals asserted to cover a target set.
/// The list order is preserved; it matters for greedy tie-breaking.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cover {
    intervals: Vec<Interval>,
    target: IntervalSet,
}

impl Cover {
    /// Validates that every listed interval is proper, bounded, and open on
    /// both ends.
    pub fn new(intervals: Vec<Interval>, target: IntervalSet) -> Result<Cover, OuterError> {
        for (index, iv) in intervals.iter().enumerate() {
            if !iv.is_open_bounded() {
                return Err(OuterError::InvalidCoverInterval { index });
            }
        }
        Ok(Cover { intervals, target })
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn target(&self) -> &IntervalSet {
        &self.target
    }
}

/// Finite open bounds of a cover interval.
fn open_bounds(iv: &Interval) -> (Rational, Rational) {
    match (iv.inf(), iv.sup()) {
        (ExtReal::Finite(u), ExtReal::Finite(v)) => (u, v),
        _ => unreachable!("cover intervals are bounded"),
    }
}

/// Inflates the `k`-th part of a bounded set by `eps / 2^(k+1)` per side
/// (1-based `k`), yielding an open cover whose total length is at most
/// `measure(a) + eps`.
pub fn epsilon_cover(a: &IntervalSet, eps: &Rational) -> Result<Cover, OuterError> {
    assert!(eps.is_positive(), "inflation requires eps > 0");
    if !a.is_bounded() {
        return Err(OuterError::UnboundedTarget);
    }
    let mut intervals = Vec::with_capacity(a.part_count());
    let mut scale = Rational::new(BigInt::from(1), BigInt::from(4));
    let half = Rational::new(BigInt::from(1), BigInt::from(2));
    for part in a.parts() {
        let delta = eps * &scale;
        let (lo, hi) = match (part.inf(), part.sup()) {
            (ExtReal::Finite(lo), ExtReal::Finite(hi)) => (lo, hi),
            _ => unreachable!("bounded set has finite part endpoints"),
        };
        intervals.push(
            Interval::new(
                ExtReal::Finite(&lo - &delta),
                false,
                ExtReal::Finite(&hi + &delta),
                false,
            )
            .expect("inflated interval is well formed"),
        );
        scale *= &half;
    }
    Cover::new(intervals, a.clone())
}

/// Outcome of [`verify_cover`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverReport {
    /// Whether the listed intervals cover the target pointwise.
    pub covers: bool,
    /// Raw sum of the listed interval lengths.
    pub total: MeasureValue,
    /// `total - measure(target)`, present exactly when the cover covers
    /// (then the difference is guaranteed nonnegative and finite).
    pub excess: Option<MeasureValue>,
}

/// Checks a cover as an upper-bound witness: does it cover, what does it
/// cost, and by how much does it overshoot the target's measure.
pub fn verify_cover(c: &Cover) -> CoverReport {
    let covers = c
        .target
        .is_subset(&IntervalSet::normalize(c.intervals.iter().cloned()));
    let total = measure_sum(c.intervals.iter().map(|iv| iv.length()));
    let excess = if covers {
        let e = total.checked_sub(&c.target.measure());
        debug_assert!(e.is_some(), "a covering list is never shorter than its target");
        e
    } else {
        None
    };
    CoverReport {
        covers,
        total,
        excess,
    }
}

/// Greedy left-to-right finite subcover of a closed bounded interval.
///
/// Starting at the left endpoint, repeatedly picks the cover interval that
/// contains the current frontier and extends furthest right (ties broken by
/// list order), until the frontier passes the right endpoint. The chosen
/// sublist covers the target, and its total length is at least the target's
/// length.
pub fn finite_subcover(target: &Interval, c: &Cover) -> Result<Vec<Interval>, OuterError> {
    if target.is_empty() {
        return Ok(Vec::new());
    }
    if !target.is_closed_bounded() {
        return Err(OuterError::TargetNotClosedBounded);
    }
    let (_, b) = open_bounds_closed(target);
    let mut frontier = open_bounds_closed(target).0;
    let mut chosen: Vec<Interval> = Vec::new();
    loop {
        let mut best: Option<(&Interval, Rational)> = None;
        for iv in &c.intervals {
            let (u, v) = open_bounds(iv);
            if u < frontier && frontier < v {
                match &best {
                    Some((_, best_v)) if v <= *best_v => {}
                    _ => best = Some((iv, v)),
                }
            }
        }
        match best {
            None => return Err(OuterError::NotCovered { frontier }),
            Some((iv, v)) => {
                chosen.push(iv.clone());
                if v > b {
                    return Ok(chosen);
                }
                frontier = v;
            }
        }
    }
}

fn open_bounds_closed(iv: &Interval) -> (Rational, Rational) {
    match (iv.inf(), iv.sup()) {
        (ExtReal::Finite(a), ExtReal::Finite(b)) => (a, b),
        _ => unreachable!("closed bounded interval has finite endpoints"),
    }
}

/// Outcome of [`split_cover_at`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitCover {
    /// Pieces strictly left of the split point, in input order.
    pub left: Vec<Interval>,
    /// Pieces strictly right of the split point, in input order.
    pub right: Vec<Interval>,
    /// How many cover intervals straddled the point and were cut in two.
    pub straddlers_split: usize,
}

/// Splits every cover interval at a point: intervals entirely on one side
/// pass through; a straddler `(u, v)` with `u < a < v` contributes `(u, a)`
/// left and `(a, v)` right, conserving length exactly.
pub fn split_cover_at(c: &Cover, at: &Rational) -> SplitCover {
    let mut left = Vec::new();
    let mut right = Vec::new();
    let mut straddlers_split = 0;
    for iv in &c.intervals {
        let (u, v) = open_bounds(iv);
        if v <= *at {
            left.push(iv.clone());
        } else if u >= *at {
            right.push(iv.clone());
        } else {
            left.push(open_interval(u, at.clone()));
            right.push(open_interval(at.clone(), v));
            straddlers_split += 1;
        }
    }
    SplitCover {
        left,
        right,
        straddlers_split,
    }
}

fn open_interval(a: Rational, b: Rational) -> Interval {
    Interval::new(ExtReal::Finite(a), false, ExtReal::Finite(b), false)
        .expect("split pieces keep u < v")
}
