//! Single-interval algebra: length, intersection, subtraction, and the
//! order/adjacency predicates every other module builds on.
//!
//! An [`Interval`] is either `Empty` or a `Proper` pair of extended-rational
//! endpoints with open/closed flags. Degenerate singletons `[a,a]` are legal
//! proper intervals of length zero; `Empty` is its own variant and is never
//! encoded as a crossed pair. Closed flags are only allowed on finite
//! endpoints.

use std::cmp::Ordering;
use std::fmt;

use thiserror::Error;

use crate::numeric::{ExtReal, MeasureValue, Rational};

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum IntervalError {
    #[error("interval endpoints reversed: lo > hi")]
    ReversedEndpoints,
    #[error("an infinite endpoint cannot be closed")]
    ClosedInfiniteEnd,
}

/// A connected subset of the line: empty, or a pair of endpoints with
/// open/closed flags.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Interval {
    Empty,
    Proper {
        lo: ExtReal,
        lo_closed: bool,
        hi: ExtReal,
        hi_closed: bool,
    },
}

impl Interval {
    pub fn empty() -> Self {
        Interval::Empty
    }

    /// Builds an interval from endpoints and flags.
    ///
    /// Rejects `lo > hi` and closed infinite ends. Accepts `lo == hi`: with
    /// both ends closed that is the singleton `[a,a]`; with any end open the
    /// point set is empty and `Empty` is returned (so `(a,a)` is legal and
    /// denotes the empty set).
    pub fn new(
        lo: ExtReal,
        lo_closed: bool,
        hi: ExtReal,
        hi_closed: bool,
    ) -> Result<Self, IntervalError> {
        if (lo_closed && !lo.is_finite()) || (hi_closed && !hi.is_finite()) {
            return Err(IntervalError::ClosedInfiniteEnd);
        }
        match lo.cmp(&hi) {
            Ordering::Greater => Err(IntervalError::ReversedEndpoints),
            Ordering::Equal => {
                if lo_closed && hi_closed {
                    Ok(Interval::Proper {
                        lo,
                        lo_closed,
                        hi,
                        hi_closed,
                    })
                } else {
                    Ok(Interval::Empty)
                }
            }
            Ordering::Less => Ok(Interval::Proper {
                lo,
                lo_closed,
                hi,
                hi_closed,
            }),
        }
    }

    /// Like [`Interval::new`] but maps crossed endpoints to `Empty` instead
    /// of erroring. Used where endpoint arithmetic may legitimately cross
    /// (intersection of disjoint operands).
    fn make(lo: ExtReal, lo_closed: bool, hi: ExtReal, hi_closed: bool) -> Self {
        match Interval::new(lo, lo_closed, hi, hi_closed) {
            Ok(i) => i,
            Err(IntervalError::ReversedEndpoints) => Interval::Empty,
            Err(e) => unreachable!("internal interval construction: {e}"),
        }
    }

    pub fn singleton(q: Rational) -> Self {
        Interval::Proper {
            lo: ExtReal::Finite(q.clone()),
            lo_closed: true,
            hi: ExtReal::Finite(q),
            hi_closed: true,
        }
    }

    /// `(a, b)` from integers; convenience for tests and constructions.
    pub fn open(a: i64, b: i64) -> Self {
        Interval::new(ExtReal::integer(a), false, ExtReal::integer(b), false).unwrap()
    }

    /// `[a, b]` from integers.
    pub fn closed(a: i64, b: i64) -> Self {
        Interval::new(ExtReal::integer(a), true, ExtReal::integer(b), true).unwrap()
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, Interval::Empty)
    }

    pub fn is_singleton(&self) -> bool {
        matches!(self, Interval::Proper { lo, hi, .. } if lo == hi)
    }

    pub fn is_bounded(&self) -> bool {
        match self {
            Interval::Empty => true,
            Interval::Proper { lo, hi, .. } => lo.is_finite() && hi.is_finite(),
        }
    }

    pub fn is_closed_bounded(&self) -> bool {
        matches!(
            self,
            Interval::Proper {
                lo_closed: true,
                hi_closed: true,
                ..
            }
        )
    }

    pub fn is_open_bounded(&self) -> bool {
        matches!(
            self,
            Interval::Proper { lo, hi, lo_closed: false, hi_closed: false }
                if lo.is_finite() && hi.is_finite()
        )
    }

    /// Greatest lower bound; `PosInf` for the empty set.
    pub fn inf(&self) -> ExtReal {
        match self {
            Interval::Empty => ExtReal::PosInf,
            Interval::Proper { lo, .. } => lo.clone(),
        }
    }

    /// Least upper bound; `NegInf` for the empty set.
    pub fn sup(&self) -> ExtReal {
        match self {
            Interval::Empty => ExtReal::NegInf,
            Interval::Proper { hi, .. } => hi.clone(),
        }
    }

    /// Decidable membership for finite points.
    pub fn contains(&self, x: &Rational) -> bool {
        match self {
            Interval::Empty => false,
            Interval::Proper {
                lo,
                lo_closed,
                hi,
                hi_closed,
            } => {
                let above = match lo {
                    ExtReal::NegInf => true,
                    ExtReal::PosInf => false,
                    ExtReal::Finite(a) => {
                        if *lo_closed {
                            x >= a
                        } else {
                            x > a
                        }
                    }
                };
                let below = match hi {
                    ExtReal::PosInf => true,
                    ExtReal::NegInf => false,
                    ExtReal::Finite(b) => {
                        if *hi_closed {
                            x <= b
                        } else {
                            x < b
                        }
                    }
                };
                above && below
            }
        }
    }

    /// `sup - inf` in the extended reals; zero for the empty set, infinite
    /// exactly when the interval is unbounded.
    pub fn length(&self) -> MeasureValue {
        match self {
            Interval::Empty => MeasureValue::zero(),
            Interval::Proper { lo, hi, .. } => match (lo, hi) {
                (ExtReal::Finite(a), ExtReal::Finite(b)) => MeasureValue::from_ratio(b - a),
                _ => MeasureValue::Infinite,
            },
        }
    }

    /// Set intersection; always a single interval, possibly empty.
    pub fn intersect(&self, other: &Interval) -> Interval {
        let (Interval::Proper { .. }, Interval::Proper { .. }) = (self, other) else {
            return Interval::Empty;
        };
        // Later start wins; at equal endpoints the open flag wins.
        let (lo, lo_closed) = match cmp_lo(self, other) {
            Ordering::Less => lo_bound(other),
            Ordering::Greater => lo_bound(self),
            Ordering::Equal => {
                let (v, c1) = lo_bound(self);
                let (_, c2) = lo_bound(other);
                (v, c1 && c2)
            }
        };
        let (hi, hi_closed) = match cmp_hi(self, other) {
            Ordering::Less => hi_bound(self),
            Ordering::Greater => hi_bound(other),
            Ordering::Equal => {
                let (v, c1) = hi_bound(self);
                let (_, c2) = hi_bound(other);
                (v, c1 && c2)
            }
        };
        Interval::make(lo, lo_closed, hi, hi_closed)
    }

    /// `self \ other` as zero, one, or two disjoint subintervals of `self`,
    /// left piece first.
    pub fn subtract(&self, other: &Interval) -> Vec<Interval> {
        if self.is_empty() {
            return vec![];
        }
        if other.is_empty() {
            return vec![self.clone()];
        }
        let mut out = Vec::with_capacity(2);
        let left = self.intersect(&lower_complement(other));
        if !left.is_empty() {
            out.push(left);
        }
        let right = self.intersect(&upper_complement(other));
        if !right.is_empty() {
            out.push(right);
        }
        out
    }

    /// `self \ (j_1 ∪ … ∪ j_n)` by iterated single-interval subtraction.
    /// The pieces come out pairwise disjoint, in left-to-right order.
    pub fn subtract_many(&self, js: &[Interval]) -> Vec<Interval> {
        let mut pieces = vec![self.clone()];
        if self.is_empty() {
            pieces.clear();
        }
        for j in js {
            pieces = pieces.iter().flat_map(|p| p.subtract(j)).collect();
            if pieces.is_empty() {
                break;
            }
        }
        pieces
    }

    /// Order/adjacency relation between two intervals.
    pub fn relate(&self, other: &Interval) -> Relation {
        let disjoint = self.intersect(other).is_empty();
        let i_subset_j = self.subtract(other).is_empty();
        let separated = self.sup() < other.inf() || other.sup() < self.inf();
        let touching = disjoint
            && !self.is_empty()
            && !other.is_empty()
            && (adjacent(self, other) || adjacent(other, self));
        Relation {
            disjoint,
            i_subset_j,
            separated,
            touching,
        }
    }
}

/// Relation flags from [`Interval::relate`].
///
/// `separated` means a gap of positive width exists (`sup i < inf j` or the
/// mirror image); `touching` means the two are disjoint yet their union is a
/// single interval, i.e. they share exactly one boundary value that belongs
/// to exactly one side.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Relation {
    pub disjoint: bool,
    pub i_subset_j: bool,
    pub separated: bool,
    pub touching: bool,
}

/// True when `left.hi == right.lo` at a finite value carried by exactly one
/// of the two ends.
fn adjacent(left: &Interval, right: &Interval) -> bool {
    match (left, right) {
        (
            Interval::Proper {
                hi: ExtReal::Finite(b),
                hi_closed,
                ..
            },
            Interval::Proper {
                lo: ExtReal::Finite(a),
                lo_closed,
                ..
            },
        ) => a == b && (*hi_closed ^ *lo_closed),
        _ => false,
    }
}

fn lo_bound(i: &Interval) -> (ExtReal, bool) {
    match i {
        Interval::Proper { lo, lo_closed, .. } => (lo.clone(), *lo_closed),
        Interval::Empty => unreachable!("lo_bound on empty interval"),
    }
}

fn hi_bound(i: &Interval) -> (ExtReal, bool) {
    match i {
        Interval::Proper { hi, hi_closed, .. } => (hi.clone(), *hi_closed),
        Interval::Empty => unreachable!("hi_bound on empty interval"),
    }
}

/// Order of lower bounds as start positions: at equal values a closed start
/// begins earlier than an open one.
fn cmp_lo(a: &Interval, b: &Interval) -> Ordering {
    let (va, ca) = lo_bound(a);
    let (vb, cb) = lo_bound(b);
    va.cmp(&vb).then(cb.cmp(&ca))
}

/// Order of upper bounds as end positions: at equal values an open end stops
/// earlier than a closed one.
fn cmp_hi(a: &Interval, b: &Interval) -> Ordering {
    let (va, ca) = hi_bound(a);
    let (vb, cb) = hi_bound(b);
    va.cmp(&vb).then(ca.cmp(&cb))
}

/// Everything strictly left of `j`: `(-inf, j.lo)` when `j` is closed at
/// `lo`, `(-inf, j.lo]` when open.
fn lower_complement(j: &Interval) -> Interval {
    match j {
        Interval::Proper {
            lo: ExtReal::Finite(a),
            lo_closed,
            ..
        } => Interval::make(
            ExtReal::NegInf,
            false,
            ExtReal::Finite(a.clone()),
            !lo_closed,
        ),
        _ => Interval::Empty,
    }
}

/// Everything strictly right of `j`.
fn upper_complement(j: &Interval) -> Interval {
    match j {
        Interval::Proper {
            hi: ExtReal::Finite(b),
            hi_closed,
            ..
        } => Interval::make(
            ExtReal::Finite(b.clone()),
            !hi_closed,
            ExtReal::PosInf,
            false,
        ),
        _ => Interval::Empty,
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Interval::Empty => write!(f, "empty"),
            Interval::Proper {
                lo,
                lo_closed,
                hi,
                hi_closed,
            } => write!(
                f,
                "{}{},{}{}",
                if *lo_closed { '[' } else { '(' },
                lo,
                hi,
                if *hi_closed { ']' } else { ')' },
            ),
        }
    }
}
