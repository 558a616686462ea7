//! Canonical finite unions of intervals with exact measure.
//!
//! An [`IntervalSet`] keeps its parts sorted, pairwise disjoint, and
//! non-touching, so structural equality coincides with set equality. The
//! boolean operations run as sweeps over endpoint "cuts": a cut is a
//! position on the line refined by a side, `Before(x) < After(x)`, which
//! turns every interval shape into a half-open range of cuts and reduces
//! open/closed flag logic to total-order comparisons.

use std::cmp::Ordering;
use std::fmt;

use crate::interval::Interval;
use crate::numeric::{measure_sum, ExtReal, MeasureValue, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Side {
    Before,
    After,
}

/// A position on the extended line, just before or just after a rational.
#[derive(Clone, Debug, PartialEq, Eq)]
enum Cut {
    Bottom,
    At(Rational, Side),
    Top,
}

impl Ord for Cut {
    fn cmp(&self, other: &Self) -> Ordering {
        use Cut::*;
        match (self, other) {
            (Bottom, Bottom) | (Top, Top) => Ordering::Equal,
            (Bottom, _) | (_, Top) => Ordering::Less,
            (_, Bottom) | (Top, _) => Ordering::Greater,
            (At(v1, s1), At(v2, s2)) => v1.cmp(v2).then(s1.cmp(s2)),
        }
    }
}

impl PartialOrd for Cut {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

type CutRange = (Cut, Cut);

/// Maps a non-empty interval to its half-open cut range `[start, end)`.
fn to_range(i: &Interval) -> CutRange {
    let Interval::Proper {
        lo,
        lo_closed,
        hi,
        hi_closed,
    } = i
    else {
        unreachable!("empty interval has no cut range");
    };
    let start = match lo {
        ExtReal::NegInf => Cut::Bottom,
        ExtReal::Finite(a) => Cut::At(
            a.clone(),
            if *lo_closed { Side::Before } else { Side::After },
        ),
        ExtReal::PosInf => unreachable!("proper interval cannot start at +inf"),
    };
    let end = match hi {
        ExtReal::PosInf => Cut::Top,
        ExtReal::Finite(b) => Cut::At(
            b.clone(),
            if *hi_closed { Side::After } else { Side::Before },
        ),
        ExtReal::NegInf => unreachable!("proper interval cannot end at -inf"),
    };
    (start, end)
}

/// Inverse of [`to_range`] for `start < end`.
fn from_range(range: CutRange) -> Interval {
    let (start, end) = range;
    let (lo, lo_closed) = match start {
        Cut::Bottom => (ExtReal::NegInf, false),
        Cut::At(v, Side::Before) => (ExtReal::Finite(v), true),
        Cut::At(v, Side::After) => (ExtReal::Finite(v), false),
        Cut::Top => unreachable!("range starting at top"),
    };
    let (hi, hi_closed) = match end {
        Cut::Top => (ExtReal::PosInf, false),
        Cut::At(v, Side::After) => (ExtReal::Finite(v), true),
        Cut::At(v, Side::Before) => (ExtReal::Finite(v), false),
        Cut::Bottom => unreachable!("range ending at bottom"),
    };
    Interval::Proper {
        lo,
        lo_closed,
        hi,
        hi_closed,
    }
}

/// Sorts ranges by start and merges every overlapping or touching pair.
fn sweep_merge(mut ranges: Vec<CutRange>) -> Vec<CutRange> {
    ranges.sort_by(|a, b| a.0.cmp(&b.0).then(a.1.cmp(&b.1)));
    let mut out: Vec<CutRange> = Vec::with_capacity(ranges.len());
    for (s, e) in ranges {
        if let Some(last) = out.last_mut() {
            if s <= last.1 {
                if e > last.1 {
                    last.1 = e;
                }
                continue;
            }
        }
        out.push((s, e));
    }
    out
}

/// Intersection of two canonical (sorted, gap-separated) range lists.
fn intersect_ranges(a: &[CutRange], b: &[CutRange]) -> Vec<CutRange> {
    let mut out = Vec::new();
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        let s = a[i].0.clone().max(b[j].0.clone());
        let e = a[i].1.clone().min(b[j].1.clone());
        if s < e {
            out.push((s, e));
        }
        if a[i].1 <= b[j].1 {
            i += 1;
        } else {
            j += 1;
        }
    }
    out
}

/// Complement of a canonical range list, as canonical ranges.
fn complement_ranges(a: &[CutRange]) -> Vec<CutRange> {
    let mut out = Vec::with_capacity(a.len() + 1);
    let mut prev = Cut::Bottom;
    for (s, e) in a {
        if prev < *s {
            out.push((prev, s.clone()));
        }
        prev = e.clone();
    }
    if prev < Cut::Top {
        out.push((prev, Cut::Top));
    }
    out
}

/// A canonical finite disjoint union of intervals: parts sorted left to
/// right, pairwise disjoint and non-touching, never empty. Two values are
/// pointwise-equal iff they are structurally equal.
///
/// ```
/// use mensura::{Interval, IntervalSet};
///
/// let s = IntervalSet::normalize([Interval::closed(0, 2), Interval::open(1, 4)]);
/// assert_eq!(s.to_string(), "[0,4)");
/// ```
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct IntervalSet {
    parts: Vec<Interval>,
}

impl IntervalSet {
    pub fn empty() -> Self {
        IntervalSet { parts: Vec::new() }
    }

    /// Canonicalizes an arbitrary finite list of intervals: drops empties,
    /// sorts, and merges overlapping or touching parts. Membership is
    /// preserved and the measure never exceeds the raw sum of lengths.
    pub fn normalize<I: IntoIterator<Item = Interval>>(raw: I) -> Self {
        let ranges: Vec<CutRange> = raw
            .into_iter()
            .filter(|i| !i.is_empty())
            .map(|i| to_range(&i))
            .collect();
        Self::from_ranges(sweep_merge(ranges))
    }

    fn from_ranges(ranges: Vec<CutRange>) -> Self {
        IntervalSet {
            parts: ranges.into_iter().map(from_range).collect(),
        }
    }

    fn ranges(&self) -> Vec<CutRange> {
        self.parts.iter().map(to_range).collect()
    }

    pub fn parts(&self) -> &[Interval] {
        &self.parts
    }

    pub fn part_count(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn is_bounded(&self) -> bool {
        self.parts.iter().all(|p| p.is_bounded())
    }

    /// Greatest lower bound; `PosInf` for the empty set.
    pub fn inf(&self) -> ExtReal {
        self.parts
            .first()
            .map_or(ExtReal::PosInf, |p| p.inf())
    }

    /// Least upper bound; `NegInf` for the empty set.
    pub fn sup(&self) -> ExtReal {
        self.parts
            .last()
            .map_or(ExtReal::NegInf, |p| p.sup())
    }

    pub fn contains(&self, x: &Rational) -> bool {
        for p in &self.parts {
            if p.contains(x) {
                return true;
            }
            if let ExtReal::Finite(lo) = p.inf() {
                if lo > *x {
                    break;
                }
            }
        }
        false
    }

    /// Pointwise union, canonical.
    pub fn union(&self, other: &IntervalSet) -> IntervalSet {
        let mut ranges = self.ranges();
        ranges.extend(other.ranges());
        Self::from_ranges(sweep_merge(ranges))
    }

    /// Pointwise intersection, canonical.
    pub fn intersection(&self, other: &IntervalSet) -> IntervalSet {
        Self::from_ranges(intersect_ranges(&self.ranges(), &other.ranges()))
    }

    /// Pointwise difference, canonical. Implemented as intersection with the
    /// complement in cut space; `Interval::subtract_many` provides the
    /// independent route the tests cross-check against.
    pub fn difference(&self, other: &IntervalSet) -> IntervalSet {
        Self::from_ranges(intersect_ranges(
            &self.ranges(),
            &complement_ranges(&other.ranges()),
        ))
    }

    /// `self ⊆ other`, decided structurally via an empty difference.
    pub fn is_subset(&self, other: &IntervalSet) -> bool {
        self.difference(other).is_empty()
    }

    /// Exact measure: the sum of part lengths. On canonical sets this equals
    /// the outer measure certified by the cover machinery in [`crate::outer`].
    pub fn measure(&self) -> MeasureValue {
        measure_sum(self.parts.iter().map(|p| p.length()))
    }
}

impl From<Interval> for IntervalSet {
    fn from(i: Interval) -> Self {
        IntervalSet::normalize([i])
    }
}

impl FromIterator<Interval> for IntervalSet {
    fn from_iter<I: IntoIterator<Item = Interval>>(iter: I) -> Self {
        IntervalSet::normalize(iter)
    }
}

impl fmt::Display for IntervalSet {
    /// Prints in the expression syntax (`empty`, or parts joined by ` + `),
    /// so the output reparses to an equal set.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "empty");
        }
        for (k, p) in self.parts.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

/// Outcome of [`check_superset_bound`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupersetReport {
    /// Whether the listed intervals cover `i` pointwise.
    pub covered: bool,
    /// Raw sum of the listed interval lengths (no merging).
    pub sum: MeasureValue,
    /// `sum >= length(i)`; guaranteed whenever `covered` holds.
    pub bound_holds: bool,
}

/// Checks the superset length bound: when a finite (not necessarily
/// disjoint) list of intervals covers `i`, the raw sum of their lengths is
/// at least `length(i)`.
pub fn check_superset_bound(i: &Interval, cover_list: &[Interval]) -> SupersetReport {
    let target = IntervalSet::from(i.clone());
    let covered = target.is_subset(&IntervalSet::normalize(cover_list.iter().cloned()));
    let sum = measure_sum(cover_list.iter().map(|c| c.length()));
    let bound_holds = sum >= i.length();
    SupersetReport {
        covered,
        sum,
        bound_holds,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::{eval_expr, parse_expr, parse_interval_literal};
    use num_bigint::BigInt;
    use proptest::prelude::*;

    fn itv(s: &str) -> Interval {
        parse_interval_literal(s).unwrap()
    }

    fn set(s: &str) -> IntervalSet {
        eval_expr(&parse_expr(s).unwrap())
    }

    fn ratio(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn normalize_merges_overlap() {
        assert_eq!(
            IntervalSet::normalize([itv("(0,2)"), itv("[1,3]")]),
            set("(0,3]")
        );
    }

    #[test]
    fn normalize_merges_touching() {
        assert_eq!(
            IntervalSet::normalize([itv("[0,1)"), itv("[1,2]")]),
            set("[0,2]")
        );
    }

    #[test]
    fn normalize_keeps_punctured_gap() {
        let s = IntervalSet::normalize([itv("(0,1)"), itv("(1,2)")]);
        assert_eq!(s.parts(), &[itv("(0,1)"), itv("(1,2)")]);
    }

    #[test]
    fn union_examples() {
        assert_eq!(set("[0,1] + [2,3]").part_count(), 2);
        assert_eq!(set("[0,1] + empty"), set("[0,1]"));
        assert_eq!(set("[0,2] + (1,3)"), set("[0,3)"));
    }

    #[test]
    fn difference_examples() {
        assert_eq!(
            set("[0,1] - (1/3,2/3)").parts(),
            &[itv("[0,1/3]"), itv("[2/3,1]")]
        );
        assert_eq!(set("[0,1] - empty"), set("[0,1]"));
        assert!(set("[0,1] - [0,1]").is_empty());
    }

    #[test]
    fn measure_examples() {
        assert_eq!(set("[0,1] + (2,4)").measure(), MeasureValue::integer(3));
        assert_eq!(IntervalSet::empty().measure(), MeasureValue::zero());
        // First middle-third removal leaves 1 - 1/3 = 2/3.
        assert_eq!(
            set("[0,1/3] + [2/3,1]").measure(),
            MeasureValue::finite(2, 3)
        );
        assert_eq!(set("(0,inf)").measure(), MeasureValue::Infinite);
    }

    #[test]
    fn superset_bound_report() {
        let r = check_superset_bound(&itv("[0,1]"), &[itv("(-1,1/2)"), itv("(1/4,2)")]);
        // Oracle: 3/2 + 7/4 = 13/4, and 13/4 >= 1.
        assert!(r.covered);
        assert_eq!(r.sum, MeasureValue::finite(13, 4));
        assert!(r.bound_holds);

        let r = check_superset_bound(&itv("[0,1]"), &[itv("(0,1)")]);
        assert!(!r.covered);

        let r = check_superset_bound(&itv("[0,0]"), &[itv("(-1,1)")]);
        assert!(r.covered);
        assert_eq!(r.sum, MeasureValue::integer(2));
        assert!(r.bound_holds);
    }

    fn arb_interval() -> impl Strategy<Value = Interval> {
        (
            -24i64..=24,
            1i64..=8,
            -24i64..=24,
            1i64..=8,
            any::<bool>(),
            any::<bool>(),
            0u8..=15,
        )
            .prop_map(|(n1, d1, n2, d2, c1, c2, kind)| {
                let a = ratio(n1, d1);
                let b = ratio(n2, d2);
                let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
                match kind {
                    0 => Interval::Empty,
                    1 => Interval::singleton(lo),
                    2 => Interval::new(ExtReal::NegInf, false, ExtReal::Finite(hi), c1).unwrap(),
                    3 => Interval::new(ExtReal::Finite(lo), c1, ExtReal::PosInf, false).unwrap(),
                    _ => Interval::new(ExtReal::Finite(lo), c1, ExtReal::Finite(hi), c2)
                        .unwrap_or(Interval::Empty),
                }
            })
    }

    fn arb_raw() -> impl Strategy<Value = Vec<Interval>> {
        proptest::collection::vec(arb_interval(), 0..8)
    }

    fn canonical_invariants(s: &IntervalSet) {
        for p in s.parts() {
            assert!(!p.is_empty());
        }
        for w in s.parts().windows(2) {
            let r = w[0].relate(&w[1]);
            assert!(r.disjoint && !r.touching, "parts {} and {}", w[0], w[1]);
            assert!(w[0].inf() <= w[1].inf());
        }
    }

    proptest! {
        #[test]
        fn normalize_is_canonical_and_idempotent(raw in arb_raw()) {
            let s = IntervalSet::normalize(raw);
            canonical_invariants(&s);
            let again = IntervalSet::normalize(s.parts().to_vec());
            prop_assert_eq!(again, s);
        }

        #[test]
        fn normalize_membership_oracle(raw in arb_raw(), pts in proptest::collection::vec((-300i64..=300, 1i64..=12), 200)) {
            let s = IntervalSet::normalize(raw.clone());
            for (n, d) in pts {
                let x = ratio(n, d);
                let expected = raw.iter().any(|i| i.contains(&x));
                prop_assert_eq!(s.contains(&x), expected, "x = {}", x);
            }
        }

        #[test]
        fn boolean_ops_membership_oracle(a in arb_raw(), b in arb_raw(), n in -300i64..=300, d in 1i64..=12) {
            let x = ratio(n, d);
            let sa = IntervalSet::normalize(a);
            let sb = IntervalSet::normalize(b);
            let (ma, mb) = (sa.contains(&x), sb.contains(&x));
            prop_assert_eq!(sa.union(&sb).contains(&x), ma || mb);
            prop_assert_eq!(sa.intersection(&sb).contains(&x), ma && mb);
            prop_assert_eq!(sa.difference(&sb).contains(&x), ma && !mb);
            canonical_invariants(&sa.union(&sb));
            canonical_invariants(&sa.intersection(&sb));
            canonical_invariants(&sa.difference(&sb));
        }

        #[test]
        fn measure_is_additive_over_parts(raw in arb_raw()) {
            let s = IntervalSet::normalize(raw);
            prop_assert_eq!(
                s.measure(),
                crate::numeric::measure_sum(s.parts().iter().map(|p| p.length()))
            );
        }

        #[test]
        fn disjoint_union_measure_adds(a in arb_raw(), b in arb_raw()) {
            let sa = IntervalSet::normalize(a);
            // Force disjointness by removing overlap from the second set.
            let sb = IntervalSet::normalize(b).difference(&sa);
            let u = sa.union(&sb);
            prop_assert_eq!(u.measure(), sa.measure() + sb.measure());
        }

        #[test]
        fn separated_union_measure_adds(a in arb_raw(), b in arb_raw()) {
            // Keep only the pieces strictly left/right of the gap point 0.
            let left = IntervalSet::normalize(a).intersection(&set("(-inf,0)"));
            let right = IntervalSet::normalize(b).intersection(&set("(0,inf)"));
            if !left.is_empty() && !right.is_empty() {
                prop_assert!(left.sup() <= ExtReal::integer(0));
                prop_assert!(ExtReal::integer(0) <= right.inf());
            }
            let u = left.union(&right);
            prop_assert_eq!(u.measure(), left.measure() + right.measure());
        }

        #[test]
        fn normalize_never_exceeds_raw_length_sum(raw in arb_raw()) {
            let total = crate::numeric::measure_sum(raw.iter().map(|i| i.length()));
            prop_assert!(IntervalSet::normalize(raw).measure() <= total);
        }

        #[test]
        fn partition_of_interval_preserves_length(n in -20i64..=20, d in 1i64..=6,
                                                  cuts in proptest::collection::vec((1i64..=40, 1i64..=6), 0..5)) {
            // Build a partition of [a, b] into adjacent pieces.
            let a = ratio(n, d);
            let mut points = vec![a.clone()];
            for (cn, cd) in cuts {
                let next = points.last().unwrap() + ratio(cn, cd);
                points.push(next);
            }
            let whole = Interval::new(
                ExtReal::Finite(points[0].clone()), true,
                ExtReal::Finite(points.last().unwrap().clone()), true,
            ).unwrap();
            // Tile [a, b] as [a,t1) ∪ [t1,t2) ∪ … ∪ [tk,b].
            let mut pieces = Vec::new();
            for (k, w) in points.windows(2).enumerate() {
                let last = k == points.len() - 2;
                pieces.push(Interval::new(
                    ExtReal::Finite(w[0].clone()), true,
                    ExtReal::Finite(w[1].clone()), last,
                ).unwrap());
            }
            if pieces.is_empty() {
                pieces.push(whole.clone());
            }
            let raw_sum = crate::numeric::measure_sum(pieces.iter().map(|p| p.length()));
            let merged = IntervalSet::normalize(pieces);
            prop_assert_eq!(merged.parts(), std::slice::from_ref(&whole));
            prop_assert_eq!(raw_sum, whole.length());
        }

        #[test]
        fn de_morgan_difference(a in arb_raw(), b in arb_raw(), c in arb_raw()) {
            let (sa, sb, sc) = (
                IntervalSet::normalize(a),
                IntervalSet::normalize(b),
                IntervalSet::normalize(c),
            );
            prop_assert_eq!(
                sa.difference(&sb.union(&sc)),
                sa.difference(&sb).difference(&sc)
            );
        }

        #[test]
        fn subset_implies_smaller_measure(a in arb_raw(), b in arb_raw()) {
            let sa = IntervalSet::normalize(a);
            let sb = IntervalSet::normalize(b);
            let inner = sa.intersection(&sb);
            prop_assert!(inner.is_subset(&sb));
            prop_assert!(inner.measure() <= sb.measure());
        }

        #[test]
        fn difference_agrees_with_iterated_subtract(i in arb_interval(), js in arb_raw()) {
            // The sweep-based set difference and the iterated single-interval
            // subtraction must produce the same canonical set.
            let via_set = IntervalSet::from(i.clone())
                .difference(&IntervalSet::normalize(js.clone()));
            let via_subtract = IntervalSet::normalize(i.subtract_many(&js));
            prop_assert_eq!(via_set, via_subtract);
        }

        #[test]
        fn superset_bound_holds_when_covered(i in arb_interval(), js in arb_raw()) {
            let r = check_superset_bound(&i, &js);
            if r.covered {
                prop_assert!(r.bound_holds);
            }
        }
    }
}
