//! Seeded random generators for intervals, canonical sets, expressions, and
//! covers. Shared by the property suites, the acceptance tests, and the
//! benchmarks; everything is deterministic given the caller's RNG.

use num_bigint::BigInt;
use rand::Rng;

use crate::expr::SetExpr;
use crate::interval::Interval;
use crate::numeric::{ExtReal, Rational};
use crate::set::IntervalSet;

/// Random rational with numerator in `[-span, span]` and denominator in
/// `[1, max_den]`.
pub fn rational<R: Rng>(rng: &mut R, span: i64, max_den: i64) -> Rational {
    Rational::new(
        BigInt::from(rng.gen_range(-span..=span)),
        BigInt::from(rng.gen_range(1..=max_den)),
    )
}

fn positive_rational<R: Rng>(rng: &mut R, span: i64, max_den: i64) -> Rational {
    Rational::new(
        BigInt::from(rng.gen_range(1..=span)),
        BigInt::from(rng.gen_range(1..=max_den)),
    )
}

/// Random bounded proper interval (occasionally a singleton).
pub fn bounded_interval<R: Rng>(rng: &mut R) -> Interval {
    let lo = rational(rng, 24, 8);
    if rng.gen_ratio(1, 12) {
        return Interval::singleton(lo);
    }
    let hi = &lo + positive_rational(rng, 12, 8);
    Interval::new(
        ExtReal::Finite(lo),
        rng.gen(),
        ExtReal::Finite(hi),
        rng.gen(),
    )
    .expect("lo < hi by construction")
}

/// Random interval of any shape: mostly bounded, sometimes unbounded,
/// empty, or a singleton.
pub fn interval<R: Rng>(rng: &mut R) -> Interval {
    match rng.gen_range(0u8..20) {
        0 => Interval::Empty,
        1 => Interval::new(ExtReal::NegInf, false, ExtReal::Finite(rational(rng, 24, 8)), rng.gen())
            .unwrap(),
        2 => Interval::new(ExtReal::Finite(rational(rng, 24, 8)), rng.gen(), ExtReal::PosInf, false)
            .unwrap(),
        _ => bounded_interval(rng),
    }
}

/// Canonical set from up to `max_parts` random intervals.
pub fn interval_set<R: Rng>(rng: &mut R, max_parts: usize) -> IntervalSet {
    let n = rng.gen_range(0..=max_parts);
    IntervalSet::normalize((0..n).map(|_| interval(rng)))
}

/// Canonical set with only bounded parts.
pub fn bounded_interval_set<R: Rng>(rng: &mut R, max_parts: usize) -> IntervalSet {
    let n = rng.gen_range(0..=max_parts);
    IntervalSet::normalize((0..n).map(|_| bounded_interval(rng)))
}

/// A pair of disjoint canonical sets. Parts of one random canonical set are
/// dealt to the two sides; sometimes a part is first cut at an interior
/// point into touching halves that land on opposite sides, so the pair
/// exercises shared boundaries as well as genuine gaps.
pub fn disjoint_canonical_pair<R: Rng>(rng: &mut R) -> (IntervalSet, IntervalSet) {
    let base = interval_set(rng, 6);
    let mut left = Vec::new();
    let mut right = Vec::new();
    for part in base.parts() {
        let cut_candidate = match (part.inf(), part.sup()) {
            (ExtReal::Finite(a), ExtReal::Finite(b)) if a < b => Some((a, b)),
            _ => None,
        };
        if let Some((a, b)) = cut_candidate {
            if rng.gen_ratio(1, 2) {
                // Split [*] into [lo, c) and [c, hi] shapes at the midpoint.
                let c = (&a + &b) / Rational::from_integer(BigInt::from(2));
                let (lo, lo_closed) = match part {
                    Interval::Proper { lo, lo_closed, .. } => (lo.clone(), *lo_closed),
                    Interval::Empty => unreachable!(),
                };
                let (hi, hi_closed) = match part {
                    Interval::Proper { hi, hi_closed, .. } => (hi.clone(), *hi_closed),
                    Interval::Empty => unreachable!(),
                };
                let first =
                    Interval::new(lo, lo_closed, ExtReal::Finite(c.clone()), false).unwrap();
                let second = Interval::new(ExtReal::Finite(c), true, hi, hi_closed).unwrap();
                if rng.gen() {
                    left.push(first);
                    right.push(second);
                } else {
                    right.push(first);
                    left.push(second);
                }
                continue;
            }
        }
        if rng.gen() {
            left.push(part.clone());
        } else {
            right.push(part.clone());
        }
    }
    (IntervalSet::normalize(left), IntervalSet::normalize(right))
}

/// Random expression tree of the given depth.
pub fn set_expr<R: Rng>(rng: &mut R, depth: usize) -> SetExpr {
    if depth == 0 || rng.gen_ratio(1, 4) {
        return SetExpr::Lit(interval(rng));
    }
    let a = Box::new(set_expr(rng, depth - 1));
    let b = Box::new(set_expr(rng, depth - 1));
    match rng.gen_range(0u8..3) {
        0 => SetExpr::Union(a, b),
        1 => SetExpr::Difference(a, b),
        _ => SetExpr::Intersection(a, b),
    }
}

/// A closed bounded interval together with a list of bounded open intervals
/// that covers it: an overlapping chain across the target plus unrelated
/// noise, shuffled.
pub fn covered_closed_interval<R: Rng>(rng: &mut R) -> (Interval, Vec<Interval>) {
    let a = rational(rng, 20, 6);
    let mut points = vec![a.clone()];
    for _ in 0..rng.gen_range(1..=5) {
        let next = points.last().unwrap() + positive_rational(rng, 8, 4);
        points.push(next);
    }
    let b = points.last().unwrap().clone();
    let target = Interval::new(
        ExtReal::Finite(a),
        true,
        ExtReal::Finite(b),
        true,
    )
    .unwrap();
    let mut cover = Vec::new();
    for w in points.windows(2) {
        let pad = positive_rational(rng, 3, 7);
        cover.push(
            Interval::new(
                ExtReal::Finite(&w[0] - &pad),
                false,
                ExtReal::Finite(&w[1] + &pad),
                false,
            )
            .unwrap(),
        );
    }
    for _ in 0..rng.gen_range(0..=3) {
        let lo = rational(rng, 40, 4);
        let hi = &lo + positive_rational(rng, 10, 4);
        cover.push(Interval::new(ExtReal::Finite(lo), false, ExtReal::Finite(hi), false).unwrap());
    }
    // Order matters only for greedy ties; shuffle to vary it.
    for i in (1..cover.len()).rev() {
        cover.swap(i, rng.gen_range(0..=i));
    }
    (target, cover)
}
