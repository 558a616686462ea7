//! Exact extended-rational arithmetic for endpoints, lengths, and measures.
//!
//! [`ExtReal`] is the endpoint domain (`-inf`, exact rationals, `inf`);
//! [`MeasureValue`] is the length/measure codomain (nonnegative rational or
//! infinite). Both are immutable values; no floating point appears here.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use thiserror::Error;

/// Exact rational scalar used throughout the crate.
pub type Rational = num_rational::BigRational;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum NumericError {
    /// `inf + (-inf)` has no value in the extended reals.
    #[error("indeterminate sum: inf + -inf is undefined")]
    IndeterminateSum,
}

/// Extended rational: `-inf`, an exact rational, or `inf`.
///
/// Finite payloads are kept in lowest terms with positive denominator by
/// `num_rational`. The derived order is the usual one:
/// `NegInf < Finite(_) < PosInf`, with rational order in between.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExtReal {
    NegInf,
    Finite(Rational),
    PosInf,
}

impl ExtReal {
    /// Exact rational `n / d`. Panics if `d == 0`.
    pub fn finite(n: i64, d: i64) -> Self {
        ExtReal::Finite(Rational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn integer(n: i64) -> Self {
        ExtReal::Finite(Rational::from_integer(BigInt::from(n)))
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, ExtReal::Finite(_))
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            ExtReal::Finite(q) => Some(q),
            _ => None,
        }
    }
}

impl From<Rational> for ExtReal {
    fn from(q: Rational) -> Self {
        ExtReal::Finite(q)
    }
}

impl From<i64> for ExtReal {
    fn from(n: i64) -> Self {
        ExtReal::integer(n)
    }
}

impl fmt::Display for ExtReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtReal::NegInf => write!(f, "-inf"),
            ExtReal::PosInf => write!(f, "inf"),
            ExtReal::Finite(q) => write_ratio(f, q),
        }
    }
}

fn write_ratio(f: &mut fmt::Formatter<'_>, q: &Rational) -> fmt::Result {
    if q.denom() == &BigInt::from(1) {
        write!(f, "{}", q.numer())
    } else {
        write!(f, "{}/{}", q.numer(), q.denom())
    }
}

impl FromStr for ExtReal {
    type Err = String;

    /// Accepts `n`, `-n`, `n/d`, `inf`, `-inf`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        match s {
            "inf" | "+inf" => return Ok(ExtReal::PosInf),
            "-inf" => return Ok(ExtReal::NegInf),
            _ => {}
        }
        let (numer, denom) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), Some(d.trim())),
            None => (s, None),
        };
        let n: BigInt = numer
            .parse()
            .map_err(|_| format!("invalid rational: {s:?}"))?;
        let d: BigInt = match denom {
            Some(d) => d.parse().map_err(|_| format!("invalid rational: {s:?}"))?,
            None => BigInt::from(1),
        };
        if d.is_zero() {
            return Err(format!("zero denominator in {s:?}"));
        }
        Ok(ExtReal::Finite(Rational::new(n, d)))
    }
}

/// Exact sum in the extended reals. Infinity absorbs any finite addend;
/// the two opposite infinities together are an error.
pub fn ext_add(a: &ExtReal, b: &ExtReal) -> Result<ExtReal, NumericError> {
    use ExtReal::*;
    match (a, b) {
        (PosInf, NegInf) | (NegInf, PosInf) => Err(NumericError::IndeterminateSum),
        (PosInf, _) | (_, PosInf) => Ok(PosInf),
        (NegInf, _) | (_, NegInf) => Ok(NegInf),
        (Finite(x), Finite(y)) => Ok(Finite(x + y)),
    }
}

/// Length or measure: a nonnegative rational, or infinite.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MeasureValue {
    Finite(Rational),
    Infinite,
}

impl MeasureValue {
    pub fn zero() -> Self {
        MeasureValue::Finite(Rational::zero())
    }

    /// Wraps a nonnegative rational. Panics if `q < 0`; measures are never
    /// negative anywhere in this crate.
    pub fn from_ratio(q: Rational) -> Self {
        assert!(!q.is_negative(), "measure must be nonnegative, got {q}");
        MeasureValue::Finite(q)
    }

    pub fn finite(n: i64, d: i64) -> Self {
        Self::from_ratio(Rational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn integer(n: i64) -> Self {
        Self::from_ratio(Rational::from_integer(BigInt::from(n)))
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, MeasureValue::Infinite)
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, MeasureValue::Finite(q) if q.is_zero())
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            MeasureValue::Finite(q) => Some(q),
            MeasureValue::Infinite => None,
        }
    }

    /// `self - other`, defined when both are finite and the difference is
    /// nonnegative.
    pub fn checked_sub(&self, other: &MeasureValue) -> Option<MeasureValue> {
        match (self, other) {
            (MeasureValue::Finite(a), MeasureValue::Finite(b)) if a >= b => {
                Some(MeasureValue::Finite(a - b))
            }
            _ => None,
        }
    }

    pub fn to_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        match self {
            MeasureValue::Finite(q) => q.to_f64().unwrap_or(f64::NAN),
            MeasureValue::Infinite => f64::INFINITY,
        }
    }
}

impl std::ops::Add for MeasureValue {
    type Output = MeasureValue;

    fn add(self, rhs: MeasureValue) -> MeasureValue {
        match (self, rhs) {
            (MeasureValue::Finite(a), MeasureValue::Finite(b)) => MeasureValue::Finite(a + b),
            _ => MeasureValue::Infinite,
        }
    }
}

impl fmt::Display for MeasureValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MeasureValue::Infinite => write!(f, "inf"),
            MeasureValue::Finite(q) => write_ratio(f, q),
        }
    }
}

/// Exact finite sum of measures; infinite as soon as any term is infinite.
/// The empty sum is zero.
pub fn measure_sum<I: IntoIterator<Item = MeasureValue>>(xs: I) -> MeasureValue {
    let mut acc = Rational::zero();
    for x in xs {
        match x {
            MeasureValue::Infinite => return MeasureValue::Infinite,
            MeasureValue::Finite(q) => acc += q,
        }
    }
    MeasureValue::Finite(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> ExtReal {
        ExtReal::finite(n, d)
    }

    #[test]
    fn ext_add_exact_rationals() {
        assert_eq!(ext_add(&q(1, 3), &q(1, 6)).unwrap(), q(1, 2));
    }

    #[test]
    fn ext_add_infinity_absorbs() {
        assert_eq!(
            ext_add(&ExtReal::PosInf, &q(-7, 1)).unwrap(),
            ExtReal::PosInf
        );
        assert_eq!(
            ext_add(&ExtReal::NegInf, &q(100, 1)).unwrap(),
            ExtReal::NegInf
        );
    }

    #[test]
    fn ext_add_opposite_infinities_is_error() {
        assert_eq!(
            ext_add(&ExtReal::PosInf, &ExtReal::NegInf),
            Err(NumericError::IndeterminateSum)
        );
        assert_eq!(
            ext_add(&ExtReal::NegInf, &ExtReal::PosInf),
            Err(NumericError::IndeterminateSum)
        );
    }

    #[test]
    fn measure_sum_geometric_prefix() {
        // Oracle: 1/3 + 2/9 + 4/27 over the common denominator 27 is
        // (9 + 6 + 4)/27 = 19/27.
        let xs = vec![
            MeasureValue::finite(1, 3),
            MeasureValue::finite(2, 9),
            MeasureValue::finite(4, 27),
        ];
        assert_eq!(measure_sum(xs), MeasureValue::finite(19, 27));
    }

    #[test]
    fn measure_sum_empty_is_zero() {
        assert_eq!(measure_sum(vec![]), MeasureValue::zero());
    }

    #[test]
    fn measure_sum_infinite_absorbs() {
        let xs = vec![MeasureValue::integer(5), MeasureValue::Infinite];
        assert_eq!(measure_sum(xs), MeasureValue::Infinite);
    }

    #[test]
    fn total_order_across_variants() {
        assert!(ExtReal::NegInf < q(-1000, 1));
        assert!(q(1000, 1) < ExtReal::PosInf);
        assert!(q(1, 3) < q(1, 2));
        assert!(ExtReal::NegInf < ExtReal::PosInf);
    }

    #[test]
    fn display_and_parse_round_trip() {
        for s in ["-inf", "inf", "0", "-7", "19/27", "-3/4"] {
            let v: ExtReal = s.parse().unwrap();
            assert_eq!(v.to_string(), s);
        }
        // Parsing normalizes to lowest terms with positive denominator.
        let v: ExtReal = "6/-8".parse().unwrap();
        assert_eq!(v, q(-3, 4));
        assert!("1/0".parse::<ExtReal>().is_err());
        assert!("x".parse::<ExtReal>().is_err());
    }

    fn arb_ext() -> impl Strategy<Value = ExtReal> {
        prop_oneof![
            8 => (-40i64..=40, 1i64..=12).prop_map(|(n, d)| ExtReal::finite(n, d)),
            1 => Just(ExtReal::PosInf),
            1 => Just(ExtReal::NegInf),
        ]
    }

    proptest! {
        #[test]
        fn ext_add_commutes(a in arb_ext(), b in arb_ext()) {
            prop_assert_eq!(ext_add(&a, &b).ok(), ext_add(&b, &a).ok());
        }

        #[test]
        fn ext_add_associates_when_defined(a in arb_ext(), b in arb_ext(), c in arb_ext()) {
            let left = ext_add(&a, &b).and_then(|ab| ext_add(&ab, &c));
            let right = ext_add(&b, &c).and_then(|bc| ext_add(&a, &bc));
            if let (Ok(l), Ok(r)) = (left, right) {
                prop_assert_eq!(l, r);
            }
        }

        #[test]
        fn finite_values_are_normalized(n in -400i64..=400, d in 1i64..=60) {
            if let ExtReal::Finite(q) = ExtReal::finite(n, d) {
                use num_integer::Integer;
                prop_assert!(q.denom() > &BigInt::from(0));
                prop_assert_eq!(q.numer().abs().gcd(q.denom()), BigInt::from(1));
            }
        }

        #[test]
        fn measure_sum_permutation_invariant(xs in proptest::collection::vec(
            prop_oneof![
                6 => (0i64..=30, 1i64..=9).prop_map(|(n, d)| MeasureValue::finite(n, d)),
                1 => Just(MeasureValue::Infinite),
            ], 0..8), swap in any::<(usize, usize)>())
        {
            let mut ys = xs.clone();
            if !ys.is_empty() {
                let (i, j) = (swap.0 % ys.len(), swap.1 % ys.len());
                ys.swap(i, j);
            }
            prop_assert_eq!(measure_sum(xs), measure_sum(ys));
        }
    }
}
