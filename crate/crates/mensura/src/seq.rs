//! Countable unions as prefix-truncatable sequences, their diagonal
//! disjointification, and the double-series bracketing check.
//!
//! A sequence yields one batch of intervals per index (most families yield a
//! single interval; the middle-thirds complement yields its whole stage).
//! Disjointification builds the triangular table whose row `r` is batch `r`
//! minus everything before it, pads rows with `Empty`, and enumerates the
//! table along antidiagonals — within an antidiagonal from high row to low
//! row — so that a single index walks every cell.

use std::collections::HashMap;
use std::sync::Arc;

use thiserror::Error;

use crate::interval::Interval;
use crate::numeric::{MeasureValue, Rational};
use crate::set::IntervalSet;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SeqError {
    #[error("table entry at row {row}, col {col} is not finite")]
    NonFiniteEntry { row: u64, col: u64 },
}

/// A countable union of intervals, presented as a pure total generator from
/// 1-based indices to finite batches.
#[derive(Clone)]
pub struct IntervalSeq {
    gen: Arc<dyn Fn(u64) -> IntervalSet + Send + Sync>,
    closed_form: Option<MeasureValue>,
}

impl IntervalSeq {
    /// Wraps a batch generator. The generator must be deterministic.
    pub fn new(f: impl Fn(u64) -> IntervalSet + Send + Sync + 'static) -> Self {
        IntervalSeq {
            gen: Arc::new(f),
            closed_form: None,
        }
    }

    /// Sequence of single intervals.
    pub fn from_intervals(f: impl Fn(u64) -> Interval + Send + Sync + 'static) -> Self {
        Self::new(move |n| IntervalSet::from(f(n)))
    }

    /// Finite-support sequence: the given intervals, then `Empty` forever.
    pub fn from_vec(terms: Vec<Interval>) -> Self {
        Self::from_intervals(move |n| {
            terms
                .get((n - 1) as usize)
                .cloned()
                .unwrap_or(Interval::Empty)
        })
    }

    /// Declares the exact measure of the full union, when known.
    pub fn with_closed_form(mut self, m: MeasureValue) -> Self {
        self.closed_form = Some(m);
        self
    }

    /// The `n`-th batch, `n >= 1`.
    pub fn batch(&self, n: u64) -> IntervalSet {
        assert!(n >= 1, "sequence indices start at 1");
        (self.gen)(n)
    }

    pub fn closed_form_measure(&self) -> Option<&MeasureValue> {
        self.closed_form.as_ref()
    }
}

/// Built-in sequence families, addressable by name from the CLI.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    /// `(n-1, n]`: disjoint unit steps filling `(0, inf)`.
    UnitSteps,
    /// Stage `n` of the middle-thirds removals; union has measure 1.
    CantorComplement,
    /// `(1/(n+1), 1/n)`: disjoint gaps filling `(0,1)` up to countably many
    /// points.
    HarmonicGaps,
    /// Constantly `[0,1]`.
    ConstantUnit,
}

impl Family {
    pub const ALL: [Family; 4] = [
        Family::UnitSteps,
        Family::CantorComplement,
        Family::HarmonicGaps,
        Family::ConstantUnit,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::UnitSteps => "unit-steps",
            Family::CantorComplement => "cantor-complement",
            Family::HarmonicGaps => "harmonic-gaps",
            Family::ConstantUnit => "constant-unit",
        }
    }

    pub fn from_name(name: &str) -> Option<Family> {
        Family::ALL.iter().copied().find(|f| f.name() == name)
    }

    pub fn seq(self) -> IntervalSeq {
        match self {
            Family::UnitSteps => IntervalSeq::from_intervals(|n| {
                Interval::new(
                    crate::numeric::ExtReal::integer(n as i64 - 1),
                    false,
                    crate::numeric::ExtReal::integer(n as i64),
                    true,
                )
                .unwrap()
            })
            .with_closed_form(MeasureValue::Infinite),
            Family::CantorComplement => {
                IntervalSeq::new(|n| crate::cantor::d_n(n as u32))
                    .with_closed_form(MeasureValue::integer(1))
            }
            Family::HarmonicGaps => IntervalSeq::from_intervals(|n| {
                let n = n as i64;
                Interval::new(
                    crate::numeric::ExtReal::finite(1, n + 1),
                    false,
                    crate::numeric::ExtReal::finite(1, n),
                    false,
                )
                .unwrap()
            })
            .with_closed_form(MeasureValue::integer(1)),
            Family::ConstantUnit => IntervalSeq::from_intervals(|_| Interval::closed(0, 1))
                .with_closed_form(MeasureValue::integer(1)),
        }
    }
}

/// Row/column address in the disjointification table, both 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct DiagIndex {
    pub row: u64,
    pub col: u64,
}

fn tri(k: u64) -> u64 {
    k * (k + 1) / 2
}

/// Position of a cell in the antidiagonal enumeration: antidiagonals are
/// walked in order of `row + col`, each from its highest row to row 1.
///
/// ```
/// use mensura::{diag_index, diag_unindex, DiagIndex};
///
/// assert_eq!(diag_index(DiagIndex { row: 2, col: 1 }), 2);
/// assert_eq!(diag_unindex(3), DiagIndex { row: 1, col: 2 });
/// ```
pub fn diag_index(d: DiagIndex) -> u64 {
    assert!(d.row >= 1 && d.col >= 1);
    tri(d.row + d.col - 2) + d.col
}

/// Inverse of [`diag_index`].
pub fn diag_unindex(m: u64) -> DiagIndex {
    assert!(m >= 1);
    // Largest k with tri(k) < m.
    let mut k = (((8 * m - 7) as f64).sqrt() as u64).saturating_sub(1) / 2;
    while tri(k + 1) < m {
        k += 1;
    }
    while k > 0 && tri(k) >= m {
        k -= 1;
    }
    let col = m - tri(k);
    DiagIndex {
        row: (k + 2) - col,
        col,
    }
}

/// The triangular table itself: row `r` is batch `r` minus batches
/// `1..r-1`, as disjoint pieces via iterated subtraction, in left-to-right
/// order. Rows may be empty.
pub fn disjointify_rows(s: &IntervalSeq, n_rows: u64) -> Vec<Vec<Interval>> {
    let mut rows = Vec::with_capacity(n_rows as usize);
    let mut prev: Vec<Interval> = Vec::new();
    for r in 1..=n_rows {
        let batch = s.batch(r);
        let mut row = Vec::new();
        for part in batch.parts() {
            row.extend(part.subtract_many(&prev));
        }
        prev.extend(batch.parts().iter().cloned());
        rows.push(row);
    }
    rows
}

/// First `n` entries of the diagonal enumeration of the disjointification
/// table, with `Empty` placeholders where a row is shorter than the
/// requested column. Non-empty entries are pairwise disjoint, and every
/// point of the union appears at some diagonal depth.
pub fn disjointify_prefix(s: &IntervalSeq, n: u64) -> Vec<Interval> {
    let mut rows: Vec<Vec<Interval>> = Vec::new();
    let mut prev: Vec<Interval> = Vec::new();
    let mut out = Vec::with_capacity(n as usize);
    for m in 1..=n {
        let DiagIndex { row, col } = diag_unindex(m);
        while (rows.len() as u64) < row {
            let r = rows.len() as u64 + 1;
            let batch = s.batch(r);
            let mut new_row = Vec::new();
            for part in batch.parts() {
                new_row.extend(part.subtract_many(&prev));
            }
            prev.extend(batch.parts().iter().cloned());
            rows.push(new_row);
        }
        out.push(
            rows[(row - 1) as usize]
                .get((col - 1) as usize)
                .cloned()
                .unwrap_or(Interval::Empty),
        );
    }
    out
}

/// Canonical union of the first `n` batches.
pub fn prefix_set(s: &IntervalSeq, n: u64) -> IntervalSet {
    let mut acc = IntervalSet::empty();
    for k in 1..=n {
        acc = acc.union(&s.batch(k));
    }
    acc
}

/// Measures of the prefix unions for `n = 1..=n_max`; nondecreasing.
pub fn prefix_measures(s: &IntervalSeq, n_max: u64) -> Vec<MeasureValue> {
    let mut acc = IntervalSet::empty();
    let mut out = Vec::with_capacity(n_max as usize);
    for k in 1..=n_max {
        acc = acc.union(&s.batch(k));
        out.push(acc.measure());
    }
    out
}

/// Result of [`row_diag_consistency`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowDiagReport {
    pub depth: u64,
    /// Diagonal partial sums `D_m` for every `m` evaluated during the check
    /// (up to `depth * (2*depth - 1)` terms).
    pub diag_partials: Vec<MeasureValue>,
    /// Square block sums over `rows, cols <= m` for `m = 1..=depth`.
    pub block_partials: Vec<MeasureValue>,
    pub bracketing_holds: bool,
}

/// Finite shadow of the double-series rearrangement equality: for a
/// nonnegative table, every diagonal partial sum is bounded by a square
/// block sum and every square block sum is bounded by a deeper diagonal
/// partial sum. Both directions are verified for `m = 1..=depth`.
pub fn row_diag_consistency(
    table: impl Fn(u64, u64) -> MeasureValue,
    depth: u64,
) -> Result<RowDiagReport, SeqError> {
    assert!(depth >= 1);
    let mut cache: HashMap<(u64, u64), Rational> = HashMap::new();
    let mut entry = |r: u64, c: u64| -> Result<Rational, SeqError> {
        if let Some(q) = cache.get(&(r, c)) {
            return Ok(q.clone());
        }
        let q = match table(r, c) {
            MeasureValue::Finite(q) => q,
            MeasureValue::Infinite => return Err(SeqError::NonFiniteEntry { row: r, col: c }),
        };
        cache.insert((r, c), q.clone());
        Ok(q)
    };

    // Diagonal partial sums out to the deepest index the bracketing needs.
    let deepest = depth * (2 * depth - 1);
    let mut diag_partials = Vec::with_capacity(deepest as usize);
    let mut acc = Rational::from_integer(0.into());
    for m in 1..=deepest {
        let DiagIndex { row, col } = diag_unindex(m);
        acc += entry(row, col)?;
        diag_partials.push(MeasureValue::from_ratio(acc.clone()));
    }

    // Square block sums, grown one ring at a time.
    let mut block_partials = Vec::with_capacity(depth as usize);
    let mut block = Rational::from_integer(0.into());
    for m in 1..=depth {
        for c in 1..=m {
            block += entry(m, c)?;
        }
        for r in 1..m {
            block += entry(r, m)?;
        }
        block_partials.push(MeasureValue::from_ratio(block.clone()));
    }

    let mut bracketing_holds = true;
    for m in 1..=depth as usize {
        let d_m = &diag_partials[m - 1];
        let r_m = &block_partials[m - 1];
        let deep = &diag_partials[(m as u64 * (2 * m as u64 - 1) - 1) as usize];
        if !(d_m <= r_m && r_m <= deep) {
            bracketing_holds = false;
        }
    }

    Ok(RowDiagReport {
        depth,
        diag_partials,
        block_partials,
        bracketing_holds,
    })
}
