//! Exact interval-set algebra and outer-measure toolkit.
//!
//! The core data model is small: extended-rational endpoints ([`ExtReal`]),
//! single intervals with open/closed ends ([`Interval`]), and canonical
//! finite disjoint unions ([`IntervalSet`]) on which measure is exact
//! rational arithmetic. On top of that sit countable-union prefixes and
//! diagonal disjointification ([`seq`]), constructive open-cover machinery
//! ([`outer`]), the middle-thirds construction ([`cantor`]), and a floating
//! point Riemann-sum harness ([`riemann`]) for convergence demonstrations.
//!
//! Everything outside [`riemann`] is exact: no floating point touches an
//! endpoint, a length, or a measure.
//!
//! ```
//! use mensura::{eval_expr, parse_expr, MeasureValue};
//!
//! let e = parse_expr("[0,1] - (1/3,2/3) - (1/9,2/9) - (7/9,8/9)").unwrap();
//! let stage2 = eval_expr(&e);
//! assert_eq!(stage2.part_count(), 4);
//! assert_eq!(stage2.measure(), MeasureValue::finite(4, 9));
//! assert_eq!(stage2.to_string(), "[0,1/9] + [2/9,1/3] + [2/3,7/9] + [8/9,1]");
//! ```

pub mod cantor;
pub mod expr;
pub mod interval;
pub mod numeric;
pub mod outer;
pub mod riemann;
pub mod sampling;
pub mod seq;
pub mod set;

pub use cantor::{d_n, stage, stage_with_cap, CantorError, CantorStage, DEFAULT_DEPTH_CAP};
pub use expr::{eval_expr, parse_expr, parse_interval_literal, ParseError, SetExpr};
pub use interval::{Interval, IntervalError, Relation};
pub use numeric::{ext_add, measure_sum, ExtReal, MeasureValue, NumericError, Rational};
pub use outer::{
    epsilon_cover, finite_subcover, split_cover_at, verify_cover, Cover, CoverReport, OuterError,
    SplitCover,
};
pub use riemann::{
    convergence_demo, lemma_extract, limsup_witness, riemann_sums, ConvergenceMode,
    ConvergenceTable, FnSeq, Grid, LemmaExtract, LimsupWitness, RiemannError, RiemannSums,
};
pub use seq::{
    diag_index, diag_unindex, disjointify_prefix, prefix_measures, prefix_set,
    row_diag_consistency, DiagIndex, Family, IntervalSeq, RowDiagReport, SeqError,
};
pub use set::{check_superset_bound, IntervalSet, SupersetReport};
