//! Riemann-sum harness: sampled upper/lower/midpoint sums, the
//! level-set extraction lemma at grid resolution, exact lim-sup witness
//! regions, and bounded/monotone/dominated convergence demonstrations.
//!
//! This is the one module that computes with `f64`. Grid endpoints stay
//! exact rationals so every hand-off to the interval-set machinery is
//! exact; function evaluation and quadrature are floating point and are
//! reported as estimates.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use thiserror::Error;

use crate::interval::Interval;
use crate::numeric::{ExtReal, MeasureValue, Rational};
use crate::set::IntervalSet;

/// Sample points per cell for extremum estimation: the two endpoints plus
/// fifteen equally spaced interior points.
const SAMPLES_PER_CELL: usize = 17;

/// Sample points used for hypothesis verification over the whole domain.
const HYPOTHESIS_SAMPLES: usize = 257;

#[derive(Debug, Error, PartialEq)]
pub enum RiemannError {
    #[error("grid requires a < b and at least one cell")]
    InvalidGrid,
    #[error("function returned a non-finite value at x = {x}")]
    NonFiniteSample { x: f64 },
    #[error("partition too coarse: midpoint sum {sum} outside ({lo}, {hi})")]
    PartitionTooCoarse { sum: f64, lo: f64, hi: f64 },
    #[error("{family}: {constraint} violated at n = {n}, x = {x} (value {value})")]
    HypothesisViolated {
        family: String,
        n: u32,
        x: f64,
        value: f64,
        constraint: String,
    },
    #[error("family {family} does not support mode {mode}")]
    UnsupportedMode { family: String, mode: ConvergenceMode },
}

/// Uniform partition of `[a, b]` into `n` cells with exact rational
/// endpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grid {
    a: Rational,
    b: Rational,
    n: usize,
}

impl Grid {
    pub fn new(a: Rational, b: Rational, n: usize) -> Result<Grid, RiemannError> {
        if a >= b || n == 0 {
            return Err(RiemannError::InvalidGrid);
        }
        Ok(Grid { a, b, n })
    }

    pub fn from_ints(a: i64, b: i64, n: usize) -> Grid {
        Grid::new(
            Rational::from_integer(BigInt::from(a)),
            Rational::from_integer(BigInt::from(b)),
            n,
        )
        .expect("integer grid endpoints must satisfy a < b")
    }

    pub fn cells(&self) -> usize {
        self.n
    }

    /// Exact `k`-th grid point, `k` in `0..=n`.
    pub fn point(&self, k: usize) -> Rational {
        let w = (&self.b - &self.a) / Rational::from_integer(BigInt::from(self.n as i64));
        &self.a + w * Rational::from_integer(BigInt::from(k as i64))
    }

    /// Exact bounds of cell `k`, `k` in `0..n`.
    pub fn cell(&self, k: usize) -> (Rational, Rational) {
        (self.point(k), self.point(k + 1))
    }
}

fn to_f64(q: &Rational) -> f64 {
    q.to_f64().expect("rational representable as f64 estimate")
}

fn sample(f: &(impl Fn(f64) -> f64 + ?Sized), x: f64) -> Result<f64, RiemannError> {
    let y = f(x);
    if y.is_finite() {
        Ok(y)
    } else {
        Err(RiemannError::NonFiniteSample { x })
    }
}

/// Sampled lower, upper, and midpoint Riemann sums over a grid.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RiemannSums {
    pub lower: f64,
    pub upper: f64,
    pub midpoint: f64,
}

/// Estimates the Darboux-style sums using per-cell extrema over the fixed
/// sample lattice. For functions monotone on each cell the sampled extrema
/// sit on the cell ends and the estimates are the exact lower/upper sums;
/// for arbitrary functions they are estimates, not bounds.
pub fn riemann_sums(f: impl Fn(f64) -> f64, g: &Grid) -> Result<RiemannSums, RiemannError> {
    let mut lower = 0.0;
    let mut upper = 0.0;
    let mut midpoint = 0.0;
    for k in 0..g.n {
        let (x0, x1) = g.cell(k);
        let (x0, x1) = (to_f64(&x0), to_f64(&x1));
        let w = x1 - x0;
        let mut mn = f64::INFINITY;
        let mut mx = f64::NEG_INFINITY;
        for i in 0..SAMPLES_PER_CELL {
            let t = x0 + w * (i as f64) / ((SAMPLES_PER_CELL - 1) as f64);
            let y = sample(&f, t)?;
            mn = mn.min(y);
            mx = mx.max(y);
        }
        lower += mn * w;
        upper += mx * w;
        midpoint += sample(&f, x0 + w / 2.0)? * w;
    }
    Ok(RiemannSums {
        lower,
        upper,
        midpoint,
    })
}

/// Result of [`lemma_extract`].
#[derive(Clone, Debug)]
pub struct LemmaExtract {
    /// Union of the closed grid cells on which every sample stays at or
    /// above `alpha / 3`; exact rational endpoints.
    pub e_intervals: IntervalSet,
    /// Exact total length of the selected cells.
    pub total_length: Rational,
    /// Sampled sup-norm of `f` over the whole lattice.
    pub sup_norm: f64,
    /// The certified lower bound `alpha / (3 * sup_norm)`.
    pub bound: f64,
    /// Whether `total_length >= bound`; guaranteed when the midpoint-sum
    /// window precondition held.
    pub bound_holds: bool,
}

/// Extracts the cells where a nonnegative function stays at or above
/// `alpha / 3` at every sample, after checking the grid is fine enough that
/// the midpoint sum lands in `(2*alpha/3, 4*alpha/3)`. The extracted total
/// length is then at least `alpha / (3 * sup_norm)`.
pub fn lemma_extract(
    f: impl Fn(f64) -> f64,
    alpha: f64,
    g: &Grid,
) -> Result<LemmaExtract, RiemannError> {
    assert!(alpha > 0.0, "extraction threshold must be positive");
    let sums = riemann_sums(&f, g)?;
    let (lo, hi) = (2.0 * alpha / 3.0, 4.0 * alpha / 3.0);
    if !(sums.midpoint > lo && sums.midpoint < hi) {
        return Err(RiemannError::PartitionTooCoarse {
            sum: sums.midpoint,
            lo,
            hi,
        });
    }
    let mut selected = Vec::new();
    let mut sup_norm = 0.0f64;
    for k in 0..g.n {
        let (q0, q1) = g.cell(k);
        let (x0, x1) = (to_f64(&q0), to_f64(&q1));
        let w = x1 - x0;
        let mut mn = f64::INFINITY;
        for i in 0..SAMPLES_PER_CELL {
            let t = x0 + w * (i as f64) / ((SAMPLES_PER_CELL - 1) as f64);
            let y = sample(&f, t)?;
            mn = mn.min(y);
            sup_norm = sup_norm.max(y.abs());
        }
        if mn >= alpha / 3.0 {
            selected.push(
                Interval::new(ExtReal::Finite(q0), true, ExtReal::Finite(q1), true)
                    .expect("grid cells are well formed"),
            );
        }
    }
    let e_intervals = IntervalSet::normalize(selected);
    let total_length = match e_intervals.measure() {
        MeasureValue::Finite(q) => q,
        MeasureValue::Infinite => unreachable!("grid cells are bounded"),
    };
    let bound = alpha / (3.0 * sup_norm);
    let bound_holds = to_f64(&total_length) >= bound;
    Ok(LemmaExtract {
        e_intervals,
        total_length,
        sup_norm,
        bound,
        bound_holds,
    })
}

/// Result of [`limsup_witness`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LimsupWitness {
    /// Intersection over `n <= tail_start` of the tail unions
    /// `sets[n] ∪ sets[n+1] ∪ …`, computed exactly.
    pub witness_region: IntervalSet,
    /// A representative point near the left end of the first part, when the
    /// region is non-empty.
    pub point: Option<Rational>,
    /// How many sets the truncation saw; the finite computation only
    /// evidences the limiting statement out to this depth.
    pub truncation_depth: usize,
}

/// Exact finite shadow of the lim-sup set `⋂_n ⋃_{m>=n} E_m`: intersects
/// the first `tail_start` tail unions of the given sets. Every tail union
/// contains the later ones, so the region always contains the deepest tail
/// union; the point reported is deterministic.
pub fn limsup_witness(
    sets: &[IntervalSet],
    delta: &Rational,
    tail_start: usize,
) -> LimsupWitness {
    assert!(
        tail_start >= 1 && tail_start <= sets.len(),
        "tail_start must address one of the sets"
    );
    debug_assert!(
        sets.iter()
            .all(|s| s.measure() >= MeasureValue::from_ratio(delta.clone())),
        "every set must carry measure at least delta"
    );
    // Suffix unions from the back: tails[i] = sets[i] ∪ … ∪ sets[last].
    let mut tails: Vec<IntervalSet> = vec![IntervalSet::empty(); sets.len()];
    for i in (0..sets.len()).rev() {
        tails[i] = if i + 1 < sets.len() {
            sets[i].union(&tails[i + 1])
        } else {
            sets[i].clone()
        };
    }
    let mut witness = tails[0].clone();
    for tail in tails.iter().take(tail_start).skip(1) {
        witness = witness.intersection(tail);
    }
    let point = witness.parts().first().map(representative_near_lo);
    LimsupWitness {
        witness_region: witness,
        point,
        truncation_depth: sets.len(),
    }
}

/// Deterministic member of a non-empty interval, as close to the left end
/// as the flags allow: the left endpoint itself when closed, otherwise a
/// point a quarter of the way in.
fn representative_near_lo(part: &Interval) -> Rational {
    let Interval::Proper {
        lo,
        lo_closed,
        hi,
        ..
    } = part
    else {
        unreachable!("parts of a canonical set are non-empty");
    };
    match (lo, hi) {
        (ExtReal::Finite(a), _) if *lo_closed => a.clone(),
        (ExtReal::Finite(a), ExtReal::Finite(b)) => {
            a + (b - a) / Rational::from_integer(BigInt::from(4))
        }
        (ExtReal::Finite(a), _) => a + Rational::from_integer(BigInt::from(1)),
        (ExtReal::NegInf, ExtReal::Finite(b)) => b - Rational::from_integer(BigInt::from(1)),
        _ => Rational::from_integer(BigInt::from(0)),
    }
}

/// Which convergence hypothesis a demonstration verifies.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConvergenceMode {
    Bct,
    Mct,
    Dct,
}

impl ConvergenceMode {
    pub fn from_name(s: &str) -> Option<ConvergenceMode> {
        match s {
            "bct" => Some(ConvergenceMode::Bct),
            "mct" => Some(ConvergenceMode::Mct),
            "dct" => Some(ConvergenceMode::Dct),
            _ => None,
        }
    }

    /// Acceptance tolerance on the final gap for each mode.
    pub fn tolerance(self) -> f64 {
        match self {
            ConvergenceMode::Bct | ConvergenceMode::Mct => 0.04,
            ConvergenceMode::Dct => 0.03,
        }
    }
}

impl fmt::Display for ConvergenceMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ConvergenceMode::Bct => "bct",
            ConvergenceMode::Mct => "mct",
            ConvergenceMode::Dct => "dct",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
enum Domain {
    /// Integration over `[a, b]`.
    Bounded(f64, f64),
    /// Integration over `[a, inf)`, truncated at a configurable point.
    HalfLine { a: f64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Monotone {
    Decreasing,
}

#[derive(Clone)]
struct Dominator {
    m: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    /// Closed-form tail integral of the dominating function past `K`.
    tail: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
}

/// A registered sequence of functions with its pointwise limit, hypothesis
/// metadata, and (when available) closed-form integrals.
#[derive(Clone)]
pub struct FnSeq {
    pub name: &'static str,
    f_n: Arc<dyn Fn(u32, f64) -> f64 + Send + Sync>,
    f_limit: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    exact_integrals: Option<Arc<dyn Fn(u32) -> Rational + Send + Sync>>,
    domain: Domain,
    n_start: u32,
    uniform_bound: Option<f64>,
    monotone: Option<Monotone>,
    dominator: Option<Dominator>,
}

impl FnSeq {
    pub fn eval(&self, n: u32, x: f64) -> f64 {
        (self.f_n)(n, x)
    }

    pub fn limit(&self, x: f64) -> f64 {
        (self.f_limit)(x)
    }

    pub fn first_index(&self) -> u32 {
        self.n_start
    }

    /// Exact integral of the `n`-th function over the family's full domain,
    /// when a closed form is registered.
    pub fn exact_integral(&self, n: u32) -> Option<Rational> {
        self.exact_integrals.as_ref().map(|f| f(n))
    }

    pub const NAMES: [&'static str; 4] =
        ["power-n", "exp-decay", "compound-decay", "tent-moving"];

    /// Fixed code-level registry.
    pub fn registry(name: &str) -> Option<FnSeq> {
        match name {
            "power-n" => Some(FnSeq {
                name: "power-n",
                f_n: Arc::new(|n, x| x.powi(n as i32)),
                f_limit: Arc::new(|x| if x < 1.0 { 0.0 } else { 1.0 }),
                exact_integrals: Some(Arc::new(|n| {
                    Rational::new(BigInt::from(1), BigInt::from(n as i64 + 1))
                })),
                domain: Domain::Bounded(0.0, 1.0),
                n_start: 1,
                uniform_bound: Some(1.0),
                monotone: Some(Monotone::Decreasing),
                dominator: None,
            }),
            "exp-decay" => Some(FnSeq {
                name: "exp-decay",
                f_n: Arc::new(|_, x| (-x).exp()),
                f_limit: Arc::new(|x| (-x).exp()),
                exact_integrals: Some(Arc::new(|_| {
                    Rational::from_integer(BigInt::from(1))
                })),
                domain: Domain::HalfLine { a: 0.0 },
                n_start: 1,
                uniform_bound: None,
                monotone: None,
                dominator: Some(Dominator {
                    m: Arc::new(|x| (-x).exp()),
                    tail: Arc::new(|k| (-k).exp()),
                }),
            }),
            "compound-decay" => Some(FnSeq {
                name: "compound-decay",
                f_n: Arc::new(|n, x| (1.0 + x / n as f64).powi(-(n as i32))),
                f_limit: Arc::new(|x| (-x).exp()),
                exact_integrals: Some(Arc::new(|n| {
                    Rational::new(BigInt::from(n as i64), BigInt::from(n as i64 - 1))
                })),
                domain: Domain::HalfLine { a: 0.0 },
                n_start: 2,
                uniform_bound: None,
                monotone: None,
                dominator: Some(Dominator {
                    // The n = 2 member dominates the rest of the family.
                    m: Arc::new(|x| (1.0 + x / 2.0).powi(-2)),
                    tail: Arc::new(|k| 4.0 / (2.0 + k)),
                }),
            }),
            "tent-moving" => Some(FnSeq {
                name: "tent-moving",
                f_n: Arc::new(|n, x| {
                    let n = n as f64;
                    if x <= 0.0 || x >= 1.0 / n {
                        0.0
                    } else if x <= 1.0 / (2.0 * n) {
                        2.0 * n * n * x
                    } else {
                        2.0 * n * (1.0 - n * x)
                    }
                }),
                f_limit: Arc::new(|_| 0.0),
                exact_integrals: Some(Arc::new(|_| {
                    Rational::new(BigInt::from(1), BigInt::from(2))
                })),
                domain: Domain::Bounded(0.0, 1.0),
                n_start: 1,
                // The spikes grow without bound; this claimed bound is what
                // the hypothesis check is expected to refute.
                uniform_bound: Some(1.0),
                monotone: None,
                dominator: None,
            }),
            _ => None,
        }
    }
}

/// Truncation data for a dominated-convergence run.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DctTruncation {
    /// Upper integration limit actually used.
    pub k: f64,
    /// Closed-form bound on the dominating function's tail past `k`.
    pub tail_bound: f64,
}

/// One row of a convergence table.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConvergenceRow {
    pub n: u32,
    pub integral_estimate: f64,
    pub limit_estimate: f64,
    pub gap: f64,
}

/// Result of [`convergence_demo`].
#[derive(Clone, Debug, PartialEq)]
pub struct ConvergenceTable {
    pub mode: ConvergenceMode,
    pub rows: Vec<ConvergenceRow>,
    pub tolerance: f64,
    /// Final gap smaller than the first gap.
    pub gap_shrank: bool,
    /// Final gap below the mode's tolerance.
    pub within_tolerance: bool,
    pub truncation: Option<DctTruncation>,
}

fn midpoint_quadrature(
    f: &impl Fn(f64) -> f64,
    a: f64,
    b: f64,
    cells: usize,
) -> Result<f64, RiemannError> {
    let w = (b - a) / cells as f64;
    let mut acc = 0.0;
    for k in 0..cells {
        let x = a + w * (k as f64 + 0.5);
        acc += sample(f, x)?;
    }
    Ok(acc * w)
}

/// Runs a convergence demonstration: verifies the mode's hypothesis by
/// sampling, then tabulates integral estimates of `f_n` against the limit
/// for `n` up to `n_max` using midpoint quadrature with `quad_n` cells.
///
/// For dominated convergence the integral is truncated at `trunc_k` when
/// given; the default truncation grows until the dominator's closed-form
/// tail drops below a third of the mode tolerance, and the tail bound used
/// is reported either way.
pub fn convergence_demo(
    seq: &FnSeq,
    mode: ConvergenceMode,
    n_max: u32,
    quad_n: usize,
    trunc_k: Option<f64>,
) -> Result<ConvergenceTable, RiemannError> {
    assert!(quad_n >= 1 && n_max >= seq.n_start);
    let unsupported = || RiemannError::UnsupportedMode {
        family: seq.name.to_string(),
        mode,
    };
    let (a, b, truncation) = match (seq.domain, mode) {
        (Domain::Bounded(a, b), ConvergenceMode::Bct | ConvergenceMode::Mct) => (a, b, None),
        (Domain::HalfLine { a }, ConvergenceMode::Dct) => {
            let dom = seq.dominator.as_ref().ok_or_else(unsupported)?;
            let k = trunc_k.unwrap_or_else(|| {
                let mut k = 10.0;
                while (dom.tail)(k) >= mode.tolerance() / 3.0 {
                    k *= 2.0;
                }
                k
            });
            (
                a,
                a + k,
                Some(DctTruncation {
                    k,
                    tail_bound: (dom.tail)(k),
                }),
            )
        }
        _ => return Err(unsupported()),
    };

    verify_hypothesis(seq, mode, n_max, a, b)?;

    let limit_estimate = midpoint_quadrature(&|x| seq.limit(x), a, b, quad_n)?;
    let mut rows = Vec::with_capacity((n_max - seq.n_start + 1) as usize);
    for n in seq.n_start..=n_max {
        let integral_estimate = midpoint_quadrature(&|x| seq.eval(n, x), a, b, quad_n)?;
        rows.push(ConvergenceRow {
            n,
            integral_estimate,
            limit_estimate,
            gap: (integral_estimate - limit_estimate).abs(),
        });
    }
    let first_gap = rows.first().map_or(0.0, |r| r.gap);
    let last_gap = rows.last().map_or(0.0, |r| r.gap);
    let gap_shrank = rows.len() < 2 || last_gap < first_gap || last_gap == 0.0;
    Ok(ConvergenceTable {
        mode,
        rows,
        tolerance: mode.tolerance(),
        gap_shrank,
        within_tolerance: last_gap < mode.tolerance(),
        truncation,
    })
}

fn verify_hypothesis(
    seq: &FnSeq,
    mode: ConvergenceMode,
    n_max: u32,
    a: f64,
    b: f64,
) -> Result<(), RiemannError> {
    let unsupported = || RiemannError::UnsupportedMode {
        family: seq.name.to_string(),
        mode,
    };
    let xs: Vec<f64> = (0..HYPOTHESIS_SAMPLES)
        .map(|i| a + (b - a) * i as f64 / (HYPOTHESIS_SAMPLES - 1) as f64)
        .collect();
    let violation = |n: u32, x: f64, value: f64, constraint: &str| RiemannError::HypothesisViolated {
        family: seq.name.to_string(),
        n,
        x,
        value,
        constraint: constraint.to_string(),
    };
    match mode {
        ConvergenceMode::Bct => {
            let bound = seq.uniform_bound.ok_or_else(unsupported)?;
            for n in seq.n_start..=n_max {
                for &x in &xs {
                    let y = sample(&|t| seq.eval(n, t), x)?;
                    if y.abs() > bound + 1e-9 {
                        return Err(violation(n, x, y, "uniform bound"));
                    }
                }
            }
        }
        ConvergenceMode::Mct => {
            let Monotone::Decreasing = seq.monotone.ok_or_else(unsupported)?;
            for n in seq.n_start..n_max {
                for &x in &xs {
                    let here = sample(&|t| seq.eval(n, t), x)?;
                    let next = sample(&|t| seq.eval(n + 1, t), x)?;
                    if next > here + 1e-12 {
                        return Err(violation(n + 1, x, next, "monotone decrease"));
                    }
                }
            }
        }
        ConvergenceMode::Dct => {
            let dom = seq.dominator.clone().ok_or_else(unsupported)?;
            for n in seq.n_start..=n_max {
                for &x in &xs {
                    let y = sample(&|t| seq.eval(n, t), x)?;
                    let m = sample(dom.m.as_ref(), x)?;
                    if y.abs() > m * (1.0 + 1e-12) + 1e-12 {
                        return Err(violation(n, x, y, "domination"));
                    }
                }
            }
        }
    }
    Ok(())
}
