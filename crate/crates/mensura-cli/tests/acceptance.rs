//! Acceptance suite: one test per release criterion, each printing a
//! PASS line (run with `cargo test -p mensura-cli --test acceptance`).
//! Every tolerance is pinned here; all exact checks use rational equality.

use std::process::Command;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use mensura::sampling;
use mensura::{
    convergence_demo, diag_index, diag_unindex, disjointify_prefix, epsilon_cover, eval_expr,
    finite_subcover, limsup_witness, measure_sum, parse_expr, prefix_set, verify_cover,
    ConvergenceMode, Cover, DiagIndex, Family, FnSeq, Interval, IntervalSeq, IntervalSet,
    MeasureValue, Rational, RiemannError, SetExpr,
};

fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

fn set(s: &str) -> IntervalSet {
    eval_expr(&parse_expr(s).unwrap())
}

fn pass(n: u32, blurb: &str) {
    println!("PASS criterion {n}: {blurb}");
}

fn run_binary(args: &[&str]) -> Vec<u8> {
    let out = Command::new(env!("CARGO_BIN_EXE_mensura"))
        .args(args)
        .output()
        .expect("binary runs");
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    out.stdout
}

/// Criterion 1: `cantor --depth n` for n = 1..16 reports the remaining
/// measure exactly (2/3)^n, the removed measure exactly 1 - (2/3)^n, and
/// 2^n remaining parts, within 10 seconds overall.
#[test]
fn c1_cantor_exactness() {
    let started = Instant::now();
    for n in 1u32..=16 {
        let stdout = run_binary(&["cantor", "--depth", &n.to_string(), "--json"]);
        let v: serde_json::Value = serde_json::from_slice(&stdout).unwrap();
        let (pow2, pow3) = (2i64.pow(n), 3i64.pow(n));
        let remaining = MeasureValue::from_ratio(ratio(pow2, pow3)).to_string();
        let removed = MeasureValue::from_ratio(ratio(pow3 - pow2, pow3)).to_string();
        assert_eq!(v["result"]["remaining_measure"], remaining, "depth {n}");
        assert_eq!(v["result"]["removed_measure"], removed, "depth {n}");
        assert_eq!(v["result"]["remaining_parts"], (1u64 << n), "depth {n}");
        assert_eq!(v["result"]["removed_parts"], (1u64 << n) - 1, "depth {n}");
    }
    let elapsed = started.elapsed();
    assert!(
        elapsed.as_secs_f64() < 10.0,
        "16 stage computations took {elapsed:?}"
    );
    pass(1, &format!("cantor depths 1..16 exact in {elapsed:?}"));
}

/// Criterion 2: 10,000 disjoint canonical pairs satisfy exact additivity of
/// measure under union; 10,000 arbitrary raw lists never exceed their raw
/// length sum after normalization.
#[test]
fn c2_additivity_suite() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xC2);
    for case in 0..10_000 {
        let (s, t) = sampling::disjoint_canonical_pair(&mut rng);
        assert!(s.intersection(&t).is_empty(), "case {case}");
        assert_eq!(
            s.union(&t).measure(),
            s.measure() + t.measure(),
            "case {case}: additivity failed for {s} and {t}"
        );
    }
    for case in 0..10_000 {
        let raw: Vec<Interval> = (0..rng.gen_range(0..=8usize))
            .map(|_| sampling::interval(&mut rng))
            .collect();
        let total = measure_sum(raw.iter().map(|i| i.length()));
        assert!(
            IntervalSet::normalize(raw.clone()).measure() <= total,
            "case {case}: subadditivity failed"
        );
    }
    pass(2, "10k disjoint unions add exactly; 10k raw lists subadditive");
}

/// Pointwise boolean reading of an expression; the independent oracle for
/// criterion 3.
fn member(e: &SetExpr, x: &Rational) -> bool {
    match e {
        SetExpr::Lit(i) => i.contains(x),
        SetExpr::Union(a, b) => member(a, x) || member(b, x),
        SetExpr::Difference(a, b) => member(a, x) && !member(b, x),
        SetExpr::Intersection(a, b) => member(a, x) && member(b, x),
    }
}

/// Finite endpoints appearing in the expression's literals; the sharpest
/// places to probe open/closed flag handling.
fn literal_endpoints(e: &SetExpr, out: &mut Vec<Rational>) {
    match e {
        SetExpr::Lit(i) => {
            for end in [i.inf(), i.sup()] {
                if let mensura::ExtReal::Finite(q) = end {
                    out.push(q);
                }
            }
        }
        SetExpr::Union(a, b) | SetExpr::Difference(a, b) | SetExpr::Intersection(a, b) => {
            literal_endpoints(a, out);
            literal_endpoints(b, out);
        }
    }
}

/// Criterion 3: evaluated set membership matches the pointwise boolean
/// evaluation of the expression on 2,000 random expressions and 200 sample
/// points each. A quarter of the points sit exactly on or just beside the
/// literals' endpoints, where the flag logic is most exposed.
#[test]
fn c3_membership_oracle_equivalence() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xC3);
    let nudge = ratio(1, 97);
    let mut checked = 0u64;
    for _ in 0..2_000 {
        let expr = sampling::set_expr(&mut rng, 3);
        let evaluated = eval_expr(&expr);
        let mut ends = Vec::new();
        literal_endpoints(&expr, &mut ends);
        for k in 0..200 {
            let x = if k % 4 == 0 && !ends.is_empty() {
                let base = ends[rng.gen_range(0..ends.len())].clone();
                match rng.gen_range(0u8..3) {
                    0 => base,
                    1 => base + &nudge,
                    _ => base - &nudge,
                }
            } else {
                sampling::rational(&mut rng, 30, 16)
            };
            assert_eq!(
                evaluated.contains(&x),
                member(&expr, &x),
                "mismatch at {x} for {expr}"
            );
            checked += 1;
        }
    }
    assert_eq!(checked, 400_000);
    pass(3, "400k membership samples (incl. endpoint probes) agree with the boolean oracle");
}

/// Criterion 4: the epsilon-cover sandwich holds exactly for 1,000 random
/// bounded sets at eps in {1, 1/2, 1/8, 1/64}, and the greedy finite
/// subcover's total length is at least the target length on 1,000 random
/// covered closed intervals.
#[test]
fn c4_outer_measure_sandwich() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xC4);
    let eps_values = [ratio(1, 1), ratio(1, 2), ratio(1, 8), ratio(1, 64)];
    for case in 0..1_000 {
        let s = sampling::bounded_interval_set(&mut rng, 6);
        let m = s.measure();
        for eps in &eps_values {
            let cover = epsilon_cover(&s, eps).unwrap();
            let report = verify_cover(&cover);
            assert!(report.covers, "case {case}: cover must cover");
            assert!(m <= report.total, "case {case}: lower bound failed");
            assert!(
                report.total <= m.clone() + MeasureValue::from_ratio(eps.clone()),
                "case {case}: upper bound failed at eps {eps}"
            );
        }
    }
    for case in 0..1_000 {
        let (target, cover_list) = sampling::covered_closed_interval(&mut rng);
        let cover = Cover::new(cover_list, IntervalSet::from(target.clone())).unwrap();
        let chosen = finite_subcover(&target, &cover)
            .unwrap_or_else(|e| panic!("case {case}: {e}"));
        let total = measure_sum(chosen.iter().map(|i| i.length()));
        assert!(total >= target.length(), "case {case}: subcover too short");
    }
    pass(4, "sandwich exact on 4k covers; 1k greedy subcovers bounded below");
}

/// Diagonal depth by which rows `1..=rows` are fully enumerated.
fn depth_covering_rows(s: &IntervalSeq, rows: u64) -> u64 {
    mensura::seq::disjointify_rows(s, rows)
        .iter()
        .enumerate()
        .map(|(r, row)| {
            diag_index(DiagIndex {
                row: r as u64 + 1,
                col: row.len().max(1) as u64,
            })
        })
        .max()
        .unwrap()
}

fn check_disjointify(s: &IntervalSeq, entries: u64, support_rows: Option<u64>) {
    let prefix = disjointify_prefix(s, entries);
    for (i, a) in prefix.iter().enumerate() {
        for b in &prefix[i + 1..] {
            assert!(a.intersect(b).is_empty(), "{a} overlaps {b}");
        }
    }
    let max_row = (1..=entries).map(|m| diag_unindex(m).row).max().unwrap();
    assert!(IntervalSet::normalize(prefix.clone()).is_subset(&prefix_set(s, max_row)));
    let raw = measure_sum(
        (1..=max_row).flat_map(|r| {
            s.batch(r)
                .parts()
                .iter()
                .map(|p| p.length())
                .collect::<Vec<_>>()
        }),
    );
    assert!(measure_sum(prefix.iter().map(|p| p.length())) <= raw);
    // Union reproduction. Every point of the first k batches appears by the
    // computable diagonal depth; for finite-support sequences that makes
    // the disjointified prefix reproduce the entire union exactly.
    match support_rows {
        Some(rows) => {
            let deep = depth_covering_rows(s, rows);
            assert_eq!(
                IntervalSet::normalize(disjointify_prefix(s, deep)),
                prefix_set(s, rows),
                "prefix union not reproduced"
            );
        }
        None => {
            let k = 4;
            let deep = depth_covering_rows(s, k);
            assert!(
                prefix_set(s, k).is_subset(&IntervalSet::normalize(disjointify_prefix(s, deep))),
                "first {k} batches not reproduced by diagonal depth {deep}"
            );
        }
    }
}

/// Criterion 5: disjointification laws on the four built-in families and
/// 500 random finite-support sequences; diagonal bijection verified for all
/// row+col <= 100.
#[test]
fn c5_disjointification() {
    for fam in Family::ALL {
        let entries = if fam == Family::CantorComplement { 16 } else { 64 };
        check_disjointify(&fam.seq(), entries, None);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0xC5);
    for _ in 0..500 {
        let len = rng.gen_range(0..=8usize);
        let terms: Vec<Interval> = (0..len).map(|_| sampling::interval(&mut rng)).collect();
        let s = IntervalSeq::from_vec(terms);
        check_disjointify(&s, 24, Some(len.max(1) as u64));
    }
    for row in 1..=99u64 {
        for col in 1..=(100 - row) {
            let d = DiagIndex { row, col };
            assert_eq!(diag_unindex(diag_index(d)), d);
        }
    }
    pass(5, "families + 500 random sequences disjointified; bijection checked");
}

/// Criterion 6: the extraction bound L >= alpha/(3*supnorm) holds for
/// f(x)=x, f(x)=x^2, and constants on [0,1] with grids of 64 and 256 cells,
/// in every run where the midpoint-sum window precondition holds.
type LemmaCase = (fn(f64) -> f64, f64, &'static str);

#[test]
fn c6_lemma_extraction_bound() {
    let cases: Vec<LemmaCase> = vec![
        (|x| x, 0.5, "identity"),
        (|x| x * x, 1.0 / 3.0, "square"),
        (|_| 0.5, 0.5, "constant 1/2"),
        (|_| 1.0, 1.0, "constant 1"),
        (|_| 2.0, 2.0, "constant 2"),
    ];
    let mut ran = 0;
    for cells in [64usize, 256] {
        let grid = mensura::Grid::from_ints(0, 1, cells);
        for (f, alpha, name) in &cases {
            match mensura::lemma_extract(f, *alpha, &grid) {
                Ok(out) => {
                    assert!(out.bound_holds, "{name} at {cells} cells: bound failed");
                    ran += 1;
                }
                Err(RiemannError::PartitionTooCoarse { .. }) => {}
                Err(other) => panic!("{name} at {cells} cells: {other}"),
            }
        }
    }
    assert_eq!(ran, 10, "every designed case should pass the window check");
    pass(6, "extraction bound held in all 10 qualifying runs");
}

/// Criterion 7: desk-scale convergence numbers. The power family's harness
/// estimate matches 1/(n+1) to 1e-6 at 10^4 quadrature cells with final gap
/// below 0.04; the compound-decay family's DCT gap at n=50 with K=40 is
/// within 1e-2 of the closed-form 1/49; the tent family violates the
/// uniform-bound hypothesis.
#[test]
fn c7_convergence_theorems() {
    let power = FnSeq::registry("power-n").unwrap();
    let table = convergence_demo(&power, ConvergenceMode::Bct, 30, 10_000, None).unwrap();
    let last = table.rows.last().unwrap();
    assert!(
        (last.integral_estimate - 1.0 / 31.0).abs() < 1e-6,
        "quadrature drift: {}",
        last.integral_estimate
    );
    assert!(last.gap < 0.04);
    assert!(table.gap_shrank && table.within_tolerance);

    let mct = convergence_demo(&power, ConvergenceMode::Mct, 30, 10_000, None).unwrap();
    assert_eq!(mct.rows, table.rows);

    let compound = FnSeq::registry("compound-decay").unwrap();
    let dct = convergence_demo(&compound, ConvergenceMode::Dct, 50, 10_000, Some(40.0)).unwrap();
    let last = dct.rows.last().unwrap();
    assert!(
        (last.gap - 1.0 / 49.0).abs() < 1e-2,
        "gap {} not within 1e-2 of 1/49",
        last.gap
    );
    assert!(last.gap < 0.03);
    assert_eq!(dct.truncation.unwrap().k, 40.0);

    let tent = FnSeq::registry("tent-moving").unwrap();
    match convergence_demo(&tent, ConvergenceMode::Bct, 10, 1_000, None) {
        Err(RiemannError::HypothesisViolated { constraint, .. }) => {
            assert_eq!(constraint, "uniform bound");
        }
        other => panic!("expected uniform-bound violation, got {other:?}"),
    }
    pass(7, "bct/mct/dct numbers match closed forms; tent family rejected");
}

/// Criterion 8: the alternating-sets truncation yields an exactly computed
/// witness region of measure >= 1/4 containing [1/4,1/2], with a concrete
/// deterministic witness point.
#[test]
fn c8_limsup_truncation() {
    let sets: Vec<IntervalSet> = (0..6)
        .map(|k| if k % 2 == 0 { set("[0,1/2]") } else { set("[1/4,3/4]") })
        .collect();
    let first = limsup_witness(&sets, &ratio(1, 2), 3);
    let second = limsup_witness(&sets, &ratio(1, 2), 3);
    assert_eq!(first, second, "witness computation must be deterministic");
    assert!(set("[1/4,1/2]").is_subset(&first.witness_region));
    assert!(first.witness_region.measure() >= MeasureValue::finite(1, 4));
    let point = first.point.expect("non-empty witness region yields a point");
    assert!(first.witness_region.contains(&point));
    assert_eq!(first.truncation_depth, 6);
    pass(8, &format!("witness region {} with point {point}", first.witness_region));
}

/// Criterion 9: 1,000 format -> parse -> eval round trips are the identity
/// on canonical sets, and repeated JSON invocations of the binary are
/// byte-identical.
#[test]
fn c9_cli_round_trip_and_stability() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xC9);
    for case in 0..1_000 {
        let s = sampling::interval_set(&mut rng, 6);
        let printed = s.to_string();
        let back = eval_expr(&parse_expr(&printed).unwrap());
        assert_eq!(back, s, "case {case}: round trip failed for {printed}");
    }
    for args in [
        vec!["cantor", "--depth", "8", "--json"],
        vec!["measure", "[0,1] - (1/3,2/3) - (1/9,2/9) - (7/9,8/9)", "--json"],
        vec![
            "converge", "--family", "power-n", "--mode", "bct", "--n-max", "10", "--quad",
            "2000", "--json",
        ],
    ] {
        let a = run_binary(&args);
        let b = run_binary(&args);
        assert_eq!(a, b, "JSON output unstable for {args:?}");
    }
    pass(9, "1k round trips identical; JSON byte-stable");
}
