//! Shared fixtures for the criterion benches.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use mensura::sampling;
use mensura::{Interval, IntervalSet};

/// Deterministic batch of raw intervals for normalization benches.
pub fn raw_intervals(n: usize, seed: u64) -> Vec<Interval> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| sampling::interval(&mut rng)).collect()
}

/// Deterministic canonical sets that really do keep `parts` parts each:
/// short intervals on a coarse lattice with jittered endpoints, the second
/// set phase-shifted so the two interleave and overlap.
pub fn canonical_pair(parts: usize, seed: u64) -> (IntervalSet, IntervalSet) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut build = |phase: i64| {
        IntervalSet::normalize((0..parts).map(|k| {
            let lo = mensura::Rational::new((3 * k as i64 + phase).into(), 1.into())
                + sampling::rational(&mut rng, 1, 5);
            let hi = &lo + mensura::Rational::new(rng.gen_range(3..=7).into(), 4.into());
            Interval::new(
                mensura::ExtReal::Finite(lo),
                rng.gen(),
                mensura::ExtReal::Finite(hi),
                rng.gen(),
            )
            .unwrap()
        }))
    };
    (build(0), build(1))
}
