#![allow(dead_code)]

use rand::Rng;
use wavesets::rational::{int, rat, Rational};
use wavesets::{AffinePiece, Interval, IntervalSet, PiecewiseMap};

/// Sorted distinct cut points `a < c_1 < ... < b` on the grid of step `1/denom`.
pub fn random_cuts<R: Rng>(rng: &mut R, a: i64, b: i64, denom: i64, max_cuts: usize) -> Vec<Rational> {
    let mut cuts: Vec<i64> = (0..rng.gen_range(0..=max_cuts)).map(|_| rng.gen_range(a + 1..b)).collect();
    cuts.push(a);
    cuts.push(b);
    cuts.sort();
    cuts.dedup();
    cuts.into_iter().map(|c| rat(c, denom)).collect()
}

/// A random member of WI₁: each half of [0,1) is cut into pieces that contract by 2^k.
pub fn random_wi1<R: Rng>(rng: &mut R) -> PiecewiseMap {
    let mut pieces = Vec::new();
    for (a, b, right) in [(0, 32, false), (32, 64, true)] {
        let cuts = random_cuts(rng, a, b, 64, 5);
        for w in cuts.windows(2) {
            let k = rng.gen_range(1..=6);
            let m = if right { int(0) } else { int(1) - Rational::new(1.into(), num::BigInt::from(1) << k) };
            let dom = Interval::new(w[0].clone(), w[1].clone()).unwrap();
            pieces.push(AffinePiece::new(dom, -k, m).unwrap());
        }
    }
    PiecewiseMap::new(pieces).unwrap()
}

/// A random finite union of intervals inside `[lo/denom, hi/denom)`.
pub fn random_set<R: Rng>(rng: &mut R, lo: i64, hi: i64, denom: i64) -> IntervalSet {
    let cuts = random_cuts(rng, lo, hi, denom, 8);
    IntervalSet::normalize(
        cuts.windows(2)
            .filter(|_| rng.gen_bool(0.5))
            .map(|w| Interval::new(w[0].clone(), w[1].clone()).unwrap())
            .collect(),
    )
}
