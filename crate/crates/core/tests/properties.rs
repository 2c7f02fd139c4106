mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use wavesets::frequency::{verify_wavelet_set, xi_inv, FreqSet};
use wavesets::gallery;
use wavesets::homotopy::nu_measure;
use wavesets::rational::{int, pow2, rat, Rational};
use wavesets::unit_map::{induced_isomorphism, wavelet_set_from_isomorphism};
use wavesets::{Interval, IntervalSet, PiecewiseMap};

fn raw_intervals(denom: i64) -> impl Strategy<Value = Vec<(i64, i64)>> {
    prop::collection::vec((-64i64..64, 1i64..24), 0..8)
        .prop_map(move |v| v.into_iter().map(|(a, len)| (a, a + len)).collect())
        .prop_filter("denominator", move |_| denom > 0)
}

fn to_set(raw: &[(i64, i64)], denom: i64) -> IntervalSet {
    IntervalSet::normalize(raw.iter().map(|&(a, b)| Interval::new(rat(a, denom), rat(b, denom)).unwrap()).collect())
}

fn wi1_map() -> impl Strategy<Value = PiecewiseMap> {
    any::<u64>().prop_map(|seed| common::random_wi1(&mut ChaCha8Rng::seed_from_u64(seed)))
}

proptest! {
    #[test]
    fn normalize_is_canonical(raw in raw_intervals(8), splits in prop::collection::vec(-64i64..88, 0..6)) {
        let a = to_set(&raw, 8);
        // same point set, presented reversed and cut at extra points
        let mut pieces: Vec<Interval> = a
            .iter()
            .flat_map(|iv| iv.split_at(&splits.iter().map(|&s| rat(s, 8)).collect::<Vec<_>>()))
            .collect();
        pieces.reverse();
        let b = IntervalSet::normalize(pieces);
        prop_assert_eq!(a.intervals(), b.intervals());
        for w in a.intervals().windows(2) {
            prop_assert!(w[0].hi() < w[1].lo());
        }
    }

    #[test]
    fn measure_is_additive(x in raw_intervals(8), y in raw_intervals(8)) {
        let (a, b) = (to_set(&x, 8), to_set(&y, 8));
        prop_assert_eq!(a.union(&b).measure() + a.intersect(&b).measure(), a.measure() + b.measure());
        prop_assert_eq!(a.symdiff(&b), a.difference(&b).union(&b.difference(&a)));
    }

    #[test]
    fn affine_image_scales_measure(x in raw_intervals(8), e in -20i64..=20, m in -16i64..16) {
        let s = to_set(&x, 8);
        let img = s.affine_image(e, &rat(m, 3)).unwrap();
        prop_assert_eq!(img.measure(), pow2(e as i32) * s.measure());
    }

    #[test]
    fn log_integral_is_dilation_invariant(x in prop::collection::vec((1i64..200, 1i64..40), 0..6), e in -20i64..=20, neg: bool) {
        let raw: Vec<(i64, i64)> = x.into_iter().map(|(a, l)| if neg { (-a - l, -a) } else { (a, a + l) }).collect();
        let s = to_set(&raw, 16);
        let before = s.log_integral().unwrap();
        let after = s.affine_image(e, &int(0)).unwrap().log_integral().unwrap();
        prop_assert!((before - after).abs() < 1e-12);
    }

    #[test]
    fn nu_matches_lifted_log_integral(x in prop::collection::vec((0i64..96, 1i64..20), 0..6)) {
        let raw: Vec<(i64, i64)> = x.into_iter().map(|(a, l)| (a, (a + l).min(96))).filter(|(a, b)| a < b).collect();
        let s = to_set(&raw, 96);
        let nu = nu_measure(&s).unwrap();
        let lam = xi_inv(&s).unwrap().log_integral().unwrap();
        prop_assert!((nu - lam).abs() < 1e-12);
    }

    #[test]
    fn inverse_of_composition(f in wi1_map(), g in wi1_map(), h in wi1_map()) {
        let fg = PiecewiseMap::compose(&f, &g).unwrap();
        prop_assert_eq!(fg.invert().unwrap(), PiecewiseMap::compose(&g.invert().unwrap(), &f.invert().unwrap()).unwrap());
        prop_assert_eq!(f.invert().unwrap().invert().unwrap(), f.clone());
        prop_assert_eq!(
            PiecewiseMap::compose(&fg, &h).unwrap(),
            PiecewiseMap::compose(&f, &PiecewiseMap::compose(&g, &h).unwrap()).unwrap()
        );
    }

    #[test]
    fn wi1_maps_contract(f in wi1_map(), raw in prop::collection::vec((0i64..64, 1i64..16), 0..6)) {
        let sigma = to_set(&raw.into_iter().map(|(a, l)| (a, (a + l).min(64))).filter(|(a, b)| a < b).collect::<Vec<_>>(), 64);
        prop_assert!(f.is_injective());
        prop_assert!(f.image(&sigma).measure() * int(2) <= sigma.measure());
        prop_assert_eq!(f.preimage(&f.image(&sigma)), sigma);
    }
}

/// Each sixteenth of `[-2,-1) ∪ [1,2)` is moved by an even translation, a dyadic dilation,
/// or left alone.
fn scrambled_littlewood_paley(moves: &[(u8, i8)]) -> Option<FreqSet> {
    let mut cells = Vec::new();
    for (i, &(kind, amount)) in moves.iter().enumerate() {
        let i = i as i64;
        let lo = if i < 16 { rat(-32 + i, 16) } else { rat(i, 16) };
        let cell = Interval::new(lo.clone(), lo + rat(1, 16)).unwrap();
        let moved = match kind % 3 {
            0 => cell,
            1 => cell.affine_image(0, &int(2 * amount as i64)),
            _ => cell.affine_image(amount as i32, &int(0)),
        };
        cells.push(moved);
    }
    let set = IntervalSet::normalize(cells);
    let touches_zero = set.iter().any(|iv| iv.lo() <= &int(0) && iv.hi() >= &int(0));
    (!touches_zero).then(|| FreqSet::new(set))
}

/// Pointwise tiling check on a fine grid: each sample has exactly one translate and one
/// dilate in the set.
fn grid_tiles(w: &FreqSet) -> bool {
    let s = w.pi_units();
    let samples = |lo: i64| (0..1024).map(move |j| rat(2 * j + 1, 2048) + int(lo));
    let translation = (0..2048).map(|j| rat(2 * j + 1, 2048)).all(|y| {
        (-8..=8).filter(|n| s.contains(&(&y + int(2 * n)))).count() == 1
    });
    let dilation = samples(1).chain(samples(-2)).all(|y| {
        (-10..=10).filter(|&k| s.contains(&(pow2(k) * &y))).count() == 1
    });
    translation && dilation
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn verifier_agrees_with_grid_oracle(moves in prop::collection::vec((0u8..6, -2i8..=2), 32)) {
        let Some(w) = scrambled_littlewood_paley(&moves) else { return Ok(()); };
        let cert = verify_wavelet_set(&w).unwrap();
        prop_assert_eq!(cert.ok, grid_tiles(&w));
        prop_assert_eq!(cert.ok, cert.defect() == Rational::from_integer(0.into()));
    }
}

#[test]
fn gallery_round_trips() {
    for entry in gallery::list() {
        let Some(w) = entry.wavelet_set() else { continue };
        let h = induced_isomorphism(w).unwrap();
        assert!(h.classify().in_wi, "{}", entry.name);
        assert!(h.is_injective());
        assert_eq!(h.range().measure(), int(1));
        assert_eq!(&wavelet_set_from_isomorphism(&h).unwrap(), w, "{}", entry.name);
    }
}

#[test]
fn grid_oracle_accepts_gallery_sets() {
    for entry in gallery::list() {
        if let Some(w) = entry.wavelet_set() {
            assert!(grid_tiles(w), "{}", entry.name);
        }
    }
    let nudged = FreqSet::new(gallery::journe().pi_units().translate(&rat(1, 64)));
    assert!(!grid_tiles(&nudged));
    assert!(!verify_wavelet_set(&nudged).unwrap().ok);
}
