//! Named wavelet sets and unit maps used throughout the examples and tests.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::frequency::{littlewood_paley, FreqSet};
use crate::interval::{Interval, IntervalSet};
use crate::rational::{int, pow2, rat, Rational};
use crate::unit_map::{AffinePiece, PiecewiseMap};

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum GalleryValue {
    WaveletSet(FreqSet),
    UnitMap(PiecewiseMap),
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GalleryEntry {
    pub name: &'static str,
    pub description: &'static str,
    #[serde(flatten)]
    pub value: GalleryValue,
}

impl GalleryEntry {
    pub fn wavelet_set(&self) -> Option<&FreqSet> {
        match &self.value {
            GalleryValue::WaveletSet(w) => Some(w),
            GalleryValue::UnitMap(_) => None,
        }
    }

    pub fn unit_map(&self) -> Option<&PiecewiseMap> {
        match &self.value {
            GalleryValue::UnitMap(m) => Some(m),
            GalleryValue::WaveletSet(_) => None,
        }
    }
}

type Builder = fn() -> GalleryValue;

const ENTRIES: &[(&str, &str, Builder)] = &[
    ("littlewood_paley", "[-2π,-π) ∪ [π,2π), the reference wavelet set", || {
        GalleryValue::WaveletSet(littlewood_paley())
    }),
    ("S8", "an eight-interval wavelet set", || GalleryValue::WaveletSet(s8())),
    ("journe", "the four-interval Journé wavelet set", || GalleryValue::WaveletSet(journe())),
    ("six_interval", "six-interval set from the halving map switched off on [2/7,1)", || {
        GalleryValue::WaveletSet(six_interval())
    }),
    ("S8_induced", "induced isomorphism of S8", || GalleryValue::UnitMap(s8_induced())),
    ("journe_induced", "induced isomorphism of the Journé set", || {
        GalleryValue::UnitMap(journe_induced())
    }),
    ("s8_u", "WI1 factor used for S8: (x-1)/2 + 1 on [0,1/2), x/2 on [1/2,1)", || {
        GalleryValue::UnitMap(contraction_by_half())
    }),
    ("s8_v", "WI2 factor used for S8", || GalleryValue::UnitMap(s8_v())),
    ("journe_u", "WI1 factor of the Journé isomorphism", || GalleryValue::UnitMap(contraction_by_half())),
    ("journe_v", "WI2 factor of the Journé isomorphism: (x+2)/4, (x+1)/4", || {
        GalleryValue::UnitMap(journe_v())
    }),
    ("halving", "x/2 on [0,1)", || GalleryValue::UnitMap(halving())),
    ("identity", "x on [0,1)", || GalleryValue::UnitMap(PiecewiseMap::identity())),
    ("halving_switched", "x/2 on [0,2/7), x on [2/7,1)", || GalleryValue::UnitMap(halving_switched())),
];

pub fn names() -> Vec<&'static str> {
    ENTRIES.iter().map(|(n, _, _)| *n).collect()
}

pub fn list() -> Vec<GalleryEntry> {
    ENTRIES.iter().map(|&(name, description, build)| GalleryEntry { name, description, value: build() }).collect()
}

/// Looks up an entry; a leading `gallery:` or `map:` is ignored.
pub fn get(name: &str) -> Result<GalleryEntry> {
    let key = name.strip_prefix("gallery:").or_else(|| name.strip_prefix("map:")).unwrap_or(name);
    ENTRIES
        .iter()
        .find(|(n, _, _)| *n == key)
        .map(|&(name, description, build)| GalleryEntry { name, description, value: build() })
        .ok_or_else(|| Error::UnknownName {
            name: name.to_string(),
            available: names().into_iter().map(String::from).collect(),
        })
}

fn iv(a: i64, b: i64, c: i64, d: i64) -> Interval {
    Interval::new(rat(a, b), rat(c, d)).expect("fixture interval")
}

fn freq(ivs: Vec<Interval>) -> FreqSet {
    FreqSet::new(IntervalSet::normalize(ivs))
}

pub fn s8() -> FreqSet {
    freq(vec![
        iv(-4, 3, -5, 4),
        iv(-1, 1, -2, 3),
        iv(-5, 8, -1, 2),
        iv(4, 7, 2, 3),
        iv(3, 4, 1, 1),
        iv(4, 3, 11, 8),
        iv(4, 1, 32, 7),
        iv(11, 2, 6, 1),
    ])
}

pub fn journe() -> FreqSet {
    freq(vec![iv(-32, 7, -4, 1), iv(-1, 1, -4, 7), iv(4, 7, 1, 1), iv(4, 1, 32, 7)])
}

pub fn six_interval() -> FreqSet {
    freq(vec![
        iv(-4, 1, -24, 7),
        iv(-4, 3, -1, 1),
        iv(-6, 7, -2, 3),
        iv(4, 7, 2, 3),
        iv(1, 1, 8, 7),
        iv(4, 3, 2, 1),
    ])
}

pub fn s8_induced() -> PiecewiseMap {
    let left = [iv(0, 1, 1, 3), iv(3, 8, 1, 2)];
    let quad = [iv(1, 2, 4, 7), iv(11, 16, 3, 4)];
    let half = [iv(4, 7, 2, 3), iv(3, 4, 1, 1)];
    let fixed = [iv(1, 3, 3, 8), iv(2, 3, 11, 16)];
    PiecewiseMap::from_frac_branches([
        (-1, true, &left[..]),
        (2, false, &quad[..]),
        (-1, false, &half[..]),
        (0, false, &fixed[..]),
    ])
    .expect("fixture map")
}

pub fn journe_induced() -> PiecewiseMap {
    PiecewiseMap::from_frac_branches([
        (-1, true, &[iv(0, 1, 3, 7)][..]),
        (2, false, &[iv(3, 7, 4, 7)][..]),
        (-1, false, &[iv(4, 7, 1, 1)][..]),
    ])
    .expect("fixture map")
}

fn pieces(table: &[(Interval, i64, Rational)]) -> PiecewiseMap {
    PiecewiseMap::new(
        table.iter()
            .map(|(d, e, m)| AffinePiece::new(d.clone(), *e, m.clone()).expect("fixture piece"))
            .collect(),
    )
    .expect("fixture map")
}

/// `(x-1)/2 + 1` on `[0,1/2)` and `x/2` on `[1/2,1)`.
pub fn contraction_by_half() -> PiecewiseMap {
    pieces(&[(iv(0, 1, 1, 2), -1, rat(1, 2)), (iv(1, 2, 1, 1), -1, int(0))])
}

pub fn s8_v() -> PiecewiseMap {
    pieces(&[
        (iv(0, 1, 1, 4), -2, rat(3, 4)),
        (iv(1, 4, 1, 2), -1, rat(1, 2)),
        (iv(1, 2, 5, 8), 0, int(0)),
        (iv(5, 8, 3, 4), -1, rat(1, 2)),
        (iv(3, 4, 7, 8), -1, int(0)),
        (iv(7, 8, 1, 1), 0, int(0)),
    ])
}

pub fn journe_v() -> PiecewiseMap {
    pieces(&[(iv(0, 1, 1, 2), -2, rat(1, 2)), (iv(1, 2, 1, 1), -2, rat(1, 4))])
}

pub fn halving() -> PiecewiseMap {
    pieces(&[(Interval::unit(), -1, int(0))])
}

pub fn halving_switched() -> PiecewiseMap {
    pieces(&[(iv(0, 1, 2, 7), -1, int(0)), (iv(2, 7, 1, 1), 0, int(0))])
}

/// Left endpoints `z_n = (1 - 5/(2·4^n))/3` of the halving construction's exceptional set.
pub fn halving_z(n: u32) -> Rational {
    (int(1) - rat(5, 2) * pow2(-2 * n as i32)) / int(3)
}

/// `x_n = (1 - 4^{1-n})/3`.
pub fn halving_x(n: u32) -> Rational {
    (int(1) - pow2(2 - 2 * n as i32)) / int(3)
}

/// The first `count` intervals `[z_n, x_{n+1})` of the exceptional set `A`.
pub fn halving_a(count: u32) -> IntervalSet {
    IntervalSet::normalize(
        (1..=count)
            .map(|n| Interval::new(halving_z(n), halving_x(n + 1)).expect("z_n < x_{n+1}"))
            .collect(),
    )
}

/// The halving construction's wavelet set, with `A` replaced by the prefix `a`:
/// `[1/2,1) ∪ [-8/3,-2) ∪ (a - 1) ∪ ([-4,-8/3) ∖ (4a - 4))`.
pub fn halving_wavelet_set(a: &IntervalSet) -> FreqSet {
    let fixed = IntervalSet::normalize(vec![iv(1, 2, 1, 1), iv(-8, 3, -2, 1)]);
    let shifted = a.translate(&int(-1));
    let scaled = a.affine_image(2, &int(-4)).expect("bounded exponent");
    let block = IntervalSet::single(iv(-4, 1, -8, 3)).difference(&scaled);
    FreqSet::new(fixed.union(&shifted).union(&block))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frequency::verify_wavelet_set;

    #[test]
    fn wavelet_set_entries_verify() {
        for entry in list() {
            if let Some(w) = entry.wavelet_set() {
                assert!(verify_wavelet_set(w).unwrap().ok, "{} fails to tile", entry.name);
            }
        }
    }

    #[test]
    fn map_entries_classify() {
        let c = |n: &str| get(n).unwrap().unit_map().unwrap().classify();
        assert!(c("S8_induced").in_wi);
        assert!(c("journe_induced").in_wi);
        assert!(c("s8_u").in_wi1);
        assert!(c("journe_u").in_wi1);
        for n in ["s8_v", "journe_v", "halving", "identity", "halving_switched"] {
            assert!(c(n).in_wi2, "{n}");
        }
    }

    #[test]
    fn lookup() {
        assert_eq!(get("gallery:journe").unwrap().name, "journe");
        assert_eq!(get("map:halving").unwrap().name, "halving");
        match get("nope") {
            Err(Error::UnknownName { available, .. }) => assert!(available.contains(&"S8".to_string())),
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!(s8().interval_count(), 8);
        assert_eq!(journe().interval_count(), 4);
    }

    #[test]
    fn halving_sequences() {
        assert_eq!(halving_z(1), rat(1, 8));
        assert_eq!(halving_x(1), int(0));
        assert_eq!(halving_x(2), rat(1, 4));
        assert_eq!(halving_z(2), rat(9, 32));
        assert_eq!(halving_x(3), rat(5, 16));
    }
}
