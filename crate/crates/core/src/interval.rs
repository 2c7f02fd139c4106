//! Half-open rational intervals and canonical finite unions of them.

use std::cmp::Ordering;
use std::fmt;

use num::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rational::{check_exponent, format_rational, ln_1p, parse_rational, pow2, Rational};

/// The half-open interval `[lo, hi)` with `lo < hi`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Interval {
    lo: Rational,
    hi: Rational,
}

impl Interval {
    pub fn new(lo: Rational, hi: Rational) -> Result<Self> {
        if lo < hi {
            Ok(Interval { lo, hi })
        } else {
            Err(Error::MalformedInterval { lo: Box::new(lo), hi: Box::new(hi) })
        }
    }

    /// `[0, 1)`.
    pub fn unit() -> Self {
        Interval { lo: Rational::zero(), hi: Rational::one() }
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn len(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x < &self.hi
    }

    pub fn contains_interval(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        let lo = (&self.lo).max(&other.lo).clone();
        let hi = (&self.hi).min(&other.hi).clone();
        (lo < hi).then_some(Interval { lo, hi })
    }

    /// Image under the increasing map `x -> 2^e x + m`.
    pub fn affine_image(&self, e: i32, m: &Rational) -> Interval {
        let s = pow2(e);
        Interval { lo: &s * &self.lo + m, hi: &s * &self.hi + m }
    }

    /// Cuts the interval at every listed point lying strictly inside it.
    /// `cuts` must be sorted ascending.
    pub fn split_at<'a>(&self, cuts: impl IntoIterator<Item = &'a Rational>) -> Vec<Interval> {
        let mut out = Vec::new();
        let mut lo = self.lo.clone();
        for c in cuts {
            if *c > lo && *c < self.hi {
                out.push(Interval { lo: lo.clone(), hi: c.clone() });
                lo = c.clone();
            }
        }
        out.push(Interval { lo, hi: self.hi.clone() });
        out
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {})", self.lo, self.hi)
    }
}

impl Serialize for Interval {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [format_rational(&self.lo), format_rational(&self.hi)].serialize(s)
    }
}

impl<'de> Deserialize<'de> for Interval {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let [lo, hi] = <[String; 2]>::deserialize(d)?;
        let lo = parse_rational(&lo).map_err(D::Error::custom)?;
        let hi = parse_rational(&hi).map_err(D::Error::custom)?;
        Interval::new(lo, hi).map_err(D::Error::custom)
    }
}

/// A finite disjoint union of half-open intervals kept sorted and maximally merged,
/// so equal point sets have identical representations.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct IntervalSet {
    intervals: Vec<Interval>,
}

impl IntervalSet {
    pub fn empty() -> Self {
        IntervalSet::default()
    }

    pub fn unit() -> Self {
        IntervalSet { intervals: vec![Interval::unit()] }
    }

    pub fn single(iv: Interval) -> Self {
        IntervalSet { intervals: vec![iv] }
    }

    /// Canonicalizes an arbitrary list of intervals.
    pub fn normalize(mut raw: Vec<Interval>) -> Self {
        raw.sort_by(|a, b| a.lo.cmp(&b.lo));
        let mut out: Vec<Interval> = Vec::with_capacity(raw.len());
        for iv in raw {
            match out.last_mut() {
                Some(last) if iv.lo <= last.hi => {
                    if iv.hi > last.hi {
                        last.hi = iv.hi;
                    }
                }
                _ => out.push(iv),
            }
        }
        IntervalSet { intervals: out }
    }

    /// Builds a set from `(lo, hi)` pairs, rejecting malformed intervals.
    pub fn from_pairs<I>(pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Rational, Rational)>,
    {
        let raw = pairs
            .into_iter()
            .map(|(lo, hi)| Interval::new(lo, hi))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::normalize(raw))
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Interval> {
        self.intervals.iter()
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn min(&self) -> Option<&Rational> {
        self.intervals.first().map(|iv| &iv.lo)
    }

    pub fn max(&self) -> Option<&Rational> {
        self.intervals.last().map(|iv| &iv.hi)
    }

    pub fn contains(&self, x: &Rational) -> bool {
        let idx = self.intervals.partition_point(|iv| iv.hi <= *x);
        self.intervals.get(idx).is_some_and(|iv| iv.contains(x))
    }

    pub fn union(&self, other: &IntervalSet) -> IntervalSet {
        let mut raw = self.intervals.clone();
        raw.extend(other.intervals.iter().cloned());
        Self::normalize(raw)
    }

    pub fn intersect(&self, other: &IntervalSet) -> IntervalSet {
        let (a, b) = (&self.intervals, &other.intervals);
        let (mut i, mut j) = (0, 0);
        let mut out = Vec::new();
        while i < a.len() && j < b.len() {
            if let Some(iv) = a[i].intersect(&b[j]) {
                out.push(iv);
            }
            if a[i].hi < b[j].hi {
                i += 1;
            } else {
                j += 1;
            }
        }
        // pieces of two canonical sets never touch, so no merge pass is needed
        IntervalSet { intervals: out }
    }

    pub fn intersect_interval(&self, iv: &Interval) -> IntervalSet {
        self.intersect(&IntervalSet::single(iv.clone()))
    }

    pub fn difference(&self, other: &IntervalSet) -> IntervalSet {
        let mut out = Vec::new();
        let b = &other.intervals;
        let mut j = 0;
        for iv in &self.intervals {
            let mut lo = iv.lo.clone();
            while j < b.len() && b[j].hi <= lo {
                j += 1;
            }
            let mut k = j;
            while k < b.len() && b[k].lo < iv.hi {
                if b[k].lo > lo {
                    out.push(Interval { lo: lo.clone(), hi: b[k].lo.clone() });
                }
                if b[k].hi > lo {
                    lo = b[k].hi.clone();
                }
                if lo >= iv.hi {
                    break;
                }
                k += 1;
            }
            if lo < iv.hi {
                out.push(Interval { lo, hi: iv.hi.clone() });
            }
        }
        IntervalSet { intervals: out }
    }

    pub fn symdiff(&self, other: &IntervalSet) -> IntervalSet {
        self.difference(other).union(&other.difference(self))
    }

    pub fn is_subset(&self, other: &IntervalSet) -> bool {
        self.difference(other).is_empty()
    }

    pub fn is_disjoint(&self, other: &IntervalSet) -> bool {
        self.intersect(other).is_empty()
    }

    /// Lebesgue measure, exact.
    pub fn measure(&self) -> Rational {
        self.intervals.iter().map(Interval::len).fold(Rational::zero(), |acc, l| acc + l)
    }

    /// `{2^e x + m : x in self}`; its measure is `2^e` times the original.
    pub fn affine_image(&self, e: i64, m: &Rational) -> Result<IntervalSet> {
        let e = check_exponent(e)?;
        Ok(IntervalSet {
            intervals: self.intervals.iter().map(|iv| iv.affine_image(e, m)).collect(),
        })
    }

    pub fn translate(&self, m: &Rational) -> IntervalSet {
        IntervalSet {
            intervals: self.intervals.iter().map(|iv| iv.affine_image(0, m)).collect(),
        }
    }

    /// `∫ dx/|x|` over the set, as a float. Every interval must lie strictly on one side of 0.
    pub fn log_integral(&self) -> Result<f64> {
        let mut total = 0.0;
        for iv in &self.intervals {
            if iv.lo.is_positive() {
                total += ln_1p(&(iv.len() / &iv.lo));
            } else if iv.hi.is_negative() {
                total += ln_1p(&(iv.len() / -&iv.hi));
            } else {
                return Err(Error::Domain(format!("interval {iv} touches 0 in a 1/|x| integral")));
            }
        }
        Ok(total)
    }

    /// All fragments obtained by cutting at the given sorted points.
    pub fn split_at(&self, cuts: &[Rational]) -> Vec<Interval> {
        let mut out = Vec::new();
        for iv in &self.intervals {
            let start = cuts.partition_point(|c| *c <= iv.lo);
            let end = cuts.partition_point(|c| *c < iv.hi);
            out.extend(iv.split_at(&cuts[start..end]));
        }
        out
    }

    /// Endpoints in ascending order.
    pub fn endpoints(&self) -> Vec<Rational> {
        self.intervals.iter().flat_map(|iv| [iv.lo.clone(), iv.hi.clone()]).collect()
    }
}

impl FromIterator<Interval> for IntervalSet {
    fn from_iter<T: IntoIterator<Item = Interval>>(iter: T) -> Self {
        IntervalSet::normalize(iter.into_iter().collect())
    }
}

impl<'a> IntoIterator for &'a IntervalSet {
    type Item = &'a Interval;
    type IntoIter = std::slice::Iter<'a, Interval>;
    fn into_iter(self) -> Self::IntoIter {
        self.intervals.iter()
    }
}

impl fmt::Display for IntervalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.intervals.is_empty() {
            return write!(f, "∅");
        }
        for (i, iv) in self.intervals.iter().enumerate() {
            if i > 0 {
                write!(f, " ∪ ")?;
            }
            write!(f, "{iv}")?;
        }
        Ok(())
    }
}

impl Serialize for IntervalSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.intervals.serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntervalSet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Ok(IntervalSet::normalize(Vec::<Interval>::deserialize(d)?))
    }
}

/// Orders intervals by left endpoint, then right endpoint.
pub fn cmp_intervals(a: &Interval, b: &Interval) -> Ordering {
    a.lo.cmp(&b.lo).then_with(|| a.hi.cmp(&b.hi))
}
