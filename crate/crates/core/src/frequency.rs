//! The frequency line measured in units of π.
//!
//! A point `x` of the real frequency line is stored as `x/π`, so every set in the
//! examples has rational endpoints. Translation by `2π` becomes `+2`, and the
//! Littlewood-Paley set `E` becomes `[-2,-1) ∪ [1,2)`.

use std::f64::consts::PI;

use num::bigint::BigInt;
use num::{Integer, One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::interval::{Interval, IntervalSet};
use crate::rational::{floor_log2, int, pow2, rat, to_f64, Rational};

/// A measurable subset of the frequency line, in π-units.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FreqSet {
    pi_units: IntervalSet,
}

impl FreqSet {
    pub fn new(pi_units: IntervalSet) -> Self {
        FreqSet { pi_units }
    }

    pub fn pi_units(&self) -> &IntervalSet {
        &self.pi_units
    }

    pub fn into_inner(self) -> IntervalSet {
        self.pi_units
    }

    pub fn interval_count(&self) -> usize {
        self.pi_units.len()
    }

    /// Lebesgue measure in true units (π times the stored measure).
    pub fn lebesgue_measure(&self) -> f64 {
        PI * to_f64(&self.pi_units.measure())
    }

    fn check_away_from_zero(&self) -> Result<()> {
        for iv in &self.pi_units {
            if !(iv.lo().is_positive() || iv.hi().is_negative()) {
                return Err(Error::Domain(format!(
                    "interval {iv} contains or touches 0; wavelet sets must stay away from 0"
                )));
            }
        }
        Ok(())
    }
}

impl From<IntervalSet> for FreqSet {
    fn from(s: IntervalSet) -> Self {
        FreqSet::new(s)
    }
}

/// `E = [-2,-1) ∪ [1,2)`.
pub fn littlewood_paley() -> FreqSet {
    FreqSet::new(IntervalSet::from_pairs([(int(-2), int(-1)), (int(1), int(2))]).unwrap())
}

/// Translation reduction into `E`: returns `(x + 2j, j)` with `x + 2j ∈ E`.
pub fn tau_point(x: &Rational) -> (Rational, BigInt) {
    let n = x.floor().to_integer();
    // the integer part's parity decides which half of E the point lands in
    let base = if n.is_even() { -BigInt::from(2) } else { BigInt::one() };
    let shift = base - &n;
    let j = &shift / 2;
    (x + Rational::from_integer(shift), j)
}

/// Dilation reduction into `E`: returns `(2^k x, k)` with `2^k x ∈ E`.
pub fn delta_point(x: &Rational) -> Result<(Rational, i64)> {
    if x.is_zero() {
        return Err(Error::Domain("δ is undefined at 0".into()));
    }
    let k = if x.is_positive() {
        -floor_log2(x)
    } else {
        // negative half is (-2, -1] in absolute value terms: |2^k x| ∈ (1, 2]
        let a = -x;
        let f = floor_log2(&a);
        if a == pow2_i64(f) {
            1 - f
        } else {
            -f
        }
    };
    let kk = i32::try_from(k).map_err(|_| Error::ExponentOverflow(k))?;
    Ok((pow2(kk) * x, k))
}

fn pow2_i64(k: i64) -> Rational {
    pow2(i32::try_from(k).expect("dyadic scale out of range"))
}

fn half() -> Rational {
    rat(1, 2)
}

/// `ξ : E -> [0,1)`: `x/2` on `[1,2)`, `x/2 + 1` on `[-2,-1)`.
pub fn xi(s: &IntervalSet) -> Result<IntervalSet> {
    let e = littlewood_paley();
    if !s.is_subset(e.pi_units()) {
        return Err(Error::Domain(format!("{s} is not contained in E")));
    }
    let neg = s.intersect(&IntervalSet::from_pairs([(int(-2), int(-1))])?);
    let pos = s.intersect(&IntervalSet::from_pairs([(int(1), int(2))])?);
    Ok(neg.affine_image(-1, &int(1))?.union(&pos.affine_image(-1, &int(0))?))
}

/// Inverse of [`xi`]: `2y - 2` on `[0,1/2)`, `2y` on `[1/2,1)`.
pub fn xi_inv(s: &IntervalSet) -> Result<IntervalSet> {
    if !s.is_subset(&IntervalSet::unit()) {
        return Err(Error::Domain(format!("{s} is not contained in [0,1)")));
    }
    let left = s.intersect(&IntervalSet::from_pairs([(int(0), half())])?);
    let right = s.intersect(&IntervalSet::from_pairs([(half(), int(1))])?);
    Ok(left.affine_image(1, &int(-2))?.union(&right.affine_image(1, &int(0))?))
}

/// Outcome of checking the translation and dilation tiling conditions.
///
/// Witnesses are reported in reduced coordinates: `[0,2)` for translation and `E` for
/// dilation. Defects are the total gap plus overlap measure of each reduction, in π-units.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TilingCertificate {
    pub ok: bool,
    pub translation_witness: Option<FreqSet>,
    pub dilation_witness: Option<FreqSet>,
    #[serde(with = "crate::rational::serde_rational")]
    pub translation_defect: Rational,
    #[serde(with = "crate::rational::serde_rational")]
    pub dilation_defect: Rational,
}

impl TilingCertificate {
    /// The larger of the two defects.
    pub fn defect(&self) -> Rational {
        (&self.translation_defect).max(&self.dilation_defect).clone()
    }
}

struct Reduction {
    witness: Option<FreqSet>,
    defect: Rational,
}

/// Compares a family of reduced fragments with the target it should tile exactly once.
fn check_cover(mut fragments: Vec<Interval>, target: &IntervalSet) -> Reduction {
    fragments.sort_by(crate::interval::cmp_intervals);
    let mut first_overlap = None;
    let mut reach: Option<Rational> = None;
    for f in &fragments {
        if let Some(r) = &reach {
            if f.lo() < r && first_overlap.is_none() {
                let hi = r.min(f.hi()).clone();
                first_overlap = Some(Interval::new(f.lo().clone(), hi).unwrap());
            }
        }
        if reach.as_ref().is_none_or(|r| f.hi() > r) {
            reach = Some(f.hi().clone());
        }
    }
    let total: Rational = fragments.iter().map(Interval::len).sum();
    let covered = IntervalSet::normalize(fragments);
    let overlap = total - covered.measure();
    let gap = target.difference(&covered);
    let stray = covered.difference(target);
    let defect = overlap + gap.measure() + stray.measure();
    let witness = first_overlap
        .map(IntervalSet::single)
        .or_else(|| gap.iter().next().cloned().map(IntervalSet::single))
        .or_else(|| stray.iter().next().cloned().map(IntervalSet::single))
        .map(FreqSet::new);
    Reduction { witness, defect }
}

/// Fragments of `w` translated into `[0,2)`, one even shift each.
fn translation_fragments(w: &IntervalSet) -> Vec<Interval> {
    let mut out = Vec::new();
    for iv in w {
        let first = iv.lo().floor().to_integer();
        let first = if first.is_even() { first } else { first - 1 };
        let mut cuts = Vec::new();
        let mut c: num::BigInt = first + 2u32;
        while Rational::from_integer(c.clone()) < *iv.hi() {
            cuts.push(Rational::from_integer(c.clone()));
            c += 2;
        }
        for frag in iv.split_at(&cuts) {
            let n = frag.lo().floor().to_integer();
            let n = if n.is_even() { n } else { n - 1 };
            out.push(frag.affine_image(0, &Rational::from_integer(-n)));
        }
    }
    out
}

/// Splits an interval lying strictly on one side of 0 into pieces `F` with
/// `F ⊂ 2^K·[1,2)` or `F ⊂ 2^K·[-2,-1)`, returning each piece with its `K`.
pub(crate) fn dyadic_fragments(iv: &Interval) -> Vec<(Interval, i64)> {
    let positive = iv.lo().is_positive();
    let (a, b) = if positive {
        (iv.lo().clone(), iv.hi().clone())
    } else {
        (-iv.hi().clone(), -iv.lo().clone())
    };
    // |x| ranges over (a, b] on the negative side and [a, b) on the positive side
    let k_lo = floor_log2(&a);
    let k_hi = floor_log2(&b);
    let mut cuts: Vec<Rational> = (k_lo + 1..=k_hi).map(pow2_i64).collect();
    if !positive {
        cuts = cuts.into_iter().rev().map(|c| -c).collect();
    }
    iv.split_at(&cuts)
        .into_iter()
        .map(|frag| {
            let k = if positive {
                floor_log2(frag.lo())
            } else {
                // |frag| = (|hi|, |lo|] ⊂ (2^K, 2^{K+1}]
                let top = -frag.lo().clone();
                let f = floor_log2(&top);
                if top == pow2_i64(f) {
                    f - 1
                } else {
                    f
                }
            };
            (frag, k)
        })
        .collect()
}

fn dilation_fragments(w: &IntervalSet) -> Result<Vec<Interval>> {
    let mut out = Vec::new();
    for iv in w {
        for (frag, k) in dyadic_fragments(iv) {
            let k = i32::try_from(-k).map_err(|_| Error::ExponentOverflow(-k))?;
            out.push(frag.affine_image(k, &Rational::zero()));
        }
    }
    Ok(out)
}

/// Checks that the 2-translates of `w` tile the line and its dyadic dilates tile the
/// punctured line, by reducing fragments into `[0,2)` and into `E` respectively.
pub fn verify_wavelet_set(w: &FreqSet) -> Result<TilingCertificate> {
    w.check_away_from_zero()?;
    let two = IntervalSet::from_pairs([(int(0), int(2))])?;
    let tr = check_cover(translation_fragments(w.pi_units()), &two);
    let dl = check_cover(dilation_fragments(w.pi_units())?, littlewood_paley().pi_units());
    Ok(TilingCertificate {
        ok: tr.defect.is_zero() && dl.defect.is_zero(),
        translation_witness: tr.witness,
        dilation_witness: dl.witness,
        translation_defect: tr.defect,
        dilation_defect: dl.defect,
    })
}

/// `d(W1, W2) = μ(W1 ∇ W2)^{1/2} + (∫_{W1 ∇ W2} dx/|x|)^{1/2}` in true (not π) units.
pub fn metric_d(w1: &FreqSet, w2: &FreqSet) -> Result<f64> {
    let sd = w1.pi_units().symdiff(w2.pi_units());
    let lambda = sd.log_integral()?;
    Ok((PI * to_f64(&sd.measure())).sqrt() + lambda.sqrt())
}

/// Convenience: `j` from [`tau_point`] as a machine integer.
pub fn tau_shift(x: &Rational) -> i64 {
    tau_point(x).1.to_i64().expect("translation index out of range")
}
