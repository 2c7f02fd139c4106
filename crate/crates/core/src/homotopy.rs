//! Continuous paths of wavelet sets ending at the Littlewood–Paley set, and the metric
//! expressed through induced isomorphisms.

use std::f64::consts::PI;

use num::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::frequency::{verify_wavelet_set, FreqSet, TilingCertificate};
use crate::interval::{Interval, IntervalSet};
use crate::rational::{int, ln_1p, rat, Rational};
use crate::scb::{combine, factorize, Factorization, ScbOptions, ScbTrace};
use crate::unit_map::{disagreement_set, induced_isomorphism, lift, PartialMap, PiecewiseMap};

pub const DEFAULT_MAX_STAGE: usize = 32;

/// The chain `v_t` from a `WI₂` map `v_0` at `t = 0` to the identity at `t = 1`.
///
/// With `V = [0,1) ∖ v_0([0,1))`, stage `n` switches `v_0` to the identity on
/// `V_n = v_0^{n-1}(V)`, leftmost points first. The parameter is proportional to the mass
/// switched so far, so `μ{v_t ≠ v_s} ≤ |t - s|`.
#[derive(Clone, Debug)]
pub struct ChainParams {
    v0: PartialMap,
    stages: Vec<IntervalSet>,
    /// Measure that is eventually switched: `1 - μ(fixed points) - μ(undefined)`.
    total: Rational,
    max_stage: usize,
}

/// One value `v_t` of the chain.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ChainValue {
    pub map: PartialMap,
    pub stage: usize,
    /// Set when `t` asked for more than `max_stage` stages; the value then holds all
    /// completed stages.
    pub clamped: bool,
}

impl ChainParams {
    pub fn new(v0: PartialMap, max_stage: usize) -> Result<Self> {
        let map = &v0.map;
        if !map.is_injective() {
            return Err(Error::NotInjective);
        }
        let dom = map.domain();
        let fixed: IntervalSet =
            map.pieces().iter().filter(|p| p.exponent() == 0 && p.offset().is_zero()).map(|p| p.dom().clone()).collect();
        let total = int(1) - fixed.measure() - v0.undefined.measure();
        let mut stages = Vec::with_capacity(max_stage);
        let mut cur = dom.difference(&map.range());
        for _ in 0..max_stage {
            if cur.is_empty() {
                break;
            }
            let next = map.image(&cur);
            stages.push(cur);
            cur = next;
        }
        Ok(ChainParams { v0, stages, total, max_stage })
    }

    pub fn from_map(v0: PiecewiseMap) -> Result<Self> {
        Self::new(PartialMap::total(v0), DEFAULT_MAX_STAGE)
    }

    pub fn v0(&self) -> &PartialMap {
        &self.v0
    }

    pub fn stages(&self) -> &[IntervalSet] {
        &self.stages
    }

    pub fn max_stage(&self) -> usize {
        self.max_stage
    }
}

/// Leftmost part of `s` with measure `mass`.
fn leftmost(s: &IntervalSet, mass: &Rational) -> IntervalSet {
    let mut left = mass.clone();
    let mut out = Vec::new();
    for iv in s {
        if left.is_zero() {
            break;
        }
        if iv.len() <= left {
            left -= iv.len();
            out.push(iv.clone());
        } else {
            out.push(Interval::new(iv.lo().clone(), iv.lo() + &left).expect("positive mass"));
            left = Rational::zero();
        }
    }
    IntervalSet::normalize(out)
}

pub fn chain_v(params: &ChainParams, t: &Rational) -> Result<ChainValue> {
    if *t < Rational::zero() || *t > Rational::one() {
        return Err(Error::Domain(format!("chain parameter {t} outside [0,1]")));
    }
    if t.is_one() {
        return Ok(ChainValue { map: PartialMap::total(PiecewiseMap::identity()), stage: 0, clamped: false });
    }
    let mut target = t * &params.total;
    let mut switched = IntervalSet::empty();
    let mut stage = 0;
    let mut clamped = true;
    for (n, vn) in params.stages.iter().enumerate() {
        let mass = vn.measure();
        stage = n + 1;
        if target < mass {
            switched = switched.union(&leftmost(vn, &target));
            clamped = false;
            break;
        }
        target -= mass;
        switched = switched.union(vn);
    }
    if clamped && (target.is_zero() || params.stages.len() < params.max_stage) {
        clamped = false;
    }
    let v0 = &params.v0.map;
    let rest = v0.domain().difference(&switched);
    let map = PiecewiseMap::identity().restrict(&switched).join(&v0.restrict(&rest))?;
    let undefined = IntervalSet::unit().difference(&map.domain());
    let tol = params.v0.tol.clone().max(undefined.measure());
    Ok(ChainValue { map: PartialMap { map, undefined, tol }, stage, clamped })
}

/// A path `t ↦ W_t` with `W_0 = W` and `W_1` the Littlewood–Paley set, built from a fixed
/// factorization `h̃_W = u◇v` as `W_t ↔ u◇v_t`.
#[derive(Clone, Debug)]
pub struct WaveletPath {
    start: FreqSet,
    h: PiecewiseMap,
    factors: Factorization,
    chain: ChainParams,
    tol: Rational,
}

/// One sample of a [`WaveletPath`].
#[derive(Clone, Debug, Serialize)]
pub struct PathPoint {
    #[serde(with = "crate::rational::serde_rational")]
    pub t: Rational,
    pub v_t: ChainValue,
    pub h_t: PartialMap,
    pub trace: ScbTrace,
    pub w_t: FreqSet,
    pub certificate: TilingCertificate,
}

impl WaveletPath {
    pub fn new(w: &FreqSet, tol: &Rational) -> Result<Self> {
        Self::with_max_stage(w, tol, DEFAULT_MAX_STAGE)
    }

    pub fn with_max_stage(w: &FreqSet, tol: &Rational, max_stage: usize) -> Result<Self> {
        let h = induced_isomorphism(w)?;
        let factors = factorize(&h, tol)?;
        let chain = ChainParams::new(factors.v.clone(), max_stage)?;
        Ok(WaveletPath { start: w.clone(), h, factors, chain, tol: tol.clone() })
    }

    pub fn start(&self) -> &FreqSet {
        &self.start
    }

    pub fn isomorphism(&self) -> &PiecewiseMap {
        &self.h
    }

    pub fn factors(&self) -> &Factorization {
        &self.factors
    }

    pub fn chain(&self) -> &ChainParams {
        &self.chain
    }

    pub fn at(&self, t: &Rational) -> Result<PathPoint> {
        let v_t = chain_v(&self.chain, t)?;
        let opts = ScbOptions::with_tol(&self.tol / int(2));
        let (h_t, trace) = combine(&self.factors.u, &v_t.map.map, &opts)?;
        let w_t = lift(&h_t.map, &h_t.map.domain())?;
        let certificate = verify_wavelet_set(&w_t)?;
        Ok(PathPoint { t: t.clone(), v_t, h_t, trace, w_t, certificate })
    }
}

/// `W_t` for the path from `w` to the Littlewood–Paley set.
pub fn path_wavelet_set(w: &FreqSet, t: &Rational, tol: &Rational) -> Result<FreqSet> {
    Ok(WaveletPath::new(w, tol)?.at(t)?.w_t)
}

/// `∫_s dν` with density `1/(1-x)` on `[0,1/2)` and `1/x` on `[1/2,1)`.
pub fn nu_measure(s: &IntervalSet) -> Result<f64> {
    if !s.is_subset(&IntervalSet::unit()) {
        return Err(Error::Domain(format!("{s} is not contained in [0,1)")));
    }
    let half = rat(1, 2);
    Ok(s.split_at(std::slice::from_ref(&half))
        .iter()
        .map(|iv| {
            if *iv.lo() >= half {
                ln_1p(&(iv.len() / iv.lo()))
            } else {
                ln_1p(&(iv.len() / (int(1) - iv.hi())))
            }
        })
        .sum())
}

/// The wavelet-set distance `d(W₁, W₂)` computed from the induced isomorphisms:
/// `sqrt(4π μ(ω')) + sqrt(2 ν(ω))`, where `ω` is where the maps differ and `ω'` is where
/// their inverses differ.
pub fn metric_via_isomorphisms(h1: &PiecewiseMap, h2: &PiecewiseMap) -> Result<f64> {
    for h in [h1, h2] {
        if !h.classify().in_wi {
            return Err(Error::Classification("map is not wavelet induced".into()));
        }
    }
    let omega = disagreement_set(h1, h2);
    let omega_inv = disagreement_set(&h1.invert()?, &h2.invert()?);
    let mu = crate::rational::to_f64(&omega_inv.measure());
    Ok((4.0 * PI * mu).sqrt() + (2.0 * nu_measure(&omega)?).sqrt())
}
