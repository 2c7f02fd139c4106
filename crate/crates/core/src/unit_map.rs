//! Piecewise dyadic-affine maps of `[0,1)` and their correspondence with wavelet sets.

use std::fmt;

use num::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::frequency::{dyadic_fragments, verify_wavelet_set, FreqSet};
use crate::interval::{Interval, IntervalSet};
use crate::rational::{check_exponent, int, is_integer, pow2, rat, Rational};

/// `x ↦ 2^e x + m` on `dom`, with both `dom` and its image inside `[0,1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawPiece", into = "RawPiece")]
pub struct AffinePiece {
    dom: Interval,
    e: i32,
    m: Rational,
}

#[derive(Serialize, Deserialize)]
struct RawPiece {
    dom: Interval,
    e: i64,
    #[serde(with = "crate::rational::serde_rational")]
    m: Rational,
}

impl TryFrom<RawPiece> for AffinePiece {
    type Error = Error;
    fn try_from(raw: RawPiece) -> Result<Self> {
        AffinePiece::new(raw.dom, raw.e, raw.m)
    }
}

impl From<AffinePiece> for RawPiece {
    fn from(p: AffinePiece) -> Self {
        RawPiece { dom: p.dom, e: p.e as i64, m: p.m }
    }
}

impl AffinePiece {
    pub fn new(dom: Interval, e: i64, m: Rational) -> Result<Self> {
        let e = check_exponent(e)?;
        let unit = Interval::unit();
        if !unit.contains_interval(&dom) {
            return Err(Error::Domain(format!("piece domain {dom} leaves [0,1)")));
        }
        let img = dom.affine_image(e, &m);
        if !unit.contains_interval(&img) {
            return Err(Error::Domain(format!("piece image {img} of {dom} leaves [0,1)")));
        }
        Ok(AffinePiece { dom, e, m })
    }

    pub fn dom(&self) -> &Interval {
        &self.dom
    }

    pub fn exponent(&self) -> i32 {
        self.e
    }

    pub fn offset(&self) -> &Rational {
        &self.m
    }

    pub fn apply(&self, x: &Rational) -> Rational {
        pow2(self.e) * x + &self.m
    }

    pub fn image(&self) -> Interval {
        self.dom.affine_image(self.e, &self.m)
    }

    pub fn same_action(&self, other: &AffinePiece) -> bool {
        self.e == other.e && self.m == other.m
    }

    fn restricted(&self, dom: Interval) -> AffinePiece {
        AffinePiece { dom, e: self.e, m: self.m.clone() }
    }

    /// The inverse branch, defined on this piece's image.
    pub fn inverse(&self) -> AffinePiece {
        let m = -(pow2(-self.e) * &self.m);
        AffinePiece { dom: self.image(), e: -self.e, m }
    }

    fn is_identity(&self) -> bool {
        self.e == 0 && self.m.is_zero()
    }
}

impl fmt::Display for AffinePiece {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "2^{}·x + {} on {}", self.e, self.m, self.dom)
    }
}

/// Membership of a map in the three classes of wavelet-induced maps.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub in_wi: bool,
    pub in_wi1: bool,
    pub in_wi2: bool,
}

/// A finite family of affine pieces with pairwise disjoint domains.
///
/// Kept canonical: sorted by domain, and adjacent pieces with the same action merged.
/// The domain need not be all of `[0,1)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<AffinePiece>", into = "Vec<AffinePiece>")]
pub struct PiecewiseMap {
    pieces: Vec<AffinePiece>,
}

impl TryFrom<Vec<AffinePiece>> for PiecewiseMap {
    type Error = Error;
    fn try_from(pieces: Vec<AffinePiece>) -> Result<Self> {
        PiecewiseMap::new(pieces)
    }
}

impl From<PiecewiseMap> for Vec<AffinePiece> {
    fn from(m: PiecewiseMap) -> Self {
        m.pieces
    }
}

fn half() -> Rational {
    rat(1, 2)
}

impl PiecewiseMap {
    pub fn new(mut pieces: Vec<AffinePiece>) -> Result<Self> {
        pieces.sort_by(|a, b| a.dom.lo().cmp(b.dom.lo()));
        for w in pieces.windows(2) {
            if w[0].dom.hi() > w[1].dom.lo() {
                return Err(Error::Invalid(format!(
                    "piece domains {} and {} overlap",
                    w[0].dom, w[1].dom
                )));
            }
        }
        Ok(Self::from_sorted(pieces))
    }

    fn from_sorted(pieces: Vec<AffinePiece>) -> Self {
        let mut out: Vec<AffinePiece> = Vec::with_capacity(pieces.len());
        for p in pieces {
            match out.last_mut() {
                Some(last) if last.dom.hi() == p.dom.lo() && last.same_action(&p) => {
                    last.dom = Interval::new(last.dom.lo().clone(), p.dom.hi().clone()).unwrap();
                }
                _ => out.push(p),
            }
        }
        PiecewiseMap { pieces: out }
    }

    /// Builds a map from pieces whose domains are known to be disjoint.
    fn from_disjoint(pieces: Vec<AffinePiece>) -> Self {
        let mut pieces = pieces;
        pieces.sort_by(|a, b| a.dom.lo().cmp(b.dom.lo()));
        Self::from_sorted(pieces)
    }

    pub fn identity() -> Self {
        PiecewiseMap { pieces: vec![AffinePiece::new(Interval::unit(), 0, int(0)).unwrap()] }
    }

    /// `x ↦ 2^e x + m` on all of `[0,1)`.
    pub fn affine(e: i64, m: Rational) -> Result<Self> {
        Ok(PiecewiseMap { pieces: vec![AffinePiece::new(Interval::unit(), e, m)?] })
    }

    /// Builds a map out of fractional-part branches `x ↦ frac(2^k (x - s))`, `s ∈ {0, 1}`,
    /// splitting each domain wherever the branch wraps around an integer.
    pub fn from_frac_branches<'a, I>(branches: I) -> Result<Self>
    where
        I: IntoIterator<Item = (i64, bool, &'a [Interval])>,
    {
        let mut pieces = Vec::new();
        for (k, shifted, doms) in branches {
            let k32 = check_exponent(k)?;
            let scale = pow2(k32);
            let base = if shifted { -scale.clone() } else { Rational::zero() };
            for dom in doms {
                let ylo = &scale * dom.lo() + &base;
                let yhi = &scale * dom.hi() + &base;
                let first: num::BigInt = ylo.floor().to_integer() + 1u32;
                let mut cuts = Vec::new();
                let mut n = first;
                while Rational::from_integer(n.clone()) < yhi {
                    // value y = n at x = (n - base) / scale
                    cuts.push((Rational::from_integer(n.clone()) - &base) / &scale);
                    n += 1;
                }
                for frag in dom.split_at(&cuts) {
                    let y = &scale * frag.lo() + &base;
                    let m = &base - y.floor();
                    pieces.push(AffinePiece::new(frag, k, m)?);
                }
            }
        }
        PiecewiseMap::new(pieces)
    }

    pub fn pieces(&self) -> &[AffinePiece] {
        &self.pieces
    }

    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty()
    }

    pub fn domain(&self) -> IntervalSet {
        self.pieces.iter().map(|p| p.dom.clone()).collect()
    }

    pub fn range(&self) -> IntervalSet {
        self.pieces.iter().map(AffinePiece::image).collect()
    }

    pub fn is_total(&self) -> bool {
        self.domain() == IntervalSet::unit()
    }

    pub fn is_identity(&self) -> bool {
        self.pieces.len() == 1 && self.pieces[0].is_identity() && self.pieces[0].dom == Interval::unit()
    }

    fn piece_at(&self, x: &Rational) -> Option<&AffinePiece> {
        let idx = self.pieces.partition_point(|p| p.dom.hi() <= x);
        self.pieces.get(idx).filter(|p| p.dom.contains(x))
    }

    pub fn eval(&self, x: &Rational) -> Result<Rational> {
        self.piece_at(x).map(|p| p.apply(x)).ok_or_else(|| Error::UndefinedPoint(Box::new(x.clone())))
    }

    /// Pieces cut at every endpoint of `s` and at `1/2`, kept only where they meet `s`.
    pub fn restrict(&self, s: &IntervalSet) -> PiecewiseMap {
        let mut out = Vec::new();
        for p in &self.pieces {
            for iv in s.intersect_interval(&p.dom).iter() {
                out.push(p.restricted(iv.clone()));
            }
        }
        Self::from_disjoint(out)
    }

    pub fn image(&self, s: &IntervalSet) -> IntervalSet {
        let mut out = Vec::new();
        for p in &self.pieces {
            for iv in s.intersect_interval(&p.dom).iter() {
                out.push(iv.affine_image(p.e, &p.m));
            }
        }
        IntervalSet::normalize(out)
    }

    pub fn preimage(&self, s: &IntervalSet) -> IntervalSet {
        let mut out = Vec::new();
        for p in &self.pieces {
            let inv = p.inverse();
            for iv in s.intersect_interval(&inv.dom).iter() {
                out.push(iv.affine_image(inv.e, &inv.m));
            }
        }
        IntervalSet::normalize(out)
    }

    /// Whether the images of the pieces are pairwise disjoint.
    pub fn is_injective(&self) -> bool {
        let mut imgs: Vec<Interval> = self.pieces.iter().map(AffinePiece::image).collect();
        imgs.sort_by(crate::interval::cmp_intervals);
        imgs.windows(2).all(|w| w[0].hi() <= w[1].lo())
    }

    pub fn invert(&self) -> Result<PiecewiseMap> {
        if !self.is_injective() {
            return Err(Error::NotInjective);
        }
        Ok(Self::from_disjoint(self.pieces.iter().map(AffinePiece::inverse).collect()))
    }

    /// `f ∘ g`, defined where `g` is defined and lands in the domain of `f`.
    pub fn compose(f: &PiecewiseMap, g: &PiecewiseMap) -> Result<PiecewiseMap> {
        let mut out = Vec::new();
        for pg in &g.pieces {
            let img = pg.image();
            let inv = pg.inverse();
            for pf in &f.pieces {
                if let Some(hit) = img.intersect(&pf.dom) {
                    let dom = hit.affine_image(inv.e, &inv.m);
                    let e = pf.e as i64 + pg.e as i64;
                    let m = pow2(pf.e) * &pg.m + &pf.m;
                    out.push(AffinePiece::new(dom, e, m)?);
                }
            }
        }
        Ok(Self::from_disjoint(out))
    }

    /// Disjoint union of two maps with disjoint domains.
    pub fn join(&self, other: &PiecewiseMap) -> Result<PiecewiseMap> {
        let mut pieces = self.pieces.clone();
        pieces.extend(other.pieces.iter().cloned());
        PiecewiseMap::new(pieces)
    }

    /// Pieces split at `1/2`, so each lies in a single half of `[0,1)`.
    fn halves(&self) -> Vec<AffinePiece> {
        let h = [half()];
        self.pieces
            .iter()
            .flat_map(|p| p.dom.split_at(&h).into_iter().map(move |d| p.restricted(d)))
            .collect()
    }

    pub fn classify(&self) -> Classification {
        if self.pieces.is_empty() || !self.is_total() || !self.is_injective() {
            return Classification::default();
        }
        let halves = self.halves();
        let bijective = self.range() == IntervalSet::unit();
        let in_wi = bijective && halves.iter().all(wi_congruence);
        let in_wi1 = halves.iter().all(wi1_shape);
        let in_wi2 = halves.iter().all(wi2_shape);
        Classification { in_wi, in_wi1, in_wi2 }
    }

    /// Domain of the pieces with exponent `<= -1`.
    pub fn contracting_domain(&self) -> IntervalSet {
        self.pieces.iter().filter(|p| p.e <= -1).map(|p| p.dom.clone()).collect()
    }
}

impl fmt::Display for PiecewiseMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.pieces.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

fn on_right_half(p: &AffinePiece) -> bool {
    *p.dom.lo() >= half()
}

/// `frac(2^e x)` on the right half means `m ∈ ℤ`; `frac(2^e (x-1))` on the left half
/// means `m + 2^e ∈ ℤ`.
fn wi_congruence(p: &AffinePiece) -> bool {
    if on_right_half(p) {
        is_integer(&p.m)
    } else {
        is_integer(&(&p.m + pow2(p.e)))
    }
}

/// `x / 2^k` on the right half, `(x-1)/2^k + 1` on the left half, `k >= 1`.
pub(crate) fn wi1_shape(p: &AffinePiece) -> bool {
    if p.e > -1 {
        return false;
    }
    if on_right_half(p) {
        p.m.is_zero()
    } else {
        p.m == Rational::one() - pow2(p.e)
    }
}

/// `(x + l) / 2^k` with `k, l >= 0`.
pub(crate) fn wi2_shape(p: &AffinePiece) -> bool {
    if p.e > 0 {
        return false;
    }
    let l = pow2(-p.e) * &p.m;
    is_integer(&l) && !l.is_negative()
}

/// A map that is known only off an explicitly tracked undefined set.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PartialMap {
    pub map: PiecewiseMap,
    pub undefined: IntervalSet,
    #[serde(with = "crate::rational::serde_rational")]
    pub tol: Rational,
}

impl PartialMap {
    pub fn total(map: PiecewiseMap) -> Self {
        let undefined = IntervalSet::unit().difference(&map.domain());
        let tol = undefined.measure();
        PartialMap { map, undefined, tol }
    }

    /// Wraps `map`, marking the rest of `[0,1)` undefined; `tol` is raised to the actual
    /// undefined measure if needed so that the bound always holds.
    pub fn with_tol(map: PiecewiseMap, tol: Rational) -> Self {
        let undefined = IntervalSet::unit().difference(&map.domain());
        let tol = tol.max(undefined.measure());
        PartialMap { map, undefined, tol }
    }

    pub fn is_total(&self) -> bool {
        self.undefined.is_empty()
    }
}

/// Where the two maps are both defined and agree; isolated crossing points are dropped.
pub fn agreement_set(f: &PiecewiseMap, g: &PiecewiseMap) -> IntervalSet {
    let mut out = Vec::new();
    let (a, b) = (f.pieces(), g.pieces());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        if let Some(iv) = a[i].dom.intersect(&b[j].dom) {
            if a[i].same_action(&b[j]) {
                out.push(iv);
            }
        }
        if a[i].dom.hi() < b[j].dom.hi() {
            i += 1;
        } else {
            j += 1;
        }
    }
    IntervalSet::normalize(out)
}

/// Points where the maps differ, counting points where only one of them is defined.
pub fn disagreement_set(f: &PiecewiseMap, g: &PiecewiseMap) -> IntervalSet {
    f.domain().union(&g.domain()).difference(&agreement_set(f, g))
}

/// Pushes `s ⊂ [0,1)` through `ξ⁻¹` and then through the inverse dilation reduction of the
/// wavelet set attached to `h`: on a piece with exponent `e`, `x ↦ 2^e ξ⁻¹(x)`.
pub fn lift(h: &PiecewiseMap, s: &IntervalSet) -> Result<FreqSet> {
    let mut out = Vec::new();
    for p in h.halves() {
        for iv in s.intersect_interval(&p.dom).iter() {
            // ξ⁻¹ is 2y - 2 on the left half and 2y on the right half
            let shift = if on_right_half(&p) { int(0) } else { int(-2) };
            let freq = iv.affine_image(1, &shift);
            out.push(freq.affine_image(p.e, &Rational::zero()));
        }
    }
    Ok(FreqSet::new(IntervalSet::normalize(out)))
}

/// The wavelet-induced isomorphism `ξ ∘ τ|_W ∘ (δ|_W)⁻¹ ∘ ξ⁻¹` of a wavelet set.
pub fn induced_isomorphism(w: &FreqSet) -> Result<PiecewiseMap> {
    if !verify_wavelet_set(w)?.ok {
        return Err(Error::NotWaveletSet);
    }
    let mut pieces = Vec::new();
    for iv in w.pi_units() {
        for (frag, k) in dyadic_fragments(iv) {
            let integer_cuts: Vec<Rational> = {
                let mut c: num::BigInt = frag.lo().floor().to_integer() + 1u32;
                let mut v = Vec::new();
                while Rational::from_integer(c.clone()) < *frag.hi() {
                    v.push(Rational::from_integer(c.clone()));
                    c += 1;
                }
                v
            };
            for piece in frag.split_at(&integer_cuts) {
                pieces.push(induced_piece(&piece, k)?);
            }
        }
    }
    let map = PiecewiseMap::new(pieces)?;
    debug_assert!(map.classify().in_wi);
    Ok(map)
}

/// One affine piece of the induced map from a fragment `F ⊂ W` lying in a single dyadic
/// shell `2^k E` and in a single unit cell `[n, n+1)`.
fn induced_piece(frag: &Interval, k: i64) -> Result<AffinePiece> {
    let k32 = check_exponent(k)?;
    let negative = frag.hi() <= &Rational::zero();
    // D = ξ(δ(F)); on D: x ↦ 2^k x + 2^{k-1} c1 + j + c2
    let reduced = frag.affine_image(-k32, &Rational::zero());
    let (dom, c1) = if negative {
        (reduced.affine_image(-1, &int(1)), int(-2))
    } else {
        (reduced.affine_image(-1, &int(0)), int(0))
    };
    let n = frag.lo().floor().to_integer();
    let even = n.clone() % 2 == num::BigInt::zero();
    let shift = if even { num::BigInt::from(-2) - &n } else { num::BigInt::one() - &n };
    let j = Rational::from_integer(shift / 2);
    let c2 = if even { int(1) } else { int(0) };
    let m = pow2(k32) * c1 / int(2) + j + c2;
    AffinePiece::new(dom, k, m)
}

/// The wavelet set `ψ(E)` whose induced isomorphism is `h`.
pub fn wavelet_set_from_isomorphism(h: &PiecewiseMap) -> Result<FreqSet> {
    let c = h.classify();
    if !c.in_wi {
        return Err(Error::Classification("map is not wavelet induced".into()));
    }
    lift(h, &IntervalSet::unit())
}
