//! The Schröder–Cantor–Bernstein combination `u◇v` and the factorization of a wavelet
//! induced isomorphism into a `WI₁` part and a `WI₂` part.

use std::ops::ControlFlow;

use num::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::interval::{Interval, IntervalSet};
use crate::rational::{check_exponent, int, pow2, rat, Rational, MAX_EXPONENT};
use crate::unit_map::{wi1_shape, wi2_shape, AffinePiece, PartialMap, PiecewiseMap};

/// Default truncation tolerance, `2^-40`.
pub fn default_tol() -> Rational {
    pow2(-40)
}

#[derive(Clone, Debug)]
pub struct ScbOptions {
    pub tol: Rational,
    pub max_depth: usize,
    /// Extra orbit levels computed past the stopping depth to classify residual cycles.
    pub lookahead: usize,
    pub resolve_cycles: bool,
}

impl Default for ScbOptions {
    fn default() -> Self {
        ScbOptions { tol: default_tol(), max_depth: 256, lookahead: 8, resolve_cycles: true }
    }
}

impl ScbOptions {
    pub fn with_tol(tol: Rational) -> Self {
        ScbOptions { tol, ..Self::default() }
    }
}

/// One level `k` of the orbit decomposition under `g = v∘u`.
#[derive(Clone, Debug, PartialEq)]
pub struct OrbitLevel {
    /// `g^k(seed_S)`, assigned the forward branch.
    pub forward: IntervalSet,
    /// `g^k(seed_N)`, assigned the inverse branch.
    pub backward: IntervalSet,
    /// `g^k([0,1))`, everything not yet assigned before level `k`.
    pub remaining: IntervalSet,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScbTrace {
    #[serde(rename = "seed_S")]
    pub seed_s: IntervalSet,
    #[serde(rename = "seed_N")]
    pub seed_n: IntervalSet,
    pub depth: usize,
    pub residual: IntervalSet,
    /// `[0,1)` minus the image of the resolved map.
    pub image_residual: IntervalSet,
    /// Parts of the residual closed off exactly by periodic-orbit analysis.
    pub cycle_resolved: IntervalSet,
    #[serde(skip)]
    pub orbits: Vec<OrbitLevel>,
}

/// Reported to the hook once per orbit level.
#[derive(Clone, Copy, Debug)]
pub struct ScbProgress {
    pub depth: usize,
    pub residual: f64,
}

fn validate_pair(u: &PiecewiseMap, v: &PiecewiseMap) -> Result<()> {
    if !u.classify().in_wi1 {
        return Err(Error::Classification("first argument is not in WI1".into()));
    }
    check_wi2_partial(v)
}

fn check_wi2_partial(v: &PiecewiseMap) -> Result<()> {
    if !v.is_injective() {
        return Err(Error::NotInjective);
    }
    if !v.pieces().iter().all(wi2_shape) {
        return Err(Error::Classification("second argument has pieces outside WI2".into()));
    }
    Ok(())
}

fn check_tol(tol: &Rational) -> Result<()> {
    if !tol.is_positive() {
        return Err(Error::Invalid(format!("tolerance must be positive, got {tol}")));
    }
    Ok(())
}

/// `u◇v` for `u ∈ WI₁` and `v` an injective map with `WI₂` pieces, possibly undefined on a
/// small set.
pub fn combine(u: &PiecewiseMap, v: &PiecewiseMap, opts: &ScbOptions) -> Result<(PartialMap, ScbTrace)> {
    combine_with_hook(u, v, opts, |_| ControlFlow::Continue(()))
}

pub fn combine_with_hook<H>(
    u: &PiecewiseMap,
    v: &PiecewiseMap,
    opts: &ScbOptions,
    hook: H,
) -> Result<(PartialMap, ScbTrace)>
where
    H: FnMut(ScbProgress) -> ControlFlow<()>,
{
    validate_pair(u, v)?;
    schroeder_bernstein(u, v, opts, hook)
}

/// The bijection assembled from injections `f` and `g` of `[0,1)`: `f` on the orbits
/// of `[0,1) ∖ g([0,1))` under `g∘f`, and `g⁻¹` on the orbits of `g([0,1)) ∖ g(f([0,1)))`.
///
/// Orbits are followed until the unassigned set and the missing image both have measure
/// at most `tol`, or until `max_depth` levels.
pub fn schroeder_bernstein<H>(
    f: &PiecewiseMap,
    g: &PiecewiseMap,
    opts: &ScbOptions,
    mut hook: H,
) -> Result<(PartialMap, ScbTrace)>
where
    H: FnMut(ScbProgress) -> ControlFlow<()>,
{
    check_tol(&opts.tol)?;
    if !f.is_injective() || !g.is_injective() {
        return Err(Error::NotInjective);
    }
    let unit = IntervalSet::unit();
    if g.is_identity() {
        let trace = ScbTrace {
            seed_s: IntervalSet::empty(),
            seed_n: unit.difference(&f.range()),
            depth: 0,
            residual: IntervalSet::empty(),
            image_residual: IntervalSet::empty(),
            cycle_resolved: IntervalSet::empty(),
            orbits: Vec::new(),
        };
        return Ok((PartialMap::total(PiecewiseMap::identity()), trace));
    }

    let ginv = g.invert()?;
    let step = PiecewiseMap::compose(g, f)?;
    let seed_s = unit.difference(&g.range());
    let seed_n = g.range().difference(&step.range());

    let mut orbits = Vec::new();
    let (mut fwd, mut bwd, mut rem) = (seed_s.clone(), seed_n.clone(), unit.clone());
    let (mut fwd_class, mut bwd_class) = (IntervalSet::empty(), IntervalSet::empty());
    let mut covered = IntervalSet::empty();
    let mut depth = 0;
    loop {
        if hook(ScbProgress { depth, residual: crate::rational::to_f64(&rem.measure()) }).is_break() {
            return Err(Error::Cancelled(depth));
        }
        let image_gap = unit.difference(&covered).measure();
        if (rem.measure() <= opts.tol && image_gap <= opts.tol) || depth >= opts.max_depth {
            break;
        }
        covered = covered.union(&f.image(&fwd)).union(&ginv.image(&bwd));
        fwd_class = fwd_class.union(&fwd);
        bwd_class = bwd_class.union(&bwd);
        let next = (step.image(&fwd), step.image(&bwd), step.image(&rem));
        orbits.push(OrbitLevel { forward: fwd, backward: bwd, remaining: rem });
        (fwd, bwd, rem) = next;
        depth += 1;
    }

    let mut cycle_fwd = IntervalSet::empty();
    let mut cycle_bwd = IntervalSet::empty();
    if opts.resolve_cycles && !rem.is_empty() {
        let (mut ext_fwd, mut ext_bwd) = (fwd_class.clone(), bwd_class.clone());
        let (mut a, mut b) = (fwd.clone(), bwd.clone());
        for _ in 0..opts.lookahead {
            ext_fwd = ext_fwd.union(&a);
            ext_bwd = ext_bwd.union(&b);
            (a, b) = (step.image(&a), step.image(&b));
        }
        let ginv_dom = ginv.domain();
        for c in residual_cells(&rem, &step) {
            for (half, class) in resolve_cell(&c, &step) {
                if half.is_subset(&ext_fwd) {
                    cycle_fwd = cycle_fwd.union(&class);
                } else if half.is_subset(&ext_bwd) && class.is_subset(&ginv_dom) {
                    cycle_bwd = cycle_bwd.union(&class);
                }
            }
        }
    }

    let fwd_all = fwd_class.union(&cycle_fwd);
    let bwd_all = bwd_class.union(&cycle_bwd);
    let map = f.restrict(&fwd_all).join(&ginv.restrict(&bwd_all))?;
    let cycle_resolved = cycle_fwd.union(&cycle_bwd);
    let residual = rem.difference(&cycle_resolved);
    let image_residual = unit.difference(&map.range());
    let tol = opts.tol.clone().max(image_residual.measure());
    let trace = ScbTrace {
        seed_s,
        seed_n,
        depth,
        residual,
        image_residual,
        cycle_resolved,
        orbits,
    };
    Ok((PartialMap::with_tol(map, tol), trace))
}

/// Components of the residual, cut so that each lies in one affine piece of `step`.
fn residual_cells(rem: &IntervalSet, step: &PiecewiseMap) -> Vec<Interval> {
    let mut cuts: Vec<Rational> = step
        .pieces()
        .iter()
        .flat_map(|p| [p.dom().lo().clone(), p.dom().hi().clone()])
        .collect();
    cuts.sort();
    cuts.dedup();
    rem.split_at(&cuts)
}

const MAX_PERIOD: usize = 8;

/// For a cell mapped into itself by some iterate `step^p`, returns the two halves around
/// the attracting fixed point, each paired with its fundamental domain. Every point of a
/// half lies on the forward `step`-orbit of its fundamental domain.
fn resolve_cell(cell: &Interval, step: &PiecewiseMap) -> Vec<(IntervalSet, IntervalSet)> {
    let mut cur = cell.clone();
    let (mut e, mut m) = (0i64, Rational::zero());
    for _ in 0..MAX_PERIOD {
        let Some(piece) = step.pieces().iter().find(|p| p.dom().contains_interval(&cur)) else {
            return Vec::new();
        };
        cur = cur.affine_image(piece.exponent(), piece.offset());
        e += piece.exponent() as i64;
        m = pow2(piece.exponent()) * m + piece.offset();
        if !(-MAX_EXPONENT..0).contains(&e) {
            return Vec::new();
        }
        if cell.contains_interval(&cur) {
            let fixed = &m / (int(1) - pow2(e as i32));
            let mut out = Vec::new();
            if let (Ok(fl), Ok(half)) = (
                Interval::new(cell.lo().clone(), cur.lo().clone()),
                Interval::new(cell.lo().clone(), fixed.clone()),
            ) {
                out.push((IntervalSet::single(fl), IntervalSet::single(half)));
            }
            if let (Ok(fr), Ok(half)) = (
                Interval::new(cur.hi().clone(), cell.hi().clone()),
                Interval::new(fixed, cell.hi().clone()),
            ) {
                out.push((IntervalSet::single(fr), IntervalSet::single(half)));
            }
            return out;
        }
    }
    Vec::new()
}

/// Output of [`factorize`].
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Factorization {
    pub u: PiecewiseMap,
    pub v: PartialMap,
    /// Where `h` contracts; `u = h` there.
    pub d1: IntervalSet,
}

/// Writes `h ∈ WI` as `u◇v` with `u ∈ WI₁` and `v ∈ WI₂`, the latter complete up to
/// measure `tol / 2`.
pub fn factorize(h: &PiecewiseMap, tol: &Rational) -> Result<Factorization> {
    check_tol(tol)?;
    if !h.classify().in_wi {
        return Err(Error::Classification("map is not wavelet induced".into()));
    }
    let d1 = h.contracting_domain();
    let u = extend_to_wi1(&h.restrict(&d1))?;
    let d2 = IntervalSet::unit().difference(&d1);
    let v_partial = h.restrict(&d2).invert()?;
    let v = extend_to_wi2(&v_partial, &(tol / int(2)), DEFAULT_STAGE_BUDGET)?;
    Ok(Factorization { u, v, d1 })
}

fn split_halves(map: &PiecewiseMap) -> Vec<AffinePiece> {
    let h = [rat(1, 2)];
    map.pieces()
        .iter()
        .flat_map(|p| {
            p.dom().split_at(&h).into_iter().map(move |d| {
                AffinePiece::new(d, p.exponent() as i64, p.offset().clone()).expect("sub-piece")
            })
        })
        .collect()
}

/// Extends an injective partial map with `WI₁`-shaped pieces to a member of `WI₁`.
///
/// Stage `k` sends every still-unassigned point of a half to `x/2^k` (right half) or
/// `(x-1)/2^k + 1` (left half) wherever that lands outside the range used so far.
pub fn extend_to_wi1(partial: &PiecewiseMap) -> Result<PiecewiseMap> {
    if !partial.is_injective() {
        return Err(Error::NotInjective);
    }
    if !split_halves(partial).iter().all(wi1_shape) {
        return Err(Error::Classification("partial map has pieces outside WI1".into()));
    }
    let dom = partial.domain();
    let mut used = partial.range();
    let mut rem_right = IntervalSet::single(Interval::new(rat(1, 2), int(1))?).difference(&dom);
    let mut rem_left = IntervalSet::single(Interval::new(int(0), rat(1, 2))?).difference(&dom);
    let mut pieces = partial.pieces().to_vec();
    for k in 1..=MAX_EXPONENT {
        if rem_right.is_empty() && rem_left.is_empty() {
            break;
        }
        let e = check_exponent(-k)?;
        for (rem, m) in [(&mut rem_right, int(0)), (&mut rem_left, int(1) - pow2(e))] {
            let free = IntervalSet::unit().difference(&used);
            // preimage of the free range under x ↦ 2^e x + m
            let admissible = rem.intersect(&free.affine_image(k, &(-pow2(-e) * &m))?);
            for iv in admissible.iter() {
                pieces.push(AffinePiece::new(iv.clone(), -k, m.clone())?);
            }
            used = used.union(&admissible.affine_image(-k, &m)?);
            *rem = rem.difference(&admissible);
        }
    }
    let residual = rem_right.union(&rem_left);
    if !residual.is_empty() {
        return Err(Error::BudgetExhausted { budget: MAX_EXPONENT as usize, residual: Box::new(residual.measure()) });
    }
    PiecewiseMap::new(pieces)
}

/// Number of `(l, k)` pairs visited by [`extend_to_wi2`] before giving up.
pub const DEFAULT_STAGE_BUDGET: usize = 1 << 16;

/// Extends an injective partial map with `WI₂`-shaped pieces to a member of `WI₂`, up to an
/// undefined set of measure at most `tol`.
///
/// Pairs `(l, k)` are visited along the diagonals `l + k = 0, 1, 2, …` with `l` ascending;
/// pair `(l, k)` assigns `x ↦ (x + l)/2^k` to every unassigned point it sends outside the
/// range used so far.
pub fn extend_to_wi2(partial: &PiecewiseMap, tol: &Rational, budget: usize) -> Result<PartialMap> {
    if tol.is_negative() {
        return Err(Error::Invalid(format!("tolerance must be non-negative, got {tol}")));
    }
    check_wi2_partial(partial)?;
    let mut rem = IntervalSet::unit().difference(&partial.domain());
    let mut used = partial.range();
    let mut pieces = partial.pieces().to_vec();
    let mut visited = 0usize;
    'diagonals: for d in 0i64.. {
        for l in 0..=d {
            if rem.measure() <= *tol {
                break 'diagonals;
            }
            if visited >= budget {
                return Err(Error::BudgetExhausted { budget, residual: Box::new(rem.measure()) });
            }
            visited += 1;
            let k = d - l;
            if k > MAX_EXPONENT || Rational::from_integer(l.into()) >= pow2(k as i32) {
                continue;
            }
            let m = Rational::from_integer(l.into()) * pow2(-(k as i32));
            let free = IntervalSet::unit().difference(&used);
            let assign = rem.intersect(&free.affine_image(k, &(-Rational::from_integer(l.into())))?);
            if assign.is_empty() {
                continue;
            }
            for iv in assign.iter() {
                pieces.push(AffinePiece::new(iv.clone(), -k, m.clone())?);
            }
            used = used.union(&assign.affine_image(-k, &m)?);
            rem = rem.difference(&assign);
        }
    }
    Ok(PartialMap::with_tol(PiecewiseMap::new(pieces)?, tol.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gallery;
    use crate::unit_map::agreement_set;

    fn iv(a: i64, b: i64, c: i64, d: i64) -> Interval {
        Interval::new(rat(a, b), rat(c, d)).unwrap()
    }

    fn opts() -> ScbOptions {
        ScbOptions::default()
    }

    #[test]
    fn identity_factor_short_circuits() {
        let (h, trace) = combine(&gallery::contraction_by_half(), &PiecewiseMap::identity(), &opts()).unwrap();
        assert!(h.map.is_identity());
        assert_eq!(trace.depth, 0);
    }

    #[test]
    fn rejects_bad_input() {
        let u = gallery::contraction_by_half();
        let zero = ScbOptions::with_tol(int(0));
        assert!(matches!(combine(&u, &gallery::halving(), &zero), Err(Error::Invalid(_))));
        let doubling = PiecewiseMap::new(vec![AffinePiece::new(iv(0, 1, 1, 2), 1, int(0)).unwrap()]).unwrap();
        assert!(combine(&u, &doubling, &opts()).is_err());
        assert!(combine(&gallery::halving(), &gallery::halving(), &opts()).is_err());
    }

    #[test]
    fn hook_cancels() {
        let res = combine_with_hook(&gallery::contraction_by_half(), &gallery::halving(), &opts(), |p| {
            if p.depth == 3 { ControlFlow::Break(()) } else { ControlFlow::Continue(()) }
        });
        assert!(matches!(res, Err(Error::Cancelled(3))));
    }

    #[test]
    fn orbits_are_disjoint_and_residual_halves() {
        let (_, trace) = combine(&gallery::contraction_by_half(), &gallery::halving(), &opts()).unwrap();
        let mut seen = IntervalSet::empty();
        for (k, level) in trace.orbits.iter().enumerate() {
            assert!(level.forward.intersect(&level.backward).is_empty());
            let both = level.forward.union(&level.backward);
            assert!(both.intersect(&seen).is_empty(), "level {k} revisits");
            seen = seen.union(&both);
            assert!(level.remaining.measure() <= pow2(-(k as i32)));
        }
        assert!(trace.depth > 0);
    }

    #[test]
    fn reversed_combination_is_the_inverse() {
        let u = gallery::contraction_by_half();
        for v in [gallery::journe_v(), gallery::halving_switched(), gallery::s8_v()] {
            let noop = |_| ControlFlow::Continue(());
            let (h, _) = schroeder_bernstein(&u, &v, &opts(), noop).unwrap();
            let (k, _) = schroeder_bernstein(&v, &u, &opts(), noop).unwrap();
            let hinv = h.map.invert().unwrap();
            let common = agreement_set(&hinv, &k.map);
            let slack = h.tol.clone() + k.tol.clone();
            assert!(int(1) - common.measure() <= int(4) * slack, "{}", common.measure());
        }
    }

    #[test]
    fn factorize_splits_on_contracting_pieces() {
        let h = gallery::s8_induced();
        let f = factorize(&h, &default_tol()).unwrap();
        let d1 = IntervalSet::normalize(vec![iv(0, 1, 1, 3), iv(3, 8, 1, 2), iv(4, 7, 2, 3), iv(3, 4, 1, 1)]);
        assert_eq!(f.d1, d1);
        assert!(f.u.classify().in_wi1);
        assert!(f.v.map.classify().in_wi2);
        assert!(d1.is_subset(&agreement_set(&f.u, &h)));
    }

    #[test]
    fn wi1_extension_of_nothing_is_the_contraction() {
        assert_eq!(extend_to_wi1(&PiecewiseMap::new(Vec::new()).unwrap()).unwrap(), gallery::contraction_by_half());
        let u = gallery::contraction_by_half();
        assert_eq!(extend_to_wi1(&u).unwrap(), u);
    }

    #[test]
    fn wi1_extension_keeps_the_partial_map() {
        let h = gallery::journe_induced();
        let part = h.restrict(&h.contracting_domain());
        let u = extend_to_wi1(&part).unwrap();
        assert!(u.classify().in_wi1);
        assert!(part.domain().is_subset(&agreement_set(&u, &h)));
    }

    #[test]
    fn wi2_extension_of_a_half() {
        let tol = default_tol();
        let part = gallery::halving().restrict(&IntervalSet::single(iv(1, 2, 1, 1)));
        let v = extend_to_wi2(&part, &tol, DEFAULT_STAGE_BUDGET).unwrap();
        assert!(v.map.is_injective());
        assert!(v.map.classify().in_wi2);
        assert!(v.undefined.measure() <= tol);
        assert_eq!(v.map.restrict(&part.domain()), part);
        let id = extend_to_wi2(&PiecewiseMap::identity(), &tol, DEFAULT_STAGE_BUDGET).unwrap();
        assert!(id.map.is_identity() && id.undefined.is_empty());
    }

    #[test]
    fn s8_v_is_wi2_only() {
        let c = gallery::s8_v().classify();
        assert!(c.in_wi2 && !c.in_wi1 && !c.in_wi);
    }
}
