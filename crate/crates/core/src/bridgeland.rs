//! Numerical stability data on the `(A, P)`-slice: twisted Chern characters,
//! slopes, discriminants, central charges and walls for `v = (1, 0, −n)`.
//!
//! Walls are semicircles in the `(s, t)` half-plane with rational center and
//! rational radius squared; `t` itself is never formed, only `t²`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hilb::HilbDivisor;
use crate::lattice::{DivisorClass, NUM_POINTS};
use crate::rational::{self, frac, half, int, Rational};
use crate::surface::{polarization_a1, polarization_a2};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChernChar {
    pub r: i64,
    pub c1: DivisorClass,
    #[serde(with = "rational")]
    pub ch2: Rational,
}

impl ChernChar {
    pub fn new(r: i64, c1: DivisorClass, ch2: Rational) -> Self {
        Self { r, c1, ch2 }
    }

    /// `(1, 0, −n)`, the ideal sheaf of `n` points.
    pub fn ideal_of_points(n: i64) -> Self {
        Self::new(1, DivisorClass::zero(), int(-n))
    }

    /// `ch(O(L)) = (1, L, L²/2)`.
    pub fn line_bundle(l: &DivisorClass) -> Self {
        Self::new(1, l.clone(), l.square() * half())
    }

    /// `ch(L ⊗ I_Y)` for `Y` of length `m`.
    pub fn twisted_ideal(l: &DivisorClass, m: i64) -> Self {
        let mut ch = Self::line_bundle(l);
        ch.ch2 -= int(m);
        ch
    }
}

/// `exp(−Q)·ch = (r, c1 − rQ, ch2 − Q·c1 + rQ²/2)`.
pub fn twist(ch: &ChernChar, q: &DivisorClass) -> ChernChar {
    let r = int(ch.r);
    ChernChar {
        r: ch.r,
        c1: &ch.c1 - &q.scale(&r),
        ch2: &ch.ch2 - q.intersect(&ch.c1) + r * q.square() * half(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SliceKind {
    A1,
    A2,
}

impl fmt::Display for SliceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::A1 => "A1",
            Self::A2 => "A2",
        })
    }
}

impl FromStr for SliceKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "A1" | "a1" => Ok(Self::A1),
            "A2" | "a2" => Ok(Self::A2),
            _ => Err(Error::Parse(format!(
                "unknown slice {s:?}, expected A1 or A2"
            ))),
        }
    }
}

/// A polarization `A` and twist `P`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Slice {
    pub a: DivisorClass,
    pub p: DivisorClass,
}

impl Slice {
    pub fn new(a: DivisorClass, p: DivisorClass) -> Result<Self> {
        if !a.square().is_positive() || !a.fiber_degree().is_positive() {
            return Err(Error::InvalidInput(format!(
                "polarization {a} needs A.A > 0 and A.F > 0"
            )));
        }
        Ok(Self { a, p })
    }

    /// `(A_1, −F)` or `(A_2, −F)` for the given `n`.
    pub fn standard(kind: SliceKind, n: i64) -> Self {
        let a = match kind {
            SliceKind::A1 => polarization_a1(n),
            SliceKind::A2 => polarization_a2(n),
        };
        Self::new(a, -DivisorClass::fiber()).expect("standard polarizations are positive")
    }

    pub fn a_square(&self) -> Rational {
        self.a.square()
    }
}

/// `μ_{A,P}`; `None` is `+∞` (rank zero after twisting).
pub fn mu_ap(sl: &Slice, ch: &ChernChar) -> Option<Rational> {
    let t = twist(ch, &sl.p);
    if t.r == 0 {
        return None;
    }
    Some(sl.a.intersect(&t.c1) / (sl.a_square() * int(t.r)))
}

/// `Δ_{A,P} = ½μ² − ch₂^P/(A²·r)`.
pub fn delta_ap(sl: &Slice, ch: &ChernChar) -> Result<Rational> {
    let t = twist(ch, &sl.p);
    let mu = mu_ap(sl, ch).ok_or_else(|| {
        Error::InvalidInput("discriminant is undefined for rank zero characters".into())
    })?;
    Ok(&mu * &mu * half() - t.ch2 / (sl.a_square() * int(t.r)))
}

/// `Z_{s,t} = −ch₂^{P+sA} + (t²A²/2)·ch₀^{P+sA} + i·A·ch₁^{P+sA}`, as `(Re, Im)`.
pub fn central_charge(
    sl: &Slice,
    s: &Rational,
    t_sq: &Rational,
    ch: &ChernChar,
) -> Result<(Rational, Rational)> {
    if !t_sq.is_positive() {
        return Err(Error::InvalidInput(format!(
            "t^2 must be positive, got {t_sq}"
        )));
    }
    Ok(central_charge_unchecked(sl, s, t_sq, ch))
}

fn central_charge_unchecked(
    sl: &Slice,
    s: &Rational,
    t_sq: &Rational,
    ch: &ChernChar,
) -> (Rational, Rational) {
    let shift = &sl.p + &sl.a.scale(s);
    let tw = twist(ch, &shift);
    let re = -tw.ch2 + t_sq * sl.a_square() * half() * int(tw.r);
    let im = sl.a.intersect(&tw.c1);
    (re, im)
}

/// `μ_{s,t} = −Re Z / Im Z`; `None` when `Im Z = 0`.
pub fn mu_st(
    sl: &Slice,
    s: &Rational,
    t_sq: &Rational,
    ch: &ChernChar,
) -> Result<Option<Rational>> {
    let (re, im) = central_charge(sl, s, t_sq, ch)?;
    Ok((!im.is_zero()).then(|| -re / im))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Wall {
    #[serde(with = "rational")]
    pub center: Rational,
    #[serde(with = "rational")]
    pub radius_sq: Rational,
}

impl Wall {
    pub fn is_nonempty(&self) -> bool {
        self.radius_sq.is_positive()
    }

    /// Walls for a fixed character left of its vertical wall are nested; a wall
    /// with a smaller center is the larger one.
    pub fn nesting_cmp(&self, other: &Self) -> Ordering {
        other.center.cmp(&self.center)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum WallOutcome {
    Semicircle(Wall),
    /// Equal `μ_{A,P}`: the wall is the vertical line `s = μ`.
    Vertical {
        #[serde(with = "rational")]
        s: Rational,
    },
}

impl WallOutcome {
    pub fn semicircle(&self) -> Option<&Wall> {
        match self {
            Self::Semicircle(w) => Some(w),
            Self::Vertical { .. } => None,
        }
    }
}

/// Center `½(μ_E + μ_F) − (Δ_E − Δ_F)/(μ_E − μ_F)` and radius² `(μ_E − s₀)² − 2Δ_E`.
pub fn numerical_wall(sl: &Slice, ch_e: &ChernChar, ch_f: &ChernChar) -> Result<WallOutcome> {
    let (Some(mu_e), Some(mu_f)) = (mu_ap(sl, ch_e), mu_ap(sl, ch_f)) else {
        return Err(Error::InvalidInput(
            "numerical wall needs finite slopes".into(),
        ));
    };
    if mu_e == mu_f {
        return Ok(WallOutcome::Vertical { s: mu_e });
    }
    let d_e = delta_ap(sl, ch_e)?;
    let d_f = delta_ap(sl, ch_f)?;
    let center = (&mu_e + &mu_f) * half() - (&d_e - &d_f) / (&mu_e - &mu_f);
    let gap = &mu_e - &center;
    let radius_sq = &gap * &gap - int(2) * d_e;
    Ok(WallOutcome::Semicircle(Wall { center, radius_sq }))
}

/// Coefficients of `Re Z = re0 + re1·s + re2·s² + reT·t²` and `Im Z = im0 + im1·s`.
struct ChargePolynomial {
    re0: Rational,
    re1: Rational,
    re2: Rational,
    re_t: Rational,
    im0: Rational,
    im1: Rational,
}

impl ChargePolynomial {
    /// Recovers the coefficients by evaluating `Z` at a few exact points; `Z` is
    /// quadratic in `s`, affine in `t²`, and its imaginary part is affine in `s`.
    fn interpolate(sl: &Slice, ch: &ChernChar) -> Self {
        let z = |s: i64, t: i64| central_charge_unchecked(sl, &int(s), &int(t), ch);
        let (r01, i01) = z(0, 1);
        let (r11, i11) = z(1, 1);
        let (rm1, _) = z(-1, 1);
        let (r02, _) = z(0, 2);
        let re_t = &r02 - &r01;
        let re2 = (&r11 + &rm1 - int(2) * &r01) * half();
        let re1 = (&r11 - &rm1) * half();
        let re0 = &r01 - &re_t;
        Self {
            re0,
            re1,
            re2,
            re_t,
            im0: i01.clone(),
            im1: i11 - i01,
        }
    }
}

/// Solves `Re Z(E)·Im Z(F) = Re Z(F)·Im Z(E)` as a polynomial identity in `s`
/// and `t²`, extracting the circle `(s − s₀)² + t² = ρ²`.
pub fn wall_oracle(sl: &Slice, ch_e: &ChernChar, ch_f: &ChernChar) -> Result<Wall> {
    let e = ChargePolynomial::interpolate(sl, ch_e);
    let f = ChargePolynomial::interpolate(sl, ch_f);
    let cross = |a: &Rational, b: &Rational, c: &Rational, d: &Rational| a * b - c * d;
    let c_s3 = cross(&e.re2, &f.im1, &f.re2, &e.im1);
    let c_ts = cross(&e.re_t, &f.im1, &f.re_t, &e.im1);
    let c_s2 = cross(&e.re1, &f.im1, &f.re1, &e.im1) + cross(&e.re2, &f.im0, &f.re2, &e.im0);
    let c_s1 = cross(&e.re0, &f.im1, &f.re0, &e.im1) + cross(&e.re1, &f.im0, &f.re1, &e.im0);
    let c_0 = cross(&e.re0, &f.im0, &f.re0, &e.im0);
    let c_t = cross(&e.re_t, &f.im0, &f.re_t, &e.im0);
    if !c_s3.is_zero() || !c_ts.is_zero() {
        return Err(Error::DegenerateWall(format!(
            "cubic or mixed terms survive: s^3 {c_s3}, s*t^2 {c_ts}"
        )));
    }
    if c_s2.is_zero() || c_s2 != c_t {
        return Err(Error::DegenerateWall(format!(
            "not a circle: s^2 coefficient {c_s2}, t^2 coefficient {c_t}"
        )));
    }
    let center = -&c_s1 / (int(2) * &c_s2);
    let radius_sq = &center * &center - c_0 / c_s2;
    Ok(Wall { center, radius_sq })
}

/// Wall of `L ⊗ I_Y` (`Y` of length `m`) against the ideal of `n` points,
/// in closed form: center `(n − m + L²/2 − L·P)/(L·A)`.
pub fn rank1_center_closed_form(sl: &Slice, l: &DivisorClass, m: i64, n: i64) -> Rational {
    (int(n - m) + l.square() * half() - l.intersect(&sl.p)) / l.intersect(&sl.a)
}

/// The rank-one center formula as printed alongside the general wall formula,
/// `(n − m + L²/2 − L·P/2)/(−L·A)`. Diagnostic only: it disagrees with
/// [`rank1_center_closed_form`] and with [`wall_oracle`].
pub fn rank1_center_printed_formula(sl: &Slice, l: &DivisorClass, m: i64, n: i64) -> Rational {
    (int(n - m) + l.square() * half() - l.intersect(&sl.p) * half()) / (-l.intersect(&sl.a))
}

/// Why a rank-one candidate was set aside.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "filter", rename_all = "snake_case")]
pub enum CandidateStatus {
    /// `−L = F`: the wall every other candidate is compared with.
    Reference,
    Survivor,
    /// `(−L)·F ≥ 2` forces `(−L)·A ≥ n`; `implication_holds` records the exact check.
    FiberDegreeAtLeastTwo {
        implication_holds: bool,
    },
    /// `(−L)·A ≥ n`: excluded by the reduction to `(−L)·A < A·F = n`.
    ADegreeAtLeastN,
    /// `(−L)·F = 0` and `−L` is not a multiple of `F`; not effective on a general surface.
    FiberDegreeZero,
    /// Second slice only: `a = b_1`, and `a` lines through the first point cannot
    /// also pass through `Σ_{i≥2} b_i > a` further points.
    LineCount,
}

impl CandidateStatus {
    pub fn is_live(&self) -> bool {
        matches!(self, Self::Reference | Self::Survivor)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Rank1Candidate {
    /// The effective class `−L`.
    pub neg_l: DivisorClass,
    pub shape: String,
    /// Number of classes in the symmetry class represented by `neg_l`.
    pub multiplicity: u64,
    #[serde(with = "rational")]
    pub a_degree: Rational,
    #[serde(with = "rational")]
    pub f_degree: Rational,
    /// Vertical exactly when `(−L)·A = 0`, which only happens for non-effective classes.
    pub wall: WallOutcome,
    /// `numerical_wall` on the same pair equals the oracle wall (or both are degenerate).
    pub formula_agrees: bool,
    pub status: CandidateStatus,
}

/// Multiplicity vectors `b` with `0 ≤ b_i ≤ a` and `Σ b_i ≤ 3a`, up to the
/// permutations fixing the polarization (all of `S_9` for `A1`, `S_8` on
/// `E_2..E_9` for `A2`), with orbit sizes.
fn multiplicity_shapes(kind: SliceKind, a: i64) -> Vec<([i64; NUM_POINTS], u64)> {
    fn partitions(
        len: usize,
        max_part: i64,
        budget: i64,
        out: &mut Vec<Vec<i64>>,
        cur: &mut Vec<i64>,
    ) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for b in (0..=max_part.min(budget)).rev() {
            cur.push(b);
            partitions(len, b, budget - b, out, cur);
            cur.pop();
        }
    }
    fn arrangements(v: &[i64]) -> u64 {
        let mut counts = std::collections::BTreeMap::new();
        for x in v {
            *counts.entry(x).or_insert(0u64) += 1;
        }
        let fact = |k: u64| (1..=k).product::<u64>();
        counts
            .values()
            .fold(fact(v.len() as u64), |acc, c| acc / fact(*c))
    }
    let mut out = Vec::new();
    match kind {
        SliceKind::A1 => {
            let mut parts = Vec::new();
            partitions(NUM_POINTS, a, 3 * a, &mut parts, &mut Vec::new());
            for p in parts {
                let mut b = [0; NUM_POINTS];
                b.copy_from_slice(&p);
                out.push((b, arrangements(&p)));
            }
        }
        SliceKind::A2 => {
            for b1 in 0..=a {
                let mut parts = Vec::new();
                partitions(NUM_POINTS - 1, a, 3 * a - b1, &mut parts, &mut Vec::new());
                for p in parts {
                    let mut b = [0; NUM_POINTS];
                    b[0] = b1;
                    b[1..].copy_from_slice(&p);
                    out.push((b, arrangements(&p)));
                }
            }
        }
    }
    out
}

fn shape_of(neg_l: &DivisorClass) -> String {
    if *neg_l == DivisorClass::fiber() {
        return "F".into();
    }
    neg_l.to_string()
}

/// Rank-one destabilizer candidates `O(L) → I_Z` for `v = (1, 0, −n)` in one of
/// the two standard slices, with `−L` among `E_i` and `aH − Σ b_i E_i`
/// (`1 ≤ a ≤ max_h_degree`, `0 ≤ b_i ≤ a`, `(−L)·F ≥ 0`), each with its oracle wall and
/// the first filter of the case analysis that removes it.
pub fn rank1_candidates(kind: SliceKind, n: i64, max_h_degree: i64) -> Result<Vec<Rank1Candidate>> {
    if n < 3 {
        return Err(Error::InvalidInput(format!("need n >= 3, got {n}")));
    }
    if max_h_degree < 0 {
        return Err(Error::InvalidInput(format!(
            "degree bound must be nonnegative, got {max_h_degree}"
        )));
    }
    let sl = Slice::standard(kind, n);
    let mut classes: Vec<(DivisorClass, u64)> = Vec::new();
    // E_1 separately in the second slice
    match kind {
        SliceKind::A1 => classes.push((DivisorClass::exceptional(1), 9)),
        SliceKind::A2 => {
            classes.push((DivisorClass::exceptional(1), 1));
            classes.push((DivisorClass::exceptional(2), 8));
        }
    }
    for a in 1..=max_h_degree {
        for (b, mult) in multiplicity_shapes(kind, a) {
            classes.push((DivisorClass::from_ints(a, b.map(|x| -x)), mult));
        }
    }
    let ideal = ChernChar::ideal_of_points(n);
    classes
        .into_par_iter()
        .map(|(neg_l, multiplicity)| {
            let l = -neg_l.clone();
            let ch = ChernChar::line_bundle(&l);
            let formula = numerical_wall(&sl, &ch, &ideal)?;
            let (wall, formula_agrees) = match wall_oracle(&sl, &ch, &ideal) {
                Ok(w) => {
                    let agrees = formula.semicircle() == Some(&w);
                    (WallOutcome::Semicircle(w), agrees)
                }
                Err(Error::DegenerateWall(_)) => {
                    let agrees = matches!(formula, WallOutcome::Vertical { .. });
                    (formula, agrees)
                }
                Err(e) => return Err(e),
            };
            let a_degree = neg_l.intersect(&sl.a);
            let f_degree = neg_l.fiber_degree();
            let status = classify_candidate(kind, &neg_l, &a_degree, &f_degree, n);
            Ok(Rank1Candidate {
                shape: shape_of(&neg_l),
                neg_l,
                multiplicity,
                a_degree,
                f_degree,
                wall,
                formula_agrees,
                status,
            })
        })
        .collect()
}

fn classify_candidate(
    kind: SliceKind,
    neg_l: &DivisorClass,
    a_degree: &Rational,
    f_degree: &Rational,
    n: i64,
) -> CandidateStatus {
    let n_q = int(n);
    if *neg_l == DivisorClass::fiber() {
        return CandidateStatus::Reference;
    }
    if *f_degree >= int(2) {
        return CandidateStatus::FiberDegreeAtLeastTwo {
            implication_holds: *a_degree >= n_q,
        };
    }
    if *a_degree >= n_q {
        return CandidateStatus::ADegreeAtLeastN;
    }
    if f_degree.is_zero() {
        return CandidateStatus::FiberDegreeZero;
    }
    if kind == SliceKind::A2 {
        let a = neg_l.h().clone();
        let b1 = -neg_l.e(1).clone();
        let rest: Rational = (2..=NUM_POINTS).map(|i| -neg_l.e(i).clone()).sum();
        if a.is_positive() && a == b1 && rest > a {
            return CandidateStatus::LineCount;
        }
    }
    CandidateStatus::Survivor
}

/// Bound on `ρ'²` for walls of destabilizers of rank at least two,
/// `(2n·A² + (A·P)² − A²·P²) / (8(A²)²)`.
pub fn rank2_radius_bound(sl: &Slice, n: i64) -> Rational {
    let a2 = sl.a_square();
    let ap = sl.a.intersect(&sl.p);
    (int(2 * n) * &a2 + &ap * &ap - &a2 * sl.p.square()) / (int(8) * &a2 * &a2)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GiesekerCertificate {
    pub slice: SliceKind,
    pub n: i64,
    pub degree_bound: i64,
    pub polarization: DivisorClass,
    pub twist: DivisorClass,
    /// The wall of `O(−F) → I_Z`.
    pub wall: Wall,
    #[serde(with = "rational")]
    pub rank2_bound: Rational,
    pub rank2_excluded: bool,
    pub candidates: Vec<Rank1Candidate>,
    pub live_candidates: usize,
    /// Live candidates whose wall has the same center as the Gieseker wall.
    pub coinciding_walls: usize,
    /// Candidates removed by a filter whose numerical wall would be larger.
    pub eliminated_larger_walls: usize,
    pub oracle_formula_agreement: bool,
}

/// Certifies that `W(O(−F), I_Z)` is the largest wall for `(1, 0, −n)` in the
/// slice: no live rank-one candidate has a center left of it, and the rank ≥ 2
/// radius bound is below its radius².
pub fn gieseker_wall(kind: SliceKind, n: i64, max_h_degree: i64) -> Result<GiesekerCertificate> {
    let sl = Slice::standard(kind, n);
    let ideal = ChernChar::ideal_of_points(n);
    let wall = wall_oracle(
        &sl,
        &ChernChar::line_bundle(&-DivisorClass::fiber()),
        &ideal,
    )?;
    let mut candidates = rank1_candidates(kind, n, max_h_degree)?;
    candidates.sort_by(|a, b| a.neg_l.canonical_cmp(&b.neg_l));

    for c in &candidates {
        if let CandidateStatus::FiberDegreeAtLeastTwo {
            implication_holds: false,
        } = c.status
        {
            return Err(Error::Falsified(format!(
                "{kind} n={n}: -L = {} has F-degree >= 2 but A-degree {} < n",
                c.neg_l, c.a_degree
            )));
        }
        if c.status.is_live() {
            let Some(cw) = c.wall.semicircle() else {
                return Err(Error::Falsified(format!(
                    "{kind} n={n}: live candidate -L = {} has a vertical wall",
                    c.neg_l
                )));
            };
            if cw.center < wall.center {
                return Err(Error::Falsified(format!(
                    "{kind} n={n}: candidate -L = {} has wall center {} left of {}",
                    c.neg_l, cw.center, wall.center
                )));
            }
        }
    }
    let rank2_bound = rank2_radius_bound(&sl, n);
    let rank2_excluded = rank2_bound < wall.radius_sq;
    if !rank2_excluded {
        return Err(Error::Falsified(format!(
            "{kind} n={n}: rank >= 2 bound {rank2_bound} is not below radius^2 {}",
            wall.radius_sq
        )));
    }
    let live: Vec<&Rank1Candidate> = candidates.iter().filter(|c| c.status.is_live()).collect();
    let coinciding_walls = live
        .iter()
        .filter(|c| {
            c.status == CandidateStatus::Survivor
                && c.wall.semicircle().is_some_and(|w| w.center == wall.center)
        })
        .count();
    let eliminated_larger_walls = candidates
        .iter()
        .filter(|c| {
            !c.status.is_live() && c.wall.semicircle().is_some_and(|w| w.center < wall.center)
        })
        .count();
    let oracle_formula_agreement = candidates.iter().all(|c| c.formula_agrees);
    Ok(GiesekerCertificate {
        slice: kind,
        n,
        degree_bound: max_h_degree,
        polarization: sl.a.clone(),
        twist: sl.p.clone(),
        wall,
        rank2_bound,
        rank2_excluded,
        live_candidates: live.len(),
        candidates,
        coinciding_walls,
        eliminated_larger_walls,
        oracle_formula_agreement,
    })
}

/// `½K^[n] − s_W·A^[n] − P^[n] − ½B`.
pub fn nef_from_wall(sl: &Slice, s_w: &Rational) -> HilbDivisor {
    let surf = &(&DivisorClass::canonical().scale(&half()) - &sl.a.scale(s_w)) - &sl.p;
    HilbDivisor::new(surf, int(-1))
}

/// Closed-form values printed in the rank-one case analysis, for side-by-side
/// comparison with oracle values.
pub mod printed {
    use super::*;

    /// `ρ² = 1 + 3n/A²` for the wall of `O(−F)`.
    pub fn fiber_wall_radius_sq(a_sq: &Rational, n: i64) -> Rational {
        int(1) + int(3 * n) / a_sq
    }

    /// `−(n−1)/(n−3/2)`, printed for `E_i` in the first slice and for `E_i`
    /// (`i ≥ 2`) and `H − E_1 − E_i` in the second.
    pub fn exceptional_center(n: i64) -> Rational {
        -(int(n - 1) / (int(n) - frac(3, 2)))
    }

    /// `−2/3`, printed for `E_1` in the second slice.
    pub fn e1_center_second_slice() -> Rational {
        frac(-2, 3)
    }

    /// `−(n−1)/(4n/3 − 3/2)`, printed for `H − E_i − E_j` in the first slice.
    pub fn conic_center_first_slice(n: i64) -> Rational {
        -(int(n - 1) / (frac(4 * n, 3) - frac(3, 2)))
    }
}

/// Sorts walls by nesting, largest first.
pub fn sort_by_nesting(walls: &mut [Wall]) {
    walls.sort_by(|a, b| b.nesting_cmp(a));
}
