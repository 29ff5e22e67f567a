//! Translations by sections of the elliptic fibration, realized on the lattice,
//! and a reduction experiment for nef classes of `X^[n]` under them.
//!
//! With `E_1` as zero section, the translation by a section `P` acts on the
//! Picard lattice by the transvection along the isotropic class `F`
//!
//! ```text
//! x ↦ x + (x·F)v − ((x·v) + ½v²(x·F))F,   v = P − E_1,
//! ```
//!
//! which fixes `F`, preserves the form because `F² = 0` and `v·F = 0`, and sends
//! `E_1` to `P`.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hilb::{epsilon, lambda_decompose, HilbDivisor};
use crate::lattice::DivisorClass;
use crate::rational::{self, half, int, Rational};
use crate::weyl::{
    apply_word, classify_nef_extremal, enumerate_minus_one_classes, root_basis, LatticeMap,
    NefOrbit,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Translation {
    pub section: DivisorClass,
    pub map: LatticeMap,
}

fn transvection(v: &DivisorClass) -> LatticeMap {
    let f = DivisorClass::fiber();
    let v_sq_half = v.square() * half();
    LatticeMap::from_fn(|x| {
        let xf = x.intersect(&f);
        let coeff = x.intersect(v) + &v_sq_half * &xf;
        &(x + &v.scale(&xf)) - &f.scale(&coeff)
    })
}

/// The translation taking the zero section `E_1` to the section `p`.
pub fn translation(p: &DivisorClass) -> Result<Translation> {
    if !p.is_minus_one_class() {
        return Err(Error::InvalidInput(format!("{p} is not a (-1)-class")));
    }
    let v = p - &DivisorClass::exceptional(1);
    Ok(Translation {
        section: p.clone(),
        map: transvection(&v),
    })
}

impl Translation {
    pub fn identity() -> Self {
        Self {
            section: DivisorClass::exceptional(1),
            map: LatticeMap::identity(),
        }
    }

    /// Translation by the inverse section.
    pub fn inverse(&self) -> Self {
        let v = &self.section - &DivisorClass::exceptional(1);
        let map = transvection(&-v);
        Self {
            section: map.apply(&DivisorClass::exceptional(1)),
            map,
        }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        let map = self.map.compose(&other.map);
        Self {
            section: map.apply(&DivisorClass::exceptional(1)),
            map,
        }
    }

    pub fn apply(&self, d: &DivisorClass) -> DivisorClass {
        self.map.apply(d)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeylConditionsReport {
    pub section: DivisorClass,
    pub integral: bool,
    pub isometry: bool,
    pub fixes_fiber: bool,
    pub fixes_canonical: bool,
    pub preserves_root_lattice: bool,
    pub zero_section_to_section: bool,
    pub unimodular: bool,
    pub all_pass: bool,
}

/// Checks the lattice-level consequences of membership in the Weyl group.
pub fn verify_weyl_necessary_conditions(t: &Translation) -> WeylConditionsReport {
    let m = &t.map;
    let f = DivisorClass::fiber();
    let integral = m.is_integral();
    let isometry = m.is_isometry();
    let fixes_fiber = m.apply(&f) == f;
    let fixes_canonical = m.apply(&DivisorClass::canonical()) == DivisorClass::canonical();
    // F^⊥ ∩ Pic is spanned by the root basis, so integral F-orthogonal images suffice
    let preserves_root_lattice = root_basis().iter().all(|beta| {
        let img = m.apply(beta.class());
        img.is_integral() && img.fiber_degree().is_zero() && img.square() == int(-2)
    });
    let zero_section_to_section = m.apply(&DivisorClass::exceptional(1)) == t.section;
    let det = m.determinant();
    let unimodular = det == int(1) || det == int(-1);
    let all_pass = integral
        && isometry
        && fixes_fiber
        && fixes_canonical
        && preserves_root_lattice
        && zero_section_to_section
        && unimodular;
    WeylConditionsReport {
        section: t.section.clone(),
        integral,
        isometry,
        fixes_fiber,
        fixes_canonical,
        preserves_root_lattice,
        zero_section_to_section,
        unimodular,
        all_pass,
    }
}

/// Applies a translation to the surface part; the `B` coefficient is unchanged.
pub fn translate_hilb(t: &Translation, d: &HilbDivisor) -> HilbDivisor {
    HilbDivisor::new(t.apply(&d.surf), d.b_half.clone())
}

/// Translations by the nontrivial sections of H-degree at most one, and their inverses.
pub fn generating_translations() -> Vec<Translation> {
    let mut out = Vec::new();
    for p in enumerate_minus_one_classes(1).expect("nonnegative bound") {
        if p == DivisorClass::exceptional(1) {
            continue;
        }
        let t = translation(&p).expect("enumerated classes are (-1)-classes");
        out.push(t.inverse());
        out.push(t);
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Reduction {
    pub start: HilbDivisor,
    pub reduced: HilbDivisor,
    /// Sections of the applied translations, in order.
    pub steps: Vec<DivisorClass>,
    #[serde(with = "rational")]
    pub start_height: Rational,
    #[serde(with = "rational")]
    pub final_height: Rational,
}

/// Greedy descent of the H-coefficient of the surface part: at each step apply
/// the generator giving the smallest height, as long as it strictly decreases.
pub fn reduce_by_translations(d: &HilbDivisor, generators: &[Translation]) -> Reduction {
    let mut cur = d.clone();
    let mut steps = Vec::new();
    loop {
        let best = generators
            .iter()
            .map(|t| (t, t.apply(&cur.surf)))
            .min_by(|a, b| a.1.h().cmp(b.1.h()));
        match best {
            Some((t, img)) if img.h() < cur.surf.h() => {
                steps.push(t.section.clone());
                cur = HilbDivisor::new(img, cur.b_half.clone());
            }
            _ => break,
        }
    }
    Reduction {
        start_height: d.surf.h().clone(),
        final_height: cur.surf.h().clone(),
        start: d.clone(),
        reduced: cur,
        steps,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SampleOutcome {
    pub index: usize,
    pub reduction: Reduction,
    /// Projection of the reduced class to `B = 0`.
    pub projection: DivisorClass,
    pub nef_part: Option<DivisorClass>,
    #[serde(with = "rational::opt")]
    pub t: Option<Rational>,
    pub nef_part_orbit: Option<NefOrbit>,
    #[serde(with = "rational")]
    pub height_threshold: Rational,
    pub decomposed: bool,
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoverageReport {
    pub n: i64,
    pub samples: usize,
    pub degree_bound: i64,
    pub seed: u64,
    pub threshold_factor: i64,
    pub successes: usize,
    pub outcomes: Vec<SampleOutcome>,
}

impl CoverageReport {
    pub fn all_succeeded(&self) -> bool {
        self.successes == self.samples
    }
}

/// Default factor in the height threshold `factor·(D·F)` used to flag a descent
/// that stalls high.
pub const DEFAULT_THRESHOLD_FACTOR: i64 = 20;

/// Nef generators of `X^[n]` used for sampling: `F^[n]`, `H^[n]`, `(H−E_1)^[n]`,
/// `ε(H)`, `ε(H−E_1)`.
pub fn base_nef_generators(n: i64) -> Result<Vec<HilbDivisor>> {
    let h = DivisorClass::hyperplane();
    let hme1 = &h - &DivisorClass::exceptional(1);
    Ok(vec![
        HilbDivisor::lift(&DivisorClass::fiber()),
        HilbDivisor::lift(&h),
        HilbDivisor::lift(&hme1),
        epsilon(&h, n)?,
        epsilon(&hme1, n)?,
    ])
}

/// A random nonnegative integer combination of Weyl images of the base generators,
/// pushed away by a few random translations.
fn sample_divisor(
    rng: &mut ChaCha8Rng,
    base: &[HilbDivisor],
    generators: &[Translation],
) -> HilbDivisor {
    let terms = rng.gen_range(1..=4);
    let mut acc = HilbDivisor::new(DivisorClass::zero(), Rational::zero());
    for _ in 0..terms {
        let g = &base[rng.gen_range(0..base.len())];
        let word: Vec<usize> = (0..rng.gen_range(0..=8))
            .map(|_| rng.gen_range(0..9))
            .collect();
        let img = HilbDivisor::new(apply_word(&word, &g.surf), g.b_half.clone());
        acc = acc.add(&img.scale(&int(rng.gen_range(1..=5))));
    }
    for _ in 0..rng.gen_range(0..=3) {
        acc = translate_hilb(&generators[rng.gen_range(0..generators.len())], &acc);
    }
    acc
}

/// Projects sampled nef classes to `B = 0`, reduces them by translations, and
/// checks that the reduced class still splits as a nef class of the surface plus
/// a multiple of `(n−1)F^[n] − ½B`.
pub fn coverage_experiment(
    n: i64,
    samples: usize,
    max_h_degree: i64,
    seed: u64,
    threshold_factor: i64,
) -> Result<CoverageReport> {
    if n < 3 {
        return Err(Error::InvalidInput(format!("need n >= 3, got {n}")));
    }
    let base = base_nef_generators(n)?;
    let generators = generating_translations();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let draws: Vec<HilbDivisor> = (0..samples)
        .map(|_| sample_divisor(&mut rng, &base, &generators))
        .collect();

    let outcomes: Vec<SampleOutcome> = draws
        .par_iter()
        .enumerate()
        .map(|(index, d)| run_sample(index, d, n, max_h_degree, threshold_factor, &generators))
        .collect();
    let successes = outcomes.iter().filter(|o| o.decomposed).count();
    Ok(CoverageReport {
        n,
        samples,
        degree_bound: max_h_degree,
        seed,
        threshold_factor,
        successes,
        outcomes,
    })
}

fn run_sample(
    index: usize,
    d: &HilbDivisor,
    n: i64,
    max_h_degree: i64,
    threshold_factor: i64,
    generators: &[Translation],
) -> SampleOutcome {
    let reduction = reduce_by_translations(d, generators);
    let reduced = &reduction.reduced;
    let projection = reduced.surf.clone();
    // classes of fiber degree 0 are fixed up to F by translations, so nothing to descend
    let fdeg = projection.fiber_degree();
    let height_threshold = if fdeg.is_zero() {
        reduction.start_height.clone()
    } else {
        int(threshold_factor) * fdeg
    };
    let mut outcome = SampleOutcome {
        index,
        projection,
        nef_part: None,
        t: None,
        nef_part_orbit: None,
        height_threshold: height_threshold.clone(),
        decomposed: false,
        error: None,
        reduction: reduction.clone(),
    };
    if reduction.final_height > height_threshold {
        outcome.error = Some(format!(
            "descent stalled at height {} above threshold {}",
            reduction.final_height, height_threshold
        ));
        return outcome;
    }
    match lambda_decompose(reduced, n, max_h_degree) {
        Ok(dec) => {
            outcome.nef_part_orbit = Some(classify_nef_extremal(&dec.nef_part));
            outcome.nef_part = Some(dec.nef_part);
            outcome.t = Some(dec.t);
            outcome.decomposed = true;
        }
        Err(e) => outcome.error = Some(e.to_string()),
    }
    outcome
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilb::{pair_hilb, HilbCurve};

    fn e(i: usize) -> DivisorClass {
        DivisorClass::exceptional(i)
    }

    #[test]
    fn translation_examples() {
        let t = translation(&e(2)).unwrap();
        assert_eq!(t.apply(&e(1)), e(2));
        let f = DivisorClass::fiber();
        for p in enumerate_minus_one_classes(1).unwrap() {
            assert_eq!(translation(&p).unwrap().apply(&f), f);
        }
        assert_eq!(translation(&e(1)).unwrap().map, LatticeMap::identity());
        assert!(translation(&DivisorClass::hyperplane()).is_err());
    }

    #[test]
    fn weyl_conditions() {
        for p in [
            e(2),
            DivisorClass::from_ints(1, [-1, -1, 0, 0, 0, 0, 0, 0, 0]),
        ] {
            let rep = verify_weyl_necessary_conditions(&translation(&p).unwrap());
            assert!(rep.all_pass, "{rep:?}");
        }
        let mut bad = translation(&e(3)).unwrap();
        *bad.map.entry_mut(0, 0) += int(1);
        let rep = verify_weyl_necessary_conditions(&bad);
        assert!(!rep.isometry);
        assert!(!rep.all_pass);
    }

    #[test]
    fn inverse_and_composition() {
        let p = DivisorClass::from_ints(1, [0, -1, -1, 0, 0, 0, 0, 0, 0]);
        let t = translation(&p).unwrap();
        let inv = t.inverse();
        assert!(inv.section.is_minus_one_class());
        assert_eq!(t.compose(&inv).map, LatticeMap::identity());
        let t2 = translation(&e(5)).unwrap();
        let c = t.compose(&t2);
        assert!(c.section.is_minus_one_class());
        assert!(verify_weyl_necessary_conditions(&c).all_pass);
    }

    #[test]
    fn translate_hilb_examples() {
        let n = 4;
        let t = translation(&e(2)).unwrap();
        let fl = HilbDivisor::lift(&DivisorClass::fiber());
        assert_eq!(translate_hilb(&t, &fl), fl);
        let eps = epsilon(&(&DivisorClass::hyperplane() - &e(1)), n).unwrap();
        let moved = translate_hilb(&t, &eps);
        assert_eq!(moved.b_half, eps.b_half);
        let fc = HilbCurve::Induced(DivisorClass::fiber());
        assert_eq!(pair_hilb(&moved, &fc, n).unwrap(), int(0));
        assert_eq!(
            pair_hilb(&moved, &HilbCurve::C0, n).unwrap(),
            pair_hilb(&eps, &HilbCurve::C0, n).unwrap()
        );
        assert_eq!(translate_hilb(&Translation::identity(), &eps), eps);
    }

    #[test]
    fn reduction_of_simple_classes() {
        let gens = generating_translations();
        assert_eq!(gens.len(), 88);
        let fl = HilbDivisor::lift(&DivisorClass::fiber());
        let r = reduce_by_translations(&fl, &gens);
        assert!(r.steps.is_empty());
        let dec = lambda_decompose(&r.reduced, 3, 2).unwrap();
        assert_eq!(dec.t, int(0));

        let eh = epsilon(&DivisorClass::hyperplane(), 3).unwrap();
        let r = reduce_by_translations(&eh, &gens);
        let dec = lambda_decompose(&r.reduced, 3, 3).unwrap();
        assert_eq!(classify_nef_extremal(&dec.nef_part), NefOrbit::HOrbit);

        // a translated copy comes back down
        let far = translate_hilb(&translation(&e(7)).unwrap(), &eh);
        assert!(far.surf.h() > eh.surf.h());
        let r = reduce_by_translations(&far, &gens);
        assert!(r.final_height <= *eh.surf.h());
    }

    #[test]
    fn small_coverage_run_is_deterministic() {
        let a = coverage_experiment(3, 10, 2, 5, DEFAULT_THRESHOLD_FACTOR).unwrap();
        let b = coverage_experiment(3, 10, 2, 5, DEFAULT_THRESHOLD_FACTOR).unwrap();
        assert_eq!(a, b);
        assert!(
            a.all_succeeded(),
            "{:?}",
            a.outcomes.iter().find(|o| !o.decomposed)
        );
        assert!(coverage_experiment(2, 1, 1, 0, DEFAULT_THRESHOLD_FACTOR).is_err());
    }
}
