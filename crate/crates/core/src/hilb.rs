//! Néron–Severi data of the Hilbert scheme `X^[n]`.
//!
//! Divisors are written in the basis `{H^[n], E_1^[n], …, E_9^[n], B/2}`: a
//! [`HilbDivisor`] is `surf^[n] + b_half·(B/2)`. Curves are the Hilbert–Chow fiber
//! class `C_0` and the induced classes `C_[n]`, with
//!
//! ```text
//!            D^[n]     B
//!   C_[n]    C·D       2g(C) − 2 + 2n
//!   C_0      0         −2
//! ```

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::DivisorClass;
use crate::rational::{self, int, Rational};
use crate::surface::{is_nef_up_to_degree, NefCertificate};
use crate::weyl::{
    apply_word, classify_nef_extremal, enumerate_minus_one_classes, orbit_with_words, NefOrbit,
};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct HilbDivisor {
    pub surf: DivisorClass,
    #[serde(with = "rational")]
    pub b_half: Rational,
}

impl HilbDivisor {
    pub fn new(surf: DivisorClass, b_half: Rational) -> Self {
        Self { surf, b_half }
    }

    /// `D^[n]`.
    pub fn lift(d: &DivisorClass) -> Self {
        Self::new(d.clone(), Rational::zero())
    }

    /// The exceptional divisor `B` of the Hilbert–Chow morphism.
    pub fn boundary() -> Self {
        Self::new(DivisorClass::zero(), int(2))
    }

    /// `(n−1)F^[n] − ½B`.
    pub fn boundary_ray(n: i64) -> Self {
        Self::new(DivisorClass::fiber().scale(&int(n - 1)), int(-1))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.surf.scale(c), &self.b_half * c)
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(&self.surf + &other.surf, &self.b_half + &other.b_half)
    }
}

impl fmt::Display for HilbDivisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})^[n]", self.surf)?;
        if !self.b_half.is_zero() {
            let half = &self.b_half / int(2);
            if half.is_negative() {
                write!(f, " - {}B", -half)?;
            } else {
                write!(f, " + {half}B")?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind", content = "class", rename_all = "snake_case")]
#[allow(clippy::large_enum_variant)]
pub enum HilbCurve {
    C0,
    Induced(DivisorClass),
}

impl HilbCurve {
    pub fn induced(c: DivisorClass) -> Result<Self> {
        if !c.is_integral() {
            return Err(Error::InvalidInput(format!(
                "induced curve class {c} is not integral"
            )));
        }
        Ok(Self::Induced(c))
    }

    pub fn label(&self) -> String {
        match self {
            Self::C0 => "C_0".into(),
            Self::Induced(c) => format!("({c})_[n]"),
        }
    }
}

fn check_n(n: i64, min: i64) -> Result<()> {
    if n < min {
        return Err(Error::InvalidInput(format!("need n >= {min}, got {n}")));
    }
    Ok(())
}

/// Intersection number of a divisor and a curve class on `X^[n]`.
pub fn pair_hilb(d: &HilbDivisor, c: &HilbCurve, n: i64) -> Result<Rational> {
    check_n(n, 2)?;
    Ok(pair_unchecked(d, c, n))
}

fn pair_unchecked(d: &HilbDivisor, c: &HilbCurve, n: i64) -> Rational {
    match c {
        // C_0·B = −2, so C_0·(B/2) = −1
        HilbCurve::C0 => -d.b_half.clone(),
        HilbCurve::Induced(curve) => {
            // C_[n]·(B/2) = g − 1 + n
            let b_pair = curve.arithmetic_genus() - int(1) + int(n);
            curve.intersect(&d.surf) + &d.b_half * b_pair
        }
    }
}

/// Precomputed pairing data for one curve, for scans over many divisors.
struct CurveRow {
    curve: HilbCurve,
    class: Option<DivisorClass>,
    b_pair: Rational,
}

impl CurveRow {
    fn new(curve: HilbCurve, n: i64) -> Self {
        match &curve {
            HilbCurve::C0 => Self {
                class: None,
                b_pair: int(-1),
                curve,
            },
            HilbCurve::Induced(c) => Self {
                class: Some(c.clone()),
                b_pair: c.arithmetic_genus() - int(1) + int(n),
                curve,
            },
        }
    }

    fn pair(&self, d: &HilbDivisor) -> Rational {
        let surf = match &self.class {
            Some(c) => c.intersect(&d.surf),
            None => Rational::zero(),
        };
        surf + &d.b_half * &self.b_pair
    }
}

/// The `F_[n]`-orthogonal ray `x·C^[n] + (n−1)F^[n] − ½B`, `x = n/(C·F)`, in the
/// plane spanned by `C^[n]` and `(n−1)F^[n] − ½B`.
pub fn epsilon(c: &DivisorClass, n: i64) -> Result<HilbDivisor> {
    check_n(n, 3)?;
    let cf = c.fiber_degree();
    if !cf.is_positive() {
        return Err(Error::InvalidInput(format!(
            "epsilon needs C.F > 0, got {cf} for {c} (for C = F the ray is F^[n] itself)"
        )));
    }
    let x = int(n) / cf;
    Ok(HilbDivisor::lift(&c.scale(&x)).add(&HilbDivisor::boundary_ray(n)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CurvePairing {
    pub curve: String,
    #[serde(with = "rational")]
    pub value: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LambdaCertificate {
    pub divisor: HilbDivisor,
    pub n: i64,
    pub degree_bound: i64,
    #[serde(with = "rational")]
    pub c0_pairing: Rational,
    #[serde(with = "rational")]
    pub fiber_pairing: Rational,
    #[serde(with = "rational")]
    pub min_section_pairing: Rational,
    pub section_pairings: Vec<CurvePairing>,
    pub member: bool,
    /// First negative pairing, checked in the order `C_0`, `F_[n]`, then sections.
    pub violation: Option<CurvePairing>,
}

/// Checks `D` against `C_0`, `F_[n]` and `E_[n]` for every (−1)-class `E` of
/// H-degree at most `max_h_degree`.
pub fn lambda_membership(d: &HilbDivisor, n: i64, max_h_degree: i64) -> Result<LambdaCertificate> {
    check_n(n, 3)?;
    let c0_pairing = pair_unchecked(d, &HilbCurve::C0, n);
    let fiber_pairing = pair_unchecked(d, &HilbCurve::Induced(DivisorClass::fiber()), n);
    let section_pairings: Vec<CurvePairing> = enumerate_minus_one_classes(max_h_degree)?
        .into_par_iter()
        .map(|e| {
            let curve = HilbCurve::Induced(e);
            CurvePairing {
                value: pair_unchecked(d, &curve, n),
                curve: curve.label(),
            }
        })
        .collect();
    let min_section_pairing = section_pairings
        .iter()
        .map(|p| p.value.clone())
        .min()
        .unwrap_or_else(Rational::zero);
    let violation = [
        CurvePairing {
            curve: HilbCurve::C0.label(),
            value: c0_pairing.clone(),
        },
        CurvePairing {
            curve: HilbCurve::Induced(DivisorClass::fiber()).label(),
            value: fiber_pairing.clone(),
        },
    ]
    .into_iter()
    .chain(section_pairings.iter().cloned())
    .find(|p| p.value.is_negative());
    Ok(LambdaCertificate {
        divisor: d.clone(),
        n,
        degree_bound: max_h_degree,
        c0_pairing,
        fiber_pairing,
        min_section_pairing,
        section_pairings,
        member: violation.is_none(),
        violation,
    })
}

/// `D = nef_part^[n] + t·[(n−1)F^[n] − ½B]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LambdaDecomposition {
    pub nef_part: DivisorClass,
    #[serde(with = "rational")]
    pub t: Rational,
    pub nef_certificate: NefCertificate,
}

impl LambdaDecomposition {
    pub fn recompose(&self, n: i64) -> HilbDivisor {
        HilbDivisor::lift(&self.nef_part).add(&HilbDivisor::boundary_ray(n).scale(&self.t))
    }
}

/// Splits a member of Λ as a nef class of the surface plus a nonnegative multiple
/// of `(n−1)F^[n] − ½B`, and certifies the surface part nef up to the degree bound.
pub fn lambda_decompose(d: &HilbDivisor, n: i64, max_h_degree: i64) -> Result<LambdaDecomposition> {
    check_n(n, 3)?;
    if d.b_half.is_positive() {
        return Err(Error::InvalidInput(format!(
            "{d} has positive B coefficient and pairs negatively with C_0"
        )));
    }
    let t = -d.b_half.clone();
    let nef_part = &d.surf - &DivisorClass::fiber().scale(&(&t * int(n - 1)));
    let nef_certificate = is_nef_up_to_degree(&nef_part, max_h_degree)?;
    if let crate::surface::NefVerdict::NotNef { witness } = &nef_certificate.verdict {
        return Err(Error::Falsified(format!(
            "surface part {nef_part} of {d} is not nef: pairs to {} with {}",
            witness.value, witness.curve
        )));
    }
    Ok(LambdaDecomposition {
        nef_part,
        t,
        nef_certificate,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NefGenerator {
    pub label: String,
    pub divisor: HilbDivisor,
    /// Orbit type of the surface class for lifted classes, or of the class `C` for `ε(C)`.
    pub orbit: NefOrbit,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub nef_generator: String,
    pub curve: String,
    #[serde(with = "rational")]
    pub value: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TheoremReport {
    pub n: i64,
    pub degree_bound: i64,
    pub section_count: usize,
    pub nef_generators: Vec<NefGenerator>,
    pub curve_generators: Vec<String>,
    /// `pairings[i][j]` pairs nef generator `i` with curve generator `j`.
    pub pairings: Vec<Vec<String>>,
    pub negative_pairings: Vec<Violation>,
    /// For each curve generator, the first nef generator vanishing on it.
    pub orthogonality_witnesses: BTreeMap<String, Option<String>>,
    /// ε classes whose pairing with `F_[n]` is not zero.
    pub epsilon_fiber_failures: Vec<Violation>,
    pub notes: Vec<String>,
    pub violations: usize,
}

impl TheoremReport {
    pub fn certified(&self) -> bool {
        self.violations == 0
    }
}

/// Duality scan for the description of the cone of curves of `X^[n]` by `C_0`,
/// `F_[n]` and the `E_[n]`.
///
/// Nef side: `F^[n]`, `H^[n]`, `(H−E_i)^[n]`, `ε(H)`, `ε(H−E_i)`, and for every
/// (−1)-class `E` up to the bound the images `w(ε(H))`, `w(ε(H−E_1))` under a Weyl
/// word `w` with `w(E_9) = E`; both vanish on `E_[n]` because `ε(H)` and
/// `ε(H−E_1)` vanish on `(E_9)_[n]`.
pub fn theorem1_check(n: i64, max_h_degree: i64) -> Result<TheoremReport> {
    check_n(n, 3)?;
    let f = DivisorClass::fiber();
    let h = DivisorClass::hyperplane();
    let hme = |i: usize| &h - &DivisorClass::exceptional(i);
    let e9 = DivisorClass::exceptional(9);

    let mut nef: Vec<NefGenerator> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    let mut push = |label: String, divisor: HilbDivisor, orbit: NefOrbit| {
        if seen.insert(divisor.clone()) {
            nef.push(NefGenerator {
                label,
                divisor,
                orbit,
            });
        }
    };
    push("F^[n]".into(), HilbDivisor::lift(&f), NefOrbit::FiberOrbit);
    push("H^[n]".into(), HilbDivisor::lift(&h), NefOrbit::HOrbit);
    for i in 1..=9 {
        push(
            format!("(H-E{i})^[n]"),
            HilbDivisor::lift(&hme(i)),
            NefOrbit::HminusE1Orbit,
        );
    }
    push("eps(H)".into(), epsilon(&h, n)?, NefOrbit::HOrbit);
    for i in 1..=9 {
        push(
            format!("eps(H-E{i})"),
            epsilon(&hme(i), n)?,
            NefOrbit::HminusE1Orbit,
        );
    }
    let eps_h = epsilon(&h, n)?;
    let eps_hme1 = epsilon(&hme(1), n)?;
    let words = orbit_with_words(&e9, max_h_degree)?;
    let mut by_order: Vec<(&DivisorClass, &Vec<usize>)> = words.iter().collect();
    by_order.sort_by(|a, b| a.0.canonical_cmp(b.0));
    for (e, w) in &by_order {
        for (name, base) in [("eps(H)", &eps_h), ("eps(H-E1)", &eps_hme1)] {
            let img = HilbDivisor::new(apply_word(w, &base.surf), base.b_half.clone());
            let c = &img.surf - &HilbDivisor::boundary_ray(n).surf;
            push(
                format!("w[{e}]{name}"),
                img,
                classify_nef_extremal(&integral_primitive(&c)),
            );
        }
    }

    let sections = enumerate_minus_one_classes(max_h_degree)?;
    let rows: Vec<CurveRow> = [HilbCurve::C0, HilbCurve::Induced(f.clone())]
        .into_iter()
        .chain(sections.iter().cloned().map(HilbCurve::Induced))
        .map(|c| CurveRow::new(c, n))
        .collect();
    let curve_labels: Vec<String> = rows.iter().map(|r| r.curve.label()).collect();

    let values: Vec<Vec<Rational>> = nef
        .par_iter()
        .map(|g| rows.iter().map(|r| r.pair(&g.divisor)).collect())
        .collect();

    let mut negative_pairings = Vec::new();
    for (g, row) in nef.iter().zip(&values) {
        for (label, v) in curve_labels.iter().zip(row) {
            if v.is_negative() {
                negative_pairings.push(Violation {
                    nef_generator: g.label.clone(),
                    curve: label.clone(),
                    value: v.clone(),
                });
            }
        }
    }

    let mut orthogonality_witnesses = BTreeMap::new();
    for (j, label) in curve_labels.iter().enumerate() {
        let w = nef
            .iter()
            .zip(&values)
            .find(|(_, row)| row[j].is_zero())
            .map(|(g, _)| g.label.clone());
        orthogonality_witnesses.insert(label.clone(), w);
    }
    let missing_witnesses = orthogonality_witnesses
        .values()
        .filter(|w| w.is_none())
        .count();

    let fiber_row = CurveRow::new(HilbCurve::Induced(f.clone()), n);
    let epsilon_fiber_failures: Vec<Violation> = nef
        .iter()
        .filter(|g| g.label.contains("eps("))
        .filter_map(|g| {
            let v = fiber_row.pair(&g.divisor);
            (!v.is_zero()).then(|| Violation {
                nef_generator: g.label.clone(),
                curve: fiber_row.curve.label(),
                value: v,
            })
        })
        .collect();

    let pairings = values
        .iter()
        .map(|row| row.iter().map(rational::to_string).collect())
        .collect();
    let violations = negative_pairings.len() + missing_witnesses + epsilon_fiber_failures.len();
    let notes = vec![
        "the nefness argument for the second family refers to eps(H-E2); treated as eps(H-E1), which is Weyl-equivalent via the reflection in E1-E2".into(),
    ];
    Ok(TheoremReport {
        n,
        degree_bound: max_h_degree,
        section_count: sections.len(),
        nef_generators: nef,
        curve_generators: curve_labels,
        pairings,
        negative_pairings,
        orthogonality_witnesses,
        epsilon_fiber_failures,
        notes,
        violations,
    })
}

/// Scales a class with positive content to a primitive integral class, for orbit classification.
fn integral_primitive(c: &DivisorClass) -> DivisorClass {
    use num_integer::Integer;
    let coords = c.coords();
    let den = coords
        .iter()
        .fold(num_bigint::BigInt::from(1), |acc, q| acc.lcm(q.denom()));
    let ints: Vec<num_bigint::BigInt> = coords
        .iter()
        .map(|q| (q * Rational::from_integer(den.clone())).to_integer())
        .collect();
    let g = ints
        .iter()
        .fold(num_bigint::BigInt::from(0), |acc, v| acc.gcd(v));
    if g.is_zero() {
        return c.clone();
    }
    c.scale(&(Rational::from_integer(den) / Rational::from_integer(g)))
}
