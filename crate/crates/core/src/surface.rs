//! Mori and nef cone tests on the surface, and the exact ampleness decision for
//! the two polarization families `c_H·H + c_F·F` and `c_{H−E1}·(H−E_1) + c_F·F`.

use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::DivisorClass;
use crate::rational::{self, frac, int, Rational};
use crate::weyl::enumerate_minus_one_classes;

/// `[F]` followed by every (−1)-class of H-degree at most `max_h_degree`.
pub fn mori_generators(max_h_degree: i64) -> Result<Vec<DivisorClass>> {
    let mut out = vec![DivisorClass::fiber()];
    out.extend(enumerate_minus_one_classes(max_h_degree)?);
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Pairing {
    pub curve: DivisorClass,
    #[serde(with = "rational")]
    pub value: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
#[allow(clippy::large_enum_variant)]
pub enum NefVerdict {
    NefUpToBound,
    NotNef { witness: Pairing },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NefCertificate {
    pub divisor: DivisorClass,
    pub degree_bound: i64,
    pub checked_classes: Vec<Pairing>,
    pub verdict: NefVerdict,
}

impl NefCertificate {
    pub fn is_nef(&self) -> bool {
        self.verdict == NefVerdict::NefUpToBound
    }
}

/// Pairs `d` against [`mori_generators`]; the witness of a failure is the first
/// negative pairing in enumeration order.
pub fn is_nef_up_to_degree(d: &DivisorClass, max_h_degree: i64) -> Result<NefCertificate> {
    let gens = mori_generators(max_h_degree)?;
    let checked_classes: Vec<Pairing> = gens
        .into_par_iter()
        .map(|curve| Pairing {
            value: d.intersect(&curve),
            curve,
        })
        .collect();
    let verdict = match checked_classes.iter().find(|p| p.value.is_negative()) {
        Some(w) => NefVerdict::NotNef { witness: w.clone() },
        None => NefVerdict::NefUpToBound,
    };
    Ok(NefCertificate {
        divisor: d.clone(),
        degree_bound: max_h_degree,
        checked_classes,
        verdict,
    })
}

/// One line of an ampleness argument: a pairing expression, its exact value and
/// the sign it must have.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TraceLine {
    pub expression: String,
    #[serde(with = "rational")]
    pub value: Rational,
    pub requirement: Requirement,
    pub holds: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Requirement {
    Positive,
    Nonnegative,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AmpleDecision {
    pub divisor: DivisorClass,
    pub ample: bool,
    pub trace: Vec<TraceLine>,
}

/// Decides ampleness of `c_H·H + c_{H−E1}·(H−E_1) + c_F·F` (at most one of the
/// first two nonzero) against every (−1)-curve, not only enumerated ones.
///
/// Uses `F·E = 1` for every (−1)-curve `E = aH − Σ b_i E_i`, so
/// `D·E = c_H·a + c_F` in the first family and `D·E = c_{H−E1}·(a − b_1) + c_F` in
/// the second, where `a − b_1 = (H−E_1)·E ≥ 0` and both `a` and `a − b_1` are
/// unbounded over the (−1)-curves. `H−E_1−E_2` realizes both minima.
pub fn is_ample_hf_family(
    c_h: &Rational,
    c_hme1: &Rational,
    c_f: &Rational,
) -> Result<AmpleDecision> {
    if !c_h.is_zero() && !c_hme1.is_zero() {
        return Err(Error::InvalidInput(
            "at most one of the H and H-E1 coefficients may be nonzero".into(),
        ));
    }
    let h = DivisorClass::hyperplane();
    let hme1 = &h - &DivisorClass::exceptional(1);
    let f = DivisorClass::fiber();
    let d = &(&h.scale(c_h) + &hme1.scale(c_hme1)) + &f.scale(c_f);

    let mut trace = Vec::new();
    let mut push = |expression: &str, value: Rational, requirement: Requirement| {
        let holds = match requirement {
            Requirement::Positive => value.is_positive(),
            Requirement::Nonnegative => !value.is_negative(),
        };
        trace.push(TraceLine {
            expression: expression.to_string(),
            value,
            requirement,
            holds,
        });
    };

    push("D.F", d.fiber_degree(), Requirement::Positive);
    push("D.D", d.square(), Requirement::Positive);
    if c_hme1.is_zero() {
        push(
            "D.E_i (1 <= i <= 9)",
            d.intersect(&DivisorClass::exceptional(1)),
            Requirement::Positive,
        );
        push(
            "D.(aH - sum b_i E_i) at a = 1, i.e. c_H + c_F (H-E_1-E_2)",
            c_h + c_f,
            Requirement::Positive,
        );
        push(
            "c_H, since a is unbounded",
            c_h.clone(),
            Requirement::Nonnegative,
        );
    } else {
        push(
            "D.E_1",
            d.intersect(&DivisorClass::exceptional(1)),
            Requirement::Positive,
        );
        push(
            "D.E_i (2 <= i <= 9)",
            d.intersect(&DivisorClass::exceptional(2)),
            Requirement::Positive,
        );
        push(
            "D.(aH - sum b_i E_i) at a = b_1, i.e. c_F (H-E_1-E_2)",
            c_f.clone(),
            Requirement::Positive,
        );
        push(
            "c_{H-E1}, since a - b_1 is unbounded",
            c_hme1.clone(),
            Requirement::Nonnegative,
        );
    }
    let ample = trace.iter().all(|l| l.holds);
    Ok(AmpleDecision {
        divisor: d,
        ample,
        trace,
    })
}

/// `A_1 = (n/3)H + (n − 3/2)F`.
pub fn polarization_a1(n: i64) -> DivisorClass {
    &DivisorClass::hyperplane().scale(&frac(n, 3))
        + &DivisorClass::fiber().scale(&(int(n) - frac(3, 2)))
}

/// `A_2 = (n/2)(H − E_1) + (n − 3/2)F`.
pub fn polarization_a2(n: i64) -> DivisorClass {
    let hme1 = &DivisorClass::hyperplane() - &DivisorClass::exceptional(1);
    &hme1.scale(&frac(n, 2)) + &DivisorClass::fiber().scale(&(int(n) - frac(3, 2)))
}

pub fn ample_decision_a1(n: i64) -> Result<AmpleDecision> {
    is_ample_hf_family(&frac(n, 3), &Rational::zero(), &(int(n) - frac(3, 2)))
}

pub fn ample_decision_a2(n: i64) -> Result<AmpleDecision> {
    is_ample_hf_family(&Rational::zero(), &frac(n, 2), &(int(n) - frac(3, 2)))
}

pub fn self_intersection_report(d: &DivisorClass) -> Rational {
    d.square()
}

/// Closed form of `A_1²` in the lattice: `n²/9 + 2n(n − 3/2)` with `H·F = 3`.
pub fn a1_square_closed_form(n: i64) -> Rational {
    frac(19 * n * n, 9) - int(3 * n)
}

/// The value printed for `A_1²` in the source of the two polarizations, `10n²/9 − 3n/2`.
/// Kept only for the discrepancy report; it disagrees with [`a1_square_closed_form`].
pub fn a1_square_printed(n: i64) -> Rational {
    frac(10 * n * n, 9) - frac(3 * n, 2)
}

/// `A_2² = 2n(n − 3/2)`.
pub fn a2_square_closed_form(n: i64) -> Rational {
    int(2 * n) * (int(n) - frac(3, 2))
}
