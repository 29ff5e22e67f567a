//! Campaign orchestration, exit-code contract and the printed-vs-oracle table.

use std::collections::BTreeMap;
use std::path::Path;

use serde::Serialize;

use crate::bridgeland::{
    gieseker_wall, nef_from_wall, printed, rank2_radius_bound, wall_oracle, ChernChar,
    GiesekerCertificate, Slice, SliceKind,
};
use crate::error::{Error, Result};
use crate::hilb::{epsilon, theorem1_check, HilbDivisor, TheoremReport, Violation};
use crate::lattice::DivisorClass;
use crate::rational::{self, int, Rational};
use crate::surface::{
    a1_square_closed_form, a1_square_printed, ample_decision_a1, ample_decision_a2, AmpleDecision,
};
use crate::weyl::{reflect, root_basis};

/// Largest `n` a campaign accepts unless overridden.
pub const DEFAULT_MAX_N: i64 = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ExitStatus {
    Certified = 0,
    Falsified = 1,
    Usage = 2,
}

impl ExitStatus {
    pub fn code(self) -> i32 {
        self as i32
    }

    pub fn of_error(e: &Error) -> Self {
        match e {
            Error::Parse(_) | Error::InvalidInput(_) => Self::Usage,
            Error::DegenerateWall(_) | Error::Falsified(_) => Self::Falsified,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Campaign {
    pub n_min: i64,
    pub n_max: i64,
    pub max_h_degree: i64,
    pub slices: Vec<SliceKind>,
    pub max_n: i64,
}

impl Campaign {
    pub fn validate(&self) -> Result<()> {
        if self.n_min < 3 {
            return Err(Error::InvalidInput(format!(
                "n must be at least 3, got {}",
                self.n_min
            )));
        }
        if self.n_max < self.n_min || self.n_max > self.max_n {
            return Err(Error::InvalidInput(format!(
                "n range {}..{} must be nonempty and within [3, {}]",
                self.n_min, self.n_max, self.max_n
            )));
        }
        if self.max_h_degree < 0 {
            return Err(Error::InvalidInput(format!(
                "degree bound must be >= 0, got {}",
                self.max_h_degree
            )));
        }
        if self.slices.is_empty() {
            return Err(Error::InvalidInput("no slices selected".into()));
        }
        Ok(())
    }
}

/// The duality scan without the full pairing matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TheoremSummary {
    pub n: i64,
    pub degree_bound: i64,
    pub section_count: usize,
    pub nef_generator_count: usize,
    pub curve_generator_count: usize,
    pub negative_pairings: Vec<Violation>,
    pub orthogonality_witnesses: BTreeMap<String, Option<String>>,
    pub epsilon_fiber_failures: Vec<Violation>,
    pub notes: Vec<String>,
    pub violations: usize,
    pub certified: bool,
}

impl From<&TheoremReport> for TheoremSummary {
    fn from(r: &TheoremReport) -> Self {
        Self {
            n: r.n,
            degree_bound: r.degree_bound,
            section_count: r.section_count,
            nef_generator_count: r.nef_generators.len(),
            curve_generator_count: r.curve_generators.len(),
            negative_pairings: r.negative_pairings.clone(),
            orthogonality_witnesses: r.orthogonality_witnesses.clone(),
            epsilon_fiber_failures: r.epsilon_fiber_failures.clone(),
            notes: r.notes.clone(),
            violations: r.violations,
            certified: r.certified(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NefFromWallCheck {
    pub slice: SliceKind,
    pub n: i64,
    #[serde(with = "rational")]
    pub center: Rational,
    pub from_wall: HilbDivisor,
    /// `ε(H)` for the first slice, `ε(H−E_1)` for the second.
    pub expected_label: String,
    pub expected: HilbDivisor,
    pub matches: bool,
}

pub fn nef_from_wall_check(kind: SliceKind, n: i64, center: &Rational) -> Result<NefFromWallCheck> {
    let h = DivisorClass::hyperplane();
    let (label, c) = match kind {
        SliceKind::A1 => ("eps(H)", h),
        SliceKind::A2 => ("eps(H - E1)", &h - &DivisorClass::exceptional(1)),
    };
    let expected = epsilon(&c, n)?;
    let from_wall = nef_from_wall(&Slice::standard(kind, n), center);
    Ok(NefFromWallCheck {
        slice: kind,
        n,
        center: center.clone(),
        matches: from_wall == expected,
        from_wall,
        expected_label: label.into(),
        expected,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiscrepancyRow {
    pub quantity: String,
    pub slice: Option<SliceKind>,
    pub n: Option<i64>,
    pub printed: String,
    pub oracle: String,
    pub agree: bool,
}

impl DiscrepancyRow {
    fn exact(
        quantity: &str,
        slice: Option<SliceKind>,
        n: i64,
        printed: &Rational,
        oracle: &Rational,
    ) -> Self {
        Self {
            quantity: quantity.into(),
            slice,
            n: Some(n),
            printed: rational::to_string(printed),
            oracle: rational::to_string(oracle),
            agree: printed == oracle,
        }
    }
}

/// Whether a rank-one wall stays inside the `O(−F)` wall under each set of values.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DominanceCheck {
    pub slice: SliceKind,
    pub n: i64,
    pub subobject: String,
    #[serde(with = "rational")]
    pub fiber_wall_center: Rational,
    #[serde(with = "rational")]
    pub oracle_center: Rational,
    #[serde(with = "rational")]
    pub printed_center: Rational,
    pub dominated_under_oracle: bool,
    pub dominated_under_printed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiscrepancyTable {
    pub rows: Vec<DiscrepancyRow>,
    pub dominance: Vec<DominanceCheck>,
    pub dominance_holds_under_oracle: bool,
}

/// Center of the wall of `O(−X)` against the ideal of `n` points.
pub fn oracle_center(sl: &Slice, neg_l: &DivisorClass, n: i64) -> Result<Rational> {
    let w = wall_oracle(
        sl,
        &ChernChar::line_bundle(&-neg_l.clone()),
        &ChernChar::ideal_of_points(n),
    )?;
    Ok(w.center)
}

fn radius_sq(sl: &Slice, neg_l: &DivisorClass, n: i64) -> Result<Rational> {
    let w = wall_oracle(
        sl,
        &ChernChar::line_bundle(&-neg_l.clone()),
        &ChernChar::ideal_of_points(n),
    )?;
    Ok(w.radius_sq)
}

/// Rank ≥ 2 bound evaluated with an arbitrary value of `A²` (and `P = −F`).
fn rank2_bound_with_square(a_sq: &Rational, n: i64) -> Rational {
    let ap = int(-n);
    (int(2 * n) * a_sq + &ap * &ap) / (int(8) * a_sq * a_sq)
}

pub fn emit_discrepancy_table(ns: &[i64], slices: &[SliceKind]) -> Result<DiscrepancyTable> {
    let e = DivisorClass::exceptional;
    let h = DivisorClass::hyperplane();
    let f = DivisorClass::fiber();
    let mut rows = Vec::new();
    let mut dominance = Vec::new();

    // reflection in E1 − E2 applied to E1, with each sign convention
    let beta = &root_basis()[0];
    let printed_img = &e(1) - &beta.class().scale(&e(1).intersect(beta.class()));
    let oracle_img = reflect(beta, &e(1));
    rows.push(DiscrepancyRow {
        quantity: "reflection s_(E1-E2)(E1); printed sign D - (D.b)b vs isometric D + (D.b)b"
            .into(),
        slice: None,
        n: None,
        printed: format!(
            "{printed_img} (square {})",
            rational::to_string(&printed_img.square())
        ),
        oracle: format!(
            "{oracle_img} (square {})",
            rational::to_string(&oracle_img.square())
        ),
        agree: printed_img == oracle_img,
    });
    rows.push(DiscrepancyRow {
        quantity: "class used for the second nef family".into(),
        slice: None,
        n: None,
        printed: "eps(H - E2)".into(),
        oracle: "eps(H - E1)".into(),
        agree: false,
    });

    for &n in ns {
        rows.push(DiscrepancyRow::exact(
            "A1^2",
            Some(SliceKind::A1),
            n,
            &a1_square_printed(n),
            &a1_square_closed_form(n),
        ));
        for &kind in slices {
            let sl = Slice::standard(kind, n);
            let a_sq = sl.a_square();
            let f_center = oracle_center(&sl, &f, n)?;
            rows.push(DiscrepancyRow::exact(
                "F-wall radius^2",
                Some(kind),
                n,
                &printed::fiber_wall_radius_sq(&a_sq, n),
                &radius_sq(&sl, &f, n)?,
            ));
            let (printed_rank2, label) = match kind {
                SliceKind::A1 => (
                    rank2_bound_with_square(&a1_square_printed(n), n),
                    "rank>=2 radius^2 bound",
                ),
                SliceKind::A2 => (rank2_bound_with_square(&a_sq, n), "rank>=2 radius^2 bound"),
            };
            rows.push(DiscrepancyRow::exact(
                label,
                Some(kind),
                n,
                &printed_rank2,
                &rank2_radius_bound(&sl, n),
            ));

            let mut subs: Vec<(String, DivisorClass, Rational)> = Vec::new();
            match kind {
                SliceKind::A1 => {
                    subs.push(("E_i".into(), e(1), printed::exceptional_center(n)));
                    subs.push((
                        "H - E_i - E_j".into(),
                        &(&h - &e(1)) - &e(2),
                        printed::conic_center_first_slice(n),
                    ));
                }
                SliceKind::A2 => {
                    subs.push(("E1".into(), e(1), printed::e1_center_second_slice()));
                    subs.push(("E_i, i >= 2".into(), e(2), printed::exceptional_center(n)));
                    subs.push((
                        "H - E1 - E_i".into(),
                        &(&h - &e(1)) - &e(2),
                        printed::exceptional_center(n),
                    ));
                }
            }
            for (name, cls, printed) in subs {
                let oracle = oracle_center(&sl, &cls, n)?;
                rows.push(DiscrepancyRow::exact(
                    &format!("{name} wall center"),
                    Some(kind),
                    n,
                    &printed,
                    &oracle,
                ));
                dominance.push(DominanceCheck {
                    slice: kind,
                    n,
                    subobject: name,
                    fiber_wall_center: f_center.clone(),
                    dominated_under_oracle: oracle >= f_center,
                    dominated_under_printed: printed >= f_center,
                    oracle_center: oracle,
                    printed_center: printed,
                });
            }
        }
    }
    let dominance_holds_under_oracle = dominance.iter().all(|d| d.dominated_under_oracle);
    Ok(DiscrepancyTable {
        rows,
        dominance,
        dominance_holds_under_oracle,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PerN {
    pub n: i64,
    pub theorem: TheoremSummary,
    pub ampleness: Vec<AmpleDecision>,
    pub walls: Vec<GiesekerCertificate>,
    pub nef_from_wall: Vec<NefFromWallCheck>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CampaignReport {
    pub campaign: Campaign,
    pub per_n: Vec<PerN>,
    pub discrepancies: Option<DiscrepancyTable>,
    pub failures: Vec<String>,
    pub certified: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CampaignOutcome {
    pub status: ExitStatus,
    pub report: Option<CampaignReport>,
    pub error: Option<String>,
}

fn run_n(c: &Campaign, n: i64, failures: &mut Vec<String>) -> Result<PerN> {
    let thm = theorem1_check(n, c.max_h_degree)?;
    if !thm.certified() {
        failures.push(format!(
            "n={n}: duality scan found {} violations",
            thm.violations
        ));
    }
    let mut ampleness = Vec::new();
    let mut walls = Vec::new();
    let mut nef_checks = Vec::new();
    for &kind in &c.slices {
        let dec = match kind {
            SliceKind::A1 => ample_decision_a1(n)?,
            SliceKind::A2 => ample_decision_a2(n)?,
        };
        if !dec.ample {
            failures.push(format!("n={n}: polarization {kind} is not ample"));
        }
        ampleness.push(dec);
        match gieseker_wall(kind, n, c.max_h_degree) {
            Ok(cert) => {
                let check = nef_from_wall_check(kind, n, &cert.wall.center)?;
                if !check.matches {
                    failures.push(format!(
                        "n={n}: wall class for {kind} differs from {}",
                        check.expected_label
                    ));
                }
                nef_checks.push(check);
                walls.push(cert);
            }
            Err(e @ Error::Falsified(_)) | Err(e @ Error::DegenerateWall(_)) => {
                failures.push(e.to_string())
            }
            Err(e) => return Err(e),
        }
    }
    Ok(PerN {
        n,
        theorem: TheoremSummary::from(&thm),
        ampleness,
        walls,
        nef_from_wall: nef_checks,
    })
}

/// Runs every check for every `n` in the campaign. Exit status is `Usage` for
/// invalid input, `Falsified` if any check fails, and `Certified` otherwise.
pub fn run_campaign(c: &Campaign) -> CampaignOutcome {
    if let Err(e) = c.validate() {
        return CampaignOutcome {
            status: ExitStatus::Usage,
            report: None,
            error: Some(e.to_string()),
        };
    }
    let mut failures = Vec::new();
    let mut per_n = Vec::new();
    for n in c.n_min..=c.n_max {
        match run_n(c, n, &mut failures) {
            Ok(r) => per_n.push(r),
            Err(e) => {
                return CampaignOutcome {
                    status: ExitStatus::of_error(&e),
                    report: None,
                    error: Some(e.to_string()),
                }
            }
        }
    }
    let ns: Vec<i64> = (c.n_min..=c.n_max).collect();
    let discrepancies = match emit_discrepancy_table(&ns, &c.slices) {
        Ok(t) => {
            if !t.dominance_holds_under_oracle {
                failures
                    .push("a rank-one wall lies outside the O(-F) wall under oracle values".into());
            }
            Some(t)
        }
        Err(e) => {
            failures.push(format!("discrepancy table: {e}"));
            None
        }
    };
    let certified = failures.is_empty();
    CampaignOutcome {
        status: if certified {
            ExitStatus::Certified
        } else {
            ExitStatus::Falsified
        },
        report: Some(CampaignReport {
            campaign: c.clone(),
            per_n,
            discrepancies,
            failures,
            certified,
        }),
        error: None,
    }
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}

/// Writes `value` as JSON to `out`, or to stdout when `out` is `None`.
pub fn emit<T: Serialize>(value: &T, out: Option<&Path>) -> std::io::Result<()> {
    let text = to_json(value);
    match out {
        Some(p) => std::fs::write(p, text),
        None => {
            use std::io::Write;
            std::io::stdout().lock().write_all(text.as_bytes())
        }
    }
}
