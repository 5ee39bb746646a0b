//! Checks presented algebras against root data: surviving weights, total
//! dimension, necessity of each higher-order element and ℤ-gradings.

use std::collections::BTreeMap;

use serde_json::json;

use crate::error::Result;
use crate::freelie::Multidegree;
use crate::quotient::{
    check_lowering_stability, GradedQuotientReport, QuotientAlgebra, StabilityEntry, ZGradingReport,
};
use crate::rootdata::{PositiveRoot, RootDatum, SimpleSystem};
use crate::serre::{Presentation, Provenance};

/// Environment variable overriding the default height cap.
pub const MAX_HEIGHT_ENV: &str = "SUPERSERRE_MAX_HEIGHT";

/// `2·ht(θ) + 2` for the highest root θ, unless overridden.
pub fn height_cap(roots: &[PositiveRoot], explicit: Option<u32>) -> u32 {
    if let Some(h) = explicit {
        return h;
    }
    if let Some(h) = std::env::var(MAX_HEIGHT_ENV)
        .ok()
        .and_then(|v| v.parse().ok())
    {
        return h;
    }
    let top = roots
        .iter()
        .map(|r| r.coeffs.iter().sum::<u32>())
        .max()
        .unwrap_or(1);
    2 * top + 2
}

/// Root multiplicities by simple-root coordinates.
pub fn reference_weights(roots: &[PositiveRoot]) -> BTreeMap<Multidegree, usize> {
    let mut out = BTreeMap::new();
    for r in roots {
        *out.entry(r.coeffs.clone()).or_insert(0) += 1;
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub nu: Multidegree,
    pub expected: usize,
    pub got: usize,
}

#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub family: String,
    /// Index into the enumerated simple systems, if known.
    pub borel: Option<usize>,
    pub pass: bool,
    pub mismatches: Vec<Mismatch>,
    pub total_expected: usize,
    pub total_got: Option<usize>,
    pub notes: Vec<String>,
    pub quotient: GradedQuotientReport,
}

impl VerificationReport {
    pub fn summary(&self) -> String {
        let verdict = if self.pass { "PASS" } else { "FAIL" };
        let got = self
            .total_got
            .map_or_else(|| "unclosed".to_string(), |t| t.to_string());
        let borel = self
            .borel
            .map_or_else(String::new, |b| format!(" borel={b}"));
        if self.pass {
            format!("{verdict} total={got} {}{borel}", self.family)
        } else {
            format!(
                "{verdict} total={got} expected={} {}{borel} mismatches={}",
                self.total_expected,
                self.family,
                self.mismatches.len()
            )
        }
    }

    pub fn to_json(&self, rank: usize) -> serde_json::Value {
        json!({
            "family": self.family,
            "borel": self.borel,
            "pass": self.pass,
            "totalExpected": self.total_expected,
            "totalGot": self.total_got,
            "mismatches": self.mismatches.iter().map(|m| json!({
                "nu": m.nu, "expected": m.expected, "got": m.got,
            })).collect::<Vec<_>>(),
            "notes": self.notes,
            "quotient": self.quotient.to_json(rank),
        })
    }
}

/// Everything computed for one Borel class.
#[derive(Clone, Debug)]
pub struct BorelRun {
    pub presentation: Presentation,
    pub roots: Vec<PositiveRoot>,
    pub algebra: QuotientAlgebra,
    pub report: VerificationReport,
}

pub fn run_borel(
    datum: &RootDatum,
    pi: &SimpleSystem,
    borel: Option<usize>,
    max_height: Option<u32>,
) -> Result<BorelRun> {
    let presentation = Presentation::new(datum, pi)?;
    let roots = datum.positive_roots(pi)?;
    let cap = height_cap(&roots, max_height);
    let mut algebra = QuotientAlgebra::from_presentation(&presentation);
    let quotient = algebra.build(cap);
    let expected = reference_weights(&roots);
    let got = quotient.surviving();
    // Weights above the last computed height are unknown, not missing.
    let seen =
        |nu: &Multidegree| quotient.closed || nu.iter().sum::<u32>() <= quotient.max_height_reached;
    let mut mismatches = Vec::new();
    for nu in expected.keys().chain(got.keys()).filter(|nu| seen(nu)) {
        let (e, g) = (
            expected.get(nu).copied().unwrap_or(0),
            got.get(nu).copied().unwrap_or(0),
        );
        if e != g && !mismatches.iter().any(|m: &Mismatch| &m.nu == nu) {
            mismatches.push(Mismatch {
                nu: nu.clone(),
                expected: e,
                got: g,
            });
        }
    }
    let rank = pi.len();
    let total_expected = datum.dimension();
    let total_got = quotient.total_dimension(rank).ok();
    let mut notes = Vec::new();
    if !quotient.closed {
        notes.push(format!("no closure up to height {cap}: unbounded growth"));
    }
    let pass = mismatches.is_empty() && total_got == Some(total_expected);
    let report = VerificationReport {
        family: datum.family().to_string(),
        borel,
        pass,
        mismatches,
        total_expected,
        total_got,
        notes,
        quotient,
    };
    Ok(BorelRun {
        presentation,
        roots,
        algebra,
        report,
    })
}

pub fn verify_presentation(
    datum: &RootDatum,
    pi: &SimpleSystem,
    max_height: Option<u32>,
) -> Result<VerificationReport> {
    Ok(run_borel(datum, pi, None, max_height)?.report)
}

pub fn verify_all_borels(
    datum: &RootDatum,
    max_height: Option<u32>,
) -> Result<Vec<VerificationReport>> {
    datum
        .simple_systems()
        .iter()
        .enumerate()
        .map(|(k, pi)| Ok(run_borel(datum, pi, Some(k), max_height)?.report))
        .collect()
}

/// Outcome of removing one e-side element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Necessity {
    pub index: usize,
    pub provenance: Provenance,
    pub necessary: bool,
    /// The first weight (in height order) whose dimension exceeds the root
    /// multiplicity once the element is removed.
    pub first_excess: Option<Mismatch>,
    pub max_height: u32,
}

impl Necessity {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "index": self.index + 1,
            "provenance": self.provenance.to_string(),
            "necessary": self.necessary,
            "firstExcess": self.first_excess.as_ref().map(|m| json!({
                "nu": m.nu, "expected": m.expected, "got": m.got,
            })),
            "maxHeight": self.max_height,
        })
    }
}

/// Rebuilds the quotient without element `index` and reports whether some
/// weight grows beyond its root multiplicity within `cap`.
pub fn necessity_test(
    p: &Presentation,
    roots: &[PositiveRoot],
    index: usize,
    cap: u32,
) -> Necessity {
    let expected = reference_weights(roots);
    let mut q = QuotientAlgebra::from_presentation(&p.without(index));
    let mut first_excess = None;
    while first_excess.is_none() && !q.is_closed() && q.height() < cap {
        for w in q.step() {
            let e = expected.get(&w.nu).copied().unwrap_or(0);
            if w.dim > e {
                first_excess = Some(Mismatch {
                    nu: w.nu,
                    expected: e,
                    got: w.dim,
                });
                break;
            }
        }
    }
    Necessity {
        index,
        provenance: p.e_side[index].provenance,
        necessary: first_excess.is_some(),
        first_excess,
        max_height: cap,
    }
}

/// Necessity of every higher-order element of the presentation.
pub fn necessity_all(p: &Presentation, roots: &[PositiveRoot], cap: u32) -> Vec<Necessity> {
    p.higher_order()
        .map(|(k, _)| necessity_test(p, roots, k, cap))
        .collect()
}

/// One row of a ℤ-grading comparison.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradingRow {
    pub k: usize,
    pub presented: usize,
    pub reference: usize,
}

impl GradingRow {
    pub fn equal(&self) -> bool {
        self.presented == self.reference
    }
}

/// `dim g_k` from the quotient against `dim L_k` from the root system.
pub fn compare_z_grading(
    rep: &GradedQuotientReport,
    roots: &[PositiveRoot],
    rank: usize,
    d: usize,
) -> Vec<GradingRow> {
    let g = ZGradingReport::from_weights(&rep.surviving(), rank, d);
    let l = ZGradingReport::from_weights(&reference_weights(roots), rank, d);
    let n = g.dims.len().max(l.dims.len());
    (0..n)
        .map(|k| GradingRow {
            k,
            presented: g.dims.get(k).copied().unwrap_or(0),
            reference: l.dims.get(k).copied().unwrap_or(0),
        })
        .collect()
}

/// Lowering entries whose result leaves the ideal.
pub fn stability_violations(run: &BorelRun) -> Vec<StabilityEntry> {
    check_lowering_stability(&run.presentation, &run.algebra)
        .into_iter()
        .filter(|e| !e.in_ideal)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::Family;

    #[test]
    fn sl21_all_borels() {
        let d = RootDatum::new(Family::A { m: 1, n: 0 }).unwrap();
        let reps = verify_all_borels(&d, None).unwrap();
        assert_eq!(reps.len(), 3);
        for r in reps {
            assert!(r.pass, "{}", r.summary());
            assert_eq!(r.total_got, Some(8));
        }
    }

    #[test]
    fn sl22_quartic_is_necessary() {
        let d = RootDatum::new(Family::A { m: 1, n: 1 }).unwrap();
        let run = run_borel(&d, &d.distinguished(), None, None).unwrap();
        assert!(run.report.pass);
        let res = necessity_all(&run.presentation, &run.roots, 20);
        assert_eq!(res.len(), 1);
        assert!(res[0].necessary);
        assert_eq!(res[0].first_excess.as_ref().unwrap().nu, vec![1, 2, 1]);
    }

    #[test]
    fn tight_cap_reports_unbounded_growth() {
        let d = RootDatum::new(Family::A { m: 2, n: 1 }).unwrap();
        let r = verify_presentation(&d, &d.distinguished(), Some(2)).unwrap();
        assert!(!r.pass);
        assert_eq!(r.total_got, None);
        assert!(r.notes[0].contains("unbounded"));
    }
}
