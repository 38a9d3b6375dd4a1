use num_complex::Complex64;
use serde::Serialize;

use crate::cplane::{chordal, Cardinality, ExtendedComplex};
use crate::efset::EfSet;
use crate::error::{Error, Result};
use crate::ratfun::{count_zeros_in_disk, Meromorphic, RationalFunction};
use crate::verdict::Verdict;
use crate::weierstrass::Domain;

/// Targets closer than this (chordal) are rejected as duplicates.
pub const TARGET_SEPARATION: f64 = 1e-9;

/// `γ` values within this of a bound count as meeting it.
pub const GAMMA_SLACK: f64 = 1e-12;

/// A ramification multiplicity: a positive integer, or `∞` for an omitted
/// value.
pub type Multiplicity = Cardinality;

fn defect(e: Multiplicity) -> f64 {
    match e {
        Cardinality::Finite(k) => 1.0 - 1.0 / k as f64,
        Cardinality::Infinite => 1.0,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RamificationQuery {
    pub psi: RationalFunction,
    pub domain: Domain,
    pub targets: Vec<ExtendedComplex>,
    /// Lower bounds on the multiplicities to be verified, one per target.
    pub asserted: Option<Vec<Multiplicity>>,
}

impl RamificationQuery {
    pub fn new(psi: RationalFunction, domain: Domain, targets: Vec<ExtendedComplex>) -> Result<Self> {
        for (i, a) in targets.iter().enumerate() {
            if targets[i + 1..].iter().any(|b| chordal(*a, *b) <= TARGET_SEPARATION) {
                return Err(Error::InvalidInput(format!("duplicate target {a}")));
            }
        }
        domain.validate()?;
        Ok(Self { psi, domain, targets, asserted: None })
    }

    pub fn with_asserted(mut self, asserted: Vec<Multiplicity>) -> Result<Self> {
        if asserted.len() != self.targets.len() {
            return Err(Error::InvalidInput("one asserted multiplicity per target".into()));
        }
        self.asserted = Some(asserted);
        Ok(self)
    }
}

/// Argument-principle cross-check on a disk domain.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DiskCount {
    /// Zeros of `ψ − a` in the disk counted by the argument principle.
    pub total: usize,
    /// Counts on small circles around each preimage.
    pub local: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TargetProfile {
    pub target: ExtendedComplex,
    /// Preimages in the domain with their orders.
    pub preimages: Vec<(ExtendedComplex, usize)>,
    pub multiplicity: Multiplicity,
    pub disk_count: Option<DiskCount>,
    pub asserted: Option<Multiplicity>,
    /// Whether the computed multiplicity is at least the asserted one.
    pub asserted_holds: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RamificationReport {
    pub targets: Vec<TargetProfile>,
    /// `Σ (1 − 1/e_j)`.
    pub gamma: f64,
}

impl RamificationReport {
    pub fn multiplicities(&self) -> Vec<Multiplicity> {
        self.targets.iter().map(|t| t.multiplicity).collect()
    }

    /// Builds a report from given multiplicities, for synthetic audits.
    pub fn synthetic(targets: &[ExtendedComplex], multiplicities: &[Multiplicity]) -> Self {
        let targets: Vec<TargetProfile> = targets
            .iter()
            .zip(multiplicities)
            .map(|(&target, &multiplicity)| TargetProfile {
                target,
                preimages: Vec::new(),
                multiplicity,
                disk_count: None,
                asserted: None,
                asserted_holds: None,
            })
            .collect();
        let gamma = targets.iter().map(|t| defect(t.multiplicity)).sum();
        Self { targets, gamma }
    }
}

/// `Σ (1 − 1/e_j)` with `1/∞ = 0`.
pub fn gamma_sum(report: &RamificationReport) -> f64 {
    report.targets.iter().map(|t| defect(t.multiplicity)).sum()
}

fn disk_count(psi: &RationalFunction, a: Complex64, radius: f64, pre: &[(ExtendedComplex, usize)]) -> Option<DiskCount> {
    let m: Meromorphic = psi.clone().into();
    let total = count_zeros_in_disk(&m, a, Complex64::new(0.0, 0.0), radius).ok()?;
    let pts: Vec<Complex64> = pre.iter().filter_map(|(p, _)| p.as_finite()).collect();
    let mut local = Vec::with_capacity(pts.len());
    for (i, &p) in pts.iter().enumerate() {
        let sep = pts.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, q)| (p - q).norm()).fold(f64::INFINITY, f64::min);
        let r = (0.4 * sep).min(radius - p.norm()).min(0.1);
        local.push(count_zeros_in_disk(&m, a, p, r).ok()?);
    }
    Some(DiskCount { total, local })
}

/// Multiplicity of `ψ` over each target on the domain: the least order of
/// the in-domain preimages, or `∞` when there are none. Orders come from
/// exact root multiplicities; on disks they are cross-checked by the
/// argument principle on the boundary circle and on small circles around
/// each preimage.
pub fn ramification_profile(query: &RamificationQuery) -> Result<RamificationReport> {
    if query.psi.is_constant() {
        return Err(Error::InvalidInput("psi is constant".into()));
    }
    let critical = query.psi.critical_points()?;
    let mut targets = Vec::with_capacity(query.targets.len());
    for (j, &a) in query.targets.iter().enumerate() {
        let preimages: Vec<(ExtendedComplex, usize)> = query.psi.preimages_with(a, &critical)?.into_iter().filter(|(p, _)| query.domain.contains(*p)).collect();
        let multiplicity = preimages.iter().map(|(_, k)| *k).min().map_or(Cardinality::Infinite, Cardinality::Finite);
        let disk_count = match (&query.domain, a) {
            (Domain::Disk { radius }, ExtendedComplex::Finite(af)) => disk_count(&query.psi, af, *radius, &preimages),
            _ => None,
        };
        if let Some(dc) = &disk_count {
            let exact: usize = preimages.iter().map(|(_, k)| k).sum();
            let local_ok = dc.local.iter().zip(&preimages).all(|(c, (_, k))| c == k);
            if dc.total != exact || !local_ok {
                return Err(Error::MultiplicityMismatch(format!(
                    "target {a}: argument principle gives {} (local {:?}), roots give {exact}",
                    dc.total, dc.local
                )));
            }
        }
        let asserted = query.asserted.as_ref().map(|v| v[j]);
        targets.push(TargetProfile { target: a, preimages, multiplicity, disk_count, asserted, asserted_holds: asserted.map(|e| multiplicity >= e) });
    }
    let gamma = targets.iter().map(|t| defect(t.multiplicity)).sum();
    Ok(RamificationReport { targets, gamma })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RamiAudit {
    pub gamma1: f64,
    pub gamma2: f64,
    pub verdict: Verdict,
}

/// `min(γ₁, γ₂) ≤ 3` or `γ₁ = γ₂ = 4`.
pub fn audit_theorem_rami(report1: &RamificationReport, report2: &RamificationReport) -> RamiAudit {
    let (g1, g2) = (gamma_sum(report1), gamma_sum(report2));
    let ok = g1.min(g2) <= 3.0 + GAMMA_SLACK || ((g1 - 4.0).abs() <= GAMMA_SLACK && (g2 - 4.0).abs() <= GAMMA_SLACK);
    RamiAudit { gamma1: g1, gamma2: g2, verdict: Verdict::from_bool(ok) }
}

/// The exceptional-value count `q₁ = |E_f| + #{j : e_j = ∞}` against
/// `|E_f| ≤ q₁ ≤ m − |E_f| + 3`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExceptionalCount {
    pub q1: usize,
    pub lower: usize,
    pub upper: i64,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TheoremAAudit {
    pub m: usize,
    pub ef_count: Cardinality,
    pub q: usize,
    pub multiplicities: Vec<Multiplicity>,
    /// `|E_f| + Σ (1 − 1/e_j)`.
    pub gamma: Option<f64>,
    /// `m − |E_f| + 3`.
    pub bound: Option<i64>,
    /// `q > m − 2|E_f| + 3`.
    pub hypothesis: Option<String>,
    pub hypothesis_met: Option<bool>,
    pub route: String,
    pub exceptional: Option<ExceptionalCount>,
    pub completeness_asserted: bool,
    pub verdict: Verdict,
}

fn escalate(ok: bool, complete: bool) -> Verdict {
    match (ok, complete) {
        (true, _) => Verdict::Pass,
        (false, true) => Verdict::Contradiction,
        (false, false) => Verdict::Fail,
    }
}

/// Checks `γ = |E_f| + Σ(1 − 1/e_j) ≤ m − |E_f| + 3` for `ψ₁` under
/// `ψ₂ = f(ψ₁)`, and the exceptional-value count alongside it.
///
/// The verdict is `HYPOTHESIS_NOT_MET` when `q ≤ m − 2|E_f| + 3` and
/// `INAPPLICABLE` when `E_f` is a curve. A violated bound is `FAIL`, or
/// `CONTRADICTION` when the surface is asserted complete.
pub fn audit_theorem_a(f: &RationalFunction, ef: &EfSet, report: &RamificationReport, completeness_asserted: bool) -> Result<TheoremAAudit> {
    let m = f.degree();
    let q = report.targets.len();
    let multiplicities = report.multiplicities();
    let Some(e) = ef.len() else {
        return Ok(TheoremAAudit {
            m,
            ef_count: ef.cardinality,
            q,
            multiplicities,
            gamma: None,
            bound: None,
            hypothesis: None,
            hypothesis_met: None,
            route: "E_f is a curve; the bound needs a finite E_f".into(),
            exceptional: None,
            completeness_asserted,
            verdict: Verdict::Inapplicable,
        });
    };
    for t in &report.targets {
        if ef.contains(f, t.target) {
            return Err(Error::TargetInEf(t.target.to_string()));
        }
    }
    let (mi, ei, qi) = (m as i64, e as i64, q as i64);
    let bound = mi - ei + 3;
    let gamma = e as f64 + gamma_sum(report);
    let threshold = mi - 2 * ei + 3;
    let hypothesis_met = qi > threshold;
    let route = match (m, e) {
        (0, _) | (1, 2) => "entire graph: plane ramification bound 2",
        (1, 0) => "minimal-surface deformation: bound 4",
        _ => "general bound m - |E_f| + 3",
    };
    let q1 = e + multiplicities.iter().filter(|k| **k == Cardinality::Infinite).count();
    let exceptional = ExceptionalCount { q1, lower: e, upper: bound, verdict: escalate(q1 as i64 <= bound, completeness_asserted) };
    let verdict = if !hypothesis_met { Verdict::HypothesisNotMet } else { escalate(gamma <= bound as f64 + GAMMA_SLACK, completeness_asserted) };
    Ok(TheoremAAudit {
        m,
        ef_count: ef.cardinality,
        q,
        multiplicities,
        gamma: Some(gamma),
        bound: Some(bound),
        hypothesis: Some(format!("q = {q} > m - 2|E_f| + 3 = {threshold}")),
        hypothesis_met: Some(hypothesis_met),
        route: route.into(),
        exceptional: Some(exceptional),
        completeness_asserted,
        verdict,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CriticalValue {
    pub value: ExtendedComplex,
    pub preimages: Vec<(ExtendedComplex, usize)>,
    /// Least order over the preimages.
    pub e: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DefectReport {
    pub degree: usize,
    pub values: Vec<CriticalValue>,
    /// `Σ_a (1 − 1/e_a)` over critical values.
    pub sum: f64,
    /// `Σ (order − 1)` over all critical preimages.
    pub ramification_total: usize,
    /// Whether `ramification_total = 2·deg − 2`.
    pub riemann_hurwitz: bool,
    pub verdict: Verdict,
}

/// Totally-ramified audit of a rational map over the whole sphere: critical
/// values with the least preimage order `e_a`, the sum `Σ (1 − 1/e_a) ≤ 2`,
/// and the Riemann–Hurwitz total.
pub fn rational_defect_bound(psi: &RationalFunction) -> Result<DefectReport> {
    let d = psi.degree();
    if d == 0 {
        return Err(Error::InvalidInput("psi is constant".into()));
    }
    let critical = psi.critical_points()?;
    let mut values: Vec<CriticalValue> = Vec::new();
    for &(c, _) in &critical {
        let v = psi.eval(c);
        if values.iter().any(|cv| chordal(cv.value, v) <= 1e-7) {
            continue;
        }
        let preimages = psi.preimages_with(v, &critical)?;
        let total: usize = preimages.iter().map(|(_, k)| k).sum();
        if total != d {
            return Err(Error::MultiplicityMismatch(format!("preimages of {v} have total order {total}, degree is {d}")));
        }
        let e = preimages.iter().map(|(_, k)| *k).min().unwrap_or(1);
        values.push(CriticalValue { value: v, preimages, e });
    }
    values.sort_by(|a, b| a.value.report_cmp(&b.value));
    let sum = values.iter().map(|v| 1.0 - 1.0 / v.e as f64).sum::<f64>();
    let ramification_total: usize = values.iter().flat_map(|v| v.preimages.iter()).map(|(_, k)| k - 1).sum();
    let riemann_hurwitz = ramification_total == 2 * d - 2;
    let verdict = Verdict::from_bool(sum <= 2.0 + GAMMA_SLACK && riemann_hurwitz);
    Ok(DefectReport { degree: d, values, sum, ramification_total, riemann_hurwitz, verdict })
}
