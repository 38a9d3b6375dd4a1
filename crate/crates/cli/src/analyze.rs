//! `analyze`: regularity, periods, `E_f`, classification and audits for one
//! surface description.

use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::Serialize;
use stasurf::cplane::{classify_conjugate_similarity, DegeneracyClass, ExtendedComplex};
use stasurf::efset::{admissibility_check, ef_solve, AdmissibilityReport, EfSet, EF_TOL};
use stasurf::ratfun::Contour;
use stasurf::valuedist::{audit_theorem_a, audit_theorem_rami, ramification_profile, RamiAudit, RamificationQuery, RamificationReport, TheoremAAudit};
use stasurf::verdict::Verdict;
use stasurf::weierstrass::{
    check_periods, check_regularity, completeness_probe, CompletenessReport, Domain, GridSpec, PeriodMethod, PeriodReport, RegularityReport, SurfaceSpec,
};

use crate::gallery::{self, GalleryEntry};
use crate::{exit_code_for, CliError, CliResult};

/// Length beyond which a completeness-probe ray counts as divergent.
pub const PROBE_CUTOFF: f64 = 100.0;

/// Reads a surface description from a path, or `gallery:NAME`. Files holding
/// a gallery entry (`{"surface": ..., "expected": ...}`) are accepted too.
pub fn load_surface(arg: &str) -> CliResult<SurfaceSpec> {
    if let Some(name) = arg.strip_prefix("gallery:") {
        return Ok(gallery::find(name)?.surface);
    }
    let text = std::fs::read_to_string(arg).map_err(|e| CliError::parse(format!("{arg}: {e}")))?;
    let is_entry = serde_json::from_str::<serde_json::Value>(&text).ok().is_some_and(|v| v.get("surface").is_some());
    if is_entry {
        Ok(GalleryEntry::from_json(&text).map_err(|e| CliError::parse(format!("{arg}: {e}")))?.surface)
    } else {
        SurfaceSpec::from_json(&text).map_err(|e| CliError::parse(format!("{arg}: {e}")))
    }
}

/// Grid used when the description has none.
pub fn default_grid(domain: &Domain) -> GridSpec {
    match *domain {
        Domain::Disk { radius } => GridSpec::Polar { center: Complex64::new(0.0, 0.0), r: [0.0, 0.9 * radius], theta: [0.0, TAU], nr: 12, ntheta: 33 },
        _ => GridSpec::Rect { u: [-1.0, 1.0], v: [-1.0, 1.0], nu: 21, nv: 21 },
    }
}

/// Overrides given on the command line.
#[derive(Debug, Clone, PartialEq)]
pub struct Overrides {
    pub grid_counts: Option<(usize, usize)>,
    pub window: Option<([f64; 2], [f64; 2])>,
    pub loops: Option<Vec<Contour>>,
    pub targets: Option<Vec<ExtendedComplex>>,
    /// Acceptance threshold for `E_f` candidates.
    pub ef_tol: f64,
}

impl Default for Overrides {
    fn default() -> Self {
        Self { grid_counts: None, window: None, loops: None, targets: None, ef_tol: EF_TOL }
    }
}

impl Overrides {
    pub fn grid(&self, spec: &SurfaceSpec) -> GridSpec {
        let mut g = spec.grid.clone().unwrap_or_else(|| default_grid(&spec.domain));
        if let Some((a, b)) = self.window {
            g = g.with_window(a, b);
        }
        if let Some((n, m)) = self.grid_counts {
            g = g.with_counts(n, m);
        }
        g
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NamedVerdict {
    pub check: &'static str,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Classification {
    pub class: Option<DegeneracyClass>,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AnalysisReport {
    pub name: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
    pub completeness_asserted: bool,
    pub grid: GridSpec,
    pub regularity: RegularityReport,
    pub periods: PeriodReport,
    pub ef: Option<EfSet>,
    pub classification: Option<Classification>,
    pub admissibility: Option<AdmissibilityReport>,
    pub ramification_psi1: Option<RamificationReport>,
    pub ramification_psi2: Option<RamificationReport>,
    pub theorem_a: Option<TheoremAAudit>,
    pub rami: Option<RamiAudit>,
    pub completeness_probe: Option<CompletenessReport>,
    pub verdicts: Vec<NamedVerdict>,
    pub exit_code: i32,
}

fn profile(psi: &stasurf::ratfun::RationalFunction, domain: &Domain, targets: &[ExtendedComplex]) -> CliResult<Option<RamificationReport>> {
    if targets.is_empty() || psi.is_constant() {
        return Ok(None);
    }
    Ok(Some(ramification_profile(&RamificationQuery::new(psi.clone(), domain.clone(), targets.to_vec())?)?))
}

pub fn analyze(spec: &SurfaceSpec, ov: &Overrides) -> CliResult<AnalysisReport> {
    let data = spec.to_data()?;
    let grid = ov.grid(spec);
    let points = grid.points();
    let complete = spec.completeness_asserted();
    let mut verdicts = Vec::new();

    let regularity = check_regularity(&data, &points)?;
    verdicts.push(NamedVerdict { check: "regularity", verdict: Verdict::from_bool(regularity.pass) });
    let loops = ov.loops.as_ref().unwrap_or(&spec.loops);
    let periods = check_periods(&data, loops, PeriodMethod::Auto)?;
    verdicts.push(NamedVerdict { check: "periods", verdict: Verdict::from_bool(periods.pass) });

    let (mut ef, mut classification, mut admissibility) = (None, None, None);
    if let Some(f) = &spec.f {
        let set = ef_solve(f, ov.ef_tol)?;
        if f.degree() == 1 {
            let s = f.to_mobius().ok_or_else(|| CliError::numeric("degree-one f has no Möbius form"))?;
            classification = Some(match classify_conjugate_similarity(&s) {
                Ok(c) => Classification { class: Some(c), error: None },
                Err(e) => Classification { class: None, error: Some(e.to_string()) },
            });
        }
        let adm = admissibility_check(f.degree(), set.cardinality);
        // The bounds constrain complete surfaces only.
        let v = if !complete {
            Verdict::HypothesisNotMet
        } else if adm.all_pass() {
            Verdict::Pass
        } else {
            Verdict::Fail
        };
        verdicts.push(NamedVerdict { check: "admissibility", verdict: v });
        ef = Some(set);
        admissibility = Some(adm);
    }

    let targets = ov.targets.as_ref().unwrap_or(&spec.targets);
    let ramification_psi1 = profile(&spec.psi1, &spec.domain, targets)?;
    let psi2 = data.as_rational().map(|r| r.psi2.clone());
    let ramification_psi2 = match &psi2 {
        Some(p) => profile(p, &spec.domain, &spec.targets_psi2)?,
        None => None,
    };
    let mut theorem_a = None;
    if let (Some(f), Some(set), Some(report)) = (&spec.f, &ef, &ramification_psi1) {
        let audit = audit_theorem_a(f, set, report, complete)?;
        verdicts.push(NamedVerdict { check: "theorem_a", verdict: audit.verdict });
        if let Some(x) = &audit.exceptional {
            verdicts.push(NamedVerdict { check: "exceptional_values", verdict: x.verdict });
        }
        theorem_a = Some(audit);
    }
    let rami = match (&ramification_psi1, &ramification_psi2) {
        (Some(a), Some(b)) => {
            let audit = audit_theorem_rami(a, b);
            verdicts.push(NamedVerdict { check: "rami", verdict: audit.verdict });
            Some(audit)
        }
        _ => None,
    };
    let completeness_probe = if spec.rays.is_empty() { None } else { Some(completeness_probe(&data, &spec.rays, PROBE_CUTOFF)?) };

    let exit_code = exit_code_for(verdicts.iter().map(|v| &v.verdict));
    Ok(AnalysisReport {
        name: spec.name.clone(),
        description: spec.description.clone(),
        completeness_asserted: complete,
        grid,
        regularity,
        periods,
        ef,
        classification,
        admissibility,
        ramification_psi1,
        ramification_psi2,
        theorem_a,
        rami,
        completeness_probe,
        verdicts,
        exit_code,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use stasurf::cplane::Cardinality;

    #[test]
    fn catenoid_report() {
        let spec = gallery::find("catenoid-r3").unwrap().surface;
        let r = analyze(&spec, &Overrides::default()).unwrap();
        assert_eq!(r.exit_code, 0);
        match r.classification.unwrap().class.unwrap() {
            DegeneracyClass::Elliptic { alpha } => assert!((alpha - std::f64::consts::FRAC_PI_2).abs() < 1e-12),
            c => panic!("{c:?}"),
        }
        assert_eq!(r.ef.unwrap().cardinality, Cardinality::Finite(0));
    }

    #[test]
    fn parabolic_budget() {
        let spec = gallery::find("parabolic-graph").unwrap().surface;
        let r = analyze(&spec, &Overrides::default()).unwrap();
        assert_eq!(r.ef.unwrap().cardinality, Cardinality::Finite(1));
        assert_eq!(r.admissibility.unwrap().exceptional_budget, Some(3));
        assert_eq!(r.theorem_a.unwrap().verdict, Verdict::Pass);
        assert_eq!(r.exit_code, 0);
    }

    #[test]
    fn overrides_apply() {
        let spec = gallery::find("enneper-like").unwrap().surface;
        let ov = Overrides { grid_counts: Some((5, 3)), window: Some(([0.0, 1.0], [0.0, 2.0])), ..Overrides::default() };
        let g = ov.grid(&spec);
        assert_eq!(g.shape(), (3, 5));
        assert_eq!(g.node(2, 4), Complex64::new(1.0, 2.0));
    }
}
