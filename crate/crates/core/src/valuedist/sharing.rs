use serde::Serialize;

use crate::cplane::{chordal, Cardinality, ExtendedComplex};
use crate::efset::EfSet;
use crate::error::Result;
use crate::ratfun::{roots_with_multiplicity, RationalFunction, ROOT_TOL};
use crate::verdict::Verdict;
use crate::weierstrass::Domain;

/// Points and values closer than this (chordal) are identified.
pub const SHARE_TOL: f64 = 1e-7;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SharedValue {
    pub value: ExtendedComplex,
    /// The common preimage set in the domain.
    pub preimages: Vec<ExtendedComplex>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SharedValueReport {
    /// `ψ ≡ ψ̂`; nothing else is computed.
    pub identical: bool,
    /// Values with equal nonempty preimage sets.
    pub shared: Vec<SharedValue>,
    /// Values omitted on the domain by both functions.
    pub both_omitted: Vec<ExtendedComplex>,
    /// Values `ψ(z)` at coincidence points `ψ(z) = ψ̂(z)` that are not shared.
    pub rejected: Vec<ExtendedComplex>,
    pub count_both_omitted: bool,
    /// Number of shared values, including the both-omitted ones when
    /// `count_both_omitted` is set.
    pub q: usize,
}

fn in_domain_preimages(f: &RationalFunction, a: ExtendedComplex, domain: &Domain) -> Result<Vec<ExtendedComplex>> {
    let mut pts: Vec<ExtendedComplex> = f.preimages(a)?.into_iter().map(|(p, _)| p).filter(|p| domain.contains(*p)).collect();
    pts.sort_by(|a, b| a.report_cmp(b));
    Ok(pts)
}

fn same_set(a: &[ExtendedComplex], b: &[ExtendedComplex]) -> bool {
    a.iter().all(|p| b.iter().any(|q| chordal(*p, *q) <= SHARE_TOL)) && b.iter().all(|p| a.iter().any(|q| chordal(*p, *q) <= SHARE_TOL))
}

fn push_value(list: &mut Vec<ExtendedComplex>, v: ExtendedComplex) -> bool {
    if list.iter().any(|w| chordal(*w, v) <= SHARE_TOL) {
        false
    } else {
        list.push(v);
        true
    }
}

/// Values shared by `ψ` and `ψ̂` on the domain, ignoring multiplicity.
///
/// A shared value with a nonempty preimage is taken at a point where
/// `ψ = ψ̂`, so the candidates are the images of the roots of
/// `P Q̂ − P̂ Q` (and of `∞` when both functions agree there). Each candidate
/// is confirmed by comparing preimage sets. Values omitted by both are
/// found among the images of removed points and counted only on request.
pub fn shared_values(psi: &RationalFunction, psi_hat: &RationalFunction, domain: &Domain, count_both_omitted: bool) -> Result<SharedValueReport> {
    let diff = psi.sub(psi_hat);
    if diff.num().is_zero() {
        return Ok(SharedValueReport { identical: true, shared: Vec::new(), both_omitted: Vec::new(), rejected: Vec::new(), count_both_omitted, q: 0 });
    }
    let mut points: Vec<ExtendedComplex> = Vec::new();
    let h = &(psi.num() * psi_hat.den()) - &(psi_hat.num() * psi.den());
    if h.deg() > 0 {
        points.extend(roots_with_multiplicity(&h, ROOT_TOL)?.into_iter().map(|(z, _)| ExtendedComplex::Finite(z)));
    }
    if chordal(psi.eval(ExtendedComplex::Infinity), psi_hat.eval(ExtendedComplex::Infinity)) <= SHARE_TOL {
        points.push(ExtendedComplex::Infinity);
    }
    let mut candidates: Vec<ExtendedComplex> = Vec::new();
    for p in points.into_iter().filter(|p| domain.contains(*p)) {
        push_value(&mut candidates, psi.eval(p));
    }
    candidates.sort_by(|a, b| a.report_cmp(b));
    let mut shared = Vec::new();
    let mut rejected = Vec::new();
    for a in candidates {
        let pa = in_domain_preimages(psi, a, domain)?;
        let pb = in_domain_preimages(psi_hat, a, domain)?;
        if same_set(&pa, &pb) {
            shared.push(SharedValue { value: a, preimages: pa });
        } else {
            rejected.push(a);
        }
    }
    let mut both_omitted: Vec<ExtendedComplex> = Vec::new();
    for p in domain.removed_points() {
        for v in [psi.eval(p), psi_hat.eval(p)] {
            if both_omitted.iter().any(|w| chordal(*w, v) <= SHARE_TOL) {
                continue;
            }
            if in_domain_preimages(psi, v, domain)?.is_empty() && in_domain_preimages(psi_hat, v, domain)?.is_empty() {
                both_omitted.push(v);
            }
        }
    }
    both_omitted.sort_by(|a, b| a.report_cmp(b));
    let q = shared.len() + if count_both_omitted { both_omitted.len() } else { 0 };
    Ok(SharedValueReport { identical: false, shared, both_omitted, rejected, count_both_omitted, q })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TheoremBAudit {
    pub m: usize,
    pub ef_count: Cardinality,
    pub q: usize,
    /// `m − |E_f| + 6`.
    pub threshold: Option<i64>,
    pub identical: bool,
    pub completeness_asserted: bool,
    pub verdict: Verdict,
}

/// Compares the shared-value count with `m − |E_f| + 6`.
///
/// Distinct functions reaching the threshold give `CONTRADICTION` when both
/// surfaces are asserted complete and `HYPOTHESIS_NOT_MET` otherwise.
pub fn audit_theorem_b(f: &RationalFunction, ef: &EfSet, shared: &SharedValueReport, both_complete_asserted: bool) -> TheoremBAudit {
    let m = f.degree();
    let threshold = ef.len().map(|e| m as i64 - e as i64 + 6);
    let verdict = match threshold {
        None => Verdict::Inapplicable,
        Some(_) if shared.identical => Verdict::Pass,
        Some(t) if shared.q as i64 >= t => {
            if both_complete_asserted {
                Verdict::Contradiction
            } else {
                Verdict::HypothesisNotMet
            }
        }
        Some(_) => Verdict::Pass,
    };
    TheoremBAudit { m, ef_count: ef.cardinality, q: shared.q, threshold, identical: shared.identical, completeness_asserted: both_complete_asserted, verdict }
}
