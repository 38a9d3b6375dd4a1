use num_complex::Complex64;
use serde::Serialize;

use super::data::WeierstrassData;
use crate::cplane::{chordal, ExtendedComplex};
use crate::efset::{ef_solve, EF_TOL};
use crate::error::Result;
use crate::ratfun::RationalFunction;

/// Sampled `χ(ψ₁, conj ψ₂)` must exceed this for condition (1).
pub const REGULARITY_TOL: f64 = 1e-9;

/// Points closer than this (chordal) are identified when matching divisors.
const MATCH_TOL: f64 = 1e-7;

/// `ψ₁ ≠ conj(ψ₂)` and the poles of `ψ₁`, `ψ₂` do not coincide.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Condition1 {
    pub samples: usize,
    /// Smallest sampled `χ(ψ₁(z), conj ψ₂(z))`.
    pub min_chordal: Option<f64>,
    pub argmin: Option<Complex64>,
    /// Common poles of `ψ₁` and `ψ₂` in the domain (rational data).
    pub pole_coincidences: Vec<ExtendedComplex>,
    /// Points of the domain where `ψ₁` takes a value in `E_f` (rational
    /// `ψ₁` with `ψ₂ = f ∘ ψ₁` and finite `E_f`).
    pub ef_hits: Vec<ExtendedComplex>,
    pub pass: bool,
}

/// Orders at one point relevant to condition (2).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DivisorMatch {
    pub point: ExtendedComplex,
    /// Order of `dh` (negative for a pole).
    pub dh_order: i64,
    pub psi1_pole_order: i64,
    pub psi2_pole_order: i64,
    pub ok: bool,
    pub note: Option<String>,
}

/// Zeros of `dh` coincide with the poles of `ψ₁` or `ψ₂`, with equal order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Condition2 {
    /// `false` when the data are not rational and the check was skipped.
    pub checked: bool,
    pub points: Vec<DivisorMatch>,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RegularityReport {
    pub condition1: Condition1,
    pub condition2: Condition2,
    pub pass: bool,
}

fn pole_order(f: &RationalFunction, p: ExtendedComplex) -> i64 {
    (-f.divisor_at(p)).max(0)
}

fn merge_point(points: &mut Vec<ExtendedComplex>, p: ExtendedComplex) {
    if points.iter().all(|q| chordal(*q, p) > MATCH_TOL) {
        points.push(p);
    }
}

fn condition1(data: &WeierstrassData, grid: &[Complex64]) -> Result<Condition1> {
    let mut min_chordal: Option<f64> = None;
    let mut argmin = None;
    let mut samples = 0;
    for &z in grid {
        if !data.domain().contains_finite(z) {
            continue;
        }
        samples += 1;
        let d = chordal(data.psi1_at(z), data.psi2_at(z).conj());
        if min_chordal.is_none_or(|m| d < m) {
            min_chordal = Some(d);
            argmin = Some(z);
        }
    }
    let mut pole_coincidences = Vec::new();
    let mut ef_hits = Vec::new();
    if let Some(r) = data.as_rational() {
        let p2 = r.psi2.poles()?;
        for (p, _) in r.psi1.poles()? {
            if data.domain().contains(p) && p2.iter().any(|(q, _)| chordal(p, *q) <= MATCH_TOL) {
                pole_coincidences.push(p);
            }
        }
        if let Some(f) = data.f() {
            if !r.psi1.is_constant() {
                let ef = ef_solve(f, EF_TOL)?;
                if !ef.is_curve() {
                    for e in &ef.points {
                        for (p, _) in r.psi1.preimages(*e)? {
                            if data.domain().contains(p) {
                                merge_point(&mut ef_hits, p);
                            }
                        }
                    }
                }
            }
        }
    }
    ef_hits.sort_by(|a, b| a.report_cmp(b));
    let pass = min_chordal.is_none_or(|m| m > REGULARITY_TOL) && pole_coincidences.is_empty() && ef_hits.is_empty();
    Ok(Condition1 { samples, min_chordal, argmin, pole_coincidences, ef_hits, pass })
}

fn condition2(data: &WeierstrassData) -> Result<Condition2> {
    let Some(r) = data.as_rational() else {
        return Ok(Condition2 { checked: false, points: Vec::new(), pass: true });
    };
    let mut candidates: Vec<ExtendedComplex> = Vec::new();
    let g_div = r.g.divisor()?;
    for (p, _) in &g_div.entries {
        merge_point(&mut candidates, *p);
    }
    for (p, _) in r.psi1.poles()?.into_iter().chain(r.psi2.poles()?) {
        merge_point(&mut candidates, p);
    }
    if data.domain().contains(ExtendedComplex::Infinity) {
        merge_point(&mut candidates, ExtendedComplex::Infinity);
    }
    candidates.retain(|p| data.domain().contains(*p));
    candidates.sort_by(|a, b| a.report_cmp(b));
    let mut points = Vec::new();
    for p in candidates {
        let dh_order = match p {
            // In the chart w = 1/z, dz = −dw/w².
            ExtendedComplex::Infinity => r.g.divisor_at(p) - 2,
            ExtendedComplex::Finite(_) => g_div.at(p, MATCH_TOL),
        };
        let (o1, o2) = (pole_order(&r.psi1, p), pole_order(&r.psi2, p));
        let expected = o1.max(o2);
        let note = (o1 > 0 && o2 > 0 && o1 != o2).then(|| format!("psi1 and psi2 share a pole with orders {o1} and {o2}; compared against the larger"));
        if dh_order == 0 && expected == 0 {
            continue;
        }
        points.push(DivisorMatch { point: p, dh_order, psi1_pole_order: o1, psi2_pole_order: o2, ok: dh_order == expected, note });
    }
    let pass = points.iter().all(|m| m.ok);
    Ok(Condition2 { checked: true, points, pass })
}

/// Regularity conditions (1) and (2). Condition (1) is sampled on `grid`
/// (points outside the domain are ignored) and checked exactly for common
/// poles; condition (2) is exact for rational data and skipped otherwise.
pub fn check_regularity(data: &WeierstrassData, grid: &[Complex64]) -> Result<RegularityReport> {
    let condition1 = condition1(data, grid)?;
    let condition2 = condition2(data)?;
    let pass = condition1.pass && condition2.pass;
    Ok(RegularityReport { condition1, condition2, pass })
}
