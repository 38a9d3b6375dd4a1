//! The set `E_f = {z ∈ C̄ : f(z) = z̄}` and the degree bounds it must satisfy
//! when `f` relates the two components of a Gauss map.
//!
//! Every solution of `f(z) = z̄` is a fixed point of `F = f̄ ∘ f`, where `f̄` has
//! the conjugated coefficients: applying `f̄` to both sides of `f(z) = z̄`
//! gives `f̄(f(z)) = f̄(z̄) = conj(f(z)) = z`. The solver therefore finds all roots of the
//! fixed-point polynomial of `F`, polishes them against the original equation
//! and keeps the ones that satisfy it. When `F` is the identity, `f` is an
//! anti-holomorphic involution and `E_f` is a circle, a line or empty.

use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::Serialize;

use crate::cplane::{chordal, Cardinality, ExtendedComplex};
use crate::error::Result;
use crate::ratfun::{all_roots, Polynomial, RationalFunction};
use crate::verdict::Verdict;

/// Default acceptance tolerance (chordal) for candidate points.
pub const EF_TOL: f64 = 1e-8;
/// Candidates closer than this (chordal) are the same point.
pub const EF_DEDUP: f64 = 1e-7;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EfKind {
    FinitePoints,
    Curve,
    Empty,
}

/// Fitted solution locus in the curve case.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Locus {
    Circle {
        center: Complex64,
        radius: f64,
    },
    /// The line through `point` with unit `direction`, together with ∞.
    Line {
        point: Complex64,
        direction: Complex64,
    },
}

/// Distances of the closest calls on either side of the acceptance threshold.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Default)]
pub struct Margin {
    pub worst_accepted: Option<f64>,
    pub best_rejected: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EfSet {
    pub kind: EfKind,
    pub points: Vec<ExtendedComplex>,
    pub cardinality: Cardinality,
    pub locus: Option<Locus>,
    /// Points on the locus used for the fit (curve case only).
    pub samples: Vec<ExtendedComplex>,
    pub margin: Margin,
}

impl EfSet {
    fn finite(points: Vec<ExtendedComplex>, margin: Margin) -> Self {
        let n = points.len();
        Self {
            kind: if n == 0 { EfKind::Empty } else { EfKind::FinitePoints },
            points,
            cardinality: Cardinality::Finite(n),
            locus: None,
            samples: Vec::new(),
            margin,
        }
    }

    pub fn len(&self) -> Option<usize> {
        self.cardinality.finite()
    }

    pub fn is_empty(&self) -> bool {
        self.cardinality == Cardinality::Finite(0)
    }

    pub fn is_curve(&self) -> bool {
        self.kind == EfKind::Curve
    }

    /// Membership test with tolerance [`EF_DEDUP`]. For the curve case this
    /// uses the defining equation directly.
    pub fn contains(&self, f: &RationalFunction, z: ExtendedComplex) -> bool {
        match self.kind {
            EfKind::Curve => ef_residual(f, z) <= EF_TOL,
            _ => self.points.iter().any(|p| chordal(*p, z) <= EF_DEDUP),
        }
    }
}

/// `χ(f(z), z̄)`.
pub fn ef_residual(f: &RationalFunction, z: ExtendedComplex) -> f64 {
    chordal(f.eval(z), z.conj())
}

/// `(Σ a_k P^k Q^{m−k}, Σ b_k P^k Q^{m−k})` for `g = A/B` of degree `≤ m`:
/// numerator and denominator of `g ∘ (P/Q)` before reduction.
fn homogenized_compose(g: &RationalFunction, p: &Polynomial, q: &Polynomial, m: usize) -> (Polynomial, Polynomial) {
    let mut ppow = vec![Polynomial::one()];
    let mut qpow = vec![Polynomial::one()];
    for k in 1..=m {
        ppow.push(&ppow[k - 1] * p);
        qpow.push(&qpow[k - 1] * q);
    }
    let hom = |c: &Polynomial| (0..=m).fold(Polynomial::zero(), |acc, k| &acc + &(&ppow[k] * &qpow[m - k]).scale(c.coeff(k)));
    (hom(g.num()), hom(g.den()))
}

/// One Newton step for `G(z) = f(z) − z̄` in a finite chart.
/// With `a = f′(z)`, the correction solves `G + aδ − δ̄ = 0`.
fn newton_conj_step(f: &RationalFunction, z: Complex64) -> Option<Complex64> {
    let (v, a) = f.eval_with_derivative(z).ok()?;
    let g = v - z.conj();
    let den = 1.0 - a.norm_sqr();
    if den.abs() < 1e-8 {
        return None;
    }
    let delta = (g.conj() + a.conj() * g) / den;
    let out = z + delta;
    (out.re.is_finite() && out.im.is_finite()).then_some(out)
}

/// Polishes a candidate, working in the chart `w = 1/z` outside the unit disk.
fn polish(f: &RationalFunction, f_inv: &RationalFunction, c: Complex64) -> ExtendedComplex {
    let mut best = ExtendedComplex::Finite(c);
    let mut best_res = ef_residual(f, best);
    for _ in 0..4 {
        let Some(z) = best.as_finite() else { break };
        let next = if z.norm() <= 1.0 {
            newton_conj_step(f, z).map(ExtendedComplex::Finite)
        } else {
            newton_conj_step(f_inv, z.inv()).map(|w| ExtendedComplex::Finite(w).recip())
        };
        let Some(next) = next else { break };
        let r = ef_residual(f, next);
        if r < best_res {
            best = next;
            best_res = r;
        } else {
            break;
        }
    }
    best
}

fn curve_case(f: &RationalFunction) -> EfSet {
    // f(z) = (az + b)/(cz + d) = z̄  ⇔  c|z|² + d z̄ − a z − b = 0.
    let (b, a) = (f.num().coeff(0), f.num().coeff(1));
    let (d, c) = (f.den().coeff(0), f.den().coeff(1));
    let re = [c.re, d.re - a.re, d.im + a.im, -b.re];
    let im = [c.im, d.im - a.im, -d.re - a.re, -b.im];
    let norm = |r: &[f64; 4]| r.iter().map(|x| x * x).sum::<f64>();
    let [ca, cb, cc, cd] = if norm(&re) >= norm(&im) { re } else { im };
    let scale = ca.abs().max(cb.abs()).max(cc.abs()).max(cd.abs());

    let (samples, empty) = if ca.abs() > 1e-12 * scale {
        let center = Complex64::new(-cb / (2.0 * ca), -cc / (2.0 * ca));
        let r2 = center.norm_sqr() - cd / ca;
        if r2 <= 0.0 {
            (Vec::new(), true)
        } else {
            let r = r2.sqrt();
            let pts = (0..3).map(|k| ExtendedComplex::Finite(center + Complex64::from_polar(r, TAU * k as f64 / 3.0))).collect();
            (pts, false)
        }
    } else {
        let n = Complex64::new(cb, cc);
        let p0 = -n * cd / n.norm_sqr();
        let dir = Complex64::new(-cc, cb) / n.norm();
        let pts = [-1.0, 0.0, 1.0].iter().map(|&t| ExtendedComplex::Finite(p0 + dir * t)).collect();
        (pts, false)
    };

    if empty {
        return EfSet {
            kind: EfKind::Empty,
            points: Vec::new(),
            cardinality: Cardinality::Finite(0),
            locus: None,
            samples: Vec::new(),
            margin: Margin::default(),
        };
    }
    let worst = samples.iter().map(|&s| ef_residual(f, s)).fold(0.0, f64::max);
    let locus = fit_locus(&samples);
    EfSet {
        kind: EfKind::Curve,
        points: Vec::new(),
        cardinality: Cardinality::Infinite,
        locus,
        samples,
        margin: Margin { worst_accepted: Some(worst), best_rejected: None },
    }
}

/// Circle or line through three finite points.
pub fn fit_locus(pts: &[ExtendedComplex]) -> Option<Locus> {
    let [a, b, c] = [pts.first()?.as_finite()?, pts.get(1)?.as_finite()?, pts.get(2)?.as_finite()?];
    let (ab, ac) = (b - a, c - a);
    let cross = ab.re * ac.im - ab.im * ac.re;
    let span = ab.norm().max(ac.norm());
    if cross.abs() <= 1e-12 * span * span {
        let dir = if ab.norm() > 0.0 { ab / ab.norm() } else { ac / ac.norm() };
        return Some(Locus::Line { point: a, direction: dir });
    }
    let d = 2.0 * cross;
    let (b2, c2) = (ab.norm_sqr(), ac.norm_sqr());
    let ux = (ac.im * b2 - ab.im * c2) / d;
    let uy = (ab.re * c2 - ac.re * b2) / d;
    let u = Complex64::new(ux, uy);
    Some(Locus::Circle { center: a + u, radius: u.norm() })
}

/// Solves `f(z) = z̄` on the Riemann sphere.
pub fn ef_solve(f: &RationalFunction, tol: f64) -> Result<EfSet> {
    let m = f.degree();
    if m == 0 {
        let k = f.value_at_infinity();
        return Ok(EfSet::finite(vec![k.conj()], Margin { worst_accepted: Some(0.0), best_rejected: None }));
    }
    let fbar = f.conjugate_coeffs();
    let (nf, df) = homogenized_compose(&fbar, f.num(), f.den(), m);
    let z_df = &Polynomial::x() * &df;
    let g = &nf - &z_df;
    let scale = nf.norm_inf().max(z_df.norm_inf());
    if g.norm_inf() <= 1e-10 * scale {
        return Ok(curve_case(f));
    }
    let g = g.trim_abs(1e-13 * scale);

    let mut candidates: Vec<ExtendedComplex> = Vec::new();
    if g.deg() > 0 {
        let f_inv = f.invert_chart();
        let roots = all_roots(&g)?;
        for r in &roots {
            candidates.push(polish(f, &f_inv, *r));
        }
        // A tangential solution is a multiple root of g and comes back split
        // by about sqrt(eps); the cluster mean is accurate to about eps.
        for (i, a) in roots.iter().enumerate() {
            for b in &roots[i + 1..] {
                if (a - b).norm() <= 1e-5 * (1.0 + a.norm()) {
                    candidates.push(polish(f, &f_inv, (a + b) / 2.0));
                }
            }
        }
    }
    candidates.push(ExtendedComplex::Infinity);

    let mut accepted: Vec<(ExtendedComplex, f64)> = Vec::new();
    let mut margin = Margin::default();
    for c in candidates {
        let r = ef_residual(f, c);
        if r <= tol {
            margin.worst_accepted = Some(margin.worst_accepted.map_or(r, |w: f64| w.max(r)));
            if let Some(slot) = accepted.iter_mut().find(|(p, _)| chordal(*p, c) <= EF_DEDUP) {
                if r < slot.1 {
                    *slot = (c, r);
                }
            } else {
                accepted.push((c, r));
            }
        } else {
            margin.best_rejected = Some(margin.best_rejected.map_or(r, |b: f64| b.min(r)));
        }
    }
    let mut points: Vec<ExtendedComplex> = accepted.into_iter().map(|(p, _)| p).collect();
    points.sort_by(|a, b| a.report_cmp(b));
    Ok(EfSet::finite(points, margin))
}

/// One bound with its verdict.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundCheck {
    pub statement: String,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AdmissibilityReport {
    pub m: usize,
    pub ef_count: Cardinality,
    /// `m ≤ 5`.
    pub degree_bound: BoundCheck,
    /// `m − 1 ≤ |E_f| ≤ (m + 3)/2` for `m ≥ 2`.
    pub ef_bounds: BoundCheck,
    /// `m − |E_f| + 3`, the cap on exceptional values of `ψ₁`.
    pub exceptional_budget: Option<i64>,
}

impl AdmissibilityReport {
    pub fn all_pass(&self) -> bool {
        self.degree_bound.verdict.is_ok() && self.ef_bounds.verdict.is_ok()
    }
}

/// Necessary conditions on `(m, |E_f|)` for `ψ₂ = f(ψ₁)` to be the Gauss map
/// relation of a complete non-flat surface. A failing bound is a finding
/// about `f`, not a computational error.
pub fn admissibility_check(m: usize, ef_count: Cardinality) -> AdmissibilityReport {
    let degree_bound = BoundCheck { statement: format!("m = {m} <= 5"), verdict: Verdict::from_bool(m <= 5) };
    let ef_bounds = if m < 2 {
        BoundCheck { statement: "m < 2: no bound on |E_f|".into(), verdict: Verdict::Inapplicable }
    } else {
        let ok = match ef_count {
            Cardinality::Finite(e) => m - 1 <= e && 2 * e <= m + 3,
            Cardinality::Infinite => false,
        };
        BoundCheck { statement: format!("{} <= |E_f| = {} <= {}", m - 1, ef_count, (m as f64 + 3.0) / 2.0), verdict: Verdict::from_bool(ok) }
    };
    AdmissibilityReport { m, ef_count, degree_bound, ef_bounds, exceptional_budget: ef_count.finite().map(|e| m as i64 - e as i64 + 3) }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cplane::{classify_conjugate_similarity, DegeneracyClass, Infinity, MobiusTransform};
    use std::f64::consts::E;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn solve(f: &RationalFunction) -> EfSet {
        ef_solve(f, EF_TOL).unwrap()
    }

    #[test]
    fn parabolic_translation() {
        let s = solve(&RationalFunction::from_real(&[1.0, 1.0], &[1.0]).unwrap());
        assert_eq!(s.points, vec![Infinity]);
    }

    #[test]
    fn conjugated_parabolic_keeps_its_point() {
        // A conjugate of z + 1 whose fixed point is a double root of the polynomial.
        let s = MobiusTransform::new(
            c(0.8234827871887926, 1.0526507093604414),
            c(0.5083719213405664, -0.4616963912814913),
            c(-0.1369199411182967, 1.062027257935683),
            c(1.01042580403653, -0.5592164963224221),
        )
        .unwrap();
        let ef = solve(&RationalFunction::from_mobius(&s));
        assert_eq!(ef.cardinality, Cardinality::Finite(1));
    }

    #[test]
    fn hyperbolic_dilation() {
        let s = solve(&RationalFunction::from_real(&[0.0, E * E], &[1.0]).unwrap());
        assert_eq!(s.cardinality, Cardinality::Finite(2));
        assert!(s.points[0].approx_eq(&ExtendedComplex::real(0.0)));
        assert_eq!(s.points[1], Infinity);
    }

    #[test]
    fn elliptic_is_empty() {
        let s = solve(&RationalFunction::from_real(&[-1.0], &[0.0, 1.0]).unwrap());
        assert_eq!(s.kind, EfKind::Empty);
        assert_eq!(s.cardinality, Cardinality::Finite(0));
    }

    #[test]
    fn identity_is_real_line() {
        let s = solve(&RationalFunction::identity());
        assert_eq!(s.kind, EfKind::Curve);
        match s.locus.unwrap() {
            Locus::Line { point, direction } => {
                assert!(point.im.abs() < 1e-14);
                assert!(direction.im.abs() < 1e-14);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn involution_circle_and_empty() {
        // f(z) = 1/z: |z|² = 1.
        let s = solve(&RationalFunction::from_real(&[1.0], &[0.0, 1.0]).unwrap());
        assert_eq!(s.kind, EfKind::Curve);
        match s.locus.unwrap() {
            Locus::Circle { center, radius } => {
                assert!(center.norm() < 1e-12 && (radius - 1.0).abs() < 1e-12)
            }
            other => panic!("{other:?}"),
        }
        for p in &s.samples {
            assert!(ef_residual(&RationalFunction::from_real(&[1.0], &[0.0, 1.0]).unwrap(), *p) < 1e-14);
        }
    }

    #[test]
    fn squaring_has_five_points() {
        let s = solve(&RationalFunction::from_real(&[0.0, 0.0, 1.0], &[1.0]).unwrap());
        let want = [
            ExtendedComplex::real(0.0),
            ExtendedComplex::real(1.0),
            ExtendedComplex::finite(Complex64::from_polar(1.0, TAU / 3.0)),
            ExtendedComplex::finite(Complex64::from_polar(1.0, -TAU / 3.0)),
            Infinity,
        ];
        assert_eq!(s.points.len(), 5, "{:?}", s.points);
        for w in &want {
            assert!(s.points.iter().any(|p| chordal(*p, *w) < 1e-12), "{w}");
        }
        let adm = admissibility_check(2, s.cardinality);
        assert_eq!(adm.ef_bounds.verdict, Verdict::Fail);
    }

    #[test]
    fn constant_function() {
        let s = solve(&RationalFunction::constant(c(1.0, 2.0)));
        assert_eq!(s.points, vec![ExtendedComplex::new(1.0, -2.0)]);
    }

    #[test]
    fn matches_classifier_on_normal_forms() {
        for class in [DegeneracyClass::Hyperbolic { u: 0.3 }, DegeneracyClass::Elliptic { alpha: 0.7 }, DegeneracyClass::Parabolic, DegeneracyClass::Identity] {
            let s: MobiusTransform = class.normal_form();
            let got = classify_conjugate_similarity(&s).unwrap();
            let ef = solve(&RationalFunction::from_mobius(&s));
            assert_eq!(ef.cardinality, got.expected_ef_count(), "{class:?}");
        }
    }

    #[test]
    fn admissibility_examples() {
        let r = admissibility_check(2, Cardinality::Finite(1));
        assert!(r.all_pass());
        assert_eq!(r.exceptional_budget, Some(4));
        assert_eq!(admissibility_check(6, Cardinality::Finite(5)).degree_bound.verdict, Verdict::Fail);
        assert_eq!(admissibility_check(1, Cardinality::Finite(1)).ef_bounds.verdict, Verdict::Inapplicable);
    }
}
