use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use serde::Serialize;

use crate::cplane::{ExtendedComplex, MobiusTransform};
use crate::efset::{ef_solve, EF_TOL};
use crate::error::{Error, Result};
use crate::ratfun::{roots_with_multiplicity, Polynomial, ROOT_TOL};
use crate::weierstrass::{lorentz_action, WeierstrassData};

/// Smallest admissible relative residual `1 − lhs/rhs`.
pub const AUX_RESIDUAL_TOL: f64 = 1e-9;

const LAT: usize = 180;
const LON: usize = 360;
const SEEDS: usize = 8;
const POINT_CLEARANCE: f64 = 1e-7;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Pole {
    pub point: Complex64,
    pub order: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AuxMetricReport {
    /// Möbius map `T` applied to the data so that `∞ ∈ E_f`; absent when
    /// `∞` already belongs to `E_f`.
    pub normalization: Option<MobiusTransform>,
    pub m: usize,
    /// Finite points `c₁..c_l` of the normalized `E_f`.
    pub c: Vec<Complex64>,
    pub l: usize,
    /// Poles `b_j` of the normalized `f` with orders `r_j`.
    pub b: Vec<Pole>,
    pub s: usize,
    /// `sup F` over the sphere.
    pub bound: f64,
    /// Largest limit of `F` at `∞` over directions.
    pub limit_at_infinity: f64,
    /// Where the sampled maximum was found; `∞` when the limit dominates.
    pub argmax: ExtendedComplex,
    /// Grid points where the metric inequality was checked.
    pub samples: usize,
    pub skipped: usize,
    /// Smallest `1 − ds²/ds̃²` over the checked points.
    pub min_residual: Option<f64>,
    pub pass: bool,
}

/// `F(z) = |P(z) − z̄Q(z)| / (Π|z − cᵢ| (1 + |z|²)^{(m−l)/2})` with `Q` monic,
/// so that `|f − z̄| ≤ F · Π|z − cᵢ| Π|z − b_j|^{−r_j} (1 + |z|²)^{(m−l)/2}`.
struct Ratio {
    p: Polynomial,
    q: Polynomial,
    c: Vec<Complex64>,
    half_power: f64,
}

impl Ratio {
    fn eval(&self, z: Complex64) -> Option<f64> {
        let mut den = (1.0 + z.norm_sqr()).powf(self.half_power);
        for c in &self.c {
            let d = (z - c).norm();
            if d <= POINT_CLEARANCE * (1.0 + c.norm()) {
                return None;
            }
            den *= d;
        }
        let v = (self.p.eval(z) - z.conj() * self.q.eval(z)).norm() / den;
        v.is_finite().then_some(v)
    }

    fn refine(&self, mut z: Complex64, mut best: f64) -> (Complex64, f64) {
        let dirs: Vec<Complex64> = (0..8).map(|k| Complex64::from_polar(1.0, TAU * k as f64 / 8.0)).collect();
        let mut step = PI / LAT as f64 * (1.0 + z.norm_sqr()) / 2.0;
        for _ in 0..20_000 {
            if step < 1e-13 * (1.0 + z.norm()) || z.norm() > 1e8 {
                break;
            }
            let moved = dirs.iter().filter_map(|d| {
                let w = z + d * step;
                self.eval(w).filter(|v| *v > best).map(|v| (w, v))
            });
            match moved.fold(None, |acc: Option<(Complex64, f64)>, x| match acc {
                Some(a) if a.1 >= x.1 => Some(a),
                _ => Some(x),
            }) {
                Some((w, v)) => {
                    z = w;
                    best = v;
                }
                None => step *= 0.5,
            }
        }
        (z, best)
    }
}

/// Checks `ds² ≤ C² Π|ψ − cᵢ|² (1 + |ψ|²)^{m−l} |ω|²` with
/// `ω = dh / Π(ψ − b_j)^{r_j}` on the given parameter points.
///
/// The data must satisfy `ψ₂ = f ∘ ψ₁` with `E_f` finite and nonempty. When
/// `∞ ∉ E_f`, the data is first moved by the Lorentz action of
/// `T(z) = 1/(c₀ − z)` for the first finite `c₀ ∈ E_f`. `C` is the larger
/// of the maximum of `F` over a chordal latitude–longitude grid, refined by
/// pattern search, and the limit of `F` at `∞`. The metric compared is
/// `|ψ₁ − ψ̄₂|²|dh|²`, half the induced metric.
pub fn aux_metric_bound(data: &WeierstrassData, points: &[Complex64]) -> Result<AuxMetricReport> {
    let f0 = data.f().ok_or_else(|| Error::InvalidInput("data must be given as psi2 = f(psi1)".into()))?;
    if f0.is_constant() {
        return Err(Error::Inapplicable("f is constant".into()));
    }
    let ef = ef_solve(f0, EF_TOL)?;
    if ef.is_curve() {
        return Err(Error::Inapplicable("E_f is a curve".into()));
    }
    if ef.points.is_empty() {
        return Err(Error::Inapplicable("E_f is empty".into()));
    }
    let (normalization, data, e_points) = if ef.points.iter().any(|p| p.is_infinite()) {
        (None, data.clone(), ef.points.clone())
    } else {
        let c0 = ef.points[0].as_finite().expect("finite point");
        let zero = Complex64::new(0.0, 0.0);
        let one = Complex64::new(1.0, 0.0);
        let t = MobiusTransform::new(zero, one, -one, c0)?;
        let moved = lorentz_action(data, &t)?;
        (Some(t), moved, ef.points.iter().map(|p| t.apply(*p)).collect())
    };
    let f = data.f().expect("composed data stays composed").clone();
    let m = f.degree();
    let mut c: Vec<Complex64> = e_points.iter().filter_map(|p| p.as_finite()).collect();
    c.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    let l = c.len();
    let lead = f.den().leading();
    let p = f.num().scale(lead.inv());
    let q = f.den().monic();
    let mut b: Vec<Pole> =
        if q.deg() > 0 { roots_with_multiplicity(&q, ROOT_TOL)?.into_iter().map(|(point, order)| Pole { point, order }).collect() } else { Vec::new() };
    b.sort_by(|x, y| x.point.re.total_cmp(&y.point.re).then(x.point.im.total_cmp(&y.point.im)));
    let half_power = (m as f64 - l as f64) / 2.0;
    let ratio = Ratio { p: p.clone(), q: q.clone(), c: c.clone(), half_power };

    // Along z = r e^{iθ}: |P − z̄Q| / |z|^m → |p_m e^{iθ} − [deg Q = m − 1] e^{−iθ}|.
    let limit_at_infinity = p.leading().norm() + if q.deg() + 1 == m { 1.0 } else { 0.0 };

    let mut sampled: Vec<(f64, Complex64)> = Vec::with_capacity(LAT * LON);
    for i in 0..LAT {
        let theta = PI * (i as f64 + 0.5) / LAT as f64;
        let r = 1.0 / (theta / 2.0).tan();
        for j in 0..LON {
            let z = Complex64::from_polar(r, TAU * j as f64 / LON as f64);
            if let Some(v) = ratio.eval(z) {
                sampled.push((v, z));
            }
        }
    }
    sampled.sort_by(|a, b| b.0.total_cmp(&a.0).then(a.1.re.total_cmp(&b.1.re)).then(a.1.im.total_cmp(&b.1.im)));
    let mut best = (f64::NEG_INFINITY, ExtendedComplex::Infinity);
    for &(v, z) in sampled.iter().take(SEEDS) {
        let (w, val) = ratio.refine(z, v);
        if val > best.0 {
            best = (val, ExtendedComplex::Finite(w));
        }
    }
    let (bound, argmax) = if limit_at_infinity >= best.0 { (limit_at_infinity, ExtendedComplex::Infinity) } else { best };

    let mut min_residual: Option<f64> = None;
    let mut skipped = 0;
    for &z in points {
        let (ExtendedComplex::Finite(psi), ExtendedComplex::Finite(psi2)) = (data.psi1_at(z), data.psi2_at(z)) else {
            skipped += 1;
            continue;
        };
        let Ok(g) = data.g_at(z) else {
            skipped += 1;
            continue;
        };
        let mut rhs = bound * bound * (1.0 + psi.norm_sqr()).powf(2.0 * half_power) * g.norm_sqr();
        for ci in &c {
            rhs *= (psi - ci).norm_sqr();
        }
        for bj in &b {
            rhs /= (psi - bj.point).norm_sqr().powi(bj.order as i32);
        }
        let lhs = (psi - psi2.conj()).norm_sqr() * g.norm_sqr();
        if !(rhs.is_finite() && rhs > 0.0 && lhs.is_finite()) {
            skipped += 1;
            continue;
        }
        let r = 1.0 - lhs / rhs;
        min_residual = Some(min_residual.map_or(r, |m: f64| m.min(r)));
    }
    let samples = points.len() - skipped;
    Ok(AuxMetricReport {
        normalization,
        m,
        s: b.len(),
        c,
        l,
        b,
        bound,
        limit_at_infinity,
        argmax,
        samples,
        skipped,
        min_residual,
        pass: min_residual.is_some_and(|r| r >= -AUX_RESIDUAL_TOL),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratfun::RationalFunction;
    use crate::weierstrass::{Domain, GridSpec};

    fn rf(num: &[f64], den: &[f64]) -> RationalFunction {
        RationalFunction::from_real(num, den).unwrap()
    }

    fn grid() -> Vec<Complex64> {
        GridSpec::Rect { u: [-3.0, 3.0], v: [-3.0, 3.0], nu: 31, nv: 31 }.points()
    }

    #[test]
    fn parabolic_bound_is_two() {
        let data = WeierstrassData::composed(RationalFunction::identity(), rf(&[1.0, 1.0], &[1.0]), rf(&[1.0], &[1.0]), Domain::Plane).unwrap();
        let r = aux_metric_bound(&data, &grid()).unwrap();
        assert!(r.normalization.is_none());
        assert_eq!((r.m, r.l, r.s), (1, 0, 0));
        assert!((r.bound - 2.0).abs() < 1e-12);
        assert_eq!(r.argmax, ExtendedComplex::Infinity);
        assert_eq!(r.samples, 31 * 31);
        assert!(r.pass);
    }

    #[test]
    fn square_keeps_infinity() {
        // z² = z̄ at 0, the cube roots of unity and ∞.
        let f = rf(&[0.0, 0.0, 1.0], &[1.0]);
        let data = WeierstrassData::composed(RationalFunction::identity(), f, rf(&[1.0], &[1.0]), Domain::Plane).unwrap();
        let r = aux_metric_bound(&data, &grid()).unwrap();
        assert!(r.normalization.is_none());
        assert_eq!((r.m, r.l), (2, 4));
        assert!(r.pass, "{:?}", r.min_residual);
    }

    #[test]
    fn normalization_moves_a_point_to_infinity() {
        // 1/z² = z̄ only at z = 1.
        let f = rf(&[1.0], &[0.0, 0.0, 1.0]);
        let data = WeierstrassData::composed(RationalFunction::identity(), f, rf(&[1.0], &[1.0]), Domain::Plane).unwrap();
        let r = aux_metric_bound(&data, &grid()).unwrap();
        assert!(r.normalization.is_some());
        assert_eq!((r.m, r.l), (2, 0));
        assert!(r.bound.is_finite() && r.bound > 0.0);
        assert!(r.pass, "{:?}", r.min_residual);
    }

    #[test]
    fn empty_ef_is_inapplicable() {
        // f = −1/z: z̄z = −1 has no solution and f(∞) = 0.
        let data = WeierstrassData::composed(RationalFunction::identity(), rf(&[-1.0], &[0.0, 1.0]), rf(&[1.0], &[1.0]), Domain::Plane).unwrap();
        assert!(matches!(aux_metric_bound(&data, &grid()), Err(Error::Inapplicable(_))));
    }

    #[test]
    fn curve_is_inapplicable() {
        let data = WeierstrassData::composed(RationalFunction::identity(), rf(&[1.0], &[0.0, 1.0]), rf(&[1.0], &[1.0]), Domain::Plane).unwrap();
        assert!(matches!(aux_metric_bound(&data, &grid()), Err(Error::Inapplicable(_))));
    }
}
