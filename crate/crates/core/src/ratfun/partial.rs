//! Partial-fraction expansion, residues and exact path integrals of rational
//! functions.

use std::f64::consts::TAU;

use num_complex::Complex64;

use super::poly::Polynomial;
use super::quadrature::{segment_distance, Contour, Piece};
use super::rational::RationalFunction;
use super::roots::{roots_with_multiplicity, ROOT_TOL};
use crate::error::{Error, Result};

/// Paths closer than this to a pole are rejected.
pub const POLE_CLEARANCE: f64 = 1e-6;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Principal part at one pole: `Σ_k coeffs[k-1] / (z − pole)^k`.
#[derive(Debug, Clone, PartialEq)]
pub struct PoleTerm {
    pub pole: Complex64,
    pub coeffs: Vec<Complex64>,
}

impl PoleTerm {
    pub fn residue(&self) -> Complex64 {
        self.coeffs[0]
    }
}

/// `f = poly + Σ principal parts`.
#[derive(Debug, Clone, PartialEq)]
pub struct PartialFractions {
    pub poly: Polynomial,
    pub terms: Vec<PoleTerm>,
}

impl PartialFractions {
    pub fn new(f: &RationalFunction) -> Result<Self> {
        let (poly, rem) = f.num().divrem(f.den())?;
        let den = f.den();
        if den.deg() == 0 {
            return Ok(Self { poly, terms: Vec::new() });
        }
        let poles = roots_with_multiplicity(den, ROOT_TOL)?;
        let mut terms = Vec::with_capacity(poles.len());
        for (j, &(p, r)) in poles.iter().enumerate() {
            let mut dj = Polynomial::constant(den.leading());
            for (i, &(q, s)) in poles.iter().enumerate() {
                if i != j {
                    dj = &dj * &Polynomial::from_roots(Complex64::new(1.0, 0.0), &vec![q; s]);
                }
            }
            let n = rem.taylor_shift(p);
            let d = dj.taylor_shift(p);
            let d0 = d.coeff(0);
            let mut h = Vec::with_capacity(r);
            for k in 0..r {
                let mut acc = n.coeff(k);
                for i in 1..=k {
                    acc -= d.coeff(i) * h[k - i];
                }
                h.push(acc / d0);
            }
            // h_k multiplies (z − p)^{k − r}.
            let coeffs: Vec<Complex64> = (1..=r).map(|pow| h[r - pow]).collect();
            terms.push(PoleTerm { pole: p, coeffs });
        }
        Ok(Self { poly, terms })
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        let mut v = self.poly.eval(z);
        for t in &self.terms {
            let u = (z - t.pole).inv();
            let mut upow = u;
            for &c in &t.coeffs {
                v += c * upow;
                upow *= u;
            }
        }
        v
    }

    fn check_clearance(&self, piece: &Piece) -> Result<()> {
        for t in &self.terms {
            let d = match *piece {
                Piece::Segment { a, b } => segment_distance(t.pole, a, b),
                Piece::Arc { center, radius, .. } => ((t.pole - center).norm() - radius).abs(),
            };
            if d < POLE_CLEARANCE {
                return Err(Error::PoleOnContour { pole: t.pole, distance: d });
            }
        }
        Ok(())
    }

    /// Exact `∫_a^b f dz` along the straight segment from `a` to `b`.
    pub fn integrate_segment(&self, a: Complex64, b: Complex64) -> Result<Complex64> {
        self.check_clearance(&Piece::Segment { a, b })?;
        let anti = self.poly.antiderivative();
        let mut v = anti.eval(b) - anti.eval(a);
        for t in &self.terms {
            let (ua, ub) = (a - t.pole, b - t.pole);
            // The segment misses the pole, so the swept angle lies in (−π, π)
            // and the principal logarithm is continuous along it.
            v += t.coeffs[0] * (ub / ua).ln();
            for (k, &c) in t.coeffs.iter().enumerate().skip(1) {
                let e = -(k as i32);
                v += c * (ub.powi(e) - ua.powi(e)) / e as f64;
            }
        }
        Ok(v)
    }

    /// Exact `∮ f dz`: `2πi Σ winding · residue` for closed contours, segment
    /// antiderivatives for open polylines.
    pub fn contour_integral(&self, contour: &Contour) -> Result<Complex64> {
        for piece in contour.pieces() {
            self.check_clearance(&piece)?;
        }
        match contour {
            Contour::Circle { .. } => {
                let s: Complex64 = self.terms.iter().map(|t| t.residue() * contour.winding_number(t.pole) as f64).sum();
                Ok(I * TAU * s)
            }
            Contour::Polyline { points } => {
                let mut v = Complex64::new(0.0, 0.0);
                for w in points.windows(2) {
                    v += self.integrate_segment(w[0], w[1])?;
                }
                Ok(v)
            }
        }
    }

    /// `Σ |residue|`, a scale for relative comparisons.
    pub fn residue_scale(&self) -> f64 {
        self.terms.iter().map(|t| t.residue().norm()).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn simple_poles() {
        // z / (z^2 - 1/4) = (1/2)/(z - 1/2) + (1/2)/(z + 1/2)
        let f = RationalFunction::from_real(&[0.0, 1.0], &[-0.25, 0.0, 1.0]).unwrap();
        let pf = PartialFractions::new(&f).unwrap();
        assert_eq!(pf.terms.len(), 2);
        for t in &pf.terms {
            assert!((t.residue() - 0.5).norm() < 1e-14);
        }
        let v = pf.contour_integral(&Contour::circle(c(0.0, 0.0), 1.0)).unwrap();
        assert!((v - c(0.0, TAU)).norm() < 1e-13);
    }

    #[test]
    fn double_pole_has_zero_residue() {
        let f = RationalFunction::from_real(&[1.0], &[0.0, 0.0, 1.0]).unwrap();
        let pf = PartialFractions::new(&f).unwrap();
        assert_eq!(pf.terms[0].coeffs.len(), 2);
        assert!(pf.terms[0].residue().norm() < 1e-15);
        assert!((pf.terms[0].coeffs[1] - 1.0).norm() < 1e-15);
    }

    #[test]
    fn reconstructs_function() {
        let num = Polynomial::new(vec![c(1.0, 2.0), c(0.0, -1.0), c(3.0, 0.0), c(1.0, 1.0), c(0.5, 0.0)]);
        let den = Polynomial::from_roots(c(2.0, 0.0), &[c(1.0, 1.0), c(1.0, 1.0), c(-2.0, 0.0)]);
        let f = RationalFunction::new(num, den).unwrap();
        let pf = PartialFractions::new(&f).unwrap();
        for z in [c(0.2, 0.3), c(-1.0, 2.0), c(5.0, -4.0)] {
            let want = f.eval_finite(z).unwrap();
            assert!((pf.eval(z) - want).norm() < 1e-12 * (1.0 + want.norm()));
        }
    }

    #[test]
    fn segment_integral_matches_log() {
        let f = RationalFunction::from_real(&[1.0], &[0.0, 1.0]).unwrap();
        let pf = PartialFractions::new(&f).unwrap();
        let v = pf.integrate_segment(c(1.0, 0.0), c(0.0, 1.0)).unwrap();
        assert!((v - c(0.0, TAU / 4.0)).norm() < 1e-15);
        assert!(matches!(pf.integrate_segment(c(-1.0, 0.0), c(1.0, 0.0)), Err(Error::PoleOnContour { .. })));
    }
}
