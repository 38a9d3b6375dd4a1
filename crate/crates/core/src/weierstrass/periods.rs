use num_complex::Complex64;
use serde::Serialize;

use super::data::WeierstrassData;
use crate::error::Result;
use crate::ratfun::{contour_integral, residue_integral, BlackBox, Contour, Holomorphic1Form, Meromorphic, DEFAULT_NODES};

/// Every period residual must be below this.
pub const PERIOD_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PeriodMethod {
    /// Residues for rational data, quadrature otherwise.
    Auto,
    /// Gauss–Legendre quadrature even for rational data.
    Quadrature,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LoopPeriods {
    pub contour: Contour,
    pub method: &'static str,
    /// `∮ψ₁dh`, `∮ψ₂dh`, `∮dh`, `∮ψ₁ψ₂dh`.
    pub integrals: [Complex64; 4],
    /// `|∮ψ₁dh + conj ∮ψ₂dh|`, `|Re ∮dh|`, `|Re ∮ψ₁ψ₂dh|`.
    pub residuals: [f64; 3],
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PeriodReport {
    pub loops: Vec<LoopPeriods>,
    pub pass: bool,
}

fn product_form(data: &WeierstrassData, which: usize) -> Holomorphic1Form {
    let psi1 = data.psi1().clone();
    let psi2 = data.psi2_function();
    let g = data.dh().g.clone();
    Holomorphic1Form::black_box(BlackBox::new("period integrand", move |z| {
        let gv = g.eval_with_derivative(z)?.0;
        let v = match which {
            0 => psi1.eval_with_derivative(z)?.0 * gv,
            1 => psi2.eval_with_derivative(z)?.0 * gv,
            2 => gv,
            _ => psi1.eval_with_derivative(z)?.0 * psi2.eval_with_derivative(z)?.0 * gv,
        };
        Ok((v, Complex64::new(0.0, 0.0)))
    }))
}

/// Period condition (3) on each loop.
pub fn check_periods(data: &WeierstrassData, loops: &[Contour], method: PeriodMethod) -> Result<PeriodReport> {
    let mut out = Vec::with_capacity(loops.len());
    for contour in loops {
        let mut integrals = [Complex64::new(0.0, 0.0); 4];
        let label = match (data.as_rational(), method) {
            (Some(r), PeriodMethod::Auto) => {
                let forms = [r.psi1.mul(&r.g), r.psi2.mul(&r.g), r.g.clone(), r.psi1.mul(&r.psi2).mul(&r.g)];
                for (k, f) in forms.iter().enumerate() {
                    integrals[k] = residue_integral(f, contour)?;
                }
                "residue"
            }
            (Some(r), PeriodMethod::Quadrature) => {
                let forms = [r.psi1.mul(&r.g), r.psi2.mul(&r.g), r.g.clone(), r.psi1.mul(&r.psi2).mul(&r.g)];
                for (k, f) in forms.into_iter().enumerate() {
                    integrals[k] = contour_integral(&Holomorphic1Form { g: Meromorphic::Rational(f) }, contour, DEFAULT_NODES)?;
                }
                "quadrature"
            }
            (None, _) => {
                for (k, slot) in integrals.iter_mut().enumerate() {
                    *slot = contour_integral(&product_form(data, k), contour, DEFAULT_NODES)?;
                }
                "quadrature"
            }
        };
        let residuals = [(integrals[0] + integrals[1].conj()).norm(), integrals[2].re.abs(), integrals[3].re.abs()];
        let pass = residuals.iter().all(|r| *r < PERIOD_TOL);
        out.push(LoopPeriods { contour: contour.clone(), method: label, integrals, residuals, pass });
    }
    let pass = out.iter().all(|l| l.pass);
    Ok(PeriodReport { loops: out, pass })
}

#[cfg(test)]
mod tests {
    use std::f64::consts::TAU;

    use super::*;
    use crate::cplane::ExtendedComplex;
    use crate::ratfun::RationalFunction;
    use crate::weierstrass::Domain;

    fn rf(num: &[f64], den: &[f64]) -> RationalFunction {
        RationalFunction::from_real(num, den).unwrap()
    }

    fn punctured() -> Domain {
        Domain::SphereMinusPoints { punctures: vec![ExtendedComplex::new(0.0, 0.0), ExtendedComplex::Infinity] }
    }

    #[test]
    fn catenoid_periods_vanish() {
        let d = WeierstrassData::rational(RationalFunction::identity(), rf(&[-1.0], &[0.0, 1.0]), rf(&[1.0], &[0.0, 1.0]), punctured()).unwrap();
        let unit = [Contour::circle(Complex64::new(0.0, 0.0), 1.0)];
        let exact = check_periods(&d, &unit, PeriodMethod::Auto).unwrap();
        assert_eq!(exact.loops[0].residuals, [0.0, 0.0, 0.0]);
        let quad = check_periods(&d, &unit, PeriodMethod::Quadrature).unwrap();
        assert!(quad.pass);
        assert!(quad.loops[0].residuals.iter().all(|r| *r < 1e-9));
    }

    #[test]
    fn broken_period() {
        let d = WeierstrassData::rational(RationalFunction::identity(), rf(&[-1.0], &[0.0, 1.0]), rf(&[1.0], &[0.0, 0.0, 1.0]), punctured()).unwrap();
        let r = check_periods(&d, &[Contour::circle(Complex64::new(0.0, 0.0), 1.0)], PeriodMethod::Auto).unwrap();
        assert!(!r.pass);
        assert!((r.loops[0].residuals[0] - TAU).abs() < 1e-14);
    }

    #[test]
    fn no_loops_is_vacuous() {
        let d = WeierstrassData::rational(RationalFunction::identity(), rf(&[-1.0], &[0.0, 1.0]), RationalFunction::identity(), Domain::Plane).unwrap();
        assert!(check_periods(&d, &[], PeriodMethod::Auto).unwrap().pass);
    }
}
