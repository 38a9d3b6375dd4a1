//! Complex polynomials and rational functions: roots with multiplicity,
//! divisors, residues, contour integrals and argument-principle counting.

mod form;
mod partial;
mod poly;
mod quadrature;
mod rational;
mod roots;

use std::f64::consts::TAU;

use num_complex::Complex64;

pub use form::{BlackBox, EvalFn, Holomorphic1Form, Meromorphic};
pub use partial::{PartialFractions, PoleTerm, POLE_CLEARANCE};
pub use poly::{gcd, Polynomial};
pub use quadrature::{gauss_legendre, integrate, segment_distance, Contour, Piece, PANEL_ORDER, QUAD_TOL};
pub use rational::{Divisor, RationalFunction, ORDER_TOL};
pub use roots::{all_roots, roots_with_multiplicity, square_free_decomposition, GCD_TOL, ROOT_TOL};

use crate::cplane::ExtendedComplex;
use crate::error::{Error, Result};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Default starting node count for contour quadrature.
pub const DEFAULT_NODES: usize = 64;

/// Largest allowed distance of an argument-principle count from an integer.
pub const ROUNDING_RESIDUAL: f64 = 0.1;

pub fn divisor_at(f: &RationalFunction, a: ExtendedComplex) -> i64 {
    f.divisor_at(a)
}

pub fn conjugate_coeffs(f: &RationalFunction) -> RationalFunction {
    f.conjugate_coeffs()
}

/// Quadrature approximation of `∮ ω`. Rational forms are first checked for
/// poles within [`POLE_CLEARANCE`] of the contour.
pub fn contour_integral(omega: &Holomorphic1Form, contour: &Contour, n_nodes: usize) -> Result<Complex64> {
    if let Some(g) = omega.g.as_rational() {
        for (p, _) in g.poles()? {
            if let ExtendedComplex::Finite(p) = p {
                let d = contour.distance_to(p);
                if d < POLE_CLEARANCE {
                    return Err(Error::PoleOnContour { pole: p, distance: d });
                }
            }
        }
    }
    integrate(|z| omega.coefficient(z), contour, n_nodes)
}

/// Exact `∮ ω` by residues (closed contours) or antiderivatives (open
/// polylines). Only available for rational forms.
pub fn residue_integral(g: &RationalFunction, contour: &Contour) -> Result<Complex64> {
    PartialFractions::new(g)?.contour_integral(contour)
}

fn rounded_count(v: Complex64) -> Result<i64> {
    let n = v / (I * TAU);
    let r = n.re.round();
    if (n.re - r).abs() > ROUNDING_RESIDUAL || n.im.abs() > ROUNDING_RESIDUAL {
        return Err(Error::RoundingResidual(n.re));
    }
    Ok(r as i64)
}

/// Number of zeros of `f − a` in the open disk, with multiplicity, from the
/// argument principle: `(1/2πi)∮ f′/(f − a) dz` counts zeros minus poles, so
/// the poles inside are added back. Black-box functions are taken to be
/// holomorphic in the disk.
pub fn count_zeros_in_disk(f: &Meromorphic, a: Complex64, center: Complex64, radius: f64) -> Result<usize> {
    if !(radius > 0.0) {
        return Err(Error::InvalidInput(format!("disk radius {radius}")));
    }
    let contour = Contour::circle(center, radius);
    const PROBES: usize = 512;
    for k in 0..PROBES {
        let z = center + Complex64::from_polar(radius, TAU * k as f64 / PROBES as f64);
        match f.eval_with_derivative(z) {
            Ok((v, _)) if (v - a).norm() <= 1e-12 * (1.0 + a.norm()) => return Err(Error::BoundaryZero(z)),
            Ok(_) => {}
            Err(Error::Pole(_)) => return Err(Error::PoleOnContour { pole: z, distance: 0.0 }),
            Err(e) => return Err(e),
        }
    }
    let log_deriv = integrate(
        |z| {
            let (v, d) = f.eval_with_derivative(z)?;
            let w = v - a;
            if w.norm() == 0.0 {
                return Err(Error::BoundaryZero(z));
            }
            Ok(d / w)
        },
        &contour,
        DEFAULT_NODES,
    )?;
    let zeros_minus_poles = rounded_count(log_deriv)?;
    let poles = match f {
        Meromorphic::Rational(r) if r.den().deg() > 0 => {
            let q = r.den();
            let dq = q.derivative();
            let v = integrate(|z| Ok(dq.eval(z) / q.eval(z)), &contour, DEFAULT_NODES)?;
            rounded_count(v)?
        }
        _ => 0,
    };
    let n = zeros_minus_poles + poles;
    usize::try_from(n).map_err(|_| Error::RoundingResidual(n as f64))
}
