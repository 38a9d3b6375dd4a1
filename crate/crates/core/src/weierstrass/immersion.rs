use num_complex::Complex64;
use serde::Serialize;

use super::data::WeierstrassData;
use super::phi::{induced_metric, phi_forms};
use crate::error::Result;
use crate::ratfun::{integrate, Contour, DEFAULT_NODES};

/// Relative finite-difference step: `h = FD_STEP·(1 + |z|)`.
pub const FD_STEP: f64 = 1e-4;

/// A point of the surface.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ImmersionSample {
    pub z: Complex64,
    /// Position in R^{3,1}.
    pub x: [f64; 4],
    pub lambda2: f64,
}

/// `∫ φ` along the polyline through `points`. Rational data use exact
/// antiderivatives segment by segment; other data use adaptive quadrature.
pub fn integrate_phi(data: &WeierstrassData, points: &[Complex64]) -> Result<[Complex64; 4]> {
    let mut out = [Complex64::new(0.0, 0.0); 4];
    if points.len() < 2 {
        return Ok(out);
    }
    if let Some(r) = data.as_rational() {
        for w in points.windows(2) {
            if w[0] == w[1] {
                continue;
            }
            for (k, pf) in r.phi_pf.iter().enumerate() {
                out[k] += pf.integrate_segment(w[0], w[1])?;
            }
        }
        return Ok(out);
    }
    let path = Contour::Polyline { points: points.to_vec() };
    for (k, slot) in out.iter_mut().enumerate() {
        *slot = integrate(|z| Ok(phi_forms(data, z)?.phi[k]), &path, DEFAULT_NODES)?;
    }
    Ok(out)
}

/// `2 Re ∫ φ` along the polyline through `points`.
pub fn displacement(data: &WeierstrassData, points: &[Complex64]) -> Result<[f64; 4]> {
    Ok(integrate_phi(data, points)?.map(|v| 2.0 * v.re))
}

/// Surface point over `z`, integrating from `basepoint` (where `x = 0`)
/// through the intermediate `path` vertices. Paths passing within
/// [`crate::ratfun::POLE_CLEARANCE`] of a pole of the integrand fail.
pub fn immerse(data: &WeierstrassData, z: Complex64, basepoint: Complex64, path: &[Complex64]) -> Result<ImmersionSample> {
    let mut pts = Vec::with_capacity(path.len() + 2);
    pts.push(basepoint);
    pts.extend_from_slice(path);
    pts.push(z);
    let x = displacement(data, &pts)?;
    Ok(ImmersionSample { z, x, lambda2: induced_metric(data, z)? })
}

/// Minkowski product `u₁v₁ + u₂v₂ + u₃v₃ − u₄v₄`.
pub fn minkowski(a: &[f64; 4], b: &[f64; 4]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2] - a[3] * b[3]
}

/// Finite-difference checks of the immersion at one point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FdDiagnostics {
    pub z: Complex64,
    pub h: f64,
    pub lambda2: f64,
    /// `(⟨x_u,x_u⟩ + ⟨x_v,x_v⟩)/4`, which equals `λ²` for the `2 Re ∫`
    /// normalization of the immersion.
    pub lambda2_fd: f64,
    pub metric_rel_err: f64,
    /// `max(|⟨x_u,x_u⟩ − ⟨x_v,x_v⟩|, |⟨x_u,x_v⟩|) / (2λ²)`.
    pub conformal_residual: f64,
    /// Largest five-point Laplacian stencil sum of a coordinate, divided by
    /// `h` times the largest first-derivative component.
    pub harmonic_residual: f64,
}

/// Central differences of the immersion with step `h = FD_STEP·(1 + |z|)`.
/// Neighbour positions are obtained by integrating from `z` along the
/// stencil arms.
pub fn fd_diagnostics(data: &WeierstrassData, z: Complex64) -> Result<FdDiagnostics> {
    let h = FD_STEP * (1.0 + z.norm());
    let arm = |d: Complex64| displacement(data, &[z, z + d]);
    let (e, w) = (arm(Complex64::new(h, 0.0))?, arm(Complex64::new(-h, 0.0))?);
    let (n, s) = (arm(Complex64::new(0.0, h))?, arm(Complex64::new(0.0, -h))?);
    let mut xu = [0.0; 4];
    let mut xv = [0.0; 4];
    let mut lap: f64 = 0.0;
    for k in 0..4 {
        xu[k] = (e[k] - w[k]) / (2.0 * h);
        xv[k] = (n[k] - s[k]) / (2.0 * h);
        lap = lap.max((e[k] + w[k] + n[k] + s[k]).abs());
    }
    let (ee, gg, ff) = (minkowski(&xu, &xu), minkowski(&xv, &xv), minkowski(&xu, &xv));
    let lambda2 = induced_metric(data, z)?;
    let lambda2_fd = 0.25 * (ee + gg);
    let scale = xu.iter().chain(&xv).fold(0.0f64, |m, v| m.max(v.abs()));
    Ok(FdDiagnostics {
        z,
        h,
        lambda2,
        lambda2_fd,
        metric_rel_err: (lambda2 - lambda2_fd).abs() / lambda2,
        conformal_residual: (ee - gg).abs().max(ff.abs()) / (2.0 * lambda2),
        harmonic_residual: if scale > 0.0 { lap / (h * scale) } else { 0.0 },
    })
}
