use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ratfun::Meromorphic;

/// Largest admissible Schwarz ratio.
pub const SCHWARZ_TOL: f64 = 1e-6;

/// Poincaré density of the disk `D(R)`: `2R/(R² − |z|²)`.
pub fn disk_density(radius: f64, z: Complex64) -> f64 {
    2.0 * radius / (radius * radius - z.norm_sqr())
}

/// Polar sample grid on `D(R)`: radii `R·r_max·k/nr` for `k = 0..=nr` and
/// `ntheta` equally spaced angles.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SchwarzCheckConfig {
    pub radius: f64,
    pub r_max: f64,
    pub nr: usize,
    pub ntheta: usize,
}

impl SchwarzCheckConfig {
    pub fn new(radius: f64, r_max: f64, nr: usize, ntheta: usize) -> Result<Self> {
        if !(radius > 0.0 && radius.is_finite() && r_max > 0.0 && r_max < 1.0 && nr > 0 && ntheta > 0) {
            return Err(Error::InvalidInput(format!("schwarz grid radius {radius}, r_max {r_max}, {nr}x{ntheta}")));
        }
        Ok(Self { radius, r_max, nr, ntheta })
    }

    pub fn points(&self) -> Vec<Complex64> {
        let mut out = vec![Complex64::new(0.0, 0.0)];
        for i in 1..=self.nr {
            let r = self.radius * self.r_max * i as f64 / self.nr as f64;
            for j in 0..self.ntheta {
                out.push(Complex64::from_polar(r, std::f64::consts::TAU * j as f64 / self.ntheta as f64));
            }
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SchwarzReport {
    pub max_ratio: f64,
    pub argmax: Complex64,
    pub samples: usize,
    pub pass: bool,
}

/// `max |f′(z)| λ_D(f(z)) / λ_{D(R)}(z)` over the grid, where `λ_D` is the
/// density of the unit disk. A holomorphic map `D(R) → D` does not
/// increase the Poincaré metric, so the ratio is at most 1.
pub fn schwarz_check(f: &Meromorphic, cfg: &SchwarzCheckConfig) -> Result<SchwarzReport> {
    let mut max_ratio = f64::NEG_INFINITY;
    let mut argmax = Complex64::new(0.0, 0.0);
    let pts = cfg.points();
    for &z in &pts {
        let (w, dw) = f.eval_with_derivative(z)?;
        if w.norm() >= 1.0 {
            return Err(Error::OutsideTarget(z));
        }
        let ratio = dw.norm() * disk_density(1.0, w) / disk_density(cfg.radius, z);
        if ratio > max_ratio {
            max_ratio = ratio;
            argmax = z;
        }
    }
    Ok(SchwarzReport { max_ratio, argmax, samples: pts.len(), pass: max_ratio <= 1.0 + SCHWARZ_TOL })
}
