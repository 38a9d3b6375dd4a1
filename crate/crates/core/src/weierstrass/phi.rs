use num_complex::Complex64;
use serde::Serialize;

use super::data::WeierstrassData;
use crate::cplane::ExtendedComplex;
use crate::error::{Error, Result};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Relative null-identity residual accepted by [`gauss_from_phi`].
pub const NULL_TOL: f64 = 1e-8;

/// Coefficients of `(φ₁, φ₂, φ₃, φ₄) = (ψ₁+ψ₂, −i(ψ₁−ψ₂), 1−ψ₁ψ₂, 1+ψ₁ψ₂)·g`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PhiForms {
    pub phi: [Complex64; 4],
}

impl PhiForms {
    pub fn new(phi: [Complex64; 4]) -> Self {
        Self { phi }
    }

    /// `Σ|φ_k|²`.
    pub fn norm_sqr(&self) -> f64 {
        self.phi.iter().map(|p| p.norm_sqr()).sum()
    }

    /// `φ₁² + φ₂² + φ₃² − φ₄²`.
    pub fn null_form(&self) -> Complex64 {
        let [a, b, c, d] = self.phi;
        a * a + b * b + c * c - d * d
    }

    /// `|φ₁² + φ₂² + φ₃² − φ₄²| / Σ|φ_k|²`.
    pub fn null_residual(&self) -> f64 {
        let n = self.norm_sqr();
        if n == 0.0 {
            0.0
        } else {
            self.null_form().norm() / n
        }
    }

    /// `|φ₁|² + |φ₂|² + |φ₃|² − |φ₄|²`; positive at regular points.
    pub fn spacelike(&self) -> f64 {
        let [a, b, c, d] = self.phi;
        a.norm_sqr() + b.norm_sqr() + c.norm_sqr() - d.norm_sqr()
    }
}

/// The four coefficients at `z`.
pub fn phi_forms(data: &WeierstrassData, z: Complex64) -> Result<PhiForms> {
    if let Some(r) = data.as_rational() {
        let mut phi = [Complex64::new(0.0, 0.0); 4];
        for (k, p) in r.phi.iter().enumerate() {
            phi[k] = p.eval_finite(z)?;
        }
        return Ok(PhiForms::new(phi));
    }
    let p1 = data.psi1_at(z).as_finite().ok_or(Error::Pole(z))?;
    let p2 = data.psi2_at(z).as_finite().ok_or(Error::Pole(z))?;
    let g = data.g_at(z)?;
    let prod = p1 * p2;
    Ok(PhiForms::new([(p1 + p2) * g, -I * (p1 - p2) * g, (1.0 - prod) * g, (1.0 + prod) * g]))
}

/// Conformal factor `λ² = 2|ψ₁ − conj(ψ₂)|²|g|²` of `ds² = λ²|dz|²`.
///
/// At poles of `ψ₁` or `ψ₂` the equivalent expression
/// `|φ₁|² + |φ₂|² + |φ₃|² − |φ₄|²` is used.
pub fn induced_metric(data: &WeierstrassData, z: Complex64) -> Result<f64> {
    match (data.psi1_at(z), data.psi2_at(z)) {
        (ExtendedComplex::Finite(p1), ExtendedComplex::Finite(p2)) => {
            let g = data.g_at(z)?;
            Ok(2.0 * (p1 - p2.conj()).norm_sqr() * g.norm_sqr())
        }
        _ => Ok(phi_forms(data, z)?.spacelike()),
    }
}

fn ratio(num: Complex64, den: Complex64) -> ExtendedComplex {
    if den == Complex64::new(0.0, 0.0) {
        ExtendedComplex::Infinity
    } else {
        ExtendedComplex::from_overflowing(num / den)
    }
}

/// Gauss map `(ψ₁, ψ₂)` of a null vector.
///
/// `ψ₁ = (φ₁+iφ₂)/(φ₃+φ₄) = (φ₄−φ₃)/(φ₁−iφ₂)` and
/// `ψ₂ = (φ₁−iφ₂)/(φ₃+φ₄) = (φ₄−φ₃)/(φ₁+iφ₂)` on the null quadric; each
/// component uses the representation with the larger denominator, which
/// reproduces the degenerate branches when `φ₃+φ₄ = 0` and gives `∞` when
/// both denominators vanish.
pub fn gauss_from_phi(phi: &PhiForms) -> Result<(ExtendedComplex, ExtendedComplex)> {
    let n = phi.norm_sqr();
    if n == 0.0 {
        return Err(Error::ZeroPhi);
    }
    let res = phi.null_residual();
    if res > NULL_TOL {
        return Err(Error::NotNull(res));
    }
    let [a, b, c, d] = phi.phi;
    let plus = a + I * b;
    let minus = a - I * b;
    let sum = c + d;
    let diff = d - c;
    let psi1 = if sum.norm() >= minus.norm() { ratio(plus, sum) } else { ratio(diff, minus) };
    let psi2 = if sum.norm() >= plus.norm() { ratio(minus, sum) } else { ratio(diff, plus) };
    Ok((psi1, psi2))
}

/// Forms of the associated minimal surface in R⁴: `φ*_k = φ_k` for `k ≤ 3`,
/// `φ*₄ = iφ₄`.
pub fn to_minimal_r4(phi: &PhiForms) -> [Complex64; 4] {
    let [a, b, c, d] = phi.phi;
    [a, b, c, I * d]
}
