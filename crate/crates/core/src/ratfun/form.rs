use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use super::rational::RationalFunction;
use crate::cplane::ExtendedComplex;
use crate::error::{Error, Result};

/// Evaluator returning `(value, derivative)`; poles are reported as errors.
pub type EvalFn = dyn Fn(Complex64) -> Result<(Complex64, Complex64)> + Send + Sync;

/// A meromorphic function known only through point evaluation.
#[derive(Clone)]
pub struct BlackBox {
    pub label: String,
    f: Arc<EvalFn>,
}

impl BlackBox {
    pub fn new(label: impl Into<String>, f: impl Fn(Complex64) -> Result<(Complex64, Complex64)> + Send + Sync + 'static) -> Self {
        Self { label: label.into(), f: Arc::new(f) }
    }

    pub fn eval_with_derivative(&self, z: Complex64) -> Result<(Complex64, Complex64)> {
        let (v, d) = (self.f)(z)?;
        if !(v.re.is_finite() && v.im.is_finite()) {
            return Err(Error::Pole(z));
        }
        Ok((v, d))
    }
}

impl fmt::Debug for BlackBox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BlackBox({})", self.label)
    }
}

/// A meromorphic function: rational (exact divisor queries available) or a
/// black box (evaluation only).
#[derive(Debug, Clone)]
pub enum Meromorphic {
    Rational(RationalFunction),
    BlackBox(BlackBox),
}

impl Meromorphic {
    pub fn as_rational(&self) -> Option<&RationalFunction> {
        match self {
            Meromorphic::Rational(r) => Some(r),
            Meromorphic::BlackBox(_) => None,
        }
    }

    /// Value on the sphere; black-box poles map to infinity.
    pub fn eval(&self, z: Complex64) -> ExtendedComplex {
        match self {
            Meromorphic::Rational(r) => r.eval(ExtendedComplex::Finite(z)),
            Meromorphic::BlackBox(b) => match b.eval_with_derivative(z) {
                Ok((v, _)) => ExtendedComplex::Finite(v),
                Err(_) => ExtendedComplex::Infinity,
            },
        }
    }

    pub fn eval_with_derivative(&self, z: Complex64) -> Result<(Complex64, Complex64)> {
        match self {
            Meromorphic::Rational(r) => r.eval_with_derivative(z),
            Meromorphic::BlackBox(b) => b.eval_with_derivative(z),
        }
    }
}

impl From<RationalFunction> for Meromorphic {
    fn from(r: RationalFunction) -> Self {
        Meromorphic::Rational(r)
    }
}

/// The 1-form `g(z) dz`.
#[derive(Debug, Clone)]
pub struct Holomorphic1Form {
    pub g: Meromorphic,
}

impl Holomorphic1Form {
    pub fn rational(g: RationalFunction) -> Self {
        Self { g: Meromorphic::Rational(g) }
    }

    pub fn black_box(b: BlackBox) -> Self {
        Self { g: Meromorphic::BlackBox(b) }
    }

    /// Coefficient `g(z)`.
    pub fn coefficient(&self, z: Complex64) -> Result<Complex64> {
        Ok(self.g.eval_with_derivative(z)?.0)
    }
}
