use num_complex::Complex64;

use super::domain::Domain;
use crate::cplane::ExtendedComplex;
use crate::error::{Error, Result};
use crate::ratfun::{BlackBox, Holomorphic1Form, Meromorphic, PartialFractions, RationalFunction};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// How the second Gauss-map component is given.
#[derive(Debug, Clone)]
pub enum Psi2 {
    Direct(Meromorphic),
    /// `ψ₂ = f ∘ ψ₁`.
    Composed(RationalFunction),
}

/// Exact rational forms of the data, available when every ingredient is
/// rational.
#[derive(Debug, Clone)]
pub struct RationalData {
    pub psi1: RationalFunction,
    pub psi2: RationalFunction,
    pub g: RationalFunction,
    /// Coefficients of `φ₁..φ₄` as rational functions of `z`.
    pub phi: [RationalFunction; 4],
    pub phi_pf: [PartialFractions; 4],
}

impl RationalData {
    fn new(psi1: RationalFunction, psi2: RationalFunction, g: RationalFunction) -> Result<Self> {
        let a = psi1.mul(&g);
        let b = psi2.mul(&g);
        let p = psi1.mul(&psi2).mul(&g);
        let phi = [a.add(&b), a.sub(&b).scale(-I), g.sub(&p), g.add(&p)];
        let phi_pf = [PartialFractions::new(&phi[0])?, PartialFractions::new(&phi[1])?, PartialFractions::new(&phi[2])?, PartialFractions::new(&phi[3])?];
        Ok(Self { psi1, psi2, g, phi, phi_pf })
    }
}

/// Weierstrass data `(ψ₁, ψ₂, dh = g dz)` on a parameter domain.
///
/// Construction does not enforce the regularity conditions; see
/// [`super::check_regularity`].
#[derive(Debug, Clone)]
pub struct WeierstrassData {
    psi1: Meromorphic,
    psi2: Psi2,
    dh: Holomorphic1Form,
    domain: Domain,
    rational: Option<RationalData>,
}

impl WeierstrassData {
    pub fn new(psi1: Meromorphic, psi2: Psi2, dh: Holomorphic1Form, domain: Domain) -> Result<Self> {
        domain.validate()?;
        let rational = match (&psi1, &psi2, &dh.g) {
            (Meromorphic::Rational(p1), Psi2::Direct(Meromorphic::Rational(p2)), Meromorphic::Rational(g)) => {
                Some(RationalData::new(p1.clone(), p2.clone(), g.clone())?)
            }
            (Meromorphic::Rational(p1), Psi2::Composed(f), Meromorphic::Rational(g)) => Some(RationalData::new(p1.clone(), f.compose(p1), g.clone())?),
            _ => None,
        };
        if let Some(r) = &rational {
            if r.g.num().is_zero() {
                return Err(Error::InvalidInput("dh vanishes identically".into()));
            }
        }
        Ok(Self { psi1, psi2, dh, domain, rational })
    }

    /// All-rational data with `ψ₂` given directly.
    pub fn rational(psi1: RationalFunction, psi2: RationalFunction, g: RationalFunction, domain: Domain) -> Result<Self> {
        Self::new(psi1.into(), Psi2::Direct(psi2.into()), Holomorphic1Form::rational(g), domain)
    }

    /// All-rational data with `ψ₂ = f ∘ ψ₁`.
    pub fn composed(psi1: RationalFunction, f: RationalFunction, g: RationalFunction, domain: Domain) -> Result<Self> {
        Self::new(psi1.into(), Psi2::Composed(f), Holomorphic1Form::rational(g), domain)
    }

    pub fn psi1(&self) -> &Meromorphic {
        &self.psi1
    }

    pub fn psi2(&self) -> &Psi2 {
        &self.psi2
    }

    pub fn dh(&self) -> &Holomorphic1Form {
        &self.dh
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    /// The relation `f` when `ψ₂ = f ∘ ψ₁`.
    pub fn f(&self) -> Option<&RationalFunction> {
        match &self.psi2 {
            Psi2::Composed(f) => Some(f),
            Psi2::Direct(_) => None,
        }
    }

    pub fn as_rational(&self) -> Option<&RationalData> {
        self.rational.as_ref()
    }

    pub fn psi1_at(&self, z: Complex64) -> ExtendedComplex {
        self.psi1.eval(z)
    }

    pub fn psi2_at(&self, z: Complex64) -> ExtendedComplex {
        if let Some(r) = &self.rational {
            return r.psi2.eval(ExtendedComplex::Finite(z));
        }
        match &self.psi2 {
            Psi2::Direct(m) => m.eval(z),
            Psi2::Composed(f) => f.eval(self.psi1.eval(z)),
        }
    }

    pub fn g_at(&self, z: Complex64) -> Result<Complex64> {
        self.dh.coefficient(z)
    }

    /// `ψ₂` as a meromorphic function of `z`.
    pub fn psi2_function(&self) -> Meromorphic {
        if let Some(r) = &self.rational {
            return r.psi2.clone().into();
        }
        match &self.psi2 {
            Psi2::Direct(m) => m.clone(),
            Psi2::Composed(f) => {
                let f = f.clone();
                let psi1 = self.psi1.clone();
                let df = f.derivative();
                Meromorphic::BlackBox(BlackBox::new("f∘ψ₁", move |z| {
                    let (w, dw) = psi1.eval_with_derivative(z)?;
                    let v = f.eval_finite(w).map_err(|_| Error::Pole(z))?;
                    let d = df.eval_finite(w).map_err(|_| Error::Pole(z))?;
                    Ok((v, d * dw))
                }))
            }
        }
    }
}
