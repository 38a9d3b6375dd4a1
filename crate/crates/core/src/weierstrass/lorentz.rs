use num_complex::Complex64;

use super::data::{Psi2, WeierstrassData};
use crate::cplane::MobiusTransform;
use crate::error::{Error, Result};
use crate::ratfun::{BlackBox, Holomorphic1Form, Meromorphic, RationalFunction};

fn mobius_of(m: &Meromorphic, s: MobiusTransform) -> Meromorphic {
    match m {
        Meromorphic::Rational(r) => Meromorphic::Rational(r.mobius_after(&s)),
        Meromorphic::BlackBox(_) => {
            let m = m.clone();
            Meromorphic::BlackBox(BlackBox::new("mobius image", move |z| {
                let (v, d) = m.eval_with_derivative(z)?;
                let den = s.c * v + s.d;
                if den == Complex64::new(0.0, 0.0) {
                    return Err(Error::Pole(z));
                }
                // det S = 1.
                Ok(((s.a * v + s.b) / den, d / (den * den)))
            }))
        }
    }
}

/// Action of `S ∈ SL(2, C)` on the data:
/// `ψ₁ ↦ S·ψ₁`, `ψ₂ ↦ conj(S)·ψ₂`, `dh ↦ (cψ₁ + d)(c̄ψ₂ + d̄) dh`.
/// A relation `ψ₂ = f ∘ ψ₁` becomes `ψ₂ = (conj(S) ∘ f ∘ S⁻¹) ∘ ψ₁`.
pub fn lorentz_action(data: &WeierstrassData, s: &MobiusTransform) -> Result<WeierstrassData> {
    let sb = s.conj();
    if let Some(r) = data.as_rational() {
        let psi1 = r.psi1.mobius_after(s);
        let lin = |p: &RationalFunction, c: Complex64, d: Complex64| p.scale(c).add(&RationalFunction::constant(d));
        let g = lin(&r.psi1, s.c, s.d).mul(&lin(&r.psi2, sb.c, sb.d)).mul(&r.g);
        let psi2 = match data.f() {
            Some(f) => Psi2::Composed(f.compose(&RationalFunction::from_mobius(&s.inverse())).mobius_after(&sb)),
            None => Psi2::Direct(r.psi2.mobius_after(&sb).into()),
        };
        return WeierstrassData::new(psi1.into(), psi2, Holomorphic1Form::rational(g), data.domain().clone());
    }
    let psi1 = mobius_of(data.psi1(), *s);
    let psi2_old = data.psi2_function();
    let psi2 = match data.f() {
        Some(f) => Psi2::Composed(f.compose(&RationalFunction::from_mobius(&s.inverse())).mobius_after(&sb)),
        None => Psi2::Direct(mobius_of(&psi2_old, sb)),
    };
    let (p1, g) = (data.psi1().clone(), data.dh().g.clone());
    let s = *s;
    let new_g = BlackBox::new("transformed dh", move |z| {
        let (a, da) = p1.eval_with_derivative(z)?;
        let (b, db) = psi2_old.eval_with_derivative(z)?;
        let (gv, dg) = g.eval_with_derivative(z)?;
        let u = s.c * a + s.d;
        let w = sb.c * b + sb.d;
        Ok((u * w * gv, s.c * da * w * gv + u * sb.c * db * gv + u * w * dg))
    });
    WeierstrassData::new(psi1, psi2, Holomorphic1Form::black_box(new_g), data.domain().clone())
}
