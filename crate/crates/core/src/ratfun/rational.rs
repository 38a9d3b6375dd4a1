use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize};

use super::poly::{gcd, Polynomial};
use super::roots::{all_roots, roots_with_multiplicity, GCD_TOL, ROOT_TOL};
use crate::cplane::{ExtendedComplex, MobiusTransform};
use crate::error::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Tolerance for order-of-vanishing tests by synthetic division.
pub const ORDER_TOL: f64 = 1e-10;

/// `P/Q` in lowest terms with a monic denominator.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

/// Points of the sphere with integer orders; positive for zeros, negative for
/// poles.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Divisor {
    pub entries: Vec<(ExtendedComplex, i64)>,
}

impl Divisor {
    pub fn degree(&self) -> i64 {
        self.entries.iter().map(|(_, k)| k).sum()
    }

    pub fn at(&self, a: ExtendedComplex, tol: f64) -> i64 {
        self.entries.iter().filter(|(p, _)| crate::cplane::chordal(*p, a) <= tol).map(|(_, k)| k).sum()
    }
}

/// Coefficients below this times the max-norm are treated as zero.
pub const CLEAN_TOL: f64 = 64.0 * f64::EPSILON;

/// Relative remainder below which a common factor is accepted.
pub const FACTOR_TOL: f64 = 1e-10;

fn divides(g: &Polynomial, p: &Polynomial) -> bool {
    let Ok((q, r)) = p.divrem(g) else { return false };
    r.norm_inf() <= FACTOR_TOL * p.norm_inf().max(q.norm_inf() * g.norm_inf())
}

/// Common factor of `num` and `den`. The Euclidean gcd can accept a
/// remainder that is small only because of scaling; its result is kept when
/// it divides both, and otherwise cut down to the roots shared by both.
fn common_factor(num: &Polynomial, den: &Polynomial) -> Polynomial {
    let g = gcd(num, den, GCD_TOL);
    if g.deg() == 0 || (divides(&g, num) && divides(&g, den)) {
        return g;
    }
    let Ok(roots) = all_roots(&g) else { return Polynomial::one() };
    let shared = |p: &Polynomial, r: Complex64| p.eval(r).norm() <= FACTOR_TOL * p.abs_eval(r.norm());
    let keep: Vec<Complex64> = roots.into_iter().filter(|&r| shared(num, r) && shared(den, r)).collect();
    let g = Polynomial::from_roots(ONE, &keep);
    if divides(&g, num) && divides(&g, den) {
        g
    } else {
        Polynomial::one()
    }
}

impl RationalFunction {
    /// Reduces `num/den` by their numeric gcd and makes `den` monic.
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if !num.is_finite() || !den.is_finite() {
            return Err(Error::InvalidInput("non-finite coefficient".into()));
        }
        if num.is_zero() {
            return Ok(Self { num, den: Polynomial::one() });
        }
        let g = common_factor(&num, &den);
        let (num, den) = if g.deg() > 0 { (num.divrem(&g)?.0, den.divrem(&g)?.0) } else { (num, den) };
        // Cancellation leaves rounding noise where exact zeros belong.
        let (num, den) = (num.clean(CLEAN_TOL), den.clean(CLEAN_TOL));
        let s = den.leading().inv();
        Ok(Self { num: num.scale(s), den: den.scale(s) })
    }

    pub fn polynomial(p: Polynomial) -> Self {
        Self::new(p, Polynomial::one()).expect("unit denominator")
    }

    pub fn constant(c: Complex64) -> Self {
        Self::polynomial(Polynomial::constant(c))
    }

    pub fn identity() -> Self {
        Self::polynomial(Polynomial::x())
    }

    pub fn from_real(num: &[f64], den: &[f64]) -> Result<Self> {
        Self::new(Polynomial::from_real(num), Polynomial::from_real(den))
    }

    pub fn from_mobius(s: &MobiusTransform) -> Self {
        Self::new(Polynomial::new(vec![s.b, s.a]), Polynomial::new(vec![s.d, s.c])).expect("SL(2,C) matrix has a nonzero denominator row")
    }

    /// The matrix of a degree-1 function, scaled into SL(2, C).
    pub fn to_mobius(&self) -> Option<MobiusTransform> {
        if self.degree() != 1 {
            return None;
        }
        MobiusTransform::new(self.num.coeff(1), self.num.coeff(0), self.den.coeff(1), self.den.coeff(0)).ok()
    }

    pub fn num(&self) -> &Polynomial {
        &self.num
    }

    pub fn den(&self) -> &Polynomial {
        &self.den
    }

    /// `m = max(deg P, deg Q)`.
    pub fn degree(&self) -> usize {
        self.num.deg().max(self.den.deg())
    }

    pub fn is_constant(&self) -> bool {
        self.degree() == 0
    }

    pub fn is_finite_at_infinity(&self) -> bool {
        self.num.deg() <= self.den.deg() || self.num.is_zero()
    }

    pub fn eval(&self, z: ExtendedComplex) -> ExtendedComplex {
        match z {
            ExtendedComplex::Infinity => self.value_at_infinity(),
            ExtendedComplex::Finite(z) => {
                let q = self.den.eval(z);
                if q == ZERO {
                    ExtendedComplex::Infinity
                } else {
                    ExtendedComplex::from_overflowing(self.num.eval(z) / q)
                }
            }
        }
    }

    pub fn value_at_infinity(&self) -> ExtendedComplex {
        let (dp, dq) = (self.num.deg(), self.den.deg());
        if self.num.is_zero() || dp < dq {
            ExtendedComplex::Finite(ZERO)
        } else if dp > dq {
            ExtendedComplex::Infinity
        } else {
            ExtendedComplex::finite(self.num.leading() / self.den.leading())
        }
    }

    /// Finite value, or a pole error.
    pub fn eval_finite(&self, z: Complex64) -> Result<Complex64> {
        self.eval(ExtendedComplex::Finite(z)).as_finite().ok_or(Error::Pole(z))
    }

    pub fn eval_with_derivative(&self, z: Complex64) -> Result<(Complex64, Complex64)> {
        let (p, dp) = self.num.eval_with_derivative(z);
        let (q, dq) = self.den.eval_with_derivative(z);
        if q == ZERO {
            return Err(Error::Pole(z));
        }
        let v = p / q;
        let d = (dp * q - p * dq) / (q * q);
        if !(v.re.is_finite() && v.im.is_finite() && d.re.is_finite() && d.im.is_finite()) {
            return Err(Error::Pole(z));
        }
        Ok((v, d))
    }

    pub fn derivative(&self) -> Self {
        let n = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        Self::new(n, &self.den * &self.den).expect("nonzero denominator")
    }

    /// Coefficient-wise conjugate: `z ↦ conj(f(conj(z)))`.
    pub fn conjugate_coeffs(&self) -> Self {
        Self { num: self.num.conj_coeffs(), den: self.den.conj_coeffs() }
    }

    /// `f ∘ g`.
    pub fn compose(&self, g: &RationalFunction) -> Self {
        let m = self.degree();
        let apow: Vec<Polynomial> = (0..=m)
            .scan(Polynomial::one(), |acc, _| {
                let cur = acc.clone();
                *acc = &*acc * &g.num;
                Some(cur)
            })
            .collect();
        let bpow: Vec<Polynomial> = (0..=m)
            .scan(Polynomial::one(), |acc, _| {
                let cur = acc.clone();
                *acc = &*acc * &g.den;
                Some(cur)
            })
            .collect();
        let hom = |p: &Polynomial| (0..=m).fold(Polynomial::zero(), |acc, k| &acc + &(&apow[k] * &bpow[m - k]).scale(p.coeff(k)));
        Self::new(hom(&self.num), hom(&self.den)).expect("composition of nonzero denominators")
    }

    /// `w ↦ 1/f(1/w)`, the expression of `f` in the chart at infinity.
    pub fn invert_chart(&self) -> Self {
        let m = self.degree();
        Self::new(self.den.reversed(m), self.num.reversed(m)).unwrap_or_else(|_| {
            // f ≡ 0 gives 1/f ≡ ∞; represent by its reciprocal chart value 0.
            Self::constant(ZERO)
        })
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self::new(self.num.scale(s), self.den.clone()).expect("nonzero denominator")
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = &(&self.num * &o.den) + &(&o.num * &self.den);
        Self::new(n, &self.den * &o.den).expect("nonzero denominator")
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(-ONE))
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::new(&self.num * &o.num, &self.den * &o.den).expect("nonzero denominator")
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        if o.num.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Self::new(&self.num * &o.den, &self.den * &o.num)
    }

    /// Möbius post-composition `M_S ∘ f`.
    pub fn mobius_after(&self, s: &MobiusTransform) -> Self {
        let a = &self.num.scale(s.a) + &self.den.scale(s.b);
        let b = &self.num.scale(s.c) + &self.den.scale(s.d);
        Self::new(a, b).expect("SL(2,C) image of a function is a function")
    }

    /// Max-norm of both coefficient vectors.
    pub fn coeff_scale(&self) -> f64 {
        self.num.norm_inf().max(self.den.norm_inf())
    }

    /// Numerator of `f − a` (or `Q` for `a = ∞`), with near-cancelled leading
    /// coefficients trimmed.
    pub fn level_polynomial(&self, a: ExtendedComplex) -> Polynomial {
        match a {
            ExtendedComplex::Infinity => self.den.clone(),
            ExtendedComplex::Finite(a) => {
                let h = &self.num - &self.den.scale(a);
                let scale = self.num.norm_inf() + a.norm() * self.den.norm_inf();
                h.trim_abs(1e-13 * scale)
            }
        }
    }

    /// `W = P′Q − PQ′`. Its order at a finite point `z` is the local degree of
    /// `f` at `z` minus one, poles included.
    pub fn wronskian(&self) -> Polynomial {
        let a = &self.num.derivative() * &self.den;
        let b = &self.num * &self.den.derivative();
        let scale = a.norm_inf() + b.norm_inf();
        (&a - &b).trim_abs(1e-14 * scale)
    }

    /// Local degree (valence) of `f` at infinity.
    pub fn local_degree_at_infinity(&self) -> usize {
        let m = self.degree();
        if m == 0 {
            return 0;
        }
        let (dp, dq) = (self.num.deg(), self.den.deg());
        if dp > dq {
            return dp - dq;
        }
        let h = self.level_polynomial(self.value_at_infinity());
        m - h.deg().min(m)
    }

    /// Points with local degree at least 2, with their local degrees.
    pub fn critical_points(&self) -> Result<Vec<(ExtendedComplex, usize)>> {
        let mut out = Vec::new();
        if self.degree() == 0 {
            return Ok(out);
        }
        let w = self.wronskian();
        if w.deg() > 0 {
            for (c, k) in roots_with_multiplicity(&w, ROOT_TOL)? {
                out.push((ExtendedComplex::Finite(c), k + 1));
            }
        }
        let inf = self.local_degree_at_infinity();
        if inf >= 2 {
            out.push((ExtendedComplex::Infinity, inf));
        }
        Ok(out)
    }

    /// Preimages of `a` on the sphere with multiplicities summing to `m`.
    ///
    /// Multiplicities are read off the critical-point divisor rather than from
    /// clustering of numeric roots: critical points over `a` (chordal 1e-7)
    /// claim as many roots of `P − aQ` as their local degree, and the
    /// remaining roots are simple. A constant function yields an empty list.
    pub fn preimages(&self, a: ExtendedComplex) -> Result<Vec<(ExtendedComplex, usize)>> {
        self.preimages_with(a, &self.critical_points()?)
    }

    /// [`Self::preimages`] with precomputed critical points.
    pub fn preimages_with(&self, a: ExtendedComplex, critical: &[(ExtendedComplex, usize)]) -> Result<Vec<(ExtendedComplex, usize)>> {
        let m = self.degree();
        if m == 0 {
            return Ok(Vec::new());
        }
        let h = self.level_polynomial(a);
        let mut roots = if h.deg() > 0 { all_roots(&h)? } else { Vec::new() };
        let mut out = Vec::new();
        for &(c, k) in critical {
            let ExtendedComplex::Finite(c) = c else { continue };
            if crate::cplane::chordal(self.eval(ExtendedComplex::Finite(c)), a) > 1e-7 {
                continue;
            }
            if roots.len() < k {
                return Err(Error::MultiplicityMismatch(format!("critical point {c} of local degree {k}")));
            }
            roots.sort_by(|x, y| (x - c).norm().total_cmp(&(y - c).norm()));
            let cluster: Vec<Complex64> = roots.drain(..k).collect();
            let centroid = cluster.iter().sum::<Complex64>() / k as f64;
            if (centroid - c).norm() > 1e-6 * (1.0 + c.norm()) {
                return Err(Error::MultiplicityMismatch(format!("roots near critical point {c} have centroid {centroid}")));
            }
            out.push((ExtendedComplex::Finite(c), k));
        }
        for (i, r) in roots.iter().enumerate() {
            for s in &roots[i + 1..] {
                if (r - s).norm() <= 1e-7 * (1.0 + r.norm()) {
                    return Err(Error::MultiplicityMismatch(format!("unexplained root cluster at {r}")));
                }
            }
            out.push((ExtendedComplex::Finite(*r), 1));
        }
        let at_inf = m - h.deg().min(m);
        if at_inf > 0 {
            out.push((ExtendedComplex::Infinity, at_inf));
        }
        out.sort_by(|x, y| x.0.report_cmp(&y.0));
        Ok(out)
    }

    pub fn zeros(&self) -> Result<Vec<(ExtendedComplex, usize)>> {
        self.preimages(ExtendedComplex::Finite(ZERO))
    }

    pub fn poles(&self) -> Result<Vec<(ExtendedComplex, usize)>> {
        self.preimages(ExtendedComplex::Infinity)
    }

    pub fn divisor(&self) -> Result<Divisor> {
        let mut entries: Vec<(ExtendedComplex, i64)> = Vec::new();
        for (p, k) in self.zeros()? {
            entries.push((p, k as i64));
        }
        for (p, k) in self.poles()? {
            entries.push((p, -(k as i64)));
        }
        entries.sort_by(|a, b| a.0.report_cmp(&b.0));
        Ok(Divisor { entries })
    }

    /// `ν_f(a)`: order of zero (positive) or pole (negative) at `a`.
    pub fn divisor_at(&self, a: ExtendedComplex) -> i64 {
        if self.num.is_zero() {
            return 0;
        }
        match a {
            ExtendedComplex::Infinity => self.den.deg() as i64 - self.num.deg() as i64,
            ExtendedComplex::Finite(z) => self.num.order_at(z, ORDER_TOL) as i64 - self.den.order_at(z, ORDER_TOL) as i64,
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RationalWire {
    num: Polynomial,
    #[serde(default = "Polynomial::one")]
    den: Polynomial,
}

impl<'de> Deserialize<'de> for RationalFunction {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let w = RationalWire::deserialize(d)?;
        RationalFunction::new(w.num, w.den).map_err(serde::de::Error::custom)
    }
}
