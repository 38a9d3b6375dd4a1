use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Dense complex polynomial, coefficients in ascending degree order.
///
/// Trailing (highest-degree) exact zeros are always trimmed, so the zero
/// polynomial has an empty coefficient list and [`Polynomial::degree`]
/// returns `None`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Polynomial {
    coeffs: Vec<Complex64>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<Complex64>) -> Self {
        while coeffs.last() == Some(&ZERO) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(ONE)
    }

    pub fn constant(c: Complex64) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `z`.
    pub fn x() -> Self {
        Self::new(vec![ZERO, ONE])
    }

    /// `c · z^n`.
    pub fn monomial(c: Complex64, n: usize) -> Self {
        let mut v = vec![ZERO; n + 1];
        v[n] = c;
        Self::new(v)
    }

    /// `lead · Π (z − r)`.
    pub fn from_roots(lead: Complex64, roots: &[Complex64]) -> Self {
        let mut p = Self::constant(lead);
        for &r in roots {
            p = &p * &Self::new(vec![-r, ONE]);
        }
        p
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Complex64 {
        self.coeffs.get(k).copied().unwrap_or(ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0.
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn leading(&self) -> Complex64 {
        self.coeffs.last().copied().unwrap_or(ZERO)
    }

    /// Max-norm of the coefficient vector.
    pub fn norm_inf(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// `Σ |c_k| |z|^k`, the scale used for backward-error tests.
    pub fn abs_eval(&self, r: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * r + c.norm())
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(ZERO, |acc, &c| acc * z + c)
    }

    /// Value and first derivative by Horner's scheme.
    pub fn eval_with_derivative(&self, z: Complex64) -> (Complex64, Complex64) {
        let mut p = ZERO;
        let mut dp = ZERO;
        for &c in self.coeffs.iter().rev() {
            dp = dp * z + p;
            p = p * z + c;
        }
        (p, dp)
    }

    pub fn derivative(&self) -> Self {
        Self::new(self.coeffs.iter().enumerate().skip(1).map(|(k, &c)| c * k as f64).collect())
    }

    /// Antiderivative vanishing at 0.
    pub fn antiderivative(&self) -> Self {
        let mut v = Vec::with_capacity(self.coeffs.len() + 1);
        v.push(ZERO);
        v.extend(self.coeffs.iter().enumerate().map(|(k, &c)| c / (k + 1) as f64));
        Self::new(v)
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self::new(self.coeffs.iter().map(|&c| c * s).collect())
    }

    pub fn conj_coeffs(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.conj()).collect())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        self.scale(self.leading().inv())
    }

    pub fn pow(&self, n: usize) -> Self {
        let mut out = Self::one();
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                out = &out * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        out
    }

    /// `z^n · p(1/z)`, for `n ≥ deg p`.
    pub fn reversed(&self, n: usize) -> Self {
        let mut v = vec![ZERO; n + 1];
        for (k, &c) in self.coeffs.iter().enumerate() {
            v[n - k] = c;
        }
        Self::new(v)
    }

    /// `p(q(z))`.
    pub fn compose(&self, q: &Polynomial) -> Self {
        self.coeffs.iter().rev().fold(Self::zero(), |acc, &c| &(&acc * q) + &Self::constant(c))
    }

    /// Coefficients of `p(z + a)`.
    pub fn taylor_shift(&self, a: Complex64) -> Self {
        let mut c = self.coeffs.clone();
        let n = c.len();
        for i in 0..n {
            for j in (i..n.saturating_sub(1)).rev() {
                let t = c[j + 1] * a;
                c[j] += t;
            }
        }
        Self::new(c)
    }

    /// Euclidean division `self = q·d + r`, `deg r < deg d`.
    pub fn divrem(&self, d: &Polynomial) -> Result<(Polynomial, Polynomial)> {
        let dd = d.degree().ok_or(Error::ZeroDenominator)?;
        let Some(n) = self.degree() else {
            return Ok((Self::zero(), Self::zero()));
        };
        if n < dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut r = self.coeffs.clone();
        let mut q = vec![ZERO; n - dd + 1];
        let lead = d.leading();
        for k in (0..=n - dd).rev() {
            let t = r[k + dd] / lead;
            q[k] = t;
            for (j, &dc) in d.coeffs.iter().enumerate() {
                r[k + j] -= t * dc;
            }
            r[k + dd] = ZERO;
        }
        r.truncate(dd);
        Ok((Self::new(q), Self::new(r)))
    }

    /// Division by `(z − a)`, returning quotient and remainder `p(a)`.
    pub fn deflate(&self, a: Complex64) -> (Polynomial, Complex64) {
        let n = self.coeffs.len();
        if n == 0 {
            return (Self::zero(), ZERO);
        }
        let mut q = vec![ZERO; n - 1];
        let mut acc = ZERO;
        for k in (0..n).rev() {
            acc = acc * a + self.coeffs[k];
            if k > 0 {
                q[k - 1] = acc;
            }
        }
        (Self::new(q), acc)
    }

    /// Order of vanishing at `a` by repeated synthetic division; a remainder
    /// counts as zero when `|p(a)| ≤ tol · Σ|c_k||a|^k`.
    pub fn order_at(&self, a: Complex64, tol: f64) -> usize {
        let mut p = self.clone();
        let mut k = 0;
        while !p.is_zero() {
            let scale = p.abs_eval(a.norm());
            let (q, r) = p.deflate(a);
            if r.norm() > tol * scale {
                break;
            }
            k += 1;
            p = q;
        }
        k
    }

    /// Drops leading coefficients with `|c| ≤ tol`.
    pub fn trim_abs(&self, tol: f64) -> Self {
        let mut v = self.coeffs.clone();
        while v.last().is_some_and(|c| c.norm() <= tol) {
            v.pop();
        }
        Self::new(v)
    }

    /// Sets coefficients below `rel_tol·‖p‖∞` to zero.
    pub fn clean(&self, rel_tol: f64) -> Self {
        let t = rel_tol * self.norm_inf();
        Self::new(self.coeffs.iter().map(|&c| if c.norm() <= t { ZERO } else { c }).collect())
    }

    /// Number of trailing-zero coefficients at the low end (the order of the
    /// root at 0, counted exactly).
    pub fn low_order(&self) -> usize {
        self.coeffs.iter().take_while(|&&c| c == ZERO).count()
    }

    /// `p(z) / z^k` for `k ≤ low_order()`.
    pub fn shift_down(&self, k: usize) -> Self {
        Self::new(self.coeffs[k.min(self.coeffs.len())..].to_vec())
    }

    pub fn is_finite(&self) -> bool {
        self.coeffs.iter().all(|c| c.re.is_finite() && c.im.is_finite())
    }
}

/// Numeric gcd by the Euclidean algorithm with monic remainders.
///
/// A remainder whose coefficients are all below `rel_tol` times the
/// max-norm of the current dividend is treated as zero; leading coefficients
/// below the same threshold are trimmed. The result is monic (or the zero
/// polynomial if both inputs are zero).
pub fn gcd(a: &Polynomial, b: &Polynomial, rel_tol: f64) -> Polynomial {
    let (na, nb) = (a.norm_inf(), b.norm_inf());
    if nb <= rel_tol * na {
        return a.monic();
    }
    if na <= rel_tol * nb {
        return b.monic();
    }
    let (mut x, mut y) = if a.deg() >= b.deg() { (a.monic(), b.monic()) } else { (b.monic(), a.monic()) };
    if y.is_zero() {
        return x;
    }
    loop {
        if y.degree() == Some(0) {
            return Polynomial::one();
        }
        let Ok((_, r)) = x.divrem(&y) else {
            return x;
        };
        let thresh = rel_tol * x.norm_inf().max(y.norm_inf());
        let r = r.trim_abs(thresh);
        if r.is_zero() {
            return y;
        }
        x = y;
        y = r.monic();
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if *c == ZERO {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({}{:+}i)", c.re, c.im)?;
            match k {
                0 => {}
                1 => write!(f, "z")?,
                _ => write!(f, "z^{k}")?,
            }
        }
        Ok(())
    }
}

impl Serialize for Polynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<[f64; 2]> = self.coeffs.iter().map(|c| [c.re, c.im]).collect();
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Polynomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v: Vec<[f64; 2]> = Vec::deserialize(d)?;
        if v.iter().flatten().any(|x| !x.is_finite()) {
            return Err(serde::de::Error::custom("polynomial coefficients must be finite"));
        }
        Ok(Polynomial::new(v.into_iter().map(|[re, im]| Complex64::new(re, im)).collect()))
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;

    fn add(self, o: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(o.coeffs.len());
        Polynomial::new((0..n).map(|k| self.coeff(k) + o.coeff(k)).collect())
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;

    fn sub(self, o: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(o.coeffs.len());
        Polynomial::new((0..n).map(|k| self.coeff(k) - o.coeff(k)).collect())
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;

    fn mul(self, o: &Polynomial) -> Polynomial {
        if self.is_zero() || o.is_zero() {
            return Polynomial::zero();
        }
        let mut v = vec![ZERO; self.coeffs.len() + o.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in o.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        Polynomial::new(v)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        self.scale(-ONE)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Polynomial {
            type Output = Polynomial;
            fn $m(self, o: Polynomial) -> Polynomial {
                (&self).$m(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn trimming_and_degree() {
        let p = Polynomial::new(vec![c(1.0, 0.0), ZERO, ZERO]);
        assert_eq!(p.degree(), Some(0));
        assert_eq!(Polynomial::zero().degree(), None);
        assert_eq!(Polynomial::from_real(&[0.0, 0.0, 3.0]).low_order(), 2);
    }

    #[test]
    fn arithmetic() {
        let p = Polynomial::from_real(&[1.0, 1.0]);
        let q = Polynomial::from_real(&[-1.0, 1.0]);
        assert_eq!(&p * &q, Polynomial::from_real(&[-1.0, 0.0, 1.0]));
        assert_eq!(&p - &p, Polynomial::zero());
        assert_eq!(p.pow(3), Polynomial::from_real(&[1.0, 3.0, 3.0, 1.0]));
        assert_eq!(p.compose(&q), Polynomial::from_real(&[0.0, 1.0]));
    }

    #[test]
    fn divrem_and_deflate() {
        let p = Polynomial::from_real(&[-1.0, 0.0, 0.0, 1.0]);
        let d = Polynomial::from_real(&[-1.0, 1.0]);
        let (q, r) = p.divrem(&d).unwrap();
        assert_eq!(q, Polynomial::from_real(&[1.0, 1.0, 1.0]));
        assert!(r.is_zero());
        let (q2, rem) = p.deflate(c(1.0, 0.0));
        assert_eq!(q2, q);
        assert_eq!(rem, ZERO);
        assert!(p.divrem(&Polynomial::zero()).is_err());
    }

    #[test]
    fn taylor_shift_matches_composition() {
        let p = Polynomial::new(vec![c(1.0, 2.0), c(-3.0, 0.5), c(0.0, 1.0), c(2.0, 0.0)]);
        let a = c(0.3, -1.1);
        let shifted = p.taylor_shift(a);
        let composed = p.compose(&Polynomial::new(vec![a, ONE]));
        for k in 0..4 {
            assert!((shifted.coeff(k) - composed.coeff(k)).norm() < 1e-12);
        }
    }

    #[test]
    fn gcd_finds_common_factor() {
        let a = Polynomial::from_roots(ONE, &[c(1.0, 0.0), c(2.0, 0.0), c(0.0, 1.0)]);
        let b = Polynomial::from_roots(c(3.0, 0.0), &[c(1.0, 0.0), c(0.0, 1.0), c(-5.0, 0.0)]);
        let g = gcd(&a, &b, 1e-12);
        let expect = Polynomial::from_roots(ONE, &[c(1.0, 0.0), c(0.0, 1.0)]);
        assert_eq!(g.degree(), Some(2));
        for k in 0..3 {
            assert!((g.coeff(k) - expect.coeff(k)).norm() < 1e-12);
        }
        let coprime = gcd(&Polynomial::from_real(&[1.0, 1.0]), &Polynomial::from_real(&[2.0, 1.0]), 1e-12);
        assert_eq!(coprime, Polynomial::one());
    }

    #[test]
    fn order_at_counts_multiplicity() {
        let p = Polynomial::from_roots(ONE, &[c(0.5, 0.0); 3]);
        assert_eq!(p.order_at(c(0.5, 0.0), 1e-10), 3);
        assert_eq!(p.order_at(c(0.0, 0.0), 1e-10), 0);
    }

    #[test]
    fn reversed_is_reciprocal_chart() {
        let p = Polynomial::from_real(&[1.0, 2.0, 3.0]);
        let r = p.reversed(3);
        assert_eq!(r, Polynomial::from_real(&[0.0, 3.0, 2.0, 1.0]));
    }

    #[test]
    fn serde_round_trip() {
        let p = Polynomial::new(vec![c(1.0, -1.0), c(0.0, 2.5)]);
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, "[[1.0,-1.0],[0.0,2.5]]");
        assert_eq!(serde_json::from_str::<Polynomial>(&s).unwrap(), p);
    }
}
