//! The extended complex plane, its chordal metric and the Möbius group.
//!
//! Points at infinity are carried by a dedicated [`ExtendedComplex::Infinity`]
//! tag. Finite values are always finite floats; overflow is never used to
//! encode the point at infinity.

use std::fmt;
use std::ops::Mul;

use num_complex::Complex64;
use serde::de::{self, Deserializer, SeqAccess, Visitor};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Chordal distance below which two points of the extended plane are equal.
pub const POINT_EQ_TOL: f64 = 1e-10;

/// Absolute tolerance used by [`classify_conjugate_similarity`].
pub const CLASSIFY_TOL: f64 = 1e-9;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// A point of the Riemann sphere `C ∪ {∞}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExtendedComplex {
    Finite(Complex64),
    Infinity,
}

pub use ExtendedComplex::Infinity;

impl ExtendedComplex {
    /// Wraps a finite value.
    ///
    /// # Panics
    ///
    /// Panics if `z` has a NaN or infinite component. Use [`Self::try_finite`]
    /// for unchecked input.
    pub fn finite(z: Complex64) -> Self {
        Self::try_finite(z).expect("ExtendedComplex::finite called with non-finite value")
    }

    pub fn try_finite(z: Complex64) -> Result<Self> {
        if z.re.is_finite() && z.im.is_finite() {
            Ok(Self::Finite(z))
        } else {
            Err(Error::NonFinite(z))
        }
    }

    /// Like [`Self::finite`], but maps overflowed values to infinity. Meant for
    /// results of arithmetic that legitimately blows up next to a pole.
    pub fn from_overflowing(z: Complex64) -> Self {
        if z.re.is_nan() || z.im.is_nan() || z.re.is_infinite() || z.im.is_infinite() {
            Self::Infinity
        } else {
            Self::Finite(z)
        }
    }

    pub fn real(x: f64) -> Self {
        Self::finite(Complex64::new(x, 0.0))
    }

    pub fn new(re: f64, im: f64) -> Self {
        Self::finite(Complex64::new(re, im))
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Self::Infinity)
    }

    pub fn as_finite(&self) -> Option<Complex64> {
        match *self {
            Self::Finite(z) => Some(z),
            Self::Infinity => None,
        }
    }

    pub fn conj(&self) -> Self {
        match *self {
            Self::Finite(z) => Self::Finite(z.conj()),
            Self::Infinity => Self::Infinity,
        }
    }

    /// `1/z` on the sphere, with `1/0 = ∞` and `1/∞ = 0`.
    pub fn recip(&self) -> Self {
        match *self {
            Self::Infinity => Self::Finite(Complex64::new(0.0, 0.0)),
            Self::Finite(z) if z == Complex64::new(0.0, 0.0) => Self::Infinity,
            Self::Finite(z) => Self::from_overflowing(z.inv()),
        }
    }

    /// Chordal equality with tolerance [`POINT_EQ_TOL`].
    pub fn approx_eq(&self, other: &Self) -> bool {
        chordal(*self, *other) <= POINT_EQ_TOL
    }

    /// Total order used for deterministic reporting: finite points by
    /// (re, im), infinity last.
    pub fn report_cmp(&self, other: &Self) -> std::cmp::Ordering {
        match (self, other) {
            (Self::Infinity, Self::Infinity) => std::cmp::Ordering::Equal,
            (Self::Infinity, _) => std::cmp::Ordering::Greater,
            (_, Self::Infinity) => std::cmp::Ordering::Less,
            (Self::Finite(a), Self::Finite(b)) => a.re.total_cmp(&b.re).then_with(|| a.im.total_cmp(&b.im)),
        }
    }
}

impl From<Complex64> for ExtendedComplex {
    fn from(z: Complex64) -> Self {
        Self::finite(z)
    }
}

impl fmt::Display for ExtendedComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Finite(z) => write!(f, "{}{:+}i", z.re, z.im),
            Self::Infinity => write!(f, "inf"),
        }
    }
}

// Wire format: `[re, im]` for finite points, the string "inf" for infinity.
impl Serialize for ExtendedComplex {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Self::Finite(z) => {
                let mut seq = s.serialize_seq(Some(2))?;
                seq.serialize_element(&z.re)?;
                seq.serialize_element(&z.im)?;
                seq.end()
            }
            Self::Infinity => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for ExtendedComplex {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = ExtendedComplex;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a [re, im] pair or the string \"inf\"")
            }

            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Self::Value, E> {
                if v == "inf" {
                    Ok(ExtendedComplex::Infinity)
                } else {
                    Err(E::invalid_value(de::Unexpected::Str(v), &self))
                }
            }

            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> std::result::Result<Self::Value, A::Error> {
                let re: f64 = seq.next_element()?.ok_or_else(|| de::Error::invalid_length(0, &self))?;
                let im: f64 = seq.next_element()?.ok_or_else(|| de::Error::invalid_length(1, &self))?;
                if seq.next_element::<f64>()?.is_some() {
                    return Err(de::Error::invalid_length(3, &self));
                }
                ExtendedComplex::try_finite(Complex64::new(re, im)).map_err(de::Error::custom)
            }
        }
        d.deserialize_any(V)
    }
}

fn one_plus_abs_sq_sqrt(z: Complex64) -> f64 {
    1f64.hypot(z.norm())
}

/// Chordal distance on the Riemann sphere, with values in `[0, 1]`.
pub fn chordal(a: ExtendedComplex, b: ExtendedComplex) -> f64 {
    match (a, b) {
        (Infinity, Infinity) => 0.0,
        (ExtendedComplex::Finite(z), Infinity) | (Infinity, ExtendedComplex::Finite(z)) => 1.0 / one_plus_abs_sq_sqrt(z),
        (ExtendedComplex::Finite(z), ExtendedComplex::Finite(w)) => {
            let d = (z - w).norm() / (one_plus_abs_sq_sqrt(z) * one_plus_abs_sq_sqrt(w));
            d.min(1.0)
        }
    }
}

/// An element of SL(2, C) acting on the sphere by `z ↦ (az + b)/(cz + d)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MobiusTransform {
    pub a: Complex64,
    pub b: Complex64,
    pub c: Complex64,
    pub d: Complex64,
}

impl MobiusTransform {
    /// Builds a transform from any nonsingular matrix, rescaling it to unit
    /// determinant.
    pub fn new(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Result<Self> {
        let det = a * d - b * c;
        let scale = a.norm().max(b.norm()).max(c.norm()).max(d.norm());
        if !(det.norm() > 1e-14 * scale * scale) || !det.norm().is_finite() {
            return Err(Error::SingularMatrix(det.norm()));
        }
        let k = det.sqrt().inv();
        Ok(Self { a: a * k, b: b * k, c: c * k, d: d * k })
    }

    pub fn from_real(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        Self::new(a.into(), b.into(), c.into(), d.into())
    }

    pub fn identity() -> Self {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        Self { a: one, b: zero, c: zero, d: one }
    }

    pub fn det(&self) -> Complex64 {
        self.a * self.d - self.b * self.c
    }

    pub fn trace(&self) -> Complex64 {
        self.a + self.d
    }

    /// Entry-wise complex conjugate.
    pub fn conj(&self) -> Self {
        Self { a: self.a.conj(), b: self.b.conj(), c: self.c.conj(), d: self.d.conj() }
    }

    pub fn neg(&self) -> Self {
        Self { a: -self.a, b: -self.b, c: -self.c, d: -self.d }
    }

    /// Inverse in SL(2, C).
    pub fn inverse(&self) -> Self {
        Self { a: self.d, b: -self.b, c: -self.c, d: self.a }
    }

    /// Maximum entry-wise distance to `±other`.
    pub fn distance_up_to_sign(&self, other: &Self) -> f64 {
        let dist = |s: &Self, t: &Self| (s.a - t.a).norm().max((s.b - t.b).norm()).max((s.c - t.c).norm()).max((s.d - t.d).norm());
        dist(self, other).min(dist(self, &other.neg()))
    }

    pub fn apply(&self, z: ExtendedComplex) -> ExtendedComplex {
        mobius_apply(self, z)
    }

    pub fn fixed_matrix_entries(&self) -> [Complex64; 4] {
        [self.a, self.b, self.c, self.d]
    }
}

impl Mul for MobiusTransform {
    type Output = MobiusTransform;

    fn mul(self, r: MobiusTransform) -> MobiusTransform {
        MobiusTransform { a: self.a * r.a + self.b * r.c, b: self.a * r.b + self.b * r.d, c: self.c * r.a + self.d * r.c, d: self.c * r.b + self.d * r.d }
    }
}

/// Möbius action on the extended plane.
pub fn mobius_apply(s: &MobiusTransform, z: ExtendedComplex) -> ExtendedComplex {
    let zero = Complex64::new(0.0, 0.0);
    match z {
        Infinity => {
            if s.c == zero {
                Infinity
            } else {
                ExtendedComplex::from_overflowing(s.a / s.c)
            }
        }
        ExtendedComplex::Finite(z) => {
            let den = s.c * z + s.d;
            if den == zero {
                Infinity
            } else {
                ExtendedComplex::from_overflowing((s.a * z + s.b) / den)
            }
        }
    }
}

/// Normal-form families of SL(2, C) under `S ~ ±conj(T)·S·T⁻¹`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum DegeneracyClass {
    Identity,
    Hyperbolic { u: f64 },
    Elliptic { alpha: f64 },
    Parabolic,
}

/// A set size that may be infinite.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Cardinality {
    Finite(usize),
    Infinite,
}

impl Cardinality {
    pub fn finite(&self) -> Option<usize> {
        match *self {
            Cardinality::Finite(n) => Some(n),
            Cardinality::Infinite => None,
        }
    }
}

impl fmt::Display for Cardinality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cardinality::Finite(n) => write!(f, "{n}"),
            Cardinality::Infinite => write!(f, "inf"),
        }
    }
}

impl Serialize for Cardinality {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Cardinality::Finite(n) => s.serialize_u64(*n as u64),
            Cardinality::Infinite => s.serialize_str("inf"),
        }
    }
}

impl DegeneracyClass {
    /// Size of the fixed set `E_S = {z : M_S(z) = conj(z)}` for this family.
    pub fn expected_ef_count(&self) -> Cardinality {
        match self {
            DegeneracyClass::Identity => Cardinality::Infinite,
            DegeneracyClass::Hyperbolic { .. } => Cardinality::Finite(2),
            DegeneracyClass::Elliptic { .. } => Cardinality::Finite(0),
            DegeneracyClass::Parabolic => Cardinality::Finite(1),
        }
    }

    /// Representative of the family.
    pub fn normal_form(&self) -> MobiusTransform {
        let zero = Complex64::new(0.0, 0.0);
        let one = Complex64::new(1.0, 0.0);
        match *self {
            DegeneracyClass::Identity => MobiusTransform::identity(),
            DegeneracyClass::Hyperbolic { u } => MobiusTransform { a: Complex64::new(u.exp(), 0.0), b: zero, c: zero, d: Complex64::new((-u).exp(), 0.0) },
            DegeneracyClass::Elliptic { alpha } => {
                MobiusTransform { a: zero, b: I * Complex64::from_polar(1.0, -alpha), c: I * Complex64::from_polar(1.0, alpha), d: zero }
            }
            DegeneracyClass::Parabolic => MobiusTransform { a: one, b: one, c: zero, d: one },
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            DegeneracyClass::Identity => "identity",
            DegeneracyClass::Hyperbolic { .. } => "hyperbolic",
            DegeneracyClass::Elliptic { .. } => "elliptic",
            DegeneracyClass::Parabolic => "parabolic",
        }
    }
}

/// Classifies `S` up to conjugate similarity using the invariant
/// `τ = tr(conj(S)·S)`.
///
/// `conj(S')·S' = T·(conj(S)·S)·T⁻¹` when `S' = ±conj(T)·S·T⁻¹`, so `τ` and the
/// test `conj(S)·S = ±I` are class invariants. Values: `τ > 2` hyperbolic,
/// `τ = 2` identity or parabolic, `-2 ≤ τ < 2` elliptic.
pub fn classify_conjugate_similarity(s: &MobiusTransform) -> Result<DegeneracyClass> {
    let a = s.conj() * *s;
    let tau = a.trace();
    let scale = 1.0f64.max(tau.norm());
    if tau.im.abs() > CLASSIFY_TOL * scale {
        return Err(Error::NonRealInvariant(tau.im));
    }
    let tau = tau.re;
    if tau < -2.0 - CLASSIFY_TOL {
        return Err(Error::InvariantOutOfRange(tau));
    }
    if (tau - 2.0).abs() <= CLASSIFY_TOL {
        if a.distance_up_to_sign(&MobiusTransform::identity()) <= CLASSIFY_TOL {
            Ok(DegeneracyClass::Identity)
        } else {
            Ok(DegeneracyClass::Parabolic)
        }
    } else if tau > 2.0 {
        Ok(DegeneracyClass::Hyperbolic { u: 0.5 * (tau / 2.0).acosh() })
    } else {
        let c = (tau / 2.0).clamp(-1.0, 1.0);
        Ok(DegeneracyClass::Elliptic { alpha: 0.5 * c.acos() })
    }
}

/// The metric of `Q_{1,1}^+` in the coordinates `(w1, w2)`, evaluated on the
/// tangent vector `(dw1, dw2)`: `Re[4·conj(dw1)·dw2 / (conj(w1) − w2)²]`.
pub fn q11_pairing(w1: ExtendedComplex, w2: ExtendedComplex, dw1: Complex64, dw2: Complex64) -> Result<f64> {
    let (w1, w2) = match (w1, w2) {
        (ExtendedComplex::Finite(a), ExtendedComplex::Finite(b)) => (a, b),
        _ => return Err(Error::InfiniteChart),
    };
    let den = w1.conj() - w2;
    if chordal(ExtendedComplex::Finite(w2), ExtendedComplex::Finite(w1.conj())) <= POINT_EQ_TOL {
        return Err(Error::DegeneratePoint(w2));
    }
    Ok((4.0 * dw1.conj() * dw2 / (den * den)).re)
}
