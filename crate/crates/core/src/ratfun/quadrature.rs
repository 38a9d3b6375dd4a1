//! Composite Gauss–Legendre quadrature on circles and polylines.

use std::f64::consts::{PI, TAU};
use std::sync::OnceLock;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Nodes per panel.
pub const PANEL_ORDER: usize = 16;
/// Stop when successive estimates differ by less than this times `max(1, |I|)`.
pub const QUAD_TOL: f64 = 1e-10;
const MAX_PANELS: usize = 1 << 15;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Gauss–Legendre nodes and weights on `[-1, 1]`, by Newton iteration on the
/// Legendre recurrence.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut t = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, t);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * t * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            if n == 1 {
                p0 = 1.0;
                p1 = t;
            }
            dp = n as f64 * (t * p1 - p0) / (t * t - 1.0);
            let dt = p1 / dp;
            t -= dt;
            if dt.abs() < 1e-16 {
                break;
            }
        }
        x[i] = -t;
        x[n - 1 - i] = t;
        let wi = 2.0 / ((1.0 - t * t) * dp * dp);
        w[i] = wi;
        w[n - 1 - i] = wi;
    }
    (x, w)
}

fn rule() -> &'static (Vec<f64>, Vec<f64>) {
    static RULE: OnceLock<(Vec<f64>, Vec<f64>)> = OnceLock::new();
    RULE.get_or_init(|| gauss_legendre(PANEL_ORDER))
}

/// A closed circle (counter-clockwise) or a polyline through the given points.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum Contour {
    Circle { center: Complex64, radius: f64 },
    Polyline { points: Vec<Complex64> },
}

/// A smooth piece parameterized by `t ∈ [0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Piece {
    Segment { a: Complex64, b: Complex64 },
    Arc { center: Complex64, radius: f64, theta0: f64, theta1: f64 },
}

impl Piece {
    pub fn point(&self, t: f64) -> (Complex64, Complex64) {
        match *self {
            Piece::Segment { a, b } => (a + (b - a) * t, b - a),
            Piece::Arc { center, radius, theta0, theta1 } => {
                let th = theta0 + (theta1 - theta0) * t;
                let e = Complex64::from_polar(radius, th);
                (center + e, I * e * (theta1 - theta0))
            }
        }
    }
}

impl Contour {
    pub fn circle(center: Complex64, radius: f64) -> Self {
        Contour::Circle { center, radius }
    }

    /// A polyline closed by repeating its first point if necessary.
    pub fn closed_polygon(mut points: Vec<Complex64>) -> Self {
        if let (Some(&first), Some(&last)) = (points.first(), points.last()) {
            if first != last {
                points.push(first);
            }
        }
        Contour::Polyline { points }
    }

    pub fn is_closed(&self) -> bool {
        match self {
            Contour::Circle { .. } => true,
            Contour::Polyline { points } => points.len() > 1 && points.first() == points.last(),
        }
    }

    pub fn pieces(&self) -> Vec<Piece> {
        match self {
            Contour::Circle { center, radius } => {
                vec![Piece::Arc { center: *center, radius: *radius, theta0: 0.0, theta1: TAU }]
            }
            Contour::Polyline { points } => points.windows(2).filter(|w| w[0] != w[1]).map(|w| Piece::Segment { a: w[0], b: w[1] }).collect(),
        }
    }

    /// Distance from `p` to the contour.
    pub fn distance_to(&self, p: Complex64) -> f64 {
        match self {
            Contour::Circle { center, radius } => ((p - center).norm() - radius).abs(),
            Contour::Polyline { points } => {
                if points.len() == 1 {
                    return (p - points[0]).norm();
                }
                points.windows(2).map(|w| segment_distance(p, w[0], w[1])).fold(f64::INFINITY, f64::min)
            }
        }
    }

    /// Winding number of a closed contour around `p` (which must not lie on it).
    pub fn winding_number(&self, p: Complex64) -> i64 {
        match self {
            Contour::Circle { center, radius } => i64::from((p - center).norm() < *radius),
            Contour::Polyline { points } => {
                let total: f64 = points.windows(2).map(|w| ((w[1] - p) / (w[0] - p)).arg()).sum();
                (total / TAU).round() as i64
            }
        }
    }
}

pub fn segment_distance(p: Complex64, a: Complex64, b: Complex64) -> f64 {
    let d = b - a;
    let len2 = d.norm_sqr();
    if len2 == 0.0 {
        return (p - a).norm();
    }
    let t = (((p - a) * d.conj()).re / len2).clamp(0.0, 1.0);
    (p - (a + d * t)).norm()
}

fn integrate_piece_fixed<F>(f: &F, piece: &Piece, panels: usize) -> Result<Complex64>
where
    F: Fn(Complex64) -> Result<Complex64>,
{
    let (x, w) = rule();
    let h = 1.0 / panels as f64;
    let mut sum = Complex64::new(0.0, 0.0);
    for k in 0..panels {
        let mid = (k as f64 + 0.5) * h;
        let mut panel = Complex64::new(0.0, 0.0);
        for (xi, wi) in x.iter().zip(w) {
            let (z, dz) = piece.point(mid + 0.5 * h * xi);
            panel += f(z)? * dz * *wi;
        }
        sum += panel * (0.5 * h);
    }
    Ok(sum)
}

/// `∫ f(z) dz` along `contour`, doubling the panel count on each piece until
/// two successive estimates agree to [`QUAD_TOL`].
pub fn integrate<F>(f: F, contour: &Contour, initial_nodes: usize) -> Result<Complex64>
where
    F: Fn(Complex64) -> Result<Complex64>,
{
    let start = initial_nodes.div_ceil(PANEL_ORDER).max(1);
    let mut total = Complex64::new(0.0, 0.0);
    for piece in contour.pieces() {
        let mut panels = start;
        let mut prev = integrate_piece_fixed(&f, &piece, panels)?;
        loop {
            panels *= 2;
            let cur = integrate_piece_fixed(&f, &piece, panels)?;
            let diff = (cur - prev).norm();
            if diff < QUAD_TOL * 1f64.max(cur.norm()) {
                total += cur;
                break;
            }
            if panels >= MAX_PANELS {
                return Err(Error::QuadratureNoConvergence(diff));
            }
            prev = cur;
        }
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rule_integrates_polynomials_exactly() {
        let (x, w) = gauss_legendre(PANEL_ORDER);
        assert!((w.iter().sum::<f64>() - 2.0).abs() < 1e-14);
        let m30: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(30)).sum();
        assert!((m30 - 2.0 / 31.0).abs() < 1e-14);
        let (x3, w3) = gauss_legendre(3);
        assert!((x3[2] - 0.6f64.sqrt()).abs() < 1e-15);
        assert!((w3[1] - 8.0 / 9.0).abs() < 1e-15);
    }

    #[test]
    fn circle_integral_of_inverse() {
        let v = integrate(|z| Ok(z.inv()), &Contour::circle(Complex64::new(0.0, 0.0), 1.0), 16).unwrap();
        assert!((v - Complex64::new(0.0, TAU)).norm() < 1e-12);
    }

    #[test]
    fn polygon_winding() {
        let sq = Contour::closed_polygon(vec![Complex64::new(-1.0, -1.0), Complex64::new(1.0, -1.0), Complex64::new(1.0, 1.0), Complex64::new(-1.0, 1.0)]);
        assert!(sq.is_closed());
        assert_eq!(sq.winding_number(Complex64::new(0.2, 0.1)), 1);
        assert_eq!(sq.winding_number(Complex64::new(3.0, 0.0)), 0);
        let v = integrate(|z| Ok(z.inv()), &sq, 16).unwrap();
        assert!((v - Complex64::new(0.0, TAU)).norm() < 1e-11);
        assert!((sq.distance_to(Complex64::new(0.0, 0.0)) - 1.0).abs() < 1e-15);
    }
}
