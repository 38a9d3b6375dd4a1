//! Polynomial roots.
//!
//! Multiplicities come from Yun's square-free decomposition over a numeric
//! gcd, so they are integers by construction; each square-free factor is then
//! solved for simple roots with the Aberth–Ehrlich iteration.

use std::f64::consts::TAU;

use num_complex::Complex64;

use super::poly::{gcd, Polynomial};
use crate::error::{Error, Result};

/// Default backward-error tolerance for [`roots_with_multiplicity`].
pub const ROOT_TOL: f64 = 1e-10;

/// Relative truncation used by the gcd steps of the decomposition.
pub const GCD_TOL: f64 = 1e-12;

const MAX_ITER: usize = 800;

fn cmp_complex(a: &Complex64, b: &Complex64) -> std::cmp::Ordering {
    a.re.total_cmp(&b.re).then_with(|| a.im.total_cmp(&b.im))
}

fn solve_quadratic(p: &Polynomial) -> [Complex64; 2] {
    let (c, b, a) = (p.coeff(0), p.coeff(1), p.coeff(2));
    let disc = (b * b - 4.0 * a * c).sqrt();
    let s = if (b.conj() * disc).re >= 0.0 { disc } else { -disc };
    let q = -(b + s) / 2.0;
    if q == Complex64::new(0.0, 0.0) {
        return [q, q];
    }
    [q / a, c / q]
}

fn newton_polish(p: &Polynomial, mut z: Complex64, steps: usize) -> Complex64 {
    let mut best = p.eval(z).norm();
    for _ in 0..steps {
        let (v, d) = p.eval_with_derivative(z);
        if v.norm() == 0.0 || d.norm() == 0.0 {
            break;
        }
        let cand = z - v / d;
        let cv = p.eval(cand).norm();
        if !(cv < best) {
            break;
        }
        best = cv;
        z = cand;
    }
    z
}

/// Simultaneous Aberth–Ehrlich iteration for all roots of `p` (degree ≥ 1,
/// nonzero constant term not required).
fn aberth(p: &Polynomial) -> Result<Vec<Complex64>> {
    let n = p.deg();
    let lead = p.leading().norm();
    let c0 = p.coeff(0).norm();
    let mut r0 = if c0 > 0.0 { (c0 / lead).powf(1.0 / n as f64) } else { 1.0 };
    // Keep the starting circle inside the Cauchy bound.
    let cauchy = 1.0 + p.coeffs().iter().take(n).map(|c| c.norm() / lead).fold(0.0, f64::max);
    if !(r0.is_finite() && r0 > 0.0) {
        r0 = 1.0;
    }
    r0 = r0.min(cauchy);
    let mut z: Vec<Complex64> = (0..n).map(|k| Complex64::from_polar(r0, TAU * k as f64 / n as f64 + 0.4)).collect();
    let mut done = vec![false; n];
    let eps = f64::EPSILON;
    for _ in 0..MAX_ITER {
        let mut all = true;
        for k in 0..n {
            if done[k] {
                continue;
            }
            let (v, d) = p.eval_with_derivative(z[k]);
            let scale = p.abs_eval(z[k].norm());
            if v.norm() <= 4.0 * eps * scale {
                done[k] = true;
                continue;
            }
            let ratio = v / d;
            let s: Complex64 = (0..n).filter(|&j| j != k).map(|j| (z[k] - z[j]).inv()).sum();
            let w = ratio / (1.0 - ratio * s);
            if !(w.re.is_finite() && w.im.is_finite()) {
                let bump = Complex64::new(1e-3 * (1.0 + z[k].norm()), 1e-3);
                z[k] += bump;
                all = false;
                continue;
            }
            z[k] -= w;
            if w.norm() <= 2.0 * eps * z[k].norm() {
                done[k] = true;
            } else {
                all = false;
            }
        }
        if all {
            return Ok(z);
        }
    }
    let tol = 1e-9;
    if z.iter().all(|&r| p.eval(r).norm() <= tol * p.abs_eval(r.norm())) {
        Ok(z)
    } else {
        Err(Error::NoConvergence(MAX_ITER))
    }
}

fn simple_roots(p: &Polynomial) -> Result<Vec<Complex64>> {
    match p.degree() {
        None | Some(0) => Ok(Vec::new()),
        Some(1) => Ok(vec![-p.coeff(0) / p.coeff(1)]),
        Some(2) => Ok(solve_quadratic(p).to_vec()),
        Some(_) => Ok(aberth(p)?.into_iter().map(|z| newton_polish(p, z, 3)).collect()),
    }
}

/// All roots of `p` repeated by multiplicity, with no attempt to detect
/// multiplicities. Exact zero roots are split off first.
pub fn all_roots(p: &Polynomial) -> Result<Vec<Complex64>> {
    let deg = p.degree().ok_or(Error::ConstantPolynomial(-1))?;
    let k0 = p.low_order();
    let q = p.shift_down(k0);
    let mut out = vec![Complex64::new(0.0, 0.0); k0];
    out.extend(simple_roots(&q)?);
    debug_assert_eq!(out.len(), deg);
    out.sort_by(cmp_complex);
    Ok(out)
}

/// Yun's square-free decomposition: returns `(a_i, i)` with
/// `p = lc · Π a_i^i` and each `a_i` square-free, monic and pairwise coprime.
pub fn square_free_decomposition(p: &Polynomial) -> Result<Vec<(Polynomial, usize)>> {
    if p.deg() == 0 {
        return Ok(Vec::new());
    }
    let dp = p.derivative();
    let a0 = gcd(p, &dp, GCD_TOL);
    let mut b = p.divrem(&a0)?.0.monic();
    let c = dp.divrem(&a0)?.0.scale(p.leading().inv());
    let mut d = &c - &b.derivative();
    let mut out = Vec::new();
    let mut i = 1;
    while b.deg() > 0 {
        let a = gcd(&b, &d, GCD_TOL);
        let nb = b.divrem(&a)?.0;
        let nc = d.divrem(&a)?.0;
        if a.deg() > 0 {
            out.push((a, i));
        }
        b = nb;
        d = &nc - &b.derivative();
        i += 1;
        if i > p.deg() + 1 {
            return Err(Error::MultiplicityMismatch("decomposition did not terminate".into()));
        }
    }
    Ok(out)
}

/// Roots closer than this (relative to `1 + |r|`) form one cluster in the
/// fallback of [`roots_with_multiplicity`].
pub const CLUSTER_TOL: f64 = 1e-5;

/// Distinct roots with exact integer multiplicities.
///
/// The square-free decomposition is tried first; each root it returns
/// satisfies `|p(r)| ≤ tol · Σ|c_k||r|^k`. When rounding noise in the
/// coefficients defeats the decomposition, all roots are computed and
/// clusters within [`CLUSTER_TOL`] are merged into their centroid, with
/// multiplicity equal to the cluster size.
pub fn roots_with_multiplicity(p: &Polynomial, tol: f64) -> Result<Vec<(Complex64, usize)>> {
    let deg = match p.degree() {
        None => return Err(Error::ConstantPolynomial(-1)),
        Some(0) => return Err(Error::ConstantPolynomial(0)),
        Some(d) => d,
    };
    match by_decomposition(p, deg, tol) {
        Ok(r) => Ok(r),
        Err(e) => by_clustering(p).ok_or(e),
    }
}

fn by_clustering(p: &Polynomial) -> Option<Vec<(Complex64, usize)>> {
    let roots = all_roots(p).ok()?;
    let n = roots.len();
    let mut label: Vec<usize> = (0..n).collect();
    fn find(l: &mut [usize], i: usize) -> usize {
        let mut i = i;
        while l[i] != i {
            l[i] = l[l[i]];
            i = l[i];
        }
        i
    }
    for i in 0..n {
        for j in i + 1..n {
            if (roots[i] - roots[j]).norm() <= CLUSTER_TOL * (1.0 + roots[i].norm()) {
                let (a, b) = (find(&mut label, i), find(&mut label, j));
                label[a.max(b)] = a.min(b);
            }
        }
    }
    let mut out: Vec<(Complex64, usize)> = Vec::new();
    for i in 0..n {
        if find(&mut label, i) != i {
            continue;
        }
        let members: Vec<Complex64> = (0..n).filter(|&j| find(&mut label, j) == i).map(|j| roots[j]).collect();
        let k = members.len();
        let c = members.iter().sum::<Complex64>() / k as f64;
        out.push((c, k));
    }
    out.sort_by(|a, b| cmp_complex(&a.0, &b.0));
    Some(out)
}

fn by_decomposition(p: &Polynomial, deg: usize, tol: f64) -> Result<Vec<(Complex64, usize)>> {
    let k0 = p.low_order();
    let q = p.shift_down(k0);
    let mut out: Vec<(Complex64, usize)> = Vec::new();
    if k0 > 0 {
        out.push((Complex64::new(0.0, 0.0), k0));
    }
    if q.deg() > 0 {
        for (factor, mult) in square_free_decomposition(&q)? {
            for r in simple_roots(&factor)? {
                out.push((newton_polish(&factor, r, 2), mult));
            }
        }
    }
    let total: usize = out.iter().map(|(_, m)| m).sum();
    if total != deg {
        return Err(Error::MultiplicityMismatch(format!("multiplicities sum to {total}, degree is {deg}")));
    }
    for &(r, _) in &out {
        let scale = p.abs_eval(r.norm());
        if p.eval(r).norm() > tol * scale {
            return Err(Error::NoConvergence(MAX_ITER));
        }
    }
    out.sort_by(|a, b| cmp_complex(&a.0, &b.0));
    for (i, a) in out.iter().enumerate() {
        for b in &out[i + 1..] {
            if (a.0 - b.0).norm() <= 1e-7 * (1.0 + a.0.norm()) {
                return Err(Error::MultiplicityMismatch(format!("distinct factors share the root {}", a.0)));
            }
        }
    }
    Ok(out)
}
