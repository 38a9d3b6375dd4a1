//! Independent oracles and random generators shared by the integration tests
//! and the acceptance harness.

#![allow(dead_code)]

use num_complex::Complex64;
use rand::Rng;
use stasurf::cplane::{chordal, ExtendedComplex};
use stasurf::ratfun::{Polynomial, RationalFunction};

pub fn rand_complex<R: Rng>(rng: &mut R, scale: f64) -> Complex64 {
    Complex64::new(rng.gen_range(-scale..scale), rng.gen_range(-scale..scale))
}

pub fn rand_poly<R: Rng>(rng: &mut R, deg: usize) -> Polynomial {
    loop {
        let p = Polynomial::new((0..=deg).map(|_| rand_complex(rng, 1.0)).collect());
        if p.degree() == Some(deg) && p.leading().norm() > 0.1 {
            return p;
        }
    }
}

/// Random rational function with `1 ≤ degree ≤ max_deg`.
pub fn rand_rational<R: Rng>(rng: &mut R, max_deg: usize) -> RationalFunction {
    loop {
        let dp = rng.gen_range(0..=max_deg);
        let dq = rng.gen_range(0..=max_deg);
        if dp.max(dq) == 0 {
            continue;
        }
        let f = RationalFunction::new(rand_poly(rng, dp), rand_poly(rng, dq)).unwrap();
        if f.degree() == dp.max(dq) {
            return f;
        }
    }
}

/// Random rational function of exact degree `deg` with real scale control.
pub fn rand_rational_deg<R: Rng>(rng: &mut R, deg: usize) -> RationalFunction {
    loop {
        let dq = rng.gen_range(0..=deg);
        let (dp, dq) = if rng.gen_bool(0.5) { (deg, dq) } else { (dq, deg) };
        let f = RationalFunction::new(rand_poly(rng, dp), rand_poly(rng, dq)).unwrap();
        if f.degree() == deg {
            return f;
        }
    }
}

/// Brute-force solver for `f(z) = z̄`: subdivision search over two square
/// charts, `z ∈ [−1.2, 1.2]²` and `w = 1/z` on the same square. A cell is discarded when its
/// centre residual exceeds a Lipschitz-type lower bound estimated from its
/// corners and edge midpoints; survivors are refined down to `min_cell`, finished with a
/// Wirtinger–Newton solve of the chart equation, and clustered at chordal distance `1e-5`.
/// Both residuals are polynomial in the chart coordinate and its conjugate
/// (`P − z̄Q` and `w̄P̃ − Q̃` with `P̃(w) = w^m P(1/w)`), so they have no poles.
pub fn ef_bruteforce(f: &RationalFunction, min_cell: f64) -> Vec<ExtendedComplex> {
    let horner = |c: &[Complex64], z: Complex64| c.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &k| acc * z + k);
    let p = f.num().coeffs().to_vec();
    let q = f.den().coeffs().to_vec();
    let m = p.len().max(q.len()) - 1;
    let rev = |c: &[Complex64]| {
        let mut r = vec![Complex64::new(0.0, 0.0); m + 1];
        for (k, &x) in c.iter().enumerate() {
            r[m - k] = x;
        }
        r
    };
    let (pr, qr) = (rev(&p), rev(&q));
    let res_z = |z: Complex64| (horner(&p, z) - z.conj() * horner(&q, z)).norm();
    let res_w = |w: Complex64| (w.conj() * horner(&pr, w) - horner(&qr, w)).norm();
    let deriv = |c: &[Complex64]| c.iter().enumerate().skip(1).map(|(k, &x)| x * k as f64).collect::<Vec<_>>();
    let (dp, dq, dpr, dqr) = (deriv(&p), deriv(&q), deriv(&pr), deriv(&qr));
    let abs_eval = |c: &[Complex64], r: f64| c.iter().rev().fold(0.0, |acc, k| acc * r + k.norm());
    // Value of the chart equation F, its Wirtinger derivatives, and a scale
    // for the backward error.
    let system = |chart: usize, z: Complex64| {
        let r = z.norm();
        if chart == 0 {
            let (pv, qv) = (horner(&p, z), horner(&q, z));
            let f = pv - z.conj() * qv;
            let a = horner(&dp, z) - z.conj() * horner(&dq, z);
            (f, a, -qv, abs_eval(&p, r) + r * abs_eval(&q, r))
        } else {
            let (pv, qv) = (horner(&pr, z), horner(&qr, z));
            let f = z.conj() * pv - qv;
            let a = z.conj() * horner(&dpr, z) - horner(&dqr, z);
            (f, a, pv, r * abs_eval(&pr, r) + abs_eval(&qr, r))
        }
    };
    let newton = |chart: usize, mut z: Complex64| -> Option<Complex64> {
        for _ in 0..100 {
            let (f, a, b, scale) = system(chart, z);
            if f.norm() <= 1e-13 * scale.max(1e-300) {
                return Some(z);
            }
            let det = a.norm_sqr() - b.norm_sqr();
            if det == 0.0 {
                return None;
            }
            let step = (-f * a.conj() + b * f.conj()) / det;
            z += step;
            if !(z.re.is_finite() && z.im.is_finite()) || z.norm() > 10.0 {
                return None;
            }
        }
        let (f, _, _, scale) = system(chart, z);
        (f.norm() <= 1e-11 * scale).then_some(z)
    };
    let mut found: Vec<(ExtendedComplex, f64)> = Vec::new();
    for chart in 0..2 {
        let res = |p: Complex64| if chart == 0 { res_z(p) } else { res_w(p) };
        let n0 = 64;
        let h0 = 2.4 / n0 as f64;
        let mut cells: Vec<(Complex64, f64)> = Vec::new();
        for i in 0..n0 {
            for j in 0..n0 {
                let c = Complex64::new(-1.2 + (i as f64 + 0.5) * h0, -1.2 + (j as f64 + 0.5) * h0);
                cells.push((c, h0));
            }
        }
        loop {
            let mut keep = Vec::new();
            for &(c, h) in &cells {
                let v = res(c);
                if !v.is_finite() {
                    continue;
                }
                let half = 0.5 * h;
                let mut slope: f64 = 0.0;
                for (dx, dy) in [(1.0, 1.0), (1.0, -1.0), (-1.0, 1.0), (-1.0, -1.0), (1.0, 0.0), (0.0, 1.0), (-1.0, 0.0), (0.0, -1.0)] {
                    let p = c + Complex64::new(dx * half, dy * half);
                    slope = slope.max((res(p) - v).abs());
                }
                if v <= 4.0 * slope + 1e-13 {
                    keep.push((c, h));
                }
            }
            let h = keep.first().map(|k| k.1).unwrap_or(0.0);
            if keep.is_empty() || h <= min_cell {
                for (c, _) in keep {
                    if let Some(z) = newton(chart, c) {
                        let pt = if chart == 0 { ExtendedComplex::Finite(z) } else { ExtendedComplex::Finite(z).recip() };
                        found.push((pt, res(c)));
                    }
                }
                break;
            }
            assert!(keep.len() < 400_000, "subdivision did not localize");
            cells = keep
                .into_iter()
                .flat_map(|(c, h)| {
                    let q = 0.25 * h;
                    [(q, q), (q, -q), (-q, q), (-q, -q)].map(|(dx, dy)| (c + Complex64::new(dx, dy), 0.5 * h))
                })
                .collect();
        }
    }
    found.sort_by(|a, b| a.1.total_cmp(&b.1));
    let mut out: Vec<ExtendedComplex> = Vec::new();
    for (p, _) in found {
        if out.iter().all(|q| chordal(*q, p) > 1e-5) {
            out.push(p);
        }
    }
    out
}

/// Every point of `a` has a partner in `b` within `tol` and vice versa, and
/// the sizes agree.
pub fn same_point_sets(a: &[ExtendedComplex], b: &[ExtendedComplex], tol: f64) -> bool {
    a.len() == b.len() && a.iter().all(|p| b.iter().any(|q| chordal(*p, *q) <= tol)) && b.iter().all(|p| a.iter().any(|q| chordal(*p, *q) <= tol))
}

/// Order of `p` as a root of `f − a`, by repeated synthetic division of the
/// level polynomial (`P − aQ`, or `Q` for `a = ∞`) by `z − p`. The `k`-th
/// remainder is the `k`-th Taylor coefficient at `p`; the order is the first
/// one that is not negligible against the same coefficient built from
/// absolute values. `p = ∞` uses the reversed polynomial at `0`.
pub fn deflation_multiplicity(f: &RationalFunction, p: ExtendedComplex, a: ExtendedComplex) -> usize {
    let (num, den) = (f.num().coeffs(), f.den().coeffs());
    let m = num.len().max(den.len()) - 1;
    let mut level: Vec<Complex64> = (0..=m)
        .map(|k| {
            let pk = num.get(k).copied().unwrap_or_default();
            let qk = den.get(k).copied().unwrap_or_default();
            match a {
                ExtendedComplex::Finite(a) => pk - a * qk,
                ExtendedComplex::Infinity => qk,
            }
        })
        .collect();
    let at = match p {
        ExtendedComplex::Finite(z) => z,
        ExtendedComplex::Infinity => {
            level.reverse();
            Complex64::new(0.0, 0.0)
        }
    };
    let mut abs: Vec<f64> = level.iter().map(|c| c.norm()).collect();
    let r = at.norm();
    for k in 0..level.len() {
        // One synthetic division step on both coefficient lists.
        let n = level.len();
        let mut rem = level[n - 1];
        let mut rem_abs = abs[n - 1];
        let mut q = vec![Complex64::new(0.0, 0.0); n - 1];
        let mut q_abs = vec![0.0; n - 1];
        for i in (0..n - 1).rev() {
            q[i] = rem;
            q_abs[i] = rem_abs;
            rem = level[i] + rem * at;
            rem_abs = abs[i] + rem_abs * r;
        }
        if rem.norm() > 1e-6 * rem_abs.max(f64::MIN_POSITIVE) {
            return k;
        }
        if q.is_empty() {
            return k + 1;
        }
        level = q;
        abs = q_abs;
    }
    level.len()
}

/// Random finite Blaschke product of degree `1..=max_deg` with zeros in
/// `|a| < 0.9`.
pub fn rand_blaschke<R: Rng>(rng: &mut R, max_deg: usize) -> RationalFunction {
    let deg = rng.gen_range(1..=max_deg);
    let mut f = RationalFunction::constant(Complex64::from_polar(1.0, rng.gen_range(0.0..std::f64::consts::TAU)));
    for _ in 0..deg {
        let a = Complex64::from_polar(rng.gen_range(0.0..0.9), rng.gen_range(0.0..std::f64::consts::TAU));
        let factor = RationalFunction::new(Polynomial::new(vec![-a, Complex64::new(1.0, 0.0)]), Polynomial::new(vec![Complex64::new(1.0, 0.0), -a.conj()]))
            .expect("nonzero denominator");
        f = f.mul(&factor);
    }
    f
}
