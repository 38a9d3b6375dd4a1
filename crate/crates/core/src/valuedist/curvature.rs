use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::Serialize;

use crate::cplane::{chordal, ExtendedComplex};
use crate::error::{Error, Result};
use crate::ratfun::{roots_with_multiplicity, RationalFunction, ROOT_TOL};
use crate::weierstrass::GridSpec;

use super::ramification::TARGET_SEPARATION;

/// Points with `μ²` below this fraction of the grid maximum are excluded
/// from the curvature sign check.
pub const MU2_FLOOR: f64 = 1e-6;

/// Number of radii in each shrinking sequence (`r₀·10^{-k}`, `k = 0..8`).
pub const SHRINK_LEVELS: usize = 9;

/// A shrinking sequence passes when its last maximum is below this fraction
/// of the first.
pub const SHRINK_FACTOR: f64 = 0.1;

const CIRCLE_POINTS: usize = 32;
/// Grid points closer than this to a singular point are not checked; the
/// stencil step there would be too small for double precision.
const SINGULAR_CLEARANCE: f64 = 1e-2;

/// Inputs of the `dτ²` probe for two functions sharing target values.
#[derive(Debug, Clone, PartialEq)]
pub struct NegCurvatureProbeConfig {
    pub name: String,
    pub f: RationalFunction,
    pub f_hat: RationalFunction,
    pub targets: Vec<ExtendedComplex>,
    pub epsilon: f64,
    pub grid: GridSpec,
    /// Fixed `a₀`; chosen from the grid when absent.
    pub a0: Option<f64>,
}

impl NegCurvatureProbeConfig {
    /// Requires `q > 4`, `q − 4 > qε > 0`, distinct targets and distinct
    /// nonconstant functions.
    pub fn new(name: &str, f: RationalFunction, f_hat: RationalFunction, targets: Vec<ExtendedComplex>, epsilon: f64, grid: GridSpec) -> Result<Self> {
        let q = targets.len() as f64;
        if targets.len() <= 4 {
            return Err(Error::InvalidInput(format!("need more than 4 targets, got {}", targets.len())));
        }
        if !(q * epsilon > 0.0 && q - 4.0 > q * epsilon) {
            return Err(Error::InvalidInput(format!("epsilon {epsilon} outside (0, (q - 4)/q) for q = {q}")));
        }
        for (i, a) in targets.iter().enumerate() {
            if targets[i + 1..].iter().any(|b| chordal(*a, *b) <= TARGET_SEPARATION) {
                return Err(Error::InvalidInput(format!("duplicate target {a}")));
            }
        }
        if f.is_constant() || f_hat.is_constant() {
            return Err(Error::InvalidInput("f and f_hat must be nonconstant".into()));
        }
        if f.sub(&f_hat).num().is_zero() {
            return Err(Error::InvalidInput("f and f_hat coincide".into()));
        }
        Ok(Self { name: name.into(), f, f_hat, targets, epsilon, grid, a0: None })
    }

    /// Lower bound `L*` on `log(a₀/|f, a|²)` that keeps the curvature
    /// negative: `max(1, 4(1−ε)q / ((1−ε)q − 4))`.
    pub fn log_floor(&self) -> f64 {
        let s = (1.0 - self.epsilon) * self.targets.len() as f64;
        (4.0 * s / (s - 4.0)).max(1.0)
    }
}

/// The three configurations shipped with the crate: each pair shares the
/// values `0` and `∞`, and the only target preimage in the window is `0`.
pub fn shipped_probe_configs() -> Vec<NegCurvatureProbeConfig> {
    let c = |re, im| ExtendedComplex::new(re, im);
    let rf = |num: &[f64]| RationalFunction::from_real(num, &[1.0]).expect("polynomial");
    let grid = GridSpec::Rect { u: [-0.5, 0.5], v: [-0.5, 0.5], nu: 41, nv: 41 };
    let targets = |s: f64| vec![c(0.0, 0.0), ExtendedComplex::Infinity, c(s, 0.0), c(-s, 0.0), c(0.0, s)];
    vec![
        NegCurvatureProbeConfig::new("z-vs-minus-z", rf(&[0.0, 1.0]), rf(&[0.0, -1.0]), targets(1.0), 0.05, grid.clone()),
        NegCurvatureProbeConfig::new("z2-vs-minus-z2", rf(&[0.0, 0.0, 1.0]), rf(&[0.0, 0.0, -1.0]), targets(2.0), 0.05, grid.clone()),
        NegCurvatureProbeConfig::new("z-vs-z-plus-z2", rf(&[0.0, 1.0]), rf(&[0.0, 1.0, 1.0]), targets(3.0), 0.05, grid),
    ]
    .into_iter()
    .map(|r| r.expect("shipped configuration is valid"))
    .collect()
}

/// `|f, a|²`.
fn chordal2(w: ExtendedComplex, a: ExtendedComplex) -> f64 {
    chordal(w, a).powi(2)
}

struct Side<'a> {
    f: &'a RationalFunction,
}

struct Local {
    /// `log` of the factors of `μ²` contributed by one function, without
    /// the cross term `|f, f̂|²`.
    log_part: f64,
    value: ExtendedComplex,
    /// Exact Laplacian of `log_part`.
    laplacian: f64,
}

impl Side<'_> {
    fn local(&self, z: Complex64, targets: &[ExtendedComplex], eps: f64, a0: f64) -> Result<Local> {
        let (w, dw) = self.f.eval_with_derivative(z)?;
        let one = 1.0 + w.norm_sqr();
        let a = dw.norm_sqr() / (one * one);
        let mut log_lambda = 0.0;
        let mut lap_lambda = 0.0;
        let value = ExtendedComplex::Finite(w);
        for &t in targets {
            let d2 = chordal2(value, t);
            let u = (a0 / d2).ln();
            log_lambda += 0.5 * d2.ln() + u.ln();
            // ∂_z log |f, t|².
            let grad = match t {
                ExtendedComplex::Finite(tf) => dw / (w - tf) - w.conj() * dw / one,
                ExtendedComplex::Infinity => -w.conj() * dw / one,
            };
            lap_lambda += 2.0 * a - 4.0 * a / u + 4.0 * grad.norm_sqr() / (u * u);
        }
        let log_part = (-1.0 + eps) * log_lambda + dw.norm().ln() - one.ln();
        // Δ log(|f′|/(1 + |f|²)) = −4A; the chordal cross term adds −4A more.
        let laplacian = (1.0 - eps) * lap_lambda - 8.0 * a;
        Ok(Local { log_part, value, laplacian })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CurvatureSample {
    pub z: Complex64,
    /// `μ²` divided by its grid maximum.
    pub mu2_rel: f64,
    pub h: f64,
    /// Five-point Laplacian of `log μ`.
    pub laplacian_fd: f64,
    /// Closed-form Laplacian of `log μ`.
    pub laplacian_exact: f64,
    /// `−Δ log μ / μ²` from the finite-difference Laplacian.
    pub curvature: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ShrinkSeries {
    pub point: Complex64,
    /// Whether `f` and `f̂` agree at the point.
    pub shared: bool,
    pub radii: Vec<f64>,
    /// Largest `μ²/max_grid μ²` on each circle.
    pub max_mu2_rel: Vec<f64>,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NegCurvatureReport {
    pub name: String,
    pub a0: f64,
    pub log_floor: f64,
    pub mu2_grid_max: f64,
    /// Grid points where the sign was checked.
    pub samples: Vec<CurvatureSample>,
    /// Grid points skipped: `μ²` below the floor or too close to a
    /// singular point.
    pub excluded: usize,
    pub max_curvature: Option<f64>,
    /// Largest relative gap between the stencil and closed-form Laplacians.
    pub max_laplacian_gap: f64,
    pub curvature_negative: bool,
    pub shrink: Vec<ShrinkSeries>,
    pub pass: bool,
}

struct Probe<'a> {
    cfg: &'a NegCurvatureProbeConfig,
    a0: f64,
}

impl Probe<'_> {
    /// `(log μ², closed-form Δ log μ²)`; `log μ² = −∞` where `μ = 0`.
    fn eval(&self, z: Complex64) -> Result<(f64, f64)> {
        let e = self.cfg.epsilon;
        let s = Side { f: &self.cfg.f }.local(z, &self.cfg.targets, e, self.a0)?;
        let t = Side { f: &self.cfg.f_hat }.local(z, &self.cfg.targets, e, self.a0)?;
        let cross = chordal2(s.value, t.value).ln();
        Ok((cross + s.log_part + t.log_part, s.laplacian + t.laplacian))
    }
}

fn in_window(grid: &GridSpec, z: Complex64) -> bool {
    match *grid {
        GridSpec::Rect { u, v, .. } => {
            let within = |x: f64, r: [f64; 2]| x >= r[0].min(r[1]) && x <= r[0].max(r[1]);
            within(z.re, u) && within(z.im, v)
        }
        GridSpec::Polar { center, r, .. } => (z - center).norm() <= r[0].max(r[1]),
    }
}

fn finite_preimages(f: &RationalFunction, a: ExtendedComplex) -> Result<Vec<Complex64>> {
    Ok(f.preimages(a)?.into_iter().filter_map(|(p, _)| p.as_finite()).collect())
}

/// Curvature sign and continuity evidence for `dτ²`.
///
/// `a₀` starts at twice the largest `|f, aᵢ|²` or `|f̂, aᵢ|²` on the grid
/// and doubles until every `log(a₀/|·, aᵢ|²)` on the grid reaches
/// [`NegCurvatureProbeConfig::log_floor`]. The curvature `−Δ log μ / μ²`
/// is checked at grid points with `μ²` above [`MU2_FLOOR`] times its grid
/// maximum, using a five-point stencil with step `min(10⁻³(1+|z|), d²/100)`,
/// `d` being the distance to the nearest target preimage, coincidence point,
/// critical point or pole. Around each target preimage inside the window
/// the maximum of `μ²` on circles of radius `r₀·10^{-k}` must decrease
/// strictly and end below [`SHRINK_FACTOR`] of its first value.
pub fn neg_curvature_probe(cfg: &NegCurvatureProbeConfig) -> Result<NegCurvatureReport> {
    let pts = cfg.grid.points();
    let log_floor = cfg.log_floor();
    let a0 = match cfg.a0 {
        Some(a) => a,
        None => {
            let mut dmax: f64 = 0.0;
            for &z in &pts {
                for f in [&cfg.f, &cfg.f_hat] {
                    let w = f.eval(ExtendedComplex::Finite(z));
                    for &t in &cfg.targets {
                        dmax = dmax.max(chordal2(w, t));
                    }
                }
            }
            let mut a0 = 2.0 * dmax;
            while (a0 / dmax).ln() < log_floor {
                a0 *= 2.0;
            }
            a0
        }
    };
    let probe = Probe { cfg, a0 };

    let mut singular: Vec<Complex64> = Vec::new();
    let mut e_points: Vec<Complex64> = Vec::new();
    for f in [&cfg.f, &cfg.f_hat] {
        for &t in &cfg.targets {
            e_points.extend(finite_preimages(f, t)?);
        }
        singular.extend(f.critical_points()?.into_iter().filter_map(|(p, _)| p.as_finite()));
        singular.extend(finite_preimages(f, ExtendedComplex::Infinity)?);
    }
    let h = &(cfg.f.num() * cfg.f_hat.den()) - &(cfg.f_hat.num() * cfg.f.den());
    if h.deg() > 0 {
        singular.extend(roots_with_multiplicity(&h, ROOT_TOL)?.into_iter().map(|(z, _)| z));
    }
    singular.extend(e_points.iter().copied());
    let dist = |z: Complex64| singular.iter().map(|s| (z - s).norm()).fold(f64::INFINITY, f64::min);

    let mut values = Vec::with_capacity(pts.len());
    let mut log_max = f64::NEG_INFINITY;
    for &z in &pts {
        let v = probe.eval(z)?;
        if v.0.is_finite() {
            log_max = log_max.max(v.0);
        }
        values.push(v);
    }
    if !log_max.is_finite() {
        return Err(Error::InvalidInput("mu vanishes on the whole grid".into()));
    }

    let mut samples = Vec::new();
    let mut excluded = 0;
    let mut max_gap: f64 = 0.0;
    for (&z, &(lm, lap_exact)) in pts.iter().zip(&values) {
        let rel = (lm - log_max).exp();
        let d = dist(z);
        if !(lm.is_finite() && rel > MU2_FLOOR && d > SINGULAR_CLEARANCE) {
            excluded += 1;
            continue;
        }
        // Logarithmic singularities at distance d put a fourth derivative of
        // order d⁻⁴ into the stencil error, so the step scales with d².
        let step = (1e-3 * (1.0 + z.norm())).min(0.01 * d * d);
        let mut around = 0.0;
        for dz in [Complex64::new(step, 0.0), Complex64::new(-step, 0.0), Complex64::new(0.0, step), Complex64::new(0.0, -step)] {
            around += probe.eval(z + dz)?.0;
        }
        // Laplacians of log μ = ½ log μ².
        let laplacian_fd = 0.5 * (around - 4.0 * lm) / (step * step);
        let laplacian_exact = 0.5 * lap_exact;
        max_gap = max_gap.max((laplacian_fd - laplacian_exact).abs() / laplacian_exact.abs().max(1.0));
        let curvature = -laplacian_fd / lm.exp();
        samples.push(CurvatureSample { z, mu2_rel: rel, h: step, laplacian_fd, laplacian_exact, curvature });
    }
    let max_curvature = samples.iter().map(|s| s.curvature).fold(None, |m: Option<f64>, k| Some(m.map_or(k, |m| m.max(k))));
    let curvature_negative = samples.iter().all(|s| s.curvature < 0.0 && s.laplacian_fd > 0.0);

    let mut centers: Vec<Complex64> = Vec::new();
    for &p in &e_points {
        if in_window(&cfg.grid, p) && centers.iter().all(|c| (c - p).norm() > 1e-9) {
            centers.push(p);
        }
    }
    centers.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    let mut shrink = Vec::new();
    for p in centers {
        let others = singular.iter().filter(|s| (*s - p).norm() > 1e-9).map(|s| (s - p).norm()).fold(f64::INFINITY, f64::min);
        let r0 = (0.25 * others).min(0.1);
        let mut radii = Vec::with_capacity(SHRINK_LEVELS);
        let mut maxima = Vec::with_capacity(SHRINK_LEVELS);
        for k in 0..SHRINK_LEVELS {
            let r = r0 * 10f64.powi(-(k as i32));
            let mut m = f64::NEG_INFINITY;
            for j in 0..CIRCLE_POINTS {
                let z = p + Complex64::from_polar(r, TAU * (j as f64 + 0.5) / CIRCLE_POINTS as f64);
                m = m.max(probe.eval(z)?.0);
            }
            radii.push(r);
            maxima.push((m - log_max).exp());
        }
        let decreasing = maxima.windows(2).all(|w| w[1] < w[0]);
        let pass = decreasing && maxima[SHRINK_LEVELS - 1] < SHRINK_FACTOR * maxima[0];
        let shared = chordal(cfg.f.eval(ExtendedComplex::Finite(p)), cfg.f_hat.eval(ExtendedComplex::Finite(p))) <= 1e-9;
        shrink.push(ShrinkSeries { point: p, shared, radii, max_mu2_rel: maxima, pass });
    }
    let pass = curvature_negative && !samples.is_empty() && shrink.iter().all(|s| s.pass);
    Ok(NegCurvatureReport {
        name: cfg.name.clone(),
        a0,
        log_floor,
        mu2_grid_max: log_max.exp(),
        samples,
        excluded,
        max_curvature,
        max_laplacian_gap: max_gap,
        curvature_negative,
        shrink,
        pass,
    })
}
