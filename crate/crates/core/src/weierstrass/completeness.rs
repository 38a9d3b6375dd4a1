use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::data::WeierstrassData;
use super::phi::induced_metric;
use crate::error::{Error, Result};
use crate::ratfun::gauss_legendre;

/// Number of geometric stages along each ray.
pub const PROBE_STAGES: usize = 8;

const NODES: usize = 24;
const PANELS: usize = 4;

/// Label carried by every probe report.
pub const PROBE_LABEL: &str = "evidence, not proof";

/// A path leaving every compact subset of the domain.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum Ray {
    /// Straight segment from `start` to the boundary point `end`. Stage `k`
    /// covers the part whose distance to `end` lies in
    /// `[10^{-k-1}, 10^{-k}]·|start − end|`.
    ToPoint { start: Complex64, end: Complex64 },
    /// `start + s·direction/|direction|`; stage `0` covers `s ∈ [0, 1]` and
    /// stage `k ≥ 1` covers `s ∈ [10^{k-1}, 10^k]`.
    ToInfinity { start: Complex64, direction: Complex64 },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RayLength {
    pub ray: Ray,
    /// `∫ λ ds` over each stage, in order.
    pub stages: Vec<f64>,
    pub total: f64,
    pub exceeds_cutoff: bool,
    /// Evaluation failure that ended the ray early.
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CompletenessReport {
    pub label: &'static str,
    pub cutoff: f64,
    pub rays: Vec<RayLength>,
    /// Every ray exceeded the cutoff.
    pub all_exceed: bool,
}

impl Ray {
    /// Parametrization `z(t)`, `|z′(t)|`, and the `t`-interval of stage `k`.
    fn stage(&self, k: usize) -> (f64, f64) {
        match *self {
            Ray::ToPoint { .. } => (10f64.powi(-(k as i32) - 1), 10f64.powi(-(k as i32))),
            Ray::ToInfinity { .. } if k == 0 => (0.0, 1.0),
            Ray::ToInfinity { .. } => (10f64.powi(k as i32 - 1), 10f64.powi(k as i32)),
        }
    }

    fn point(&self, t: f64) -> (Complex64, f64) {
        match *self {
            Ray::ToPoint { start, end } => (end + (start - end) * t, (start - end).norm()),
            Ray::ToInfinity { start, direction } => (start + direction / direction.norm() * t, 1.0),
        }
    }

    fn validate(&self) -> Result<()> {
        let ok = match *self {
            Ray::ToPoint { start, end } => start != end && start.is_finite() && end.is_finite(),
            Ray::ToInfinity { start, direction } => direction.norm() > 0.0 && start.is_finite() && direction.is_finite(),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidInput(format!("degenerate ray {self:?}")))
        }
    }
}

fn stage_length(data: &WeierstrassData, ray: &Ray, k: usize, rule: &(Vec<f64>, Vec<f64>)) -> Result<f64> {
    let (a, b) = ray.stage(k);
    let h = (b - a) / PANELS as f64;
    let mut sum = 0.0;
    for p in 0..PANELS {
        let mid = a + h * (p as f64 + 0.5);
        for (x, w) in rule.0.iter().zip(&rule.1) {
            let (z, speed) = ray.point(mid + 0.5 * h * x);
            sum += w * 0.5 * h * speed * induced_metric(data, z)?.sqrt();
        }
    }
    Ok(sum)
}

/// Lengths `∫ λ ds` of the truncated rays in the induced metric. A ray
/// stops once its running total exceeds `cutoff`. Large totals are evidence
/// of completeness in that direction and bounded totals evidence against
/// it; neither is a proof.
pub fn completeness_probe(data: &WeierstrassData, rays: &[Ray], cutoff: f64) -> Result<CompletenessReport> {
    if !(cutoff > 0.0) {
        return Err(Error::InvalidInput(format!("cutoff must be positive, got {cutoff}")));
    }
    let rule = gauss_legendre(NODES);
    let mut out = Vec::with_capacity(rays.len());
    for ray in rays {
        ray.validate()?;
        let mut stages = Vec::new();
        let mut total = 0.0;
        let mut error = None;
        for k in 0..PROBE_STAGES {
            match stage_length(data, ray, k, &rule) {
                Ok(l) => {
                    stages.push(l);
                    total += l;
                }
                Err(e) => {
                    error = Some(e.to_string());
                    break;
                }
            }
            if total > cutoff {
                break;
            }
        }
        out.push(RayLength { ray: *ray, stages, total, exceeds_cutoff: total > cutoff, error });
    }
    let all_exceed = out.iter().all(|r| r.exceeds_cutoff);
    Ok(CompletenessReport { label: PROBE_LABEL, cutoff, rays: out, all_exceed })
}
