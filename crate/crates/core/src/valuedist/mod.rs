//! Value-distribution audits for Gauss maps: ramification profiles and
//! γ sums, the degenerate-surface bounds, shared values and unicity, the
//! Schwarz–Pick check on disks, the auxiliary-metric inequality and the
//! `dτ²` negative-curvature probe.

mod auxmetric;
mod curvature;
mod ramification;
mod schwarz;
mod sharing;

pub use auxmetric::{aux_metric_bound, AuxMetricReport, Pole, AUX_RESIDUAL_TOL};
pub use curvature::{
    neg_curvature_probe, shipped_probe_configs, CurvatureSample, NegCurvatureProbeConfig, NegCurvatureReport, ShrinkSeries, MU2_FLOOR, SHRINK_FACTOR,
    SHRINK_LEVELS,
};
pub use ramification::*;
pub use schwarz::{disk_density, schwarz_check, SchwarzCheckConfig, SchwarzReport, SCHWARZ_TOL};
pub use sharing::{audit_theorem_b, shared_values, SharedValue, SharedValueReport, TheoremBAudit, SHARE_TOL};
