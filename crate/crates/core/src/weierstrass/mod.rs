//! Weierstrass data `(ψ₁, ψ₂, dh)` of space-like stationary surfaces in
//! R^{3,1}: regularity and period checks, the immersion
//! `x = 2 Re ∫ φ`, the induced metric `2|ψ₁ − conj ψ₂|²|dh|²`, Gauss-map
//! recovery from `φ`, the Lorentz action, a completeness probe and mesh
//! sampling.

mod completeness;
mod config;
mod data;
mod domain;
mod immersion;
mod lorentz;
mod mesh;
mod periods;
mod phi;
mod regularity;

pub use completeness::{completeness_probe, CompletenessReport, Ray, RayLength, PROBE_LABEL, PROBE_STAGES};
pub use config::{Completeness, SurfaceSpec};
pub use data::{Psi2, RationalData, WeierstrassData};
pub use domain::{Domain, PUNCTURE_SEPARATION};
pub use immersion::{displacement, fd_diagnostics, immerse, integrate_phi, minkowski, FdDiagnostics, ImmersionSample, FD_STEP};
pub use lorentz::lorentz_action;
pub use mesh::{sample_mesh, GridSpec, Mesh, MeshSample, SkippedNode};
pub use periods::{check_periods, LoopPeriods, PeriodMethod, PeriodReport, PERIOD_TOL};
pub use phi::{gauss_from_phi, induced_metric, phi_forms, to_minimal_r4, PhiForms, NULL_TOL};
pub use regularity::{check_regularity, Condition1, Condition2, DivisorMatch, RegularityReport, REGULARITY_TOL};
