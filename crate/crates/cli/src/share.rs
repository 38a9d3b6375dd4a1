//! `share`: shared values of two surfaces on a common parameter domain.

use serde::Serialize;
use stasurf::efset::ef_solve;
use stasurf::valuedist::{audit_theorem_b, shared_values, SharedValueReport, TheoremBAudit};
use stasurf::verdict::Verdict;
use stasurf::weierstrass::SurfaceSpec;

use crate::{exit_code_for, CliError, CliResult};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ShareReport {
    pub first: String,
    pub second: String,
    /// The parameters of both surfaces are identified directly.
    pub identification: &'static str,
    pub shared: SharedValueReport,
    pub theorem_b: Option<TheoremBAudit>,
    /// Why the unicity audit was skipped.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    pub exit_code: i32,
}

/// Compares the `ψ₁` of both surfaces. The unicity audit uses the relation
/// `ψ₂ = f ∘ ψ₁` of the first surface, and both surfaces must carry the same
/// relation.
pub fn share(a: &SurfaceSpec, b: &SurfaceSpec, count_both_omitted: bool, ef_tol: f64) -> CliResult<ShareReport> {
    a.validate()?;
    b.validate()?;
    if a.domain != b.domain {
        return Err(CliError::parse(format!("`{}` and `{}` have different parameter domains", a.name, b.name)));
    }
    let shared = shared_values(&a.psi1, &b.psi1, &a.domain, count_both_omitted)?;
    let (theorem_b, note) = match (&a.f, &b.f) {
        (Some(f), Some(g)) if f.sub(g).num().is_zero() => {
            let ef = ef_solve(f, ef_tol)?;
            (Some(audit_theorem_b(f, &ef, &shared, a.completeness_asserted() && b.completeness_asserted())), None)
        }
        (Some(_), Some(_)) => (None, Some("the surfaces use different relations psi2 = f(psi1)".to_string())),
        _ => (None, Some("both surfaces must be given as psi2 = f(psi1)".to_string())),
    };
    let verdict = theorem_b.as_ref().map_or(Verdict::Inapplicable, |t| t.verdict);
    Ok(ShareReport {
        first: a.name.clone(),
        second: b.name.clone(),
        identification: "identity on parameters",
        shared,
        theorem_b,
        note,
        exit_code: exit_code_for([&verdict]),
    })
}
