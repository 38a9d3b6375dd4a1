use serde::{Deserialize, Serialize};

use super::completeness::Ray;
use super::data::WeierstrassData;
use super::domain::Domain;
use super::mesh::GridSpec;
use crate::cplane::ExtendedComplex;
use crate::error::{Error, Result};
use crate::ratfun::{Contour, RationalFunction};

/// Completeness of the surface is supplied by the user, never computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Completeness {
    Asserted,
}

/// Surface description file.
///
/// Rational functions are `{"num": [[re, im], ...], "den": [...]}` with
/// ascending coefficients; `den` defaults to `1`. Exactly one of `psi2` and
/// `f` (meaning `ψ₂ = f ∘ ψ₁`) must be present. `dh` gives `g` in
/// `dh = g dz`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SurfaceSpec {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
    pub psi1: RationalFunction,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub psi2: Option<RationalFunction>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f: Option<RationalFunction>,
    pub dh: RationalFunction,
    pub domain: Domain,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub complete: Option<Completeness>,
    /// Closed curves for the period check.
    #[serde(default)]
    pub loops: Vec<Contour>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid: Option<GridSpec>,
    /// Ramification targets for `ψ₁`.
    #[serde(default)]
    pub targets: Vec<ExtendedComplex>,
    /// Ramification targets for `ψ₂`.
    #[serde(default)]
    pub targets_psi2: Vec<ExtendedComplex>,
    /// Divergent paths for the completeness probe.
    #[serde(default)]
    pub rays: Vec<Ray>,
}

impl SurfaceSpec {
    /// Parses a description; syntax errors carry line and column.
    pub fn from_json(text: &str) -> Result<Self> {
        let spec: SurfaceSpec =
            serde_json::from_str(text).map_err(|e| Error::InvalidInput(format!("surface file, line {} column {}: {e}", e.line(), e.column())))?;
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        match (&self.psi2, &self.f) {
            (Some(_), None) | (None, Some(_)) => {}
            _ => return Err(Error::InvalidInput("exactly one of `psi2` and `f` must be given".into())),
        }
        self.domain.validate()?;
        if let Some(c) = self.loops.iter().find(|c| !c.is_closed()) {
            return Err(Error::InvalidInput(format!("loop {c:?} is not closed")));
        }
        Ok(())
    }

    pub fn completeness_asserted(&self) -> bool {
        self.complete == Some(Completeness::Asserted)
    }

    pub fn to_data(&self) -> Result<WeierstrassData> {
        self.validate()?;
        match (&self.psi2, &self.f) {
            (Some(p2), _) => WeierstrassData::rational(self.psi1.clone(), p2.clone(), self.dh.clone(), self.domain.clone()),
            (_, Some(f)) => WeierstrassData::composed(self.psi1.clone(), f.clone(), self.dh.clone(), self.domain.clone()),
            _ => unreachable!("validated"),
        }
    }
}
