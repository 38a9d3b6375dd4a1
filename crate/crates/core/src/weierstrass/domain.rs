use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::cplane::{chordal, ExtendedComplex};
use crate::error::{Error, Result};

/// Punctures closer than this (chordal) are rejected as duplicates.
pub const PUNCTURE_SEPARATION: f64 = 1e-9;

/// Parameter domain of the surface.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", deny_unknown_fields)]
pub enum Domain {
    /// The complex plane.
    Plane,
    /// The open disk `|z| < radius`.
    Disk { radius: f64 },
    /// The Riemann sphere minus finitely many points.
    SphereMinusPoints { punctures: Vec<ExtendedComplex> },
    /// The complex plane minus finitely many points.
    AnnulusLike { punctures: Vec<ExtendedComplex> },
}

impl Domain {
    pub fn validate(&self) -> Result<()> {
        match self {
            Domain::Plane => Ok(()),
            Domain::Disk { radius } => {
                if radius.is_finite() && *radius > 0.0 {
                    Ok(())
                } else {
                    Err(Error::InvalidInput(format!("disk radius {radius}")))
                }
            }
            Domain::SphereMinusPoints { punctures } | Domain::AnnulusLike { punctures } => {
                for (i, p) in punctures.iter().enumerate() {
                    for q in &punctures[i + 1..] {
                        if chordal(*p, *q) <= PUNCTURE_SEPARATION {
                            return Err(Error::InvalidInput(format!("duplicate puncture {p:?}")));
                        }
                    }
                }
                Ok(())
            }
        }
    }

    /// Points of the sphere that are not in the domain and are not interior
    /// to a removed region: the punctures, plus ∞ for plane-like domains.
    /// Empty for disks.
    pub fn removed_points(&self) -> Vec<ExtendedComplex> {
        let mut out = match self {
            Domain::Plane => vec![ExtendedComplex::Infinity],
            Domain::Disk { .. } => Vec::new(),
            Domain::SphereMinusPoints { punctures } => punctures.clone(),
            Domain::AnnulusLike { punctures } => {
                let mut p = punctures.clone();
                if !p.iter().any(|q| q.is_infinite()) {
                    p.push(ExtendedComplex::Infinity);
                }
                p
            }
        };
        out.sort_by(|a, b| a.report_cmp(b));
        out
    }

    pub fn contains(&self, z: ExtendedComplex) -> bool {
        match self {
            Domain::Plane => !z.is_infinite(),
            Domain::Disk { radius } => z.as_finite().is_some_and(|w| w.norm() < *radius),
            Domain::SphereMinusPoints { punctures } => punctures.iter().all(|p| chordal(*p, z) > PUNCTURE_SEPARATION),
            Domain::AnnulusLike { punctures } => !z.is_infinite() && punctures.iter().all(|p| chordal(*p, z) > PUNCTURE_SEPARATION),
        }
    }

    pub fn contains_finite(&self, z: Complex64) -> bool {
        self.contains(ExtendedComplex::Finite(z))
    }

    /// Whether closed curves in the domain can carry periods.
    pub fn is_simply_connected(&self) -> bool {
        match self {
            Domain::Plane | Domain::Disk { .. } => true,
            Domain::SphereMinusPoints { punctures } => punctures.len() <= 1,
            Domain::AnnulusLike { punctures } => punctures.iter().all(|p| p.is_infinite()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn membership() {
        let d = Domain::SphereMinusPoints { punctures: vec![ExtendedComplex::new(0.0, 0.0), ExtendedComplex::Infinity] };
        assert!(!d.contains(ExtendedComplex::Infinity));
        assert!(!d.contains(ExtendedComplex::new(0.0, 0.0)));
        assert!(d.contains(ExtendedComplex::new(1.0, 0.0)));
        assert!(!d.is_simply_connected());
        assert!(Domain::Disk { radius: 1.0 }.contains(ExtendedComplex::new(0.5, 0.5)));
        assert!(!Domain::Disk { radius: 1.0 }.contains(ExtendedComplex::new(1.0, 0.0)));
        assert_eq!(Domain::Plane.removed_points(), vec![ExtendedComplex::Infinity]);
    }

    #[test]
    fn duplicate_punctures_rejected() {
        let d = Domain::AnnulusLike { punctures: vec![ExtendedComplex::new(1.0, 0.0), ExtendedComplex::new(1.0, 0.0)] };
        assert!(d.validate().is_err());
    }

    #[test]
    fn serde_shape() {
        let d: Domain = serde_json::from_str(r#"{"kind": "SphereMinusPoints", "punctures": [[0, 0], "inf"]}"#).unwrap();
        assert_eq!(d.removed_points().len(), 2);
        assert!(serde_json::from_str::<Domain>(r#"{"kind": "Disk", "radius": 1, "extra": 2}"#).is_err());
    }
}
