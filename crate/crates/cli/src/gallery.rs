//! Example surfaces shipped with the binary.

use std::path::Path;

use serde::{Deserialize, Serialize};
use stasurf::cplane::Cardinality;
use stasurf::weierstrass::SurfaceSpec;

use crate::analyze::{analyze, AnalysisReport, Overrides};
use crate::sample::{render, sample, Format};
use crate::{to_json, CliError, CliResult};

const SOURCES: [(&str, &str); 9] = [
    ("catenoid-r3", include_str!("../gallery/catenoid-r3.json")),
    ("enneper-like", include_str!("../gallery/enneper-like.json")),
    ("maximal-r21", include_str!("../gallery/maximal-r21.json")),
    ("identity-type", include_str!("../gallery/identity-type.json")),
    ("hyperbolic-type", include_str!("../gallery/hyperbolic-type.json")),
    ("elliptic-type", include_str!("../gallery/elliptic-type.json")),
    ("parabolic-graph", include_str!("../gallery/parabolic-graph.json")),
    ("two-degenerate-graph", include_str!("../gallery/two-degenerate-graph.json")),
    ("broken-period", include_str!("../gallery/broken-period.json")),
];

/// `|E_f|` as written in a gallery file: a count or `"inf"`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CountSpec {
    Finite(usize),
    Named(String),
}

impl CountSpec {
    pub fn matches(&self, c: Cardinality) -> bool {
        match (self, c) {
            (CountSpec::Finite(n), Cardinality::Finite(m)) => *n == m,
            (CountSpec::Named(s), Cardinality::Infinite) => s == "inf",
            _ => false,
        }
    }
}

/// Outcomes every build must reproduce.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Expected {
    /// Degeneracy class of `f` for degree-one relations.
    #[serde(default)]
    pub class: Option<String>,
    #[serde(default)]
    pub ef_count: Option<CountSpec>,
    pub regularity: bool,
    pub periods: bool,
    pub exit_code: i32,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GalleryEntry {
    pub surface: SurfaceSpec,
    pub expected: Expected,
}

impl GalleryEntry {
    pub fn from_json(text: &str) -> CliResult<Self> {
        let e: GalleryEntry = serde_json::from_str(text).map_err(|e| CliError::parse(format!("gallery file, line {} column {}: {e}", e.line(), e.column())))?;
        e.surface.validate()?;
        Ok(e)
    }

    pub fn name(&self) -> &str {
        &self.surface.name
    }
}

/// All entries in a fixed order.
pub fn entries() -> Vec<GalleryEntry> {
    SOURCES
        .iter()
        .map(|(name, text)| {
            let e = GalleryEntry::from_json(text).unwrap_or_else(|err| panic!("gallery entry {name}: {err}"));
            assert_eq!(e.name(), *name, "gallery file name and entry name differ");
            e
        })
        .collect()
}

pub fn find(name: &str) -> CliResult<GalleryEntry> {
    entries().into_iter().find(|e| e.name() == name).ok_or_else(|| CliError::parse(format!("no gallery entry named `{name}`")))
}

/// Differences between a report and the expectations of its entry.
pub fn mismatches(e: &GalleryEntry, r: &AnalysisReport) -> Vec<String> {
    let x = &e.expected;
    let mut out = Vec::new();
    let class = r.classification.as_ref().and_then(|c| c.class).map(|c| c.name().to_string());
    if x.class != class {
        out.push(format!("class {class:?}, expected {:?}", x.class));
    }
    if let Some(want) = &x.ef_count {
        match &r.ef {
            Some(ef) if want.matches(ef.cardinality) => {}
            got => out.push(format!("|E_f| {:?}, expected {want:?}", got.as_ref().map(|e| e.cardinality.to_string()))),
        }
    }
    if r.regularity.pass != x.regularity {
        out.push(format!("regularity {}, expected {}", r.regularity.pass, x.regularity));
    }
    if r.periods.pass != x.periods {
        out.push(format!("periods {}, expected {}", r.periods.pass, x.periods));
    }
    if r.exit_code != x.exit_code {
        out.push(format!("exit code {}, expected {}", r.exit_code, x.exit_code));
    }
    out
}

/// Outcome of `gallery run`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GalleryRun {
    /// One summary line per entry.
    pub lines: Vec<String>,
    pub ok: bool,
}

/// Analyzes and samples every entry, writing `NAME.report.json`,
/// `NAME.csv` and `NAME.obj` into `out` when given.
pub fn run(out: Option<&Path>) -> CliResult<GalleryRun> {
    if let Some(dir) = out {
        std::fs::create_dir_all(dir).map_err(|e| CliError::parse(format!("{}: {e}", dir.display())))?;
    }
    let write = |name: String, text: &str| -> CliResult<()> {
        if let Some(dir) = out {
            let p = dir.join(name);
            std::fs::write(&p, text).map_err(|e| CliError::parse(format!("{}: {e}", p.display())))?;
        }
        Ok(())
    };
    let mut lines = Vec::new();
    let mut ok = true;
    for e in entries() {
        let ov = Overrides::default();
        let problems = match analyze(&e.surface, &ov) {
            Ok(r) => {
                write(format!("{}.report.json", e.name()), &to_json(&r))?;
                let mesh = sample(&e.surface, &ov)?;
                write(format!("{}.csv", e.name()), &render(&mesh, Format::Csv))?;
                write(format!("{}.obj", e.name()), &render(&mesh, Format::Obj))?;
                mismatches(&e, &r)
            }
            Err(err) => vec![format!("analysis failed: {err}")],
        };
        if problems.is_empty() {
            lines.push(format!("{}: ok (exit {})", e.name(), e.expected.exit_code));
        } else {
            ok = false;
            lines.push(format!("{}: MISMATCH {}", e.name(), problems.join("; ")));
        }
    }
    Ok(GalleryRun { lines, ok })
}
