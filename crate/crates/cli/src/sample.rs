//! `sample`: immersion meshes as CSV, OBJ or JSON.

use stasurf::weierstrass::{sample_mesh, Mesh, SurfaceSpec};

use crate::analyze::Overrides;
use crate::{to_json, CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Obj,
    Json,
}

impl std::str::FromStr for Format {
    type Err = CliError;

    fn from_str(s: &str) -> CliResult<Self> {
        match s {
            "csv" => Ok(Format::Csv),
            "obj" => Ok(Format::Obj),
            "json" => Ok(Format::Json),
            _ => Err(CliError::parse(format!("unknown format `{s}` (csv, obj, json)"))),
        }
    }
}

pub fn render(mesh: &Mesh, format: Format) -> String {
    match format {
        Format::Csv => mesh.to_csv(),
        Format::Obj => mesh.to_obj(),
        Format::Json => to_json(mesh),
    }
}

pub fn sample(spec: &SurfaceSpec, ov: &Overrides) -> CliResult<Mesh> {
    let data = spec.to_data()?;
    Ok(sample_mesh(&data, &ov.grid(spec), None)?)
}
