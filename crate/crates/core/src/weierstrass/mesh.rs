use std::fmt::Write as _;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::data::WeierstrassData;
use super::immersion::{displacement, ImmersionSample};
use super::phi::{induced_metric, phi_forms};
use crate::error::{Error, Result};

/// Parameter grid. Nodes are `(row, col)`; rows vary `v` (rectangular) or
/// the radius (polar), columns vary `u` or the angle. End points are
/// included.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum GridSpec {
    Rect { u: [f64; 2], v: [f64; 2], nu: usize, nv: usize },
    Polar { center: Complex64, r: [f64; 2], theta: [f64; 2], nr: usize, ntheta: usize },
}

fn linspace(range: [f64; 2], n: usize, k: usize) -> f64 {
    if n <= 1 {
        range[0]
    } else {
        range[0] + (range[1] - range[0]) * k as f64 / (n - 1) as f64
    }
}

impl GridSpec {
    pub fn shape(&self) -> (usize, usize) {
        match *self {
            GridSpec::Rect { nu, nv, .. } => (nv, nu),
            GridSpec::Polar { nr, ntheta, .. } => (nr, ntheta),
        }
    }

    pub fn node(&self, row: usize, col: usize) -> Complex64 {
        match *self {
            GridSpec::Rect { u, v, nu, nv } => Complex64::new(linspace(u, nu, col), linspace(v, nv, row)),
            GridSpec::Polar { center, r, theta, nr, ntheta } => center + Complex64::from_polar(linspace(r, nr, row), linspace(theta, ntheta, col)),
        }
    }

    /// All nodes in row-major order.
    pub fn points(&self) -> Vec<Complex64> {
        let (rows, cols) = self.shape();
        (0..rows).flat_map(|i| (0..cols).map(move |j| (i, j))).map(|(i, j)| self.node(i, j)).collect()
    }

    /// Replaces the node counts.
    pub fn with_counts(&self, a: usize, b: usize) -> Self {
        let mut g = self.clone();
        match &mut g {
            GridSpec::Rect { nu, nv, .. } => (*nu, *nv) = (a, b),
            GridSpec::Polar { nr, ntheta, .. } => (*nr, *ntheta) = (a, b),
        }
        g
    }

    /// Replaces the coordinate window: `(u, v)` ranges or `(r, θ)` ranges.
    pub fn with_window(&self, first: [f64; 2], second: [f64; 2]) -> Self {
        let mut g = self.clone();
        match &mut g {
            GridSpec::Rect { u, v, .. } => (*u, *v) = (first, second),
            GridSpec::Polar { r, theta, .. } => (*r, *theta) = (first, second),
        }
        g
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MeshSample {
    pub row: usize,
    pub col: usize,
    #[serde(flatten)]
    pub sample: ImmersionSample,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SkippedNode {
    pub row: usize,
    pub col: usize,
    pub z: Complex64,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Mesh {
    pub rows: usize,
    pub cols: usize,
    pub samples: Vec<MeshSample>,
    pub skipped: Vec<SkippedNode>,
}

/// Samples the immersion on the grid in row-major order.
///
/// Each node is reached by a straight segment from an already computed
/// node, trying in order: the left neighbour, the node below, earlier nodes
/// of the same row, earlier nodes of the same column, and the first node.
/// The first valid node sits at `x = 0`, or is integrated from `basepoint`
/// when one is given. Nodes outside the domain, at poles of the integrand,
/// or with no clear segment are skipped and reported.
pub fn sample_mesh(data: &WeierstrassData, grid: &GridSpec, basepoint: Option<Complex64>) -> Result<Mesh> {
    let (rows, cols) = grid.shape();
    let mut x: Vec<Option<[f64; 4]>> = vec![None; rows * cols];
    let mut samples = Vec::new();
    let mut skipped = Vec::new();
    let mut first: Option<usize> = None;
    for i in 0..rows {
        for j in 0..cols {
            let idx = i * cols + j;
            let z = grid.node(i, j);
            let skip = |reason: String| SkippedNode { row: i, col: j, z, reason };
            if !data.domain().contains_finite(z) {
                skipped.push(skip("outside the domain".into()));
                continue;
            }
            let lambda2 = match phi_forms(data, z).and_then(|_| induced_metric(data, z)) {
                Ok(l) => l,
                Err(e) => {
                    skipped.push(skip(e.to_string()));
                    continue;
                }
            };
            let pos = match first {
                None => match basepoint {
                    Some(b) => displacement(data, &[b, z]),
                    None => Ok([0.0; 4]),
                },
                Some(f0) => {
                    let mut cands: Vec<usize> = Vec::new();
                    if j > 0 {
                        cands.push(idx - 1);
                    }
                    if i > 0 {
                        cands.push(idx - cols);
                    }
                    cands.extend((0..j.saturating_sub(1)).rev().map(|jj| i * cols + jj));
                    cands.extend((0..i.saturating_sub(1)).rev().map(|ii| ii * cols + j));
                    cands.push(f0);
                    let mut last_err = Error::InvalidInput("no computed neighbour".into());
                    let mut found = None;
                    for c in cands {
                        let Some(xc) = x[c] else { continue };
                        let zc = grid.node(c / cols, c % cols);
                        match displacement(data, &[zc, z]) {
                            Ok(d) => {
                                found = Some([xc[0] + d[0], xc[1] + d[1], xc[2] + d[2], xc[3] + d[3]]);
                                break;
                            }
                            Err(e) => last_err = e,
                        }
                    }
                    found.ok_or(last_err)
                }
            };
            match pos {
                Ok(p) => {
                    x[idx] = Some(p);
                    first.get_or_insert(idx);
                    samples.push(MeshSample { row: i, col: j, sample: ImmersionSample { z, x: p, lambda2 } });
                }
                Err(e) => skipped.push(skip(e.to_string())),
            }
        }
    }
    Ok(Mesh { rows, cols, samples, skipped })
}

impl Mesh {
    /// CSV with header `u,v,x1,x2,x3,x4,lambda2`; floats use the shortest
    /// representation that round-trips.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("u,v,x1,x2,x3,x4,lambda2\n");
        for s in &self.samples {
            let p = &s.sample;
            let _ = writeln!(out, "{},{},{},{},{},{},{}", p.z.re, p.z.im, p.x[0], p.x[1], p.x[2], p.x[3], p.lambda2);
        }
        out
    }

    /// Wavefront OBJ of `(x₁, x₂, x₃)` with quad faces between complete grid
    /// cells; each vertex is preceded by a comment carrying `x₄`.
    pub fn to_obj(&self) -> String {
        let mut out = String::from("# stasurf mesh: vertices (x1, x2, x3); x4 in the comment before each vertex\n");
        let mut index = vec![0usize; self.rows * self.cols];
        for (n, s) in self.samples.iter().enumerate() {
            let p = &s.sample;
            let _ = writeln!(out, "# x4 {}", p.x[3]);
            let _ = writeln!(out, "v {} {} {}", p.x[0], p.x[1], p.x[2]);
            index[s.row * self.cols + s.col] = n + 1;
        }
        for i in 0..self.rows.saturating_sub(1) {
            for j in 0..self.cols.saturating_sub(1) {
                let q = [index[i * self.cols + j], index[i * self.cols + j + 1], index[(i + 1) * self.cols + j + 1], index[(i + 1) * self.cols + j]];
                if q.iter().all(|&k| k > 0) {
                    let _ = writeln!(out, "f {} {} {} {}", q[0], q[1], q[2], q[3]);
                }
            }
        }
        out
    }
}
