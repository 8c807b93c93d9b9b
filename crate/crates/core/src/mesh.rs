//! Grid sampling of catalog surfaces and OBJ / CSV / SVG export.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use rayon::prelude::*;
use serde::Serialize;

use crate::catalog::BourParams;
use crate::diffgeo::OracleConfig;
use crate::error::{Error, Result};
use crate::format::fmt_sig9;
use crate::lorentz::Vec3L;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CellFlag {
    Ok,
    Singular,
    OutOfBranch,
}

impl CellFlag {
    pub fn name(self) -> &'static str {
        match self {
            CellFlag::Ok => "ok",
            CellFlag::Singular => "singular",
            CellFlag::OutOfBranch => "out_of_branch",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Plane {
    Xy,
    Xz,
    Yz,
}

impl Plane {
    pub fn name(self) -> &'static str {
        match self {
            Plane::Xy => "xy",
            Plane::Xz => "xz",
            Plane::Yz => "yz",
        }
    }

    fn project(self, v: Vec3L) -> (f64, f64) {
        match self {
            Plane::Xy => (v.x, v.y),
            Plane::Xz => (v.x, v.z),
            Plane::Yz => (v.y, v.z),
        }
    }
}

/// Row-major `ns × nt` grid. Vertex (i, j) sits at `i * nt + j`; cell (i, j)
/// spans vertices (i, j) to (i+1, j+1).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MeshGrid {
    pub label: String,
    pub dims: (usize, usize),
    pub params: Vec<(f64, f64)>,
    pub vertices: Vec<Vec3L>,
    /// Closed-form Gaussian curvature; `None` where undefined.
    pub k_field: Vec<Option<f64>>,
    pub vertex_flags: Vec<CellFlag>,
    pub cell_flags: Vec<CellFlag>,
    pub clipped: Option<String>,
}

impl MeshGrid {
    /// A grid with every vertex and cell marked ok and no curvature.
    pub fn from_vertices(
        label: &str,
        dims: (usize, usize),
        params: Vec<(f64, f64)>,
        vertices: Vec<Vec3L>,
    ) -> Result<Self> {
        let (ns, nt) = dims;
        if ns == 0 || nt == 0 || params.len() != ns * nt || vertices.len() != ns * nt {
            return Err(Error::InvalidArgument(format!(
                "grid {ns}x{nt} needs {} params and vertices, got {} and {}",
                ns * nt,
                params.len(),
                vertices.len()
            )));
        }
        if let Some(v) = vertices.iter().find(|v| !v.is_finite()) {
            return Err(Error::NonFinite(format!("vertex {v:?}")));
        }
        let n = ns * nt;
        Ok(MeshGrid {
            label: label.to_string(),
            dims,
            params,
            vertices,
            k_field: vec![None; n],
            vertex_flags: vec![CellFlag::Ok; n],
            cell_flags: vec![CellFlag::Ok; ns.saturating_sub(1) * nt.saturating_sub(1)],
            clipped: None,
        })
    }

    pub fn index(&self, i: usize, j: usize) -> usize {
        i * self.dims.1 + j
    }

    pub fn flagged_cells(&self) -> usize {
        self.cell_flags
            .iter()
            .filter(|f| **f != CellFlag::Ok)
            .count()
    }

    /// Curvature range over vertices of ok cells.
    pub fn k_range(&self) -> Option<(f64, f64)> {
        let (ns, nt) = self.dims;
        let mut out: Option<(f64, f64)> = None;
        for i in 0..ns.saturating_sub(1) {
            for j in 0..nt.saturating_sub(1) {
                if self.cell_flags[i * (nt - 1) + j] != CellFlag::Ok {
                    continue;
                }
                for (a, b) in [(i, j), (i + 1, j), (i, j + 1), (i + 1, j + 1)] {
                    if let Some(k) = self.k_field[self.index(a, b)] {
                        out = Some(out.map_or((k, k), |(lo, hi)| (lo.min(k), hi.max(k))));
                    }
                }
            }
        }
        out
    }
}

/// Samples `entry` on a uniform `ns × nt` grid over its realizable domain.
///
/// Vertices come from the closed-form evaluator. A vertex is singular when
/// its curvature is undefined or its metric is degenerate relative to
/// `cfg.degeneracy_tol`; a cell is singular when a corner is, or when a
/// singular curve passes through it.
pub fn sample(entry: &BourParams, ns: usize, nt: usize, cfg: &OracleConfig) -> Result<MeshGrid> {
    if ns < 2 || nt < 2 {
        return Err(Error::InvalidArgument(format!(
            "grid must be at least 2x2, got {ns}x{nt}"
        )));
    }
    cfg.validate()?;
    let dom = entry.realizable()?;
    let ss = dom.s.nodes(ns);
    let ts = dom.t.nodes(nt);

    type Vertex = (Vec3L, Option<f64>, CellFlag);
    let rows: Vec<Result<Vec<Vertex>>> = ss
        .par_iter()
        .map(|&s| {
            ts.iter()
                .map(|&t| {
                    let p = entry.position(s, t).map_err(|e| match e {
                        Error::SingularPoint(msg) => Error::SingularPoint(format!(
                            "{msg}; vertex ({s}, {t}) of {} is a pole, choose a grid that avoids it",
                            entry.label
                        )),
                        other => other,
                    })?;
                    let (k, flag) = match entry.closed_form(s, t) {
                        Ok(cf) => {
                            let ff = cf.first;
                            let scale = ff.e.abs().max(ff.f.abs()).max(ff.g.abs()).powi(2);
                            if cf.k.is_finite() && ff.det().abs() > cfg.degeneracy_tol * scale {
                                (Some(cf.k), CellFlag::Ok)
                            } else {
                                (None, CellFlag::Singular)
                            }
                        }
                        Err(Error::BranchDomain(_)) => (None, CellFlag::OutOfBranch),
                        Err(_) => (None, CellFlag::Singular),
                    };
                    Ok((p, k, flag))
                })
                .collect()
        })
        .collect();

    let mut params = Vec::with_capacity(ns * nt);
    let mut vertices = Vec::with_capacity(ns * nt);
    let mut k_field = Vec::with_capacity(ns * nt);
    let mut vertex_flags = Vec::with_capacity(ns * nt);
    for (row, &s) in rows.into_iter().zip(&ss) {
        for ((p, k, flag), &t) in row?.into_iter().zip(&ts) {
            params.push((s, t));
            vertices.push(p);
            k_field.push(k);
            vertex_flags.push(flag);
        }
    }

    let loci = entry.geometric_loci();
    let mut cell_flags = Vec::with_capacity((ns - 1) * (nt - 1));
    for i in 0..ns - 1 {
        for j in 0..nt - 1 {
            let corners = [
                i * nt + j,
                (i + 1) * nt + j,
                i * nt + j + 1,
                (i + 1) * nt + j + 1,
            ];
            let flags = corners.map(|c| vertex_flags[c]);
            let crossed = loci.iter().any(|l| {
                let g = corners.map(|c| l.value(params[c].0, params[c].1));
                let lo = g.iter().cloned().fold(f64::INFINITY, f64::min);
                let hi = g.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
                lo <= 0.0 && hi >= 0.0
            });
            cell_flags.push(if flags.contains(&CellFlag::OutOfBranch) {
                CellFlag::OutOfBranch
            } else if crossed || flags.contains(&CellFlag::Singular) {
                CellFlag::Singular
            } else {
                CellFlag::Ok
            });
        }
    }

    Ok(MeshGrid {
        label: entry.label.clone(),
        dims: (ns, nt),
        params,
        vertices,
        k_field,
        vertex_flags,
        cell_flags,
        clipped: dom.clipped,
    })
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn render_obj(mesh: &MeshGrid) -> String {
    let (ns, nt) = mesh.dims;
    let mut out = String::new();
    let _ = writeln!(out, "# {} {}x{}", mesh.label, ns, nt);
    for v in &mesh.vertices {
        let _ = writeln!(
            out,
            "v {} {} {}",
            fmt_sig9(v.x),
            fmt_sig9(v.y),
            fmt_sig9(v.z)
        );
    }
    for i in 0..ns.saturating_sub(1) {
        for j in 0..nt.saturating_sub(1) {
            if mesh.cell_flags[i * (nt - 1) + j] != CellFlag::Ok {
                continue;
            }
            let a = mesh.index(i, j) + 1;
            let b = mesh.index(i + 1, j) + 1;
            let _ = writeln!(out, "f {} {} {} {}", a, b, b + 1, a + 1);
        }
    }
    out
}

pub fn export_obj(mesh: &MeshGrid, path: &Path) -> Result<()> {
    write_file(path, &render_obj(mesh))
}

pub fn render_csv(mesh: &MeshGrid) -> String {
    let mut out = String::from("s,t,x,y,z,K,flag\n");
    for idx in 0..mesh.vertices.len() {
        let (s, t) = mesh.params[idx];
        let v = mesh.vertices[idx];
        let k = mesh.k_field[idx].map_or_else(|| "nan".to_string(), fmt_sig9);
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{}",
            fmt_sig9(s),
            fmt_sig9(t),
            fmt_sig9(v.x),
            fmt_sig9(v.y),
            fmt_sig9(v.z),
            k,
            mesh.vertex_flags[idx].name()
        );
    }
    out
}

pub fn export_csv(mesh: &MeshGrid, path: &Path) -> Result<()> {
    write_file(path, &render_csv(mesh))
}

const SVG_SIZE: f64 = 800.0;

/// Orthographic wireframe: one polyline per grid row and per grid column.
pub fn render_svg(mesh: &MeshGrid, plane: Plane) -> String {
    let (ns, nt) = mesh.dims;
    let pts: Vec<(f64, f64)> = mesh.vertices.iter().map(|v| plane.project(*v)).collect();
    let (mut x0, mut x1, mut y0, mut y1) = (
        f64::INFINITY,
        f64::NEG_INFINITY,
        f64::INFINITY,
        f64::NEG_INFINITY,
    );
    for &(x, y) in &pts {
        x0 = x0.min(x);
        x1 = x1.max(x);
        y0 = y0.min(y);
        y1 = y1.max(y);
    }
    let span = (x1 - x0).max(y1 - y0);
    let span = if span > 0.0 { span } else { 1.0 };
    let scale = 0.9 * SVG_SIZE / span;
    let (cx, cy) = ((x0 + x1) / 2.0, (y0 + y1) / 2.0);
    let map = |(x, y): (f64, f64)| {
        (
            SVG_SIZE / 2.0 + (x - cx) * scale,
            SVG_SIZE / 2.0 - (y - cy) * scale,
        )
    };

    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{0}" height="{0}" viewBox="0 0 {0} {0}">"#,
        SVG_SIZE
    );
    let _ = writeln!(
        out,
        "<title>{} ({} projection)</title>",
        mesh.label,
        plane.name()
    );
    let _ = writeln!(out, r#"<g fill="none" stroke="black" stroke-width="0.5">"#);
    let mut polyline = |idx: &mut dyn Iterator<Item = usize>| {
        let coords: Vec<String> = idx
            .map(|k| {
                let (x, y) = map(pts[k]);
                format!("{x:.3},{y:.3}")
            })
            .collect();
        if coords.len() >= 2 {
            let _ = writeln!(out, r#"<polyline points="{}"/>"#, coords.join(" "));
        }
    };
    for i in 0..ns {
        polyline(&mut (0..nt).map(|j| i * nt + j));
    }
    for j in 0..nt {
        polyline(&mut (0..ns).map(|i| i * nt + j));
    }
    out.push_str("</g>\n</svg>\n");
    out
}

pub fn export_svg_projection(mesh: &MeshGrid, plane: Plane, path: &Path) -> Result<()> {
    write_file(path, &render_svg(mesh, plane))
}
