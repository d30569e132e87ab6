//! Shape file formats.
//!
//! Polygon, JSON: `{"vertices": [[x, y], ...]}`, vertices in boundary order.
//!
//! Mesh, JSON: `{"vertices": [[x, y, z], ...], "facets": [[i, j, k, ...], ...]}`
//! with 0-based indices.
//!
//! Mesh, OBJ subset: `v x y z` and `f i j k ...` records with 1-based
//! indices. Blank lines and `#` comments are skipped; any other record is
//! rejected.

use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::core2d::Polygon2;
use crate::core3d::Polyhedron3;
use crate::error::{Error, Result};

#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct PolygonFile {
    vertices: Vec<[f64; 2]>,
}

#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct MeshFile {
    vertices: Vec<[f64; 3]>,
    facets: Vec<Vec<usize>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MeshFormat {
    Obj,
    Json,
}

impl MeshFormat {
    /// Guesses from the extension, then from the first non-blank character.
    pub fn detect(path: &Path, text: &str) -> MeshFormat {
        match path.extension().and_then(|e| e.to_str()) {
            Some(e) if e.eq_ignore_ascii_case("obj") => MeshFormat::Obj,
            Some(e) if e.eq_ignore_ascii_case("json") => MeshFormat::Json,
            _ if text.trim_start().starts_with('{') => MeshFormat::Json,
            _ => MeshFormat::Obj,
        }
    }
}

impl FromStr for MeshFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "obj" => Ok(MeshFormat::Obj),
            "json" => Ok(MeshFormat::Json),
            _ => Err(Error::Format(format!("unknown mesh format `{s}`"))),
        }
    }
}

fn json_error(e: serde_json::Error) -> Error {
    Error::Parse {
        line: e.line(),
        message: e.to_string(),
    }
}

pub fn parse_polygon_json(text: &str) -> Result<Polygon2> {
    let file: PolygonFile = serde_json::from_str(text).map_err(json_error)?;
    Polygon2::from_coords(&file.vertices)
}

pub fn parse_mesh_json(text: &str) -> Result<Polyhedron3> {
    let file: MeshFile = serde_json::from_str(text).map_err(json_error)?;
    Polyhedron3::from_coords(&file.vertices, file.facets)
}

pub fn parse_obj(text: &str) -> Result<Polyhedron3> {
    let mut vertices = Vec::new();
    let mut facets = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let err = |message: String| Error::Parse { line, message };
        let content = raw.split('#').next().unwrap_or("").trim();
        let mut tokens = content.split_whitespace();
        let Some(tag) = tokens.next() else { continue };
        let rest: Vec<&str> = tokens.collect();
        match tag {
            "v" => {
                if rest.len() != 3 {
                    return Err(err(format!(
                        "vertex needs 3 coordinates, got {}",
                        rest.len()
                    )));
                }
                let mut p = [0.0; 3];
                for (slot, t) in p.iter_mut().zip(&rest) {
                    *slot = t
                        .parse()
                        .map_err(|_| err(format!("bad coordinate `{t}`")))?;
                }
                vertices.push(p);
            }
            "f" => {
                if rest.len() < 3 {
                    return Err(err(format!(
                        "facet needs at least 3 indices, got {}",
                        rest.len()
                    )));
                }
                let facet = rest
                    .iter()
                    .map(|t| match t.parse::<usize>() {
                        Ok(i) if i >= 1 => Ok(i - 1),
                        _ => Err(err(format!(
                            "bad facet index `{t}` (1-based integers only)"
                        ))),
                    })
                    .collect::<Result<Vec<_>>>()?;
                facets.push(facet);
            }
            other => return Err(err(format!("unsupported record `{other}`"))),
        }
    }
    Polyhedron3::from_coords(&vertices, facets)
}

pub fn parse_mesh(text: &str, format: MeshFormat) -> Result<Polyhedron3> {
    match format {
        MeshFormat::Obj => parse_obj(text),
        MeshFormat::Json => parse_mesh_json(text),
    }
}

pub fn read_polygon(path: &Path) -> Result<Polygon2> {
    parse_polygon_json(&std::fs::read_to_string(path)?)
}

/// Reads a mesh, guessing the format when `format` is `None`.
pub fn read_mesh(path: &Path, format: Option<MeshFormat>) -> Result<Polyhedron3> {
    let text = std::fs::read_to_string(path)?;
    let format = format.unwrap_or_else(|| MeshFormat::detect(path, &text));
    parse_mesh(&text, format)
}

pub fn polygon_to_json(p: &Polygon2) -> String {
    let file = PolygonFile {
        vertices: p.vertices().iter().map(|&v| v.into()).collect(),
    };
    serde_json::to_string_pretty(&file).expect("plain data serializes")
}

pub fn mesh_to_json(p: &Polyhedron3) -> String {
    let file = MeshFile {
        vertices: p.vertices().iter().map(|&v| v.into()).collect(),
        facets: p.facets().iter().map(|f| f.indices().to_vec()).collect(),
    };
    serde_json::to_string_pretty(&file).expect("plain data serializes")
}

pub fn mesh_to_obj(p: &Polyhedron3) -> String {
    let mut out = String::new();
    for v in p.vertices() {
        let _ = writeln!(out, "v {} {} {}", v.x, v.y, v.z);
    }
    for f in p.facets() {
        let idx: Vec<String> = f.indices().iter().map(|i| (i + 1).to_string()).collect();
        let _ = writeln!(out, "f {}", idx.join(" "));
    }
    out
}

pub fn write_mesh(p: &Polyhedron3, format: MeshFormat) -> String {
    match format {
        MeshFormat::Obj => mesh_to_obj(p),
        MeshFormat::Json => mesh_to_json(p),
    }
}
