//! JSON documents read and written by the CLI, and Hasse-diagram DOT export.
//!
//! Graphs: `{"vertices":[{"id":0,"x":"1","y":"0"}],"edges":[[0,1]],"white_anchor":0}`
//! with coordinates as decimal or fraction strings. Posets and lattices:
//! `{"elements":["0","1"],"covers":[["0","1"]]}` with covers as `[lower, upper]`.

use std::collections::HashMap;
use std::fmt::Write;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::geometry::{
    build_plane_graph, format_rational, parse_rational, GeometryError, PlaneGraph, Point, VertexSpec,
};
use crate::graph::{dot_quote, Graph};
use crate::matchings::{CellClassification, Matching};
use crate::order::{Lattice, OrderError, Poset};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IoError {
    #[error("malformed JSON: {0}")]
    Json(String),
    #[error("vertex {0} has no coordinates")]
    MissingCoordinates(u64),
    #[error("edge {0}-{1} references an unknown vertex")]
    UnknownVertex(u64, u64),
    #[error("unknown element {0:?} in covers")]
    UnknownElement(String),
    #[error("unknown poset kind {0:?}; expected \"poset\" or \"lattice\"")]
    UnknownKind(String),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Order(#[from] OrderError),
}

impl From<serde_json::Error> for IoError {
    fn from(e: serde_json::Error) -> Self {
        IoError::Json(e.to_string())
    }
}

/// Coordinates may be strings (exact) or JSON integers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Coordinate {
    Int(i64),
    Text(String),
}

impl Coordinate {
    fn parse(&self) -> Result<num::BigRational, GeometryError> {
        match self {
            Coordinate::Int(i) => Ok(num::BigRational::from_integer((*i).into())),
            Coordinate::Text(s) => parse_rational(s),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VertexDoc {
    pub id: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x: Option<Coordinate>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub y: Option<Coordinate>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphDoc {
    pub vertices: Vec<VertexDoc>,
    pub edges: Vec<[u64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub white_anchor: Option<u64>,
}

impl GraphDoc {
    pub fn parse(text: &str) -> Result<GraphDoc, IoError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("graph documents serialise")
    }

    pub fn from_plane_graph(g: &PlaneGraph) -> GraphDoc {
        GraphDoc {
            vertices: g
                .vertices()
                .iter()
                .map(|v| VertexDoc {
                    id: v.id,
                    x: Some(Coordinate::Text(format_rational(&v.point.x))),
                    y: Some(Coordinate::Text(format_rational(&v.point.y))),
                })
                .collect(),
            edges: g.edges().iter().map(|&(a, b)| [g.id(a), g.id(b)]).collect(),
            white_anchor: Some(g.white_anchor()),
        }
    }

    /// Vertices labelled by id, in increasing id order.
    pub fn from_graph_labels(g: &Graph) -> GraphDoc {
        GraphDoc {
            vertices: (0..g.vertex_count()).map(|v| VertexDoc { id: v as u64, x: None, y: None }).collect(),
            edges: g.edges().into_iter().map(|(a, b)| [a as u64, b as u64]).collect(),
            white_anchor: None,
        }
    }

    pub fn to_plane_graph(&self) -> Result<PlaneGraph, IoError> {
        let mut specs = Vec::with_capacity(self.vertices.len());
        for v in &self.vertices {
            let (Some(x), Some(y)) = (&v.x, &v.y) else {
                return Err(IoError::MissingCoordinates(v.id));
            };
            specs.push(VertexSpec { id: v.id, point: Point::new(x.parse()?, y.parse()?) });
        }
        let edges: Vec<(u64, u64)> = self.edges.iter().map(|e| (e[0], e[1])).collect();
        Ok(build_plane_graph(specs, &edges, self.white_anchor)?)
    }

    /// Abstract graph on the vertices in increasing id order, labelled by id.
    /// Coordinates are ignored.
    pub fn to_graph(&self) -> Result<Graph, IoError> {
        let mut ids: Vec<u64> = self.vertices.iter().map(|v| v.id).collect();
        ids.sort_unstable();
        if let Some(w) = ids.windows(2).find(|w| w[0] == w[1]) {
            return Err(GeometryError::DuplicateId(w[0]).into());
        }
        let mut g = Graph::new(ids.iter().map(|i| i.to_string()).collect());
        for &[a, b] in &self.edges {
            let (Ok(ia), Ok(ib)) = (ids.binary_search(&a), ids.binary_search(&b)) else {
                return Err(IoError::UnknownVertex(a, b));
            };
            if ia == ib {
                return Err(GeometryError::SelfLoop(a).into());
            }
            if !g.add_edge(ia, ib) {
                return Err(GeometryError::DuplicateEdge(a, b).into());
            }
        }
        Ok(g)
    }
}

pub fn plane_graph_from_json(text: &str) -> Result<PlaneGraph, IoError> {
    GraphDoc::parse(text)?.to_plane_graph()
}

pub fn plane_graph_to_json(g: &PlaneGraph) -> String {
    GraphDoc::from_plane_graph(g).to_json()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum PosetKind {
    /// Screen the filter lattice of the poset.
    #[default]
    Poset,
    /// The poset is itself the lattice to screen.
    Lattice,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PosetDoc {
    pub elements: Vec<String>,
    pub covers: Vec<[String; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kind: Option<String>,
}

impl PosetDoc {
    pub fn parse(text: &str) -> Result<PosetDoc, IoError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("poset documents serialise")
    }

    pub fn from_poset(p: &Poset) -> PosetDoc {
        PosetDoc {
            elements: p.labels().to_vec(),
            covers: p.covers().into_iter().map(|(a, b)| [p.label(a).to_string(), p.label(b).to_string()]).collect(),
            kind: None,
        }
    }

    pub fn kind(&self) -> Result<PosetKind, IoError> {
        match self.kind.as_deref() {
            None | Some("poset") => Ok(PosetKind::Poset),
            Some("lattice") => Ok(PosetKind::Lattice),
            Some(other) => Err(IoError::UnknownKind(other.to_string())),
        }
    }

    /// Covers must be reduced; implied pairs are rejected.
    pub fn to_poset(&self) -> Result<Poset, IoError> {
        let index: HashMap<&str, usize> = self.elements.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
        let mut covers = Vec::with_capacity(self.covers.len());
        for [a, b] in &self.covers {
            let ia = *index.get(a.as_str()).ok_or_else(|| IoError::UnknownElement(a.clone()))?;
            let ib = *index.get(b.as_str()).ok_or_else(|| IoError::UnknownElement(b.clone()))?;
            covers.push((ia, ib));
        }
        Ok(Poset::from_covers(self.elements.clone(), &covers)?)
    }
}

pub fn poset_from_json(text: &str) -> Result<(Poset, PosetKind), IoError> {
    let doc = PosetDoc::parse(text)?;
    Ok((doc.to_poset()?, doc.kind()?))
}

pub fn poset_to_json(p: &Poset) -> String {
    PosetDoc::from_poset(p).to_json()
}

/// Elements and cover pairs by label, readable back as a lattice document.
pub fn lattice_json(l: &Lattice) -> Value {
    let p = l.poset();
    json!({
        "elements": p.labels(),
        "covers": p.covers().into_iter().map(|(a, b)| [p.label(a), p.label(b)]).collect::<Vec<_>>(),
        "kind": "lattice",
    })
}

/// Hasse diagram, upper elements drawn above.
pub fn hasse_dot(p: &Poset, name: &str) -> String {
    let mut s = format!("digraph {} {{\n  rankdir=BT;\n", dot_quote(name));
    for (i, l) in p.labels().iter().enumerate() {
        let _ = writeln!(s, "  e{i} [label={}];", dot_quote(l));
    }
    for (a, b) in p.covers() {
        let _ = writeln!(s, "  e{a} -> e{b};");
    }
    s.push_str("}\n");
    s
}

/// Sorted `[id, id]` pairs.
pub fn matching_json(g: &PlaneGraph, m: &Matching) -> Value {
    json!(m.id_pairs(g))
}

/// `{face_id: "proper" | "improper" | "none"}`.
pub fn classification_json(cls: &[CellClassification]) -> Value {
    let map: serde_json::Map<String, Value> =
        cls.iter().map(|c| (c.face_id.to_string(), json!(c.status.as_str()))).collect();
    Value::Object(map)
}

/// Per-face report: boundary walks by vertex id, outer flag, cell flag.
pub fn face_report(g: &PlaneGraph) -> Value {
    let faces: Vec<Value> = g
        .faces()
        .iter()
        .map(|f| {
            let walks: Vec<Vec<u64>> =
                f.boundary_walks.iter().map(|w| w.iter().map(|&(a, _)| g.id(a)).collect()).collect();
            json!({
                "id": f.id,
                "outer": f.is_outer,
                "cell": g.cell(f.id).is_some(),
                "walks": walks,
            })
        })
        .collect();
    json!({"faces": faces, "outer_face": g.outer_face_id()})
}
