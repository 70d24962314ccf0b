//! Plane bipartite graphs with an explicit straight-line embedding.
//!
//! Coordinates are exact rationals. Rotation systems, face walks, cell
//! orientation and all intersection predicates are decided without floating
//! point, so the proper/improper classification downstream is bit-stable.
//!
//! Conventions: x grows to the right, y grows upward. A polygon is clockwise
//! when its shoelace signed area is negative. Faces are traced with the
//! face on the left of every dart, so inner faces come out counterclockwise
//! and cells store the reversed (clockwise) cycle.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use fixedbitset::FixedBitSet;
use num::{BigInt, BigRational, Signed, Zero};
use thiserror::Error;

use crate::graph::{Graph, Multigraph};

/// Vertex index into [`PlaneGraph::vertices`]. Indices follow increasing id.
pub type VertexIdx = usize;

/// Undirected edge as a pair of vertex indices with `a < b`.
pub type Edge = (VertexIdx, VertexIdx);

/// Directed edge traversal.
pub type Dart = (VertexIdx, VertexIdx);

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeometryError {
    #[error("graph is not bipartite: edge {0}-{1} closes an odd cycle")]
    NotBipartite(u64, u64),
    #[error("edges {0:?} and {1:?} intersect away from a shared endpoint")]
    EdgeCrossing((u64, u64), (u64, u64)),
    #[error("vertex {0} lies on edge {1:?}")]
    VertexOnEdge(u64, (u64, u64)),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(u64, u64),
    #[error("edge {0}-{1} references an unknown vertex")]
    DanglingEndpoint(u64, u64),
    #[error("self-loop at vertex {0}")]
    SelfLoop(u64),
    #[error("duplicate vertex id {0}")]
    DuplicateId(u64),
    #[error("vertices {0} and {1} share coordinates")]
    DuplicateCoordinates(u64, u64),
    #[error("white anchor {0} is not a vertex")]
    UnknownAnchor(u64),
    #[error("cannot parse coordinate {0:?}")]
    BadCoordinate(String),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("face {0} is not a cell")]
    UnknownCell(usize),
    #[error("embedding invariant violated: {0}")]
    Invariant(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Color {
    Black,
    White,
}

impl Color {
    pub fn flipped(self) -> Color {
        match self {
            Color::Black => Color::White,
            Color::White => Color::Black,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Point {
    pub x: BigRational,
    pub y: BigRational,
}

impl Point {
    pub fn new(x: BigRational, y: BigRational) -> Self {
        Point { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        Point::new(BigRational::from_integer(x.into()), BigRational::from_integer(y.into()))
    }

    fn midpoint(&self, other: &Point) -> Point {
        let two = BigRational::from_integer(BigInt::from(2));
        Point::new((&self.x + &other.x) / &two, (&self.y + &other.y) / &two)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Parses `"3"`, `"-1.25"` or `"7/4"` into an exact rational.
pub fn parse_rational(s: &str) -> Result<BigRational, GeometryError> {
    let bad = || GeometryError::BadCoordinate(s.to_string());
    let t = s.trim();
    if t.contains('/') {
        return BigRational::from_str(t).map_err(|_| bad());
    }
    let (neg, body) = match t.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, t.strip_prefix('+').unwrap_or(t)),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits = format!("{int_part}{frac_part}");
    let numer = BigInt::from_str(if digits.is_empty() { "0" } else { &digits }).map_err(|_| bad())?;
    let denom = num::pow(BigInt::from(10), frac_part.len());
    let value = BigRational::new(numer, denom);
    Ok(if neg { -value } else { value })
}

/// Renders a rational the way [`parse_rational`] reads it back.
pub fn format_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn cross(o: &Point, a: &Point, b: &Point) -> BigRational {
    (&a.x - &o.x) * (&b.y - &o.y) - (&a.y - &o.y) * (&b.x - &o.x)
}

fn orientation(o: &Point, a: &Point, b: &Point) -> Ordering {
    cross(o, a, b).cmp(&BigRational::zero())
}

/// `p` lies on the closed segment `ab`, given that `a, b, p` are collinear.
fn within_box(a: &Point, b: &Point, p: &Point) -> bool {
    let (lx, hx) = if a.x <= b.x { (&a.x, &b.x) } else { (&b.x, &a.x) };
    let (ly, hy) = if a.y <= b.y { (&a.y, &b.y) } else { (&b.y, &a.y) };
    lx <= &p.x && &p.x <= hx && ly <= &p.y && &p.y <= hy
}

/// Closed segments `ab` and `cd` share at least one point.
fn segments_touch(a: &Point, b: &Point, c: &Point, d: &Point) -> bool {
    let o1 = orientation(a, b, c);
    let o2 = orientation(a, b, d);
    let o3 = orientation(c, d, a);
    let o4 = orientation(c, d, b);
    if o1 != o2
        && o3 != o4
        && o1 != Ordering::Equal
        && o2 != Ordering::Equal
        && o3 != Ordering::Equal
        && o4 != Ordering::Equal
    {
        return true;
    }
    (o1 == Ordering::Equal && within_box(a, b, c))
        || (o2 == Ordering::Equal && within_box(a, b, d))
        || (o3 == Ordering::Equal && within_box(c, d, a))
        || (o4 == Ordering::Equal && within_box(c, d, b))
}

/// Counterclockwise angular order of direction vectors, starting at +x.
fn angle_cmp(o: &Point, a: &Point, b: &Point) -> Ordering {
    let zero = BigRational::zero();
    let half = |p: &Point| {
        let dy = &p.y - &o.y;
        let dx = &p.x - &o.x;
        if dy > zero || (dy.is_zero() && dx > zero) {
            0
        } else {
            1
        }
    };
    half(a).cmp(&half(b)).then_with(|| BigRational::zero().cmp(&cross(o, a, b)))
}

/// Twice the shoelace signed area of the closed polygon through `pts`.
pub fn twice_signed_area<'a>(pts: impl IntoIterator<Item = &'a Point>) -> BigRational {
    let pts: Vec<&Point> = pts.into_iter().collect();
    let mut acc = BigRational::zero();
    for i in 0..pts.len() {
        let p = pts[i];
        let q = pts[(i + 1) % pts.len()];
        acc += &p.x * &q.y - &q.x * &p.y;
    }
    acc
}

/// Even-odd test for `p` against the closed polyline through `poly`.
/// Points on the boundary are reported as outside.
pub fn polygon_contains(poly: &[&Point], p: &Point) -> bool {
    let n = poly.len();
    let mut inside = false;
    for i in 0..n {
        let a = poly[i];
        let b = poly[(i + 1) % n];
        if orientation(a, b, p) == Ordering::Equal && within_box(a, b, p) {
            return false;
        }
        if (a.y > p.y) != (b.y > p.y) {
            let x = &a.x + (&p.y - &a.y) * (&b.x - &a.x) / (&b.y - &a.y);
            if p.x < x {
                inside = !inside;
            }
        }
    }
    inside
}

/// Input vertex before validation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexSpec {
    pub id: u64,
    pub point: Point,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vertex {
    pub id: u64,
    pub point: Point,
    pub color: Color,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub id: usize,
    /// One closed walk per boundary component. Darts keep the face on their left.
    pub boundary_walks: Vec<Vec<Dart>>,
    /// Isolated vertices lying inside the face.
    pub isolated: Vec<VertexIdx>,
    pub is_outer: bool,
}

impl Face {
    pub fn walk_len(&self) -> usize {
        self.boundary_walks.iter().map(Vec::len).sum()
    }
}

/// An inner face bounded by a simple cycle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell {
    pub face_id: usize,
    /// Boundary vertices in clockwise order.
    pub cycle: Vec<VertexIdx>,
    pub vertex_set: FixedBitSet,
    pub edge_set: BTreeSet<Edge>,
}

impl Cell {
    pub fn len(&self) -> usize {
        self.cycle.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cycle.is_empty()
    }

    /// Clockwise darts around the cell.
    pub fn darts(&self) -> impl Iterator<Item = Dart> + '_ {
        let n = self.cycle.len();
        (0..n).map(move |i| (self.cycle[i], self.cycle[(i + 1) % n]))
    }

    pub fn shares_vertex(&self, other: &Cell) -> bool {
        !self.vertex_set.is_disjoint(&other.vertex_set)
    }

    pub fn shares_edge(&self, other: &Cell) -> bool {
        self.edge_set.intersection(&other.edge_set).next().is_some()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IntersectMode {
    ShareVertex,
    ShareEdge,
}

#[derive(Clone, Debug)]
pub struct PlaneGraph {
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
    rotation: Vec<Vec<VertexIdx>>,
    faces: Vec<Face>,
    outer_face: usize,
    cells: Vec<Cell>,
    dart_face: HashMap<Dart, usize>,
    components: usize,
    anchor: VertexIdx,
}

impl PlaneGraph {
    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn color(&self, v: VertexIdx) -> Color {
        self.vertices[v].color
    }

    pub fn point(&self, v: VertexIdx) -> &Point {
        &self.vertices[v].point
    }

    pub fn id(&self, v: VertexIdx) -> u64 {
        self.vertices[v].id
    }

    pub fn index_of(&self, id: u64) -> Option<VertexIdx> {
        self.vertices.binary_search_by_key(&id, |v| v.id).ok()
    }

    /// Neighbours of `v` in counterclockwise order.
    pub fn rotation(&self, v: VertexIdx) -> &[VertexIdx] {
        &self.rotation[v]
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn outer_face_id(&self) -> usize {
        self.outer_face
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn cell(&self, face_id: usize) -> Option<&Cell> {
        self.cells.iter().find(|c| c.face_id == face_id)
    }

    /// Face to the left of a dart.
    pub fn face_of_dart(&self, dart: Dart) -> Option<usize> {
        self.dart_face.get(&dart).copied()
    }

    pub fn component_count(&self) -> usize {
        self.components
    }

    pub fn is_connected(&self) -> bool {
        self.components <= 1
    }

    pub fn white_anchor(&self) -> u64 {
        self.vertices[self.anchor].id
    }

    pub fn has_edge(&self, a: VertexIdx, b: VertexIdx) -> bool {
        let e = if a < b { (a, b) } else { (b, a) };
        self.edges.binary_search(&e).is_ok()
    }

    /// Abstract graph with vertex ids as labels.
    pub fn to_graph(&self) -> Graph {
        let mut g = Graph::new(self.vertices.iter().map(|v| v.id.to_string()).collect());
        for &(a, b) in &self.edges {
            g.add_edge(a, b);
        }
        g
    }

    /// Same embedding with Black and White exchanged everywhere.
    pub fn swap_colors(&self) -> PlaneGraph {
        let mut g = self.clone();
        for v in &mut g.vertices {
            v.color = v.color.flipped();
        }
        if let Some(other) = g.rotation[g.anchor].first() {
            g.anchor = *other;
        }
        g
    }
}

pub fn build_plane_graph(
    vertices: Vec<VertexSpec>,
    edges: &[(u64, u64)],
    white_anchor: Option<u64>,
) -> Result<PlaneGraph, GeometryError> {
    let mut specs = vertices;
    specs.sort_by_key(|v| v.id);
    for w in specs.windows(2) {
        if w[0].id == w[1].id {
            return Err(GeometryError::DuplicateId(w[0].id));
        }
    }
    {
        let mut seen: HashMap<&Point, u64> = HashMap::new();
        for v in &specs {
            if let Some(prev) = seen.insert(&v.point, v.id) {
                return Err(GeometryError::DuplicateCoordinates(prev, v.id));
            }
        }
    }
    let index: HashMap<u64, usize> = specs.iter().enumerate().map(|(i, v)| (v.id, i)).collect();
    let n = specs.len();

    let mut edge_set = BTreeSet::new();
    for &(a, b) in edges {
        let (Some(&ia), Some(&ib)) = (index.get(&a), index.get(&b)) else {
            return Err(GeometryError::DanglingEndpoint(a, b));
        };
        if ia == ib {
            return Err(GeometryError::SelfLoop(a));
        }
        let e = if ia < ib { (ia, ib) } else { (ib, ia) };
        if !edge_set.insert(e) {
            return Err(GeometryError::DuplicateEdge(a, b));
        }
    }
    let edge_list: Vec<Edge> = edge_set.into_iter().collect();
    let ids = |e: Edge| (specs[e.0].id, specs[e.1].id);

    // Pairwise segment validation.
    for (i, &e) in edge_list.iter().enumerate() {
        let (p, q) = (&specs[e.0].point, &specs[e.1].point);
        for &f in &edge_list[i + 1..] {
            let (r, s) = (&specs[f.0].point, &specs[f.1].point);
            let shared = [e.0, e.1].iter().filter(|x| **x == f.0 || **x == f.1).count();
            let bad = if shared == 0 {
                segments_touch(p, q, r, s)
            } else {
                let (apex, e_far, f_far) = if e.0 == f.0 {
                    (p, q, s)
                } else if e.0 == f.1 {
                    (p, q, r)
                } else if e.1 == f.0 {
                    (q, p, s)
                } else {
                    (q, p, r)
                };
                orientation(apex, e_far, f_far) == Ordering::Equal
                    && (&e_far.x - &apex.x) * (&f_far.x - &apex.x) + (&e_far.y - &apex.y) * (&f_far.y - &apex.y)
                        > BigRational::zero()
            };
            if bad {
                return Err(GeometryError::EdgeCrossing(ids(e), ids(f)));
            }
        }
        for (v, spec) in specs.iter().enumerate() {
            if v != e.0
                && v != e.1
                && orientation(p, q, &spec.point) == Ordering::Equal
                && within_box(p, q, &spec.point)
            {
                return Err(GeometryError::VertexOnEdge(spec.id, ids(e)));
            }
        }
    }

    let mut adj = vec![Vec::new(); n];
    for &(a, b) in &edge_list {
        adj[a].push(b);
        adj[b].push(a);
    }

    // Two-colouring, one BFS per component.
    let anchor = match white_anchor {
        Some(id) => *index.get(&id).ok_or(GeometryError::UnknownAnchor(id))?,
        None => 0,
    };
    let mut color: Vec<Option<Color>> = vec![None; n];
    let mut comp_of = vec![usize::MAX; n];
    let mut components = 0;
    let starts = std::iter::once(anchor).chain(0..n);
    for s in starts {
        if n == 0 || color[s].is_some() {
            continue;
        }
        color[s] = Some(Color::White);
        comp_of[s] = components;
        let mut queue = std::collections::VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            let cv = color[v].unwrap();
            for &w in &adj[v] {
                match color[w] {
                    None => {
                        color[w] = Some(cv.flipped());
                        comp_of[w] = components;
                        queue.push_back(w);
                    }
                    Some(cw) if cw == cv => {
                        return Err(GeometryError::NotBipartite(specs[v].id, specs[w].id));
                    }
                    _ => {}
                }
            }
        }
        components += 1;
    }

    let vertices: Vec<Vertex> =
        specs.into_iter().zip(color).map(|(s, c)| Vertex { id: s.id, point: s.point, color: c.unwrap() }).collect();

    let mut rotation = adj;
    for (v, nbrs) in rotation.iter_mut().enumerate() {
        let o = &vertices[v].point;
        nbrs.sort_by(|&a, &b| angle_cmp(o, &vertices[a].point, &vertices[b].point));
    }

    // Face walks: after arriving at v from u, leave along the neighbour that
    // follows u clockwise around v.
    let mut darts: Vec<Dart> = edge_list.iter().flat_map(|&(a, b)| [(a, b), (b, a)]).collect();
    darts.sort_unstable();
    let mut walk_of: HashMap<Dart, usize> = HashMap::new();
    let mut walks: Vec<Vec<Dart>> = Vec::new();
    for &start in &darts {
        if walk_of.contains_key(&start) {
            continue;
        }
        let id = walks.len();
        let mut walk = Vec::new();
        let mut d = start;
        loop {
            walk_of.insert(d, id);
            walk.push(d);
            let (u, v) = d;
            let rot = &rotation[v];
            let pos = rot.iter().position(|&x| x == u).expect("rotation contains neighbour");
            let w = rot[(pos + rot.len() - 1) % rot.len()];
            d = (v, w);
            if d == start {
                break;
            }
        }
        walks.push(walk);
    }

    let areas: Vec<BigRational> =
        walks.iter().map(|w| twice_signed_area(w.iter().map(|d| &vertices[d.0].point))).collect();

    // Each component with edges has exactly one walk of non-positive area.
    let mut outer_walk_of_comp: Vec<Option<usize>> = vec![None; components];
    for (w, walk) in walks.iter().enumerate() {
        if !areas[w].is_positive() {
            let c = comp_of[walk[0].0];
            if outer_walk_of_comp[c].replace(w).is_some() {
                return Err(GeometryError::Invariant(format!("component {c} has two outer walks")));
            }
        }
    }

    let inner_walks: Vec<usize> = (0..walks.len()).filter(|&w| areas[w].is_positive()).collect();
    let mut faces = vec![Face { id: 0, boundary_walks: Vec::new(), isolated: Vec::new(), is_outer: true }];
    let mut face_of_walk: HashMap<usize, usize> = HashMap::new();
    for &w in &inner_walks {
        face_of_walk.insert(w, faces.len());
        faces.push(Face {
            id: faces.len(),
            boundary_walks: vec![walks[w].clone()],
            isolated: Vec::new(),
            is_outer: false,
        });
    }

    // Place every component's outer boundary inside the smallest inner face
    // of another component that contains it, or on the unbounded face.
    let mut first_vertex = vec![usize::MAX; components];
    for v in (0..n).rev() {
        first_vertex[comp_of[v]] = v;
    }
    for c in 0..components {
        let p = &vertices[first_vertex[c]].point;
        let mut best: Option<usize> = None;
        for &w in &inner_walks {
            if comp_of[walks[w][0].0] == c {
                continue;
            }
            let poly: Vec<&Point> = walks[w].iter().map(|d| &vertices[d.0].point).collect();
            if polygon_contains(&poly, p) && best.is_none_or(|b| areas[w] < areas[b]) {
                best = Some(w);
            }
        }
        let target = best.map_or(0, |w| face_of_walk[&w]);
        match outer_walk_of_comp[c] {
            Some(w) => faces[target].boundary_walks.push(walks[w].clone()),
            None => faces[target].isolated.push(first_vertex[c]),
        }
    }

    let mut dart_face = HashMap::new();
    for face in &faces {
        for walk in &face.boundary_walks {
            for &d in walk {
                dart_face.insert(d, face.id);
            }
        }
    }

    // Euler: V - E + F = 1 + C.
    if n > 0 && n + faces.len() != edge_list.len() + 1 + components {
        return Err(GeometryError::Invariant(format!(
            "Euler relation fails: V={n} E={} F={} C={components}",
            edge_list.len(),
            faces.len()
        )));
    }

    let mut cells = Vec::new();
    for face in &faces[1..] {
        if face.boundary_walks.len() != 1 || !face.isolated.is_empty() {
            continue;
        }
        let walk = &face.boundary_walks[0];
        let mut seen = FixedBitSet::with_capacity(n);
        let simple = walk.iter().all(|d| !seen.put(d.0));
        if !simple {
            continue;
        }
        let mut cycle: Vec<VertexIdx> = walk.iter().map(|d| d.0).collect();
        cycle.reverse();
        let edge_set = walk.iter().map(|&(a, b)| if a < b { (a, b) } else { (b, a) }).collect();
        cells.push(Cell { face_id: face.id, cycle, vertex_set: seen, edge_set });
    }

    Ok(PlaneGraph { vertices, edges: edge_list, rotation, faces, outer_face: 0, cells, dart_face, components, anchor })
}

/// Inner faces whose boundary is a cycle, each oriented clockwise.
pub fn cells(g: &PlaneGraph) -> Vec<Cell> {
    g.cells.clone()
}

/// One dual vertex per face (index = face id), one dual edge per primal edge.
pub fn geometric_dual(g: &PlaneGraph) -> Result<Multigraph, GeometryError> {
    if !g.is_connected() {
        return Err(GeometryError::Disconnected);
    }
    let edges = g
        .edges
        .iter()
        .map(|&(a, b)| {
            let f = g.dart_face[&(a, b)];
            let h = g.dart_face[&(b, a)];
            (f.min(h), f.max(h))
        })
        .collect();
    Ok(Multigraph { vertex_count: g.faces.len().max(1), edges })
}

/// Simple graph on the chosen cells (labels `f<face id>`), adjacency decided by `mode`.
pub fn cell_intersection_graph(
    g: &PlaneGraph,
    face_ids: &[usize],
    mode: IntersectMode,
) -> Result<Graph, GeometryError> {
    let chosen: Vec<&Cell> =
        face_ids.iter().map(|&id| g.cell(id).ok_or(GeometryError::UnknownCell(id))).collect::<Result<_, _>>()?;
    let mut out = Graph::new(face_ids.iter().map(|id| format!("f{id}")).collect());
    for i in 0..chosen.len() {
        for j in i + 1..chosen.len() {
            let hit = match mode {
                IntersectMode::ShareVertex => chosen[i].shares_vertex(chosen[j]),
                IntersectMode::ShareEdge => chosen[i].shares_edge(chosen[j]),
            };
            if hit {
                out.add_edge(i, j);
            }
        }
    }
    Ok(out)
}

/// Midpoint of an edge, used for interior tests on chords.
pub(crate) fn edge_midpoint(g: &PlaneGraph, e: Edge) -> Point {
    g.point(e.0).midpoint(g.point(e.1))
}
