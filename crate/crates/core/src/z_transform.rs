//! The Z-transformation digraph of a plane bipartite graph, the matching
//! lattice it is the Hasse diagram of, hypercube sublattices generated by
//! disjoint alternating cells, meet-irreducible cells and cut vertices.

use std::collections::HashMap;
use std::fmt::Write;

use thiserror::Error;

use crate::geometry::PlaneGraph;
use crate::graph::{dot_quote, Graph};
use crate::matchings::{cell_status, enumerate_perfect_matchings, CellStatus, Matching, MatchingError};
use crate::order::{is_distributive, Lattice, OrderError, Poset};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ZError {
    #[error("graph has no perfect matching")]
    NoPerfectMatching,
    #[error("Z-digraph has a directed cycle")]
    CyclicOrder,
    #[error("matching order is not a lattice: {0}")]
    NotALattice(String),
    #[error("matching lattice is not distributive")]
    NotDistributive,
    #[error("Hasse diagram differs from the Z-digraph: {0}")]
    HasseMismatch(String),
    #[error("matching is not a perfect matching of the graph")]
    UnknownMatching,
    #[error("face {0} is not a cell")]
    UnknownCell(usize),
    #[error("cell f{0} is not proper for the matching")]
    NotProperCell(usize),
    #[error("cells f{0} and f{1} share a vertex")]
    CellsNotDisjoint(usize, usize),
    #[error("cell f{0} is not alternating for the matching")]
    CellNotAlternating(usize),
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error(transparent)]
    Matching(#[from] MatchingError),
    #[error(transparent)]
    Order(#[from] OrderError),
}

/// Arc `tail → head`: the cell is proper for `tail` and `head = tail ⊕ cell`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ZArc {
    pub tail: usize,
    pub head: usize,
    /// Face id of the cell.
    pub cell: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZDigraph {
    pub nodes: Vec<Matching>,
    pub arcs: Vec<ZArc>,
}

impl ZDigraph {
    pub fn index_of(&self, m: &Matching) -> Option<usize> {
        self.nodes.binary_search(m).ok()
    }

    /// `Z(G)`: the underlying undirected graph.
    pub fn underlying_graph(&self) -> Graph {
        let mut g = Graph::new((0..self.nodes.len()).map(node_label).collect());
        for a in &self.arcs {
            g.add_edge(a.tail, a.head);
        }
        g
    }

    pub fn to_dot(&self, g: &PlaneGraph) -> String {
        let mut s = String::from("digraph Z {\n  rankdir=TB;\n");
        for (i, m) in self.nodes.iter().enumerate() {
            let _ = writeln!(s, "  m{i} [label={}];", dot_quote(&matching_text(g, m)));
        }
        for a in &self.arcs {
            let _ = writeln!(s, "  m{} -> m{} [label=\"f{}\"];", a.tail, a.head, a.cell);
        }
        s.push_str("}\n");
        s
    }
}

pub(crate) fn node_label(i: usize) -> String {
    format!("M{i}")
}

/// `"0-1 2-3"` style rendering with vertex ids.
pub fn matching_text(g: &PlaneGraph, m: &Matching) -> String {
    m.id_pairs(g).iter().map(|[a, b]| format!("{a}-{b}")).collect::<Vec<_>>().join(" ")
}

pub fn build_z_digraph(g: &PlaneGraph) -> Result<ZDigraph, ZError> {
    let nodes = enumerate_perfect_matchings(g);
    if nodes.is_empty() {
        return Err(ZError::NoPerfectMatching);
    }
    let index: HashMap<&Matching, usize> = nodes.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut arcs = Vec::new();
    for (tail, m) in nodes.iter().enumerate() {
        for cell in g.cells() {
            if cell_status(g, m, cell) == CellStatus::Proper {
                let flipped = m.symmetric_difference(&cell.edge_set);
                let head = *index
                    .get(&flipped)
                    .ok_or_else(|| ZError::Invariant("flip left the set of perfect matchings".into()))?;
                arcs.push(ZArc { tail, head, cell: cell.face_id });
            }
        }
    }
    arcs.sort_unstable();
    Ok(ZDigraph { nodes, arcs })
}

/// `M₁ ≤ M₂` iff the digraph has a directed path from `M₂` to `M₁`.
pub fn matching_order(z: &ZDigraph) -> Result<Poset, ZError> {
    let labels = (0..z.nodes.len()).map(node_label).collect();
    let relation: Vec<(usize, usize)> = z.arcs.iter().map(|a| (a.head, a.tail)).collect();
    Poset::from_relation(labels, &relation).map_err(|e| match e {
        OrderError::Cyclic => ZError::CyclicOrder,
        other => ZError::Order(other),
    })
}

/// Vertex ordering of the matching lattice follows [`ZDigraph::nodes`].
pub fn matching_lattice(g: &PlaneGraph) -> Result<Lattice, ZError> {
    Ok(MatchingLattice::build(g)?.lattice)
}

pub fn extremal_matchings(g: &PlaneGraph) -> Result<(Matching, Matching), ZError> {
    let ml = MatchingLattice::build(g)?;
    let (top, bottom) = ml.extremal()?;
    Ok((ml.digraph.nodes[top].clone(), ml.digraph.nodes[bottom].clone()))
}

pub fn hypercube_of(g: &PlaneGraph, m: &Matching, face_ids: &[usize]) -> Result<HypercubeSublattice, ZError> {
    let ml = MatchingLattice::build(g)?;
    let node = ml.node(m)?;
    let cells = face_ids.iter().map(|&f| ml.cell_index(f)).collect::<Result<Vec<_>, _>>()?;
    ml.hypercube(node, &cells)
}

/// Face ids of the meet-irreducible cells with respect to `m`.
pub fn meet_irreducible_cells(g: &PlaneGraph, m: &Matching) -> Result<Vec<usize>, ZError> {
    let ml = MatchingLattice::build(g)?;
    let node = ml.node(m)?;
    Ok(ml.meet_irreducible_cells(node).into_iter().map(|c| g.cells()[c].face_id).collect())
}

pub fn mict_check(g: &PlaneGraph, m: &Matching, face_id: usize) -> Result<MictReport, ZError> {
    let ml = MatchingLattice::build(g)?;
    let node = ml.node(m)?;
    ml.mict(node, ml.cell_index(face_id)?)
}

pub fn z_cut_vertices(g: &PlaneGraph) -> Result<Vec<Matching>, ZError> {
    let ml = MatchingLattice::build(g)?;
    Ok(ml.z_cut_vertices()?.into_iter().map(|i| ml.digraph.nodes[i].clone()).collect())
}

/// Where the anchor matching sits inside a hypercube.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AnchorPosition {
    Top,
    Bottom,
    Interior,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HypercubeSublattice {
    pub anchor: usize,
    /// Indices into `PlaneGraph::cells()`.
    pub generators: Vec<usize>,
    /// `corners[mask]` is the node reached by flipping the generators in `mask`.
    pub corners: Vec<usize>,
    pub position: AnchorPosition,
}

impl HypercubeSublattice {
    pub fn dimension(&self) -> usize {
        self.generators.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MictReport {
    pub matching: usize,
    /// Face id of the proper cell under test.
    pub cell: usize,
    /// No improper cells: the matching is the top of the lattice.
    pub case1: bool,
    /// `M ⊕ f` is meet-irreducible.
    pub cond_a: bool,
    /// `f` meets every improper cell.
    pub cond_b: bool,
    /// No other corner of the improper-cell hypercube has `f` proper.
    pub cond_c: bool,
}

impl MictReport {
    pub fn is_consistent(&self) -> bool {
        if self.case1 {
            self.cond_a
        } else {
            self.cond_a == self.cond_b && self.cond_b == self.cond_c
        }
    }
}

/// Everything derived from one plane graph: the digraph, the per-node cell
/// classification and the validated lattice.
#[derive(Clone, Debug)]
pub struct MatchingLattice<'g> {
    graph: &'g PlaneGraph,
    digraph: ZDigraph,
    status: Vec<Vec<CellStatus>>,
    lattice: Lattice,
}

impl<'g> MatchingLattice<'g> {
    /// Builds `Z⃗(G)`, the order on matchings, and checks that the order is a
    /// distributive lattice whose Hasse diagram is exactly the digraph.
    pub fn build(g: &'g PlaneGraph) -> Result<Self, ZError> {
        let digraph = build_z_digraph(g)?;
        let order = matching_order(&digraph)?;
        let lattice = Lattice::from_poset(order).map_err(|e| match e {
            OrderError::NotALattice(a, b) => ZError::NotALattice(format!("{a} and {b}")),
            other => ZError::Order(other),
        })?;
        if !is_distributive(&lattice) {
            return Err(ZError::NotDistributive);
        }
        let mut hasse: Vec<(usize, usize)> = lattice.poset().covers();
        let mut arcs: Vec<(usize, usize)> = digraph.arcs.iter().map(|a| (a.head, a.tail)).collect();
        hasse.sort_unstable();
        arcs.sort_unstable();
        if hasse != arcs {
            return Err(ZError::HasseMismatch(format!("{} cover pairs vs {} arcs", hasse.len(), arcs.len())));
        }
        let status = digraph.nodes.iter().map(|m| g.cells().iter().map(|c| cell_status(g, m, c)).collect()).collect();
        Ok(MatchingLattice { graph: g, digraph, status, lattice })
    }

    pub fn graph(&self) -> &PlaneGraph {
        self.graph
    }

    pub fn digraph(&self) -> &ZDigraph {
        &self.digraph
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn len(&self) -> usize {
        self.digraph.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digraph.nodes.is_empty()
    }

    pub fn matching(&self, node: usize) -> &Matching {
        &self.digraph.nodes[node]
    }

    pub fn node(&self, m: &Matching) -> Result<usize, ZError> {
        self.digraph.index_of(m).ok_or(ZError::UnknownMatching)
    }

    pub fn cell_index(&self, face_id: usize) -> Result<usize, ZError> {
        self.graph.cells().iter().position(|c| c.face_id == face_id).ok_or(ZError::UnknownCell(face_id))
    }

    pub fn status(&self, node: usize, cell: usize) -> CellStatus {
        self.status[node][cell]
    }

    fn cells_with(&self, node: usize, want: CellStatus) -> Vec<usize> {
        (0..self.graph.cells().len()).filter(|&c| self.status[node][c] == want).collect()
    }

    pub fn proper_cells(&self, node: usize) -> Vec<usize> {
        self.cells_with(node, CellStatus::Proper)
    }

    pub fn improper_cells(&self, node: usize) -> Vec<usize> {
        self.cells_with(node, CellStatus::Improper)
    }

    fn shares_vertex(&self, a: usize, b: usize) -> bool {
        let cells = self.graph.cells();
        cells[a].shares_vertex(&cells[b])
    }

    /// Node reached by flipping one alternating cell.
    pub fn flip_node(&self, node: usize, cell: usize) -> Result<usize, ZError> {
        let c = &self.graph.cells()[cell];
        if !self.status[node][cell].is_alternating() {
            return Err(ZError::CellNotAlternating(c.face_id));
        }
        self.node(&self.digraph.nodes[node].symmetric_difference(&c.edge_set))
    }

    /// `(top, bottom)`: the unique matchings without improper (resp. proper)
    /// cells, checked against the lattice maximum and minimum.
    pub fn extremal(&self) -> Result<(usize, usize), ZError> {
        let tops: Vec<usize> = (0..self.len()).filter(|&i| self.improper_cells(i).is_empty()).collect();
        let bottoms: Vec<usize> = (0..self.len()).filter(|&i| self.proper_cells(i).is_empty()).collect();
        if tops != [self.lattice.top()] || bottoms != [self.lattice.bottom()] {
            return Err(ZError::Invariant(format!(
                "extremal matchings {tops:?}/{bottoms:?} disagree with lattice top/bottom"
            )));
        }
        Ok((tops[0], bottoms[0]))
    }

    /// Flips every subset of pairwise disjoint alternating cells of `node`
    /// and checks the corners form a Boolean sublattice of dimension
    /// `cells.len()`.
    pub fn hypercube(&self, node: usize, cells: &[usize]) -> Result<HypercubeSublattice, ZError> {
        let face = |c: usize| self.graph.cells()[c].face_id;
        for &c in cells {
            if !self.status[node][c].is_alternating() {
                return Err(ZError::CellNotAlternating(face(c)));
            }
        }
        for (i, &a) in cells.iter().enumerate() {
            for &b in &cells[i + 1..] {
                if a == b || self.shares_vertex(a, b) {
                    return Err(ZError::CellsNotDisjoint(face(a), face(b)));
                }
            }
        }
        let k = cells.len();
        let m = &self.digraph.nodes[node];
        let mut corners = Vec::with_capacity(1 << k);
        for mask in 0usize..1 << k {
            let mut flipped = std::collections::BTreeSet::new();
            for (i, &c) in cells.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    flipped.extend(self.graph.cells()[c].edge_set.iter().copied());
                }
            }
            let corner = m.symmetric_difference(&flipped);
            let idx = self
                .node(&corner)
                .map_err(|_| ZError::Invariant(format!("hypercube corner {mask:b} is not a perfect matching")))?;
            corners.push(idx);
        }
        // Flipping a proper cell moves down, an improper one moves up.
        let improper: Vec<bool> = cells.iter().map(|&c| self.status[node][c] == CellStatus::Improper).collect();
        for s in 0usize..1 << k {
            for t in 0usize..1 << k {
                let expected = (0..k).all(|i| {
                    let (si, ti) = (s >> i & 1 == 1, t >> i & 1 == 1);
                    if improper[i] {
                        !si || ti
                    } else {
                        !ti || si
                    }
                });
                if self.lattice.leq(corners[s], corners[t]) != expected {
                    return Err(ZError::Invariant(format!(
                        "hypercube corners {s:b} and {t:b} are ordered unexpectedly"
                    )));
                }
            }
        }
        let position = if improper.iter().all(|&b| b) {
            AnchorPosition::Bottom
        } else if improper.iter().all(|&b| !b) {
            AnchorPosition::Top
        } else {
            AnchorPosition::Interior
        };
        Ok(HypercubeSublattice { anchor: node, generators: cells.to_vec(), corners, position })
    }

    /// Proper cells `f` of `node` such that `node ⊕ f` has exactly one upper
    /// cover, i.e. exactly one improper cell.
    pub fn meet_irreducible_cells(&self, node: usize) -> Vec<usize> {
        self.proper_cells(node)
            .into_iter()
            .filter(|&c| {
                let target = self.flip_node(node, c).expect("proper cells are alternating");
                self.improper_cells(target).len() == 1
            })
            .collect()
    }

    /// Evaluates the three characterisations of a meet-irreducible cell and
    /// fails if they disagree.
    pub fn mict(&self, node: usize, cell: usize) -> Result<MictReport, ZError> {
        let face = self.graph.cells()[cell].face_id;
        if self.status[node][cell] != CellStatus::Proper {
            return Err(ZError::NotProperCell(face));
        }
        let improper = self.improper_cells(node);
        let target = self.flip_node(node, cell)?;
        let cond_a = self.lattice.poset().upper_covers(target).len() == 1;
        let cond_b = improper.iter().all(|&c| self.shares_vertex(c, cell));
        let cube = self.hypercube(node, &improper)?;
        let cond_c = cube.corners[1..].iter().all(|&corner| self.status[corner][cell] != CellStatus::Proper);
        let report = MictReport { matching: node, cell: face, case1: improper.is_empty(), cond_a, cond_b, cond_c };
        if !report.is_consistent() {
            return Err(ZError::Invariant(format!("meet-irreducible cell conditions disagree: {report:?}")));
        }
        Ok(report)
    }

    /// Both proper and improper cells exist and each proper cell meets each
    /// improper one.
    pub fn cut_condition(&self, node: usize) -> bool {
        let proper = self.proper_cells(node);
        let improper = self.improper_cells(node);
        !proper.is_empty()
            && !improper.is_empty()
            && proper.iter().all(|&p| improper.iter().all(|&q| self.shares_vertex(p, q)))
    }

    /// Articulation points of `Z(G)`, found by deleting each vertex in turn.
    pub fn articulation_points(&self) -> Vec<usize> {
        let z = self.digraph.underlying_graph();
        let base = z.components().len();
        (0..z.vertex_count())
            .filter(|&v| {
                let mut h = z.clone();
                let nbrs: Vec<usize> = h.neighbors(v).collect();
                for w in nbrs {
                    h.remove_edge(v, w);
                }
                // v itself is now an isolated component.
                h.components().len() > base + 1
            })
            .collect()
    }

    /// Articulation points of `Z(G)`, cross-checked against [`Self::cut_condition`].
    pub fn z_cut_vertices(&self) -> Result<Vec<usize>, ZError> {
        let cuts = self.articulation_points();
        let by_cells: Vec<usize> = (0..self.len()).filter(|&i| self.cut_condition(i)).collect();
        if cuts != by_cells {
            return Err(ZError::Invariant(format!(
                "cut vertices {cuts:?} differ from the cell condition {by_cells:?}"
            )));
        }
        Ok(cuts)
    }

    /// Same matchings with exactly the reversed order (e.g. after swapping colours).
    pub fn is_order_dual_of(&self, other: &MatchingLattice<'_>) -> bool {
        self.digraph.nodes == other.digraph.nodes
            && (0..self.len()).all(|a| (0..self.len()).all(|b| self.lattice.leq(a, b) == other.lattice.leq(b, a)))
    }
}
