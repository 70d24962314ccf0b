//! Perfect matchings, allowed edges, (weak) elementarity and the
//! proper/improper classification of alternating cells.

use std::collections::BTreeSet;

use fixedbitset::FixedBitSet;
use thiserror::Error;

use crate::geometry::{edge_midpoint, polygon_contains, Cell, Color, Edge, PlaneGraph, Point, VertexIdx};

/// Cycle enumeration for weak elementarity is exhaustive; refuse beyond this.
pub const WEAK_ELEMENTARY_MAX_VERTICES: usize = 24;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatchingError {
    #[error("edge set is not a perfect matching of the graph")]
    NotAPerfectMatching,
    #[error("cell f{0} is not alternating for the matching")]
    CellNotAlternating(usize),
    #[error("face {0} is not a cell")]
    UnknownCell(usize),
    #[error("graph has {vertices} vertices; exhaustive cycle search is limited to {limit}")]
    TooLarge { vertices: usize, limit: usize },
    #[error("graph has no perfect matching")]
    NoPerfectMatching,
}

/// Perfect matching stored as a sorted edge list.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matching {
    edges: Vec<Edge>,
}

impl Matching {
    /// Normalises edge orientation and order. Does not check the host graph.
    pub fn from_edges(edges: impl IntoIterator<Item = Edge>) -> Self {
        let mut edges: Vec<Edge> = edges.into_iter().map(|(a, b)| if a < b { (a, b) } else { (b, a) }).collect();
        edges.sort_unstable();
        edges.dedup();
        Matching { edges }
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn contains(&self, a: VertexIdx, b: VertexIdx) -> bool {
        let e = if a < b { (a, b) } else { (b, a) };
        self.edges.binary_search(&e).is_ok()
    }

    /// Checks that this is a perfect matching of `g`.
    pub fn validate(&self, g: &PlaneGraph) -> Result<(), MatchingError> {
        let mut covered = FixedBitSet::with_capacity(g.vertex_count());
        for &(a, b) in &self.edges {
            if b >= g.vertex_count() || !g.has_edge(a, b) || covered.put(a) || covered.put(b) {
                return Err(MatchingError::NotAPerfectMatching);
            }
        }
        if covered.count_ones(..) != g.vertex_count() {
            return Err(MatchingError::NotAPerfectMatching);
        }
        Ok(())
    }

    /// Symmetric difference with an edge set.
    pub fn symmetric_difference(&self, other: &BTreeSet<Edge>) -> Matching {
        let mine: BTreeSet<Edge> = self.edges.iter().copied().collect();
        Matching { edges: mine.symmetric_difference(other).copied().collect() }
    }

    /// Edge list with vertex ids instead of indices.
    pub fn id_pairs(&self, g: &PlaneGraph) -> Vec<[u64; 2]> {
        self.edges.iter().map(|&(a, b)| [g.id(a), g.id(b)]).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CellStatus {
    Proper,
    Improper,
    NotAlternating,
}

impl CellStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            CellStatus::Proper => "proper",
            CellStatus::Improper => "improper",
            CellStatus::NotAlternating => "none",
        }
    }

    pub fn is_alternating(self) -> bool {
        self != CellStatus::NotAlternating
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CellClassification {
    pub face_id: usize,
    pub status: CellStatus,
}

fn adjacency(n: usize, edges: &[Edge]) -> Vec<Vec<VertexIdx>> {
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    adj
}

/// Branches on the uncovered vertex with fewest free neighbours. `visit`
/// returns `false` to stop the search early.
fn search_matchings(
    adj: &[Vec<VertexIdx>],
    free: &mut FixedBitSet,
    stack: &mut Vec<Edge>,
    visit: &mut dyn FnMut(&[Edge]) -> bool,
) -> bool {
    let mut pick: Option<(usize, VertexIdx)> = None;
    for v in free.ones() {
        let d = adj[v].iter().filter(|&&w| free.contains(w)).count();
        if pick.is_none_or(|(best, _)| d < best) {
            pick = Some((d, v));
            if d == 0 {
                break;
            }
        }
    }
    let Some((deg, v)) = pick else {
        return visit(stack);
    };
    if deg == 0 {
        return true;
    }
    free.set(v, false);
    for &w in &adj[v] {
        if !free.contains(w) {
            continue;
        }
        free.set(w, false);
        stack.push(if v < w { (v, w) } else { (w, v) });
        let go_on = search_matchings(adj, free, stack, visit);
        stack.pop();
        free.set(w, true);
        if !go_on {
            free.set(v, true);
            return false;
        }
    }
    free.set(v, true);
    true
}

/// All perfect matchings of the graph induced on `alive`, sorted.
pub(crate) fn matchings_of(n: usize, edges: &[Edge], alive: &FixedBitSet) -> Vec<Matching> {
    let adj = adjacency(n, edges);
    let mut free = alive.clone();
    let mut out = Vec::new();
    if free.count_ones(..).is_multiple_of(2) {
        search_matchings(&adj, &mut free, &mut Vec::new(), &mut |m| {
            out.push(Matching::from_edges(m.iter().copied()));
            true
        });
    }
    out.sort();
    out
}

pub(crate) fn has_perfect_matching_on(n: usize, edges: &[Edge], alive: &FixedBitSet) -> bool {
    if alive.count_ones(..) % 2 == 1 {
        return false;
    }
    let adj = adjacency(n, edges);
    let mut free = alive.clone();
    let mut found = false;
    search_matchings(&adj, &mut free, &mut Vec::new(), &mut |_| {
        found = true;
        false
    });
    found
}

fn all_alive(n: usize) -> FixedBitSet {
    let mut s = FixedBitSet::with_capacity(n);
    s.insert_range(..);
    s
}

/// Every perfect matching of `g`, lexicographically ordered on sorted edge lists.
pub fn enumerate_perfect_matchings(g: &PlaneGraph) -> Vec<Matching> {
    matchings_of(g.vertex_count(), g.edges(), &all_alive(g.vertex_count()))
}

/// Edges lying in at least one perfect matching.
pub fn allowed_edges(g: &PlaneGraph) -> BTreeSet<Edge> {
    enumerate_perfect_matchings(g).iter().flat_map(|m| m.edges().iter().copied()).collect()
}

/// Connected, perfectly matchable, and every edge allowed; for a graph
/// given by an edge list restricted to `alive` vertices.
fn elementary_on(n: usize, edges: &[Edge], alive: &FixedBitSet) -> bool {
    if alive.count_ones(..) == 0 || !has_perfect_matching_on(n, edges, alive) {
        return false;
    }
    let adj = adjacency(n, edges);
    let start = alive.ones().next().unwrap();
    let mut seen = FixedBitSet::with_capacity(n);
    seen.insert(start);
    let mut stack = vec![start];
    while let Some(v) = stack.pop() {
        for &w in &adj[v] {
            if alive.contains(w) && !seen.put(w) {
                stack.push(w);
            }
        }
    }
    if seen != *alive {
        return false;
    }
    edges.iter().all(|&(a, b)| {
        let mut rest = alive.clone();
        rest.set(a, false);
        rest.set(b, false);
        has_perfect_matching_on(n, edges, &rest)
    })
}

pub fn is_elementary(g: &PlaneGraph) -> bool {
    g.is_connected() && elementary_on(g.vertex_count(), g.edges(), &all_alive(g.vertex_count()))
}

/// Simple cycles as vertex sequences, each reported once.
fn simple_cycles(n: usize, adj: &[Vec<VertexIdx>]) -> Vec<Vec<VertexIdx>> {
    fn extend(
        s: VertexIdx,
        adj: &[Vec<VertexIdx>],
        path: &mut Vec<VertexIdx>,
        on_path: &mut FixedBitSet,
        out: &mut Vec<Vec<VertexIdx>>,
    ) {
        let v = *path.last().unwrap();
        for &w in &adj[v] {
            if w == s && path.len() >= 3 && path[1] < *path.last().unwrap() {
                out.push(path.clone());
            } else if w > s && !on_path.contains(w) {
                on_path.insert(w);
                path.push(w);
                extend(s, adj, path, on_path, out);
                path.pop();
                on_path.set(w, false);
            }
        }
    }
    let mut out = Vec::new();
    for s in 0..n {
        let mut on_path = FixedBitSet::with_capacity(n);
        on_path.insert(s);
        extend(s, adj, &mut vec![s], &mut on_path, &mut out);
    }
    out
}

/// Every nice cycle together with its interior induces an elementary graph.
pub fn is_weakly_elementary(g: &PlaneGraph) -> Result<bool, MatchingError> {
    let n = g.vertex_count();
    if n > WEAK_ELEMENTARY_MAX_VERTICES {
        return Err(MatchingError::TooLarge { vertices: n, limit: WEAK_ELEMENTARY_MAX_VERTICES });
    }
    if !has_perfect_matching_on(n, g.edges(), &all_alive(n)) {
        return Err(MatchingError::NoPerfectMatching);
    }
    let adj = adjacency(n, g.edges());
    for cycle in simple_cycles(n, &adj) {
        let mut on_cycle = FixedBitSet::with_capacity(n);
        cycle.iter().for_each(|&v| on_cycle.insert(v));
        let mut rest = all_alive(n);
        rest.difference_with(&on_cycle);
        if !has_perfect_matching_on(n, g.edges(), &rest) {
            continue;
        }
        let poly: Vec<&Point> = cycle.iter().map(|&v| g.point(v)).collect();
        let mut closure = on_cycle.clone();
        for v in 0..n {
            if !on_cycle.contains(v) && polygon_contains(&poly, g.point(v)) {
                closure.insert(v);
            }
        }
        let k = cycle.len();
        let cycle_edges: BTreeSet<Edge> = (0..k)
            .map(|i| {
                let (a, b) = (cycle[i], cycle[(i + 1) % k]);
                (a.min(b), a.max(b))
            })
            .collect();
        let sub_edges: Vec<Edge> = g
            .edges()
            .iter()
            .copied()
            .filter(|&e| {
                closure.contains(e.0)
                    && closure.contains(e.1)
                    && (cycle_edges.contains(&e)
                        || !on_cycle.contains(e.0)
                        || !on_cycle.contains(e.1)
                        || polygon_contains(&poly, &edge_midpoint(g, e)))
            })
            .collect();
        if !elementary_on(n, &sub_edges, &closure) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Classification of a single cell; `m` is assumed to be a perfect matching.
pub fn cell_status(g: &PlaneGraph, m: &Matching, cell: &Cell) -> CellStatus {
    let mut first_matched: Option<bool> = None;
    let mut prev: Option<bool> = None;
    let mut white_to_black = false;
    for (u, v) in cell.darts() {
        let here = m.contains(u, v);
        if prev == Some(here) {
            return CellStatus::NotAlternating;
        }
        if first_matched.is_none() {
            first_matched = Some(here);
        }
        if here {
            white_to_black = g.color(u) == Color::White;
        }
        prev = Some(here);
    }
    // Even length makes the wrap-around pair differ exactly when the rest alternates.
    if prev == first_matched {
        return CellStatus::NotAlternating;
    }
    if white_to_black {
        CellStatus::Proper
    } else {
        CellStatus::Improper
    }
}

pub fn classify_cells(g: &PlaneGraph, m: &Matching) -> Result<Vec<CellClassification>, MatchingError> {
    m.validate(g)?;
    Ok(g.cells().iter().map(|c| CellClassification { face_id: c.face_id, status: cell_status(g, m, c) }).collect())
}

/// `m ⊕ E(c)`; the cell must be `m`-alternating.
pub fn flip(g: &PlaneGraph, m: &Matching, c: &Cell) -> Result<Matching, MatchingError> {
    if !cell_status(g, m, c).is_alternating() {
        return Err(MatchingError::CellNotAlternating(c.face_id));
    }
    Ok(m.symmetric_difference(&c.edge_set))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn hexagon_has_two_matchings() {
        let g = fixtures::hexagon();
        let ms = enumerate_perfect_matchings(&g);
        assert_eq!(ms.len(), 2);
        assert_eq!(allowed_edges(&g).len(), 6);
        assert!(is_elementary(&g));
        assert!(is_weakly_elementary(&g).unwrap());
        let statuses: Vec<CellStatus> = ms.iter().map(|m| classify_cells(&g, m).unwrap()[0].status).collect();
        assert!(statuses.contains(&CellStatus::Proper));
        assert!(statuses.contains(&CellStatus::Improper));
        let cell = &g.cells()[0];
        assert_eq!(flip(&g, &ms[0], cell).unwrap(), ms[1]);
        assert_eq!(flip(&g, &flip(&g, &ms[0], cell).unwrap(), cell).unwrap(), ms[0]);
    }

    #[test]
    fn proper_matching_runs_white_to_black_clockwise() {
        let g = fixtures::hexagon();
        for m in enumerate_perfect_matchings(&g) {
            let cell = &g.cells()[0];
            let expected = cell.darts().filter(|&(u, v)| m.contains(u, v)).all(|(u, _)| g.color(u) == Color::White);
            let status = cell_status(&g, &m, cell);
            assert_eq!(status == CellStatus::Proper, expected);
        }
    }

    #[test]
    fn path_has_unique_matching() {
        let g = fixtures::path(4);
        assert_eq!(enumerate_perfect_matchings(&g).len(), 1);
        let allowed = allowed_edges(&g);
        assert_eq!(allowed.into_iter().collect::<Vec<_>>(), vec![(0, 1), (2, 3)]);
        assert!(!is_elementary(&g));
    }

    #[test]
    fn odd_graph_has_no_matching() {
        let g = fixtures::path(3);
        assert!(enumerate_perfect_matchings(&g).is_empty());
        assert!(allowed_edges(&g).is_empty());
        assert_eq!(is_weakly_elementary(&g), Err(MatchingError::NoPerfectMatching));
    }

    #[test]
    fn grid_two_by_three() {
        let g = fixtures::grid(2, 3);
        let ms = enumerate_perfect_matchings(&g);
        assert_eq!(ms.len(), 3);
        assert!(is_weakly_elementary(&g).unwrap());
        let verticals = Matching::from_edges([(0, 3), (1, 4), (2, 5)]);
        assert!(ms.contains(&verticals));
        let cls = classify_cells(&g, &verticals).unwrap();
        let mut statuses: Vec<&str> = cls.iter().map(|c| c.status.as_str()).collect();
        statuses.sort_unstable();
        assert_eq!(statuses, vec!["improper", "proper"]);
        // Flipping the right square leaves the left vertical in place.
        let right = g.cells().iter().find(|c| c.vertex_set.contains(2)).unwrap();
        let flipped = flip(&g, &verticals, right).unwrap();
        assert_eq!(flipped, Matching::from_edges([(0, 3), (1, 2), (4, 5)]));
    }

    #[test]
    fn cube_has_nine_matchings() {
        let g = fixtures::cube();
        assert_eq!(enumerate_perfect_matchings(&g).len(), 9);
        assert!(is_elementary(&g));
    }

    #[test]
    fn two_hexagons_weakly_elementary_not_elementary() {
        let g = fixtures::two_hexagons();
        assert!(!is_elementary(&g));
        assert!(is_weakly_elementary(&g).unwrap());
    }

    #[test]
    fn non_matching_rejected() {
        let g = fixtures::hexagon();
        let bogus = Matching::from_edges([(0, 1)]);
        assert_eq!(classify_cells(&g, &bogus), Err(MatchingError::NotAPerfectMatching));
        let g = fixtures::grid(2, 3);
        let m = Matching::from_edges([(0, 1), (2, 5), (3, 4)]);
        let right = g.cells().iter().find(|c| c.vertex_set.contains(2)).unwrap();
        assert_eq!(cell_status(&g, &m, right), CellStatus::NotAlternating);
        assert!(matches!(flip(&g, &m, right), Err(MatchingError::CellNotAlternating(_))));
    }

    #[test]
    fn non_weakly_elementary_example() {
        // Square with a pendant path hanging inside: the nice outer square's
        // closure has a forbidden edge.
        let g = fixtures::square_with_inner_pendant();
        assert!(!is_weakly_elementary(&g).unwrap());
    }

    #[test]
    fn weak_elementarity_size_guard() {
        let g = fixtures::grid(5, 5);
        assert!(matches!(is_weakly_elementary(&g), Err(MatchingError::TooLarge { .. })));
    }
}
