//! Planarity testing with Kuratowski witnesses.
//!
//! Each biconnected block is embedded by repeatedly drawing a path of some
//! bridge into a face (Demoucron, Malgrange and Pertuiset). Witnesses are
//! minimal non-planar subgraphs found by greedy edge deletion.

use std::collections::{BTreeSet, HashSet, VecDeque};

use serde_json::{json, Value};
use thiserror::Error;

use crate::graph::Graph;
use crate::screen::delta_poset;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PlanarityError {
    #[error("graph is planar")]
    GraphIsPlanar,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WitnessKind {
    K5Subdivision,
    K33Subdivision,
}

impl WitnessKind {
    pub fn as_str(self) -> &'static str {
        match self {
            WitnessKind::K5Subdivision => "K5Subdivision",
            WitnessKind::K33Subdivision => "K33Subdivision",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessSubgraph {
    /// Edges of the input graph, each with `a < b`, sorted.
    pub edges: Vec<(usize, usize)>,
    /// Vertices of degree at least three in the witness, sorted.
    pub branch_vertices: Vec<usize>,
    pub kind: WitnessKind,
}

impl WitnessSubgraph {
    pub fn to_json(&self, g: &Graph) -> Value {
        json!({
            "kind": self.kind.as_str(),
            "branch_vertices": self.branch_vertices.iter().map(|&v| g.label(v)).collect::<Vec<_>>(),
            "edges": self.edges.iter().map(|&(a, b)| [g.label(a), g.label(b)]).collect::<Vec<_>>(),
        })
    }
}

pub fn is_planar(g: &Graph) -> bool {
    let n = g.vertex_count();
    if n >= 3 && g.edge_count() > 3 * n - 6 {
        return false;
    }
    biconnected_blocks(g).iter().all(|block| block_is_planar(block))
}

/// Edge sets of the biconnected blocks (bridges are single-edge blocks).
pub fn biconnected_blocks(g: &Graph) -> Vec<Vec<(usize, usize)>> {
    struct State<'a> {
        g: &'a Graph,
        disc: Vec<usize>,
        low: Vec<usize>,
        time: usize,
        stack: Vec<(usize, usize)>,
        blocks: Vec<Vec<(usize, usize)>>,
    }

    fn dfs(s: &mut State<'_>, v: usize, parent: usize) {
        s.time += 1;
        s.disc[v] = s.time;
        s.low[v] = s.time;
        let nbrs: Vec<usize> = s.g.neighbors(v).collect();
        for w in nbrs {
            if s.disc[w] == 0 {
                s.stack.push((v, w));
                dfs(s, w, v);
                s.low[v] = s.low[v].min(s.low[w]);
                if s.low[w] >= s.disc[v] {
                    let mut block = Vec::new();
                    while let Some(e) = s.stack.pop() {
                        block.push((e.0.min(e.1), e.0.max(e.1)));
                        if e == (v, w) {
                            break;
                        }
                    }
                    block.sort_unstable();
                    s.blocks.push(block);
                }
            } else if w != parent && s.disc[w] < s.disc[v] {
                s.stack.push((v, w));
                s.low[v] = s.low[v].min(s.disc[w]);
            }
        }
    }

    let n = g.vertex_count();
    let mut s = State { g, disc: vec![0; n], low: vec![0; n], time: 0, stack: Vec::new(), blocks: Vec::new() };
    for v in 0..n {
        if s.disc[v] == 0 {
            dfs(&mut s, v, usize::MAX);
        }
    }
    s.blocks
}

fn block_is_planar(edges: &[(usize, usize)]) -> bool {
    let verts: Vec<usize> = edges.iter().flat_map(|&(a, b)| [a, b]).collect::<BTreeSet<_>>().into_iter().collect();
    let n = verts.len();
    if n <= 4 {
        return true;
    }
    if edges.len() > 3 * n - 6 {
        return false;
    }
    let local = |v: usize| verts.binary_search(&v).unwrap();
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in edges {
        let (a, b) = (local(a), local(b));
        adj[a].push(b);
        adj[b].push(a);
    }
    for list in &mut adj {
        list.sort_unstable();
    }
    Embedder::new(adj).run()
}

struct Fragment {
    contacts: Vec<usize>,
    /// Non-embedded vertices; empty for a single chord.
    inner: Vec<usize>,
}

struct Embedder {
    adj: Vec<Vec<usize>>,
    in_h: Vec<bool>,
    h_edges: HashSet<(usize, usize)>,
    faces: Vec<Vec<usize>>,
}

fn key(a: usize, b: usize) -> (usize, usize) {
    (a.min(b), a.max(b))
}

impl Embedder {
    fn new(adj: Vec<Vec<usize>>) -> Self {
        let n = adj.len();
        Embedder { adj, in_h: vec![false; n], h_edges: HashSet::new(), faces: Vec::new() }
    }

    /// A cycle through vertex 0 and its first neighbour.
    fn initial_cycle(&self) -> Vec<usize> {
        let (a, b) = (0, self.adj[0][0]);
        let mut prev = vec![usize::MAX; self.adj.len()];
        prev[b] = b;
        let mut queue = VecDeque::from([b]);
        while let Some(v) = queue.pop_front() {
            for &w in &self.adj[v] {
                if (v == b && w == a) || prev[w] != usize::MAX {
                    continue;
                }
                prev[w] = v;
                queue.push_back(w);
            }
        }
        let mut cycle = vec![a];
        let mut v = prev[a];
        while v != b {
            cycle.push(v);
            v = prev[v];
        }
        cycle.push(b);
        cycle
    }

    fn add_path(&mut self, path: &[usize]) {
        for &v in path {
            self.in_h[v] = true;
        }
        for w in path.windows(2) {
            self.h_edges.insert(key(w[0], w[1]));
        }
    }

    fn fragments(&self) -> Vec<Fragment> {
        let n = self.adj.len();
        let mut out = Vec::new();
        for v in 0..n {
            if !self.in_h[v] {
                continue;
            }
            for &w in &self.adj[v] {
                if v < w && self.in_h[w] && !self.h_edges.contains(&(v, w)) {
                    out.push(Fragment { contacts: vec![v, w], inner: Vec::new() });
                }
            }
        }
        let mut seen = vec![false; n];
        for s in 0..n {
            if self.in_h[s] || seen[s] {
                continue;
            }
            seen[s] = true;
            let mut inner = vec![s];
            let mut contacts = BTreeSet::new();
            let mut i = 0;
            while i < inner.len() {
                let v = inner[i];
                for &w in &self.adj[v] {
                    if self.in_h[w] {
                        contacts.insert(w);
                    } else if !seen[w] {
                        seen[w] = true;
                        inner.push(w);
                    }
                }
                i += 1;
            }
            out.push(Fragment { contacts: contacts.into_iter().collect(), inner });
        }
        out
    }

    /// Path through the fragment between its first two contacts.
    fn fragment_path(&self, f: &Fragment) -> Vec<usize> {
        let (u, v) = (f.contacts[0], f.contacts[1]);
        if f.inner.is_empty() {
            return vec![u, v];
        }
        let inside: HashSet<usize> = f.inner.iter().copied().collect();
        let start = *self.adj[u].iter().find(|w| inside.contains(w)).expect("contact touches fragment");
        let mut prev = vec![usize::MAX; self.adj.len()];
        prev[start] = start;
        let mut queue = VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            if self.adj[x].contains(&v) {
                let mut path = vec![v, x];
                let mut y = x;
                while y != start {
                    y = prev[y];
                    path.push(y);
                }
                path.push(u);
                path.reverse();
                return path;
            }
            for &w in &self.adj[x] {
                if inside.contains(&w) && prev[w] == usize::MAX {
                    prev[w] = x;
                    queue.push_back(w);
                }
            }
        }
        unreachable!("fragment is connected and touches both contacts")
    }

    fn split_face(&mut self, face: usize, path: &[usize]) {
        let f = std::mem::take(&mut self.faces[face]);
        let (a, b) = (path[0], path[path.len() - 1]);
        let ia = f.iter().position(|&x| x == a).unwrap();
        let rotated: Vec<usize> = f[ia..].iter().chain(&f[..ia]).copied().collect();
        let ib = rotated.iter().position(|&x| x == b).unwrap();
        let inner = &path[1..path.len() - 1];
        let mut first: Vec<usize> = rotated[..=ib].to_vec();
        first.extend(inner.iter().rev());
        let mut second: Vec<usize> = rotated[ib..].to_vec();
        second.push(a);
        second.extend(inner);
        self.faces[face] = first;
        self.faces.push(second);
    }

    fn run(mut self) -> bool {
        let cycle = self.initial_cycle();
        let mut closed = cycle.clone();
        closed.push(cycle[0]);
        self.add_path(&closed);
        self.faces = vec![cycle.clone(), cycle];
        loop {
            let fragments = self.fragments();
            if fragments.is_empty() {
                return true;
            }
            let mut choice: Option<(usize, usize)> = None;
            for (i, frag) in fragments.iter().enumerate() {
                let admissible: Vec<usize> = (0..self.faces.len())
                    .filter(|&f| frag.contacts.iter().all(|c| self.faces[f].contains(c)))
                    .collect();
                match admissible.len() {
                    0 => return false,
                    1 => {
                        choice = Some((i, admissible[0]));
                        break;
                    }
                    _ => {
                        if choice.is_none() {
                            choice = Some((i, admissible[0]));
                        }
                    }
                }
            }
            let (i, face) = choice.expect("at least one fragment");
            let path = self.fragment_path(&fragments[i]);
            self.add_path(&path);
            self.split_face(face, &path);
        }
    }
}

/// Minimal non-planar subgraph, classified after suppressing degree-2 vertices.
pub fn kuratowski_witness(g: &Graph) -> Result<WitnessSubgraph, PlanarityError> {
    if is_planar(g) {
        return Err(PlanarityError::GraphIsPlanar);
    }
    let mut h = g.clone();
    for (a, b) in g.edges() {
        h.remove_edge(a, b);
        if is_planar(&h) {
            h.add_edge(a, b);
        }
    }
    let edges = h.edges();
    let (kind, branch_vertices) = classify_subdivision(g.vertex_count(), &edges)
        .expect("edge-minimal non-planar graphs are Kuratowski subdivisions");
    Ok(WitnessSubgraph { edges, branch_vertices, kind })
}

/// Suppresses degree-2 vertices of the edge set and reports whether what is
/// left is exactly `K5` or `K3,3`, with its branch vertices.
pub fn classify_subdivision(n: usize, edges: &[(usize, usize)]) -> Option<(WitnessKind, Vec<usize>)> {
    let mut h = Graph::with_vertices(n);
    for &(a, b) in edges {
        if a == b || !h.add_edge(a, b) {
            return None;
        }
    }
    let mut branch = Vec::new();
    for v in 0..n {
        match h.degree(v) {
            0 | 2 => {}
            d if d >= 3 => branch.push(v),
            _ => return None,
        }
    }
    // Walk every branch-to-branch path, counting the edges it uses.
    let mut used = 0;
    let mut found = Vec::new();
    for &b in &branch {
        for start in h.neighbors(b) {
            let (mut prev, mut cur) = (b, start);
            let mut len = 1;
            while h.degree(cur) == 2 {
                let next = h.neighbors(cur).find(|&w| w != prev).unwrap();
                prev = cur;
                cur = next;
                len += 1;
            }
            if cur == b {
                return None;
            }
            if b < cur {
                used += len;
                found.push((b, cur));
            }
        }
    }
    let pairs: BTreeSet<(usize, usize)> = found.iter().copied().collect();
    if pairs.len() != found.len() {
        return None;
    }
    // Pure degree-2 cycles would be left over.
    if used != edges.len() {
        return None;
    }
    let degree_in = |v: usize| pairs.iter().filter(|&&(a, c)| a == v || c == v).count();
    match branch.len() {
        5 if pairs.len() == 10 && branch.iter().all(|&v| degree_in(v) == 4) => {
            Some((WitnessKind::K5Subdivision, branch))
        }
        6 if pairs.len() == 9 => {
            let a = branch[0];
            let side: Vec<usize> = branch.iter().copied().filter(|&v| v == a || !pairs.contains(&key(a, v))).collect();
            let bipartite = side.len() == 3
                && branch.iter().all(|&u| {
                    branch
                        .iter()
                        .all(|&v| u >= v || pairs.contains(&(u, v)) == (side.contains(&u) != side.contains(&v)))
                });
            bipartite.then_some((WitnessKind::K33Subdivision, branch))
        }
        _ => None,
    }
}

/// Subgraph of `g`, non-planar, and a subdivision of the stated kind.
pub fn validate_witness(g: &Graph, w: &WitnessSubgraph) -> bool {
    if !w.edges.iter().all(|&(a, b)| a < g.vertex_count() && b < g.vertex_count() && g.has_edge(a, b)) {
        return false;
    }
    let Some((kind, branch)) = classify_subdivision(g.vertex_count(), &w.edges) else {
        return false;
    };
    kind == w.kind && branch == w.branch_vertices && !is_planar(&g.edge_subgraph(&w.edges))
}

/// The undirected Hasse diagram of Δ, one vertex `f<label>` per element.
/// It is the graph formed by the cells standing for Δ's elements, adjacent
/// when the elements are related by a cover.
pub fn sstar() -> Graph {
    let d = delta_poset();
    let labels = d.labels().iter().map(|l| format!("f{l}")).collect();
    let mut g = Graph::new(labels);
    for (a, b) in d.covers() {
        g.add_edge(a, b);
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;

    fn petersen() -> Graph {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((i + 5, (i + 2) % 5 + 5));
        }
        Graph::from_edges(10, &edges)
    }

    #[test]
    fn small_cases() {
        assert!(is_planar(&Graph::complete(4)));
        assert!(!is_planar(&Graph::complete(5)));
        assert!(!is_planar(&Graph::complete_bipartite(3, 3)));
        assert!(is_planar(&Graph::complete_bipartite(2, 7)));
        assert!(is_planar(&Graph::with_vertices(0)));
        assert!(!is_planar(&petersen()));
        // Octahedron is maximal planar.
        let oct = Graph::from_edges(
            6,
            &[(0, 1), (0, 2), (0, 3), (0, 4), (5, 1), (5, 2), (5, 3), (5, 4), (1, 2), (2, 3), (3, 4), (4, 1)],
        );
        assert!(is_planar(&oct));
    }

    #[test]
    fn k5_minus_edge_is_planar() {
        let mut g = Graph::complete(5);
        g.remove_edge(0, 1);
        assert!(is_planar(&g));
        assert_eq!(kuratowski_witness(&g), Err(PlanarityError::GraphIsPlanar));
    }

    #[test]
    fn witnesses() {
        let k5 = Graph::complete(5);
        let w = kuratowski_witness(&k5).unwrap();
        assert_eq!(w.kind, WitnessKind::K5Subdivision);
        assert_eq!(w.branch_vertices, vec![0, 1, 2, 3, 4]);
        assert_eq!(w.edges.len(), 10);
        assert!(validate_witness(&k5, &w));

        let mut k33 = Graph::complete_bipartite(3, 3);
        k33 = {
            let mut labels = k33.labels().to_vec();
            labels.push("x".into());
            let mut h = Graph::new(labels);
            for (a, b) in k33.edges() {
                h.add_edge(a, b);
            }
            h
        };
        let w = kuratowski_witness(&k33).unwrap();
        assert_eq!(w.kind, WitnessKind::K33Subdivision);
        assert!(validate_witness(&k33, &w));

        let p = petersen();
        let w = kuratowski_witness(&p).unwrap();
        assert!(validate_witness(&p, &w));
    }

    #[test]
    fn sstar_is_a_k5_subdivision() {
        let s = sstar();
        assert_eq!(s.vertex_count(), 11);
        assert_eq!(s.edge_count(), 16);
        assert!(!is_planar(&s));
        let w = kuratowski_witness(&s).unwrap();
        assert_eq!(w.kind, WitnessKind::K5Subdivision);
        let names: Vec<&str> = w.branch_vertices.iter().map(|&v| s.label(v)).collect();
        assert_eq!(names, ["f0", "f1", "f2", "f3", "f4"]);
        assert_eq!(w.edges.len(), 16);
        assert!(validate_witness(&s, &w));
    }

    #[test]
    fn forged_witness_rejected() {
        let k5 = Graph::complete(5);
        let mut w = kuratowski_witness(&k5).unwrap();
        w.edges.pop();
        assert!(!validate_witness(&k5, &w));
        let w2 = WitnessSubgraph { kind: WitnessKind::K33Subdivision, ..kuratowski_witness(&k5).unwrap() };
        assert!(!validate_witness(&k5, &w2));
    }

    #[test]
    fn blocks_of_bowtie() {
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)]);
        assert_eq!(biconnected_blocks(&g).len(), 2);
        let path = Graph::from_edges(3, &[(0, 1), (1, 2)]);
        assert_eq!(biconnected_blocks(&path).len(), 2);
    }
}
