//! Small undirected graph containers shared by the planarity code, the
//! geometric dual and the cell-intersection graphs.

use std::collections::BTreeSet;
use std::fmt::Write;

/// Simple undirected graph with labelled vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    labels: Vec<String>,
    adj: Vec<BTreeSet<usize>>,
}

impl Graph {
    pub fn new(labels: Vec<String>) -> Self {
        let adj = vec![BTreeSet::new(); labels.len()];
        Graph { labels, adj }
    }

    /// Graph on `n` vertices labelled `0..n`.
    pub fn with_vertices(n: usize) -> Self {
        Graph::new((0..n).map(|i| i.to_string()).collect())
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut g = Graph::with_vertices(n);
        for &(a, b) in edges {
            g.add_edge(a, b);
        }
        g
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::with_vertices(n);
        for a in 0..n {
            for b in a + 1..n {
                g.add_edge(a, b);
            }
        }
        g
    }

    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        let mut g = Graph::with_vertices(a + b);
        for x in 0..a {
            for y in a..a + b {
                g.add_edge(x, y);
            }
        }
        g
    }

    /// Adds the edge `{a, b}`. Loops are ignored, parallel edges collapse.
    pub fn add_edge(&mut self, a: usize, b: usize) -> bool {
        if a == b {
            return false;
        }
        let fresh = self.adj[a].insert(b);
        self.adj[b].insert(a);
        fresh
    }

    pub fn remove_edge(&mut self, a: usize, b: usize) -> bool {
        let had = self.adj[a].remove(&b);
        self.adj[b].remove(&a);
        had
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj[a].contains(&b)
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(BTreeSet::len).sum::<usize>() / 2
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v].iter().copied()
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Edges as `(a, b)` with `a < b`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (a, nbrs) in self.adj.iter().enumerate() {
            out.extend(nbrs.iter().filter(|&&b| a < b).map(|&b| (a, b)));
        }
        out
    }

    /// Connected components as sorted vertex lists.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut stack = vec![s];
            let mut comp = Vec::new();
            while let Some(v) = stack.pop() {
                comp.push(v);
                for w in self.neighbors(v) {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Subgraph keeping every vertex but only the listed edges.
    pub fn edge_subgraph(&self, edges: &[(usize, usize)]) -> Graph {
        let mut g = Graph::new(self.labels.clone());
        for &(a, b) in edges {
            g.add_edge(a, b);
        }
        g
    }

    pub fn to_dot(&self, name: &str) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "graph {} {{", dot_id(name));
        for (v, label) in self.labels.iter().enumerate() {
            let _ = writeln!(s, "  n{v} [label={}];", dot_quote(label));
        }
        for (a, b) in self.edges() {
            let _ = writeln!(s, "  n{a} -- n{b};");
        }
        s.push_str("}\n");
        s
    }
}

/// Undirected multigraph; loops and parallel edges are kept.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Multigraph {
    pub vertex_count: usize,
    pub edges: Vec<(usize, usize)>,
}

impl Multigraph {
    /// A loop contributes 2 to the degree of its vertex.
    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().map(|&(a, b)| usize::from(a == v) + usize::from(b == v)).sum()
    }

    pub fn loop_count(&self) -> usize {
        self.edges.iter().filter(|(a, b)| a == b).count()
    }

    pub fn to_dot(&self, name: &str, labels: &[String]) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "graph {} {{", dot_id(name));
        for v in 0..self.vertex_count {
            let label = labels.get(v).cloned().unwrap_or_else(|| v.to_string());
            let _ = writeln!(s, "  n{v} [label={}];", dot_quote(&label));
        }
        for &(a, b) in &self.edges {
            let _ = writeln!(s, "  n{a} -- n{b};");
        }
        s.push_str("}\n");
        s
    }
}

pub(crate) fn dot_quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

pub(crate) fn dot_id(s: &str) -> String {
    if !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
        s.to_string()
    } else {
        dot_quote(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complete_graph_counts() {
        let k5 = Graph::complete(5);
        assert_eq!(k5.edge_count(), 10);
        assert!((0..5).all(|v| k5.degree(v) == 4));
        let k33 = Graph::complete_bipartite(3, 3);
        assert_eq!(k33.edge_count(), 9);
        assert!(!k33.has_edge(0, 1));
    }

    #[test]
    fn components_and_loops() {
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (3, 4)]);
        assert_eq!(g.components(), vec![vec![0, 1, 2], vec![3, 4]]);
        let mut h = g.clone();
        assert!(!h.add_edge(2, 2));
        assert_eq!(h, g);
    }

    #[test]
    fn multigraph_loop_degree() {
        let m = Multigraph { vertex_count: 1, edges: vec![(0, 0)] };
        assert_eq!(m.degree(0), 2);
        assert_eq!(m.loop_count(), 1);
    }
}
