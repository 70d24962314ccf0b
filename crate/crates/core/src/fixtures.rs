//! Named plane graphs, abstract graphs and posets used by the examples, the
//! CLI `--fixture` flag and the tests.

use crate::geometry::{build_plane_graph, PlaneGraph, Point, VertexSpec};
use crate::graph::Graph;
use crate::order::{boolean_poset, chain, chain_product, Poset};
use crate::planarity;
use crate::screen::delta_poset;

fn plane(points: &[(i64, i64)], edges: &[(u64, u64)]) -> PlaneGraph {
    let specs = points
        .iter()
        .enumerate()
        .map(|(i, &(x, y))| VertexSpec { id: i as u64, point: Point::from_ints(x, y) })
        .collect();
    build_plane_graph(specs, edges, None).expect("fixture is a valid plane bipartite graph")
}

fn cycle_edges(n: u64) -> Vec<(u64, u64)> {
    (0..n).map(|i| (i, (i + 1) % n)).collect()
}

/// Hexagon `C6` on the lattice points `(±2,0)`, `(±1,±2)`.
pub fn hexagon() -> PlaneGraph {
    plane(&[(2, 0), (1, 2), (-1, 2), (-2, 0), (-1, -2), (1, -2)], &cycle_edges(6))
}

pub fn square() -> PlaneGraph {
    plane(&[(0, 0), (1, 0), (1, 1), (0, 1)], &cycle_edges(4))
}

/// The boundary of a 1×3 strip of squares: an 8-cycle.
pub fn octagon() -> PlaneGraph {
    plane(&[(0, 0), (1, 0), (2, 0), (3, 0), (3, 1), (2, 1), (1, 1), (0, 1)], &cycle_edges(8))
}

pub fn k2() -> PlaneGraph {
    plane(&[(0, 0), (1, 0)], &[(0, 1)])
}

/// Path on `n` vertices along the x-axis.
pub fn path(n: usize) -> PlaneGraph {
    let pts: Vec<(i64, i64)> = (0..n as i64).map(|i| (i, 0)).collect();
    let edges: Vec<(u64, u64)> = (1..n as u64).map(|i| (i - 1, i)).collect();
    plane(&pts, &edges)
}

/// `rows × cols` grid; vertex `r*cols + c` sits at `(c, r)`.
pub fn grid(rows: usize, cols: usize) -> PlaneGraph {
    let mut pts = Vec::new();
    let mut edges = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            pts.push((c as i64, r as i64));
            let id = (r * cols + c) as u64;
            if c + 1 < cols {
                edges.push((id, id + 1));
            }
            if r + 1 < rows {
                edges.push((id, id + cols as u64));
            }
        }
    }
    plane(&pts, &edges)
}

/// Planar drawing of `Q3`: outer square `0..3`, inner square `4..7`, spokes `i, i+4`.
pub fn cube() -> PlaneGraph {
    let pts = [(0, 0), (3, 0), (3, 3), (0, 3), (1, 1), (2, 1), (2, 2), (1, 2)];
    let mut edges = cycle_edges(4);
    edges.extend((0..4).map(|i| (4 + i, 4 + (i + 1) % 4)));
    edges.extend((0..4).map(|i| (i, i + 4)));
    plane(&pts, &edges)
}

/// Two hexagons far apart; not connected, hence not elementary.
pub fn two_hexagons() -> PlaneGraph {
    let base = [(2, 0), (1, 2), (-1, 2), (-2, 0), (-1, -2), (1, -2)];
    let pts: Vec<(i64, i64)> = base.iter().copied().chain(base.iter().map(|&(x, y)| (x + 10, y))).collect();
    let mut edges = cycle_edges(6);
    edges.extend(cycle_edges(6).into_iter().map(|(a, b)| (a + 6, b + 6)));
    plane(&pts, &edges)
}

/// A 4-cycle with a pendant path hanging inside it from one corner.
pub fn square_with_inner_pendant() -> PlaneGraph {
    plane(&[(0, 0), (4, 0), (4, 4), (0, 4), (1, 1), (2, 2)], &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 4), (4, 5)])
}

/// Hexagonal systems drawn as brick walls: each hexagon is a 2×1 rectangle
/// with a boundary vertex at the middle of its long sides. `bricks` are the
/// lower-left corners.
fn brick_wall(bricks: &[(i64, i64)]) -> PlaneGraph {
    let mut pts: Vec<(i64, i64)> = Vec::new();
    let mut edges = std::collections::BTreeSet::new();
    let id = |p: (i64, i64), pts: &mut Vec<(i64, i64)>| -> u64 {
        match pts.iter().position(|&q| q == p) {
            Some(i) => i as u64,
            None => {
                pts.push(p);
                (pts.len() - 1) as u64
            }
        }
    };
    for &(x, y) in bricks {
        let ring = [(x, y), (x + 1, y), (x + 2, y), (x + 2, y + 1), (x + 1, y + 1), (x, y + 1)];
        let ids: Vec<u64> = ring.iter().map(|&p| id(p, &mut pts)).collect();
        for i in 0..6 {
            let (a, b) = (ids[i], ids[(i + 1) % 6]);
            edges.insert((a.min(b), a.max(b)));
        }
    }
    // Renumber by position so ids are stable and row-major.
    let mut order: Vec<usize> = (0..pts.len()).collect();
    order.sort_by_key(|&i| (pts[i].1, pts[i].0));
    let mut new_id = vec![0u64; pts.len()];
    for (n, &old) in order.iter().enumerate() {
        new_id[old] = n as u64;
    }
    let sorted: Vec<(i64, i64)> = order.iter().map(|&i| pts[i]).collect();
    let edges: Vec<(u64, u64)> = edges.into_iter().map(|(a, b)| (new_id[a as usize], new_id[b as usize])).collect();
    plane(&sorted, &edges)
}

pub fn naphthalene() -> PlaneGraph {
    brick_wall(&[(0, 0), (2, 0)])
}

pub fn anthracene() -> PlaneGraph {
    brick_wall(&[(0, 0), (2, 0), (4, 0)])
}

pub fn phenanthrene() -> PlaneGraph {
    brick_wall(&[(0, 0), (2, 0), (3, 1)])
}

pub const PLANE_FIXTURES: [&str; 13] = [
    "hexagon",
    "square",
    "octagon",
    "k2",
    "grid2x3",
    "grid2x4",
    "grid3x4",
    "grid4x4",
    "cube",
    "naphthalene",
    "anthracene",
    "phenanthrene",
    "two-hexagons",
];

pub fn plane_graph(name: &str) -> Option<PlaneGraph> {
    Some(match name {
        "hexagon" => hexagon(),
        "square" => square(),
        "octagon" => octagon(),
        "k2" => k2(),
        "grid2x3" => grid(2, 3),
        "grid2x4" => grid(2, 4),
        "grid3x4" => grid(3, 4),
        "grid4x4" => grid(4, 4),
        "cube" => cube(),
        "naphthalene" => naphthalene(),
        "anthracene" => anthracene(),
        "phenanthrene" => phenanthrene(),
        "two-hexagons" => two_hexagons(),
        _ => return None,
    })
}

pub const GRAPH_FIXTURES: [&str; 4] = ["k4", "k5", "k33", "sstar"];

/// Abstract graphs for planarity; plane fixtures are accepted too.
pub fn graph(name: &str) -> Option<Graph> {
    match name {
        "k4" => Some(Graph::complete(4)),
        "k5" => Some(Graph::complete(5)),
        "k33" => Some(Graph::complete_bipartite(3, 3)),
        "sstar" => Some(planarity::sstar()),
        _ => plane_graph(name).map(|g| g.to_graph()),
    }
}

pub const POSET_FIXTURES: [&str; 6] = ["delta", "b3", "b4", "chain5", "antichain2", "chains2223"];

pub fn poset(name: &str) -> Option<Poset> {
    Some(match name {
        "delta" => delta_poset(),
        "b3" => boolean_poset(3),
        "b4" => boolean_poset(4),
        "chain5" => chain(5),
        "antichain2" => crate::order::antichain(2),
        "chains2223" => chain_product(&[2, 2, 2, 3]),
        _ => return None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matchings::{enumerate_perfect_matchings, is_elementary};

    #[test]
    fn every_name_resolves() {
        for n in PLANE_FIXTURES {
            assert!(plane_graph(n).is_some(), "{n}");
            assert!(graph(n).is_some(), "{n}");
        }
        for n in GRAPH_FIXTURES {
            assert!(graph(n).is_some(), "{n}");
        }
        for n in POSET_FIXTURES {
            assert!(poset(n).is_some(), "{n}");
        }
        assert!(plane_graph("nope").is_none());
    }

    #[test]
    fn benzenoid_counts() {
        // Kekulé structure counts of the three hydrocarbons.
        assert_eq!(enumerate_perfect_matchings(&naphthalene()).len(), 3);
        assert_eq!(enumerate_perfect_matchings(&anthracene()).len(), 4);
        assert_eq!(enumerate_perfect_matchings(&phenanthrene()).len(), 5);
        for g in [naphthalene(), anthracene(), phenanthrene()] {
            assert_eq!(g.cells().len() + 1, g.faces().len());
            assert!(is_elementary(&g));
        }
    }
}
