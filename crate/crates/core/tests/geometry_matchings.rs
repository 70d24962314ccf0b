mod common;

use std::collections::BTreeSet;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use matchlat::fixtures;
use matchlat::geometry::{geometric_dual, Point, VertexSpec};
use matchlat::io::{plane_graph_from_json, plane_graph_to_json};
use matchlat::matchings::{enumerate_perfect_matchings, is_elementary};
use matchlat::{build_plane_graph, MatchingLattice, PlaneGraph};

use common::*;

/// Random edge subset of an `r × c` grid, all vertices kept.
fn random_grid_subgraph(rng: &mut StdRng) -> PlaneGraph {
    let (r, c) = (rng.gen_range(1..=4), rng.gen_range(2..=4));
    let p = rng.gen_range(0.5..1.0);
    let mut specs = Vec::new();
    let mut edges = Vec::new();
    for y in 0..r {
        for x in 0..c {
            let id = (y * c + x) as u64;
            specs.push(VertexSpec { id, point: Point::from_ints(x as i64, y as i64) });
            if x + 1 < c && rng.gen_bool(p) {
                edges.push((id, id + 1));
            }
            if y + 1 < r && rng.gen_bool(p) {
                edges.push((id, id + c as u64));
            }
        }
    }
    build_plane_graph(specs, &edges, None).unwrap()
}

fn check_structure(g: &PlaneGraph) {
    let walks: usize = g.faces().iter().map(|f| f.walk_len()).sum();
    assert_eq!(walks, 2 * g.edge_count());
    let (v, e, f) = (g.vertex_count() as i64, g.edge_count() as i64, g.faces().len() as i64);
    assert_eq!(v - e + f, 1 + g.component_count() as i64);
    assert_eq!(g.faces().iter().filter(|f| f.is_outer).count(), 1);
    if g.is_connected() {
        let d = geometric_dual(g).unwrap();
        assert_eq!(d.vertex_count, g.faces().len());
        let deg: usize = (0..d.vertex_count).map(|x| d.degree(x)).sum();
        assert_eq!(deg, 2 * g.edge_count());
    }
    let cells = g.cells();
    for (i, a) in cells.iter().enumerate() {
        assert_eq!(a.cycle.iter().collect::<BTreeSet<_>>().len(), a.len(), "cell is not simple");
        for b in &cells[i + 1..] {
            if a.shares_edge(b) {
                assert!(a.shares_vertex(b));
            }
        }
    }
}

fn check_matchings(g: &PlaneGraph) {
    let ms = enumerate_perfect_matchings(g);
    assert_eq!(ms.len() as u64, count_perfect_matchings(g));
    let distinct: BTreeSet<_> = ms.iter().collect();
    assert_eq!(distinct.len(), ms.len());
    for m in &ms {
        m.validate(g).unwrap();
    }
}

#[test]
fn random_grid_subgraphs() {
    let mut rng = StdRng::seed_from_u64(test_seed());
    let mut lattices = 0;
    for _ in 0..200 {
        let g = random_grid_subgraph(&mut rng);
        check_structure(&g);
        check_matchings(&g);
        let back = plane_graph_from_json(&plane_graph_to_json(&g)).unwrap();
        assert_eq!(back.edges(), g.edges());
        if g.is_connected() && is_elementary(&g) {
            let ml = MatchingLattice::build(&g).unwrap();
            let m = leq_matrix(ml.lattice().poset());
            assert!(is_distributive_lattice(&m));
            let arcs: BTreeSet<(usize, usize)> = ml.digraph().arcs.iter().map(|a| (a.head, a.tail)).collect();
            assert_eq!(reduction(&m), arcs);
            lattices += 1;
        }
    }
    assert!(lattices > 5, "only {lattices} elementary samples");
}

#[test]
fn fixtures_hold_the_invariants() {
    for name in fixtures::PLANE_FIXTURES {
        let g = fixtures::plane_graph(name).unwrap();
        check_structure(&g);
        check_matchings(&g);
    }
    for g in [fixtures::path(5), fixtures::path(6), fixtures::square_with_inner_pendant()] {
        check_structure(&g);
        check_matchings(&g);
    }
}

#[test]
fn odd_graph_has_no_matchings() {
    let g = fixtures::path(5);
    assert!(enumerate_perfect_matchings(&g).is_empty());
    assert_eq!(count_perfect_matchings(&g), 0);
}
