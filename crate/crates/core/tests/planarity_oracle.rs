mod common;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use matchlat::fixtures;
use matchlat::planarity::{is_planar, kuratowski_witness, validate_witness, WitnessKind};
use matchlat::Graph;

use common::{planar_by_rotations, subdivision_kind, test_seed};

fn random_graph(rng: &mut StdRng, n: usize, p: f64) -> Graph {
    let mut g = Graph::with_vertices(n);
    for a in 0..n {
        for b in a + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(a, b);
            }
        }
    }
    g
}

fn check_witness(g: &Graph) {
    let w = kuratowski_witness(g).expect("non-planar graph has a witness");
    assert!(validate_witness(g, &w));
    assert!(w.edges.iter().all(|&(a, b)| g.has_edge(a, b)));
    let expected = match w.kind {
        WitnessKind::K5Subdivision => "K5",
        WitnessKind::K33Subdivision => "K33",
    };
    assert_eq!(subdivision_kind(&w.edges), Some(expected), "{:?}", w.edges);
}

#[test]
fn small_random_graphs_agree_with_rotation_search() {
    let mut rng = StdRng::seed_from_u64(test_seed());
    let mut non_planar = 0;
    for round in 0..300 {
        let n = rng.gen_range(1..=8);
        let p = rng.gen_range(0.2..0.9);
        let g = random_graph(&mut rng, n, p);
        let fast = is_planar(&g);
        assert_eq!(fast, planar_by_rotations(&g), "round {round}: {:?}", g.edges());
        if !fast {
            non_planar += 1;
            check_witness(&g);
        } else {
            assert!(kuratowski_witness(&g).is_err());
        }
    }
    assert!(non_planar > 10, "sample too planar: {non_planar}");
}

#[test]
fn witnesses_on_larger_graphs_are_subdivisions() {
    let mut rng = StdRng::seed_from_u64(test_seed() ^ 0x5eed);
    let mut checked = 0;
    for _ in 0..60 {
        let n = rng.gen_range(9..=20);
        let p = rng.gen_range(0.15..0.45);
        let g = random_graph(&mut rng, n, p);
        if !is_planar(&g) {
            check_witness(&g);
            checked += 1;
        }
    }
    assert!(checked > 20);
}

#[test]
fn named_graphs() {
    for (name, planar) in [("k4", true), ("k5", false), ("k33", false), ("sstar", false), ("cube", true)] {
        let g = fixtures::graph(name).unwrap();
        assert_eq!(is_planar(&g), planar, "{name}");
        assert_eq!(planar_by_rotations(&g), planar, "{name}");
    }
}

#[test]
fn subdivided_k33_is_found() {
    // K3,3 with every edge split once.
    let mut g = Graph::with_vertices(15);
    let mut next = 6;
    for a in 0..3 {
        for b in 3..6 {
            g.add_edge(a, next);
            g.add_edge(next, b);
            next += 1;
        }
    }
    assert!(!is_planar(&g));
    let w = kuratowski_witness(&g).unwrap();
    assert_eq!(w.kind, WitnessKind::K33Subdivision);
    assert_eq!(w.branch_vertices, vec![0, 1, 2, 3, 4, 5]);
    assert_eq!(w.edges.len(), 18);
}
