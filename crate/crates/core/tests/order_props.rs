mod common;

use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed};

use matchlat::io::{hasse_dot, poset_from_json, poset_to_json};
use matchlat::order::{
    birkhoff, filters, is_distributive, is_distributive_exhaustive, iso, join_irreducibles, meet_irreducibles, Lattice,
};
use matchlat::Poset;

use common::*;

fn config() -> Config {
    Config { cases: 64, rng_seed: RngSeed::Fixed(test_seed()), failure_persistence: None, ..Config::default() }
}

fn labels(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("p{i}")).collect()
}

/// Random poset on `1..=max` elements: relation pairs `i < j` with `i < j`.
fn poset(max: usize) -> impl Strategy<Value = Poset> {
    (1..=max).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let mut rel = Vec::new();
            let mut k = 0;
            for i in 0..n {
                for j in i + 1..n {
                    if bits[k] {
                        rel.push((i, j));
                    }
                    k += 1;
                }
            }
            Poset::from_relation(labels(n), &rel).unwrap()
        })
    })
}

/// A random poset with a fresh bottom and top adjoined.
fn bounded(max: usize) -> impl Strategy<Value = Poset> {
    poset(max).prop_map(|p| {
        let n = p.len();
        let mut rel: Vec<(usize, usize)> = (0..n)
            .flat_map(|a| (0..n).filter(move |&b| a != b).map(move |b| (a, b)))
            .filter(|&(a, b)| p.leq(a, b))
            .map(|(a, b)| (a + 1, b + 1))
            .collect();
        for x in 1..=n {
            rel.push((0, x));
            rel.push((x, n + 1));
        }
        rel.push((0, n + 1));
        Poset::from_relation(labels(n + 2), &rel).unwrap()
    })
}

fn shuffled(max: usize) -> impl Strategy<Value = (Poset, Vec<usize>)> {
    poset(max).prop_flat_map(|p| {
        let n = p.len();
        (Just(p), Just((0..n).collect::<Vec<_>>()).prop_shuffle())
    })
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn filter_count_matches_brute_force(p in poset(8)) {
        let f = filters(&p).unwrap();
        prop_assert_eq!(f.len() as u64, count_up_sets_brute(&p));
        prop_assert_eq!(f.len() as u64, count_antichains(&p));
    }

    #[test]
    fn filter_lattices_are_distributive(p in poset(5)) {
        let f = filters(&p).unwrap();
        prop_assert!(is_distributive_lattice(&leq_matrix(f.poset())));
        prop_assert!(is_distributive(&f));
        prop_assert_eq!(join_irreducibles(&f).len(), p.len());
        prop_assert_eq!(meet_irreducibles(&f).len(), p.len());
    }

    #[test]
    fn birkhoff_round_trip(p in poset(7)) {
        let f = filters(&p).unwrap();
        let j = birkhoff(&f).unwrap();
        let map = iso(&j, &p).unwrap();
        prop_assert!(map.is_some());
        prop_assert!(preserves_order(&leq_matrix(&j), &leq_matrix(&p), &map.unwrap()));
    }

    #[test]
    fn dual_is_an_involution(p in poset(8)) {
        let d = p.dual();
        let dd = d.dual();
        prop_assert_eq!(leq_matrix(&dd), leq_matrix(&p));
        prop_assert_eq!(dd.labels(), p.labels());
        for a in 0..p.len() {
            for b in 0..p.len() {
                prop_assert_eq!(d.leq(a, b), p.leq(b, a));
            }
        }
    }

    #[test]
    fn iso_survives_relabelling((p, perm) in shuffled(8)) {
        let q = p.permuted(&perm);
        let map = iso(&p, &q).unwrap();
        prop_assert!(map.is_some());
        prop_assert!(preserves_order(&leq_matrix(&p), &leq_matrix(&q), &map.unwrap()));
    }

    #[test]
    fn lattice_checks_agree_with_oracle(p in bounded(6)) {
        let m = leq_matrix(&p);
        let has_bounds = (0..p.len()).all(|a| (0..p.len()).all(|b| meet(&m, a, b).is_some() && join(&m, a, b).is_some()));
        match Lattice::from_poset(p) {
            Ok(l) => {
                prop_assert!(has_bounds);
                let oracle = is_distributive_lattice(&m);
                prop_assert_eq!(is_distributive(&l), oracle);
                prop_assert_eq!(is_distributive_exhaustive(&l), oracle);
            }
            Err(_) => prop_assert!(!has_bounds),
        }
    }

    #[test]
    fn poset_json_round_trip(p in poset(8)) {
        let (q, _) = poset_from_json(&poset_to_json(&p)).unwrap();
        prop_assert_eq!(q.labels(), p.labels());
        prop_assert_eq!(leq_matrix(&q), leq_matrix(&p));
        prop_assert_eq!(q.covers().len(), reduction(&leq_matrix(&p)).len());
        let dot = hasse_dot(&p, "P");
        prop_assert_eq!(dot.matches(" -> ").count(), p.cover_count());
    }
}
