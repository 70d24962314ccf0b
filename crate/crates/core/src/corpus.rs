//! The bundled corpus of plane elementary bipartite graphs and the property
//! suite run over it.
//!
//! Setting `MATCHLAT_CORPUS_DIR` replaces the bundled graphs with every
//! `*.json` file in that directory.

use std::path::{Path, PathBuf};

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use serde_json::{json, Value};
use thiserror::Error;

use crate::geometry::PlaneGraph;
use crate::io::{plane_graph_from_json, IoError};
use crate::matchings::{cell_status, is_elementary, is_weakly_elementary, CellStatus};
use crate::order::{birkhoff_map, meet_irreducibles, Lattice};
use crate::screen::{k33_test, screen, ScreenVerdict};
use crate::z_transform::{AnchorPosition, MatchingLattice};

pub const CORPUS_ENV: &str = "MATCHLAT_CORPUS_DIR";

/// Largest graph the suite accepts.
pub const MAX_CORPUS_VERTICES: usize = 16;
pub const MIN_CORPUS_GRAPHS: usize = 10;

pub const DEFAULT_SEED: u64 = 20;

const BUNDLED: [(&str, &str); 12] = [
    ("anthracene", include_str!("../corpus/anthracene.json")),
    ("cube", include_str!("../corpus/cube.json")),
    ("grid2x3", include_str!("../corpus/grid2x3.json")),
    ("grid2x4", include_str!("../corpus/grid2x4.json")),
    ("grid3x4", include_str!("../corpus/grid3x4.json")),
    ("grid4x4", include_str!("../corpus/grid4x4.json")),
    ("hexagon", include_str!("../corpus/hexagon.json")),
    ("k2", include_str!("../corpus/k2.json")),
    ("naphthalene", include_str!("../corpus/naphthalene.json")),
    ("octagon", include_str!("../corpus/octagon.json")),
    ("phenanthrene", include_str!("../corpus/phenanthrene.json")),
    ("square", include_str!("../corpus/square.json")),
];

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("cannot read corpus directory {path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },
    #[error("corpus entry {name}: {source}")]
    Parse { name: String, source: IoError },
    #[error("corpus has {0} graphs; at least {MIN_CORPUS_GRAPHS} are required")]
    TooSmall(usize),
}

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub name: String,
    pub graph: PlaneGraph,
}

pub fn bundled() -> Vec<CorpusEntry> {
    BUNDLED
        .iter()
        .map(|(name, text)| CorpusEntry {
            name: name.to_string(),
            graph: plane_graph_from_json(text).expect("bundled corpus parses"),
        })
        .collect()
}

/// Every `*.json` file in `dir`, sorted by file name.
pub fn load_dir(dir: &Path) -> Result<Vec<CorpusEntry>, CorpusError> {
    let read_err = |source| CorpusError::Read { path: dir.to_path_buf(), source };
    let mut paths: Vec<PathBuf> = std::fs::read_dir(dir)
        .map_err(read_err)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    paths.sort();
    paths
        .into_iter()
        .map(|p| {
            let name = p.file_stem().unwrap_or_default().to_string_lossy().into_owned();
            let text = std::fs::read_to_string(&p).map_err(|source| CorpusError::Read { path: p.clone(), source })?;
            let graph =
                plane_graph_from_json(&text).map_err(|source| CorpusError::Parse { name: name.clone(), source })?;
            Ok(CorpusEntry { name, graph })
        })
        .collect()
}

/// The directory named by `MATCHLAT_CORPUS_DIR` if set, else the bundled corpus.
pub fn load() -> Result<Vec<CorpusEntry>, CorpusError> {
    match std::env::var_os(CORPUS_ENV) {
        Some(dir) => load_dir(Path::new(&dir)),
        None => Ok(bundled()),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug)]
pub struct GraphReport {
    pub name: String,
    pub vertices: usize,
    pub cells: usize,
    pub matchings: usize,
    pub checks: Vec<Check>,
}

impl GraphReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_json(&self) -> Value {
        let checks: serde_json::Map<String, Value> = self
            .checks
            .iter()
            .map(|c| {
                let v = if c.passed { json!("pass") } else { json!(format!("FAIL: {}", c.detail)) };
                (c.name.to_string(), v)
            })
            .collect();
        json!({
            "name": self.name,
            "vertices": self.vertices,
            "cells": self.cells,
            "matchings": self.matchings,
            "passed": self.passed(),
            "checks": checks,
        })
    }
}

struct Recorder(Vec<Check>);

impl Recorder {
    fn record(&mut self, name: &'static str, result: Result<(), String>) {
        let (passed, detail) = match result {
            Ok(()) => (true, String::new()),
            Err(d) => (false, d),
        };
        self.0.push(Check { name, passed, detail });
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Runs every corpus property on one graph. `seed` drives the relabelling
/// used by the label-invariance check.
pub fn verify_graph(name: &str, g: &PlaneGraph, seed: u64) -> GraphReport {
    let mut r = Recorder(Vec::new());
    r.record("size", ensure(g.vertex_count() <= MAX_CORPUS_VERTICES, || format!("{} vertices", g.vertex_count())));
    r.record("elementary", ensure(is_elementary(g), || "some edge is not allowed".into()));
    r.record(
        "weakly-elementary",
        match is_weakly_elementary(g) {
            Ok(true) => Ok(()),
            Ok(false) => Err("a nice cycle with its interior is not elementary".into()),
            Err(e) => Err(e.to_string()),
        },
    );
    let mut report = GraphReport {
        name: name.to_string(),
        vertices: g.vertex_count(),
        cells: g.cells().len(),
        matchings: 0,
        checks: Vec::new(),
    };
    let ml = match MatchingLattice::build(g) {
        Ok(ml) => {
            r.record("lattice", Ok(()));
            ml
        }
        Err(e) => {
            r.record("lattice", Err(e.to_string()));
            report.checks = r.0;
            return report;
        }
    };
    report.matchings = ml.len();

    r.record("extremal", ml.extremal().map(|_| ()).map_err(|e| e.to_string()));
    r.record("flip-monotonicity", flip_monotonicity(&ml));
    r.record("disjoint-cells", disjoint_cells(&ml));
    r.record("matched-edge-sharing", matched_edge_sharing(&ml));
    r.record("hypercubes", hypercubes(&ml));
    r.record("mict", mict_all(&ml));
    r.record("meet-irreducible-count", {
        let single = (0..ml.len()).filter(|&i| ml.improper_cells(i).len() == 1).count();
        let mi = meet_irreducibles(ml.lattice()).len();
        ensure(single == mi, || format!("{mi} meet-irreducibles, {single} matchings with one improper cell"))
    });
    r.record("cut-vertices", ml.z_cut_vertices().map(|_| ()).map_err(|e| e.to_string()));
    r.record("top-cells-meet-irreducible", {
        let (top, _) = ml.extremal().unwrap_or((ml.lattice().top(), 0));
        ensure(ml.meet_irreducible_cells(top) == ml.proper_cells(top), || {
            "a proper cell of the top matching is not meet-irreducible".into()
        })
    });
    let swapped = g.swap_colors();
    r.record("color-swap-dual", color_swap(&ml, &swapped));
    r.record(
        "screen-not-flagged",
        match screen(ml.lattice()) {
            ScreenVerdict::NotFlagged => Ok(()),
            v => Err(format!("flagged: {}", v.to_json())),
        },
    );
    r.record("birkhoff-round-trip", birkhoff_map(ml.lattice()).map(|_| ()).map_err(|e| e.to_string()));
    r.record("k33-label-invariance", label_invariance(ml.lattice(), seed));
    report.checks = r.0;
    report
}

fn flip_monotonicity(ml: &MatchingLattice<'_>) -> Result<(), String> {
    let p = ml.lattice().poset();
    for a in &ml.digraph().arcs {
        if !p.lower_covers(a.tail).contains(&a.head) {
            return Err(format!("arc M{} -> M{} is not a cover", a.tail, a.head));
        }
    }
    Ok(())
}

fn disjoint_cells(ml: &MatchingLattice<'_>) -> Result<(), String> {
    let cells = ml.graph().cells();
    for node in 0..ml.len() {
        for set in [ml.proper_cells(node), ml.improper_cells(node)] {
            for (i, &a) in set.iter().enumerate() {
                for &b in &set[i + 1..] {
                    if cells[a].shares_vertex(&cells[b]) {
                        return Err(format!(
                            "M{node}: f{} and f{} have the same status and meet",
                            cells[a].face_id, cells[b].face_id
                        ));
                    }
                }
            }
        }
    }
    Ok(())
}

/// Alternating cells through a common vertex share its matched edge, so
/// vertex-sharing and edge-sharing agree on them.
fn matched_edge_sharing(ml: &MatchingLattice<'_>) -> Result<(), String> {
    let cells = ml.graph().cells();
    for node in 0..ml.len() {
        let m = ml.matching(node);
        let alt: Vec<usize> = (0..cells.len()).filter(|&c| ml.status(node, c).is_alternating()).collect();
        for (i, &a) in alt.iter().enumerate() {
            for &b in &alt[i + 1..] {
                let (ca, cb) = (&cells[a], &cells[b]);
                for v in ca.vertex_set.ones() {
                    if !cb.vertex_set.contains(v) {
                        continue;
                    }
                    let shared = m
                        .edges()
                        .iter()
                        .find(|e| e.0 == v || e.1 == v)
                        .is_some_and(|e| ca.edge_set.contains(e) && cb.edge_set.contains(e));
                    if !shared {
                        return Err(format!(
                            "M{node}: f{} and f{} meet at {v} off the matching",
                            ca.face_id, cb.face_id
                        ));
                    }
                }
                if ca.shares_vertex(cb) != ca.shares_edge(cb) {
                    return Err(format!("M{node}: f{} and f{} share a vertex but no edge", ca.face_id, cb.face_id));
                }
            }
        }
    }
    Ok(())
}

fn hypercubes(ml: &MatchingLattice<'_>) -> Result<(), String> {
    for node in 0..ml.len() {
        for (set, want) in
            [(ml.improper_cells(node), AnchorPosition::Bottom), (ml.proper_cells(node), AnchorPosition::Top)]
        {
            let q = ml.hypercube(node, &set).map_err(|e| format!("M{node}: {e}"))?;
            if !set.is_empty() && q.position != want {
                return Err(format!("M{node}: anchor is {:?}, expected {want:?}", q.position));
            }
            if q.corners.len() != 1 << set.len() {
                return Err(format!("M{node}: {} corners for dimension {}", q.corners.len(), set.len()));
            }
        }
    }
    Ok(())
}

fn mict_all(ml: &MatchingLattice<'_>) -> Result<(), String> {
    for node in 0..ml.len() {
        for f in ml.proper_cells(node) {
            let r = ml.mict(node, f).map_err(|e| format!("M{node}: {e}"))?;
            if r.case1 && !r.cond_a {
                return Err(format!("M{node}: top matching with a non-meet-irreducible cell"));
            }
        }
    }
    Ok(())
}

fn color_swap(ml: &MatchingLattice<'_>, swapped: &PlaneGraph) -> Result<(), String> {
    let other = MatchingLattice::build(swapped).map_err(|e| format!("swapped graph: {e}"))?;
    for node in 0..ml.len() {
        for (c, cell) in swapped.cells().iter().enumerate() {
            let expected = match ml.status(node, c) {
                CellStatus::Proper => CellStatus::Improper,
                CellStatus::Improper => CellStatus::Proper,
                CellStatus::NotAlternating => CellStatus::NotAlternating,
            };
            if cell_status(swapped, ml.matching(node), cell) != expected {
                return Err(format!("M{node}: f{} keeps its status after the swap", cell.face_id));
            }
        }
    }
    ensure(ml.is_order_dual_of(&other), || "swapped lattice is not the order dual".into())
}

fn label_invariance(l: &Lattice, seed: u64) -> Result<(), String> {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut perm: Vec<usize> = (0..l.len()).collect();
    perm.shuffle(&mut rng);
    let shuffled = Lattice::from_poset(l.poset().permuted(&perm)).map_err(|e| e.to_string())?;
    let a = k33_test(l).map_err(|e| e.to_string())?.is_some();
    let b = k33_test(&shuffled).map_err(|e| e.to_string())?.is_some();
    ensure(a == b, || "relabelling changed the three-covers verdict".into())
}

#[derive(Clone, Debug)]
pub struct CorpusReport {
    pub seed: u64,
    pub graphs: Vec<GraphReport>,
}

impl CorpusReport {
    pub fn passed(&self) -> bool {
        self.graphs.len() >= MIN_CORPUS_GRAPHS && self.graphs.iter().all(GraphReport::passed)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "seed": self.seed,
            "graphs": self.graphs.iter().map(GraphReport::to_json).collect::<Vec<_>>(),
            "passed": self.passed(),
        })
    }
}

pub fn verify_corpus(entries: &[CorpusEntry], seed: u64) -> CorpusReport {
    CorpusReport { seed, graphs: entries.iter().map(|e| verify_graph(&e.name, &e.graph, seed)).collect() }
}
