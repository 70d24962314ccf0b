//! Command logic behind the `matchlat` binary. Every command returns a
//! [`RunReport`]; errors carry the process exit code.

use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::corpus::{self, CorpusError, DEFAULT_SEED};
use crate::fixtures;
use crate::geometry::PlaneGraph;
use crate::graph::Graph;
use crate::io::{
    classification_json, hasse_dot, lattice_json, matching_json, plane_graph_to_json, poset_to_json, GraphDoc, IoError,
    PosetDoc, PosetKind,
};
use crate::matchings::{classify_cells, enumerate_perfect_matchings, is_elementary};
use crate::order::{
    birkhoff_map, chain_product, filters_bounded, is_distributive, iso, join_irreducibles, meet_irreducibles, Lattice,
    OrderError, Poset, DEFAULT_FILTER_LIMIT,
};
use crate::planarity::{is_planar, kuratowski_witness, validate_witness};
use crate::screen::{screen, screen_poset, verify_poset_verdict, verify_verdict};
use crate::z_transform::{matching_text, node_label, MatchingLattice, ZError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_INVARIANT: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    File { path: PathBuf, source: std::io::Error },
    #[error(transparent)]
    Input(#[from] IoError),
    #[error(transparent)]
    Order(#[from] OrderError),
    #[error(transparent)]
    Z(#[from] ZError),
    #[error(transparent)]
    Corpus(#[from] CorpusError),
    #[error("invariant violated: {0}")]
    Invariant(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::File { .. } | CliError::Input(_) | CliError::Corpus(_) => EXIT_INPUT,
            CliError::Order(_) => EXIT_INPUT,
            CliError::Z(ZError::NoPerfectMatching | ZError::Matching(_)) => EXIT_INPUT,
            CliError::Z(_) | CliError::Invariant(_) => EXIT_INVARIANT,
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "matchlat", version, about = "Perfect-matching lattices of plane bipartite graphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone, Default)]
pub struct Common {
    /// Input JSON file.
    pub input: Option<PathBuf>,
    /// Use a built-in fixture instead of a file.
    #[arg(long, value_name = "NAME")]
    pub fixture: Option<String>,
    /// Also write the report to this file.
    #[arg(long, value_name = "OUT")]
    pub json: Option<PathBuf>,
    /// Include wall-clock timings (reports are then no longer reproducible).
    #[arg(long)]
    pub timings: bool,
}

/// How a chain length given with `--chains` is read.
#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum ChainLength {
    /// `n` is the number of elements.
    #[default]
    Elements,
    /// `n` is the number of covers, i.e. `n + 1` elements.
    Covers,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Enumerate perfect matchings and classify every cell for each.
    Matchings {
        #[command(flatten)]
        common: Common,
    },
    /// Build the Z-transformation digraph and the matching lattice.
    Lattice {
        #[command(flatten)]
        common: Common,
        /// Write the digraph as DOT.
        #[arg(long, value_name = "OUT")]
        dot: Option<PathBuf>,
    },
    /// Filter lattice of a poset, with irreducible counts and a Birkhoff round trip.
    Filters {
        #[command(flatten)]
        common: Common,
        /// Write the Hasse diagram as DOT.
        #[arg(long, value_name = "OUT")]
        dot: Option<PathBuf>,
        /// Refuse filter lattices larger than this.
        #[arg(long, default_value_t = DEFAULT_FILTER_LIMIT)]
        max_size: usize,
    },
    /// Non-matchability screen with a re-checked certificate.
    Screen {
        #[command(flatten)]
        common: Common,
        /// Treat the input poset as the lattice itself rather than taking filters.
        #[arg(long)]
        lattice: bool,
        /// Screen the filters of a product of chains, e.g. `2,2,2,3`.
        #[arg(long, value_delimiter = ',', value_name = "N,N,...")]
        chains: Option<Vec<usize>>,
        #[arg(long, value_enum, default_value_t)]
        chain_length: ChainLength,
        #[arg(long, default_value_t = DEFAULT_FILTER_LIMIT)]
        max_size: usize,
    },
    /// Planarity verdict and Kuratowski witness.
    Planarity {
        #[command(flatten)]
        common: Common,
    },
    /// Run the property suite over the corpus.
    CorpusVerify {
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, value_name = "OUT")]
        json: Option<PathBuf>,
        #[arg(long)]
        timings: bool,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunReport {
    pub command: String,
    pub input_digest: String,
    pub results: Value,
    pub timings: Option<Value>,
}

impl RunReport {
    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "command": self.command,
            "input_digest": self.input_digest,
            "results": self.results,
        });
        if let Some(t) = &self.timings {
            v["timings"] = t.clone();
        }
        v
    }

    pub fn to_string_pretty(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("reports serialise") + "\n"
    }
}

fn digest(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::File { path: path.to_path_buf(), source })
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|source| CliError::File { path: path.to_path_buf(), source })
}

/// Exactly one of a file or a fixture.
fn source(c: &Common) -> Result<Result<&Path, &str>, CliError> {
    match (&c.input, &c.fixture) {
        (Some(p), None) => Ok(Ok(p)),
        (None, Some(f)) => Ok(Err(f)),
        (Some(_), Some(_)) => Err(CliError::Usage("give either an input file or --fixture, not both".into())),
        (None, None) => Err(CliError::Usage("an input file or --fixture is required".into())),
    }
}

fn unknown_fixture(name: &str, known: &[&str]) -> CliError {
    CliError::Usage(format!("unknown fixture {name:?}; known: {}", known.join(", ")))
}

fn load_plane(c: &Common) -> Result<(PlaneGraph, String), CliError> {
    match source(c)? {
        Ok(path) => {
            let text = read(path)?;
            Ok((GraphDoc::parse(&text)?.to_plane_graph()?, digest(text.as_bytes())))
        }
        Err(name) => {
            let g = fixtures::plane_graph(name).ok_or_else(|| unknown_fixture(name, &fixtures::PLANE_FIXTURES))?;
            let d = digest(plane_graph_to_json(&g).as_bytes());
            Ok((g, d))
        }
    }
}

fn load_graph(c: &Common) -> Result<(Graph, String), CliError> {
    match source(c)? {
        Ok(path) => {
            let text = read(path)?;
            Ok((GraphDoc::parse(&text)?.to_graph()?, digest(text.as_bytes())))
        }
        Err(name) => {
            let g = fixtures::graph(name).ok_or_else(|| {
                let known: Vec<&str> =
                    fixtures::GRAPH_FIXTURES.iter().chain(&fixtures::PLANE_FIXTURES).copied().collect();
                unknown_fixture(name, &known)
            })?;
            let d = digest(GraphDoc::from_graph_labels(&g).to_json().as_bytes());
            Ok((g, d))
        }
    }
}

fn load_poset(c: &Common) -> Result<(Poset, PosetKind, String), CliError> {
    match source(c)? {
        Ok(path) => {
            let text = read(path)?;
            let doc = PosetDoc::parse(&text)?;
            Ok((doc.to_poset()?, doc.kind()?, digest(text.as_bytes())))
        }
        Err(name) => {
            let p = fixtures::poset(name).ok_or_else(|| unknown_fixture(name, &fixtures::POSET_FIXTURES))?;
            let d = digest(poset_to_json(&p).as_bytes());
            Ok((p, PosetKind::Poset, d))
        }
    }
}

/// Runs one command, writing any `--json`/`--dot` files it was asked for.
pub fn run(cmd: &Command) -> Result<RunReport, CliError> {
    let start = Instant::now();
    let (name, json_out, timings, mut report) = match cmd {
        Command::Matchings { common } => ("matchings", &common.json, common.timings, cmd_matchings(common)?),
        Command::Lattice { common, dot } => {
            ("lattice", &common.json, common.timings, cmd_lattice(common, dot.as_deref())?)
        }
        Command::Filters { common, dot, max_size } => {
            ("filters", &common.json, common.timings, cmd_filters(common, dot.as_deref(), *max_size)?)
        }
        Command::Screen { common, lattice, chains, chain_length, max_size } => (
            "screen",
            &common.json,
            common.timings,
            cmd_screen(common, *lattice, chains.as_deref(), *chain_length, *max_size)?,
        ),
        Command::Planarity { common } => ("planarity", &common.json, common.timings, cmd_planarity(common)?),
        Command::CorpusVerify { seed, json, timings } => ("corpus-verify", json, *timings, cmd_corpus_verify(*seed)?),
    };
    debug_assert_eq!(report.command, name);
    if timings {
        report.timings = Some(json!({"total_ms": start.elapsed().as_secs_f64() * 1000.0}));
    }
    if let Some(path) = json_out {
        write(path, &report.to_string_pretty())?;
    }
    if let Some(Value::String(msg)) = report.results.get("invariant_failure") {
        return Err(CliError::Invariant(msg.clone()));
    }
    Ok(report)
}

pub fn cmd_matchings(c: &Common) -> Result<RunReport, CliError> {
    let (g, input_digest) = load_plane(c)?;
    let ms = enumerate_perfect_matchings(&g);
    let mut list = Vec::with_capacity(ms.len());
    for m in &ms {
        let cls = classify_cells(&g, m).map_err(ZError::from)?;
        list.push(json!({"edges": matching_json(&g, m), "cells": classification_json(&cls)}));
    }
    Ok(RunReport {
        command: "matchings".into(),
        input_digest,
        results: json!({
            "vertices": g.vertex_count(),
            "edges": g.edge_count(),
            "cells": g.cells().iter().map(|c| c.face_id).collect::<Vec<_>>(),
            "elementary": is_elementary(&g),
            "count": ms.len(),
            "matchings": list,
        }),
        timings: None,
    })
}

pub fn cmd_lattice(c: &Common, dot: Option<&Path>) -> Result<RunReport, CliError> {
    let (g, input_digest) = load_plane(c)?;
    let ml = MatchingLattice::build(&g)?;
    let (top, bottom) = ml.extremal()?;
    let cuts = ml.z_cut_vertices()?;
    let z = ml.digraph();
    if let Some(path) = dot {
        write(path, &z.to_dot(&g))?;
    }
    let label = |i: usize| node_label(i);
    let matchings: serde_json::Map<String, Value> =
        z.nodes.iter().enumerate().map(|(i, m)| (label(i), json!(matching_text(&g, m)))).collect();
    let arcs: Vec<Value> =
        z.arcs.iter().map(|a| json!({"tail": label(a.tail), "head": label(a.head), "cell": a.cell})).collect();
    let mi_cells: serde_json::Map<String, Value> = (0..ml.len())
        .map(|i| {
            let faces: Vec<usize> = ml.meet_irreducible_cells(i).into_iter().map(|c| g.cells()[c].face_id).collect();
            (label(i), json!(faces))
        })
        .collect();
    Ok(RunReport {
        command: "lattice".into(),
        input_digest,
        results: json!({
            "size": ml.len(),
            "matchings": matchings,
            "arcs": arcs,
            "lattice": lattice_json(ml.lattice()),
            "distributive": is_distributive(ml.lattice()),
            "top": label(top),
            "bottom": label(bottom),
            "cut_vertices": cuts.into_iter().map(label).collect::<Vec<_>>(),
            "meet_irreducibles": meet_irreducibles(ml.lattice()).into_iter().map(label).collect::<Vec<_>>(),
            "meet_irreducible_cells": mi_cells,
        }),
        timings: None,
    })
}

/// Lattices up to this size are listed element by element in reports.
const LIST_LIMIT: usize = 1024;

pub fn cmd_filters(c: &Common, dot: Option<&Path>, max_size: usize) -> Result<RunReport, CliError> {
    let (p, _, input_digest) = load_poset(c)?;
    let l = filters_bounded(&p, max_size)?;
    if let Some(path) = dot {
        write(path, &hasse_dot(l.poset(), "filters"))?;
    }
    let round_trip = match birkhoff_map(&l) {
        Ok(b) => iso(&b.join_irreducibles, &p)?.is_some(),
        Err(_) => false,
    };
    let mut results = json!({
        "poset_size": p.len(),
        "size": l.len(),
        "covers": l.poset().cover_count(),
        "meet_irreducibles": meet_irreducibles(&l).len(),
        "join_irreducibles": join_irreducibles(&l).len(),
        "distributive": is_distributive(&l),
        "birkhoff_round_trip": round_trip,
    });
    if l.len() <= LIST_LIMIT {
        results["lattice"] = lattice_json(&l);
        results["top"] = json!(l.label(l.top()));
        results["bottom"] = json!(l.label(l.bottom()));
    }
    if !round_trip {
        results["invariant_failure"] = json!("filter lattice does not round-trip through its Birkhoff poset");
    }
    Ok(RunReport { command: "filters".into(), input_digest, results, timings: None })
}

pub fn cmd_screen(
    c: &Common,
    as_lattice: bool,
    chains: Option<&[usize]>,
    reading: ChainLength,
    max_size: usize,
) -> Result<RunReport, CliError> {
    let (p, kind, input_digest) = match chains {
        Some(sizes) => {
            if c.input.is_some() || c.fixture.is_some() {
                return Err(CliError::Usage("--chains replaces the input file and --fixture".into()));
            }
            let elements: Vec<usize> =
                sizes.iter().map(|&n| if reading == ChainLength::Covers { n + 1 } else { n }).collect();
            if elements.contains(&0) {
                return Err(CliError::Usage("chains need at least one element".into()));
            }
            let p = chain_product(&elements);
            let d = digest(poset_to_json(&p).as_bytes());
            (p, PosetKind::Poset, d)
        }
        None => load_poset(c)?,
    };
    let kind = if as_lattice { PosetKind::Lattice } else { kind };
    let (verdict, verified, size) = match kind {
        PosetKind::Lattice => {
            let v = screen_poset(&p);
            let ok = verify_poset_verdict(&p, &v);
            (v, ok, p.len())
        }
        PosetKind::Poset => {
            let l: Lattice = filters_bounded(&p, max_size)?;
            let v = screen(&l);
            let ok = verify_verdict(&l, &v);
            (v, ok, l.len())
        }
    };
    let mut results = json!({
        "input_kind": if kind == PosetKind::Lattice { "lattice" } else { "poset" },
        "lattice_size": size,
        "verdict": verdict.to_json(),
        "certificate_verified": verified,
    });
    if !verified {
        results["invariant_failure"] = json!("screen certificate failed independent verification");
    }
    Ok(RunReport { command: "screen".into(), input_digest, results, timings: None })
}

pub fn cmd_planarity(c: &Common) -> Result<RunReport, CliError> {
    let (g, input_digest) = load_graph(c)?;
    let planar = is_planar(&g);
    let mut results = json!({
        "vertices": g.vertex_count(),
        "edges": g.edge_count(),
        "planar": planar,
        "witness": Value::Null,
    });
    if !planar {
        let w = kuratowski_witness(&g).map_err(|e| CliError::Invariant(e.to_string()))?;
        let valid = validate_witness(&g, &w);
        results["witness"] = w.to_json(&g);
        results["witness_valid"] = json!(valid);
        if !valid {
            results["invariant_failure"] = json!("Kuratowski witness failed validation");
        }
    }
    Ok(RunReport { command: "planarity".into(), input_digest, results, timings: None })
}

pub fn cmd_corpus_verify(seed: u64) -> Result<RunReport, CliError> {
    let entries = corpus::load()?;
    if entries.len() < corpus::MIN_CORPUS_GRAPHS {
        return Err(CorpusError::TooSmall(entries.len()).into());
    }
    let mut hasher = Sha256::new();
    for e in &entries {
        hasher.update(e.name.as_bytes());
        hasher.update(plane_graph_to_json(&e.graph).as_bytes());
    }
    let report = corpus::verify_corpus(&entries, seed);
    let mut results = report.to_json();
    if !report.passed() {
        let failed: Vec<&str> = report.graphs.iter().filter(|g| !g.passed()).map(|g| g.name.as_str()).collect();
        results["invariant_failure"] = json!(format!("properties failed on {}", failed.join(", ")));
    }
    Ok(RunReport {
        command: "corpus-verify".into(),
        input_digest: hex::encode(hasher.finalize()),
        results,
        timings: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fixture(name: &str) -> Common {
        Common { fixture: Some(name.into()), ..Common::default() }
    }

    #[test]
    fn matchings_counts() {
        let r = cmd_matchings(&fixture("hexagon")).unwrap();
        assert_eq!(r.results["count"], 2);
        let r = cmd_matchings(&fixture("grid2x3")).unwrap();
        assert_eq!(r.results["count"], 3);
        let first = &r.results["matchings"][0]["cells"];
        assert!(first.as_object().unwrap().values().all(|v| v.is_string()));
    }

    #[test]
    fn odd_graph_has_no_matchings() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("p3.json");
        std::fs::write(&path, plane_graph_to_json(&fixtures::path(3))).unwrap();
        let c = Common { input: Some(path), ..Common::default() };
        let r = cmd_matchings(&c).unwrap();
        assert_eq!(r.results["count"], 0);
        assert_eq!(r.results["matchings"], json!([]));
    }

    #[test]
    fn lattice_reports() {
        let r = cmd_lattice(&fixture("grid2x3"), None).unwrap();
        assert_eq!(r.results["size"], 3);
        assert_eq!(r.results["cut_vertices"].as_array().unwrap().len(), 1);
        let r = cmd_lattice(&fixture("k2"), None).unwrap();
        assert_eq!(r.results["size"], 1);
        assert_eq!(r.results["top"], r.results["bottom"]);
    }

    #[test]
    fn filters_and_screen() {
        let r = cmd_filters(&fixture("delta"), None, DEFAULT_FILTER_LIMIT).unwrap();
        assert_eq!(r.results["size"], 114);
        assert_eq!(r.results["meet_irreducibles"], 11);
        assert_eq!(r.results["birkhoff_round_trip"], true);
        let r = cmd_screen(&fixture("delta"), false, None, ChainLength::Elements, DEFAULT_FILTER_LIMIT).unwrap();
        assert_eq!(r.results["verdict"]["reason"], "delta-convex");
        let r = cmd_screen(&fixture("chain5"), false, None, ChainLength::Elements, DEFAULT_FILTER_LIMIT).unwrap();
        assert_eq!(r.results["verdict"]["status"], "not-flagged");
        let none = Common::default();
        let r = cmd_screen(&none, false, Some(&[1, 1, 1, 2]), ChainLength::Covers, DEFAULT_FILTER_LIMIT).unwrap();
        assert_eq!(r.results["lattice_size"], 887);
        let r = cmd_filters(&fixture("delta"), None, 100);
        assert_eq!(r.unwrap_err().exit_code(), EXIT_INPUT);
    }

    #[test]
    fn planarity_reports() {
        let r = cmd_planarity(&fixture("sstar")).unwrap();
        assert_eq!(r.results["witness"]["kind"], "K5Subdivision");
        let r = cmd_planarity(&fixture("k4")).unwrap();
        assert_eq!(r.results["planar"], true);
        let r = cmd_planarity(&fixture("k33")).unwrap();
        assert_eq!(r.results["witness"]["kind"], "K33Subdivision");
    }

    #[test]
    fn usage_errors() {
        assert_eq!(cmd_matchings(&Common::default()).unwrap_err().exit_code(), EXIT_INPUT);
        assert_eq!(cmd_matchings(&fixture("nope")).unwrap_err().exit_code(), EXIT_INPUT);
        let r = cmd_lattice(&fixture("two-hexagons"), None);
        assert!(r.is_ok());
    }

    #[test]
    fn reports_are_reproducible() {
        let a = cmd_lattice(&fixture("cube"), None).unwrap().to_string_pretty();
        let b = cmd_lattice(&fixture("cube"), None).unwrap().to_string_pretty();
        assert_eq!(a, b);
    }
}
