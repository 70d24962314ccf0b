//! Builds a plane bipartite graph from JSON and prints its faces, cells and
//! geometric dual.
//!
//! `cargo run --example plane_faces [graph.json]`

use matchlat::fixtures;
use matchlat::geometry::geometric_dual;
use matchlat::io::plane_graph_from_json;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = match std::env::args().nth(1) {
        Some(path) => plane_graph_from_json(&std::fs::read_to_string(path)?)?,
        None => fixtures::naphthalene(),
    };
    println!("{} vertices, {} edges, {} faces", g.vertex_count(), g.edge_count(), g.faces().len());
    for f in g.faces() {
        let tag = if f.is_outer { "outer" } else { "inner" };
        println!("  f{} ({tag}): boundary walk of {} darts", f.id, f.walk_len());
    }
    for c in g.cells() {
        let ids: Vec<u64> = c.cycle.iter().map(|&v| g.id(v)).collect();
        println!("  cell f{} clockwise: {ids:?}", c.face_id);
    }
    let dual = geometric_dual(&g)?;
    println!("{}", dual.to_dot("dual", &(0..dual.vertex_count).map(|i| format!("f{i}")).collect::<Vec<_>>()));
    Ok(())
}
