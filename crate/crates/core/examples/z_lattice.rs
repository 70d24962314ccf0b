//! Builds the Z-transformation digraph, checks it is the Hasse diagram of
//! the matching lattice and writes it as DOT.
//!
//! `cargo run --example z_lattice [fixture] > z.dot`

use matchlat::{fixtures, MatchingLattice};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let name = std::env::args().nth(1).unwrap_or_else(|| "cube".into());
    let g = fixtures::plane_graph(&name).ok_or(format!("unknown fixture {name}"))?;
    let ml = MatchingLattice::build(&g)?;
    let (top, bottom) = ml.extremal()?;
    eprintln!(
        "{name}: {} matchings, {} arcs, top M{top}, bottom M{bottom}, cut vertices {:?}",
        ml.len(),
        ml.digraph().arcs.len(),
        ml.z_cut_vertices()?
    );
    print!("{}", ml.digraph().to_dot(&g));
    Ok(())
}
