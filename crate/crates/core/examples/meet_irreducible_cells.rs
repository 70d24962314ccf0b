//! For every matching, lists its proper and improper cells, the hypercube
//! spanned by the improper ones, and the three meet-irreducibility tests
//! for each proper cell.
//!
//! `cargo run --example meet_irreducible_cells [fixture]`

use matchlat::{fixtures, MatchingLattice};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let name = std::env::args().nth(1).unwrap_or_else(|| "grid3x4".into());
    let g = fixtures::plane_graph(&name).ok_or(format!("unknown fixture {name}"))?;
    let ml = MatchingLattice::build(&g)?;
    let face = |c: usize| g.cells()[c].face_id;
    for node in 0..ml.len() {
        let improper = ml.improper_cells(node);
        let cube = ml.hypercube(node, &improper)?;
        println!(
            "M{node}: proper {:?}, improper {:?}, hypercube dim {} ({:?})",
            ml.proper_cells(node).into_iter().map(face).collect::<Vec<_>>(),
            improper.iter().map(|&c| face(c)).collect::<Vec<_>>(),
            cube.dimension(),
            cube.position
        );
        for c in ml.proper_cells(node) {
            let r = ml.mict(node, c)?;
            println!("    f{}: a={} b={} c={}", r.cell, r.cond_a, r.cond_b, r.cond_c);
        }
    }
    Ok(())
}
