//! Enumerates perfect matchings and classifies every cell as proper,
//! improper or not alternating.
//!
//! `cargo run --example matchings [fixture]`

use matchlat::fixtures;
use matchlat::matchings::{classify_cells, enumerate_perfect_matchings, is_elementary};
use matchlat::z_transform::matching_text;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let name = std::env::args().nth(1).unwrap_or_else(|| "grid2x3".into());
    let g = fixtures::plane_graph(&name).ok_or(format!("unknown fixture {name}"))?;
    let ms = enumerate_perfect_matchings(&g);
    println!("{name}: {} perfect matchings, elementary = {}", ms.len(), is_elementary(&g));
    for m in &ms {
        let cls: Vec<String> =
            classify_cells(&g, m)?.iter().map(|c| format!("f{}={}", c.face_id, c.status.as_str())).collect();
        println!("  {}  {}", matching_text(&g, m), cls.join(" "));
    }
    Ok(())
}
