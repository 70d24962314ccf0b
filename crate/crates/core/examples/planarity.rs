//! Planarity verdicts with Kuratowski witnesses.
//!
//! `cargo run --example planarity [graph fixture]`

use matchlat::fixtures;
use matchlat::planarity::{is_planar, kuratowski_witness};

fn main() {
    let names: Vec<String> = match std::env::args().nth(1) {
        Some(n) => vec![n],
        None => ["k4", "k5", "k33", "sstar", "cube"].map(String::from).to_vec(),
    };
    for name in names {
        let Some(g) = fixtures::graph(&name) else {
            eprintln!("unknown fixture {name}");
            continue;
        };
        if is_planar(&g) {
            println!("{name}: planar");
        } else {
            let w = kuratowski_witness(&g).expect("non-planar");
            println!("{name}: {}", w.to_json(&g));
        }
    }
}
