//! Runs the property suite over the bundled corpus, or the directory named
//! by `MATCHLAT_CORPUS_DIR`.
//!
//! `cargo run --example corpus_verify [seed]`

use matchlat::corpus::{self, DEFAULT_SEED};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let seed = match std::env::args().nth(1) {
        Some(s) => s.parse()?,
        None => DEFAULT_SEED,
    };
    let report = corpus::verify_corpus(&corpus::load()?, seed);
    for g in &report.graphs {
        let failed: Vec<&str> = g.checks.iter().filter(|c| !c.passed).map(|c| c.name).collect();
        println!("{:<14} {}", g.name, if failed.is_empty() { "ok".to_string() } else { failed.join(", ") });
    }
    println!("passed: {}", report.passed());
    Ok(())
}
