//! Filter lattice of a poset and the Birkhoff round trip back to it.
//!
//! `cargo run --example filters_birkhoff [poset fixture]`

use matchlat::fixtures;
use matchlat::io::hasse_dot;
use matchlat::order::{birkhoff, filters, iso, join_irreducibles, meet_irreducibles};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let name = std::env::args().nth(1).unwrap_or_else(|| "delta".into());
    let p = fixtures::poset(&name).ok_or(format!("unknown fixture {name}"))?;
    let l = filters(&p)?;
    println!(
        "F({name}): {} elements, {} join-irreducible, {} meet-irreducible",
        l.len(),
        join_irreducibles(&l).len(),
        meet_irreducibles(&l).len()
    );
    let j = birkhoff(&l)?;
    println!("J(F({name})) ≅ {name}: {}", iso(&j, &p)?.is_some());
    print!("{}", hasse_dot(&j, "J"));
    Ok(())
}
