//! Runs the non-matchability screen on a few distributive lattices and
//! re-checks each certificate.
//!
//! `cargo run --example screen`

use matchlat::order::{boolean_poset, chain, chain_product, filters, vertical_sum, Lattice};
use matchlat::screen::{delta_poset, k33_test, verify_verdict};
use matchlat::{fixtures, screen, MatchingLattice};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let b3 = Lattice::from_poset(boolean_poset(3))?;
    let cases = [
        ("F(Δ)", filters(&delta_poset())?),
        ("F(2^4)", filters(&boolean_poset(4))?),
        ("F(2x2x2x3)", filters(&chain_product(&[2, 2, 2, 3]))?),
        ("B3 ⊕ B3", vertical_sum(&b3, &b3)),
        ("chain(5)", Lattice::from_poset(chain(5))?),
        ("L(grid 3x4)", MatchingLattice::build(&fixtures::grid(3, 4))?.lattice().clone()),
    ];
    for (name, l) in &cases {
        let v = screen(l);
        println!("{name} ({} elements): {}", l.len(), v.to_json());
        assert!(verify_verdict(l, &v));
    }
    // The three-covers test alone misses F(Δ).
    println!("k33_test(F(Δ)) = {:?}", k33_test(&cases[0].1)?);
    Ok(())
}
