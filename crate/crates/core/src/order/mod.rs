//! Finite posets and lattices: filters, duals, irreducibles, the Birkhoff
//! correspondence, isomorphism testing and lattice combinators.

mod combinators;
mod filters;
mod iso;
mod lattice;
mod poset;

use thiserror::Error;

pub use combinators::{linear_sum, product, vertical_sum};
pub use filters::{
    birkhoff, birkhoff_map, count_filters, enumerate_filters, filters, filters_bounded, join_irreducible_poset,
    BirkhoffMap, DEFAULT_FILTER_LIMIT,
};
pub use iso::{is_isomorphism, iso, iso_bounded, DEFAULT_ISO_LIMIT};
pub use lattice::{
    distributivity_counterexample, is_distributive, is_distributive_exhaustive, join_irreducibles, meet_irreducibles,
    Construction, Lattice, TABLE_LIMIT,
};
pub use poset::{antichain, boolean_poset, chain, chain_product, Poset};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OrderError {
    #[error("unknown element {0}")]
    UnknownElement(String),
    #[error("duplicate element label {0:?}")]
    DuplicateLabel(String),
    #[error("relation contains a cycle")]
    Cyclic,
    #[error("{0} < {1} is implied by other covers")]
    NotReduced(String, String),
    #[error("elements {0} and {1} lack a meet or a join")]
    NotALattice(String, String),
    #[error("lattice is not distributive")]
    NotDistributive,
    #[error("{what} exceeds the configured bound of {limit}")]
    TooLarge { what: &'static str, limit: usize },
    #[error("empty poset is not a lattice")]
    Empty,
}

/// Poset dual.
pub fn dual(p: &Poset) -> Poset {
    p.dual()
}
