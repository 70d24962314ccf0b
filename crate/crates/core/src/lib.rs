//! Perfect-matching lattices of plane bipartite graphs.
//!
//! The crate builds the Z-transformation digraph of a plane bipartite graph,
//! checks that it is the Hasse diagram of a distributive lattice, locates
//! meet-irreducible cells, and screens abstract distributive lattices for
//! non-matchability. A small planarity module supplies Kuratowski witnesses.
//!
//! ```
//! use matchlat::{fixtures, z_transform::MatchingLattice};
//!
//! let g = fixtures::grid(2, 3);
//! let ml = MatchingLattice::build(&g).unwrap();
//! assert_eq!(ml.len(), 3);
//! assert_eq!(ml.z_cut_vertices().unwrap().len(), 1);
//! ```

pub mod cli;
pub mod corpus;
pub mod fixtures;
pub mod geometry;
pub mod graph;
pub mod io;
pub mod matchings;
pub mod order;
pub mod planarity;
pub mod screen;
pub mod z_transform;

pub use geometry::{build_plane_graph, PlaneGraph};
pub use graph::Graph;
pub use matchings::Matching;
pub use order::{Lattice, Poset};
pub use screen::{screen, ScreenVerdict};
pub use z_transform::MatchingLattice;
