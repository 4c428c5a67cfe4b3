//! Lifting hypergraphs into graded posets and testing them with
//! Weisfeiler-Lehman colour refinement.
//!
//! * [`hypergraph`]: the input data model, morphisms and a brute-force
//!   isomorphism oracle.
//! * [`poset`]: graded posets, their four adjacency relations and a
//!   brute-force poset isomorphism oracle.
//! * [`lift`]: the incidence and symmetric simplicial lifts, on objects and
//!   on morphisms.
//! * [`wl`]: graded colour refinement, the lifted test, the bipartite
//!   hypergraph baseline and refinement checks.
//! * [`hin`]: random-weight message passing mirroring the refinement.
//! * [`battery`]: batch comparisons over generated pair sources.

pub mod battery;
pub mod error;
pub mod hin;
pub mod hypergraph;
mod perm;
pub mod lift;
pub mod poset;
pub mod wl;

pub use error::{Error, Result};
