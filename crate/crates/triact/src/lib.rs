//! Analysis toolkit for infinite vertex-transitive graphs of small degree,
//! generated lazily from canonical vertex tokens.
//!
//! The library ships a catalog of graph [`families`], composable [`functors`]
//! between lazy graphs, a decorated ball-automorphism engine ([`autos`]),
//! red/blue alternating-arc machinery ([`alternating`]), and growth/ends
//! diagnostics ([`dynamics`]). Everything is deterministic: equal inputs give
//! byte-equal outputs.

pub mod alternating;
pub mod autos;
mod ball;
pub mod dynamics;
mod error;
pub mod families;
pub mod functors;
mod graph;
mod token;

pub use ball::Ball;
pub use error::{Error, Result};
pub use graph::{
    reverse, underlying_undirected, DecorationSignature, EdgeColor, EdgeDecoration,
    GraphGenerator, LineKind, LineSpec, Orientation,
};
pub use token::VertexToken;

/// Resource limits. Exceeding a budget is a hard error, never a silent
/// truncation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    /// Maximum number of vertices a single extracted ball may hold.
    pub ball_vertices: u64,
    /// Maximum number of nodes an automorphism/isomorphism search may visit.
    pub search_nodes: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            ball_vertices: 200_000,
            search_nodes: 10_000_000,
        }
    }
}

impl Budget {
    /// Budget with both limits set to the same value (the `TRIACT_BUDGET`
    /// environment override).
    pub fn uniform(limit: u64) -> Self {
        Budget {
            ball_vertices: limit,
            search_nodes: limit,
        }
    }
}
