//! Cycle-assigning polynomials of multigraphs.
//!
//! A *cycle-assigning* `α` maps every cycle of a multigraph to `0` or `1`.
//! It is *admissible* when it is induced by some edge function `f: E → A`
//! into a finite abelian group, with `α(C) = 0` exactly when the signed sum
//! of `f` around `C` vanishes. For an admissible `α`, `P(G,α;k)` evaluated at
//! `k = |A|` counts the vertex colorings `c: V → A` with
//! `c(head) - c(tail) ≠ f(e)` on every edge.

pub mod assigning;
pub mod cli;
pub mod cycles;
pub mod error;
pub mod group;
pub mod multigraph;
pub mod polynomial;

pub use assigning::Assigning;
pub use cycles::{Bond, Cycle, LinearOrder};
pub use error::{Error, Result};
pub use group::{AbelianGroup, EdgeFunction, GroupElement};
pub use multigraph::{Edge, EdgeId, EdgeSet, MultiGraph, VertexId};
pub use polynomial::{IntPolynomial, Method};

/// Limits on brute-force enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    /// Upper bound on single-loop iterations (colorings, edge functions).
    pub max_iterations: u64,
    /// Largest edge count for which all `2^|E|` subsets may be visited.
    pub max_subset_edges: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_iterations: 100_000_000,
            max_subset_edges: 20,
        }
    }
}
