//! Cycles in repeated exponentiation modulo prime powers.
//!
//! The graph `Γ_{p,n,q}` has vertices `Z_{p^n}` and an edge from `x` to
//! `q^y mod p^n` for every integer `y ≡ x (mod p^n)`; `Γ^{+r}` also shifts each
//! target by `-r..=r`. This crate builds both graphs, counts closed walks of
//! length `k` exactly (brute force and via the `p x p` level-1 matrix), and
//! checks the counting theorems and structural lemmas about them, producing
//! JSON reports.
//!
//! ```
//! use expcycles::{build_graph, closed_walk_trace, reduced_trace, GraphParams};
//!
//! let params = GraphParams::new(3, 2, 2).unwrap();
//! let graph = build_graph(&params).unwrap();
//! assert_eq!(closed_walk_trace(&graph, 4).unwrap(), 16u32.into());
//! assert_eq!(reduced_trace(&params, 4).unwrap(), 16u32.into());
//! ```

pub mod blockalg;
pub mod census;
pub mod cli;
pub mod error;
pub mod graph;
pub mod ntheory;
pub mod report;
pub mod sweep;
pub mod verify;

pub use census::{
    closed_walk_trace, closed_walk_trace_all, f_map, periodic_points, reduced_trace, Census, Method,
};
pub use error::{Error, Result};
pub use graph::{
    build_graph, build_perturbed_graph, extract_blocks, BlockDecomposition, ExpGraph, Limits, PerturbParams,
};
pub use ntheory::GraphParams;
pub use report::{Claim, ParamRecord, Verdict, VerificationReport};
