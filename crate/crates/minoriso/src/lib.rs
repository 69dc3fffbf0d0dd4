//! Isomorphism testing for graphs that exclude a fixed clique minor.
//!
//! The crate follows a decomposition approach: Weisfeiler-Leman refinement
//! and the t-CR closure find an isomorphism-invariant core of every graph,
//! small separators split off the rest, and the pieces are recombined by
//! group-pruned hypergraph isomorphism. Every step that could conclude "the
//! graph contains a `K_h` minor" reports that instead of a decision.
//!
//! Modules, bottom-up:
//! - [`graph`] and [`io`]: graphs, colorings, contraction, graph6.
//! - [`refinement`]: 1-WL with arc colors and 2-WL, canonically named.
//! - [`perm`]: Schreier-Sims, cosets, labeling cosets.
//! - [`closure`]: the t-CR closure and separator extraction.
//! - [`witness`]: agreeing tree packings and topological clique witnesses.
//! - [`initial_color`]: the invariant initial color class finder.
//! - [`iso_engine`]: the recursive test and tree decompositions.
//! - [`corpus`]: seeded generators for planar, k-tree and random graphs.
//! - [`output`]: JSON and DOT emitters used by the command-line tool.
//!
//! ```
//! use minoriso::iso_engine::{is_isomorphic, Decision};
//! use minoriso::{Config, Graph, VertexColoring};
//!
//! # fn main() -> minoriso::Result<()> {
//! let g = Graph::cycle(6);
//! let h = g.relabel(&[2, 3, 4, 5, 0, 1])?;
//! let u = VertexColoring::uniform(6);
//! match is_isomorphic(&g, &u, &h, &u, &Config::with_h(5))? {
//!     Decision::Iso { rep, aut } => assert!(g.is_isomorphism(&h, &rep) && aut.order_u64() == Some(12)),
//!     Decision::NonIso | Decision::MinorFound => unreachable!(),
//! }
//! # Ok(())
//! # }
//! ```

#![allow(clippy::type_complexity)]

pub mod closure;
pub mod config;
pub mod corpus;
pub mod error;
pub mod graph;
pub mod initial_color;
pub mod io;
pub mod iso_engine;
pub mod output;
pub mod perm;
pub mod refinement;
pub mod witness;

pub use config::{t_for_h, t_for_h_with, Config};
pub use error::{Error, Result};
pub use graph::{ArcColoring, Graph, PairColoring, VertexColoring};
