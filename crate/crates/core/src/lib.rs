//! Hypergraph-product CSS codes over GF(2).
//!
//! * [`gf2`]: bit-packed and sparse binary matrices, rank, kernels.
//! * [`hypergraph`]: hypergraphs, products, chambers, Poincaré duality.
//! * [`css`]: CSS codes, `[[N, K, D]]`, exact distance search, bound checks.
//! * [`constructions`]: classical inputs, toric codes, product codes.

pub mod constructions;
pub mod css;
pub mod error;
pub mod gf2;
pub mod hypergraph;

pub use error::{Error, Result};
pub use gf2::{BinaryMatrix, BinaryVector};
