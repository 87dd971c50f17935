//! Explicit construction and verification of a cubic vertex-transitive graph
//! with no semiregular automorphism of order 4 or more.
//!
//! The graph is the coset graph of `G = V ⋊ Q`, where `V` is the
//! extraspecial 3-group of order `3^(2^m+1)` and `Q` is dihedral of order
//! `2^(m+2)`. The crate provides the group arithmetic, the graph, a generic
//! permutation-group and graph-automorphism engine, and the number theory
//! behind the argument.

pub mod error;
pub mod extraspecial;
pub mod ff3;
pub mod graphs;
pub mod groupg;
pub mod numth;
pub mod permaut;
pub mod verify;

pub use error::{Error, Result};
