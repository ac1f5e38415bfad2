//! Multi-graded Betti numbers of normal edge rings.
//!
//! The edge ring `K[G]` of a graph is the monomial subalgebra generated by
//! `y_a y_b` for every edge `{a, b}`. For compact graphs, multi-path graphs
//! and two-ear graphs the minimal free resolution of `K[G]` is known in
//! closed form: every non-zero Betti number in homological degree `i` sits
//! at the top degree of the canonical module of some induced subgraph with
//! `i + 1` minimal cycles (or paths, or spokes).
//!
//! This crate computes those tables ([`formula`]) and carries an independent
//! brute-force check ([`oracle`]) based on squarefree divisor complexes and
//! exact simplicial homology ([`homology`]).
//!
//! The crate is `no_std` and only needs `alloc`.

#![cfg_attr(not(test), no_std)]
#![forbid(unsafe_code)]
#![allow(clippy::needless_range_loop)]

extern crate alloc;

pub mod canonical;
pub mod census;
pub mod cone;
mod error;
pub mod formula;
pub mod graph;
pub mod homology;
pub mod multidegree;
pub mod oracle;
pub mod quotients;

pub use error::Error;

pub type Result<T> = core::result::Result<T, Error>;
