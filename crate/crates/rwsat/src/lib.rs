//! Exact #SAT and Max-SAT solving by dynamic programming over
//! rank-decompositions of a CNF formula's signed incidence graph.
//!
//! The pipeline: parse a CNF ([`formula`]), build its signed
//! variable–clause graph, find a branch-decomposition of small signed
//! cut-rank ([`decomposition`]), convert it into an algebraic parse
//! tree whose relabeling matrices regenerate the graph exactly
//! ([`parsetree`]), then run a table-based dynamic program over
//! subspace quadruples ([`dp`]). Brute-force reference implementations
//! used for cross-checking live in [`oracle`].

pub mod decomposition;
pub mod dp;
pub mod families;
pub mod formula;
pub mod gf2;
pub mod oracle;
pub mod parsetree;

pub use num_bigint::BigUint;
