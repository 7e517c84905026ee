//! Exact construction and verification of classical r-matrices for sl_n.
//!
//! The crate builds the geometric r-matrices attached to simple
//! torsion-free sheaves on the nodal and cuspidal Weierstraß cubics, checks
//! the classical Yang–Baxter equations and related identities symbolically
//! (no sampling, no floating point), and relates solutions to Lagrangian
//! subspaces of `sl_n((z))` through their series expansions.
//!
//! Layers, bottom to top:
//!
//! - [`scalars`]: rationals, univariate polynomials, cyclotomic fields;
//! - [`lie`]: sl_n, its trace form, Casimir element and tensors;
//! - [`poly`]: Laurent polynomials and rational functions in the spectral
//!   variables, and the slot calculus `[r¹², r¹³]`;
//! - [`sheaf`]: the solution space `Sol` and the residue/evaluation pipeline;
//! - [`catalog`]: closed-form solutions;
//! - [`verify`]: identity checks and equivalence transformations;
//! - [`manin`]: expansions, the residue pairing and the W-space checks;
//! - [`io`] and [`cli`]: JSON documents and the `cybe` tool.

pub mod catalog;
pub mod cli;
pub mod io;
pub mod lie;
pub mod linalg;
pub mod manin;
pub mod poly;
pub mod scalars;
pub mod sheaf;
pub mod verify;
