//! Quantized function algebras on generalized flag manifolds.
//!
//! The crate builds root data and Weyl groups, finite-dimensional
//! `U_q(g)`-modules, the Hopf *-algebra `C_q[G]` of matrix coefficients, its
//! irreducible Fock-space *-representations, and the subalgebras
//! `C_q[K \ G]` attached to Levi subgroups. The `classify` module bundles
//! the structural checks into reports.
//!
//! Node indices are 0-based throughout the API. Display forms and the
//! command-line interface use 1-based labels.

pub mod classify;
pub mod cli;
pub mod coeffalg;
pub mod error;
pub mod flagalg;
pub mod fockrep;
pub mod rootdata;
pub mod scalar;
pub mod uqmod;
pub mod weyl;

pub use error::{Error, Result};
pub use rootdata::{RootSystem, TypeLetter, Weight, Q};
pub use scalar::Backend;
pub use weyl::WeylWord;
