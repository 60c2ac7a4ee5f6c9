//! Exact computations for quivers with potentials: Jacobian algebras, Euler forms and Coxeter
//! transformations, QP mutation, Galois coverings, and the verification suite built on them.

pub mod catalog;
pub mod chain;
pub mod covering;
pub mod error;
pub mod format;
pub mod forms;
pub mod jacobian;
pub mod isomorphism;
pub mod linalg;
pub mod mutation;
pub mod potential;
pub mod qp;
pub mod quiver;
pub mod report;
pub mod repr;
pub mod scalar;
pub mod verify;

pub use error::{Error, Result};
