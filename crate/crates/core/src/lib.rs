//! Finite-truncation models of uniformly convex Banach spaces with a Schauder
//! basis: the natural Hilbert-space embedding, the induced operator adjoint,
//! Schatten classes, the Kuelbs–Steadman space and a few singular integral
//! operators, together with numerical verification suites.

pub mod cli;
pub mod error;
pub mod hilbert_embed;
pub mod integral_ops;
pub mod ks2;
pub mod numerics;
pub mod operator_algebra;
pub mod report;
pub mod rng;
pub mod schatten;
pub mod suites;
pub mod sbasis;

pub use error::{Error, Result};
