//! Space-like stationary surfaces in Lorentz–Minkowski space R^{3,1}.
//!
//! The crate builds surfaces from Weierstrass data `(ψ₁, ψ₂, dh)`, checks the
//! regularity and period conditions, computes the anti-holomorphic fixed-point
//! set `E_f` of a rational Gauss-map relation `ψ₂ = f(ψ₁)`, and audits
//! ramification and unicity bounds for the Gauss map on concrete examples.

// `!(x > 0.0)` style guards reject NaN along with out-of-range values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cplane;
pub mod efset;
pub mod error;
pub mod ratfun;
pub mod valuedist;
pub mod verdict;
pub mod weierstrass;

pub use cplane::{chordal, mobius_apply, ExtendedComplex, MobiusTransform};
pub use error::{Error, Result};
pub use verdict::Verdict;
