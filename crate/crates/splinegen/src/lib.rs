//! B-spline approximation toolkit for unorganized points.
//!
//! The crate is organized around three layers:
//!
//! - [`spline`] and [`classical`]: exact B-spline mathematics (basis
//!   evaluation, least-squares fitting, error metrics) plus the classical
//!   parameterization and knot-placement baselines (uniform / chord /
//!   centripetal, and Uniform / AVG / KTP / NKTP knots).
//! - [`nn`] and [`model`]: a small reverse-mode autodiff engine and the
//!   generative sequence-to-sequence model built on it. The model encodes an
//!   unordered point set into permutation-equivariant embeddings, then
//!   autoregressively decodes a knot vector and a parameter assignment, with a
//!   pointer head that aligns generated parameters with the input points.
//! - [`pinn`]: a differentiable fitting layer that solves the normal
//!   equations for the control points and backpropagates the max-distance
//!   fitting loss into the generated knots and parameters.
//!
//! [`dataset`] generates synthetic training data, [`bench`] aggregates
//! per-curve fit metrics into a comparison table, and [`cli`] exposes the
//! whole pipeline as a `splinegen` binary. Each major capability also has a
//! runnable example under `examples/`.

pub mod bench;
pub mod classical;
pub mod cli;
pub mod dataset;
pub mod error;
pub mod model;
pub mod nn;
pub mod pinn;
pub mod plot;
pub mod spline;

pub use error::{Error, Result};
