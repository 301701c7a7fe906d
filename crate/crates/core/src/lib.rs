//! Geometric n-distances and a laboratory for their simplex ratios.
//!
//! An n-distance is a symmetric map of n points that vanishes exactly on
//! constant tuples and satisfies the simplex inequality
//! `d(x₁,…,xₙ) ≤ Σᵢ d(x₁,…,z,…,xₙ)` (z in slot i). This crate implements a
//! family of geometric n-distances ([`inner_balls`], [`trees`], [`classic`])
//! and the tooling in [`lab`] to evaluate simplex ratios, fuzz the
//! inequality, rebuild extremal configurations and estimate best constants.

// `!(x > 0.0)` rejects NaN on purpose; matrix loops read better with indices.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod classic;
pub mod error;
pub mod geometry;
pub mod inner_balls;
pub mod lab;
pub mod trees;

pub use error::{Error, Result};
pub use geometry::{Ball, Norm, Point, PointSet, TriangleKind};
pub use lab::{Configuration, DistanceKind, RatioWitness};
