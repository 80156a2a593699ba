//! Finite-dimensional g-fusion frames.
//!
//! A g-fusion frame for `H = C^n` is a family of triples `(W_j, Λ_j, v_j)`
//! with constants `0 < A <= B` such that
//!
//! ```text
//! A ||f||^2 <= Σ_j v_j^2 ||Λ_j π_{W_j} f||^2 <= B ||f||^2   for all f in H.
//! ```
//!
//! Classical frames, fusion frames and g-frames are the special cases
//! `Λ_j = f_j^H`, `Λ_j = I` and `W_j = H`. This crate computes the synthesis,
//! analysis and frame operators of such a family, its optimal bounds, the
//! canonical dual and Parseval rescaling, minimal-norm coefficients,
//! completeness and member-deletion diagnostics, and images under bounded
//! operators.
//!
//! ```
//! use gfusion_core::{engine, fixtures, Tolerance};
//!
//! let frame = fixtures::two_subspace_c2();
//! let report = engine::frame_bounds(&frame, &Tolerance::default()).unwrap();
//! assert!(report.is_frame);
//! assert!((report.bounds.lower - (1.0 - 0.5f64.sqrt())).abs() < 1e-12);
//! ```

pub mod engine;
pub mod error;
pub mod fixtures;
pub mod generators;
pub mod io;
pub mod kernel;
pub mod model;

pub use error::{Error, Result};
pub use kernel::{Matrix, Spectrum, Tolerance, Vector};
pub use model::{CoefficientFamily, FrameBounds, FrameReport, GFusionFrame, Member, Subspace};
