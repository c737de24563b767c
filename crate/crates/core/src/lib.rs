//! Ziegler spectra of uniserial rings, up to topological indistinguishability.
//!
//! The crate turns the known explicit descriptions of these spectra into
//! executable objects and checks each symbolic criterion against a
//! brute-force oracle on finite instances:
//!
//! - [`valuegroup`]: exact arithmetic in a real quadratic field, finitely
//!   generated subgroups of ℝ and their cuts.
//! - [`invariant`]: points, shift equivalence, W-sets and specialization for
//!   invariant rank-one uniserial domains (dense value group or ℤ).
//! - [`exceptional`]: the spectra of exceptional domains of type `C_k`.
//! - [`nearly_simple`]: the four-class spectrum of nearly simple domains.
//! - [`topology`]: finite spaces given by a specialization preorder.
//! - [`chainring`]: pp-formulas, e-pairs and spectra over `ℤ/pⁿ`.
//! - [`ringspec`]: the JSON ring descriptor.
//!
//! Loops over large finite search spaces go through [`Exec`], which uses
//! rayon when the `parallel` feature is on.

pub mod chainring;
pub mod exceptional;
mod exec;
pub mod family;
pub mod ideal;
pub mod invariant;
pub mod nearly_simple;
pub mod ringspec;
pub mod topology;
pub mod valuegroup;

pub use exec::Exec;
