//! Totally geodesic hypersurfaces of Lie groups with left-invariant metrics.
//!
//! Two engines share this crate: [`lie`] and [`tg`] work on metric Lie
//! algebras (structure constants plus a Gram matrix), [`coord`] works on
//! explicit coordinate charts. The [`catalog`] ties them together with the
//! built-in examples and [`cli`] exposes everything as JSON reports.

pub mod error;
pub mod linalg;
pub mod tolerances;

pub mod coord;
pub mod lie;
pub mod tg;

pub mod algebra_file;
pub mod catalog;
pub mod report;
pub mod verify;

pub mod cli;

pub use error::{Error, Result};
pub use tolerances::Tolerances;
