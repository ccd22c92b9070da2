//! Exact algebra for Novikov homology, Reidemeister torsion and fiberedness
//! obstructions of finitely presented groups.
//!
//! The crate is organised bottom-up: [`laurent`] provides exact Laurent
//! polynomial arithmetic, [`groups`] presentations and Fox calculus,
//! [`novikov`] truncated series in Novikov completions, [`polycyclic`] group
//! rings of class-2 nilpotent groups, and [`torsion`] assembles these into
//! torsion and verdict pipelines. [`hnn`] and [`surfaces`] hold the
//! combinatorial procedures on HNN extensions and cut surfaces.

// index loops mirror the matrix formulas they implement
#![allow(clippy::needless_range_loop)]

pub mod groups;
pub mod hnn;
pub mod laurent;
pub mod linalg;
pub mod matrix;
pub mod novikov;
pub mod polycyclic;
pub mod surfaces;
pub mod torsion;

pub use matrix::Matrix;
