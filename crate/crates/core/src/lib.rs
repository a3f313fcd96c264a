//! Exact lattice and plane-curve computations for Gorenstein surfaces with
//! an exceptional unimodal singularity.

pub mod check;
pub mod constructions;
pub mod curves;
pub mod discrepancy;
pub mod graphs;
pub mod lattice;
pub mod rational;
pub mod report;
pub mod runner;
pub mod scenario;
pub mod serial;
pub mod value;

pub use rational::{Matrix, Rat};
