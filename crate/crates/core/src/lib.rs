//! Toolkit for the symmetry breaking-preserving game `Sym(G)`, its variant
//! `Sym+(G)` and the Ehrenfeucht–Fraïssé game on graphs.

pub mod acceptance;
pub mod error;
pub mod exec;
pub mod experiments;
pub mod fo;
pub mod game;
pub mod graph;
pub mod solver;
pub mod strategies;

pub use error::{Error, Result};
