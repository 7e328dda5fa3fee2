//! Spherical curves: Gauss words, combinatorial maps, chord-diagram
//! patterns, local moves, reduction and exhaustive census.

pub mod chords;
pub mod census;
pub mod cmap;
pub mod error;
pub mod harness;
pub mod moves;
pub mod reduce;
pub mod word;

pub use cmap::{realize_all, CombMap, Embedding, FaceCensus};
pub use error::{Error, Result};
pub use moves::{MoveKind, MoveSite};
pub use word::{parse, Certificate, GaussWord};
