//! Exact projective geometry of conics.
//!
//! The crate builds, over exact scalar fields, the harmonic reflection of
//! the plane across a chord of a conic and uses it to check Pascal's
//! hexagon theorem and the projective butterfly theorems instance by
//! instance, with literal equality.

pub mod conic;
pub mod demo;
pub mod engine;
pub mod error;
pub mod field;
pub mod fuzz;
pub mod projective;
pub mod render;
pub mod run;
pub mod scenario;

pub use error::{GeometryError, Result};
