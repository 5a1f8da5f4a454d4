//! Combinatorial engine for simple drawings of graphs on the sphere.

pub mod caratheodory;
pub mod catalog;
pub mod core;
pub mod error;
pub mod ers;
pub mod explore;
pub mod flips;
pub mod geom;
pub mod graphs;
pub mod route;
pub mod transform;

pub use crate::core::{
    canonical_key, induce, locate, planarize, validate, Drawing, PlanarMap, RawDrawing,
};
pub use crate::error::{Error, Result};
