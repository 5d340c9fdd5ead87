//! Rigidity of linearly constrained frameworks in the plane.

pub mod analysis;
pub mod certificates;
pub mod cli;
pub mod construct;
pub mod error;
pub mod graph;
pub mod io;
pub mod linalg;
pub mod matroid;

pub use error::{Error, Result};
pub use graph::{DegreeProfile, Element, ElementId, LoopedSimpleGraph};
