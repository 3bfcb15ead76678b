//! Graph categories, pushouts of graphs, and the contravariant path-algebra and Leavitt
//! path-algebra functors, with exact arithmetic throughout.

pub mod error;
pub mod expr;
pub mod field;
pub mod graph;
pub mod io;
pub mod linalg;
pub mod leavitt;
pub mod lincomb;
pub mod morphism;
pub mod path_algebra;
pub mod pushout;
pub mod random;
pub mod suites;

pub use error::{Error, Result};
