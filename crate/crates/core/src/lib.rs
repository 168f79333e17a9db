//! Exact combinatorics and geometry of associahedra realized from up/down
//! labeled polygons, computed through spines of triangulations.

pub mod error;
pub mod exec;
pub mod labels;
pub mod polygon;
pub mod spine;
pub mod geometry;
pub mod cambrian;
pub mod minkowski;
pub mod verify;

pub use error::{AssoError, Result};
pub use labels::LabelSet;
pub use polygon::{Diagonal, Dissection, Label, Signature, Triangulation};
