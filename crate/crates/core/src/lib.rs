//! Minimum-weight point separation by planar obstacle curves.
//!
//! Given two points s and t and a weighted set of obstacle curves, find a
//! minimum-weight subset of obstacles whose union disconnects s from t. The
//! solvers all reduce to shortest paths between the two lifted copies of an
//! obstacle in a two-sheeted cover of the punctured plane, built by cutting
//! along a reference s-t path and cross-gluing.

pub mod arrangement;
pub mod cover;
pub mod error;
pub mod fastpath;
pub mod gen;
pub mod geom;
pub mod instance;
pub mod io;
pub mod num;
pub mod reductions;
pub mod solvers;

pub use error::Error;
pub use geom::parity::{ReferencePath, Side};
pub use geom::shape::{canonical_point, self_separates, Obstacle, Shape};
pub use geom::Point;
pub use instance::Instance;
pub use solvers::SeparatorResult;
