//! Navigation in the hyperbolic tilings `{7,3}` and `{5,4}` and in their
//! triangular subdivisions.
//!
//! * [`numeration`]: level-size bases and greedy digit strings.
//! * [`fib_tree`]: the tree spanning one sector.
//! * [`tiling`]: tile coordinates and the neighbor function.
//! * [`trigrid`]: coordinates and neighbors of n-triangles.
//! * [`geometry`]: a Poincaré-disc model used as an independent oracle and
//!   for SVG output.
//! * [`ca`]: synchronous cellular automata on a bounded trigrid region.

pub mod ca;
pub mod error;
pub mod fib_tree;
pub mod geometry;
pub mod numeration;
pub mod tiling;
pub mod trigrid;

pub use error::{Error, Result};
pub use tiling::{TileCoord, Tiling};
pub use trigrid::TriCoord;
