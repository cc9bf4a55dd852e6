//! Planar convex geometry for Banach–Mazur and Grünbaum distances.
//!
//! The crate computes affine distances between convex polygons with
//! verifiable sandwich witnesses, builds and checks John-position
//! certificates, and replays a family of perturbation constructions around
//! the `L ⊂ −2K` inclusion for pairs in John position.

pub mod distance;
pub mod error;
pub mod generate;
pub mod homothety;
pub mod io;
pub mod john;
pub mod optim;
pub mod par;
pub mod polygon;
pub mod sandwich;
pub mod scenario;
pub mod search;
pub mod svg;
pub mod tolerance;

pub use error::{Error, Result};
pub use par::Execution;
pub use polygon::{
    apply_affine, contains, convex_hull, polar, scale_negate, AffineMap, ConvexPolygon, Direction,
    Point,
};
pub use tolerance::Tolerances;
