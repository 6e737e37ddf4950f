//! Gromov distortion, distortion shadow, thickness and curvature measures of
//! polygonal space curves, with length-decreasing moves and an annealing search.

pub mod curvature;
pub mod distortion;
pub mod error;
pub mod generators;
pub mod geometry;
pub mod io;
pub mod optimizer;
pub mod verify;

pub use error::{Error, Result};
pub use geometry::{ChordPair, PolygonalCurve, Vec3};
