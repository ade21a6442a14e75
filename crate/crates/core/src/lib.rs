//! Spherical and affine cover numbers of graphs: combinatorial bounds, an
//! exact angle-assignment integer program, and certified circular-arc drawings.

pub mod bounds;
pub mod error;
pub mod geometry;
pub mod graph;
pub mod lp;
pub mod mip;
pub mod rational;

pub use error::{Error, Result};
