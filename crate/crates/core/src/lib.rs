//! Exact constructions for the pinwheel tiling and its groupoid algebra.

pub mod algebra;
pub mod error;
pub mod geometry;
pub mod hull;
pub mod ktheory;
pub mod numerics;
pub mod tower;

pub use error::{Error, Result};
pub mod verify;
