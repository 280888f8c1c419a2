//! Exact scalars, the angle lattice and rigid motions.

pub mod angle;
pub mod complex;
pub mod motion;
pub mod qroot5;
pub mod rational;

pub use angle::Angle;
pub use complex::ExactComplex;
pub use motion::{RigidMotion, Vec2};
pub use qroot5::QRoot5;
pub use rational::Rational;
