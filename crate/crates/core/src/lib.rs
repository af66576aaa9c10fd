//! Radon transforms between totally geodesic submanifolds of Euclidean,
//! elliptic and hyperbolic space.

pub mod catalog;
pub mod cli;
pub mod error;
pub mod fracint;
pub mod identities;
pub mod inversion;
pub mod models;
pub mod params;
pub mod radon_mc;
pub mod radon_radial;
pub mod special;

pub use error::{Error, Result};
pub use params::TransformParams;
