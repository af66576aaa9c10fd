//! Erdélyi–Kober fractional calculus on single-variable profiles.

pub mod cheb;
pub mod ek;
pub mod profile;
pub mod quad;

pub use ek::{
    check_decay, check_decay_with, ek_deriv_left, ek_deriv_left_with, ek_deriv_right, ek_deriv_right_with,
    ek_left, ek_left_profile, ek_right, ek_right_profile, growth, GrowthReport,
};
pub use profile::{ArgKind, Decay, Edge, Profile1D, SMOOTH};
pub use quad::QuadratureSpec;
