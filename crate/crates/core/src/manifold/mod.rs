//! The metric space of positive-definite matrices with the Schatten-p
//! Finsler distance `d_p(a, b) = ‖log(a^{-1/2} b a^{-1/2})‖_p`.

mod geometry;
mod inequalities;
mod point;

pub use geometry::{cartan_symmetry, distance, exp_map, finsler_norm, geodesic, group_act, log_map, Geodesic};
pub use inequalities::{busemann_margin, emi_margin, ext_group_defect, normalize_pair};
pub(crate) use inequalities::common_exponent;
pub use point::{BusemannParams, MarginRecord, PPoint, TangentVector};
