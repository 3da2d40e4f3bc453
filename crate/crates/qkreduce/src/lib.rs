//! Torus reductions of quaternionic space: weight-matrix arithmetic, moment
//! maps, zero-set numerics and singular-stratum catalogs.

pub mod cli;
pub mod numerics;
pub mod quat;
pub mod reduction;
pub mod strata;
pub mod weights;
