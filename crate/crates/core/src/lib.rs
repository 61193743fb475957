//! Posture-adjustable quadruped with a bending spine: posture geometry,
//! creeping-gait formulas, static stability and terrain feasibility.

// Negated comparisons double as NaN rejection in input validation.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod gait;
pub mod geometry;
pub mod interp;
pub mod point;
pub mod scenario;
pub mod stability;

pub use gait::{Fraction, GaitMatrix, Leg};
pub use geometry::{PostureAngle, RobotModel};
pub use point::Point2;
