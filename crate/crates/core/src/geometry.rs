//! Posture-change kinematics.
//!
//! Body dimensions are tabulated against the posture angle θ at the design
//! anchors and filled in with a monotone cubic, so every tabulated value is
//! reproduced exactly. A two-segment planar body (rear segment fixed, front
//! segment yawing about the waist joint) supplies foot and CoG positions for
//! the stability analysis.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gait::Leg;
use crate::interp::{InterpError, MonotoneCubic};
use crate::point::Point2;

pub const THETA_MIN_DEG: f64 = -60.0;
pub const THETA_MAX_DEG: f64 = 40.0;

/// Front-mass fraction found by [`crate::stability::calibrate_front_mass_fraction`]
/// on the default geometry.
pub const DEFAULT_FRONT_MASS_FRACTION: f64 = 0.59;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    #[error("OutOfRange: posture angle {0} deg outside [-60, 40]")]
    OutOfRange(f64),
    #[error(
        "Unattainable: body angle {alpha} deg exceeds the {max} deg limit at posture {theta} deg"
    )]
    Unattainable { theta: f64, alpha: f64, max: f64 },
    #[error("gait step {0} outside 1..=15")]
    InvalidStep(u8),
    #[error("invalid anchor table: {0}")]
    InvalidAnchors(String),
    #[error("invalid robot model: {0}")]
    InvalidModel(String),
}

impl From<InterpError> for GeometryError {
    fn from(e: InterpError) -> Self {
        GeometryError::InvalidAnchors(e.to_string())
    }
}

/// Posture-mechanism angle in degrees, within [-60, 40].
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
#[serde(transparent)]
pub struct PostureAngle(f64);

impl PostureAngle {
    pub fn new(degrees: f64) -> Result<Self, GeometryError> {
        if (THETA_MIN_DEG..=THETA_MAX_DEG).contains(&degrees) {
            Ok(PostureAngle(degrees))
        } else {
            Err(GeometryError::OutOfRange(degrees))
        }
    }

    pub fn degrees(self) -> f64 {
        self.0
    }

    /// Posture angles from `from` to `to` inclusive in steps of `step`,
    /// generated by index so the sequence carries no accumulated drift.
    pub fn sweep(from: f64, to: f64, step: f64) -> Result<Vec<PostureAngle>, GeometryError> {
        if !(step > 0.0) || to < from {
            return Err(GeometryError::InvalidModel(format!(
                "empty posture sweep {from}..{to} step {step}"
            )));
        }
        let n = ((to - from) / step + 1e-9).floor() as usize;
        (0..=n)
            .map(|i| PostureAngle::new(from + step * i as f64))
            .collect()
    }
}

impl fmt::Display for PostureAngle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} deg", self.0)
    }
}

/// Tabulated (θ, value) pairs, strictly increasing in θ.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "AnchorDocument", into = "AnchorDocument")]
pub struct AnchorTable {
    curve: MonotoneCubic,
}

#[derive(Serialize, Deserialize)]
struct AnchorDocument {
    anchors: Vec<(f64, f64)>,
}

impl TryFrom<AnchorDocument> for AnchorTable {
    type Error = GeometryError;
    fn try_from(doc: AnchorDocument) -> Result<Self, Self::Error> {
        AnchorTable::new(&doc.anchors)
    }
}

impl From<AnchorTable> for AnchorDocument {
    fn from(t: AnchorTable) -> Self {
        AnchorDocument {
            anchors: t.anchors().collect(),
        }
    }
}

impl AnchorTable {
    pub fn new(anchors: &[(f64, f64)]) -> Result<Self, GeometryError> {
        if let Some(&(theta, _)) = anchors
            .iter()
            .find(|(t, _)| !(THETA_MIN_DEG..=THETA_MAX_DEG).contains(t))
        {
            return Err(GeometryError::InvalidAnchors(format!(
                "anchor at {theta} deg outside [-60, 40]"
            )));
        }
        Ok(AnchorTable {
            curve: MonotoneCubic::new(anchors)?,
        })
    }

    pub fn anchors(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.curve.knots()
    }

    pub fn is_anchor(&self, theta: f64) -> bool {
        self.curve.is_knot(theta)
    }

    pub fn eval(&self, theta: PostureAngle) -> f64 {
        self.curve.eval(theta.degrees())
    }
}

/// Geometry and mass parameters of the robot.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RobotModel {
    pub width_d: AnchorTable,
    pub height_h: AnchorTable,
    pub clearance_h: AnchorTable,
    pub leg_spacing: AnchorTable,
    pub alpha_max: AnchorTable,
    /// Away from its own anchors, leg spacing follows `width_d` minus this offset.
    pub leg_spacing_width_offset_mm: f64,
    pub body_length_mm: f64,
    pub front_body_length_mm: f64,
    pub leg_outer_diameter_mm: f64,
    pub front_mass_fraction: f64,
    /// Longitudinal hip positions relative to the yaw joint.
    pub fore_hip_offset_mm: f64,
    pub hind_hip_offset_mm: f64,
}

impl Default for RobotModel {
    fn default() -> Self {
        let table = |a: &[(f64, f64)]| AnchorTable::new(a).expect("built-in anchors are valid");
        RobotModel {
            width_d: table(&[(-60.0, 150.0), (0.0, 202.0), (40.0, 180.0)]),
            height_h: table(&[(-60.0, 240.0), (0.0, 190.0), (40.0, 180.0)]),
            clearance_h: table(&[
                (-60.0, 110.0),
                (-40.0, 95.0),
                (0.0, 65.0),
                (20.0, 40.0),
                (40.0, 25.0),
            ]),
            leg_spacing: table(&[(-40.0, 140.0), (0.0, 162.0)]),
            alpha_max: table(&[(-60.0, 75.0), (0.0, 60.0), (40.0, 70.0)]),
            leg_spacing_width_offset_mm: 40.0,
            body_length_mm: 250.0,
            front_body_length_mm: 70.0,
            leg_outer_diameter_mm: 35.0,
            front_mass_fraction: DEFAULT_FRONT_MASS_FRACTION,
            fore_hip_offset_mm: 90.0,
            hind_hip_offset_mm: -90.0,
        }
    }
}

/// Body dimensions at one posture.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PostureDimensions {
    pub theta_deg: f64,
    pub width_d_mm: f64,
    pub height_h_mm: f64,
    pub clearance_h_mm: f64,
    pub body_length_mm: f64,
    pub leg_spacing_mm: f64,
    pub alpha_max_deg: f64,
}

impl RobotModel {
    pub fn from_json(text: &str) -> Result<Self, GeometryError> {
        let model: RobotModel =
            serde_json::from_str(text).map_err(|e| GeometryError::InvalidModel(e.to_string()))?;
        model.validate()?;
        Ok(model)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("model serialises")
    }

    pub fn validate(&self) -> Result<(), GeometryError> {
        let bad = |msg: String| Err(GeometryError::InvalidModel(msg));
        if !(self.front_mass_fraction > 0.0 && self.front_mass_fraction < 1.0) {
            return bad(format!(
                "front_mass_fraction {} outside (0,1)",
                self.front_mass_fraction
            ));
        }
        if !(self.front_body_length_mm > 0.0 && self.front_body_length_mm < self.body_length_mm) {
            return bad(format!(
                "front_body_length_mm {} must be in (0, body_length_mm)",
                self.front_body_length_mm
            ));
        }
        if !(self.fore_hip_offset_mm > self.hind_hip_offset_mm) {
            return bad("fore hip must lie ahead of hind hip".into());
        }
        if !(self.leg_outer_diameter_mm > 0.0) {
            return bad("leg_outer_diameter_mm must be positive".into());
        }
        for theta in PostureAngle::sweep(THETA_MIN_DEG, THETA_MAX_DEG, 1.0)? {
            let d = self.posture_dimensions(theta);
            let lengths = [
                d.width_d_mm,
                d.height_h_mm,
                d.clearance_h_mm,
                d.leg_spacing_mm,
            ];
            if lengths.iter().any(|v| !(*v > 0.0)) {
                return bad(format!("non-positive dimension at {theta}"));
            }
            if d.clearance_h_mm >= d.height_h_mm {
                return bad(format!("clearance not below height at {theta}"));
            }
            if !(d.alpha_max_deg > 0.0) {
                return bad(format!("non-positive alpha_max at {theta}"));
            }
        }
        Ok(())
    }

    pub fn width(&self, theta: PostureAngle) -> f64 {
        self.width_d.eval(theta)
    }

    pub fn height(&self, theta: PostureAngle) -> f64 {
        self.height_h.eval(theta)
    }

    pub fn clearance(&self, theta: PostureAngle) -> f64 {
        self.clearance_h.eval(theta)
    }

    /// Lateral distance between left and right feet.
    ///
    /// Tracks `width - offset`, with a monotone-cubic correction that is
    /// zero at the ends of the posture range and hits every leg-spacing
    /// anchor exactly.
    pub fn leg_spacing(&self, theta: PostureAngle) -> f64 {
        let base = |t: f64| self.width_d.curve.eval(t) - self.leg_spacing_width_offset_mm;
        if self.leg_spacing.is_anchor(theta.degrees()) {
            return self.leg_spacing.eval(theta);
        }
        let mut knots: Vec<(f64, f64)> = self
            .leg_spacing
            .anchors()
            .map(|(t, v)| (t, v - base(t)))
            .collect();
        for end in [THETA_MIN_DEG, THETA_MAX_DEG] {
            if !self.leg_spacing.is_anchor(end) {
                knots.push((end, 0.0));
            }
        }
        knots.sort_by(|a, b| a.0.total_cmp(&b.0));
        let correction = MonotoneCubic::new(&knots).expect("anchors validated");
        base(theta.degrees()) + correction.eval(theta.degrees())
    }

    pub fn max_body_angle(&self, theta: PostureAngle) -> f64 {
        self.alpha_max.eval(theta)
    }

    /// Whether the body can undulate with amplitude `alpha_deg` at this
    /// posture (closed interval).
    pub fn attainable(&self, theta: PostureAngle, alpha_deg: f64) -> bool {
        alpha_deg.abs() <= self.max_body_angle(theta)
    }

    pub fn posture_dimensions(&self, theta: PostureAngle) -> PostureDimensions {
        PostureDimensions {
            theta_deg: theta.degrees(),
            width_d_mm: self.width(theta),
            height_h_mm: self.height(theta),
            clearance_h_mm: self.clearance(theta),
            body_length_mm: self.body_length_mm,
            leg_spacing_mm: self.leg_spacing(theta),
            alpha_max_deg: self.max_body_angle(theta),
        }
    }

    /// Names of dimensions whose value at `theta` is interpolated rather
    /// than read from an anchor.
    pub fn interpolated_fields(&self, theta: PostureAngle) -> Vec<&'static str> {
        let t = theta.degrees();
        [
            ("width_d", &self.width_d),
            ("height_H", &self.height_h),
            ("clearance_h", &self.clearance_h),
            ("leg_spacing", &self.leg_spacing),
            ("alpha_max", &self.alpha_max),
        ]
        .into_iter()
        .filter(|(_, table)| !table.is_anchor(t))
        .map(|(name, _)| name)
        .collect()
    }

    fn check_attainable(&self, theta: PostureAngle, alpha_deg: f64) -> Result<(), GeometryError> {
        if self.attainable(theta, alpha_deg) {
            Ok(())
        } else {
            Err(GeometryError::Unattainable {
                theta: theta.degrees(),
                alpha: alpha_deg,
                max: self.max_body_angle(theta),
            })
        }
    }

    /// Pose at one step of the canonical cycle with undulation amplitude
    /// `alpha_deg`.
    pub fn planar_pose(
        &self,
        theta: PostureAngle,
        alpha_deg: f64,
        step: GaitStep,
    ) -> Result<PlanarPose, GeometryError> {
        self.check_attainable(theta, alpha_deg)?;
        let body_angle = alpha_deg.abs() * step.body_angle_fraction();
        Ok(self.pose_at(theta, body_angle, step.swing_leg()))
    }

    /// Pose for an arbitrary front-body yaw and optional swinging leg.
    pub fn pose_with_body_angle(
        &self,
        theta: PostureAngle,
        body_angle_deg: f64,
        swing: Option<Leg>,
    ) -> Result<PlanarPose, GeometryError> {
        self.check_attainable(theta, body_angle_deg)?;
        Ok(self.pose_at(theta, body_angle_deg, swing))
    }

    fn pose_at(&self, theta: PostureAngle, body_angle_deg: f64, swing: Option<Leg>) -> PlanarPose {
        let half = self.leg_spacing(theta) / 2.0;
        let fore = |y: f64| Point2::new(self.fore_hip_offset_mm, y).rotated_deg(body_angle_deg);
        let hind = |y: f64| Point2::new(self.hind_hip_offset_mm, y);
        let mut feet = [Point2::ORIGIN; 4];
        feet[Leg::LF.index()] = fore(half);
        feet[Leg::RF.index()] = fore(-half);
        feet[Leg::LH.index()] = hind(half);
        feet[Leg::RH.index()] = hind(-half);

        let front_centroid =
            Point2::new(self.front_body_length_mm / 2.0, 0.0).rotated_deg(body_angle_deg);
        let rear_centroid = Point2::new(
            -(self.body_length_mm - self.front_body_length_mm) / 2.0,
            0.0,
        );
        let m = self.front_mass_fraction;
        let cog = front_centroid * m + rear_centroid * (1.0 - m);

        let contact = Leg::ALL.map(|leg| Some(leg) != swing);
        PlanarPose {
            theta_deg: theta.degrees(),
            body_angle_deg,
            feet,
            contact,
            cog,
        }
    }
}

/// One of the fifteen key instants of a gait cycle.
///
/// | step | swinging leg | body angle |
/// |------|--------------|------------|
/// | 1    | none         | 0          |
/// | 2    | none         | +α         |
/// | 3–4  | LH           | +α         |
/// | 5–8  | LF           | +α/2, 0, −α/2, −α |
/// | 9    | none         | −α         |
/// | 10–11| RH           | −α         |
/// | 12–14| RF           | −α/3, +α/3, +α |
/// | 15   | none         | 0          |
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct GaitStep(u8);

const STEP_TABLE: [(Option<Leg>, f64); 15] = [
    (None, 0.0),
    (None, 1.0),
    (Some(Leg::LH), 1.0),
    (Some(Leg::LH), 1.0),
    (Some(Leg::LF), 0.5),
    (Some(Leg::LF), 0.0),
    (Some(Leg::LF), -0.5),
    (Some(Leg::LF), -1.0),
    (None, -1.0),
    (Some(Leg::RH), -1.0),
    (Some(Leg::RH), -1.0),
    (Some(Leg::RF), -1.0 / 3.0),
    (Some(Leg::RF), 1.0 / 3.0),
    (Some(Leg::RF), 1.0),
    (None, 0.0),
];

impl GaitStep {
    pub const COUNT: u8 = 15;

    pub fn new(step: u8) -> Result<Self, GeometryError> {
        if (1..=Self::COUNT).contains(&step) {
            Ok(GaitStep(step))
        } else {
            Err(GeometryError::InvalidStep(step))
        }
    }

    pub fn all() -> impl Iterator<Item = GaitStep> {
        (1..=Self::COUNT).map(GaitStep)
    }

    pub fn number(self) -> u8 {
        self.0
    }

    pub fn swing_leg(self) -> Option<Leg> {
        STEP_TABLE[self.0 as usize - 1].0
    }

    /// Body angle at this step divided by the undulation amplitude.
    pub fn body_angle_fraction(self) -> f64 {
        STEP_TABLE[self.0 as usize - 1].1
    }

    pub fn is_all_down(self) -> bool {
        self.swing_leg().is_none()
    }
}

/// Planar snapshot of the robot in the body frame: origin at the yaw joint,
/// x along the direction of motion, y to the left.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlanarPose {
    pub theta_deg: f64,
    pub body_angle_deg: f64,
    /// Foot contact points in [`Leg::ALL`] order.
    pub feet: [Point2; 4],
    pub contact: [bool; 4],
    pub cog: Point2,
}

impl PlanarPose {
    pub fn foot(&self, leg: Leg) -> Point2 {
        self.feet[leg.index()]
    }

    pub fn in_contact(&self, leg: Leg) -> bool {
        self.contact[leg.index()]
    }

    pub fn stance_feet(&self) -> Vec<Point2> {
        Leg::ALL
            .iter()
            .filter(|l| self.in_contact(**l))
            .map(|l| self.foot(*l))
            .collect()
    }

    pub fn swing_legs(&self) -> Vec<Leg> {
        Leg::ALL
            .into_iter()
            .filter(|l| !self.in_contact(*l))
            .collect()
    }

    /// Foot positions with the CoG projection as origin.
    pub fn feet_relative_to_cog(&self) -> [Point2; 4] {
        self.feet.map(|p| p - self.cog)
    }

    /// Same pose with all four feet down.
    pub fn all_feet_down(&self) -> PlanarPose {
        PlanarPose {
            contact: [true; 4],
            ..self.clone()
        }
    }
}
