//! Terrain scenarios and posture feasibility.
//!
//! Channels, tunnels and obstacles are decided by comparing the posture's
//! body dimensions against the terrain. Ramps have no analytic model: they
//! are looked up in an outcome table of recorded trials, after an
//! attainability check on the body angle.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::{GeometryError, PostureAngle, RobotModel, THETA_MAX_DEG, THETA_MIN_DEG};

const RAMP_TABLE_JSON: &str = include_str!("../data/ramp_outcomes.json");

/// Scale of the idealised advance per undulation stroke.
pub const DEFAULT_DISPLACEMENT_GAIN: f64 = 0.5;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ScenarioError {
    #[error("scenario has no segments")]
    Empty,
    #[error("segment {index}: {reason}")]
    InvalidSegment { index: usize, reason: String },
    #[error("invalid scenario document: {0}")]
    Json(String),
    #[error("invalid ramp table: {0}")]
    RampTable(String),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RampDirection {
    Uphill,
    Downhill,
}

impl fmt::Display for RampDirection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RampDirection::Uphill => "uphill",
            RampDirection::Downhill => "downhill",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum Segment {
    Channel {
        width_mm: f64,
    },
    Tunnel {
        height_mm: f64,
    },
    /// `width_mm` is measured across the direction of travel; length along it.
    Obstacle {
        height_mm: f64,
        width_mm: f64,
        length_mm: f64,
    },
    Ramp {
        slope_deg: f64,
        direction: RampDirection,
    },
}

impl Segment {
    fn validate(&self) -> Result<(), String> {
        let positive = |name: &str, v: f64| {
            if v > 0.0 && v.is_finite() {
                Ok(())
            } else {
                Err(format!("{name} must be positive, got {v}"))
            }
        };
        match *self {
            Segment::Channel { width_mm } => positive("width_mm", width_mm),
            Segment::Tunnel { height_mm } => positive("height_mm", height_mm),
            Segment::Obstacle {
                height_mm,
                width_mm,
                length_mm,
            } => {
                positive("height_mm", height_mm)?;
                positive("width_mm", width_mm)?;
                positive("length_mm", length_mm)
            }
            Segment::Ramp { slope_deg, .. } => {
                if slope_deg > 0.0 && slope_deg <= 45.0 {
                    Ok(())
                } else {
                    Err(format!("slope_deg must be in (0, 45], got {slope_deg}"))
                }
            }
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Segment::Channel { .. } => "channel",
            Segment::Tunnel { .. } => "tunnel",
            Segment::Obstacle { .. } => "obstacle",
            Segment::Ramp { .. } => "ramp",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Scenario {
    pub segments: Vec<Segment>,
}

impl Scenario {
    pub fn new(segments: Vec<Segment>) -> Result<Self, ScenarioError> {
        if segments.is_empty() {
            return Err(ScenarioError::Empty);
        }
        for (index, s) in segments.iter().enumerate() {
            s.validate()
                .map_err(|reason| ScenarioError::InvalidSegment { index, reason })?;
        }
        Ok(Scenario { segments })
    }

    pub fn from_json(text: &str) -> Result<Self, ScenarioError> {
        #[derive(Deserialize)]
        struct Doc {
            segments: Vec<Segment>,
        }
        let doc: Doc =
            serde_json::from_str(text).map_err(|e| ScenarioError::Json(e.to_string()))?;
        Scenario::new(doc.segments)
    }

    /// The three-obstacle course: 38 mm cube, 50 mm cube, then a
    /// 100 mm-wide, 50 mm-high block.
    pub fn obstacle_course() -> Self {
        Scenario::new(vec![
            Segment::Obstacle {
                height_mm: 38.0,
                width_mm: 38.0,
                length_mm: 38.0,
            },
            Segment::Obstacle {
                height_mm: 50.0,
                width_mm: 50.0,
                length_mm: 50.0,
            },
            Segment::Obstacle {
                height_mm: 50.0,
                width_mm: 100.0,
                length_mm: 50.0,
            },
        ])
        .expect("static scenario is valid")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    Unattainable,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Constraint {
    #[serde(rename = "width_d")]
    WidthD,
    #[serde(rename = "height_H")]
    HeightH,
    #[serde(rename = "clearance_h")]
    ClearanceH,
    #[serde(rename = "leg_spacing")]
    LegSpacing,
    #[serde(rename = "empirical_ramp")]
    EmpiricalRamp,
    #[serde(rename = "alpha_max")]
    AlphaMax,
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = serde_json::to_value(self).expect("serialises");
        f.write_str(s.as_str().unwrap_or("?"))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Flag {
    /// No recorded trial covers this ramp configuration.
    NoData,
    /// The requested slope was not recorded; the nearest recorded one was used.
    NearestSlope { requested_deg: f64, used_deg: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeasibilityResult {
    pub verdict: Verdict,
    /// The binding constraint (smallest slack).
    pub limiting_constraint: Constraint,
    /// mm for dimensional checks, degrees for ramp checks.
    pub slack: f64,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub flags: Vec<Flag>,
}

impl FeasibilityResult {
    fn new(verdict: Verdict, limiting_constraint: Constraint, slack: f64) -> Self {
        FeasibilityResult {
            verdict,
            limiting_constraint,
            slack,
            flags: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct FeasibilityOptions {
    /// Extra margin demanded for channels and tunnels.
    pub safety_margin_mm: f64,
    /// Free space required on each side of an obstacle between the legs.
    pub lateral_clearance_mm: f64,
    /// Body-angle amplitude the planner assumes on ramps.
    pub ramp_alpha_deg: f64,
    /// Posture sweep resolution of the planner.
    pub theta_resolution_deg: f64,
}

impl Default for FeasibilityOptions {
    fn default() -> Self {
        FeasibilityOptions {
            safety_margin_mm: 0.0,
            lateral_clearance_mm: 25.0,
            ramp_alpha_deg: 40.0,
            theta_resolution_deg: 1.0,
        }
    }
}

/// Passes iff the body width is strictly below the channel width.
pub fn channel_feasible(
    theta: PostureAngle,
    width_mm: f64,
    model: &RobotModel,
) -> FeasibilityResult {
    channel_check(theta, width_mm, model, 0.0)
}

fn channel_check(
    theta: PostureAngle,
    width_mm: f64,
    model: &RobotModel,
    margin: f64,
) -> FeasibilityResult {
    let slack = width_mm - margin - model.width(theta);
    let verdict = if slack > 0.0 {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    FeasibilityResult::new(verdict, Constraint::WidthD, slack)
}

/// Passes iff the body height is strictly below the tunnel roof.
pub fn tunnel_feasible(
    theta: PostureAngle,
    height_mm: f64,
    model: &RobotModel,
) -> FeasibilityResult {
    tunnel_check(theta, height_mm, model, 0.0)
}

fn tunnel_check(
    theta: PostureAngle,
    height_mm: f64,
    model: &RobotModel,
    margin: f64,
) -> FeasibilityResult {
    let slack = height_mm - margin - model.height(theta);
    let verdict = if slack > 0.0 {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    FeasibilityResult::new(verdict, Constraint::HeightH, slack)
}

/// Straddling check: ground clearance must exceed the obstacle height and
/// the legs must clear its width with `lateral_clearance_mm` on each side.
pub fn obstacle_feasible(
    theta: PostureAngle,
    height_mm: f64,
    width_mm: f64,
    model: &RobotModel,
    lateral_clearance_mm: f64,
) -> FeasibilityResult {
    let clearance_slack = model.clearance(theta) - height_mm;
    let spacing_slack = model.leg_spacing(theta) - (width_mm + 2.0 * lateral_clearance_mm);
    let verdict = if clearance_slack > 0.0 && spacing_slack >= 0.0 {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    if clearance_slack <= spacing_slack {
        FeasibilityResult::new(verdict, Constraint::ClearanceH, clearance_slack)
    } else {
        FeasibilityResult::new(verdict, Constraint::LegSpacing, spacing_slack)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RampOutcome {
    Success,
    Fail,
}

/// Body-angle key of a ramp record: a specific amplitude or any amplitude.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawAlpha", into = "RawAlpha")]
pub enum AlphaKey {
    All,
    Deg(f64),
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum RawAlpha {
    Deg(f64),
    Text(String),
}

impl TryFrom<RawAlpha> for AlphaKey {
    type Error = String;
    fn try_from(raw: RawAlpha) -> Result<Self, String> {
        match raw {
            RawAlpha::Deg(d) => Ok(AlphaKey::Deg(d)),
            RawAlpha::Text(s) if s == "all" => Ok(AlphaKey::All),
            RawAlpha::Text(s) => Err(format!("alpha_deg must be a number or \"all\", got {s:?}")),
        }
    }
}

impl From<AlphaKey> for RawAlpha {
    fn from(k: AlphaKey) -> Self {
        match k {
            AlphaKey::All => RawAlpha::Text("all".into()),
            AlphaKey::Deg(d) => RawAlpha::Deg(d),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RampRecord {
    pub slope_deg: f64,
    pub direction: RampDirection,
    pub theta_deg: f64,
    pub alpha_deg: AlphaKey,
    pub outcome: RampOutcome,
}

/// Recorded ramp trials keyed by (slope, direction, posture, body angle).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RampOutcomeTable {
    pub rows: Vec<RampRecord>,
}

const KEY_TOL: f64 = 1e-9;

fn same(a: f64, b: f64) -> bool {
    (a - b).abs() <= KEY_TOL
}

impl RampOutcomeTable {
    /// The bundled table of recorded trials.
    pub fn embedded() -> Self {
        serde_json::from_str(RAMP_TABLE_JSON).expect("embedded ramp table parses")
    }

    pub fn from_json(text: &str, model: &RobotModel) -> Result<Self, ScenarioError> {
        let table: RampOutcomeTable =
            serde_json::from_str(text).map_err(|e| ScenarioError::RampTable(e.to_string()))?;
        table.validate(model)?;
        Ok(table)
    }

    /// No duplicate keys; every specific (θ, α) is attainable.
    pub fn validate(&self, model: &RobotModel) -> Result<(), ScenarioError> {
        let err = |msg: String| Err(ScenarioError::RampTable(msg));
        for (i, r) in self.rows.iter().enumerate() {
            let theta = PostureAngle::new(r.theta_deg)
                .map_err(|e| ScenarioError::RampTable(format!("row {i}: {e}")))?;
            if !(r.slope_deg > 0.0 && r.slope_deg <= 45.0) {
                return err(format!("row {i}: slope {} outside (0, 45]", r.slope_deg));
            }
            if let AlphaKey::Deg(a) = r.alpha_deg {
                if !model.attainable(theta, a) {
                    return err(format!(
                        "row {i}: alpha {a} unattainable at theta {}",
                        r.theta_deg
                    ));
                }
            }
            let dup = self.rows[..i].iter().any(|o| {
                same(o.slope_deg, r.slope_deg)
                    && o.direction == r.direction
                    && same(o.theta_deg, r.theta_deg)
                    && match (o.alpha_deg, r.alpha_deg) {
                        (AlphaKey::All, AlphaKey::All) => true,
                        (AlphaKey::Deg(a), AlphaKey::Deg(b)) => same(a, b),
                        _ => false,
                    }
            });
            if dup {
                return err(format!("row {i}: duplicate key"));
            }
        }
        Ok(())
    }

    /// Recorded slope closest to `slope_deg` for this direction (ties go to
    /// the gentler slope).
    pub fn nearest_slope(&self, direction: RampDirection, slope_deg: f64) -> Option<f64> {
        self.rows
            .iter()
            .filter(|r| r.direction == direction)
            .map(|r| r.slope_deg)
            .min_by(|a, b| {
                (a - slope_deg)
                    .abs()
                    .total_cmp(&(b - slope_deg).abs())
                    .then(a.total_cmp(b))
            })
    }

    /// Exact body-angle match first, then an any-angle record.
    pub fn lookup(
        &self,
        slope_deg: f64,
        direction: RampDirection,
        theta_deg: f64,
        alpha_deg: f64,
    ) -> Option<RampOutcome> {
        let candidates = || {
            self.rows.iter().filter(move |r| {
                same(r.slope_deg, slope_deg)
                    && r.direction == direction
                    && same(r.theta_deg, theta_deg)
            })
        };
        candidates()
            .find(|r| matches!(r.alpha_deg, AlphaKey::Deg(a) if same(a, alpha_deg.abs())))
            .or_else(|| candidates().find(|r| r.alpha_deg == AlphaKey::All))
            .map(|r| r.outcome)
    }
}

/// Ramp verdict: Unattainable when the body angle exceeds its limit at this
/// posture, otherwise the recorded outcome. Configurations without a record
/// fail conservatively and carry [`Flag::NoData`].
pub fn ramp_outcome(
    theta: PostureAngle,
    alpha_deg: f64,
    slope_deg: f64,
    direction: RampDirection,
    table: &RampOutcomeTable,
    model: &RobotModel,
) -> FeasibilityResult {
    let slack = model.max_body_angle(theta) - alpha_deg.abs();
    if !model.attainable(theta, alpha_deg) {
        return FeasibilityResult::new(Verdict::Unattainable, Constraint::AlphaMax, slack);
    }
    let mut flags = Vec::new();
    let outcome = match table.nearest_slope(direction, slope_deg) {
        Some(used) => {
            if !same(used, slope_deg) {
                flags.push(Flag::NearestSlope {
                    requested_deg: slope_deg,
                    used_deg: used,
                });
            }
            table.lookup(used, direction, theta.degrees(), alpha_deg)
        }
        None => None,
    };
    let verdict = match outcome {
        Some(RampOutcome::Success) => Verdict::Pass,
        Some(RampOutcome::Fail) => Verdict::Fail,
        None => {
            flags.push(Flag::NoData);
            Verdict::Fail
        }
    };
    FeasibilityResult {
        verdict,
        limiting_constraint: Constraint::EmpiricalRamp,
        slack,
        flags,
    }
}

/// Idealised forward advance per cycle: two undulation strokes, each
/// sweeping an arc proportional to body width, `2·k·d·sin α`.
pub fn ideal_displacement(
    theta: PostureAngle,
    alpha_deg: f64,
    model: &RobotModel,
) -> Result<f64, ScenarioError> {
    ideal_displacement_with_gain(theta, alpha_deg, model, DEFAULT_DISPLACEMENT_GAIN)
}

pub fn ideal_displacement_with_gain(
    theta: PostureAngle,
    alpha_deg: f64,
    model: &RobotModel,
    gain: f64,
) -> Result<f64, ScenarioError> {
    if !model.attainable(theta, alpha_deg) {
        return Err(GeometryError::Unattainable {
            theta: theta.degrees(),
            alpha: alpha_deg,
            max: model.max_body_angle(theta),
        }
        .into());
    }
    Ok(2.0 * gain * model.width(theta) * alpha_deg.abs().to_radians().sin())
}

/// Evaluates segments against one model, ramp table and option set.
#[derive(Debug, Clone)]
pub struct TerrainChecker<'a> {
    pub model: &'a RobotModel,
    pub ramps: &'a RampOutcomeTable,
    pub options: FeasibilityOptions,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThetaInterval {
    pub lo_deg: f64,
    pub hi_deg: f64,
}

impl ThetaInterval {
    pub fn contains(&self, theta_deg: f64) -> bool {
        self.lo_deg <= theta_deg && theta_deg <= self.hi_deg
    }

    pub fn width(&self) -> f64 {
        self.hi_deg - self.lo_deg
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SegmentPlan {
    pub segment: Segment,
    pub feasible: Vec<ThetaInterval>,
    pub recommended_theta_deg: Option<f64>,
    pub verdict: Verdict,
    /// Check result at the recommended posture.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub result: Option<FeasibilityResult>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PosturePlan {
    pub segments: Vec<SegmentPlan>,
}

impl PosturePlan {
    pub fn all_pass(&self) -> bool {
        self.segments.iter().all(|s| s.verdict == Verdict::Pass)
    }
}

impl<'a> TerrainChecker<'a> {
    pub fn new(model: &'a RobotModel, ramps: &'a RampOutcomeTable) -> Self {
        TerrainChecker {
            model,
            ramps,
            options: FeasibilityOptions::default(),
        }
    }

    pub fn with_options(mut self, options: FeasibilityOptions) -> Self {
        self.options = options;
        self
    }

    /// Checks one segment at a posture; `alpha_deg` only matters on ramps.
    pub fn check(
        &self,
        segment: &Segment,
        theta: PostureAngle,
        alpha_deg: f64,
    ) -> FeasibilityResult {
        let o = &self.options;
        match *segment {
            Segment::Channel { width_mm } => {
                channel_check(theta, width_mm, self.model, o.safety_margin_mm)
            }
            Segment::Tunnel { height_mm } => {
                tunnel_check(theta, height_mm, self.model, o.safety_margin_mm)
            }
            Segment::Obstacle {
                height_mm,
                width_mm,
                ..
            } => obstacle_feasible(
                theta,
                height_mm,
                width_mm,
                self.model,
                o.lateral_clearance_mm,
            ),
            Segment::Ramp {
                slope_deg,
                direction,
            } => ramp_outcome(
                theta, alpha_deg, slope_deg, direction, self.ramps, self.model,
            ),
        }
    }

    pub fn evaluate(
        &self,
        scenario: &Scenario,
        theta: PostureAngle,
        alpha_deg: f64,
    ) -> Vec<FeasibilityResult> {
        scenario
            .segments
            .iter()
            .map(|s| self.check(s, theta, alpha_deg))
            .collect()
    }

    /// Sweeps the posture range per segment, collects feasible intervals and
    /// recommends the midpoint of the widest one (ties go to the higher
    /// posture angle).
    pub fn plan(&self, scenario: &Scenario) -> Result<PosturePlan, ScenarioError> {
        let grid = PostureAngle::sweep(
            THETA_MIN_DEG,
            THETA_MAX_DEG,
            self.options.theta_resolution_deg,
        )?;
        let alpha = self.options.ramp_alpha_deg;
        let segments = scenario
            .segments
            .iter()
            .map(|segment| {
                let ok: Vec<bool> = grid
                    .iter()
                    .map(|&t| self.check(segment, t, alpha).passed())
                    .collect();
                let runs = feasible_runs(&ok);
                let feasible = runs
                    .iter()
                    .map(|&(a, b)| ThetaInterval {
                        lo_deg: grid[a].degrees(),
                        hi_deg: grid[b].degrees(),
                    })
                    .collect();
                let widest = runs.iter().copied().reduce(|best, r| {
                    if r.1 - r.0 >= best.1 - best.0 {
                        r
                    } else {
                        best
                    }
                });
                match widest {
                    Some((a, b)) => {
                        let theta = grid[(a + b) / 2];
                        SegmentPlan {
                            segment: segment.clone(),
                            feasible,
                            recommended_theta_deg: Some(theta.degrees()),
                            verdict: Verdict::Pass,
                            result: Some(self.check(segment, theta, alpha)),
                        }
                    }
                    None => SegmentPlan {
                        segment: segment.clone(),
                        feasible,
                        recommended_theta_deg: None,
                        verdict: Verdict::Fail,
                        result: None,
                    },
                }
            })
            .collect();
        Ok(PosturePlan { segments })
    }
}

/// Index ranges of consecutive `true` entries.
fn feasible_runs(ok: &[bool]) -> Vec<(usize, usize)> {
    let mut runs = Vec::new();
    let mut start = None;
    for (i, &v) in ok.iter().enumerate() {
        match (v, start) {
            (true, None) => start = Some(i),
            (false, Some(s)) => {
                runs.push((s, i - 1));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        runs.push((s, ok.len() - 1));
    }
    runs
}

pub fn plan_postures(
    scenario: &Scenario,
    model: &RobotModel,
    ramps: &RampOutcomeTable,
) -> Result<PosturePlan, ScenarioError> {
    TerrainChecker::new(model, ramps).plan(scenario)
}
