//! Static stability: support polygons, the signed stability margin of the
//! CoG projection, and the margin map over posture angle × gait step.

use std::fmt::Write as _;

use serde::Serialize;
use thiserror::Error;

use crate::geometry::{GaitStep, GeometryError, PlanarPose, PostureAngle, RobotModel};
use crate::point::Point2;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum StabilityError {
    #[error("InsufficientSupport: {0} stance feet, need at least 3")]
    InsufficientSupport(usize),
    #[error("DegenerateSupport: stance feet are collinear")]
    DegenerateSupport,
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// Convex polygon of stance-foot contact points, counterclockwise.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SupportPolygon {
    vertices: Vec<Point2>,
}

impl SupportPolygon {
    /// Convex hull of the given contact points.
    pub fn from_points(points: &[Point2]) -> Result<Self, StabilityError> {
        if points.len() < 3 {
            return Err(StabilityError::InsufficientSupport(points.len()));
        }
        let vertices = convex_hull(points);
        let scale = points
            .iter()
            .flat_map(|p| [p.x.abs(), p.y.abs()])
            .fold(1.0_f64, f64::max);
        if vertices.len() < 3 || polygon_area(&vertices) <= 1e-12 * scale * scale {
            return Err(StabilityError::DegenerateSupport);
        }
        Ok(SupportPolygon { vertices })
    }

    pub fn vertices(&self) -> &[Point2] {
        &self.vertices
    }

    pub fn area(&self) -> f64 {
        polygon_area(&self.vertices)
    }

    fn edges(&self) -> impl Iterator<Item = (Point2, Point2)> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| (self.vertices[i], self.vertices[(i + 1) % n]))
    }

    /// Strictly-inside test: left of every counterclockwise edge.
    pub fn contains_strictly(&self, p: Point2) -> bool {
        self.edges().all(|(a, b)| (b - a).cross(p - a) > 0.0)
    }

    pub fn margin(&self, p: Point2) -> StabilityMargin {
        let dist = self
            .edges()
            .map(|(a, b)| segment_distance(p, a, b))
            .fold(f64::INFINITY, f64::min);
        if dist == 0.0 {
            StabilityMargin(0.0)
        } else if self.contains_strictly(p) {
            StabilityMargin(dist)
        } else {
            StabilityMargin(-dist)
        }
    }
}

/// Andrew's monotone chain; collinear points are dropped.
fn convex_hull(points: &[Point2]) -> Vec<Point2> {
    let mut pts = points.to_vec();
    pts.sort_by(|a, b| a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y)));
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let turn = |o: Point2, a: Point2, b: Point2| (a - o).cross(b - o);
    let mut lower: Vec<Point2> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && turn(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0.0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<Point2> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && turn(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0.0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

fn polygon_area(v: &[Point2]) -> f64 {
    let n = v.len();
    (0..n).map(|i| v[i].cross(v[(i + 1) % n])).sum::<f64>() / 2.0
}

fn segment_distance(p: Point2, a: Point2, b: Point2) -> f64 {
    let ab = b - a;
    let len2 = ab.dot(ab);
    if len2 == 0.0 {
        return p.distance(a);
    }
    let t = ((p - a).dot(ab) / len2).clamp(0.0, 1.0);
    p.distance(a + ab * t)
}

/// Signed distance (mm) from a point to the support-polygon boundary:
/// positive strictly inside, negative outside, zero on the boundary.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
#[serde(transparent)]
pub struct StabilityMargin(f64);

impl StabilityMargin {
    pub fn value(self) -> f64 {
        self.0
    }

    /// A zero margin counts as unstable.
    pub fn is_stable(self) -> bool {
        self.0 > 0.0
    }
}

pub fn support_polygon(pose: &PlanarPose) -> Result<SupportPolygon, StabilityError> {
    SupportPolygon::from_points(&pose.stance_feet())
}

pub fn stability_margin(polygon: &SupportPolygon, point: Point2) -> StabilityMargin {
    polygon.margin(point)
}

/// Margin of a pose's CoG projection over its own support polygon.
pub fn pose_margin(pose: &PlanarPose) -> Result<StabilityMargin, StabilityError> {
    Ok(support_polygon(pose)?.margin(pose.cog))
}

/// Margins over a grid of posture angles × the fifteen cycle steps.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StabilityMap {
    pub alpha_deg: f64,
    pub theta_axis: Vec<f64>,
    pub step_axis: Vec<u8>,
    /// `margins[i][j]` is the margin at `theta_axis[i]`, `step_axis[j]`.
    pub margins: Vec<Vec<f64>>,
}

pub fn stability_map(
    thetas: &[PostureAngle],
    alpha_deg: f64,
    model: &RobotModel,
) -> Result<StabilityMap, StabilityError> {
    let steps: Vec<GaitStep> = GaitStep::all().collect();
    let margins = thetas
        .iter()
        .map(|&theta| {
            steps
                .iter()
                .map(|&step| Ok(pose_margin(&model.planar_pose(theta, alpha_deg, step)?)?.value()))
                .collect::<Result<Vec<f64>, StabilityError>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(StabilityMap {
        alpha_deg,
        theta_axis: thetas.iter().map(|t| t.degrees()).collect(),
        step_axis: steps.iter().map(|s| s.number()).collect(),
        margins,
    })
}

impl StabilityMap {
    pub fn margin(&self, theta_index: usize, step: u8) -> f64 {
        self.margins[theta_index][step as usize - 1]
    }

    /// Steps with a non-positive margin at any sampled posture.
    pub fn unstable_steps(&self) -> Vec<u8> {
        self.step_axis
            .iter()
            .enumerate()
            .filter(|(j, _)| self.margins.iter().any(|row| row[*j] <= 0.0))
            .map(|(_, s)| *s)
            .collect()
    }

    pub fn unstable_steps_at(&self, theta_index: usize) -> Vec<u8> {
        self.step_axis
            .iter()
            .zip(&self.margins[theta_index])
            .filter(|(_, m)| **m <= 0.0)
            .map(|(s, _)| *s)
            .collect()
    }

    pub fn min_margin(&self) -> f64 {
        self.margins
            .iter()
            .flatten()
            .copied()
            .fold(f64::INFINITY, f64::min)
    }

    pub fn max_margin(&self) -> f64 {
        self.margins
            .iter()
            .flatten()
            .copied()
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// `theta,step,margin_mm` rows with a header line.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("theta,step,margin_mm\n");
        for (theta, row) in self.theta_axis.iter().zip(&self.margins) {
            for (step, m) in self.step_axis.iter().zip(row) {
                let _ = writeln!(out, "{theta},{step},{m:.6}");
            }
        }
        out
    }

    /// Heatmap with steps across and posture angles down. Diverging fill
    /// centred on zero; non-positive cells carry a hatch overlay.
    pub fn to_svg(&self) -> String {
        const CELL_W: f64 = 36.0;
        const CELL_H: f64 = 18.0;
        const LEFT: f64 = 60.0;
        const TOP: f64 = 40.0;
        let cols = self.step_axis.len();
        let rows = self.theta_axis.len();
        let width = LEFT + CELL_W * cols as f64 + 20.0;
        let height = TOP + CELL_H * rows as f64 + 40.0;
        let scale = self
            .margins
            .iter()
            .flatten()
            .fold(0.0_f64, |a, m| a.max(m.abs()))
            .max(1e-9);

        let mut s = String::new();
        let _ = writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0}" height="{height:.0}" font-family="sans-serif" font-size="10">"#
        );
        s.push_str(concat!(
            r#"<defs><pattern id="hatch" width="6" height="6" patternUnits="userSpaceOnUse" patternTransform="rotate(45)">"#,
            r#"<line x1="0" y1="0" x2="0" y2="6" stroke="black" stroke-width="1.2" stroke-opacity="0.6"/></pattern></defs>"#,
            "\n"
        ));
        let _ = writeln!(
            s,
            r#"<text x="{LEFT}" y="16" font-size="12">stability margin (mm), alpha = {} deg; hatched = unstable</text>"#,
            self.alpha_deg
        );
        for (j, step) in self.step_axis.iter().enumerate() {
            let x = LEFT + CELL_W * (j as f64 + 0.5);
            let _ = writeln!(
                s,
                r#"<text x="{x:.1}" y="{:.1}" text-anchor="middle">{step}</text>"#,
                TOP - 6.0
            );
        }
        for (i, theta) in self.theta_axis.iter().enumerate() {
            let y = TOP + CELL_H * i as f64;
            let _ = writeln!(
                s,
                r#"<text x="{:.1}" y="{:.1}" text-anchor="end">{theta}</text>"#,
                LEFT - 6.0,
                y + CELL_H * 0.7
            );
            for (j, m) in self.margins[i].iter().enumerate() {
                let x = LEFT + CELL_W * j as f64;
                let _ = writeln!(
                    s,
                    r#"<rect x="{x:.1}" y="{y:.1}" width="{CELL_W}" height="{CELL_H}" fill="{}"><title>theta {theta}, step {}: {m:.3} mm</title></rect>"#,
                    diverging_color(*m / scale),
                    self.step_axis[j]
                );
                if *m <= 0.0 {
                    let _ = writeln!(
                        s,
                        r#"<rect x="{x:.1}" y="{y:.1}" width="{CELL_W}" height="{CELL_H}" fill="url(#hatch)"/>"#
                    );
                }
            }
        }
        let _ = writeln!(
            s,
            r#"<text x="{:.1}" y="{:.1}" text-anchor="middle">gait step</text>"#,
            LEFT + CELL_W * cols as f64 / 2.0,
            TOP + CELL_H * rows as f64 + 20.0
        );
        s.push_str("</svg>\n");
        s
    }
}

/// Red for negative, white at zero, blue for positive; `t` in [-1, 1].
fn diverging_color(t: f64) -> String {
    let t = t.clamp(-1.0, 1.0);
    let (r, g, b) = if t < 0.0 {
        let k = -t;
        (255.0 - 77.0 * k, 255.0 - 231.0 * k, 255.0 - 212.0 * k)
    } else {
        (255.0 - 222.0 * t, 255.0 - 153.0 * t, 255.0 - 83.0 * t)
    };
    format!(
        "#{:02x}{:02x}{:02x}",
        r.round() as u8,
        g.round() as u8,
        b.round() as u8
    )
}

/// Steps at which the forward-tipping foreleg swing leaves the CoG outside
/// the support triangle.
pub const EXPECTED_UNSTABLE_STEPS: [u8; 3] = [7, 8, 14];

/// Number of cells and rows disagreeing with the expected pattern: one per
/// step whose sign is wrong, plus one per posture where some three-leg
/// step beats an all-feet-down step.
pub fn pattern_violations(map: &StabilityMap) -> usize {
    let mut count = 0;
    for row in &map.margins {
        for (step, m) in map.step_axis.iter().zip(row) {
            let expect_unstable = EXPECTED_UNSTABLE_STEPS.contains(step);
            if (*m <= 0.0) != expect_unstable {
                count += 1;
            }
        }
        let (down, swing): (Vec<_>, Vec<_>) = map.step_axis.iter().zip(row).partition(|(s, _)| {
            GaitStep::new(**s)
                .map(GaitStep::is_all_down)
                .unwrap_or(false)
        });
        let min_down = down.iter().map(|(_, m)| **m).fold(f64::INFINITY, f64::min);
        let max_swing = swing
            .iter()
            .map(|(_, m)| **m)
            .fold(f64::NEG_INFINITY, f64::max);
        if min_down < max_swing {
            count += 1;
        }
    }
    count
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Calibration {
    pub front_mass_fraction: f64,
    pub min_violations: usize,
    /// Contiguous run of candidates sharing the minimum, containing the choice.
    pub band: (f64, f64),
    pub scan: Vec<(f64, usize)>,
}

/// Scans the front-mass fraction over [0.5, 0.7] in 0.005 steps and
/// returns the midpoint of the widest run of candidates with the fewest
/// [`pattern_violations`].
pub fn calibrate_front_mass_fraction(
    model: &RobotModel,
    alpha_deg: f64,
    thetas: &[PostureAngle],
) -> Result<Calibration, StabilityError> {
    let mut scan = Vec::new();
    for i in 0..=40 {
        let m = f64::from(500 + 5 * i) / 1000.0;
        let candidate = RobotModel {
            front_mass_fraction: m,
            ..model.clone()
        };
        let map = stability_map(thetas, alpha_deg, &candidate)?;
        scan.push((m, pattern_violations(&map)));
    }
    let best = scan.iter().map(|s| s.1).min().expect("non-empty scan");
    let mut runs: Vec<(usize, usize)> = Vec::new();
    for (i, s) in scan.iter().enumerate() {
        if s.1 != best {
            continue;
        }
        match runs.last_mut() {
            Some(run) if run.1 + 1 == i => run.1 = i,
            _ => runs.push((i, i)),
        }
    }
    let (lo, hi) = runs
        .iter()
        .copied()
        .reduce(|a, b| if b.1 - b.0 > a.1 - a.0 { b } else { a })
        .expect("at least one run");
    let mid = (lo + hi) / 2;
    Ok(Calibration {
        front_mass_fraction: scan[mid].0,
        min_violations: best,
        band: (scan[lo].0, scan[hi].0),
        scan,
    })
}
