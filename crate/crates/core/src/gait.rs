//! Gait description algebra: gait matrices with duration vectors, duty
//! factors, relative phases, the McGhee / Hildebrand / kinematic gait
//! formulas, and the time-parameterised leg and body schedule of one cycle.
//!
//! Times inside a [`GaitMatrix`] are exact rationals (fractions of the
//! cycle, or any consistent unit), so formulas derived from a matrix carry
//! no rounding error.

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::point::Point2;

/// Exact time value used by gait matrices.
pub type Fraction = Ratio<i64>;

/// Leg identity. The declaration order is the leg numbering used by every
/// gait tuple in this crate: 1 = LF, 2 = RF, 3 = LH, 4 = RH.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Leg {
    LF,
    RF,
    LH,
    RH,
}

impl Leg {
    pub const ALL: [Leg; 4] = [Leg::LF, Leg::RF, Leg::LH, Leg::RH];

    /// Zero-based column index in a gait matrix.
    pub const fn index(self) -> usize {
        match self {
            Leg::LF => 0,
            Leg::RF => 1,
            Leg::LH => 2,
            Leg::RH => 3,
        }
    }

    /// One-based leg number.
    pub const fn number(self) -> usize {
        self.index() + 1
    }

    pub fn from_number(n: usize) -> Option<Leg> {
        Leg::ALL.get(n.checked_sub(1)?).copied()
    }

    pub const fn is_left(self) -> bool {
        matches!(self, Leg::LF | Leg::LH)
    }

    pub const fn is_fore(self) -> bool {
        matches!(self, Leg::LF | Leg::RF)
    }

    /// The same leg on the other side of the body.
    pub const fn contralateral(self) -> Leg {
        match self {
            Leg::LF => Leg::RF,
            Leg::RF => Leg::LF,
            Leg::LH => Leg::RH,
            Leg::RH => Leg::LH,
        }
    }

    pub const fn name(self) -> &'static str {
        match self {
            Leg::LF => "LF",
            Leg::RF => "RF",
            Leg::LH => "LH",
            Leg::RH => "RH",
        }
    }
}

impl fmt::Display for Leg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GaitError {
    #[error("gait matrix has no rows")]
    Empty,
    #[error("{rows} rows but {durations} durations")]
    LengthMismatch { rows: usize, durations: usize },
    #[error("row {row} has {len} entries, expected 4")]
    RowWidth { row: usize, len: usize },
    #[error("NonBinaryEntry: row {row}, column {column} holds {value}")]
    NonBinaryEntry {
        row: usize,
        column: usize,
        value: i64,
    },
    #[error("NegativeDuration: row {row}")]
    NegativeDuration { row: usize },
    #[error("InvalidDuration: {0:?} is not a finite number or a/b fraction")]
    InvalidDuration(String),
    #[error("ZeroCycle: durations sum to zero")]
    ZeroCycle,
    #[error("NotCreeping: row {row} lifts {lifted} legs")]
    NotCreeping { row: usize, lifted: usize },
    #[error("NeverSwings: leg {0} is never in the air for a positive duration")]
    NeverSwings(Leg),
    #[error("MultipleTouchdowns: leg {0} touches down more than once per cycle")]
    MultipleTouchdowns(Leg),
    #[error("NotSymmetric: {0}")]
    NotSymmetric(String),
    #[error("NonPositiveStride: {0}")]
    NonPositiveStride(f64),
    #[error("invalid gait formula: {0}")]
    InvalidFormula(String),
}

/// Binary contact matrix (0 = on ground, 1 = in air; one column per leg in
/// [`Leg::ALL`] order) paired with a per-row duration vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaitMatrix {
    rows: Vec<[u8; 4]>,
    durations: Vec<Fraction>,
}

fn to_f64(r: Fraction) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// Wraps a fraction of the cycle into [0, 1).
fn wrap_unit(r: Fraction) -> Fraction {
    let w = r - r.floor();
    if w < Fraction::from_integer(0) {
        w + 1
    } else {
        w
    }
}

impl GaitMatrix {
    /// Validates raw rows and exact durations.
    pub fn new(rows: Vec<Vec<i64>>, durations: Vec<Fraction>) -> Result<Self, GaitError> {
        if rows.is_empty() {
            return Err(GaitError::Empty);
        }
        if rows.len() != durations.len() {
            return Err(GaitError::LengthMismatch {
                rows: rows.len(),
                durations: durations.len(),
            });
        }
        let mut checked = Vec::with_capacity(rows.len());
        for (r, row) in rows.iter().enumerate() {
            if row.len() != 4 {
                return Err(GaitError::RowWidth {
                    row: r,
                    len: row.len(),
                });
            }
            let mut out = [0u8; 4];
            for (c, &v) in row.iter().enumerate() {
                if v != 0 && v != 1 {
                    return Err(GaitError::NonBinaryEntry {
                        row: r,
                        column: c,
                        value: v,
                    });
                }
                out[c] = v as u8;
            }
            checked.push(out);
        }
        let zero = Fraction::from_integer(0);
        if let Some(row) = durations.iter().position(|d| *d < zero) {
            return Err(GaitError::NegativeDuration { row });
        }
        for (row, r) in checked.iter().enumerate() {
            let lifted = r.iter().filter(|&&v| v == 1).count();
            if lifted > 1 {
                return Err(GaitError::NotCreeping { row, lifted });
            }
        }
        let cycle: Fraction = durations.iter().copied().sum();
        if cycle == zero {
            return Err(GaitError::ZeroCycle);
        }
        let g = GaitMatrix {
            rows: checked,
            durations,
        };
        for leg in Leg::ALL {
            if g.airborne_time(leg) == zero {
                return Err(GaitError::NeverSwings(leg));
            }
        }
        Ok(g)
    }

    /// Accepts floating-point durations, converting each to the nearest
    /// simple fraction.
    pub fn from_f64(rows: Vec<Vec<i64>>, durations: &[f64]) -> Result<Self, GaitError> {
        let exact = durations
            .iter()
            .map(|&d| fraction_from_f64(d).ok_or_else(|| GaitError::InvalidDuration(d.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(rows, exact)
    }

    /// The published lateral-sequence creeping gait: every leg airborne for
    /// a quarter cycle, separated by instantaneous four-feet-down rows.
    pub fn lateral_sequence() -> Self {
        let q = Fraction::new(1, 4);
        let z = Fraction::from_integer(0);
        let rows = vec![
            vec![0, 0, 0, 0],
            vec![0, 0, 0, 1],
            vec![0, 0, 0, 0],
            vec![0, 1, 0, 0],
            vec![0, 0, 0, 0],
            vec![0, 0, 1, 0],
            vec![0, 0, 0, 0],
            vec![1, 0, 0, 0],
        ];
        GaitMatrix::new(rows, vec![z, q, z, q, z, q, z, q]).expect("static gait matrix is valid")
    }

    /// The gait matrix traced by [`schedule`] over one cycle (LH lifts at
    /// t = 0, then LF, RH, RF).
    pub fn from_schedule() -> Self {
        let q = Fraction::new(1, 4);
        let z = Fraction::from_integer(0);
        let mut rows = Vec::new();
        let mut durations = Vec::new();
        for leg in SWING_ORDER {
            let mut row = vec![0; 4];
            row[leg.index()] = 1;
            rows.push(row);
            durations.push(q);
            rows.push(vec![0; 4]);
            durations.push(z);
        }
        GaitMatrix::new(rows, durations).expect("schedule gait matrix is valid")
    }

    pub fn rows(&self) -> &[[u8; 4]] {
        &self.rows
    }

    pub fn durations(&self) -> &[Fraction] {
        &self.durations
    }

    pub fn cycle(&self) -> Fraction {
        self.durations.iter().copied().sum()
    }

    /// Rotates the time origin by `k` rows (row `k` becomes row 0).
    pub fn rotated(&self, k: usize) -> GaitMatrix {
        let n = self.rows.len();
        let k = k % n;
        let mut rows = self.rows.clone();
        let mut durations = self.durations.clone();
        rows.rotate_left(k);
        durations.rotate_left(k);
        GaitMatrix { rows, durations }
    }

    /// Multiplies every duration by `factor` (> 0).
    pub fn scaled(&self, factor: Fraction) -> GaitMatrix {
        assert!(
            factor > Fraction::from_integer(0),
            "scale factor must be positive"
        );
        GaitMatrix {
            rows: self.rows.clone(),
            durations: self.durations.iter().map(|d| d * factor).collect(),
        }
    }

    fn airborne_time(&self, leg: Leg) -> Fraction {
        self.rows
            .iter()
            .zip(&self.durations)
            .filter(|(r, _)| r[leg.index()] == 1)
            .map(|(_, d)| *d)
            .sum()
    }

    /// Exact duty factors in [`Leg::ALL`] order.
    pub fn duty_factors_exact(&self) -> [Fraction; 4] {
        let cycle = self.cycle();
        Leg::ALL.map(|leg| (cycle - self.airborne_time(leg)) / cycle)
    }

    pub fn duty_factors(&self) -> [f64; 4] {
        self.duty_factors_exact().map(to_f64)
    }

    /// Touchdown instants (1 → 0 transitions on the cyclic timeline) of a
    /// leg, as fractions of the cycle in [0, 1). Zero-duration rows take no
    /// time and are skipped.
    pub fn touchdowns(&self, leg: Leg) -> Vec<Fraction> {
        let cycle = self.cycle();
        let zero = Fraction::from_integer(0);
        let mut timeline = Vec::new();
        let mut t = zero;
        for (row, d) in self.rows.iter().zip(&self.durations) {
            t += *d;
            if *d > zero {
                timeline.push((row[leg.index()], t));
            }
        }
        let m = timeline.len();
        (0..m)
            .filter(|&i| timeline[i].0 == 1 && timeline[(i + 1) % m].0 == 0)
            .map(|i| wrap_unit(timeline[i].1 / cycle))
            .collect()
    }

    fn touchdown(&self, leg: Leg) -> Result<Fraction, GaitError> {
        match self.touchdowns(leg).as_slice() {
            [t] => Ok(*t),
            _ => Err(GaitError::MultipleTouchdowns(leg)),
        }
    }

    /// Exact phase of every leg relative to `reference`, in [`Leg::ALL`]
    /// order (the reference entry is zero).
    pub fn phases_exact(&self, reference: Leg) -> Result<[Fraction; 4], GaitError> {
        let t_ref = self.touchdown(reference)?;
        let mut out = [Fraction::from_integer(0); 4];
        for leg in Leg::ALL {
            out[leg.index()] = wrap_unit(self.touchdown(leg)? - t_ref);
        }
        Ok(out)
    }

    /// Phases of the three non-reference legs, in leg-number order.
    pub fn relative_phases(&self, reference: Leg) -> Result<Vec<f64>, GaitError> {
        let all = self.phases_exact(reference)?;
        Ok(Leg::ALL
            .iter()
            .filter(|&&l| l != reference)
            .map(|l| to_f64(all[l.index()]))
            .collect())
    }
}

/// Nearest simple fraction to a finite non-negative-or-negative float.
pub fn fraction_from_f64(value: f64) -> Option<Fraction> {
    if !value.is_finite() {
        return None;
    }
    Fraction::approximate_float(value)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
enum RawDuration {
    Number(f64),
    Text(String),
}

impl RawDuration {
    fn to_fraction(&self) -> Result<Fraction, GaitError> {
        match self {
            RawDuration::Number(v) => {
                fraction_from_f64(*v).ok_or_else(|| GaitError::InvalidDuration(v.to_string()))
            }
            RawDuration::Text(s) => {
                Fraction::from_str(s.trim()).map_err(|_| GaitError::InvalidDuration(s.clone()))
            }
        }
    }
}

/// On-disk form: `{"rows": [[0,0,0,0], ...], "durations": [0, 0.25, ...]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GaitMatrixDocument {
    rows: Vec<Vec<i64>>,
    durations: Vec<RawDuration>,
}

impl GaitMatrixDocument {
    pub fn into_matrix(self) -> Result<GaitMatrix, GaitError> {
        let durations = self
            .durations
            .iter()
            .map(RawDuration::to_fraction)
            .collect::<Result<Vec<_>, _>>()?;
        GaitMatrix::new(self.rows, durations)
    }
}

impl From<&GaitMatrix> for GaitMatrixDocument {
    fn from(g: &GaitMatrix) -> Self {
        GaitMatrixDocument {
            rows: g
                .rows
                .iter()
                .map(|r| r.iter().map(|&v| v as i64).collect())
                .collect(),
            durations: g
                .durations
                .iter()
                .map(|&d| RawDuration::Number(to_f64(d)))
                .collect(),
        }
    }
}

impl Serialize for GaitMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        GaitMatrixDocument::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for GaitMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        GaitMatrixDocument::deserialize(d)?
            .into_matrix()
            .map_err(serde::de::Error::custom)
    }
}

/// McGhee's gait formula: four duty factors and the phases of legs 2–4
/// relative to leg 1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GaitFormula {
    pub duty_factors: [f64; 4],
    pub relative_phases: [f64; 3],
}

impl GaitFormula {
    pub fn new(duty_factors: [f64; 4], relative_phases: [f64; 3]) -> Result<Self, GaitError> {
        if let Some(d) = duty_factors.iter().find(|d| !(**d > 0.0 && **d < 1.0)) {
            return Err(GaitError::InvalidFormula(format!(
                "duty factor {d} outside (0,1)"
            )));
        }
        if let Some(p) = relative_phases.iter().find(|p| !(**p >= 0.0 && **p < 1.0)) {
            return Err(GaitError::InvalidFormula(format!(
                "relative phase {p} outside [0,1)"
            )));
        }
        Ok(GaitFormula {
            duty_factors,
            relative_phases,
        })
    }

    pub fn from_tuple(t: [f64; 7]) -> Result<Self, GaitError> {
        GaitFormula::new([t[0], t[1], t[2], t[3]], [t[4], t[5], t[6]])
    }

    pub fn to_tuple(&self) -> [f64; 7] {
        let d = self.duty_factors;
        let p = self.relative_phases;
        [d[0], d[1], d[2], d[3], p[0], p[1], p[2]]
    }

    /// Phase of each leg relative to leg 1, in [`Leg::ALL`] order.
    pub fn phase_of(&self, leg: Leg) -> f64 {
        match leg.index() {
            0 => 0.0,
            i => self.relative_phases[i - 1],
        }
    }
}

pub fn mcghee_formula(g: &GaitMatrix) -> Result<GaitFormula, GaitError> {
    let phases = g.relative_phases(Leg::ALL[0])?;
    GaitFormula::new(g.duty_factors(), [phases[0], phases[1], phases[2]])
}

/// Hildebrand's two-number formula for a symmetrical gait, in percent.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HildebrandFormula {
    pub duty_percent: f64,
    pub relative_phase_percent: f64,
}

impl fmt::Display for HildebrandFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.duty_percent, self.relative_phase_percent)
    }
}

const SYMMETRY_TOL: f64 = 1e-9;

fn wrap_f64(x: f64) -> f64 {
    let w = x.rem_euclid(1.0);
    if (1.0 - w).abs() <= SYMMETRY_TOL {
        0.0
    } else {
        w
    }
}

/// Reduces a symmetrical McGhee formula to Hildebrand's (duty, lag) pair,
/// where the lag is the fraction of the cycle by which a forefoot's
/// touchdown follows the hind foot on the same side.
pub fn hildebrand_formula(f: &GaitFormula) -> Result<HildebrandFormula, GaitError> {
    let d0 = f.duty_factors[0];
    if let Some((i, d)) = f
        .duty_factors
        .iter()
        .enumerate()
        .find(|(_, d)| (**d - d0).abs() > SYMMETRY_TOL)
    {
        return Err(GaitError::NotSymmetric(format!(
            "duty factor of leg {} ({d}) differs from leg 1 ({d0})",
            i + 1
        )));
    }
    for (a, b) in [(Leg::LH, Leg::RH), (Leg::LF, Leg::RF)] {
        let gap = wrap_f64(f.phase_of(a) - f.phase_of(b));
        if (gap - 0.5).abs() > SYMMETRY_TOL {
            return Err(GaitError::NotSymmetric(format!(
                "{a} and {b} are {gap} of a cycle apart, expected 0.5"
            )));
        }
    }
    let lag = wrap_f64(f.phase_of(Leg::LF) - f.phase_of(Leg::LH));
    Ok(HildebrandFormula {
        duty_percent: round_percent(d0),
        relative_phase_percent: round_percent(lag),
    })
}

/// Percent value with sub-1e-9 float noise removed.
fn round_percent(fraction: f64) -> f64 {
    let p = fraction * 100.0;
    let r = p.round();
    if (p - r).abs() <= 1e-7 {
        r
    } else {
        p
    }
}

/// McGhee's kinematic gait formula: duty factors, stride-normalised initial
/// foot positions relative to the CoG, and relative phases.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KinematicGaitFormula {
    pub duty_factors: [f64; 4],
    pub foot_x: [f64; 4],
    pub foot_y: [f64; 4],
    pub relative_phases: [f64; 3],
}

impl KinematicGaitFormula {
    pub fn to_tuple(&self) -> [f64; 15] {
        let mut t = [0.0; 15];
        t[0..4].copy_from_slice(&self.duty_factors);
        t[4..8].copy_from_slice(&self.foot_x);
        t[8..12].copy_from_slice(&self.foot_y);
        t[12..15].copy_from_slice(&self.relative_phases);
        t
    }

    pub fn from_tuple(t: [f64; 15]) -> Result<Self, GaitError> {
        let f = GaitFormula::new([t[0], t[1], t[2], t[3]], [t[12], t[13], t[14]])?;
        Ok(KinematicGaitFormula {
            duty_factors: f.duty_factors,
            foot_x: [t[4], t[5], t[6], t[7]],
            foot_y: [t[8], t[9], t[10], t[11]],
            relative_phases: f.relative_phases,
        })
    }

    pub fn gait_formula(&self) -> GaitFormula {
        GaitFormula {
            duty_factors: self.duty_factors,
            relative_phases: self.relative_phases,
        }
    }

    /// Foot positions in millimetres for a given stride and CoG location.
    pub fn foot_positions(&self, cog: Point2, stride_mm: f64) -> [Point2; 4] {
        std::array::from_fn(|i| cog + Point2::new(self.foot_x[i], self.foot_y[i]) * stride_mm)
    }
}

/// Assembles the kinematic formula from feet given in [`Leg::ALL`] order.
pub fn kinematic_formula(
    f: &GaitFormula,
    foot_positions: [Point2; 4],
    cog: Point2,
    stride_length_mm: f64,
) -> Result<KinematicGaitFormula, GaitError> {
    if !(stride_length_mm > 0.0) || !stride_length_mm.is_finite() {
        return Err(GaitError::NonPositiveStride(stride_length_mm));
    }
    let rel = foot_positions.map(|p| (p - cog) * (1.0 / stride_length_mm));
    Ok(KinematicGaitFormula {
        duty_factors: f.duty_factors,
        foot_x: rel.map(|p| p.x),
        foot_y: rel.map(|p| p.y),
        relative_phases: f.relative_phases,
    })
}

/// Swing order of the lateral-sequence cycle, one leg per quarter.
pub const SWING_ORDER: [Leg; 4] = [Leg::LH, Leg::LF, Leg::RH, Leg::RF];

/// Instantaneous state of the cycle.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GaitPhase {
    pub time_fraction: f64,
    pub legs_in_air: Vec<Leg>,
    /// Fraction of the swinging leg's full revolution completed.
    pub swing_leg_progress: f64,
    pub body_angle_deg: f64,
}

/// Leg and body state at `time_fraction` of the cycle (wrapped into
/// [0, 1)) for undulation amplitude `alpha_deg`.
///
/// Each quarter swings one leg in [`SWING_ORDER`]; the body holds +α while
/// LH swings, sweeps to −α while LF swings, holds −α while RH swings and
/// sweeps back to +α while RF swings.
pub fn schedule(time_fraction: f64, alpha_deg: f64) -> GaitPhase {
    let alpha = alpha_deg.abs();
    let t = time_fraction.rem_euclid(1.0);
    let scaled = 4.0 * t;
    let quarter = (scaled.floor() as usize).min(3);
    let progress = (scaled - quarter as f64).clamp(0.0, 1.0);
    let body_angle_deg = match quarter {
        0 => alpha,
        1 => alpha - 2.0 * alpha * progress,
        2 => -alpha,
        _ => -alpha + 2.0 * alpha * progress,
    };
    GaitPhase {
        time_fraction: t,
        legs_in_air: vec![SWING_ORDER[quarter]],
        swing_leg_progress: progress,
        body_angle_deg,
    }
}
