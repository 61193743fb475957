//! Monotone piecewise-cubic Hermite interpolation (Fritsch–Butland slopes).
//!
//! Between consecutive knots the curve is monotone and never leaves the
//! range spanned by the two knot values, so sparse design-table anchors can
//! be filled in without inventing extrema. Outside the knot range the
//! interpolant is held constant at the nearest endpoint value.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum InterpError {
    #[error("at least two knots are required, got {0}")]
    TooFewKnots(usize),
    #[error("knot abscissae must be strictly increasing (knot {index})")]
    NotIncreasing { index: usize },
    #[error("knot {index} is not finite")]
    NonFinite { index: usize },
}

#[derive(Debug, Clone, PartialEq)]
pub struct MonotoneCubic {
    xs: Vec<f64>,
    ys: Vec<f64>,
    slopes: Vec<f64>,
}

impl MonotoneCubic {
    pub fn new(knots: &[(f64, f64)]) -> Result<Self, InterpError> {
        let n = knots.len();
        if n < 2 {
            return Err(InterpError::TooFewKnots(n));
        }
        for (index, &(x, y)) in knots.iter().enumerate() {
            if !x.is_finite() || !y.is_finite() {
                return Err(InterpError::NonFinite { index });
            }
        }
        let xs: Vec<f64> = knots.iter().map(|k| k.0).collect();
        let ys: Vec<f64> = knots.iter().map(|k| k.1).collect();

        let mut widths = Vec::with_capacity(n - 1);
        let mut secants = Vec::with_capacity(n - 1);
        for i in 0..n - 1 {
            let h = xs[i + 1] - xs[i];
            if h <= 0.0 {
                return Err(InterpError::NotIncreasing { index: i + 1 });
            }
            widths.push(h);
            secants.push((ys[i + 1] - ys[i]) / h);
        }

        let mut slopes = vec![0.0; n];
        for k in 1..n - 1 {
            let (s0, s1) = (secants[k - 1], secants[k]);
            if s0 == 0.0 || s1 == 0.0 || s0.signum() != s1.signum() {
                continue;
            }
            let (h0, h1) = (widths[k - 1], widths[k]);
            let w0 = 2.0 * h1 + h0;
            let w1 = h1 + 2.0 * h0;
            slopes[k] = (w0 + w1) / (w0 / s0 + w1 / s1);
        }

        if n == 2 {
            slopes[0] = secants[0];
            slopes[1] = secants[0];
        } else {
            slopes[0] = end_slope(widths[0], widths[1], secants[0], secants[1]);
            slopes[n - 1] = end_slope(widths[n - 2], widths[n - 3], secants[n - 2], secants[n - 3]);
        }

        Ok(MonotoneCubic { xs, ys, slopes })
    }

    pub fn knots(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.xs.iter().copied().zip(self.ys.iter().copied())
    }

    pub fn domain(&self) -> (f64, f64) {
        (self.xs[0], self.xs[self.xs.len() - 1])
    }

    /// True when `x` coincides with a knot abscissa.
    pub fn is_knot(&self, x: f64) -> bool {
        self.xs.contains(&x)
    }

    pub fn eval(&self, x: f64) -> f64 {
        let n = self.xs.len();
        if x <= self.xs[0] {
            return self.ys[0];
        }
        if x >= self.xs[n - 1] {
            return self.ys[n - 1];
        }
        let k = self.xs.partition_point(|&xi| xi <= x) - 1;
        let h = self.xs[k + 1] - self.xs[k];
        let t = (x - self.xs[k]) / h;
        let t2 = t * t;
        let t3 = t2 * t;
        let h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
        let h10 = t3 - 2.0 * t2 + t;
        let h01 = -2.0 * t3 + 3.0 * t2;
        let h11 = t3 - t2;
        h00 * self.ys[k]
            + h10 * h * self.slopes[k]
            + h01 * self.ys[k + 1]
            + h11 * h * self.slopes[k + 1]
    }
}

/// Three-point end slope, clipped so the end segment stays monotone.
fn end_slope(h0: f64, h1: f64, s0: f64, s1: f64) -> f64 {
    let d = ((2.0 * h0 + h1) * s0 - h0 * s1) / (h0 + h1);
    if d.signum() != s0.signum() || s0 == 0.0 {
        0.0
    } else if s0.signum() != s1.signum() && d.abs() > 3.0 * s0.abs() {
        3.0 * s0
    } else {
        d
    }
}
