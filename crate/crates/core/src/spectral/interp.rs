//! One-dimensional interpolation of tabulated data.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Interpolation {
    /// Piecewise-cubic Hermite with Fritsch–Carlson slopes (PCHIP); no overshoot.
    #[default]
    MonotoneCubic,
    Linear,
}

impl std::str::FromStr for Interpolation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "monotone" | "monotone_cubic" | "pchip" => Ok(Interpolation::MonotoneCubic),
            "linear" => Ok(Interpolation::Linear),
            other => Err(Error::Config(format!("unknown interpolation `{other}`"))),
        }
    }
}

/// Interpolant through (x_i, y_i); zero outside [x_0, x_n].
#[derive(Debug, Clone, PartialEq)]
pub struct Interpolant {
    x: Vec<f64>,
    y: Vec<f64>,
    slopes: Vec<f64>,
    kind: Interpolation,
}

impl Interpolant {
    pub fn new(x: Vec<f64>, y: Vec<f64>, kind: Interpolation) -> Result<Self> {
        if x.len() != y.len() || x.len() < 2 {
            return Err(Error::Domain(
                "interpolation needs at least two (x, y) pairs".into(),
            ));
        }
        if x.windows(2).any(|w| w[1] <= w[0]) || x.iter().chain(&y).any(|v| !v.is_finite()) {
            return Err(Error::Domain(
                "interpolation abscissae must be finite and strictly increasing".into(),
            ));
        }
        let slopes = match kind {
            Interpolation::Linear => Vec::new(),
            Interpolation::MonotoneCubic => pchip_slopes(&x, &y),
        };
        Ok(Interpolant { x, y, slopes, kind })
    }

    pub fn x(&self) -> &[f64] {
        &self.x
    }

    pub fn y(&self) -> &[f64] {
        &self.y
    }

    pub fn domain(&self) -> (f64, f64) {
        (self.x[0], self.x[self.x.len() - 1])
    }

    fn locate(&self, t: f64) -> Option<usize> {
        let (lo, hi) = self.domain();
        if !(lo..=hi).contains(&t) {
            return None;
        }
        let k = self.x.partition_point(|&v| v <= t);
        Some(k.saturating_sub(1).min(self.x.len() - 2))
    }

    pub fn eval(&self, t: f64) -> f64 {
        let Some(k) = self.locate(t) else {
            return 0.0;
        };
        let (x0, x1, y0, y1) = (self.x[k], self.x[k + 1], self.y[k], self.y[k + 1]);
        let h = x1 - x0;
        let s = (t - x0) / h;
        match self.kind {
            Interpolation::Linear => y0 + s * (y1 - y0),
            Interpolation::MonotoneCubic => {
                let (d0, d1) = (self.slopes[k], self.slopes[k + 1]);
                let u = 1.0 - s;
                y0 * (1.0 + 2.0 * s) * u * u
                    + d0 * h * s * u * u
                    + y1 * s * s * (3.0 - 2.0 * s)
                    + d1 * h * s * s * (s - 1.0)
            }
        }
    }

    pub fn derivative(&self, t: f64) -> f64 {
        let Some(k) = self.locate(t) else {
            return 0.0;
        };
        let (x0, x1, y0, y1) = (self.x[k], self.x[k + 1], self.y[k], self.y[k + 1]);
        let h = x1 - x0;
        match self.kind {
            Interpolation::Linear => (y1 - y0) / h,
            Interpolation::MonotoneCubic => {
                let s = (t - x0) / h;
                let (d0, d1) = (self.slopes[k], self.slopes[k + 1]);
                (6.0 * s * s - 6.0 * s) * (y0 - y1) / h
                    + d0 * (3.0 * s * s - 4.0 * s + 1.0)
                    + d1 * (3.0 * s * s - 2.0 * s)
            }
        }
    }

    /// Exact integral of the interpolant over its whole domain.
    pub fn integral(&self) -> f64 {
        (0..self.x.len() - 1)
            .map(|k| {
                let h = self.x[k + 1] - self.x[k];
                let trap = 0.5 * h * (self.y[k] + self.y[k + 1]);
                match self.kind {
                    Interpolation::Linear => trap,
                    Interpolation::MonotoneCubic => {
                        trap + h * h * (self.slopes[k] - self.slopes[k + 1]) / 12.0
                    }
                }
            })
            .sum()
    }

    pub fn scaled(mut self, factor: f64) -> Self {
        self.y.iter_mut().for_each(|v| *v *= factor);
        self.slopes.iter_mut().for_each(|v| *v *= factor);
        self
    }
}

fn pchip_slopes(x: &[f64], y: &[f64]) -> Vec<f64> {
    let n = x.len();
    let h: Vec<f64> = x.windows(2).map(|w| w[1] - w[0]).collect();
    let delta: Vec<f64> = (0..n - 1).map(|k| (y[k + 1] - y[k]) / h[k]).collect();
    if n == 2 {
        return vec![delta[0]; 2];
    }
    let mut d = vec![0.0; n];
    for k in 1..n - 1 {
        let (a, b) = (delta[k - 1], delta[k]);
        if a * b > 0.0 {
            let w1 = 2.0 * h[k] + h[k - 1];
            let w2 = h[k] + 2.0 * h[k - 1];
            d[k] = (w1 + w2) / (w1 / a + w2 / b);
        }
    }
    d[0] = end_slope(h[0], h[1], delta[0], delta[1]);
    d[n - 1] = end_slope(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);
    d
}

fn end_slope(h0: f64, h1: f64, d0: f64, d1: f64) -> f64 {
    let d = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
    if d.signum() != d0.signum() || d0 == 0.0 {
        0.0
    } else if d0.signum() != d1.signum() && d.abs() > 3.0 * d0.abs() {
        3.0 * d0
    } else {
        d
    }
}
