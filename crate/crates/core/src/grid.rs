//! Polar sampling grids on the closed unit disk.

use std::f64::consts::TAU;
use std::io::{self, BufRead, Write};

use rayon::prelude::*;

use crate::error::{Error, Result};

/// `n_r` radii `r_max·i/(n_r − 1)` times `n_theta` angles `2πj/n_theta`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolarGrid {
    pub n_r: usize,
    pub n_theta: usize,
    pub r_max: f64,
}

/// One grid node.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridPoint {
    pub r: f64,
    pub theta: f64,
    pub x: f64,
    pub y: f64,
}

impl Default for PolarGrid {
    fn default() -> Self {
        PolarGrid {
            n_r: 64,
            n_theta: 256,
            r_max: 1.0 - 1e-6,
        }
    }
}

impl PolarGrid {
    pub fn new(n_r: usize, n_theta: usize, r_max: f64) -> Result<Self> {
        if n_r < 2 {
            return Err(Error::invalid("grid.n_r", "need at least 2 radii"));
        }
        if n_theta < 1 {
            return Err(Error::invalid("grid.n_theta", "need at least 1 angle"));
        }
        if !(r_max > 0.0 && r_max <= 1.0) {
            return Err(Error::invalid("grid.r_max", "must lie in (0, 1]"));
        }
        Ok(PolarGrid {
            n_r,
            n_theta,
            r_max,
        })
    }

    pub fn len(&self) -> usize {
        self.n_r * self.n_theta
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Node `k` in radius-major order.
    pub fn point(&self, k: usize) -> GridPoint {
        let (i, j) = (k / self.n_theta, k % self.n_theta);
        let r = self.r_max * i as f64 / (self.n_r - 1) as f64;
        let theta = TAU * j as f64 / self.n_theta as f64;
        GridPoint {
            r,
            theta,
            x: r * theta.cos(),
            y: r * theta.sin(),
        }
    }

    pub fn points(&self) -> impl Iterator<Item = GridPoint> + '_ {
        (0..self.len()).map(move |k| self.point(k))
    }

    /// Roughly `max_points` nodes spread over the grid, keeping only those
    /// whose distance from the boundary exceeds `margin`.
    pub fn subsample(&self, max_points: usize, margin: f64) -> Vec<(f64, f64)> {
        let stride = (self.len() / max_points.max(1)).max(1);
        // An odd stride mixes radii and angles instead of locking onto one ray.
        let stride = if stride > 1 && stride.is_multiple_of(2) {
            stride + 1
        } else {
            stride
        };
        (0..self.len())
            .step_by(stride)
            .map(|k| self.point(k))
            .filter(|p| p.r + margin < 1.0)
            .map(|p| (p.x, p.y))
            .collect()
    }
}

/// A scalar field sampled on a [`PolarGrid`].
#[derive(Debug, Clone, PartialEq)]
pub struct FieldGrid {
    pub grid: PolarGrid,
    pub values: Vec<f64>,
}

impl FieldGrid {
    pub fn sample(grid: PolarGrid, f: impl Fn(f64, f64) -> f64 + Sync) -> Self {
        let values = (0..grid.len())
            .into_par_iter()
            .map(|k| {
                let p = grid.point(k);
                f(p.x, p.y)
            })
            .collect();
        FieldGrid { grid, values }
    }

    /// Samples several fields that share one evaluation per node.
    pub fn sample_many<const K: usize>(
        grid: PolarGrid,
        f: impl Fn(f64, f64) -> [f64; K] + Sync,
    ) -> [FieldGrid; K] {
        let rows: Vec<[f64; K]> = (0..grid.len())
            .into_par_iter()
            .map(|k| {
                let p = grid.point(k);
                f(p.x, p.y)
            })
            .collect();
        std::array::from_fn(|i| FieldGrid {
            grid,
            values: rows.iter().map(|r| r[i]).collect(),
        })
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn max_abs_diff(&self, other: &FieldGrid) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .fold(0.0, |m, (a, b)| m.max((a - b).abs()))
    }

    /// Writes `r,theta,x,y,value` rows using the shortest decimal strings
    /// that round-trip to the same `f64`.
    pub fn write_csv(&self, mut w: impl Write) -> io::Result<()> {
        writeln!(w, "r,theta,x,y,value")?;
        for (p, v) in self.grid.points().zip(&self.values) {
            writeln!(w, "{},{},{},{},{}", p.r, p.theta, p.x, p.y, v)?;
        }
        Ok(())
    }

    /// Parses the format produced by [`FieldGrid::write_csv`]; returns the
    /// rows as `[r, theta, x, y, value]`.
    pub fn read_csv(r: impl BufRead) -> io::Result<Vec<[f64; 5]>> {
        let mut rows = Vec::new();
        for (n, line) in r.lines().enumerate() {
            let line = line?;
            if n == 0 || line.is_empty() {
                continue;
            }
            let mut row = [0.0; 5];
            let mut cols = line.split(',');
            for slot in row.iter_mut() {
                *slot = cols.next().and_then(|c| c.parse().ok()).ok_or_else(|| {
                    io::Error::new(io::ErrorKind::InvalidData, format!("bad row {n}"))
                })?;
            }
            rows.push(row);
        }
        Ok(rows)
    }
}
