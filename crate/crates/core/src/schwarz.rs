//! The (1-4)-problem on the unit disk: find a monogenic `Φ` from the boundary
//! values of its components `U₁` and `U₄`.
//!
//! With `Φ = F·e₁ + (G − iyF′)·ρ` the two prescribed components satisfy
//! `U₁ − U₄ = Re F` and `U₄ = Re G + y·Im F′`, so the problem splits into two
//! classical Schwarz problems solved one after the other. Both are
//! normalized by `Im F(0) = Im G(0) = 0`; the remaining freedom is the
//! two-dimensional kernel returned by [`kernel_basis`].

use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::holomorphic::{BoundaryFunction, TaylorSeries};
use crate::monogenic::MonogenicFunction;

/// Default cap on the number of Fourier modes the solver will handle.
pub const DEFAULT_MAX_MODES: usize = 4096;

/// Boundary data `U₁|∂D = u1`, `U₄|∂D = u4` truncated at degree `n`.
#[derive(Debug, Clone, PartialEq)]
pub struct Problem14 {
    pub u1: BoundaryFunction,
    pub u4: BoundaryFunction,
    n: usize,
}

impl Problem14 {
    /// Uses the smallest admissible truncation degree.
    pub fn new(u1: BoundaryFunction, u4: BoundaryFunction) -> Self {
        let n = u1.degree().max(u4.degree());
        Problem14 { u1, u4, n }
    }

    /// Explicit truncation degree; must cover both data degrees.
    pub fn with_truncation(u1: BoundaryFunction, u4: BoundaryFunction, n: usize) -> Result<Self> {
        let need = u1.degree().max(u4.degree());
        if n < need {
            return Err(Error::invalid(
                "truncation",
                format!("N = {n} is below the boundary data degree {need}"),
            ));
        }
        Ok(Problem14 { u1, u4, n })
    }

    pub fn truncation(&self) -> usize {
        self.n
    }

    /// `α·self + β·other`.
    pub fn combine(&self, alpha: f64, other: &Problem14, beta: f64) -> Problem14 {
        Problem14 {
            u1: self.u1.combine(alpha, &other.u1, beta),
            u4: self.u4.combine(alpha, &other.u4, beta),
            n: self.n.max(other.n),
        }
    }
}

/// Spectral solver for [`Problem14`].
#[derive(Debug, Clone, Copy)]
pub struct Solver14 {
    pub max_modes: usize,
}

impl Default for Solver14 {
    fn default() -> Self {
        Solver14 {
            max_modes: DEFAULT_MAX_MODES,
        }
    }
}

impl Solver14 {
    pub fn with_max_modes(max_modes: usize) -> Self {
        Solver14 { max_modes }
    }

    fn check(&self, degree: usize) -> Result<()> {
        if degree > self.max_modes {
            Err(Error::DegreeOverflow {
                degree,
                cap: self.max_modes,
            })
        } else {
            Ok(())
        }
    }

    pub fn solve(&self, p: &Problem14) -> Result<MonogenicFunction> {
        self.check(p.n)?;
        self.check(p.u1.len().max(p.u4.len()))?;

        let f = p.u1.sub(&p.u4).schwarz_solve();
        // y·Im F′ on the circle: sin θ times the imaginary trace of F′.
        let im_df = f.differentiate().boundary_im_trace();
        let t = BoundaryFunction::sin(1).multiply(&im_df);
        self.check(t.len())?;
        let g = p.u4.sub(&t).schwarz_solve();
        Ok(MonogenicFunction::new(f, g))
    }
}

/// Solves the (1-4)-problem with the default mode cap.
pub fn solve_14(p: &Problem14) -> Result<MonogenicFunction> {
    Solver14::default().solve(p)
}

/// Largest mismatch of `U₁`, `U₄` against the data at `4N + 8` boundary angles.
pub fn boundary_residual(phi: &MonogenicFunction, p: &Problem14) -> f64 {
    let m = 4 * p.n + 8;
    (0..m)
        .map(|j| {
            let t = TAU * j as f64 / m as f64;
            let u = phi.components_at(t.cos(), t.sin());
            (u[0] - p.u1.evaluate(t))
                .abs()
                .max((u[3] - p.u4.evaluate(t)).abs())
        })
        .fold(0.0, f64::max)
}

/// The constants `(F = i, G = 0)` and `(F = 0, G = i)`, i.e. `i·e₁` and
/// `i·e₁ − e₂`. Both have `U₁ ≡ U₄ ≡ 0`, and together they span every
/// solution of the homogeneous problem in the polynomial class.
pub fn kernel_basis() -> [MonogenicFunction; 2] {
    let i = TaylorSeries::constant(Complex64::new(0.0, 1.0));
    [
        MonogenicFunction::new(i.clone(), TaylorSeries::zero()),
        MonogenicFunction::new(TaylorSeries::zero(), i),
    ]
}
