//! Polynomial holomorphic functions on the unit disk and real trigonometric
//! polynomials on its boundary.
//!
//! Everything here is exact on its input class: a [`TaylorSeries`] is a
//! polynomial, a [`BoundaryFunction`] is a trigonometric polynomial, and
//! the discrete Fourier transforms use enough samples to recover every
//! coefficient up to rounding.

use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::dd::CDd;
use crate::error::{check_in_disk, Result};

/// `F(z) = Σ c_k z^k`, stored with at least one coefficient.
#[derive(Debug, Clone, PartialEq)]
pub struct TaylorSeries {
    coeffs: Vec<Complex64>,
}

impl TaylorSeries {
    pub fn new(coeffs: Vec<Complex64>) -> Self {
        if coeffs.is_empty() {
            return TaylorSeries::zero();
        }
        TaylorSeries { coeffs }
    }

    pub fn zero() -> Self {
        TaylorSeries {
            coeffs: vec![Complex64::new(0.0, 0.0)],
        }
    }

    pub fn constant(c: Complex64) -> Self {
        TaylorSeries { coeffs: vec![c] }
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        TaylorSeries::new(coeffs.iter().map(|&v| Complex64::new(v, 0.0)).collect())
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Number of stored coefficients minus one.
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> Complex64 {
        self.coeffs.get(k).copied().unwrap_or_default()
    }

    /// Horner evaluation; rejects `|z| > 1`.
    pub fn evaluate(&self, z: Complex64) -> Result<Complex64> {
        check_in_disk(z.re, z.im)?;
        Ok(self.eval(z))
    }

    /// Horner evaluation without the domain check.
    #[inline]
    pub(crate) fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    pub(crate) fn eval_dd(&self, z: CDd) -> CDd {
        self.coeffs
            .iter()
            .rev()
            .fold(CDd::ZERO, |acc, &c| acc * z + CDd::from(c))
    }

    pub fn differentiate(&self) -> TaylorSeries {
        if self.coeffs.len() == 1 {
            return TaylorSeries::zero();
        }
        TaylorSeries {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| c * k as f64)
                .collect(),
        }
    }

    pub fn add(&self, other: &TaylorSeries) -> TaylorSeries {
        let n = self.coeffs.len().max(other.coeffs.len());
        TaylorSeries::new((0..n).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }

    pub fn sub(&self, other: &TaylorSeries) -> TaylorSeries {
        self.add(&other.scale(Complex64::new(-1.0, 0.0)))
    }

    pub fn scale(&self, s: Complex64) -> TaylorSeries {
        TaylorSeries::new(self.coeffs.iter().map(|&c| c * s).collect())
    }

    /// Fourier coefficients of `Re F(e^{iθ})`.
    pub fn boundary_re_trace(&self) -> BoundaryFunction {
        let a = self.coeffs[1..].iter().map(|c| c.re).collect();
        let b = self.coeffs[1..].iter().map(|c| -c.im).collect();
        BoundaryFunction::new(self.coeffs[0].re, a, b)
    }

    /// Fourier coefficients of `Im F(e^{iθ})`, i.e. the real trace of `−i·F`.
    pub fn boundary_im_trace(&self) -> BoundaryFunction {
        self.scale(Complex64::new(0.0, -1.0)).boundary_re_trace()
    }

    pub fn max_abs_diff(&self, other: &TaylorSeries) -> f64 {
        let n = self.coeffs.len().max(other.coeffs.len());
        (0..n)
            .map(|k| (self.coeff(k) - other.coeff(k)).norm())
            .fold(0.0, f64::max)
    }
}

/// `h(θ) = a₀ + Σ_{n=1}^{N} (a_n cos nθ + b_n sin nθ)`.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryFunction {
    pub a0: f64,
    a: Vec<f64>,
    b: Vec<f64>,
}

impl BoundaryFunction {
    /// Cosine and sine lists are zero-padded to a common length.
    pub fn new(a0: f64, mut a: Vec<f64>, mut b: Vec<f64>) -> Self {
        let n = a.len().max(b.len());
        a.resize(n, 0.0);
        b.resize(n, 0.0);
        BoundaryFunction { a0, a, b }
    }

    pub fn zero() -> Self {
        BoundaryFunction::new(0.0, Vec::new(), Vec::new())
    }

    pub fn constant(a0: f64) -> Self {
        BoundaryFunction::new(a0, Vec::new(), Vec::new())
    }

    /// `cos nθ`.
    pub fn cos(n: usize) -> Self {
        Self::mode(n, 1.0, 0.0)
    }

    /// `sin nθ`.
    pub fn sin(n: usize) -> Self {
        Self::mode(n, 0.0, 1.0)
    }

    fn mode(n: usize, ca: f64, cb: f64) -> Self {
        if n == 0 {
            return BoundaryFunction::constant(ca);
        }
        let mut a = vec![0.0; n];
        let mut b = vec![0.0; n];
        a[n - 1] = ca;
        b[n - 1] = cb;
        BoundaryFunction::new(0.0, a, b)
    }

    /// Cosine coefficients `a₁..a_N`.
    pub fn cos_coeffs(&self) -> &[f64] {
        &self.a
    }

    /// Sine coefficients `b₁..b_N`.
    pub fn sin_coeffs(&self) -> &[f64] {
        &self.b
    }

    pub fn a(&self, n: usize) -> f64 {
        if n == 0 {
            self.a0
        } else {
            self.a.get(n - 1).copied().unwrap_or(0.0)
        }
    }

    pub fn b(&self, n: usize) -> f64 {
        if n == 0 {
            0.0
        } else {
            self.b.get(n - 1).copied().unwrap_or(0.0)
        }
    }

    /// Stored length `N`.
    pub fn len(&self) -> usize {
        self.a.len()
    }

    pub fn is_empty(&self) -> bool {
        self.a.is_empty()
    }

    /// Highest mode with a nonzero coefficient.
    pub fn degree(&self) -> usize {
        (1..=self.a.len())
            .rev()
            .find(|&n| self.a[n - 1] != 0.0 || self.b[n - 1] != 0.0)
            .unwrap_or(0)
    }

    pub fn evaluate(&self, theta: f64) -> f64 {
        self.a
            .iter()
            .zip(&self.b)
            .enumerate()
            .fold(self.a0, |acc, (k, (&a, &b))| {
                let t = (k + 1) as f64 * theta;
                acc + a * t.cos() + b * t.sin()
            })
    }

    /// Values at the `m` angles `2πj/m`.
    pub fn sample(&self, m: usize) -> Vec<f64> {
        let table = TrigTable::new(m);
        (0..m)
            .map(|j| {
                (1..=self.a.len()).fold(self.a0, |acc, n| {
                    let (c, s) = table.at(n * j);
                    acc + self.a[n - 1] * c + self.b[n - 1] * s
                })
            })
            .collect()
    }

    /// Recovers coefficients up to `degree` from `m` uniform samples by a
    /// direct discrete Fourier transform. Exact for trigonometric polynomials
    /// of that degree when `m ≥ 2·degree + 1`.
    pub fn from_samples(samples: &[f64], degree: usize) -> Self {
        let m = samples.len();
        assert!(m > 2 * degree, "need at least 2N+1 samples");
        let table = TrigTable::new(m);
        let inv_m = 1.0 / m as f64;
        let a0 = samples.iter().sum::<f64>() * inv_m;
        let mut a = Vec::with_capacity(degree);
        let mut b = Vec::with_capacity(degree);
        for n in 1..=degree {
            let (mut sa, mut sb) = (0.0, 0.0);
            for (j, &s) in samples.iter().enumerate() {
                let (c, sn) = table.at(n * j);
                sa += s * c;
                sb += s * sn;
            }
            a.push(2.0 * sa * inv_m);
            b.push(2.0 * sb * inv_m);
        }
        BoundaryFunction::new(a0, a, b)
    }

    /// Interpolates `f` at `2·degree + 1` uniform angles.
    pub fn from_fn(degree: usize, f: impl Fn(f64) -> f64) -> Self {
        let m = 2 * degree + 1;
        let samples: Vec<f64> = (0..m).map(|j| f(TAU * j as f64 / m as f64)).collect();
        BoundaryFunction::from_samples(&samples, degree)
    }

    pub fn add(&self, other: &BoundaryFunction) -> BoundaryFunction {
        let n = self.len().max(other.len());
        BoundaryFunction::new(
            self.a0 + other.a0,
            (1..=n).map(|k| self.a(k) + other.a(k)).collect(),
            (1..=n).map(|k| self.b(k) + other.b(k)).collect(),
        )
    }

    pub fn sub(&self, other: &BoundaryFunction) -> BoundaryFunction {
        self.add(&other.scale(-1.0))
    }

    pub fn scale(&self, s: f64) -> BoundaryFunction {
        BoundaryFunction::new(
            self.a0 * s,
            self.a.iter().map(|v| v * s).collect(),
            self.b.iter().map(|v| v * s).collect(),
        )
    }

    /// `α·self + β·other`, coefficientwise.
    pub fn combine(&self, alpha: f64, other: &BoundaryFunction, beta: f64) -> BoundaryFunction {
        self.scale(alpha).add(&other.scale(beta))
    }

    /// Exact product of two trigonometric polynomials.
    pub fn multiply(&self, other: &BoundaryFunction) -> BoundaryFunction {
        let n = self.len() + other.len();
        let m = 2 * n + 1;
        let p: Vec<f64> = self
            .sample(m)
            .iter()
            .zip(other.sample(m))
            .map(|(x, y)| x * y)
            .collect();
        BoundaryFunction::from_samples(&p, n)
    }

    /// Boundary trace of the harmonic conjugate, normalized to zero mean:
    /// `cos nθ ↦ sin nθ`, `sin nθ ↦ −cos nθ`.
    pub fn harmonic_conjugate(&self) -> BoundaryFunction {
        BoundaryFunction::new(0.0, self.b.iter().map(|v| -v).collect(), self.a.clone())
    }

    /// The holomorphic `F` with `Re F = h` on the circle and `Im F(0) = 0`.
    pub fn schwarz_solve(&self) -> TaylorSeries {
        let mut coeffs = Vec::with_capacity(self.len() + 1);
        coeffs.push(Complex64::new(self.a0, 0.0));
        coeffs.extend(
            self.a
                .iter()
                .zip(&self.b)
                .map(|(&a, &b)| Complex64::new(a, -b)),
        );
        TaylorSeries::new(coeffs)
    }

    pub fn max_coeff_diff(&self, other: &BoundaryFunction) -> f64 {
        let n = self.len().max(other.len());
        (1..=n).fold((self.a0 - other.a0).abs(), |m, k| {
            m.max((self.a(k) - other.a(k)).abs())
                .max((self.b(k) - other.b(k)).abs())
        })
    }
}

/// Free-function forms of the boundary operations.
pub fn multiply_boundary(h1: &BoundaryFunction, h2: &BoundaryFunction) -> BoundaryFunction {
    h1.multiply(h2)
}

pub fn harmonic_conjugate_trace(h: &BoundaryFunction) -> BoundaryFunction {
    h.harmonic_conjugate()
}

pub fn schwarz_solve(h: &BoundaryFunction) -> TaylorSeries {
    h.schwarz_solve()
}

/// `cos` and `sin` of `2πk/m`, indexed by `k mod m` so large products stay accurate.
struct TrigTable {
    cos: Vec<f64>,
    sin: Vec<f64>,
}

impl TrigTable {
    fn new(m: usize) -> Self {
        let (cos, sin) = (0..m)
            .map(|k| {
                let t = TAU * k as f64 / m as f64;
                (t.cos(), t.sin())
            })
            .unzip();
        TrigTable { cos, sin }
    }

    #[inline]
    fn at(&self, k: usize) -> (f64, f64) {
        let i = k % self.cos.len();
        (self.cos[i], self.sin[i])
    }
}
