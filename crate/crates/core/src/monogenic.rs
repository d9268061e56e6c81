//! Monogenic 𝔹-valued functions on the unit disk.
//!
//! A monogenic function is represented by two holomorphic polynomials
//! `(F, G)` through
//!
//! ```text
//! Φ(ζ) = F(z)·e₁ + (G(z) − i·y·F′(z))·ρ,   ζ = x·e₁ + y·e₂,  z = x + iy,
//! ```
//!
//! which is exactly the form taken by every 𝔹-polynomial `Σ A_k ζ^k`.
//! Its four real components are
//! `U₁ = Re(c+d)`, `U₂ = Im(c+d)`, `U₃ = −Im d`, `U₄ = Re d`
//! with `c = F(z)`, `d = G(z) − i·y·F′(z)`.
//!
//! The residual probes ([`cr_residual`], [`biharmonic_residual`]) work on
//! any [`ComponentField`], so hand-built or deliberately broken component
//! sets can be checked with the same code.

use num_complex::Complex64;

use crate::algebra::{BElement, NilpotentForm};
use crate::dd::{CDd, Dd};
use crate::error::{check_in_disk, Error, Result};
use crate::holomorphic::TaylorSeries;

/// Step for the first-derivative central differences in [`cr_residual`].
pub const CR_STEP: f64 = 1e-5;
/// Step for the 13-point `Δ²` stencil.
pub const BIHARMONIC_STEP: f64 = 1e-3;

/// A source of the four real components `(U₁, U₂, U₃, U₄)` at a point.
pub trait ComponentField: Sync {
    fn components(&self, x: f64, y: f64) -> [f64; 4];

    /// Extended-precision evaluation; the default rounds the point to `f64`.
    fn components_dd(&self, x: Dd, y: Dd) -> [Dd; 4] {
        self.components(x.to_f64(), y.to_f64()).map(Dd::new)
    }
}

impl<F> ComponentField for F
where
    F: Fn(f64, f64) -> [f64; 4] + Sync,
{
    fn components(&self, x: f64, y: f64) -> [f64; 4] {
        self(x, y)
    }
}

/// `Φ = F·e₁ + (G − i·y·F′)·ρ` with polynomial `F`, `G`.
#[derive(Debug, Clone, PartialEq)]
pub struct MonogenicFunction {
    f: TaylorSeries,
    g: TaylorSeries,
    df: TaylorSeries,
}

impl MonogenicFunction {
    pub fn new(f: TaylorSeries, g: TaylorSeries) -> Self {
        let df = f.differentiate();
        MonogenicFunction { f, g, df }
    }

    pub fn zero() -> Self {
        MonogenicFunction::new(TaylorSeries::zero(), TaylorSeries::zero())
    }

    /// The constant function `a`.
    pub fn constant(a: BElement) -> Self {
        let n = a.to_nilpotent();
        MonogenicFunction::new(TaylorSeries::constant(n.c), TaylorSeries::constant(n.d))
    }

    /// The identity `Φ(ζ) = ζ`.
    pub fn identity() -> Self {
        MonogenicFunction::from_b_polynomial(&[BElement::ZERO, BElement::E1])
    }

    pub fn f(&self) -> &TaylorSeries {
        &self.f
    }

    pub fn g(&self) -> &TaylorSeries {
        &self.g
    }

    /// `F′`, cached at construction.
    pub fn f_prime(&self) -> &TaylorSeries {
        &self.df
    }

    pub fn degree(&self) -> usize {
        self.f.degree().max(self.g.degree())
    }

    /// `Σ A_k ζ^k`. With `A_k = c_k + d_k·ρ` this is `F = Σ c_k z^k`, `G = Σ d_k z^k`.
    pub fn from_b_polynomial(coeffs: &[BElement]) -> Self {
        let (c, d): (Vec<Complex64>, Vec<Complex64>) = coeffs
            .iter()
            .map(|a| {
                let n = a.to_nilpotent();
                (n.c, n.d)
            })
            .unzip();
        MonogenicFunction::new(TaylorSeries::new(c), TaylorSeries::new(d))
    }

    /// `Φ(x·e₁ + y·e₂)`; rejects points outside the closed unit disk.
    pub fn evaluate(&self, x: f64, y: f64) -> Result<BElement> {
        check_in_disk(x, y)?;
        Ok(self.nilpotent_at(x, y).to_element())
    }

    #[inline]
    pub(crate) fn nilpotent_at(&self, x: f64, y: f64) -> NilpotentForm {
        let z = Complex64::new(x, y);
        let c = self.f.eval(z);
        let d = self.g.eval(z) - Complex64::new(0.0, y) * self.df.eval(z);
        NilpotentForm { c, d }
    }

    /// Components `[U₁, U₂, U₃, U₄]` without the domain check.
    #[inline]
    pub fn components_at(&self, x: f64, y: f64) -> [f64; 4] {
        self.nilpotent_at(x, y).to_element().to_array()
    }

    /// `U₁ − U₄ = Re F(z)`.
    pub fn re_f(&self, x: f64, y: f64) -> f64 {
        self.f.eval(Complex64::new(x, y)).re
    }

    /// `Im F(z)`; the harmonic conjugate of `Re F` vanishing at the origin
    /// whenever `Im F(0) = 0`.
    pub fn im_f(&self, x: f64, y: f64) -> f64 {
        self.f.eval(Complex64::new(x, y)).im
    }

    /// `Φ′ = ∂Φ/∂x`, represented by `(F′, G′)`.
    pub fn derivative(&self) -> MonogenicFunction {
        MonogenicFunction::new(self.df.clone(), self.g.differentiate())
    }

    pub fn add(&self, other: &MonogenicFunction) -> MonogenicFunction {
        MonogenicFunction::new(self.f.add(&other.f), self.g.add(&other.g))
    }

    pub fn sub(&self, other: &MonogenicFunction) -> MonogenicFunction {
        MonogenicFunction::new(self.f.sub(&other.f), self.g.sub(&other.g))
    }

    pub fn scale(&self, s: f64) -> MonogenicFunction {
        let s = Complex64::new(s, 0.0);
        MonogenicFunction::new(self.f.scale(s), self.g.scale(s))
    }

    /// Product with a constant `a ∈ 𝔹`: `(c + dρ)(F + (G − iyF′)ρ)`.
    pub fn mul_constant(&self, a: BElement) -> MonogenicFunction {
        let n = a.to_nilpotent();
        MonogenicFunction::new(self.f.scale(n.c), self.g.scale(n.c).add(&self.f.scale(n.d)))
    }
}

impl ComponentField for MonogenicFunction {
    fn components(&self, x: f64, y: f64) -> [f64; 4] {
        self.components_at(x, y)
    }

    fn components_dd(&self, x: Dd, y: Dd) -> [Dd; 4] {
        let z = CDd::new(x, y);
        let c = self.f.eval_dd(z);
        let iy = CDd::new(Dd::ZERO, y);
        let d = self.g.eval_dd(z) - iy * self.df.eval_dd(z);
        let s = c + d;
        [s.re, s.im, -d.im, d.re]
    }
}

/// One equation of the Cauchy–Riemann analog.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CrEquation {
    /// `∂U₁/∂y = ∂U₃/∂x`
    Kr1,
    /// `∂U₂/∂y = ∂U₄/∂x`
    Kr2,
    /// `∂U₃/∂y = ∂U₁/∂x − 2·∂U₄/∂x`
    Kr3,
    /// `∂U₄/∂y = ∂U₂/∂x + 2·∂U₃/∂x`
    Kr4,
}

impl CrEquation {
    pub const ALL: [CrEquation; 4] = [
        CrEquation::Kr1,
        CrEquation::Kr2,
        CrEquation::Kr3,
        CrEquation::Kr4,
    ];
}

/// Partial derivatives of the four components at a point.
#[derive(Debug, Clone, Copy)]
pub struct ComponentPartials {
    pub dx: [f64; 4],
    pub dy: [f64; 4],
}

impl ComponentPartials {
    /// `LHS − RHS` of each equation. `flip` negates the sign of the
    /// `x`-derivative coupling in one equation, for mutation testing.
    pub fn cr_defects(&self, flip: Option<CrEquation>) -> [f64; 4] {
        let s = |eq| if flip == Some(eq) { -1.0 } else { 1.0 };
        let (dx, dy) = (self.dx, self.dy);
        [
            dy[0] - s(CrEquation::Kr1) * dx[2],
            dy[1] - s(CrEquation::Kr2) * dx[3],
            dy[2] - (dx[0] - s(CrEquation::Kr3) * 2.0 * dx[3]),
            dy[3] - (dx[1] + s(CrEquation::Kr4) * 2.0 * dx[2]),
        ]
    }
}

/// Fourth-order central-difference partials with step [`CR_STEP`].
pub fn fd_partials(field: &impl ComponentField, x: f64, y: f64) -> ComponentPartials {
    let h = CR_STEP;
    let at = |dx: f64, dy: f64| field.components(x + dx, y + dy);
    // Differences first, so a constant field gives exactly zero.
    let (xp1, xm1, xp2, xm2) = (at(h, 0.0), at(-h, 0.0), at(2.0 * h, 0.0), at(-2.0 * h, 0.0));
    let (yp1, ym1, yp2, ym2) = (at(0.0, h), at(0.0, -h), at(0.0, 2.0 * h), at(0.0, -2.0 * h));
    let s = 12.0 * h;
    let d = |p1: [f64; 4], m1: [f64; 4], p2: [f64; 4], m2: [f64; 4]| {
        std::array::from_fn(|k| (8.0 * (p1[k] - m1[k]) - (p2[k] - m2[k])) / s)
    };
    ComponentPartials {
        dx: d(xp1, xm1, xp2, xm2),
        dy: d(yp1, ym1, yp2, ym2),
    }
}

fn check_stencil(x: f64, y: f64, reach: f64) -> Result<()> {
    if x.hypot(y) + reach < 1.0 {
        Ok(())
    } else {
        Err(Error::Domain { x, y })
    }
}

/// Largest defect of the four CR-analog equations over `points`.
pub fn cr_residual(field: &impl ComponentField, points: &[(f64, f64)]) -> Result<f64> {
    cr_residual_mutated(field, points, None)
}

/// [`cr_residual`] with one equation's coupling sign flipped.
pub fn cr_residual_mutated(
    field: &impl ComponentField,
    points: &[(f64, f64)],
    flip: Option<CrEquation>,
) -> Result<f64> {
    let mut worst = 0.0_f64;
    for &(x, y) in points {
        check_stencil(x, y, 2.0 * CR_STEP)?;
        let defects = fd_partials(field, x, y).cr_defects(flip);
        worst = defects.iter().fold(worst, |m, d| m.max(d.abs()));
    }
    Ok(worst)
}

const STENCIL13: [(i32, i32, f64); 13] = [
    (0, 0, 20.0),
    (1, 0, -8.0),
    (-1, 0, -8.0),
    (0, 1, -8.0),
    (0, -1, -8.0),
    (1, 1, 2.0),
    (1, -1, 2.0),
    (-1, 1, 2.0),
    (-1, -1, 2.0),
    (2, 0, 1.0),
    (-2, 0, 1.0),
    (0, 2, 1.0),
    (0, -2, 1.0),
];

/// The 13-point `Δ²` stencil with step `h`, sampled in double-double
/// arithmetic so that the `h⁻⁴` amplification acts on ~32-digit samples.
pub fn biharmonic_stencil(field: &impl ComponentField, x: f64, y: f64, h: f64) -> [f64; 4] {
    let (xd, yd) = (Dd::new(x), Dd::new(y));
    let mut acc = [Dd::ZERO; 4];
    for &(i, j, w) in &STENCIL13 {
        let u = field.components_dd(xd + Dd::new(i as f64 * h), yd + Dd::new(j as f64 * h));
        for k in 0..4 {
            acc[k] = acc[k] + u[k].scale(w);
        }
    }
    let h4 = h * h * h * h;
    acc.map(|a| a.to_f64() / h4)
}

/// Richardson combination `(4·S_h − S_{2h})/3` of [`biharmonic_stencil`],
/// which cancels the `O(h²)` truncation term.
pub fn biharmonic_fd(field: &impl ComponentField, x: f64, y: f64) -> [f64; 4] {
    let h = BIHARMONIC_STEP;
    let s1 = biharmonic_stencil(field, x, y, h);
    let s2 = biharmonic_stencil(field, x, y, 2.0 * h);
    let mut out = [0.0; 4];
    for k in 0..4 {
        out[k] = (4.0 * s1[k] - s2[k]) / 3.0;
    }
    out
}

/// Largest finite-difference `Δ²U_k` over `points` and the four components.
/// Points must sit farther than `4h` from the boundary.
pub fn biharmonic_residual(field: &impl ComponentField, points: &[(f64, f64)]) -> Result<f64> {
    let mut worst = 0.0_f64;
    for &(x, y) in points {
        check_stencil(x, y, 4.0 * BIHARMONIC_STEP)?;
        worst = biharmonic_fd(field, x, y)
            .iter()
            .fold(worst, |m, v| m.max(v.abs()));
    }
    Ok(worst)
}
