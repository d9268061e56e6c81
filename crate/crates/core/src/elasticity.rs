//! Plane-strain elastic equilibrium from boundary values of `∂u/∂x` and
//! `∂v/∂y`.
//!
//! The chain is: boundary data `(g₁, g₂)` ↦ (1-4)-problem data
//! ([`boundary_map`]) ↦ monogenic `Φ` ↦ displacement gradients `V₁ = u_x`,
//! `V₂ = v_y` ([`gradients`]) and Airy second derivatives
//! `W_xx = U₁[Φ]`, `W_yy = U₁[Φ] − 2U₄[Φ]` ([`airy_second_derivatives`]) ↦
//! stresses ([`stresses`]) ↦ shear gradients `V₃ = u_y`, `V₄ = v_x`
//! ([`shear_gradients`]) ↦ displacements ([`displacements`]).
//!
//! Sign conventions: `σx = W_yy`, `σy = W_xx`, `τxy = −W_xy`. The mixed
//! derivative `W_xy` is recovered by integrating the exact differential
//! `(∂W_xx/∂y) dx + (∂W_yy/∂x) dy` from a basepoint where it is set to zero.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{check_in_disk, Error, Result};
use crate::fd;
use crate::grid::{FieldGrid, PolarGrid};
use crate::holomorphic::BoundaryFunction;
use crate::monogenic::MonogenicFunction;
use crate::quadrature::Path;
use crate::schwarz::{boundary_residual, kernel_basis, Problem14, Solver14, DEFAULT_MAX_MODES};

/// Isotropic Lamé moduli with `μ > 0` and `λ + μ > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LameConstants {
    lambda: f64,
    mu: f64,
}

impl LameConstants {
    pub fn new(lambda: f64, mu: f64) -> Result<Self> {
        if !mu.is_finite() || mu <= 0.0 {
            return Err(Error::invalid("mu", format!("must be positive, got {mu}")));
        }
        if !lambda.is_finite() || lambda + mu <= 0.0 {
            return Err(Error::invalid(
                "lambda",
                format!("lambda + mu must be positive, got lambda = {lambda}"),
            ));
        }
        Ok(LameConstants { lambda, mu })
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    /// `κ₀ = (λ + 2μ) / (2(λ + μ))`.
    pub fn kappa0(&self) -> f64 {
        (self.lambda + 2.0 * self.mu) / (2.0 * (self.lambda + self.mu))
    }

    /// `γ = (λ + μ) / μ`.
    pub fn gamma(&self) -> f64 {
        (self.lambda + self.mu) / self.mu
    }

    /// `(σx, σy)` from `(u_x, v_y)` by Hooke's law.
    pub fn hooke(&self, v1: f64, v2: f64) -> (f64, f64) {
        let l2m = self.lambda + 2.0 * self.mu;
        (l2m * v1 + self.lambda * v2, self.lambda * v1 + l2m * v2)
    }
}

/// Which expression is used for `2μ·∂v/∂y` in terms of `U₁`, `U₄`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum V2Formula {
    /// `2μV₂ = (μU₁ + λU₄)/(λ+μ)`, the inverse of Hooke's law under
    /// `σx = U₁ − 2U₄`, `σy = U₁`.
    #[default]
    Derived,
    /// `2μV₂ = (μU₁ + (λ+2μ)U₄)/(λ+μ)`. Kept only to demonstrate that it
    /// does not reproduce manufactured solutions.
    Printed,
}

impl fmt::Display for V2Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            V2Formula::Derived => "derived",
            V2Formula::Printed => "printed",
        })
    }
}

/// Data of the (1-4)-problem: `u₁ = λg₁ + (λ+2μ)g₂`, `u₄ = −μg₁ + μg₂`.
pub fn boundary_map(g1: &BoundaryFunction, g2: &BoundaryFunction, l: &LameConstants) -> Problem14 {
    let (lam, mu) = (l.lambda, l.mu);
    Problem14::new(g1.combine(lam, g2, lam + 2.0 * mu), g1.combine(-mu, g2, mu))
}

/// Boundary traces of `(W_xx, W_yy)`:
/// `λg₁ + (λ+2μ)g₂` and `(λ+2μ)g₁ + λg₂`.
pub fn airy_boundary(
    g1: &BoundaryFunction,
    g2: &BoundaryFunction,
    l: &LameConstants,
) -> (BoundaryFunction, BoundaryFunction) {
    let (lam, l2m) = (l.lambda, l.lambda + 2.0 * l.mu);
    (g1.combine(lam, g2, l2m), g1.combine(l2m, g2, lam))
}

/// `[V₁, V₂]` from the components `U₁`, `U₄` of `Φ`.
pub fn gradients_from_components(u: &[f64; 4], l: &LameConstants, formula: V2Formula) -> [f64; 2] {
    let (lam, mu) = (l.lambda, l.mu);
    let denom = 2.0 * mu * (lam + mu);
    let v1 = (mu * u[0] - (lam + 2.0 * mu) * u[3]) / denom;
    let c4 = match formula {
        V2Formula::Derived => lam,
        V2Formula::Printed => lam + 2.0 * mu,
    };
    let v2 = (mu * u[0] + c4 * u[3]) / denom;
    [v1, v2]
}

/// `[V₃, V₄]` from `W_xy` and the conjugate `W̃₀`:
/// `2μV₃ = −W_xy − κ₀W̃₀`, `2μV₄ = −W_xy + κ₀W̃₀`.
pub fn shear_from(w11: f64, w0_conj: f64, l: &LameConstants) -> [f64; 2] {
    let k = l.kappa0();
    let two_mu = 2.0 * l.mu;
    [(-w11 - k * w0_conj) / two_mu, (-w11 + k * w0_conj) / two_mu]
}

fn check_basepoint(b: (f64, f64)) -> Result<()> {
    if b.0.hypot(b.1) < 1.0 && b.0.is_finite() && b.1.is_finite() {
        Ok(())
    } else {
        Err(Error::invalid(
            "basepoint",
            format!("({}, {}) is not inside the open unit disk", b.0, b.1),
        ))
    }
}

/// `u_x` and `v_y` of the displacement field generated by `Φ`.
#[derive(Debug, Clone)]
pub struct Gradients {
    phi: MonogenicFunction,
    lame: LameConstants,
    formula: V2Formula,
}

impl Gradients {
    pub fn at(&self, x: f64, y: f64) -> Result<[f64; 2]> {
        check_in_disk(x, y)?;
        Ok(self.at_unchecked(x, y))
    }

    fn at_unchecked(&self, x: f64, y: f64) -> [f64; 2] {
        gradients_from_components(&self.phi.components_at(x, y), &self.lame, self.formula)
    }

    pub fn formula(&self) -> V2Formula {
        self.formula
    }
}

pub fn gradients(phi: &MonogenicFunction, l: &LameConstants) -> Gradients {
    gradients_with(phi, l, V2Formula::Derived)
}

pub fn gradients_with(phi: &MonogenicFunction, l: &LameConstants, formula: V2Formula) -> Gradients {
    Gradients {
        phi: phi.clone(),
        lame: *l,
        formula,
    }
}

/// `W_xy` as a line integral of `U₃[Φ′] dx + (U₁[Φ′] − 2U₄[Φ′]) dy`,
/// zero at the basepoint.
#[derive(Debug, Clone)]
pub struct MixedDerivative {
    dphi: MonogenicFunction,
    basepoint: (f64, f64),
}

impl MixedDerivative {
    pub fn at(&self, x: f64, y: f64) -> Result<f64> {
        check_in_disk(x, y)?;
        Ok(self.at_unchecked(x, y))
    }

    fn at_unchecked(&self, x: f64, y: f64) -> f64 {
        let [w] = Path::radial_angular(self.basepoint, (x, y))
            .integrate(|x, y| [self.differential(x, y)]);
        w
    }

    /// `(∂W_xx/∂y, ∂W_yy/∂x)` at a point.
    pub fn differential(&self, x: f64, y: f64) -> (f64, f64) {
        let u = self.dphi.components_at(x, y);
        (u[2], u[0] - 2.0 * u[3])
    }

    /// The same integral along an arbitrary path.
    pub fn integrate_along(&self, path: &Path) -> f64 {
        let [w] = path.integrate(|x, y| [self.differential(x, y)]);
        w
    }
}

pub fn mixed_derivative(phi: &MonogenicFunction, basepoint: (f64, f64)) -> Result<MixedDerivative> {
    check_basepoint(basepoint)?;
    Ok(MixedDerivative {
        dphi: phi.derivative(),
        basepoint,
    })
}

/// Airy second derivatives at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AiryPoint {
    /// `W_xx`
    pub w1: f64,
    /// `W_yy`
    pub w2: f64,
    /// `ΔW = 2·Re F`
    pub w0: f64,
    /// `2·Im F`, the harmonic conjugate of `W₀`
    pub w0_conj: f64,
    /// `W_xy`
    pub w11: f64,
}

/// Second derivatives of the Airy function `W` with `W_xx = U₁[Φ]`,
/// `W_yy = U₁[Φ] − 2U₄[Φ]`.
#[derive(Debug, Clone)]
pub struct AiryDerivatives {
    phi: MonogenicFunction,
    mixed: MixedDerivative,
    u3_base: f64,
}

impl AiryDerivatives {
    pub fn basepoint(&self) -> (f64, f64) {
        self.mixed.basepoint
    }

    pub fn mixed(&self) -> &MixedDerivative {
        &self.mixed
    }

    pub fn at(&self, x: f64, y: f64) -> Result<AiryPoint> {
        check_in_disk(x, y)?;
        let mut p = self.local(x, y);
        p.w11 = self.mixed.at_unchecked(x, y);
        Ok(p)
    }

    /// Everything except `W_xy`, which is left at zero.
    fn local(&self, x: f64, y: f64) -> AiryPoint {
        let u = self.phi.components_at(x, y);
        AiryPoint {
            w1: u[0],
            w2: u[0] - 2.0 * u[3],
            w0: 2.0 * self.phi.re_f(x, y),
            w0_conj: 2.0 * self.phi.im_f(x, y),
            w11: 0.0,
        }
    }

    /// `W_xy` by quadrature.
    pub fn w11(&self, x: f64, y: f64) -> Result<f64> {
        self.mixed.at(x, y)
    }

    /// `W_xy` through its primitive `U₃[Φ] − U₃[Φ](basepoint)`; agrees with
    /// [`AiryDerivatives::w11`] because `dU₃[Φ]` is the same differential.
    pub fn w11_exact(&self, x: f64, y: f64) -> f64 {
        self.phi.components_at(x, y)[2] - self.u3_base
    }
}

pub fn airy_second_derivatives(
    phi: &MonogenicFunction,
    basepoint: (f64, f64),
) -> Result<AiryDerivatives> {
    let mixed = mixed_derivative(phi, basepoint)?;
    Ok(AiryDerivatives {
        u3_base: phi.components_at(basepoint.0, basepoint.1)[2],
        phi: phi.clone(),
        mixed,
    })
}

/// `(σx, σy, τxy)`: Hooke's law on `(V₁, V₂)` and `τxy = −W_xy`.
#[derive(Debug, Clone)]
pub struct Stresses {
    gradients: Gradients,
    mixed: MixedDerivative,
}

impl Stresses {
    pub fn at(&self, x: f64, y: f64) -> Result<[f64; 3]> {
        check_in_disk(x, y)?;
        Ok(self.at_unchecked(x, y))
    }

    fn at_unchecked(&self, x: f64, y: f64) -> [f64; 3] {
        let [v1, v2] = self.gradients.at_unchecked(x, y);
        let (sx, sy) = self.gradients.lame.hooke(v1, v2);
        [sx, sy, -self.mixed.at_unchecked(x, y)]
    }
}

pub fn stresses(
    phi: &MonogenicFunction,
    l: &LameConstants,
    basepoint: (f64, f64),
) -> Result<Stresses> {
    Ok(Stresses {
        gradients: gradients(phi, l),
        mixed: mixed_derivative(phi, basepoint)?,
    })
}

/// `u_y` and `v_x`.
#[derive(Debug, Clone)]
pub struct ShearGradients {
    airy: AiryDerivatives,
    lame: LameConstants,
}

impl ShearGradients {
    /// With `W_xy` from quadrature.
    pub fn at(&self, x: f64, y: f64) -> Result<[f64; 2]> {
        let a = self.airy.at(x, y)?;
        Ok(shear_from(a.w11, a.w0_conj, &self.lame))
    }

    /// With `W_xy` from its closed-form primitive.
    pub fn at_exact(&self, x: f64, y: f64) -> [f64; 2] {
        let w0_conj = 2.0 * self.airy.phi.im_f(x, y);
        shear_from(self.airy.w11_exact(x, y), w0_conj, &self.lame)
    }
}

pub fn shear_gradients(a: &AiryDerivatives, l: &LameConstants) -> ShearGradients {
    ShearGradients {
        airy: a.clone(),
        lame: *l,
    }
}

/// A displacement-gradient field `[V₁, V₂, V₃, V₄] = [u_x, v_y, u_y, v_x]`.
pub trait GradientField: Sync {
    fn gradients(&self, x: f64, y: f64) -> [f64; 4];
}

impl<F> GradientField for F
where
    F: Fn(f64, f64) -> [f64; 4] + Sync,
{
    fn gradients(&self, x: f64, y: f64) -> [f64; 4] {
        self(x, y)
    }
}

/// `u = ∫ V₁dx + V₃dy`, `v = ∫ V₄dx + V₂dy` from the basepoint.
#[derive(Debug, Clone)]
pub struct Displacements<G> {
    field: G,
    basepoint: (f64, f64),
}

impl<G: GradientField> Displacements<G> {
    pub fn at(&self, x: f64, y: f64) -> Result<[f64; 2]> {
        check_in_disk(x, y)?;
        Ok(self.at_unchecked(x, y))
    }

    fn at_unchecked(&self, x: f64, y: f64) -> [f64; 2] {
        self.integrate_along(&Path::radial_angular(self.basepoint, (x, y)))
    }

    /// `[∮du, ∮dv]` style integral along an arbitrary path.
    pub fn integrate_along(&self, path: &Path) -> [f64; 2] {
        path.integrate(|x, y| {
            let v = self.field.gradients(x, y);
            [(v[0], v[2]), (v[3], v[1])]
        })
    }
}

pub fn displacements<G: GradientField>(
    field: G,
    basepoint: (f64, f64),
) -> Result<Displacements<G>> {
    check_basepoint(basepoint)?;
    Ok(Displacements { field, basepoint })
}

/// The three displacement pairs built from the components of `Φ`.
#[derive(Debug, Clone)]
pub struct LamePairs {
    phi: MonogenicFunction,
    gamma: f64,
}

impl LamePairs {
    pub fn with_gamma(phi: &MonogenicFunction, gamma: f64) -> Self {
        LamePairs {
            phi: phi.clone(),
            gamma,
        }
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    /// Pair `k ∈ {0, 1, 2}` at a point.
    pub fn pair(&self, k: usize, x: f64, y: f64) -> [f64; 2] {
        let [u1, u2, u3, u4] = self.phi.components_at(x, y);
        let g = self.gamma;
        match k {
            0 => [(2.0 / g) * u1 - ((2.0 + g) / g) * u4, u2],
            1 => [-((2.0 + g) / g) * u2 - (2.0 * (1.0 + g) / g) * u3, u4],
            2 => [-(2.0 / g) * u2 - ((2.0 + g) / g) * u3, u1],
            _ => panic!("pair index {k} out of range"),
        }
    }

    pub fn all(&self, x: f64, y: f64) -> [[f64; 2]; 3] {
        [self.pair(0, x, y), self.pair(1, x, y), self.pair(2, x, y)]
    }
}

pub fn lame_pairs(phi: &MonogenicFunction, l: &LameConstants) -> LamePairs {
    LamePairs::with_gamma(phi, l.gamma())
}

/// Largest finite-difference defect of `Δu + γθ_x = 0`, `Δv + γθ_y = 0`,
/// `θ = u_x + v_y`, using fourth-order central stencils with `h = 1e-3`.
pub fn lame_residual(
    field: &impl Fn(f64, f64) -> [f64; 2],
    gamma: f64,
    points: &[(f64, f64)],
) -> Result<f64> {
    let h = fd::STEP;
    let mut worst = 0.0_f64;
    for &(x, y) in points {
        if x.hypot(y) + fd::REACH * h * std::f64::consts::SQRT_2 >= 1.0 {
            return Err(Error::Domain { x, y });
        }
        let hs = fd::hessian(field, x, y, h);
        let r1 = hs.xx[0] + hs.yy[0] + gamma * (hs.xx[0] + hs.xy[1]);
        let r2 = hs.xx[1] + hs.yy[1] + gamma * (hs.xy[0] + hs.yy[1]);
        worst = worst.max(r1.abs()).max(r2.abs());
    }
    Ok(worst)
}

/// Knobs for [`solve_pipeline_with`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PipelineOptions {
    pub v2_formula: V2Formula,
    pub max_modes: usize,
    /// Truncation degree of the (1-4)-problem; `None` uses the data degree.
    pub truncation: Option<usize>,
    /// Number of interior probe points for the finite-difference residuals.
    pub probe_points: usize,
}

impl Default for PipelineOptions {
    fn default() -> Self {
        PipelineOptions {
            v2_formula: V2Formula::Derived,
            max_modes: DEFAULT_MAX_MODES,
            truncation: None,
            probe_points: 256,
        }
    }
}

/// Every field of the reconstructed equilibrium at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ElasticPoint {
    /// `U₁..U₄` of `Φ`.
    pub components: [f64; 4],
    /// `V₁..V₄ = u_x, v_y, u_y, v_x`.
    pub gradients: [f64; 4],
    pub airy: AiryPoint,
    pub sigma_x: f64,
    pub sigma_y: f64,
    pub tau_xy: f64,
    pub u: f64,
    pub v: f64,
}

/// Point evaluator for the complete solution generated by one `Φ`.
#[derive(Debug, Clone)]
pub struct ElasticSolution {
    phi: MonogenicFunction,
    lame: LameConstants,
    formula: V2Formula,
    airy: AiryDerivatives,
    gradients: Gradients,
}

/// `[V₁..V₄]` of an [`ElasticSolution`] with closed-form `W_xy`; this is the
/// integrand of the displacement line integrals.
#[derive(Debug, Clone, Copy)]
pub struct SolutionGradients<'a>(&'a ElasticSolution);

impl GradientField for SolutionGradients<'_> {
    fn gradients(&self, x: f64, y: f64) -> [f64; 4] {
        self.0.gradients_exact(x, y)
    }
}

impl ElasticSolution {
    pub fn from_monogenic(
        phi: MonogenicFunction,
        lame: LameConstants,
        basepoint: (f64, f64),
        formula: V2Formula,
    ) -> Result<Self> {
        let airy = airy_second_derivatives(&phi, basepoint)?;
        Ok(ElasticSolution {
            gradients: gradients_with(&phi, &lame, formula),
            phi,
            lame,
            formula,
            airy,
        })
    }

    /// Boundary data → (1-4)-problem → `Φ` → solution.
    pub fn solve(
        g1: &BoundaryFunction,
        g2: &BoundaryFunction,
        lame: LameConstants,
        basepoint: (f64, f64),
        opts: &PipelineOptions,
    ) -> Result<(Self, Problem14)> {
        check_basepoint(basepoint)?;
        let mut problem = boundary_map(g1, g2, &lame);
        if let Some(n) = opts.truncation {
            problem = Problem14::with_truncation(problem.u1, problem.u4, n)?;
        }
        let phi = Solver14::with_max_modes(opts.max_modes).solve(&problem)?;
        Ok((
            ElasticSolution::from_monogenic(phi, lame, basepoint, opts.v2_formula)?,
            problem,
        ))
    }

    pub fn phi(&self) -> &MonogenicFunction {
        &self.phi
    }

    pub fn lame(&self) -> &LameConstants {
        &self.lame
    }

    pub fn basepoint(&self) -> (f64, f64) {
        self.airy.basepoint()
    }

    pub fn airy(&self) -> &AiryDerivatives {
        &self.airy
    }

    pub fn v2_formula(&self) -> V2Formula {
        self.formula
    }

    /// `[V₁, V₂, V₃, V₄]` using the closed-form `W_xy`.
    pub fn gradients_exact(&self, x: f64, y: f64) -> [f64; 4] {
        let u = self.phi.components_at(x, y);
        let [v1, v2] = gradients_from_components(&u, &self.lame, self.formula);
        let w0_conj = 2.0 * self.phi.im_f(x, y);
        let [v3, v4] = shear_from(u[2] - self.airy.u3_base, w0_conj, &self.lame);
        [v1, v2, v3, v4]
    }

    pub fn displacement_field(&self) -> Displacements<SolutionGradients<'_>> {
        Displacements {
            field: SolutionGradients(self),
            basepoint: self.basepoint(),
        }
    }

    /// `(σx, σy, τxy)` with `τxy` from quadrature.
    pub fn stress_at(&self, x: f64, y: f64) -> [f64; 3] {
        let [v1, v2] = self.gradients.at_unchecked(x, y);
        let (sx, sy) = self.lame.hooke(v1, v2);
        [sx, sy, -self.airy.mixed.at_unchecked(x, y)]
    }

    pub fn displacement_at(&self, x: f64, y: f64) -> [f64; 2] {
        self.displacement_field().at_unchecked(x, y)
    }

    pub fn point(&self, x: f64, y: f64) -> Result<ElasticPoint> {
        check_in_disk(x, y)?;
        Ok(self.point_unchecked(x, y))
    }

    fn point_unchecked(&self, x: f64, y: f64) -> ElasticPoint {
        let components = self.phi.components_at(x, y);
        let airy = AiryPoint {
            w11: self.airy.mixed.at_unchecked(x, y),
            ..self.airy.local(x, y)
        };
        let gradients = self.gradients_exact(x, y);
        let (sigma_x, sigma_y) = self.lame.hooke(gradients[0], gradients[1]);
        let [u, v] = self.displacement_at(x, y);
        ElasticPoint {
            components,
            gradients,
            airy,
            sigma_x,
            sigma_y,
            tau_xy: -airy.w11,
            u,
            v,
        }
    }
}

/// Consistency measures of one pipeline run; all are `max |·|` values.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ResidualReport {
    /// `U₁`, `U₄` against the (1-4) data on the circle.
    pub boundary: f64,
    /// FD divergence of the stress tensor, divided by `max(1, max|σ|)`.
    pub equilibrium: f64,
    /// `τxy − μ(V₃+V₄)` and Hooke's law for `σx`, `σy`.
    pub hooke: f64,
    /// `σx − W_yy`, `σy − W_xx`.
    pub airy: f64,
    /// FD Lamé defect of `(u, v)`, divided by `max(1, max|V|)`.
    pub lame: f64,
    /// Closed-loop integrals of `dW_xy`, `du`, `dv`.
    pub loop_closure: f64,
    /// Change in `V₁`, `V₂` when a kernel element is added to `Φ`.
    pub kernel: f64,
    pub v2_formula: V2Formula,
}

/// Sampled fields and residuals of one pipeline run.
#[derive(Debug, Clone)]
pub struct ElasticState {
    pub phi: MonogenicFunction,
    pub problem: Problem14,
    pub lame: LameConstants,
    pub basepoint: (f64, f64),
    pub grid: PolarGrid,
    /// `U₁..U₄`
    pub components: [FieldGrid; 4],
    /// `V₁..V₄`
    pub gradients: [FieldGrid; 4],
    pub w1: FieldGrid,
    pub w2: FieldGrid,
    pub sigma_x: FieldGrid,
    pub sigma_y: FieldGrid,
    pub tau_xy: FieldGrid,
    pub u: FieldGrid,
    pub v: FieldGrid,
    pub report: ResidualReport,
}

impl ElasticState {
    /// `(name, field)` pairs in output order.
    pub fn named_fields(&self) -> Vec<(&'static str, &FieldGrid)> {
        vec![
            ("U1", &self.components[0]),
            ("U2", &self.components[1]),
            ("U3", &self.components[2]),
            ("U4", &self.components[3]),
            ("V1", &self.gradients[0]),
            ("V2", &self.gradients[1]),
            ("V3", &self.gradients[2]),
            ("V4", &self.gradients[3]),
            ("sigma_x", &self.sigma_x),
            ("sigma_y", &self.sigma_y),
            ("tau_xy", &self.tau_xy),
            ("u", &self.u),
            ("v", &self.v),
        ]
    }
}

pub fn solve_pipeline(
    g1: &BoundaryFunction,
    g2: &BoundaryFunction,
    l: &LameConstants,
    grid: &PolarGrid,
    basepoint: (f64, f64),
) -> Result<ElasticState> {
    solve_pipeline_with(g1, g2, l, grid, basepoint, &PipelineOptions::default())
}

pub fn solve_pipeline_with(
    g1: &BoundaryFunction,
    g2: &BoundaryFunction,
    l: &LameConstants,
    grid: &PolarGrid,
    basepoint: (f64, f64),
    opts: &PipelineOptions,
) -> Result<ElasticState> {
    let (sol, problem) = ElasticSolution::solve(g1, g2, *l, basepoint, opts)?;
    let grid = *grid;

    let rows = FieldGrid::sample_many::<15>(grid, |x, y| {
        let p = sol.point_unchecked(x, y);
        let [u1, u2, u3, u4] = p.components;
        let [v1, v2, v3, v4] = p.gradients;
        [
            u1, u2, u3, u4, v1, v2, v3, v4, p.airy.w1, p.airy.w2, p.sigma_x, p.sigma_y, p.tau_xy,
            p.u, p.v,
        ]
    });
    let [u1, u2, u3, u4, v1, v2, v3, v4, w1, w2, sigma_x, sigma_y, tau_xy, u, v] = rows;

    let mu = l.mu();
    let mut hooke = 0.0_f64;
    let mut airy = 0.0_f64;
    for k in 0..grid.len() {
        let (sx, sy) = l.hooke(v1.values[k], v2.values[k]);
        hooke = hooke
            .max((tau_xy.values[k] - mu * (v3.values[k] + v4.values[k])).abs())
            .max((sigma_x.values[k] - sx).abs())
            .max((sigma_y.values[k] - sy).abs());
        airy = airy
            .max((sigma_x.values[k] - w2.values[k]).abs())
            .max((sigma_y.values[k] - w1.values[k]).abs());
    }

    let h = fd::STEP;
    let probes = grid.subsample(opts.probe_points, 3.0 * h);

    let stress_scale = [&sigma_x, &sigma_y, &tau_xy]
        .iter()
        .map(|f| f.max_abs())
        .fold(1.0, f64::max);
    let mut equilibrium = 0.0_f64;
    for &(x, y) in &probes {
        let (dx, dy) = fd::gradient(&|x, y| sol.stress_at(x, y), x, y, h);
        let div1 = dx[0] + dy[2];
        let div2 = dx[2] + dy[1];
        equilibrium = equilibrium.max(div1.abs()).max(div2.abs());
    }
    equilibrium /= stress_scale;

    let grad_scale = [&v1, &v2, &v3, &v4]
        .iter()
        .map(|f| f.max_abs())
        .fold(1.0, f64::max);
    let lame_probes: Vec<_> = probes.iter().step_by(4).copied().collect();
    let lame =
        lame_residual(&|x, y| sol.displacement_at(x, y), l.gamma(), &lame_probes)? / grad_scale;

    let loop_closure = loop_residual(&sol);

    let mut kernel = 0.0_f64;
    for k in kernel_basis() {
        let shifted = gradients_with(&sol.phi.add(&k), l, opts.v2_formula);
        for &(x, y) in &probes {
            let a = sol.gradients.at_unchecked(x, y);
            let b = shifted.at_unchecked(x, y);
            kernel = kernel.max((a[0] - b[0]).abs()).max((a[1] - b[1]).abs());
        }
    }

    let report = ResidualReport {
        boundary: boundary_residual(&sol.phi, &problem),
        equilibrium,
        hooke,
        airy,
        lame,
        loop_closure,
        kernel,
        v2_formula: opts.v2_formula,
    };

    Ok(ElasticState {
        phi: sol.phi.clone(),
        problem,
        lame: *l,
        basepoint,
        grid,
        components: [u1, u2, u3, u4],
        gradients: [v1, v2, v3, v4],
        w1,
        w2,
        sigma_x,
        sigma_y,
        tau_xy,
        u,
        v,
        report,
    })
}

/// Largest closed-loop integral of `dW_xy`, `du`, `dv` over two circles
/// and a triangle inside the disk.
pub fn loop_residual(sol: &ElasticSolution) -> f64 {
    let loops = [
        Path::circle(0.5),
        Path::circle(0.95),
        Path::polygon(&[(-0.6, -0.3), (0.7, -0.2), (0.1, 0.8)]),
    ];
    let disp = sol.displacement_field();
    loops
        .iter()
        .map(|p| {
            let w = sol.airy.mixed.integrate_along(p);
            let [du, dv] = disp.integrate_along(p);
            w.abs().max(du.abs()).max(dv.abs())
        })
        .fold(0.0, f64::max)
}
