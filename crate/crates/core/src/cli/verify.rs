//! Randomized invariant battery behind `biharm verify`.
//!
//! Every check draws B-polynomials of the requested degree from a seeded
//! ChaCha stream, so a `(seed, degree)` pair always reproduces the same
//! table. `--inject-fault NAME` corrupts exactly one check to prove that
//! it can fail.

use std::f64::consts::TAU;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::BElement;
use crate::elasticity::{gradients, lame_pairs, lame_residual, stresses, LameConstants, LamePairs};
use crate::fd;
use crate::holomorphic::BoundaryFunction;
use crate::monogenic::{
    biharmonic_residual, cr_residual_mutated, ComponentField, CrEquation, MonogenicFunction,
};
use crate::schwarz::{kernel_basis, solve_14, Problem14};

/// Polynomials drawn per check.
const SAMPLES: usize = 12;
/// Interior probe points per polynomial.
const POINTS: usize = 12;
/// Probe points stay inside this radius.
const PROBE_RADIUS: f64 = 0.9;

const LAME_CASES: [(f64, f64); 3] = [(1.0, 1.0), (2.0, 1.0), (1.0, 3.0)];

/// A deliberately broken check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fault {
    Algebra,
    Cr,
    Biharmonic,
    Hessian,
    Schwarz,
    Lame,
    Kernel,
}

impl Fault {
    pub const ALL: [Fault; 7] = [
        Fault::Algebra,
        Fault::Cr,
        Fault::Biharmonic,
        Fault::Hessian,
        Fault::Schwarz,
        Fault::Lame,
        Fault::Kernel,
    ];

    /// Name of the check this fault breaks.
    pub fn name(self) -> &'static str {
        match self {
            Fault::Algebra => "algebra",
            Fault::Cr => "cr",
            Fault::Biharmonic => "biharmonic",
            Fault::Hessian => "hessian",
            Fault::Schwarz => "schwarz",
            Fault::Lame => "lame",
            Fault::Kernel => "kernel",
        }
    }
}

impl fmt::Display for Fault {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Fault {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Fault::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| {
                let names: Vec<_> = Fault::ALL.iter().map(|f| f.name()).collect();
                format!("unknown fault `{s}`, expected one of: {}", names.join(", "))
            })
    }
}

/// One line of the pass/fail table.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckResult {
    pub name: &'static str,
    pub value: f64,
    pub threshold: f64,
    /// `true` when `value` must exceed the threshold (mutation detection).
    pub lower_bound: bool,
}

impl CheckResult {
    fn at_most(name: &'static str, value: f64, threshold: f64) -> Self {
        CheckResult {
            name,
            value,
            threshold,
            lower_bound: false,
        }
    }

    pub fn passed(&self) -> bool {
        if self.lower_bound {
            self.value > self.threshold
        } else {
            self.value.is_finite() && self.value <= self.threshold
        }
    }
}

#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub seed: u64,
    pub degree: usize,
    pub fault: Option<Fault>,
    pub checks: Vec<CheckResult>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckResult::passed)
    }

    pub fn failures(&self) -> Vec<&'static str> {
        self.checks
            .iter()
            .filter(|c| !c.passed())
            .map(|c| c.name)
            .collect()
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            super::exit::OK
        } else {
            super::exit::THRESHOLD
        }
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "seed {} degree {}", self.seed, self.degree)?;
        if let Some(fault) = self.fault {
            write!(f, " fault {fault}")?;
        }
        writeln!(f)?;
        writeln!(
            f,
            "{:<14} {:>12} {:>12}  result",
            "check", "value", "threshold"
        )?;
        for c in &self.checks {
            let cmp = if c.lower_bound { ">" } else { "<=" };
            writeln!(
                f,
                "{:<14} {:>12.3e} {:>2}{:>10.1e}  {}",
                c.name,
                c.value,
                cmp,
                c.threshold,
                if c.passed() { "PASS" } else { "FAIL" }
            )?;
        }
        if self.passed() {
            write!(f, "all checks passed")
        } else {
            write!(f, "FAILED: {}", self.failures().join(", "))
        }
    }
}

/// A 𝔹-element with components uniform in `[-1, 1]`.
pub fn random_element(rng: &mut impl Rng) -> BElement {
    BElement::new(
        rng.gen_range(-1.0..=1.0),
        rng.gen_range(-1.0..=1.0),
        rng.gen_range(-1.0..=1.0),
        rng.gen_range(-1.0..=1.0),
    )
}

/// `Σ_{k≤degree} A_k ζ^k` with random coefficients `A_k`.
pub fn random_b_polynomial(rng: &mut impl Rng, degree: usize) -> MonogenicFunction {
    let coeffs: Vec<BElement> = (0..=degree).map(|_| random_element(rng)).collect();
    MonogenicFunction::from_b_polynomial(&coeffs)
}

/// Points uniform in angle and in `r ∈ [0, radius]`.
pub fn random_points(rng: &mut impl Rng, n: usize, radius: f64) -> Vec<(f64, f64)> {
    (0..n)
        .map(|_| {
            let r = rng.gen_range(0.0..=radius);
            let t = rng.gen_range(0.0..TAU);
            (r * t.cos(), r * t.sin())
        })
        .collect()
}

/// Boundary traces of `U₁` and `U₄` of `phi`, recovered by sampling.
pub fn boundary_traces(phi: &MonogenicFunction) -> (BoundaryFunction, BoundaryFunction) {
    let n = phi.degree();
    let u1 = BoundaryFunction::from_fn(n, |t| phi.components_at(t.cos(), t.sin())[0]);
    let u4 = BoundaryFunction::from_fn(n, |t| phi.components_at(t.cos(), t.sin())[3]);
    (u1, u4)
}

pub fn run(seed: u64, degree: usize, fault: Option<Fault>) -> VerifyReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let broken = |f: Fault| fault == Some(f);
    let mut checks = vec![
        algebra(&mut rng, broken(Fault::Algebra)),
        cr(&mut rng, degree, broken(Fault::Cr)),
        cr_mutation(),
        biharmonic(&mut rng, degree, broken(Fault::Biharmonic)),
        hessian_identity(&mut rng, degree, broken(Fault::Hessian)),
    ];
    checks.extend(schwarz(&mut rng, degree, broken(Fault::Schwarz)));
    checks.push(lame(&mut rng, degree, broken(Fault::Lame)));
    checks.push(kernel(&mut rng, degree, broken(Fault::Kernel)));
    VerifyReport {
        seed,
        degree,
        fault,
        checks,
    }
}

fn algebra(rng: &mut impl Rng, broken: bool) -> CheckResult {
    let e1 = BElement::E1;
    let e2 = BElement::E2;
    let mut worst = (e2 * e2 - BElement::new(1.0, 0.0, 0.0, 2.0)).norm_inf();
    let s = e1 * e1 + e2 * e2;
    worst = worst.max((s * s).norm_inf());
    worst = worst.max((BElement::RHO * BElement::RHO).norm_inf());
    for _ in 0..200 {
        let (a, b, c) = (
            random_element(rng),
            random_element(rng),
            random_element(rng),
        );
        worst = worst.max((a * b).max_abs_diff(b * a));
        worst = worst.max(((a * b) * c).max_abs_diff(a * (b * c)));
        worst = worst.max((a * (b + c)).max_abs_diff(a * b + a * c));
        if a.to_nilpotent().c.norm() < 0.1 {
            continue;
        }
        let mut inv = a.invert().expect("c is bounded away from zero");
        if broken {
            inv = inv.scale(1.0 + 1e-9);
        }
        worst = worst.max((a * inv).max_abs_diff(e1));
    }
    CheckResult::at_most("algebra", worst, 1e-12)
}

fn cr(rng: &mut impl Rng, degree: usize, broken: bool) -> CheckResult {
    let flip = broken.then_some(CrEquation::Kr3);
    let mut worst = 0.0_f64;
    for _ in 0..SAMPLES {
        let phi = random_b_polynomial(rng, degree);
        let pts = random_points(rng, POINTS, PROBE_RADIUS);
        worst = worst.max(cr_residual_mutated(&phi, &pts, flip).expect("probes are interior"));
    }
    CheckResult::at_most("cr", worst, 1e-7)
}

/// Each sign flip in the CR system must be caught on a probe where every
/// component varies.
fn cr_mutation() -> CheckResult {
    let a = BElement::new(1.0, 0.5, -0.25, 0.75);
    let b = BElement::new(-0.5, 1.0, 0.75, 0.25);
    let phi = MonogenicFunction::from_b_polynomial(&[a, b, a, b]);
    let pts = [(0.3, -0.2), (-0.1, 0.4), (0.5, 0.5)];
    let weakest = CrEquation::ALL
        .iter()
        .map(|&eq| cr_residual_mutated(&phi, &pts, Some(eq)).expect("probes are interior"))
        .fold(f64::INFINITY, f64::min);
    CheckResult {
        name: "cr_mutation",
        value: weakest,
        threshold: 1e-3,
        lower_bound: true,
    }
}

struct WithQuintic<'a>(&'a MonogenicFunction);

impl ComponentField for WithQuintic<'_> {
    fn components(&self, x: f64, y: f64) -> [f64; 4] {
        let mut u = self.0.components_at(x, y);
        u[0] += x.powi(5);
        u
    }
}

fn biharmonic(rng: &mut impl Rng, degree: usize, broken: bool) -> CheckResult {
    let mut worst = 0.0_f64;
    for _ in 0..SAMPLES {
        let phi = random_b_polynomial(rng, degree);
        let pts = random_points(rng, POINTS, PROBE_RADIUS);
        let r = if broken {
            biharmonic_residual(&WithQuintic(&phi), &pts)
        } else {
            biharmonic_residual(&phi, &pts)
        };
        worst = worst.max(r.expect("probes are interior"));
    }
    CheckResult::at_most("biharmonic", worst, 1e-5)
}

/// `W = U₁[Φ*]` has `W_xx = U₁[Φ*″]` and `W_yy = U₁[Φ*″] − 2U₄[Φ*″]`.
fn hessian_identity(rng: &mut impl Rng, degree: usize, broken: bool) -> CheckResult {
    let mut worst = 0.0_f64;
    for _ in 0..SAMPLES {
        let phi = random_b_polynomial(rng, degree);
        let second = if broken {
            phi.derivative()
        } else {
            phi.derivative().derivative()
        };
        let w = |x: f64, y: f64| [phi.components_at(x, y)[0]];
        for (x, y) in random_points(rng, POINTS, PROBE_RADIUS) {
            let h = fd::hessian(&w, x, y, fd::STEP);
            let u = second.components_at(x, y);
            worst = worst.max((h.xx[0] - u[0]).abs());
            worst = worst.max((h.yy[0] - (u[0] - 2.0 * u[3])).abs());
        }
    }
    CheckResult::at_most("hessian", worst, 1e-6)
}

/// Recovers random `Φ₀` from its `U₁`, `U₄` traces. Reports the interior
/// field error and the distance of `Φ − Φ₀` from the kernel.
fn schwarz(rng: &mut impl Rng, degree: usize, broken: bool) -> [CheckResult; 2] {
    let mut field = 0.0_f64;
    let mut kernel = 0.0_f64;
    for _ in 0..SAMPLES {
        let phi0 = random_b_polynomial(rng, degree);
        let (u1, mut u4) = boundary_traces(&phi0);
        if broken {
            u4 = u4.add(&BoundaryFunction::cos(1).scale(1e-6));
        }
        let phi = solve_14(&Problem14::new(u1, u4)).expect("degree is within the mode cap");
        for (x, y) in random_points(rng, POINTS, PROBE_RADIUS) {
            let a = phi.components_at(x, y);
            let b = phi0.components_at(x, y);
            field = field.max((a[0] - b[0]).abs()).max((a[3] - b[3]).abs());
        }
        let diff = phi.sub(&phi0);
        for series in [diff.f(), diff.g()] {
            for (k, c) in series.coeffs().iter().enumerate() {
                // Only purely imaginary constants may differ.
                let off = if k == 0 { c.re.abs() } else { c.norm() };
                kernel = kernel.max(off);
            }
        }
    }
    [
        CheckResult::at_most("schwarz", field, 1e-10),
        CheckResult::at_most("schwarz_kernel", kernel, 1e-10),
    ]
}

fn lame(rng: &mut impl Rng, degree: usize, broken: bool) -> CheckResult {
    let mut worst = 0.0_f64;
    for _ in 0..SAMPLES {
        let phi = random_b_polynomial(rng, degree);
        let pts = random_points(rng, POINTS / 2, PROBE_RADIUS);
        for (lambda, mu) in LAME_CASES {
            let l = LameConstants::new(lambda, mu).expect("valid constants");
            let pairs = if broken {
                LamePairs::with_gamma(&phi, l.gamma() + 0.5)
            } else {
                lame_pairs(&phi, &l)
            };
            for k in 0..3 {
                let field = |x: f64, y: f64| pairs.pair(k, x, y);
                let r = lame_residual(&field, l.gamma(), &pts).expect("probes are interior");
                worst = worst.max(r);
            }
        }
    }
    CheckResult::at_most("lame", worst, 1e-6)
}

/// Adding a kernel element changes neither `V₁`, `V₂` nor the stresses.
fn kernel(rng: &mut impl Rng, degree: usize, broken: bool) -> CheckResult {
    let basis = kernel_basis();
    let mut worst = 0.0_f64;
    for _ in 0..SAMPLES {
        let phi = random_b_polynomial(rng, degree);
        let (a, b) = (rng.gen_range(-1.0..=1.0), rng.gen_range(-1.0..=1.0));
        let shift = if broken {
            MonogenicFunction::constant(BElement::E1)
        } else {
            basis[0].scale(a).add(&basis[1].scale(b))
        };
        let shifted = phi.add(&shift);
        let (lambda, mu) = LAME_CASES[rng.gen_range(0..LAME_CASES.len())];
        let l = LameConstants::new(lambda, mu).expect("valid constants");
        let (g0, g1) = (gradients(&phi, &l), gradients(&shifted, &l));
        let s0 = stresses(&phi, &l, (0.0, 0.0)).expect("origin is interior");
        let s1 = stresses(&shifted, &l, (0.0, 0.0)).expect("origin is interior");
        for (x, y) in random_points(rng, POINTS, PROBE_RADIUS) {
            let (v0, v1) = (g0.at(x, y).unwrap(), g1.at(x, y).unwrap());
            let (t0, t1) = (s0.at(x, y).unwrap(), s1.at(x, y).unwrap());
            for k in 0..2 {
                worst = worst.max((v0[k] - v1[k]).abs());
            }
            for k in 0..3 {
                worst = worst.max((t0[k] - t1[k]).abs());
            }
        }
    }
    CheckResult::at_most("kernel", worst, 1e-12)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fault_names_round_trip() {
        for f in Fault::ALL {
            assert_eq!(f.name().parse::<Fault>().unwrap(), f);
        }
        assert!("nope".parse::<Fault>().is_err());
    }

    #[test]
    fn degree_zero_passes_with_exact_cr() {
        let report = run(1, 0, None);
        assert!(report.passed(), "{report}");
        let cr = report.checks.iter().find(|c| c.name == "cr").unwrap();
        assert_eq!(cr.value, 0.0);
    }

    #[test]
    fn every_fault_fails_its_own_check() {
        for f in Fault::ALL {
            let report = run(7, 3, Some(f));
            let failures = report.failures();
            assert!(!failures.is_empty(), "{report}");
            assert!(failures.iter().all(|n| n.starts_with(f.name())), "{report}");
        }
    }
}
