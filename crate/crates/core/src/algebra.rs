//! Arithmetic in the biharmonic algebra 𝔹.
//!
//! 𝔹 is the two-dimensional commutative algebra over ℂ with basis `{e₁, e₂}`
//! and multiplication table `e₁ = 1`, `e₂² = e₁ + 2i·e₂`. As a real vector
//! space it is four-dimensional; elements are stored in the real basis
//! `{e₁, i·e₁, e₂, i·e₂}`.
//!
//! The element `ρ = e₁ + i·e₂` squares to zero, so every element can be
//! written uniquely as `c + d·ρ` with complex `c`, `d` (see [`NilpotentForm`]).
//! An element is invertible exactly when `c ≠ 0`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// An element `u1·e₁ + u2·i·e₁ + u3·e₂ + u4·i·e₂` of 𝔹.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct BElement {
    pub u1: f64,
    pub u2: f64,
    pub u3: f64,
    pub u4: f64,
}

/// The decomposition `c·e₁ + d·ρ` with `ρ = e₁ + i·e₂`, `ρ² = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct NilpotentForm {
    pub c: Complex64,
    pub d: Complex64,
}

impl BElement {
    pub const ZERO: BElement = BElement::new(0.0, 0.0, 0.0, 0.0);
    /// The unit `e₁`.
    pub const E1: BElement = BElement::new(1.0, 0.0, 0.0, 0.0);
    /// `i·e₁`.
    pub const I_E1: BElement = BElement::new(0.0, 1.0, 0.0, 0.0);
    pub const E2: BElement = BElement::new(0.0, 0.0, 1.0, 0.0);
    /// `i·e₂`.
    pub const I_E2: BElement = BElement::new(0.0, 0.0, 0.0, 1.0);
    /// The nilpotent `ρ = e₁ + i·e₂`.
    pub const RHO: BElement = BElement::new(1.0, 0.0, 0.0, 1.0);

    pub const fn new(u1: f64, u2: f64, u3: f64, u4: f64) -> Self {
        BElement { u1, u2, u3, u4 }
    }

    pub fn from_array(u: [f64; 4]) -> Self {
        BElement::new(u[0], u[1], u[2], u[3])
    }

    pub fn to_array(self) -> [f64; 4] {
        [self.u1, self.u2, self.u3, self.u4]
    }

    /// The point `ζ = x·e₁ + y·e₂` of the biharmonic plane.
    pub fn embed_point(x: f64, y: f64) -> Self {
        BElement::new(x, 0.0, y, 0.0)
    }

    /// Real scalar multiple.
    pub fn scale(self, s: f64) -> Self {
        BElement::new(self.u1 * s, self.u2 * s, self.u3 * s, self.u4 * s)
    }

    /// Coefficients `(A, B)` of `A·e₁ + B·e₂` over ℂ.
    fn complex_pair(self) -> (Complex64, Complex64) {
        (
            Complex64::new(self.u1, self.u2),
            Complex64::new(self.u3, self.u4),
        )
    }

    fn from_complex_pair(a: Complex64, b: Complex64) -> Self {
        BElement::new(a.re, a.im, b.re, b.im)
    }

    /// Product under the table `e₁ = 1`, `e₂² = e₁ + 2i·e₂`.
    pub fn multiply(self, other: BElement) -> BElement {
        let (a1, b1) = self.complex_pair();
        let (a2, b2) = other.complex_pair();
        let bb = b1 * b2;
        // (a1 + b1 e2)(a2 + b2 e2) = a1 a2 + (a1 b2 + a2 b1) e2 + b1 b2 (e1 + 2i e2)
        let a = a1 * a2 + bb;
        let b = a1 * b2 + a2 * b1 + Complex64::new(0.0, 2.0) * bb;
        BElement::from_complex_pair(a, b)
    }

    /// `aⁿ` by repeated multiplication; `a⁰ = e₁`.
    pub fn power(self, n: u32) -> BElement {
        (0..n).fold(BElement::E1, |acc, _| acc.multiply(self))
    }

    pub fn to_nilpotent(self) -> NilpotentForm {
        NilpotentForm {
            c: Complex64::new(self.u1 - self.u4, self.u2 + self.u3),
            d: Complex64::new(self.u4, -self.u3),
        }
    }

    pub fn from_nilpotent(n: NilpotentForm) -> BElement {
        n.to_element()
    }

    /// Multiplicative inverse, `(c + dρ)⁻¹ = c⁻¹ − d·c⁻²·ρ`.
    ///
    /// Zero divisors (exactly `c = 0`) are rejected; no tolerance is applied.
    pub fn invert(self) -> Result<BElement> {
        let n = self.to_nilpotent();
        if n.c.re == 0.0 && n.c.im == 0.0 {
            return Err(Error::ZeroDivisor);
        }
        let inv_c = n.c.inv();
        Ok(NilpotentForm {
            c: inv_c,
            d: -n.d * inv_c * inv_c,
        }
        .to_element())
    }

    /// True when the element has no inverse.
    pub fn is_zero_divisor(self) -> bool {
        let c = self.to_nilpotent().c;
        c.re == 0.0 && c.im == 0.0
    }

    pub fn max_abs_diff(self, other: BElement) -> f64 {
        let d = self - other;
        d.to_array().iter().fold(0.0_f64, |m, v| m.max(v.abs()))
    }

    pub fn norm_inf(self) -> f64 {
        self.to_array().iter().fold(0.0_f64, |m, v| m.max(v.abs()))
    }
}

impl NilpotentForm {
    pub fn new(c: Complex64, d: Complex64) -> Self {
        NilpotentForm { c, d }
    }

    /// Inverse of the change of basis: `u1 + i·u2 = c + d`, `u3 + i·u4 = i·d`.
    pub fn to_element(self) -> BElement {
        let s = self.c + self.d;
        BElement::new(s.re, s.im, -self.d.im, self.d.re)
    }

    pub fn multiply(self, other: NilpotentForm) -> NilpotentForm {
        NilpotentForm {
            c: self.c * other.c,
            d: self.c * other.d + self.d * other.c,
        }
    }
}

impl From<NilpotentForm> for BElement {
    fn from(n: NilpotentForm) -> Self {
        n.to_element()
    }
}

impl From<BElement> for NilpotentForm {
    fn from(a: BElement) -> Self {
        a.to_nilpotent()
    }
}

impl Add for BElement {
    type Output = BElement;
    fn add(self, o: BElement) -> BElement {
        BElement::new(
            self.u1 + o.u1,
            self.u2 + o.u2,
            self.u3 + o.u3,
            self.u4 + o.u4,
        )
    }
}

impl Sub for BElement {
    type Output = BElement;
    fn sub(self, o: BElement) -> BElement {
        BElement::new(
            self.u1 - o.u1,
            self.u2 - o.u2,
            self.u3 - o.u3,
            self.u4 - o.u4,
        )
    }
}

impl Neg for BElement {
    type Output = BElement;
    fn neg(self) -> BElement {
        self.scale(-1.0)
    }
}

impl Mul for BElement {
    type Output = BElement;
    fn mul(self, o: BElement) -> BElement {
        self.multiply(o)
    }
}

impl fmt::Display for BElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}·e1 + {}·ie1 + {}·e2 + {}·ie2",
            self.u1, self.u2, self.u3, self.u4
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn e2_squared_follows_table() {
        assert_eq!(
            BElement::E2 * BElement::E2,
            BElement::new(1.0, 0.0, 0.0, 2.0)
        );
    }

    #[test]
    fn unit_is_neutral() {
        let a = BElement::new(0.3, -1.2, 4.0, 0.5);
        assert_eq!(BElement::E1 * a, a);
        assert_eq!(a * BElement::E1, a);
    }

    #[test]
    fn rho_is_nilpotent() {
        assert_eq!(BElement::RHO * BElement::RHO, BElement::ZERO);
        assert_eq!(BElement::RHO.power(2), BElement::ZERO);
    }

    #[test]
    fn biharmonic_basis_condition() {
        let s = BElement::E1 * BElement::E1 + BElement::E2 * BElement::E2;
        assert_ne!(s, BElement::ZERO);
        assert_eq!(s * s, BElement::ZERO);
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(BElement::E1.invert().unwrap(), BElement::E1);
        let inv = BElement::E2.invert().unwrap();
        assert!(inv.max_abs_diff(BElement::new(0.0, -2.0, 1.0, 0.0)) < 1e-15);
        assert!((BElement::E2 * inv).max_abs_diff(BElement::E1) < 1e-15);
        assert_eq!(BElement::RHO.invert(), Err(Error::ZeroDivisor));
        assert_eq!(BElement::ZERO.invert(), Err(Error::ZeroDivisor));
    }

    #[test]
    fn nilpotent_examples() {
        assert_eq!(
            BElement::E2.to_nilpotent(),
            NilpotentForm::new(c(0.0, 1.0), c(0.0, -1.0))
        );
        assert_eq!(
            BElement::E1.to_nilpotent(),
            NilpotentForm::new(c(1.0, 0.0), c(0.0, 0.0))
        );
        assert_eq!(
            BElement::new(2.0, 0.0, 2.0, 2.0).to_nilpotent(),
            NilpotentForm::new(c(0.0, 2.0), c(2.0, -2.0))
        );
        assert_eq!(
            BElement::embed_point(0.0, 1.0).to_nilpotent(),
            NilpotentForm::new(c(0.0, 1.0), c(0.0, -1.0))
        );
    }

    #[test]
    fn embed_and_power() {
        assert_eq!(
            BElement::embed_point(1.0, 1.0),
            BElement::new(1.0, 0.0, 1.0, 0.0)
        );
        assert_eq!(BElement::embed_point(0.0, 0.0), BElement::ZERO);
        assert_eq!(
            BElement::embed_point(1.0, 1.0).power(2),
            BElement::new(2.0, 0.0, 2.0, 2.0)
        );
        let a = BElement::new(0.1, 0.2, 0.3, 0.4);
        assert_eq!(a.power(1), a);
        assert_eq!(a.power(0), BElement::E1);
    }

    #[test]
    fn nilpotent_product_matches_table() {
        let a = BElement::new(0.7, -0.1, 1.3, 0.25);
        let b = BElement::new(-2.0, 0.5, 0.125, 1.5);
        let via_table = a * b;
        let via_nil = a.to_nilpotent().multiply(b.to_nilpotent()).to_element();
        assert!(via_table.max_abs_diff(via_nil) < 1e-14);
    }

    #[test]
    fn zero_divisor_family_annihilates() {
        // d1·ρ times d2·ρ is always zero, and the c-part of each factor is zero.
        for k in 0..20 {
            let t = k as f64 * 0.37;
            let d1 = c(t.cos(), t.sin() * 2.0);
            let d2 = c(1.0 - t, 0.5 * t);
            let a = NilpotentForm::new(c(0.0, 0.0), d1).to_element();
            let b = NilpotentForm::new(c(0.0, 0.0), d2).to_element();
            assert!((a * b).norm_inf() < 1e-15);
            assert!(a.is_zero_divisor() && b.is_zero_divisor());
        }
    }
}
