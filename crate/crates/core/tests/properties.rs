use num_complex::Complex64;
use proptest::prelude::*;

use biharm::monogenic::cr_residual;
use biharm::schwarz::{boundary_residual, kernel_basis};
use biharm::{
    BElement, BoundaryFunction, MonogenicFunction, NilpotentForm, Problem14, TaylorSeries,
};

fn element() -> impl Strategy<Value = BElement> {
    prop::array::uniform4(-2.0..2.0f64).prop_map(BElement::from_array)
}

fn trig(max_degree: usize) -> impl Strategy<Value = BoundaryFunction> {
    (0..=max_degree).prop_flat_map(|n| {
        (
            -1.0..1.0f64,
            prop::collection::vec(-1.0..1.0f64, n),
            prop::collection::vec(-1.0..1.0f64, n),
        )
            .prop_map(|(a0, a, b)| BoundaryFunction::new(a0, a, b))
    })
}

fn b_polynomial(max_degree: usize) -> impl Strategy<Value = MonogenicFunction> {
    prop::collection::vec(element(), 1..=max_degree + 1)
        .prop_map(|c| MonogenicFunction::from_b_polynomial(&c))
}

fn interior_point() -> impl Strategy<Value = (f64, f64)> {
    (0.0..0.9f64, 0.0..std::f64::consts::TAU).prop_map(|(r, t)| (r * t.cos(), r * t.sin()))
}

proptest! {
    #[test]
    fn multiplication_is_commutative_and_associative(a in element(), b in element(), c in element()) {
        prop_assert!((a * b).max_abs_diff(b * a) < 1e-12);
        prop_assert!(((a * b) * c).max_abs_diff(a * (b * c)) < 1e-11);
        prop_assert!((a * (b + c)).max_abs_diff(a * b + a * c) < 1e-11);
    }

    #[test]
    fn inverse_when_c_is_nonzero(a in element()) {
        let n = a.to_nilpotent();
        match a.invert() {
            Ok(inv) => {
                prop_assume!(n.c.norm() > 0.05);
                prop_assert!((a * inv).max_abs_diff(BElement::E1) < 1e-10);
            }
            Err(_) => prop_assert_eq!(n.c, Complex64::new(0.0, 0.0)),
        }
    }

    #[test]
    fn nilpotent_form_round_trips(a in element(), b in element()) {
        prop_assert!(BElement::from_nilpotent(a.to_nilpotent()).max_abs_diff(a) < 1e-15);
        let product = NilpotentForm::multiply(a.to_nilpotent(), b.to_nilpotent()).to_element();
        prop_assert!(product.max_abs_diff(a * b) < 1e-12);
    }

    #[test]
    fn samples_round_trip_through_the_dft(h in trig(12)) {
        let n = h.len();
        let back = BoundaryFunction::from_samples(&h.sample(2 * n + 1), n);
        prop_assert!(back.max_coeff_diff(&h) < 1e-13);
    }

    #[test]
    fn schwarz_solution_has_the_prescribed_real_trace(h in trig(10)) {
        let f = h.schwarz_solve();
        prop_assert!(f.coeff(0).im == 0.0);
        prop_assert!(f.boundary_re_trace().max_coeff_diff(&h) < 1e-13);
    }

    #[test]
    fn solve_14_is_linear(u1 in trig(6), u4 in trig(6), v1 in trig(6), v4 in trig(6), s in -2.0..2.0f64) {
        let p = Problem14::new(u1, u4);
        let q = Problem14::new(v1, v4);
        let phi_p = biharm::solve_14(&p).unwrap();
        let phi_q = biharm::solve_14(&q).unwrap();
        let combined = biharm::solve_14(&p.combine(1.0, &q, s)).unwrap();
        let expected = phi_p.add(&phi_q.scale(s));
        prop_assert!(combined.f().max_abs_diff(expected.f()) < 1e-12);
        prop_assert!(combined.g().max_abs_diff(expected.g()) < 1e-12);
    }

    #[test]
    fn solve_14_meets_its_boundary_data(u1 in trig(8), u4 in trig(8)) {
        let p = Problem14::new(u1, u4);
        let phi = biharm::solve_14(&p).unwrap();
        prop_assert!(boundary_residual(&phi, &p) < 1e-12);
    }

    #[test]
    fn solutions_are_monogenic(phi in b_polynomial(6), pts in prop::collection::vec(interior_point(), 4)) {
        prop_assert!(cr_residual(&phi, &pts).unwrap() < 1e-7);
    }

    #[test]
    fn kernel_leaves_u1_and_u4_alone(phi in b_polynomial(5), a in -3.0..3.0f64, b in -3.0..3.0f64, p in interior_point()) {
        let [k1, k2] = kernel_basis();
        let shifted = phi.add(&k1.scale(a)).add(&k2.scale(b));
        let u = phi.components_at(p.0, p.1);
        let v = shifted.components_at(p.0, p.1);
        prop_assert!((u[0] - v[0]).abs() < 1e-13);
        prop_assert!((u[3] - v[3]).abs() < 1e-13);
    }

    #[test]
    fn derivative_matches_series_derivative(coeffs in prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), 1..8)) {
        let f = TaylorSeries::new(coeffs.iter().map(|&(re, im)| Complex64::new(re, im)).collect());
        let phi = MonogenicFunction::new(f.clone(), TaylorSeries::zero());
        let d = phi.derivative();
        prop_assert_eq!(d.f(), &f.differentiate());
    }
}
