//! Structural invariants checked on random inputs.

use num_complex::Complex;
use proptest::prelude::*;
use vexlp::exponent::{ExponentForm, IntervalUnion};
use vexlp::modular::{luxemburg_norm, modular};
use vexlp::psi::{psi, u_kernel};
use vexlp::{CatalogFunctionF64 as C, ExponentFunctionF64 as E, Kernel, KernelFamily};

const TOL: f64 = 1e-10;

fn split(left: f64, right: f64) -> E {
    E::split(0.0, ExponentForm::Constant(left), ExponentForm::Constant(right)).unwrap()
}

fn family() -> impl Strategy<Value = KernelFamily> {
    prop_oneof![
        Just(KernelFamily::CesaroFejer),
        Just(KernelFamily::AbelPoisson),
        Just(KernelFamily::GaussWeierstrass),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn u_kernel_is_bounded(s in -1e3f64..1e3, t in -1e3f64..1e3) {
        let u = u_kernel(s, t).norm();
        prop_assert!(u <= s.abs() * (1.0 + 1e-12) + 1e-300);
        if t != 0.0 {
            prop_assert!(u <= 2.0 / t.abs() * (1.0 + 1e-12));
        }
    }

    #[test]
    fn norm_is_homogeneous(c in 0.1f64..10.0, a in 0.3f64..3.0, l in 1.1f64..4.0, r in 1.1f64..4.0) {
        let p = split(l, r);
        let f = C::gaussian(a, 0.3, 0.0).unwrap();
        let n1 = luxemburg_norm(&f, &p, 1e-9).unwrap().value;
        let nc = luxemburg_norm(&f.scale_real(c), &p, 1e-9).unwrap().value;
        prop_assert!((nc - c * n1).abs() <= 1e-7 * c * n1);
    }

    #[test]
    fn norm_is_monotone(a in 0.3f64..3.0, da in 0.01f64..2.0, l in 1.0f64..4.0, r in 1.0f64..4.0) {
        // e^{-(a+da)x²} <= e^{-ax²} pointwise.
        let p = split(l, r);
        let big = luxemburg_norm(&C::gaussian(a, 0.0, 0.0).unwrap(), &p, 1e-9).unwrap().value;
        let small = luxemburg_norm(&C::gaussian(a + da, 0.0, 0.0).unwrap(), &p, 1e-9).unwrap().value;
        prop_assert!(small <= big * (1.0 + 1e-7));
    }

    #[test]
    fn modular_decreases_in_lambda(l1 in 0.2f64..5.0, dl in 0.01f64..5.0, r in 1.0f64..4.0) {
        let p = split(1.5, r);
        let f = C::hat(-1.0, 2.0).unwrap();
        let line = IntervalUnion::line();
        let m1 = modular(&f, &p, &line, l1, TOL).unwrap().total;
        let m2 = modular(&f, &p, &line, l1 + dl, TOL).unwrap().total;
        prop_assert!(m2 <= m1 + 1e-9);
    }

    #[test]
    fn psi_is_lipschitz(a in 0.2f64..3.0, s in -50.0f64..50.0, h in -5.0f64..5.0) {
        // d/ds u_s(t) = e^{-ist}, so |Ψ(s) - Ψ(s')| <= |s - s'| ‖f‖₁.
        let f = C::gaussian(a, 0.0, 0.0).unwrap();
        let l1 = (std::f64::consts::PI / a).sqrt();
        let d = (psi(&f, s + h, TOL).unwrap().value - psi(&f, s, TOL).unwrap().value).norm();
        prop_assert!(d <= h.abs() * l1 + 1e-8);
        prop_assert!(psi(&f, 0.0, TOL).unwrap().value.norm() == 0.0);
    }

    #[test]
    fn psi_is_linear(c in -3.0f64..3.0, s in -20.0f64..20.0, shift in -2.0f64..2.0) {
        let f = C::gaussian(1.0, shift, 0.0).unwrap();
        let g = C::indicator(-1.0, 0.5).unwrap();
        let combo = f.scale(Complex::new(c, 0.5)).add(&g);
        let lhs = psi(&combo, s, TOL).unwrap().value;
        let rhs = psi(&f, s, TOL).unwrap().value * Complex::new(c, 0.5) + psi(&g, s, TOL).unwrap().value;
        prop_assert!((lhs - rhs).norm() <= 1e-8);
    }

    #[test]
    fn kernels_have_unit_mass(fam in family(), a in 0.02f64..5.0) {
        let k = Kernel::new(fam, a).unwrap();
        prop_assert!((k.mass(1e-12).unwrap() - 1.0).abs() <= 1e-10);
    }

    #[test]
    fn exponent_stays_within_bounds(l in 1.0f64..6.0, r in 1.0f64..6.0, x in -100.0f64..100.0) {
        let p = split(l, r);
        let v = p.eval(x);
        prop_assert!(p.p_minus() <= v && v <= p.p_plus());
        prop_assert!((p.conjugate().inv(x) + p.inv(x) - 1.0).abs() < 1e-12);
    }
}
