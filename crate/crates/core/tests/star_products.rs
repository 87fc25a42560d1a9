mod common;

use common::{bopp_star, hbar_polynomial, moment_integral, polynomial, real_polynomial, F};
use mcsusy::jc::wigner::{diagonal_wigner, vacuum_wigner};
use mcsusy::star::{integrate, poisson_bracket, Moyal, Var};
use mcsusy::{Error, Scalar};
use proptest::prelude::*;

fn config() -> ProptestConfig {
    ProptestConfig { cases: 48, ..ProptestConfig::default() }
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn series_matches_bopp_shift_formal(f in hbar_polynomial(3, 3), g in hbar_polynomial(3, 3)) {
        let m = Moyal::formal();
        prop_assert_eq!(m.star(&f, &g).unwrap(), bopp_star(&m, &f, &g));
    }

    #[test]
    fn series_matches_bopp_shift_unit(f in polynomial(3, 3), g in polynomial(3, 3)) {
        let m = Moyal::unit();
        prop_assert_eq!(m.star(&f, &g).unwrap(), bopp_star(&m, &f, &g));
    }

    #[test]
    fn associativity(f in polynomial(2, 3), g in polynomial(2, 3), h in polynomial(2, 3)) {
        let m = Moyal::formal();
        let left = m.star(&m.star(&f, &g).unwrap(), &h).unwrap();
        let right = m.star(&f, &m.star(&g, &h).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn conjugation_reverses_order(f in polynomial(3, 3), g in polynomial(3, 3)) {
        let m = Moyal::formal();
        let lhs = m.star(&f, &g).unwrap().conjugate();
        let rhs = m.star(&g.conjugate(), &f.conjugate()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn bracket_is_antisymmetric_and_real_on_reals(f in real_polynomial(2, 3), g in real_polynomial(2, 3)) {
        let m = Moyal::formal();
        let fg = m.bracket(&f, &g).unwrap();
        prop_assert_eq!(&fg, &-&m.bracket(&g, &f).unwrap());
        // The Moyal bracket of real functions is i times a real function.
        prop_assert!(fg.scale(&-Scalar::i()).is_real());
    }

    #[test]
    fn jacobi_identity(f in polynomial(2, 2), g in polynomial(2, 2), h in polynomial(2, 2)) {
        let m = Moyal::formal();
        let b = |x: &F, y: &F| m.bracket(x, y).unwrap();
        let total = &(&b(&f, &b(&g, &h)) + &b(&g, &b(&h, &f))) + &b(&h, &b(&f, &g));
        prop_assert!(total.is_zero());
    }

    #[test]
    fn bracket_leading_order_is_poisson(f in polynomial(3, 3), g in polynomial(3, 3)) {
        let m = Moyal::formal();
        let lead = m.leading_order(&m.bracket(&f, &g).unwrap()).unwrap();
        prop_assert_eq!(lead, poisson_bracket(&f, &g).unwrap());
    }

    #[test]
    fn classical_limit_is_pointwise(f in polynomial(3, 3), g in polynomial(3, 3)) {
        let m = Moyal::formal();
        let limit = m.classical_limit(&m.star(&f, &g).unwrap()).unwrap();
        prop_assert_eq!(limit, f.pointwise_mul(&g).unwrap());
    }

    #[test]
    fn integral_of_star_product_is_integral_of_product(f in polynomial(2, 2), g in polynomial(2, 2)) {
        let m = Moyal::unit();
        let w0 = vacuum_wigner();
        let fw = m.star(&f, &w0).unwrap();
        let starred = integrate(&m.star(&fw, &g).unwrap()).unwrap();
        let plain = integrate(&fw.pointwise_mul(&g).unwrap()).unwrap();
        prop_assert_eq!(starred, plain);
    }

    #[test]
    fn integration_matches_moment_table(f in polynomial(4, 4)) {
        let fw = f.pointwise_mul(&vacuum_wigner()).unwrap();
        prop_assert_eq!(integrate(&fw).unwrap(), moment_integral(&fw));
    }
}

#[test]
fn canonical_pairs() {
    let m = Moyal::formal();
    for a in Var::ALL {
        for b in Var::ALL {
            let expected = match (a, b) {
                (Var::Q1, Var::P1) | (Var::Q2, Var::P2) => F::hbar().scale(&Scalar::i()),
                (Var::P1, Var::Q1) | (Var::P2, Var::Q2) => F::hbar().scale(&-Scalar::i()),
                _ => F::zero(),
            };
            assert_eq!(m.bracket(&F::var(a), &F::var(b)).unwrap(), expected, "{a:?} {b:?}");
        }
    }
}

#[test]
fn gaussian_times_gaussian_is_rejected() {
    let m = Moyal::unit();
    let w = vacuum_wigner();
    assert_eq!(m.star(&w, &w), Err(Error::NonTerminatingStar));
    assert_eq!(Moyal::formal().star(&w, &F::q1()), Err(Error::EnvelopeInFormalMode));
}

#[test]
fn gaussian_integrals() {
    assert_eq!(integrate(&vacuum_wigner()).unwrap(), mcsusy::ExactScalar::one());
    let w = diagonal_wigner([2, 1]).unwrap();
    assert_eq!(integrate(&w).unwrap(), moment_integral(&w));
    assert_eq!(integrate(&F::q1()), Err(Error::DivergentIntegral));
}
