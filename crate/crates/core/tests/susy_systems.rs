mod common;

use common::{polynomial, valid_system, F};
use mcsusy::clifford::CliffordElement;
use mcsusy::mc::McMatrix;
use mcsusy::star::Moyal;
use mcsusy::susy::{check_conditions, SusyInputs, SusySystem};
use mcsusy::{Error, Scalar};
use proptest::prelude::*;

fn matrix2() -> impl Strategy<Value = McMatrix> {
    prop::array::uniform4(polynomial(2, 2)).prop_map(|[a, b, c, d]| McMatrix::two_by_two(a, b, c, d))
}

fn matrix4() -> impl Strategy<Value = McMatrix> {
    prop::collection::vec(prop::option::weighted(0.3, polynomial(1, 2)), 16).prop_map(|cells| {
        let rows = cells.chunks(4).map(|r| r.iter().map(|c| c.clone().unwrap_or_else(F::zero)).collect()).collect();
        McMatrix::from_rows(rows).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, ..ProptestConfig::default() })]

    #[test]
    fn mc_product_is_associative(x in matrix2(), y in matrix2(), z in matrix2()) {
        let m = Moyal::formal();
        let left = m.mc_mul(&m.mc_mul(&x, &y).unwrap(), &z).unwrap();
        let right = m.mc_mul(&x, &m.mc_mul(&y, &z).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn dagger_reverses_products(x in matrix2(), y in matrix2()) {
        let m = Moyal::formal();
        prop_assert_eq!(m.mc_mul(&x, &y).unwrap().dagger(), m.mc_mul(&y.dagger(), &x.dagger()).unwrap());
    }

    #[test]
    fn blade_and_matrix_forms_agree(x in matrix4(), y in matrix4()) {
        let m = Moyal::unit();
        let bx: CliffordElement<F> = x.to_clifford().unwrap();
        let by = y.to_clifford().unwrap();
        prop_assert_eq!(McMatrix::from_clifford(&bx).unwrap(), x.clone());
        let blade_product = McMatrix::from_clifford(&m.mc_mul_blades(&bx, &by).unwrap()).unwrap();
        prop_assert_eq!(blade_product, m.mc_mul(&x, &y).unwrap());
    }

    #[test]
    fn random_valid_systems_close(inputs in valid_system()) {
        let m = Moyal::formal();
        prop_assert!(check_conditions(&m, &inputs).unwrap().all_pass());
        let s = SusySystem::new(m, inputs).unwrap();
        let report = s.full_report().unwrap();
        prop_assert!(report.all_pass(), "{}", report.to_json());
        prop_assert!(s.verify_classical_limits().unwrap().all_pass());
    }

    #[test]
    fn random_valid_systems_close_at_unit_hbar(inputs in valid_system()) {
        let s = SusySystem::new(Moyal::unit(), inputs).unwrap();
        prop_assert!(s.full_report().unwrap().all_pass());
        prop_assert!(s.verify_jc_decomposition().unwrap().all_pass());
    }
}

#[test]
fn perturbed_inputs_fail_the_gate() {
    let m = Moyal::formal();
    let inputs = SusyInputs::new(F::q1(), F::p1(), F::zero(), F::zero());
    let r = check_conditions(&m, &inputs).unwrap();
    let eq17 = r.get("eq17").unwrap();
    assert!(!eq17.pass);
    assert_eq!(eq17.residual, F::hbar().scale(&Scalar::i()).to_string());
    assert!(matches!(SusySystem::new(m, inputs), Err(Error::ConditionViolated(_))));
}

#[test]
fn complex_inputs_are_rejected() {
    let inputs = SusyInputs::new(F::q1().scale(&Scalar::i()), F::zero(), F::zero(), F::zero());
    assert_eq!(SusySystem::new(Moyal::formal(), inputs).err(), Some(Error::NotRealValued("W1")));
}

#[test]
fn empty_system_is_degenerate_but_valid() {
    let s = SusySystem::new(Moyal::formal(), SusyInputs::zero()).unwrap();
    assert!(s.full_report().unwrap().all_pass());
    assert!(s.h_s.is_zero());
}
