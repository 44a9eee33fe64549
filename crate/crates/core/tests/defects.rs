use std::sync::OnceLock;

use proptest::prelude::*;
use smkdv::backlund::{derive_bt, BtSystem};
use smkdv::charges::Charge;
use smkdv::defects::*;
use smkdv::*;

fn bt(flow: Flow) -> &'static BtSystem {
    static T1: OnceLock<BtSystem> = OnceLock::new();
    static T3: OnceLock<BtSystem> = OnceLock::new();
    static T5: OnceLock<BtSystem> = OnceLock::new();
    let cell = match flow {
        Flow::T1 => &T1,
        Flow::T3 => &T3,
        Flow::T5 => &T5,
        other => panic!("no transformation for {other}"),
    };
    cell.get_or_init(|| derive_bt(flow).unwrap())
}

fn expansion(set: u8) -> &'static DefectGenerating {
    static S1: OnceLock<DefectGenerating> = OnceLock::new();
    static S2: OnceLock<DefectGenerating> = OnceLock::new();
    let cell = if set == 1 { &S1 } else { &S2 };
    cell.get_or_init(|| defect_expansion(set, 3).unwrap())
}

#[test]
fn first_set_coefficients() {
    for (n, src) in D1 {
        assert_eq!(expansion(1).coeff(n), Some(&ex(src)), "order {n}");
    }
}

#[test]
fn second_set_coefficients() {
    for (n, src) in D2 {
        assert_eq!(expansion(2).coeff(n), Some(&ex(src)), "order {n}");
    }
}

#[test]
fn printed_second_set_order_two_differs() {
    let d = expansion(2).coeff(2).unwrap();
    let diff = d - &ex(D2_ORDER2_PRINTED);
    let expected = ex("i/w*(exp(-(phi1+phi2)/2) - exp((phi1+phi2)/2))*(psb1*phi1_1 - psb1_1)*f1 \
         + 4/w^2*exp(-(phi1+phi2))*phi1_1");
    assert_eq!(diff, expected);
}

#[test]
fn shallow_expansion_is_a_prefix() {
    for set in [1u8, 2] {
        let short = defect_expansion(set, 1).unwrap();
        assert_eq!(short.coeffs.len(), 1);
        assert_eq!(short.coeff(1), expansion(set).coeff(1));
        assert!(defect_expansion(set, 0).unwrap().coeffs.is_empty());
    }
}

#[test]
fn coefficients_are_even() {
    for set in [1u8, 2] {
        for c in &expansion(set).coeffs {
            assert_eq!(c.parity(), Some(Parity::Even));
        }
    }
}

#[test]
fn momentum_defect_term() {
    let pd = defect_term(Charge::Momentum, &bt(Flow::T1).spatial).unwrap();
    assert_eq!(pd, ex(MOMENTUM_DEFECT));
}

#[test]
fn energy_defect_term() {
    let ed = defect_term(Charge::Energy, &bt(Flow::T1).spatial).unwrap();
    assert_eq!(ed, ex(ENERGY_DEFECT));
}

#[test]
fn defect_decouples_at_large_parameter() {
    for charge in [Charge::Momentum, Charge::Energy] {
        let d = defect_term(charge, &bt(Flow::T1).spatial).unwrap();
        assert!(d.terms().all(|(m, _)| m.omega_power() < 0), "{charge}");
    }
    for set in [1u8, 2] {
        for c in &expansion(set).coeffs {
            assert!(c.terms().all(|(m, _)| m.omega_power() < 0));
        }
    }
}

#[test]
fn modified_momentum_is_conserved() {
    for flow in [Flow::T3, Flow::T5] {
        let r = modified_charge_residual_with(Charge::Momentum, bt(flow), &ex(MOMENTUM_DEFECT)).unwrap();
        assert!(r.is_zero(), "{flow}: {r}");
    }
}

#[test]
fn modified_energy_is_conserved() {
    for flow in [Flow::T3, Flow::T5] {
        let r = modified_charge_residual_with(Charge::Energy, bt(flow), &ex(ENERGY_DEFECT)).unwrap();
        assert!(r.is_zero(), "{flow}: {r}");
    }
}

#[test]
fn generating_function_gives_the_conserving_terms() {
    for (charge, flow) in [(Charge::Momentum, Flow::T3), (Charge::Energy, Flow::T3), (Charge::Momentum, Flow::T5)] {
        assert!(modified_charge_residual(charge, flow).unwrap().is_zero(), "{charge} {flow}");
    }
}

#[test]
fn bare_charges_are_not_conserved() {
    for charge in [Charge::Momentum, Charge::Energy] {
        assert!(!boundary_rate(charge, bt(Flow::T3)).unwrap().is_zero(), "{charge}");
    }
}

#[test]
fn generated_charges_have_no_defect_term() {
    let c = Charge::Generated { set: 1, order: 1 };
    assert!(matches!(defect_term_left(c), Err(DefectError::UnsupportedCharge(_))));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn perturbed_momentum_defect_fails(a in -3i64..=3, b in -3i64..=3) {
        prop_assume!(a != 0 || b != 0);
        let shift = ex(&format!("({a})/w^2*cosh(phip) + ({b})*i/w*cosh(phip/2)*f1*psbp"));
        let d = &ex(MOMENTUM_DEFECT) + &shift;
        let r = modified_charge_residual_with(Charge::Momentum, bt(Flow::T3), &d).unwrap();
        prop_assert!(!r.is_zero());
    }

    #[test]
    fn constant_shift_of_defect_is_harmless(c in -5i64..=5) {
        let d = &ex(MOMENTUM_DEFECT) + &ex(&format!("({c})/w^3"));
        let r = modified_charge_residual_with(Charge::Momentum, bt(Flow::T3), &d).unwrap();
        prop_assert!(r.is_zero());
    }
}
