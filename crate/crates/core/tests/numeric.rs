mod common;

use common::arb_expr;
use proptest::prelude::*;
use smkdv::hierarchy::published_eom;
use smkdv::numeric::*;
use smkdv::*;

fn asg(seed: u64) -> EvalAssignment<f64> {
    EvalAssignment::random(seed, DEFAULT_GENERATORS)
}

#[test]
fn anticommuting_jets_cancel() {
    let mut a = asg(1);
    let (p, p1) = (a.value(Atom::jet(Field::Psb, 0)).unwrap(), a.value(Atom::jet(Field::Psb, 1)).unwrap());
    assert!((&(&p * &p1) + &(&p1 * &p)).max_abs() < 1e-12);
    assert!((&p * &p).max_abs() < 1e-12);
    assert!(a.eval(&ex("psb*psb_1")).unwrap().max_abs() > 1e-3);
}

#[test]
fn too_many_odd_factors() {
    let e = ex("psb*psb_1*psb_2*psb_3*psb_4*psb_5*psb_6");
    assert!(matches!(
        grassmann_eval(&e, &mut asg(0)),
        Err(NumericError::GeneratorExhaustion { degree: 7, generators: 6 })
    ));
}

fn zero_curvature_entry(flow: Flow, r: usize, c: usize) -> Expr {
    let (ax, at) = (build_ax(), build_at(flow));
    let m = &(&at.d_dx() - &ax.d_dt(flow).unwrap()) + &ax.commutator(&at);
    m.e[r][c].clone()
}

#[test]
fn zero_curvature_entry_vanishes_on_shell() {
    let e = zero_curvature_entry(Flow::T3, 1, 1);
    assert!(e.contains_atom(|a| a.dt.is_some()));
    let eom = published_eom(Flow::T3).unwrap();
    for seed in 0..10 {
        let mut a = asg(seed).with_injection(&eom);
        assert!(a.eval(&e).unwrap().max_abs() < 1e-10, "seed {seed}");
    }
    let top = e.terms().next().map(|(m, c)| Expr::term(c.clone(), m.clone())).unwrap();
    let mutated = &e - &top.scale_int(2);
    let mut a = asg(3).with_injection(&eom);
    assert!(a.eval(&mutated).unwrap().max_abs() > 1e-3);
}

#[test]
fn off_shell_values_break_the_identity() {
    let e = zero_curvature_entry(Flow::T3, 1, 1);
    assert!(asg(5).eval(&e).unwrap().max_abs() > 1e-3);
}

#[test]
fn single_precision_evaluation() {
    let e = ex("exp(phi)*psb*psb_1 + 3/w^2*phi_1^2");
    let mut a32 = EvalAssignment::<f32>::random(9, 4);
    let mut a64 = EvalAssignment::<f64>::random(9, 4);
    let (v32, v64) = (a32.eval(&e).unwrap(), a64.eval(&e).unwrap());
    for mask in 0..16 {
        assert!((f64::from(v32.component(mask).re) - v64.component(mask).re).abs() < 1e-4);
    }
}

#[test]
fn exponential_and_inverse_of_nilpotent_parts() {
    let mut a = asg(2);
    let x = a.eval(&ex("phi + psb*psb_1")).unwrap();
    let direct = a.eval(&ex("exp(phi)*(1 + psb*psb_1)")).unwrap();
    assert!((&x.exp() - &direct).max_abs() < 1e-12);
    let one = &x * &x.inverse().unwrap();
    assert!((&one - &ExteriorValue::real(6, 1.0)).max_abs() < 1e-12);
    assert!(matches!(a.eval(&ex("psb*psb_1")).unwrap().inverse(), Err(NumericError::Singular)));
}

#[test]
fn small_campaign() {
    let report = run_oracle(11, 10).unwrap();
    assert_eq!(report.certified.len(), 13);
    assert_eq!(report.mutated.len(), 20);
    assert!(report.certified_pass(), "{:?}", report.certified);
    assert!(report.mutations_pass(9), "{:?}", report.mutated);
}

fn grid() -> Grid {
    Grid { start: -20.0, end: 0.0, points: 2048 }
}

#[test]
fn soliton_satisfies_the_transformation() {
    let r = soliton_bt_residual(1.0, grid(), &[-0.5, -0.25, 0.0]).unwrap();
    assert!(r.spatial < 1e-6 && r.temporal < 1e-6, "{r:?}");
}

#[test]
fn vacuum_has_zero_residual() {
    let r = bt_residual_for(|_, _| 0.0, 1.0, grid(), &[0.0]).unwrap();
    assert_eq!(r, BtResidual { spatial: 0.0, temporal: 0.0 });
}

#[test]
fn coarse_grid_is_rejected() {
    let g = Grid { start: -20.0, end: 0.0, points: 128 };
    assert!(matches!(soliton_bt_residual(1.0, g, &[0.0]), Err(NumericError::GridTooCoarse(_))));
}

#[test]
fn wrong_soliton_fails() {
    let s = Soliton { omega: 1.1 };
    let r = bt_residual_for(|x, t| s.value(x, t), 1.0, grid(), &[0.0]).unwrap();
    assert!(r.spatial > 1e-3);
}

#[test]
fn momentum_drift_is_small() {
    let d = momentum_drift(|x| 1.0 / x.cosh(), 40.0, 256, 1e-3, 1000);
    assert!((d.initial - 2.0).abs() < 1e-10);
    assert!(d.max_relative < 1e-6, "{d:?}");
}

#[test]
fn stencils_converge_at_nominal_order() {
    for (order, half) in [(1, 2), (1, 3), (2, 2), (3, 3)] {
        let exact = [0.3f64.cos(), -0.3f64.sin(), -0.3f64.cos()][order - 1];
        let p = observed_order(order, half, f64::sin, exact, 0.3, 0.1);
        let nominal = Stencil::central(order, half, 0.1).accuracy() as f64;
        assert!((p - nominal).abs() < 0.5, "order {order} half {half}: {p} vs {nominal}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn evaluation_is_a_ring_homomorphism(a in arb_expr(), b in arb_expr(), seed in 0u64..1000) {
        let mut asg = EvalAssignment::<f64>::random(seed, DEFAULT_GENERATORS);
        let (va, vb) = (asg.eval(&a).unwrap(), asg.eval(&b).unwrap());
        let prod = asg.eval(&(&a * &b)).unwrap();
        let sum = asg.eval(&(&a + &b)).unwrap();
        let scale = 1.0 + va.max_abs() * vb.max_abs();
        prop_assert!((&prod - &(&va * &vb)).max_abs() < 1e-9 * scale);
        prop_assert!((&sum - &(&va + &vb)).max_abs() < 1e-9 * (1.0 + va.max_abs() + vb.max_abs()));
    }

    #[test]
    fn odd_elements_square_to_zero(seed in 0u64..1000, k in 0u8..5) {
        let mut asg = EvalAssignment::<f64>::random(seed, DEFAULT_GENERATORS);
        let v = asg.value(Atom::jet(Field::PsbP, k)).unwrap();
        prop_assert!((&v * &v).max_abs() < 1e-12);
    }
}
