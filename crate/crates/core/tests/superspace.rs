mod common;

use common::{arb_expr, arb_homogeneous};
use proptest::prelude::*;
use smkdv::expr::Parity;
use smkdv::{ex, sx, SuperExpr};

fn arb_super() -> impl Strategy<Value = SuperExpr> {
    (arb_expr(), arb_expr()).prop_map(|(b, s)| SuperExpr::new(b, s))
}

fn arb_homogeneous_super() -> impl Strategy<Value = (bool, SuperExpr)> {
    any::<bool>().prop_flat_map(|odd| {
        (arb_homogeneous(odd), arb_homogeneous(!odd)).prop_map(move |(b, s)| (odd, SuperExpr::new(b, s)))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn d_squared_is_d_dx(e in arb_super()) {
        prop_assert_eq!(e.d().d(), e.d_dx());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn d_is_an_odd_derivation((a_odd, a) in arb_homogeneous_super(), (_, b) in arb_homogeneous_super()) {
        let first = &a.d() * &b;
        let second = &a * &b.d();
        let rhs = if a_odd { &first - &second } else { &first + &second };
        prop_assert_eq!((&a * &b).d(), rhs);
    }

    #[test]
    fn components_round_trip(b in arb_expr(), s in arb_expr()) {
        prop_assert_eq!(SuperExpr::new(b.clone(), s.clone()).to_components(), (b.clone(), s));
        prop_assert_eq!(SuperExpr::lift(b.clone()).to_components(), (b, ex("0")));
    }

    #[test]
    fn product_is_associative(a in arb_super(), b in arb_super(), c in arb_super()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    }
}

#[test]
fn derivative_of_bosonic_superfield_is_minus_psi() {
    let phi = sx("Phi");
    assert_eq!(phi.d(), SuperExpr::new(ex("-si*psb"), ex("phi_1")));
    assert_eq!(phi.d(), -&sx("Psi"));
    assert_eq!(phi.d().d(), sx("dx(Phi, 1)"));
    assert_eq!(sx("D(theta, 1)"), SuperExpr::one());
    assert_eq!(sx("Phi").parity(), Some(Parity::Even));
}

#[test]
fn fermionic_superfield_squares_to_zero_body() {
    let s = sx("Sigma");
    let sq = &s * &s;
    assert!(sq.body.is_zero());
    assert!(sq.is_zero());
    assert_eq!(&sx("Phi") * &SuperExpr::one(), sx("Phi"));
}

#[test]
fn product_of_derivative_and_sigma_in_components() {
    // (DΦ₊)Σ with DΦ₊ = -√i ψ̄₊ + θφ₊' and Σ = -f₁/√i + θ b₁
    let prod = sx("D(Phip, 1)*Sigma");
    assert_eq!(prod.body, ex("psbp*f1"));
    assert_eq!(prod.soul, ex("si*psbp*b1 - phip_1*f1/si"));
}

#[test]
fn zero_identity_has_zero_components() {
    let (b, s) = (&sx("D(Phi, 2)") - &sx("dx(Phi, 1)")).to_components();
    assert!(b.is_zero() && s.is_zero());
}
