mod common;

use common::{arb_expr, arb_homogeneous, arb_scalar};
use proptest::prelude::*;
use smkdv::superalgebra::homogeneous_grade2;
use smkdv::{ex, Expr, GenKind, Generator, Scalar, SuperMatrix};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn scalar_field_axioms(a in arb_scalar(), b in arb_scalar(), c in arb_scalar()) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a + &b) - &b, a.clone());
        if !a.is_zero() {
            prop_assert!((&a * &a.inverse().unwrap()).is_one());
        }
    }

    #[test]
    fn product_is_associative(a in arb_expr(), b in arb_expr(), c in arb_expr()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    }

    #[test]
    fn graded_commutativity(
        a_odd in any::<bool>(), b_odd in any::<bool>(),
        seed in (arb_homogeneous(false), arb_homogeneous(true), arb_homogeneous(false), arb_homogeneous(true)),
    ) {
        let (ae, ao, be, bo) = seed;
        let a = if a_odd { ao } else { ae };
        let b = if b_odd { bo } else { be };
        let ba = &b * &a;
        let expected = if a_odd && b_odd { -&ba } else { ba };
        prop_assert_eq!(&a * &b, expected);
    }

    #[test]
    fn d_dx_is_a_derivation(a in arb_expr(), b in arb_expr()) {
        let lhs = (&a * &b).d_dx();
        let rhs = &(&a.d_dx() * &b) + &(&a * &b.d_dx());
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn eighth_root_of_unity() {
    let s = Scalar::s();
    assert!(s.pow(8).unwrap().is_one());
    assert!(!s.pow(4).unwrap().is_one());
    assert_eq!(s.pow(2).unwrap(), Scalar::i());
}

#[test]
fn hyperbolic_forms_share_a_canonical_form() {
    assert_eq!(ex("sinh(phip)*cosh(phip)"), ex("sinh(2*phip)/2"));
    assert_eq!(ex("cosh(phi)^2 - sinh(phi)^2"), Expr::one());
    assert_eq!(ex("dx(cosh(phi/2), 1)"), ex("phi_1*sinh(phi/2)/2"));
}

fn arb_generator() -> impl Strategy<Value = Generator> {
    (-6i32..=6).prop_flat_map(|g| {
        let basis = Generator::basis(g);
        proptest::sample::select(basis)
    })
}

/// Generator matrix carrying an entry of matching statistics.
fn arb_element() -> impl Strategy<Value = (Generator, SuperMatrix)> {
    (arb_generator(), arb_homogeneous(false), arb_homogeneous(true)).prop_map(|(g, even, odd)| {
        let coeff = if g.is_odd() { odd } else { even };
        (g, g.matrix().scale(&coeff))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn jacobi_identity((_, a) in arb_element(), (_, b) in arb_element(), (_, c) in arb_element()) {
        let j = &(&a.commutator(&b.commutator(&c)) + &b.commutator(&c.commutator(&a)))
            + &c.commutator(&a.commutator(&b));
        prop_assert!(j.is_zero());
    }

    #[test]
    fn grades_add_under_the_bracket(g in arb_generator(), h in arb_generator()) {
        let c = g.matrix().commutator(&h.matrix());
        let anti = &(&g.matrix() * &h.matrix()) + &(&h.matrix() * &g.matrix());
        let bracket = if g.is_odd() && h.is_odd() { anti } else { c };
        if !bracket.is_zero() {
            prop_assert_eq!(homogeneous_grade2(&bracket), Some(g.grade2() + h.grade2()));
        }
    }
}

#[test]
fn odd_generators_close_on_even_ones() {
    let g = Generator::new(GenKind::G1, 0).matrix();
    let f = Generator::new(GenKind::F2, 0).matrix();
    let anti = &(&g * &f) + &(&f * &g);
    assert!(!anti.is_zero());
    assert!(Generator::basis(homogeneous_grade2(&anti).unwrap()).iter().all(|b| !b.is_odd()));
}
