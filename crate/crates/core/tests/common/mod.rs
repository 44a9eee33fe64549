#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use smkdv::{Expr, Field, Scalar};

pub fn arb_rational() -> impl Strategy<Value = BigRational> {
    (-9i64..=9, 1i64..=5).prop_map(|(n, d)| BigRational::new(BigInt::from(n), BigInt::from(d)))
}

pub fn arb_scalar() -> impl Strategy<Value = Scalar> {
    [arb_rational(), arb_rational(), arb_rational(), arb_rational()]
        .prop_map(|[a, b, c, d]| Scalar::new(a, b, c, d))
}

const EVEN: [Field; 3] = [Field::Phi, Field::PhiP, Field::B1];
const ODD: [Field; 3] = [Field::Psb, Field::PsbP, Field::F1];

fn even_factor() -> impl Strategy<Value = Expr> {
    prop_oneof![
        (0..3usize, 0u8..3).prop_map(|(f, k)| Expr::jet(EVEN[f], k)),
        (0..2usize, -2i32..=2).prop_map(|(f, h)| Expr::exp_half(EVEN[f], h)),
        (-2i32..=2).prop_map(Expr::omega),
    ]
}

fn odd_factor() -> impl Strategy<Value = Expr> {
    (0..3usize, 0u8..3).prop_map(|(f, k)| Expr::jet(ODD[f], k))
}

/// Random term with `odd` fermionic factors.
fn term(odd: usize) -> impl Strategy<Value = Expr> {
    (
        arb_scalar(),
        proptest::collection::vec(even_factor(), 0..3),
        proptest::collection::vec(odd_factor(), odd..=odd),
    )
        .prop_map(|(c, ev, od)| {
            ev.iter().chain(od.iter()).fold(Expr::scalar(c), |acc, f| &acc * f)
        })
}

/// Random expression of fixed parity: `odd == false` gives an even element.
pub fn arb_homogeneous(odd: bool) -> impl Strategy<Value = Expr> {
    let degrees = if odd { vec![1usize, 3] } else { vec![0usize, 2] };
    proptest::collection::vec((proptest::sample::select(degrees), any::<u64>()), 1..4).prop_flat_map(|ds| {
        ds.into_iter()
            .map(|(d, _)| term(d).boxed())
            .collect::<Vec<_>>()
            .prop_map(|ts| ts.into_iter().fold(Expr::zero(), |a, t| &a + &t))
    })
}

pub fn arb_expr() -> impl Strategy<Value = Expr> {
    (arb_homogeneous(false), arb_homogeneous(true)).prop_map(|(a, b)| &a + &b)
}
