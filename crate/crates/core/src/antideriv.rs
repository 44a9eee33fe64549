//! Inversion of d/dx on the candidate basis of derivative-order decrements.

use std::collections::BTreeSet;

use crate::atom::Atom;
use crate::expr::{Expr, Monomial};
use crate::linalg::Echelon;
use crate::scalar::Scalar;

fn decrement(m: &Monomial, out: &mut BTreeSet<Monomial>) {
    for (idx, (a, p)) in m.evens.iter().enumerate() {
        if a.dx == 0 || a.field.is_constant() {
            continue;
        }
        let lower = Atom { dx: a.dx - 1, ..*a };
        let mut c = m.clone();
        if *p == 1 {
            c.evens.remove(idx);
        } else {
            c.evens[idx].1 -= 1;
        }
        let m2 = Expr::atom(lower).mul_monomial(&c, &Scalar::from(1));
        out.extend(m2.terms().map(|(k, _)| k.clone()));
        // exp absorption: (d_x f) e^{kf} comes from e^{kf}
        if a.dx == 1 && a.dt.is_none() && m.exps.iter().any(|(f, _)| *f == a.field) {
            out.insert(c);
        }
    }
    for (idx, a) in m.odds.iter().enumerate() {
        if a.dx == 0 {
            continue;
        }
        let mut c = m.clone();
        c.odds[idx] = Atom { dx: a.dx - 1, ..*a };
        c.odds.sort();
        if c.odds.windows(2).all(|w| w[0] != w[1]) {
            out.insert(c);
        }
    }
}

fn candidates(e: &Expr) -> BTreeSet<Monomial> {
    let mut out = BTreeSet::new();
    for (m, _) in e.terms() {
        decrement(m, &mut out);
    }
    out
}

const MAX_ROUNDS: usize = 12;

/// Finds `F` with `d_dx(F) = e`, searching the span of candidate monomials.
///
/// Integration constants are fixed to zero.
pub fn antiderivative_x(e: &Expr) -> Option<Expr> {
    if e.is_zero() {
        return Some(Expr::zero());
    }
    let mut cands = candidates(e);
    let mut tried = BTreeSet::new();
    // the plain decrement basis, widened from stray terms until it closes
    for _ in 0..MAX_ROUNDS {
        let basis: Vec<Monomial> = cands.iter().filter(|m| !tried.contains(*m)).cloned().collect();
        if basis.is_empty() {
            break;
        }
        tried.extend(basis.iter().cloned());
        let all: Vec<Monomial> = tried.iter().cloned().collect();
        let mut ech = Echelon::new();
        let derivs: Vec<Expr> = all.iter().map(|m| Expr::term(Scalar::from(1), m.clone()).d_dx()).collect();
        for d in &derivs {
            ech.insert(d);
        }
        if let Some(x) = ech.solve(e) {
            let f: Expr = x.iter().map(|(k, v)| Expr::term(v.clone(), all[*k].clone())).sum();
            debug_assert_eq!(f.d_dx(), *e);
            return Some(f);
        }
        let mut wider = BTreeSet::new();
        for d in &derivs {
            for (m, _) in d.terms() {
                decrement(m, &mut wider);
            }
        }
        cands.extend(wider);
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::ex;

    #[test]
    fn exact_derivatives_integrate() {
        assert_eq!(antiderivative_x(&ex("phi_1*phi_2")), Some(ex("phi_1^2/2")));
        assert_eq!(antiderivative_x(&ex("cosh(phip)*phip_1")), Some(ex("sinh(phip)")));
        assert_eq!(antiderivative_x(&ex("psb*psb_2")), Some(ex("psb*psb_1")));
        assert_eq!(antiderivative_x(&Expr::zero()), Some(Expr::zero()));
    }

    #[test]
    fn non_derivatives_are_rejected() {
        assert_eq!(antiderivative_x(&ex("phi_1^2")), None);
        assert_eq!(antiderivative_x(&ex("psb*psb_1")), None);
        assert_eq!(antiderivative_x(&ex("cosh(phip)")), None);
    }

    #[test]
    fn round_trip_of_derivatives() {
        for src in ["phi_1^3*phi_3 - psb*psb_3*phi_1", "exp(phip/2)*f1*psbp_1 + phip_2^2", "w^-2*sinh(phip)*phip_1^2"] {
            let f = ex(src);
            let g = antiderivative_x(&f.d_dx()).unwrap();
            assert_eq!(g.d_dx(), f.d_dx());
        }
    }
}
