//! Bosonic recursion operator and the parameterised t5 superfield extension.

use num_rational::BigRational;

use crate::antideriv::antiderivative_x;
use crate::atom::{Field, Flow};
use crate::expr::Expr;
use crate::formula::ex;
use crate::hierarchy::published_eom;
use crate::rewrite::Substitution;
use crate::superspace::{parse_super_along, SuperExpr};

use super::{assemble, BacklundError, Result, T5_C, T5_C_UNITS};

/// `d_t3 phi_i = phi_i'''/4 - phi_i'^3/2` for the copy `phi_i`.
fn t3_velocity(phi: &str) -> Expr {
    ex(&format!("{phi}_3/4 - {phi}_1^3/2"))
}

/// `phi_i' D^{-1}(phi_i' d_x v)` for the copy `phi_i` with velocity `v`.
fn nonlocal_term(phi: &str, v: &Expr) -> Result<Expr> {
    let p1 = ex(&format!("{phi}_1"));
    let integrand = &p1 * &v.d_dx();
    let prim = antiderivative_x(&integrand)
        .ok_or_else(|| BacklundError::Inconsistent(format!("no local antiderivative of {integrand}")))?;
    Ok(&p1 * &prim)
}

/// `16 d_t5 (phi1 - phi2)` from the recursion operator applied to the t3 velocities,
/// in the copies `phi1`, `phi2`.
pub fn recursion_t5_difference() -> Result<Expr> {
    let (v1, v2) = (t3_velocity("phi1"), t3_velocity("phi2"));
    let local = (&v1 - &v2).d_dx_n(2).scale_int(4);
    let nonlocal = &nonlocal_term("phi1", &v1)? - &nonlocal_term("phi2", &v2)?;
    Ok(&local - &nonlocal.scale_int(16))
}

/// `phi1 -> (phip + phim)/2`, `phi2 -> (phip - phim)/2`, and the same for `psb1`, `psb2`.
pub fn to_plus_minus() -> Substitution {
    Substitution::new()
        .with(Field::Phi1, ex("(phip + phim)/2"))
        .with(Field::Phi2, ex("(phip - phim)/2"))
        .with(Field::Psb1, ex("(psbp + psbm)/2"))
        .with(Field::Psb2, ex("(psbp - psbm)/2"))
}

/// Bosonic limit of the published `16 d_t5 phim`: `c5/w^2 + c12/w^6 + c15/w^10`.
pub fn bosonic_t5_target() -> Expr {
    assemble(&T5_C, &T5_C_UNITS).bosonic_part()
}

/// Recursion-operator form of `16 d_t5 phim`, reduced by the bosonic spatial
/// transformation, minus [`bosonic_t5_target`]. Zero when they agree.
pub fn bosonic_recursion_check(bt: &super::BtSystem) -> Result<Expr> {
    let e = to_plus_minus().apply(&recursion_t5_difference()?)?;
    let reduced = bt.spatial.rewrite(&e)?.bosonic_part();
    Ok(&reduced - &bosonic_t5_target())
}

/// `(gamma_1, gamma_2, gamma_3, gamma_4)` reproducing the component t5 equations.
pub fn gamma_fixed() -> [BigRational; 4] {
    let q = |n: i64, d: i64| BigRational::new(n.into(), d.into());
    [q(1, 2), q(1, 1), q(3, 2), q(1, 1)]
}

fn rat(r: &BigRational) -> String {
    format!("({}/{})", r.numer(), r.denom())
}

/// Right-hand side of `D_t5 Psi` in the extension with free `gamma`.
pub fn gamma_extension_rhs(gamma: &[BigRational; 4]) -> Result<SuperExpr> {
    let [g1, g2, g3, g4] = gamma.each_ref().map(rat);
    let src = format!(
        "D(Psi,10) - 10*(D(Psi,2)*D(Psi,3)^2 + {g1}*Psi*D(Psi,1)*D(Psi,7) + (1 - {g1})*D(Psi,1)^2*D(Psi,6) \
         + {g2}*Psi*D(Psi,3)*D(Psi,5) + {g3}*D(Psi,1)*D(Psi,2)*D(Psi,5) \
         + (4 - {g2} - {g3})*D(Psi,1)*D(Psi,3)*D(Psi,4) \
         - {g4}*D(Psi,2)*D(Psi,1)^4 - (3 - {g4})*Psi*D(Psi,1)^3*D(Psi,3))"
    );
    parse_super_along(&src, Flow::T5).map_err(|e| BacklundError::Inconsistent(format!("superfield formula: {e}")))
}

/// `D_t5 Psi - rhs` with `D_t5 = 16 d_t5`, reduced by the component t5
/// equations. Zero iff the extension reproduces them.
pub fn gamma_extension_check(gamma: &[BigRational; 4]) -> Result<SuperExpr> {
    let flow = Flow::T5;
    let lhs = parse_super_along("16*dt(Psi)", flow)
        .map_err(|e| BacklundError::Inconsistent(format!("superfield formula: {e}")))?;
    let eom = published_eom(flow)?;
    let r = &lhs - &gamma_extension_rhs(gamma)?;
    Ok(SuperExpr::new(eom.rewrite(&r.body)?, eom.rewrite(&r.soul)?))
}

/// Component form `(16 d_t5 u, 16 d_t5 psb)` of the extension for any `gamma`,
/// written out term by term.
pub fn gamma_extension_components(gamma: &[BigRational; 4]) -> (Expr, Expr) {
    let [g1, g2, g3, g4] = gamma.each_ref().map(rat);
    let u = |s: String| ex(&s.replace('u', "(-phi_1)"));
    let e1 = u(format!(
        "dx(u,5) - 10*(dx(u,1)^3 + u^2*dx(u,3) + 4*u*dx(u,1)*dx(u,2) - 3*u^4*dx(u,1)) \
         + 10*{g1}*(i*u*psb*psb_4 + i*dx(u,3)*psb*psb_1) + 10*({g3} + {g2} - 2)*i*dx(u,1)*psb_1*psb_2 \
         + 10*{g2}*(i*dx(u,1)*psb*psb_3 + i*dx(u,2)*psb*psb_2) + 10*({g3} + 2*{g1} - 2)*i*u*psb_1*psb_3 \
         + 10*({g4} - 3)*(i*u^3*psb*psb_2 + 3*i*u^2*dx(u,1)*psb*psb_1)"
    ));
    let e2 = u(format!(
        "psb_5 - 10*dx(u,1)^2*psb_1 - 10*{g1}*u*dx(u,3)*psb + 10*({g1} - 1)*u^2*psb_3 \
         - 10*{g2}*dx(u,1)*dx(u,2)*psb - 10*{g3}*u*dx(u,2)*psb_1 + 10*({g2} + {g3} - 4)*u*dx(u,1)*psb_2 \
         + 10*{g4}*u^4*psb_1 - 10*({g4} - 3)*u^3*dx(u,1)*psb"
    ));
    (e1, e2)
}

/// Superfield right-hand side minus the term-by-term component form:
/// `(soul - e1, body - si e2)`.
pub fn gamma_components_residual(gamma: &[BigRational; 4]) -> Result<(Expr, Expr)> {
    let rhs = gamma_extension_rhs(gamma)?;
    let (e1, e2) = gamma_extension_components(gamma);
    Ok((&rhs.soul - &e1, &rhs.body - &(&Expr::si() * &e2)))
}
