//! Superfield form of the transformations and of the flows.

use crate::atom::{Atom, Field, Flow};
use crate::expr::Expr;
use crate::formula::ex;
use crate::hierarchy::published_eom;
use crate::rewrite::RewriteSystem;
use crate::scalar::Scalar;
use crate::superspace::{parse_super_along, SuperExpr};

use super::{BacklundError, BtSystem, Result, B1};

/// Expands `P<k>` into `D(Phip, k)` and `Q<k>` into `D(Phim, k)`.
pub fn expand_d(src: &str) -> String {
    let mut out = String::with_capacity(src.len() * 2);
    let mut chars = src.chars().peekable();
    while let Some(c) = chars.next() {
        match (c, chars.peek()) {
            ('P' | 'Q', Some(d)) if d.is_ascii_digit() => {
                let field = if c == 'P' { "Phip" } else { "Phim" };
                out.push_str(&format!("D({field},{d})"));
                chars.next();
            }
            _ => out.push(c),
        }
    }
    out
}

/// Parses a superfield formula in `P<k>`/`Q<k>` shorthand; `dt` acts along `flow`.
pub fn super_formula(src: &str, flow: Flow) -> Result<SuperExpr> {
    parse_super_along(&expand_d(src), flow).map_err(|e| BacklundError::Inconsistent(format!("superfield formula: {e}")))
}

/// A superfield equation `lhs = rhs`.
#[derive(Clone, Copy, Debug)]
pub struct SuperEquation {
    pub label: &'static str,
    pub lhs: &'static str,
    pub rhs: &'static str,
}

pub const SPATIAL_SUPER_BT: [SuperEquation; 2] = [
    SuperEquation { label: "D Phim", lhs: "Q1", rhs: "4*i/w*cosh(Phip/2)*Sigma" },
    SuperEquation { label: "D Sigma", lhs: "D(Sigma,1)", rhs: "-2*i/w*sinh(Phip/2)" },
];

/// Time parts for t3 (`D_t3 = 4 d_t3`).
pub const T3_SUPER_BT: [SuperEquation; 2] = [
    SuperEquation {
        label: "D_t3 Phim",
        lhs: "4*dt(Phim)",
        rhs: "i/w*cosh(Phip/2)*(P4*P1 - P2*P3)*Sigma \
              + i/w*sinh(Phip/2)*(2*P5 - P2^2*P1)*Sigma \
              + 2/w^2*sinh(Phip)*(P1*P3 - P2^2) + 4/w^2*cosh(Phip)*P4 \
              - 96*i/w^5*(sinh(Phip/2) + 4*sinh(Phip/2)^3 + 3*sinh(Phip/2)^5)*P1*Sigma \
              - 32/w^6*sinh(Phip)^3",
    },
    SuperEquation {
        label: "D_t3 Sigma",
        lhs: "4*dt(Sigma)",
        rhs: "i/(2*w)*cosh(Phip/2)*(P1*P2^2 - 2*P5) \
              + i/(2*w)*sinh(Phip/2)*(P2*P3 - P1*P4) \
              - 12/w^4*sinh(Phip)*cosh(Phip/2)^2*P2*Sigma \
              + 12*i/w^5*sinh(Phip)^2*cosh(Phip/2)*P1",
    },
];

/// The same transformation with `Sigma` eliminated, multiplied through by `cosh(Phip/2)`.
pub const SIGMA_FREE_BT: [SuperEquation; 2] = [
    SuperEquation {
        label: "d_x Phim without Sigma",
        lhs: "cosh(Phip/2)*dx(Phim,1)",
        rhs: "4/w^2*sinh(Phip)*cosh(Phip/2) + 1/2*sinh(Phip/2)*P1*Q1",
    },
    SuperEquation {
        label: "d_t3 Phim without Sigma",
        lhs: "4*cosh(Phip/2)*dt(Phim)",
        rhs: "cosh(Phip/2)*(2/w^2*sinh(Phip)*(P1*P3 - P2^2) + 4/w^2*cosh(Phip)*P4 - 32/w^6*sinh(Phip)^3) \
              - 1/4*cosh(Phip/2)*(P2*P3 - P4*P1)*Q1 \
              - 1/4*sinh(Phip/2)*(P2^2*P1 - 2*P5)*Q1 \
              - 24/w^4*sinh(Phip/2)*(1 + 4*sinh(Phip/2)^2 + 3*sinh(Phip/2)^4)*P1*Q1",
    },
];

/// `tau_0..tau_12` of the t5 superfield transformation.
pub const TAU: [&str; 13] = [
    "cosh(Phip/2)",
    "sinh(Phip/2)",
    "sinh(Phip)",
    "cosh(Phip)",
    "-5*sinh(Phip/2)*(13 + 12*cosh(Phip) + 15*cosh(2*Phip))",
    "20*(cosh(Phip/2) - cosh(3*Phip/2) - 4*cosh(5*Phip/2))",
    "-5*(14*cosh(Phip/2) - 5*cosh(3*Phip/2) + 7*cosh(5*Phip/2))",
    "40*cosh(Phip/2)*sinh(Phip)*(1 - 3*cosh(Phip))",
    "-40*sinh(Phip)^3",
    "-20*(5*sinh(Phip) + sinh(3*Phip))",
    "-80*sinh(Phip)*sinh(2*Phip)",
    "-160*cosh(Phip/2)*sinh(Phip)^2*(2*sinh(Phip) - 5*sinh(2*Phip))",
    "384*sinh(Phip)^5",
];

/// `sigma_0..sigma_11` of the t5 superfield transformation.
pub const SIGMA: [&str; 12] = [
    "1/2*cosh(Phip/2)",
    "-1/2*sinh(Phip/2)",
    "-20*sinh(Phip/2)^2*sinh(Phip)",
    "-15*cosh(Phip/2)^2*sinh(Phip)",
    "10*cosh(Phip/2)^2*(3 - 7*cosh(Phip))",
    "-20*cosh(Phip/2)^2*sinh(Phip)",
    "5/2*cosh(Phip/2)*(7 + 9*cosh(2*Phip))",
    "30*cosh(Phip/2)*sinh(2*Phip)",
    "60*cosh(Phip/2)^3*sinh(Phip)",
    "20*cosh(Phip/2)*sinh(Phip)^2",
    "320*cosh(Phip/2)^2*sinh(Phip)^3",
    "-160*cosh(Phip/2)*sinh(Phip)^4",
];

/// `sigma_0..sigma_11` as printed; `sigma_6..sigma_9` disagree with the component transformation.
pub const SIGMA_PRINTED: [&str; 12] = [
    "1/2*cosh(Phip/2)",
    "-1/2*sinh(Phip/2)",
    "-20*sinh(Phip/2)^2*sinh(Phip)",
    "-15*cosh(Phip/2)^2*sinh(Phip)",
    "10*cosh(Phip/2)^2*(3 - 7*cosh(Phip))",
    "-20*cosh(Phip/2)^2*sinh(Phip)",
    "5/2*cosh(Phip/2)*(7 + 9*cosh(Phip))",
    "-30*cosh(Phip/2)*sinh(2*Phip)",
    "-60*cosh(Phip/2)^3*sinh(Phip)",
    "-20*cosh(Phip/2)*sinh(Phip)^2",
    "320*cosh(Phip/2)^2*sinh(Phip)^3",
    "-160*cosh(Phip/2)*sinh(Phip)^4",
];

const WAVE_A: &str = "(P1*P8 - P2*P7 - P1*P2^2*P4 + P2^3*P3 - P3*P6 + P4*P5)";
const WAVE_B: &str = "(3/4*P2^4*P1 - 2*P2^2*P5 - 3*P1*P2*P6 - 4*P2*P3*P4 - P1*P4^2 + 2*P9)";

/// `(coefficient index, structure)` pairs of `D_t5 Phim`.
pub const TAU_LAYOUT: [(usize, &str); 13] = [
    (0, "i/w*WA*Sigma"),
    (1, "i/w*WB*Sigma"),
    (2, "1/w^2*(2*P1*P7 - 4*P2*P6 - 2*P3*P5 + 2*P4^2 + 3/2*P2^4 - 4*P1*P2^2*P3)"),
    (3, "1/w^2*(2*P1*P2*P5 + 4*P1*P3*P4 - 6*P2^2*P4 + 4*P8)"),
    (4, "i/w^5*P1*P2^2*Sigma"),
    (5, "i/w^5*P1*P4*Sigma"),
    (6, "i/w^5*P2*P3*Sigma"),
    (7, "i/w^5*P5*Sigma"),
    (8, "1/w^6*P1*P3"),
    (9, "1/w^6*P2^2"),
    (10, "1/w^6*P4"),
    (11, "i/w^9*P1*Sigma"),
    (12, "1/w^10"),
];

/// `(coefficient index, structure)` pairs of `D_t5 Sigma`.
pub const SIGMA_LAYOUT: [(usize, &str); 12] = [
    (0, "-i/w*WB"),
    (1, "i/w*WA"),
    (2, "1/w^4*P1*P2*P3*Sigma"),
    (3, "1/w^4*P2^3*Sigma"),
    (4, "1/w^4*P2*P4*Sigma"),
    (5, "1/w^4*P6*Sigma"),
    (6, "i/w^5*P1*P2^2"),
    (7, "i/w^5*P1*P4"),
    (8, "i/w^5*P2*P3"),
    (9, "i/w^5*P5"),
    (10, "1/w^8*P2*Sigma"),
    (11, "i/w^9*P1"),
];

/// `sum_k coeff[k] * structure` as a superfield.
pub fn assemble_super(coeffs: &[&str], layout: &[(usize, &str)]) -> Result<SuperExpr> {
    let mut acc = SuperExpr::zero();
    for (k, s) in layout {
        let s = s.replace("WA", WAVE_A).replace("WB", WAVE_B);
        acc = &acc + &super_formula(&format!("({})*{}", coeffs[*k], s), Flow::T1)?;
    }
    Ok(acc)
}

/// `b1` and its time derivative.
pub fn b1_rules(flow: Flow) -> Result<RewriteSystem> {
    let v = ex(B1);
    let mut rs = RewriteSystem::new();
    rs.add_rule(Atom::jet(Field::B1, 0), v.clone())?;
    if flow != Flow::T1 {
        rs.add_rule(Atom::time_jet(Field::B1, 0, flow), v.d_dt(flow)?)?;
    }
    Ok(rs)
}

/// Body and soul of `lhs - rhs`, reduced by `rs`.
pub fn reduce_super(e: &SuperExpr, rs: &RewriteSystem) -> Result<(Expr, Expr)> {
    Ok((rs.rewrite(&e.body)?, rs.rewrite(&e.soul)?))
}

fn reduction(bt: &BtSystem) -> Result<RewriteSystem> {
    Ok(bt.full()?.union(&b1_rules(bt.flow)?)?)
}

fn check(eq: &SuperEquation, flow: Flow, rs: &RewriteSystem, out: &mut Vec<(String, Expr)>) -> Result<()> {
    let r = &super_formula(eq.lhs, flow)? - &super_formula(eq.rhs, flow)?;
    let (b, s) = reduce_super(&r, rs)?;
    out.push((format!("{} (body)", eq.label), b));
    out.push((format!("{} (soul)", eq.label), s));
    Ok(())
}

/// Superfield right-hand sides of the time part: `(D_t Phim, D_t Sigma)`.
pub fn super_time_bt(flow: Flow) -> Result<(SuperExpr, SuperExpr)> {
    match flow {
        Flow::T3 => Ok((super_formula(T3_SUPER_BT[0].rhs, flow)?, super_formula(T3_SUPER_BT[1].rhs, flow)?)),
        Flow::T5 => Ok((assemble_super(&TAU, &TAU_LAYOUT)?, assemble_super(&SIGMA, &SIGMA_LAYOUT)?)),
        other => Err(BacklundError::UnsupportedFlow(other)),
    }
}

fn time_scale(flow: Flow) -> i64 {
    if flow == Flow::T5 {
        16
    } else {
        4
    }
}

/// Labelled residuals, all zero when the superfield transformation agrees with `bt`:
/// the component equations of the spatial and time parts, the `Sigma`-free
/// forms (t3), and the compatibility `D_t (D Phim) = D (D_t Phim)`.
pub fn superspace_bt_check(bt: &BtSystem) -> Result<Vec<(String, Expr)>> {
    let rs = reduction(bt)?;
    let mut out = Vec::new();
    for eq in &SPATIAL_SUPER_BT {
        check(eq, bt.flow, &rs, &mut out)?;
    }
    check(&SIGMA_FREE_BT[0], bt.flow, &rs, &mut out)?;
    if bt.flow == Flow::T1 {
        return Ok(out);
    }
    if bt.flow == Flow::T3 {
        for eq in T3_SUPER_BT.iter().chain(&SIGMA_FREE_BT[1..]) {
            check(eq, bt.flow, &rs, &mut out)?;
        }
    }
    let (phim_t, sigma_t) = super_time_bt(bt.flow)?;
    let scale = Scalar::int(time_scale(bt.flow));
    let label = |s: &str| format!("D_t{} {s}", if bt.flow == Flow::T5 { 5 } else { 3 });
    for (name, lhs, rhs) in [("Phim", "Phim", &phim_t), ("Sigma", "Sigma", &sigma_t)] {
        let l = super_formula(lhs, bt.flow)?.d_dt(bt.flow)?.scale(&scale);
        let (b, s) = reduce_super(&(&l - rhs), &rs)?;
        out.push((label(&format!("{name} (body)")), b));
        out.push((label(&format!("{name} (soul)")), s));
    }
    let dsb1 = super_formula(SPATIAL_SUPER_BT[0].rhs, bt.flow)?.d_dt(bt.flow)?.scale(&scale);
    let (b, s) = reduce_super(&(&dsb1 - &phim_t.d()), &rs)?;
    out.push((label("D-compatibility (body)"), b));
    out.push((label("D-compatibility (soul)"), s));
    Ok(out)
}

/// Superfield flows: `(label, equation in Psi, equation in Phi)` with `D_t` scaled as above.
pub const SUPER_FLOWS: [(Flow, &str, &str); 2] = [
    (
        Flow::T3,
        "D(Psi,6) - 3*D(Psi,1)*D(Psi*D(Psi,1),2)",
        "D(Phi,6) - 2*D(Phi,2)^3 + 3*D(Phi,1)*D(Phi,2)*D(Phi,3)",
    ),
    (
        Flow::T5,
        "D(Psi,10) - 5*(Psi*D(Psi,1)*D(Psi,7) + D(Psi,1)^2*D(Psi,6) + 2*D(Psi,2)*D(Psi,3)^2 \
         + 2*Psi*D(Psi,3)*D(Psi,5) - 2*D(Psi,1)^4*D(Psi,2) + 3*D(Psi,1)*D(Psi,2)*D(Psi,5) \
         + 3*D(Psi,1)*D(Psi,3)*D(Psi,4) - 4*Psi*D(Psi,1)^3*D(Psi,3))",
        "D(Phi,10) + 5*D(Phi,1)*D(Phi,2)*D(Phi,7) + 5*D(Phi,1)*D(Phi,3)*D(Phi,6) \
         + 5*D(Phi,1)*D(Phi,4)*D(Phi,5) - 10*D(Phi,2)^2*D(Phi,6) - 10*D(Phi,2)*D(Phi,4)^2 \
         - 20*D(Phi,1)*D(Phi,2)^3*D(Phi,3) + 6*D(Phi,2)^5",
    ),
];

/// Residuals of the superfield flows against the component equations:
/// the `Phi` form modulo the published equations, and `Psi` form minus
/// `-D` of the `Phi` form under `Psi = -D Phi`.
pub fn super_flow_check(flow: Flow) -> Result<Vec<(String, Expr)>> {
    let (_, psi_src, phi_src) =
        SUPER_FLOWS.iter().find(|(f, _, _)| *f == flow).ok_or(BacklundError::UnsupportedFlow(flow))?;
    let eom = published_eom(flow)?;
    let phi_rhs = super_formula(phi_src, flow)?;
    let lhs = super_formula("Phi", flow)?.d_dt(flow)?.scale(&Scalar::int(time_scale(flow)));
    let (b, s) = reduce_super(&(&lhs - &phi_rhs), &eom)?;
    let psi_rhs = super_formula(psi_src, flow)?;
    let equiv = &psi_rhs + &phi_rhs.d();
    Ok(vec![
        ("Phi flow (body)".into(), b),
        ("Phi flow (soul)".into(), s),
        ("Psi = -D Phi (body)".into(), equiv.body),
        ("Psi = -D Phi (soul)".into(), equiv.soul),
    ])
}
