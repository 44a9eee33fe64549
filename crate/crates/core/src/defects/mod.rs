//! Modified conserved charges in the presence of a defect at `x = 0`.

use thiserror::Error;

use crate::atom::{Field, Flow};
use crate::backlund::{build_k, copy, derive_bt, to_plus_minus, BacklundError, BtSystem};
use crate::charges::{charge_density, conservation_check, riccati_pair, Charge, ChargeError};
use crate::expr::{Expr, ExprError};
use crate::formula::ex;
use crate::rewrite::{RewriteError, RewriteSystem, Substitution};

mod published;

pub use published::*;

#[derive(Debug, Error)]
pub enum DefectError {
    #[error("no defect term for {0}")]
    UnsupportedCharge(Charge),
    #[error(transparent)]
    Charge(#[from] ChargeError),
    #[error(transparent)]
    Backlund(#[from] BacklundError),
    #[error(transparent)]
    Rewrite(#[from] RewriteError),
    #[error(transparent)]
    Expr(#[from] ExprError),
}

pub type Result<T> = std::result::Result<T, DefectError>;

/// Expansion of `D_set = -ln[...]` in `lambda^(-n/2)`, `n >= 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct DefectGenerating {
    pub set: u8,
    /// `coeffs[n - 1]` is `D_set^(-n/2)`, in `phi1`, `phi2`, `psb1`, `f1`.
    pub coeffs: Vec<Expr>,
}

impl DefectGenerating {
    pub fn coeff(&self, n: i32) -> Option<&Expr> {
        usize::try_from(n - 1).ok().and_then(|k| self.coeffs.get(k))
    }
}

fn truncate(e: &Expr, lowest: i32) -> Expr {
    e.filter(|m| m.zpow() >= lowest)
}

/// The argument of the logarithm, `K_11 + K_12 G21 + K_13 G31` or
/// `K_22 + K_21 G12 + K_23 G32`, with the auxiliary functions of the left copy.
pub fn defect_argument(set: u8, max_order: i32) -> Result<Expr> {
    let k = build_k().substitute(&Substitution::new().with(Field::PhiP, ex("phi1 + phi2")))?;
    let left = Substitution::relabel(&[(Field::Phi, Field::Phi1), (Field::Psb, Field::Psb1)]);
    let (g, h) = riccati_pair(set, max_order + 1)?;
    let (g, h) = (left.apply(&g.as_expr())?, left.apply(&h.as_expr())?);
    let (d, o) = if set == 1 { (0, 1) } else { (1, 0) };
    Ok(&(&k.e[d][d] + &(&k.e[d][o] * &g)) + &(&k.e[d][2] * &h))
}

/// `-ln(z (1 + X)) + ln z = sum_k (-1)^k X^k / k`, kept through `z^(-max_order)`.
pub fn defect_expansion(set: u8, max_order: i32) -> Result<DefectGenerating> {
    let x = &truncate(&(&defect_argument(set, max_order)? * &Expr::z(-1)), -max_order) - &Expr::one();
    let mut power = Expr::one();
    let mut series = Expr::zero();
    for k in 1..=i64::from(max_order.max(0)) {
        power = truncate(&(&power * &x), -max_order);
        let sign = if k % 2 == 0 { 1 } else { -1 };
        series = &series + &power.scale(&crate::Scalar::frac(sign, k));
    }
    let coeffs = (1..=max_order).map(|n| series.z_coeff(-n)).collect();
    Ok(DefectGenerating { set, coeffs })
}

/// `P_D` or `E_D` straight from the two expansions, in `phi1`, `phi2`, `psb1`, `f1`.
pub fn defect_term_left(charge: Charge) -> Result<Expr> {
    let n = match charge {
        Charge::Momentum => 1,
        Charge::Energy => 3,
        other => return Err(DefectError::UnsupportedCharge(other)),
    };
    let d1 = defect_expansion(1, n)?;
    let d2 = defect_expansion(2, n)?;
    Ok(&d1.coeffs[n as usize - 1] + &d2.coeffs[n as usize - 1])
}

/// Rewrites a left-copy expression into `phip`, `psbp`, `f1` and jets of `phip`
/// using the spatial transformation.
pub fn to_defect_variables(e: &Expr, spatial: &RewriteSystem) -> Result<Expr> {
    let sum = Substitution::new().with(Field::Phi2, ex("phip - phi1")).apply(e)?;
    let pm = to_plus_minus().apply(&sum)?;
    Ok(spatial.rewrite(&pm)?)
}

/// `P_D` or `E_D` in `+`/`-` variables.
pub fn defect_term(charge: Charge, spatial: &RewriteSystem) -> Result<Expr> {
    to_defect_variables(&defect_term_left(charge)?, spatial)
}

/// `F(copy 1) - F(copy 2)` at the defect, reduced by the transformation.
pub fn boundary_rate(charge: Charge, bt: &BtSystem) -> Result<Expr> {
    let density = charge_density(charge)?;
    let flux = conservation_check(&density, bt.flow)?;
    let jump = &copy(1).apply(&flux)? - &copy(-1).apply(&flux)?;
    Ok(bt.full()?.rewrite(&jump)?)
}

/// `dQ/dt - d_t Q_D` at the defect with `Q_D` supplied; zero when `Q - Q_D` is conserved.
pub fn modified_charge_residual_with(charge: Charge, bt: &BtSystem, defect: &Expr) -> Result<Expr> {
    let rs = bt.full()?;
    let dt = rs.rewrite(&defect.d_dt(bt.flow)?)?;
    Ok(&boundary_rate(charge, bt)? - &dt)
}

/// [`modified_charge_residual_with`] for the defect term of the generating function.
pub fn modified_charge_residual(charge: Charge, flow: Flow) -> Result<Expr> {
    let bt = derive_bt(flow)?;
    let defect = defect_term(charge, &bt.spatial)?;
    modified_charge_residual_with(charge, &bt, &defect)
}
