//! Riccati expansion of the auxiliary functions and the conserved charges
//! they generate.

use thiserror::Error;

use crate::antideriv::antiderivative_x;
use crate::atom::Flow;
use crate::expr::{Expr, ExprError, Parity};
use crate::hierarchy::{build_ax, published_eom, HierarchyError};
use crate::rewrite::RewriteError;
use crate::scalar::Scalar;
use crate::superalgebra::SuperMatrix;

mod published;

pub use published::*;

#[derive(Debug, Error)]
pub enum ChargeError {
    #[error("density {0} is not conserved under {1}: no local flux")]
    NotConserved(String, Flow),
    #[error("Riccati recursion stalls at z^{0}")]
    Stalled(i32),
    #[error("order {0}/2 is below the start of the series")]
    BelowStart(i32),
    #[error(transparent)]
    Hierarchy(#[from] HierarchyError),
    #[error(transparent)]
    Rewrite(#[from] RewriteError),
    #[error(transparent)]
    Expr(#[from] ExprError),
}

pub type Result<T> = std::result::Result<T, ChargeError>;

/// Auxiliary function `Gamma_ij = Omega_i / Omega_j` (times the odd parameter for `i = 3`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Aux {
    G21,
    G31,
    G12,
    G32,
}

impl Aux {
    /// Lowest order `n` of the expansion in `lambda^(-n/2)`.
    pub fn start(self) -> i32 {
        match self {
            Aux::G21 => -1,
            Aux::G31 | Aux::G32 => 0,
            Aux::G12 => 1,
        }
    }

    pub fn parity(self) -> Parity {
        match self {
            Aux::G21 | Aux::G12 => Parity::Even,
            Aux::G31 | Aux::G32 => Parity::Odd,
        }
    }

    /// `1` for the pair `(G21, G31)`, `2` for `(G12, G32)`.
    pub fn set(self) -> u8 {
        match self {
            Aux::G21 | Aux::G31 => 1,
            Aux::G12 | Aux::G32 => 2,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Aux::G21 => "Gamma21",
            Aux::G31 => "Gamma31",
            Aux::G12 => "Gamma12",
            Aux::G32 => "Gamma32",
        }
    }
}

/// `Gamma = sum_n lambda^(-n/2) coeffs[n - start]`, with `z = lambda^(1/2)`.
#[derive(Clone, Debug, PartialEq)]
pub struct RiccatiSeries {
    pub which: Aux,
    pub coeffs: Vec<Expr>,
}

impl RiccatiSeries {
    /// Coefficient of `lambda^(-n/2)`.
    pub fn coeff(&self, n: i32) -> Option<&Expr> {
        usize::try_from(n - self.which.start()).ok().and_then(|k| self.coeffs.get(k))
    }

    pub fn max_order(&self) -> i32 {
        self.which.start() + self.coeffs.len() as i32 - 1
    }

    /// The truncated series as a Laurent polynomial in `z`.
    pub fn as_expr(&self) -> Expr {
        let s = self.which.start();
        self.coeffs.iter().enumerate().map(|(k, c)| c * &Expr::z(-(s + k as i32))).sum()
    }
}

/// `V = -A_x`.
pub fn v_matrix() -> SuperMatrix {
    -&build_ax()
}

/// Residuals `RHS - d_x Gamma` of the two Riccati equations of `set`.
pub fn riccati_residuals(set: u8, g: &Expr, h: &Expr) -> (Expr, Expr) {
    let v = v_matrix();
    let e = |r: usize, c: usize| &v.e[r][c];
    if set == 1 {
        let rg = &(&(&(e(1, 0) + &(&(e(1, 1) - e(0, 0)) * g)) - &(&(e(0, 1) * g) * g)) + &(e(1, 2) * h))
            - &(&(&(e(0, 2) * h) * g) + &g.d_dx());
        let rh = &(&(e(2, 0) + &(&(e(2, 2) - e(0, 0)) * h)) + &(e(2, 1) * g)) - &(&(&(e(0, 1) * g) * h) + &h.d_dx());
        (rg, rh)
    } else {
        let rg = &(&(&(e(0, 1) - &(&(e(1, 1) - e(0, 0)) * g)) - &(&(e(1, 0) * g) * g)) + &(e(0, 2) * h))
            - &(&(&(e(1, 2) * h) * g) + &g.d_dx());
        let rh = &(&(e(2, 1) + &(&(e(2, 2) - e(1, 1)) * h)) + &(e(2, 0) * g)) - &(&(&(e(1, 0) * g) * h) + &h.d_dx());
        (rg, rh)
    }
}

/// Solves the Riccati pair of `set` through order `max_order` (in units of
/// `lambda^(-1/2)`); the even series starts at `1`.
///
/// The order-`m` unknowns enter the residuals at `z^(1-m)` with coefficient `-2`.
pub fn riccati_pair(set: u8, max_order: i32) -> Result<(RiccatiSeries, RiccatiSeries)> {
    let (ga, ha) = if set == 1 { (Aux::G21, Aux::G31) } else { (Aux::G12, Aux::G32) };
    let mut g = RiccatiSeries { which: ga, coeffs: vec![Expr::one()] };
    let mut h = RiccatiSeries { which: ha, coeffs: vec![] };
    let half = Scalar::frac(1, 2);
    for m in ha.start()..=max_order {
        let solve_g = m > ga.start();
        if solve_g {
            g.coeffs.push(Expr::zero());
        }
        h.coeffs.push(Expr::zero());
        let settled = (0..4).any(|_| {
            let (rg, rh) = riccati_residuals(set, &g.as_expr(), &h.as_expr());
            let (cg, ch) = (rg.z_coeff(1 - m), rh.z_coeff(1 - m));
            if cg.is_zero() && ch.is_zero() {
                return true;
            }
            if !cg.is_zero() && !solve_g {
                return false;
            }
            if let Some(last) = g.coeffs.last_mut().filter(|_| solve_g) {
                *last = &*last + &cg.scale(&half);
            }
            let last = h.coeffs.last_mut().expect("pushed above");
            *last = &*last + &ch.scale(&half);
            false
        });
        if !settled {
            return Err(ChargeError::Stalled(1 - m));
        }
    }
    Ok((g, h))
}

/// One auxiliary function through `max_order`.
pub fn riccati_coeffs(which: Aux, max_order: i32) -> Result<RiccatiSeries> {
    if max_order < which.start() {
        return Err(ChargeError::BelowStart(max_order));
    }
    let (g, h) = riccati_pair(which.set(), max_order)?;
    Ok(if matches!(which, Aux::G21 | Aux::G12) { g } else { h })
}

/// A conserved charge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Charge {
    /// `I_set^(-n/2)`.
    Generated { set: u8, order: i32 },
    /// `I_1^(-1/2) + I_2^(-1/2)`.
    Momentum,
    /// `I_1^(-3/2) + I_2^(-3/2)`.
    Energy,
}

impl std::fmt::Display for Charge {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Charge::Generated { set, order } => write!(f, "I{set}(-{order}/2)"),
            Charge::Momentum => f.write_str("P"),
            Charge::Energy => f.write_str("E"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ChargeDensity {
    pub charge: Charge,
    pub density: Expr,
}

/// Generating function `V11 + V12 G21 + V13 G31` (set 1) or
/// `V22 + V21 G12 + V23 G32` (set 2), truncated at `max_order`.
pub fn generating_function(set: u8, max_order: i32) -> Result<Expr> {
    let (g, h) = riccati_pair(set, max_order + 2)?;
    let v = v_matrix();
    let (g, h) = (g.as_expr(), h.as_expr());
    Ok(if set == 1 {
        &(&v.e[0][0] + &(&v.e[0][1] * &g)) + &(&v.e[0][2] * &h)
    } else {
        &(&v.e[1][1] + &(&v.e[1][0] * &g)) + &(&v.e[1][2] * &h)
    })
}

/// Density of `charge`; `I_set^(-n/2)` is the `z^(-n)` coefficient of the generating function.
pub fn charge_density(charge: Charge) -> Result<ChargeDensity> {
    let generated = |set: u8, order: i32| -> Result<Expr> { Ok(generating_function(set, order)?.z_coeff(-order)) };
    let density = match charge {
        Charge::Generated { set, order } => generated(set, order)?,
        Charge::Momentum => &generated(1, 1)? + &generated(2, 1)?,
        Charge::Energy => &generated(1, 3)? + &generated(2, 3)?,
    };
    Ok(ChargeDensity { charge, density })
}

/// The local flux `F` with `d_x F = d_t density` modulo the equations of motion.
pub fn conservation_check(density: &ChargeDensity, flow: Flow) -> Result<Expr> {
    let eom = published_eom(flow)?;
    let dt = eom.rewrite(&density.density.d_dt(flow)?)?;
    antiderivative_x(&dt).ok_or_else(|| ChargeError::NotConserved(density.charge.to_string(), flow))
}
