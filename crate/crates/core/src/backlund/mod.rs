//! Type-I defect matrix and the Bäcklund transformations it generates.

use thiserror::Error;

use crate::atom::{Atom, Field, Flow};
use crate::expr::{Expr, ExprError};
use crate::formula::ex;
use crate::hierarchy::{build_at, published_eom, solve_linear, z_components, HierarchyError};
use crate::rewrite::{RewriteError, RewriteSystem, Substitution};
use crate::superalgebra::SuperMatrix;

mod checks;
mod published;
mod superfield;

pub use checks::*;
pub use published::*;
pub use superfield::*;

#[derive(Debug, Error)]
pub enum BacklundError {
    #[error("gauge residual cannot be solved: {0}")]
    Inconsistent(String),
    #[error("flow {0} has no Bäcklund transformation here")]
    UnsupportedFlow(Flow),
    #[error(transparent)]
    Hierarchy(#[from] HierarchyError),
    #[error(transparent)]
    Rewrite(#[from] RewriteError),
    #[error(transparent)]
    Expr(#[from] ExprError),
}

pub type Result<T> = std::result::Result<T, BacklundError>;

const K: [[&str; 3]; 3] = [
    ["z", "-2/w^2*exp(phip)/z", "-2*si/w*exp(phip/2)*f1"],
    ["-2/w^2*exp(-phip)*z", "z", "-2*si/w*exp(-phip/2)*f1*z"],
    ["2*si/w*exp(-phip/2)*f1*z", "2*si/w*exp(phip/2)*f1", "2/w^2 + z"],
];

/// The defect matrix in `phip`, `f1` and the parameter `w`.
pub fn build_k() -> SuperMatrix {
    SuperMatrix::from_fn(|r, c| ex(K[r][c]))
}

/// `phi -> (phip + s phim)/2`, `psb -> (psbp + s psbm)/2` for copy `s = +1` or `-1`.
pub fn copy(sign: i64) -> Substitution {
    let half = |p: &str, m: &str| ex(&format!("({p} + ({sign})*{m})/2"));
    Substitution::new().with(Field::Phi, half("phip", "phim")).with(Field::Psb, half("psbp", "psbm"))
}

/// Lax matrix of `flow` for both field copies, in `+`/`-` variables.
pub fn lax_pair(flow: Flow) -> Result<(SuperMatrix, SuperMatrix)> {
    let a = build_at(flow);
    Ok((a.substitute(&copy(1))?, a.substitute(&copy(-1))?))
}

/// `d_t K - K A(1) + A(2) K` without any reduction; `T1` is the x direction.
pub fn gauge_residual(k: &SuperMatrix, flow: Flow) -> Result<SuperMatrix> {
    let (a1, a2) = lax_pair(flow)?;
    let dk = if flow == Flow::T1 { k.d_dx() } else { k.d_dt(flow)? };
    Ok(&(&dk - &(k * &a1)) + &(&a2 * k))
}

fn rules(src: &[(&str, &str)]) -> Result<RewriteSystem> {
    let mut rs = RewriteSystem::new();
    for (t, v) in src {
        let a = crate::atom::parse_atom(t).ok_or_else(|| BacklundError::Inconsistent(format!("bad atom {t}")))?;
        rs.add_rule(a, ex(v))?;
    }
    Ok(rs)
}

pub fn published_spatial() -> Result<RewriteSystem> {
    rules(&SPATIAL_BT)
}

fn is_spatial_unknown(a: Atom) -> bool {
    a.dt.is_none()
        && match a.field {
            Field::PhiM | Field::F1 => a.dx >= 1,
            Field::PsbM => true,
            _ => false,
        }
}

/// Bulk equations of motion of both copies as rules for `phip`, `psbp` time jets,
/// reduced by `spatial`.
pub fn bulk_rules(flow: Flow, spatial: &RewriteSystem) -> Result<RewriteSystem> {
    let eom = published_eom(flow)?;
    let mut out = RewriteSystem::new();
    for (plus, field) in [(Field::PhiP, Field::Phi), (Field::PsbP, Field::Psb)] {
        let v = eom
            .replacement(Atom::time_jet(field, 0, flow))
            .ok_or_else(|| HierarchyError::MissingRule(format!("{field:?}")))?;
        let sum = &copy(1).apply(v)? + &copy(-1).apply(v)?;
        out.add_rule(Atom::time_jet(plus, 0, flow), spatial.rewrite(&sum)?)?;
    }
    Ok(out)
}

/// Copy-2 equation `d_t phi2` in `+`/`-` variables, reduced by `spatial`.
fn copy2_phi_rule(flow: Flow, spatial: &RewriteSystem) -> Result<Expr> {
    let eom = published_eom(flow)?;
    let v = eom
        .replacement(Atom::time_jet(Field::Phi, 0, flow))
        .ok_or_else(|| HierarchyError::MissingRule("phi".into()))?;
    Ok(spatial.rewrite(&copy(-1).apply(v)?)?)
}

/// Rules of a Bäcklund transformation split by origin.
#[derive(Clone, Debug)]
pub struct BtSystem {
    pub flow: Flow,
    /// `phim_1`, `psbm`, `f1_1`.
    pub spatial: RewriteSystem,
    /// `phim_t`, `f1_t`, `psbm_t`; empty for the x direction.
    pub temporal: RewriteSystem,
    /// `phip_t`, `psbp_t` from the bulk equations of both copies.
    pub bulk: RewriteSystem,
}

impl BtSystem {
    pub fn full(&self) -> Result<RewriteSystem> {
        Ok(self.spatial.union(&self.temporal)?.union(&self.bulk)?)
    }

    /// `d_t phim` for time flows, `d_x phim` otherwise.
    pub fn phim_rule(&self) -> Option<&Expr> {
        match self.flow {
            Flow::T1 => self.spatial.replacement(Atom::jet(Field::PhiM, 1)),
            f => self.temporal.replacement(Atom::time_jet(Field::PhiM, 0, f)),
        }
    }

    pub fn f1_rule(&self) -> Option<&Expr> {
        match self.flow {
            Flow::T1 => self.spatial.replacement(Atom::jet(Field::F1, 1)),
            f => self.temporal.replacement(Atom::time_jet(Field::F1, 0, f)),
        }
    }
}

/// Solves the gauge condition of `flow` (`T1` is the x direction).
///
/// The condition contains `d_t phip` and `d_t f1`. The first must agree with
/// the bulk equations; `d_t phim = d_t phip - 2 d_t phi2` and `psbm_t`
/// follows from the spatial rule.
pub fn derive_bt(flow: Flow) -> Result<BtSystem> {
    let k = build_k();
    let spatial = solve(&gauge_residual(&k, Flow::T1)?, &is_spatial_unknown, &RewriteSystem::new())?;
    if flow == Flow::T1 {
        return Ok(BtSystem { flow, spatial, temporal: RewriteSystem::new(), bulk: RewriteSystem::new() });
    }
    if !matches!(flow, Flow::T3 | Flow::T5) {
        return Err(BacklundError::UnsupportedFlow(flow));
    }
    let bulk = bulk_rules(flow, &spatial)?;
    let is_t = |a: Atom| a.dt == Some(flow) && a.dx == 0 && matches!(a.field, Field::PhiP | Field::F1);
    let solved = solve(&gauge_residual(&k, flow)?, &is_t, &spatial)?;
    let get = |f: Field| {
        solved
            .replacement(Atom::time_jet(f, 0, flow))
            .cloned()
            .ok_or_else(|| BacklundError::Inconsistent(format!("no rule for {} in flow {flow}", f.label())))
    };
    let phip_t = get(Field::PhiP)?;
    let from_bulk = bulk.replacement(Atom::time_jet(Field::PhiP, 0, flow)).cloned().unwrap_or_default();
    if phip_t != from_bulk {
        return Err(BacklundError::Inconsistent(format!("d_t phip disagrees with the bulk equations: {}", &phip_t - &from_bulk)));
    }
    let phim_t = &phip_t - &copy2_phi_rule(flow, &spatial)?.scale_int(2);
    let psbm = spatial.replacement(Atom::jet(Field::PsbM, 0)).cloned().unwrap_or_default();
    let mut temporal = RewriteSystem::new();
    temporal.add_rule(Atom::time_jet(Field::PhiM, 0, flow), phim_t)?;
    temporal.add_rule(Atom::time_jet(Field::F1, 0, flow), get(Field::F1)?)?;
    temporal.add_rule(Atom::time_jet(Field::PsbM, 0, flow), psbm.d_dt(flow)?)?;
    let temporal = temporal.closed_against(&spatial.union(&bulk)?)?;
    Ok(BtSystem { flow, spatial, temporal, bulk })
}

fn solve(r: &SuperMatrix, unknown: &dyn Fn(Atom) -> bool, known: &RewriteSystem) -> Result<RewriteSystem> {
    solve_linear(&z_components(r), unknown, known).map_err(|e| match e {
        HierarchyError::NotSolvable(s) => BacklundError::Inconsistent(s),
        other => other.into(),
    })
}

/// Gauge residual of `K` reduced by every rule of `bt`; zero iff `K` intertwines the two copies.
pub fn verify_gauge(k: &SuperMatrix, bt: &BtSystem) -> Result<SuperMatrix> {
    Ok(gauge_residual(k, bt.flow)?.rewrite(&bt.full()?)?)
}

/// `d_x (d_t a) - d_t (d_x a)` for `a = phim` and `a = f1`, reduced.
pub fn cross_consistency(bt: &BtSystem) -> Result<Vec<(Field, Expr)>> {
    let full = bt.full()?;
    let mut out = Vec::new();
    for f in [Field::PhiM, Field::F1] {
        let xt = bt.temporal.replacement(Atom::time_jet(f, 0, bt.flow)).cloned().unwrap_or_default().d_dx();
        let tx = bt.spatial.replacement(Atom::jet(f, 1)).cloned().unwrap_or_default().d_dt(bt.flow)?;
        out.push((f, full.rewrite(&(&xt - &tx))?));
    }
    Ok(out)
}

/// Supersymmetry variation of both copies, with `delta f1` given by `f1_var`.
fn susy_image(a: Atom, f1_var: &Expr) -> Result<Expr> {
    let bare = match a.field {
        Field::PhiP => ex("si*eps*psbp"),
        Field::PhiM => ex("si*eps*psbm"),
        Field::PsbP => ex("eps*phip_1/si"),
        Field::PsbM => ex("eps*phim_1/si"),
        Field::F1 => f1_var.clone(),
        _ => return Ok(Expr::zero()),
    };
    let with_t = match a.dt {
        Some(f) => bare.d_dt(f)?,
        None => bare,
    };
    Ok(with_t.d_dx_n(usize::from(a.dx)))
}

/// Variation of the auxiliary fermion that leaves the transformation invariant.
pub const F1_VARIATION: &str = "2*eps/(w*si)*sinh(phip/2)";

/// `delta(target) - delta(value)` for every rule of `bt`, reduced by `bt`.
pub fn susy_check_with(bt: &BtSystem, f1_var: &Expr) -> Result<Vec<(Atom, Expr)>> {
    let full = bt.full()?;
    let mut out = Vec::new();
    for rs in [&bt.spatial, &bt.temporal] {
        for (t, v) in rs.rules() {
            let mut err = None;
            let dv = v.derive_with(&mut |a| {
                susy_image(a, f1_var).unwrap_or_else(|e| {
                    err = Some(e);
                    Expr::zero()
                })
            });
            if let Some(e) = err {
                return Err(e);
            }
            out.push((t, full.rewrite(&(&susy_image(t, f1_var)? - &dv))?));
        }
    }
    Ok(out)
}

pub fn susy_check(bt: &BtSystem) -> Result<Vec<(Atom, Expr)>> {
    susy_check_with(bt, &ex(F1_VARIATION))
}

/// `sum_k coeff[k] * unit`, as in the published layout.
pub fn assemble(coeffs: &[&str], units: &[(usize, &str)]) -> Expr {
    units.iter().map(|(k, u)| &ex(coeffs[*k]) * &ex(u)).sum()
}

/// Coefficient of `unit` (a single term) in `e`: terms with the same odd
/// factors and the same power of `w`, divided by `unit`.
pub fn coefficient(e: &Expr, unit: &Expr) -> Option<Expr> {
    let (um, uc) = unit.terms().next()?;
    let inv = uc.inverse().ok()?;
    let w = Atom::jet(Field::Omega, 0);
    let mut out = Expr::zero();
    for (m, c) in e.terms() {
        if m.odds() != um.odds() || m.power_of(w) != um.power_of(w) {
            continue;
        }
        let mut even = m.clone();
        even.odds.clear();
        even.evens.retain(|(a, _)| *a != w);
        out.add_term(even, c * &inv);
    }
    Some(out)
}
