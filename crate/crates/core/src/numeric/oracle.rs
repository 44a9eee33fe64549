//! Identities certified zero by the symbolic engine, checked numerically before
//! any rewriting, and mutated versions that must not vanish.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::atom::{Atom, Field, Flow};
use crate::backlund::{build_k, derive_bt, gauge_residual, BtSystem, T3_F1_PRINTED};
use crate::charges::{charge_density, conservation_check, Charge, ENERGY_FLUX_T3_PRINTED};
use crate::defects::{boundary_rate, defect_term};
use crate::expr::{Expr, Monomial};
use crate::formula::ex;
use crate::hierarchy::{build_at, build_ax, published_eom, z_components};
use crate::rewrite::RewriteSystem;
use crate::scalar::Scalar;
use crate::superalgebra::SuperMatrix;

use super::{EvalAssignment, Result, DEFAULT_GENERATORS};

/// Components that vanish once the atoms eliminated by `rules` take the
/// values of their replacements.
#[derive(Clone, Debug)]
pub struct Certificate {
    pub name: String,
    pub components: Vec<Expr>,
    pub rules: RewriteSystem,
}

impl Certificate {
    /// Largest component modulus over all entries for one seed.
    pub fn evaluate(&self, seed: u64, generators: usize) -> Result<f64> {
        let mut asg = EvalAssignment::<f64>::random(seed, generators).with_injection(&self.rules);
        self.components.iter().try_fold(0.0f64, |m, c| Ok(m.max(asg.eval(c)?.max_abs())))
    }

    /// Same components with the sign of the first component's dominant term
    /// flipped, ranked by `|coefficient| / 2^(even degree)`.
    pub fn sign_flipped(&self) -> Certificate {
        let weight = |m: &Monomial, c: &Scalar| {
            let (re, im) = c.to_complex_f64();
            let degree: i32 = m.evens().iter().filter(|(a, _)| a.field != Field::Omega).map(|(_, p)| p.abs()).sum();
            re.hypot(im) * 0.5f64.powi(degree)
        };
        let mut components = self.components.clone();
        if let Some(first) = components.first_mut() {
            let top = first
                .terms()
                .max_by(|a, b| weight(a.0, a.1).total_cmp(&weight(b.0, b.1)))
                .map(|(m, c)| Expr::term(c.clone(), m.clone()));
            if let Some(t) = top {
                *first = &*first - &t.scale_int(2);
            }
        }
        Certificate { name: format!("{} (sign flip)", self.name), components, rules: self.rules.clone() }
    }

    fn with_rule(&self, label: &str, a: Atom, replacement: Expr) -> Certificate {
        let mut rules = self.rules.clone();
        rules.set_rule(a, replacement);
        Certificate { name: format!("{} ({label})", self.name), components: self.components.clone(), rules }
    }
}

fn raw_zero_curvature(flow: Flow) -> Result<Vec<Expr>> {
    let (ax, at) = (build_ax(), build_at(flow));
    let r = &(&at.d_dx() - &ax.d_dt(flow)?) + &ax.commutator(&at);
    Ok(z_components(&r))
}

fn zero_curvature(flow: Flow) -> Result<Certificate> {
    Ok(Certificate { name: format!("zero-curvature {flow}"), components: raw_zero_curvature(flow)?, rules: published_eom(flow)? })
}

fn gauge(k: &SuperMatrix, bt: &BtSystem) -> Result<Certificate> {
    Ok(Certificate {
        name: format!("defect gauge {}", bt.flow),
        components: z_components(&gauge_residual(k, bt.flow)?),
        rules: bt.full()?,
    })
}

fn conservation(charge: Charge, flow: Flow, flux: Option<&str>) -> Result<Certificate> {
    let d = charge_density(charge)?;
    let f = match flux {
        Some(src) => ex(src),
        None => conservation_check(&d, flow)?,
    };
    Ok(Certificate {
        name: format!("conservation {charge} {flow}"),
        components: vec![&d.density.d_dt(flow)? - &f.d_dx()],
        rules: published_eom(flow)?,
    })
}

fn modified(charge: Charge, bt: &BtSystem, defect: Option<Expr>) -> Result<Certificate> {
    let d = match defect {
        Some(d) => d,
        None => defect_term(charge, &bt.spatial)?,
    };
    let rate = boundary_rate(charge, bt)?;
    Ok(Certificate {
        name: format!("modified {charge} {}", bt.flow),
        components: vec![&rate - &d.d_dt(bt.flow)?],
        rules: bt.full()?,
    })
}

/// Transformations for `x`, `t3`, `t5`.
#[derive(Clone)]
pub struct Systems {
    pub t1: BtSystem,
    pub t3: BtSystem,
    pub t5: BtSystem,
}

impl Systems {
    pub fn derive() -> Result<Systems> {
        Ok(Systems { t1: derive_bt(Flow::T1)?, t3: derive_bt(Flow::T3)?, t5: derive_bt(Flow::T5)? })
    }
}

/// Every identity of the campaign.
pub fn certificates(sys: &Systems) -> Result<Vec<Certificate>> {
    let k = build_k();
    let mut out = vec![zero_curvature(Flow::T3)?, zero_curvature(Flow::T5)?, zero_curvature(Flow::Tm1)?];
    for bt in [&sys.t1, &sys.t3, &sys.t5] {
        out.push(gauge(&k, bt)?);
    }
    for (c, f) in [(Charge::Momentum, Flow::T3), (Charge::Momentum, Flow::T5), (Charge::Energy, Flow::T3), (Charge::Energy, Flow::T5)] {
        out.push(conservation(c, f, None)?);
    }
    out.push(modified(Charge::Momentum, &sys.t3, None)?);
    out.push(modified(Charge::Energy, &sys.t3, None)?);
    out.push(modified(Charge::Momentum, &sys.t5, None)?);
    Ok(out)
}

/// Twenty deliberately broken identities.
pub fn mutations(sys: &Systems, certs: &[Certificate]) -> Result<Vec<Certificate>> {
    let mut out: Vec<Certificate> = certs.iter().map(Certificate::sign_flipped).collect();
    let phi_t3 = Atom::time_jet(Field::Phi, 0, Flow::T3);
    let psb_t5 = Atom::time_jet(Field::Psb, 0, Flow::T5);
    let f1_t3 = Atom::time_jet(Field::F1, 0, Flow::T3);
    let psbm = Atom::jet(Field::PsbM, 0);
    let zc3 = &certs[0];
    let shifted = |rs: &RewriteSystem, a: Atom, extra: &str| -> Expr {
        &rs.replacement(a).cloned().unwrap_or_else(Expr::zero) + &ex(extra)
    };
    out.push(zc3.with_rule("phi_t3 + phi_1^3", phi_t3, shifted(&zc3.rules, phi_t3, "phi_1^3")));
    out.push(certs[1].with_rule("psb_t5 + psb_1", psb_t5, shifted(&certs[1].rules, psb_t5, "psb_1")));
    let g3 = &certs[4];
    out.push(g3.with_rule("printed f1_t3", f1_t3, ex(T3_F1_PRINTED).scale(&Scalar::frac(1, 4))));
    let g1 = &certs[3];
    out.push(g1.with_rule("psbm sign", psbm, -&g1.rules.replacement(psbm).cloned().unwrap_or_else(Expr::zero)));
    let mut k = build_k();
    k.e[2][2] = ex("3/w^2 + z");
    let mut perturbed = gauge(&k, &sys.t1)?;
    perturbed.name.push_str(" (K33 perturbed)");
    out.push(perturbed);
    let mut printed = conservation(Charge::Energy, Flow::T3, Some(ENERGY_FLUX_T3_PRINTED))?;
    printed.name.push_str(" (printed flux)");
    out.push(printed);
    let mut wrong = modified(Charge::Momentum, &sys.t3, Some(ex("3/w^2*cosh(phip) - 2*i/w*cosh(phip/2)*f1*psbp")))?;
    wrong.name.push_str(" (P_D coefficient 3)");
    out.push(wrong);
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OracleRow {
    pub name: String,
    /// Largest residual over the seeds.
    pub worst: f64,
    /// Smallest residual over the seeds.
    pub best: f64,
    /// Seeds whose residual exceeds the mutation threshold.
    pub above_threshold: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OracleReport {
    pub seeds: usize,
    pub zero_tolerance: f64,
    pub mutation_threshold: f64,
    pub certified: Vec<OracleRow>,
    pub mutated: Vec<OracleRow>,
}

impl OracleReport {
    pub fn certified_pass(&self) -> bool {
        self.certified.iter().all(|r| r.worst < self.zero_tolerance)
    }

    /// Every mutation exceeds the threshold on at least `min_seeds` seeds.
    pub fn mutations_pass(&self, min_seeds: usize) -> bool {
        self.mutated.iter().all(|r| r.above_threshold >= min_seeds)
    }
}

fn sweep(c: &Certificate, seeds: &[u64], threshold: f64) -> Result<OracleRow> {
    let vals = seeds.par_iter().map(|&s| c.evaluate(s, DEFAULT_GENERATORS)).collect::<Result<Vec<f64>>>()?;
    Ok(OracleRow {
        name: c.name.clone(),
        worst: vals.iter().copied().fold(0.0, f64::max),
        best: vals.iter().copied().fold(f64::INFINITY, f64::min),
        above_threshold: vals.iter().filter(|v| **v > threshold).count(),
    })
}

/// Evaluates every certificate and mutation on `seeds` seeds derived from `base_seed`.
pub fn run_oracle(base_seed: u64, seeds: usize) -> Result<OracleReport> {
    run_oracle_with(&Systems::derive()?, base_seed, seeds)
}

/// [`run_oracle`] with transformations derived beforehand.
pub fn run_oracle_with(sys: &Systems, base_seed: u64, seeds: usize) -> Result<OracleReport> {
    let certs = certificates(sys)?;
    let muts = mutations(sys, &certs)?;
    let seed_list: Vec<u64> = (0..seeds as u64).map(|k| base_seed.wrapping_add(k)).collect();
    let (zero_tolerance, mutation_threshold) = (1e-8, 1e-4);
    let certified = certs.iter().map(|c| sweep(c, &seed_list, mutation_threshold)).collect::<Result<_>>()?;
    let mutated = muts.iter().map(|c| sweep(c, &seed_list, mutation_threshold)).collect::<Result<_>>()?;
    Ok(OracleReport { seeds, zero_tolerance, mutation_threshold, certified, mutated })
}
