//! Oriented substitution rules with automatic x-prolongation, and field-level
//! changes of variables.

use std::collections::{BTreeMap, HashMap};
use std::sync::Mutex;

use thiserror::Error;

use crate::atom::{Atom, Field, Flow};
use crate::expr::{Expr, ExprError, Monomial};
use crate::scalar::Scalar;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RewriteError {
    #[error("rewriting did not terminate within depth {0}")]
    NonTerminating(usize),
    #[error("two rules target the tower of `{0}`")]
    DuplicateTarget(String),
    #[error(transparent)]
    Expr(#[from] ExprError),
}

type TowerKey = (Field, Option<Flow>);

/// A set of rules `target -> replacement`. A rule for the jet `d_x^k a`
/// also rewrites every higher x-derivative of `a` by differentiating.
pub struct RewriteSystem {
    rules: BTreeMap<TowerKey, (u8, Expr)>,
    max_depth: usize,
    cache: Mutex<HashMap<Atom, Expr>>,
}

impl Clone for RewriteSystem {
    fn clone(&self) -> Self {
        RewriteSystem { rules: self.rules.clone(), max_depth: self.max_depth, cache: Mutex::new(HashMap::new()) }
    }
}

impl Default for RewriteSystem {
    fn default() -> Self {
        RewriteSystem::new()
    }
}

impl std::fmt::Debug for RewriteSystem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_map().entries(self.rules()).finish()
    }
}

impl RewriteSystem {
    pub const DEFAULT_DEPTH: usize = 64;

    pub fn new() -> Self {
        RewriteSystem { rules: BTreeMap::new(), max_depth: Self::DEFAULT_DEPTH, cache: Mutex::new(HashMap::new()) }
    }

    pub fn with_max_depth(mut self, depth: usize) -> Self {
        self.max_depth = depth;
        self
    }

    pub fn add_rule(&mut self, target: Atom, replacement: Expr) -> Result<(), RewriteError> {
        let key = (target.field, target.dt);
        if self.rules.contains_key(&key) {
            return Err(RewriteError::DuplicateTarget(target.to_string()));
        }
        self.rules.insert(key, (target.dx, replacement));
        self.cache.lock().expect("cache poisoned").clear();
        Ok(())
    }

    /// Builder form of [`add_rule`](Self::add_rule).
    pub fn rule(mut self, target: Atom, replacement: Expr) -> Result<Self, RewriteError> {
        self.add_rule(target, replacement)?;
        Ok(self)
    }

    /// Replaces an existing rule or adds a new one.
    pub fn set_rule(&mut self, target: Atom, replacement: Expr) {
        self.rules.insert((target.field, target.dt), (target.dx, replacement));
        self.cache.lock().expect("cache poisoned").clear();
    }

    pub fn remove_tower(&mut self, field: Field, dt: Option<Flow>) {
        self.rules.remove(&(field, dt));
        self.cache.lock().expect("cache poisoned").clear();
    }

    /// Rules of both systems; fails on a shared target tower.
    pub fn union(&self, other: &RewriteSystem) -> Result<RewriteSystem, RewriteError> {
        let mut out = self.clone();
        for (t, r) in other.rules() {
            out.add_rule(t, r.clone())?;
        }
        Ok(out)
    }

    pub fn rules(&self) -> impl Iterator<Item = (Atom, &Expr)> {
        self.rules.iter().map(|((f, dt), (dx, e))| (Atom { field: *f, dx: *dx, dt: *dt }, e))
    }

    pub fn replacement(&self, target: Atom) -> Option<&Expr> {
        self.rules.get(&(target.field, target.dt)).filter(|(dx, _)| *dx == target.dx).map(|(_, e)| e)
    }

    pub fn is_target(&self, a: Atom) -> bool {
        self.rules.get(&(a.field, a.dt)).is_some_and(|(dx, _)| a.dx >= *dx)
    }

    fn reduced_atom(&self, a: Atom, depth: usize) -> Result<Expr, RewriteError> {
        if let Some(e) = self.cache.lock().expect("cache poisoned").get(&a) {
            return Ok(e.clone());
        }
        if depth > self.max_depth {
            return Err(RewriteError::NonTerminating(self.max_depth));
        }
        let (dx0, repl) = &self.rules[&(a.field, a.dt)];
        let raw = if a.dx == *dx0 {
            repl.clone()
        } else {
            self.reduced_atom(Atom { dx: a.dx - 1, ..a }, depth + 1)?.d_dx()
        };
        let out = self.rewrite_at(&raw, depth + 1)?;
        self.cache.lock().expect("cache poisoned").insert(a, out.clone());
        Ok(out)
    }

    fn rewrite_at(&self, e: &Expr, depth: usize) -> Result<Expr, RewriteError> {
        let mut out = Expr::zero();
        for (m, c) in e.terms() {
            if !m.atoms().any(|a| self.is_target(a)) {
                out.add_term(m.clone(), c.clone());
                continue;
            }
            let mut base = Monomial::one();
            base.exps = m.exps.clone();
            base.zpow = m.zpow;
            let mut acc = Expr::term(c.clone(), Monomial::one());
            for (a, p) in &m.evens {
                if self.is_target(*a) {
                    let r = self.reduced_atom(*a, depth)?;
                    acc = &acc * &r.powi(*p)?;
                } else {
                    base.evens.push((*a, *p));
                }
            }
            acc = acc.mul_monomial(&base, &Scalar::from(1));
            for a in &m.odds {
                let f = if self.is_target(*a) { self.reduced_atom(*a, depth)? } else { Expr::atom(*a) };
                acc = &acc * &f;
                if acc.is_zero() {
                    break;
                }
            }
            out += acc;
        }
        Ok(out)
    }

    /// Eliminates every target atom. The result is a fixpoint.
    pub fn rewrite(&self, e: &Expr) -> Result<Expr, RewriteError> {
        self.rewrite_at(e, 0)
    }

    /// Pre-reduces all replacements against the whole system.
    pub fn closed(&self) -> Result<RewriteSystem, RewriteError> {
        let mut out = RewriteSystem::new().with_max_depth(self.max_depth);
        for (t, _) in self.rules() {
            out.add_rule(t, self.reduced_atom(t, 0)?)?;
        }
        Ok(out)
    }

    /// Own rules with replacements fully reduced by `self` and `other` together.
    pub fn closed_against(&self, other: &RewriteSystem) -> Result<RewriteSystem, RewriteError> {
        let all = self.union(other)?.with_max_depth(self.max_depth);
        let mut out = RewriteSystem::new().with_max_depth(self.max_depth);
        for (t, _) in self.rules() {
            out.add_rule(t, all.reduced_atom(t, 0)?)?;
        }
        Ok(out)
    }
}

/// Substitution of whole fields by expressions, e.g. `phi1 -> (phip + phim)/2`.
///
/// Jets are prolonged by differentiating the value; exponentials require a
/// value that is a half-integer combination of bare fields.
#[derive(Clone, Debug, Default)]
pub struct Substitution {
    map: BTreeMap<Field, Expr>,
}

impl Substitution {
    pub fn new() -> Self {
        Substitution::default()
    }

    pub fn with(mut self, f: Field, value: Expr) -> Self {
        self.map.insert(f, value);
        self
    }

    /// Pure relabelling of fields.
    pub fn relabel(pairs: &[(Field, Field)]) -> Self {
        pairs.iter().fold(Substitution::new(), |s, (a, b)| s.with(*a, Expr::jet(*b, 0)))
    }

    fn atom_value(&self, a: Atom) -> Result<Option<Expr>, ExprError> {
        let Some(v) = self.map.get(&a.field) else { return Ok(None) };
        let mut e = v.clone();
        if let Some(flow) = a.dt {
            e = e.d_dt(flow)?;
        }
        Ok(Some(e.d_dx_n(usize::from(a.dx))))
    }

    pub fn apply(&self, e: &Expr) -> Result<Expr, ExprError> {
        let mut cache: HashMap<Atom, Option<Expr>> = HashMap::new();
        let mut out = Expr::zero();
        for (m, c) in e.terms() {
            let mut base = Monomial::one();
            base.zpow = m.zpow;
            let mut acc = Expr::scalar(c.clone());
            for (f, h) in &m.exps {
                match self.map.get(f) {
                    Some(v) => acc = &acc * &Expr::exp_of(&v.scale(&Scalar::frac(i64::from(*h), 2)))?,
                    None => base.exps.push((*f, *h)),
                }
            }
            for (a, p) in &m.evens {
                if !cache.contains_key(a) {
                    cache.insert(*a, self.atom_value(*a)?);
                }
                match &cache[a] {
                    Some(v) => acc = &acc * &v.powi(*p)?,
                    None => base.evens.push((*a, *p)),
                }
            }
            base.exps.sort();
            acc = acc.mul_monomial(&base, &Scalar::from(1));
            for a in &m.odds {
                if !cache.contains_key(a) {
                    cache.insert(*a, self.atom_value(*a)?);
                }
                let f = cache[a].clone().unwrap_or_else(|| Expr::atom(*a));
                acc = &acc * &f;
            }
            out += acc;
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::ex;

    fn bosonic_t3() -> RewriteSystem {
        RewriteSystem::new().rule(Atom::time_jet(Field::Phi, 0, Flow::T3), ex("phi_3/4 - phi_1^3/2")).unwrap()
    }

    #[test]
    fn time_jet_is_eliminated() {
        let rs = bosonic_t3();
        assert_eq!(rs.rewrite(&ex("phi_t3")).unwrap(), ex("phi_3/4 - phi_1^3/2"));
        let prolonged = rs.rewrite(&ex("phi_2_t3")).unwrap();
        assert_eq!(prolonged, ex("dx(phi_3/4 - phi_1^3/2, 2)"));
    }

    #[test]
    fn rewrite_is_idempotent_and_fixes_free_input() {
        let rs = bosonic_t3();
        let e = ex("phi_1_t3*psb + phi_2");
        let once = rs.rewrite(&e).unwrap();
        assert_eq!(rs.rewrite(&once).unwrap(), once);
        let free = ex("phi_3*psb_1");
        assert_eq!(rs.rewrite(&free).unwrap(), free);
    }

    #[test]
    fn chained_rules_close() {
        let rs = RewriteSystem::new()
            .rule(Atom::jet(Field::PsbM, 0), ex("4/w*cosh(phip/2)*f1"))
            .unwrap()
            .rule(Atom::jet(Field::F1, 1), ex("1/w*cosh(phip/2)*psbp"))
            .unwrap();
        let r = rs.rewrite(&ex("psbm_1")).unwrap();
        assert!(!r.contains_atom(|a| rs.is_target(a)));
        let closed = rs.closed().unwrap();
        assert_eq!(closed.rewrite(&ex("psbm_1")).unwrap(), r);
    }

    #[test]
    fn cyclic_rules_do_not_terminate() {
        let rs = RewriteSystem::new()
            .rule(Atom::jet(Field::Phi, 1), ex("phi1_1"))
            .unwrap()
            .rule(Atom::jet(Field::Phi1, 1), ex("phi_1"))
            .unwrap()
            .with_max_depth(10);
        assert_eq!(rs.rewrite(&ex("phi_1")), Err(RewriteError::NonTerminating(10)));
    }

    #[test]
    fn duplicate_tower_rejected() {
        let r = RewriteSystem::new().rule(Atom::jet(Field::Phi, 1), ex("1")).unwrap().rule(Atom::jet(Field::Phi, 2), ex("1"));
        assert!(matches!(r, Err(RewriteError::DuplicateTarget(_))));
    }

    #[test]
    fn change_of_variables() {
        let s = Substitution::new().with(Field::Phi1, ex("(phip + phim)/2")).with(Field::Psb1, ex("(psbp + psbm)/2"));
        assert_eq!(s.apply(&ex("phi1_2")).unwrap(), ex("(phip_2 + phim_2)/2"));
        assert_eq!(s.apply(&ex("exp(phi1)")).unwrap(), ex("exp(phip/2)*exp(phim/2)"));
        assert_eq!(s.apply(&ex("phi1_t3")).unwrap(), ex("(phip_t3 + phim_t3)/2"));
        assert_eq!(s.apply(&ex("psb1*psb1_1")).unwrap(), ex("(psbp + psbm)*(psbp_1 + psbm_1)/4"));
    }
}
