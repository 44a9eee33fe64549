//! Sparse exact elimination over [`Scalar`], with vectors indexed by monomials.

use std::collections::BTreeMap;

use crate::expr::{Expr, Monomial};
use crate::scalar::Scalar;

/// Incremental echelon basis of a span of expressions.
///
/// Each stored vector has a distinct leading monomial and remembers how it
/// was assembled from the inserted generators.
#[derive(Default)]
pub struct Echelon {
    rows: BTreeMap<Monomial, (Expr, BTreeMap<usize, Scalar>)>,
    count: usize,
}

fn lead(e: &Expr) -> Option<(Monomial, Scalar)> {
    e.terms().next_back().map(|(m, c)| (m.clone(), c.clone()))
}

fn axpy(acc: &mut BTreeMap<usize, Scalar>, f: &Scalar, x: &BTreeMap<usize, Scalar>) {
    for (k, v) in x {
        let e = acc.entry(*k).or_insert_with(|| Scalar::from(0));
        *e -= &(f * v);
    }
    acc.retain(|_, v| !v.is_zero());
}

impl Echelon {
    pub fn new() -> Self {
        Echelon::default()
    }

    /// Reduces `v` against the basis; returns remainder and the combination of
    /// generators subtracted.
    fn reduce(&self, mut v: Expr, mut combo: BTreeMap<usize, Scalar>) -> (Expr, BTreeMap<usize, Scalar>) {
        let mut done = Expr::zero();
        while let Some((m, c)) = lead(&v) {
            match self.rows.get(&m) {
                Some((row, rc)) => {
                    let (_, rl) = lead(row).expect("stored rows are nonzero");
                    let f = &c * &rl.inverse().expect("nonzero lead");
                    v = &v - &row.scale(&f);
                    axpy(&mut combo, &f, rc);
                }
                None => {
                    done.add_term(m.clone(), c.clone());
                    v = &v - &Expr::term(c, m);
                }
            }
        }
        (done, combo)
    }

    /// Inserts a generator and returns its index.
    pub fn insert(&mut self, v: &Expr) -> usize {
        let idx = self.count;
        self.count += 1;
        let mut combo = BTreeMap::new();
        combo.insert(idx, Scalar::from(1));
        let (rem, combo) = self.reduce_full(v.clone(), combo);
        if let Some((m, _)) = lead(&rem) {
            self.rows.insert(m, (rem, combo));
        }
        idx
    }

    /// Full reduction keeping the remainder in the original variables.
    fn reduce_full(&self, v: Expr, combo: BTreeMap<usize, Scalar>) -> (Expr, BTreeMap<usize, Scalar>) {
        let mut v = v;
        let mut combo = combo;
        loop {
            let hit = v.terms().rev().find(|(m, _)| self.rows.contains_key(*m)).map(|(m, c)| (m.clone(), c.clone()));
            let Some((m, c)) = hit else { return (v, combo) };
            let (row, rc) = &self.rows[&m];
            let (_, rl) = lead(row).expect("stored rows are nonzero");
            let f = &c * &rl.inverse().expect("nonzero lead");
            v = &v - &row.scale(&f);
            // row = sum rc_k g_k, so v - f*row keeps v = (combo) . g
            for (k, x) in rc {
                let e = combo.entry(*k).or_insert_with(|| Scalar::from(0));
                *e -= &(&f * x);
            }
            combo.retain(|_, x| !x.is_zero());
        }
    }

    /// Coefficients `x` with `sum x_k g_k = target`, if the target is in the span.
    pub fn solve(&self, target: &Expr) -> Option<BTreeMap<usize, Scalar>> {
        let (rem, combo) = self.reduce(target.clone(), BTreeMap::new());
        if !rem.is_zero() {
            return None;
        }
        // reduce subtracted f * row = f * sum rc g, recorded as -f rc
        Some(combo.into_iter().map(|(k, v)| (k, -v)).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::ex;

    #[test]
    fn solves_small_system() {
        let gens = [ex("phi_1 + phi_2"), ex("phi_2 - psb*psb_1"), ex("2*phi_1 + 3*phi_2 - psb*psb_1")];
        let mut ech = Echelon::new();
        for g in &gens {
            ech.insert(g);
        }
        let target = ex("5*phi_1 + 7*phi_2 - 2*psb*psb_1");
        let x = ech.solve(&target).unwrap();
        let rebuilt: Expr = x.iter().map(|(k, v)| gens[*k].scale(v)).sum();
        assert_eq!(rebuilt, target);
        assert!(ech.solve(&ex("phi_3")).is_none());
    }
}
