//! Floating-point evaluation of expressions in a finite exterior algebra,
//! plus bosonic soliton checks.

use std::collections::HashMap;
use std::ops::{Add, Mul, Sub};

use num_complex::Complex;
use num_traits::{Float, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::atom::{Atom, Field, ALL_FIELDS};
use crate::expr::Expr;
use crate::rewrite::{RewriteError, RewriteSystem};

mod oracle;
mod soliton;

pub use oracle::*;
pub use soliton::*;

pub const DEFAULT_GENERATORS: usize = 6;

#[derive(Debug, Error)]
pub enum NumericError {
    #[error("odd degree {degree} exceeds the {generators} exterior generators")]
    GeneratorExhaustion { degree: usize, generators: usize },
    #[error("finite differences not converged: estimated error {0:e}")]
    GridTooCoarse(f64),
    #[error("cannot invert an element with zero body")]
    Singular,
    #[error(transparent)]
    Rewrite(#[from] RewriteError),
    #[error(transparent)]
    Expr(#[from] crate::expr::ExprError),
    #[error(transparent)]
    Backlund(#[from] crate::backlund::BacklundError),
    #[error(transparent)]
    Charge(#[from] crate::charges::ChargeError),
    #[error(transparent)]
    Defect(#[from] crate::defects::DefectError),
    #[error(transparent)]
    Hierarchy(#[from] crate::hierarchy::HierarchyError),
}

pub type Result<T> = std::result::Result<T, NumericError>;

/// Element of the complex exterior algebra on `generators` odd generators;
/// component `mask` multiplies the ordered product of the generators in `mask`.
#[derive(Clone, Debug, PartialEq)]
pub struct ExteriorValue<F> {
    generators: usize,
    components: Vec<Complex<F>>,
}

fn wedge_sign(a: usize, b: usize) -> bool {
    let mut swaps = 0;
    let mut rest = b;
    while rest != 0 {
        let j = rest.trailing_zeros();
        swaps += (a >> (j + 1)).count_ones();
        rest &= rest - 1;
    }
    swaps % 2 == 1
}

impl<F: Float> ExteriorValue<F> {
    pub fn zero(generators: usize) -> Self {
        ExteriorValue { generators, components: vec![Complex::new(F::zero(), F::zero()); 1 << generators] }
    }

    pub fn scalar(generators: usize, c: Complex<F>) -> Self {
        let mut v = Self::zero(generators);
        v.components[0] = c;
        v
    }

    pub fn real(generators: usize, x: F) -> Self {
        Self::scalar(generators, Complex::new(x, F::zero()))
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    pub fn component(&self, mask: usize) -> Complex<F> {
        self.components[mask]
    }

    pub fn set_component(&mut self, mask: usize, c: Complex<F>) {
        self.components[mask] = c;
    }

    /// Degree-zero part.
    pub fn body(&self) -> Complex<F> {
        self.components[0]
    }

    fn nonzero(&self) -> impl Iterator<Item = (usize, Complex<F>)> + '_ {
        self.components.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(m, c)| (m, *c))
    }

    fn is_body_only(&self) -> bool {
        self.components[1..].iter().all(|c| c.is_zero())
    }

    pub fn max_abs(&self) -> F {
        self.components.iter().fold(F::zero(), |m, c| m.max(c.norm()))
    }

    pub fn scale(&self, c: Complex<F>) -> Self {
        ExteriorValue { generators: self.generators, components: self.components.iter().map(|x| *x * c).collect() }
    }

    /// Exterior product.
    pub fn wedge(&self, o: &Self) -> Self {
        if self.is_body_only() {
            return o.scale(self.body());
        }
        if o.is_body_only() {
            return self.scale(o.body());
        }
        let mut out = Self::zero(self.generators);
        let rhs: Vec<_> = o.nonzero().collect();
        for (a, ca) in self.nonzero() {
            for &(b, cb) in &rhs {
                if a & b != 0 {
                    continue;
                }
                let p = ca * cb;
                let slot = &mut out.components[a | b];
                *slot = if wedge_sign(a, b) { *slot - p } else { *slot + p };
            }
        }
        out
    }

    fn series(&self, first: impl Fn(Complex<F>) -> Complex<F>, coeff: impl Fn(usize, Complex<F>) -> Complex<F>) -> Self {
        let a = self.body();
        let mut n = self.clone();
        n.components[0] = Complex::new(F::zero(), F::zero());
        let mut out = Self::scalar(self.generators, first(a));
        let mut power = Self::real(self.generators, F::one());
        for k in 1..=self.generators {
            power = power.wedge(&n);
            out = &out + &power.scale(coeff(k, a));
        }
        out
    }

    /// `exp` of an even element: `e^a sum n^k / k!`.
    pub fn exp(&self) -> Self {
        let ea = self.body().exp();
        let mut fact = F::one();
        let facts: Vec<F> = (0..=self.generators)
            .map(|k| {
                if k > 0 {
                    fact = fact * F::from(k).unwrap();
                }
                fact
            })
            .collect();
        self.series(|_| ea, |k, _| ea / facts[k])
    }

    /// Inverse of an even element with nonzero body.
    pub fn inverse(&self) -> Result<Self> {
        if self.body().is_zero() {
            return Err(NumericError::Singular);
        }
        Ok(self.series(|a| a.inv(), |k, a| {
            let s = if k % 2 == 0 { F::one() } else { -F::one() };
            a.powi(-(k as i32 + 1)) * s
        }))
    }

    pub fn powi(&self, p: i32) -> Result<Self> {
        let base = if p < 0 { self.inverse()? } else { self.clone() };
        Ok((0..p.unsigned_abs()).fold(Self::real(self.generators, F::one()), |acc, _| acc.wedge(&base)))
    }
}

impl<'a, F: Float> Add<&'a ExteriorValue<F>> for &'a ExteriorValue<F> {
    type Output = ExteriorValue<F>;
    fn add(self, o: &ExteriorValue<F>) -> ExteriorValue<F> {
        let components = self.components.iter().zip(&o.components).map(|(a, b)| *a + *b).collect();
        ExteriorValue { generators: self.generators, components }
    }
}

impl<'a, F: Float> Sub<&'a ExteriorValue<F>> for &'a ExteriorValue<F> {
    type Output = ExteriorValue<F>;
    fn sub(self, o: &ExteriorValue<F>) -> ExteriorValue<F> {
        let components = self.components.iter().zip(&o.components).map(|(a, b)| *a - *b).collect();
        ExteriorValue { generators: self.generators, components }
    }
}

impl<'a, F: Float> Mul<&'a ExteriorValue<F>> for &'a ExteriorValue<F> {
    type Output = ExteriorValue<F>;
    fn mul(self, o: &ExteriorValue<F>) -> ExteriorValue<F> {
        self.wedge(o)
    }
}

fn atom_key(a: Atom) -> u64 {
    let field = ALL_FIELDS.iter().position(|f| *f == a.field).unwrap_or(0) as u64;
    let flow = a.dt.map_or(0, |f| f as u64 + 1);
    (field << 16) | (u64::from(a.dx) << 8) | flow
}

/// Random values for the free jets and, through an injected rewrite system,
/// consistent values for the jets it eliminates.
pub struct EvalAssignment<F> {
    pub seed: u64,
    pub generators: usize,
    pub omega: F,
    pub z: F,
    injected: Option<RewriteSystem>,
    derived: HashMap<Atom, Expr>,
    values: HashMap<Atom, ExteriorValue<F>>,
}

impl<F: Float> EvalAssignment<F> {
    pub fn random(seed: u64, generators: usize) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut param = || F::from(rng.gen_range(0.5..1.5)).unwrap();
        let (omega, z) = (param(), param());
        EvalAssignment { seed, generators, omega, z, injected: None, derived: HashMap::new(), values: HashMap::new() }
    }

    /// Atoms eliminated by `rules` take the value of their replacement.
    pub fn with_injection(mut self, rules: &RewriteSystem) -> Self {
        self.injected = Some(rules.clone());
        self
    }

    /// Fixes the value of one atom.
    pub fn set(&mut self, a: Atom, v: ExteriorValue<F>) {
        self.values.insert(a, v);
    }

    fn free_value(&self, a: Atom) -> ExteriorValue<F> {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ atom_key(a));
        let mut unit = || F::from(rng.gen_range(-1.0..1.0)).unwrap();
        let g = self.generators;
        if !a.is_odd() {
            return ExteriorValue::real(g, unit());
        }
        let mut v = ExteriorValue::zero(g);
        for mask in (1usize..1 << g).filter(|m| matches!(m.count_ones(), 1 | 3)) {
            v.components[mask] = Complex::new(unit(), F::zero());
        }
        v
    }

    pub fn value(&mut self, a: Atom) -> Result<ExteriorValue<F>> {
        if let Some(v) = self.values.get(&a) {
            return Ok(v.clone());
        }
        let v = if a.field == Field::Omega && a.dx == 0 {
            ExteriorValue::real(self.generators, self.omega)
        } else {
            match self.replacement(a)? {
                Some(r) => self.eval(&r)?,
                None => self.free_value(a),
            }
        };
        self.values.insert(a, v.clone());
        Ok(v)
    }

    fn replacement(&mut self, a: Atom) -> Result<Option<Expr>> {
        let Some(rs) = &self.injected else { return Ok(None) };
        if let Some(r) = self.derived.get(&a) {
            return Ok(Some(r.clone()));
        }
        let r = rs.rewrite(&Expr::atom(a))?;
        if r == Expr::atom(a) {
            return Ok(None);
        }
        self.derived.insert(a, r.clone());
        Ok(Some(r))
    }

    pub fn eval(&mut self, e: &Expr) -> Result<ExteriorValue<F>> {
        let g = self.generators;
        let degree = e.max_odd_degree();
        if degree > g {
            return Err(NumericError::GeneratorExhaustion { degree, generators: g });
        }
        let mut out = ExteriorValue::zero(g);
        for (m, c) in e.terms() {
            let (re, im) = c.to_complex_f64();
            let coeff = Complex::new(F::from(re).unwrap(), F::from(im).unwrap()) * self.z.powi(m.zpow());
            let mut acc = ExteriorValue::scalar(g, coeff);
            for (a, p) in m.evens() {
                acc = acc.wedge(&self.value(*a)?.powi(*p)?);
            }
            for (f, h) in m.exps() {
                let half = F::from(*h).unwrap() / F::from(2).unwrap();
                let base = self.value(Atom::jet(*f, 0))?;
                acc = acc.wedge(&base.scale(Complex::new(half, F::zero())).exp());
            }
            for a in m.odds() {
                acc = acc.wedge(&self.value(*a)?);
            }
            out = &out + &acc;
        }
        Ok(out)
    }
}

/// Evaluates `e` under `assignment`.
pub fn grassmann_eval<F: Float>(e: &Expr, assignment: &mut EvalAssignment<F>) -> Result<ExteriorValue<F>> {
    assignment.eval(e)
}
