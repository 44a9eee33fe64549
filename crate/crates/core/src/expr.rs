//! Canonical graded differential polynomials.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use smallvec::SmallVec;
use thiserror::Error;

use crate::atom::{Atom, Field, Flow};
use crate::scalar::Scalar;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExprError {
    #[error("expression is not invertible: {0}")]
    NotInvertible(String),
    #[error("time derivative of a time jet `{0}` is not supported")]
    NestedTimeJet(String),
    #[error("argument of an exponential must be a half-integer combination of bare fields: {0}")]
    BadExponent(String),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

/// A coefficient-free product of generators in canonical order.
///
/// The represented value is `evens * exps * z^zpow * odds[0] * odds[1] * ...`.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    pub(crate) evens: SmallVec<[(Atom, i32); 4]>,
    /// exponent of `e^{phi}` in units of one half
    pub(crate) exps: SmallVec<[(Field, i32); 2]>,
    pub(crate) odds: SmallVec<[Atom; 4]>,
    pub(crate) zpow: i32,
}

fn merge_powers<K: Ord + Copy>(a: &[(K, i32)], b: &[(K, i32)]) -> SmallVec<[(K, i32); 4]> {
    let mut out = SmallVec::new();
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                let p = a[i].1 + b[j].1;
                if p != 0 {
                    out.push((a[i].0, p));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn evens(&self) -> &[(Atom, i32)] {
        &self.evens
    }

    pub fn exps(&self) -> &[(Field, i32)] {
        &self.exps
    }

    pub fn odds(&self) -> &[Atom] {
        &self.odds
    }

    pub fn zpow(&self) -> i32 {
        self.zpow
    }

    pub fn parity(&self) -> Parity {
        if self.odds.len() % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    /// Product with Koszul sign; `None` when a repeated odd atom kills it.
    pub fn mul(&self, o: &Monomial) -> Option<(bool, Monomial)> {
        let mut odds: SmallVec<[Atom; 4]> = SmallVec::new();
        let mut neg = false;
        let (a, b) = (&self.odds, &o.odds);
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => {
                    odds.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    odds.push(b[j]);
                    if (a.len() - i) % 2 == 1 {
                        neg = !neg;
                    }
                    j += 1;
                }
                std::cmp::Ordering::Equal => return None,
            }
        }
        odds.extend_from_slice(&a[i..]);
        odds.extend_from_slice(&b[j..]);
        let exps = merge_powers(&self.exps, &o.exps);
        Some((
            neg,
            Monomial {
                evens: merge_powers(&self.evens, &o.evens),
                exps: exps.into_iter().collect(),
                odds,
                zpow: self.zpow + o.zpow,
            },
        ))
    }

    fn without_odds(&self) -> Monomial {
        Monomial { odds: SmallVec::new(), ..self.clone() }
    }

    fn only_odds(odds: &[Atom]) -> Monomial {
        Monomial { odds: odds.iter().copied().collect(), ..Monomial::default() }
    }

    pub fn power_of(&self, a: Atom) -> i32 {
        if a.is_odd() {
            return i32::from(self.odds.contains(&a));
        }
        self.evens.iter().find(|(x, _)| *x == a).map_or(0, |(_, p)| *p)
    }

    /// All generators appearing, exps excluded.
    pub fn atoms(&self) -> impl Iterator<Item = Atom> + '_ {
        self.evens.iter().map(|(a, _)| *a).chain(self.odds.iter().copied())
    }

    /// True when the monomial is a unit of the ring: no jets and no odds.
    pub fn is_unit(&self) -> bool {
        self.odds.is_empty() && self.evens.iter().all(|(a, _)| a.field.is_constant())
    }

    pub fn inverse_unit(&self) -> Monomial {
        debug_assert!(self.is_unit());
        Monomial {
            evens: self.evens.iter().map(|(a, p)| (*a, -p)).collect(),
            exps: self.exps.iter().map(|(f, p)| (*f, -p)).collect(),
            odds: SmallVec::new(),
            zpow: -self.zpow,
        }
    }

    pub fn with_zpow(&self, zpow: i32) -> Monomial {
        Monomial { zpow, ..self.clone() }
    }

    pub fn omega_power(&self) -> i32 {
        self.power_of(Atom::jet(Field::Omega, 0))
    }

    /// Total number of x-derivatives carried by jets, counted with power.
    pub fn x_weight(&self) -> i32 {
        self.evens.iter().map(|(a, p)| i32::from(a.dx) * p).sum::<i32>()
            + self.odds.iter().map(|a| i32::from(a.dx)).sum::<i32>()
    }
}

/// Sum of monomials with exact coefficients, kept in canonical form.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Expr {
    terms: BTreeMap<Monomial, Scalar>,
}

impl Expr {
    pub fn zero() -> Self {
        Expr::default()
    }

    pub fn one() -> Self {
        Expr::scalar(Scalar::one())
    }

    pub fn scalar(c: Scalar) -> Self {
        Expr::term(c, Monomial::one())
    }

    pub fn int(n: i64) -> Self {
        Expr::scalar(Scalar::int(n))
    }

    pub fn frac(n: i64, d: i64) -> Self {
        Expr::scalar(Scalar::frac(n, d))
    }

    pub fn i() -> Self {
        Expr::scalar(Scalar::i())
    }

    /// sqrt(i)
    pub fn si() -> Self {
        Expr::scalar(Scalar::s())
    }

    pub fn term(c: Scalar, m: Monomial) -> Self {
        let mut e = Expr::zero();
        e.add_term(m, c);
        e
    }

    pub fn atom(a: Atom) -> Self {
        let mut m = Monomial::one();
        if a.is_odd() {
            m.odds.push(a);
        } else {
            m.evens.push((a, 1));
        }
        Expr::term(Scalar::one(), m)
    }

    pub fn jet(f: Field, dx: u8) -> Self {
        Expr::atom(Atom::jet(f, dx))
    }

    pub fn time_jet(f: Field, dx: u8, flow: Flow) -> Self {
        Expr::atom(Atom::time_jet(f, dx, flow))
    }

    /// `omega^k`
    pub fn omega(k: i32) -> Self {
        let mut m = Monomial::one();
        if k != 0 {
            m.evens.push((Atom::jet(Field::Omega, 0), k));
        }
        Expr::term(Scalar::one(), m)
    }

    /// `z^k`, where `z^2` is the spectral parameter.
    pub fn z(k: i32) -> Self {
        Expr::term(Scalar::one(), Monomial { zpow: k, ..Monomial::one() })
    }

    /// `e^{(half/2) field}`
    pub fn exp_half(f: Field, half: i32) -> Self {
        assert!(f.is_exponentiable(), "field {f:?} cannot be exponentiated");
        let mut m = Monomial::one();
        if half != 0 {
            m.exps.push((f, half));
        }
        Expr::term(Scalar::one(), m)
    }

    /// `cosh((half/2) field)` in exponential form.
    pub fn cosh_half(f: Field, half: i32) -> Self {
        (&Expr::exp_half(f, half) + &Expr::exp_half(f, -half)).scale(&Scalar::frac(1, 2))
    }

    /// `sinh((half/2) field)` in exponential form.
    pub fn sinh_half(f: Field, half: i32) -> Self {
        (&Expr::exp_half(f, half) - &Expr::exp_half(f, -half)).scale(&Scalar::frac(1, 2))
    }

    pub fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn add_term_ref(&mut self, m: &Monomial, c: &Scalar, negate: bool) {
        if let Some(v) = self.terms.get_mut(m) {
            if negate {
                *v -= c;
            } else {
                *v += c;
            }
            if v.is_zero() {
                self.terms.remove(m);
            }
        } else {
            self.terms.insert(m.clone(), if negate { -c } else { c.clone() });
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Monomial, Scalar)> {
        self.terms.into_iter()
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Scalar)>>(it: I) -> Self {
        let mut e = Expr::zero();
        for (m, c) in it {
            e.add_term(m, c);
        }
        e
    }

    pub fn parity(&self) -> Option<Parity> {
        let mut it = self.terms.keys().map(Monomial::parity);
        let first = it.next()?;
        it.all(|p| p == first).then_some(first)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Expr::zero();
        }
        Expr { terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect() }
    }

    pub fn scale_int(&self, n: i64) -> Self {
        self.scale(&Scalar::int(n))
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Scalar) -> Self {
        let mut out = Expr::zero();
        for (a, v) in &self.terms {
            if let Some((neg, p)) = a.mul(m) {
                let mut k = v * c;
                if neg {
                    k = -k;
                }
                out.add_term(p, k);
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = Expr::one();
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    /// Signed integer power; negative powers need an invertible base.
    pub fn powi(&self, n: i32) -> Result<Self, ExprError> {
        if n >= 0 {
            Ok(self.pow(n as u32))
        } else {
            Ok(self.try_inverse()?.pow(n.unsigned_abs()))
        }
    }

    /// The constant term, when the expression is a pure scalar.
    pub fn as_scalar(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(Scalar::zero()),
            1 => {
                let (m, c) = self.terms.iter().next()?;
                (*m == Monomial::one()).then(|| c.clone())
            }
            _ => None,
        }
    }

    /// Inverse of `unit + nilpotent`, where the body (odd-free part) is a single unit monomial.
    pub fn try_inverse(&self) -> Result<Self, ExprError> {
        let body: Vec<_> = self.terms.iter().filter(|(m, _)| m.odds.is_empty()).collect();
        let bad = || ExprError::NotInvertible(self.to_string());
        if body.len() != 1 || !body[0].0.is_unit() {
            return Err(bad());
        }
        let (m, c) = body[0];
        let inv_c = c.inverse().map_err(|_| bad())?;
        let u_inv = Expr::term(inv_c, m.inverse_unit());
        let nil = &(&u_inv * self) - &Expr::one();
        // (1 + n)^{-1} = sum (-n)^k, finite since n is nilpotent
        let mut acc = Expr::one();
        let mut p = Expr::one();
        let minus_n = -&nil;
        loop {
            p = &p * &minus_n;
            if p.is_zero() {
                break;
            }
            acc += &p;
        }
        Ok(&acc * &u_inv)
    }

    /// Applies an even derivation given by its values on generators.
    ///
    /// `img(a)` returns the image of a jet or parameter; exponentials follow the
    /// chain rule through the image of the bare field.
    pub fn derive_with(&self, img: &mut dyn FnMut(Atom) -> Expr) -> Expr {
        let mut cache: BTreeMap<Atom, Expr> = BTreeMap::new();
        let mut get = |a: Atom| -> Expr { cache.entry(a).or_insert_with(|| img(a)).clone() };
        let mut out = Expr::zero();
        for (m, c) in &self.terms {
            for (idx, (a, p)) in m.evens.iter().enumerate() {
                let d = get(*a);
                if d.is_zero() {
                    continue;
                }
                let mut rest = m.clone();
                if *p == 1 {
                    rest.evens.remove(idx);
                } else {
                    rest.evens[idx].1 -= 1;
                }
                out += &d.mul_monomial(&rest, &(c * &Scalar::int(i64::from(*p))));
            }
            for (f, h) in &m.exps {
                let d = get(Atom::jet(*f, 0));
                if d.is_zero() {
                    continue;
                }
                out += &d.mul_monomial(m, &(c * &Scalar::frac(i64::from(*h), 2)));
            }
            if m.odds.is_empty() {
                continue;
            }
            let even = m.without_odds();
            for (idx, a) in m.odds.iter().enumerate() {
                let d = get(*a);
                if d.is_zero() {
                    continue;
                }
                let prefix = Monomial { odds: m.odds[..idx].iter().copied().collect(), ..even.clone() };
                let suffix = Monomial::only_odds(&m.odds[idx + 1..]);
                let left = Expr::term(c.clone(), prefix);
                out += &(&left * &d).mul_monomial(&suffix, &Scalar::one());
            }
        }
        out
    }

    pub fn d_dx(&self) -> Expr {
        self.derive_with(&mut |a: Atom| {
            if a.field.is_constant() {
                Expr::zero()
            } else {
                Expr::atom(a.bump_x())
            }
        })
    }

    pub fn d_dx_n(&self, n: usize) -> Expr {
        (0..n).fold(self.clone(), |e, _| e.d_dx())
    }

    /// Formal time derivative, producing time jets.
    pub fn d_dt(&self, flow: Flow) -> Result<Expr, ExprError> {
        let mut err = None;
        let out = self.derive_with(&mut |a: Atom| {
            if a.field.is_constant() {
                Expr::zero()
            } else if a.dt.is_some() {
                err = Some(ExprError::NestedTimeJet(a.to_string()));
                Expr::zero()
            } else {
                Expr::atom(Atom { dt: Some(flow), ..a })
            }
        });
        match err {
            Some(e) => Err(e),
            None => Ok(out),
        }
    }

    /// Groups terms by power of z; each value has the z-power removed.
    pub fn by_zpow(&self) -> BTreeMap<i32, Expr> {
        let mut out: BTreeMap<i32, Expr> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.zpow).or_default().add_term(m.with_zpow(0), c.clone());
        }
        out
    }

    /// Coefficient of `z^k`.
    pub fn z_coeff(&self, k: i32) -> Expr {
        Expr::from_terms(
            self.terms.iter().filter(|(m, _)| m.zpow == k).map(|(m, c)| (m.with_zpow(0), c.clone())),
        )
    }

    pub fn filter(&self, mut keep: impl FnMut(&Monomial) -> bool) -> Expr {
        Expr { terms: self.terms.iter().filter(|(m, _)| keep(m)).map(|(m, c)| (m.clone(), c.clone())).collect() }
    }

    pub fn contains_atom(&self, mut pred: impl FnMut(Atom) -> bool) -> bool {
        self.terms.keys().any(|m| m.atoms().any(&mut pred))
    }

    pub fn atoms(&self) -> std::collections::BTreeSet<Atom> {
        self.terms.keys().flat_map(|m| m.atoms().collect::<Vec<_>>()).collect()
    }

    pub fn max_odd_degree(&self) -> usize {
        self.terms.keys().map(|m| m.odds.len()).max().unwrap_or(0)
    }

    /// Sets every odd generator to zero.
    pub fn bosonic_part(&self) -> Expr {
        self.filter(|m| m.odds.is_empty())
    }

    /// Exponential of a half-integer combination of bare exponentiable fields.
    pub fn exp_of(arg: &Expr) -> Result<Expr, ExprError> {
        let bad = || ExprError::BadExponent(arg.to_string());
        let mut out = Expr::one();
        for (m, c) in &arg.terms {
            let r = c.as_rational().ok_or_else(bad)?;
            let twice = r * BigRational::from_integer(BigInt::from(2));
            if !twice.is_integer() || m.evens.len() != 1 || !m.exps.is_empty() || !m.odds.is_empty() || m.zpow != 0 {
                return Err(bad());
            }
            let (a, p) = m.evens[0];
            if p != 1 || a.dx != 0 || a.dt.is_some() || !a.field.is_exponentiable() {
                return Err(bad());
            }
            let h: i32 = num_traits::ToPrimitive::to_i32(twice.numer()).ok_or_else(bad)?;
            out = &out * &Expr::exp_half(a.field, h);
        }
        Ok(out)
    }

    pub fn cosh_of(arg: &Expr) -> Result<Expr, ExprError> {
        let p = Expr::exp_of(arg)?;
        let m = Expr::exp_of(&-arg)?;
        Ok((&p + &m).scale(&Scalar::frac(1, 2)))
    }

    pub fn sinh_of(arg: &Expr) -> Result<Expr, ExprError> {
        let p = Expr::exp_of(arg)?;
        let m = Expr::exp_of(&-arg)?;
        Ok((&p - &m).scale(&Scalar::frac(1, 2)))
    }
}

impl<'a> Add<&'a Expr> for &'a Expr {
    type Output = Expr;
    fn add(self, o: &Expr) -> Expr {
        let mut out = self.clone();
        out += o;
        out
    }
}

impl<'a> Sub<&'a Expr> for &'a Expr {
    type Output = Expr;
    fn sub(self, o: &Expr) -> Expr {
        let mut out = self.clone();
        out -= o;
        out
    }
}

impl<'a> Mul<&'a Expr> for &'a Expr {
    type Output = Expr;
    fn mul(self, o: &Expr) -> Expr {
        let mut out = Expr::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &o.terms {
                if let Some((neg, m)) = a.mul(b) {
                    let c = ca * cb;
                    out.add_term_ref(&m, &c, neg);
                }
            }
        }
        out
    }
}

impl Neg for &Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        Expr { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

impl Neg for Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        -&self
    }
}

impl AddAssign<&Expr> for Expr {
    fn add_assign(&mut self, o: &Expr) {
        for (m, c) in &o.terms {
            self.add_term_ref(m, c, false);
        }
    }
}

impl SubAssign<&Expr> for Expr {
    fn sub_assign(&mut self, o: &Expr) {
        for (m, c) in &o.terms {
            self.add_term_ref(m, c, true);
        }
    }
}

impl AddAssign<Expr> for Expr {
    fn add_assign(&mut self, o: Expr) {
        if self.terms.is_empty() {
            *self = o;
            return;
        }
        for (m, c) in o.terms {
            self.add_term(m, c);
        }
    }
}

macro_rules! owned_expr_ops {
    ($tr:ident, $m:ident) => {
        impl $tr for Expr {
            type Output = Expr;
            fn $m(self, o: Expr) -> Expr {
                (&self).$m(&o)
            }
        }
        impl $tr<&Expr> for Expr {
            type Output = Expr;
            fn $m(self, o: &Expr) -> Expr {
                (&self).$m(o)
            }
        }
        impl $tr<Expr> for &Expr {
            type Output = Expr;
            fn $m(self, o: Expr) -> Expr {
                self.$m(&o)
            }
        }
    };
}
owned_expr_ops!(Add, add);
owned_expr_ops!(Sub, sub);
owned_expr_ops!(Mul, mul);

impl std::iter::Sum for Expr {
    fn sum<I: Iterator<Item = Expr>>(iter: I) -> Expr {
        iter.fold(Expr::zero(), |mut acc, e| {
            acc += e;
            acc
        })
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        for (a, p) in &self.evens {
            parts.push(if *p == 1 { a.to_string() } else { format!("{a}^{p}") });
        }
        for (fld, h) in &self.exps {
            let r = BigRational::new(BigInt::from(*h), BigInt::from(2));
            parts.push(if r.is_one() {
                format!("exp({})", fld.label())
            } else {
                format!("exp({r}*{})", fld.label())
            });
        }
        if self.zpow != 0 {
            parts.push(if self.zpow == 1 { "z".to_string() } else { format!("z^{}", self.zpow) });
        }
        for a in &self.odds {
            parts.push(a.to_string());
        }
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join("*"))
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            if *m == Monomial::one() {
                write!(f, "({c})")?;
            } else {
                write!(f, "({c})*{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Expr[{self}]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn psb(k: u8) -> Expr {
        Expr::jet(Field::Psb, k)
    }

    fn phi(k: u8) -> Expr {
        Expr::jet(Field::Phi, k)
    }

    #[test]
    fn nilpotent_and_anticommuting() {
        assert!((&psb(0) * &psb(0)).is_zero());
        assert_eq!(&psb(1) * &psb(0), -(&psb(0) * &psb(1)));
    }

    #[test]
    fn exponents_add() {
        let e = Expr::exp_half(Field::PhiP, 1);
        assert_eq!(&e * &e, Expr::exp_half(Field::PhiP, 2));
        assert_eq!(&e * &Expr::exp_half(Field::PhiP, -1), Expr::one());
    }

    #[test]
    fn derivative_examples() {
        let e = Expr::exp_half(Field::PhiP, 2);
        assert_eq!(e.d_dx(), &Expr::jet(Field::PhiP, 1) * &e);
        assert_eq!((&psb(0) * &psb(1)).d_dx(), &psb(0) * &psb(2));
        let half = Expr::frac(1, 2);
        let f = &(&half * &phi(2)) + &(&half * &phi(1).pow(2));
        assert_eq!(f.d_dx(), &(&half * &phi(3)) + &(&phi(1) * &phi(2)));
    }

    #[test]
    fn hyperbolic_identity() {
        let lhs = &Expr::sinh_half(Field::PhiP, 2) * &Expr::cosh_half(Field::PhiP, 2);
        let rhs = Expr::sinh_half(Field::PhiP, 4).scale(&Scalar::frac(1, 2));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn inverse_of_unit_plus_nilpotent() {
        let u = &Expr::exp_half(Field::PhiP, 1) * &Expr::omega(-2);
        let n = &(&psb(0) * &Expr::jet(Field::F1, 0)) * &Expr::exp_half(Field::PhiP, 3);
        let x = &u + &n;
        let inv = x.try_inverse().unwrap();
        assert_eq!(&x * &inv, Expr::one());
        assert!(Expr::cosh_half(Field::PhiP, 1).try_inverse().is_err());
    }

    #[test]
    fn time_derivative_of_exponential() {
        let e = Expr::exp_half(Field::Phi, 2);
        let d = e.d_dt(Flow::T3).unwrap();
        assert_eq!(d, &Expr::time_jet(Field::Phi, 0, Flow::T3) * &e);
        assert!(d.d_dt(Flow::T3).is_err());
    }
}
