//! Superfields `body + theta * soul` over one Grassmann coordinate.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;

use crate::atom::Flow;
use crate::expr::{Expr, ExprError, Parity};
use crate::formula::{parse, Evaluator, ExprEval, FormulaError, Node};
use crate::scalar::Scalar;

/// `body + theta * soul`; `theta^2 = 0` holds by construction.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SuperExpr {
    pub body: Expr,
    pub soul: Expr,
}

/// Negates odd terms, so that `a * theta = theta * involute(a)`.
pub fn involute(e: &Expr) -> Expr {
    Expr::from_terms(e.terms().map(|(m, c)| (m.clone(), if m.parity() == Parity::Odd { -c } else { c.clone() })))
}

impl SuperExpr {
    pub fn new(body: Expr, soul: Expr) -> Self {
        SuperExpr { body, soul }
    }

    pub fn lift(body: Expr) -> Self {
        SuperExpr { body, soul: Expr::zero() }
    }

    pub fn zero() -> Self {
        SuperExpr::default()
    }

    pub fn one() -> Self {
        SuperExpr::lift(Expr::one())
    }

    pub fn theta() -> Self {
        SuperExpr::new(Expr::zero(), Expr::one())
    }

    pub fn is_zero(&self) -> bool {
        self.body.is_zero() && self.soul.is_zero()
    }

    /// Parity of a homogeneous superfield; `theta` counts as odd.
    pub fn parity(&self) -> Option<Parity> {
        let flip = |p: Parity| if p == Parity::Even { Parity::Odd } else { Parity::Even };
        match (self.body.parity(), self.soul.parity()) {
            (Some(b), Some(s)) if s == flip(b) => Some(b),
            (Some(b), None) if self.soul.is_zero() => Some(b),
            (None, Some(s)) if self.body.is_zero() => Some(flip(s)),
            _ => None,
        }
    }

    /// Covariant derivative `d_theta + theta d_x`.
    pub fn d(&self) -> SuperExpr {
        SuperExpr::new(self.soul.clone(), self.body.d_dx())
    }

    pub fn d_n(&self, k: usize) -> SuperExpr {
        (0..k).fold(self.clone(), |e, _| e.d())
    }

    pub fn d_dx(&self) -> SuperExpr {
        SuperExpr::new(self.body.d_dx(), self.soul.d_dx())
    }

    pub fn d_dt(&self, flow: Flow) -> Result<SuperExpr, ExprError> {
        Ok(SuperExpr::new(self.body.d_dt(flow)?, self.soul.d_dt(flow)?))
    }

    pub fn scale(&self, c: &Scalar) -> SuperExpr {
        SuperExpr::new(self.body.scale(c), self.soul.scale(c))
    }

    pub fn map(&self, mut f: impl FnMut(&Expr) -> Result<Expr, ExprError>) -> Result<SuperExpr, ExprError> {
        Ok(SuperExpr::new(f(&self.body)?, f(&self.soul)?))
    }

    /// `f(b + theta s) = f(b) + theta s f'(b)` for `f = exp` and even `b`.
    pub fn exp(&self) -> Result<SuperExpr, ExprError> {
        let e = Expr::exp_of(&self.body)?;
        Ok(SuperExpr::new(e.clone(), &self.soul * &e))
    }

    pub fn cosh(&self) -> Result<SuperExpr, ExprError> {
        let (p, m) = (self.exp()?, (-self).exp()?);
        Ok((&p + &m).scale(&Scalar::frac(1, 2)))
    }

    pub fn sinh(&self) -> Result<SuperExpr, ExprError> {
        let (p, m) = (self.exp()?, (-self).exp()?);
        Ok((&p - &m).scale(&Scalar::frac(1, 2)))
    }

    /// Inverse of a superfield with an invertible even body.
    pub fn inverse(&self) -> Result<SuperExpr, ExprError> {
        if self.body.parity() == Some(Parity::Odd) {
            return Err(ExprError::NotInvertible(self.to_string()));
        }
        let bi = self.body.try_inverse()?;
        let soul = -&(&self.soul * &(&bi * &bi));
        Ok(SuperExpr::new(bi, soul))
    }

    pub fn powi(&self, n: i32) -> Result<SuperExpr, ExprError> {
        let base = if n < 0 { self.inverse()? } else { self.clone() };
        Ok((0..n.unsigned_abs()).fold(SuperExpr::one(), |acc, _| &acc * &base))
    }

    /// `(body, soul)`; a superfield equation `lhs - rhs` holds iff both vanish.
    pub fn to_components(&self) -> (Expr, Expr) {
        (self.body.clone(), self.soul.clone())
    }
}

pub fn super_d(e: &SuperExpr) -> SuperExpr {
    e.d()
}

pub fn super_mul(a: &SuperExpr, b: &SuperExpr) -> SuperExpr {
    a * b
}

impl<'a> Mul<&'a SuperExpr> for &'a SuperExpr {
    type Output = SuperExpr;
    fn mul(self, o: &SuperExpr) -> SuperExpr {
        // (a + θs)(c + θt) = ac + θ(â t + s c)
        let soul = &(&involute(&self.body) * &o.soul) + &(&self.soul * &o.body);
        SuperExpr::new(&self.body * &o.body, soul)
    }
}

impl<'a> Add<&'a SuperExpr> for &'a SuperExpr {
    type Output = SuperExpr;
    fn add(self, o: &SuperExpr) -> SuperExpr {
        SuperExpr::new(&self.body + &o.body, &self.soul + &o.soul)
    }
}

impl<'a> Sub<&'a SuperExpr> for &'a SuperExpr {
    type Output = SuperExpr;
    fn sub(self, o: &SuperExpr) -> SuperExpr {
        SuperExpr::new(&self.body - &o.body, &self.soul - &o.soul)
    }
}

impl Neg for &SuperExpr {
    type Output = SuperExpr;
    fn neg(self) -> SuperExpr {
        SuperExpr::new(-&self.body, -&self.soul)
    }
}

impl fmt::Display for SuperExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] + theta*[{}]", self.body, self.soul)
    }
}

/// Named superfields understood by [`parse_super`].
pub fn named_superfield(name: &str) -> Option<SuperExpr> {
    let bosonic = |phi: &str, psb: &str| {
        SuperExpr::new(crate::formula::ex(phi), crate::formula::ex(&format!("-si*{psb}")))
    };
    Some(match name {
        "theta" => SuperExpr::theta(),
        "Phi" => bosonic("phi", "psb"),
        "Phi1" => bosonic("phi1", "psb1"),
        "Phi2" => bosonic("phi2", "psb2"),
        "Phip" => bosonic("phip", "psbp"),
        "Phim" => bosonic("phim", "psbm"),
        "Psi" => SuperExpr::new(crate::formula::ex("si*psb"), crate::formula::ex("-phi_1")),
        "Sigma" => SuperExpr::new(crate::formula::ex("-f1/si"), crate::formula::ex("b1")),
        _ => return None,
    })
}

/// Formula evaluator over superfields. Adds `D(X, k)`, `dt(X)` (along
/// `flow`) and the capitalised superfields of [`named_superfield`] to the
/// component vocabulary.
#[derive(Clone, Copy, Debug, Default)]
pub struct SuperEval {
    pub flow: Option<Flow>,
}

impl Evaluator for SuperEval {
    type Value = SuperExpr;

    fn number(&self, r: &BigRational) -> SuperExpr {
        SuperExpr::lift(ExprEval.number(r))
    }

    fn ident(&self, name: &str) -> Result<SuperExpr, FormulaError> {
        match named_superfield(name) {
            Some(s) => Ok(s),
            None => Ok(SuperExpr::lift(ExprEval.ident(name)?)),
        }
    }

    fn call(&self, name: &str, args: &[Node]) -> Result<SuperExpr, FormulaError> {
        let bad = || FormulaError::BadArguments(name.to_string());
        match name {
            "exp" | "cosh" | "sinh" => {
                let [arg] = args else { return Err(bad()) };
                let a = self.eval(arg)?;
                Ok(match name {
                    "exp" => a.exp()?,
                    "cosh" => a.cosh()?,
                    _ => a.sinh()?,
                })
            }
            "D" | "dx" => {
                let [arg, Node::Num(k)] = args else { return Err(bad()) };
                let k: usize = num_traits::ToPrimitive::to_usize(&k.to_integer()).ok_or_else(bad)?;
                let a = self.eval(arg)?;
                Ok(if name == "D" { a.d_n(k) } else { (0..k).fold(a, |e, _| e.d_dx()) })
            }
            "dt" => {
                let ([arg], Some(flow)) = (args, self.flow) else { return Err(bad()) };
                Ok(self.eval(arg)?.d_dt(flow)?)
            }
            _ => Err(FormulaError::UnknownFunction(name.to_string())),
        }
    }

    fn add(&self, a: SuperExpr, b: SuperExpr) -> SuperExpr {
        &a + &b
    }

    fn sub(&self, a: SuperExpr, b: SuperExpr) -> SuperExpr {
        &a - &b
    }

    fn mul(&self, a: SuperExpr, b: SuperExpr) -> SuperExpr {
        &a * &b
    }

    fn neg(&self, a: SuperExpr) -> SuperExpr {
        -&a
    }

    fn div(&self, a: SuperExpr, b: SuperExpr) -> Result<SuperExpr, FormulaError> {
        Ok(&a * &b.inverse()?)
    }

    fn pow(&self, a: SuperExpr, n: i32) -> Result<SuperExpr, FormulaError> {
        Ok(a.powi(n)?)
    }
}

pub fn parse_super(src: &str) -> Result<SuperExpr, FormulaError> {
    SuperEval::default().eval(&parse(src)?)
}

/// As [`parse_super`], with `dt(X)` differentiating along `flow`.
pub fn parse_super_along(src: &str, flow: Flow) -> Result<SuperExpr, FormulaError> {
    SuperEval { flow: Some(flow) }.eval(&parse(src)?)
}

/// Parses a superfield formula known to be well formed.
///
/// # Panics
/// On any parse or evaluation error.
pub fn sx(src: &str) -> SuperExpr {
    parse_super(src).unwrap_or_else(|e| panic!("bad built-in superfield formula `{src}`: {e}"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::ex;

    #[test]
    fn derivative_of_bosonic_superfield() {
        let phi = sx("Phi");
        assert_eq!(phi.d(), SuperExpr::new(ex("-si*psb"), ex("phi_1")));
        assert_eq!(phi.d(), -&sx("Psi"));
        assert_eq!(phi.d().d(), phi.d_dx());
        assert_eq!(SuperExpr::theta().d(), SuperExpr::one());
    }

    #[test]
    fn products_and_functions() {
        let s = sx("Sigma");
        assert!((&s * &s).body.is_zero());
        assert_eq!(&sx("Phi") * &SuperExpr::one(), sx("Phi"));
        let c = sx("cosh(Phip/2)");
        assert_eq!(c, SuperExpr::new(ex("cosh(phip/2)"), ex("-si/2*psbp*sinh(phip/2)")));
        let e = sx("exp(Phip)*exp(-Phip)");
        assert_eq!(e, SuperExpr::one());
        assert_eq!(sx("theta*theta"), SuperExpr::zero());
    }

    #[test]
    fn parity_of_named_fields() {
        assert_eq!(sx("Phi").parity(), Some(Parity::Even));
        assert_eq!(sx("Sigma").parity(), Some(Parity::Odd));
        assert_eq!(sx("Psi").parity(), Some(Parity::Odd));
        assert_eq!(sx("Phi + Sigma").parity(), None);
    }
}
