//! A small infix formula language used for transcribed equations, golden
//! files and the canonical text form of [`Expr`].
//!
//! Identifiers: jets such as `phi_3`, `psbp_2_t5`; `i`, `si` (= sqrt(i)), `z`,
//! `L` (= z^2), `w` (omega), `eps`. Functions: `exp`, `cosh`, `sinh` of a
//! half-integer combination of bare fields and `dx(expr, k)`.

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

use crate::atom::parse_atom;
use crate::expr::{Expr, ExprError};
use crate::scalar::Scalar;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormulaError {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown identifier `{0}`")]
    UnknownIdent(String),
    #[error("unknown function `{0}`")]
    UnknownFunction(String),
    #[error("bad arguments to `{0}`")]
    BadArguments(String),
    #[error(transparent)]
    Expr(#[from] ExprError),
}

#[derive(Clone, Debug, PartialEq)]
pub enum Node {
    Num(BigRational),
    Ident(String),
    Neg(Box<Node>),
    Add(Box<Node>, Box<Node>),
    Sub(Box<Node>, Box<Node>),
    Mul(Box<Node>, Box<Node>),
    Div(Box<Node>, Box<Node>),
    Pow(Box<Node>, i32),
    Call(String, Vec<Node>),
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Op(char),
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>, FormulaError> {
    let b = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < b.len() {
        let c = b[i] as char;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let s = i;
            while i < b.len() && b[i].is_ascii_digit() {
                i += 1;
            }
            out.push((s, Tok::Num(src[s..i].parse().expect("digits"))));
        } else if c.is_ascii_alphabetic() {
            let s = i;
            while i < b.len() && (b[i].is_ascii_alphanumeric() || b[i] == b'_') {
                i += 1;
            }
            out.push((s, Tok::Ident(src[s..i].to_string())));
        } else if "+-*/^(),".contains(c) {
            out.push((i, Tok::Op(c)));
            i += 1;
        } else {
            return Err(FormulaError::Syntax { pos: i, msg: format!("unexpected `{c}`") });
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    len: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map_or(self.len, |(p, _)| *p)
    }

    fn err<T>(&self, msg: &str) -> Result<T, FormulaError> {
        Err(FormulaError::Syntax { pos: self.here(), msg: msg.to_string() })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Node, FormulaError> {
        let mut lhs = self.term()?;
        loop {
            if self.eat('+') {
                lhs = Node::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = Node::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Node, FormulaError> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat('*') {
                lhs = Node::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.eat('/') {
                lhs = Node::Div(Box::new(lhs), Box::new(self.unary()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Node, FormulaError> {
        if self.eat('-') {
            return Ok(Node::Neg(Box::new(self.unary()?)));
        }
        if self.eat('+') {
            return self.unary();
        }
        let base = self.primary()?;
        if self.eat('^') {
            let paren = self.eat('(');
            let neg = self.eat('-');
            let n = match self.peek() {
                Some(Tok::Num(n)) => i32::try_from(n.clone()).or_else(|_| self.err("exponent too large"))?,
                _ => return self.err("expected integer exponent"),
            };
            self.pos += 1;
            if paren && !self.eat(')') {
                return self.err("expected `)`");
            }
            return Ok(Node::Pow(Box::new(base), if neg { -n } else { n }));
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<Node, FormulaError> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(Node::Num(BigRational::from_integer(n)))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                if self.eat('(') {
                    let mut args = vec![self.expr()?];
                    while self.eat(',') {
                        args.push(self.expr()?);
                    }
                    if !self.eat(')') {
                        return self.err("expected `)`");
                    }
                    Ok(Node::Call(name, args))
                } else {
                    Ok(Node::Ident(name))
                }
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return self.err("expected `)`");
                }
                Ok(e)
            }
            _ => self.err("expected operand"),
        }
    }
}

pub fn parse(src: &str) -> Result<Node, FormulaError> {
    let mut p = Parser { toks: lex(src)?, pos: 0, len: src.len() };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return p.err("trailing input");
    }
    Ok(e)
}

/// Interprets formula nodes in some algebra.
pub trait Evaluator {
    type Value: Clone;

    fn number(&self, r: &BigRational) -> Self::Value;
    fn ident(&self, name: &str) -> Result<Self::Value, FormulaError>;
    fn call(&self, name: &str, args: &[Node]) -> Result<Self::Value, FormulaError>;
    fn add(&self, a: Self::Value, b: Self::Value) -> Self::Value;
    fn sub(&self, a: Self::Value, b: Self::Value) -> Self::Value;
    fn mul(&self, a: Self::Value, b: Self::Value) -> Self::Value;
    fn neg(&self, a: Self::Value) -> Self::Value;
    fn div(&self, a: Self::Value, b: Self::Value) -> Result<Self::Value, FormulaError>;
    fn pow(&self, a: Self::Value, n: i32) -> Result<Self::Value, FormulaError>;

    fn eval(&self, n: &Node) -> Result<Self::Value, FormulaError> {
        Ok(match n {
            Node::Num(r) => self.number(r),
            Node::Ident(s) => self.ident(s)?,
            Node::Neg(a) => self.neg(self.eval(a)?),
            Node::Add(a, b) => self.add(self.eval(a)?, self.eval(b)?),
            Node::Sub(a, b) => self.sub(self.eval(a)?, self.eval(b)?),
            Node::Mul(a, b) => self.mul(self.eval(a)?, self.eval(b)?),
            Node::Div(a, b) => self.div(self.eval(a)?, self.eval(b)?)?,
            Node::Pow(a, k) => self.pow(self.eval(a)?, *k)?,
            Node::Call(f, args) => self.call(f, args)?,
        })
    }
}

/// Evaluates formulas into [`Expr`].
pub struct ExprEval;

impl Evaluator for ExprEval {
    type Value = Expr;

    fn number(&self, r: &BigRational) -> Expr {
        Expr::scalar(Scalar::from_rational(r.clone()))
    }

    fn ident(&self, name: &str) -> Result<Expr, FormulaError> {
        Ok(match name {
            "i" => Expr::i(),
            "si" => Expr::si(),
            "z" => Expr::z(1),
            "L" => Expr::z(2),
            _ => Expr::atom(parse_atom(name).ok_or_else(|| FormulaError::UnknownIdent(name.to_string()))?),
        })
    }

    fn call(&self, name: &str, args: &[Node]) -> Result<Expr, FormulaError> {
        let bad = || FormulaError::BadArguments(name.to_string());
        match name {
            "exp" | "cosh" | "sinh" => {
                let [arg] = args else { return Err(bad()) };
                let a = self.eval(arg)?;
                Ok(match name {
                    "exp" => Expr::exp_of(&a)?,
                    "cosh" => Expr::cosh_of(&a)?,
                    _ => Expr::sinh_of(&a)?,
                })
            }
            "dx" => {
                let [arg, Node::Num(k)] = args else { return Err(bad()) };
                let k: usize = num_traits::ToPrimitive::to_usize(&k.to_integer()).ok_or_else(bad)?;
                Ok(self.eval(arg)?.d_dx_n(k))
            }
            _ => Err(FormulaError::UnknownFunction(name.to_string())),
        }
    }

    fn add(&self, a: Expr, b: Expr) -> Expr {
        a + b
    }

    fn sub(&self, a: Expr, b: Expr) -> Expr {
        a - b
    }

    fn mul(&self, a: Expr, b: Expr) -> Expr {
        a * b
    }

    fn neg(&self, a: Expr) -> Expr {
        -a
    }

    fn div(&self, a: Expr, b: Expr) -> Result<Expr, FormulaError> {
        Ok(a * b.try_inverse()?)
    }

    fn pow(&self, a: Expr, n: i32) -> Result<Expr, FormulaError> {
        Ok(a.powi(n)?)
    }
}

/// Parses a formula into a canonical [`Expr`].
pub fn parse_expr(src: &str) -> Result<Expr, FormulaError> {
    ExprEval.eval(&parse(src)?)
}

/// Parses a formula known to be well formed.
///
/// # Panics
/// On any parse or evaluation error; use for built-in transcriptions only.
pub fn ex(src: &str) -> Expr {
    parse_expr(src).unwrap_or_else(|e| panic!("bad built-in formula `{src}`: {e}"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::atom::Field;

    #[test]
    fn precedence_and_powers() {
        let e = ex("1 + 2*phi_1^2 - phi_1*phi_1");
        assert_eq!(e, &Expr::one() + &Expr::jet(Field::Phi, 1).pow(2));
        assert_eq!(ex("w^-2*w^2"), Expr::one());
        assert_eq!(ex("z^(-1)"), Expr::z(-1));
        assert_eq!(ex("2/w"), Expr::omega(-1).scale_int(2));
        assert_eq!(ex("-psb*psb_1"), -(&Expr::jet(Field::Psb, 0) * &Expr::jet(Field::Psb, 1)));
    }

    #[test]
    fn hyperbolic_functions() {
        assert_eq!(ex("cosh(phip/2)"), Expr::cosh_half(Field::PhiP, 1));
        assert_eq!(ex("exp(phi1 + phi2)"), &Expr::exp_half(Field::Phi1, 2) * &Expr::exp_half(Field::Phi2, 2));
        assert!(parse_expr("cosh(phip/3)").is_err());
        assert!(parse_expr("cosh(phip_1)").is_err());
    }

    #[test]
    fn derivative_function() {
        assert_eq!(ex("dx(phi_1^2, 1)"), ex("2*phi_1*phi_2"));
    }

    #[test]
    fn syntax_errors() {
        assert!(matches!(parse("1 +"), Err(FormulaError::Syntax { .. })));
        assert!(matches!(parse("(1"), Err(FormulaError::Syntax { .. })));
        assert!(matches!(parse_expr("foo"), Err(FormulaError::UnknownIdent(_))));
        assert!(matches!(parse("1 $ 2"), Err(FormulaError::Syntax { .. })));
    }

    #[test]
    fn canonical_text_round_trip() {
        let e = ex("(1/2 + si)*phi_2*psb*psb_1*exp(-phip/2)*w^-3*z^2 - i*f1*psbp_t3 + 7");
        assert_eq!(parse_expr(&e.to_string()).unwrap(), e);
    }
}
