//! Exact arithmetic in the cyclotomic field Q(s) with s^4 = -1.
//!
//! `s` is a primitive eighth root of unity standing for sqrt(i), so `s^2 = i`.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ScalarError {
    #[error("cannot parse scalar from `{0}`")]
    Parse(String),
    #[error("division by zero")]
    DivisionByZero,
}

/// `c0 + c1 s + c2 s^2 + c3 s^3`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Scalar {
    c: [BigRational; 4],
}

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl Scalar {
    pub fn new(c0: BigRational, c1: BigRational, c2: BigRational, c3: BigRational) -> Self {
        Scalar { c: [c0, c1, c2, c3] }
    }

    /// Reduces an arbitrary polynomial in `s` modulo `s^4 + 1`.
    pub fn normalize(raw: &[BigRational]) -> Self {
        let mut c = [q(0), q(0), q(0), q(0)];
        for (k, a) in raw.iter().enumerate() {
            let sign = if (k / 4) % 2 == 0 { 1 } else { -1 };
            if sign > 0 {
                c[k % 4] += a;
            } else {
                c[k % 4] -= a;
            }
        }
        Scalar { c }
    }

    pub fn from_rational(r: BigRational) -> Self {
        Scalar { c: [r, q(0), q(0), q(0)] }
    }

    pub fn int(n: i64) -> Self {
        Self::from_rational(q(n))
    }

    pub fn frac(n: i64, d: i64) -> Self {
        Self::from_rational(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    /// The generator `s = sqrt(i)`.
    pub fn s() -> Self {
        Scalar { c: [q(0), q(1), q(0), q(0)] }
    }

    pub fn i() -> Self {
        Scalar { c: [q(0), q(0), q(1), q(0)] }
    }

    pub fn coeffs(&self) -> &[BigRational; 4] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.c[0].is_one() && self.c[1..].iter().all(Zero::is_zero)
    }

    /// Rational value when the element lies in Q.
    pub fn as_rational(&self) -> Option<&BigRational> {
        self.c[1..].iter().all(Zero::is_zero).then_some(&self.c[0])
    }

    pub fn pow(&self, n: i32) -> Result<Self, ScalarError> {
        let base = if n < 0 { self.inverse()? } else { self.clone() };
        let mut out = Scalar::one();
        for _ in 0..n.unsigned_abs() {
            out = &out * &base;
        }
        Ok(out)
    }

    /// Multiplicative inverse via the product of the Galois conjugates.
    pub fn inverse(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        // conjugates s -> s^3, s^5, s^7; their product is rational times norm
        let conj = |k: usize| {
            let mut raw = vec![q(0); 32];
            for (j, a) in self.c.iter().enumerate() {
                raw[j * k] += a;
            }
            Scalar::normalize(&raw)
        };
        let p = &(&conj(3) * &conj(5)) * &conj(7);
        let norm = &p * self;
        let n = norm.c[0].clone();
        debug_assert!(norm.c[1..].iter().all(Zero::is_zero));
        Ok(p.scale(&n.recip()))
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        Scalar { c: [&self.c[0] * r, &self.c[1] * r, &self.c[2] * r, &self.c[3] * r] }
    }

    /// Complex value `(re, im)` using `s = exp(i pi / 4)`.
    pub fn to_complex_f64(&self) -> (f64, f64) {
        use num_traits::ToPrimitive;
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let f: Vec<f64> = self.c.iter().map(|r| r.to_f64().unwrap_or(f64::NAN)).collect();
        (f[0] + h * f[1] - h * f[3], h * f[1] + f[2] + h * f[3])
    }
}

impl Zero for Scalar {
    fn zero() -> Self {
        Scalar { c: [q(0), q(0), q(0), q(0)] }
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
}

impl One for Scalar {
    fn one() -> Self {
        Scalar::int(1)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::int(n)
    }
}

impl From<BigRational> for Scalar {
    fn from(r: BigRational) -> Self {
        Scalar::from_rational(r)
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, o: &Scalar) -> Scalar {
        Scalar {
            c: [
                &self.c[0] + &o.c[0],
                &self.c[1] + &o.c[1],
                &self.c[2] + &o.c[2],
                &self.c[3] + &o.c[3],
            ],
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, o: &Scalar) -> Scalar {
        Scalar {
            c: [
                &self.c[0] - &o.c[0],
                &self.c[1] - &o.c[1],
                &self.c[2] - &o.c[2],
                &self.c[3] - &o.c[3],
            ],
        }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, o: &Scalar) -> Scalar {
        let mut c = [q(0), q(0), q(0), q(0)];
        for (j, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (k, b) in o.c.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let prod = a * b;
                if j + k >= 4 {
                    c[j + k - 4] -= prod;
                } else {
                    c[j + k] += prod;
                }
            }
        }
        Scalar { c }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { c: [-&self.c[0], -&self.c[1], -&self.c[2], -&self.c[3]] }
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl $tr for Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar {
                (&self).$m(&o)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, o: &Scalar) {
        for k in 0..4 {
            if !o.c[k].is_zero() {
                self.c[k] += &o.c[k];
            }
        }
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, o: &Scalar) {
        for k in 0..4 {
            if !o.c[k].is_zero() {
                self.c[k] -= &o.c[k];
            }
        }
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, o: &Scalar) {
        *self = &*self * o;
    }
}

const UNITS: [&str; 4] = ["", "si", "i", "i*si"];

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, r) in self.c.iter().enumerate() {
            if r.is_zero() {
                continue;
            }
            let neg = r.is_negative();
            let mag = r.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            match (k, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (_, true) => write!(f, "{}", UNITS[k])?,
                (_, false) => write!(f, "{mag}*{}", UNITS[k])?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Scalar({self})")
    }
}

fn parse_rational(t: &str) -> Option<BigRational> {
    let t = t.trim();
    match t.split_once('/') {
        Some((n, d)) => {
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(BigRational::new(n.trim().parse().ok()?, d))
        }
        None => Some(BigRational::from_integer(t.parse().ok()?)),
    }
}

impl FromStr for Scalar {
    type Err = ScalarError;

    /// Parses the rendering produced by `Display`, e.g. `1/2 - 3*si + i*si`.
    fn from_str(src: &str) -> Result<Self, Self::Err> {
        let err = || ScalarError::Parse(src.to_string());
        let compact: String = src.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(err());
        }
        let mut pieces = Vec::new();
        let mut cur = String::new();
        for (idx, ch) in compact.char_indices() {
            if (ch == '+' || ch == '-') && idx > 0 && !cur.is_empty() {
                pieces.push(std::mem::take(&mut cur));
            }
            cur.push(ch);
        }
        pieces.push(cur);
        let mut out = Scalar::zero();
        for piece in pieces {
            let (neg, body) = match piece.strip_prefix('-') {
                Some(b) => (true, b),
                None => (false, piece.strip_prefix('+').unwrap_or(&piece)),
            };
            let (k, mag) = if let Some(n) = body.strip_suffix("i*si") {
                (3, n)
            } else if let Some(n) = body.strip_suffix("si") {
                (1, n)
            } else if let Some(n) = body.strip_suffix('i') {
                (2, n)
            } else {
                (0, body)
            };
            let mag = match (k, mag) {
                (0, m) => m,
                (_, "") => "1",
                (_, m) => m.strip_suffix('*').ok_or_else(err)?,
            };
            let mut r = parse_rational(mag).ok_or_else(err)?;
            if neg {
                r = -r;
            }
            out.c[k] += r;
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defining_relations() {
        let s = Scalar::s();
        assert_eq!(s.pow(4).unwrap(), Scalar::int(-1));
        assert_eq!(s.pow(8).unwrap(), Scalar::one());
        assert_eq!(&Scalar::i() * &Scalar::i(), Scalar::int(-1));
        let raw = [q(0), q(0), q(0), q(0), q(1)];
        assert_eq!(Scalar::normalize(&raw), Scalar::int(-1));
    }

    #[test]
    fn difference_of_squares() {
        let one = Scalar::one();
        let s = Scalar::s();
        let lhs = &(&one + &s) * &(&one - &s);
        assert_eq!(lhs, &one - &Scalar::i());
    }

    #[test]
    fn inverse_of_sqrt_i() {
        let s = Scalar::s();
        let inv = s.inverse().unwrap();
        assert_eq!(&s * &inv, Scalar::one());
        assert_eq!(inv, -&s.pow(3).unwrap());
        assert_eq!(Scalar::zero().inverse(), Err(ScalarError::DivisionByZero));
    }

    #[test]
    fn render_and_parse() {
        let x: Scalar = "1/2 - 3*si + i - 5/7*i*si".parse().unwrap();
        assert_eq!(x.to_string(), "1/2 - 3*si + i - 5/7*i*si");
        assert_eq!(Scalar::zero().to_string(), "0");
        assert_eq!("-i".parse::<Scalar>().unwrap(), -Scalar::i());
        assert!("1/0".parse::<Scalar>().is_err());
        assert!("x".parse::<Scalar>().is_err());
    }

    #[test]
    fn complex_value_of_s() {
        let (re, im) = Scalar::s().to_complex_f64();
        assert!((re - im).abs() < 1e-15 && (re * re + im * im - 1.0).abs() < 1e-15);
    }
}
