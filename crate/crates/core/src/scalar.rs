//! Field elements with two interchangeable backends.
//!
//! Every formula in this crate is written once against [`Scalar`]. The exact
//! backend (arbitrary-precision rationals) drives all exact identity checks;
//! the complex backend (IEEE doubles) drives contour integration and limit
//! checks. Mixing backends in one arithmetic expression is a usage error:
//! public operations reject it at entry, and the operator impls treat it as a
//! broken internal invariant.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub};

use crate::error::{Error, Result};

/// Which arithmetic backend a [`Scalar`] lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Backend {
    Exact,
    Complex,
}

/// A field element: an exact rational or a complex double.
#[derive(Clone, Debug, PartialEq)]
pub enum Scalar {
    Exact(BigRational),
    Complex(Complex64),
}

impl Scalar {
    pub fn backend(&self) -> Backend {
        match self {
            Scalar::Exact(_) => Backend::Exact,
            Scalar::Complex(_) => Backend::Complex,
        }
    }

    pub fn zero(backend: Backend) -> Self {
        match backend {
            Backend::Exact => Scalar::Exact(BigRational::zero()),
            Backend::Complex => Scalar::Complex(Complex64::ZERO),
        }
    }

    pub fn one(backend: Backend) -> Self {
        match backend {
            Backend::Exact => Scalar::Exact(BigRational::one()),
            Backend::Complex => Scalar::Complex(Complex64::ONE),
        }
    }

    pub fn from_int(n: i64, backend: Backend) -> Self {
        match backend {
            Backend::Exact => Scalar::Exact(BigRational::from_integer(BigInt::from(n))),
            Backend::Complex => Scalar::Complex(Complex64::new(n as f64, 0.0)),
        }
    }

    /// Exact rational `num/den`. Panics if `den == 0`.
    pub fn ratio(num: i64, den: i64) -> Self {
        Scalar::Exact(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn complex(re: f64, im: f64) -> Self {
        Scalar::Complex(Complex64::new(re, im))
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Exact(r) => r.is_zero(),
            Scalar::Complex(c) => c.re == 0.0 && c.im == 0.0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Exact(r) => r.is_one(),
            Scalar::Complex(c) => c.re == 1.0 && c.im == 0.0,
        }
    }

    /// Lossy conversion to a complex double (exact rationals go through f64).
    pub fn to_complex(&self) -> Complex64 {
        match self {
            Scalar::Exact(r) => Complex64::new(r.to_f64().unwrap_or(f64::NAN), 0.0),
            Scalar::Complex(c) => *c,
        }
    }

    /// Re-tag an exact scalar as a complex one; complex scalars pass through.
    pub fn as_complex_scalar(&self) -> Scalar {
        Scalar::Complex(self.to_complex())
    }

    /// Modulus as an f64 (used for convergence gates and diagnostics).
    pub fn abs(&self) -> f64 {
        match self {
            Scalar::Exact(r) => r.to_f64().map(f64::abs).unwrap_or(f64::INFINITY),
            Scalar::Complex(c) => c.norm(),
        }
    }

    pub fn try_div(&self, rhs: &Scalar, context: &'static str) -> Result<Scalar> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero(context));
        }
        Ok(match (self, rhs) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(a / b),
            (Scalar::Complex(a), Scalar::Complex(b)) => Scalar::Complex(a / b),
            _ => return Err(Error::MixedBackend(context)),
        })
    }

    pub fn inv(&self, context: &'static str) -> Result<Scalar> {
        Scalar::one(self.backend()).try_div(self, context)
    }

    /// Integer power with the convention `x^0 = 1` (including `0^0 = 1`).
    /// Negative exponents of zero are a division error.
    pub fn pow_i(&self, e: i64, context: &'static str) -> Result<Scalar> {
        if e == 0 {
            return Ok(Scalar::one(self.backend()));
        }
        if e < 0 {
            return self.inv(context)?.pow_i(-e, context);
        }
        match self {
            Scalar::Complex(c) => Ok(Scalar::Complex(c.powi(e as i32))),
            Scalar::Exact(r) => {
                let mut acc = BigRational::one();
                let mut base = r.clone();
                let mut e = e as u64;
                while e > 0 {
                    if e & 1 == 1 {
                        acc *= &base;
                    }
                    e >>= 1;
                    if e > 0 {
                        base = &base * &base;
                    }
                }
                Ok(Scalar::Exact(acc))
            }
        }
    }

    /// Tolerance comparison: `|a - b| <= tol * max(1, |b|)`.
    pub fn approx_eq(&self, other: &Scalar, tol: f64) -> bool {
        let d = (self - other).abs();
        d <= tol * f64::max(1.0, other.abs())
    }

    pub fn as_exact(&self) -> Option<&BigRational> {
        match self {
            Scalar::Exact(r) => Some(r),
            Scalar::Complex(_) => None,
        }
    }

    /// Parse an exact rational "a/b" or integer "a" (optional sign).
    pub fn parse_rational(text: &str) -> Result<Scalar> {
        let t = text.trim();
        let bad = || Error::Validation(format!("invalid rational literal: {text:?}"));
        let (num, den) = match t.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (t, "1"),
        };
        let num: BigInt = num.parse().map_err(|_| bad())?;
        let den: BigInt = den.parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(bad());
        }
        Ok(Scalar::Exact(BigRational::new(num, den)))
    }

    /// Parse a complex literal "x+yi" / "x-yi" / "x" / "yi" with decimal parts.
    pub fn parse_complex(text: &str) -> Result<Scalar> {
        let t: String = text.trim().chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || Error::Validation(format!("invalid complex literal: {text:?}"));
        if !t.ends_with('i') {
            let re: f64 = t.parse().map_err(|_| bad())?;
            return Ok(Scalar::complex(re, 0.0));
        }
        let body = &t[..t.len() - 1];
        // Split at the last +/- that is not an exponent sign and not leading.
        let mut split = None;
        for (idx, ch) in body.char_indices().skip(1) {
            if (ch == '+' || ch == '-') && !matches!(body.as_bytes()[idx - 1], b'e' | b'E') {
                split = Some(idx);
            }
        }
        match split {
            Some(idx) => {
                let re: f64 = body[..idx].parse().map_err(|_| bad())?;
                let imtxt = &body[idx..];
                let im: f64 = if imtxt == "+" {
                    1.0
                } else if imtxt == "-" {
                    -1.0
                } else {
                    imtxt.parse().map_err(|_| bad())?
                };
                Ok(Scalar::complex(re, im))
            }
            None => {
                let im: f64 = if body.is_empty() || body == "+" {
                    1.0
                } else if body == "-" {
                    -1.0
                } else {
                    body.parse().map_err(|_| bad())?
                };
                Ok(Scalar::complex(0.0, im))
            }
        }
    }

    /// Parse either literal form; "a/b" or integers become exact, anything
    /// containing '.', 'e', or 'i' becomes complex.
    pub fn parse(text: &str) -> Result<Scalar> {
        let t = text.trim();
        if t.contains('i') || t.contains('.') || t.contains('e') || t.contains('E') {
            Scalar::parse_complex(t)
        } else {
            Scalar::parse_rational(t)
        }
    }
}

/// All scalars share one backend; returns it or a mixed-backend error.
pub fn require_uniform(op: &'static str, scalars: &[&Scalar]) -> Result<Backend> {
    let mut backend = None;
    for s in scalars {
        match backend {
            None => backend = Some(s.backend()),
            Some(b) if b == s.backend() => {}
            Some(_) => return Err(Error::MixedBackend(op)),
        }
    }
    Ok(backend.unwrap_or(Backend::Exact))
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Exact(r) => write!(f, "{r}"),
            Scalar::Complex(c) => {
                if c.im >= 0.0 {
                    write!(f, "{}+{}i", c.re, c.im)
                } else {
                    write!(f, "{}{}i", c.re, c.im)
                }
            }
        }
    }
}

macro_rules! scalar_binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl $trait<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                match (self, rhs) {
                    (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(a $op b),
                    (Scalar::Complex(a), Scalar::Complex(b)) => Scalar::Complex(a $op b),
                    _ => panic!("mixed scalar backends"),
                }
            }
        }
        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
        impl $trait<Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                self.$method(&rhs)
            }
        }
    };
}

scalar_binop!(Add, add, +);
scalar_binop!(Sub, sub, -);
scalar_binop!(Mul, mul, *);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Exact(r) => Scalar::Exact(-r),
            Scalar::Complex(c) => Scalar::Complex(-c),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = &*self + rhs;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_parse_roundtrip() {
        let x = Scalar::parse_rational("-5/12").unwrap();
        assert_eq!(x, Scalar::ratio(-5, 12));
        assert_eq!(x.to_string(), "-5/12");
        assert_eq!(Scalar::parse_rational("7").unwrap(), Scalar::from_int(7, Backend::Exact));
        assert!(Scalar::parse_rational("1/0").is_err());
        assert!(Scalar::parse_rational("a/b").is_err());
    }

    #[test]
    fn complex_parse_forms() {
        assert_eq!(Scalar::parse_complex("0.5+0.25i").unwrap(), Scalar::complex(0.5, 0.25));
        assert_eq!(Scalar::parse_complex("0.5-0.25i").unwrap(), Scalar::complex(0.5, -0.25));
        assert_eq!(Scalar::parse_complex("2.5").unwrap(), Scalar::complex(2.5, 0.0));
        assert_eq!(Scalar::parse_complex("-1.5i").unwrap(), Scalar::complex(0.0, -1.5));
        assert_eq!(Scalar::parse("1e-3+2i").unwrap(), Scalar::complex(1e-3, 2.0));
        assert_eq!(Scalar::parse("3/4").unwrap(), Scalar::ratio(3, 4));
    }

    #[test]
    fn pow_conventions() {
        let z = Scalar::zero(Backend::Exact);
        assert!(z.pow_i(0, "t").unwrap().is_one());
        assert!(z.pow_i(-1, "t").is_err());
        let x = Scalar::ratio(2, 3);
        assert_eq!(x.pow_i(-2, "t").unwrap(), Scalar::ratio(9, 4));
    }

    #[test]
    fn mixed_backend_rejected() {
        let a = Scalar::ratio(1, 2);
        let b = Scalar::complex(0.5, 0.0);
        assert!(a.try_div(&b, "t").is_err());
        assert!(require_uniform("t", &[&a, &b]).is_err());
        assert_eq!(require_uniform("t", &[&a, &a]).unwrap(), Backend::Exact);
    }

    #[test]
    fn exact_to_complex_agrees() {
        let x = Scalar::ratio(-7, 8);
        assert_eq!(x.to_complex().re, -0.875);
        assert!(x.as_complex_scalar().approx_eq(&Scalar::complex(-0.875, 0.0), 1e-15));
    }
}
