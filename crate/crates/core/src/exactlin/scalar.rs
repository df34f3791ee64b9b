use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// A Gaussian rational `re + im·i` with exact rational parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct ExactScalar {
    re: BigRational,
    im: BigRational,
}

impl ExactScalar {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Self { re, im }
    }

    pub fn from_int(n: i64) -> Self {
        Self::new(BigRational::from_integer(n.into()), BigRational::zero())
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::new(BigRational::new(num.into(), den.into()), BigRational::zero())
    }

    pub fn gaussian(re: i64, im: i64) -> Self {
        Self::new(
            BigRational::from_integer(re.into()),
            BigRational::from_integer(im.into()),
        )
    }

    pub fn i() -> Self {
        Self::gaussian(0, 1)
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -self.im.clone())
    }

    /// `re² + im²`, the field norm down to the rationals.
    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm_sqr();
        Some(Self::new(&self.re / &n, -(&self.im / &n)))
    }

    /// Multiply by `(-1)^k`.
    pub fn signed(self, negative: bool) -> Self {
        if negative {
            -self
        } else {
            self
        }
    }
}

impl Zero for ExactScalar {
    fn zero() -> Self {
        Self::new(BigRational::zero(), BigRational::zero())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for ExactScalar {
    fn one() -> Self {
        Self::new(BigRational::one(), BigRational::zero())
    }
}

impl From<i64> for ExactScalar {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl From<BigRational> for ExactScalar {
    fn from(re: BigRational) -> Self {
        Self::new(re, BigRational::zero())
    }
}

impl<'a> Add<&'a ExactScalar> for &'a ExactScalar {
    type Output = ExactScalar;
    fn add(self, rhs: &ExactScalar) -> ExactScalar {
        ExactScalar::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl<'a> Sub<&'a ExactScalar> for &'a ExactScalar {
    type Output = ExactScalar;
    fn sub(self, rhs: &ExactScalar) -> ExactScalar {
        ExactScalar::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl<'a> Mul<&'a ExactScalar> for &'a ExactScalar {
    type Output = ExactScalar;
    fn mul(self, rhs: &ExactScalar) -> ExactScalar {
        if self.im.is_zero() && rhs.im.is_zero() {
            return ExactScalar::new(&self.re * &rhs.re, BigRational::zero());
        }
        ExactScalar::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl<'a> Div<&'a ExactScalar> for &'a ExactScalar {
    type Output = ExactScalar;
    fn div(self, rhs: &ExactScalar) -> ExactScalar {
        let inv = rhs.inv().expect("division by zero");
        self * &inv
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for ExactScalar {
            type Output = ExactScalar;
            fn $m(self, rhs: ExactScalar) -> ExactScalar {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a ExactScalar> for ExactScalar {
            type Output = ExactScalar;
            fn $m(self, rhs: &ExactScalar) -> ExactScalar {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl AddAssign<&ExactScalar> for ExactScalar {
    fn add_assign(&mut self, rhs: &ExactScalar) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl SubAssign<&ExactScalar> for ExactScalar {
    fn sub_assign(&mut self, rhs: &ExactScalar) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl MulAssign<&ExactScalar> for ExactScalar {
    fn mul_assign(&mut self, rhs: &ExactScalar) {
        *self = &*self * rhs;
    }
}

impl Neg for ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        ExactScalar::new(-self.re, -self.im)
    }
}

impl Neg for &ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        ExactScalar::new(-self.re.clone(), -self.im.clone())
    }
}

fn fmt_rational(r: &BigRational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if r.is_integer() {
        write!(f, "{}", r.numer())
    } else {
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}

/// Renders as `a/b`, `c/d*i` or `a/b+c/d*i`.
impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return fmt_rational(&self.re, f);
        }
        if !self.re.is_zero() {
            fmt_rational(&self.re, f)?;
            if self.im.is_positive() {
                f.write_str("+")?;
            }
        }
        fmt_rational(&self.im, f)?;
        f.write_str("*i")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid scalar literal {0:?}")]
pub struct ParseScalarError(pub String);

fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if s.is_empty() {
        return None;
    }
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(BigRational::new(num, den))
}

// Imaginary part with its trailing `i` / `*i` already stripped; an empty
// or bare-sign body stands for a unit coefficient.
fn parse_imag(body: &str) -> Option<BigRational> {
    let body = body.trim().trim_end_matches('*').trim();
    match body {
        "" | "+" => Some(BigRational::one()),
        "-" => Some(-BigRational::one()),
        _ => {
            let (neg, rest) = match body.strip_prefix('-') {
                Some(r) => (true, r),
                None => (false, body.strip_prefix('+').unwrap_or(body)),
            };
            let v = parse_rational(rest)?;
            Some(if neg { -v } else { v })
        }
    }
}

impl FromStr for ExactScalar {
    type Err = ParseScalarError;

    /// Accepts `a/b`, `a/b i`, `a/b*i`, `a/b+c/d i`, `a/b-c/d*i`, `i`, `-i`,
    /// with arbitrary interior whitespace.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseScalarError(s.to_string());
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(err());
        }
        let Some(body) = compact.strip_suffix('i') else {
            let re = {
                let (neg, rest) = match compact.strip_prefix('-') {
                    Some(r) => (true, r),
                    None => (false, compact.strip_prefix('+').unwrap_or(&compact)),
                };
                let v = parse_rational(rest).ok_or_else(err)?;
                if neg {
                    -v
                } else {
                    v
                }
            };
            return Ok(Self::from(re));
        };
        // Split at the last sign that is not in leading position.
        let split = body
            .char_indices()
            .skip(1)
            .filter(|&(_, c)| c == '+' || c == '-')
            .map(|(i, _)| i)
            .last();
        match split {
            Some(at) => {
                let re_part = &body[..at];
                let re = {
                    let (neg, rest) = match re_part.strip_prefix('-') {
                        Some(r) => (true, r),
                        None => (false, re_part.strip_prefix('+').unwrap_or(re_part)),
                    };
                    let v = parse_rational(rest).ok_or_else(err)?;
                    if neg {
                        -v
                    } else {
                        v
                    }
                };
                let im = parse_imag(&body[at..]).ok_or_else(err)?;
                Ok(Self::new(re, im))
            }
            None => {
                let im = parse_imag(body).ok_or_else(err)?;
                Ok(Self::new(BigRational::zero(), im))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(text: &str) -> ExactScalar {
        text.parse().unwrap()
    }

    #[test]
    fn parse_forms() {
        assert_eq!(s("3"), ExactScalar::from_int(3));
        assert_eq!(s("-1/2"), ExactScalar::from_ratio(-1, 2));
        assert_eq!(s("i"), ExactScalar::i());
        assert_eq!(s("-i"), -ExactScalar::i());
        assert_eq!(s("1/3 i"), &ExactScalar::from_ratio(1, 3) * &ExactScalar::i());
        assert_eq!(
            s("1/2+1/3i"),
            ExactScalar::new(BigRational::new(1.into(), 2.into()), BigRational::new(1.into(), 3.into()))
        );
        assert_eq!(s("1/2 - 1/3 * i"), s("1/2-1/3i"));
        assert_eq!(s("2-i"), ExactScalar::gaussian(2, -1));
        assert!("1/0".parse::<ExactScalar>().is_err());
        assert!("".parse::<ExactScalar>().is_err());
        assert!("x".parse::<ExactScalar>().is_err());
    }

    #[test]
    fn display_round_trips() {
        for text in ["0", "7", "-3/4", "5*i", "-1/2*i", "1/2+1/3*i", "-2-7/5*i"] {
            let v = s(text);
            assert_eq!(v.to_string(), text);
            assert_eq!(s(&v.to_string()), v);
        }
    }

    #[test]
    fn field_operations_are_exact() {
        let a = ExactScalar::new(BigRational::new(1.into(), 3.into()), BigRational::new((-2).into(), 7.into()));
        let b = ExactScalar::gaussian(5, 11);
        assert_eq!(&(&a + &b) - &b, a);
        assert_eq!(&(&a * &b) / &b, a);
        assert_eq!(a.conj().conj(), a);
        assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
        assert_eq!(&a * &a.inv().unwrap(), ExactScalar::one());
        assert!(ExactScalar::zero().inv().is_none());
    }
}
