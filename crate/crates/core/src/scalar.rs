//! Gaussian rationals `a + b i` with `a, b` arbitrary-precision rationals.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact complex scalar with rational real and imaginary parts.
///
/// `BigRational` keeps fractions reduced with positive denominators, so
/// derived equality and hashing are exact.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Scalar {
    pub re: BigRational,
    pub im: BigRational,
}

impl Scalar {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Scalar { re, im }
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::real(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn real(re: BigRational) -> Self {
        Scalar {
            re,
            im: BigRational::zero(),
        }
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        Scalar::real(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn gaussian(re: i64, im: i64) -> Self {
        Scalar {
            re: BigRational::from_integer(re.into()),
            im: BigRational::from_integer(im.into()),
        }
    }

    pub fn i() -> Self {
        Scalar::gaussian(0, 1)
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Scalar {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }

    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm_sqr();
        Some(Scalar {
            re: &self.re / &n,
            im: -(&self.im / &n),
        })
    }

    pub fn pow(&self, exp: i64) -> Option<Self> {
        if exp < 0 {
            return self.inv().map(|s| s.pow_u(exp.unsigned_abs()));
        }
        Some(self.pow_u(exp as u64))
    }

    pub fn pow_u(&self, mut exp: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Scalar::one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn to_complex(&self) -> Complex64 {
        Complex64::new(
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }

    /// Least common multiple of the denominators of both parts.
    pub fn denominator_lcm(&self) -> BigInt {
        self.re.denom().lcm(self.im.denom())
    }

    /// Exactly 1; the printer elides unit coefficients.
    pub(crate) fn is_one(&self) -> bool {
        self.im.is_zero() && self.re.is_one()
    }

    /// True if printing needs a leading minus sign (real and negative).
    pub(crate) fn is_negative_real(&self) -> bool {
        self.im.is_zero() && self.re.is_negative()
    }
}

impl Zero for Scalar {
    fn zero() -> Self {
        Scalar {
            re: BigRational::zero(),
            im: BigRational::zero(),
        }
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for Scalar {
    fn one() -> Self {
        Scalar::from_int(1)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<BigRational> for Scalar {
    fn from(r: BigRational) -> Self {
        Scalar::real(r)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl<'a> $tr<&'a Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &'a Scalar) -> Scalar {
                let f: fn(&Scalar, &Scalar) -> Scalar = $body;
                f(self, rhs)
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &'a Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| Scalar {
    re: &a.re + &b.re,
    im: &a.im + &b.im
});
forward_binop!(Sub, sub, |a, b| Scalar {
    re: &a.re - &b.re,
    im: &a.im - &b.im
});
forward_binop!(Mul, mul, |a, b| {
    if a.im.is_zero() && b.im.is_zero() {
        return Scalar::real(&a.re * &b.re);
    }
    Scalar {
        re: &a.re * &b.re - &a.im * &b.im,
        im: &a.re * &b.im + &a.im * &b.re,
    }
});
forward_binop!(Div, div, |a, b| {
    let inv = b.inv().expect("division by zero scalar");
    a * &inv
});

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl AddAssign for Scalar {
    fn add_assign(&mut self, rhs: Scalar) {
        *self += &rhs;
    }
}

impl SubAssign for Scalar {
    fn sub_assign(&mut self, rhs: Scalar) {
        *self -= &rhs;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            re: -self.re,
            im: -self.im,
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            re: -&self.re,
            im: -&self.im,
        }
    }
}

impl std::iter::Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |acc, x| acc + x)
    }
}

impl std::iter::Product for Scalar {
    fn product<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::one(), |acc, x| acc * x)
    }
}

fn fmt_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Scalar {
    /// Real values print bare (`3`, `-1/2`); anything with an imaginary part
    /// is parenthesized (`(2+3i)`, `(-i)`), matching the polynomial grammar.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return f.write_str(&fmt_rational(&self.re));
        }
        let mut s = String::from("(");
        if !self.re.is_zero() {
            s.push_str(&fmt_rational(&self.re));
            if self.im.is_positive() {
                s.push('+');
            }
        }
        if self.im.is_one() {
            s.push('i');
        } else if (-&self.im).is_one() {
            s.push_str("-i");
        } else {
            s.push_str(&fmt_rational(&self.im));
            s.push('i');
        }
        s.push(')');
        f.write_str(&s)
    }
}

/// Parses an unsigned rational literal `p` or `p/q` starting at `pos`.
pub(crate) fn parse_unsigned_rational(chars: &[char], pos: &mut usize) -> Option<BigRational> {
    let start = *pos;
    while *pos < chars.len() && chars[*pos].is_ascii_digit() {
        *pos += 1;
    }
    if *pos == start {
        return None;
    }
    let num: String = chars[start..*pos].iter().collect();
    let num = BigInt::from_str(&num).ok()?;
    if *pos < chars.len() && chars[*pos] == '/' {
        let save = *pos;
        *pos += 1;
        let ds = *pos;
        while *pos < chars.len() && chars[*pos].is_ascii_digit() {
            *pos += 1;
        }
        if *pos == ds {
            *pos = save;
            return Some(BigRational::from_integer(num));
        }
        let den: String = chars[ds..*pos].iter().collect();
        let den = BigInt::from_str(&den).ok()?;
        if den.is_zero() {
            *pos = save;
            return None;
        }
        return Some(BigRational::new(num, den));
    }
    Some(BigRational::from_integer(num))
}

impl FromStr for Scalar {
    type Err = Error;

    /// Accepts `3`, `-1/2`, `2+3i`, `(2+3i)`, `i`, `-1/3i`; whitespace ignored.
    fn from_str(text: &str) -> Result<Scalar> {
        let mut chars: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
        if chars.len() >= 2 && chars[0] == '(' && chars[chars.len() - 1] == ')' {
            chars = chars[1..chars.len() - 1].to_vec();
        }
        if chars.is_empty() {
            return Err(Error::parse("scalar", "empty scalar literal"));
        }
        let mut pos = 0;
        let mut acc = Scalar::zero();
        while pos < chars.len() {
            let mut sign = BigRational::one();
            if chars[pos] == '+' || chars[pos] == '-' {
                if chars[pos] == '-' {
                    sign = -sign;
                }
                pos += 1;
            } else if pos > 0 {
                return Err(Error::parse(
                    format!("scalar column {}", pos + 1),
                    format!("expected `+` or `-` in `{text}`"),
                ));
            }
            let mag = parse_unsigned_rational(&chars, &mut pos);
            let imag = pos < chars.len() && chars[pos] == 'i';
            if imag {
                pos += 1;
            }
            let mag = match (mag, imag) {
                (Some(m), _) => m,
                (None, true) => BigRational::one(),
                (None, false) => {
                    return Err(Error::parse(
                        format!("scalar column {}", pos + 1),
                        format!("expected a rational in `{text}`"),
                    ))
                }
            };
            if imag {
                acc.im += sign * mag;
            } else {
                acc.re += sign * mag;
            }
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print_round_trip() {
        for text in ["3", "-1/2", "(2+3i)", "(i)", "(-i)", "(1/2-1/3i)", "(5i)", "0"] {
            let s: Scalar = text.parse().unwrap();
            assert_eq!(s.to_string(), text);
        }
        assert_eq!("2+3i".parse::<Scalar>().unwrap(), Scalar::gaussian(2, 3));
        assert_eq!("4/6".parse::<Scalar>().unwrap(), Scalar::ratio(2, 3));
    }

    #[test]
    fn rejects_garbage() {
        assert!("".parse::<Scalar>().is_err());
        assert!("x".parse::<Scalar>().is_err());
        assert!("1/0".parse::<Scalar>().is_err());
        assert!("2i3".parse::<Scalar>().is_err());
    }

    #[test]
    fn field_operations() {
        let a = Scalar::gaussian(1, 2);
        let b = Scalar::gaussian(3, -1);
        assert_eq!(&a * &b, Scalar::gaussian(5, 5));
        assert_eq!(&(&a / &b) * &b, a);
        assert_eq!(Scalar::i().pow_u(2), Scalar::from_int(-1));
        assert_eq!(Scalar::from_int(2).pow(-2).unwrap(), Scalar::ratio(1, 4));
        assert!(Scalar::zero().inv().is_none());
    }
}
