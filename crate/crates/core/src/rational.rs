//! Arbitrary-precision rational numbers in canonical form.
//!
//! Every coefficient in this crate is an exact rational; floating-point
//! enters only through [`crate::hp`]. Values are kept canonical at all
//! times: positive denominator, numerator and denominator coprime.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::Error;

/// An exact rational number with a positive denominator and
/// `gcd(|numerator|, denominator) = 1`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(BigRational);

impl Rational {
    /// Builds `numer / denom`, reducing to canonical form.
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Result<Self, Error> {
        let denom = denom.into();
        if denom.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Rational(BigRational::new(numer.into(), denom)))
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    /// Multiplicative inverse; zero has none.
    pub fn recip(&self) -> Result<Self, Error> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rational(self.0.recip()))
    }

    /// Exact division, rejecting a zero divisor.
    pub fn checked_div(&self, rhs: &Self) -> Result<Self, Error> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rational(&self.0 / &rhs.0))
    }

    /// Integer power; a negative exponent of zero is rejected.
    pub fn pow(&self, exp: i64) -> Result<Self, Error> {
        if exp < 0 && self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mag = self.pow_u(u32::try_from(exp.unsigned_abs()).expect("exponent too large"));
        Ok(if exp < 0 { mag.recip()? } else { mag })
    }

    /// Non-negative integer power.
    pub fn pow_u(&self, exp: u32) -> Self {
        // powers of a canonical fraction stay canonical
        Rational(BigRational::new_raw(
            self.numer().pow(exp),
            self.denom().pow(exp),
        ))
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    /// Renders the value in decimal with at most `digits` significant
    /// digits, rounding half to even. Terminating expansions shorter
    /// than `digits` are printed exactly; very large or very small
    /// magnitudes switch to scientific notation.
    pub fn to_decimal(&self, digits: usize) -> String {
        let digits = digits.max(1);
        if self.is_zero() {
            return "0".to_string();
        }
        let neg = self.is_negative();
        let p = self.numer().abs();
        let q = self.denom().clone();

        // d10 = floor(log10(p/q)): first estimate from bit lengths, then
        // correct by exact comparison.
        let mut d10 =
            ((p.bits() as i64 - q.bits() as i64) as f64 * std::f64::consts::LOG10_2).floor() as i64;
        loop {
            // compare p/q against 10^d10
            let cmp = cmp_scaled(&p, &q, d10);
            if cmp == Ordering::Less {
                d10 -= 1;
                continue;
            }
            if cmp_scaled(&p, &q, d10 + 1) != Ordering::Less {
                d10 += 1;
                continue;
            }
            break;
        }

        // round p/q * 10^(digits-1-d10) half-even to an integer
        let shift = digits as i64 - 1 - d10;
        let (num, den) = if shift >= 0 {
            (p * BigInt::from(10u32).pow(shift as u32), q)
        } else {
            (p, q * BigInt::from(10u32).pow((-shift) as u32))
        };
        let (mut t, r) = num_integer::Integer::div_rem(&num, &den);
        let twice: BigInt = &r * 2;
        match twice.cmp(&den) {
            Ordering::Greater => t += 1,
            Ordering::Equal => {
                if num_integer::Integer::is_odd(&t) {
                    t += 1;
                }
            }
            Ordering::Less => {}
        }
        let mut mantissa = t.to_string();
        if mantissa.len() > digits {
            // rounding carried into a new leading digit (e.g. 999.9 -> 1000)
            mantissa.truncate(digits);
            d10 += 1;
        }

        format_digits(&mantissa, d10, digits, neg)
    }
}

/// Compares `p/q` against `10^e` (all positive).
fn cmp_scaled(p: &BigInt, q: &BigInt, e: i64) -> Ordering {
    if e >= 0 {
        p.cmp(&(q * BigInt::from(10u32).pow(e as u32)))
    } else {
        (p * BigInt::from(10u32).pow((-e) as u32)).cmp(q)
    }
}

fn format_digits(mantissa: &str, d10: i64, digits: usize, neg: bool) -> String {
    let sign = if neg { "-" } else { "" };
    let trimmed_len = mantissa.trim_end_matches('0').len().max(1);
    let body = if d10 >= digits as i64 || d10 < -4 {
        // scientific: d.ddd e exp
        let head = &mantissa[..1];
        let tail = mantissa[1..trimmed_len.max(1)].trim_end_matches('0');
        if tail.is_empty() {
            format!("{head}e{d10}")
        } else {
            format!("{head}.{tail}e{d10}")
        }
    } else if d10 >= 0 {
        let int_len = (d10 + 1) as usize;
        let int_part = &mantissa[..int_len];
        let frac_part = mantissa[int_len..].trim_end_matches('0');
        if frac_part.is_empty() {
            int_part.to_string()
        } else {
            format!("{int_part}.{frac_part}")
        }
    } else {
        let zeros = "0".repeat((-d10 - 1) as usize);
        let frac = mantissa.trim_end_matches('0');
        format!("0.{zeros}{frac}")
    };
    format!("{sign}{body}")
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl FromStr for Rational {
    type Err = Error;

    /// Accepts `p/q`, integers, and finite decimals with an optional
    /// exponent (`1.25`, `-3/8`, `2.5e-3`); all parsed exactly.
    fn from_str(s: &str) -> Result<Self, Error> {
        let err = || Error::ParseRational(s.to_string());
        let t = s.trim();
        if t.is_empty() {
            return Err(err());
        }
        if let Some((num, den)) = t.split_once('/') {
            let n: BigInt = num.trim().parse().map_err(|_| err())?;
            let d: BigInt = den.trim().parse().map_err(|_| err())?;
            if d.is_zero() {
                return Err(Error::ZeroDenominator);
            }
            return Ok(Rational(BigRational::new(n, d)));
        }
        // decimal form: [sign] digits [. digits] [e exp]
        let (body, exp) = match t.split_once(['e', 'E']) {
            Some((b, e)) => (b, e.parse::<i64>().map_err(|_| err())?),
            None => (t, 0),
        };
        let (int_part, frac_part) = match body.split_once('.') {
            Some((i, f)) => (i, f),
            None => (body, ""),
        };
        if frac_part.contains(['+', '-']) {
            return Err(err());
        }
        let joined = format!("{int_part}{frac_part}");
        if joined.is_empty() || joined == "-" || joined == "+" {
            return Err(err());
        }
        let n: BigInt = joined.parse().map_err(|_| err())?;
        let scale = frac_part.len() as i64 - exp;
        let ten = Rational::from_integer(10);
        let value = Rational(BigRational::from_integer(n));
        Ok(if scale > 0 {
            &value / &ten.pow_u(scale as u32)
        } else {
            &value * &ten.pow_u((-scale) as u32)
        })
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<&Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational($trait::$method(&self.0, &rhs.0))
            }
        }
        impl $trait<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                $trait::$method(&self, &rhs)
            }
        }
        impl $trait<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                $trait::$method(&self, rhs)
            }
        }
        impl $trait<Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                $trait::$method(self, &rhs)
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Div<&Rational> for &Rational {
    type Output = Rational;
    /// Panics on a zero divisor; use [`Rational::checked_div`] to recover.
    fn div(self, rhs: &Rational) -> Rational {
        assert!(!rhs.is_zero(), "division by zero");
        Rational(&self.0 / &rhs.0)
    }
}

impl Div<Rational> for Rational {
    type Output = Rational;
    fn div(self, rhs: Rational) -> Rational {
        &self / &rhs
    }
}

impl Div<&Rational> for Rational {
    type Output = Rational;
    fn div(self, rhs: &Rational) -> Rational {
        &self / rhs
    }
}

impl Div<Rational> for &Rational {
    type Output = Rational;
    fn div(self, rhs: Rational) -> Rational {
        self / &rhs
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_integer(n)
    }
}

impl From<i32> for Rational {
    fn from(n: i32) -> Self {
        Rational::from_integer(n)
    }
}

impl From<u32> for Rational {
    fn from(n: u32) -> Self {
        Rational::from_integer(n)
    }
}

/// Generalized binomial coefficient `mu (mu-1) ... (mu-k+1) / k!`.
pub fn binomial(mu: &Rational, k: u32) -> Rational {
    let mut num = Rational::one();
    let mut den = BigInt::one();
    for i in 0..k {
        num = num * (mu - &Rational::from_integer(i));
        den *= i + 1;
    }
    num / Rational::from_integer(den)
}
