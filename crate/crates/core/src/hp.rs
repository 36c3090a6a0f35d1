//! Configurable-precision binary floating point on top of big integers.
//!
//! An [`HPReal`] stores `mantissa * 2^exponent` with the mantissa
//! rounded (half to even) to a stated number of significant bits. The
//! stated precision travels with the value: arithmetic rounds each
//! result to the smaller of the operand precisions. Comparisons and
//! signs are exact, so bracketing root finders can trust them.
//!
//! This is deliberately a small, absolute-error-oriented kit — enough
//! for series summation, bisection and Newton steps — not a general
//! mpfr replacement.

use std::cmp::Ordering;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::Error;
use crate::rational::Rational;

/// Minimum stated precision accepted anywhere in the crate.
pub const MIN_PREC: u32 = 53;

#[derive(Debug, Clone)]
pub struct HPReal {
    mantissa: BigInt,
    exp: i64,
    prec: u32,
}

impl HPReal {
    pub fn zero(prec: u32) -> Self {
        HPReal {
            mantissa: BigInt::zero(),
            exp: 0,
            prec,
        }
    }

    pub fn one(prec: u32) -> Self {
        HPReal::from_integer(1, prec)
    }

    pub fn from_integer(n: i64, prec: u32) -> Self {
        HPReal {
            mantissa: BigInt::from(n),
            exp: 0,
            prec,
        }
        .rounded()
    }

    /// Exact value `2^e` at the given precision.
    pub fn exp2(e: i64, prec: u32) -> Self {
        HPReal {
            mantissa: BigInt::from(1),
            exp: e,
            prec,
        }
    }

    /// Rounds `r` to `prec` significant bits (half to even).
    pub fn from_rational(r: &Rational, prec: u32) -> Self {
        if r.is_zero() {
            return HPReal::zero(prec);
        }
        if r.is_integer() {
            return HPReal {
                mantissa: r.numer().clone(),
                exp: 0,
                prec,
            }
            .rounded();
        }
        let p = r.numer();
        let q = r.denom();
        // scale so the quotient carries prec+2 bits plus a sticky bit
        let shift = (prec as i64 + 2 + q.bits() as i64 - p.bits() as i64).max(0) as u64;
        let (quot, rem) = num_integer::Integer::div_rem(&(p << shift), q);
        let sticky = !rem.is_zero();
        let mut m: BigInt = quot << 1;
        if sticky {
            // the quotient truncates toward zero, so nudge away from zero
            if m.is_negative() {
                m -= 1;
            } else {
                m += 1;
            }
        }
        HPReal {
            mantissa: m,
            exp: -(shift as i64) - 1,
            prec,
        }
        .rounded()
    }

    /// Exact conversion of a finite `f64` (every finite double is dyadic).
    pub fn from_f64(v: f64, prec: u32) -> Self {
        assert!(v.is_finite(), "cannot convert a non-finite f64");
        if v == 0.0 {
            return HPReal::zero(prec);
        }
        let bits = v.to_bits();
        let negative = bits >> 63 == 1;
        let biased = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (m, e) = if biased == 0 {
            (frac, -1074i64)
        } else {
            (frac | (1u64 << 52), biased - 1075)
        };
        let mut mantissa = BigInt::from(m);
        if negative {
            mantissa = -mantissa;
        }
        HPReal {
            mantissa,
            exp: e,
            prec,
        }
        .rounded()
    }

    /// Builds a value from a fixed-point integer `v * 2^-scale`.
    pub(crate) fn from_fixed(v: BigInt, scale: u32, prec: u32) -> Self {
        HPReal {
            mantissa: v,
            exp: -(scale as i64),
            prec,
        }
        .rounded()
    }

    /// Fixed-point view `round(self * 2^scale)` (truncated toward zero).
    pub(crate) fn to_fixed(&self, scale: u32) -> BigInt {
        let shift = self.exp + scale as i64;
        if shift >= 0 {
            &self.mantissa << shift as u64
        } else {
            &self.mantissa >> (-shift) as u64
        }
    }

    pub fn precision_bits(&self) -> u32 {
        self.prec
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mantissa.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.mantissa.is_positive()
    }

    /// -1, 0 or +1.
    pub fn signum(&self) -> i8 {
        if self.mantissa.is_zero() {
            0
        } else if self.mantissa.is_negative() {
            -1
        } else {
            1
        }
    }

    pub fn abs(&self) -> Self {
        HPReal {
            mantissa: self.mantissa.abs(),
            exp: self.exp,
            prec: self.prec,
        }
    }

    /// Exact multiplication by `2^e`.
    pub fn mul_pow2(&self, e: i64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        HPReal {
            mantissa: self.mantissa.clone(),
            exp: self.exp + e,
            prec: self.prec,
        }
    }

    /// Re-rounds to a (usually lower) stated precision.
    pub fn round_to(&self, prec: u32) -> Self {
        HPReal {
            mantissa: self.mantissa.clone(),
            exp: self.exp,
            prec,
        }
        .rounded()
    }

    fn rounded(self) -> Self {
        let bits = self.mantissa.magnitude().bits();
        let prec = self.prec.max(1) as u64;
        if bits <= prec {
            return self;
        }
        let drop = bits - prec;
        let negative = self.mantissa.is_negative();
        let mag = self.mantissa.magnitude();
        let mut head: BigInt = BigInt::from(mag >> drop);
        let tail = mag - (head.magnitude() << drop);
        let half = num_bigint::BigUint::from(1u32) << (drop - 1);
        match tail.cmp(&half) {
            Ordering::Greater => head += 1,
            Ordering::Equal => {
                if num_integer::Integer::is_odd(&head) {
                    head += 1;
                }
            }
            Ordering::Less => {}
        }
        if negative {
            head = -head;
        }
        HPReal {
            mantissa: head,
            exp: self.exp + drop as i64,
            prec: self.prec,
        }
    }

    /// Exact difference as (mantissa, exponent), without rounding.
    fn sub_exact(&self, rhs: &Self) -> (BigInt, i64) {
        if self.is_zero() {
            return (-&rhs.mantissa, rhs.exp);
        }
        if rhs.is_zero() {
            return (self.mantissa.clone(), self.exp);
        }
        let e = self.exp.min(rhs.exp);
        let a = &self.mantissa << (self.exp - e) as u64;
        let b = &rhs.mantissa << (rhs.exp - e) as u64;
        (a - b, e)
    }

    pub fn cmp_value(&self, rhs: &Self) -> Ordering {
        let (d, _) = self.sub_exact(rhs);
        if d.is_zero() {
            Ordering::Equal
        } else if d.is_negative() {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    }

    /// Rounded square root; the input must be non-negative.
    pub fn sqrt(&self, prec: u32) -> Result<Self, Error> {
        if self.is_negative() {
            return Err(Error::NegativeSqrt);
        }
        if self.is_zero() {
            return Ok(HPReal::zero(prec));
        }
        let mut m = self.mantissa.magnitude().clone();
        let mut e = self.exp;
        if e % 2 != 0 {
            m <<= 1u32;
            e -= 1;
        }
        // lift to >= 2 (prec + 2) bits so the integer root has prec + 2
        let want = 2 * (prec as u64 + 2);
        let have = m.bits();
        let t = if have < want {
            (want - have).div_ceil(2)
        } else {
            0
        };
        m <<= 2 * t;
        e -= 2 * t as i64;
        let s = num_integer::Roots::sqrt(&m);
        let rem = &m - &s * &s;
        // nearest integer root, then a sticky bit for correct rounding
        let (s, rem_zero) = if rem > s {
            let s1 = &s + 1u32;
            let rem1 = (&s1 * &s1) - &m; // distance above, only for exactness check
            (s1, rem1.is_zero())
        } else {
            (s.clone(), rem.is_zero())
        };
        let mut mant = BigInt::from(s) << 1;
        if !rem_zero {
            mant += 1;
        }
        Ok(HPReal {
            mantissa: mant,
            exp: e / 2 - 1,
            prec,
        }
        .rounded())
    }

    /// `self^exp` by repeated multiplication.
    pub fn pow_u(&self, exp: u32) -> Self {
        let mut acc = HPReal::one(self.prec);
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// Rounded reciprocal.
    pub fn recip(&self) -> Result<Self, Error> {
        HPReal::one(self.prec).div(self)
    }

    /// Rounded division.
    pub fn div(&self, rhs: &Self) -> Result<Self, Error> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(HPReal::zero(self.prec.min(rhs.prec)));
        }
        let prec = self.prec.min(rhs.prec);
        let shift = (prec as i64 + 2 + rhs.mantissa.magnitude().bits() as i64
            - self.mantissa.magnitude().bits() as i64)
            .max(0) as u64;
        let (quot, rem) = num_integer::Integer::div_rem(&(&self.mantissa << shift), &rhs.mantissa);
        let mut m: BigInt = quot << 1;
        if !rem.is_zero() {
            if m.is_negative() || (m.is_zero() && self.is_negative() != rhs.is_negative()) {
                m -= 1;
            } else {
                m += 1;
            }
        }
        Ok(HPReal {
            mantissa: m,
            exp: self.exp - rhs.exp - shift as i64 - 1,
            prec,
        }
        .rounded())
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let bits = self.mantissa.magnitude().bits();
        let (m, e) = if bits > 53 {
            let drop = bits - 53;
            (
                (&self.mantissa >> drop).to_f64().unwrap_or(f64::NAN),
                self.exp + drop as i64,
            )
        } else {
            (self.mantissa.to_f64().unwrap_or(f64::NAN), self.exp)
        };
        if e > i32::MAX as i64 / 2 {
            return if m > 0.0 {
                f64::INFINITY
            } else {
                f64::NEG_INFINITY
            };
        }
        if e < i32::MIN as i64 / 2 {
            return 0.0;
        }
        m * 2f64.powi(e as i32)
    }

    /// The exact rational value `mantissa * 2^exp`.
    pub fn to_rational(&self) -> Rational {
        let base = Rational::from_integer(self.mantissa.clone());
        if self.exp >= 0 {
            base * Rational::from(2).pow_u(self.exp as u32)
        } else {
            base * Rational::new(1, BigInt::from(1) << (-self.exp) as u64).expect("nonzero")
        }
    }

    /// Decimal rendering at `digits` significant digits (half-even).
    pub fn to_decimal(&self, digits: usize) -> String {
        self.to_rational().to_decimal(digits)
    }

    /// Decimal rendering at the precision-implied digit count
    /// `ceil(prec * log10(2))`.
    pub fn to_decimal_auto(&self) -> String {
        self.to_decimal(digits_for_bits(self.prec))
    }
}

/// Significant decimal digits carried by `bits` binary digits.
pub fn digits_for_bits(bits: u32) -> usize {
    (bits as f64 * std::f64::consts::LOG10_2).ceil() as usize
}

impl PartialEq for HPReal {
    fn eq(&self, other: &Self) -> bool {
        self.cmp_value(other) == Ordering::Equal
    }
}

impl PartialOrd for HPReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp_value(other))
    }
}

impl Add for &HPReal {
    type Output = HPReal;
    fn add(self, rhs: &HPReal) -> HPReal {
        let prec = self.prec.min(rhs.prec);
        if self.is_zero() {
            return rhs.round_to(prec);
        }
        if rhs.is_zero() {
            return self.round_to(prec);
        }
        let e = self.exp.min(rhs.exp);
        let a = &self.mantissa << (self.exp - e) as u64;
        let b = &rhs.mantissa << (rhs.exp - e) as u64;
        HPReal {
            mantissa: a + b,
            exp: e,
            prec,
        }
        .rounded()
    }
}

impl Sub for &HPReal {
    type Output = HPReal;
    fn sub(self, rhs: &HPReal) -> HPReal {
        self + &(-rhs)
    }
}

impl Mul for &HPReal {
    type Output = HPReal;
    fn mul(self, rhs: &HPReal) -> HPReal {
        let prec = self.prec.min(rhs.prec);
        HPReal {
            mantissa: &self.mantissa * &rhs.mantissa,
            exp: self.exp + rhs.exp,
            prec,
        }
        .rounded()
    }
}

impl Neg for &HPReal {
    type Output = HPReal;
    fn neg(self) -> HPReal {
        HPReal {
            mantissa: -&self.mantissa,
            exp: self.exp,
            prec: self.prec,
        }
    }
}

macro_rules! forward_owned {
    ($trait:ident, $method:ident) => {
        impl $trait<HPReal> for HPReal {
            type Output = HPReal;
            fn $method(self, rhs: HPReal) -> HPReal {
                $trait::$method(&self, &rhs)
            }
        }
        impl $trait<&HPReal> for HPReal {
            type Output = HPReal;
            fn $method(self, rhs: &HPReal) -> HPReal {
                $trait::$method(&self, rhs)
            }
        }
        impl $trait<HPReal> for &HPReal {
            type Output = HPReal;
            fn $method(self, rhs: HPReal) -> HPReal {
                $trait::$method(self, &rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for HPReal {
    type Output = HPReal;
    fn neg(self) -> HPReal {
        -&self
    }
}

/// `pi` rounded to `prec` bits (Machin's arctangent identity, cached
/// per precision).
pub fn pi(prec: u32) -> HPReal {
    static CACHE: OnceLock<Mutex<Vec<(u32, HPReal)>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(Vec::new()));
    {
        let cache = cache.lock().expect("pi cache poisoned");
        if let Some((_, v)) = cache.iter().find(|(p, _)| *p == prec) {
            return v.clone();
        }
    }
    let wp = prec + 32;
    // atan(1/x) * 2^wp for integer x
    let atan_inv = |x: u32| -> BigInt {
        let xx = BigInt::from(x) * x;
        let mut power = BigInt::from(x);
        let mut total = BigInt::zero();
        let mut n = 0u64;
        loop {
            let term = (BigInt::from(1) << wp) / (&power * (2 * n + 1));
            if term.is_zero() {
                break;
            }
            if n.is_multiple_of(2) {
                total += term;
            } else {
                total -= term;
            }
            power *= &xx;
            n += 1;
        }
        total
    };
    let fixed = atan_inv(5) * 16 - atan_inv(239) * 4;
    let value = HPReal::from_fixed(fixed, wp, prec);
    cache
        .lock()
        .expect("pi cache poisoned")
        .push((prec, value.clone()));
    value
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rat(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn hp(s: &str, prec: u32) -> HPReal {
        HPReal::from_rational(&rat(s), prec)
    }

    #[test]
    fn dyadic_values_are_exact() {
        let x = hp("4239/1024", 128);
        assert_eq!(x.to_rational(), rat("4239/1024"));
        assert_eq!(x.to_decimal(20), "4.1396484375");
    }

    #[test]
    fn rounding_is_half_even() {
        let round5 = |m: i64| {
            HPReal {
                mantissa: BigInt::from(m),
                exp: 0,
                prec: 5,
            }
            .rounded()
            .to_rational()
        };
        // ties: 0b10011_1000 with odd head rounds up, 0b10010_1000 with
        // even head rounds down
        assert_eq!(round5(312), rat("320"));
        assert_eq!(round5(296), rat("288"));
        assert_eq!(round5(-312), rat("-320"));
        // below half rounds down, above half rounds up
        assert_eq!(round5(308), rat("304"));
        assert_eq!(round5(313), rat("320"));
    }

    #[test]
    fn arithmetic_carries_min_precision() {
        let a = hp("1/3", 128);
        let b = hp("2/7", 96);
        assert_eq!((&a + &b).precision_bits(), 96);
        assert_eq!((&a * &b).precision_bits(), 96);
        assert_eq!(a.div(&b).unwrap().precision_bits(), 96);
    }

    #[test]
    fn division_and_reciprocal() {
        let x = hp("355", 128).div(&hp("113", 128)).unwrap();
        let err = (&x - &hp("355/113", 128)).abs();
        assert!(err < HPReal::exp2(-120, 64));
        assert!(hp("1", 64).div(&HPReal::zero(64)).is_err());
    }

    #[test]
    fn sqrt_exact_and_rounded() {
        assert_eq!(hp("16", 128).sqrt(128).unwrap().to_rational(), rat("4"));
        assert_eq!(hp("1/4", 128).sqrt(128).unwrap().to_rational(), rat("1/2"));
        let s = hp("2", 160).sqrt(160).unwrap();
        let back = &s * &s;
        let err = (&back - &hp("2", 160)).abs();
        assert!(err < HPReal::exp2(-150, 64));
        assert!(hp("-1", 64).sqrt(64).is_err());
    }

    #[test]
    fn comparisons_are_exact() {
        let a = hp("1/3", 256);
        let b = hp("1/3", 64);
        assert!(a != b); // rounded at different precisions
        assert!(hp("2", 64) > hp("1", 64));
        assert!(hp("-2", 64) < HPReal::zero(64));
    }

    #[test]
    fn f64_round_trip_scale() {
        assert!((hp("40386/1000", 128).to_f64() - 40.386).abs() < 1e-12);
        assert_eq!(HPReal::zero(64).to_f64(), 0.0);
        assert!(HPReal::exp2(-1000, 64).to_f64() >= 0.0);
    }

    #[test]
    fn pi_digits() {
        let p = pi(200);
        assert_eq!(
            p.to_decimal(40),
            "3.141592653589793238462643383279502884197"
        );
        // cached path returns the same value
        assert_eq!(pi(200), p);
    }

    proptest! {
        #[test]
        fn from_rational_is_faithful(n in -100_000i64..100_000, d in 1i64..100_000) {
            let r = Rational::new(n, d).unwrap();
            let x = HPReal::from_rational(&r, 96);
            // |x - r| <= 2^-95 |r| (one ulp at 96 bits)
            let err = (&x.to_rational() - &r).abs();
            let bound = r.abs() * rat("1/39614081257132168796771975168"); // 2^-95
            prop_assert!(err <= bound);
        }

        #[test]
        fn add_sub_round_trip(an in -1000i64..1000, bn in -1000i64..1000) {
            let a = HPReal::from_integer(an, 128);
            let b = HPReal::from_integer(bn, 128);
            // integers this small are exact at 128 bits
            prop_assert_eq!((&(&a + &b) - &b).to_rational(), a.to_rational());
        }

        #[test]
        fn mul_div_track_the_exact_value(
            an in -100_000i64..100_000, ad in 1i64..1000,
            bn in 1i64..100_000, bd in 1i64..1000,
        ) {
            // one rounding each, so within 2^-94 relative at 96 bits
            let a = Rational::new(an, ad).unwrap();
            let b = Rational::new(bn, bd).unwrap();
            let (ha, hb) = (HPReal::from_rational(&a, 96), HPReal::from_rational(&b, 96));
            let rel = rat("1/19807040628566084398385987584"); // 2^-94

            let prod = (&ha * &hb).to_rational();
            let exact = &a * &b;
            prop_assert!((&prod - &exact).abs() <= exact.abs() * &rel);

            let quot = ha.div(&hb).unwrap().to_rational();
            let exact = &a / &b;
            prop_assert!((&quot - &exact).abs() <= exact.abs() * &rel);
        }
    }
}
