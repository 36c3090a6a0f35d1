//! Ordinary potential polynomials.
//!
//! `A(mu, n; x_1, ..., x_n)` is the coefficient of `z^n` in
//! `(1 + x_1 z + x_2 z^2 + ...)^mu`. In particular `A(mu, 0) = 1`,
//! `A(mu, 1) = mu x_1` and `A(mu, 2) = mu x_2 + C(mu, 2) x_1^2`.
//!
//! Coefficients are computed by the power-of-a-series recurrence
//! `n c_n = sum_{j=1}^{n} ((mu+1) j - n) x_j c_{n-j}` with `c_0 = 1`,
//! which is valid for any exponent and exact over the rationals. The
//! recurrence runs in O(n^2) rational operations instead of the O(mu n^2)
//! of repeated self-multiplication; the latter is kept as a test oracle.

use crate::error::Error;
use crate::rational::Rational;

/// Argument vector `(x_1, x_2, ...)` of a potential polynomial,
/// indexed from 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PotentialArgs {
    xs: Vec<Rational>,
}

impl PotentialArgs {
    pub fn new(xs: Vec<Rational>) -> Self {
        PotentialArgs { xs }
    }

    pub fn from_slice(xs: &[Rational]) -> Self {
        PotentialArgs { xs: xs.to_vec() }
    }

    pub fn len(&self) -> usize {
        self.xs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.xs.is_empty()
    }

    /// `x_j` for 1-based `j`.
    pub fn get(&self, j: usize) -> Option<&Rational> {
        if j == 0 {
            None
        } else {
            self.xs.get(j - 1)
        }
    }
}

/// Coefficient of `z^n` in `(1 + sum_j x_j z^j)^power` for a
/// non-negative integer exponent. Arguments beyond `x_n` are ignored;
/// `x_1..x_n` must all be present.
pub fn potential_poly(power: u32, n: usize, args: &PotentialArgs) -> Result<Rational, Error> {
    potential_poly_general(&Rational::from(power), n, args)
}

/// Same recurrence for an arbitrary rational exponent. The public
/// surface only needs integer exponents, but the recurrence itself does
/// not care.
pub(crate) fn potential_poly_general(
    power: &Rational,
    n: usize,
    args: &PotentialArgs,
) -> Result<Rational, Error> {
    if n == 0 {
        return Ok(Rational::one());
    }
    if args.len() < n {
        return Err(Error::MissingPotentialArgs {
            order: n,
            got: args.len(),
        });
    }
    let mu_plus_1 = power + &Rational::one();
    let mut c = Vec::with_capacity(n + 1);
    c.push(Rational::one());
    for t in 1..=n {
        let mut acc = Rational::zero();
        for j in 1..=t {
            let weight =
                &mu_plus_1 * &Rational::from_integer(j as i64) - Rational::from_integer(t as i64);
            if weight.is_zero() {
                continue;
            }
            acc = acc + weight * args.get(j).expect("length checked") * &c[t - j];
        }
        c.push(acc / Rational::from_integer(t as i64));
    }
    Ok(c.pop().expect("n >= 1"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::binomial;
    use proptest::prelude::*;

    fn rat(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn args(xs: &[&str]) -> PotentialArgs {
        PotentialArgs::new(xs.iter().map(|s| rat(s)).collect())
    }

    /// Test oracle: coefficient of z^n in (1 + sum x_j z^j)^mu by
    /// repeated truncated self-multiplication.
    pub(crate) fn potential_poly_bruteforce(mu: u32, n: usize, xs: &[Rational]) -> Rational {
        let mut base = vec![Rational::one()];
        base.extend(xs.iter().take(n).cloned());
        base.resize(n + 1, Rational::zero());
        let mut acc = vec![Rational::zero(); n + 1];
        acc[0] = Rational::one();
        for _ in 0..mu {
            let mut next = vec![Rational::zero(); n + 1];
            for a in 0..=n {
                if acc[a].is_zero() {
                    continue;
                }
                for b in 0..=(n - a) {
                    next[a + b] = &next[a + b] + &acc[a] * &base[b];
                }
            }
            acc = next;
        }
        acc[n].clone()
    }

    #[test]
    fn order_zero_is_one() {
        assert_eq!(potential_poly(0, 0, &args(&[])).unwrap(), rat("1"));
        assert_eq!(potential_poly(9, 0, &args(&[])).unwrap(), rat("1"));
    }

    #[test]
    fn first_orders() {
        // A(mu, 1) = mu x_1
        assert_eq!(potential_poly(3, 1, &args(&["5"])).unwrap(), rat("15"));
        // z^2 coefficient of (1 + z + z^2)^2 is 3
        assert_eq!(potential_poly(2, 2, &args(&["1", "1"])).unwrap(), rat("3"));
        assert_eq!(potential_poly(2, 2, &args(&["0", "0"])).unwrap(), rat("0"));
    }

    #[test]
    fn missing_arguments_rejected() {
        let e = potential_poly(2, 3, &args(&["1"])).unwrap_err();
        assert!(matches!(
            e,
            Error::MissingPotentialArgs { order: 3, got: 1 }
        ));
    }

    #[test]
    fn matches_bruteforce_grid() {
        let xs: Vec<Rational> = (1..=12)
            .map(|j| Rational::new(2 * j - 13, j + 2).unwrap())
            .collect();
        let pa = PotentialArgs::from_slice(&xs);
        for mu in 0..=6u32 {
            for n in 0..=12usize {
                assert_eq!(
                    potential_poly(mu, n, &pa).unwrap(),
                    potential_poly_bruteforce(mu, n, &xs),
                    "mu={mu} n={n}"
                );
            }
        }
    }

    proptest! {
        // A(mu, 2) = mu x_2 + C(mu, 2) x_1^2
        #![proptest_config(ProptestConfig::with_cases(100))]
        #[test]
        fn quadratic_case_identity(
            mu in 0u32..30,
            x1n in -50i64..50, x1d in 1i64..20,
            x2n in -50i64..50, x2d in 1i64..20,
        ) {
            let x1 = Rational::new(x1n, x1d).unwrap();
            let x2 = Rational::new(x2n, x2d).unwrap();
            let got = potential_poly(mu, 2, &PotentialArgs::new(vec![x1.clone(), x2.clone()])).unwrap();
            let mu_r = Rational::from(mu);
            let expect = &mu_r * &x2 + binomial(&mu_r, 2) * &x1 * &x1;
            prop_assert_eq!(got, expect);
        }

        // the internal recurrence also handles fractional exponents:
        // A(mu, 2) keeps the same closed form
        #[test]
        fn quadratic_case_for_fractional_exponent(
            mun in -40i64..40, mud in 1i64..12,
            x1n in -50i64..50, x1d in 1i64..20,
            x2n in -50i64..50, x2d in 1i64..20,
        ) {
            let mu = Rational::new(mun, mud).unwrap();
            let x1 = Rational::new(x1n, x1d).unwrap();
            let x2 = Rational::new(x2n, x2d).unwrap();
            let pa = PotentialArgs::new(vec![x1.clone(), x2.clone()]);
            let got = potential_poly_general(&mu, 2, &pa).unwrap();
            let expect = &mu * &x2 + binomial(&mu, 2) * &x1 * &x1;
            prop_assert_eq!(got, expect);
        }
    }
}
