//! Coefficient families of the large-order expansions of the radii of
//! starlikeness, and exact evaluators for their truncations.
//!
//! Two normalised Bessel functions are covered. Writing `r(nu)` for the
//! radius of starlikeness,
//!
//! * `phi` family: `r ~ 4 nu (1 + sum_k eps_k nu^-k)` with integer
//!   coefficients `eps_k`, alternatively
//!   `r ~ 4 (nu+1) (1 + sum_k delta_k nu^-k)` with
//!   `delta_1 = -1`, `delta_k = eps_k - delta_{k-1}`;
//! * `varphi` family: `r^2 ~ 2 nu (1 + sum_k rho_k nu^-k)` and
//!   `r ~ sqrt(2 nu) (1 + sum_k pi_k nu^-k)` with
//!   `pi_k = rho_k / 2 - (1/2) sum_{n<k} pi_n pi_{k-n}`.
//!
//! `eps` and `rho` come out of an asymptotic-inversion recurrence that
//! combines the Laurent coefficients of the Rayleigh sums with ordinary
//! potential polynomials of the coefficients found so far; all
//! arithmetic is exact.

use crate::error::Error;
use crate::hp::HPReal;
use crate::potential::{potential_poly, PotentialArgs};
use crate::rational::Rational;
use crate::rayleigh::sigma_coeff;

/// The four coefficient families.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoeffFamily {
    Eps,
    Delta,
    Rho,
    Pi,
}

impl CoeffFamily {
    pub fn name(self) -> &'static str {
        match self {
            CoeffFamily::Eps => "eps",
            CoeffFamily::Delta => "delta",
            CoeffFamily::Rho => "rho",
            CoeffFamily::Pi => "pi",
        }
    }
}

impl std::str::FromStr for CoeffFamily {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "eps" => Ok(CoeffFamily::Eps),
            "delta" => Ok(CoeffFamily::Delta),
            "rho" => Ok(CoeffFamily::Rho),
            "pi" => Ok(CoeffFamily::Pi),
            other => Err(Error::InvalidConfig(format!(
                "unknown coefficient family {other:?} (expected eps, delta, rho or pi)"
            ))),
        }
    }
}

/// A coefficient family computed through some order; `coeff(1)` is the
/// first expansion coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpansionSeries {
    family: CoeffFamily,
    coeffs: Vec<Rational>,
}

impl ExpansionSeries {
    pub fn family(&self) -> CoeffFamily {
        self.family
    }

    /// Number of coefficients held.
    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    /// `k`-th coefficient, 1-based.
    pub fn coeff(&self, k: usize) -> Option<&Rational> {
        if k == 0 {
            None
        } else {
            self.coeffs.get(k - 1)
        }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// `1 + sum_{k<=order} c_k nu^-k`, evaluated exactly.
    pub fn one_plus_series(&self, nu: &Rational) -> Result<Rational, Error> {
        let inv = nu.recip()?;
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = (acc + c) * &inv;
        }
        Ok(acc + Rational::one())
    }
}

/// Shared inversion recurrence behind `eps` and `rho`:
/// `c_k = (-1)^{k+1} - sum_{n=1}^{k-1} (-1)^{k-n} c_n
///        - sum_{n=2}^{k+1} w(n) sum_{m=0}^{k-n+1} sigma(n, k-n-m+1) A(n, m; c_1..c_m)`
/// where `w(n) = 4^n` for `eps` and `2^{n+1}` for `rho`.
fn inversion_coeffs(
    family: CoeffFamily,
    order: usize,
    weight: impl Fn(u32) -> Rational,
) -> Result<ExpansionSeries, Error> {
    let mut coeffs: Vec<Rational> = Vec::with_capacity(order);
    for k in 1..=order {
        let mut value = if k % 2 == 1 {
            Rational::one()
        } else {
            Rational::from_integer(-1)
        };
        for n in 1..k {
            let sign = if (k - n) % 2 == 0 { 1 } else { -1 };
            value = value - Rational::from_integer(sign) * &coeffs[n - 1];
        }
        let args = PotentialArgs::from_slice(&coeffs);
        for n in 2..=(k as u32 + 1) {
            let mut inner = Rational::zero();
            for m in 0..=(k as u32 + 1 - n) {
                let sigma = sigma_coeff(n, k as u32 + 1 - n - m)?;
                if sigma.is_zero() {
                    continue;
                }
                inner = inner + sigma * potential_poly(n, m as usize, &args)?;
            }
            value = value - weight(n) * inner;
        }
        coeffs.push(value);
    }
    Ok(ExpansionSeries { family, coeffs })
}

/// Coefficients of `r ~ 4 nu (1 + sum eps_k nu^-k)` for the first
/// family; all of them are integers.
pub fn eps_coeffs(order: usize) -> Result<ExpansionSeries, Error> {
    inversion_coeffs(CoeffFamily::Eps, order, |n| Rational::from(4).pow_u(n))
}

/// Coefficients of the rearranged form `r ~ 4 (nu+1) (1 + sum delta_k nu^-k)`.
pub fn delta_coeffs(order: usize) -> Result<ExpansionSeries, Error> {
    let eps = eps_coeffs(order)?;
    let mut coeffs = Vec::with_capacity(order);
    let mut prev = Rational::one(); // delta_0 = 1 makes delta_1 = eps_1 - 1 = -1
    for k in 1..=order {
        let d = eps.coeff(k).expect("computed above") - &prev;
        coeffs.push(d.clone());
        prev = d;
    }
    Ok(ExpansionSeries {
        family: CoeffFamily::Delta,
        coeffs,
    })
}

/// Coefficients of `r^2 ~ 2 nu (1 + sum rho_k nu^-k)` for the second family.
pub fn rho_coeffs(order: usize) -> Result<ExpansionSeries, Error> {
    inversion_coeffs(CoeffFamily::Rho, order, |n| Rational::from(2).pow_u(n + 1))
}

/// Coefficients of `r ~ sqrt(2 nu) (1 + sum pi_k nu^-k)`, the square
/// root of the `rho` series.
pub fn pi_coeffs(order: usize) -> Result<ExpansionSeries, Error> {
    let rho = rho_coeffs(order)?;
    let half = Rational::new(1, 2)?;
    let mut coeffs: Vec<Rational> = Vec::with_capacity(order);
    for k in 1..=order {
        let mut v = &half * rho.coeff(k).expect("computed above");
        for n in 1..k {
            v = v - &half * &coeffs[n - 1] * &coeffs[k - n - 1];
        }
        coeffs.push(v);
    }
    Ok(ExpansionSeries {
        family: CoeffFamily::Pi,
        coeffs,
    })
}

/// The three radius quantities whose truncations can be evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RadiusFamily {
    /// Radius of starlikeness of the first normalisation.
    Phi,
    /// Square of the radius of starlikeness of the second normalisation.
    VarphiSq,
    /// Radius of starlikeness of the second normalisation.
    Varphi,
}

impl RadiusFamily {
    pub fn name(self) -> &'static str {
        match self {
            RadiusFamily::Phi => "phi",
            RadiusFamily::VarphiSq => "varphi-sq",
            RadiusFamily::Varphi => "varphi",
        }
    }
}

impl std::str::FromStr for RadiusFamily {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "phi" => Ok(RadiusFamily::Phi),
            "varphi-sq" | "varphi_sq" | "varphisq" => Ok(RadiusFamily::VarphiSq),
            "varphi" => Ok(RadiusFamily::Varphi),
            other => Err(Error::InvalidConfig(format!(
                "unknown radius family {other:?} (expected phi, varphi or varphi-sq)"
            ))),
        }
    }
}

/// A truncation value: exact where the series is rational, real where a
/// square root enters.
#[derive(Debug, Clone)]
pub enum RadiusApprox {
    Exact(Rational),
    Real(HPReal),
}

impl RadiusApprox {
    pub fn to_decimal(&self, digits: usize) -> String {
        match self {
            RadiusApprox::Exact(r) => r.to_decimal(digits),
            RadiusApprox::Real(x) => x.to_decimal(digits),
        }
    }

    pub fn exact(&self) -> Option<&Rational> {
        match self {
            RadiusApprox::Exact(r) => Some(r),
            RadiusApprox::Real(_) => None,
        }
    }
}

/// A truncated expansion of one of the radius quantities at a concrete
/// order `nu`.
#[derive(Debug, Clone)]
pub struct TruncatedRadius {
    pub family: RadiusFamily,
    pub nu: Rational,
    /// Number of series terms kept past the leading factor; 0 keeps the
    /// leading factor alone.
    pub order: usize,
    pub value: RadiusApprox,
    /// The remainder is of order `nu^-(order+1)` relative to the
    /// leading factor; recorded for the verification harness.
    pub expected_error_order: usize,
}

fn require_positive(nu: &Rational, what: &'static str) -> Result<(), Error> {
    if nu.is_positive() {
        Ok(())
    } else {
        Err(Error::RequiresPositiveNu {
            what,
            nu: nu.clone(),
        })
    }
}

/// Exact truncation `4 nu (1 + sum_{k<=order} eps_k nu^-k)`.
pub fn radius_phi_asymptotic(nu: &Rational, order: usize) -> Result<TruncatedRadius, Error> {
    require_positive(nu, "radius_phi_asymptotic")?;
    let series = eps_coeffs(order)?;
    let value = Rational::from(4) * nu * series.one_plus_series(nu)?;
    Ok(TruncatedRadius {
        family: RadiusFamily::Phi,
        nu: nu.clone(),
        order,
        value: RadiusApprox::Exact(value),
        expected_error_order: order + 1,
    })
}

/// Exact truncation `2 nu (1 + sum_{k<=order} rho_k nu^-k)` of the
/// squared radius.
pub fn radius_varphi_sq_asymptotic(nu: &Rational, order: usize) -> Result<TruncatedRadius, Error> {
    require_positive(nu, "radius_varphi_sq_asymptotic")?;
    let series = rho_coeffs(order)?;
    let value = Rational::from(2) * nu * series.one_plus_series(nu)?;
    Ok(TruncatedRadius {
        family: RadiusFamily::VarphiSq,
        nu: nu.clone(),
        order,
        value: RadiusApprox::Exact(value),
        expected_error_order: order + 1,
    })
}

/// Truncation `sqrt(2 nu) (1 + sum_{k<=order} pi_k nu^-k)`; the series
/// factor is exact, only the square root is rounded (to `prec` bits).
pub fn radius_varphi_asymptotic(
    nu: &Rational,
    order: usize,
    prec: u32,
) -> Result<TruncatedRadius, Error> {
    require_positive(nu, "radius_varphi_asymptotic")?;
    let series = pi_coeffs(order)?;
    let factor = series.one_plus_series(nu)?;
    let two_nu = Rational::from(2) * nu;
    let root = HPReal::from_rational(&two_nu, prec + 8).sqrt(prec + 8)?;
    let value = (root * HPReal::from_rational(&factor, prec + 8)).round_to(prec);
    Ok(TruncatedRadius {
        family: RadiusFamily::Varphi,
        nu: nu.clone(),
        order,
        value: RadiusApprox::Real(value),
        expected_error_order: order + 1,
    })
}
