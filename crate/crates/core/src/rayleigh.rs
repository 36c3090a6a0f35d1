//! Rayleigh sums of Bessel-function zeros, exactly.
//!
//! `sigma_k(nu)` denotes the sum of the `(-2k)`-th powers of the
//! positive zeros of the Bessel function of order `nu`. Three exact
//! views of it live here:
//!
//! * the coefficients `sigma_coeff(k, m)` of its large-`nu` Laurent
//!   expansion, generated by a double-convolution recurrence seeded
//!   with `sigma_coeff(1, m) = (-1)^m / 4`;
//! * the rational value `rayleigh_sum_exact(k, nu)`, obtained from the
//!   convolution identity
//!   `sigma_k(nu) = (sum_{n=1}^{k-1} sigma_n(nu) sigma_{k-n}(nu)) / (nu + k)`
//!   with base `sigma_1(nu) = 1 / (4 (nu + 1))`;
//! * the envelope `rayleigh_bound(k, nu) = C(2k,k) / (2^{2k+1} (2k-1) nu^{2k-1})`,
//!   an upper bound for `sigma_k(nu)` on `nu > 0` that is itself at
//!   most `nu^{1-2k}`.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use crate::error::Error;
use crate::rational::{binomial, Rational};

/// Memoized grid of Laurent coefficients, keyed by `(k, m)`.
///
/// Entries are computed at most once; the table may be shared freely
/// across threads.
#[derive(Debug, Default)]
pub struct SigmaTable {
    cells: Mutex<HashMap<(u32, u32), Rational>>,
}

impl SigmaTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Laurent coefficient `sigma_coeff(k, m)`, `k >= 1`, `m >= 0`.
    pub fn coeff(&self, k: u32, m: u32) -> Result<Rational, Error> {
        if k == 0 {
            return Err(Error::ZeroK);
        }
        let mut cells = self.cells.lock().expect("sigma table poisoned");
        Self::fill(&mut cells, k, m);
        Ok(cells[&(k, m)].clone())
    }

    /// Fills every entry of the `(1..=k, 0..=m)` block that is still
    /// missing. The recurrence for `(kk, mm)` only consults rows with
    /// smaller `kk`, so filling in row order is enough.
    fn fill(cells: &mut HashMap<(u32, u32), Rational>, k: u32, m: u32) {
        let quarter = Rational::new(1, 4).expect("nonzero");
        for kk in 1..=k {
            for mm in 0..=m {
                if cells.contains_key(&(kk, mm)) {
                    continue;
                }
                let value = if kk == 1 {
                    if mm.is_multiple_of(2) {
                        quarter.clone()
                    } else {
                        -&quarter
                    }
                } else {
                    let minus_k = Rational::from_integer(-(kk as i64));
                    let mut acc = Rational::zero();
                    for i in 0..=mm {
                        let mut inner = Rational::zero();
                        for j in 0..=i {
                            for n in 1..kk {
                                inner = inner + &cells[&(n, j)] * &cells[&(kk - n, i - j)];
                            }
                        }
                        acc = acc + minus_k.pow_u(mm - i) * inner;
                    }
                    acc
                };
                cells.insert((kk, mm), value);
            }
        }
    }
}

fn shared_table() -> &'static SigmaTable {
    static TABLE: OnceLock<SigmaTable> = OnceLock::new();
    TABLE.get_or_init(SigmaTable::new)
}

/// Laurent coefficient of `nu^{-(2k-1+m)}` in the large-`nu` expansion
/// of `sigma_k(nu)`, via the process-wide memo table.
pub fn sigma_coeff(k: u32, m: u32) -> Result<Rational, Error> {
    shared_table().coeff(k, m)
}

/// The displayed closed forms for the first three coefficient rows.
pub fn sigma_closed_form(k: u32, m: u32) -> Result<Rational, Error> {
    use num_bigint::BigInt;
    let sign = BigInt::from(if m.is_multiple_of(2) { 1 } else { -1 });
    let big = |b: u32, e: u32| BigInt::from(b).pow(e);
    let value = match k {
        1 => Rational::new(sign, 4)?,
        2 => Rational::new(sign * (big(2, m + 2) - m - 3), 16)?,
        3 => {
            let num = big(3, m + 4) - big(2, m + 7) + BigInt::from(2) * (m + 4) * (m + 6) + 7;
            Rational::new(sign * num, 256)?
        }
        _ => return Err(Error::NoClosedForm(k)),
    };
    Ok(value)
}

/// Exact Rayleigh sum together with its evaluation context.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RayleighValue {
    pub k: u32,
    pub nu: Rational,
    pub value: Rational,
    /// The convolution identity extends to any non-pole rational `nu`,
    /// but the value is a sum over zeros only for `nu > -1`. Set when
    /// the input lies outside that range.
    pub outside_series_domain: bool,
}

/// Exact rational value of `sigma_k(nu)` through the convolution
/// identity. Poles at `nu = -1, ..., -k` are rejected.
///
/// ```
/// use starlike::rayleigh::rayleigh_sum_exact;
/// let nu = "1".parse()?;
/// assert_eq!(rayleigh_sum_exact(2, &nu)?.value.to_string(), "1/192");
/// # Ok::<(), starlike::Error>(())
/// ```
pub fn rayleigh_sum_exact(k: u32, nu: &Rational) -> Result<RayleighValue, Error> {
    if k == 0 {
        return Err(Error::ZeroK);
    }
    for pole in 1..=k {
        if *nu == Rational::from_integer(-(pole as i64)) {
            return Err(Error::PoleAt { k, pole });
        }
    }
    let mut sums: Vec<Rational> = Vec::with_capacity(k as usize + 1);
    sums.push(Rational::zero()); // unused slot 0
    let base_den = Rational::from(4) * (nu + &Rational::one());
    sums.push(Rational::one() / base_den);
    for kk in 2..=k {
        let mut conv = Rational::zero();
        for n in 1..kk {
            conv = conv + &sums[n as usize] * &sums[(kk - n) as usize];
        }
        sums.push(conv / (nu + &Rational::from(kk)));
    }
    let minus_one = Rational::from_integer(-1);
    Ok(RayleighValue {
        k,
        nu: nu.clone(),
        value: sums.pop().expect("k >= 1"),
        outside_series_domain: *nu <= minus_one,
    })
}

/// Partial Laurent expansion
/// `nu^{-(2k-1)} * sum_{m=0}^{terms-1} sigma_coeff(k, m) nu^{-m}`,
/// valid in the convergence region `nu > k`.
pub fn laurent_truncation(k: u32, nu: &Rational, terms: u32) -> Result<Rational, Error> {
    if k == 0 {
        return Err(Error::ZeroK);
    }
    if terms == 0 {
        return Err(Error::MustBePositive {
            what: "number of Laurent terms",
        });
    }
    if *nu <= Rational::from(k) {
        return Err(Error::OutsideLaurentRegion { k, nu: nu.clone() });
    }
    let inv_nu = nu.recip()?;
    let mut acc = Rational::zero();
    // Horner evaluation of the inner polynomial in 1/nu
    for m in (0..terms).rev() {
        acc = acc * &inv_nu + sigma_coeff(k, m)?;
    }
    Ok(acc * inv_nu.pow_u(2 * k - 1))
}

/// Envelope `C(2k,k) / (2^{2k+1} (2k-1)) * nu^{-(2k-1)}` bounding
/// `sigma_k(nu)` from above for positive `nu`.
pub fn rayleigh_bound(k: u32, nu: &Rational) -> Result<Rational, Error> {
    if k == 0 {
        return Err(Error::ZeroK);
    }
    if !nu.is_positive() {
        return Err(Error::RequiresPositiveNu {
            what: "rayleigh_bound",
            nu: nu.clone(),
        });
    }
    let central = binomial(&Rational::from(2 * k), k);
    let denom = Rational::from(2).pow_u(2 * k + 1) * Rational::from_integer(2 * k as i64 - 1);
    Ok(central / denom * nu.recip()?.pow_u(2 * k - 1))
}
