//! High-precision numerical ground truth.
//!
//! Everything here works through the confluent-limit series
//! `hyp0f1(b, z) = sum_m z^m / (m! (b)_m)`, which carries the Bessel
//! function of order `nu` as `(x/2)^nu / Gamma(nu+1) * hyp0f1(nu+1, -x^2/4)`.
//! The two normalised functions under study reduce to
//!
//! * `phi(z)    = z * hyp0f1(nu+1, -z/4)` and
//! * `varphi(z) = z * hyp0f1(nu+1, -z^2/4)`,
//!
//! so their derivatives, whose first positive zeros are the radii of
//! starlikeness, never need a Gamma factor: all normalisations cancel.
//!
//! Series evaluation runs in fixed point with guard bits sized from the
//! largest-term estimate (about `1.45 x` bits at argument `-x^2/4`),
//! roots are located by sign scans that guarantee the leftmost crossing
//! at the scan resolution, and refined by bisection or
//! bisection-safeguarded Newton steps.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::Error;
use crate::hp::{HPReal, MIN_PREC};
use crate::rational::Rational;

/// A refined root with its certificate: the final bracket still
/// straddles the sign change and the residual is the function value at
/// the reported root.
#[derive(Debug, Clone)]
pub struct RootResult {
    pub root: HPReal,
    pub bracket: (HPReal, HPReal),
    pub residual: HPReal,
    /// Number of function evaluations spent.
    pub iterations: u32,
}

/// Bisection tolerance used by the radius and zero finders: `2^(8-prec)`.
fn default_tol(prec: u32, carrier_prec: u32) -> HPReal {
    HPReal::exp2(8 - prec as i64, carrier_prec)
}

/// Guard bits for summing `hyp0f1` at argument magnitude `z_abs`: the
/// largest series term is about `exp(2 sqrt(z_abs))`.
fn guard_bits(z_abs: f64) -> u32 {
    (2.0 * z_abs.max(1.0).sqrt() * std::f64::consts::LOG2_E).ceil() as u32 + 32
}

/// `hyp0f1(b, z) = sum_m z^m / (m! (b)_m)` rounded to `prec` bits.
///
/// The sum runs in fixed point at `prec + guard` bits, where the guard
/// covers the alternating-series cancellation; terms are cut off once
/// the ratio of consecutive terms has fallen below one half and the
/// term magnitude is under `2^-(prec+10)`.
pub fn hyp0f1(b: &Rational, z: &HPReal, prec: u32) -> Result<HPReal, Error> {
    if prec < MIN_PREC {
        return Err(Error::PrecisionTooLow {
            prec,
            min: MIN_PREC,
        });
    }
    if !b.is_positive() {
        return Err(Error::NonPositiveB { b: b.clone() });
    }
    let z_abs = z.to_f64().abs();
    let wp = prec + guard_bits(z_abs);
    let z_fixed = z.to_fixed(wp);
    let b_num = b.numer().clone();
    let b_den = b.denom().clone();
    let b_f = b.to_f64();

    let mut term: BigInt = BigInt::from(1) << wp;
    let mut sum = term.clone();
    let cutoff: BigInt = BigInt::from(1) << (wp - prec - 10);
    let max_terms = 512 + 4 * (z_abs.sqrt() as u64) + 2 * wp as u64;

    let mut m = 0u64;
    loop {
        if m >= max_terms {
            return Err(Error::SeriesNoConvergence {
                terms: max_terms,
                prec,
            });
        }
        // term <- term * z / ((m+1)(b+m))
        term = (&term * &z_fixed) >> wp;
        term = term * &b_den / ((&b_num + &b_den * m) * (m + 1));
        if term.is_zero() {
            break;
        }
        sum += &term;
        m += 1;
        // ratio of the *next* term to this one
        let ratio = z_abs / ((m as f64 + 1.0) * (b_f + m as f64));
        if ratio < 0.5 && term.abs() < cutoff {
            break;
        }
    }
    Ok(HPReal::from_fixed(sum, wp, prec))
}

fn require_nonnegative(nu: &Rational, what: &'static str) -> Result<(), Error> {
    if nu.is_negative() {
        Err(Error::RequiresNonNegativeNu {
            what,
            nu: nu.clone(),
        })
    } else {
        Ok(())
    }
}

/// Derivative of `phi(z) = z * hyp0f1(nu+1, -z/4)`:
/// `g(z) + z g'(z)` with `g'(z) = -hyp0f1(nu+2, -z/4) / (4 (nu+1))`.
pub fn phi_deriv(nu: &Rational, z: &HPReal, prec: u32) -> Result<HPReal, Error> {
    require_nonnegative(nu, "phi_deriv")?;
    let pe = prec + 16;
    let arg = -z.mul_pow2(-2).round_to(pe);
    let g = hyp0f1(&(nu + &Rational::one()), &arg, pe)?;
    let g2 = hyp0f1(&(nu + &Rational::from(2)), &arg, pe)?;
    let factor = Rational::one() / (Rational::from(4) * (nu + &Rational::one()));
    let correction = z * g2 * HPReal::from_rational(&factor, pe);
    Ok((g - correction).round_to(prec))
}

/// Derivative of `varphi(z) = z * hyp0f1(nu+1, -z^2/4)`:
/// `h(z) + z h'(z)` with `h'(z) = -z hyp0f1(nu+2, -z^2/4) / (2 (nu+1))`.
pub fn varphi_deriv(nu: &Rational, z: &HPReal, prec: u32) -> Result<HPReal, Error> {
    require_nonnegative(nu, "varphi_deriv")?;
    let pe = prec + 16;
    let arg = -(z * z).mul_pow2(-2).round_to(pe);
    let h = hyp0f1(&(nu + &Rational::one()), &arg, pe)?;
    let h2 = hyp0f1(&(nu + &Rational::from(2)), &arg, pe)?;
    // z h'(z) = -z^2 h2 / (2 (nu+1)) = 2 arg h2 / (nu+1)
    let factor = Rational::from(2) / (nu + &Rational::one());
    let correction = &arg * h2 * HPReal::from_rational(&factor, pe);
    Ok((h + correction).round_to(prec))
}

/// Series form of the function whose positive zeros are the Bessel
/// zeros of order `nu`: `u(x) = hyp0f1(nu+1, -x^2/4)`.
fn bessel_u(nu: &Rational, x: &HPReal, prec: u32) -> Result<HPReal, Error> {
    let arg = -(x * x).mul_pow2(-2).round_to(prec);
    hyp0f1(&(nu + &Rational::one()), &arg, prec)
}

fn bessel_u_deriv(nu: &Rational, x: &HPReal, prec: u32) -> Result<HPReal, Error> {
    let arg = -(x * x).mul_pow2(-2).round_to(prec);
    let h2 = hyp0f1(&(nu + &Rational::from(2)), &arg, prec)?;
    let factor = Rational::from_integer(-1) / (Rational::from(2) * (nu + &Rational::one()));
    Ok(x * h2 * HPReal::from_rational(&factor, prec))
}

fn midpoint(lo: &HPReal, hi: &HPReal) -> HPReal {
    (lo + hi).mul_pow2(-1)
}

/// Finds the first sign change of `f` scanning upward from `scan_from`
/// in steps of `scan_step`, then shrinks the bracket by bisection to a
/// width of at most `tol`. The returned root is the leftmost sign
/// change at the scan resolution.
pub fn smallest_positive_root<F>(
    mut f: F,
    scan_from: &HPReal,
    scan_step: &HPReal,
    scan_limit: &HPReal,
    tol: &HPReal,
) -> Result<RootResult, Error>
where
    F: FnMut(&HPReal) -> Result<HPReal, Error>,
{
    if !scan_step.is_positive() {
        return Err(Error::MustBePositive { what: "scan step" });
    }
    if !tol.is_positive() {
        return Err(Error::MustBePositive {
            what: "root tolerance",
        });
    }
    let mut iterations = 0u32;
    let mut x_prev = scan_from.clone();
    let mut f_prev = f(&x_prev)?;
    iterations += 1;
    if f_prev.is_zero() {
        return Ok(RootResult {
            bracket: (&x_prev - tol, &x_prev + tol),
            residual: f_prev,
            root: x_prev,
            iterations,
        });
    }
    loop {
        let x = &x_prev + scan_step;
        if x > *scan_limit {
            return Err(Error::NoSignChange {
                from: scan_from.to_decimal(8),
                to: scan_limit.to_decimal(8),
                step: scan_step.to_decimal(8),
            });
        }
        let fx = f(&x)?;
        iterations += 1;
        if fx.is_zero() {
            return Ok(RootResult {
                bracket: (x_prev, &x + tol),
                residual: fx,
                root: x,
                iterations,
            });
        }
        if fx.signum() != f_prev.signum() {
            return bisect(f, x_prev, x, f_prev.signum(), tol, iterations);
        }
        x_prev = x;
        f_prev = fx;
    }
}

fn bisect<F>(
    mut f: F,
    mut lo: HPReal,
    mut hi: HPReal,
    sign_lo: i8,
    tol: &HPReal,
    mut iterations: u32,
) -> Result<RootResult, Error>
where
    F: FnMut(&HPReal) -> Result<HPReal, Error>,
{
    let max_iterations = iterations + 4 * 1024;
    while (&hi - &lo) > *tol {
        if iterations >= max_iterations {
            return Err(Error::IterationLimit(iterations));
        }
        let mid = midpoint(&lo, &hi);
        let fm = f(&mid)?;
        iterations += 1;
        if fm.is_zero() {
            return Ok(RootResult {
                bracket: (lo, hi),
                residual: fm,
                root: mid,
                iterations,
            });
        }
        if fm.signum() == sign_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let root = midpoint(&lo, &hi);
    let residual = f(&root)?;
    iterations += 1;
    Ok(RootResult {
        root,
        bracket: (lo, hi),
        residual,
        iterations,
    })
}

/// Bracketed refinement: Newton steps where they stay inside the
/// bracket, interleaved with bisection steps so progress is guaranteed.
///
/// A Newton step smaller than a quarter of the tolerance signals
/// convergence; the candidate is then certified by evaluating the signs
/// at `cand - tol` and `cand + tol`, which become the reported bracket.
fn refine_bracketed<F, D>(
    mut f: F,
    mut df: D,
    mut lo: HPReal,
    mut hi: HPReal,
    sign_lo: i8,
    tol: &HPReal,
) -> Result<RootResult, Error>
where
    F: FnMut(&HPReal) -> Result<HPReal, Error>,
    D: FnMut(&HPReal) -> Result<HPReal, Error>,
{
    let mut iterations = 0u32;
    let max_iterations = 4 * 1024;
    let mut x = midpoint(&lo, &hi);
    let mut prev_width = &hi - &lo;
    let mut stalled = 0u32;
    loop {
        if iterations >= max_iterations {
            return Err(Error::IterationLimit(iterations));
        }
        let fx = f(&x)?;
        iterations += 1;
        if fx.is_zero() {
            return Ok(RootResult {
                bracket: (lo, hi),
                residual: fx,
                root: x,
                iterations,
            });
        }
        if fx.signum() == sign_lo {
            lo = x.clone();
        } else {
            hi = x.clone();
        }
        let width = &hi - &lo;
        if width <= *tol {
            break;
        }
        // force a bisection step whenever the bracket stops halving, so
        // wandering Newton iterates cannot stall the refinement
        if width.mul_pow2(1) > prev_width {
            stalled += 1;
        } else {
            stalled = 0;
        }
        prev_width = width;
        let mut next = None;
        if stalled < 2 {
            let dfx = df(&x)?;
            iterations += 1;
            if !dfx.is_zero() {
                let step = fx.div(&dfx)?;
                let cand = &x - &step;
                if cand > lo && cand < hi {
                    if step.abs() <= tol.mul_pow2(-2) {
                        // converged: certify a tolerance-wide bracket
                        let lo2 = &cand - tol;
                        let hi2 = &cand + tol;
                        let s_lo2 = f(&lo2)?.signum();
                        let s_hi2 = f(&hi2)?.signum();
                        iterations += 2;
                        if s_lo2 == sign_lo && s_hi2 == -sign_lo {
                            let residual = f(&cand)?;
                            iterations += 1;
                            return Ok(RootResult {
                                root: cand,
                                bracket: (lo2, hi2),
                                residual,
                                iterations,
                            });
                        }
                    }
                    // a step far below the bracket width is progress even
                    // when the width itself is pinned by a stale endpoint
                    if step.abs().mul_pow2(2) <= prev_width {
                        stalled = 0;
                    }
                    next = Some(cand);
                }
            }
        } else {
            stalled = 0;
        }
        x = next.unwrap_or_else(|| midpoint(&lo, &hi));
    }
    // the width-based exit fires after an ordinary bisection step, so
    // the midpoint is still far from the endpoint granularity
    let root = midpoint(&lo, &hi);
    let residual = f(&root)?;
    iterations += 1;
    Ok(RootResult {
        root,
        bracket: (lo, hi),
        residual,
        iterations,
    })
}

/// First-order large-index estimate for the `n`-th positive Bessel
/// zero, usable as a bracket seed once its own correction term is
/// small; `None` outside that trust region.
fn mcmahon_guess(nu: f64, n: u32) -> Option<f64> {
    let beta = (n as f64 + nu / 2.0 - 0.25) * std::f64::consts::PI;
    if beta <= 0.0 {
        return None;
    }
    let corr = (4.0 * nu * nu - 1.0) / (8.0 * beta);
    if corr.abs() >= std::f64::consts::FRAC_PI_4 {
        return None;
    }
    let guess = beta - corr;
    // zeros of order nu all exceed nu
    if guess - 1.5 <= nu {
        return None;
    }
    Some(guess)
}

/// Extra working bits compensating the overall magnitude of the
/// `hyp0f1` carrier near the zeros: the function scales like
/// `2^(-0.57 nu)` around the first zero.
fn zero_scale_margin(nu_f: f64) -> u32 {
    (0.75 * nu_f.max(0.0)).ceil() as u32 + 16
}

/// The first `count` positive zeros of the Bessel function of order
/// `nu`, each refined to an absolute width of `2^(8-prec)`.
///
/// Brackets come from the large-index estimate where it is trustworthy
/// and otherwise from an upward sign scan in unit steps (consecutive
/// zeros are never closer than 3.1 apart for `nu >= 0`, so neither
/// bracketing path can skip or double-count a zero).
pub fn bessel_zeros(nu: &Rational, count: u32, prec: u32) -> Result<Vec<RootResult>, Error> {
    require_nonnegative(nu, "bessel_zeros")?;
    if count == 0 {
        return Err(Error::MustBePositive { what: "zero count" });
    }
    let nu_f = nu.to_f64();
    let margin = zero_scale_margin(nu_f);
    let pe = prec + 32 + margin;
    let pe_scan = 64 + margin;
    let tol = default_tol(prec, pe);

    let mut zeros: Vec<RootResult> = Vec::with_capacity(count as usize);
    let mut prev = nu_f.max(0.0); // all zeros exceed nu
    for n in 1..=count {
        let parity: i8 = if n % 2 == 1 { 1 } else { -1 };
        let (lo, hi) = locate_zero(nu, n, prev, parity, pe_scan)?;
        // lift the scan-precision bracket to full working precision, or
        // min-precision propagation would stall the refinement
        let result = refine_bracketed(
            |x| bessel_u(nu, x, pe),
            |x| bessel_u_deriv(nu, x, pe),
            lo.round_to(pe),
            hi.round_to(pe),
            parity,
            &tol,
        )?;
        prev = result.root.to_f64();
        zeros.push(result);
    }
    Ok(zeros)
}

/// Brackets the `n`-th zero: either a validated estimate-based bracket
/// of half-width 1.2, or the first sign change of a unit-step scan
/// starting just above the previous zero.
fn locate_zero(
    nu: &Rational,
    n: u32,
    prev: f64,
    parity: i8,
    pe_scan: u32,
) -> Result<(HPReal, HPReal), Error> {
    let nu_f = nu.to_f64();
    if let Some(guess) = mcmahon_guess(nu_f, n) {
        if guess - 1.2 > prev + 0.05 {
            let lo = HPReal::from_f64(guess - 1.2, pe_scan);
            let hi = HPReal::from_f64(guess + 1.2, pe_scan);
            let s_lo = bessel_u(nu, &lo, pe_scan)?.signum();
            let s_hi = bessel_u(nu, &hi, pe_scan)?.signum();
            // the sign left of the n-th zero alternates as (-1)^(n-1);
            // a mismatch means the estimate drifted, so fall through
            if s_lo == parity && s_hi == -parity {
                return Ok((lo, hi));
            }
        }
    }
    // sign scan: consecutive zeros are > 3.1 apart, a unit step cannot
    // hop over a pair of them
    let start = if n == 1 { nu_f.max(0.0) } else { prev + 0.2 };
    let mut x_prev = HPReal::from_f64(start, pe_scan);
    let step = HPReal::one(pe_scan);
    let max_steps = 4096u32;
    for _ in 0..max_steps {
        let x = &x_prev + &step;
        let s = bessel_u(nu, &x, pe_scan)?.signum();
        if s != parity {
            return Ok((x_prev, x));
        }
        x_prev = x;
    }
    Err(Error::NoSignChange {
        from: format!("{start}"),
        to: format!("{}", start + max_steps as f64),
        step: "1".to_string(),
    })
}

/// The `n`-th positive Bessel zero of order `nu`.
pub fn bessel_zero(nu: &Rational, n: u32, prec: u32) -> Result<RootResult, Error> {
    require_nonnegative(nu, "bessel_zero")?;
    if n == 0 {
        return Err(Error::MustBePositive { what: "zero index" });
    }
    let nu_f = nu.to_f64();
    let margin = zero_scale_margin(nu_f);
    let pe = prec + 32 + margin;
    let pe_scan = 64 + margin;
    // an estimate-based bracket needs no predecessor: it is narrower
    // than the minimal zero spacing, so it holds exactly one zero, and
    // the sign parity pins down which one
    if let Some(guess) = mcmahon_guess(nu_f, n) {
        let parity: i8 = if n % 2 == 1 { 1 } else { -1 };
        let lo = HPReal::from_f64(guess - 1.2, pe_scan);
        let hi = HPReal::from_f64(guess + 1.2, pe_scan);
        if bessel_u(nu, &lo, pe_scan)?.signum() == parity
            && bessel_u(nu, &hi, pe_scan)?.signum() == -parity
        {
            let tol = default_tol(prec, pe);
            return refine_bracketed(
                |x| bessel_u(nu, x, pe),
                |x| bessel_u_deriv(nu, x, pe),
                lo.round_to(pe),
                hi.round_to(pe),
                parity,
                &tol,
            );
        }
    }
    Ok(bessel_zeros(nu, n, prec)?.pop().expect("count >= 1"))
}

/// Smallest positive zero of the derivative of
/// `phi(z) = z hyp0f1(nu+1, -z/4)` — the radius of starlikeness of the
/// first normalised family. Scanned on `(0, j1^2)` where `j1` is the
/// first Bessel zero, in steps of `nu/8` (0.05 below `nu = 1`).
pub fn radius_phi_numeric(nu: &Rational, prec: u32) -> Result<RootResult, Error> {
    require_nonnegative(nu, "radius_phi_numeric")?;
    let pe = prec + 24;
    let j1 = bessel_zero(nu, 1, 64)?;
    let limit = (&j1.root * &j1.root + HPReal::exp2(-8, 64)).round_to(pe);
    let step = scan_step(nu, false, pe);
    let tol = default_tol(prec, pe);
    smallest_positive_root(
        |z| phi_deriv(nu, z, pe),
        &HPReal::zero(pe),
        &step,
        &limit,
        &tol,
    )
}

/// Smallest positive zero of the derivative of
/// `varphi(z) = z hyp0f1(nu+1, -z^2/4)` — the radius of starlikeness of
/// the second normalised family. Scanned on `(0, j1)` in steps of
/// `sqrt(2 nu)/8` (0.05 below `nu = 1`).
pub fn radius_varphi_numeric(nu: &Rational, prec: u32) -> Result<RootResult, Error> {
    require_nonnegative(nu, "radius_varphi_numeric")?;
    let pe = prec + 24;
    let j1 = bessel_zero(nu, 1, 64)?;
    let limit = (&j1.root + HPReal::exp2(-8, 64)).round_to(pe);
    let step = scan_step(nu, true, pe);
    let tol = default_tol(prec, pe);
    smallest_positive_root(
        |z| varphi_deriv(nu, z, pe),
        &HPReal::zero(pe),
        &step,
        &limit,
        &tol,
    )
}

/// Scan step sized from the leading-order location of the radius: the
/// root sits near `4 nu` for the first family and near `sqrt(2 nu)` for
/// the second, so an eighth of that scale cannot step over it.
fn scan_step(nu: &Rational, sqrt_scale: bool, prec: u32) -> HPReal {
    if *nu >= Rational::one() {
        if sqrt_scale {
            let two_nu = HPReal::from_rational(&(Rational::from(2) * nu), prec);
            two_nu.sqrt(prec).expect("nu >= 1 is positive").mul_pow2(-3)
        } else {
            HPReal::from_rational(&(nu / &Rational::from(8)), prec)
        }
    } else {
        HPReal::from_rational(&Rational::new(1, 20).expect("nonzero"), prec)
    }
}

/// Partial Rayleigh sum `sum_{n=1}^{terms} j_{nu,n}^(-2k)` over the
/// computed zeros: a strict lower bound for the exact rational value,
/// increasing in `terms`.
pub fn rayleigh_partial(k: u32, nu: &Rational, terms: u32, prec: u32) -> Result<HPReal, Error> {
    if k == 0 {
        return Err(Error::ZeroK);
    }
    let pe = prec + 16;
    let zeros = bessel_zeros(nu, terms, pe)?;
    let mut sum = HPReal::zero(pe);
    for z in &zeros {
        let p = z.root.round_to(pe).pow_u(2 * k);
        sum = sum + p.recip()?;
    }
    Ok(sum.round_to(prec))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hp;

    fn rat(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn hpr(s: &str, prec: u32) -> HPReal {
        HPReal::from_rational(&rat(s), prec)
    }

    /// |a - b| <= 2^t
    fn close_2pow(a: &HPReal, b: &HPReal, t: i64) -> bool {
        (a - b).abs() <= HPReal::exp2(t, 64)
    }

    #[test]
    fn hyp0f1_at_zero_is_one() {
        let v = hyp0f1(&rat("3/2"), &HPReal::zero(128), 128).unwrap();
        assert_eq!(v.to_rational(), Rational::one());
    }

    #[test]
    fn hyp0f1_rejects_bad_inputs() {
        assert!(matches!(
            hyp0f1(&rat("0"), &HPReal::zero(128), 128),
            Err(Error::NonPositiveB { .. })
        ));
        assert!(matches!(
            hyp0f1(&rat("1"), &HPReal::zero(128), 32),
            Err(Error::PrecisionTooLow { .. })
        ));
    }

    #[test]
    fn hyp0f1_vanishes_at_first_bessel_zero() {
        // x rounded to 16 digits, so the value sits within ~1e-15 of 0
        let x = hpr("2.404825557695773", 128);
        let arg = -(&x * &x).mul_pow2(-2);
        let v = hyp0f1(&rat("1"), &arg, 128).unwrap();
        assert!(v.abs() < hpr("1e-14", 64), "got {}", v.to_decimal(5));
    }

    #[test]
    fn hyp0f1_half_integer_reduction() {
        // hyp0f1(3/2, -x^2/4) = sin(x)/x vanishes at pi
        let pi = hp::pi(160);
        let arg = -(&pi * &pi).mul_pow2(-2);
        let v = hyp0f1(&rat("3/2"), &arg, 160).unwrap();
        assert!(v.abs() < HPReal::exp2(-140, 64), "got {}", v.to_decimal(8));
    }

    #[test]
    fn hyp0f1_large_argument_cancellation() {
        // hyp0f1(3/2, -x^2/4) at x = 40 pi stays near zero despite
        // ~180 bits of alternating-series cancellation
        let x = hp::pi(200) * HPReal::from_integer(40, 200);
        let arg = -(&x * &x).mul_pow2(-2);
        let v = hyp0f1(&rat("3/2"), &arg, 160).unwrap();
        assert!(v.abs() < HPReal::exp2(-130, 64), "got {}", v.to_decimal(8));
    }

    #[test]
    fn phi_deriv_is_one_at_origin() {
        let v = phi_deriv(&rat("7/2"), &HPReal::zero(128), 128).unwrap();
        assert_eq!(v.to_rational(), Rational::one());
        let v = varphi_deriv(&rat("0"), &HPReal::zero(128), 128).unwrap();
        assert_eq!(v.to_rational(), Rational::one());
    }

    #[test]
    fn phi_deriv_sign_change_window() {
        // phi' flips sign on [4 nu (1 - 1/nu), 4 nu (1 + 1/nu)] at nu = 20
        let nu = rat("20");
        let lo = phi_deriv(&nu, &hpr("76", 128), 128).unwrap();
        let hi = phi_deriv(&nu, &hpr("84", 128), 128).unwrap();
        assert!(lo.is_positive() && hi.is_negative());
    }

    #[test]
    fn varphi_deriv_sign_change_window() {
        // varphi' flips sign on [sqrt(2 nu), sqrt(2 nu)(1 + 1/nu)] at nu = 20
        let nu = rat("20");
        let s = hpr("40", 128).sqrt(128).unwrap();
        let lo = varphi_deriv(&nu, &s, 128).unwrap();
        let hi = varphi_deriv(&nu, &(&s * &hpr("21/20", 128)), 128).unwrap();
        assert!(lo.is_positive() && hi.is_negative());
    }

    #[test]
    fn scan_finds_leftmost_root() {
        let prec = 96;
        let tol = HPReal::exp2(-40, prec);
        let step = hpr("1/10", prec);
        let limit = hpr("10", prec);
        // f(z) = z - 1
        let r = smallest_positive_root(
            |z| Ok(z - &HPReal::one(prec)),
            &HPReal::zero(prec),
            &step,
            &limit,
            &tol,
        )
        .unwrap();
        assert!(close_2pow(&r.root, &HPReal::one(prec), -39));
        assert!(r.bracket.0 < r.root && r.root < r.bracket.1);

        // f(z) = (z-1)(z-2): leftmost root wins
        let one = HPReal::one(prec);
        let two = HPReal::from_integer(2, prec);
        let r = smallest_positive_root(
            |z| Ok((z - &one) * (z - &two)),
            &HPReal::zero(prec),
            &step,
            &limit,
            &tol,
        )
        .unwrap();
        assert!(close_2pow(&r.root, &one, -39));

        // no crossing inside the window
        let err = smallest_positive_root(
            |z| Ok(z + &HPReal::one(prec)),
            &HPReal::zero(prec),
            &step,
            &limit,
            &tol,
        );
        assert!(matches!(err, Err(Error::NoSignChange { .. })));

        // exact zero at the scan origin
        let r = smallest_positive_root(|z| Ok(z.clone()), &HPReal::zero(prec), &step, &limit, &tol)
            .unwrap();
        assert!(r.root.is_zero());
        assert!(r.residual.is_zero());

        // hitting a root exactly on a scan point (dyadic step, so the
        // grid point 4/8 is exact)
        let r = smallest_positive_root(
            |z| Ok(z - &HPReal::from_rational(&rat("1/2"), prec)),
            &HPReal::zero(prec),
            &hpr("1/8", prec),
            &limit,
            &tol,
        )
        .unwrap();
        assert_eq!(r.root.to_rational(), rat("1/2"));
        assert!(r.residual.is_zero());
    }

    #[test]
    fn scan_handles_multiple_sign_changes() {
        // roots at 1/2, 3/2, 5/2: scanning with step 1/5 must return 1/2
        let prec = 96;
        let tol = HPReal::exp2(-40, prec);
        let roots = ["1/2", "3/2", "5/2"].map(|s| hpr(s, prec));
        let f = |z: &HPReal| {
            let mut acc = HPReal::one(prec);
            for r in &roots {
                acc = acc * (z - r);
            }
            Ok(acc)
        };
        let r = smallest_positive_root(
            f,
            &HPReal::zero(prec),
            &hpr("1/5", prec),
            &hpr("9", prec),
            &tol,
        )
        .unwrap();
        assert!(close_2pow(&r.root, &roots[0], -39));
    }

    #[test]
    fn bessel_zeros_half_integer_are_multiples_of_pi() {
        // at nu = 1/2 the zeros are exactly n pi
        let zeros = bessel_zeros(&rat("1/2"), 5, 128).unwrap();
        let pi = hp::pi(200);
        for (i, z) in zeros.iter().enumerate() {
            let expect = &pi * &HPReal::from_integer(i as i64 + 1, 200);
            assert!(
                close_2pow(&z.root, &expect, -118),
                "n={} got {}",
                i + 1,
                z.root.to_decimal(30)
            );
        }
    }

    #[test]
    fn first_bessel_zero_of_order_zero() {
        let z = bessel_zero(&rat("0"), 1, 128).unwrap();
        // j_{0,1} = 2.404825557695772768621632...
        let expect = hpr("2.404825557695772768621632", 128);
        assert!(close_2pow(&z.root, &expect, -75));
        assert!(z.bracket.0 < z.root && z.root < z.bracket.1);
        assert!(z.residual.abs() < HPReal::exp2(-110, 64));
    }

    #[test]
    fn bessel_zero_single_matches_sequential() {
        // n = 8 takes the estimate path; the sequential path must agree
        let nu = rat("3/2");
        let direct = bessel_zero(&nu, 8, 96).unwrap();
        let seq = bessel_zeros(&nu, 8, 96).unwrap();
        assert!(close_2pow(&direct.root, &seq[7].root, -85));
    }

    #[test]
    fn bessel_zeros_exceed_order() {
        for nu_s in ["0", "1", "10", "50"] {
            let nu = rat(nu_s);
            let z = bessel_zero(&nu, 1, 96).unwrap();
            assert!(
                z.root.to_rational() > nu,
                "j_({nu_s},1) = {}",
                z.root.to_decimal(20)
            );
        }
    }

    #[test]
    fn bessel_zero_precision_scaling() {
        // doubling the precision moves the root by less than 2^(16-prec)
        let nu = rat("5");
        let a = bessel_zero(&nu, 1, 96).unwrap();
        let b = bessel_zero(&nu, 1, 192).unwrap();
        assert!(close_2pow(&a.root, &b.root, 16 - 96));
    }

    #[test]
    fn radius_precision_scaling() {
        let nu = rat("5");
        let a = radius_phi_numeric(&nu, 96).unwrap();
        let b = radius_phi_numeric(&nu, 192).unwrap();
        assert!(close_2pow(&a.root, &b.root, 16 - 96));
        let a = radius_varphi_numeric(&nu, 96).unwrap();
        let b = radius_varphi_numeric(&nu, 192).unwrap();
        assert!(close_2pow(&a.root, &b.root, 16 - 96));
    }

    #[test]
    fn radius_phi_small_orders() {
        // frozen from an independent 200-bit computation
        let r = radius_phi_numeric(&rat("0"), 128).unwrap();
        let expect = hpr("2.5582377641316631658675888256", 128);
        assert!(close_2pow(&r.root, &expect, -90));

        let r10 = radius_phi_numeric(&rat("10"), 128).unwrap();
        let expect10 = hpr("40.3860856312162154393086091688", 128);
        assert!(close_2pow(&r10.root, &expect10, -90));
        // consistency residual at the reported root
        let resid = phi_deriv(&rat("10"), &r10.root, 128).unwrap();
        assert!(resid.abs() < hpr("1e-25", 64));
    }

    #[test]
    fn radius_phi_large_order_ratio() {
        // r/(4 nu) - 1 = eps_2/nu^2 + O(nu^-4) at nu = 100
        let r = radius_phi_numeric(&rat("100"), 128).unwrap();
        let expect = hpr("400.039984097238745848958581862", 128);
        assert!(close_2pow(&r.root, &expect, -85));
        let ratio = r.root.div(&hpr("400", 128)).unwrap();
        assert!((&ratio - &HPReal::one(128)).abs() < hpr("1/1000", 64));
        // against the limiting factor 4 (nu + 1) the gap is ~ 1/nu
        let ratio_lim = r.root.div(&hpr("404", 128)).unwrap();
        let gap = (&ratio_lim - &HPReal::one(128)).abs();
        assert!(gap > hpr("9/1000", 64) && gap < hpr("11/1000", 64));
    }

    #[test]
    fn radius_varphi_values() {
        // nu = 1/2 reduces to cos: the radius is exactly pi/2
        let r = radius_varphi_numeric(&rat("1/2"), 128).unwrap();
        let expect = hp::pi(200).mul_pow2(-1);
        assert!(close_2pow(&r.root, &expect, -110));

        // frozen from an independent 200-bit computation
        let r10 = radius_varphi_numeric(&rat("10"), 128).unwrap();
        let expect10 = hpr("4.592336547843215895635519", 128);
        assert!(close_2pow(&r10.root, &expect10, -75));

        // nu = 100: r/sqrt(200) = 1 + 1/400 + O(nu^-2)
        let r100 = radius_varphi_numeric(&rat("100"), 128).unwrap();
        let sqrt200 = hpr("200", 128).sqrt(128).unwrap();
        let ratio = r100.root.div(&sqrt200).unwrap();
        let expect_ratio = &HPReal::one(128) + &hpr("1/400", 128);
        assert!((&ratio - &expect_ratio).abs() < hpr("1/1000", 64));
    }

    #[test]
    fn radius_precedes_first_zero() {
        for nu_s in ["0", "1", "10"] {
            let nu = rat(nu_s);
            let j1 = bessel_zero(&nu, 1, 96).unwrap().root;
            let rp = radius_phi_numeric(&nu, 96).unwrap().root;
            let rv = radius_varphi_numeric(&nu, 96).unwrap().root;
            assert!(rp < &j1 * &j1, "phi radius past j^2 at nu={nu_s}");
            assert!(rv < j1, "varphi radius past j at nu={nu_s}");
        }
    }

    #[test]
    fn partial_sums_approach_exact_from_below() {
        let nu = rat("1");
        let exact = crate::rayleigh::rayleigh_sum_exact(1, &nu).unwrap().value; // 1/8
        let exact_hp = HPReal::from_rational(&exact, 160);
        let s20 = rayleigh_partial(1, &nu, 20, 128).unwrap();
        let s50 = rayleigh_partial(1, &nu, 50, 128).unwrap();
        assert!(s20 < s50);
        assert!(s50 < exact_hp);
        // k = 2 gap closes much faster
        let exact2 = crate::rayleigh::rayleigh_sum_exact(2, &nu).unwrap().value;
        let s2 = rayleigh_partial(2, &nu, 50, 128).unwrap();
        let gap = &HPReal::from_rational(&exact2, 160) - &s2;
        assert!(gap.is_positive());
        assert!(gap < hpr("1e-6", 64));
    }

    #[test]
    fn negative_nu_rejected() {
        assert!(radius_phi_numeric(&rat("-1/2"), 96).is_err());
        assert!(radius_varphi_numeric(&rat("-1/2"), 96).is_err());
        assert!(bessel_zeros(&rat("-1"), 1, 96).is_err());
    }
}
