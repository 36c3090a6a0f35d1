//! Error type shared by the exact and numerical halves of the crate.

use crate::rational::Rational;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("denominator must be nonzero")]
    ZeroDenominator,
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot parse {0:?} as a rational number")]
    ParseRational(String),
    #[error("k must be a positive integer")]
    ZeroK,
    #[error("closed forms are implemented for k in {{1, 2, 3}} only (got k = {0})")]
    NoClosedForm(u32),
    #[error(
        "the Rayleigh sum of order {k} has a pole at nu = -{pole} (poles lie at -1, ..., -{k})"
    )]
    PoleAt { k: u32, pole: u32 },
    #[error("nu = {nu} is outside the convergence region nu > {k} of the Laurent expansion")]
    OutsideLaurentRegion { k: u32, nu: Rational },
    #[error("{what} requires nu > 0 (got nu = {nu})")]
    RequiresPositiveNu { what: &'static str, nu: Rational },
    #[error("{what} requires nu >= 0 (got nu = {nu})")]
    RequiresNonNegativeNu { what: &'static str, nu: Rational },
    #[error("{what} must be positive")]
    MustBePositive { what: &'static str },
    #[error(
        "potential polynomial of order {order} needs arguments x_1..x_{order}, got only {got}"
    )]
    MissingPotentialArgs { order: usize, got: usize },
    #[error("series parameter b must be positive (got {b})")]
    NonPositiveB { b: Rational },
    #[error("requested precision {prec} is below the minimum of {min} bits")]
    PrecisionTooLow { prec: u32, min: u32 },
    #[error("square root of a negative number")]
    NegativeSqrt,
    #[error("series did not converge within {terms} terms (working precision {prec} bits)")]
    SeriesNoConvergence { terms: u64, prec: u32 },
    #[error("no sign change found scanning [{from}, {to}] with step {step}")]
    NoSignChange {
        from: String,
        to: String,
        step: String,
    },
    #[error("root refinement exceeded {0} iterations")]
    IterationLimit(u32),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("report serialization failed: {0}")]
    Render(String),
}

impl Error {
    /// Process exit code for the CLI: 2 usage, 3 domain error,
    /// 4 numerical failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::ParseRational(_) | Error::InvalidConfig(_) | Error::Io(_) => 2,
            Error::ZeroDenominator
            | Error::DivisionByZero
            | Error::ZeroK
            | Error::NoClosedForm(_)
            | Error::PoleAt { .. }
            | Error::OutsideLaurentRegion { .. }
            | Error::RequiresPositiveNu { .. }
            | Error::RequiresNonNegativeNu { .. }
            | Error::MustBePositive { .. }
            | Error::MissingPotentialArgs { .. }
            | Error::NonPositiveB { .. }
            | Error::PrecisionTooLow { .. }
            | Error::NegativeSqrt => 3,
            Error::SeriesNoConvergence { .. }
            | Error::NoSignChange { .. }
            | Error::IterationLimit(_)
            | Error::Render(_) => 4,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes_group_by_kind() {
        assert_eq!(Error::ParseRational("x".into()).exit_code(), 2);
        assert_eq!(Error::InvalidConfig("bad".into()).exit_code(), 2);
        assert_eq!(Error::ZeroK.exit_code(), 3);
        assert_eq!(Error::PoleAt { k: 1, pole: 1 }.exit_code(), 3);
        assert_eq!(Error::PrecisionTooLow { prec: 10, min: 53 }.exit_code(), 3);
        assert_eq!(
            Error::NoSignChange {
                from: "0".into(),
                to: "1".into(),
                step: "0.1".into()
            }
            .exit_code(),
            4
        );
        assert_eq!(
            Error::SeriesNoConvergence {
                terms: 10,
                prec: 64
            }
            .exit_code(),
            4
        );
        assert_eq!(Error::IterationLimit(9).exit_code(), 4);
    }
}
