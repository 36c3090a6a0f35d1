//! Exact large-order expansions for the radii of starlikeness of two
//! normalised Bessel functions, together with an independent
//! high-precision numerical oracle.
//!
//! The library has two halves that deliberately do not share code paths:
//!
//! * an exact half ([`rational`], [`potential`], [`rayleigh`],
//!   [`expansions`]) that computes coefficient tables and truncated
//!   series values in arbitrary-precision rational arithmetic, and
//! * a numerical half ([`hp`], [`oracle`]) that evaluates the
//!   underlying functions through their confluent-limit series and
//!   locates the radii and Bessel zeros as roots, at configurable
//!   binary precision.
//!
//! The [`report`] module compares the two halves on a grid of orders
//! `nu` and checks the measured error decay against the expected order.
//!
//! ```
//! use starlike::expansions::{eps_coeffs, radius_phi_asymptotic};
//! use starlike::oracle::radius_phi_numeric;
//! use starlike::Rational;
//!
//! // the first few expansion coefficients are small integers
//! let eps = eps_coeffs(6)?;
//! assert_eq!(eps.coeff(6), Some(&Rational::from(44)));
//!
//! // a six-term truncation at nu = 10 against the located root
//! let nu: Rational = "10".parse()?;
//! let trunc = radius_phi_asymptotic(&nu, 6)?;
//! assert_eq!(trunc.value.exact().unwrap().to_string(), "126208/3125");
//! let root = radius_phi_numeric(&nu, 128)?;
//! assert!((root.root.to_f64() - 40.38608563).abs() < 1e-7);
//! # Ok::<(), starlike::Error>(())
//! ```

pub mod error;
pub mod expansions;
pub mod hp;
pub mod oracle;
pub mod potential;
pub mod rational;
pub mod rayleigh;
pub mod report;

pub use error::Error;
pub use hp::HPReal;
pub use rational::Rational;
