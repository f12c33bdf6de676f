//! Regulators of Collino-type higher Chow cycles on Jacobians of Fermat curves.
//!
//! The regulator pairings reduce to finite sums of ₃F₂ values at unit
//! argument weighted by Beta functions. This crate provides the numerics
//! behind those sums and the curve combinatorics they depend on:
//!
//! | Module | Contents |
//! |--------|----------|
//! | [`special`] | log-gamma, beta, Pochhammer, ₃F₂(1) with error estimate, tanh-sinh quadrature |
//! | [`fermat`] | index sets `I_N`, bracket representatives, periods, Poincaré-dual factors, Hodge predicate |
//! | [`regulator`] | closed-form regulators, the `f(i, N)` statistic, brute-force oracles |
//!
//! Everything is `no_std` (with `alloc`), pure and thread-safe. Parameters
//! of hypergeometric series are carried as exact rationals and converted to
//! `f64` only inside the numerical kernels.
//!
//! ```
//! use fermat_core::special::{hyp3f2_unit, EvalConfig, Hyp3F2Params, Rational};
//!
//! let p = Hyp3F2Params::new(
//!     Rational::from_integer(1),
//!     Rational::from_integer(1),
//!     Rational::from_integer(1),
//!     Rational::from_integer(2),
//!     Rational::from_integer(2),
//! )
//! .unwrap();
//! let r = hyp3f2_unit(&p, &EvalConfig::default()).unwrap();
//! let basel = core::f64::consts::PI * core::f64::consts::PI / 6.0;
//! assert!((r.value - basel).abs() < 1e-10);
//! ```
#![no_std]
#![warn(missing_docs)]

extern crate alloc;

mod error;
pub mod fermat;
pub mod regulator;
pub mod special;

pub use error::Error;
pub use num_complex::Complex64;

/// Result alias used throughout the crate.
pub type Result<T> = core::result::Result<T, Error>;
