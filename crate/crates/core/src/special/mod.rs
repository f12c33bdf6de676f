//! Special functions with rational parameters.
//!
//! - [`log_gamma`], [`beta`], [`pochhammer`]
//! - [`hyp3f2_unit`]: ₃F₂(a₁, a₂, a₃; b₁, b₂; 1) with an error estimate
//! - [`de_quadrature`]: tanh-sinh rule on (0, 1) for endpoint-singular integrands
//! - [`Hyp3F2Source`]: pluggable ₃F₂ evaluator (memoisation, instrumentation)
//! - [`accel`]: tail models and sequence transformations for slowly convergent series

pub mod accel;
mod gamma;
mod hyp3f2;
mod quad;

pub use gamma::{beta, log_beta, log_gamma, pochhammer};
pub use hyp3f2::{hyp3f2_unit, Hyp3F2Params, KernelFamily};
pub use quad::de_quadrature;

/// Exact rational used for series parameters.
pub type Rational = num_rational::Ratio<i64>;

/// How ₃F₂(1) is evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Strategy {
    /// One-dimensional Euler-type integral with a closed-form Lerch kernel,
    /// integrated by tanh-sinh. Only applies to the
    /// `(α, γ, 1; α+σ, γ+1)` family; other parameters fall back to the series.
    KernelQuadrature,
    /// Direct summation in ascending order plus an asymptotic tail built from
    /// the Gamma-ratio expansion of the terms and Hurwitz zeta values.
    AcceleratedSeries,
    /// Run both and fail if they disagree beyond the combined error.
    BothCrossCheck,
}

impl Strategy {
    /// Stable lowercase name used in output records.
    pub fn name(self) -> &'static str {
        match self {
            Strategy::KernelQuadrature => "kernel-quadrature",
            Strategy::AcceleratedSeries => "accelerated-series",
            Strategy::BothCrossCheck => "both-cross-check",
        }
    }
}

/// Tolerances and budgets shared by the evaluators.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalConfig {
    /// Target absolute error.
    pub tol: f64,
    /// Maximum number of series terms.
    pub max_terms: u32,
    /// Maximum number of step-halving levels in tanh-sinh quadrature.
    pub quad_depth: u32,
    /// Evaluation strategy for ₃F₂(1).
    pub strategy: Strategy,
}

impl Default for EvalConfig {
    fn default() -> Self {
        EvalConfig {
            tol: 1e-8,
            max_terms: 1 << 16,
            quad_depth: 10,
            strategy: Strategy::KernelQuadrature,
        }
    }
}

impl EvalConfig {
    /// Default configuration with a different tolerance.
    pub fn with_tol(tol: f64) -> Self {
        EvalConfig {
            tol,
            ..Default::default()
        }
    }

    /// Same configuration, different strategy.
    pub fn strategy(self, strategy: Strategy) -> Self {
        EvalConfig { strategy, ..self }
    }

    /// Checks `tol > 0`, `max_terms ≥ 1`, `quad_depth ≥ 1`.
    pub fn validate(&self) -> crate::Result<()> {
        if !(self.tol > 0.0) || !self.tol.is_finite() {
            return Err(crate::Error::Domain(
                "tolerance must be positive and finite",
            ));
        }
        if self.max_terms == 0 {
            return Err(crate::Error::Domain("max_terms must be at least 1"));
        }
        if self.quad_depth == 0 {
            return Err(crate::Error::Domain("quad_depth must be at least 1"));
        }
        Ok(())
    }
}

/// A value with an absolute error estimate and the effort spent on it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalResult<T = f64> {
    /// The computed value.
    pub value: T,
    /// Estimated bound on `|value − exact|`.
    pub err: f64,
    /// Series terms summed or integrand evaluations performed.
    pub effort: u64,
    /// Strategy that produced the value (for ₃F₂ evaluations).
    pub strategy: Strategy,
}

impl<T> EvalResult<T> {
    pub(crate) fn new(value: T, err: f64, effort: u64, strategy: Strategy) -> Self {
        EvalResult {
            value,
            err,
            effort,
            strategy,
        }
    }
}

/// Anything that can evaluate ₃F₂(1) for the regulator sums.
///
/// [`EvalConfig`] evaluates directly; wrappers can memoise or count calls.
pub trait Hyp3F2Source {
    /// Configuration used for every evaluation (tolerance, budgets, strategy).
    fn config(&self) -> &EvalConfig;

    /// ₃F₂(params; 1) to absolute tolerance `tol`, other settings from
    /// [`Hyp3F2Source::config`].
    fn hyp3f2(&self, params: &Hyp3F2Params, tol: f64) -> crate::Result<EvalResult> {
        hyp3f2_unit(
            params,
            &EvalConfig {
                tol,
                ..*self.config()
            },
        )
    }
}

impl Hyp3F2Source for EvalConfig {
    fn config(&self) -> &EvalConfig {
        self
    }
}
