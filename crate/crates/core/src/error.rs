use core::fmt;

/// Errors reported by the numerical routines.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Argument outside the mathematical domain of the function.
    Domain(&'static str),
    /// ₃F₂(1) parameters with non-positive excess `b1 + b2 − a1 − a2 − a3`.
    DivergentParameters {
        /// The offending excess.
        excess: f64,
    },
    /// Tolerance not reached within the term/level budget. Carries the best
    /// estimate so callers may still use it.
    BudgetExceeded {
        /// Best available value.
        value: f64,
        /// Error estimate attached to `value`.
        err: f64,
        /// Terms summed or integrand evaluations spent.
        effort: u64,
    },
    /// The integrand returned NaN or ±∞ at an interior node.
    NonFiniteSample {
        /// Abscissa in (0, 1) where the sample was taken.
        t: f64,
    },
    /// A form index violates `(a, b) ∈ I_N` or a holomorphy requirement.
    InvalidIndex {
        /// Curve degree.
        n: u32,
        /// First index as given.
        a: i64,
        /// Second index as given.
        b: i64,
        /// What was violated.
        reason: &'static str,
    },
    /// The Hodge-class criterion is only available for primes `N > 3`.
    UnsupportedModulus {
        /// Curve degree.
        n: u32,
    },
    /// A product left the range of finite `f64`.
    Overflow,
    /// Kernel quadrature and accelerated series disagree beyond their errors.
    StrategyDisagreement {
        /// Kernel-quadrature value.
        kernel: f64,
        /// Accelerated-series value.
        series: f64,
        /// Sum of both error estimates.
        bound: f64,
    },
}

impl Error {
    /// True for errors that are caused by the caller's input rather than by
    /// the numerics (the CLI maps these to exit code 2).
    pub fn is_usage(&self) -> bool {
        matches!(
            self,
            Error::Domain(_)
                | Error::DivergentParameters { .. }
                | Error::InvalidIndex { .. }
                | Error::UnsupportedModulus { .. }
        )
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain(what) => write!(f, "domain error: {what}"),
            Error::DivergentParameters { excess } => {
                write!(
                    f,
                    "series diverges at z = 1: parameter excess {excess} <= 0"
                )
            }
            Error::BudgetExceeded { value, err, effort } => write!(
                f,
                "tolerance not reached after {effort} evaluations (best {value:e} ± {err:e})"
            ),
            Error::NonFiniteSample { t } => write!(f, "integrand not finite at t = {t:e}"),
            Error::InvalidIndex { n, a, b, reason } => {
                write!(
                    f,
                    "invalid form index (a, b) = ({a}, {b}) for N = {n}: {reason}"
                )
            }
            Error::UnsupportedModulus { n } => {
                write!(f, "Hodge criterion needs a prime N > 3, got N = {n}")
            }
            Error::Overflow => write!(f, "result overflows f64"),
            Error::StrategyDisagreement {
                kernel,
                series,
                bound,
            } => write!(
                f,
                "kernel ({kernel:e}) and series ({series:e}) differ by more than {bound:e}"
            ),
        }
    }
}
