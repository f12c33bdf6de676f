//! Support code for the `fermat-reg` binary: output records, the `f(i, N)`
//! table, the ₃F₂ memo file and the verification suites.

pub mod cache;
pub mod record;
pub mod table;
pub mod verify;

use fermat_core::special::{Rational, Strategy};
use fermat_core::Error;

/// Exit status for success.
pub const EXIT_OK: u8 = 0;
/// Exit status for budget, cross-check or verification failures.
pub const EXIT_NUMERICAL: u8 = 1;
/// Exit status for malformed input or domain violations.
pub const EXIT_USAGE: u8 = 2;

/// Exit status for a core error.
pub fn exit_code(e: &Error) -> u8 {
    if e.is_usage() {
        EXIT_USAGE
    } else {
        EXIT_NUMERICAL
    }
}

/// ₃F₂ strategy as spelled on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum StrategyArg {
    /// Lerch-kernel tanh-sinh quadrature, series outside its family.
    Kernel,
    /// Direct summation with an asymptotic tail.
    Series,
    /// Both, failing on disagreement.
    Both,
}

impl From<StrategyArg> for Strategy {
    fn from(s: StrategyArg) -> Self {
        match s {
            StrategyArg::Kernel => Strategy::KernelQuadrature,
            StrategyArg::Series => Strategy::AcceleratedSeries,
            StrategyArg::Both => Strategy::BothCrossCheck,
        }
    }
}

/// Parses `p`, `p/q` or `-p/q` into an exact rational.
pub fn parse_rational(s: &str) -> Result<Rational, String> {
    s.trim()
        .parse::<Rational>()
        .map_err(|e| format!("`{s}` is not a rational p/q: {e}"))
}
