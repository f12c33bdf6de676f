use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use fermat_core::fermat::{hodge_pairs, is_hodge, WedgeIndex};
use fermat_core::regulator::{im_reg_mixed, reg_holomorphic, RegulatorValue};
use fermat_core::special::{EvalConfig, Hyp3F2Params, Hyp3F2Source, Rational};
use fermat_core::Error;
use fermat_reg::cache::CachedSource;
use fermat_reg::record::OutputRecord;
use fermat_reg::table::{self, Format};
use fermat_reg::verify::{self, Suite};
use fermat_reg::{exit_code, parse_rational, StrategyArg, EXIT_NUMERICAL, EXIT_OK, EXIT_USAGE};

/// Regulators of Fermat-curve cycles via ₃F₂(1) values.
#[derive(Debug, Parser)]
#[command(name = "fermat-reg", version)]
struct Cli {
    #[command(flatten)]
    eval: EvalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct EvalArgs {
    /// Absolute error target for every evaluated quantity.
    #[arg(long, global = true, env = "FERMAT_REG_TOL", default_value_t = 1e-8)]
    tol: f64,
    /// Series term budget per ₃F₂ evaluation.
    #[arg(long, global = true, env = "FERMAT_REG_MAX_TERMS", default_value_t = 1 << 16)]
    max_terms: u32,
    /// Step-halving levels for tanh-sinh quadrature.
    #[arg(
        long,
        global = true,
        env = "FERMAT_REG_QUAD_DEPTH",
        default_value_t = 10
    )]
    quad_depth: u32,
    /// ₃F₂ evaluation strategy.
    #[arg(
        long,
        global = true,
        env = "FERMAT_REG_STRATEGY",
        value_enum,
        default_value = "kernel"
    )]
    strategy: StrategyArg,
    /// Memo file of ₃F₂ evaluations; safe to delete.
    #[arg(long, global = true, env = "FERMAT_REG_CACHE")]
    cache: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// ₃F₂(a1, a2, a3; b1, b2; 1) for rational parameters `p/q`.
    Hyp3f2 {
        #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
        a1: Rational,
        #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
        a2: Rational,
        #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
        a3: Rational,
        #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
        b1: Rational,
        #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
        b2: Rational,
    },
    /// A single regulator value.
    Reg {
        #[command(subcommand)]
        kind: RegKind,
    },
    /// The table of f(i, N) = Im reg(Ω^{1,i,1,2i}) / (2N²).
    FTable {
        /// Comma-separated degrees.
        #[arg(long = "N", value_delimiter = ',', required = true)]
        n: Vec<u32>,
        /// Smallest i (default 2).
        #[arg(long)]
        i_min: Option<i64>,
        /// Largest i (default ⌊N/4⌋).
        #[arg(long)]
        i_max: Option<i64>,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        /// Shortest round-trip digits instead of six significant digits.
        #[arg(long)]
        full: bool,
    },
    /// Hodge classes among wedges of holomorphic forms, prime N > 3.
    Hodge {
        #[arg(long = "N")]
        n: u32,
        /// One line per Hodge pair instead of the count.
        #[arg(long)]
        list: bool,
        /// Test a single wedge (a, b, c, d) instead.
        #[arg(long, num_args = 4, value_names = ["A", "B", "C", "D"], conflicts_with = "list")]
        wedge: Option<Vec<i64>>,
    },
    /// Invariant and oracle checks; exit 0 iff all pass.
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        suite: Suite,
        /// Offset added to closed-form values, to test the harness.
        #[arg(long, hide = true, default_value_t = 0.0, allow_hyphen_values = true)]
        perturb: f64,
    },
}

#[derive(Debug, Subcommand)]
enum RegKind {
    /// reg(Ω^{a,b}) for holomorphic (a, b).
    Holo {
        #[arg(long = "N")]
        n: u32,
        #[arg(long, allow_hyphen_values = true)]
        a: i64,
        #[arg(long, allow_hyphen_values = true)]
        b: i64,
    },
    /// Im reg(Ω^{a,b,c,d}) for holomorphic (a, b) and (c, d).
    Mixed {
        #[arg(long = "N")]
        n: u32,
        #[arg(long, allow_hyphen_values = true)]
        a: i64,
        #[arg(long, allow_hyphen_values = true)]
        b: i64,
        #[arg(long, allow_hyphen_values = true)]
        c: i64,
        #[arg(long, allow_hyphen_values = true)]
        d: i64,
    },
}

/// A failed command: exit status and diagnostic.
struct Failure(u8, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(exit_code(&e), e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = EvalConfig {
        tol: cli.eval.tol,
        max_terms: cli.eval.max_terms,
        quad_depth: cli.eval.quad_depth,
        strategy: cli.eval.strategy.into(),
    };
    if let Err(e) = cfg.validate() {
        eprintln!("error: {e}");
        return ExitCode::from(EXIT_USAGE);
    }
    let src = match &cli.eval.cache {
        Some(path) => CachedSource::with_file(cfg, path),
        None => CachedSource::new(cfg),
    };
    let outcome = run(cli.command, &src);
    if let Err(e) = src.save() {
        eprintln!("warning: cache not written: {e:#}");
    }
    match outcome {
        Ok((text, code)) => {
            let mut out = std::io::stdout().lock();
            if out
                .write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .is_err()
            {
                return ExitCode::from(EXIT_NUMERICAL);
            }
            ExitCode::from(code)
        }
        Err(Failure(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}

fn record(r: &RegulatorValue) -> OutputRecord {
    OutputRecord::new(r.value.re, r.err, r.provenance.name(), r.effort)
}

fn line(rec: &OutputRecord) -> String {
    let mut s = rec.to_json();
    s.push('\n');
    s
}

fn run(command: Command, src: &CachedSource) -> Result<(String, u8), Failure> {
    match command {
        Command::Hyp3f2 { a1, a2, a3, b1, b2 } => {
            let p = Hyp3F2Params::new(a1, a2, a3, b1, b2)?;
            let v = src.hyp3f2(&p, src.config().tol)?;
            let rec = OutputRecord::new(v.value, v.err, v.strategy.name(), v.effort)
                .input("a1", a1.to_string())
                .input("a2", a2.to_string())
                .input("a3", a3.to_string())
                .input("b1", b1.to_string())
                .input("b2", b2.to_string());
            Ok((line(&rec), EXIT_OK))
        }
        Command::Reg {
            kind: RegKind::Holo { n, a, b },
        } => {
            let r = reg_holomorphic(a, b, n, src)?;
            let rec = record(&r).input("N", n).input("a", a).input("b", b);
            Ok((line(&rec), EXIT_OK))
        }
        Command::Reg {
            kind: RegKind::Mixed { n, a, b, c, d },
        } => {
            let w = WedgeIndex::from_ints(a, b, c, d, n)?;
            let r = im_reg_mixed(a, b, c, d, n, src)?;
            let mut rec = record(&r)
                .input("N", n)
                .input("a", a)
                .input("b", b)
                .input("c", c)
                .input("d", d);
            match is_hodge(&w) {
                Ok(h) => rec = rec.hodge(h),
                Err(e) => eprintln!("note: no Hodge flag: {e}"),
            }
            Ok((line(&rec), EXIT_OK))
        }
        Command::FTable {
            n,
            i_min,
            i_max,
            format,
            full,
        } => {
            if let Some(&bad) = n.iter().find(|&&m| m < 5) {
                return Err(Failure(
                    EXIT_USAGE,
                    format!("f-table needs N >= 5, got {bad}"),
                ));
            }
            for &m in &n {
                if !table::has_reference(m) {
                    eprintln!("note: N = {m} has no published reference values");
                }
            }
            let range = match (i_min, i_max) {
                (None, None) => None,
                (lo, hi) => Some((
                    lo.unwrap_or(2),
                    hi.unwrap_or(i64::from(*n.iter().max().unwrap() / 4)),
                )),
            };
            let plan = table::plan(&n, range);
            let rows = table::compute(&plan, src);
            let mut first_err = None;
            for r in &rows {
                if let Err(e) = &r.result {
                    eprintln!("error: f({}, {}): {e}", r.i, r.n);
                    first_err.get_or_insert(exit_code(e));
                }
            }
            let all_failed = !rows.is_empty() && rows.iter().all(|r| r.result.is_err());
            let code = match first_err {
                Some(c) if all_failed => c,
                _ => EXIT_OK,
            };
            Ok((table::render(&rows, format, full), code))
        }
        Command::Hodge { n, list, wedge } => {
            if let Some(w) = wedge {
                let idx = WedgeIndex::from_ints(w[0], w[1], w[2], w[3], n)?;
                let h = is_hodge(&idx)?;
                return Ok((
                    format!(
                        "{{\"N\":{n},\"a\":{},\"b\":{},\"c\":{},\"d\":{},\"hodge\":{h}}}\n",
                        w[0], w[1], w[2], w[3]
                    ),
                    EXIT_OK,
                ));
            }
            let pairs = hodge_pairs(n)?;
            if !list {
                return Ok((
                    format!("{{\"N\":{n},\"pairs\":{}}}\n", pairs.len()),
                    EXIT_OK,
                ));
            }
            let mut out = String::new();
            for w in pairs {
                out.push_str(&format!(
                    "{{\"N\":{n},\"a\":{},\"b\":{},\"c\":{},\"d\":{}}}\n",
                    w.first.a(),
                    w.first.b(),
                    w.second.a(),
                    w.second.b()
                ));
            }
            Ok((out, EXIT_OK))
        }
        Command::Verify { suite, perturb } => {
            let checks = verify::run(suite, src, perturb);
            let mut out = String::new();
            for c in &checks {
                out.push_str(&c.to_string());
                out.push('\n');
            }
            let failed = checks.iter().filter(|c| !c.passed()).count();
            out.push_str(&format!("{} checks, {} failed\n", checks.len(), failed));
            Ok((out, if failed == 0 { EXIT_OK } else { EXIT_NUMERICAL }))
        }
    }
}
