//! Property and oracle checks runnable from the command line.
//!
//! Each check reports the largest discrepancy it measured and the bound it
//! was held to. `perturb` shifts every closed-form value under test by a
//! fixed offset, which lets the harness itself be tested against a broken
//! evaluator.

use std::f64::consts::PI;
use std::fmt;

use fermat_core::fermat::{
    bracket, genus, holomorphic_indices, is_hodge, is_in_in, is_prime, mu, FormIndex, WedgeIndex,
};
use fermat_core::regulator::oracle::{
    oracle_log_quadrature, oracle_projector_integral, oracle_series_sum, Integrand,
};
use fermat_core::regulator::{
    im_reg_mixed, log_integral, projector_integral, reg_holomorphic, Variable,
};
use fermat_core::special::{
    beta, log_gamma, pochhammer, EvalConfig, Hyp3F2Params, Hyp3F2Source, Rational,
};

/// Which checks to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    /// β, Pochhammer and ₃F₂ identities.
    Special,
    /// Index arithmetic, μ and the Hodge predicate.
    Fermat,
    /// Closed forms against quadrature and series oracles.
    Regulator,
    /// Everything.
    All,
}

/// Outcome of one property.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    /// Suite name.
    pub suite: &'static str,
    /// Property name.
    pub name: &'static str,
    /// Cases examined.
    pub cases: usize,
    /// Largest measured discrepancy (or normalised excess for certified
    /// comparisons).
    pub discrepancy: f64,
    /// Bound the discrepancy was held to.
    pub bound: f64,
    /// Whether it held, plus any error message.
    pub outcome: Result<(), String>,
}

impl Check {
    /// True if the property held.
    pub fn passed(&self) -> bool {
        self.outcome.is_ok()
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.passed() { "PASS" } else { "FAIL" };
        write!(
            f,
            "{tag} {}/{} cases={} discrepancy={:.3e} bound={:.3e}",
            self.suite, self.name, self.cases, self.discrepancy, self.bound
        )?;
        if let Err(e) = &self.outcome {
            write!(f, " error: {e}")?;
        }
        Ok(())
    }
}

/// Accumulates the worst case of one property.
struct Tally {
    suite: &'static str,
    name: &'static str,
    bound: f64,
    cases: usize,
    worst: f64,
    failed: bool,
    error: Option<String>,
}

impl Tally {
    fn new(suite: &'static str, name: &'static str, bound: f64) -> Self {
        Tally {
            suite,
            name,
            bound,
            cases: 0,
            worst: 0.0,
            failed: false,
            error: None,
        }
    }

    /// Records `d` against the tally's bound.
    fn see(&mut self, d: f64) {
        self.cases += 1;
        if !(d <= self.bound) {
            self.failed = true;
        }
        self.worst = self.worst.max(d);
    }

    fn flag(&mut self, ok: bool) {
        self.see(if ok { 0.0 } else { 1.0 });
    }

    fn fail_with<E: fmt::Display>(&mut self, e: E) {
        self.cases += 1;
        self.failed = true;
        if self.error.is_none() {
            self.error = Some(e.to_string());
        }
    }

    fn finish(self) -> Check {
        let outcome = match (self.failed, self.error) {
            (false, _) => Ok(()),
            (true, Some(e)) => Err(e),
            (true, None) => Err("bound exceeded".to_owned()),
        };
        Check {
            suite: self.suite,
            name: self.name,
            cases: self.cases,
            discrepancy: self.worst,
            bound: self.bound,
            outcome,
        }
    }
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(f64::MIN_POSITIVE)
}

fn r(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

/// Runs the requested suite with evaluator settings `src`.
pub fn run<S: Hyp3F2Source + Sync>(suite: Suite, src: &S, perturb: f64) -> Vec<Check> {
    let mut out = Vec::new();
    if matches!(suite, Suite::Special | Suite::All) {
        out.extend(special(src, perturb));
    }
    if matches!(suite, Suite::Fermat | Suite::All) {
        out.extend(fermat());
    }
    if matches!(suite, Suite::Regulator | Suite::All) {
        out.extend(regulator(src, perturb));
    }
    out
}

fn grid() -> impl Iterator<Item = (f64, f64)> {
    let xs = [0.05, 0.2, 0.5, 1.0, 1.5, 3.25, 7.0, 12.5];
    xs.into_iter()
        .flat_map(move |x| xs.into_iter().map(move |y| (x, y)))
}

/// β symmetry and recurrence, Pochhammer ratio, Basel and Gauss values.
pub fn special<S: Hyp3F2Source>(src: &S, perturb: f64) -> Vec<Check> {
    let tol = src.config().tol;

    let mut sym = Tally::new("special", "beta-symmetry", 1e-13);
    let mut rec = Tally::new("special", "beta-recurrence", 1e-12);
    for (x, y) in grid() {
        match (beta(x, y), beta(y, x), beta(x + 1.0, y)) {
            (Ok(b), Ok(bs), Ok(b1)) => {
                sym.see(rel(b + perturb * b, bs));
                rec.see(rel(b1, b * x / (x + y)));
            }
            _ => sym.fail_with("beta failed on a positive argument"),
        }
    }

    let mut poch = Tally::new("special", "pochhammer-ratio", 1e-12);
    for a in [0.1, 0.5, 1.0, 2.5, 9.75] {
        for k in 0..40u32 {
            match (pochhammer(a, k), pochhammer(a, k + 1)) {
                (Ok(p), Ok(p1)) => poch.see(rel(p1 / p, a + f64::from(k))),
                (Err(e), _) | (_, Err(e)) => poch.fail_with(e),
            }
        }
    }

    let mut basel = Tally::new("special", "basel", tol);
    let one = r(1, 1);
    let two = r(2, 1);
    match Hyp3F2Params::new(one, one, one, two, two).and_then(|p| src.hyp3f2(&p, tol)) {
        Ok(v) => basel.see((v.value + perturb - PI * PI / 6.0).abs()),
        Err(e) => basel.fail_with(e),
    }

    // ₃F₂(a1, a2, c; b1, c; 1) = Γ(b1)Γ(b1−a1−a2) / (Γ(b1−a1)Γ(b1−a2))
    let mut gauss = Tally::new("special", "gauss-degenerate", tol);
    let draws = [
        (r(1, 3), r(1, 2), r(7, 4), r(2, 1)),
        (r(1, 5), r(2, 7), r(1, 3), r(3, 2)),
        (r(3, 4), r(1, 6), r(5, 2), r(5, 3)),
        (r(1, 2), r(1, 2), r(9, 7), r(2, 1)),
        (r(2, 3), r(1, 9), r(3, 5), r(7, 5)),
        (r(5, 4), r(1, 4), r(11, 3), r(9, 4)),
        (r(1, 7), r(3, 7), r(2, 9), r(1, 1)),
        (r(7, 5), r(2, 5), r(4, 3), r(12, 5)),
        (r(1, 11), r(5, 11), r(17, 6), r(7, 8)),
        (r(3, 2), r(1, 3), r(5, 7), r(13, 6)),
        (r(2, 9), r(4, 9), r(1, 4), r(5, 4)),
        (r(1, 4), r(3, 8), r(9, 2), r(11, 8)),
        (r(4, 5), r(3, 5), r(2, 3), r(5, 2)),
        (r(1, 13), r(1, 2), r(3, 13), r(9, 10)),
        (r(5, 6), r(1, 6), r(7, 3), r(2, 1)),
        (r(2, 5), r(1, 10), r(1, 8), r(1, 1)),
        (r(9, 8), r(1, 8), r(6, 5), r(5, 2)),
        (r(1, 3), r(2, 3), r(5, 9), r(7, 4)),
        (r(3, 10), r(7, 10), r(8, 3), r(9, 4)),
        (r(1, 6), r(5, 12), r(3, 11), r(5, 4)),
    ];
    for (a1, a2, c, b1) in draws {
        let closed = |a1: f64, a2: f64, b1: f64| -> fermat_core::Result<f64> {
            Ok((log_gamma(b1)? + log_gamma(b1 - a1 - a2)?
                - log_gamma(b1 - a1)?
                - log_gamma(b1 - a2)?)
            .exp())
        };
        let f = |q: Rational| *q.numer() as f64 / *q.denom() as f64;
        let got = Hyp3F2Params::new(a1, a2, c, b1, c).and_then(|p| src.hyp3f2(&p, tol));
        match (got, closed(f(a1), f(a2), f(b1))) {
            (Ok(v), Ok(want)) => gauss.see((v.value + perturb - want).abs()),
            (Err(e), _) | (_, Err(e)) => gauss.fail_with(e),
        }
    }

    vec![
        sym.finish(),
        rec.finish(),
        poch.finish(),
        basel.finish(),
        gauss.finish(),
    ]
}

/// Exhaustive index arithmetic and μ checks.
pub fn fermat() -> Vec<Check> {
    let mut br = Tally::new("fermat", "bracket-range-periodicity", 0.0);
    for n in 3..=23u32 {
        for a in -60..=60i64 {
            let b = bracket(a, n);
            br.flag(
                (1..=n).contains(&b)
                    && b == bracket(a + i64::from(n), n)
                    && (i64::from(b) - a) % i64::from(n) == 0,
            );
        }
    }

    let mut gen = Tally::new("fermat", "genus-counts-holomorphic-forms", 0.0);
    for n in 3..=50u32 {
        gen.flag(holomorphic_indices(n).len() as u64 == genus(n));
    }

    let mut imag = Tally::new("fermat", "mu-purely-imaginary", 1e-10);
    for n in 3..=101u32 {
        for a in 1..i64::from(n) {
            for b in 1..i64::from(n) {
                if !is_in_in(a, b, n) {
                    continue;
                }
                match mu(a, b, n) {
                    Ok(m) => imag.see(m.re.abs() / m.norm()),
                    Err(e) => imag.fail_with(e),
                }
            }
        }
    }

    let mut hodge = Tally::new("fermat", "hodge-symmetric-and-diagonal", 0.0);
    for n in (5..=23u32).filter(|&n| is_prime(u64::from(n))) {
        let forms = holomorphic_indices(n);
        for &f in &forms {
            for &g in &forms {
                let w = WedgeIndex {
                    first: f,
                    second: g,
                };
                match (is_hodge(&w), is_hodge(&w.swapped())) {
                    (Ok(h), Ok(hs)) => hodge.flag(h == hs && (f != g || h)),
                    (Err(e), _) | (_, Err(e)) => hodge.fail_with(e),
                }
            }
        }
    }

    vec![br.finish(), gen.finish(), imag.finish(), hodge.finish()]
}

/// Closed forms against the quadrature and series oracles, plus exact
/// structural identities.
pub fn regulator<S: Hyp3F2Source + Sync>(src: &S, perturb: f64) -> Vec<Check> {
    let cfg = *src.config();
    let oracle_cfg = EvalConfig {
        tol: cfg.tol,
        ..cfg
    };

    // |closed − oracle| / (err_closed + err_oracle) ≤ 1
    let mut quad = Tally::new("regulator", "holomorphic-vs-log-quadrature", 1.0);
    let mut series = Tally::new("regulator", "log-integral-vs-series", 1.0);
    let mut anti = Tally::new("regulator", "holomorphic-antisymmetry", 0.0);
    for n in [3u32, 5, 7] {
        for f in holomorphic_indices(n) {
            let (a, b) = (i64::from(f.a()), i64::from(f.b()));
            match (
                reg_holomorphic(a, b, n, src),
                oracle_log_quadrature(a, b, n, &oracle_cfg),
            ) {
                (Ok(k), Ok(o)) => {
                    quad.see((k.value.re + perturb - o.value.re).abs() / (k.err + o.err));
                    match reg_holomorphic(b, a, n, src) {
                        // a = b makes this |2 reg(a, a)|
                        Ok(s) => anti.see((k.value.re + s.value.re).abs()),
                        Err(e) => anti.fail_with(e),
                    }
                }
                (Err(e), _) | (_, Err(e)) => quad.fail_with(e),
            }
            match (
                log_integral(a, b, n, Variable::X, src),
                oracle_series_sum(a, b, n, &oracle_cfg),
            ) {
                (Ok(k), Ok(o)) => series.see((k.value + perturb + o.value).abs() / (k.err + o.err)),
                (Err(e), _) | (_, Err(e)) => series.fail_with(e),
            }
        }
    }

    let mut proj = Tally::new("regulator", "projector-vs-translate-quadrature", 1.0);
    let f = |a, b, n| FormIndex::new(a, b, n).expect("valid index");
    let cases = [
        (f(1, 2, 7), f(1, 4, 7), Variable::Y),
        (f(2, 3, 7), f(5, 3, 7), Variable::X),
        (f(1, 2, 13), f(1, 4, 13), Variable::Y),
        (f(1, 2, 13), f(3, 4, 13), Variable::X),
        (f(3, 1, 13), f(3, 6, 13), Variable::Y),
        (f(1, 2, 5), f(1, 3, 5), Variable::Y),
    ];
    for (form, projector, var) in cases {
        match (
            projector_integral(form, projector, var, src),
            oracle_projector_integral(form, projector, Integrand::Log(var), &oracle_cfg),
        ) {
            (Ok(k), Ok(o)) => {
                let budget = k.err + o.err;
                let d = (k.value + perturb - o.value.re).abs().max(o.value.im.abs());
                proj.see(d / budget);
            }
            (Err(e), _) | (_, Err(e)) => proj.fail_with(e),
        }
    }

    let mut mixed = Tally::new("regulator", "mixed-diagonal-and-swap", 1e-10);
    for (i, n) in [(2i64, 13u32), (3, 17), (4, 23)] {
        let pair = (
            im_reg_mixed(1, i, 1, 2 * i, n, src),
            im_reg_mixed(1, 2 * i, 1, i, n, src),
        );
        let diag = im_reg_mixed(1, i, 1, i, n, src);
        match (pair, diag) {
            ((Ok(x), Ok(y)), Ok(d)) => {
                mixed.see((x.value.re + perturb + y.value.re).abs());
                mixed.see(d.value.re.abs());
            }
            ((Err(e), _), _) | ((_, Err(e)), _) | (_, Err(e)) => mixed.fail_with(e),
        }
    }

    // amount by which |value| exceeds its own error bound
    let mut vanish = Tally::new("regulator", "mixed-second-index-two-vanishes", 1e-12);
    for (i, n) in [
        (2i64, 13u32),
        (2, 17),
        (3, 17),
        (4, 17),
        (3, 19),
        (4, 19),
        (3, 23),
        (4, 23),
        (5, 23),
    ] {
        match im_reg_mixed(1, i, 2, 2 * i, n, src) {
            Ok(v) => vanish.see(((v.value.re + perturb).abs() - v.err).max(0.0)),
            Err(e) => vanish.fail_with(e),
        }
    }

    vec![
        quad.finish(),
        series.finish(),
        anti.finish(),
        proj.finish(),
        mixed.finish(),
        vanish.finish(),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn special_and_fermat_pass() {
        let cfg = EvalConfig::default();
        for c in special(&cfg, 0.0).into_iter().chain(fermat()) {
            assert!(c.passed(), "{c}");
        }
    }

    #[test]
    fn perturbation_is_caught() {
        let cfg = EvalConfig::default();
        let checks = special(&cfg, 1e-6);
        assert!(checks.iter().any(|c| c.name == "basel" && !c.passed()));
        assert!(checks
            .iter()
            .any(|c| c.name == "gauss-degenerate" && !c.passed()));
    }

    #[test]
    fn display_line() {
        let mut t = Tally::new("special", "demo", 1e-3);
        t.see(2e-3);
        let line = t.finish().to_string();
        assert!(
            line.starts_with("FAIL special/demo cases=1 discrepancy=2.000e-3"),
            "{line}"
        );
    }
}
