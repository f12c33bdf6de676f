//! Regulator pairings as finite sums of ₃F₂(1) values.
//!
//! The building block is
//! `W(x, j, y) = (1/j) β((x+j)/N, y/N) ₃F₂((x+j)/N, j/N, 1; (x+y+j)/N, j/N+1; 1)`,
//! the contribution of the `j`-th residue class to `∫_δ log(1−x) ω^{x,y}`.
//! Normalising by the period gives `𝓕(x, j, y) = W(x, j, y) / β(x/N, y/N)`.
//!
//! Error budgeting: a composite value's `err` is the sum of its components'
//! errors, each scaled by the magnitude of its coefficient, plus a rounding
//! term per arithmetic stage.
//!
//! [`oracle`] holds brute-force evaluations used only for cross-checks.

pub mod oracle;

use num_complex::Complex64;

use crate::fermat::{bracket, is_hodge, FormIndex, WedgeIndex};
use crate::special::{beta, EvalResult, Hyp3F2Params, Hyp3F2Source, Rational};
use crate::Result;

const EPS: f64 = f64::EPSILON;

/// Where a regulator value came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Provenance {
    /// Closed-form ₃F₂ sums.
    ClosedForm,
    /// Direct quadrature of the defining path integrals.
    OracleQuadrature,
    /// Direct summation of the regrouped series.
    OracleSeries,
}

impl Provenance {
    /// Stable lowercase name used in output records.
    pub fn name(self) -> &'static str {
        match self {
            Provenance::ClosedForm => "closed-form",
            Provenance::OracleQuadrature => "oracle-quadrature",
            Provenance::OracleSeries => "oracle-series",
        }
    }
}

/// Which logarithm `log(1 − x)` or `log(1 − y)` is integrated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variable {
    /// `log(1 − x)`.
    X,
    /// `log(1 − y)`.
    Y,
}

/// A regulator pairing with its error bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegulatorValue {
    /// The pairing. Real pairings carry a zero imaginary part.
    pub value: Complex64,
    /// Bound on `|value − exact|`.
    pub err: f64,
    /// ₃F₂ evaluations' effort plus quadrature nodes.
    pub effort: u64,
    /// How the value was obtained.
    pub provenance: Provenance,
}

/// The building block `W(x, j, y)` at tolerance `tol`.
fn weighted<S: Hyp3F2Source + ?Sized>(
    x: u32,
    j: u32,
    y: u32,
    n: u32,
    src: &S,
    tol: f64,
) -> Result<EvalResult> {
    let nn = i64::from(n);
    let (x, j, y) = (i64::from(x), i64::from(j), i64::from(y));
    let p = Hyp3F2Params::new(
        Rational::new(x + j, nn),
        Rational::new(j, nn),
        Rational::from_integer(1),
        Rational::new(x + y + j, nn),
        Rational::new(j + nn, nn),
    )?;
    let nf = n as f64;
    let coef = beta((x + j) as f64 / nf, y as f64 / nf)? / j as f64;
    let h = src.hyp3f2(&p, tol / coef.max(1.0))?;
    let value = coef * h.value;
    Ok(EvalResult::new(
        value,
        coef * h.err + 4.0 * EPS * value.abs(),
        h.effort,
        h.strategy,
    ))
}

/// `𝓕(a/N, j/N, b/N) = W(a, j, b) / β(a/N, b/N)`, with `err ≤ tol` of the
/// source's configuration.
pub fn script_f<S: Hyp3F2Source + ?Sized>(
    a: i64,
    j: i64,
    b: i64,
    n: u32,
    src: &S,
) -> Result<EvalResult> {
    script_f_tol(a, j, b, n, src, src.config().tol)
}

fn script_f_tol<S: Hyp3F2Source + ?Sized>(
    a: i64,
    j: i64,
    b: i64,
    n: u32,
    src: &S,
    tol: f64,
) -> Result<EvalResult> {
    let idx = FormIndex::new(a, b, n)?;
    if j < 1 || j > i64::from(n) {
        return Err(crate::Error::Domain("script_f needs 1 <= j <= N"));
    }
    let period_beta = beta(
        f64::from(idx.a()) / f64::from(n),
        f64::from(idx.b()) / f64::from(n),
    )?;
    let w = weighted(
        idx.a(),
        j as u32,
        idx.b(),
        n,
        src,
        0.5 * tol * period_beta.min(1.0),
    )?;
    let value = w.value / period_beta;
    Ok(EvalResult::new(
        value,
        w.err / period_beta + 4.0 * EPS * value.abs(),
        w.effort,
        w.strategy,
    ))
}

/// `Σ_{j=1}^{N} 𝓕(x, j, y)` in ascending `j`.
fn script_f_sum<S: Hyp3F2Source + ?Sized>(
    x: u32,
    y: u32,
    n: u32,
    src: &S,
    tol: f64,
) -> Result<EvalResult> {
    let mut sum = 0.0;
    let mut err = 0.0;
    let mut effort = 0;
    let mut strategy = src.config().strategy;
    for j in 1..=n {
        let f = script_f_tol(i64::from(x), i64::from(j), i64::from(y), n, src, tol)?;
        sum += f.value;
        err += f.err + EPS * sum.abs();
        effort += f.effort;
        strategy = f.strategy;
    }
    Ok(EvalResult::new(sum, err, effort, strategy))
}

/// `reg(Ω^{a,b}) = 2 Σ_{j=1}^{N} [𝓕(b, j, a) − 𝓕(a, j, b)]` for a holomorphic
/// `(a, b)`; real, with `err ≤ 2N·tol`.
///
/// Both sums are evaluated independently of argument order, so
/// `reg(a, b) = −reg(b, a)` holds bitwise and `reg(a, a) = 0`.
pub fn reg_holomorphic<S: Hyp3F2Source + ?Sized>(
    a: i64,
    b: i64,
    n: u32,
    src: &S,
) -> Result<RegulatorValue> {
    let idx = FormIndex::holomorphic(a, b, n)?;
    let tol = 0.45 * src.config().tol;
    let s_ba = script_f_sum(idx.b(), idx.a(), n, src, tol)?;
    let s_ab = script_f_sum(idx.a(), idx.b(), n, src, tol)?;
    let value = 2.0 * (s_ba.value - s_ab.value);
    Ok(RegulatorValue {
        value: Complex64::new(value, 0.0),
        err: 2.0 * (s_ba.err + s_ab.err) + 2.0 * EPS * value.abs(),
        effort: s_ba.effort + s_ab.effort,
        provenance: Provenance::ClosedForm,
    })
}

/// `∫_δ log(1−x) ω^{a,b} = −(1/N) Σ_{j=1}^{N} W(a, j, b)` (variable `X`) and
/// `∫_δ log(1−y) ω^{a,b} = −(1/N) Σ_{j=1}^{N} W(b, j, a)` (variable `Y`), for
/// holomorphic `(a, b)`.
pub fn log_integral<S: Hyp3F2Source + ?Sized>(
    a: i64,
    b: i64,
    n: u32,
    variable: Variable,
    src: &S,
) -> Result<EvalResult> {
    let idx = FormIndex::holomorphic(a, b, n)?;
    let (x, y) = match variable {
        Variable::X => (idx.a(), idx.b()),
        Variable::Y => (idx.b(), idx.a()),
    };
    let tol = 0.5 * src.config().tol;
    let mut sum = 0.0;
    let mut err = 0.0;
    let mut effort = 0;
    let mut strategy = src.config().strategy;
    for j in 1..=n {
        let w = weighted(x, j, y, n, src, tol)?;
        sum += w.value;
        err += w.err + EPS * sum.abs();
        effort += w.effort;
        strategy = w.strategy;
    }
    let nf = f64::from(n);
    let value = -sum / nf;
    Ok(EvalResult::new(
        value,
        err / nf + EPS * value.abs(),
        effort,
        strategy,
    ))
}

/// Closed form of `∫_{P^{c,d}γ} log(1−x) ω̃^{a,b}` (variable `X`) or
/// `log(1−y)` (variable `Y`), where `form = (a, b)` and `projector = (c, d)`.
///
/// Only one residue class survives the character sum:
/// `X ↦ −δ_{b,d} W(a, ⟨c−a⟩, b)/β(a/N, b/N)` and
/// `Y ↦ −δ_{a,c} W(b, ⟨d−b⟩, a)/β(a/N, b/N)`. Vanishing cases are exact zeros.
pub fn projector_integral<S: Hyp3F2Source + ?Sized>(
    form: FormIndex,
    projector: FormIndex,
    variable: Variable,
    src: &S,
) -> Result<EvalResult> {
    let n = form.n();
    if projector.n() != n {
        return Err(crate::Error::Domain(
            "projector and form on different curves",
        ));
    }
    let (a, b) = (i64::from(form.a()), i64::from(form.b()));
    let (c, d) = (i64::from(projector.a()), i64::from(projector.b()));
    let (x, j, y, alive) = match variable {
        Variable::X => (form.a(), bracket(c - a, n), form.b(), b == d),
        Variable::Y => (form.b(), bracket(d - b, n), form.a(), a == c),
    };
    let strategy = src.config().strategy;
    if !alive {
        return Ok(EvalResult::new(0.0, 0.0, 0, strategy));
    }
    let nf = f64::from(n);
    let period_beta = beta(a as f64 / nf, b as f64 / nf)?;
    let w = weighted(
        x,
        j,
        y,
        n,
        src,
        0.5 * src.config().tol * period_beta.min(1.0),
    )?;
    let value = -w.value / period_beta;
    Ok(EvalResult::new(
        value,
        w.err / period_beta + 4.0 * EPS * value.abs(),
        w.effort,
        w.strategy,
    ))
}

/// The complex expression
/// `2[μ_{a,b}(Pˣ − Pʸ)((c,d); (a,b)) − μ_{c,d}(Pˣ − Pʸ)((a,b); (c,d))]`
/// whose imaginary part is `Im reg(Ω^{a,b,c,d})`; `Pᵛ(form; projector)` is
/// [`projector_integral`]. Returns the expression and its error bound.
fn mixed_expression<S: Hyp3F2Source + ?Sized>(
    w: &WedgeIndex,
    src: &S,
    mu_ab: Complex64,
    mu_cd: Complex64,
) -> Result<(Complex64, f64, u64)> {
    let (ab, cd) = (w.first, w.second);
    let px_cd = projector_integral(cd, ab, Variable::X, src)?;
    let py_cd = projector_integral(cd, ab, Variable::Y, src)?;
    let px_ab = projector_integral(ab, cd, Variable::X, src)?;
    let py_ab = projector_integral(ab, cd, Variable::Y, src)?;
    let left = px_cd.value - py_cd.value;
    let right = px_ab.value - py_ab.value;
    let expr = (mu_ab * left - mu_cd * right) * 2.0;
    let err = 2.0
        * (mu_ab.norm() * (px_cd.err + py_cd.err + EPS * left.abs())
            + mu_cd.norm() * (px_ab.err + py_ab.err + EPS * right.abs()))
        + 4.0 * EPS * expr.norm();
    let effort = px_cd.effort + py_cd.effort + px_ab.effort + py_ab.effort;
    Ok((expr, err, effort))
}

/// `Im reg(Ω^{a,b,c,d})` for holomorphic `(a, b)`, `(c, d)`, as the real
/// part of the returned value.
///
/// Swapping the two forms negates the result exactly and the diagonal
/// `(a, b) = (c, d)` gives exactly 0.
pub fn im_reg_mixed<S: Hyp3F2Source + ?Sized>(
    a: i64,
    b: i64,
    c: i64,
    d: i64,
    n: u32,
    src: &S,
) -> Result<RegulatorValue> {
    let w = WedgeIndex::from_ints(a, b, c, d, n)?;
    let (expr, err, effort) = mixed_expression(&w, src, w.first.mu(), w.second.mu())?;
    Ok(RegulatorValue {
        value: Complex64::new(expr.im, 0.0),
        err,
        effort,
        provenance: Provenance::ClosedForm,
    })
}

/// `f(i, N) = Im reg(Ω^{1,i,1,2i}) / (2N²)` and whether `Ω^{1,i,1,2i}` is a
/// Hodge class.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FIndec {
    /// The statistic with its error bound.
    pub value: EvalResult,
    /// A Hodge class carries no indecomposability evidence.
    pub hodge: bool,
}

/// `f(i, N)` for prime `N` and `2i + 1 < N`.
pub fn f_indec<S: Hyp3F2Source + ?Sized>(i: i64, n: u32, src: &S) -> Result<FIndec> {
    let w = WedgeIndex::from_ints(1, i, 1, 2 * i, n)?;
    let hodge = is_hodge(&w)?;
    let r = im_reg_mixed(1, i, 1, 2 * i, n, src)?;
    let scale = 2.0 * f64::from(n) * f64::from(n);
    let value = r.value.re / scale;
    Ok(FIndec {
        value: EvalResult::new(
            value,
            r.err / scale + EPS * value.abs(),
            r.effort,
            src.config().strategy,
        ),
        hodge,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fermat::holomorphic_indices;
    use crate::special::{hyp3f2_unit, EvalConfig};
    use alloc::vec;
    use proptest::prelude::*;

    fn cfg() -> EvalConfig {
        EvalConfig::with_tol(1e-11)
    }

    #[test]
    fn script_f_oracle_values() {
        // Σ_k β((a+j+kN)/N, b/N) / ((j+kN) β(a/N, b/N)), independent evaluation
        let f = script_f(1, 1, 1, 3, &cfg()).unwrap();
        assert!(
            (f.value - 1.209_199_576_156_145_234).abs() <= f.err.max(1e-12),
            "{f:?}"
        );
        let f = script_f(1, 5, 1, 5, &cfg()).unwrap();
        assert!(
            (f.value - 0.545_531_070_401_414_430).abs() <= f.err.max(1e-12),
            "{f:?}"
        );
        assert!(f.err <= cfg().tol);
    }

    #[test]
    fn script_f_unwinds_to_hyp3f2() {
        let (a, j, n) = (2i64, 3i64, 11u32);
        let b = i64::from(n) - a - j;
        let f = script_f(a, j, b, n, &cfg()).unwrap();
        let nf = f64::from(n);
        let ratio = beta(a as f64 / nf, b as f64 / nf).unwrap()
            / beta((a + j) as f64 / nf, b as f64 / nf).unwrap();
        let p = Hyp3F2Params::new(
            Rational::new(a + j, i64::from(n)),
            Rational::new(j, i64::from(n)),
            Rational::from_integer(1),
            Rational::new(a + b + j, i64::from(n)),
            Rational::new(j, i64::from(n)) + 1,
        )
        .unwrap();
        let h = hyp3f2_unit(&p, &cfg()).unwrap();
        assert!((j as f64 * f.value * ratio - h.value).abs() <= j as f64 * f.err * ratio + h.err);
    }

    #[test]
    fn script_f_rejects() {
        assert!(script_f(1, 0, 1, 5, &cfg()).is_err());
        assert!(script_f(1, 6, 1, 5, &cfg()).is_err());
        assert!(script_f(2, 1, 3, 5, &cfg()).is_err());
    }

    #[test]
    fn holomorphic_reference() {
        let r = reg_holomorphic(1, 2, 5, &cfg()).unwrap();
        assert_eq!(r.value.im, 0.0);
        assert!(
            (r.value.re - 6.298_611_257_238_236_103).abs() <= r.err,
            "{r:?}"
        );
        assert!(r.err <= 2.0 * 5.0 * cfg().tol);
        assert_eq!(reg_holomorphic(1, 1, 3, &cfg()).unwrap().value.re, 0.0);
        assert!(reg_holomorphic(2, 3, 5, &cfg()).is_err());
    }

    #[test]
    fn holomorphic_antisymmetry_exact() {
        let c = EvalConfig::with_tol(1e-8);
        for n in [5u32, 7] {
            for f in holomorphic_indices(n) {
                let (a, b) = (i64::from(f.a()), i64::from(f.b()));
                let x = reg_holomorphic(a, b, n, &c).unwrap().value.re;
                let y = reg_holomorphic(b, a, n, &c).unwrap().value.re;
                assert_eq!(x, -y);
                if a == b {
                    assert_eq!(x, 0.0);
                }
            }
        }
    }

    #[test]
    fn log_integral_values() {
        let x = log_integral(1, 2, 5, Variable::X, &cfg()).unwrap();
        assert!(
            (x.value + 2.655_269_323_666_501_414).abs() <= x.err.max(1e-12),
            "{x:?}"
        );
        let x = log_integral(1, 1, 3, Variable::X, &cfg()).unwrap();
        let y = log_integral(1, 1, 3, Variable::Y, &cfg()).unwrap();
        assert_eq!(x.value, y.value);
        // normalisation: 2(x − y)/period = reg
        let x = log_integral(2, 3, 7, Variable::X, &cfg()).unwrap();
        let y = log_integral(2, 3, 7, Variable::Y, &cfg()).unwrap();
        let period = FormIndex::new(2, 3, 7).unwrap().period().unwrap();
        let r = reg_holomorphic(2, 3, 7, &cfg()).unwrap();
        let via = 2.0 * (x.value - y.value) / period;
        assert!((via - r.value.re).abs() <= r.err + 2.0 * (x.err + y.err) / period);
    }

    #[test]
    fn projector_kronecker() {
        let f = |a, b| FormIndex::new(a, b, 13).unwrap();
        let c = cfg();
        assert_eq!(
            projector_integral(f(1, 2), f(3, 4), Variable::X, &c)
                .unwrap()
                .value,
            0.0
        );
        assert_eq!(
            projector_integral(f(1, 2), f(3, 4), Variable::Y, &c)
                .unwrap()
                .value,
            0.0
        );
        assert_ne!(
            projector_integral(f(1, 2), f(5, 2), Variable::X, &c)
                .unwrap()
                .value,
            0.0
        );
        assert_ne!(
            projector_integral(f(1, 2), f(1, 4), Variable::Y, &c)
                .unwrap()
                .value,
            0.0
        );
    }

    // Literal evaluation of the mixed-form expression, frozen from an
    // independent high-precision run of both the closed form and the
    // brute-force translate quadrature.
    const MIXED: [(i64, u32, f64); 9] = [
        (2, 13, 57.879_615_627_495_451_857),
        (2, 17, 73.306_265_356_835_872_14),
        (3, 17, 56.308_291_251_814_152_427),
        (4, 17, 47.755_531_390_558_820_28),
        (3, 19, 61.891_500_943_135_864_657),
        (4, 19, 51.191_682_923_482_594_339),
        (3, 23, 73.677_183_097_251_743_576),
        (4, 23, 59.676_921_447_301_360_249),
        (5, 23, 51.155_140_530_757_019_364),
    ];

    #[test]
    fn mixed_reference_values() {
        let c = EvalConfig::with_tol(1e-10);
        for (i, n, want) in MIXED {
            let r = im_reg_mixed(1, i, 1, 2 * i, n, &c).unwrap();
            assert!(
                (r.value.re - want).abs() <= r.err + 1e-12 * want,
                "({i},{n}): {r:?}"
            );
            let f = f_indec(i, n, &c).unwrap();
            let nf = f64::from(n);
            assert!((f.value.value - want / (2.0 * nf * nf)).abs() <= f.value.err + 1e-14);
            assert!(!f.hodge);
        }
    }

    #[test]
    fn mixed_second_index_two_vanishes() {
        for (i, n, _) in MIXED {
            let r = im_reg_mixed(1, i, 2, 2 * i, n, &cfg()).unwrap();
            assert_eq!(r.value.re, 0.0);
        }
    }

    #[test]
    fn mixed_structure() {
        let c = EvalConfig::with_tol(1e-9);
        for n in [5u32, 7] {
            let forms = holomorphic_indices(n);
            for f in &forms {
                let (a, b) = (i64::from(f.a()), i64::from(f.b()));
                assert_eq!(im_reg_mixed(a, b, a, b, n, &c).unwrap().value.re, 0.0);
                for g in &forms {
                    let (cc, d) = (i64::from(g.a()), i64::from(g.b()));
                    let x = im_reg_mixed(a, b, cc, d, n, &c).unwrap().value.re;
                    let y = im_reg_mixed(cc, d, a, b, n, &c).unwrap().value.re;
                    assert_eq!(x, -y);
                }
            }
        }
    }

    #[test]
    fn mixed_ignores_real_part_of_mu() {
        let c = EvalConfig::with_tol(1e-10);
        for (i, n, _) in MIXED {
            let w = WedgeIndex::from_ints(1, i, 1, 2 * i, n).unwrap();
            let (m1, m2) = (w.first.mu(), w.second.mu());
            let (full, _, _) = mixed_expression(&w, &c, m1, m2).unwrap();
            let pure = |m: Complex64| Complex64::new(0.0, m.im);
            let (imag, _, _) = mixed_expression(&w, &c, pure(m1), pure(m2)).unwrap();
            assert!((full.im - imag.im).abs() <= 1e-9 * imag.im.abs());
        }
    }

    #[test]
    fn f_indec_hodge_and_domain() {
        // 3i + 1 = 13 makes (1, 4), (1, 8) a Hodge pair
        assert!(f_indec(4, 13, &cfg()).unwrap().hodge);
        assert!(f_indec(2, 15, &cfg()).is_err());
        assert!(f_indec(6, 13, &cfg()).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(16))]

        #[test]
        fn holomorphic_antisymmetric((n, a, b) in prop::sample::select(vec![5u32, 7, 11, 13])
            .prop_flat_map(|n| (Just(n), 1..i64::from(n) - 1))
            .prop_flat_map(|(n, a)| (Just(n), Just(a), 1..i64::from(n) - a))) {
            let c = EvalConfig::with_tol(1e-8);
            let x = reg_holomorphic(a, b, n, &c).unwrap();
            let y = reg_holomorphic(b, a, n, &c).unwrap();
            prop_assert_eq!(x.value.re, -y.value.re);
        }
    }
}
