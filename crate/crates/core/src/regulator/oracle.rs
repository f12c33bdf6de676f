//! Brute-force evaluations that share no formulas with the closed forms.
//!
//! * [`oracle_projector_integral`]: integrates `log(1 − ζʳx)` against
//!   `ω^{a,b}` along every translate `g^{r,s}δ`, assembles the cycle `γ` from
//!   the four-term translate sum and applies the character projector.
//! * [`oracle_series_sum`]: `Σ_{j≥1} β((a+j)/N, b/N)/(jN)` summed directly
//!   with a Gamma-ratio tail.
//! * [`oracle_log_quadrature`]: `reg(Ω^{a,b})` as a single path integral of
//!   `log((1−x)/(1−y))`.
//!
//! The base integrals on δ, `t ↦ (t^{1/N}, (1−t)^{1/N})`, are split at
//! `t = ½` and substituted `t = uᴺ` resp. `1 − t = wᴺ`, which makes the
//! integrands smooth apart from a logarithm at one end.

use alloc::vec::Vec;
use core::f64::consts::PI;

use libm::{atan2, expm1, log, log1p, pow, sin};
use num_complex::Complex64;

use super::{Provenance, RegulatorValue, Variable};
use crate::fermat::{zeta_pow, FormIndex};
use crate::special::accel::GammaRatioTail;
use crate::special::{beta, de_quadrature, log_gamma, EvalConfig, EvalResult, Strategy};
use crate::{Error, Result};

const EPS: f64 = f64::EPSILON;

/// The factor integrated against `ω^{a,b}` in the oracle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Integrand {
    /// `log(1 − x)` or `log(1 − y)`.
    Log(Variable),
    /// The constant 1 (pairs `ω̃^{a,b}` with the projected cycle).
    Unit,
}

/// `log(1 − ζʳ z)` for `0 < z < 1`, given `1 − z` and its logarithm
/// accurately.
fn log_one_minus(z: f64, one_minus_z: f64, ln_one_minus_z: f64, r: i64, n: u32) -> Complex64 {
    let r = r.rem_euclid(i64::from(n));
    if r == 0 {
        return Complex64::new(ln_one_minus_z, 0.0);
    }
    let half = PI * r as f64 / f64::from(n);
    let sh = sin(half);
    // 1 − ζʳz = (1 − z) + 2z sin²(θ/2) − i z sin θ
    let re = one_minus_z + 2.0 * z * sh * sh;
    let im = -z * sin(2.0 * half);
    Complex64::new(0.5 * log(re * re + im * im), atan2(im, re))
}

/// `(1/N) ∫₀¹ F(t) t^{a/N−1} (1−t)^{b/N−1} dt` with
/// `F = log(1 − ζʳ t^{1/N})` or `F = 1`.
fn base_integral(
    a: u32,
    b: u32,
    n: u32,
    r: Option<i64>,
    cfg: &EvalConfig,
) -> Result<(Complex64, f64, u64)> {
    let nf = f64::from(n);
    let (af, bf) = (f64::from(a), f64::from(b));
    let c = pow(0.5, 1.0 / nf);
    let mut total = Complex64::new(0.0, 0.0);
    let mut err = 0.0;
    let mut effort = 0;
    for part in 0..2 {
        if part == 1 && matches!(r, None | Some(0)) {
            break;
        }
        let pick = |z: Complex64| if part == 0 { z.re } else { z.im };
        // lower half: t = uᴺ, u = c·v
        let lo = de_quadrature(
            |v, _| {
                let u = c * v;
                let un = pow(u, nf);
                let f = match r {
                    Some(r) => pick(log_one_minus(u, 1.0 - u, log1p(-u), r, n)),
                    None => 1.0,
                };
                c * pow(u, af - 1.0) * f * pow(1.0 - un, bf / nf - 1.0)
            },
            cfg,
        )?;
        // upper half: 1 − t = wᴺ, w = c·v
        let hi = de_quadrature(
            |v, _| {
                let w = c * v;
                let wn = pow(w, nf);
                let ln_t = log1p(-wn);
                let x = libm::exp(ln_t / nf);
                // 1 − x = wᴺ/N + O(w²ᴺ) once wᴺ is negligible
                let (d, ln_d) = if wn < 1e-100 {
                    let ln_d = nf * (log(c) + log(v)) - log(nf);
                    (libm::exp(ln_d), ln_d)
                } else {
                    let d = -expm1(ln_t / nf);
                    (d, log(d))
                };
                let f = match r {
                    Some(r) => pick(log_one_minus(x, d, ln_d, r, n)),
                    None => 1.0,
                };
                c * pow(w, bf - 1.0) * f * libm::exp((af / nf - 1.0) * ln_t)
            },
            cfg,
        )?;
        let v = lo.value + hi.value;
        if part == 0 {
            total.re = v;
        } else {
            total.im = v;
        }
        err += lo.err + hi.err;
        effort += lo.effort + hi.effort;
    }
    Ok((total, err, effort))
}

/// Brute-force `∫_{P^{c,d}γ} F ω̃^{a,b}` over all `N²` translates of δ, with
/// `form = (a, b)` and `projector = (c, d)`.
///
/// With `seg(r, s) = ∫_{g^{r,s}δ} F ω^{a,b}`, the cycle is
/// `∫_{g^{r,s}γ} = N⁻² Σ_{l,m} [seg(r,s) − seg(r+l,s) + seg(r+l,s+m) − seg(r,s+m)]`
/// and the projector is `N⁻² Σ_{r,s} ζ^{−(cr+ds)} ∫_{g^{r,s}γ}`; the result is
/// divided by the period `∫_γ ω^{a,b}`.
pub fn oracle_projector_integral(
    form: FormIndex,
    projector: FormIndex,
    integrand: Integrand,
    cfg: &EvalConfig,
) -> Result<EvalResult<Complex64>> {
    cfg.validate()?;
    let n = form.n();
    if projector.n() != n {
        return Err(Error::Domain("projector and form on different curves"));
    }
    let (a, b) = (i64::from(form.a()), i64::from(form.b()));
    let (c, d) = (i64::from(projector.a()), i64::from(projector.b()));
    let nn = i64::from(n);
    let period = form.period()?;
    let sub = EvalConfig {
        tol: cfg.tol * period / 8.0,
        ..*cfg
    };

    // base[k]: integral along δ itself with the root ζᵏ inside the logarithm
    let mut base = Vec::with_capacity(n as usize);
    let mut base_err: f64 = 0.0;
    let mut effort = 0;
    match integrand {
        Integrand::Unit => {
            let (v, e, k) = base_integral(form.a(), form.b(), n, None, &sub)?;
            base.resize(n as usize, v);
            base_err = e;
            effort += k;
        }
        Integrand::Log(var) => {
            // log(1 − ζˢy) on δ for (a, b) is log(1 − ζˢx) for (b, a) under t ↦ 1 − t
            let (p, q) = match var {
                Variable::X => (form.a(), form.b()),
                Variable::Y => (form.b(), form.a()),
            };
            for k in 0..nn {
                let (v, e, cost) = base_integral(p, q, n, Some(k), &sub)?;
                base.push(v);
                base_err = base_err.max(e);
                effort += cost;
            }
        }
    }
    let rooted = |r: i64, s: i64| -> usize {
        let k = match integrand {
            Integrand::Log(Variable::Y) => s,
            _ => r,
        };
        k.rem_euclid(nn) as usize
    };
    let seg = |r: i64, s: i64| zeta_pow(a * r + b * s, n) * base[rooted(r, s)];

    let inv = 1.0 / (nn * nn) as f64;
    let mut proj = Complex64::new(0.0, 0.0);
    let mut scale: f64 = 0.0;
    for r in 0..nn {
        for s in 0..nn {
            let mut gamma = Complex64::new(0.0, 0.0);
            let here = seg(r, s);
            for l in 0..nn {
                for m in 0..nn {
                    gamma += here - seg(r + l, s) + seg(r + l, s + m) - seg(r, s + m);
                }
            }
            gamma *= inv;
            scale = scale.max(gamma.norm());
            proj += zeta_pow(-(c * r + d * s), n) * gamma;
        }
    }
    proj *= inv;
    let max_base = base.iter().fold(0.0_f64, |m, z| m.max(z.norm()));
    let rounding = 8.0 * EPS * (4.0 * (nn * nn) as f64 * max_base + scale);
    let value = proj / period;
    Ok(EvalResult::new(
        value,
        (4.0 * base_err + rounding) / period + 2.0 * EPS * value.norm(),
        effort,
        Strategy::KernelQuadrature,
    ))
}

/// `Σ_{j≥1} β((a+j)/N, b/N) / (jN)` by direct summation in ascending `j`
/// plus a Gamma-ratio tail; terms decay like `j^{−1−b/N}`.
///
/// Equals `−∫_δ log(1−x) ω^{a,b}`.
pub fn oracle_series_sum(a: i64, b: i64, n: u32, cfg: &EvalConfig) -> Result<EvalResult> {
    cfg.validate()?;
    let idx = FormIndex::new(a, b, n)?;
    let nf = f64::from(n);
    let (x, y) = (f64::from(idx.a()) / nf, f64::from(idx.b()) / nf);
    // t_j ∝ Γ(j/N + x) Γ(j/N) / (Γ(j/N + x + y) Γ(j/N + 1))
    let tail = GammaRatioTail::new(&[x, 0.0], &[x + y, 1.0], nf, 10)?;
    let lgy = log_gamma(y)?;
    let term = |j: u64| -> Result<f64> {
        let jf = j as f64;
        let lb = log_gamma(x + jf / nf)? + lgy - log_gamma(x + y + jf / nf)?;
        Ok(libm::exp(lb) / (jf * nf))
    };
    let max_terms = u64::from(cfg.max_terms).max(2);
    let mut k_target = (64 * u64::from(n)).min(max_terms);
    let mut j = 1u64;
    let mut sum = 0.0;
    let mut abs_rounding = 0.0;
    let mut at_half = None;
    let mut best;
    loop {
        let half = k_target / 2;
        while j < k_target {
            if j == half {
                at_half = Some(sum + tail.tail(j as f64, term(j)?)?.0);
            }
            let t = term(j)?;
            sum += t;
            // log-gamma differences are good to ~1e-14 absolute
            abs_rounding += t * (EPS + 1e-14);
            j += 1;
        }
        let (t, t_err) = tail.tail(j as f64, term(j)?)?;
        let value = sum + t;
        let err = at_half.map_or(f64::INFINITY, |h: f64| (value - h).abs())
            + t_err
            + abs_rounding
            + 2.0 * EPS * libm::sqrt(j as f64) * value;
        best = (value, err);
        if err <= cfg.tol {
            return Ok(EvalResult::new(value, err, j, Strategy::AcceleratedSeries));
        }
        if k_target >= max_terms {
            break;
        }
        k_target = (2 * k_target).min(max_terms);
        at_half = if k_target / 2 < j { Some(value) } else { None };
    }
    Err(Error::BudgetExceeded {
        value: best.0,
        err: best.1,
        effort: j,
    })
}

/// `reg(Ω^{a,b}) = (2/β(a/N, b/N)) ∫₀¹ log((1−t^{1/N})/(1−(1−t)^{1/N}))
/// t^{a/N−1} (1−t)^{b/N−1} dt`, integrated directly.
pub fn oracle_log_quadrature(a: i64, b: i64, n: u32, cfg: &EvalConfig) -> Result<RegulatorValue> {
    cfg.validate()?;
    let idx = FormIndex::holomorphic(a, b, n)?;
    let nf = f64::from(n);
    let period_beta = beta(f64::from(idx.a()) / nf, f64::from(idx.b()) / nf)?;
    let scale = 2.0 * nf / period_beta;
    let sub = EvalConfig {
        tol: 0.25 * cfg.tol / scale,
        ..*cfg
    };
    let (x, ex, kx) = base_integral(idx.a(), idx.b(), n, Some(0), &sub)?;
    let (y, ey, ky) = base_integral(idx.b(), idx.a(), n, Some(0), &sub)?;
    let value = scale * (x.re - y.re);
    Ok(RegulatorValue {
        value: Complex64::new(value, 0.0),
        err: scale * (ex + ey) + 4.0 * EPS * (scale * (x.re.abs() + y.re.abs())),
        effort: kx + ky,
        provenance: Provenance::OracleQuadrature,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fermat::holomorphic_indices;
    use crate::regulator::{log_integral, projector_integral, reg_holomorphic};

    fn cfg(tol: f64) -> EvalConfig {
        EvalConfig::with_tol(tol)
    }

    #[test]
    fn log_quadrature_reference() {
        let r = oracle_log_quadrature(1, 2, 5, &cfg(1e-11)).unwrap();
        assert!(
            (r.value.re - 6.298_611_257_238_236_103).abs() <= r.err,
            "{r:?}"
        );
        assert_eq!(r.provenance, Provenance::OracleQuadrature);
    }

    #[test]
    fn log_quadrature_matches_closed_form() {
        let c = cfg(1e-9);
        for n in [3u32, 5, 7] {
            for f in holomorphic_indices(n) {
                let (a, b) = (i64::from(f.a()), i64::from(f.b()));
                let o = oracle_log_quadrature(a, b, n, &c).unwrap();
                let r = reg_holomorphic(a, b, n, &c).unwrap();
                assert!(
                    (o.value.re - r.value.re).abs() <= o.err + r.err,
                    "N={n} ({a},{b})"
                );
            }
        }
    }

    #[test]
    fn series_sum_reference() {
        let s = oracle_series_sum(1, 1, 3, &cfg(1e-10)).unwrap();
        assert!(
            (s.value - 4.541_582_246_357_619_654).abs() <= s.err,
            "{s:?}"
        );
        let x = log_integral(1, 2, 5, Variable::X, &cfg(1e-10)).unwrap();
        let s = oracle_series_sum(1, 2, 5, &cfg(1e-10)).unwrap();
        assert!((s.value + x.value).abs() <= s.err + x.err);
    }

    #[test]
    fn series_partial_sums_increase() {
        let nf = 5.0;
        let mut last = 0.0;
        for j in 1..200u32 {
            let t = beta((1.0 + f64::from(j)) / nf, 2.0 / nf).unwrap() / (f64::from(j) * nf);
            assert!(t > 0.0);
            assert!(last + t > last);
            last += t;
        }
        assert!(last < oracle_series_sum(1, 2, 5, &cfg(1e-8)).unwrap().value);
    }

    #[test]
    fn series_budget() {
        let c = EvalConfig {
            tol: 1e-17,
            max_terms: 300,
            ..Default::default()
        };
        assert!(matches!(
            oracle_series_sum(1, 1, 3, &c),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn unit_pairing_is_kronecker() {
        let c = cfg(1e-10);
        let f = |a, b| FormIndex::new(a, b, 7).unwrap();
        let one = oracle_projector_integral(f(2, 3), f(2, 3), Integrand::Unit, &c).unwrap();
        assert!((one.value - 1.0).norm() <= one.err, "{one:?}");
        let zero = oracle_projector_integral(f(2, 3), f(1, 3), Integrand::Unit, &c).unwrap();
        assert!(zero.value.norm() <= zero.err, "{zero:?}");
    }

    #[test]
    fn projector_oracle_matches_closed_form() {
        let c = cfg(1e-9);
        let f = |a, b| FormIndex::new(a, b, 13).unwrap();
        for (form, proj, var) in [
            (f(1, 2), f(1, 4), Variable::Y),
            (f(1, 4), f(1, 2), Variable::Y),
            (f(1, 2), f(5, 2), Variable::X),
            (f(1, 2), f(3, 4), Variable::X),
        ] {
            let o = oracle_projector_integral(form, proj, Integrand::Log(var), &c).unwrap();
            let k = projector_integral(form, proj, var, &c).unwrap();
            assert!(o.value.im.abs() <= o.err);
            assert!(
                (o.value.re - k.value).abs() <= o.err + k.err,
                "{form:?} {proj:?} {var:?}: {o:?} {k:?}"
            );
        }
    }
}
