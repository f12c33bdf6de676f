//! ₃F₂(a₁, a₂, a₃; b₁, b₂; 1) for rational parameters.
//!
//! Two independent strategies:
//!
//! * **Kernel quadrature** for the family `(α, γ, 1; α+σ, γ+1)`. Writing the
//!   series as an Euler integral against the Lerch-type kernel
//!   `L(t) = Σ tᵏ/(γ+k)` gives
//!   `₃F₂ = γ/β(α,σ) ∫₀¹ t^{α−1}(1−t)^{σ−1} L(t) dt`.
//!   For `γ = p/q` the kernel has the closed form
//!   `L(t) = q t^{−γ} Φ(t^{1/q})` with
//!   `Φ(u) = −(1/q) Σₖ Re(ζ^{−kp} log(1 − ζᵏu)) − Σ_{n<p, n≡p (q)} uⁿ/n`,
//!   ζ = e^{2πi/q}. Both endpoint singularities are removed by power
//!   substitutions on each half of (0, 1) before tanh-sinh.
//! * **Accelerated series**: ascending partial sums with an asymptotic tail
//!   from [`GammaRatioTail`]. The error estimate compares the extrapolated
//!   values at K and K/2 terms and adds the truncation and rounding terms.

use alloc::vec::Vec;
use core::f64::consts::{LN_2, PI};

use libm::{atan2, exp, expm1, log, log1p, pow, sin};
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};

use super::accel::GammaRatioTail;
use super::{de_quadrature, log_beta, EvalConfig, EvalResult, Rational, Strategy};
use crate::{Error, Result};

/// Largest kernel denominator handled in closed form; larger ones use the
/// series.
const MAX_KERNEL_Q: i64 = 4096;
/// Below this `t` the kernel is summed as a power series.
const KERNEL_SERIES_BELOW: f64 = 0.75;
const TAIL_ORDER: usize = 10;
const TINY: f64 = 1e-100;

/// Validated parameters of ₃F₂(a₁, a₂, a₃; b₁, b₂; 1).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Hyp3F2Params {
    a: [Rational; 3],
    b: [Rational; 2],
}

/// Parameters of the form `(α, γ, 1; α+σ, γ+1)` with α, γ, σ > 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KernelFamily {
    /// Numerator parameter paired with the Beta weight.
    pub alpha: Rational,
    /// Kernel shift; `b = γ + 1` pairs with it.
    pub gamma: Rational,
    /// Parameter excess `b₁ + b₂ − a₁ − a₂ − a₃`.
    pub sigma: Rational,
}

impl Hyp3F2Params {
    /// Checks that the excess `b₁ + b₂ − a₁ − a₂ − a₃` is positive and that
    /// no `bⱼ` is a non-positive integer.
    pub fn new(
        a1: Rational,
        a2: Rational,
        a3: Rational,
        b1: Rational,
        b2: Rational,
    ) -> Result<Self> {
        let p = Hyp3F2Params {
            a: [a1, a2, a3],
            b: [b1, b2],
        };
        for b in p.b {
            if b.is_integer() && !b.is_positive() {
                return Err(Error::Domain("lower parameter is a non-positive integer"));
            }
        }
        if p.terminating_length().is_none() && !p.excess().is_positive() {
            return Err(Error::DivergentParameters {
                excess: to_f64(p.excess()),
            });
        }
        Ok(p)
    }

    /// Numerator parameters.
    pub fn a(&self) -> [Rational; 3] {
        self.a
    }

    /// Denominator parameters.
    pub fn b(&self) -> [Rational; 2] {
        self.b
    }

    /// `b₁ + b₂ − a₁ − a₂ − a₃`.
    pub fn excess(&self) -> Rational {
        self.b[0] + self.b[1] - self.a[0] - self.a[1] - self.a[2]
    }

    /// Recognises the kernel family, trying every assignment of roles.
    pub fn family(&self) -> Option<KernelFamily> {
        let one = Rational::from_integer(1);
        let sigma = self.excess();
        if !sigma.is_positive() {
            return None;
        }
        for i in 0..3 {
            if self.a[i] != one {
                continue;
            }
            for k in 0..3 {
                if k == i {
                    continue;
                }
                let l = 3 - i - k;
                for m in 0..2 {
                    let gamma = self.a[k];
                    let alpha = self.a[l];
                    if self.b[m] == gamma + one
                        && gamma.is_positive()
                        && alpha.is_positive()
                        && self.b[1 - m] == alpha + sigma
                    {
                        return Some(KernelFamily {
                            alpha,
                            gamma,
                            sigma,
                        });
                    }
                }
            }
        }
        None
    }

    /// Number of nonzero terms if some `aᵢ` is a non-positive integer.
    fn terminating_length(&self) -> Option<u64> {
        self.a
            .iter()
            .filter(|a| a.is_integer() && !a.is_positive())
            .map(|a| (-a.to_integer()) as u64 + 1)
            .min()
    }
}

fn to_f64(r: Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// ₃F₂(a₁, a₂, a₃; b₁, b₂; 1) with an absolute error estimate.
///
/// Terminating series are summed exactly. Otherwise the configured strategy
/// is used; [`Strategy::KernelQuadrature`] silently falls back to the series
/// outside its family. Fails with [`Error::BudgetExceeded`] if the tolerance
/// cannot be met and with [`Error::StrategyDisagreement`] if a cross-check
/// fails.
pub fn hyp3f2_unit(p: &Hyp3F2Params, cfg: &EvalConfig) -> Result<EvalResult> {
    cfg.validate()?;
    if let Some(n) = p.terminating_length() {
        return Ok(terminating(p, n, cfg.strategy));
    }
    match cfg.strategy {
        Strategy::KernelQuadrature => match kernel_setup(p) {
            Some(k) => k.eval(cfg),
            None => series(p, cfg),
        },
        Strategy::AcceleratedSeries => series(p, cfg),
        Strategy::BothCrossCheck => {
            let s = series(p, cfg)?;
            let Some(k) = kernel_setup(p) else {
                return Ok(EvalResult {
                    strategy: Strategy::BothCrossCheck,
                    ..s
                });
            };
            let q = k.eval(cfg)?;
            let bound = q.err + s.err;
            if (q.value - s.value).abs() > bound {
                return Err(Error::StrategyDisagreement {
                    kernel: q.value,
                    series: s.value,
                    bound,
                });
            }
            let best = if q.err <= s.err { q } else { s };
            Ok(EvalResult::new(
                best.value,
                best.err,
                q.effort + s.effort,
                Strategy::BothCrossCheck,
            ))
        }
    }
}

fn terminating(p: &Hyp3F2Params, n: u64, strategy: Strategy) -> EvalResult {
    let a = p.a.map(to_f64);
    let b = p.b.map(to_f64);
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut abs = 1.0;
    for k in 0..n.saturating_sub(1) {
        let kf = k as f64;
        term *= (a[0] + kf) * (a[1] + kf) * (a[2] + kf) / ((b[0] + kf) * (b[1] + kf) * (kf + 1.0));
        sum += term;
        abs += term.abs();
    }
    EvalResult::new(sum, 4.0 * n as f64 * f64::EPSILON * abs, n, strategy)
}

// ---------------------------------------------------------------------------
// accelerated series

fn series(p: &Hyp3F2Params, cfg: &EvalConfig) -> Result<EvalResult> {
    let a = p.a.map(to_f64);
    let b = p.b.map(to_f64);
    let tail = GammaRatioTail::new(&a, &[b[0], b[1], 1.0], 1.0, TAIL_ORDER)?;
    let size = a
        .iter()
        .chain(b.iter())
        .fold(0.0_f64, |m, x| m.max(x.abs()));
    let max_terms = u64::from(cfg.max_terms);
    // the tail expansion is in powers of (parameter size)/K
    let mut k_target = (256.0_f64.max(64.0 * libm::ceil(size))) as u64;
    k_target = k_target.min(max_terms).max(2);

    let mut k: u64 = 0;
    let mut term = 1.0;
    let mut sum = Neumaier::default();
    let mut drift = 0.0; // Σ k|t_k|, bounds the recurrence rounding
    let mut at_half: Option<f64> = None;
    let mut best;

    loop {
        let half = k_target / 2;
        while k < k_target {
            if k == half {
                at_half = Some(sum.value() + tail.tail(k as f64, term)?.0);
            }
            sum.add(term);
            drift += k as f64 * term.abs();
            let kf = k as f64;
            term *=
                (a[0] + kf) * (a[1] + kf) * (a[2] + kf) / ((b[0] + kf) * (b[1] + kf) * (kf + 1.0));
            k += 1;
        }
        let (t, t_err) = tail.tail(k as f64, term)?;
        let value = sum.value() + t;
        let rounding = 4.0 * f64::EPSILON * (sum.abs + drift + t.abs());
        let err = at_half.map_or(f64::INFINITY, |h| (value - h).abs()) + t_err + rounding;
        best = (value, err);
        if err <= cfg.tol {
            return Ok(EvalResult::new(value, err, k, Strategy::AcceleratedSeries));
        }
        if k_target >= max_terms {
            break;
        }
        k_target = (2 * k_target).min(max_terms);
        at_half = None;
        if k_target / 2 < k {
            // the midpoint was already passed; use the current estimate
            at_half = Some(value);
        }
    }
    Err(Error::BudgetExceeded {
        value: best.0,
        err: best.1,
        effort: k,
    })
}

#[derive(Default)]
struct Neumaier {
    sum: f64,
    comp: f64,
    abs: f64,
}

impl Neumaier {
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
        self.abs += x.abs();
    }

    fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

// ---------------------------------------------------------------------------
// kernel quadrature

struct Kernel {
    alpha: f64,
    sigma: f64,
    gamma: f64,
    p: i64,
    q: i64,
    /// (sin²(θ/2), sin θ, cos φ, sin φ, multiplicity) for k = 1..=q/2
    roots: Vec<(f64, f64, f64, f64, f64)>,
    log_prefactor: f64,
}

fn kernel_setup(p: &Hyp3F2Params) -> Option<Kernel> {
    let fam = p.family()?;
    let (gp, gq) = (*fam.gamma.numer(), *fam.gamma.denom());
    if gq > MAX_KERNEL_Q {
        return None;
    }
    let alpha = to_f64(fam.alpha);
    let sigma = to_f64(fam.sigma);
    let gamma = to_f64(fam.gamma);
    let mut roots = Vec::new();
    for k in 1..=gq / 2 {
        let half_theta = PI * k as f64 / gq as f64;
        let s = sin(half_theta);
        let theta = 2.0 * half_theta;
        // reduce k·p mod q to keep the angle small
        let kp = (k * gp).mod_floor(&gq);
        let phi = 2.0 * PI * kp as f64 / gq as f64;
        let mult = if 2 * k == gq { 1.0 } else { 2.0 };
        roots.push((s * s, sin(theta), libm::cos(phi), sin(phi), mult));
    }
    let log_prefactor = log(gamma) - log_beta(alpha, sigma).ok()?;
    Some(Kernel {
        alpha,
        sigma,
        gamma,
        p: gp,
        q: gq,
        roots,
        log_prefactor,
    })
}

impl Kernel {
    /// `L(t) = Σ tᵏ/(γ+k)` given `t`, `s = 1 − t` and `ln s`.
    fn lerch(&self, t: f64, s: f64, ln_s: f64) -> f64 {
        if t <= KERNEL_SERIES_BELOW {
            let mut pw = 1.0;
            let mut acc = 0.0;
            let mut k = 0.0;
            loop {
                let term = pw / (self.gamma + k);
                acc += term;
                if term < 1e-17 * acc {
                    return acc;
                }
                pw *= t;
                k += 1.0;
            }
        }
        let q = self.q as f64;
        let ln_t = log1p(-s);
        let ln_u = ln_t / q;
        let u = exp(ln_u);
        let (one_minus_u, mut phi_sum) = if s < TINY {
            // 1 − u = s/q to relative O(s)
            (s / q, ln_s - log(q))
        } else {
            let d = -expm1(ln_u);
            (d, log(d))
        };
        for &(sh2, st, cp, sp, mult) in &self.roots {
            // 1 − ζᵏu = (1 − u cos θ) − i u sin θ
            let re = one_minus_u + 2.0 * u * sh2;
            let im = -u * st;
            let modulus = 0.5 * log(re * re + im * im);
            let arg = atan2(im, re);
            phi_sum += mult * (cp * modulus + sp * arg);
        }
        let mut phi = -phi_sum / q;
        let mut n = self.p.mod_floor(&self.q);
        while n < self.p {
            if n > 0 {
                phi -= pow(u, n as f64) / n as f64;
            }
            n += self.q;
        }
        q * exp(-self.gamma * ln_t) * phi
    }

    fn eval(&self, cfg: &EvalConfig) -> Result<EvalResult> {
        let pref = exp(self.log_prefactor);
        // lower half: t = ½ v^{1/α}, dt-weight (2^{−α}/α)
        let c_lo = pow(2.0, -self.alpha) / self.alpha;
        let c_hi = pow(2.0, -self.sigma) / self.sigma;
        let sub = EvalConfig {
            tol: 0.25 * cfg.tol / (pref * c_lo.max(c_hi)),
            ..*cfg
        };
        let lo = best_effort(de_quadrature(
            |v, _| {
                let t = 0.5 * pow(v, 1.0 / self.alpha);
                let s = 1.0 - t;
                pow(s, self.sigma - 1.0) * self.lerch(t, s, log1p(-t))
            },
            &sub,
        ))?;
        let hi = best_effort(de_quadrature(
            |w, _| {
                // s = ½ w^{1/σ} may underflow; its logarithm does not
                let ln_s = log(w) / self.sigma - LN_2;
                let s = exp(ln_s);
                let t = 1.0 - s;
                pow(t, self.alpha - 1.0) * self.lerch(t, s, ln_s)
            },
            &sub,
        ))?;
        let value = pref * (c_lo * lo.value + c_hi * hi.value);
        // the closed-form kernel carries a few ulps near t = 1
        let rounding =
            128.0 * f64::EPSILON * pref * (c_lo * lo.value.abs() + c_hi * hi.value.abs());
        let err = pref * (c_lo * lo.err + c_hi * hi.err) + rounding;
        if err > cfg.tol {
            return Err(Error::BudgetExceeded {
                value,
                err,
                effort: lo.effort + hi.effort,
            });
        }
        Ok(EvalResult::new(
            value,
            err,
            lo.effort + hi.effort,
            Strategy::KernelQuadrature,
        ))
    }
}

/// Keeps a half-range estimate that missed its own target; the combined
/// error decides whether the whole evaluation fails.
fn best_effort(r: Result<EvalResult>) -> Result<EvalResult> {
    match r {
        Err(Error::BudgetExceeded { value, err, effort }) => Ok(EvalResult::new(
            value,
            err,
            effort,
            Strategy::KernelQuadrature,
        )),
        other => other,
    }
}
