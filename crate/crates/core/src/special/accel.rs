//! Tail models and sequence transformations for slowly convergent series.
//!
//! [`GammaRatioTail`] sums `Σ_{k≥K} g(k/scale)` for terms that are ratios of
//! Gamma functions, `g(x) = Π Γ(x+aᵢ) / Π Γ(x+bⱼ)`, using the asymptotic
//! expansion `g(x) ~ x^p Σ cₘ x^{−m}` and Hurwitz zeta values. This is the
//! tail used by the accelerated ₃F₂ series.
//!
//! [`levin_u`] is a general nonlinear accelerator kept for diagnostics.

use alloc::vec::Vec;

use libm::pow;

use crate::{Error, Result};

// B_0 ..= B_16
const BERNOULLI: [f64; 17] = [
    1.0,
    -0.5,
    1.0 / 6.0,
    0.0,
    -1.0 / 30.0,
    0.0,
    1.0 / 42.0,
    0.0,
    -1.0 / 30.0,
    0.0,
    5.0 / 66.0,
    0.0,
    -691.0 / 2730.0,
    0.0,
    7.0 / 6.0,
    0.0,
    -3617.0 / 510.0,
];

// B_{2j} / (2j)! for j = 1..=8
const EM: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 720.0,
    1.0 / 30240.0,
    -1.0 / 1_209_600.0,
    1.0 / 47_900_160.0,
    -691.0 / 1_307_674_368_000.0,
    1.0 / 74_724_249_600.0,
    -3617.0 / 10_670_622_842_880_000.0,
];

/// Bernoulli number Bₙ for `n ≤ 16`.
pub fn bernoulli(n: usize) -> f64 {
    BERNOULLI[n]
}

/// Bernoulli polynomial Bₙ(x) for `n ≤ 16`.
pub fn bernoulli_poly(n: usize, x: f64) -> f64 {
    // Σ C(n,k) B_k x^{n−k}, Horner in x
    let mut binom = 1.0;
    let mut coeffs = [0.0; 17];
    for k in 0..=n {
        coeffs[k] = binom * BERNOULLI[k];
        binom = binom * (n - k) as f64 / (k + 1) as f64;
    }
    let mut acc = 0.0;
    for k in 0..=n {
        acc = acc * x + coeffs[k];
    }
    acc
}

/// `q^{s−1} ζ(s, q)`, the Hurwitz zeta function scaled to be O(1) for large q.
///
/// Euler–Maclaurin after shifting the base to at least `max(32, 2s)`.
pub fn hurwitz_zeta_scaled(s: f64, q: f64) -> Result<f64> {
    if !(s > 1.0) || !(q > 0.0) {
        return Err(Error::Domain("Hurwitz zeta needs s > 1 and q > 0"));
    }
    let base = 32.0_f64.max(2.0 * s);
    let mut head = 0.0;
    let mut x = q;
    while x < base {
        head += pow(q / x, s) / q;
        x += 1.0;
    }
    // q^{s−1} [x^{1−s}/(s−1) + x^{−s}/2 + Σ B_{2j}/(2j)! (s)_{2j−1} x^{−s−2j+1}]
    let r = pow(q / x, s - 1.0);
    let mut corr = 0.0;
    let mut rising = s;
    let mut xp = 1.0 / x;
    for (j, c) in EM.iter().enumerate() {
        corr += c * rising * xp;
        let m = 2.0 * j as f64;
        rising *= (s + m + 1.0) * (s + m + 2.0);
        xp /= x * x;
    }
    Ok(head + r * (1.0 / (s - 1.0) + 0.5 / x + corr / x))
}

/// Hurwitz zeta ζ(s, q) = Σ_{k≥0} (q+k)^{−s}, `s > 1`, `q > 0`.
pub fn hurwitz_zeta(s: f64, q: f64) -> Result<f64> {
    Ok(hurwitz_zeta_scaled(s, q)? * pow(q, 1.0 - s))
}

/// Asymptotic tail of a series whose terms behave like a Gamma ratio.
///
/// For `g(x) = Π Γ(x+numᵢ) / Π Γ(x+denⱼ)` (equal counts) the expansion
/// `ln g(x) = p ln x + Σ dₙ x^{−n}` has `p = Σ num − Σ den` and
/// `dₙ = (−1)^{n+1} [Σ B_{n+1}(numᵢ) − Σ B_{n+1}(denⱼ)] / (n(n+1))`.
#[derive(Debug, Clone, PartialEq)]
pub struct GammaRatioTail {
    p: f64,
    c: Vec<f64>,
    scale: f64,
}

impl GammaRatioTail {
    /// Highest supported expansion order.
    pub const MAX_ORDER: usize = 14;

    /// Expansion of `g(k/scale)` to `order` terms beyond the leading power.
    pub fn new(num: &[f64], den: &[f64], scale: f64, order: usize) -> Result<Self> {
        if num.len() != den.len() {
            return Err(Error::Domain(
                "Gamma ratio needs equal numerator and denominator counts",
            ));
        }
        if order < 2 || order > Self::MAX_ORDER || !(scale > 0.0) {
            return Err(Error::Domain(
                "tail order must be in 2..=14 and scale positive",
            ));
        }
        let p = num.iter().sum::<f64>() - den.iter().sum::<f64>();
        if !(p < -1.0) {
            return Err(Error::DivergentParameters { excess: -1.0 - p });
        }
        let mut d = Vec::with_capacity(order + 1);
        d.push(0.0);
        for n in 1..=order {
            let b: f64 = num.iter().map(|&a| bernoulli_poly(n + 1, a)).sum::<f64>()
                - den.iter().map(|&a| bernoulli_poly(n + 1, a)).sum::<f64>();
            let sign = if n % 2 == 1 { 1.0 } else { -1.0 };
            d.push(sign * b / (n * (n + 1)) as f64);
        }
        let mut c = Vec::with_capacity(order + 1);
        c.push(1.0);
        for m in 1..=order {
            let s: f64 = (1..=m).map(|n| n as f64 * d[n] * c[m - n]).sum();
            c.push(s / m as f64);
        }
        Ok(GammaRatioTail { p, c, scale })
    }

    /// Leading exponent `p`.
    pub fn exponent(&self) -> f64 {
        self.p
    }

    /// `Σ_{k≥K} t_k` given `t_K`, and the change from dropping the last two
    /// expansion orders (a truncation error estimate).
    pub fn tail(&self, k: f64, t_k: f64) -> Result<(f64, f64)> {
        let order = self.c.len() - 1;
        let full = self.sum_to(k, order)?;
        let short = self.sum_to(k, order - 2)?;
        Ok((t_k * full, (t_k * (full - short)).abs()))
    }

    fn sum_to(&self, k: f64, order: usize) -> Result<f64> {
        // K Σ cₘ (scale/K)^m ζ̂(m−p, K) / Σ cₘ (scale/K)^m
        let r = self.scale / k;
        let mut num = 0.0;
        let mut den = 0.0;
        let mut rm = 1.0;
        for m in 0..=order {
            num += self.c[m] * rm * hurwitz_zeta_scaled(m as f64 - self.p, k)?;
            den += self.c[m] * rm;
            rm *= r;
        }
        Ok(k * num / den)
    }
}

/// Levin u-transform of the series with the given terms.
///
/// Returns the transformed limit and the difference to the transform of
/// order one lower. Needs at least three terms.
pub fn levin_u(terms: &[f64]) -> Option<(f64, f64)> {
    if terms.len() < 3 {
        return None;
    }
    let k = terms.len() - 1;
    let hi = levin_u_order(terms, k)?;
    let lo = levin_u_order(terms, k - 1)?;
    Some((hi, (hi - lo).abs()))
}

fn levin_u_order(terms: &[f64], k: usize) -> Option<f64> {
    let mut partial = 0.0;
    let mut num = 0.0;
    let mut den = 0.0;
    let mut binom = 1.0;
    let kk = k as f64;
    for (j, &a) in terms.iter().enumerate().take(k + 1) {
        partial += a;
        let jj = j as f64;
        let omega = (jj + 1.0) * a;
        if omega == 0.0 {
            return None;
        }
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        let w = sign * binom * pow((jj + 1.0) / (kk + 1.0), kk - 1.0) / omega;
        num += w * partial;
        den += w;
        binom = binom * (kk - jj) / (jj + 1.0);
    }
    let v = num / den;
    v.is_finite().then_some(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::{LN_2, PI};

    #[test]
    fn bernoulli_poly_values() {
        assert_eq!(bernoulli_poly(0, 0.3), 1.0);
        assert!((bernoulli_poly(1, 0.3) - (0.3 - 0.5)).abs() < 1e-16);
        assert!((bernoulli_poly(2, 0.3) - (0.09 - 0.3 + 1.0 / 6.0)).abs() < 1e-15);
        for n in 2..=16 {
            assert!((bernoulli_poly(n, 0.0) - bernoulli(n)).abs() < 1e-12);
            // B_n(1) = B_n for n ≥ 2
            assert!(
                (bernoulli_poly(n, 1.0) - bernoulli(n)).abs() < 1e-10,
                "n = {n}"
            );
        }
    }

    #[test]
    fn zeta_values() {
        assert!((hurwitz_zeta(2.0, 1.0).unwrap() - PI * PI / 6.0).abs() < 1e-15);
        assert!((hurwitz_zeta(4.0, 1.0).unwrap() - PI.powi(4) / 90.0).abs() < 1e-15);
        // ζ(2, 1/2) = π²/2
        assert!((hurwitz_zeta(2.0, 0.5).unwrap() - PI * PI / 2.0).abs() < 1e-14);
        // ζ(1 + 1/23, 1) from an independent evaluation
        let z = hurwitz_zeta(1.0 + 1.0 / 23.0, 1.0).unwrap();
        assert!((z - 23.580_372_384_304_715).abs() < 1e-11, "{z}");
        assert!(hurwitz_zeta(1.0, 1.0).is_err());
    }

    #[test]
    fn zeta_scaled_large_q() {
        // q^{s−1} ζ(s, q) → 1/(s−1) + 1/(2q) + ...
        let z = hurwitz_zeta_scaled(3.0, 1e6).unwrap();
        assert!((z - (0.5 + 0.5e-6)).abs() < 1e-12);
    }

    #[test]
    fn gamma_ratio_tail_of_basel() {
        // t_k = 1/(k+1)² = (Γ(k+1)/Γ(k+2))²
        let tail = GammaRatioTail::new(&[1.0, 1.0], &[2.0, 2.0], 1.0, 10).unwrap();
        let k = 64.0;
        let (v, e) = tail.tail(k, 1.0 / ((k + 1.0) * (k + 1.0))).unwrap();
        let want = hurwitz_zeta(2.0, k + 1.0).unwrap();
        assert!((v - want).abs() < 1e-15, "{v} vs {want}");
        assert!(e < 1e-14);
    }

    #[test]
    fn gamma_ratio_divergent() {
        assert!(matches!(
            GammaRatioTail::new(&[1.0], &[1.5], 1.0, 8),
            Err(Error::DivergentParameters { .. })
        ));
    }

    #[test]
    fn levin_alternating_log2() {
        let terms: Vec<f64> = (0..14)
            .map(|k| if k % 2 == 0 { 1.0 } else { -1.0 } / (k as f64 + 1.0))
            .collect();
        let (v, e) = levin_u(&terms).unwrap();
        assert!((v - LN_2).abs() < 1e-11, "{v}");
        assert!(e < 1e-9);
    }

    #[test]
    fn levin_basel() {
        let terms: Vec<f64> = (1..=12).map(|k| 1.0 / (k * k) as f64).collect();
        let (v, _) = levin_u(&terms).unwrap();
        assert!((v - PI * PI / 6.0).abs() < 1e-8, "{v}");
    }
}
