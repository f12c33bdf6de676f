//! Combinatorics and period constants of the Fermat curve `xᴺ + yᴺ = 1`.
//!
//! Forms `ω^{a,b}` are indexed by `(a, b) ∈ I_N`, the pairs with
//! `a, b, a+b ≢ 0 (mod N)`; the form is holomorphic iff `a + b < N` for the
//! representatives in `{1, …, N−1}`. Roots of unity are always formed from a
//! reduced exponent, `ζᵏ = e^{2πi (k mod N)/N}`.

use alloc::vec::Vec;
use core::f64::consts::PI;

use libm::{cos, sin};
use num_complex::Complex64;

use crate::special::beta;
use crate::{Error, Result};

/// Representative of `a mod N` in `{1, …, N}`; multiples of `N` map to `N`.
pub fn bracket(a: i64, n: u32) -> u32 {
    let n64 = i64::from(n);
    let r = a.rem_euclid(n64);
    if r == 0 {
        n
    } else {
        r as u32
    }
}

/// Whether none of `a`, `b`, `a + b` is divisible by `N`.
pub fn is_in_in(a: i64, b: i64, n: u32) -> bool {
    let n = i64::from(n);
    a.rem_euclid(n) != 0 && b.rem_euclid(n) != 0 && (a + b).rem_euclid(n) != 0
}

/// Genus `(N−1)(N−2)/2` of the degree-N Fermat curve.
pub fn genus(n: u32) -> u64 {
    let n = u64::from(n);
    (n - 1) * (n - 2) / 2
}

/// `ζ_N^k = e^{2πik/N}` from the reduced exponent.
pub fn zeta_pow(k: i64, n: u32) -> Complex64 {
    let r = k.rem_euclid(i64::from(n));
    if r == 0 {
        return Complex64::new(1.0, 0.0);
    }
    let theta = 2.0 * PI * r as f64 / f64::from(n);
    Complex64::new(cos(theta), sin(theta))
}

/// Poincaré-dual factor `μ_{a,b} = N²(1−ζᵃ)(1−ζᵇ)/(1−ζ^{a+b})`.
///
/// Mathematically purely imaginary; evaluated in complex arithmetic, so a
/// rounding-level real part remains. See [`mu_imag`] for the trig form.
pub fn mu(a: i64, b: i64, n: u32) -> Result<Complex64> {
    if (a + b).rem_euclid(i64::from(n)) == 0 {
        return Err(Error::Domain("mu: a + b is divisible by N"));
    }
    let one = Complex64::new(1.0, 0.0);
    let n2 = f64::from(n) * f64::from(n);
    Ok((one - zeta_pow(a, n)) * (one - zeta_pow(b, n)) / (one - zeta_pow(a + b, n)) * n2)
}

/// Imaginary part of `μ_{a,b}` in closed form,
/// `−2N² sin(πa/N) sin(πb/N) / sin(π(a+b)/N)`.
pub fn mu_imag(a: i64, b: i64, n: u32) -> Result<f64> {
    let nn = i64::from(n);
    if (a + b).rem_euclid(nn) == 0 {
        return Err(Error::Domain("mu: a + b is divisible by N"));
    }
    let s = |k: i64| sin(PI * k.rem_euclid(2 * nn) as f64 / f64::from(n));
    let n2 = f64::from(n) * f64::from(n);
    Ok(-2.0 * n2 * s(a) * s(b) / s(a + b))
}

/// Deterministic trial-division primality test.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n % 2 == 0 {
        return false;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// A form index `(a, b) ∈ I_N` with representatives in `{1, …, N−1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FormIndex {
    n: u32,
    a: u32,
    b: u32,
}

impl FormIndex {
    /// Reduces `a`, `b` mod `N` and checks membership in `I_N`, `N ≥ 3`.
    pub fn new(a: i64, b: i64, n: u32) -> Result<Self> {
        let invalid = |reason| Error::InvalidIndex { n, a, b, reason };
        if n == 0 {
            return Err(invalid("degree must be positive"));
        }
        if !is_in_in(a, b, n) {
            return Err(invalid("a, b and a + b must be nonzero mod N"));
        }
        if n < 3 {
            return Err(invalid("degree must be at least 3"));
        }
        Ok(FormIndex {
            n,
            a: bracket(a, n),
            b: bracket(b, n),
        })
    }

    /// As [`FormIndex::new`], additionally requiring `a + b < N`.
    pub fn holomorphic(a: i64, b: i64, n: u32) -> Result<Self> {
        let idx = Self::new(a, b, n)?;
        if !idx.is_holomorphic() {
            return Err(Error::InvalidIndex {
                n,
                a,
                b,
                reason: "form is not holomorphic (a + b >= N)",
            });
        }
        Ok(idx)
    }

    /// Curve degree.
    pub fn n(&self) -> u32 {
        self.n
    }

    /// First index in `{1, …, N−1}`.
    pub fn a(&self) -> u32 {
        self.a
    }

    /// Second index in `{1, …, N−1}`.
    pub fn b(&self) -> u32 {
        self.b
    }

    /// `a + b < N`.
    pub fn is_holomorphic(&self) -> bool {
        self.a + self.b < self.n
    }

    /// The complementary exponent `N − a − b` (reduced to `{1, …, N−1}`).
    pub fn third(&self) -> u32 {
        bracket(-i64::from(self.a) - i64::from(self.b), self.n)
    }

    /// `(a, b)` swapped.
    pub fn swapped(&self) -> Self {
        FormIndex {
            n: self.n,
            a: self.b,
            b: self.a,
        }
    }

    /// `∫_γ ω^{a,b} = β(a/N, b/N) / N`.
    pub fn period(&self) -> Result<f64> {
        let n = f64::from(self.n);
        Ok(beta(f64::from(self.a) / n, f64::from(self.b) / n)? / n)
    }

    /// `μ_{a,b}`; never fails for a valid index.
    pub fn mu(&self) -> Complex64 {
        mu(i64::from(self.a), i64::from(self.b), self.n).unwrap_or_default()
    }
}

/// A pair of holomorphic form indices of the same degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct WedgeIndex {
    /// `(a, b)`.
    pub first: FormIndex,
    /// `(c, d)`.
    pub second: FormIndex,
}

impl WedgeIndex {
    /// Requires equal degrees and both forms holomorphic.
    pub fn new(first: FormIndex, second: FormIndex) -> Result<Self> {
        if first.n != second.n {
            return Err(Error::Domain("wedge of forms on different curves"));
        }
        for f in [first, second] {
            if !f.is_holomorphic() {
                return Err(Error::InvalidIndex {
                    n: f.n,
                    a: i64::from(f.a),
                    b: i64::from(f.b),
                    reason: "form is not holomorphic (a + b >= N)",
                });
            }
        }
        Ok(WedgeIndex { first, second })
    }

    /// Builds `((a, b), (c, d))` from raw integers.
    pub fn from_ints(a: i64, b: i64, c: i64, d: i64, n: u32) -> Result<Self> {
        Self::new(
            FormIndex::holomorphic(a, b, n)?,
            FormIndex::holomorphic(c, d, n)?,
        )
    }

    /// Curve degree.
    pub fn n(&self) -> u32 {
        self.first.n
    }

    /// The two slots exchanged.
    pub fn swapped(&self) -> Self {
        WedgeIndex {
            first: self.second,
            second: self.first,
        }
    }
}

fn triple(f: &FormIndex) -> [u32; 3] {
    let mut t = [f.a, f.b, f.third()];
    t.sort_unstable();
    t
}

/// Whether the wedge of `(a, b)` and `(c, d)` is a Hodge class: the triples
/// `{a, b, N−a−b}` and `{c, d, N−c−d}` agree as multisets.
///
/// Only decided for prime `N > 3`; other degrees give
/// [`Error::UnsupportedModulus`].
pub fn is_hodge(w: &WedgeIndex) -> Result<bool> {
    let n = w.n();
    if n <= 3 || !is_prime(u64::from(n)) {
        return Err(Error::UnsupportedModulus { n });
    }
    Ok(triple(&w.first) == triple(&w.second))
}

/// All holomorphic indices for degree `N`, ordered by `(a, b)`.
pub fn holomorphic_indices(n: u32) -> Vec<FormIndex> {
    let mut out = Vec::new();
    for a in 1..n {
        for b in 1..n - a {
            out.push(FormIndex { n, a, b });
        }
    }
    out
}

/// All ordered pairs of holomorphic indices whose wedge is a Hodge class.
pub fn hodge_pairs(n: u32) -> Result<Vec<WedgeIndex>> {
    let forms = holomorphic_indices(n);
    let mut out = Vec::new();
    for &f in &forms {
        for &g in &forms {
            let w = WedgeIndex {
                first: f,
                second: g,
            };
            if is_hodge(&w)? {
                out.push(w);
            }
        }
    }
    Ok(out)
}
