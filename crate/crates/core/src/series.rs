//! Truncated bivariate power series in `t` (cohomological degree) and `u`
//! (internal degree) with big-integer coefficients.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeriesError {
    #[error("truncation bounds differ: (t<={0}, u<={1}) vs (t<={2}, u<={3})")]
    BoundMismatch(usize, usize, usize, usize),
    #[error("constant term {0} is not a unit in Z")]
    NonUnitConstant(BigInt),
}

/// `Σ c[p,s] t^p u^s` for `p <= max_t`, `s <= max_u`. Zero coefficients are
/// never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BiSeries {
    max_t: usize,
    max_u: usize,
    coeffs: BTreeMap<(usize, usize), BigInt>,
}

/// Result of setting `u = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnivariateSeries {
    pub coeffs: Vec<BigInt>,
    /// Set when the stored support suggests `t`-slices reach past `max_u`,
    /// so some coefficients may be missing.
    pub possibly_truncated: bool,
}

impl BiSeries {
    pub fn zero(max_t: usize, max_u: usize) -> Self {
        BiSeries {
            max_t,
            max_u,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one(max_t: usize, max_u: usize) -> Self {
        Self::monomial(BigInt::one(), 0, 0, max_t, max_u)
    }

    /// `c t^p u^s`, or zero if the monomial lies outside the bounds.
    pub fn monomial(c: BigInt, p: usize, s: usize, max_t: usize, max_u: usize) -> Self {
        let mut out = Self::zero(max_t, max_u);
        out.add_term(p, s, c);
        out
    }

    pub fn from_terms<I>(terms: I, max_t: usize, max_u: usize) -> Self
    where
        I: IntoIterator<Item = (usize, usize, BigInt)>,
    {
        let mut out = Self::zero(max_t, max_u);
        for (p, s, c) in terms {
            out.add_term(p, s, c);
        }
        out
    }

    /// Adds `c t^p u^s`; silently drops terms beyond the bounds.
    pub fn add_term(&mut self, p: usize, s: usize, c: BigInt) {
        if p > self.max_t || s > self.max_u || c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry((p, s)).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&(p, s));
        }
    }

    pub fn max_t(&self) -> usize {
        self.max_t
    }

    pub fn max_u(&self) -> usize {
        self.max_u
    }

    pub fn coeff(&self, p: usize, s: usize) -> BigInt {
        self.coeffs.get(&(p, s)).cloned().unwrap_or_default()
    }

    /// Nonzero terms in `(p, s)` lexicographic order.
    pub fn terms(&self) -> impl Iterator<Item = (usize, usize, &BigInt)> {
        self.coeffs.iter().map(|(&(p, s), c)| (p, s, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn check_bounds(&self, other: &Self) -> Result<(), SeriesError> {
        if self.max_t != other.max_t || self.max_u != other.max_u {
            return Err(SeriesError::BoundMismatch(
                self.max_t,
                self.max_u,
                other.max_t,
                other.max_u,
            ));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_bounds(other)?;
        let mut out = self.clone();
        for (&(p, s), c) in &other.coeffs {
            out.add_term(p, s, c.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        BiSeries {
            max_t: self.max_t,
            max_u: self.max_u,
            coeffs: self.coeffs.iter().map(|(&k, c)| (k, -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self, SeriesError> {
        self.add(&other.neg())
    }

    /// Truncated Cauchy product.
    pub fn mul(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_bounds(other)?;
        let mut out = Self::zero(self.max_t, self.max_u);
        for (&(p1, s1), c1) in &self.coeffs {
            for (&(p2, s2), c2) in &other.coeffs {
                if p1 + p2 <= self.max_t && s1 + s2 <= self.max_u {
                    out.add_term(p1 + p2, s1 + s2, c1 * c2);
                }
            }
        }
        Ok(out)
    }

    /// Multiplicative inverse, defined when the constant term is `±1`.
    pub fn inverse(&self) -> Result<Self, SeriesError> {
        let c0 = self.coeff(0, 0);
        if c0.abs() != BigInt::one() {
            return Err(SeriesError::NonUnitConstant(c0));
        }
        // c0 = ±1 is its own inverse.
        let mut inv: BTreeMap<(usize, usize), BigInt> = BTreeMap::new();
        for p in 0..=self.max_t {
            for s in 0..=self.max_u {
                let value = if (p, s) == (0, 0) {
                    c0.clone()
                } else {
                    let mut acc = BigInt::zero();
                    for (&(i, j), a) in self.coeffs.range((0, 0)..=(p, s)) {
                        if (i, j) == (0, 0) || j > s {
                            continue;
                        }
                        if let Some(b) = inv.get(&(p - i, s - j)) {
                            acc += a * b;
                        }
                    }
                    -(&c0 * acc)
                };
                if !value.is_zero() {
                    inv.insert((p, s), value);
                }
            }
        }
        Ok(BiSeries {
            max_t: self.max_t,
            max_u: self.max_u,
            coeffs: inv,
        })
    }

    /// `1 − Σ b_i u^{d+i−1} t^{i+1}`: the denominator of the bigraded
    /// Poincaré series for an almost linear resolution with Betti numbers `b`.
    pub fn betti_denominator(b: &[u64], d: usize, max_t: usize, max_u: usize) -> Self {
        let mut out = Self::one(max_t, max_u);
        for (k, &bi) in b.iter().enumerate() {
            let i = k + 1;
            out.add_term(i + 1, d + i - 1, -BigInt::from(bi));
        }
        out
    }

    /// Sets `u = 1`.
    ///
    /// The truncation flag uses the support cone of the stored terms: if some
    /// term has slope `s/p` such that `max_t * s/p > max_u`, higher `t`-slices
    /// can spill past `max_u` and their sums may be incomplete.
    pub fn specialize_u(&self) -> UnivariateSeries {
        let mut coeffs = vec![BigInt::zero(); self.max_t + 1];
        let mut possibly_truncated = false;
        for (&(p, s), c) in &self.coeffs {
            coeffs[p] += c;
            if p > 0 && self.max_t * s > self.max_u * p {
                possibly_truncated = true;
            }
            if p == 0 && s > 0 {
                possibly_truncated = true;
            }
        }
        UnivariateSeries {
            coeffs,
            possibly_truncated,
        }
    }
}

impl fmt::Display for BiSeries {
    /// Terms render as `c * t^p * u^s`, sorted by `(p, s)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (k, (&(p, s), c)) in self.coeffs.iter().enumerate() {
            if k == 0 {
                write!(f, "{c} * t^{p} * u^{s}")?;
            } else if c.is_negative() {
                write!(f, " - {} * t^{p} * u^{s}", -c)?;
            } else {
                write!(f, " + {c} * t^{p} * u^{s}")?;
            }
        }
        Ok(())
    }
}
