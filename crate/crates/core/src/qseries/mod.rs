//! Truncated formal power series over arbitrary-precision integers.
//!
//! A [`TruncatedSeries`] with degree bound `N` stores exactly `c_0..=c_N`.
//! Every operation keeps the bound fixed; nothing past `N` is ever consulted,
//! so reading `c_n` from a series built at bound `N >= n` equals reading it
//! from the same construction at bound `n`.

mod gf;

pub use gf::{
    fk_difference, gf_fkg, gf_gap, gf_q, gf_q_modulus, k_rewritten, power_bound_exponent, FkgSeries,
};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{invalid, Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<BigInt>,
}

impl TruncatedSeries {
    pub fn zero(degree_bound: usize) -> Self {
        Self {
            coeffs: vec![BigInt::zero(); degree_bound + 1],
        }
    }

    pub fn one(degree_bound: usize) -> Self {
        let mut s = Self::zero(degree_bound);
        s.coeffs[0] = BigInt::one();
        s
    }

    /// `c * q^k`, truncated (zero when `k > degree_bound`).
    pub fn monomial(k: usize, c: impl Into<BigInt>, degree_bound: usize) -> Self {
        let mut s = Self::zero(degree_bound);
        if k <= degree_bound {
            s.coeffs[k] = c.into();
        }
        s
    }

    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Result<Self> {
        if coeffs.is_empty() {
            return invalid("a truncated series needs at least the constant coefficient");
        }
        Ok(Self { coeffs })
    }

    /// Pads with zeros or truncates to the requested bound.
    pub fn from_i64s(values: &[i64], degree_bound: usize) -> Self {
        let mut s = Self::zero(degree_bound);
        for (c, &v) in s.coeffs.iter_mut().zip(values) {
            *c = BigInt::from(v);
        }
        s
    }

    pub fn degree_bound(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> &BigInt {
        &self.coeffs[n]
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coefficients(self) -> Vec<BigInt> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// The same series re-truncated at a smaller bound.
    pub fn truncate(&self, degree_bound: usize) -> Result<Self> {
        if degree_bound > self.degree_bound() {
            return invalid(format!(
                "cannot widen a series from bound {} to {degree_bound}",
                self.degree_bound()
            ));
        }
        Ok(Self {
            coeffs: self.coeffs[..=degree_bound].to_vec(),
        })
    }

    fn check_bounds(&self, other: &Self) -> Result<()> {
        if self.coeffs.len() != other.coeffs.len() {
            return Err(Error::MismatchedBounds {
                left: self.degree_bound(),
                right: other.degree_bound(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_bounds(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Self { coeffs })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_bounds(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Ok(Self { coeffs })
    }

    /// Cauchy product truncated at the common bound.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_bounds(other)?;
        let n = self.degree_bound();
        let mut out = Self::zero(n);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=n - i].iter().enumerate() {
                if !b.is_zero() {
                    out.coeffs[i + j] += a * b;
                }
            }
        }
        Ok(out)
    }

    /// Multiplication by `q^k`.
    pub fn shift(&self, k: usize) -> Self {
        let n = self.degree_bound();
        let mut out = Self::zero(n);
        if k <= n {
            out.coeffs[k..].clone_from_slice(&self.coeffs[..=n - k]);
        }
        out
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// Multiplies in place by `1 + sign*q^j` (`sign` is `+1` or `-1`).
    pub fn mul_binomial(&mut self, j: u64, plus: bool) {
        let n = self.degree_bound();
        let Ok(j) = usize::try_from(j) else { return };
        if j == 0 || j > n {
            return;
        }
        for m in (j..=n).rev() {
            let (lo, hi) = self.coeffs.split_at_mut(m);
            if plus {
                hi[0] += &lo[m - j];
            } else {
                hi[0] -= &lo[m - j];
            }
        }
    }

    /// Divides in place by `1 + sign*q^j` using the prefix recurrence
    /// `c'_m = c_m ∓ c'_{m-j}`.
    pub fn div_binomial(&mut self, j: u64, plus: bool) {
        let n = self.degree_bound();
        let Ok(j) = usize::try_from(j) else { return };
        if j == 0 || j > n {
            return;
        }
        for m in j..=n {
            let (lo, hi) = self.coeffs.split_at_mut(m);
            if plus {
                hi[0] -= &lo[m - j];
            } else {
                hi[0] += &lo[m - j];
            }
        }
    }

    pub fn apply_factor(&self, factor: &PochhammerFactor) -> Self {
        let mut out = self.clone();
        out.apply_factor_in_place(factor);
        out
    }

    /// Multiplies by the infinite product, keeping only the finitely many
    /// binomials `1 ± q^{s+jm}` with `s + jm <= N`.
    pub fn apply_factor_in_place(&mut self, factor: &PochhammerFactor) {
        let n = self.degree_bound() as u64;
        let plus = factor.sign == FactorSign::Plus;
        let mut e = factor.start;
        while e <= n {
            if factor.inverted {
                self.div_binomial(e, plus);
            } else {
                self.mul_binomial(e, plus);
            }
            e += factor.step;
        }
    }

    /// Index of the first negative coefficient, if any.
    pub fn first_negative(&self) -> Option<usize> {
        self.coeffs.iter().position(Signed::is_negative)
    }
}

/// Smallest `n` with `c_n < 0`.
pub fn nonneg_check(series: &TruncatedSeries) -> Option<usize> {
    series.first_negative()
}

#[derive(Serialize, Deserialize)]
struct SeriesWire {
    degree_bound: usize,
    coefficients: Vec<String>,
}

impl Serialize for TruncatedSeries {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        SeriesWire {
            degree_bound: self.degree_bound(),
            coefficients: self.coeffs.iter().map(BigInt::to_string).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for TruncatedSeries {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let wire = SeriesWire::deserialize(deserializer)?;
        if wire.coefficients.len() != wire.degree_bound + 1 {
            return Err(D::Error::custom(format!(
                "degree_bound {} but {} coefficients",
                wire.degree_bound,
                wire.coefficients.len()
            )));
        }
        let coeffs = wire
            .coefficients
            .iter()
            .map(|s| s.parse::<BigInt>().map_err(D::Error::custom))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(Self { coeffs })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FactorSign {
    /// Binomials `1 - q^e`: the symbol `(q^s; q^m)_∞`.
    Minus,
    /// Binomials `1 + q^e`: the symbol `(-q^s; q^m)_∞`.
    Plus,
}

/// `(±q^s; q^m)_∞` or its reciprocal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PochhammerFactor {
    pub start: u64,
    pub step: u64,
    pub sign: FactorSign,
    pub inverted: bool,
}

impl PochhammerFactor {
    pub fn new(start: u64, step: u64, sign: FactorSign, inverted: bool) -> Result<Self> {
        if start == 0 || step == 0 {
            return invalid(format!(
                "Pochhammer start and step must be positive (got {start}, {step})"
            ));
        }
        Ok(Self {
            start,
            step,
            sign,
            inverted,
        })
    }

    /// `(q^s; q^m)_∞`.
    pub fn poch(start: u64, step: u64) -> Self {
        Self::new(start, step, FactorSign::Minus, false).expect("positive start and step")
    }

    /// `(-q^s; q^m)_∞`.
    pub fn poch_neg(start: u64, step: u64) -> Self {
        Self::new(start, step, FactorSign::Plus, false).expect("positive start and step")
    }

    pub fn inverse(self) -> Self {
        Self {
            inverted: !self.inverted,
            ..self
        }
    }
}
