//! Truncated univariate power series with polynomial coefficients.

use std::fmt;

use thiserror::Error;

use super::{MultiPoly, Rational};
use crate::par;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeriesError {
    #[error("linear coefficient {0} is not a unit")]
    NonUnitLeadingCoefficient(String),
    #[error("constant term {0} must vanish")]
    ZeroConstantViolation(String),
    #[error("inner series has nonzero constant term {0}")]
    CompositionAtNonzeroConstant(String),
    #[error("constant term {0} is not invertible")]
    NonInvertibleConstant(String),
}

/// Σ_{d ≤ bound} c_d t^d. Coefficients above the bound are never stored.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TruncatedSeries {
    var: String,
    coeffs: Vec<MultiPoly>,
}

impl TruncatedSeries {
    pub fn zero(bound: usize) -> Self {
        TruncatedSeries {
            var: "t".into(),
            coeffs: vec![MultiPoly::zero(); bound + 1],
        }
    }

    /// The series `t`.
    pub fn identity(bound: usize) -> Self {
        let mut s = Self::zero(bound);
        if bound >= 1 {
            s.coeffs[1] = MultiPoly::one();
        }
        s
    }

    /// Builds from coefficients c_0, c_1, ...; entries beyond `bound` are dropped.
    pub fn from_coeffs(bound: usize, coeffs: impl IntoIterator<Item = MultiPoly>) -> Self {
        let mut s = Self::zero(bound);
        for (d, c) in coeffs.into_iter().enumerate().take(bound + 1) {
            s.coeffs[d] = c;
        }
        s
    }

    pub fn from_rationals(bound: usize, coeffs: &[Rational]) -> Self {
        Self::from_coeffs(bound, coeffs.iter().cloned().map(MultiPoly::constant))
    }

    pub fn with_var(mut self, var: impl Into<String>) -> Self {
        self.var = var.into();
        self
    }

    pub fn var(&self) -> &str {
        &self.var
    }

    pub fn bound(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, d: usize) -> &MultiPoly {
        static ZERO: MultiPoly = MultiPoly::zero();
        self.coeffs.get(d).unwrap_or(&ZERO)
    }

    pub fn coeffs(&self) -> &[MultiPoly] {
        &self.coeffs
    }

    pub fn set_coeff(&mut self, d: usize, c: MultiPoly) {
        if d <= self.bound() {
            self.coeffs[d] = c;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(MultiPoly::is_zero)
    }

    /// Lowest degree with a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn truncate(&self, bound: usize) -> Self {
        Self::from_coeffs(bound, self.coeffs.iter().cloned()).with_var(self.var.clone())
    }

    pub fn map_coeffs(&self, f: impl Fn(&MultiPoly) -> MultiPoly) -> Self {
        TruncatedSeries {
            var: self.var.clone(),
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    fn common_bound(&self, other: &Self) -> usize {
        self.bound().min(other.bound())
    }

    pub fn add(&self, other: &Self) -> Self {
        let b = self.common_bound(other);
        TruncatedSeries {
            var: self.var.clone(),
            coeffs: (0..=b).map(|d| self.coeffs[d].add(&other.coeffs[d])).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let b = self.common_bound(other);
        TruncatedSeries {
            var: self.var.clone(),
            coeffs: (0..=b).map(|d| self.coeffs[d].sub(&other.coeffs[d])).collect(),
        }
    }

    pub fn scale(&self, c: &MultiPoly) -> Self {
        self.map_coeffs(|x| x.mul(c))
    }

    /// Product truncated at the smaller bound. Output degrees are computed in
    /// parallel.
    pub fn mul(&self, other: &Self) -> Self {
        let b = self.common_bound(other);
        let lo_a = self.valuation().unwrap_or(b + 1);
        let lo_b = other.valuation().unwrap_or(b + 1);
        let coeffs = par::map_range(b + 1, |d| {
            let mut acc = MultiPoly::zero();
            if d >= lo_a + lo_b {
                for i in lo_a..=d - lo_b {
                    let (x, y) = (&self.coeffs[i], &other.coeffs[d - i]);
                    if !x.is_zero() && !y.is_zero() {
                        acc = acc.add(&x.mul(y));
                    }
                }
            }
            acc
        });
        TruncatedSeries {
            var: self.var.clone(),
            coeffs,
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::zero(self.bound()).with_var(self.var.clone());
        acc.coeffs[0] = MultiPoly::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        let b = self.bound();
        let mut out = Self::zero(b).with_var(self.var.clone());
        for d in 1..=b {
            out.coeffs[d - 1] = self.coeffs[d].scale(&Rational::from_int(d as i64));
        }
        out
    }

    /// Multiplicative inverse; the constant term must be a nonzero rational.
    pub fn inverse(&self) -> Result<Self, SeriesError> {
        let a0 = self.coeffs[0]
            .as_constant()
            .and_then(|c| c.recip())
            .ok_or_else(|| SeriesError::NonInvertibleConstant(self.coeffs[0].to_string()))?;
        let b = self.bound();
        let mut h = Self::zero(b).with_var(self.var.clone());
        h.coeffs[0] = MultiPoly::constant(a0.clone());
        let neg_inv = -&a0;
        for d in 1..=b {
            let mut acc = MultiPoly::zero();
            for i in 1..=d {
                acc = acc.add(&self.coeffs[i].mul(&h.coeffs[d - i]));
            }
            h.coeffs[d] = acc.scale(&neg_inv);
        }
        Ok(h)
    }
}

/// f ∘ g truncated at the smaller bound. Requires g(0) = 0.
pub fn series_compose(
    f: &TruncatedSeries,
    g: &TruncatedSeries,
) -> Result<TruncatedSeries, SeriesError> {
    if !g.coeff(0).is_zero() {
        return Err(SeriesError::CompositionAtNonzeroConstant(
            g.coeff(0).to_string(),
        ));
    }
    let b = f.bound().min(g.bound());
    let g = g.truncate(b);
    // Horner: f_b, then acc·g + f_d downwards.
    let mut acc = TruncatedSeries::zero(b).with_var(g.var().to_string());
    for d in (0..=b).rev() {
        acc = acc.mul(&g);
        acc.coeffs[0] = acc.coeffs[0].add(f.coeff(d));
    }
    Ok(acc)
}

/// Compositional inverse g of f, so that f(g(t)) = g(f(t)) = t up to the bound.
///
/// Uses Newton iteration g ← g − (f∘g − t)·(f′∘g)⁻¹, which doubles the number
/// of correct coefficients each round.
pub fn series_reversion(f: &TruncatedSeries) -> Result<TruncatedSeries, SeriesError> {
    if !f.coeff(0).is_zero() {
        return Err(SeriesError::ZeroConstantViolation(f.coeff(0).to_string()));
    }
    let b = f.bound();
    let lead = f.coeff(1);
    let lead_inv = lead
        .as_constant()
        .and_then(|c| c.recip())
        .ok_or_else(|| SeriesError::NonUnitLeadingCoefficient(lead.to_string()))?;
    let t = TruncatedSeries::identity(b).with_var(f.var().to_string());
    let mut g = t.scale(&MultiPoly::constant(lead_inv));
    let df = f.derivative();
    let mut correct = 1usize;
    while correct < b {
        let residual = series_compose(f, &g)?.sub(&t);
        if residual.is_zero() {
            break;
        }
        let slope = series_compose(&df, &g)?.inverse()?;
        g = g.sub(&residual.mul(&slope));
        correct *= 2;
    }
    Ok(g)
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (d, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let mono = match d {
                0 => String::new(),
                1 => self.var.clone(),
                _ => format!("{}^{}", self.var, d),
            };
            match (c.len(), mono.is_empty()) {
                (_, true) => write!(f, "({c})")?,
                (1, false) if c.as_constant().is_some_and(|x| x.is_one()) => {
                    f.write_str(&mono)?
                }
                _ => write!(f, "({c})*{mono}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O({}^{})", self.var, self.bound() + 1)
    }
}
