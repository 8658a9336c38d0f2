//! Truncated power series in two or three formal variables with polynomial
//! coefficients. Formal group laws live here as arity-2 series.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use super::{MultiPoly, Rational, TruncatedSeries};
use crate::par;

/// Exponents of the formal variables (x, y, z); unused slots are zero.
pub type FormalMonomial = [u16; 3];

fn formal_degree(m: &FormalMonomial) -> usize {
    m.iter().map(|&e| e as usize).sum()
}

/// Σ c_e x^e over exponent vectors of total degree ≤ bound.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MultiSeries {
    arity: usize,
    bound: usize,
    terms: BTreeMap<FormalMonomial, MultiPoly>,
}

/// Bivariate truncated series F(x, y): a [`MultiSeries`] of arity 2.
pub type BiTruncatedPoly = MultiSeries;

impl MultiSeries {
    pub fn zero(arity: usize, bound: usize) -> Self {
        assert!((1..=3).contains(&arity), "arity must be 1, 2 or 3");
        MultiSeries {
            arity,
            bound,
            terms: BTreeMap::new(),
        }
    }

    /// The formal variable with 0-based index `i`.
    pub fn var(arity: usize, bound: usize, i: usize) -> Self {
        assert!(i < arity);
        let mut e = [0u16; 3];
        e[i] = 1;
        Self::zero(arity, bound).with_term(e, MultiPoly::one())
    }

    pub fn constant(arity: usize, bound: usize, c: MultiPoly) -> Self {
        Self::zero(arity, bound).with_term([0; 3], c)
    }

    pub fn from_terms(
        arity: usize,
        bound: usize,
        terms: impl IntoIterator<Item = (FormalMonomial, MultiPoly)>,
    ) -> Self {
        let mut s = Self::zero(arity, bound);
        for (e, c) in terms {
            s.add_term(e, &c);
        }
        s
    }

    fn with_term(mut self, e: FormalMonomial, c: MultiPoly) -> Self {
        self.add_term(e, &c);
        self
    }

    fn add_term(&mut self, e: FormalMonomial, c: &MultiPoly) {
        debug_assert!(e[self.arity..].iter().all(|&x| x == 0));
        if formal_degree(&e) > self.bound || c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_default();
        *slot = slot.add(c);
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    /// Embeds a univariate series as a series in formal variable `i`.
    pub fn from_univariate(s: &TruncatedSeries, arity: usize, i: usize) -> Self {
        let mut out = Self::zero(arity, s.bound());
        for (d, c) in s.coeffs().iter().enumerate() {
            let mut e = [0u16; 3];
            e[i] = d as u16;
            out.add_term(e, c);
        }
        out
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn coeff(&self, e: FormalMonomial) -> MultiPoly {
        self.terms.get(&e).cloned().unwrap_or_default()
    }

    /// Coefficient of x^i y^j.
    pub fn coeff2(&self, i: usize, j: usize) -> MultiPoly {
        self.coeff([i as u16, j as u16, 0])
    }

    pub fn terms(&self) -> impl Iterator<Item = (&FormalMonomial, &MultiPoly)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms listed by ascending total degree, then descending x-exponent.
    pub fn sorted_terms(&self) -> Vec<(FormalMonomial, MultiPoly)> {
        let mut v: Vec<_> = self.terms.iter().map(|(e, c)| (*e, c.clone())).collect();
        v.sort_by(|a, b| {
            formal_degree(&a.0)
                .cmp(&formal_degree(&b.0))
                .then_with(|| b.0.cmp(&a.0))
        });
        v
    }

    pub fn truncate(&self, bound: usize) -> Self {
        MultiSeries {
            arity: self.arity,
            bound,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| formal_degree(e) <= bound)
                .map(|(e, c)| (*e, c.clone()))
                .collect(),
        }
    }

    pub fn filter(&self, keep: impl Fn(&FormalMonomial) -> bool) -> Self {
        MultiSeries {
            arity: self.arity,
            bound: self.bound,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| keep(e))
                .map(|(e, c)| (*e, c.clone()))
                .collect(),
        }
    }

    pub fn map_coeffs(&self, f: impl Fn(&MultiPoly) -> MultiPoly) -> Self {
        let mut out = Self::zero(self.arity, self.bound);
        for (e, c) in &self.terms {
            out.add_term(*e, &f(c));
        }
        out
    }

    /// Fallible coefficient map; stops at the first `None`.
    pub fn try_map_coeffs(&self, f: impl Fn(&MultiPoly) -> Option<MultiPoly>) -> Option<Self> {
        let mut out = Self::zero(self.arity, self.bound);
        for (e, c) in &self.terms {
            out.add_term(*e, &f(c)?);
        }
        Some(out)
    }

    /// Exchanges the formal variables `i` and `j`.
    pub fn swap(&self, i: usize, j: usize) -> Self {
        let mut out = Self::zero(self.arity, self.bound);
        for (e, c) in &self.terms {
            let mut s = *e;
            s.swap(i, j);
            out.add_term(s, c);
        }
        out
    }

    /// Sets formal variable `i` to zero.
    pub fn at_zero(&self, i: usize) -> Self {
        self.filter(|e| e[i] == 0)
    }

    fn common_bound(&self, other: &Self) -> usize {
        assert_eq!(self.arity, other.arity, "arity mismatch");
        self.bound.min(other.bound)
    }

    pub fn add(&self, other: &Self) -> Self {
        let b = self.common_bound(other);
        let mut out = self.truncate(b);
        for (e, c) in &other.terms {
            out.add_term(*e, c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(MultiPoly::neg)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &MultiPoly) -> Self {
        self.map_coeffs(|x| x.mul(c))
    }

    /// Truncated product; chunks of the left operand are multiplied in parallel.
    pub fn mul(&self, other: &Self) -> Self {
        let b = self.common_bound(other);
        let left: Vec<_> = self.terms.iter().collect();
        let right: Vec<_> = other.terms.iter().collect();
        let chunk = left.len().div_ceil(par::chunk_count(left.len())).max(1);
        let chunks: Vec<_> = left.chunks(chunk).collect();
        let partials = par::map(&chunks, |chunk| {
            let mut acc: HashMap<FormalMonomial, MultiPoly> = HashMap::new();
            for (ea, ca) in chunk.iter() {
                let da = formal_degree(ea);
                for (eb, cb) in &right {
                    if da + formal_degree(eb) > b {
                        continue;
                    }
                    let e = [ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]];
                    let slot = acc.entry(e).or_default();
                    *slot = slot.add(&ca.mul(cb));
                }
            }
            acc
        });
        let mut out = Self::zero(self.arity, b);
        for part in partials {
            for (e, c) in part {
                out.add_term(e, &c);
            }
        }
        out
    }

    /// Powers 0..=n of this series.
    pub fn powers(&self, n: usize) -> Vec<Self> {
        let mut out = Vec::with_capacity(n + 1);
        out.push(Self::constant(self.arity, self.bound, MultiPoly::one()));
        for k in 1..=n {
            let next = out[k - 1].mul(self);
            out.push(next);
        }
        out
    }

    pub fn has_zero_constant(&self) -> bool {
        !self.terms.contains_key(&[0, 0, 0])
    }

    pub fn lowest_degree(&self) -> Option<usize> {
        self.terms.keys().map(formal_degree).min()
    }
}

/// f ∘ g for univariate f and multivariate g with zero constant term.
pub fn compose_into(f: &TruncatedSeries, g: &MultiSeries) -> MultiSeries {
    assert!(g.has_zero_constant(), "inner series must vanish at the origin");
    let b = f.bound().min(g.bound());
    let g = g.truncate(b);
    let mut acc = MultiSeries::zero(g.arity(), b);
    for d in (0..=b).rev() {
        acc = acc.mul(&g);
        acc.add_term([0; 3], f.coeff(d));
    }
    acc
}

/// F(a, b) for a bivariate F and series a, b of a common arity with zero
/// constant terms.
pub fn substitute2(law: &BiTruncatedPoly, a: &MultiSeries, b: &MultiSeries) -> MultiSeries {
    assert_eq!(law.arity(), 2);
    assert!(a.has_zero_constant() && b.has_zero_constant());
    let bound = law.bound().min(a.bound()).min(b.bound());
    let a = a.truncate(bound);
    let b = b.truncate(bound);
    let pa = a.powers(bound);
    let pb = b.powers(bound);
    let terms: Vec<_> = law.terms().map(|(e, c)| (*e, c.clone())).collect();
    let pieces = par::map(&terms, |(e, c)| {
        let (i, j) = (e[0] as usize, e[1] as usize);
        if i + j > bound {
            return MultiSeries::zero(a.arity(), bound);
        }
        pa[i].mul(&pb[j]).scale(c)
    });
    pieces
        .into_iter()
        .fold(MultiSeries::zero(a.arity(), bound), |acc, p| acc.add(&p))
}

/// Restricts an arity-1 series to a [`TruncatedSeries`].
pub fn to_univariate(s: &MultiSeries) -> TruncatedSeries {
    let mut out = TruncatedSeries::zero(s.bound());
    for (e, c) in s.terms() {
        debug_assert!(e[1] == 0 && e[2] == 0);
        out.set_coeff(e[0] as usize, c.clone());
    }
    out
}

impl fmt::Display for MultiSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        const NAMES: [&str; 3] = ["x", "y", "z"];
        let terms = self.sorted_terms();
        if terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, (e, c)) in terms.iter().enumerate() {
            let mono: Vec<String> = (0..self.arity)
                .filter(|&i| e[i] > 0)
                .map(|i| match e[i] {
                    1 => NAMES[i].to_string(),
                    k => format!("{}^{}", NAMES[i], k),
                })
                .collect();
            let mono = mono.join("*");
            let mut coeff = c.to_string();
            let negative = c.len() == 1 && coeff.starts_with('-');
            if negative {
                coeff.remove(0);
            }
            match (idx, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if c.len() > 1 {
                coeff = format!("({coeff})");
            }
            match (mono.is_empty(), coeff == "1") {
                (true, _) => f.write_str(&coeff)?,
                (false, true) => f.write_str(&mono)?,
                (false, false) => write!(f, "{coeff}*{mono}")?,
            }
        }
        Ok(())
    }
}

impl From<Rational> for MultiPoly {
    fn from(c: Rational) -> Self {
        MultiPoly::constant(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_truncates_by_total_degree() {
        let x = MultiSeries::var(2, 3, 0);
        let y = MultiSeries::var(2, 3, 1);
        let s = x.add(&y);
        let sq = s.mul(&s).mul(&s).mul(&s);
        assert!(sq.is_empty());
        let cube = s.mul(&s).mul(&s);
        assert_eq!(cube.coeff2(2, 1), MultiPoly::from_int(3));
        assert_eq!(cube.len(), 4);
    }

    #[test]
    fn compose_and_substitute_agree() {
        // F(x, y) = x + y; F(a, b) must equal a + b.
        let law = MultiSeries::var(2, 4, 0).add(&MultiSeries::var(2, 4, 1));
        let a = MultiSeries::var(3, 4, 0).mul(&MultiSeries::var(3, 4, 1));
        let b = MultiSeries::var(3, 4, 2);
        assert_eq!(substitute2(&law, &a, &b), a.add(&b));
        // exp-like f = t + t^2 composed with x + y.
        let f = TruncatedSeries::from_rationals(
            3,
            &[Rational::zero(), Rational::one(), Rational::one()],
        );
        let g = compose_into(&f, &law.truncate(3));
        assert_eq!(g.coeff2(1, 1), MultiPoly::from_int(2));
        assert_eq!(g.coeff2(2, 0), MultiPoly::one());
    }
}
