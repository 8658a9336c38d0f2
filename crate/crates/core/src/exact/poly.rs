//! Sparse multivariate polynomials over ℚ in the graded variables v_1..v_k.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::Rational;

/// Hard limit on the number of graded variables a [`Monomial`] can carry.
pub const MAX_VARS: usize = 8;

/// Coefficient ring ℚ[v_1..v_k] with deg(v_i) = −(p^i − 1).
///
/// The ungraded ring (no prime, no variables) carries the additive and
/// multiplicative laws.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GradedRing {
    pub prime: Option<u64>,
    pub nvars: usize,
}

impl GradedRing {
    pub fn new(prime: u64, nvars: usize) -> Self {
        assert!(prime >= 2, "prime must be at least 2");
        assert!(nvars <= MAX_VARS, "at most {MAX_VARS} graded variables");
        GradedRing {
            prime: Some(prime),
            nvars,
        }
    }

    pub fn rational() -> Self {
        GradedRing {
            prime: None,
            nvars: 0,
        }
    }

    /// Smallest ring containing every v_i that can occur in a coefficient of
    /// t^d for d ≤ `bound`: all i with p^i − 1 ≤ bound − 1.
    pub fn for_bound(prime: u64, bound: usize) -> Self {
        let mut k = 0;
        while k < MAX_VARS && prime.pow(k as u32 + 1) - 1 < bound as u64 {
            k += 1;
        }
        GradedRing::new(prime, k)
    }

    /// Degree of v_i (1-based), −(p^i − 1).
    pub fn var_degree(&self, i: usize) -> i64 {
        let p = self.prime.expect("ungraded ring has no variables");
        -((p.pow(i as u32) - 1) as i64)
    }

    pub fn monomial_degree(&self, m: Monomial) -> i64 {
        (1..=self.nvars)
            .map(|i| m.exponent(i) as i64 * self.var_degree(i))
            .sum()
    }
}

/// Exponent vector packed into a machine word, one byte per variable with v_1
/// in the most significant byte. Ordered graded-lexicographically.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct Monomial(u64);

impl Monomial {
    pub const ONE: Monomial = Monomial(0);

    /// Variables are 1-based.
    pub fn var(i: usize) -> Self {
        Monomial::ONE.with_exponent(i, 1)
    }

    pub fn from_exponents(exps: &[u32]) -> Self {
        assert!(exps.len() <= MAX_VARS);
        exps.iter()
            .enumerate()
            .fold(Monomial::ONE, |m, (i, &e)| m.with_exponent(i + 1, e))
    }

    fn shift(i: usize) -> u32 {
        assert!((1..=MAX_VARS).contains(&i), "variable index {i} out of range");
        8 * (MAX_VARS - i) as u32
    }

    pub fn exponent(&self, i: usize) -> u32 {
        ((self.0 >> Self::shift(i)) & 0xff) as u32
    }

    pub fn with_exponent(self, i: usize, e: u32) -> Self {
        assert!(e <= 0xff, "exponent {e} overflows monomial packing");
        let s = Self::shift(i);
        Monomial((self.0 & !(0xffu64 << s)) | ((e as u64) << s))
    }

    pub fn exponents(&self, nvars: usize) -> Vec<u32> {
        (1..=nvars).map(|i| self.exponent(i)).collect()
    }

    pub fn total_degree(&self) -> u32 {
        self.0.to_be_bytes().iter().map(|&b| b as u32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0 == 0
    }

    /// Largest variable index with a nonzero exponent.
    pub fn support_len(&self) -> usize {
        (1..=MAX_VARS).rev().find(|&i| self.exponent(i) > 0).unwrap_or(0)
    }

    pub fn mul(self, other: Monomial) -> Monomial {
        let a = self.0.to_be_bytes();
        let b = other.0.to_be_bytes();
        let mut out = [0u8; 8];
        for i in 0..8 {
            out[i] = a[i]
                .checked_add(b[i])
                .expect("monomial exponent overflow");
        }
        Monomial(u64::from_be_bytes(out))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for i in 1..=MAX_VARS {
            let e = self.exponent(i);
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "v{i}")?;
            } else {
                write!(f, "v{i}^{e}")?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

/// Polynomial in ℚ[v_1..v_k]. Terms are kept sorted in ascending graded-lex
/// order with no zero coefficients, so `==` is equality of polynomials.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct MultiPoly {
    terms: Vec<(Monomial, Rational)>,
}

impl MultiPoly {
    pub const fn zero() -> Self {
        MultiPoly { terms: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        MultiPoly::term(Monomial::ONE, c)
    }

    pub fn one() -> Self {
        MultiPoly::constant(Rational::one())
    }

    pub fn from_int(n: i64) -> Self {
        MultiPoly::constant(Rational::from_int(n))
    }

    pub fn var(i: usize) -> Self {
        MultiPoly::term(Monomial::var(i), Rational::one())
    }

    pub fn term(m: Monomial, c: Rational) -> Self {
        if c.is_zero() {
            MultiPoly::zero()
        } else {
            MultiPoly { terms: vec![(m, c)] }
        }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut acc: HashMap<Monomial, Rational> = HashMap::new();
        for (m, c) in terms {
            *acc.entry(m).or_insert_with(Rational::zero) += &c;
        }
        Self::from_map(acc)
    }

    fn from_map(map: HashMap<Monomial, Rational>) -> Self {
        let mut terms: Vec<_> = map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by_key(|a| a.0);
        MultiPoly { terms }
    }

    pub fn terms(&self) -> &[(Monomial, Rational)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: Monomial) -> Rational {
        self.terms
            .binary_search_by(|(t, _)| t.cmp(&m))
            .map(|i| self.terms[i].1.clone())
            .unwrap_or_else(|_| Rational::zero())
    }

    /// The value if this polynomial is a constant (including zero).
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.as_slice() {
            [] => Some(Rational::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    /// Largest variable index occurring in any term.
    pub fn support_len(&self) -> usize {
        self.terms
            .iter()
            .map(|(m, _)| m.support_len())
            .max()
            .unwrap_or(0)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return MultiPoly::zero();
        }
        MultiPoly {
            terms: self.terms.iter().map(|(m, x)| (*m, x * c)).collect(),
        }
    }

    pub fn add(&self, other: &MultiPoly) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (ma, ca) = &self.terms[i];
            let (mb, cb) = &other.terms[j];
            match ma.cmp(mb) {
                Ordering::Less => {
                    out.push((*ma, ca.clone()));
                    i += 1;
                }
                Ordering::Greater => {
                    out.push((*mb, cb.clone()));
                    j += 1;
                }
                Ordering::Equal => {
                    let s = ca + cb;
                    if !s.is_zero() {
                        out.push((*ma, s));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&other.terms[j..]);
        MultiPoly { terms: out }
    }

    pub fn neg(&self) -> Self {
        MultiPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }

    pub fn sub(&self, other: &MultiPoly) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &MultiPoly) -> Self {
        if self.is_zero() || other.is_zero() {
            return MultiPoly::zero();
        }
        if let Some(c) = other.as_constant() {
            return self.scale(&c);
        }
        if let Some(c) = self.as_constant() {
            return other.scale(&c);
        }
        let mut acc: HashMap<Monomial, Rational> =
            HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                *acc.entry(ma.mul(*mb)).or_insert_with(Rational::zero) += &(ca * cb);
            }
        }
        Self::from_map(acc)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = MultiPoly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Ring map v_j ↦ 0 for every j with `keep(j) == false`.
    pub fn kill_vars(&self, keep: impl Fn(usize) -> bool) -> Self {
        MultiPoly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| (1..=MAX_VARS).all(|j| m.exponent(j) == 0 || keep(j)))
                .cloned()
                .collect(),
        }
    }

    /// Substitute v_j ↦ `value(j)` (constants) for all variables; returns the
    /// resulting rational.
    pub fn evaluate(&self, value: impl Fn(usize) -> Rational) -> Rational {
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for j in 1..=m.support_len() {
                let e = m.exponent(j);
                if e > 0 {
                    t = &t * &value(j).pow(e);
                }
            }
            total += &t;
        }
        total
    }

    pub fn is_p_integral(&self, p: u64) -> bool {
        self.terms.iter().all(|(_, c)| c.is_p_integral(p))
    }

    /// Reduction modulo p: coefficients replaced by residues in `0..p`.
    /// `None` if some coefficient is not p-integral.
    pub fn reduce_mod_p(&self, p: u64) -> Option<MultiPoly> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let r = c.mod_p(p)?;
            if r != 0 {
                terms.push((*m, Rational::from_int(r as i64)));
            }
        }
        Some(MultiPoly { terms })
    }

    /// True when every term has the given weighted degree in `ring`.
    pub fn is_homogeneous(&self, ring: &GradedRing, degree: i64) -> bool {
        self.terms
            .iter()
            .all(|(m, _)| ring.monomial_degree(*m) == degree)
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = if neg { -c } else { c.clone() };
            match (idx, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn v(i: usize) -> MultiPoly {
        MultiPoly::var(i)
    }

    #[test]
    fn graded_lex_order() {
        let a = Monomial::from_exponents(&[2, 0]);
        let b = Monomial::from_exponents(&[1, 1]);
        let c = Monomial::from_exponents(&[0, 1]);
        assert!(c < b && b < a);
        assert!(Monomial::ONE < c);
    }

    #[test]
    fn display_and_cancellation() {
        let p = v(1).add(&v(2).scale(&Rational::new(1, 2)));
        assert_eq!(p.to_string(), "1/2*v2 + v1");
        assert!(p.sub(&p).is_zero());
        assert_eq!(v(1).scale(&Rational::from_int(-1)).to_string(), "-v1");
    }

    #[test]
    fn ring_degrees() {
        let r = GradedRing::new(2, 3);
        assert_eq!(r.var_degree(1), -1);
        assert_eq!(r.var_degree(3), -7);
        let m = Monomial::from_exponents(&[3, 1]);
        assert_eq!(r.monomial_degree(m), -6);
        assert_eq!(GradedRing::for_bound(2, 4).nvars, 2);
        assert_eq!(GradedRing::for_bound(3, 1).nvars, 0);
        assert_eq!(GradedRing::for_bound(3, 9).nvars, 2);
    }

    #[test]
    fn mod_p_reduction() {
        let p = v(1).scale(&Rational::new(-3, 2)).add(&MultiPoly::from_int(4));
        let r = p.reduce_mod_p(5).unwrap();
        // -3/2 = -3*3 = -9 = 1 mod 5; 4 stays 4.
        assert_eq!(r, v(1).add(&MultiPoly::from_int(4)));
        assert!(p.reduce_mod_p(2).is_none());
    }

    fn small_poly() -> impl Strategy<Value = MultiPoly> {
        prop::collection::vec(((0u32..3, 0u32..3, 0u32..2), -4i64..5, 1i64..4), 0..5).prop_map(
            |ts| {
                MultiPoly::from_terms(ts.into_iter().map(|((a, b, c), n, d)| {
                    (Monomial::from_exponents(&[a, b, c]), Rational::new(n, d))
                }))
            },
        )
    }

    proptest! {
        #[test]
        fn ring_axioms(a in small_poly(), b in small_poly(), c in small_poly()) {
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            prop_assert_eq!(a.mul(&b), b.mul(&a));
            prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        }
    }
}
