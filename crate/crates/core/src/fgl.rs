//! Formal group laws: additive, multiplicative, Brown–Peterson and the Morava
//! (Lubin–Tate) specializations, with axiom, integrality and height checks.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact::{
    binomial, compose_into, is_prime, series_reversion, substitute2, BiTruncatedPoly, GradedRing,
    MultiPoly, MultiSeries, Rational, SeriesError, TruncatedSeries,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FglError {
    #[error("{0} is not a prime")]
    InvalidPrime(u64),
    #[error("height must be at least 1, got {0}")]
    InvalidHeight(u32),
    #[error("degree bound must be at least 1")]
    InvalidBound,
    #[error("coefficient {coefficient} of x^{x}*y^{y} is not p-integral")]
    IntegralityViolation {
        x: usize,
        y: usize,
        coefficient: String,
    },
    #[error(transparent)]
    Series(#[from] SeriesError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FglKind {
    Additive,
    Multiplicative,
    BrownPeterson { p: u64 },
    Morava { p: u64, n: u32 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FglSpec {
    pub kind: FglKind,
    pub bound: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalGroupLaw {
    pub spec: FglSpec,
    pub law: BiTruncatedPoly,
    pub ring: GradedRing,
}

fn validate(p: u64, bound: usize) -> Result<(), FglError> {
    if !is_prime(p) {
        return Err(FglError::InvalidPrime(p));
    }
    if bound == 0 {
        return Err(FglError::InvalidBound);
    }
    Ok(())
}

/// Default degree bound for Morava queries, 2·p^n.
pub fn default_bound(p: u64, n: u32) -> usize {
    2 * p.pow(n) as usize
}

/// Logarithm coefficients m_0 = 1, m_j = (v_j + Σ_{i<j} m_i v_{j−i}^{p^i}) / p
/// for every j with p^j ≤ bound.
fn log_coefficients(p: u64, bound: usize) -> Vec<MultiPoly> {
    let inv_p = Rational::new(1, p as i64);
    let mut m = vec![MultiPoly::one()];
    let mut j = 1;
    while (p.pow(j as u32) as usize) <= bound {
        let mut acc = MultiPoly::var(j);
        for (i, mi) in m.iter().enumerate().skip(1) {
            acc = acc.add(&mi.mul(&MultiPoly::var(j - i).pow(p.pow(i as u32) as u32)));
        }
        m.push(acc.scale(&inv_p));
        j += 1;
    }
    m
}

/// Brown–Peterson logarithm l(t) = Σ m_i t^{p^i} truncated at `bound`.
pub fn bp_log(p: u64, bound: usize) -> Result<TruncatedSeries, FglError> {
    validate(p, bound)?;
    let mut l = TruncatedSeries::zero(bound).with_var("t");
    for (i, mi) in log_coefficients(p, bound).into_iter().enumerate() {
        l.set_coeff(p.pow(i as u32) as usize, mi);
    }
    Ok(l)
}

/// Logarithm of the height-`n` Morava law: l(t) with v_j ↦ 0 for j ≠ n.
pub fn morava_log(p: u64, n: u32, bound: usize) -> Result<TruncatedSeries, FglError> {
    if n == 0 {
        return Err(FglError::InvalidHeight(n));
    }
    Ok(bp_log(p, bound)?.map_coeffs(|c| c.kill_vars(|j| j == n as usize)))
}

/// F(x, y) = e(l(x) + l(y)) with e the compositional inverse of `log`.
fn law_from_log(log: &TruncatedSeries) -> Result<BiTruncatedPoly, FglError> {
    let exp = series_reversion(log)?;
    let b = log.bound();
    let sum = MultiSeries::from_univariate(log, 2, 0).add(&MultiSeries::from_univariate(log, 2, 1));
    Ok(compose_into(&exp, &sum.truncate(b)))
}

pub fn bp_fgl(p: u64, bound: usize) -> Result<FormalGroupLaw, FglError> {
    let log = bp_log(p, bound)?;
    Ok(FormalGroupLaw {
        spec: FglSpec {
            kind: FglKind::BrownPeterson { p },
            bound,
        },
        law: law_from_log(&log)?,
        ring: GradedRing::for_bound(p, bound),
    })
}

fn morava_ring(p: u64, n: u32) -> GradedRing {
    GradedRing::new(p, n as usize)
}

fn check_integrality(law: &BiTruncatedPoly, p: u64) -> Result<(), FglError> {
    for (e, c) in law.terms() {
        if !c.is_p_integral(p) {
            return Err(FglError::IntegralityViolation {
                x: e[0] as usize,
                y: e[1] as usize,
                coefficient: c.to_string(),
            });
        }
    }
    Ok(())
}

/// Morava law of height `n`: the BP law with v_j ↦ 0 for j ≠ n.
///
/// Specialization is a ring map, so it commutes with reversion and
/// composition; the law is built from the specialized logarithm. Every
/// coefficient is verified to lie in ℤ_(p)[v_n].
pub fn morava_fgl(p: u64, n: u32, bound: usize) -> Result<FormalGroupLaw, FglError> {
    let log = morava_log(p, n, bound)?;
    let law = law_from_log(&log)?;
    check_integrality(&law, p)?;
    Ok(FormalGroupLaw {
        spec: FglSpec {
            kind: FglKind::Morava { p, n },
            bound,
        },
        law,
        ring: morava_ring(p, n),
    })
}

/// Same law computed the long way round: full BP law, then specialize.
pub fn morava_fgl_via_bp(p: u64, n: u32, bound: usize) -> Result<FormalGroupLaw, FglError> {
    if n == 0 {
        return Err(FglError::InvalidHeight(n));
    }
    let bp = bp_fgl(p, bound)?;
    let law = bp.law.map_coeffs(|c| c.kill_vars(|j| j == n as usize));
    check_integrality(&law, p)?;
    Ok(FormalGroupLaw {
        spec: FglSpec {
            kind: FglKind::Morava { p, n },
            bound,
        },
        law,
        ring: morava_ring(p, n),
    })
}

pub fn additive(bound: usize) -> FormalGroupLaw {
    FormalGroupLaw {
        spec: FglSpec {
            kind: FglKind::Additive,
            bound,
        },
        law: MultiSeries::var(2, bound, 0).add(&MultiSeries::var(2, bound, 1)),
        ring: GradedRing::rational(),
    }
}

/// x + y − xy.
pub fn multiplicative(bound: usize) -> FormalGroupLaw {
    let x = MultiSeries::var(2, bound, 0);
    let y = MultiSeries::var(2, bound, 1);
    FormalGroupLaw {
        spec: FglSpec {
            kind: FglKind::Multiplicative,
            bound,
        },
        law: x.add(&y).sub(&x.mul(&y)),
        ring: GradedRing::rational(),
    }
}

/// Total degree of the largest monomial surviving modulo
/// J = (p, x^{p^n}, y^{p^n}).
pub fn mod_j_bound(p: u64, n: u32) -> usize {
    2 * (p.pow(n) as usize - 1)
}

/// Closed form of the Morava law modulo J:
/// x + y − v_n Σ_{i=1}^{p−1} (1/p)·C(p,i) x^{i p^{n−1}} y^{(p−i) p^{n−1}},
/// coefficients reduced to residues in 0..p.
pub fn morava_mod_j(p: u64, n: u32) -> Result<BiTruncatedPoly, FglError> {
    validate(p, 1)?;
    if n == 0 {
        return Err(FglError::InvalidHeight(n));
    }
    let bound = mod_j_bound(p, n).max(1);
    let step = p.pow(n - 1) as u16;
    let mut terms = vec![
        ([1, 0, 0], MultiPoly::one()),
        ([0, 1, 0], MultiPoly::one()),
    ];
    for i in 1..p {
        let c = (binomial(p, i) / p as u128) as u64 % p;
        let residue = (p - c) % p;
        terms.push((
            [i as u16 * step, (p - i) as u16 * step, 0],
            MultiPoly::var(n as usize).scale(&Rational::from_int(residue as i64)),
        ));
    }
    Ok(MultiSeries::from_terms(2, bound, terms))
}

/// Image of a p-integral law in 𝔽_p[v][[x,y]] / (x^{p^n}, y^{p^n}).
/// `None` if some coefficient is not p-integral.
pub fn reduce_mod_j(law: &BiTruncatedPoly, p: u64, n: u32) -> Option<BiTruncatedPoly> {
    let cap = p.pow(n) as u16;
    let bound = law.bound().min(mod_j_bound(p, n).max(1));
    law.truncate(bound)
        .filter(|e| e[0] < cap && e[1] < cap)
        .try_map_coeffs(|c| c.reduce_mod_p(p))
}

/// Whether the Morava law reduced mod J matches the closed form on every
/// monomial both sides cover.
pub fn agrees_with_mod_j(f: &FormalGroupLaw, p: u64, n: u32) -> Result<bool, FglError> {
    let reduced = reduce_mod_j(&f.law, p, n).ok_or_else(|| FglError::IntegralityViolation {
        x: 0,
        y: 0,
        coefficient: "non-integral coefficient".into(),
    })?;
    let closed = morava_mod_j(p, n)?;
    let b = reduced.bound().min(closed.bound());
    Ok(reduced.truncate(b) == closed.truncate(b))
}

impl FormalGroupLaw {
    pub fn bound(&self) -> usize {
        self.spec.bound
    }

    /// F(a(t), b(t)) for univariate series vanishing at zero.
    pub fn add_series(&self, a: &TruncatedSeries, b: &TruncatedSeries) -> TruncatedSeries {
        let bound = self.bound().min(a.bound()).min(b.bound());
        let a = MultiSeries::from_univariate(&a.truncate(bound), 1, 0);
        let b = MultiSeries::from_univariate(&b.truncate(bound), 1, 0);
        crate::exact::to_univariate(&substitute2(&self.law, &a, &b))
    }

    pub fn check_axioms(&self) -> AxiomReport {
        let b = self.bound();
        let x = MultiSeries::var(2, b, 0);
        let y = MultiSeries::var(2, b, 1);
        let unit = self.law.at_zero(1) == x && self.law.at_zero(0) == y;
        let commutative = self.law.swap(0, 1) == self.law;
        let associative = {
            let v = |i| MultiSeries::var(3, b, i);
            // F(F(x,y),z) against F(x,F(y,z)).
            let fxy = substitute2(&self.law, &v(0), &v(1));
            let fyz = substitute2(&self.law, &v(1), &v(2));
            substitute2(&self.law, &fxy, &v(2)) == substitute2(&self.law, &v(0), &fyz)
        };
        let graded = match self.ring.prime {
            None => true,
            Some(_) => self
                .law
                .terms()
                .all(|(e, c)| c.is_homogeneous(&self.ring, 1 - (e[0] + e[1]) as i64)),
        };
        AxiomReport {
            unit,
            commutative,
            associative,
            graded,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub unit: bool,
    pub commutative: bool,
    pub associative: bool,
    /// Coefficient of x^i y^j has degree 1 − i − j.
    pub graded: bool,
}

impl AxiomReport {
    pub fn all(&self) -> bool {
        self.unit && self.commutative && self.associative && self.graded
    }
}

/// [p]_F(t): t added to itself p times under F, truncated at `bound`.
pub fn p_series(f: &FormalGroupLaw, p: u64, bound: usize) -> TruncatedSeries {
    let bound = bound.min(f.bound());
    let t = TruncatedSeries::identity(bound);
    let mut acc = t.clone();
    for _ in 1..p {
        acc = f.add_series(&t, &acc);
    }
    acc
}

/// Lowest nonzero term of a series after reducing coefficients mod p.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeadingTerm {
    pub degree: usize,
    pub coeff: MultiPoly,
}

pub fn leading_term_mod_p(s: &TruncatedSeries, p: u64) -> Option<LeadingTerm> {
    s.coeffs().iter().enumerate().find_map(|(d, c)| {
        let r = c.reduce_mod_p(p)?;
        (!r.is_zero()).then_some(LeadingTerm {
            degree: d,
            coeff: r,
        })
    })
}

/// True when the lowest term of [p](t) mod p is u·v_n·t^{p^n} with u ∈ 𝔽_p^×.
pub fn certifies_height(term: &LeadingTerm, p: u64, n: u32) -> bool {
    term.degree == p.pow(n) as usize
        && matches!(term.coeff.terms(), [(m, c)] if *m == crate::exact::Monomial::var(n as usize)
            && c.mod_p(p).is_some_and(|u| u != 0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Monomial;

    fn v(i: usize) -> MultiPoly {
        MultiPoly::var(i)
    }

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn bp_log_examples() {
        let l = bp_log(2, 2).unwrap();
        assert_eq!(l.coeff(1), &MultiPoly::one());
        assert_eq!(l.coeff(2), &v(1).scale(&q(1, 2)));

        // m_2 = (v_2 + m_1 v_1^2)/2 = v_2/2 + v_1^3/4
        let l = bp_log(2, 4).unwrap();
        assert_eq!(l.coeff(4), &v(2).scale(&q(1, 2)).add(&v(1).pow(3).scale(&q(1, 4))));
        assert!(l.coeff(3).is_zero());

        let l = bp_log(3, 1).unwrap();
        assert_eq!(l, TruncatedSeries::identity(1));
    }

    #[test]
    fn exp_second_coefficient() {
        let e = series_reversion(&bp_log(2, 4).unwrap()).unwrap();
        assert_eq!(e.coeff(2), &v(1).scale(&q(-1, 2)));
    }

    #[test]
    fn log_exp_round_trip_p3() {
        let l = bp_log(3, 9).unwrap();
        let e = series_reversion(&l).unwrap();
        let id = TruncatedSeries::identity(9);
        assert_eq!(crate::exact::series_compose(&l, &e).unwrap(), id);
        assert_eq!(crate::exact::series_compose(&e, &l).unwrap(), id);
    }

    #[test]
    fn bp_law_low_degree() {
        let f = bp_fgl(2, 2).unwrap();
        assert_eq!(f.law.coeff2(1, 0), MultiPoly::one());
        assert_eq!(f.law.coeff2(0, 1), MultiPoly::one());
        assert_eq!(f.law.coeff2(1, 1), v(1).neg());
        assert!(f.law.coeff2(2, 0).is_zero());
        assert_eq!(f.law.len(), 3);
    }

    #[test]
    fn bp_law_axioms() {
        for (p, d) in [(2, 3), (2, 6), (3, 6), (5, 6)] {
            let f = bp_fgl(p, d).unwrap();
            assert!(f.check_axioms().all(), "p={p} D={d}");
        }
    }

    #[test]
    fn morava_examples() {
        let f = morava_fgl(2, 1, 2).unwrap();
        assert_eq!(f.law.to_string(), "x + y - v1*x*y");
        let f = morava_fgl(2, 2, 2).unwrap();
        assert_eq!(f.law, MultiSeries::var(2, 2, 0).add(&MultiSeries::var(2, 2, 1)));

        let f = morava_fgl(3, 1, 3).unwrap();
        let reduced = reduce_mod_j(&f.law, 3, 1).unwrap();
        let expected = MultiSeries::from_terms(
            2,
            3,
            [
                ([1, 0, 0], MultiPoly::one()),
                ([0, 1, 0], MultiPoly::one()),
                ([2, 1, 0], v(1).scale(&Rational::from_int(2))),
                ([1, 2, 0], v(1).scale(&Rational::from_int(2))),
            ],
        );
        assert_eq!(reduced, expected);
    }

    #[test]
    fn specialized_log_matches_full_bp_route() {
        for (p, n, d) in [(2, 1, 6), (2, 2, 8), (3, 1, 7), (3, 2, 9), (5, 1, 6)] {
            assert_eq!(
                morava_fgl(p, n, d).unwrap(),
                morava_fgl_via_bp(p, n, d).unwrap(),
                "p={p} n={n} D={d}"
            );
        }
    }

    #[test]
    fn mod_j_closed_forms() {
        let f = morava_mod_j(2, 1).unwrap();
        assert_eq!(f.coeff2(1, 1), v(1));
        assert_eq!(f.len(), 3);
        let f = morava_mod_j(2, 2).unwrap();
        assert_eq!(f.coeff2(2, 2), v(2));
        assert_eq!(f.len(), 3);
        // -C(5,i)/5 mod 5 for i = 1..4: -(1,2,2,1) = (4,3,3,4).
        let f = morava_mod_j(5, 1).unwrap();
        let got: Vec<_> = (1..5).map(|i| f.coeff2(i, 5 - i).coeff(Monomial::var(1))).collect();
        let want: Vec<_> = [4, 3, 3, 4].iter().map(|&c| Rational::from_int(c)).collect();
        assert_eq!(got, want);
    }

    #[test]
    fn p_series_examples() {
        let t = p_series(&additive(4), 3, 4);
        assert_eq!(t.coeff(1), &MultiPoly::from_int(3));
        assert_eq!(t.valuation(), Some(1));
        assert!(t.coeff(2).is_zero());

        let t = p_series(&multiplicative(4), 2, 4);
        assert_eq!(t.coeff(1), &MultiPoly::from_int(2));
        assert_eq!(t.coeff(2), &MultiPoly::from_int(-1));
        assert!(t.coeff(3).is_zero());

        let t = p_series(&morava_fgl(2, 1, 2).unwrap(), 2, 2);
        let lead = leading_term_mod_p(&t, 2).unwrap();
        assert_eq!(lead.degree, 2);
        assert_eq!(lead.coeff, v(1));
        assert!(certifies_height(&lead, 2, 1));
    }

    #[test]
    fn invalid_inputs() {
        assert_eq!(bp_log(4, 3), Err(FglError::InvalidPrime(4)));
        assert_eq!(bp_log(2, 0), Err(FglError::InvalidBound));
        assert_eq!(morava_fgl(2, 0, 3).unwrap_err(), FglError::InvalidHeight(0));
    }
}
