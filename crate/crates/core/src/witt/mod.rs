//! Witt ring of the model field F = C((t_1))…((t_k)).
//!
//! Square classes of F form (ℤ/2)^k with generators a_1..a_k, and −1 is a
//! square, so ⟨−a⟩ = ⟨a⟩. The Witt ring is the group algebra 𝔽_2[(ℤ/2)^k]:
//! a class is a set of square classes, addition is symmetric difference. With
//! u_i = ⟨1⟩ + ⟨a_i⟩ the ring is the exterior algebra on u_1..u_k, I^n is
//! spanned by the monomials of degree ≥ n, and e_n reads off the degree-n
//! component.

mod parse;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

pub use parse::{parse_class, parse_square_class, ParseError};

/// Default number of generators of the square-class group.
pub const DEFAULT_K: usize = 8;
/// Hard cap on the number of generators.
pub const MAX_K: usize = 24;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WittError {
    #[error("ambient mismatch: k = {left} vs k = {right}")]
    AmbientMismatch { left: usize, right: usize },
    #[error("ambient k = {0} outside 1..={MAX_K}")]
    AmbientOutOfRange(usize),
    #[error("degenerate Pfister entry: {0}")]
    DegeneratePfisterEntry(String),
    #[error("class is not in I^{n}: nonzero component in degree {degree}")]
    NotInFundamentalPower { n: usize, degree: usize },
    #[error("class is odd-dimensional (e_0 = 1)")]
    OddDimensional,
    #[error("norm form needs at least two entries, got {0}")]
    TooFewEntries(usize),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

pub fn check_ambient(k: usize) -> Result<(), WittError> {
    if (1..=MAX_K).contains(&k) {
        Ok(())
    } else {
        Err(WittError::AmbientOutOfRange(k))
    }
}

/// Element of (ℤ/2)^k: bit i−1 set means a_i divides the class.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct SquareClass(pub u32);

impl SquareClass {
    pub const ONE: SquareClass = SquareClass(0);

    /// The generator a_i (1-based).
    pub fn generator(i: usize) -> Self {
        SquareClass(1 << (i - 1))
    }

    pub fn product(indices: &[usize]) -> Self {
        indices
            .iter()
            .fold(SquareClass::ONE, |acc, &i| acc.mul(SquareClass::generator(i)))
    }

    pub fn mul(self, other: SquareClass) -> Self {
        SquareClass(self.0 ^ other.0)
    }

    pub fn is_one(&self) -> bool {
        self.0 == 0
    }

    /// 1-based generator indices.
    pub fn indices(&self) -> Vec<usize> {
        (0..32).filter(|b| self.0 >> b & 1 == 1).map(|b| b + 1).collect()
    }
}

impl fmt::Display for SquareClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let names: Vec<String> = self.indices().iter().map(|i| format!("a{i}")).collect();
        f.write_str(&names.join("*"))
    }
}

/// Sort key: degree first, then the index list.
fn graded_key(mask: u32) -> (u32, Vec<usize>) {
    (mask.count_ones(), SquareClass(mask).indices())
}

fn graded_sorted(set: &BTreeSet<u32>) -> Vec<u32> {
    let mut v: Vec<u32> = set.iter().copied().collect();
    v.sort_by_key(|&m| graded_key(m));
    v
}

/// Element of W(F) = 𝔽_2[(ℤ/2)^k].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WittClass {
    k: usize,
    entries: BTreeSet<u32>,
}

impl WittClass {
    pub fn zero(k: usize) -> Self {
        WittClass {
            k,
            entries: BTreeSet::new(),
        }
    }

    /// ⟨d⟩.
    pub fn diagonal1(k: usize, d: SquareClass) -> Self {
        WittClass {
            k,
            entries: BTreeSet::from([d.0]),
        }
    }

    /// ⟨d_1, …, d_r⟩; repeated entries cancel in pairs.
    pub fn diagonal(k: usize, entries: impl IntoIterator<Item = SquareClass>) -> Self {
        let mut q = WittClass::zero(k);
        for d in entries {
            q.toggle(d.0);
        }
        q
    }

    fn toggle(&mut self, m: u32) {
        if !self.entries.remove(&m) {
            self.entries.insert(m);
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn contains(&self, d: SquareClass) -> bool {
        self.entries.contains(&d.0)
    }

    /// Square classes in graded order.
    pub fn entries(&self) -> Vec<SquareClass> {
        graded_sorted(&self.entries)
            .into_iter()
            .map(SquareClass)
            .collect()
    }

    /// Dimension mod 2, i.e. e_0.
    pub fn dimension_parity(&self) -> u8 {
        (self.entries.len() % 2) as u8
    }

    fn same_ambient(&self, other: &Self) -> Result<(), WittError> {
        if self.k == other.k {
            Ok(())
        } else {
            Err(WittError::AmbientMismatch {
                left: self.k,
                right: other.k,
            })
        }
    }
}

pub fn witt_add(q1: &WittClass, q2: &WittClass) -> Result<WittClass, WittError> {
    q1.same_ambient(q2)?;
    Ok(WittClass {
        k: q1.k,
        entries: q1.entries.symmetric_difference(&q2.entries).copied().collect(),
    })
}

/// Convolution over the group law of square classes.
pub fn witt_mul(q1: &WittClass, q2: &WittClass) -> Result<WittClass, WittError> {
    q1.same_ambient(q2)?;
    let mut out = WittClass::zero(q1.k);
    for a in &q1.entries {
        for b in &q2.entries {
            out.toggle(a ^ b);
        }
    }
    Ok(out)
}

/// ⟨⟨x_1, …, x_n⟩⟩ with nonzero, pairwise distinct entries.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PfisterSymbol {
    entries: Vec<SquareClass>,
}

impl PfisterSymbol {
    pub fn new(entries: Vec<SquareClass>) -> Result<Self, WittError> {
        if entries.is_empty() {
            return Err(WittError::DegeneratePfisterEntry(
                "a Pfister symbol needs at least one entry".into(),
            ));
        }
        if entries.iter().any(SquareClass::is_one) {
            return Err(WittError::DegeneratePfisterEntry(
                "entry 1 makes the form hyperbolic".into(),
            ));
        }
        let distinct: BTreeSet<_> = entries.iter().collect();
        if distinct.len() != entries.len() {
            return Err(WittError::DegeneratePfisterEntry(
                "entries must be pairwise distinct".into(),
            ));
        }
        Ok(PfisterSymbol { entries })
    }

    /// ⟨⟨a_{i_1}, …, a_{i_n}⟩⟩ for the generators in a monomial mask.
    pub fn from_monomial(mask: u32) -> Self {
        PfisterSymbol {
            entries: SquareClass(mask)
                .indices()
                .into_iter()
                .map(SquareClass::generator)
                .collect(),
        }
    }

    pub fn fold(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[SquareClass] {
        &self.entries
    }
}

impl fmt::Display for PfisterSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = self.entries.iter().map(|e| e.to_string()).collect();
        write!(f, "<<{}>>", names.join(","))
    }
}

/// Π (⟨1⟩ + ⟨x_i⟩).
pub fn pfister_class(k: usize, s: &PfisterSymbol) -> Result<WittClass, WittError> {
    check_ambient(k)?;
    let limit = if k >= 32 { u32::MAX } else { (1u32 << k) - 1 };
    let mut acc = WittClass::diagonal1(k, SquareClass::ONE);
    for x in s.entries() {
        if x.0 & !limit != 0 {
            return Err(WittError::DegeneratePfisterEntry(format!(
                "{x} uses a generator beyond a{k}"
            )));
        }
        let factor = WittClass::diagonal(k, [SquareClass::ONE, *x]);
        acc = witt_mul(&acc, &factor)?;
    }
    Ok(acc)
}

/// Element of the exterior algebra Λ(u_1..u_k) over 𝔽_2; each monomial is a
/// bit mask of the u_i it contains.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExteriorElement {
    k: usize,
    monomials: BTreeSet<u32>,
}

impl ExteriorElement {
    pub fn zero(k: usize) -> Self {
        ExteriorElement {
            k,
            monomials: BTreeSet::new(),
        }
    }

    pub fn from_monomials(k: usize, monomials: impl IntoIterator<Item = u32>) -> Self {
        let mut e = ExteriorElement::zero(k);
        for m in monomials {
            if !e.monomials.remove(&m) {
                e.monomials.insert(m);
            }
        }
        e
    }

    /// u_{i_1} ∧ … ∧ u_{i_n}.
    pub fn wedge_of_generators(k: usize, indices: &[usize]) -> Self {
        let mut seen = 0u32;
        for &i in indices {
            let bit = 1 << (i - 1);
            if seen & bit != 0 {
                return ExteriorElement::zero(k);
            }
            seen |= bit;
        }
        ExteriorElement::from_monomials(k, [seen])
    }

    /// Linear form Σ_{i ∈ x} u_i attached to a square class x.
    pub fn linear_form(k: usize, x: SquareClass) -> Self {
        ExteriorElement::from_monomials(k, x.indices().into_iter().map(|i| 1u32 << (i - 1)))
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn is_zero(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomials(&self) -> Vec<u32> {
        graded_sorted(&self.monomials)
    }

    pub fn component(&self, degree: usize) -> ExteriorElement {
        ExteriorElement {
            k: self.k,
            monomials: self
                .monomials
                .iter()
                .copied()
                .filter(|m| m.count_ones() as usize == degree)
                .collect(),
        }
    }

    /// Nonzero components keyed by degree; each monomial as 1-based indices.
    pub fn graded(&self) -> BTreeMap<usize, Vec<Vec<usize>>> {
        let mut out: BTreeMap<usize, Vec<Vec<usize>>> = BTreeMap::new();
        for m in self.monomials() {
            out.entry(m.count_ones() as usize)
                .or_default()
                .push(SquareClass(m).indices());
        }
        out
    }

    pub fn min_degree(&self) -> Option<usize> {
        self.monomials.iter().map(|m| m.count_ones() as usize).min()
    }

    pub fn add(&self, other: &Self) -> Self {
        ExteriorElement {
            k: self.k,
            monomials: self
                .monomials
                .symmetric_difference(&other.monomials)
                .copied()
                .collect(),
        }
    }

    pub fn wedge(&self, other: &Self) -> Self {
        let mut out = ExteriorElement::zero(self.k);
        for a in &self.monomials {
            for b in &other.monomials {
                if a & b == 0 {
                    let m = a | b;
                    if !out.monomials.remove(&m) {
                        out.monomials.insert(m);
                    }
                }
            }
        }
        out
    }
}

impl fmt::Display for ExteriorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let terms: Vec<String> = self
            .monomials()
            .into_iter()
            .map(|m| {
                if m == 0 {
                    "1".to_string()
                } else {
                    SquareClass(m)
                        .indices()
                        .iter()
                        .map(|i| format!("u{i}"))
                        .collect::<Vec<_>>()
                        .join("^")
                }
            })
            .collect();
        f.write_str(&terms.join(" + "))
    }
}

/// Parity of supersets: out[S] = Σ_{T ⊇ S} in[T] over 𝔽_2. This transform
/// is its own inverse and maps group-element coordinates to exterior
/// coordinates (⟨a_T⟩ = Π_{i∈T}(1 + u_i)) and back.
fn superset_transform(k: usize, set: &BTreeSet<u32>) -> BTreeSet<u32> {
    let sparse_cost: u128 = set.iter().map(|m| 1u128 << m.count_ones()).sum();
    let dense_cost: u128 = (k as u128) << k;
    if k <= 20 && dense_cost < sparse_cost {
        superset_transform_dense(k, set)
    } else {
        superset_transform_sparse(set)
    }
}

fn superset_transform_sparse(set: &BTreeSet<u32>) -> BTreeSet<u32> {
    let mut out = BTreeSet::new();
    for &t in set {
        // Every subset s of t, including t and 0.
        let mut s = t;
        loop {
            if !out.remove(&s) {
                out.insert(s);
            }
            if s == 0 {
                break;
            }
            s = (s - 1) & t;
        }
    }
    out
}

fn superset_transform_dense(k: usize, set: &BTreeSet<u32>) -> BTreeSet<u32> {
    let mut bits = vec![false; 1 << k];
    for &m in set {
        bits[m as usize] = true;
    }
    for i in 0..k {
        let bit = 1usize << i;
        for mask in 0..bits.len() {
            if mask & bit == 0 && bits[mask | bit] {
                bits[mask] = !bits[mask];
            }
        }
    }
    bits.iter()
        .enumerate()
        .filter(|(_, &b)| b)
        .map(|(m, _)| m as u32)
        .collect()
}

pub fn to_exterior_basis(q: &WittClass) -> ExteriorElement {
    ExteriorElement {
        k: q.k,
        monomials: superset_transform(q.k, &q.entries),
    }
}

pub fn from_exterior_basis(e: &ExteriorElement) -> WittClass {
    WittClass {
        k: e.k,
        entries: superset_transform(e.k, &e.monomials),
    }
}

/// e_n(q) for q ∈ I^n: the degree-n exterior component.
pub fn e_invariant(q: &WittClass, n: usize) -> Result<ExteriorElement, WittError> {
    let ext = to_exterior_basis(q);
    match ext.min_degree() {
        Some(d) if d < n => Err(WittError::NotInFundamentalPower { n, degree: d }),
        _ => Ok(ext.component(n)),
    }
}

/// Largest m with q ∈ I^m; `None` stands for ∞ (q = 0).
pub fn i_level(q: &WittClass) -> Option<usize> {
    to_exterior_basis(q).min_degree()
}

/// Representatives of e_n emitted at one step of the reconstruction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StripStep {
    pub degree: usize,
    pub pfisters: Vec<PfisterSymbol>,
}

/// Each degree-n exterior monomial lifts to the n-fold Pfister form on the
/// same generators.
pub fn lift_to_pfisters(e: &ExteriorElement) -> Vec<PfisterSymbol> {
    e.monomials()
        .into_iter()
        .map(PfisterSymbol::from_monomial)
        .collect()
}

/// Peels off e_1, e_2, … in turn: at level n, lift e_n(q) to n-fold Pfister
/// forms, subtract, continue with n + 1. Stops once the remainder vanishes,
/// after at most k rounds.
///
/// The lift of a monomial has exterior image exactly that monomial, so the
/// remainder after round n is the part of the exterior image in degrees
/// above n and one transform suffices.
pub fn strip_reconstruct(q: &WittClass) -> Result<Vec<StripStep>, WittError> {
    if q.dimension_parity() != 0 {
        return Err(WittError::OddDimensional);
    }
    let e = to_exterior_basis(q);
    let steps: Vec<StripStep> = (1..=q.k)
        .map(|n| (n, e.component(n)))
        .filter(|(_, c)| !c.is_zero())
        .map(|(degree, c)| StripStep {
            degree,
            pfisters: lift_to_pfisters(&c),
        })
        .collect();
    debug_assert!(steps.len() <= q.k);
    Ok(steps)
}

/// Sum of all Pfister representatives emitted by [`strip_reconstruct`].
pub fn reassemble(k: usize, steps: &[StripStep]) -> Result<WittClass, WittError> {
    let mut acc = WittClass::zero(k);
    for s in steps.iter().flat_map(|s| &s.pfisters) {
        for d in pfister_class(k, s)?.entries {
            if !acc.entries.remove(&d) {
                acc.entries.insert(d);
            }
        }
    }
    Ok(acc)
}

/// Projective norm quadric of ⟨⟨a_1..a_{m−1}⟩⟩ ⊥ ⟨−a_m⟩.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct NormQuadric {
    pub symbol_length: usize,
    pub form_dimension: u64,
    pub projective_dimension: u64,
    /// The affine norm quadric is the chart where the last coordinate is 1.
    pub affine_chart: bool,
}

pub fn norm_form_class(
    k: usize,
    symbol: &[SquareClass],
) -> Result<(WittClass, NormQuadric), WittError> {
    let m = symbol.len();
    if m < 2 {
        return Err(WittError::TooFewEntries(m));
    }
    let (last, head) = symbol.split_last().expect("m >= 2");
    if last.is_one() {
        return Err(WittError::DegeneratePfisterEntry(
            "last entry of a norm form must be nontrivial".into(),
        ));
    }
    let pf = pfister_class(k, &PfisterSymbol::new(head.to_vec())?)?;
    // ⟨−a_m⟩ = ⟨a_m⟩ since −1 is a square.
    let q = witt_add(&pf, &WittClass::diagonal1(k, *last))?;
    let half = 1u64 << (m - 1);
    Ok((
        q,
        NormQuadric {
            symbol_length: m,
            form_dimension: half + 1,
            projective_dimension: half - 1,
            affine_chart: true,
        },
    ))
}

impl fmt::Display for WittClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let names: Vec<String> = self.entries().iter().map(|e| e.to_string()).collect();
        write!(f, "<{}>", names.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn a(i: usize) -> SquareClass {
        SquareClass::generator(i)
    }

    fn pf(k: usize, xs: &[SquareClass]) -> WittClass {
        pfister_class(k, &PfisterSymbol::new(xs.to_vec()).unwrap()).unwrap()
    }

    fn set(k: usize, xs: &[SquareClass]) -> WittClass {
        WittClass::diagonal(k, xs.iter().copied())
    }

    #[test]
    fn ring_operations() {
        let k = 4;
        let q = set(k, &[SquareClass::ONE, a(1), a(2).mul(a(3))]);
        assert!(witt_add(&q, &q).unwrap().is_zero());
        let prod = witt_mul(&set(k, &[a(1)]), &set(k, &[a(2)])).unwrap();
        assert_eq!(prod, set(k, &[a(1).mul(a(2))]));
        let lhs = witt_mul(
            &set(k, &[SquareClass::ONE, a(1)]),
            &set(k, &[SquareClass::ONE, a(2)]),
        )
        .unwrap();
        assert_eq!(lhs, set(k, &[SquareClass::ONE, a(1), a(2), a(1).mul(a(2))]));
        assert_eq!(lhs, pf(k, &[a(1), a(2)]));
        assert!(matches!(
            witt_add(&WittClass::zero(3), &WittClass::zero(4)),
            Err(WittError::AmbientMismatch { left: 3, right: 4 })
        ));
    }

    #[test]
    fn pfister_examples() {
        assert_eq!(pf(3, &[a(1)]), set(3, &[SquareClass::ONE, a(1)]));
        assert!(matches!(
            PfisterSymbol::new(vec![a(1), a(1)]),
            Err(WittError::DegeneratePfisterEntry(_))
        ));
        assert!(matches!(
            PfisterSymbol::new(vec![SquareClass::ONE]),
            Err(WittError::DegeneratePfisterEntry(_))
        ));
        // Dependent entries give the hyperbolic class.
        assert!(pf(3, &[a(1), a(2), a(1).mul(a(2))]).is_zero());
    }

    #[test]
    fn exterior_examples() {
        let k = 3;
        let one = to_exterior_basis(&set(k, &[SquareClass::ONE]));
        assert_eq!(one, ExteriorElement::from_monomials(k, [0]));
        let p = to_exterior_basis(&pf(k, &[a(1), a(2)]));
        assert_eq!(p, ExteriorElement::wedge_of_generators(k, &[1, 2]));
        let single = to_exterior_basis(&set(k, &[a(1)]));
        assert_eq!(single, ExteriorElement::from_monomials(k, [0, 1]));
    }

    #[test]
    fn e_invariants() {
        let k = 4;
        let q = pf(k, &[a(1), a(2)]);
        assert_eq!(e_invariant(&q, 0).unwrap(), ExteriorElement::zero(k));
        assert!(e_invariant(&q, 1).unwrap().is_zero());
        assert_eq!(e_invariant(&q, 2).unwrap(), ExteriorElement::wedge_of_generators(k, &[1, 2]));
        let odd = set(k, &[a(1)]);
        assert_eq!(e_invariant(&odd, 0).unwrap(), ExteriorElement::from_monomials(k, [0]));
        assert_eq!(
            e_invariant(&odd, 1),
            Err(WittError::NotInFundamentalPower { n: 1, degree: 0 })
        );
    }

    #[test]
    fn levels() {
        let k = 4;
        assert_eq!(i_level(&WittClass::zero(k)), None);
        let q = witt_add(&pf(k, &[a(1), a(2)]), &pf(k, &[a(3), a(4)])).unwrap();
        assert_eq!(i_level(&q), Some(2));
        let q = witt_add(&pf(k, &[a(1), a(2)]), &pf(k, &[a(1), a(3)])).unwrap();
        assert_eq!(i_level(&q), Some(2));
        assert_eq!(i_level(&pf(k, &[a(1), a(2), a(3), a(4)])), Some(4));
    }

    #[test]
    fn strip_examples() {
        let k = 4;
        assert!(strip_reconstruct(&WittClass::zero(k)).unwrap().is_empty());
        let q = witt_add(&pf(k, &[a(1)]), &pf(k, &[a(2), a(3)])).unwrap();
        let steps = strip_reconstruct(&q).unwrap();
        assert_eq!(
            steps,
            vec![
                StripStep {
                    degree: 1,
                    pfisters: vec![PfisterSymbol::new(vec![a(1)]).unwrap()]
                },
                StripStep {
                    degree: 2,
                    pfisters: vec![PfisterSymbol::new(vec![a(2), a(3)]).unwrap()]
                },
            ]
        );
        assert_eq!(reassemble(k, &steps).unwrap(), q);
        let top = pf(k, &[a(1), a(2), a(3)]);
        let steps = strip_reconstruct(&top).unwrap();
        assert_eq!(steps.len(), 1);
        assert_eq!(steps[0].degree, 3);
        assert_eq!(strip_reconstruct(&set(k, &[a(1)])), Err(WittError::OddDimensional));
    }

    #[test]
    fn norm_forms() {
        let k = 6;
        let (q, quad) = norm_form_class(k, &[a(1), a(2)]).unwrap();
        assert_eq!(q, set(k, &[SquareClass::ONE, a(1), a(2)]));
        assert_eq!(quad.projective_dimension, 1);
        assert_eq!(norm_form_class(k, &[a(1), a(2), a(3)]).unwrap().1.projective_dimension, 3);
        let five: Vec<_> = (1..=5).map(a).collect();
        assert_eq!(norm_form_class(k, &five).unwrap().1.projective_dimension, 15);
        assert!(matches!(norm_form_class(k, &[a(1)]), Err(WittError::TooFewEntries(1))));
        assert!(matches!(
            norm_form_class(k, &[SquareClass::ONE, a(1)]),
            Err(WittError::DegeneratePfisterEntry(_))
        ));
    }

    /// Oracle: expand each exterior monomial as a product of (⟨1⟩ + ⟨a_i⟩).
    fn expand_by_products(e: &ExteriorElement) -> WittClass {
        let k = e.k();
        let mut acc = WittClass::zero(k);
        for m in e.monomials() {
            let mut term = WittClass::diagonal1(k, SquareClass::ONE);
            for i in SquareClass(m).indices() {
                term = witt_mul(&term, &set(k, &[SquareClass::ONE, a(i)])).unwrap();
            }
            acc = witt_add(&acc, &term).unwrap();
        }
        acc
    }

    #[test]
    fn exhaustive_round_trip_up_to_k4() {
        for k in 1..=4usize {
            let size = 1u32 << k;
            for bits in 0u64..(1u64 << size) {
                let q = WittClass {
                    k,
                    entries: (0..size).filter(|m| bits >> m & 1 == 1).collect(),
                };
                let e = to_exterior_basis(&q);
                assert_eq!(from_exterior_basis(&e), q);
                assert_eq!(expand_by_products(&e), q);
                if q.dimension_parity() == 0 {
                    let steps = strip_reconstruct(&q).unwrap();
                    assert!(steps.len() <= k);
                    assert_eq!(reassemble(k, &steps).unwrap(), q);
                }
            }
        }
    }

    fn random_class(k: usize) -> impl Strategy<Value = WittClass> {
        prop::collection::btree_set(0u32..(1 << k), 0..(1usize << k)).prop_map(move |entries| {
            WittClass { k, entries }
        })
    }

    proptest! {
        #[test]
        fn dense_and_sparse_transforms_agree(q in random_class(6)) {
            prop_assert_eq!(
                superset_transform_dense(6, &q.entries),
                superset_transform_sparse(&q.entries)
            );
        }

        #[test]
        fn filtration_is_multiplicative(q1 in random_class(5), q2 in random_class(5)) {
            let prod = witt_mul(&q1, &q2).unwrap();
            let lvl = |q: &WittClass| i_level(q).unwrap_or(usize::MAX);
            let bound = lvl(&q1).saturating_add(lvl(&q2)).min(5);
            prop_assert!(prod.is_zero() || lvl(&prod) >= bound);
        }

        #[test]
        fn e_n_is_additive(q1 in random_class(5), q2 in random_class(5), n in 0usize..4) {
            if let (Ok(e1), Ok(e2)) = (e_invariant(&q1, n), e_invariant(&q2, n)) {
                let sum = witt_add(&q1, &q2).unwrap();
                prop_assert_eq!(e_invariant(&sum, n).unwrap(), e1.add(&e2));
            }
        }

        #[test]
        fn strip_reassembles(q in random_class(6)) {
            if q.dimension_parity() == 0 {
                let steps = strip_reconstruct(&q).unwrap();
                prop_assert!(steps.len() <= 6);
                prop_assert_eq!(reassemble(6, &steps).unwrap(), q);
            }
        }

        #[test]
        fn pfister_e_n_is_wedge_of_linear_forms(xs in prop::collection::btree_set(1u32..64, 1..5)) {
            let k = 6;
            let entries: Vec<SquareClass> = xs.into_iter().map(SquareClass).collect();
            let n = entries.len();
            let q = pfister_class(k, &PfisterSymbol::new(entries.clone()).unwrap()).unwrap();
            let wedge = entries.iter().fold(
                ExteriorElement::from_monomials(k, [0]),
                |acc, x| acc.wedge(&ExteriorElement::linear_form(k, *x)),
            );
            prop_assert_eq!(e_invariant(&q, n).unwrap(), wedge);
        }
    }
}
