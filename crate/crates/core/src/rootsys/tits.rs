use std::collections::BTreeMap;

use num_integer::{gcd, lcm};
use serde::{Deserialize, Serialize};

use super::{fundamental_group, steinberg_rho, FundamentalGroup, RootDatum, RootError, WeylElement};

/// Formal Brauer class: an element of a finite abelian group ⊕ ℤ/d_i with an
/// exponent (its order) and a declared index, exponent | index.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BrauerClass {
    pub element: Vec<u64>,
    pub group: Vec<u64>,
    pub exponent: u64,
    pub index: u64,
}

/// Order of an element of ⊕ ℤ/d_i.
pub fn element_order(element: &[u64], group: &[u64]) -> u64 {
    element
        .iter()
        .zip(group)
        .map(|(&e, &d)| d / gcd(e % d, d))
        .fold(1, lcm)
}

impl BrauerClass {
    pub fn new(element: Vec<u64>, group: Vec<u64>, index: u64) -> Result<Self, RootError> {
        if element.len() != group.len() || group.contains(&0) {
            return Err(RootError::IllDefinedHomomorphism(format!(
                "class {element:?} does not live in group {group:?}"
            )));
        }
        let element: Vec<u64> = element.iter().zip(&group).map(|(e, d)| e % d).collect();
        let exponent = element_order(&element, &group);
        if index == 0 || !index.is_multiple_of(exponent) {
            return Err(RootError::InvalidIndex { index, exponent });
        }
        Ok(BrauerClass {
            element,
            group,
            exponent,
            index,
        })
    }

    pub fn trivial(group: Vec<u64>) -> Self {
        BrauerClass {
            element: vec![0; group.len()],
            group,
            exponent: 1,
            index: 1,
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.element.iter().all(|&x| x == 0)
    }

    /// Whether the p-primary part of the class vanishes.
    pub fn p_component_trivial(&self, p: u64) -> bool {
        !self.exponent.is_multiple_of(p)
    }

    pub fn negate(&self) -> Self {
        BrauerClass {
            element: negate(&self.element, &self.group),
            ..self.clone()
        }
    }
}

fn negate(element: &[u64], group: &[u64]) -> Vec<u64> {
    element
        .iter()
        .zip(group)
        .map(|(&e, &d)| (d - e % d) % d)
        .collect()
}

/// β: Λ/Λ_r → Br, given by images of the generators of the fundamental group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TitsHomomorphism {
    pub source: FundamentalGroup,
    pub target: Vec<u64>,
    pub images: Vec<Vec<u64>>,
    /// Declared indices of image classes. A class without a declaration
    /// takes the declared index of its inverse, else its own exponent.
    pub declared_index: BTreeMap<Vec<u64>, u64>,
}

impl TitsHomomorphism {
    pub fn new(
        source: FundamentalGroup,
        target: Vec<u64>,
        images: Vec<Vec<u64>>,
        declared_index: BTreeMap<Vec<u64>, u64>,
    ) -> Result<Self, RootError> {
        if images.len() != source.orders.len() {
            return Err(RootError::IllDefinedHomomorphism(format!(
                "{} generator images given for a group with {} generators",
                images.len(),
                source.orders.len()
            )));
        }
        for (k, (img, &d)) in images.iter().zip(&source.orders).enumerate() {
            if img.len() != target.len() || img.iter().zip(&target).any(|(x, t)| x >= t) {
                return Err(RootError::IllDefinedHomomorphism(format!(
                    "image {img:?} of generator {k} is not an element of {target:?}"
                )));
            }
            let order = element_order(img, &target);
            if d % order != 0 {
                return Err(RootError::IllDefinedHomomorphism(format!(
                    "generator {k} has order {d} but its image has order {order}"
                )));
            }
        }
        let mut declared = BTreeMap::new();
        for (class, index) in declared_index {
            let reduced = BrauerClass::new(class, target.clone(), index)?;
            declared.insert(reduced.element, index);
        }
        Ok(TitsHomomorphism {
            source,
            target,
            images,
            declared_index: declared,
        })
    }

    /// The homomorphism with every generator sent to the zero class.
    pub fn trivial(source: FundamentalGroup) -> Self {
        let images = vec![Vec::new(); source.orders.len()];
        TitsHomomorphism {
            source,
            target: Vec::new(),
            images,
            declared_index: BTreeMap::new(),
        }
    }

    /// Cyclic target ℤ/d with the first generator sent to 1 and the given
    /// index declared for that class.
    pub fn cyclic(source: FundamentalGroup, d: u64, index: u64) -> Result<Self, RootError> {
        let mut images = vec![vec![0]; source.orders.len()];
        if let Some(first) = images.first_mut() {
            first[0] = 1 % d;
        }
        let declared = BTreeMap::from([(vec![1 % d], index)]);
        Self::new(source, vec![d], images, declared)
    }

    pub fn apply(&self, class: &[u64]) -> Vec<u64> {
        let mut out = vec![0u64; self.target.len()];
        for (c, img) in class.iter().zip(&self.images) {
            for ((o, x), d) in out.iter_mut().zip(img).zip(&self.target) {
                *o = (*o + c * x) % d;
            }
        }
        out
    }

    pub fn brauer_class(&self, element: Vec<u64>) -> BrauerClass {
        let exponent = element_order(&element, &self.target);
        let index = if exponent == 1 {
            1
        } else {
            self.declared_index
                .get(&element)
                .or_else(|| self.declared_index.get(&negate(&element, &self.target)))
                .copied()
                .unwrap_or(exponent)
        };
        BrauerClass {
            element,
            group: self.target.clone(),
            exponent,
            index,
        }
    }

    pub fn class_of_weight(&self, weight: &[i64]) -> BrauerClass {
        self.brauer_class(self.apply(&self.source.class_of(weight)))
    }

    /// Post-composes with an automorphism of the target.
    pub fn compose(&self, automorphism: impl Fn(&[u64]) -> Vec<u64>) -> Result<Self, RootError> {
        let images = self.images.iter().map(|x| automorphism(x)).collect();
        let declared = self
            .declared_index
            .iter()
            .map(|(c, i)| (automorphism(c), *i))
            .collect();
        Self::new(self.source.clone(), self.target.clone(), images, declared)
    }
}

/// ω_i ↦ β(class of ω_i) for i = 1..rank.
pub fn tits_table(
    datum: &RootDatum,
    beta: &TitsHomomorphism,
) -> Result<Vec<(usize, BrauerClass)>, RootError> {
    if fundamental_group(datum) != beta.source {
        return Err(RootError::SourceMismatch);
    }
    Ok(datum
        .fundamental_weights
        .iter()
        .enumerate()
        .map(|(i, w)| (i + 1, beta.class_of_weight(w)))
        .collect())
}

/// Index of β(ρ_w): the factor by which K⁰(L_w) → K⁰((L_w)_K) = ℤ multiplies.
pub fn k0_restriction_index(datum: &RootDatum, w: &WeylElement, beta: &TitsHomomorphism) -> u64 {
    beta.class_of_weight(&steinberg_rho(datum, w)).index
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::{build_root_datum, weyl_elements, DEFAULT_WEYL_CAP};

    fn datum(s: &str) -> RootDatum {
        build_root_datum(s.parse().unwrap()).unwrap()
    }

    #[test]
    fn type_a_table() {
        let d = datum("A3");
        let beta = TitsHomomorphism::cyclic(fundamental_group(&d), 4, 4).unwrap();
        let table = tits_table(&d, &beta).unwrap();
        assert_eq!(table[0].1.element, vec![1]);
        assert_eq!(table[2].1.element, vec![3]);
        assert_eq!(table[2].1, table[0].1.negate());
        assert_eq!(table[1].1.element, vec![2]);
        assert_eq!(table[1].1.exponent, 2);
    }

    #[test]
    fn e7_exponent_two() {
        let d = datum("E7");
        let beta = TitsHomomorphism::cyclic(fundamental_group(&d), 2, 8).unwrap();
        let table = tits_table(&d, &beta).unwrap();
        let w7 = &table[6].1;
        assert_eq!(w7.element, vec![1]);
        assert_eq!(w7.exponent, 2);
        assert_eq!(w7.index, 8);
    }

    #[test]
    fn trivial_beta() {
        let d = datum("E6");
        let beta = TitsHomomorphism::trivial(fundamental_group(&d));
        assert!(tits_table(&d, &beta).unwrap().iter().all(|(_, c)| c.is_trivial()));
    }

    #[test]
    fn ill_defined_images() {
        let g = fundamental_group(&datum("A1"));
        // ℤ/2 → ℤ/3 sending the generator to 1 does not respect orders.
        let err = TitsHomomorphism::new(g.clone(), vec![3], vec![vec![1]], BTreeMap::new());
        assert!(matches!(err, Err(RootError::IllDefinedHomomorphism(_))));
        let err = TitsHomomorphism::new(g.clone(), vec![4], vec![vec![2]], BTreeMap::from([(vec![2], 3)]));
        assert_eq!(err.unwrap_err(), RootError::InvalidIndex { index: 3, exponent: 2 });
        assert!(TitsHomomorphism::new(g, vec![4], vec![vec![2]], BTreeMap::new()).is_ok());
    }

    #[test]
    fn restriction_indices() {
        let d = datum("A1");
        let ws = weyl_elements(&d, DEFAULT_WEYL_CAP).unwrap();
        let beta = TitsHomomorphism::cyclic(fundamental_group(&d), 2, 2).unwrap();
        assert_eq!(k0_restriction_index(&d, &ws[0], &beta), 1);
        assert_eq!(k0_restriction_index(&d, &ws[1], &beta), 2);
        let trivial = TitsHomomorphism::trivial(fundamental_group(&d));
        assert!(ws.iter().all(|w| k0_restriction_index(&d, w, &trivial) == 1));
    }

    #[test]
    fn source_mismatch() {
        let beta = TitsHomomorphism::trivial(fundamental_group(&datum("A2")));
        assert_eq!(tits_table(&datum("A3"), &beta), Err(RootError::SourceMismatch));
    }
}
