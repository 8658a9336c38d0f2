use std::collections::HashMap;

use super::{RootDatum, RootError, Weight};
use crate::par;

/// Enumeration cap for Weyl groups: covers E6 (51 840) but not E7 or E8.
pub const DEFAULT_WEYL_CAP: u128 = 1_000_000;

/// Weyl group element with a reduced word and its action on the weight
/// lattice (column vectors in the fundamental-weight basis).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylElement {
    /// 1-based simple reflection indices; w = s_{word[0]} ⋯ s_{word[l−1]}.
    pub word: Vec<u8>,
    rank: usize,
    matrix: Vec<i32>,
    inverse: Vec<i32>,
}

impl WeylElement {
    pub fn identity(rank: usize) -> Self {
        let id: Vec<i32> = (0..rank * rank)
            .map(|k| i32::from(k / rank == k % rank))
            .collect();
        WeylElement {
            word: Vec::new(),
            rank,
            matrix: id.clone(),
            inverse: id,
        }
    }

    /// Builds the element from a word of 1-based reflection indices.
    pub fn from_word(datum: &RootDatum, word: &[u8]) -> Result<Self, RootError> {
        let r = datum.rank();
        let mut w = WeylElement::identity(r);
        for &i in word {
            if i == 0 || i as usize > r {
                return Err(RootError::InvalidWord(format!(
                    "reflection index {i} outside 1..={r}"
                )));
            }
            w = w.times_reflection(datum, i as usize);
        }
        Ok(w)
    }

    pub fn length(&self) -> usize {
        self.word.len()
    }

    pub fn matrix(&self) -> Vec<Vec<i64>> {
        to_rows(&self.matrix, self.rank)
    }

    pub fn inverse_matrix(&self) -> Vec<Vec<i64>> {
        to_rows(&self.inverse, self.rank)
    }

    pub fn apply(&self, weight: &[i64]) -> Weight {
        mat_vec(&self.matrix, self.rank, weight)
    }

    pub fn apply_inverse(&self, weight: &[i64]) -> Weight {
        mat_vec(&self.inverse, self.rank, weight)
    }

    /// w · s_i.
    fn times_reflection(&self, datum: &RootDatum, i: usize) -> Self {
        let r = self.rank;
        let alpha = &datum.simple_roots[i - 1];
        let col = i - 1;
        // s_i = I − α_i e_iᵀ. Right multiply: column i of M picks up −M·α_i.
        let mut matrix = self.matrix.clone();
        for row in 0..r {
            let dot: i64 = (0..r)
                .map(|k| self.matrix[row * r + k] as i64 * alpha[k])
                .sum();
            matrix[row * r + col] -= dot as i32;
        }
        // (s_i M⁻¹)[row] = M⁻¹[row] − α_i[row] · M⁻¹[i].
        let mut inverse = self.inverse.clone();
        for row in 0..r {
            let a = alpha[row] as i32;
            if a != 0 {
                for c in 0..r {
                    inverse[row * r + c] -= a * self.inverse[col * r + c];
                }
            }
        }
        let mut word = self.word.clone();
        word.push(i as u8);
        WeylElement {
            word,
            rank: r,
            matrix,
            inverse,
        }
    }

    /// |{β ∈ Φ⁺ : w⁻¹(β) ∈ Φ⁻}|, which equals the length of w.
    pub fn inversion_count(&self, datum: &RootDatum) -> usize {
        datum
            .positive_roots_as_weights()
            .iter()
            .filter(|b| datum.root_sign(&self.apply_inverse(b)) == Some(-1))
            .count()
    }
}

fn to_rows(m: &[i32], r: usize) -> Vec<Vec<i64>> {
    m.chunks(r.max(1))
        .map(|row| row.iter().map(|&x| x as i64).collect())
        .collect()
}

fn mat_vec(m: &[i32], r: usize, v: &[i64]) -> Weight {
    (0..r)
        .map(|row| (0..r).map(|k| m[row * r + k] as i64 * v[k]).sum())
        .collect()
}

/// Complete enumeration of W by breadth-first search over right
/// multiplication by simple reflections. Elements are keyed by the image of
/// the regular weight ρ = Σ ω_i, so each appears once with a reduced word;
/// order is by length, then discovery order, independent of thread count.
pub fn weyl_elements(datum: &RootDatum, cap: u128) -> Result<Vec<WeylElement>, RootError> {
    let order = datum.dynkin.weyl_order();
    if order > cap {
        return Err(RootError::GroupTooLarge { order, cap });
    }
    let r = datum.rank();
    let rho = vec![1i64; r];
    let id = WeylElement::identity(r);
    let mut seen: HashMap<Weight, ()> = HashMap::with_capacity(order as usize);
    seen.insert(id.apply(&rho), ());
    let mut all = vec![id.clone()];
    let mut layer = vec![id];
    while !layer.is_empty() {
        let candidates = par::map(&layer, |w| {
            (1..=r)
                .map(|i| {
                    let next = w.times_reflection(datum, i);
                    let key = next.apply(&rho);
                    (key, next)
                })
                .collect::<Vec<_>>()
        });
        let mut next_layer = Vec::new();
        for (key, w) in candidates.into_iter().flatten() {
            if seen.insert(key, ()).is_none() {
                next_layer.push(w);
            }
        }
        all.extend(next_layer.iter().cloned());
        layer = next_layer;
    }
    Ok(all)
}

/// ρ_w = Σ w⁻¹(ω_k) over the simple roots α_k with w⁻¹(α_k) ∈ Φ⁻.
pub fn steinberg_rho(datum: &RootDatum, w: &WeylElement) -> Weight {
    let r = datum.rank();
    let mut rho = vec![0i64; r];
    for k in 0..r {
        if datum.root_sign(&w.apply_inverse(&datum.simple_roots[k])) == Some(-1) {
            let image = w.apply_inverse(&datum.fundamental_weights[k]);
            for (acc, x) in rho.iter_mut().zip(image) {
                *acc += x;
            }
        }
    }
    rho
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::build_root_datum;
    use std::collections::HashSet;

    fn datum(s: &str) -> RootDatum {
        build_root_datum(s.parse().unwrap()).unwrap()
    }

    #[test]
    fn small_orders() {
        assert_eq!(weyl_elements(&datum("A1"), DEFAULT_WEYL_CAP).unwrap().len(), 2);
        assert_eq!(weyl_elements(&datum("G2"), DEFAULT_WEYL_CAP).unwrap().len(), 12);
        assert_eq!(weyl_elements(&datum("B3"), DEFAULT_WEYL_CAP).unwrap().len(), 48);
        assert_eq!(weyl_elements(&datum("D4"), DEFAULT_WEYL_CAP).unwrap().len(), 192);
    }

    #[test]
    fn cap_is_enforced() {
        let err = weyl_elements(&datum("E7"), DEFAULT_WEYL_CAP).unwrap_err();
        assert_eq!(
            err,
            RootError::GroupTooLarge {
                order: 2_903_040,
                cap: DEFAULT_WEYL_CAP
            }
        );
        assert!(weyl_elements(&datum("A3"), 23).is_err());
    }

    #[test]
    fn lengths_match_inversions() {
        for s in ["A3", "B3", "C3", "G2", "D4"] {
            let d = datum(s);
            for w in weyl_elements(&d, DEFAULT_WEYL_CAP).unwrap() {
                assert_eq!(w.length(), w.inversion_count(&d), "{s} {:?}", w.word);
            }
        }
    }

    #[test]
    fn matrices_are_mutually_inverse_and_preserve_roots() {
        let d = datum("B3");
        let roots: HashSet<Weight> = d
            .positive_roots_as_weights()
            .into_iter()
            .flat_map(|w| [w.iter().map(|x| -x).collect(), w])
            .collect();
        for w in weyl_elements(&d, DEFAULT_WEYL_CAP).unwrap() {
            for b in &roots {
                assert_eq!(w.apply_inverse(&w.apply(b)), *b);
                assert!(roots.contains(&w.apply(b)));
            }
            let rebuilt = WeylElement::from_word(&d, &w.word).unwrap();
            assert_eq!(rebuilt, w);
        }
    }

    #[test]
    fn rho_examples() {
        let d = datum("A1");
        let ws = weyl_elements(&d, DEFAULT_WEYL_CAP).unwrap();
        assert_eq!(steinberg_rho(&d, &ws[0]), vec![0]);
        assert_eq!(ws[1].word, vec![1]);
        assert_eq!(steinberg_rho(&d, &ws[1]), vec![-1]);
    }

    #[test]
    fn rho_is_identity_free_of_simple_descent() {
        // For the longest element every simple root is a descent.
        let d = datum("A2");
        let ws = weyl_elements(&d, DEFAULT_WEYL_CAP).unwrap();
        let longest = ws.iter().max_by_key(|w| w.length()).unwrap();
        assert_eq!(longest.length(), 3);
        let expected: Weight = (0..2)
            .map(|k| {
                (0..2)
                    .map(|i| longest.apply_inverse(&d.fundamental_weights[i])[k])
                    .sum()
            })
            .collect();
        assert_eq!(steinberg_rho(&d, longest), expected);
    }

    #[test]
    fn invalid_word() {
        assert!(WeylElement::from_word(&datum("A2"), &[3]).is_err());
        assert!(WeylElement::from_word(&datum("A2"), &[0]).is_err());
    }
}
