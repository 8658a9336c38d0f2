use serde::Serialize;

use super::{RootDatum, Weight};
use crate::exact::inverse_mod;
use crate::exact::snf::{determinant, smith_normal_form};

/// Λ/Λ_r as a product of cyclic groups, with a coordinate map from weights.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FundamentalGroup {
    /// Cyclic orders, all > 1. Empty for the trivial group.
    pub orders: Vec<u64>,
    /// Row k is the functional giving coordinate k of a weight's class
    /// (before reduction mod `orders[k]`).
    pub coordinates: Vec<Vec<i64>>,
    /// Fundamental weight (1-based index) whose class is generator k.
    pub generator_weights: Vec<Option<usize>>,
    /// One coset representative weight per group element, in the order of
    /// [`FundamentalGroup::elements`].
    pub representatives: Vec<(Vec<u64>, Weight)>,
}

impl FundamentalGroup {
    pub fn order(&self) -> u64 {
        self.orders.iter().product()
    }

    pub fn is_trivial(&self) -> bool {
        self.orders.is_empty()
    }

    pub fn class_of(&self, weight: &[i64]) -> Vec<u64> {
        self.coordinates
            .iter()
            .zip(&self.orders)
            .map(|(row, &d)| {
                let v: i64 = row.iter().zip(weight).map(|(a, b)| a * b).sum();
                v.rem_euclid(d as i64) as u64
            })
            .collect()
    }

    /// All elements in lexicographic order of their coordinates.
    pub fn elements(&self) -> Vec<Vec<u64>> {
        let mut out = vec![Vec::new()];
        for &d in &self.orders {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    (0..d).map(move |x| {
                        let mut v = prefix.clone();
                        v.push(x);
                        v
                    })
                })
                .collect();
        }
        out
    }

    pub fn representative(&self, class: &[u64]) -> Option<&Weight> {
        self.representatives
            .iter()
            .find(|(c, _)| c == class)
            .map(|(_, w)| w)
    }
}

/// Cokernel of the Cartan matrix via integer Smith normal form, with the
/// coordinates renormalized so that generators are classes of fundamental
/// weights of smallest index where possible.
pub fn fundamental_group(datum: &RootDatum) -> FundamentalGroup {
    let r = datum.rank();
    // Columns are the simple roots in weight coordinates.
    let roots_as_columns: Vec<Vec<i128>> = (0..r)
        .map(|i| (0..r).map(|j| datum.simple_roots[j][i] as i128).collect())
        .collect();
    let snf = smith_normal_form(&roots_as_columns);
    debug_assert_eq!(
        snf.diagonal.iter().product::<i128>().abs(),
        determinant(&roots_as_columns).abs()
    );
    let mut orders = Vec::new();
    let mut coordinates = Vec::new();
    for (k, &d) in snf.diagonal.iter().enumerate() {
        if d > 1 {
            orders.push(d as u64);
            coordinates.push(snf.left[k].iter().map(|&x| x as i64).collect::<Vec<_>>());
        }
    }
    let mut group = FundamentalGroup {
        orders,
        coordinates,
        generator_weights: Vec::new(),
        representatives: Vec::new(),
    };
    normalize_generators(&mut group, datum);
    let representatives = group
        .elements()
        .into_iter()
        .map(|class| {
            let w = pick_representative(&group, datum, &class);
            (class, w)
        })
        .collect();
    group.representatives = representatives;
    group
}

fn normalize_generators(group: &mut FundamentalGroup, datum: &RootDatum) {
    let classes: Vec<Vec<u64>> = datum
        .fundamental_weights
        .iter()
        .map(|w| group.class_of(w))
        .collect();
    match group.orders.as_slice() {
        [] => {}
        [d] => {
            let d = *d;
            let found = classes
                .iter()
                .enumerate()
                .find(|(_, c)| num_integer::gcd(c[0], d) == 1);
            if let Some((i, c)) = found {
                let inv = inverse_mod(c[0], d).expect("unit modulo d") as i64;
                for x in group.coordinates[0].iter_mut() {
                    *x = (*x * inv).rem_euclid(d as i64);
                }
                group.generator_weights = vec![Some(i + 1)];
            } else {
                group.generator_weights = vec![None];
            }
        }
        [a, b] if a == b && crate::exact::is_prime(*a) => {
            // Elementary abelian: choose two independent fundamental-weight
            // classes greedily and pass to that basis over 𝔽_q.
            let q = *a as i64;
            let first = classes.iter().position(|c| c.iter().any(|&x| x != 0));
            let second = first.and_then(|f| {
                classes.iter().position(|c| {
                    let det = c[0] as i64 * classes[f][1] as i64 - c[1] as i64 * classes[f][0] as i64;
                    det.rem_euclid(q) != 0
                })
            });
            if let (Some(f), Some(s)) = (first, second) {
                // Columns of P are the chosen classes; new coords = P⁻¹ · old.
                let (p00, p10) = (classes[f][0] as i64, classes[f][1] as i64);
                let (p01, p11) = (classes[s][0] as i64, classes[s][1] as i64);
                let det = (p00 * p11 - p01 * p10).rem_euclid(q);
                let det_inv = inverse_mod(det as u64, q as u64).expect("invertible") as i64;
                let inv = [
                    [p11 * det_inv, -p01 * det_inv],
                    [-p10 * det_inv, p00 * det_inv],
                ];
                let old = group.coordinates.clone();
                for (k, row) in group.coordinates.iter_mut().enumerate() {
                    for (j, x) in row.iter_mut().enumerate() {
                        *x = (inv[k][0] * old[0][j] + inv[k][1] * old[1][j]).rem_euclid(q);
                    }
                }
                group.generator_weights = vec![Some(f + 1), Some(s + 1)];
            } else {
                group.generator_weights = vec![None, None];
            }
        }
        other => group.generator_weights = vec![None; other.len()],
    }
}

fn pick_representative(group: &FundamentalGroup, datum: &RootDatum, class: &[u64]) -> Weight {
    let r = datum.rank();
    if class.iter().all(|&x| x == 0) {
        return vec![0; r];
    }
    if let Some(w) = datum
        .fundamental_weights
        .iter()
        .find(|w| group.class_of(w) == class)
    {
        return w.clone();
    }
    // Combination of generator weights.
    let mut w = vec![0i64; r];
    for (k, &c) in class.iter().enumerate() {
        if let Some(i) = group.generator_weights[k] {
            w[i - 1] += c as i64;
        }
    }
    w
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::build_root_datum;

    fn group(s: &str) -> (RootDatum, FundamentalGroup) {
        let d = build_root_datum(s.parse().unwrap()).unwrap();
        let g = fundamental_group(&d);
        (d, g)
    }

    #[test]
    fn classical_groups() {
        assert!(group("E8").1.is_trivial());
        assert!(group("F4").1.is_trivial());
        assert!(group("G2").1.is_trivial());
        assert_eq!(group("E6").1.orders, vec![3]);
        assert_eq!(group("E7").1.orders, vec![2]);
        assert_eq!(group("A3").1.orders, vec![4]);
        assert_eq!(group("B4").1.orders, vec![2]);
        assert_eq!(group("C3").1.orders, vec![2]);
        assert_eq!(group("D5").1.orders, vec![4]);
        assert_eq!(group("D4").1.orders, vec![2, 2]);
        assert_eq!(group("D6").1.orders, vec![2, 2]);
    }

    #[test]
    fn type_a_generated_by_first_weight() {
        for n in 1..=8 {
            let (d, g) = group(&format!("A{n}"));
            assert_eq!(g.orders, vec![n as u64 + 1]);
            assert_eq!(g.class_of(&d.fundamental_weights[0]), vec![1]);
            assert_eq!(g.class_of(&d.fundamental_weights[n - 1]), vec![n as u64]);
            for root in &d.simple_roots {
                assert_eq!(g.class_of(root), vec![0]);
            }
        }
    }

    #[test]
    fn representatives_cover_every_class() {
        for s in ["A4", "D4", "E6", "E7", "B3"] {
            let (_, g) = group(s);
            assert_eq!(g.representatives.len() as u64, g.order());
            for (class, w) in &g.representatives {
                assert_eq!(&g.class_of(w), class, "{s}");
            }
        }
    }

    #[test]
    fn order_equals_determinant() {
        for s in ["A1", "A7", "B5", "C4", "D7", "E6", "E7", "E8", "F4", "G2"] {
            let (d, g) = group(s);
            let m: Vec<Vec<i128>> = d
                .cartan
                .iter()
                .map(|r| r.iter().map(|&x| x as i128).collect())
                .collect();
            assert_eq!(g.order() as i128, determinant(&m).abs(), "{s}");
        }
    }
}
