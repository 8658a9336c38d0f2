//! Root data in Bourbaki enumeration, Weyl groups, Steinberg weights,
//! fundamental groups Λ/Λ_r and Tits-algebra class tables.

mod lattice;
mod tits;
mod weyl;

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use lattice::{fundamental_group, FundamentalGroup};
pub use tits::{element_order, k0_restriction_index, tits_table, BrauerClass, TitsHomomorphism};
pub use weyl::{steinberg_rho, weyl_elements, WeylElement, DEFAULT_WEYL_CAP};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RootError {
    #[error("unsupported Dynkin type {0}")]
    UnsupportedType(String),
    #[error("Weyl group of order {order} exceeds the enumeration cap {cap}")]
    GroupTooLarge { order: u128, cap: u128 },
    #[error("ill-defined Tits homomorphism: {0}")]
    IllDefinedHomomorphism(String),
    #[error("declared index {index} is not a multiple of the exponent {exponent}")]
    InvalidIndex { index: u64, exponent: u64 },
    #[error("Tits homomorphism is defined on a different fundamental group")]
    SourceMismatch,
    #[error("invalid Weyl word: {0}")]
    InvalidWord(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Series {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

/// Irreducible Dynkin type such as A5 or E7.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DynkinType {
    pub series: Series,
    pub rank: usize,
}

impl DynkinType {
    pub fn new(series: Series, rank: usize) -> Result<Self, RootError> {
        let ok = match series {
            Series::A => rank >= 1,
            Series::B => rank >= 2,
            Series::C => rank >= 3,
            Series::D => rank >= 4,
            Series::E => (6..=8).contains(&rank),
            Series::F => rank == 4,
            Series::G => rank == 2,
        };
        // Ranks past 8 would overflow the packed weight keys long before
        // anything else, so cap them here.
        if ok && rank <= 16 {
            Ok(DynkinType { series, rank })
        } else {
            Err(RootError::UnsupportedType(format!("{series:?}{rank}")))
        }
    }

    /// Classical order of the Weyl group.
    pub fn weyl_order(&self) -> u128 {
        let fact = |n: usize| (1..=n as u128).product::<u128>();
        let n = self.rank;
        match self.series {
            Series::A => fact(n + 1),
            Series::B | Series::C => (1u128 << n) * fact(n),
            Series::D => (1u128 << (n - 1)) * fact(n),
            Series::E => match n {
                6 => 51_840,
                7 => 2_903_040,
                _ => 696_729_600,
            },
            Series::F => 1152,
            Series::G => 12,
        }
    }

    /// Classical number of positive roots.
    pub fn positive_root_count(&self) -> usize {
        let n = self.rank;
        match self.series {
            Series::A => n * (n + 1) / 2,
            Series::B | Series::C => n * n,
            Series::D => n * (n - 1),
            Series::E => match n {
                6 => 36,
                7 => 63,
                _ => 120,
            },
            Series::F => 24,
            Series::G => 6,
        }
    }
}

impl fmt::Display for DynkinType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.series, self.rank)
    }
}

impl FromStr for DynkinType {
    type Err = RootError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = || RootError::UnsupportedType(s.to_string());
        let mut chars = s.chars();
        let series = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Series::A,
            Some('B') => Series::B,
            Some('C') => Series::C,
            Some('D') => Series::D,
            Some('E') => Series::E,
            Some('F') => Series::F,
            Some('G') => Series::G,
            _ => return Err(bad()),
        };
        let rank = chars
            .as_str()
            .trim_start_matches('_')
            .parse::<usize>()
            .map_err(|_| bad())?;
        DynkinType::new(series, rank).map_err(|_| bad())
    }
}

impl Serialize for DynkinType {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for DynkinType {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

pub type Weight = Vec<i64>;

/// Cartan matrix C with C[i][j] = ⟨α_i, α_j^∨⟩, so that row i holds the
/// coordinates of α_i in the basis of fundamental weights.
pub fn cartan_matrix(t: DynkinType) -> Vec<Vec<i64>> {
    let n = t.rank;
    let mut c = vec![vec![0i64; n]; n];
    for (i, row) in c.iter_mut().enumerate() {
        row[i] = 2;
    }
    let mut link = |i: usize, j: usize| {
        c[i - 1][j - 1] = -1;
        c[j - 1][i - 1] = -1;
    };
    match t.series {
        Series::A | Series::B | Series::C => {
            for i in 1..n {
                link(i, i + 1);
            }
        }
        Series::D => {
            for i in 1..n - 1 {
                link(i, i + 1);
            }
            link(n - 2, n);
        }
        Series::E => {
            link(1, 3);
            link(2, 4);
            for i in 3..n {
                link(i, i + 1);
            }
        }
        Series::F => {
            link(1, 2);
            link(2, 3);
            link(3, 4);
        }
        Series::G => link(1, 2),
    }
    match t.series {
        // α_n short
        Series::B => c[n - 2][n - 1] = -2,
        // α_n long
        Series::C => c[n - 1][n - 2] = -2,
        // α_1, α_2 long; α_3, α_4 short
        Series::F => c[1][2] = -2,
        // α_1 short, α_2 long
        Series::G => c[1][0] = -3,
        _ => {}
    }
    c
}

/// Cartan data of an irreducible root system together with its positive roots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootDatum {
    pub dynkin: DynkinType,
    pub cartan: Vec<Vec<i64>>,
    /// α_i in the basis of fundamental weights (row i of the Cartan matrix).
    pub simple_roots: Vec<Weight>,
    /// ω_i in the basis of fundamental weights (unit vectors).
    pub fundamental_weights: Vec<Weight>,
    /// Positive roots in simple-root coordinates, sorted by height then
    /// lexicographically.
    pub positive_roots: Vec<Vec<i64>>,
    /// Weight coordinates of every root mapped to its sign (+1 or −1).
    root_signs: HashMap<Weight, i8>,
}

impl RootDatum {
    pub fn rank(&self) -> usize {
        self.dynkin.rank
    }

    /// Weight coordinates of a vector given in simple-root coordinates.
    pub fn root_to_weight(&self, root: &[i64]) -> Weight {
        (0..self.rank())
            .map(|j| root.iter().zip(&self.cartan).map(|(c, row)| c * row[j]).sum())
            .collect()
    }

    /// +1 for a positive root, −1 for a negative root, `None` if the weight
    /// is not a root.
    pub fn root_sign(&self, weight: &[i64]) -> Option<i8> {
        self.root_signs.get(weight).copied()
    }

    pub fn positive_roots_as_weights(&self) -> Vec<Weight> {
        self.positive_roots
            .iter()
            .map(|r| self.root_to_weight(r))
            .collect()
    }
}

/// Cartan data in Bourbaki enumeration plus the full positive system,
/// generated as the closure of the simple roots under simple reflections.
pub fn build_root_datum(t: DynkinType) -> Result<RootDatum, RootError> {
    let t = DynkinType::new(t.series, t.rank)?;
    let cartan = cartan_matrix(t);
    let n = t.rank;
    let unit = |i: usize| -> Vec<i64> { (0..n).map(|j| i64::from(i == j)).collect() };

    // Roots in simple-root coordinates; s_i(β) = β − ⟨β, α_i^∨⟩ α_i.
    let mut roots: Vec<Vec<i64>> = (0..n).map(unit).collect();
    let mut seen: std::collections::HashSet<Vec<i64>> = roots.iter().cloned().collect();
    let mut frontier = roots.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for beta in &frontier {
            for i in 0..n {
                let pairing: i64 = beta.iter().zip(&cartan).map(|(c, row)| c * row[i]).sum();
                if pairing == 0 {
                    continue;
                }
                let mut image = beta.clone();
                image[i] -= pairing;
                if seen.insert(image.clone()) {
                    next.push(image);
                }
            }
        }
        roots.extend(next.iter().cloned());
        frontier = next;
    }
    let mut positive: Vec<Vec<i64>> = roots
        .into_iter()
        .filter(|r| r.iter().all(|&c| c >= 0))
        .collect();
    positive.sort_by(|a, b| {
        let ha: i64 = a.iter().sum();
        let hb: i64 = b.iter().sum();
        ha.cmp(&hb).then_with(|| b.cmp(a))
    });

    let mut datum = RootDatum {
        dynkin: t,
        simple_roots: cartan.clone(),
        fundamental_weights: (0..n).map(unit).collect(),
        cartan,
        positive_roots: positive,
        root_signs: HashMap::new(),
    };
    let mut signs = HashMap::new();
    for w in datum.positive_roots_as_weights() {
        signs.insert(w.iter().map(|x| -x).collect(), -1);
        signs.insert(w, 1);
    }
    datum.root_signs = signs;
    Ok(datum)
}
