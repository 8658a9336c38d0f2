use serde::Serialize;

use super::{check_prime, MotiveError};
use crate::exact::snf::smith_normal_form;
use crate::exact::{MultiPoly, MAX_VARS};
use crate::witt::SquareClass;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SymbolEntry {
    /// A named generic element; `"1"` stands for the trivial one.
    Abstract(String),
    /// A square class of the Witt model (p = 2 only).
    Square(SquareClass),
}

/// (a_1) ∪ … ∪ (a_m) in degree m mod p.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PureSymbol {
    pub p: u64,
    pub m: u32,
    pub entries: Vec<SymbolEntry>,
}

impl PureSymbol {
    pub fn new(p: u64, m: u32, entries: Vec<SymbolEntry>) -> Result<Self, MotiveError> {
        check_prime(p)?;
        if m < 2 {
            return Err(MotiveError::InvalidDegree(m));
        }
        if entries.len() != m as usize {
            return Err(MotiveError::EntryCount {
                expected: m as usize,
                got: entries.len(),
            });
        }
        if p != 2 && entries.iter().any(|e| matches!(e, SymbolEntry::Square(_))) {
            return Err(MotiveError::SquareClassAtOddPrime);
        }
        Ok(PureSymbol { p, m, entries })
    }

    /// Generic symbol on m distinct named generators.
    pub fn generic(p: u64, m: u32) -> Result<Self, MotiveError> {
        let entries = (1..=m).map(|i| SymbolEntry::Abstract(format!("a{i}"))).collect();
        PureSymbol::new(p, m, entries)
    }

    /// Repeated or trivial entries kill the symbol. Square-class entries are
    /// compared up to 𝔽_2-linear dependence, which is exact in the model.
    pub fn is_zero(&self) -> bool {
        let mut names = std::collections::BTreeSet::new();
        let mut basis: Vec<u32> = Vec::new();
        for e in &self.entries {
            match e {
                SymbolEntry::Abstract(s) => {
                    if s == "1" || !names.insert(s.as_str()) {
                        return true;
                    }
                }
                SymbolEntry::Square(x) => {
                    let mut v = x.0;
                    for &b in &basis {
                        v = v.min(v ^ b);
                    }
                    if v == 0 {
                        return true;
                    }
                    basis.push(v);
                    basis.sort_unstable_by(|a, b| b.cmp(a));
                }
            }
        }
        false
    }
}

/// The ideal (p, v_1, …, v_m) of ℤ_(p)[v_1, v_2, …] with its Koszul-type
/// presentation. Generators: g_0 = p and g_i = v_i. Each relation is a
/// coefficient vector over the generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealModule {
    pub p: u64,
    pub m: u32,
    pub generators: Vec<MultiPoly>,
    pub relations: Vec<Vec<MultiPoly>>,
}

pub fn ideal_i(p: u64, m: u32) -> Result<IdealModule, MotiveError> {
    check_prime(p)?;
    if m as usize > MAX_VARS {
        return Err(MotiveError::TooManyVariables(m));
    }
    let m_us = m as usize;
    let generator = |i: usize| {
        if i == 0 {
            MultiPoly::from_int(p as i64)
        } else {
            MultiPoly::var(i)
        }
    };
    let generators: Vec<MultiPoly> = (0..=m_us).map(generator).collect();
    let mut relations = Vec::new();
    // g_i·g_j = g_j·g_i read as the syzygy g_i e_j − g_j e_i.
    for i in 0..=m_us {
        for j in i + 1..=m_us {
            let mut rel = vec![MultiPoly::zero(); m_us + 1];
            rel[j] = generator(i);
            rel[i] = generator(j).neg();
            relations.push(rel);
        }
    }
    Ok(IdealModule {
        p,
        m,
        generators,
        relations,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SpecializationTarget {
    /// K(n) coefficients: v_n a unit, other v_j zero. K(0) has ℚ coefficients.
    Morava(u32),
    /// p-local Chow coefficients: every v_j zero.
    ChowLocal,
}

impl SpecializationTarget {
    fn label(&self) -> String {
        match self {
            SpecializationTarget::Morava(n) => format!("K({n})"),
            SpecializationTarget::ChowLocal => "CH_(p)".into(),
        }
    }

    fn keeps(&self, j: usize) -> bool {
        matches!(self, SpecializationTarget::Morava(n) if *n as usize == j)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TorsionSummand {
    pub modulus: u64,
    pub multiplicity: u64,
}

/// Finitely generated module over the coefficient ring, ring^free ⊕ torsion.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ModuleShape {
    pub coefficients: String,
    pub free_rank: u64,
    pub torsion: Vec<TorsionSummand>,
}

impl ModuleShape {
    fn new(coefficients: String, free_rank: u64, p: u64, torsion_rank: u64) -> Self {
        let torsion = if torsion_rank == 0 {
            Vec::new()
        } else {
            vec![TorsionSummand {
                modulus: p,
                multiplicity: torsion_rank,
            }]
        };
        ModuleShape {
            coefficients,
            free_rank,
            torsion,
        }
    }

    pub fn torsion_rank(&self) -> u64 {
        self.torsion.iter().map(|t| t.multiplicity).sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ImageReport {
    pub target: String,
    pub generator_images: Vec<String>,
    /// Some generator maps to a unit, so the image is the whole ring.
    pub contains_unit: bool,
    /// 1 when the image is the full ring, otherwise p (the image is (p)).
    pub image_index: u64,
    /// I ⊗ (coefficient ring), read off the specialized presentation.
    pub module: ModuleShape,
}

/// Specializes one monomial entry to an integer up to units of the target.
fn specialize_entry(e: &MultiPoly, p: u64, target: SpecializationTarget) -> i128 {
    let killed = e.kill_vars(|j| target.keeps(j));
    let Some((_, c)) = killed.terms().first() else {
        return 0;
    };
    debug_assert_eq!(killed.len(), 1, "presentation entries are monomials");
    if target == SpecializationTarget::Morava(0) {
        return 1;
    }
    let v = c.p_valuation(p).expect("nonzero coefficient");
    assert!(v >= 0, "coefficients are p-integral");
    i128::from(p).pow(v as u32)
}

fn is_unit_image(e: &MultiPoly, p: u64, target: SpecializationTarget) -> bool {
    specialize_entry(e, p, target) == 1
}

pub fn specialize_image(module: &IdealModule, target: SpecializationTarget) -> ImageReport {
    let p = module.p;
    let generator_images = module
        .generators
        .iter()
        .map(|g| g.kill_vars(|j| target.keeps(j)).to_string())
        .collect();
    let contains_unit = module
        .generators
        .iter()
        .any(|g| is_unit_image(g, p, target));
    // Presentation matrix: rows are generators, columns relations.
    let rows = module.generators.len();
    let matrix: Vec<Vec<i128>> = (0..rows)
        .map(|i| {
            module
                .relations
                .iter()
                .map(|rel| specialize_entry(&rel[i], p, target))
                .collect()
        })
        .collect();
    let snf = smith_normal_form(&matrix);
    let mut torsion: Vec<TorsionSummand> = Vec::new();
    for d in snf.torsion() {
        let modulus = d as u64;
        match torsion.iter_mut().find(|t| t.modulus == modulus) {
            Some(t) => t.multiplicity += 1,
            None => torsion.push(TorsionSummand {
                modulus,
                multiplicity: 1,
            }),
        }
    }
    ImageReport {
        target: target.label(),
        generator_images,
        contains_unit,
        image_index: if contains_unit { 1 } else { p },
        module: ModuleShape {
            coefficients: target.label(),
            free_rank: snf.cokernel_free_rank() as u64,
            torsion,
        },
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum RostVerdict {
    TateDecomposition,
    IndecomposablePlusTate,
    Indecomposable,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SplitStatus {
    pub p: u64,
    pub m: u32,
    pub n: u32,
    pub symbol_nonzero: bool,
    pub verdict: RostVerdict,
    /// Twists of the Tate summands, ascending from 0.
    pub twists: Vec<u64>,
    /// Which motive `shape` describes: `"R_m"` or the complement `"L"`.
    pub shape_of: String,
    pub shape: ModuleShape,
    pub rule: String,
}

fn twist_step(p: u64, m: u32) -> Result<u64, MotiveError> {
    let top = p
        .checked_pow(m - 1)
        .ok_or(MotiveError::DimensionOutOfRange(u64::from(m)))?;
    Ok((top - 1) / (p - 1))
}

/// The K(n)-motive of the Rost motive R_m of a degree-m symbol mod p.
pub fn rost_split_status(
    p: u64,
    m: u32,
    n: u32,
    symbol_nonzero: bool,
) -> Result<SplitStatus, MotiveError> {
    check_prime(p)?;
    if m < 2 {
        return Err(MotiveError::InvalidDegree(m));
    }
    let b = twist_step(p, m)?;
    let coefficients = format!("K({n})");
    let torsion_rank = u64::from(m - 2) * (p - 1);
    let all_twists: Vec<u64> = (0..p).map(|i| i * b).collect();
    let rule = match n.cmp(&(m - 1)) {
        std::cmp::Ordering::Less => "prop-rost-1",
        std::cmp::Ordering::Equal => "prop-rost-2",
        std::cmp::Ordering::Greater => "prop-rost-3",
    }
    .to_string();
    let tate = |rule: String| SplitStatus {
        p,
        m,
        n,
        symbol_nonzero,
        verdict: RostVerdict::TateDecomposition,
        twists: all_twists.clone(),
        shape_of: "R_m".into(),
        shape: ModuleShape::new(coefficients.clone(), p, p, 0),
        rule,
    };
    if !symbol_nonzero || n < m - 1 {
        return Ok(tate(rule));
    }
    if n == m - 1 {
        return Ok(SplitStatus {
            p,
            m,
            n,
            symbol_nonzero,
            verdict: RostVerdict::IndecomposablePlusTate,
            twists: vec![0],
            shape_of: "L".into(),
            shape: ModuleShape::new(coefficients, p - 1, p, torsion_rank),
            rule,
        });
    }
    // CH(R_m) ⊗ ℤ_(p) = ℤ_(p) ⊕ (I/(v)I)^{p−1} with I/(v)I = ℤ_(p) ⊕ (ℤ/p)^{m−2}.
    Ok(SplitStatus {
        p,
        m,
        n,
        symbol_nonzero,
        verdict: RostVerdict::Indecomposable,
        twists: Vec::new(),
        shape_of: "R_m".into(),
        shape: ModuleShape::new(coefficients, p, p, torsion_rank),
        rule,
    })
}

pub fn rost_split_status_for(symbol: &PureSymbol, n: u32) -> Result<SplitStatus, MotiveError> {
    rost_split_status(symbol.p, symbol.m, n, !symbol.is_zero())
}

impl std::fmt::Display for IdealModule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let gens: Vec<String> = self.generators.iter().map(|g| g.to_string()).collect();
        write!(f, "I({}, {}) = ({})", self.p, self.m, gens.join(", "))
    }
}

/// Renders a relation Σ c_i g_i as text.
pub(crate) fn relation_to_string(rel: &[MultiPoly]) -> String {
    let parts: Vec<String> = rel
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| {
            if c.len() > 1 {
                format!("({c})*g{i}")
            } else {
                format!("{c}*g{i}")
            }
        })
        .collect();
    parts.join(" + ").replace("+ -", "- ")
}

impl IdealModule {
    pub fn relation_strings(&self) -> Vec<String> {
        self.relations.iter().map(|r| relation_to_string(r)).collect()
    }

    /// Checks that every relation holds in the polynomial ring.
    pub fn relations_hold(&self) -> bool {
        self.relations.iter().all(|rel| {
            rel.iter()
                .zip(&self.generators)
                .fold(MultiPoly::zero(), |acc, (c, g)| acc.add(&c.mul(g)))
                .is_zero()
        })
    }
}
