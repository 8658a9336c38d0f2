use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{check_prime, MotiveError};
use crate::rootsys::{
    build_root_datum, element_order, fundamental_group, BrauerClass, DynkinType, Series,
};

/// Descriptor as read from JSON, before validation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawGroupDescriptor {
    #[serde(rename = "type")]
    pub dynkin: String,
    pub inner: bool,
    #[serde(default)]
    pub tits_classes: Vec<RawTitsClass>,
    #[serde(default)]
    pub rost_invariant: Option<RawRostInvariant>,
    #[serde(default)]
    pub e8_u_invariant: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawTitsClass {
    pub element: Vec<u64>,
    pub group: Vec<u64>,
    #[serde(default)]
    pub index: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawRostInvariant {
    pub degree: u32,
    pub nonzero_primes: Vec<u64>,
}

/// Primes at which the degree-3 Rost invariant has a nonzero component.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RostInvariant {
    pub nonzero_primes: BTreeSet<u64>,
}

impl RostInvariant {
    pub fn is_trivial(&self) -> bool {
        self.nonzero_primes.is_empty()
    }
}

/// Status of the degree-5 invariant of an E8 with trivial Rost invariant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum UInvariant {
    Zero,
    Nonzero,
    NonzeroPure,
}

impl UInvariant {
    fn parse(s: &str) -> Option<Self> {
        match s {
            "zero" => Some(UInvariant::Zero),
            "nonzero" => Some(UInvariant::Nonzero),
            "nonzero-pure" => Some(UInvariant::NonzeroPure),
            _ => None,
        }
    }
}

/// Hypotheses of the splitting criteria for the variety of Borel subgroups.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupDescriptor {
    pub dynkin: DynkinType,
    pub inner: bool,
    /// One Brauer class per generator of Λ/Λ_r.
    pub tits_classes: Vec<BrauerClass>,
    pub rost_invariant: RostInvariant,
    pub e8_u_invariant: Option<UInvariant>,
}

fn violation(key: impl Into<String>, reason: impl Into<String>) -> MotiveError {
    MotiveError::HypothesisViolation {
        key: key.into(),
        reason: reason.into(),
    }
}

fn has_outer_forms(t: DynkinType) -> bool {
    match t.series {
        Series::A => t.rank >= 2,
        Series::D => true,
        Series::E => t.rank == 6,
        _ => false,
    }
}

impl GroupDescriptor {
    pub fn from_raw(raw: &RawGroupDescriptor) -> Result<Self, MotiveError> {
        let dynkin: DynkinType = raw
            .dynkin
            .parse()
            .map_err(|e: crate::rootsys::RootError| violation("type", e.to_string()))?;
        let mut tits_classes = Vec::with_capacity(raw.tits_classes.len());
        for (i, c) in raw.tits_classes.iter().enumerate() {
            let key = format!("tits_classes[{i}]");
            if c.element.len() != c.group.len() || c.group.contains(&0) {
                return Err(violation(key, "element and group must have equal length, orders > 0"));
            }
            let index = c.index.unwrap_or_else(|| element_order(&c.element, &c.group));
            let class = BrauerClass::new(c.element.clone(), c.group.clone(), index)
                .map_err(|e| violation(key, e.to_string()))?;
            tits_classes.push(class);
        }
        let rost_invariant = match &raw.rost_invariant {
            None => RostInvariant::default(),
            Some(r) => {
                if r.degree != 3 {
                    return Err(violation("rost_invariant.degree", "the Rost invariant has degree 3"));
                }
                if let Some(&q) = r.nonzero_primes.iter().find(|&&q| !crate::exact::is_prime(q)) {
                    return Err(violation("rost_invariant.nonzero_primes", format!("{q} is not a prime")));
                }
                RostInvariant {
                    nonzero_primes: r.nonzero_primes.iter().copied().collect(),
                }
            }
        };
        let e8_u_invariant = match &raw.e8_u_invariant {
            None => None,
            Some(s) => Some(UInvariant::parse(s).ok_or_else(|| {
                violation("e8_u_invariant", format!("expected zero, nonzero or nonzero-pure, got {s:?}"))
            })?),
        };
        let g = GroupDescriptor {
            dynkin,
            inner: raw.inner,
            tits_classes,
            rost_invariant,
            e8_u_invariant,
        };
        g.validate()?;
        Ok(g)
    }

    /// Checks the internal consistency of the descriptor.
    pub fn validate(&self) -> Result<(), MotiveError> {
        if !self.inner && !has_outer_forms(self.dynkin) {
            return Err(violation(
                "inner",
                format!("type {} has no outer forms", self.dynkin),
            ));
        }
        let datum = build_root_datum(self.dynkin).map_err(|e| violation("type", e.to_string()))?;
        let group = fundamental_group(&datum);
        if self.tits_classes.len() != group.orders.len() {
            return Err(violation(
                "tits_classes",
                format!(
                    "expected {} classes (one per generator of the fundamental group {:?}), got {}",
                    group.orders.len(),
                    group.orders,
                    self.tits_classes.len()
                ),
            ));
        }
        for (i, (c, &d)) in self.tits_classes.iter().zip(&group.orders).enumerate() {
            if d % c.exponent != 0 {
                return Err(violation(
                    format!("tits_classes[{i}]"),
                    format!("class of order {} cannot be the image of a generator of order {d}", c.exponent),
                ));
            }
        }
        if let Some(u) = self.e8_u_invariant {
            if self.dynkin != DynkinType::new(Series::E, 8).expect("E8") {
                return Err(violation("e8_u_invariant", "only defined for type E8"));
            }
            if self.rost_invariant.nonzero_primes.contains(&2) {
                return Err(violation(
                    "e8_u_invariant",
                    format!("{u:?} given but the Rost invariant is nonzero at 2"),
                ));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum HeightQuery {
    /// K(n) with p-local coefficients; K(0) is rational Chow.
    Morava(u32),
    /// K⁰ with integral coefficients.
    K0Integral,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Split,
    NotSplit,
    Undecided,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum RuleId {
    #[serde(rename = "thm-main-1")]
    InnerType,
    #[serde(rename = "thm-main-2")]
    TitsAlgebras,
    #[serde(rename = "thm-main-3")]
    RostInvariant,
    #[serde(rename = "thm-main-4")]
    E8OddDegree,
}

impl RuleId {
    pub fn as_str(&self) -> &'static str {
        match self {
            RuleId::InnerType => "thm-main-1",
            RuleId::TitsAlgebras => "thm-main-2",
            RuleId::RostInvariant => "thm-main-3",
            RuleId::E8OddDegree => "thm-main-4",
        }
    }
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BorelVerdict {
    pub verdict: Verdict,
    pub rule: Option<RuleId>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unmet: Option<String>,
}

impl BorelVerdict {
    fn decided(split: bool, rule: RuleId) -> Self {
        BorelVerdict {
            verdict: if split { Verdict::Split } else { Verdict::NotSplit },
            rule: Some(rule),
            unmet: None,
        }
    }

    fn undecided(unmet: impl Into<String>) -> Self {
        BorelVerdict {
            verdict: Verdict::Undecided,
            rule: None,
            unmet: Some(unmet.into()),
        }
    }
}

/// Whether the motive of the variety of Borel subgroups of G splits in the
/// queried theory. Only the four clauses of the criterion are applied; every
/// other configuration is `Undecided` with the missing hypothesis named.
pub fn borel_split(
    g: &GroupDescriptor,
    p: u64,
    query: HeightQuery,
) -> Result<BorelVerdict, MotiveError> {
    check_prime(p)?;
    g.validate()?;
    let verdict = match query {
        HeightQuery::Morava(0) => BorelVerdict::decided(g.inner, RuleId::InnerType),
        HeightQuery::K0Integral => {
            if !g.inner {
                BorelVerdict::undecided("G of inner type")
            } else {
                let split = g.tits_classes.iter().all(BrauerClass::is_trivial);
                BorelVerdict::decided(split, RuleId::TitsAlgebras)
            }
        }
        HeightQuery::Morava(2) => {
            if !g.inner {
                BorelVerdict::undecided("G of inner type")
            } else if !g.tits_classes.iter().all(|c| c.p_component_trivial(p)) {
                BorelVerdict::undecided(format!("{p}-components of the Tits algebras split"))
            } else {
                let zero = !g.rost_invariant.nonzero_primes.contains(&p);
                BorelVerdict::decided(zero, RuleId::RostInvariant)
            }
        }
        HeightQuery::Morava(n) if n >= 4 => {
            let e8 = DynkinType::new(Series::E, 8).expect("E8");
            if g.dynkin != e8 {
                BorelVerdict::undecided("type E8")
            } else if p != 2 {
                BorelVerdict::undecided("p = 2")
            } else if !g.rost_invariant.is_trivial() {
                BorelVerdict::undecided("trivial Rost invariant")
            } else {
                match g.e8_u_invariant {
                    None => BorelVerdict::undecided("e8_u_invariant supplied"),
                    Some(u) => BorelVerdict::decided(u == UInvariant::Zero, RuleId::E8OddDegree),
                }
            }
        }
        HeightQuery::Morava(n) => {
            BorelVerdict::undecided(format!("a criterion for height {n} (heights 0, 2, >= 4 and K0 only)"))
        }
    };
    Ok(verdict)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn raw(t: &str, inner: bool) -> RawGroupDescriptor {
        RawGroupDescriptor {
            dynkin: t.into(),
            inner,
            tits_classes: Vec::new(),
            rost_invariant: None,
            e8_u_invariant: None,
        }
    }

    fn e8(u: &str) -> GroupDescriptor {
        GroupDescriptor::from_raw(&RawGroupDescriptor {
            rost_invariant: Some(RawRostInvariant {
                degree: 3,
                nonzero_primes: vec![],
            }),
            e8_u_invariant: Some(u.into()),
            ..raw("E8", true)
        })
        .unwrap()
    }

    #[test]
    fn e8_pair() {
        let g = e8("nonzero-pure");
        assert_eq!(
            borel_split(&g, 2, HeightQuery::Morava(2)).unwrap(),
            BorelVerdict::decided(true, RuleId::RostInvariant)
        );
        assert_eq!(
            borel_split(&g, 2, HeightQuery::Morava(4)).unwrap(),
            BorelVerdict::decided(false, RuleId::E8OddDegree)
        );
        assert_eq!(
            borel_split(&e8("zero"), 2, HeightQuery::Morava(7)).unwrap().verdict,
            Verdict::Split
        );
        assert_eq!(
            borel_split(&g, 2, HeightQuery::Morava(3)).unwrap().verdict,
            Verdict::Undecided
        );
    }

    #[test]
    fn outer_forms() {
        let mut r = raw("A3", false);
        r.tits_classes = vec![RawTitsClass {
            element: vec![0],
            group: vec![4],
            index: None,
        }];
        let g = GroupDescriptor::from_raw(&r).unwrap();
        let v = borel_split(&g, 3, HeightQuery::Morava(0)).unwrap();
        assert_eq!(v, BorelVerdict::decided(false, RuleId::InnerType));
        assert_eq!(
            borel_split(&g, 3, HeightQuery::K0Integral).unwrap().verdict,
            Verdict::Undecided
        );
        let err = GroupDescriptor::from_raw(&raw("G2", false)).unwrap_err();
        assert!(matches!(err, MotiveError::HypothesisViolation { ref key, .. } if key == "inner"));
    }

    #[test]
    fn malformed_descriptors_name_the_key() {
        let key_of = |r: &RawGroupDescriptor| match GroupDescriptor::from_raw(r) {
            Err(MotiveError::HypothesisViolation { key, .. }) => key,
            other => panic!("{other:?}"),
        };
        assert_eq!(key_of(&raw("X9", true)), "type");
        assert_eq!(key_of(&raw("A3", true)), "tits_classes");
        let mut r = raw("E7", true);
        r.tits_classes = vec![RawTitsClass {
            element: vec![1],
            group: vec![3],
            index: None,
        }];
        assert_eq!(key_of(&r), "tits_classes[0]");
        let mut r = raw("E6", true);
        r.tits_classes = vec![RawTitsClass {
            element: vec![1],
            group: vec![3],
            index: Some(2),
        }];
        assert_eq!(key_of(&r), "tits_classes[0]");
        let mut r = raw("F4", true);
        r.e8_u_invariant = Some("zero".into());
        assert_eq!(key_of(&r), "e8_u_invariant");
        let mut r = raw("E8", true);
        r.rost_invariant = Some(RawRostInvariant {
            degree: 5,
            nonzero_primes: vec![],
        });
        assert_eq!(key_of(&r), "rost_invariant.degree");
    }

    #[test]
    fn tits_and_rost_clauses() {
        let mut r = raw("E6", true);
        r.tits_classes = vec![RawTitsClass {
            element: vec![1],
            group: vec![3],
            index: None,
        }];
        r.rost_invariant = Some(RawRostInvariant {
            degree: 3,
            nonzero_primes: vec![2],
        });
        let g = GroupDescriptor::from_raw(&r).unwrap();
        assert_eq!(
            borel_split(&g, 3, HeightQuery::K0Integral).unwrap(),
            BorelVerdict::decided(false, RuleId::TitsAlgebras)
        );
        // The 3-component of the Tits algebra is nontrivial.
        assert_eq!(
            borel_split(&g, 3, HeightQuery::Morava(2)).unwrap().verdict,
            Verdict::Undecided
        );
        // At p = 2 the Tits hypothesis holds and the Rost invariant decides.
        assert_eq!(
            borel_split(&g, 2, HeightQuery::Morava(2)).unwrap(),
            BorelVerdict::decided(false, RuleId::RostInvariant)
        );
    }

    #[test]
    fn deterministic() {
        let g = e8("nonzero");
        for n in 0..8 {
            let a = borel_split(&g, 2, HeightQuery::Morava(n)).unwrap();
            let b = borel_split(&g.clone(), 2, HeightQuery::Morava(n)).unwrap();
            assert_eq!(a, b);
        }
    }
}
