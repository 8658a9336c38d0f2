use serde::Serialize;

use super::{check_prime, MotiveError};
use crate::exact::{MultiPoly, Rational};

/// Largest dimension for which s_N fits comfortably in an i128.
const MAX_DIM: u64 = 100;

/// Degree of the power-sum class of the tangent bundle of a smooth degree-d
/// hypersurface X ⊂ P^{N+1}: s_N = d·(N + 2 − d^N).
pub fn milnor_number_hypersurface(dim: u64, degree: u64) -> Result<i128, MotiveError> {
    if dim == 0 || dim > MAX_DIM {
        return Err(MotiveError::DimensionOutOfRange(dim));
    }
    let d = i128::from(degree);
    let power = d
        .checked_pow(dim as u32)
        .ok_or(MotiveError::DimensionOutOfRange(dim))?;
    Ok(d * (i128::from(dim) + 2 - power))
}

/// s_N of a smooth projective quadric of dimension N: 2(N+2) − 2^{N+1}.
pub fn milnor_number_quadric(dim: u64) -> Result<i128, MotiveError> {
    milnor_number_hypersurface(dim, 2)
}

/// Whether a variety of dimension p^n − 1 with Milnor number s is a
/// ν_n-variety, i.e. p² ∤ s.
pub fn nu_variety_check(p: u64, n: u32, dim: u64, s: i128) -> Result<bool, MotiveError> {
    check_prime(p)?;
    let expected = p
        .checked_pow(n)
        .ok_or(MotiveError::InvalidHeight(n))?
        - 1;
    if dim != expected {
        return Err(MotiveError::DimensionMismatch { dim, expected });
    }
    let p2 = i128::from(p * p);
    Ok(s % p2 != 0)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "theory", rename_all = "snake_case")]
pub enum EulerTheory {
    /// Topological K⁰ with its Bott element v_1.
    K0,
    Morava { p: u64, n: u32 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VarietyDescriptor {
    pub dim: u64,
    pub cellular: bool,
    pub milnor_number: Option<i128>,
    /// Σ (−1)^i dim H^i(X, O_X), if known.
    pub holomorphic_euler: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum EulerReport {
    /// Exact value in the coefficient ring.
    Element { value: String },
    /// Mod p the Euler characteristic is u·v_n·s with u a p-local unit; u is
    /// left unspecified.
    Congruence {
        s: i128,
        s_mod_p: i128,
        s_mod_p2: i128,
        invertible_mod_p: bool,
        nu_verdict: bool,
    },
    ZeroModP,
    /// dim is a multiple of p^n − 1 other than p^n − 1 itself.
    Undetermined { reason: String },
}

pub fn euler_char(theory: EulerTheory, x: &VarietyDescriptor) -> Result<EulerReport, MotiveError> {
    match theory {
        EulerTheory::K0 => {
            let chi = match (x.holomorphic_euler, x.cellular) {
                (Some(c), _) => c,
                (None, true) => 1,
                (None, false) => {
                    return Err(MotiveError::InsufficientData(
                        "holomorphic Euler characteristic of a non-cellular variety".into(),
                    ))
                }
            };
            let e = u32::try_from(x.dim)
                .ok()
                .filter(|&e| e <= 255)
                .ok_or(MotiveError::DimensionOutOfRange(x.dim))?;
            let value = MultiPoly::var(1).pow(e).scale(&Rational::from_int(chi));
            Ok(EulerReport::Element {
                value: value.to_string(),
            })
        }
        EulerTheory::Morava { p, n } => {
            check_prime(p)?;
            if n == 0 {
                return Err(MotiveError::InvalidHeight(0));
            }
            let step = p.checked_pow(n).ok_or(MotiveError::InvalidHeight(n))? - 1;
            if !x.dim.is_multiple_of(step) {
                return Ok(EulerReport::ZeroModP);
            }
            if x.dim != step {
                return Ok(EulerReport::Undetermined {
                    reason: format!("dim {} is a proper multiple of p^n - 1 = {step}", x.dim),
                });
            }
            let s = x.milnor_number.ok_or_else(|| {
                MotiveError::InsufficientData("Milnor number is required at dim = p^n - 1".into())
            })?;
            let p = i128::from(p);
            Ok(EulerReport::Congruence {
                s,
                s_mod_p: s.rem_euclid(p),
                s_mod_p2: s.rem_euclid(p * p),
                invertible_mod_p: s % p != 0,
                nu_verdict: s % (p * p) != 0,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::TruncatedSeries;

    /// Oracle: c(T_X) = (1+h)^{N+2}/(1+2h) mod h^{N+1}, then Newton's
    /// identities turn the Chern classes into the N-th power sum; deg h^N = 2.
    fn newton_oracle(dim: usize) -> Rational {
        let bound = dim;
        let h = TruncatedSeries::from_rationals(bound, &[Rational::one(), Rational::one()]);
        let num = h.pow((dim + 2) as u32);
        let den = TruncatedSeries::from_rationals(bound, &[Rational::one(), Rational::from_int(2)]);
        let c = num.mul(&den.inverse().unwrap());
        let e = |k: usize| c.coeff(k).as_constant().unwrap_or_else(Rational::zero);
        // p_k = Σ_{i=1}^{k-1} (−1)^{i−1} e_i p_{k−i} + (−1)^{k−1} k e_k
        let mut ps = vec![Rational::zero(); dim + 1];
        for k in 1..=dim {
            let mut acc = Rational::zero();
            for i in 1..k {
                let t = e(i) * ps[k - i].clone();
                acc = if i % 2 == 1 { acc + t } else { acc - t };
            }
            let last = e(k) * Rational::from_int(k as i64);
            acc = if k % 2 == 1 { acc + last } else { acc - last };
            ps[k] = acc;
        }
        ps[dim].clone() * Rational::from_int(2)
    }

    #[test]
    fn milnor_examples() {
        assert_eq!(milnor_number_quadric(1).unwrap(), 2);
        assert_eq!(milnor_number_quadric(2).unwrap(), 0);
        assert_eq!(milnor_number_quadric(3).unwrap(), -6);
        assert_eq!(milnor_number_hypersurface(1, 1).unwrap(), 2);
    }

    #[test]
    fn milnor_matches_newton_oracle() {
        for n in 1..=16u64 {
            assert_eq!(
                Rational::from_bigint(milnor_number_quadric(n).unwrap().into()),
                newton_oracle(n as usize),
                "N = {n}"
            );
        }
    }

    #[test]
    fn nu_checks() {
        assert!(nu_variety_check(2, 2, 3, -6).unwrap());
        assert!(nu_variety_check(2, 1, 1, 2).unwrap());
        assert!(!nu_variety_check(2, 1, 1, 4).unwrap());
        assert!(matches!(
            nu_variety_check(2, 2, 4, 0),
            Err(MotiveError::DimensionMismatch { dim: 4, expected: 3 })
        ));
        for n in 1..=4u32 {
            let dim = (1u64 << n) - 1;
            let s = milnor_number_quadric(dim).unwrap();
            assert!(nu_variety_check(2, n, dim, s).unwrap());
        }
    }

    #[test]
    fn euler_reports() {
        let cell5 = VarietyDescriptor {
            dim: 5,
            cellular: true,
            milnor_number: None,
            holomorphic_euler: None,
        };
        assert_eq!(
            euler_char(EulerTheory::K0, &cell5).unwrap(),
            EulerReport::Element {
                value: "v1^5".into()
            }
        );
        let quad3 = VarietyDescriptor {
            dim: 3,
            cellular: true,
            milnor_number: Some(-6),
            holomorphic_euler: None,
        };
        assert_eq!(
            euler_char(EulerTheory::Morava { p: 2, n: 2 }, &quad3).unwrap(),
            EulerReport::Congruence {
                s: -6,
                s_mod_p: 0,
                s_mod_p2: 2,
                invertible_mod_p: false,
                nu_verdict: true,
            }
        );
        let four = VarietyDescriptor { dim: 4, ..quad3.clone() };
        assert_eq!(
            euler_char(EulerTheory::Morava { p: 2, n: 2 }, &four).unwrap(),
            EulerReport::ZeroModP
        );
        let six = VarietyDescriptor { dim: 6, ..quad3.clone() };
        assert!(matches!(
            euler_char(EulerTheory::Morava { p: 2, n: 2 }, &six).unwrap(),
            EulerReport::Undetermined { .. }
        ));
        let bare = VarietyDescriptor {
            milnor_number: None,
            ..quad3
        };
        assert!(matches!(
            euler_char(EulerTheory::Morava { p: 2, n: 2 }, &bare),
            Err(MotiveError::InsufficientData(_))
        ));
        let noncell = VarietyDescriptor {
            cellular: false,
            ..cell5
        };
        assert!(matches!(
            euler_char(EulerTheory::K0, &noncell),
            Err(MotiveError::InsufficientData(_))
        ));
    }
}
