use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Arbitrary-precision rational number, always kept in lowest terms with a
/// positive denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Rational(BigRational);

impl Rational {
    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Rational(BigRational::from_integer(n))
    }

    /// Panics if `den == 0`.
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn recip(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Rational(self.0.recip()))
        }
    }

    /// True when the denominator is prime to `p`, i.e. the value lies in ℤ_(p).
    pub fn is_p_integral(&self, p: u64) -> bool {
        !(self.denom() % BigInt::from(p)).is_zero()
    }

    /// Image in 𝔽_p of a p-integral rational, as a residue in `0..p`.
    /// Returns `None` when the denominator is divisible by `p`.
    pub fn mod_p(&self, p: u64) -> Option<u64> {
        if !self.is_p_integral(p) {
            return None;
        }
        let pb = BigInt::from(p);
        let num = self.numer().mod_floor(&pb).to_u64()?;
        let den = self.denom().mod_floor(&pb).to_u64()?;
        Some(num * inverse_mod(den, p)? % p)
    }

    /// Exact p-adic valuation; `None` for zero.
    pub fn p_valuation(&self, p: u64) -> Option<i64> {
        if self.is_zero() {
            return None;
        }
        let pb = BigInt::from(p);
        let count = |mut n: BigInt| {
            let mut v = 0i64;
            while (&n % &pb).is_zero() {
                n /= &pb;
                v += 1;
            }
            v
        };
        Some(count(self.numer().abs()) - count(self.denom().clone()))
    }

    pub fn to_i64(&self) -> Option<i64> {
        if self.is_integer() {
            self.numer().to_i64()
        } else {
            None
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Rational::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }
}

/// Inverse of `a` modulo prime `p`, if it exists.
pub fn inverse_mod(a: u64, p: u64) -> Option<u64> {
    let (mut old_r, mut r) = (a as i128 % p as i128, p as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(p as i128) as u64)
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_int(n)
    }
}

impl From<BigInt> for Rational {
    fn from(n: BigInt) -> Self {
        Rational::from_bigint(n)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident) => {
        impl<'a> $tr<&'a Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
        impl $tr for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(self.0.$method(rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, rhs: &Rational) {
        self.0 += &rhs.0;
    }
}

impl SubAssign<&Rational> for Rational {
    fn sub_assign(&mut self, rhs: &Rational) {
        self.0 -= &rhs.0;
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lowest_terms() {
        let r = Rational::new(6, -4);
        assert_eq!(r.numer(), &BigInt::from(-3));
        assert_eq!(r.denom(), &BigInt::from(2));
        assert_eq!(r.to_string(), "-3/2");
    }

    #[test]
    fn p_integrality() {
        let r = Rational::new(5, 4);
        assert!(!r.is_p_integral(2));
        assert!(r.is_p_integral(3));
        assert_eq!(r.mod_p(3), Some(2)); // 5 * 4^{-1} = 2 * 1 = 2 mod 3
        assert_eq!(r.mod_p(2), None);
        assert_eq!(Rational::new(-1, 1).mod_p(5), Some(4));
    }

    #[test]
    fn valuation() {
        assert_eq!(Rational::new(12, 5).p_valuation(2), Some(2));
        assert_eq!(Rational::new(3, 8).p_valuation(2), Some(-3));
        assert_eq!(Rational::zero().p_valuation(2), None);
    }

    #[test]
    fn modular_inverse() {
        assert_eq!(inverse_mod(3, 7), Some(5));
        assert_eq!(inverse_mod(0, 7), None);
        assert_eq!(inverse_mod(4, 8), None);
    }
}
