//! Exact arithmetic kernel: rationals, graded polynomials, truncated series.

mod multiseries;
mod poly;
mod rational;
mod series;
pub mod snf;

pub use multiseries::{
    compose_into, substitute2, to_univariate, BiTruncatedPoly, FormalMonomial, MultiSeries,
};
pub use poly::{GradedRing, Monomial, MultiPoly, MAX_VARS};
pub use rational::{inverse_mod, Rational};
pub use series::{series_compose, series_reversion, SeriesError, TruncatedSeries};

/// Trial-division primality; the primes used here are tiny.
pub fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}
