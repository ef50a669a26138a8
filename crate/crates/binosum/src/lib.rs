//! Exact arithmetic for the weighted binomial sum
//!
//! ```text
//! f_m(r) = 2^-r * sum_{i=0}^{r} C(m, i)
//! ```
//!
//! Everything here is computed over arbitrary-precision integers and
//! rationals; there is no floating point anywhere in the evaluation paths.
//! Quantities that are genuinely irrational (square roots, pi) are handled as
//! certified enclosures: exact rational lower/upper pairs that are known to
//! bracket the true value.
//!
//! The crate splits into the arithmetic core ([`binomial`], [`maxima`]), the
//! stepwise ratio chains used to compare consecutive values of `f`
//! ([`chains`]), integer-polynomial certificates for the chain coefficients
//! ([`polys`]), certified asymptotic bounds ([`asymptotics`]), a small
//! Reed-Muller parameter application ([`reed_muller`]), and reporting/CLI
//! plumbing ([`report`], [`cli`]).

pub mod asymptotics;
pub mod binomial;
pub mod chains;
pub mod cli;
pub mod enclosure;
pub mod maxima;
pub mod polys;
pub mod reed_muller;
pub mod report;

use num_bigint::BigInt;
use num_traits::One;

/// Exact rational number with arbitrary-precision numerator and denominator.
pub type Rational = num_rational::Ratio<BigInt>;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// An argument fell outside the domain of the requested operation.
    #[error("{what} out of range: got {got}, expected {expected}")]
    OutOfRange {
        what: &'static str,
        got: String,
        expected: String,
    },
    /// The closed-form sandwich bounds exclude a handful of small `m`.
    #[error("m = {0} is not covered by the sandwich bounds (m must avoid 0, 1, 3, 6, 9, 12)")]
    ExcludedM(u64),
    /// An enclosure comparison stayed undecided at the configured precision cap.
    #[error("comparison undecided at the precision cap of {cap_bits} bits")]
    PrecisionCap { cap_bits: u32 },
}

impl Error {
    pub(crate) fn out_of_range(
        what: &'static str,
        got: impl std::fmt::Display,
        expected: impl Into<String>,
    ) -> Error {
        Error::OutOfRange {
            what,
            got: got.to_string(),
            expected: expected.into(),
        }
    }
}

/// `2^e` as a big integer.
pub(crate) fn pow2(e: u64) -> BigInt {
    BigInt::one() << e
}

/// Renders a rational as `n` when the denominator is one and `n/d` otherwise.
///
/// This is what `Ratio`'s own `Display` does today, but table output and
/// golden tests depend on the exact shape, so the crate pins it down itself.
pub fn fmt_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Rational from an integer pair, mostly for tests and frozen constants.
pub fn rational(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_formatting_matches_table_conventions() {
        assert_eq!(fmt_rational(&rational(21, 4)), "21/4");
        assert_eq!(fmt_rational(&rational(8, 1)), "8");
        assert_eq!(fmt_rational(&rational(6, 4)), "3/2");
        assert_eq!(fmt_rational(&rational(-3, 6)), "-1/2");
    }

    #[test]
    fn pow2_small_values() {
        assert_eq!(pow2(0), BigInt::from(1));
        assert_eq!(pow2(10), BigInt::from(1024));
    }
}
