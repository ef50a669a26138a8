//! Binomial coefficients, partial row sums, and the objective
//! `f_m(r) = 2^-r * s_m(r)` where `s_m(r) = sum_{i=0}^{r} C(m, i)`.
//!
//! All quantities are exact. A whole row of partial sums is built
//! incrementally via `C(m, i+1) = C(m, i) * (m - i) / (i + 1)`, so scanning a
//! row costs one multiplication and one exact division per entry.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::{pow2, Error, Rational, Result};

/// `C(m, i)`, taken to be zero outside `0 <= i <= m`.
pub fn binom(m: u64, i: i64) -> BigInt {
    if i < 0 || i as u64 > m {
        return BigInt::zero();
    }
    let i = (i as u64).min(m - i as u64);
    let mut acc = BigInt::one();
    for t in 0..i {
        acc = acc * (m - t) / (t + 1);
    }
    acc
}

/// One row of partial sums `s_m(r)` for `r = 0..=m+1`.
///
/// The two conventions at the ends are part of the contract:
/// `s_m(-1) = 0` (handled by [`partial_sum`], not stored) and
/// `s_m(m+1) = s_m(m) = 2^m`, so that `f_m(m+1) = 2^m / 2^(m+1) = 1/2`
/// exists as a convenient sentinel one past the row.
#[derive(Clone, Debug)]
pub struct SumRow {
    m: u64,
    sums: Vec<BigInt>,
}

impl SumRow {
    pub fn new(m: u64) -> SumRow {
        let mut sums = Vec::with_capacity(m as usize + 2);
        let mut c = BigInt::one(); // C(m, r) while scanning
        let mut acc = BigInt::one(); // s_m(0)
        sums.push(acc.clone());
        for r in 0..m {
            c = c * (m - r) / (r + 1);
            acc += &c;
            sums.push(acc.clone());
        }
        sums.push(acc.clone()); // s_m(m+1) = s_m(m) = 2^m
        SumRow { m, sums }
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    /// `s_m(r)` for `0 <= r <= m+1`.
    pub fn sum(&self, r: u64) -> &BigInt {
        &self.sums[r as usize]
    }

    /// `C(m, r)` recovered from adjacent partial sums.
    pub fn binom_at(&self, r: u64) -> BigInt {
        if r == 0 {
            BigInt::one()
        } else {
            self.sum(r) - self.sum(r - 1)
        }
    }

    /// `f_m(r) = s_m(r) / 2^r` for `0 <= r <= m+1`.
    pub fn f_value(&self, r: u64) -> Rational {
        Rational::new(self.sum(r).clone(), pow2(r))
    }

    /// `t_m(r) = s_m(r+1) / s_m(r)` for `0 <= r <= m`.
    pub fn t_ratio(&self, r: u64) -> Rational {
        Rational::new(self.sum(r + 1).clone(), self.sum(r).clone())
    }

    /// Ordering of `s_m(r)` against `C(m, r+1)`, for `0 <= r < m`.
    ///
    /// Since `C(m, r+1) = s_m(r+1) - s_m(r)` this is the ordering of
    /// `2 * s_m(r)` against `s_m(r+1)`, which avoids materializing the
    /// coefficient. `Less` means `f_m(r) < f_m(r+1)`, `Equal` means the two
    /// values tie, `Greater` means the sequence has started to descend.
    pub fn step_compare(&self, r: u64) -> Ordering {
        (self.sum(r) << 1u32).cmp(self.sum(r + 1))
    }
}

/// `s_m(r)` as a standalone query, `-1 <= r <= m+1`.
pub fn partial_sum(m: u64, r: i64) -> Result<BigInt> {
    if r < -1 || r > m as i64 + 1 {
        return Err(Error::out_of_range("r", r, format!("-1..={}", m + 1)));
    }
    if r == -1 {
        return Ok(BigInt::zero());
    }
    Ok(SumRow::new(m).sum(r as u64).clone())
}

/// `f_m(r)` as a standalone query, `0 <= r <= m+1`.
pub fn f_value(m: u64, r: u64) -> Result<Rational> {
    if r > m + 1 {
        return Err(Error::out_of_range("r", r, format!("0..={}", m + 1)));
    }
    Ok(SumRow::new(m).f_value(r))
}

/// The pair `(t_m(r), c_m(r))` driving the stepwise comparison of `f`:
/// `t_m(r) = s_m(r+1) / s_m(r)` and `c_m(r) = (m - r) / (r + 1)`, the ratio
/// of consecutive binomial coefficients. `0 <= r <= m`.
///
/// `t` is squeezed between `1` and `1 + c` (a mediant-style bound), and
/// `f_m(r+1) >= f_m(r)` exactly when `t_m(r) >= 2`.
pub fn step_ratios(m: u64, r: u64) -> Result<(Rational, Rational)> {
    if r > m {
        return Err(Error::out_of_range("r", r, format!("0..={m}")));
    }
    let row = SumRow::new(m);
    let c = Rational::new(BigInt::from(m - r), BigInt::from(r + 1));
    Ok((row.t_ratio(r), c))
}
