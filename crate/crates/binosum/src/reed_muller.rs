//! Reed-Muller parameter triples and the figure of merit that ties them to
//! the weighted binomial sum.
//!
//! The order-`r` Reed-Muller code RM(r, m) has length `n = 2^m`, dimension
//! `k = sum_{i=0}^{r} C(m, i)`, and minimum distance `d = 2^(m-r)`. Its
//! merit `k d / n` is exactly `f_m(r)`, so maximizing the merit over the
//! order is the same problem as locating the peak of `f_m`. Parameters only;
//! no generator matrices, encoding, or decoding live here.

use std::collections::BTreeSet;

use num_bigint::BigInt;

use crate::binomial::SumRow;
use crate::maxima::argmax_f;
use crate::{pow2, Error, Rational, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RMCode {
    pub r: u64,
    pub m: u64,
    /// Length `2^m`.
    pub n: BigInt,
    /// Dimension `sum_{i<=r} C(m, i)`.
    pub k: BigInt,
    /// Minimum distance `2^(m-r)`.
    pub d: BigInt,
}

/// The parameter triple of RM(r, m), `0 <= r <= m`.
pub fn rm_code(r: u64, m: u64) -> Result<RMCode> {
    if r > m {
        return Err(Error::out_of_range("r", r, format!("0..={m}")));
    }
    let row = SumRow::new(m);
    Ok(RMCode {
        r,
        m,
        n: pow2(m),
        k: row.sum(r).clone(),
        d: pow2(m - r),
    })
}

/// `k d / n`, the rate-distance product.
pub fn merit(code: &RMCode) -> Rational {
    Rational::new(&code.k * &code.d, code.n.clone())
}

/// The orders maximizing the merit for a given `m` — exactly the maximizer
/// set of `f_m`.
pub fn best_order(m: u64) -> BTreeSet<u64> {
    argmax_f(m)
}
