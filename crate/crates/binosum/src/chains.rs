//! Stepwise ratio chains for comparing `s_m(r)` against `C(m, r+1)`.
//!
//! Writing `X_i = (r - i + 1) / (m - r + i)`, the descending binomial ratios
//! `C(m, r-i) / C(m, r-i+1)` telescope into products of the `X_i`, so the
//! comparison `s_m(r) <> C(m, r+1)` can be carried out one factor at a time.
//! Two equivalent partial forms are useful:
//!
//! * forward: `T_j = 1 + X_1 + X_1 X_2 + ... + X_1 ... X_j`,
//! * backward: `S_r = 1`, `S_j = 1 + X_{j+1} S_{j+1}`, with `S_0 = T_r`.
//!
//! Since `X_0 = (r + 1) / (m - r)` is the reciprocal of the coefficient ratio
//! `c_m(r)`, the full comparison reads `s_m(r) <> C(m, r+1)` iff
//! `T_r <> 1 / X_0`. Truncations give one-sided tests: `T_j > 1/X_0` already
//! certifies `s_m(r) > C(m, r+1)` (the dropped terms are positive), and the
//! backward form supports the same kind of early stopping from the other end.

use num_bigint::BigInt;
use num_traits::One;
use rayon::prelude::*;

use crate::binomial::SumRow;
use crate::report::{Failure, ReportBuilder, VerificationReport};
use crate::{Error, Rational, Result};

/// The ratios `X_0..=X_r` for one `(m, r)` pair, `0 <= r < m`.
///
/// `X_i = (r - i + 1) / (m - r + i)`: all positive, strictly decreasing in
/// `i`, and the last ratio is always `X_r = 1/m`.
#[derive(Clone, Debug)]
pub struct ChainContext {
    m: u64,
    r: u64,
    xs: Vec<Rational>,
}

impl ChainContext {
    pub fn new(m: u64, r: u64) -> Result<ChainContext> {
        if r >= m {
            return Err(Error::out_of_range("r", r, format!("0..{m}")));
        }
        let xs = (0..=r)
            .map(|i| Rational::new(BigInt::from(r - i + 1), BigInt::from(m - r + i)))
            .collect();
        Ok(ChainContext { m, r, xs })
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn r(&self) -> u64 {
        self.r
    }

    /// `X_i` for `0 <= i <= r`.
    pub fn x(&self, i: u64) -> &Rational {
        &self.xs[i as usize]
    }

    /// `1 / X_0 = (m - r) / (r + 1)`, the comparison threshold.
    pub fn x0_inv(&self) -> Rational {
        Rational::new(BigInt::from(self.m - self.r), BigInt::from(self.r + 1))
    }

    /// Forward partial chain `T_j`, `0 <= j <= r`.
    pub fn t(&self, j: u64) -> Result<Rational> {
        if j > self.r {
            return Err(Error::out_of_range("j", j, format!("0..={}", self.r)));
        }
        let mut prod = Rational::one();
        let mut acc = Rational::one();
        for i in 1..=j {
            prod *= self.x(i);
            acc += &prod;
        }
        Ok(acc)
    }

    /// All forward partials `T_0..=T_r` in one pass.
    pub fn t_chain(&self) -> Vec<Rational> {
        let mut out = Vec::with_capacity(self.r as usize + 1);
        let mut prod = Rational::one();
        let mut acc = Rational::one();
        out.push(acc.clone());
        for i in 1..=self.r {
            prod *= self.x(i);
            acc += &prod;
            out.push(acc.clone());
        }
        out
    }

    /// Backward partial `S_j`, `0 <= j <= r`, from the recurrence
    /// `S_r = 1`, `S_j = 1 + X_{j+1} S_{j+1}`.
    pub fn s(&self, j: u64) -> Result<Rational> {
        if j > self.r {
            return Err(Error::out_of_range("j", j, format!("0..={}", self.r)));
        }
        let mut acc = Rational::one();
        for i in (j + 1..=self.r).rev() {
            acc = Rational::one() + self.x(i) * acc;
        }
        Ok(acc)
    }

    /// All backward partials `S_0..=S_r` in one pass, cross-checked against
    /// the forward chain: the two constructions must meet at `S_0 = T_r`.
    pub fn s_chain(&self) -> Vec<Rational> {
        let t_r = self.t(self.r).expect("r is in range");
        self.s_chain_with(&t_r)
    }

    fn s_chain_with(&self, t_r: &Rational) -> Vec<Rational> {
        let mut rev = Vec::with_capacity(self.r as usize + 1);
        let mut acc = Rational::one();
        rev.push(acc.clone());
        for i in (1..=self.r).rev() {
            acc = Rational::one() + self.x(i) * acc;
            rev.push(acc.clone());
        }
        rev.reverse();
        assert_eq!(
            &rev[0], t_r,
            "backward chain failed to reproduce T_r at m={}, r={}",
            self.m, self.r
        );
        rev
    }
}

/// Which of the two equivalent chain forms to test.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StratSide {
    /// Forward: `sum_{i=0}^{j} C(m, r-i) > C(m, r+1)  iff  T_j > 1/X_0`
    /// holds as a one-sided certificate; the exact equivalence is at `j = r`.
    Forward,
    /// Backward: `s_m(r) < C(m, r+1)  iff  S_0 < 1/X_0`.
    Backward,
}

/// Spot-check of one chain equivalence.
///
/// * `Forward`: compares `sum_{i<=j} C(m, r-i)` against `C(m, r+1)` and
///   `T_j` against `1/X_0`; returns whether the two comparisons agree as
///   certificates (a strict `>` on the truncated chain side must imply the
///   binomial `>`, and at `j = r` the two orderings must coincide).
/// * `Backward`: compares `s_m(r)` against `C(m, r+1)` and `S_j`-based
///   `S_0` against `1/X_0`; `j` is ignored beyond domain checking.
pub fn strat_check(m: u64, r: u64, j: u64, side: StratSide) -> Result<bool> {
    let ctx = ChainContext::new(m, r)?;
    if j > r {
        return Err(Error::out_of_range("j", j, format!("0..={r}")));
    }
    let row = SumRow::new(m);
    let threshold = ctx.x0_inv();
    let c_next = row.binom_at(r + 1);
    match side {
        StratSide::Forward => {
            let head: BigInt = (0..=j).map(|i| row.binom_at(r - i)).sum();
            let t_j = ctx.t(j)?;
            let binom_gt = head > c_next;
            let chain_gt = t_j > threshold;
            // The truncated chain can only certify ">": dropped terms are
            // positive, so chain ">" forces binomial ">". At j = r the two
            // sides are equal scalings of each other and must agree exactly.
            let ok = if j == r {
                binom_gt == chain_gt && (head < c_next) == (t_j < threshold)
            } else {
                !chain_gt || binom_gt
            };
            Ok(ok)
        }
        StratSide::Backward => {
            let s_0 = ctx.s(0)?;
            Ok((row.sum(r) < &c_next) == (s_0 < threshold))
        }
    }
}

/// Sweeps both chain forms over all `0 <= r < m`, `m_lo..=m_hi`, `m >= 2`:
/// the forward certificates at every truncation depth, the exact agreement
/// at full depth, and the backward equivalence, plus the `S_0 = T_r` meet
/// (asserted inside the chain construction).
pub fn verify_chain_equivalences(m_lo: u64, m_hi: u64) -> Result<VerificationReport> {
    if m_lo > m_hi {
        return Err(Error::out_of_range(
            "m range",
            format!("{m_lo}..{m_hi}"),
            "lo <= hi",
        ));
    }
    let mut builder = ReportBuilder::new("strat", format!("m={m_lo}..{m_hi}"));
    let results: Vec<(u64, Vec<Failure>)> = (m_lo.max(2)..=m_hi)
        .into_par_iter()
        .map(sweep_one_m)
        .collect();
    for (checked, failures) in results {
        builder.record(checked, failures);
    }
    Ok(builder.finish())
}

fn sweep_one_m(m: u64) -> (u64, Vec<Failure>) {
    let row = SumRow::new(m);
    let mut checked = 0u64;
    let mut failures = Vec::new();
    for r in 0..m {
        let ctx = ChainContext::new(m, r).expect("r < m");
        let threshold = ctx.x0_inv();
        let c_next = row.binom_at(r + 1);
        // Forward: walk j upward, keeping the head sum and T_j incrementally.
        let mut head = row.binom_at(r);
        let mut prod = Rational::one();
        let mut t_j = Rational::one();
        let mut t_r = Rational::one();
        for j in 0..=r {
            if j > 0 {
                prod *= ctx.x(j);
                t_j += &prod;
                head += row.binom_at(r - j);
            }
            t_r = t_j.clone();
            let binom_gt = head > c_next;
            let chain_gt = t_j > threshold;
            checked += 1;
            let ok = if j == r {
                binom_gt == chain_gt && (head < c_next) == (t_j < threshold)
            } else {
                !chain_gt || binom_gt
            };
            if !ok {
                failures.push(Failure {
                    witness: format!("m={m}, r={r}, j={j}"),
                    expected: "forward chain certificate agrees with binomial sum".into(),
                    actual: format!(
                        "T_j {} 1/X_0 but head {} C(m, r+1)",
                        cmp_sym(&t_j, &threshold),
                        cmp_sym(
                            &Rational::from(head.clone()),
                            &Rational::from(c_next.clone())
                        )
                    ),
                });
            }
        }
        // Backward: S_0 must equal T_r, and the S-form equivalence must hold.
        let s_chain = ctx.s_chain_with(&t_r);
        let s_0 = &s_chain[0];
        checked += 1;
        let ok = (row.sum(r) < &c_next) == (*s_0 < threshold);
        if !ok {
            failures.push(Failure {
                witness: format!("m={m}, r={r}"),
                expected: "backward chain agrees with s_m(r) vs C(m, r+1)".into(),
                actual: format!(
                    "S_0 {} 1/X_0 but s_m(r) {} C(m, r+1)",
                    cmp_sym(s_0, &threshold),
                    cmp_sym(
                        &Rational::from(row.sum(r).clone()),
                        &Rational::from(c_next.clone())
                    )
                ),
            });
        }
    }
    (checked, failures)
}

fn cmp_sym(a: &Rational, b: &Rational) -> &'static str {
    match a.cmp(b) {
        std::cmp::Ordering::Less => "<",
        std::cmp::Ordering::Equal => "=",
        std::cmp::Ordering::Greater => ">",
    }
}
