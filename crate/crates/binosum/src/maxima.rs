//! Where `f_m` peaks.
//!
//! For every `m >= 2` the sequence `f_m(0), ..., f_m(m)` climbs strictly,
//! peaks once (with a tie only at `m = 1`), and then descends strictly. The
//! peak sits at `r0(m) = floor(m/3) + 1`, except for six small `m` where the
//! rounding works out differently: at `m` in {0, 3, 6, 9, 12} the maximum is
//! at `r0 - 1`, and at `m = 1` both `r = 0` and `r = 1` attain it.
//!
//! Everything in this module is an exact integer scan; the verifiers
//! re-derive the peaks from scratch and compare them against the closed form.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::binomial::SumRow;
use crate::report::{Failure, ReportBuilder, VerificationReport};
use crate::{pow2, Error, Result};

/// The values of `m` whose maximum sits at `r0(m) - 1` instead of `r0(m)`.
pub const EXCEPTIONAL_M: [u64; 5] = [0, 3, 6, 9, 12];

pub fn is_exceptional(m: u64) -> bool {
    EXCEPTIONAL_M.contains(&m)
}

/// The generic peak location `floor(m/3) + 1`.
pub fn r0(m: u64) -> u64 {
    m / 3 + 1
}

/// All `r` in `0..=m` attaining `max_r f_m(r)`, by exact scan.
pub fn argmax_f(m: u64) -> BTreeSet<u64> {
    argmax_with_row(&SumRow::new(m))
}

pub(crate) fn argmax_with_row(row: &SumRow) -> BTreeSet<u64> {
    let m = row.m();
    // Compare f(r) = s(r)/2^r against the best so far by keeping the best
    // numerator left-shifted to the current denominator. Once the shifted
    // best exceeds 2^m no later r can win, because s(r') <= 2^m.
    let mut best = BTreeSet::from([0u64]);
    let mut shifted_best: BigInt = row.sum(0).clone();
    let cap = pow2(m);
    for r in 1..=m {
        shifted_best <<= 1u32;
        if shifted_best > cap {
            break;
        }
        match row.sum(r).cmp(&shifted_best) {
            Ordering::Greater => {
                best.clear();
                best.insert(r);
                shifted_best = row.sum(r).clone();
            }
            Ordering::Equal => {
                best.insert(r);
            }
            Ordering::Less => {}
        }
    }
    best
}

/// The crossover index `r*`: the least `r` with `t_m(r) <= 2`, i.e. the first
/// place the partial sums stop doubling. Defined for `m >= 2`; `f_m` takes its
/// maximum at `r*`.
pub fn crossover_rstar(m: u64) -> Result<u64> {
    if m < 2 {
        return Err(Error::out_of_range("m", m, "2.."));
    }
    Ok(crossover_with_row(&SumRow::new(m)))
}

pub(crate) fn crossover_with_row(row: &SumRow) -> u64 {
    let m = row.m();
    for r in 0..=m {
        // t(r) <= 2  <=>  s(r+1) <= 2 s(r)
        if row.sum(r + 1) <= &(row.sum(r) << 1u32) {
            return r;
        }
    }
    unreachable!("t_m(m) = 1 <= 2, so the scan always stops")
}

/// Ordering of `s_m(r)` against `C(m, r+1)` for `0 <= r < m`; `Less` means
/// `f_m(r) < f_m(r+1)`. See [`SumRow::step_compare`].
pub fn step_compare(m: u64, r: u64) -> Result<Ordering> {
    if r >= m {
        return Err(Error::out_of_range("r", r, format!("0..{m}")));
    }
    Ok(SumRow::new(m).step_compare(r))
}

/// Shape report for a single row: the crossover, the maximizer set, the
/// closed-form prediction, and any index where strict climb/descent fails.
#[derive(Clone, Debug)]
pub struct UnimodalReport {
    pub m: u64,
    pub r_star: u64,
    pub maximizers: BTreeSet<u64>,
    pub r0: u64,
    pub is_exceptional: bool,
    /// Indices `r` where the expected strict behavior of the step
    /// `f(r) -> f(r+1)` fails, or maximizers outside `{r*, r*+1}`.
    /// Empty in every verified range.
    pub violations: Vec<u64>,
}

/// Checks one row for the strict-climb / single-peak / strict-descent shape.
/// Requires `m >= 2` (below that "unimodal" carries no content).
pub fn verify_unimodal(m: u64) -> Result<UnimodalReport> {
    if m < 2 {
        return Err(Error::out_of_range("m", m, "2.."));
    }
    let row = SumRow::new(m);
    let r_star = crossover_with_row(&row);
    let maximizers = argmax_with_row(&row);
    let mut violations = Vec::new();
    for r in 0..r_star {
        if row.step_compare(r) != Ordering::Less {
            violations.push(r);
        }
    }
    for r in (r_star + 1)..m {
        if row.step_compare(r) != Ordering::Greater {
            violations.push(r);
        }
    }
    for &r in &maximizers {
        if r != r_star && r != r_star + 1 {
            violations.push(r);
        }
    }
    Ok(UnimodalReport {
        m,
        r_star,
        maximizers,
        r0: r0(m),
        is_exceptional: is_exceptional(m),
        violations,
    })
}

pub(crate) fn fmt_set(set: &BTreeSet<u64>) -> String {
    let inner: Vec<String> = set.iter().map(u64::to_string).collect();
    format!("{{{}}}", inner.join(", "))
}

/// The maximizer set the closed form predicts for a given `m`.
pub fn predicted_argmax(m: u64) -> BTreeSet<u64> {
    if m == 1 {
        return BTreeSet::from([0, 1]);
    }
    if is_exceptional(m) {
        BTreeSet::from([r0(m) - 1])
    } else {
        BTreeSet::from([r0(m)])
    }
}

fn validated_range(lo: u64, hi: u64, what: &'static str) -> Result<()> {
    if lo > hi {
        return Err(Error::out_of_range(what, format!("{lo}..{hi}"), "lo <= hi"));
    }
    Ok(())
}

/// Sweeps `m_lo..=m_hi` re-deriving every maximizer set by exact scan and
/// comparing it with the closed-form prediction.
pub fn verify_argmax_range(m_lo: u64, m_hi: u64) -> Result<VerificationReport> {
    validated_range(m_lo, m_hi, "m range")?;
    let mut builder = ReportBuilder::new("theorem1", format!("m={m_lo}..{m_hi}"));
    let failures: Vec<Failure> = (m_lo..=m_hi)
        .into_par_iter()
        .filter_map(|m| {
            let actual = argmax_f(m);
            let expected = predicted_argmax(m);
            if actual == expected {
                None
            } else {
                Some(Failure {
                    witness: format!("m={m}"),
                    expected: fmt_set(&expected),
                    actual: fmt_set(&actual),
                })
            }
        })
        .collect();
    builder.record(m_hi - m_lo + 1, failures);
    Ok(builder.finish())
}

/// Sweeps the strict climb `f_m(r) < f_m(r+1)` for `r < r0(m)`, skipping the
/// six `m` where the climb up to `r0` does not hold in the strict form.
pub fn verify_increasing_range(m_lo: u64, m_hi: u64) -> Result<VerificationReport> {
    validated_range(m_lo, m_hi, "m range")?;
    let mut builder = ReportBuilder::new("lower", format!("m={m_lo}..{m_hi}"));
    let results: Vec<(u64, Vec<Failure>)> = (m_lo..=m_hi)
        .into_par_iter()
        .filter(|&m| m >= 2 && !is_exceptional(m))
        .map(|m| {
            let row = SumRow::new(m);
            let mut failures = Vec::new();
            let top = r0(m);
            for r in 0..top {
                if row.step_compare(r) != Ordering::Less {
                    failures.push(Failure {
                        witness: format!("m={m}, r={r}"),
                        expected: "s_m(r) < C(m, r+1)".into(),
                        actual: format!("ordering {:?}", row.step_compare(r)),
                    });
                }
            }
            (top, failures)
        })
        .collect();
    for (checked, failures) in results {
        builder.record(checked, failures);
    }
    Ok(builder.finish())
}

/// Sweeps the strict descent `f_m(r) > f_m(r+1)` for `r0(m) <= r < m`, plus
/// the endpoint identity `f_m(m) = 1`.
pub fn verify_decreasing_range(m_lo: u64, m_hi: u64) -> Result<VerificationReport> {
    validated_range(m_lo, m_hi, "m range")?;
    let mut builder = ReportBuilder::new("upper", format!("m={m_lo}..{m_hi}"));
    let results: Vec<(u64, Vec<Failure>)> = (m_lo..=m_hi)
        .into_par_iter()
        .filter(|&m| m >= 2)
        .map(|m| {
            let row = SumRow::new(m);
            let mut failures = Vec::new();
            let mut checked = 0;
            for r in r0(m)..m {
                checked += 1;
                if row.step_compare(r) != Ordering::Greater {
                    failures.push(Failure {
                        witness: format!("m={m}, r={r}"),
                        expected: "s_m(r) > C(m, r+1)".into(),
                        actual: format!("ordering {:?}", row.step_compare(r)),
                    });
                }
            }
            checked += 1;
            if row.sum(m) != &pow2(m) {
                failures.push(Failure {
                    witness: format!("m={m}, r={m}"),
                    expected: format!("s_m(m) = 2^{m}"),
                    actual: row.sum(m).to_string(),
                });
            }
            (checked, failures)
        })
        .collect();
    for (checked, failures) in results {
        builder.record(checked, failures);
    }
    Ok(builder.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::binomial::f_value;
    use crate::Rational;

    /// Brute-force argmax over rationals, independent of the scan's
    /// shifted-integer comparisons.
    fn argmax_by_rationals(m: u64) -> BTreeSet<u64> {
        let values: Vec<Rational> = (0..=m).map(|r| f_value(m, r).unwrap()).collect();
        let best = values.iter().max().unwrap().clone();
        (0..=m).filter(|&r| values[r as usize] == best).collect()
    }

    #[test]
    fn argmax_matches_rational_brute_force() {
        for m in 0..=120 {
            assert_eq!(argmax_f(m), argmax_by_rationals(m), "m={m}");
        }
    }

    #[test]
    fn argmax_exceptional_cases() {
        assert_eq!(argmax_f(0), BTreeSet::from([0]));
        assert_eq!(argmax_f(1), BTreeSet::from([0, 1]));
        assert_eq!(argmax_f(3), BTreeSet::from([1]));
        assert_eq!(argmax_f(6), BTreeSet::from([2]));
        assert_eq!(argmax_f(9), BTreeSet::from([3]));
        assert_eq!(argmax_f(12), BTreeSet::from([4]));
    }

    #[test]
    fn argmax_generic_cases() {
        assert_eq!(argmax_f(2), BTreeSet::from([1]));
        assert_eq!(argmax_f(11), BTreeSet::from([4]));
        assert_eq!(argmax_f(15), BTreeSet::from([6]));
        assert_eq!(argmax_f(100), BTreeSet::from([34]));
    }

    #[test]
    fn crossover_spot_values() {
        assert_eq!(crossover_rstar(2).unwrap(), 1);
        assert_eq!(crossover_rstar(6).unwrap(), 2);
        assert_eq!(crossover_rstar(15).unwrap(), 6);
        assert_eq!(crossover_rstar(100).unwrap(), 34);
        assert!(crossover_rstar(1).is_err());
    }

    #[test]
    fn crossover_is_a_maximizer() {
        for m in 2..=200 {
            let row = SumRow::new(m);
            let r_star = crossover_with_row(&row);
            let maxima = argmax_with_row(&row);
            assert!(maxima.contains(&r_star), "m={m}: r*={r_star} not a max");
            // And by minimality of r*, t(r) > 2 strictly below it.
            for r in 0..r_star {
                assert_eq!(row.step_compare(r), Ordering::Less);
            }
        }
    }

    #[test]
    fn step_compare_wrapper_and_domain() {
        assert_eq!(step_compare(15, 5).unwrap(), Ordering::Less);
        assert_eq!(step_compare(15, 6).unwrap(), Ordering::Greater);
        assert!(step_compare(15, 15).is_err());
    }

    #[test]
    fn unimodal_reports_are_clean_up_to_200() {
        for m in 2..=200 {
            let report = verify_unimodal(m).unwrap();
            assert!(
                report.violations.is_empty(),
                "m={m}: violations {:?}",
                report.violations
            );
            assert_eq!(report.r0, m / 3 + 1);
        }
    }

    #[test]
    fn ties_happen_only_at_m_one() {
        for m in 0..=200 {
            let maxima = argmax_f(m);
            if m == 1 {
                assert_eq!(maxima.len(), 2);
            } else {
                assert_eq!(maxima.len(), 1, "m={m}: {maxima:?}");
            }
        }
    }

    #[test]
    fn argmax_sweep_report_passes() {
        let report = verify_argmax_range(0, 400).unwrap();
        assert!(report.passed());
        assert_eq!(report.checked, 401);
        assert_eq!(report.command, "theorem1");
    }

    #[test]
    fn monotone_sweeps_pass() {
        let report = verify_increasing_range(0, 300).unwrap();
        assert!(report.passed(), "{:?}", report.failures);
        let report = verify_decreasing_range(0, 300).unwrap();
        assert!(report.passed(), "{:?}", report.failures);
    }

    #[test]
    fn invalid_ranges_are_rejected() {
        assert!(verify_argmax_range(10, 5).is_err());
    }
}
