//! Integer-polynomial certificates for the ratio chains.
//!
//! Unwinding the nested form of the chain inequality `T_j > 1/X_0` at
//! `m = 3r - 1` produces a rational function `P_j(r) / Q_j(r)` in `r`. Both
//! polynomials are divisible by `(r+1) r`; the reduced pair is
//!
//! * `B_i(r) = (r-1)(r-2)...(r-i)` with `B_0 = 1`,
//! * `A_2(r) = r^2 - 15r - 10`, `A_i(r) = (2r + i) A_{i-1}(r) - B_i(r)`,
//!
//! where `i = j - 2`. Two scalar recurrences produce the coefficients
//! `a_{i,k}`, `b_{i,k}` of `A_i`, `B_i` directly:
//!
//! ```text
//! a_{i,k} = i a_{i-1,k} + 2 a_{i-1,k-1} - b_{i,k}
//! b_{i,k} = -i b_{i-1,k} + b_{i-1,k-1}
//! ```
//!
//! (indices outside `0..=i` read as zero). The verifiers in this module prove
//! the sign pattern of those coefficients — every non-leading `a_{i,k}` is
//! negative, with parity-dependent comparisons against `b_{i,k}` — and then
//! use `A_{j-2}(r) < 0 < B_{j-2}(r)` to certify the head-sum inequality
//! `sum_{i=r-j}^{r} C(3r-1, i) > C(3r-1, r+1)` on the window
//! `j <= r <= (j+1)(j+2)/2`, cross-checked against exact integer arithmetic.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::binomial::binom;
use crate::report::{Failure, ReportBuilder, VerificationReport};
use crate::{Error, Result};

/// Dense integer polynomial, coefficients low-to-high, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        IntPolynomial::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        IntPolynomial::from_coeffs(vec![c])
    }

    /// The monomial `r`.
    pub fn x() -> Self {
        IntPolynomial::from_coeffs(vec![BigInt::zero(), BigInt::one()])
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        IntPolynomial::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with the convention `deg 0 = 0`.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    /// Coefficient of `r^k`, zero beyond the degree.
    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k) + other.coeff(k)).collect();
        IntPolynomial::from_coeffs(coeffs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k) - other.coeff(k)).collect();
        IntPolynomial::from_coeffs(coeffs)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return IntPolynomial::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        IntPolynomial::from_coeffs(coeffs)
    }

    /// `self * (r + c)`.
    pub fn mul_linear(&self, c: i64) -> Self {
        self.mul(&IntPolynomial::from_i64s(&[c, 1]))
    }
}

impl std::fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            match k {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}")?;
                    }
                    if k == 1 {
                        write!(f, "r")?;
                    } else {
                        write!(f, "r^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// `B_i(r) = (r-1)(r-2)...(r-i)`, with `B_0 = 1`.
pub fn poly_b(i: u64) -> IntPolynomial {
    let mut b = IntPolynomial::one();
    for l in 1..=i {
        b = b.mul_linear(-(l as i64));
    }
    b
}

/// `A_i(r)` for `i >= 2`: `A_2 = r^2 - 15r - 10`,
/// `A_i = (2r + i) A_{i-1} - B_i`.
pub fn poly_a(i: u64) -> Result<IntPolynomial> {
    if i < 2 {
        return Err(Error::out_of_range("i", i, "2.."));
    }
    let mut a = IntPolynomial::from_i64s(&[-10, -15, 1]);
    let mut b = poly_b(2);
    for t in 3..=i {
        b = b.mul_linear(-(t as i64));
        let two_r_plus_t = IntPolynomial::from_i64s(&[t as i64, 2]);
        a = two_r_plus_t.mul(&a).sub(&b);
    }
    Ok(a)
}

/// Coefficient tables `a_{i,k}` (rows `i = 2..=i_max`) and `b_{i,k}` (rows
/// `i = 0..=i_max`), built from the scalar recurrences alone — no polynomial
/// arithmetic — so they can serve as an independent route to the same
/// numbers.
#[derive(Clone, Debug)]
pub struct CoeffTables {
    i_max: u64,
    a_rows: Vec<Vec<BigInt>>,
    b_rows: Vec<Vec<BigInt>>,
}

impl CoeffTables {
    pub fn i_max(&self) -> u64 {
        self.i_max
    }

    /// `a_{i,k}` for `2 <= i <= i_max`, `0 <= k <= i`.
    pub fn a(&self, i: u64, k: u64) -> &BigInt {
        assert!((2..=self.i_max).contains(&i), "a row {i} out of range");
        assert!(k <= i, "a_{{{i},{k}}} out of range");
        &self.a_rows[(i - 2) as usize][k as usize]
    }

    /// `b_{i,k}` for `0 <= i <= i_max`, `0 <= k <= i`.
    pub fn b(&self, i: u64, k: u64) -> &BigInt {
        assert!(i <= self.i_max, "b row {i} out of range");
        assert!(k <= i, "b_{{{i},{k}}} out of range");
        &self.b_rows[i as usize][k as usize]
    }
}

pub fn coeff_tables(i_max: u64) -> Result<CoeffTables> {
    if i_max < 2 {
        return Err(Error::out_of_range("i_max", i_max, "2.."));
    }
    let mut b_rows: Vec<Vec<BigInt>> = vec![vec![BigInt::one()]];
    for i in 1..=i_max {
        let prev = &b_rows[(i - 1) as usize];
        let get = |k: i64| -> BigInt {
            if k < 0 || k as u64 > i - 1 {
                BigInt::zero()
            } else {
                prev[k as usize].clone()
            }
        };
        let row: Vec<BigInt> = (0..=i as i64)
            .map(|k| get(k) * (-(i as i64)) + get(k - 1))
            .collect();
        b_rows.push(row);
    }
    let mut a_rows: Vec<Vec<BigInt>> =
        vec![vec![BigInt::from(-10), BigInt::from(-15), BigInt::one()]];
    for i in 3..=i_max {
        let prev = &a_rows[(i - 3) as usize];
        let get = |k: i64| -> BigInt {
            if k < 0 || k as u64 > i - 1 {
                BigInt::zero()
            } else {
                prev[k as usize].clone()
            }
        };
        let b_row = &b_rows[i as usize];
        let row: Vec<BigInt> = (0..=i as i64)
            .map(|k| get(k) * (i as i64) + get(k - 1) * 2 - &b_row[k as usize])
            .collect();
        a_rows.push(row);
    }
    Ok(CoeffTables {
        i_max,
        a_rows,
        b_rows,
    })
}

/// Sweeps the coefficient certificates for `i = i_lo..=i_hi` (rows below
/// `i_lo` are still built, since the recurrences need them, but not checked):
///
/// * the scalar-recurrence rows reproduce the expanded `A_i`, `B_i`;
/// * leading coefficients are 1, and every other `a_{i,k}` is negative;
/// * `b_{i,k}` has sign `(-1)^(i-k)`, and `a_{i,k} <= -2 b_{i,k}` when
///   `i - k` is even while `a_{i,k} <= b_{i,k} < 0` when `i - k` is odd;
/// * the subleading coefficients close to `a_{i,i-1} = -C(i+4, 2)` and
///   `b_{i,i-1} = -C(i+1, 2)`.
pub fn verify_coeff_certificates(i_lo: u64, i_hi: u64) -> Result<VerificationReport> {
    if i_lo < 2 || i_lo > i_hi {
        return Err(Error::out_of_range(
            "i range",
            format!("{i_lo}..{i_hi}"),
            "2 <= lo <= hi",
        ));
    }
    let mut builder = ReportBuilder::new("lemma3", format!("i={i_lo}..{i_hi}"));
    let tables = coeff_tables(i_hi)?;
    let mut a = IntPolynomial::from_i64s(&[-10, -15, 1]);
    let mut b = poly_b(2);
    for i in 2..=i_hi {
        if i > 2 {
            b = b.mul_linear(-(i as i64));
            let lin = IntPolynomial::from_i64s(&[i as i64, 2]);
            a = lin.mul(&a).sub(&b);
        }
        if i < i_lo {
            continue;
        }
        let a_row: Vec<BigInt> = (0..=i).map(|k| tables.a(i, k).clone()).collect();
        let b_row: Vec<BigInt> = (0..=i).map(|k| tables.b(i, k).clone()).collect();
        builder.check(a.coeffs() == &a_row[..], || {
            (
                format!("i={i}, A row"),
                format!("{a}"),
                format!("{:?}", a_row),
            )
        });
        builder.check(b.coeffs() == &b_row[..], || {
            (
                format!("i={i}, B row"),
                format!("{b}"),
                format!("{:?}", b_row),
            )
        });
        builder.check(tables.a(i, i).is_one(), || {
            (
                format!("i={i}, k={i}"),
                "a_{i,i} = 1".into(),
                tables.a(i, i).to_string(),
            )
        });
        builder.check(tables.b(i, i).is_one(), || {
            (
                format!("i={i}, k={i}"),
                "b_{i,i} = 1".into(),
                tables.b(i, i).to_string(),
            )
        });
        for k in 0..i {
            let a_ik = tables.a(i, k);
            let b_ik = tables.b(i, k);
            builder.check(a_ik.is_negative(), || {
                (
                    format!("i={i}, k={k}"),
                    "a_{i,k} < 0".into(),
                    a_ik.to_string(),
                )
            });
            if (i - k) % 2 == 0 {
                builder.check(b_ik.is_positive(), || {
                    (
                        format!("i={i}, k={k}"),
                        "b_{i,k} > 0 (i-k even)".into(),
                        b_ik.to_string(),
                    )
                });
                builder.check(a_ik <= &(b_ik * -2), || {
                    (
                        format!("i={i}, k={k}"),
                        "a_{i,k} <= -2 b_{i,k} (i-k even)".into(),
                        format!("a={a_ik}, b={b_ik}"),
                    )
                });
            } else {
                builder.check(b_ik.is_negative(), || {
                    (
                        format!("i={i}, k={k}"),
                        "b_{i,k} < 0 (i-k odd)".into(),
                        b_ik.to_string(),
                    )
                });
                builder.check(a_ik <= b_ik, || {
                    (
                        format!("i={i}, k={k}"),
                        "a_{i,k} <= b_{i,k} (i-k odd)".into(),
                        format!("a={a_ik}, b={b_ik}"),
                    )
                });
            }
        }
        let want_a = -binom(i + 4, 2);
        builder.check(tables.a(i, i - 1) == &want_a, || {
            (
                format!("i={i}, k={}", i - 1),
                format!("a_{{i,i-1}} = -C(i+4,2) = {want_a}"),
                tables.a(i, i - 1).to_string(),
            )
        });
        let want_b = -binom(i + 1, 2);
        builder.check(tables.b(i, i - 1) == &want_b, || {
            (
                format!("i={i}, k={}", i - 1),
                format!("b_{{i,i-1}} = -C(i+1,2) = {want_b}"),
                tables.b(i, i - 1).to_string(),
            )
        });
    }
    Ok(builder.finish())
}

/// The window top `C(j+2, 2) = (j+1)(j+2)/2`.
pub fn window_top(j: u64) -> u64 {
    (j + 1) * (j + 2) / 2
}

/// The unreduced pair `(P_j, Q_j)` with
/// `P_j = (2r + j - 2) P_{j-1} - (r - j + 2) Q_{j-1}`,
/// `Q_j = (r - j + 2) Q_{j-1}` from
/// `P_4 = (r+1) r A_2` and `Q_4 = (r+1) r B_2`, for `j >= 4`.
///
/// Construction asserts the structural factorizations
/// `P_j = (r+1) r A_{j-2}` and `Q_j = (r+1) r B_{j-2}` along the way.
pub fn pq_fraction(j: u64) -> Result<(IntPolynomial, IntPolynomial)> {
    if j < 4 {
        return Err(Error::out_of_range("j", j, "4.."));
    }
    let r1r = IntPolynomial::from_i64s(&[0, 1, 1]); // (r+1) r
    let mut p = r1r.mul(&IntPolynomial::from_i64s(&[-10, -15, 1]));
    let mut q = r1r.mul(&poly_b(2));
    let mut a = IntPolynomial::from_i64s(&[-10, -15, 1]);
    let mut b = poly_b(2);
    for t in 5..=j {
        let shift = t as i64 - 2;
        let lin_p = IntPolynomial::from_i64s(&[shift, 2]); // 2r + t - 2
        let lin_q = IntPolynomial::from_i64s(&[-shift, 1]); // r - t + 2
        let q_prev = q.clone();
        p = lin_p.mul(&p).sub(&lin_q.mul(&q_prev));
        q = lin_q.mul(&q_prev);
        b = b.mul_linear(-(shift));
        let lin_a = IntPolynomial::from_i64s(&[shift, 2]);
        a = lin_a.mul(&a).sub(&b);
    }
    assert_eq!(p, r1r.mul(&a), "P_{j} != (r+1) r A_{{j-2}}");
    assert_eq!(q, r1r.mul(&b), "Q_{j} != (r+1) r B_{{j-2}}");
    Ok((p, q))
}

/// One window of the head-sum inequality, for a fixed `j >= 4`:
/// for every `r` in `j..=window_top(j)`, with `m = 3r - 1`,
///
/// * route one (exact integers): `sum_{i=0}^{j} C(m, r-i) > C(m, r+1)`;
/// * route two (certificate): `A_{j-2}(r) < 0 < B_{j-2}(r)`, which puts the
///   reduced fraction below zero while `X_j = (r-j+1)/(2r+j-1) > 0`, plus the
///   cross-multiplied inequality `X_j > A_{j-2}(r)/B_{j-2}(r)` itself;
/// * agreement between the two routes.
fn sweep_one_window(j: u64) -> Result<(u64, Vec<Failure>)> {
    if j < 4 {
        return Err(Error::out_of_range("j", j, "4.."));
    }
    let i = j - 2;
    let a_poly = poly_a(i)?;
    let b_poly = poly_b(i);
    let mut checked = 0u64;
    let mut failures = Vec::new();
    for r in j..=window_top(j) {
        let m = 3 * r - 1;
        // Route one: climb the row once, summing C(m, r-j) ... C(m, r).
        let mut c = binom(m, (r - j) as i64);
        let mut head = c.clone();
        for k in r - j..r {
            c = c * (m - k) / (k + 1);
            head += &c;
        }
        let c_next = c * (m - r) / (r + 1); // C(m, r+1)
        let route_one = head > c_next;
        checked += 1;
        if !route_one {
            failures.push(Failure {
                witness: format!("j={j}, r={r}"),
                expected: "head sum > C(3r-1, r+1)".into(),
                actual: format!("{head} <= {c_next}"),
            });
        }
        // Route two: certificate signs and the reduced inequality.
        let rb = BigInt::from(r);
        let av = a_poly.eval(&rb);
        let bv = b_poly.eval(&rb);
        checked += 1;
        if !(av.is_negative() && bv.is_positive()) {
            failures.push(Failure {
                witness: format!("j={j}, r={r}"),
                expected: "A_{j-2}(r) < 0 < B_{j-2}(r)".into(),
                actual: format!("A={av}, B={bv}"),
            });
        }
        // X_j > A/B with B > 0: cross-multiply by B (2r+j-1) > 0.
        let route_two = BigInt::from(r - j + 1) * &bv > av * BigInt::from(2 * r + j - 1);
        checked += 1;
        if route_one != route_two {
            failures.push(Failure {
                witness: format!("j={j}, r={r}"),
                expected: "integer route and certificate route agree".into(),
                actual: format!("integer={route_one}, certificate={route_two}"),
            });
        }
    }
    Ok((checked, failures))
}

/// Sweeps [`sweep_one_window`] over `j_lo..=j_hi` (both at least 4).
pub fn verify_headsum_windows(j_lo: u64, j_hi: u64) -> Result<VerificationReport> {
    if j_lo < 4 || j_lo > j_hi {
        return Err(Error::out_of_range(
            "j range",
            format!("{j_lo}..{j_hi}"),
            "4 <= lo <= hi",
        ));
    }
    let mut builder =
        ReportBuilder::new("lemma_l2", format!("j={j_lo}..{j_hi}, r=j..(j+1)(j+2)/2"));
    for j in j_lo..=j_hi {
        let (checked, failures) = sweep_one_window(j)?;
        builder.record(checked, failures);
    }
    Ok(builder.finish())
}
