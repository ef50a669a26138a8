//! Certified enclosures for the few irrational quantities the crate touches.
//!
//! A [`CertifiedFloat`] is a pair of exact rationals `lo <= hi` known to
//! bracket a real value, tagged with the working precision that produced it.
//! All arithmetic here rounds outward, so every derived enclosure still
//! brackets the true result; comparisons against exact rationals either
//! resolve definitively or report "undecided", in which case callers retry
//! at doubled precision up to a configurable cap.
//!
//! Only two irrational sources exist: integer square roots (floor/ceil of
//! scaled integers) and pi (Machin's formula `pi = 16 atan(1/5) -
//! 4 atan(1/239)` evaluated in scaled-integer arithmetic with an explicit
//! slack term covering both truncation and tail).

use std::cmp::Ordering;
use std::collections::HashMap;
use std::sync::Mutex;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{Pow, Signed, Zero};

use crate::{pow2, Error, Rational, Result};

/// Working-precision policy: start small, double on demand, stop at the cap.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Precision {
    pub start_bits: u32,
    pub cap_bits: u32,
}

pub const DEFAULT_START_BITS: u32 = 128;
pub const DEFAULT_CAP_BITS: u32 = 8192;

impl Default for Precision {
    fn default() -> Self {
        Precision {
            start_bits: DEFAULT_START_BITS,
            cap_bits: DEFAULT_CAP_BITS,
        }
    }
}

impl Precision {
    pub fn with_cap(cap_bits: u32) -> Self {
        Precision {
            start_bits: DEFAULT_START_BITS.min(cap_bits),
            cap_bits,
        }
    }

    /// Runs `attempt` at increasing precision until it resolves (`Some`) or
    /// the cap is exhausted.
    pub fn decide<T>(&self, mut attempt: impl FnMut(u32) -> Option<T>) -> Result<T> {
        let mut bits = self.start_bits.min(self.cap_bits).max(8);
        loop {
            if let Some(value) = attempt(bits) {
                return Ok(value);
            }
            if bits >= self.cap_bits {
                return Err(Error::PrecisionCap {
                    cap_bits: self.cap_bits,
                });
            }
            bits = bits.saturating_mul(2).min(self.cap_bits);
        }
    }
}

/// An exact rational bracket `[lo, hi]` around a real value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertifiedFloat {
    lo: Rational,
    hi: Rational,
    bits: u32,
}

impl CertifiedFloat {
    pub fn new(lo: Rational, hi: Rational, bits: u32) -> CertifiedFloat {
        assert!(lo <= hi, "inverted enclosure: {lo} > {hi}");
        CertifiedFloat { lo, hi, bits }
    }

    /// A rational is its own enclosure.
    pub fn exact(value: Rational, bits: u32) -> CertifiedFloat {
        CertifiedFloat {
            lo: value.clone(),
            hi: value,
            bits,
        }
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn add(&self, other: &CertifiedFloat) -> CertifiedFloat {
        CertifiedFloat::new(
            &self.lo + &other.lo,
            &self.hi + &other.hi,
            self.bits.min(other.bits),
        )
    }

    pub fn sub(&self, other: &CertifiedFloat) -> CertifiedFloat {
        CertifiedFloat::new(
            &self.lo - &other.hi,
            &self.hi - &other.lo,
            self.bits.min(other.bits),
        )
    }

    pub fn mul(&self, other: &CertifiedFloat) -> CertifiedFloat {
        let products = [
            &self.lo * &other.lo,
            &self.lo * &other.hi,
            &self.hi * &other.lo,
            &self.hi * &other.hi,
        ];
        let lo = products.iter().min().unwrap().clone();
        let hi = products.iter().max().unwrap().clone();
        CertifiedFloat::new(lo, hi, self.bits.min(other.bits))
    }

    pub fn mul_rational(&self, q: &Rational) -> CertifiedFloat {
        if q.is_negative() {
            CertifiedFloat::new(&self.hi * q, &self.lo * q, self.bits)
        } else {
            CertifiedFloat::new(&self.lo * q, &self.hi * q, self.bits)
        }
    }

    /// Reciprocal of an enclosure that excludes zero.
    pub fn recip(&self) -> CertifiedFloat {
        assert!(
            self.lo.is_positive() || self.hi.is_negative(),
            "reciprocal of an enclosure containing zero"
        );
        CertifiedFloat::new(self.hi.recip(), self.lo.recip(), self.bits)
    }

    /// Where the whole bracket sits relative to `q`, if decidable.
    pub fn cmp_rational(&self, q: &Rational) -> Option<Ordering> {
        if &self.hi < q {
            Some(Ordering::Less)
        } else if &self.lo > q {
            Some(Ordering::Greater)
        } else if &self.lo == q && &self.hi == q {
            Some(Ordering::Equal)
        } else {
            None
        }
    }

    pub fn certainly_lt(&self, q: &Rational) -> bool {
        &self.hi < q
    }

    pub fn certainly_gt(&self, q: &Rational) -> bool {
        &self.lo > q
    }

    /// True when every point of `self` lies strictly below every point of
    /// `other`.
    pub fn certainly_below(&self, other: &CertifiedFloat) -> bool {
        self.hi < other.lo
    }
}

impl std::fmt::Display for CertifiedFloat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "[{}, {}]@{}",
            decimal_down(&self.lo, 12),
            decimal_up(&self.hi, 12),
            self.bits
        )
    }
}

/// Enclosure of `sqrt(q)` for `q >= 0` with denominator `2^bits` resolution:
/// floor and ceil of the scaled integer square root, or an exact point when
/// `q` is a perfect square of a rational with power-of-two-compatible shape.
pub fn sqrt_rational(q: &Rational, bits: u32) -> Result<CertifiedFloat> {
    if q.is_negative() {
        return Err(Error::out_of_range("sqrt argument", q, "0.."));
    }
    // sqrt(n/d) = sqrt(n d) / d; scale by 4^bits before the integer root.
    let n = q.numer();
    let d = q.denom();
    let scaled = (n * d) << (2 * bits as u64);
    let root = scaled.sqrt();
    let denom = d * pow2(bits as u64);
    if &root * &root == scaled {
        return Ok(CertifiedFloat::exact(Rational::new(root, denom), bits));
    }
    let lo = Rational::new(root.clone(), denom.clone());
    let hi = Rational::new(root + 1, denom);
    Ok(CertifiedFloat::new(lo, hi, bits))
}

/// `atan(1/x) * 2^prec` bracketed by scaled integers.
///
/// Each series term is floored, so after `terms` terms the accumulated
/// truncation error lies in `[0, terms)` ulps; the alternating tail after
/// stopping (first omitted term already floors to zero) contributes less
/// than one more ulp. A symmetric slack of `terms + 1` ulps therefore
/// brackets the true value regardless of sign bookkeeping.
fn atan_inv_scaled(x: u64, prec: u32) -> (BigInt, BigInt) {
    let one = pow2(prec as u64);
    let x2 = BigInt::from(x) * BigInt::from(x);
    let mut power = BigInt::from(x);
    let mut k = 0u64;
    let mut acc = BigInt::zero();
    let mut terms = 0u64;
    loop {
        let term = &one / (&power * (2 * k + 1));
        if term.is_zero() {
            break;
        }
        if k.is_multiple_of(2) {
            acc += term;
        } else {
            acc -= term;
        }
        power *= &x2;
        k += 1;
        terms += 1;
    }
    let slack = BigInt::from(terms + 1);
    (&acc - &slack, acc + slack)
}

/// Enclosure of pi at roughly `bits` of precision (computed with 16 guard
/// bits), memoized per precision.
pub fn pi(bits: u32) -> CertifiedFloat {
    static CACHE: OnceLock<Mutex<HashMap<u32, (Rational, Rational)>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some((lo, hi)) = cache.lock().unwrap().get(&bits) {
        return CertifiedFloat::new(lo.clone(), hi.clone(), bits);
    }
    let prec = bits + 16;
    let (lo5, hi5) = atan_inv_scaled(5, prec);
    let (lo239, hi239) = atan_inv_scaled(239, prec);
    let scale = pow2(prec as u64);
    let lo = Rational::new(&lo5 * 16 - &hi239 * 4, scale.clone());
    let hi = Rational::new(&hi5 * 16 - &lo239 * 4, scale);
    cache.lock().unwrap().insert(bits, (lo.clone(), hi.clone()));
    CertifiedFloat::new(lo, hi, bits)
}

/// Decimal rendering of a rational, rounded toward minus infinity, with
/// exactly `digits` fractional digits.
pub fn decimal_down(q: &Rational, digits: u32) -> String {
    decimal(q, digits, false)
}

/// Decimal rendering rounded toward plus infinity.
pub fn decimal_up(q: &Rational, digits: u32) -> String {
    decimal(q, digits, true)
}

fn decimal(q: &Rational, digits: u32, round_up: bool) -> String {
    let scale = BigInt::from(10u32).pow(digits);
    let scaled_num = q.numer() * &scale;
    let d = q.denom(); // always positive
    let (quot, rem) = num_integer::Integer::div_mod_floor(&scaled_num, d);
    let scaled = if round_up && !rem.is_zero() {
        quot + 1
    } else {
        quot
    };
    // scaled = q * 10^digits rounded in the requested direction.
    if digits == 0 {
        return scaled.to_string();
    }
    let sign = if scaled.is_negative() { "-" } else { "" };
    let mag = scaled.abs();
    let (ipart, fpart) = num_integer::Integer::div_rem(&mag, &scale);
    format!(
        "{sign}{ipart}.{frac:0>width$}",
        frac = fpart.to_string(),
        width = digits as usize
    )
}

/// Reads the precision cap from the environment variable
/// `BINOSUM_PRECISION_CAP` if set, else from `flag`, else the default.
/// The environment variable wins over the flag.
pub fn resolve_precision_cap(flag: Option<u32>) -> std::result::Result<u32, String> {
    match std::env::var("BINOSUM_PRECISION_CAP") {
        Ok(raw) => raw
            .trim()
            .parse::<u32>()
            .map_err(|_| format!("BINOSUM_PRECISION_CAP must be a positive integer, got {raw:?}")),
        Err(std::env::VarError::NotPresent) => Ok(flag.unwrap_or(DEFAULT_CAP_BITS)),
        Err(std::env::VarError::NotUnicode(_)) => {
            Err("BINOSUM_PRECISION_CAP is not valid unicode".into())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational;
    use num_traits::One;

    fn assert_encloses(enc: &CertifiedFloat, digits_lo: &str, digits_hi: &str) {
        // Reference digits as exact rationals.
        let parse = |s: &str| -> Rational {
            let (int, frac) = s.split_once('.').unwrap();
            let denom = BigInt::from(10u32).pow(frac.len() as u32);
            let numer: BigInt = format!("{int}{frac}").parse().unwrap();
            Rational::new(numer, denom)
        };
        let lo = parse(digits_lo);
        let hi = parse(digits_hi);
        assert!(enc.lo() >= &lo, "lo {} < {}", enc.lo(), lo);
        assert!(enc.hi() <= &hi, "hi {} > {}", enc.hi(), hi);
        assert!(enc.lo() <= enc.hi());
    }

    #[test]
    fn sqrt_two_reference_digits() {
        // 55 digits of sqrt(2), bracketed one ulp either side.
        let enc = sqrt_rational(&rational(2, 1), 200).unwrap();
        assert_encloses(
            &enc,
            "1.414213562373095048801688724209698078569671875376948072",
            "1.414213562373095048801688724209698078569671875376948074",
        );
        assert!(enc.width() <= Rational::new(BigInt::one(), pow2(200)));
    }

    #[test]
    fn sqrt_exact_when_perfect_square() {
        let enc = sqrt_rational(&rational(9, 4), 64).unwrap();
        assert_eq!(enc.lo(), enc.hi());
        assert_eq!(enc.lo(), &rational(3, 2));
        let enc = sqrt_rational(&rational(0, 1), 64).unwrap();
        assert_eq!(enc.lo(), &rational(0, 1));
        assert!(sqrt_rational(&rational(-1, 1), 64).is_err());
    }

    #[test]
    fn sqrt_width_shrinks_with_precision() {
        let w64 = sqrt_rational(&rational(3, 1), 64).unwrap().width();
        let w128 = sqrt_rational(&rational(3, 1), 128).unwrap().width();
        assert!(w128 < w64);
        assert!(!w128.is_zero());
    }

    #[test]
    fn pi_reference_digits() {
        let enc = pi(200);
        assert_encloses(
            &enc,
            "3.141592653589793238462643383279502884197169399375105820",
            "3.141592653589793238462643383279502884197169399375105822",
        );
        assert!(enc.width() <= Rational::new(BigInt::one(), pow2(190)));
    }

    #[test]
    fn pi_is_cached_per_precision() {
        let a = pi(96);
        let b = pi(96);
        assert_eq!(a, b);
    }

    #[test]
    fn interval_arithmetic_rounds_outward() {
        let a = CertifiedFloat::new(rational(1, 2), rational(2, 3), 32);
        let b = CertifiedFloat::new(rational(-1, 3), rational(1, 4), 32);
        let sum = a.add(&b);
        assert_eq!(sum.lo(), &rational(1, 6));
        assert_eq!(sum.hi(), &rational(11, 12));
        let diff = a.sub(&b);
        assert_eq!(diff.lo(), &rational(1, 4));
        assert_eq!(diff.hi(), &rational(1, 1));
        let prod = a.mul(&b);
        assert_eq!(prod.lo(), &rational(-2, 9));
        assert_eq!(prod.hi(), &rational(1, 6));
        let neg_scale = a.mul_rational(&rational(-2, 1));
        assert_eq!(neg_scale.lo(), &rational(-4, 3));
        assert_eq!(neg_scale.hi(), &rational(-1, 1));
    }

    #[test]
    fn reciprocal_flips_endpoints() {
        let a = CertifiedFloat::new(rational(1, 2), rational(2, 3), 32);
        let r = a.recip();
        assert_eq!(r.lo(), &rational(3, 2));
        assert_eq!(r.hi(), &rational(2, 1));
    }

    #[test]
    fn comparisons_only_resolve_outside_the_bracket() {
        let a = CertifiedFloat::new(rational(1, 2), rational(2, 3), 32);
        assert_eq!(a.cmp_rational(&rational(1, 1)), Some(Ordering::Less));
        assert_eq!(a.cmp_rational(&rational(1, 4)), Some(Ordering::Greater));
        assert_eq!(a.cmp_rational(&rational(3, 5)), None);
        assert!(a.certainly_lt(&rational(1, 1)));
        assert!(!a.certainly_lt(&rational(3, 5)));
        let b = CertifiedFloat::new(rational(7, 10), rational(8, 10), 32);
        assert!(a.certainly_below(&b));
        assert!(!b.certainly_below(&a));
    }

    #[test]
    fn exact_point_comparison() {
        let e = CertifiedFloat::exact(rational(3, 7), 16);
        assert_eq!(e.cmp_rational(&rational(3, 7)), Some(Ordering::Equal));
        assert!(e.width().is_zero());
    }

    #[test]
    fn decimal_rendering_directions() {
        assert_eq!(decimal_down(&rational(1, 3), 6), "0.333333");
        assert_eq!(decimal_up(&rational(1, 3), 6), "0.333334");
        assert_eq!(decimal_down(&rational(-1, 3), 6), "-0.333334");
        assert_eq!(decimal_up(&rational(-1, 3), 6), "-0.333333");
        assert_eq!(decimal_down(&rational(5, 4), 2), "1.25");
        assert_eq!(decimal_up(&rational(5, 4), 2), "1.25");
        assert_eq!(decimal_down(&rational(7, 1), 3), "7.000");
        assert_eq!(decimal_down(&rational(3, 2), 0), "1");
    }

    #[test]
    fn precision_escalation_stops_at_cap() {
        let prec = Precision {
            start_bits: 8,
            cap_bits: 32,
        };
        let mut seen = Vec::new();
        let result: Result<()> = prec.decide(|bits| {
            seen.push(bits);
            None
        });
        assert!(matches!(result, Err(Error::PrecisionCap { cap_bits: 32 })));
        assert_eq!(seen, vec![8, 16, 32]);
        let ok = prec.decide(|bits| (bits >= 16).then_some(bits)).unwrap();
        assert_eq!(ok, 16);
    }
}
