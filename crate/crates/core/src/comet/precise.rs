//! Escalation path for comparisons the doubles cannot settle: exact
//! rational arithmetic with interval enclosures for the two quantities
//! that are not rational, ln n and the twin prime constant. A
//! comparison either resolves against both interval endpoints or is
//! reported as undecidable at the constant's current truncation.

use num::{BigInt, One, Signed, Zero};

use crate::arith::{smf_eval, Rational, SmfSpec};
use crate::comet::TwinPrimeConstant;
use crate::primes::PrimeTable;
use crate::{Error, Result};

/// atanh series length. With t ≤ 1/3 every term shrinks by at least
/// 9×, so the tail after 40 terms is below 3^-81 ≈ 10^-39 of the lead.
const ATANH_TERMS: u32 = 40;

/// Encloses 2·atanh(t) for rational 0 ≤ t ≤ 1/3 between partial sum
/// and partial sum plus a geometric tail bound.
fn two_atanh_interval(t: &Rational) -> (Rational, Rational) {
    debug_assert!(!t.is_negative());
    debug_assert!(t * BigInt::from(3) <= Rational::one());
    let t2 = t * t;
    let mut term = t.clone();
    let mut sum = Rational::zero();
    for j in 0..ATANH_TERMS {
        sum += &term / BigInt::from(2 * j + 1);
        term *= &t2;
    }
    // Σ_{j≥J} t^{2j+1}/(2j+1) ≤ t^{2J+1} / ((2J+1)(1−t²)); `term` is
    // t^{2J+1} after the loop.
    let tail = term / ((Rational::one() - t2) * BigInt::from(2 * ATANH_TERMS + 1));
    let two = BigInt::from(2);
    ((&sum * &two), (sum + tail) * two)
}

/// Rational enclosure of ln x for an integer x ≥ 2, via
/// ln x = k·ln 2 + 2·atanh((x − 2^k)/(x + 2^k)) with 2^k ≤ x < 2^{k+1},
/// which keeps the series argument in [0, 1/3).
pub(crate) fn ln_interval(x: u64) -> (Rational, Rational) {
    assert!(x >= 2, "ln enclosure needs x >= 2");
    let k = 63 - x.leading_zeros() as u64;
    let pow = 1u64 << k;
    let t = Rational::new(BigInt::from(x - pow), BigInt::from(x + pow));
    let (frac_lo, frac_hi) = two_atanh_interval(&t);
    let third = Rational::new(BigInt::one(), BigInt::from(3));
    let (ln2_lo, ln2_hi) = two_atanh_interval(&third);
    let k = BigInt::from(k);
    (ln2_lo * &k + frac_lo, ln2_hi * k + frac_hi)
}

/// Decides 𝒮(n) < G(n) exactly, where G(n) = (ln n)²·g/(4cn).
///
/// Both sides are cleared of divisions: compare 4n·c·𝒮(n) against
/// g·(ln n)² with c and ln n as rational intervals. Returns true when
/// the strict inequality holds for every point of both intervals,
/// false when its negation does. When the intervals straddle the
/// boundary the constant's truncation is genuinely too coarse and the
/// honest answer is an error, not a guess.
pub(crate) fn confirm_strictly_less(
    n: u64,
    g: u64,
    constant: &TwinPrimeConstant,
    table: &PrimeTable,
) -> Result<bool> {
    let s = smf_eval(&SmfSpec::sylvester(), n, table)?;
    let (b_lo, b_hi) = constant.bracket;
    let c_lo = Rational::from_float(b_lo)
        .filter(|c| c.is_positive())
        .ok_or_else(|| {
            Error::InvalidArgument(format!("constant bracket lower end {b_lo} unusable"))
        })?;
    let c_hi = Rational::from_float(b_hi).ok_or_else(|| {
        Error::InvalidArgument(format!("constant bracket upper end {b_hi} unusable"))
    })?;
    let four_n = Rational::from_integer(BigInt::from(n) * BigInt::from(4));
    let (ln_lo, ln_hi) = ln_interval(n);
    let g = Rational::from_integer(BigInt::from(g));
    let lhs_lo = &four_n * c_lo * &s;
    let lhs_hi = four_n * c_hi * s;
    let rhs_lo = &g * &ln_lo * ln_lo;
    let rhs_hi = &g * &ln_hi * ln_hi;
    if lhs_hi < rhs_lo {
        return Ok(true);
    }
    if lhs_lo >= rhs_hi {
        return Ok(false);
    }
    Err(Error::PrecisionExhausted { n })
}
