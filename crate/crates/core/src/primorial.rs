//! Primorials P_n = p₁⋯p_n as extremal points: below P_n, no integer
//! has a smaller φ(n)/n, and none beats its Sylvester factor except the
//! single equality at P_n/2. Verified by exhaustive scan, in exact
//! integer arithmetic; the limit trajectories φ̄(P_n) → 0 and
//! 𝒮(P_n) → ∞ are traced separately in doubles.

use num::BigUint;
use rayon::prelude::*;

use crate::arith::{frac_cmp, ratio, Rational};
use crate::primes::PrimeTable;
use crate::{Error, Result};

/// Exhaustive scans cover m ∈ [1, P_n); P₇ = 510510 keeps that a
/// seconds-scale job while P₈ = 9699690 would not be.
pub const MAX_EXHAUSTIVE_INDEX: usize = 7;

/// One primorial with its exact invariants.
#[derive(Debug, Clone)]
pub struct PrimorialRecord {
    pub n: usize,
    /// p_n, the prime multiplied in at this step.
    pub prime: u64,
    /// P_n itself.
    pub value: BigUint,
    pub phi_bar: Rational,
    pub sylvester: Rational,
}

/// Records for n = 1..=n_max, built incrementally in exact arithmetic.
pub fn primorial_table(n_max: usize, table: &PrimeTable) -> Result<Vec<PrimorialRecord>> {
    if n_max == 0 {
        return Err(Error::InvalidArgument(
            "primorial records start at n = 1".to_string(),
        ));
    }
    let primes: Vec<u64> = table.primes().take(n_max).collect();
    if primes.len() < n_max {
        return Err(Error::ResourceLimit(format!(
            "table up to {} holds {} primes, cannot reach P_{n_max}",
            table.limit(),
            table.prime_count()
        )));
    }
    let mut out = Vec::with_capacity(n_max);
    let mut value = BigUint::from(1u32);
    let mut phi_bar = ratio(1, 1);
    let mut sylvester = ratio(1, 1);
    for (i, &p) in primes.iter().enumerate() {
        value *= p;
        phi_bar *= ratio(p as i64 - 1, p as i64);
        if p != 2 {
            sylvester *= ratio(p as i64 - 1, p as i64 - 2);
        }
        out.push(PrimorialRecord {
            n: i + 1,
            prime: p,
            value: value.clone(),
            phi_bar: phi_bar.clone(),
            sylvester: sylvester.clone(),
        });
    }
    Ok(out)
}

/// Outcome of an exhaustive extremality scan over m ∈ [1, P_n).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanVerdict {
    pub n: usize,
    /// P_n (fits u64 for every scannable index).
    pub primorial: u64,
    pub holds: bool,
    /// Smallest m breaking the strict inequality, if any.
    pub counterexample: Option<u64>,
    /// Number of m values the verdict covers.
    pub checked: u64,
    /// Sylvester scan only: whether 𝒮(P_n/2) = 𝒮(P_n) held.
    pub half_equality: Option<bool>,
}

/// φ̄(m) = (∏_{p|m}(p−1), ∏_{p|m} p), unreduced. Both sides divide
/// rad(m) ≤ m, so u64 never overflows on scannable ranges.
fn phi_bar_frac(m: u64, table: &PrimeTable) -> (u64, u64) {
    let (mut num, mut den) = (1u64, 1u64);
    let mut rest = m;
    while rest > 1 {
        let p = table.spf_raw(rest);
        num *= p - 1;
        den *= p;
        while rest % p == 0 {
            rest /= p;
        }
    }
    (num, den)
}

/// 𝒮(m) = (∏_{p|m, p≠2}(p−1), ∏_{p|m, p≠2}(p−2)), unreduced.
fn sylvester_frac(m: u64, table: &PrimeTable) -> (u64, u64) {
    let (mut num, mut den) = (1u64, 1u64);
    let mut rest = m >> m.trailing_zeros();
    while rest > 1 {
        let p = table.spf_raw(rest);
        num *= p - 1;
        den *= p - 2;
        while rest % p == 0 {
            rest /= p;
        }
    }
    (num, den)
}

fn scan_primorial(n: usize, table: &PrimeTable) -> Result<(u64, Vec<u64>)> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "extremality scans start at n = 1".to_string(),
        ));
    }
    if n > MAX_EXHAUSTIVE_INDEX {
        return Err(Error::ResourceLimit(format!(
            "exhaustive scans are budgeted up to n = {MAX_EXHAUSTIVE_INDEX}, got {n}"
        )));
    }
    let primes: Vec<u64> = table.primes().take(n).collect();
    if primes.len() < n {
        return Err(Error::ResourceLimit(format!(
            "table up to {} cannot supply {n} primes",
            table.limit()
        )));
    }
    let pn: u64 = primes.iter().product();
    if pn > table.limit() {
        return Err(Error::OutOfRange {
            what: "P_n",
            value: pn,
            limit: table.limit(),
        });
    }
    Ok((pn, primes))
}

/// Verify φ̄(m) > φ̄(P_n) for every m ∈ [1, P_n), exhaustively and in
/// exact integer comparisons (cross-multiplied fractions).
pub fn check_phi_bar_minimality(n: usize, table: &PrimeTable) -> Result<ScanVerdict> {
    let (pn, primes) = scan_primorial(n, table)?;
    let (ref_num, ref_den) = (
        primes.iter().map(|&p| p - 1).product::<u64>(),
        pn,
    );
    let counterexample = (1..pn).into_par_iter().find_first(|&m| {
        let (num, den) = phi_bar_frac(m, table);
        frac_cmp(num, den, ref_num, ref_den) != std::cmp::Ordering::Greater
    });
    Ok(ScanVerdict {
        n,
        primorial: pn,
        holds: counterexample.is_none(),
        counterexample,
        checked: pn - 1,
        half_equality: None,
    })
}

/// Verify 𝒮(m) < 𝒮(P_n) for every m ∈ [1, P_n) with 2m ≠ P_n, and the
/// single permitted equality 𝒮(P_n/2) = 𝒮(P_n). Exhaustive, exact.
pub fn check_sylvester_maximality(n: usize, table: &PrimeTable) -> Result<ScanVerdict> {
    let (pn, primes) = scan_primorial(n, table)?;
    let ref_num = primes.iter().filter(|&&p| p != 2).map(|&p| p - 1).product::<u64>();
    let ref_den = primes.iter().filter(|&&p| p != 2).map(|&p| p - 2).product::<u64>();
    let half = pn / 2;
    let counterexample = (1..pn).into_par_iter().find_first(|&m| {
        if m == half {
            return false; // the equality case, checked separately
        }
        let (num, den) = sylvester_frac(m, table);
        frac_cmp(num, den, ref_num, ref_den) != std::cmp::Ordering::Less
    });
    let (h_num, h_den) = sylvester_frac(half, table);
    let half_equality = frac_cmp(h_num, h_den, ref_num, ref_den) == std::cmp::Ordering::Equal;
    Ok(ScanVerdict {
        n,
        primorial: pn,
        holds: counterexample.is_none() && half_equality,
        counterexample,
        checked: pn - 1,
        half_equality: Some(half_equality),
    })
}

/// One step of the limit trajectories.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LimitPoint {
    pub n: usize,
    /// p_n.
    pub prime: u64,
    pub phi_bar: f64,
    pub sylvester: f64,
}

/// The trajectories (φ̄(P_n), 𝒮(P_n)) for n = 1..=n_max as running
/// double products: the exact values outgrow any fixed precision (their
/// numerators are primorial-sized), while the doubles keep enough
/// accuracy to exhibit the monotone march to 0 and ∞.
pub fn limit_diagnostics(n_max: usize, table: &PrimeTable) -> Result<Vec<LimitPoint>> {
    if n_max == 0 {
        return Err(Error::InvalidArgument(
            "limit diagnostics start at n = 1".to_string(),
        ));
    }
    let primes: Vec<u64> = table.primes().take(n_max).collect();
    if primes.len() < n_max {
        return Err(Error::ResourceLimit(format!(
            "table up to {} holds {} primes, cannot reach n = {n_max}",
            table.limit(),
            table.prime_count()
        )));
    }
    let mut out = Vec::with_capacity(n_max);
    let (mut phi_bar, mut sylvester) = (1.0f64, 1.0f64);
    for (i, &p) in primes.iter().enumerate() {
        phi_bar *= (p - 1) as f64 / p as f64;
        if p != 2 {
            sylvester *= (p - 1) as f64 / (p - 2) as f64;
        }
        out.push(LimitPoint {
            n: i + 1,
            prime: p,
            phi_bar,
            sylvester,
        });
    }
    Ok(out)
}
