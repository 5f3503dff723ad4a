//! The comet itself: exact Goldbach partition counts g(n) in bulk, the
//! twin prime constant with a rigorous enclosure, the density model
//! h(n) and its normalized form G(n), and the scan comparing 𝒮(n)
//! against G(n) across a range.
//!
//! g(n) counts ordered pairs (p, q) of odd primes with p + q = 2n, so
//! the diagonal pair p = q = n contributes once and every other pair
//! twice. Counts are exact integers throughout; doubles appear only in
//! the derived quantities built from them.

mod ntt;
pub(crate) mod precise;

use rayon::prelude::*;

use crate::arith::{phi_bar_float, sylvester_float};
use crate::primes::{sieve_odd_primes, PrimeTable};
use crate::{Error, Result};

/// Window on which the strict inequality 𝒮(n) < G(n) is re-verified by
/// this crate's own scan. A violation reported inside it means the
/// pipeline is inconsistent (wrong logarithm base, truncated constant,
/// broken counts), not a discovery; callers covering any part of the
/// window should treat one as fatal.
pub const VERIFIED_RANGE: (u64, u64) = (72_065, 2_000_000);

/// Exact g(n) for every n in [3, n_max].
#[derive(Debug, Clone)]
pub struct GoldbachCounts {
    n_max: u64,
    // counts[n] = g(n); entries below 3 stay zero. g(n) ≤ π(2n), which
    // fits u32 for any table this crate can build.
    counts: Vec<u32>,
}

impl GoldbachCounts {
    pub fn n_max(&self) -> u64 {
        self.n_max
    }

    /// g(n), or None outside [3, n_max].
    pub fn g(&self, n: u64) -> Option<u64> {
        if (3..=self.n_max).contains(&n) {
            Some(self.counts[n as usize] as u64)
        } else {
            None
        }
    }
}

/// Bulk exact counts via self-convolution of the odd-prime indicator
/// over [0, 2·n_max]: the coefficient at 2n is exactly g(n).
pub fn goldbach_counts(n_max: u64, table: &PrimeTable) -> Result<GoldbachCounts> {
    if n_max < 3 {
        return Err(Error::InvalidArgument(format!(
            "counts cover n >= 3, got n_max = {n_max}"
        )));
    }
    let span = 2 * n_max;
    if span > table.limit() {
        return Err(Error::OutOfRange {
            what: "2*n_max",
            value: span,
            limit: table.limit(),
        });
    }
    let mut indicator = vec![0u64; span as usize + 1];
    for p in table.odd_primes().take_while(|&p| p <= span) {
        indicator[p as usize] = 1;
    }
    let conv = ntt::self_convolution(&indicator)?;
    drop(indicator);
    let mut counts = vec![0u32; n_max as usize + 1];
    for n in 3..=n_max as usize {
        let c = conv[2 * n];
        debug_assert!(c <= u32::MAX as u64);
        counts[n] = c as u32;
    }
    Ok(GoldbachCounts { n_max, counts })
}

/// Independent O(π(2n)) oracle for a single g(n): walk odd primes
/// p ≤ 2n − 3 and test 2n − p for primality. 2n − p is odd and ≥ 3, so
/// the ordered-pair count is exactly the number of hits.
pub fn goldbach_brute(n: u64, table: &PrimeTable) -> Result<u64> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "pair sums start at 2n = 4, got n = {n}"
        )));
    }
    let s = 2 * n;
    if s > table.limit() {
        return Err(Error::OutOfRange {
            what: "2*n",
            value: s,
            limit: table.limit(),
        });
    }
    let mut count = 0u64;
    for p in table.odd_primes().take_while(|&p| p + 3 <= s) {
        if table.is_prime(s - p) {
            count += 1;
        }
    }
    Ok(count)
}

/// Partial product ∏ p(p−2)/(p−1)² over odd primes, with a rigorous
/// two-sided enclosure of the full limit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwinPrimeConstant {
    pub terms_used: usize,
    /// The partial product itself, correctly rounded to within one part
    /// in 2⁴⁷ (fixed-point enclosure midpoint).
    pub value: f64,
    /// Encloses the infinite product, not just the partial one: the
    /// lower end discounts the truncated tail by its proven bound.
    pub bracket: (f64, f64),
}

/// Largest prime a constant term may use: p(p−2) must fit the headroom
/// above the 2⁸⁰ fixed-point scale inside u128.
const CONSTANT_PRIME_CAP: u64 = 1 << 24;

fn constant_from_odd_primes<I>(odd_primes: I, num_primes: usize) -> Result<TwinPrimeConstant>
where
    I: IntoIterator<Item = u64>,
{
    if num_primes == 0 {
        return Err(Error::InvalidArgument(
            "the constant needs at least one term".into(),
        ));
    }
    // Fixed point at scale 2^80: every factor is < 1, so the running
    // products only shrink and p(p−2) < 2^48 keeps lo·num inside u128.
    const SHIFT: u32 = 80;
    let scale = 1u128 << SHIFT;
    let mut lo = scale;
    let mut hi = scale;
    let mut taken = 0usize;
    let mut last = 0u64;
    for p in odd_primes {
        if taken == num_primes {
            break;
        }
        debug_assert!(p >= 3 && p % 2 == 1);
        if p >= CONSTANT_PRIME_CAP {
            return Err(Error::ResourceLimit(format!(
                "constant terms support primes below {CONSTANT_PRIME_CAP}, reached {p}"
            )));
        }
        let num = (p * (p - 2)) as u128;
        let den = ((p - 1) * (p - 1)) as u128;
        lo = lo * num / den;
        hi = (hi * num).div_ceil(den);
        taken += 1;
        last = p;
    }
    if taken < num_primes {
        return Err(Error::ResourceLimit(format!(
            "prime source supplied only {taken} of {num_primes} odd primes"
        )));
    }
    // Tail of the limit: the primes beyond `last` multiply in at least
    // ∏(1 − 1/(p−1)²) ≥ 1 − Σ 1/(p−1)², and summing over all even
    // integers e > last − 1 gives Σ 1/e² < 1/(2(last−1)).
    let tail = 1.0 / (2.0 * (last - 1) as f64);
    let value_lo = lo as f64 / scale as f64;
    let value_hi = hi as f64 / scale as f64;
    let lower = (value_lo * (1.0 - tail)).next_down().next_down();
    let upper = value_hi.next_up().next_up();
    let value = ((lo + hi) / 2) as f64 / scale as f64;
    Ok(TwinPrimeConstant {
        terms_used: taken,
        value,
        bracket: (lower, upper),
    })
}

/// Constant over the first num_primes odd primes of the table.
pub fn twin_prime_constant(num_primes: usize, table: &PrimeTable) -> Result<TwinPrimeConstant> {
    constant_from_odd_primes(table.odd_primes(), num_primes)
}

/// Constant without a caller-supplied table: sizes a private bits-only
/// sieve from the k-th-prime upper bound k(ln k + ln ln k), so the
/// required term count never depends on any table picked for other
/// work.
pub fn twin_prime_constant_auto(num_primes: usize) -> Result<TwinPrimeConstant> {
    if num_primes == 0 {
        return Err(Error::InvalidArgument(
            "the constant needs at least one term".into(),
        ));
    }
    // The k-th prime (k-1-th odd prime) is below k(ln k + ln ln k) for
    // k ≥ 6; clamp small k up rather than special-casing.
    let k = (num_primes + 1).max(6) as f64;
    let bound = (k * (k.ln() + k.ln().ln())).ceil() as u64 + 100;
    let bits = sieve_odd_primes(bound);
    constant_from_odd_primes(bits.iter(), num_primes)
}

/// The density model h(n) = 4cn/(ln n)²·𝒮(n). Natural logarithm: the
/// crossover scan below only reproduces its expected boundary under
/// that reading, and the CLI aborts if it does not.
pub fn hl_estimate(n: u64, c: f64, table: &PrimeTable) -> Result<f64> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "the model needs n >= 2 (ln 1 = 0), got {n}"
        )));
    }
    if !(c > 0.0) {
        return Err(Error::InvalidArgument(format!("c must be positive, got {c}")));
    }
    let s = sylvester_float(n, table)?;
    let ln = (n as f64).ln();
    Ok(4.0 * c * n as f64 / (ln * ln) * s)
}

/// The normalized count G(n) = (ln n)²·g_n/(4cn); G/𝒮 = g/h, so G
/// tracks 𝒮 wherever the model tracks the counts.
pub fn big_g(n: u64, g_n: u64, c: f64) -> Result<f64> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "the normalization needs n >= 2, got {n}"
        )));
    }
    if !(c > 0.0) {
        return Err(Error::InvalidArgument(format!("c must be positive, got {c}")));
    }
    let ln = (n as f64).ln();
    Ok(ln * ln * g_n as f64 / (4.0 * c * n as f64))
}

/// Scan tuning: chunking for the data-parallel sweep and the relative
/// gap below which a float comparison is not trusted.
#[derive(Debug, Clone, Copy)]
pub struct ScanConfig {
    pub chunk_size: usize,
    pub precision_guard: f64,
}

impl Default for ScanConfig {
    fn default() -> Self {
        ScanConfig {
            chunk_size: 1 << 16,
            precision_guard: 1e-12,
        }
    }
}

/// One n where 𝒮(n) ≥ G(n). near_tie marks comparisons that fell
/// inside the precision guard and were settled exactly.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Violation {
    pub n: u64,
    pub sylvester: f64,
    pub big_g: f64,
    pub near_tie: bool,
}

#[derive(Debug, Clone)]
pub struct CrossoverReport {
    pub n_lo: u64,
    pub n_hi: u64,
    /// Ascending by n.
    pub violations: Vec<Violation>,
    /// Comparisons that needed exact escalation, violations or not.
    pub near_ties: u64,
}

/// Reports every n in [n_lo, n_hi] with 𝒮(n) ≥ G(n). The comparison is
/// double-precision except within the guard, where the exact path
/// decides; an undecidable near-tie surfaces as PrecisionExhausted
/// rather than a silent coin flip.
pub fn crossover_scan(
    n_lo: u64,
    n_hi: u64,
    constant: &TwinPrimeConstant,
    table: &PrimeTable,
    config: &ScanConfig,
) -> Result<CrossoverReport> {
    let counts = goldbach_counts(n_hi, table)?;
    crossover_scan_with_counts(n_lo, n_hi, constant, &counts, table, config)
}

/// Scan against precomputed counts, for callers that already hold them.
pub fn crossover_scan_with_counts(
    n_lo: u64,
    n_hi: u64,
    constant: &TwinPrimeConstant,
    counts: &GoldbachCounts,
    table: &PrimeTable,
    config: &ScanConfig,
) -> Result<CrossoverReport> {
    validate_comet_range(n_lo, n_hi, counts, table)?;
    if config.chunk_size == 0 {
        return Err(Error::InvalidArgument("chunk_size must be positive".into()));
    }
    if !(config.precision_guard >= 0.0) {
        return Err(Error::InvalidArgument(format!(
            "precision_guard must be a nonnegative float, got {}",
            config.precision_guard
        )));
    }
    let step = config.chunk_size as u64;
    let chunks: Vec<(u64, u64)> = (n_lo..=n_hi)
        .step_by(config.chunk_size)
        .map(|lo| (lo, (lo + step - 1).min(n_hi)))
        .collect();
    // Chunks collect in index order, so the flattened list ascends by n
    // no matter how the workers interleave.
    let scanned: Result<Vec<_>> = chunks
        .par_iter()
        .map(|&(lo, hi)| scan_chunk(lo, hi, constant, counts, table, config.precision_guard))
        .collect();
    let mut violations = Vec::new();
    let mut near_ties = 0u64;
    for (mut part, ties) in scanned? {
        violations.append(&mut part);
        near_ties += ties;
    }
    Ok(CrossoverReport {
        n_lo,
        n_hi,
        violations,
        near_ties,
    })
}

fn scan_chunk(
    lo: u64,
    hi: u64,
    constant: &TwinPrimeConstant,
    counts: &GoldbachCounts,
    table: &PrimeTable,
    guard: f64,
) -> Result<(Vec<Violation>, u64)> {
    let c = constant.value;
    let mut violations = Vec::new();
    let mut near_ties = 0u64;
    for n in lo..=hi {
        let g = counts.g(n).expect("range validated against counts");
        let s = sylvester_float(n, table)?;
        let ln = (n as f64).ln();
        let big_g = ln * ln * g as f64 / (4.0 * c * n as f64);
        let gap = (s - big_g).abs();
        if gap < guard * s.max(big_g) {
            near_ties += 1;
            if !precise::confirm_strictly_less(n, g, constant, table)? {
                violations.push(Violation {
                    n,
                    sylvester: s,
                    big_g,
                    near_tie: true,
                });
            }
        } else if s >= big_g {
            violations.push(Violation {
                n,
                sylvester: s,
                big_g,
                near_tie: false,
            });
        }
    }
    Ok((violations, near_ties))
}

/// One row of comet output.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CometRecord {
    pub n: u64,
    pub g: u64,
    pub sylvester: f64,
    pub big_g: f64,
    /// Populated on request only; the default output omits the column.
    pub phi_bar: Option<f64>,
}

/// Streams records for n = n_lo, n_lo + stride, … ≤ n_hi in ascending
/// order. Validation happens up front so the iterator itself cannot
/// fail.
pub fn comet_emit<'a>(
    n_lo: u64,
    n_hi: u64,
    stride: u64,
    with_phi_bar: bool,
    constant: &TwinPrimeConstant,
    counts: &'a GoldbachCounts,
    table: &'a PrimeTable,
) -> Result<impl Iterator<Item = CometRecord> + 'a> {
    validate_comet_range(n_lo, n_hi, counts, table)?;
    if stride == 0 {
        return Err(Error::InvalidArgument("stride must be positive".into()));
    }
    let c = constant.value;
    Ok((n_lo..=n_hi).step_by(stride as usize).map(move |n| {
        let g = counts.g(n).expect("range validated against counts");
        let sylvester = sylvester_float(n, table).expect("range validated against table");
        let ln = (n as f64).ln();
        let big_g = ln * ln * g as f64 / (4.0 * c * n as f64);
        let phi_bar = if with_phi_bar {
            Some(phi_bar_float(n, table).expect("range validated against table"))
        } else {
            None
        };
        CometRecord {
            n,
            g,
            sylvester,
            big_g,
            phi_bar,
        }
    }))
}

fn validate_comet_range(
    n_lo: u64,
    n_hi: u64,
    counts: &GoldbachCounts,
    table: &PrimeTable,
) -> Result<()> {
    if n_lo < 3 || n_lo > n_hi {
        return Err(Error::InvalidArgument(format!(
            "need 3 <= n_lo <= n_hi, got [{n_lo}, {n_hi}]"
        )));
    }
    if n_hi > counts.n_max() {
        return Err(Error::OutOfRange {
            what: "n_hi",
            value: n_hi,
            limit: counts.n_max(),
        });
    }
    if n_hi > table.limit() {
        return Err(Error::OutOfRange {
            what: "n_hi",
            value: n_hi,
            limit: table.limit(),
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::primes::is_prime_u64;

    fn table(limit: u64) -> PrimeTable {
        PrimeTable::build(limit).unwrap()
    }

    #[test]
    fn first_counts() {
        let t = table(64);
        let counts = goldbach_counts(10, &t).unwrap();
        let expected = [(3, 1), (4, 2), (5, 3), (6, 2), (7, 3), (8, 4), (9, 4), (10, 4)];
        for (n, g) in expected {
            assert_eq!(counts.g(n), Some(g), "g({n})");
            assert_eq!(goldbach_brute(n, &t).unwrap(), g, "brute g({n})");
        }
        assert_eq!(counts.g(2), None);
        assert_eq!(counts.g(11), None);
        assert_eq!(goldbach_brute(2, &t).unwrap(), 0);
    }

    #[test]
    fn counts_match_brute_oracle() {
        let t = table(10_000);
        let counts = goldbach_counts(2_000, &t).unwrap();
        for n in 3..=2_000 {
            assert_eq!(
                counts.g(n),
                Some(goldbach_brute(n, &t).unwrap()),
                "mismatch at n = {n}"
            );
        }
    }

    #[test]
    fn count_parity_marks_odd_primes() {
        // Only the diagonal pair p = q = n lacks a mirror, so g(n) is
        // odd exactly when n itself is an odd prime.
        let t = table(10_000);
        let counts = goldbach_counts(2_000, &t).unwrap();
        for n in 3..=2_000u64 {
            let odd = counts.g(n).unwrap() % 2 == 1;
            assert_eq!(odd, n % 2 == 1 && is_prime_u64(n), "parity at n = {n}");
        }
    }

    #[test]
    fn counts_validate_inputs() {
        let t = table(100);
        assert!(matches!(
            goldbach_counts(2, &t),
            Err(Error::InvalidArgument(_))
        ));
        assert!(matches!(
            goldbach_counts(51, &t),
            Err(Error::OutOfRange { what: "2*n_max", value: 102, limit: 100 })
        ));
        assert!(goldbach_counts(50, &t).is_ok());
        assert!(matches!(
            goldbach_brute(1, &t),
            Err(Error::InvalidArgument(_))
        ));
        assert!(matches!(
            goldbach_brute(51, &t),
            Err(Error::OutOfRange { .. })
        ));
    }

    #[test]
    fn constant_small_partials_are_exact() {
        let t = table(100);
        let one = twin_prime_constant(1, &t).unwrap();
        assert_eq!(one.value, 0.75);
        assert_eq!(one.terms_used, 1);
        let two = twin_prime_constant(2, &t).unwrap();
        assert_eq!(two.value, 0.703125);
        // Enclosures must contain both the partial and the limit.
        for c in [one, two] {
            assert!(c.bracket.0 <= 0.6601618 && 0.6601619 <= c.bracket.1);
            assert!(c.bracket.0 <= c.value && c.value <= c.bracket.1);
        }
    }

    #[test]
    fn constant_partials_decrease_into_the_known_window() {
        let t = table(10_000);
        let mut prev = f64::INFINITY;
        for terms in 1..=200 {
            let c = twin_prime_constant(terms, &t).unwrap();
            assert!(c.value < prev, "not strictly decreasing at {terms} terms");
            assert!(c.value > 0.66 && c.value <= 0.75, "escaped window at {terms} terms");
            prev = c.value;
        }
    }

    #[test]
    fn constant_auto_matches_table_route() {
        let t = table(200_000);
        for terms in [1usize, 2, 10, 1_000, 10_000] {
            let a = twin_prime_constant_auto(terms).unwrap();
            let b = twin_prime_constant(terms, &t).unwrap();
            assert_eq!(a, b, "auto vs table at {terms} terms");
        }
    }

    #[test]
    fn constant_input_validation() {
        let t = table(100);
        assert!(matches!(
            twin_prime_constant(0, &t),
            Err(Error::InvalidArgument(_))
        ));
        assert!(matches!(
            twin_prime_constant_auto(0),
            Err(Error::InvalidArgument(_))
        ));
        // π(100) = 25, so 24 odd primes exist below 100.
        assert!(twin_prime_constant(24, &t).is_ok());
        assert!(matches!(
            twin_prime_constant(25, &t),
            Err(Error::ResourceLimit(_))
        ));
    }

    #[test]
    fn model_and_normalization_examples() {
        let t = table(1_000);
        let c = 0.6601618;
        // 𝒮(2^k) = 1 branch.
        let h = hl_estimate(32, c, &t).unwrap();
        let ln32 = (32f64).ln();
        assert!((h - 4.0 * c * 32.0 / (ln32 * ln32)).abs() < 1e-12);
        // Composition with 𝒮(15) = 8/3.
        let h15 = hl_estimate(15, c, &t).unwrap();
        let ln15 = (15f64).ln();
        assert!((h15 - 4.0 * c * 15.0 / (ln15 * ln15) * (8.0 / 3.0)).abs() < 1e-12);
        // G examples.
        assert_eq!(big_g(7, 0, c).unwrap(), 0.0);
        let g5 = big_g(5, 3, c).unwrap();
        let ln5 = (5f64).ln();
        assert!((g5 - ln5 * ln5 * 3.0 / (20.0 * c)).abs() < 1e-15);
    }

    #[test]
    fn normalization_ratio_is_count_over_model() {
        // G/𝒮 = g/h by construction; check the floats actually honor it.
        let t = table(1_000);
        let c = 0.66;
        for (n, g) in [(10u64, 4u64), (100, 12), (315, 24)] {
            let lhs = big_g(n, g, c).unwrap() / sylvester_float(n, &t).unwrap();
            let rhs = g as f64 / hl_estimate(n, c, &t).unwrap();
            assert!((lhs - rhs).abs() < 1e-12 * lhs.abs(), "n = {n}");
        }
    }

    #[test]
    fn model_input_validation() {
        let t = table(100);
        for bad_n in [0u64, 1] {
            assert!(matches!(
                hl_estimate(bad_n, 0.66, &t),
                Err(Error::InvalidArgument(_))
            ));
            assert!(matches!(
                big_g(bad_n, 1, 0.66),
                Err(Error::InvalidArgument(_))
            ));
        }
        for bad_c in [0.0, -1.0, f64::NAN] {
            assert!(matches!(
                hl_estimate(10, bad_c, &t),
                Err(Error::InvalidArgument(_))
            ));
            assert!(matches!(
                big_g(10, 1, bad_c),
                Err(Error::InvalidArgument(_))
            ));
        }
    }

    #[test]
    fn tiny_scan_reports_small_n_violations() {
        // At n = 3, 𝒮 = 2 while G ≈ 0.15: a clear violation, far from
        // any tie.
        let t = table(100);
        let c = twin_prime_constant(5, &t).unwrap();
        let report = crossover_scan(3, 3, &c, &t, &ScanConfig::default()).unwrap();
        assert_eq!(report.violations.len(), 1);
        let v = report.violations[0];
        assert_eq!(v.n, 3);
        assert!(!v.near_tie);
        assert_eq!(report.near_ties, 0);
        assert_eq!(v.sylvester, 2.0);
        let expected_g = (3f64).ln().powi(2) / (12.0 * c.value);
        assert!((v.big_g - expected_g).abs() < 1e-15);
    }

    #[test]
    fn scan_is_chunking_invariant() {
        let t = table(4_000);
        let c = twin_prime_constant(20, &t).unwrap();
        let counts = goldbach_counts(2_000, &t).unwrap();
        let base = crossover_scan_with_counts(
            3,
            2_000,
            &c,
            &counts,
            &t,
            &ScanConfig { chunk_size: 1 << 16, precision_guard: 1e-12 },
        )
        .unwrap();
        for chunk_size in [1usize, 7, 64, 1999] {
            let other = crossover_scan_with_counts(
                3,
                2_000,
                &c,
                &counts,
                &t,
                &ScanConfig { chunk_size, precision_guard: 1e-12 },
            )
            .unwrap();
            assert_eq!(other.violations, base.violations, "chunk {chunk_size}");
            assert_eq!(other.near_ties, base.near_ties, "chunk {chunk_size}");
        }
        // Ascending by n regardless of worker interleaving.
        assert!(base.violations.windows(2).all(|w| w[0].n < w[1].n));
    }

    #[test]
    fn near_ties_escalate_and_resolve() {
        // 𝒮(4) = 1 and G(4) = (ln 4)²·2/(16c) cross exactly at
        // c* = (ln 4)²/8 ≈ 0.240226. Values of c near c* put the float
        // comparison inside a 10⁻² guard, and a bracket sitting wholly
        // on one side of c* makes the exact verdict deterministic.
        let t = table(100);
        let cfg = ScanConfig { chunk_size: 64, precision_guard: 1e-2 };
        // c < c* throughout the bracket → G > 𝒮 strictly → no violation.
        let below = TwinPrimeConstant {
            terms_used: 1,
            value: 0.2402,
            bracket: (0.2400, 0.2402),
        };
        let cleared = crossover_scan(4, 4, &below, &t, &cfg).unwrap();
        assert_eq!(cleared.near_ties, 1);
        assert!(cleared.violations.is_empty());
        // c > c* throughout → 𝒮 ≥ G confirmed → flagged violation.
        let above = TwinPrimeConstant {
            terms_used: 1,
            value: 0.2403,
            bracket: (0.2403, 0.2405),
        };
        let confirmed = crossover_scan(4, 4, &above, &t, &cfg).unwrap();
        assert_eq!(confirmed.near_ties, 1);
        assert_eq!(confirmed.violations.len(), 1);
        assert!(confirmed.violations[0].near_tie);
        assert_eq!(confirmed.violations[0].n, 4);
    }

    #[test]
    fn loose_and_strict_guards_agree_on_real_data() {
        // Widening the guard reroutes comparisons through the exact
        // path; the violation set must not change. 1000 terms make the
        // bracket ≈10⁻⁴ wide, clear of every crossover point in range
        // (the nearest, at n = 29, sits 3.7·10⁻⁴ from the constant).
        let t = table(400);
        let c = twin_prime_constant_auto(1_000).unwrap();
        let loose = ScanConfig { chunk_size: 64, precision_guard: 0.05 };
        let strict = ScanConfig::default();
        let wide = crossover_scan(3, 200, &c, &t, &loose).unwrap();
        let base = crossover_scan(3, 200, &c, &t, &strict).unwrap();
        assert_eq!(base.near_ties, 0);
        let wide_ns: Vec<u64> = wide.violations.iter().map(|v| v.n).collect();
        let base_ns: Vec<u64> = base.violations.iter().map(|v| v.n).collect();
        assert_eq!(wide_ns, base_ns);
    }

    #[test]
    fn undecidable_near_tie_is_an_error() {
        // A bracket straddling the crossover point c* makes the exact
        // comparison honestly undecidable.
        let t = table(100);
        let c = TwinPrimeConstant {
            terms_used: 1,
            value: 0.2402,
            bracket: (0.2380, 0.2420),
        };
        let cfg = ScanConfig { chunk_size: 64, precision_guard: 1e-2 };
        match crossover_scan(4, 4, &c, &t, &cfg) {
            Err(Error::PrecisionExhausted { n: 4 }) => {}
            other => panic!("expected precision exhaustion, got {other:?}"),
        }
    }

    #[test]
    fn scan_validates_inputs() {
        let t = table(400);
        let c = twin_prime_constant(5, &t).unwrap();
        let cfg = ScanConfig::default();
        assert!(matches!(
            crossover_scan(2, 10, &c, &t, &cfg),
            Err(Error::InvalidArgument(_))
        ));
        assert!(matches!(
            crossover_scan(10, 3, &c, &t, &cfg),
            Err(Error::InvalidArgument(_))
        ));
        assert!(matches!(
            crossover_scan(3, 300, &c, &t, &cfg),
            Err(Error::OutOfRange { .. })
        ));
        let counts = goldbach_counts(100, &t).unwrap();
        assert!(matches!(
            crossover_scan_with_counts(3, 150, &c, &counts, &t, &cfg),
            Err(Error::OutOfRange { .. })
        ));
        assert!(matches!(
            crossover_scan_with_counts(
                3,
                50,
                &c,
                &counts,
                &t,
                &ScanConfig { chunk_size: 0, precision_guard: 1e-12 }
            ),
            Err(Error::InvalidArgument(_))
        ));
        assert!(matches!(
            crossover_scan_with_counts(
                3,
                50,
                &c,
                &counts,
                &t,
                &ScanConfig { chunk_size: 64, precision_guard: f64::NAN }
            ),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn emitted_records_are_consistent() {
        let t = table(1_000);
        let c = twin_prime_constant(10, &t).unwrap();
        let counts = goldbach_counts(500, &t).unwrap();
        let records: Vec<CometRecord> =
            comet_emit(3, 500, 1, false, &c, &counts, &t).unwrap().collect();
        assert_eq!(records.len(), 498);
        for r in &records {
            assert_eq!(Some(r.g), counts.g(r.n));
            assert_eq!(r.big_g, big_g(r.n, r.g, c.value).unwrap());
            assert_eq!(r.sylvester, sylvester_float(r.n, &t).unwrap());
            assert!(r.sylvester > 0.0);
            assert_eq!(r.big_g == 0.0, r.g == 0);
            assert!(r.phi_bar.is_none());
        }
        assert!(records.windows(2).all(|w| w[0].n < w[1].n));
    }

    #[test]
    fn emit_stride_and_optional_column() {
        let t = table(1_000);
        let c = twin_prime_constant(10, &t).unwrap();
        let counts = goldbach_counts(500, &t).unwrap();
        let sampled: Vec<CometRecord> =
            comet_emit(10, 500, 100, true, &c, &counts, &t).unwrap().collect();
        assert_eq!(
            sampled.iter().map(|r| r.n).collect::<Vec<_>>(),
            vec![10, 110, 210, 310, 410]
        );
        for r in &sampled {
            let pb = r.phi_bar.expect("column requested");
            assert_eq!(pb, phi_bar_float(r.n, &t).unwrap());
        }
    }

    #[test]
    fn emit_validates_inputs() {
        let t = table(1_000);
        let c = twin_prime_constant(10, &t).unwrap();
        let counts = goldbach_counts(500, &t).unwrap();
        assert!(matches!(
            comet_emit(3, 500, 0, false, &c, &counts, &t),
            Err(Error::InvalidArgument(_))
        ));
        assert!(matches!(
            comet_emit(3, 501, 1, false, &c, &counts, &t),
            Err(Error::OutOfRange { .. })
        ));
    }
}
