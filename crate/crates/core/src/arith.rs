//! The algebra of strongly multiplicative functions: evaluation,
//! closed-form Dirichlet convolution and inversion at prime powers, a
//! definition-level recurrence oracle the closed forms are checked
//! against, and fiber witnesses (distinct integers sharing a value).
//!
//! A function f is strongly multiplicative when f(1) = 1 and
//! f(p^k) = f(p) for every prime p and k ≥ 1, so f is determined by its
//! values at primes. The two members that matter here:
//!
//! * φ̄(n) = φ(n)/n, with φ̄(p) = (p−1)/p;
//! * the Sylvester factor 𝒮(n) = ∏_{p|n, p≠2} (p−1)/(p−2), with
//!   𝒮(2) = 1 (empty product) and 𝒮(p) = (p−1)/(p−2) for odd p.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BinaryHeap};

use num::{BigInt, BigUint, One, Zero};

use crate::primes::{is_prime_u64, PrimeTable};
use crate::{Error, Result};

/// Arbitrary-precision rational, the value type of every exact identity
/// in the crate. `Rational::new` reduces to lowest terms with a
/// positive denominator.
pub type Rational = num::BigRational;

/// Rational from a machine-integer pair.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

enum PrimeValues {
    /// Total rule, computable at any prime.
    Rule(fn(u64) -> Rational),
    /// Explicit table; primes outside it are a domain error.
    Table(BTreeMap<u64, Rational>),
}

/// A strongly multiplicative function, specified by its values at
/// primes plus a display name for diagnostics.
pub struct SmfSpec {
    name: String,
    values: PrimeValues,
}

impl SmfSpec {
    /// φ̄(n) = φ(n)/n.
    pub fn phi_bar() -> SmfSpec {
        SmfSpec {
            name: "phi_bar".to_string(),
            values: PrimeValues::Rule(|p| ratio(p as i64 - 1, p as i64)),
        }
    }

    /// The Sylvester factor 𝒮.
    pub fn sylvester() -> SmfSpec {
        SmfSpec {
            name: "sylvester".to_string(),
            values: PrimeValues::Rule(|p| {
                if p == 2 {
                    Rational::one()
                } else {
                    ratio(p as i64 - 1, p as i64 - 2)
                }
            }),
        }
    }

    /// A function given by an explicit prime-value table. Evaluation at
    /// a prime missing from the table fails with a domain error.
    pub fn from_prime_values(
        name: impl Into<String>,
        values: BTreeMap<u64, Rational>,
    ) -> SmfSpec {
        SmfSpec {
            name: name.into(),
            values: PrimeValues::Table(values),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// f(p). The caller guarantees p is prime; only definedness is
    /// checked here.
    pub fn value_at_prime(&self, p: u64) -> Result<Rational> {
        match &self.values {
            PrimeValues::Rule(rule) => Ok(rule(p)),
            PrimeValues::Table(map) => map.get(&p).cloned().ok_or_else(|| {
                Error::UndefinedPrime {
                    name: self.name.clone(),
                    prime: p,
                }
            }),
        }
    }
}

/// f(n) = ∏_{p|n} f(p) for n ≥ 1; the empty product makes f(1) = 1.
pub fn smf_eval(f: &SmfSpec, n: u64, table: &PrimeTable) -> Result<Rational> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "strongly multiplicative functions are defined on n ≥ 1".to_string(),
        ));
    }
    if n == 1 {
        return Ok(Rational::one());
    }
    let fac = table.factorize(n)?;
    let mut acc = Rational::one();
    for p in fac.distinct_primes() {
        acc *= f.value_at_prime(p)?;
    }
    Ok(acc)
}

fn check_eval_range(what: &'static str, n: u64, table: &PrimeTable) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidArgument(format!(
            "{what} is defined on n ≥ 1"
        )));
    }
    if n > table.limit() {
        return Err(Error::OutOfRange {
            what: "n",
            value: n,
            limit: table.limit(),
        });
    }
    Ok(())
}

/// Double-precision 𝒮(n), factors multiplied in ascending prime order
/// so the rounding is deterministic. n = 1 and n = 2^k give exactly 1.
/// Allocation-free: this sits inside the crossover scan's hot loop.
pub fn sylvester_float(n: u64, table: &PrimeTable) -> Result<f64> {
    check_eval_range("sylvester_float", n, table)?;
    let mut acc = 1.0f64;
    if n == 1 {
        return Ok(acc);
    }
    let mut rest = n >> n.trailing_zeros();
    while rest > 1 {
        let p = table.spf_raw(rest);
        acc *= (p - 1) as f64 / (p - 2) as f64;
        while rest % p == 0 {
            rest /= p;
        }
    }
    Ok(acc)
}

/// Double-precision φ̄(n), same evaluation contract as
/// [`sylvester_float`].
pub fn phi_bar_float(n: u64, table: &PrimeTable) -> Result<f64> {
    check_eval_range("phi_bar_float", n, table)?;
    let mut acc = 1.0f64;
    if n == 1 {
        return Ok(acc);
    }
    let mut rest = n;
    while rest > 1 {
        let p = table.spf_raw(rest);
        acc *= (p - 1) as f64 / p as f64;
        while rest % p == 0 {
            rest /= p;
        }
    }
    Ok(acc)
}

fn ensure_prime(p: u64) -> Result<()> {
    if is_prime_u64(p) {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("{p} is not prime")))
    }
}

/// (f∗g)(p^k) for strongly multiplicative f and g:
/// 1 at k = 0, and f(p) + g(p) + (k−1)·f(p)·g(p) for k ≥ 1.
///
/// The k ≥ 1 form is the Dirichlet sum Σ_{i=0..k} f(p^i)g(p^{k−i})
/// collapsed by strong multiplicativity; the k = 0 case is (f∗g)(1) = 1.
pub fn convolve_prime_power(f: &SmfSpec, g: &SmfSpec, p: u64, k: u32) -> Result<Rational> {
    ensure_prime(p)?;
    if k == 0 {
        return Ok(Rational::one());
    }
    let fp = f.value_at_prime(p)?;
    let gp = g.value_at_prime(p)?;
    let cross = &fp * &gp * Rational::from_integer(BigInt::from(k - 1));
    Ok(fp + gp + cross)
}

/// f⁻¹(p^k), the Dirichlet inverse of strongly multiplicative f at a
/// prime power: 1 at k = 0 and (−1)^k·f(p)·(f(p)−1)^{k−1} for k ≥ 1
/// (which is −f(p) at k = 1).
pub fn inverse_prime_power(f: &SmfSpec, p: u64, k: u32) -> Result<Rational> {
    ensure_prime(p)?;
    if k == 0 {
        return Ok(Rational::one());
    }
    let fp = f.value_at_prime(p)?;
    let shifted = &fp - Rational::one();
    let mut v = fp;
    for _ in 1..k {
        v *= &shifted;
    }
    if k % 2 == 1 {
        v = -v;
    }
    Ok(v)
}

/// Values of an arbitrary arithmetic function sampled at prime powers:
/// the input to the definition-level inversion oracle. (p, 0) defaults
/// to f(1) = 1 unless an entry overrides it.
pub struct PrimePowerValueTable {
    name: String,
    entries: BTreeMap<(u64, u32), Rational>,
}

impl PrimePowerValueTable {
    pub fn new(name: impl Into<String>) -> PrimePowerValueTable {
        PrimePowerValueTable {
            name: name.into(),
            entries: BTreeMap::new(),
        }
    }

    /// Sample a strongly multiplicative function at p^0..p^k_max.
    pub fn from_smf(f: &SmfSpec, p: u64, k_max: u32) -> Result<PrimePowerValueTable> {
        let mut t = PrimePowerValueTable::new(f.name());
        let fp = f.value_at_prime(p)?;
        for k in 1..=k_max {
            t.insert(p, k, fp.clone());
        }
        Ok(t)
    }

    pub fn insert(&mut self, p: u64, k: u32, value: Rational) {
        self.entries.insert((p, k), value);
    }

    pub fn value(&self, p: u64, k: u32) -> Result<Rational> {
        if let Some(v) = self.entries.get(&(p, k)) {
            return Ok(v.clone());
        }
        if k == 0 {
            return Ok(Rational::one());
        }
        Err(Error::InvalidArgument(format!(
            "{} has no sampled value at {p}^{k}",
            self.name
        )))
    }
}

/// Dirichlet inverse at p^0..p^k_max straight from the definition,
/// with no multiplicativity assumptions:
/// f⁻¹(1) = 1 and f⁻¹(p^k) = −Σ_{i=1..k} f(p^i)·f⁻¹(p^{k−i}).
///
/// This is the oracle the closed form [`inverse_prime_power`] is tested
/// against. Requires f(1) = 1, the invertibility condition.
pub fn dirichlet_inverse_oracle(
    values: &PrimePowerValueTable,
    p: u64,
    k_max: u32,
) -> Result<Vec<Rational>> {
    ensure_prime(p)?;
    let at_one = values.value(p, 0)?;
    if !at_one.is_one() {
        return Err(Error::NotInvertible(at_one.to_string()));
    }
    let mut inv = vec![Rational::one()];
    for k in 1..=k_max {
        let mut s = Rational::zero();
        for i in 1..=k {
            s += values.value(p, i)? * &inv[(k - i) as usize];
        }
        inv.push(-s);
    }
    Ok(inv)
}

/// `count` distinct integers sharing f's value at m, ascending, with m
/// itself first.
///
/// Witnesses are m·k where k runs over integers supported on m's own
/// primes; multiplying by such k changes no distinct-prime set, so
/// strong multiplicativity pins the value. Powers of m's largest prime
/// overtake any sieve limit almost immediately (m = 97, count = 10
/// already needs 97¹⁰ > 2⁶⁴), so witnesses come back as big integers
/// and are not capped by the table; only m itself must be in range to
/// be factorized.
pub fn fiber_witnesses(
    f: &SmfSpec,
    m: u64,
    count: usize,
    table: &PrimeTable,
) -> Result<Vec<BigUint>> {
    if m < 2 {
        return Err(Error::InvalidArgument(format!(
            "fiber witnesses need m ≥ 2, got {m}"
        )));
    }
    if count == 0 {
        return Err(Error::InvalidArgument(
            "fiber witness count must be at least 1".to_string(),
        ));
    }
    let fac = table.factorize(m)?;
    let primes: Vec<u64> = fac.distinct_primes().collect();
    for &p in &primes {
        f.value_at_prime(p)?; // fail early if f is partial
    }
    // Ascending enumeration of m·k, supp(k) ⊆ supp(m): a min-heap where
    // each popped value spawns children by primes at or after its own
    // last factor, so every product is generated exactly once.
    let mut heap: BinaryHeap<Reverse<(BigUint, usize)>> = BinaryHeap::new();
    heap.push(Reverse((BigUint::from(m), 0)));
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let Reverse((v, first)) = heap.pop().expect("children keep the heap nonempty");
        for (j, &p) in primes.iter().enumerate().skip(first) {
            heap.push(Reverse((&v * p, j)));
        }
        out.push(v);
    }
    Ok(out)
}

/// Exact comparison of two nonnegative fractions a/b and c/d (b, d > 0)
/// by cross-multiplication in u128; no reduction, no rounding.
pub(crate) fn frac_cmp(a: u64, b: u64, c: u64, d: u64) -> std::cmp::Ordering {
    (a as u128 * d as u128).cmp(&(c as u128 * b as u128))
}
