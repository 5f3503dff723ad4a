//! Prime infrastructure: an odd-only sieve paired with a
//! smallest-prime-factor array, O(1) primality on the sieved range,
//! factorization, and primorials.

use num::BigUint;

use crate::{Error, Result};

/// Largest limit [`PrimeTable::build`] accepts. The factor array costs
/// two bytes per integer in range, so this caps table memory near 2 GiB.
pub const MAX_TABLE_LIMIT: u64 = 1_000_000_000;

/// Immutable sieve over [2, limit].
///
/// Odd numbers are the only ones stored: `odd_bits` holds one primality
/// bit per odd integer and `spf_odd` the smallest prime factor of every
/// odd composite. Even numbers answer trivially. Construction is eager;
/// the table never changes afterwards and is safe to share across
/// threads.
pub struct PrimeTable {
    limit: u64,
    /// Bit i set iff 2i+1 is prime. Bit 0 (the integer 1) stays clear.
    odd_bits: Vec<u64>,
    /// spf_odd[i] = smallest prime factor of 2i+1, or 0 when 2i+1 is 1
    /// or prime.
    spf_odd: Vec<u32>,
    prime_count: usize,
}

impl PrimeTable {
    /// Sieve [2, limit]. Errors: limit < 2 is invalid, and limits past
    /// [`MAX_TABLE_LIMIT`] are refused rather than attempted.
    pub fn build(limit: u64) -> Result<PrimeTable> {
        if limit < 2 {
            return Err(Error::InvalidArgument(format!(
                "table limit must be at least 2, got {limit}"
            )));
        }
        if limit > MAX_TABLE_LIMIT {
            return Err(Error::ResourceLimit(format!(
                "table limit {limit} exceeds the supported maximum {MAX_TABLE_LIMIT}"
            )));
        }
        let half = ((limit + 1) / 2) as usize;
        let mut spf_odd = vec![0u32; half];
        let mut p = 3u64;
        while p * p <= limit {
            if spf_odd[(p >> 1) as usize] == 0 {
                // p is prime; mark odd multiples from p² up, keeping the
                // smallest marker (p ascends, so first write wins).
                let mut m = p * p;
                while m <= limit {
                    let slot = &mut spf_odd[(m >> 1) as usize];
                    if *slot == 0 {
                        *slot = p as u32;
                    }
                    m += 2 * p;
                }
            }
            p += 2;
        }
        let mut odd_bits = vec![0u64; half.div_ceil(64)];
        let mut prime_count = 1; // the prime 2
        for i in 1..half {
            if spf_odd[i] == 0 {
                odd_bits[i / 64] |= 1u64 << (i % 64);
                prime_count += 1;
            }
        }
        Ok(PrimeTable {
            limit,
            odd_bits,
            spf_odd,
            prime_count,
        })
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    /// π(limit), counted once at construction.
    pub fn prime_count(&self) -> usize {
        self.prime_count
    }

    /// O(1) primality for k ≤ limit. Panics beyond the sieved range:
    /// silently falling back to trial division would hide a scaling bug.
    pub fn is_prime(&self, k: u64) -> bool {
        assert!(
            k <= self.limit,
            "is_prime({k}) is beyond the table limit {}",
            self.limit
        );
        if k == 2 {
            return true;
        }
        if k < 2 || k % 2 == 0 {
            return false;
        }
        let i = (k >> 1) as usize;
        self.odd_bits[i / 64] >> (i % 64) & 1 == 1
    }

    /// Smallest prime factor of k, for 2 ≤ k ≤ limit.
    pub fn smallest_prime_factor(&self, k: u64) -> Result<u64> {
        if k < 2 {
            return Err(Error::InvalidArgument(format!(
                "smallest_prime_factor needs k ≥ 2, got {k}"
            )));
        }
        if k > self.limit {
            return Err(Error::OutOfRange {
                what: "k",
                value: k,
                limit: self.limit,
            });
        }
        if k % 2 == 0 {
            return Ok(2);
        }
        match self.spf_odd[(k >> 1) as usize] {
            0 => Ok(k), // prime
            s => Ok(s as u64),
        }
    }

    /// Hot-path smallest prime factor: the caller guarantees
    /// 2 ≤ k ≤ limit, so no validation and no Result.
    pub(crate) fn spf_raw(&self, k: u64) -> u64 {
        debug_assert!(k >= 2 && k <= self.limit);
        if k % 2 == 0 {
            return 2;
        }
        match self.spf_odd[(k >> 1) as usize] {
            0 => k,
            s => s as u64,
        }
    }

    /// All primes in [2, limit], ascending.
    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        std::iter::once(2u64).chain(self.odd_primes())
    }

    /// Odd primes in [3, limit], ascending.
    pub fn odd_primes(&self) -> impl Iterator<Item = u64> + '_ {
        (1..((self.limit + 1) / 2) as usize)
            .filter(move |&i| self.odd_bits[i / 64] >> (i % 64) & 1 == 1)
            .map(|i| 2 * i as u64 + 1)
    }

    /// The i-th prime p_i, 1-indexed (p₁ = 2).
    pub fn nth_prime(&self, i: usize) -> Result<u64> {
        if i == 0 {
            return Err(Error::InvalidArgument(
                "prime indices start at 1".to_string(),
            ));
        }
        self.primes().nth(i - 1).ok_or_else(|| {
            Error::ResourceLimit(format!(
                "table up to {} holds {} primes, cannot supply p_{i}",
                self.limit, self.prime_count
            ))
        })
    }

    /// n = ∏ pᵢ^eᵢ with ascending pᵢ and every eᵢ ≥ 1, via repeated
    /// smallest-factor division: O(log n) table lookups.
    pub fn factorize(&self, n: u64) -> Result<Factorization> {
        if n < 2 {
            return Err(Error::InvalidArgument(format!(
                "factorize needs n ≥ 2, got {n}"
            )));
        }
        if n > self.limit {
            return Err(Error::OutOfRange {
                what: "n",
                value: n,
                limit: self.limit,
            });
        }
        let mut factors = Vec::new();
        let mut m = n;
        let twos = m.trailing_zeros();
        if twos > 0 {
            factors.push((2u64, twos));
            m >>= twos;
        }
        while m > 1 {
            let p = match self.spf_odd[(m >> 1) as usize] {
                0 => m,
                s => s as u64,
            };
            let mut e = 0u32;
            while m % p == 0 {
                m /= p;
                e += 1;
            }
            factors.push((p, e));
        }
        Ok(Factorization { n, factors })
    }

    /// P_i = p₁·p₂⋯p_i, the i-th primorial. Grows past u64 almost
    /// immediately (P₁₆ overflows), hence the big integer.
    pub fn nth_primorial(&self, i: usize) -> Result<BigUint> {
        if i == 0 {
            return Err(Error::InvalidArgument(
                "primorial indices start at 1".to_string(),
            ));
        }
        let primes: Vec<u64> = self.primes().take(i).collect();
        if primes.len() < i {
            return Err(Error::ResourceLimit(format!(
                "table up to {} holds {} primes, cannot form P_{i}",
                self.limit, self.prime_count
            )));
        }
        Ok(primes.iter().map(|&p| BigUint::from(p)).product())
    }
}

/// A factorization n = ∏ pᵢ^eᵢ, primes ascending, exponents ≥ 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    n: u64,
    factors: Vec<(u64, u32)>,
}

impl Factorization {
    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    pub fn distinct_primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|&(_, e)| e == 1)
    }

    /// ∏ pᵢ^eᵢ, which must reproduce n.
    pub fn recompose(&self) -> u64 {
        self.factors
            .iter()
            .map(|&(p, e)| p.pow(e))
            .product::<u64>()
    }
}

/// Deterministic Miller–Rabin for u64: exact, table-free primality for
/// argument validation where no sieve is in scope.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let d = n - 1;
    let s = d.trailing_zeros();
    let d = d >> s;
    // This witness set decides primality for every n < 2^64.
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod_u64(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod_u64(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn mul_mod_u64(a: u64, b: u64, m: u64) -> u64 {
    (a as u128 * b as u128 % m as u128) as u64
}

fn pow_mod_u64(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod_u64(acc, base, m);
        }
        base = mul_mod_u64(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Bare odd-prime bitset: no factor data, an eighth of the memory of a
/// full table. Enough for prime enumeration (constant computation).
pub(crate) struct OddPrimeBits {
    limit: u64,
    bits: Vec<u64>,
}

pub(crate) fn sieve_odd_primes(limit: u64) -> OddPrimeBits {
    let half = ((limit + 1) / 2) as usize;
    // Start all-prime, clear composites; bit 0 (the integer 1) cleared.
    let mut bits = vec![!0u64; half.div_ceil(64).max(1)];
    bits[0] &= !1u64;
    let mut p = 3u64;
    while p * p <= limit {
        if bits[(p >> 1) as usize / 64] >> ((p >> 1) as usize % 64) & 1 == 1 {
            let mut m = p * p;
            while m <= limit {
                let i = (m >> 1) as usize;
                bits[i / 64] &= !(1u64 << (i % 64));
                m += 2 * p;
            }
        }
        p += 2;
    }
    OddPrimeBits { limit, bits }
}

impl OddPrimeBits {
    pub(crate) fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        (1..((self.limit + 1) / 2) as usize)
            .filter(move |&i| self.bits[i / 64] >> (i % 64) & 1 == 1)
            .map(|i| 2 * i as u64 + 1)
    }
}
