//! Counting ordered representations of a residue as a sum of two units
//! mod m, and the identity tying those counts to the Sylvester factor:
//! for m = 2·q₁⋯q_t (distinct odd primes), s*_m(2n) = 𝒮(d)·s*_m(2)
//! with d = gcd(2n, m).

use num::integer::gcd;
use num::Signed;

use crate::arith::{ratio, smf_eval, Rational, SmfSpec};
use crate::primes::{is_prime_u64, PrimeTable};
use crate::{Error, Result};

/// s*_m(n): ordered pairs (r, s) of units mod m with r + s ≡ n (mod m).
///
/// The closed product m·∏_{p|m, p|n}(1−1/p)·∏_{p|m, p∤n}(1−2/p) is
/// applied only when m is squarefree and even, the shape the identity
/// machinery needs; every other m is answered by exhaustive count so
/// the formula is never trusted off its warranted domain.
pub fn unit_pairs_formula(m: u64, n: i64, table: &PrimeTable) -> Result<u64> {
    if m < 2 {
        return Err(Error::InvalidArgument(format!(
            "unit pairs need a modulus m ≥ 2, got {m}"
        )));
    }
    if m > table.limit() {
        return Err(Error::OutOfRange {
            what: "m",
            value: m,
            limit: table.limit(),
        });
    }
    let fac = table.factorize(m)?;
    if m % 2 != 0 || !fac.is_squarefree() {
        return unit_pairs_brute(m, n);
    }
    let n_mod = n.rem_euclid(m as i64) as u64;
    let mut val = Rational::from_integer(m.into());
    for p in fac.distinct_primes() {
        val *= if n_mod % p == 0 {
            ratio(p as i64 - 1, p as i64)
        } else {
            ratio(p as i64 - 2, p as i64)
        };
    }
    if !val.is_integer() || val.is_negative() {
        return Err(Error::FormulaDomain {
            m,
            reason: format!("closed product evaluated to {val}"),
        });
    }
    // Bounded by m, so the conversion cannot fail.
    Ok(u64::try_from(val.to_integer()).expect("count is within [0, m]"))
}

/// Exhaustive s*_m(n): one pass over the units r, testing n − r. O(m)
/// gcds; the reference the closed form is measured against.
pub fn unit_pairs_brute(m: u64, n: i64) -> Result<u64> {
    if m < 2 {
        return Err(Error::InvalidArgument(format!(
            "unit pairs need a modulus m ≥ 2, got {m}"
        )));
    }
    let n_mod = n.rem_euclid(m as i64) as u64;
    let mut count = 0u64;
    for r in 1..m {
        if gcd(r, m) == 1 {
            let s = (n_mod + m - r) % m;
            // gcd(0, m) = m, so s = 0 is excluded without a special case.
            if gcd(s, m) == 1 {
                count += 1;
            }
        }
    }
    Ok(count)
}

/// s*_m(n) for every residue n ∈ [0, m) at once, by enumerating
/// Z*_m × Z*_m. O(φ(m)²) after an O(m log m) unit scan; the oracle of
/// choice when a whole row of counts is needed.
pub fn unit_pair_counts(m: u64) -> Result<Vec<u64>> {
    if m < 2 {
        return Err(Error::InvalidArgument(format!(
            "unit pairs need a modulus m ≥ 2, got {m}"
        )));
    }
    let mm = m as usize;
    let units: Vec<usize> = (1..mm).filter(|&r| gcd(r as u64, m) == 1).collect();
    let mut counts = vec![0u64; mm];
    for &r in &units {
        for &s in &units {
            counts[(r + s) % mm] += 1;
        }
    }
    Ok(counts)
}

/// Both sides of the identity s*_m(2n) = 𝒮(d)·s*_m(2) for
/// m = 2·q₁⋯q_t, d = gcd(2n, m).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityCheck {
    pub m: u64,
    pub d: u64,
    pub lhs: u64,
    pub rhs: u64,
    pub equal: bool,
}

/// Evaluate the identity at n for the modulus built from the given
/// distinct odd primes. The right side 𝒮(d)·s*_m(2) is assembled in
/// exact rationals and must come out integral.
pub fn sylvester_identity_check(
    odd_primes: &[u64],
    n: u64,
    table: &PrimeTable,
) -> Result<IdentityCheck> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "identity checks need n ≥ 1".to_string(),
        ));
    }
    let mut m: u64 = 2;
    for (i, &q) in odd_primes.iter().enumerate() {
        if q == 2 || !is_prime_u64(q) {
            return Err(Error::InvalidArgument(format!(
                "modulus factors must be odd primes, got {q}"
            )));
        }
        if odd_primes[..i].contains(&q) {
            return Err(Error::InvalidArgument(format!(
                "modulus factors must be distinct, {q} repeats"
            )));
        }
        m = m.checked_mul(q).ok_or_else(|| {
            Error::InvalidArgument("modulus overflows u64".to_string())
        })?;
    }
    if m > table.limit() {
        return Err(Error::OutOfRange {
            what: "m",
            value: m,
            limit: table.limit(),
        });
    }
    let two_n = n.checked_mul(2).ok_or_else(|| {
        Error::InvalidArgument("2n overflows u64".to_string())
    })?;
    let d = gcd(two_n, m);
    let lhs = unit_pairs_formula(m, (two_n % m) as i64, table)?;
    let s_d = smf_eval(&SmfSpec::sylvester(), d, table)?;
    let s_star_2 = unit_pairs_formula(m, 2, table)?;
    let rhs_exact = s_d * Rational::from_integer(s_star_2.into());
    if !rhs_exact.is_integer() || rhs_exact.is_negative() {
        return Err(Error::FormulaDomain {
            m,
            reason: format!("𝒮(d)·s*_m(2) evaluated to {rhs_exact}"),
        });
    }
    let rhs = u64::try_from(rhs_exact.to_integer()).expect("count fits u64");
    Ok(IdentityCheck {
        m,
        d,
        lhs,
        rhs,
        equal: lhs == rhs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn table() -> PrimeTable {
        PrimeTable::build(600_000).unwrap()
    }

    #[test]
    fn formula_examples() {
        let t = table();
        assert_eq!(unit_pairs_formula(30, 2, &t).unwrap(), 3);
        assert_eq!(unit_pairs_formula(30, 6, &t).unwrap(), 6);
        assert_eq!(unit_pairs_formula(2, 0, &t).unwrap(), 1);
        // m = 5 is odd, m = 4 is not squarefree: both answered by the
        // exhaustive path.
        assert_eq!(unit_pairs_formula(5, 1, &t).unwrap(), 3);
        assert_eq!(unit_pairs_formula(4, 2, &t).unwrap(), 2);
        assert!(matches!(
            unit_pairs_formula(1, 0, &t),
            Err(Error::InvalidArgument(_))
        ));
        assert!(matches!(
            unit_pairs_formula(700_000, 0, &t),
            Err(Error::OutOfRange { .. })
        ));
    }

    #[test]
    fn brute_examples() {
        assert_eq!(unit_pairs_brute(30, 2).unwrap(), 3); // (1,1),(7,25),(25,7) … exactly 3
        assert_eq!(unit_pairs_brute(30, 6).unwrap(), 6);
        assert_eq!(unit_pairs_brute(2, 0).unwrap(), 1); // (1,1)
        assert_eq!(unit_pairs_brute(5, 1).unwrap(), 3); // (2,4),(4,2),(3,3)
        assert_eq!(unit_pairs_brute(4, 2).unwrap(), 2); // (1,1),(3,3)
        assert_eq!(unit_pairs_brute(4, 1).unwrap(), 0); // unit sums are even mod 4
    }

    #[test]
    fn counts_row_matches_pointwise_brute() {
        for m in [2u64, 4, 5, 12, 30, 36, 210] {
            let row = unit_pair_counts(m).unwrap();
            for n in 0..m {
                assert_eq!(
                    row[n as usize],
                    unit_pairs_brute(m, n as i64).unwrap(),
                    "m = {m}, n = {n}"
                );
            }
        }
    }

    #[test]
    fn formula_matches_brute_on_squarefree_even_moduli() {
        let t = table();
        for m in [2u64, 6, 10, 30, 42, 210, 330] {
            let row = unit_pair_counts(m).unwrap();
            for n in 0..m {
                assert_eq!(
                    unit_pairs_formula(m, n as i64, &t).unwrap(),
                    row[n as usize],
                    "m = {m}, n = {n}"
                );
            }
        }
    }

    #[test]
    fn translation_symmetry_and_total_mass() {
        // s*_m(n) = s*_m(−n), and the counts over all residues total
        // φ(m)².
        for m in [2u64, 6, 9, 20, 30, 105, 210] {
            let row = unit_pair_counts(m).unwrap();
            let phi = (1..=m).filter(|&r| gcd(r, m) == 1).count() as u64;
            assert_eq!(row.iter().sum::<u64>(), phi * phi, "mass at m = {m}");
            for n in 0..m {
                let neg = (m - n) % m;
                assert_eq!(row[n as usize], row[neg as usize], "m = {m}, n = {n}");
            }
        }
    }

    #[test]
    fn identity_examples() {
        let t = table();
        let c = sylvester_identity_check(&[3, 5], 3, &t).unwrap();
        assert_eq!((c.m, c.d, c.lhs, c.rhs, c.equal), (30, 6, 6, 6, true));
        let c = sylvester_identity_check(&[3, 5], 1, &t).unwrap();
        assert_eq!((c.m, c.d, c.lhs, c.rhs, c.equal), (30, 2, 3, 3, true));
        // m = 210, n = 105: d = 210, 𝒮(210) = 16/5, s*_m(2) = 15.
        let c = sylvester_identity_check(&[3, 5, 7], 105, &t).unwrap();
        assert_eq!((c.m, c.d, c.lhs, c.rhs, c.equal), (210, 210, 48, 48, true));
        // Empty factor list degenerates to m = 2, where everything is 1.
        let c = sylvester_identity_check(&[], 7, &t).unwrap();
        assert_eq!((c.m, c.lhs, c.rhs, c.equal), (2, 1, 1, true));
    }

    #[test]
    fn identity_rejects_bad_factor_lists() {
        let t = table();
        assert!(matches!(
            sylvester_identity_check(&[3, 3], 1, &t),
            Err(Error::InvalidArgument(_))
        ));
        assert!(matches!(
            sylvester_identity_check(&[2], 1, &t),
            Err(Error::InvalidArgument(_))
        ));
        assert!(matches!(
            sylvester_identity_check(&[9], 1, &t),
            Err(Error::InvalidArgument(_))
        ));
        assert!(matches!(
            sylvester_identity_check(&[3], 0, &t),
            Err(Error::InvalidArgument(_))
        ));
        assert!(matches!(
            sylvester_identity_check(&[104_729, 104_723], 1, &t),
            Err(Error::OutOfRange { .. })
        ));
    }

    #[test]
    fn identity_holds_across_small_grid() {
        let t = table();
        for qs in [&[3u64][..], &[5], &[3, 5], &[3, 7], &[5, 7], &[3, 5, 7]] {
            let m: u64 = 2 * qs.iter().product::<u64>();
            for n in 1..=m {
                let c = sylvester_identity_check(qs, n, &t).unwrap();
                assert!(c.equal, "identity broke at qs = {qs:?}, n = {n}");
            }
        }
    }

    proptest! {
        #[test]
        fn symmetry_under_negation(m in 2u64..400, n in -1000i64..1000) {
            prop_assert_eq!(
                unit_pairs_brute(m, n).unwrap(),
                unit_pairs_brute(m, -n).unwrap()
            );
        }

        #[test]
        fn formula_agrees_with_brute_everywhere(m in 2u64..400, n in -1000i64..1000) {
            let t = PrimeTable::build(400).unwrap();
            prop_assert_eq!(
                unit_pairs_formula(m, n, &t).unwrap(),
                unit_pairs_brute(m, n).unwrap()
            );
        }
    }
}
