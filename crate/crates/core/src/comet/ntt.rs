//! Number-theoretic transforms over word-sized prime fields: exact
//! integer self-convolution for count vectors. Floating-point
//! transforms are deliberately absent: counts must be exact, and a
//! modulus exceeding every possible count makes the modular result the
//! true integer result.

use crate::{Error, Result};

/// NTT-friendly primes p = c·2^a + 1 as (p, primitive root, a), tried
/// in order; the transform size must divide 2^a.
const MODULI: [(u64, u64, u32); 2] = [
    (998_244_353, 3, 23),     // 119·2²³ + 1
    (2_013_265_921, 31, 27),  // 15·2²⁷ + 1
];

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc
}

/// In-place iterative transform; `invert` applies the inverse including
/// the 1/n scaling. Length must be a power of two dividing 2^a.
fn transform(a: &mut [u64], p: u64, g: u64, invert: bool) {
    let n = a.len();
    debug_assert!(n.is_power_of_two());
    let mut j = 0usize;
    for i in 1..n {
        let mut bit = n >> 1;
        while j & bit != 0 {
            j ^= bit;
            bit >>= 1;
        }
        j |= bit;
        if i < j {
            a.swap(i, j);
        }
    }
    let mut len = 2usize;
    while len <= n {
        let exp = (p - 1) / len as u64;
        let w_len = if invert {
            pow_mod(g, p - 1 - exp, p)
        } else {
            pow_mod(g, exp, p)
        };
        for start in (0..n).step_by(len) {
            let mut w = 1u64;
            for k in start..start + len / 2 {
                let u = a[k];
                let v = a[k + len / 2] * w % p;
                a[k] = (u + v) % p;
                a[k + len / 2] = (u + p - v) % p;
                w = w * w_len % p;
            }
        }
        len <<= 1;
    }
    if invert {
        let n_inv = pow_mod(n as u64, p - 2, p);
        for x in a.iter_mut() {
            *x = *x * n_inv % p;
        }
    }
}

/// Self-convolution with an explicit modulus; the caller has already
/// established that every true coefficient is below p.
fn self_convolution_mod(values: &[u64], out_len: usize, p: u64, g: u64) -> Vec<u64> {
    let size = out_len.next_power_of_two();
    let mut a = vec![0u64; size];
    a[..values.len()].copy_from_slice(values);
    transform(&mut a, p, g, false);
    for x in a.iter_mut() {
        *x = *x * *x % p;
    }
    transform(&mut a, p, g, true);
    a.truncate(out_len);
    a
}

/// Exact self-convolution c[s] = Σ_i v[i]·v[s−i], full linear length
/// 2·len − 1.
///
/// Exactness argument: every coefficient is at most max(v)·Σv, so the
/// modulus is chosen (and checked) to exceed that bound; the modular
/// result then equals the integer result. Errors when the needed
/// transform size exceeds every supported modulus or when the
/// coefficient bound does.
pub(crate) fn self_convolution(values: &[u64]) -> Result<Vec<u64>> {
    if values.is_empty() {
        return Ok(Vec::new());
    }
    let out_len = 2 * values.len() - 1;
    let size = out_len.next_power_of_two();
    let max = values.iter().copied().max().unwrap_or(0) as u128;
    let sum: u128 = values.iter().map(|&v| v as u128).sum();
    let bound = max * sum;
    let (p, g, _) = MODULI
        .iter()
        .copied()
        .find(|&(p, _, a)| size <= 1usize << a && bound < p as u128)
        .ok_or_else(|| {
            Error::ResourceLimit(format!(
                "no supported transform fits size {size} with coefficient bound {bound}"
            ))
        })?;
    Ok(self_convolution_mod(values, out_len, p, g))
}
