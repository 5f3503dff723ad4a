//! Exact computation around the Goldbach comet: partition counts g(n),
//! the Sylvester factor 𝒮(n), and the normalized comet
//! G(n) = (ln n)²·g(n)/(4cn), where c is the twin-prime constant.
//!
//! The crate is organized bottom-up:
//!
//! * [`primes`]: odd-only sieve with smallest-prime-factor lookup,
//!   factorization, primorials.
//! * [`arith`]: the algebra of strongly multiplicative functions:
//!   closed-form Dirichlet convolution and inversion at prime powers,
//!   plus a recurrence oracle that validates the closed forms.
//! * [`unitsmod`]: counting representations of a residue as a sum of
//!   two units mod m, and the identity tying those counts to 𝒮.
//! * [`primorial`]: exhaustive extremality scans: primorials minimize
//!   φ(n)/n and maximize 𝒮(n) below their own value.
//! * [`comet`]: exact g(n) at scale via modular convolution, the
//!   twin-prime constant with a rigorous enclosure, and the crossover
//!   scan locating where 𝒮(n) < G(n) starts to hold for good.
//!
//! All identity checks are exact-rational; doubles appear only where a
//! value is genuinely transcendental (logarithms, the constant), and
//! comparisons that come down to double rounding escalate to interval
//! arithmetic instead of being trusted.

pub mod arith;
pub mod comet;
mod error;
pub mod primes;
pub mod primorial;
pub mod unitsmod;

pub use error::{Error, Result};

/// 2e^{−γ} ≈ 1.1229, the constant relating the mean of n/φ(n) over
/// primorial arguments to ln p_n in Mertens-type asymptotics. Exposed
/// for reference only; no computation in this crate depends on it.
pub const TWO_E_NEG_GAMMA: f64 = 1.1229189671337703;
