//! Modular arithmetic kernel: powering, trial-division factorization,
//! multiplicative orders and primitive-root tests.
//!
//! Every modulus handled here is a prime power `p^n` below `2^32`, so
//! residues fit in `u64` and products are formed in `u128`.

use serde::Serialize;

use crate::error::{Error, Result};

/// Numbers at or above this bound are refused by [`factorize`].
pub const FACTOR_CAP: u64 = 1 << 40;

/// Exclusive upper bound on `p^n`.
pub const MODULUS_LIMIT: u64 = 1 << 32;

#[inline]
pub fn mul_mod(a: u64, b: u64, modulus: u64) -> u64 {
    ((a as u128 * b as u128) % modulus as u128) as u64
}

/// `base^exp mod modulus` by binary powering.
///
/// Panics if `modulus < 2`.
pub fn mod_pow(base: u64, mut exp: u64, modulus: u64) -> u64 {
    assert!(modulus >= 2, "modulus must be at least 2");
    let mut result = 1u64;
    let mut acc = base % modulus;
    while exp > 0 {
        if exp & 1 == 1 {
            result = mul_mod(result, acc, modulus);
        }
        acc = mul_mod(acc, acc, modulus);
        exp >>= 1;
    }
    result
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn is_prime(m: u64) -> bool {
    if m < 2 {
        return false;
    }
    if m.is_multiple_of(2) {
        return m == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= m {
        if m.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Prime factorization with strictly increasing primes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Factorization {
    pub value: u64,
    pub pairs: Vec<(u64, u32)>,
}

impl Factorization {
    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.pairs.iter().map(|&(prime, _)| prime)
    }

    /// Multiplies the factors back out.
    pub fn product(&self) -> u64 {
        self.pairs.iter().map(|&(prime, mult)| prime.pow(mult)).product()
    }
}

/// Trial division up to `sqrt(m)`.
pub fn factorize(m: u64) -> Result<Factorization> {
    if m == 0 {
        return Err(Error::Invalid("cannot factorize 0".into()));
    }
    if m >= FACTOR_CAP {
        return Err(Error::FactorCap { value: m });
    }
    let mut pairs = Vec::new();
    let mut rest = m;
    let mut d = 2u64;
    while d * d <= rest {
        if rest.is_multiple_of(d) {
            let mut mult = 0;
            while rest.is_multiple_of(d) {
                rest /= d;
                mult += 1;
            }
            pairs.push((d, mult));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if rest > 1 {
        pairs.push((rest, 1));
    }
    Ok(Factorization { value: m, pairs })
}

/// `phi(p^n) = (p - 1) p^(n-1)`.
pub fn euler_phi_prime_power(p: u64, n: u32) -> u64 {
    assert!(n >= 1, "n must be positive");
    (p - 1) * p.pow(n - 1)
}

/// Least `t >= 1` with `q^t = 1 (mod p^n)`.
///
/// Starts from `phi(p^n)` and strips prime factors while the power stays 1.
/// Requires `gcd(q, p) = 1`.
pub fn multiplicative_order(q: u64, p: u64, n: u32) -> u64 {
    let modulus = p.pow(n);
    debug_assert!(gcd(q % modulus, p) == 1);
    let phi = euler_phi_prime_power(p, n);
    let fac = factorize(phi).expect("phi(p^n) is below the factor cap");
    let mut order = phi;
    for prime in fac.primes() {
        while order.is_multiple_of(prime) && mod_pow(q, order / prime, modulus) == 1 {
            order /= prime;
        }
    }
    order
}

pub fn is_primitive_root(q: u64, p: u64, n: u32) -> bool {
    multiplicative_order(q, p, n) == euler_phi_prime_power(p, n)
}

/// The triple `(p, n, q)` defining the exponentiation graph on `Z_{p^n}`.
///
/// `q` is stored reduced modulo `p^n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct GraphParams {
    p: u64,
    n: u32,
    q: u64,
}

impl GraphParams {
    pub fn new(p: u64, n: u32, q: u64) -> Result<Self> {
        if p == 2 || !is_prime(p) {
            return Err(Error::NotOddPrime(p));
        }
        if n == 0 {
            return Err(Error::ZeroExponent);
        }
        let modulus = p
            .checked_pow(n)
            .filter(|&m| m < MODULUS_LIMIT)
            .ok_or(Error::ModulusTooLarge { p, n })?;
        if q.is_multiple_of(p) {
            return Err(Error::BaseNotCoprime { q, p });
        }
        Ok(GraphParams { p, n, q: q % modulus })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// `p^n`, the vertex count.
    pub fn modulus(&self) -> u64 {
        self.p.pow(self.n)
    }

    /// `p^(n-1)`, the side of one block in the level decomposition.
    pub fn block_side(&self) -> u64 {
        self.p.pow(self.n - 1)
    }

    pub fn phi(&self) -> u64 {
        euler_phi_prime_power(self.p, self.n)
    }

    /// Order of `q` modulo `p^n`.
    pub fn order(&self) -> u64 {
        multiplicative_order(self.q, self.p, self.n)
    }

    /// Order of `q` modulo `p`; this is the out-degree of every vertex.
    pub fn order_mod_p(&self) -> u64 {
        multiplicative_order(self.q % self.p, self.p, 1)
    }

    pub fn is_primitive_mod_p(&self) -> bool {
        is_primitive_root(self.q % self.p, self.p, 1)
    }

    pub fn is_primitive(&self) -> bool {
        is_primitive_root(self.q, self.p, self.n)
    }

    /// Same `p` and `q` one level down.
    pub fn lower(&self) -> Result<GraphParams> {
        if self.n < 2 {
            return Err(Error::NoLowerLevel);
        }
        GraphParams::new(self.p, self.n - 1, self.q)
    }

    /// Same `p` and `q` at level 1.
    pub fn base_level(&self) -> GraphParams {
        GraphParams::new(self.p, 1, self.q).expect("level 1 of valid params is valid")
    }
}

impl std::fmt::Display for GraphParams {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(p={}, n={}, q={})", self.p, self.n, self.q)
    }
}
