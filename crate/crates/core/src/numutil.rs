//! Exact integer arithmetic for squarefree moduli.
//!
//! Everything here works on `u64` values up to [`MAX_N`]; modular products go
//! through `u128` so no intermediate can overflow.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest `n` accepted by [`factor_squarefree`].
pub const MAX_N: u64 = 1_000_000_000_000;

/// Wheel increments for trial division past 2, 3 and 5 (starting at 7).
const WHEEL: [u64; 8] = [4, 2, 4, 2, 4, 6, 2, 6];

/// A squarefree positive integer together with its prime factors in
/// strictly increasing order. `n = 1` has no primes.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SquarefreeFactorization {
    n: u64,
    primes: Vec<u64>,
}

/// An ordered factorisation `n = d * g * z`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FactorizationTriple {
    pub d: u64,
    pub g: u64,
    pub z: u64,
}

impl FactorizationTriple {
    pub fn new(d: u64, g: u64, z: u64) -> Self {
        Self { d, g, z }
    }

    pub fn product(&self) -> u64 {
        self.d * self.g * self.z
    }

    pub fn e(&self) -> u64 {
        self.g * self.z
    }
}

impl SquarefreeFactorization {
    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    /// Factorization of a divisor `m` of `self.n`.
    ///
    /// Panics if `m` does not divide `n`.
    pub fn divisor(&self, m: u64) -> SquarefreeFactorization {
        assert!(m != 0 && self.n % m == 0, "{m} does not divide {}", self.n);
        SquarefreeFactorization {
            n: m,
            primes: self.primes.iter().copied().filter(|p| m % p == 0).collect(),
        }
    }

    /// All positive divisors, ascending.
    pub fn divisors(&self) -> Vec<u64> {
        let mut divs = vec![1u64];
        for &p in &self.primes {
            let with_p: Vec<u64> = divs.iter().map(|d| d * p).collect();
            divs.extend(with_p);
        }
        divs.sort_unstable();
        divs
    }
}

/// Factor `n` by trial division, rejecting anything with a repeated prime.
pub fn factor_squarefree(n: u64) -> Result<SquarefreeFactorization> {
    if n == 0 {
        return Err(Error::Zero);
    }
    if n > MAX_N {
        return Err(Error::TooLarge { n, max: MAX_N });
    }
    let mut rest = n;
    let mut primes = Vec::new();
    let mut take = |p: u64, rest: &mut u64| -> Result<()> {
        if *rest % p == 0 {
            *rest /= p;
            if *rest % p == 0 {
                return Err(Error::NotSquarefree { n, p });
            }
            primes.push(p);
        }
        Ok(())
    };
    for p in [2u64, 3, 5] {
        take(p, &mut rest)?;
    }
    let mut p = 7u64;
    let mut i = 0;
    while p * p <= rest {
        take(p, &mut rest)?;
        p += WHEEL[i];
        i = (i + 1) % WHEEL.len();
    }
    if rest > 1 {
        primes.push(rest);
    }
    Ok(SquarefreeFactorization { n, primes })
}

/// Build a factorization from primes already known to be distinct.
pub fn from_primes(primes: &[u64]) -> Result<SquarefreeFactorization> {
    let mut n = 1u64;
    for &p in primes {
        n = n.checked_mul(p).ok_or(Error::TooLarge { n: u64::MAX, max: MAX_N })?;
    }
    factor_squarefree(n)
}

/// Distinct prime factors of an arbitrary positive integer, ascending.
pub(crate) fn distinct_prime_factors(mut m: u64) -> Vec<u64> {
    let mut out = Vec::new();
    for p in [2u64, 3, 5] {
        if m % p == 0 {
            out.push(p);
            while m % p == 0 {
                m /= p;
            }
        }
    }
    let mut p = 7u64;
    let mut i = 0;
    while p * p <= m {
        if m % p == 0 {
            out.push(p);
            while m % p == 0 {
                m /= p;
            }
        }
        p += WHEEL[i];
        i = (i + 1) % WHEEL.len();
    }
    if m > 1 {
        out.push(m);
    }
    out
}

pub fn is_prime(m: u64) -> bool {
    m >= 2 && distinct_prime_factors(m) == [m]
}

pub fn euler_phi(f: &SquarefreeFactorization) -> u64 {
    f.primes.iter().map(|p| p - 1).product()
}

pub fn mobius(f: &SquarefreeFactorization) -> i64 {
    if f.primes.len() % 2 == 0 {
        1
    } else {
        -1
    }
}

pub fn omega(f: &SquarefreeFactorization) -> u32 {
    f.primes.len() as u32
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

#[inline]
pub fn add_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 + b as u128) % m as u128) as u64
}

pub fn pow_mod(base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    let mut b = base % m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, b, m);
        }
        b = mul_mod(b, b, m);
        exp >>= 1;
    }
    acc
}

/// Inverse of `a` modulo `m` by the extended Euclidean algorithm.
pub fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let (mut old_r, mut r) = ((a % m) as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(m as i128) as u64)
}

/// Reduce a possibly negative value into `[0, m)`.
pub fn normalize(x: i128, m: u64) -> u64 {
    x.rem_euclid(m as i128) as u64
}

/// Multiplicative order of `k` modulo the squarefree `e`.
///
/// Starts from the exponent `lcm(q - 1)` of `U(e)` and strips prime factors
/// while the power stays at 1.
pub fn ord_mod(k: u64, e: u64) -> Result<u64> {
    let ef = factor_squarefree(e)?;
    ord_mod_factored(k, &ef)
}

pub fn ord_mod_factored(k: u64, ef: &SquarefreeFactorization) -> Result<u64> {
    let e = ef.n;
    if gcd(k % e, e) != 1 {
        return Err(Error::NotAUnit { k, modulus: e });
    }
    if e == 1 {
        return Ok(1);
    }
    let exponent = ef.primes.iter().fold(1u64, |acc, q| lcm(acc, q - 1));
    let mut ord = exponent;
    for r in distinct_prime_factors(exponent) {
        while ord % r == 0 && pow_mod(k, ord / r, e) == 1 {
            ord /= r;
        }
    }
    Ok(ord)
}

/// Smallest primitive root modulo the prime `q`.
pub(crate) fn primitive_root(q: u64) -> u64 {
    if q == 2 {
        return 1;
    }
    let factors = distinct_prime_factors(q - 1);
    (2..q)
        .find(|&g| factors.iter().all(|r| pow_mod(g, (q - 1) / r, q) != 1))
        .expect("every prime has a primitive root")
}

/// Number of primes `q | e` with `q ≡ 1 (mod p)`.
pub fn v_count(p: u64, e: &SquarefreeFactorization) -> u32 {
    e.primes.iter().filter(|&&q| q % p == 1).count() as u32
}

/// Combine `(residue, modulus)` pairs with pairwise coprime moduli into a
/// single `(residue, modulus)` pair.
pub fn crt_combine(residues: &[(u64, u64)]) -> Result<(u64, u64)> {
    let mut acc = (0u64, 1u64);
    for &(r, m) in residues {
        if m == 0 {
            return Err(Error::Zero);
        }
        let (r0, m0) = acc;
        if gcd(m0, m) != 1 {
            return Err(Error::NonCoprimeModuli { m1: m0, m2: m });
        }
        let product = m0.checked_mul(m).ok_or(Error::TooLarge { n: u64::MAX, max: MAX_N })?;
        // x = r0 + m0 * t with t ≡ (r - r0) / m0 (mod m)
        let inv = mod_inverse(m0 % m, m).expect("coprime moduli");
        let diff = normalize(r as i128 - r0 as i128, m);
        let t = mul_mod(diff, inv, m);
        let x = (r0 as u128 + m0 as u128 * t as u128) % product as u128;
        acc = (x as u64, product);
    }
    Ok(acc)
}

/// All `3^ω(n)` ordered triples `(d, g, z)` with `d * g * z = n`, sorted by
/// `(d, g)`.
pub fn triples_of(f: &SquarefreeFactorization) -> Vec<FactorizationTriple> {
    let mut out = vec![FactorizationTriple::new(1, 1, 1)];
    for &p in &f.primes {
        let mut next = Vec::with_capacity(out.len() * 3);
        for t in &out {
            next.push(FactorizationTriple::new(t.d * p, t.g, t.z));
            next.push(FactorizationTriple::new(t.d, t.g * p, t.z));
            next.push(FactorizationTriple::new(t.d, t.g, t.z * p));
        }
        out = next;
    }
    out.sort_unstable();
    out
}
