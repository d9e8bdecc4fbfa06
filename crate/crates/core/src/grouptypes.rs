//! Isomorphism types of groups of squarefree order.
//!
//! Every group of squarefree order `n` is a metacyclic group
//! `G(d, e, k) = <σ, τ | σ^e = τ^d = 1, τστ⁻¹ = σ^k>` with `de = n`,
//! `gcd(d, e) = 1` and `ord_e(k) = d`; two parameter sets give isomorphic
//! groups exactly when `d`, `e` agree and `k`, `k'` generate the same cyclic
//! subgroup of `U(e)`. This module picks one canonical `k` per subgroup.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numutil::{
    crt_combine, euler_phi, factor_squarefree, gcd, mobius, mul_mod, ord_mod_factored, pow_mod,
    primitive_root, v_count, FactorizationTriple, SquarefreeFactorization,
};

/// One isomorphism type `G(d, e, k)` with its centre order `z` and
/// commutator order `g`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupSpec {
    pub n: u64,
    pub d: u64,
    pub e: u64,
    pub k: u64,
    pub z: u64,
    pub g: u64,
}

impl GroupSpec {
    /// Validate `(d, e, k)` and derive `z`, `g`.
    pub fn new(d: u64, e: u64, k: u64) -> Result<Self> {
        let invalid = |reason: &str| Error::InvalidSpec { d, e, k, reason: reason.to_string() };
        if d == 0 || e == 0 {
            return Err(invalid("d and e must be positive"));
        }
        if gcd(d, e) != 1 {
            return Err(invalid("gcd(d, e) != 1"));
        }
        let n = d.checked_mul(e).ok_or_else(|| invalid("d * e overflows"))?;
        factor_squarefree(n)?;
        let (z, g) = centre_commutator(d, e, k)?;
        let k = if e == 1 { 1 } else { k % e };
        Ok(Self { n, d, e, k, z, g })
    }

    pub fn triple(&self) -> FactorizationTriple {
        FactorizationTriple::new(self.d, self.g, self.z)
    }

    pub fn is_cyclic(&self) -> bool {
        self.d == 1
    }

    /// Human-readable presentation, e.g. `⟨σ,τ | σ^3 = τ^2 = 1, τστ⁻¹ = σ^2⟩`.
    pub fn presentation(&self, ascii: bool) -> String {
        if ascii {
            format!(
                "<sigma,tau | sigma^{} = tau^{} = 1, tau sigma tau^-1 = sigma^{}>",
                self.e, self.d, self.k
            )
        } else {
            format!("⟨σ,τ | σ^{} = τ^{} = 1, τστ⁻¹ = σ^{}⟩", self.e, self.d, self.k)
        }
    }
}

/// Centre and commutator orders of `G(d, e, k)`: `z = gcd(e, k - 1)`,
/// `g = e / z`.
pub fn centre_commutator(d: u64, e: u64, k: u64) -> Result<(u64, u64)> {
    let ef = factor_squarefree(e)?;
    let ord = ord_mod_factored(k, &ef).map_err(|_| Error::InvalidSpec {
        d,
        e,
        k,
        reason: "k is not a unit modulo e".into(),
    })?;
    if ord != d {
        return Err(Error::InvalidSpec { d, e, k, reason: format!("ord_e(k) = {ord}, not {d}") });
    }
    // (k - 1) mod e, normalised so that k ≡ 1 gives gcd(e, 0) = e
    let km1 = (k % e + e - 1) % e;
    let z = gcd(e, km1);
    Ok((z, e / z))
}

/// Projective points of `F_p^dim`, each normalised so its first nonzero
/// coordinate is 1. There are `(p^dim - 1) / (p - 1)` of them.
fn projective_points(p: u64, dim: usize) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    for lead in 0..dim {
        let free = dim - lead - 1;
        let count = p.pow(free as u32);
        for mut idx in 0..count {
            let mut v = vec![0u64; dim];
            v[lead] = 1;
            for slot in v.iter_mut().skip(lead + 1) {
                *slot = idx % p;
                idx /= p;
            }
            out.push(v);
        }
    }
    out
}

/// Canonical `k` values for every subgroup of order `d` in `U(e)`.
fn canonical_ks(df: &SquarefreeFactorization, ef: &SquarefreeFactorization) -> Vec<u64> {
    let e = ef.n();
    // per prime p | d: the primes q | e with q ≡ 1 (mod p), and the points
    let mut per_p: Vec<(u64, Vec<u64>, Vec<Vec<u64>>)> = Vec::new();
    for &p in df.primes() {
        let qs: Vec<u64> = ef.primes().iter().copied().filter(|q| q % p == 1).collect();
        if qs.is_empty() {
            return Vec::new();
        }
        let points = projective_points(p, qs.len());
        per_p.push((p, qs, points));
    }
    let roots: Vec<u64> = ef.primes().iter().map(|&q| primitive_root(q)).collect();

    let mut out = Vec::new();
    let mut choice = vec![0usize; per_p.len()];
    loop {
        let residues: Vec<(u64, u64)> = ef
            .primes()
            .iter()
            .zip(&roots)
            .map(|(&q, &root)| {
                let mut kq = 1 % q;
                for ((p, qs, points), &c) in per_p.iter().zip(&choice) {
                    if let Some(pos) = qs.iter().position(|&x| x == q) {
                        let exp = points[c][pos];
                        if exp != 0 {
                            // element of order p in U(q), raised to the coordinate
                            let h = pow_mod(root, (q - 1) / p, q);
                            kq = mul_mod(kq, pow_mod(h, exp, q), q);
                        }
                    }
                }
                (kq, q)
            })
            .collect();
        let (k, m) = crt_combine(&residues).expect("distinct primes are coprime");
        debug_assert_eq!(m, e);
        out.push(k);

        // odometer over the per-prime choices
        let mut i = 0;
        loop {
            if i == choice.len() {
                return out;
            }
            choice[i] += 1;
            if choice[i] < per_p[i].2.len() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

/// One representative per isomorphism class of groups of order `n`, ordered
/// by `d` ascending, then `z` descending, then `k` ascending.
pub fn enumerate_types(n: &SquarefreeFactorization) -> Vec<GroupSpec> {
    let mut out = Vec::new();
    for d in n.divisors() {
        let e = n.n() / d;
        let df = n.divisor(d);
        let ef = n.divisor(e);
        if d == 1 {
            out.push(GroupSpec { n: n.n(), d: 1, e, k: 1, z: e, g: 1 });
            continue;
        }
        if euler_phi(&ef) % d != 0 {
            continue;
        }
        let mut specs: Vec<GroupSpec> = canonical_ks(&df, &ef)
            .into_iter()
            .map(|k| {
                let km1 = (k + e - 1) % e;
                let z = gcd(e, km1);
                GroupSpec { n: n.n(), d, e, k, z, g: e / z }
            })
            .collect();
        specs.sort_by(|a, b| b.z.cmp(&a.z).then(a.k.cmp(&b.k)));
        out.extend(specs);
    }
    out
}

/// Hölder's count of isomorphism types of groups of squarefree order `n`.
pub fn holder_count(n: &SquarefreeFactorization) -> u64 {
    n.divisors()
        .into_iter()
        .map(|d| {
            let ef = n.divisor(n.n() / d);
            n.divisor(d)
                .primes()
                .iter()
                .map(|&p| (p.pow(v_count(p, &ef)) - 1) / (p - 1))
                .product::<u64>()
        })
        .sum()
}

/// Number of isomorphism types with centre order `z` and commutator order
/// `g`, by Möbius inversion over divisors of `g`.
pub fn types_per_triple(n: &SquarefreeFactorization, t: FactorizationTriple) -> Result<u64> {
    if t.d == 0 || t.g == 0 || t.z == 0 || t.d.checked_mul(t.g).and_then(|x| x.checked_mul(t.z)) != Some(n.n()) {
        return Err(Error::ConsistencyFailure(format!(
            "triple ({}, {}, {}) does not multiply to {}",
            t.d, t.g, t.z, n.n()
        )));
    }
    let df = n.divisor(t.d);
    let gf = n.divisor(t.g);
    let mut sum: i128 = 0;
    for f in gf.divisors() {
        let ff = gf.divisor(f);
        let mu = mobius(&gf.divisor(t.g / f)) as i128;
        let prod: i128 = df
            .primes()
            .iter()
            .map(|&p| p.pow(v_count(p, &ff)) as i128 - 1)
            .product();
        sum += mu * prod;
    }
    let phi_d = euler_phi(&df) as i128;
    if sum < 0 || sum % phi_d != 0 {
        return Err(Error::ConsistencyFailure(format!(
            "type count sum {sum} for ({}, {}, {}) is not a non-negative multiple of phi(d) = {phi_d}",
            t.d, t.g, t.z
        )));
    }
    Ok((sum / phi_d) as u64)
}
