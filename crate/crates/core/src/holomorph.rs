//! Arithmetic in `G(d, e, k)`, `Aut(G)` and `Hol(G) = G ⋊ Aut(G)`, and the
//! oracles that count regular cyclic subgroups of the holomorph.
//!
//! Coordinates:
//! - a group element `σ^a τ^b` is `(a mod e, b mod d)`;
//! - an automorphism `θ^c φ_s` is `(c mod g, s ∈ U(e))`, where `θ` fixes `σ`
//!   and sends `τ ↦ σ^z τ`, and `φ_s` sends `σ ↦ σ^s` and fixes `τ`;
//! - a holomorph element `[σ^a τ^b, θ^c φ_s]` carries all four.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grouptypes::GroupSpec;
use crate::numutil::{
    add_mod, crt_combine, euler_phi, factor_squarefree, gcd, mod_inverse, mul_mod, normalize,
    pow_mod, SquarefreeFactorization,
};
use crate::par;

/// Default cap on the number of holomorph elements the brute-force oracles
/// will enumerate.
pub const DEFAULT_BUDGET: u64 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroupElement {
    pub a: u64,
    pub b: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AutElement {
    pub c: u64,
    pub s: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct HolElement {
    pub a: u64,
    pub b: u64,
    pub c: u64,
    pub s: u64,
}

impl HolElement {
    pub fn new(alpha: GroupElement, psi: AutElement) -> Self {
        Self { a: alpha.a, b: alpha.b, c: psi.c, s: psi.s }
    }

    pub fn translation(&self) -> GroupElement {
        GroupElement { a: self.a, b: self.b }
    }

    pub fn automorphism(&self) -> AutElement {
        AutElement { c: self.c, s: self.s }
    }
}

/// Result of counting regular cyclic subgroups of `Hol(G)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleReport {
    pub spec: GroupSpec,
    /// Elements `[σ^a τ, θ^c φ_s]` (tau-exponent 1) that generate a regular
    /// cyclic subgroup.
    pub b1_generators: u64,
    /// `e'(G, C_n)`.
    pub regular_cyclic_subgroup_count: u64,
    pub aut_order: u64,
    /// `e(G, C_n) = φ(n) / |Aut(G)| · e'(G, C_n)`.
    pub hgs_count_oracle: u64,
}

/// `S(h, j) = 1 + h + ... + h^(j-1)` modulo `modulus`.
pub fn geometric_sum_s(h: u64, j: u64, modulus: u64) -> u64 {
    if modulus == 1 {
        return 0;
    }
    // returns (S(h, j), h^j)
    fn go(h: u64, j: u64, m: u64) -> (u64, u64) {
        if j == 0 {
            return (0, 1 % m);
        }
        let (half_sum, half_pow) = go(h, j / 2, m);
        // S(h, 2t) = S(h, t) (1 + h^t)
        let mut sum = mul_mod(half_sum, add_mod(1, half_pow, m), m);
        let mut pow = mul_mod(half_pow, half_pow, m);
        if j % 2 == 1 {
            sum = add_mod(sum, pow, m);
            pow = mul_mod(pow, h % m, m);
        }
        (sum, pow)
    }
    go(h, j, modulus).0
}

/// `T(k, s, j) = Σ_{h=0}^{j-1} S(s, h) k^(h-1)` modulo `modulus`, via
/// `T(k, s, j + 1) = T(k, s, j) + k^(j-1) S(s, j)`.
///
/// The `h = 0` term carries `k^-1` but vanishes because `S(s, 0) = 0`; `k`
/// must still be invertible.
pub fn double_sum_t(k: u64, s: u64, j: u64, modulus: u64) -> Result<u64> {
    if mod_inverse(k % modulus, modulus).is_none() {
        return Err(Error::NonInvertibleK { k, modulus });
    }
    let m = modulus;
    let mut t = 0u64;
    let mut s_h = if j > 1 { 1 % m } else { 0 }; // S(s, 1)
    let mut s_pow = s % m; // s^1
    let mut k_pow = 1 % m; // k^0
    for _ in 1..j {
        t = add_mod(t, mul_mod(s_h, k_pow, m), m);
        s_h = add_mod(s_h, s_pow, m);
        s_pow = mul_mod(s_pow, s, m);
        k_pow = mul_mod(k_pow, k, m);
    }
    Ok(t)
}

/// A group `G(d, e, k)` with precomputed tables for fast arithmetic in `G`,
/// `Aut(G)` and `Hol(G)`.
#[derive(Debug, Clone)]
pub struct Holomorph {
    spec: GroupSpec,
    /// `k^b mod e` for `0 <= b < d`
    k_pow: Vec<u64>,
    /// `S(k, b) mod e` for `0 <= b < d`
    k_sum: Vec<u64>,
    k_inv: u64,
    units: Vec<u64>,
}

impl Holomorph {
    pub fn new(spec: GroupSpec) -> Self {
        let GroupSpec { d, e, k, .. } = spec;
        let mut k_pow = Vec::with_capacity(d as usize);
        let mut k_sum = Vec::with_capacity(d as usize);
        let (mut p, mut sum) = (1 % e, 0u64);
        for _ in 0..d {
            k_pow.push(p);
            k_sum.push(sum);
            sum = add_mod(sum, p, e);
            p = mul_mod(p, k, e);
        }
        let units = (0..e).filter(|&x| gcd(x, e) == 1).collect();
        let k_inv = mod_inverse(k % e, e).expect("k is a unit modulo e");
        Self { spec, k_pow, k_sum, k_inv, units }
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    /// Units modulo `e`, ascending.
    pub fn units(&self) -> &[u64] {
        &self.units
    }

    pub fn group_order(&self) -> u64 {
        self.spec.n
    }

    pub fn aut_order(&self) -> u64 {
        self.spec.g * self.units.len() as u64
    }

    pub fn hol_order(&self) -> u64 {
        self.spec.n * self.aut_order()
    }

    pub fn identity(&self) -> HolElement {
        HolElement { a: 0, b: 0, c: 0, s: 1 % self.spec.e }
    }

    pub fn group_identity(&self) -> GroupElement {
        GroupElement { a: 0, b: 0 }
    }

    pub fn group_mul(&self, x: GroupElement, y: GroupElement) -> GroupElement {
        let GroupSpec { d, e, .. } = self.spec;
        GroupElement {
            a: add_mod(x.a, mul_mod(self.k_pow[x.b as usize], y.a, e), e),
            b: (x.b + y.b) % d,
        }
    }

    pub fn group_inv(&self, x: GroupElement) -> GroupElement {
        let GroupSpec { d, e, .. } = self.spec;
        // (σ^a τ^b)^-1 = τ^-b σ^-a = σ^(-a k^-b) τ^-b
        let b = (d - x.b) % d;
        let a = normalize(-(mul_mod(self.k_pow[b as usize], x.a, e) as i128), e);
        GroupElement { a, b }
    }

    pub fn group_pow(&self, x: GroupElement, mut j: u64) -> GroupElement {
        let mut acc = self.group_identity();
        let mut base = x;
        while j > 0 {
            if j & 1 == 1 {
                acc = self.group_mul(acc, base);
            }
            base = self.group_mul(base, base);
            j >>= 1;
        }
        acc
    }

    /// All `n` elements, ordered by `(b, a)`; `index_of` inverts this.
    pub fn group_elements(&self) -> Vec<GroupElement> {
        let GroupSpec { d, e, .. } = self.spec;
        (0..d).flat_map(|b| (0..e).map(move |a| GroupElement { a, b })).collect()
    }

    #[inline]
    pub fn index_of(&self, x: GroupElement) -> usize {
        (x.b * self.spec.e + x.a) as usize
    }

    /// `θ^c φ_s (σ^a τ^b) = σ^(as + cz S(k, b)) τ^b`.
    pub fn aut_apply(&self, psi: AutElement, x: GroupElement) -> GroupElement {
        let GroupSpec { e, z, .. } = self.spec;
        let shift = mul_mod(mul_mod(psi.c, z, e), self.k_sum[x.b as usize], e);
        GroupElement { a: add_mod(mul_mod(x.a, psi.s, e), shift, e), b: x.b }
    }

    /// `(θ^c φ_s)(θ^c' φ_s') = θ^(c + s c') φ_(s s')`, using `φ_s θ φ_s⁻¹ = θ^s`.
    pub fn aut_compose(&self, psi: AutElement, phi: AutElement) -> AutElement {
        let GroupSpec { e, g, .. } = self.spec;
        AutElement { c: add_mod(psi.c, mul_mod(psi.s, phi.c, g), g), s: mul_mod(psi.s, phi.s, e) }
    }

    /// `[α, ψ][α', ψ'] = [α ψ(α'), ψ ψ']`.
    pub fn hol_multiply(&self, x: HolElement, y: HolElement) -> HolElement {
        let alpha = self.group_mul(x.translation(), self.aut_apply(x.automorphism(), y.translation()));
        HolElement::new(alpha, self.aut_compose(x.automorphism(), y.automorphism()))
    }

    /// Action on `G`: `[α, ψ] · x = α ψ(x)`.
    pub fn act(&self, h: HolElement, x: GroupElement) -> GroupElement {
        self.group_mul(h.translation(), self.aut_apply(h.automorphism(), x))
    }

    /// `x^j` for `x` with tau-exponent 1, via the closed form
    /// `x^j = [σ^A(j) τ^j, θ^(c S(s, j)) φ_(s^j)]` with
    /// `A(j) = a S(sk, j) + czk T(k, s, j)`.
    pub fn hol_power(&self, x: HolElement, j: u64) -> Result<HolElement> {
        let GroupSpec { d, e, g, z, k, .. } = self.spec;
        if x.b != 1 % d {
            return Err(Error::PreconditionB1 { b: x.b });
        }
        let sk = mul_mod(x.s, k, e);
        let t = double_sum_t(k, x.s, j, e)?;
        let czk = mul_mod(mul_mod(x.c, z, e), k, e);
        let a = add_mod(mul_mod(x.a, geometric_sum_s(sk, j, e), e), mul_mod(czk, t, e), e);
        Ok(HolElement {
            a,
            b: j % d,
            c: mul_mod(x.c, geometric_sum_s(x.s, j, g), g),
            s: pow_mod(x.s, j, e),
        })
    }

    /// `x^j` by repeated multiplication.
    pub fn hol_power_iterated(&self, x: HolElement, j: u64) -> HolElement {
        (0..j).fold(self.identity(), |acc, _| self.hol_multiply(acc, x))
    }

    /// Regularity test for `⟨x⟩` with `x = [σ^a τ, θ^c φ_s]`:
    /// for primes `q | z`, `s ≡ 1` and `q ∤ a`; for primes `q | g`, either
    /// `s ≡ 1` and `q ∤ c`, or `s ≡ k⁻¹` and `(s - 1)a + cz ≢ 0 (mod q)`.
    pub fn is_regular_generator(&self, x: HolElement) -> Result<bool> {
        let GroupSpec { d, e, z, g, k, .. } = self.spec;
        if x.b != 1 % d {
            return Err(Error::PreconditionB1 { b: x.b });
        }
        let ef = factor_squarefree(e)?;
        Ok(ef.primes().iter().all(|&q| {
            let (s, a, c) = (x.s % q, x.a % q, x.c % q);
            if z % q == 0 {
                s == 1 % q && a != 0
            } else {
                debug_assert_eq!(g % q, 0);
                let k_inv = mod_inverse(k % q, q).expect("k is a unit");
                let cz = mul_mod(c, z % q, q);
                let sm1 = normalize(s as i128 - 1, q);
                let branch_one = s == 1 && c != 0;
                let branch_two = s == k_inv && add_mod(mul_mod(sm1, a, q), cz, q) != 0;
                branch_one || branch_two
            }
        }))
    }

    /// The `2^ω(g)` values of `s` allowed by the regularity test: `s ≡ 1`
    /// modulo primes of `z`, `s ∈ {1, k⁻¹}` modulo primes of `g`.
    pub fn candidate_multipliers(&self) -> Vec<u64> {
        let GroupSpec { e, z, .. } = self.spec;
        let ef = factor_squarefree(e).expect("e is squarefree");
        let mut partial: Vec<Vec<(u64, u64)>> = vec![Vec::new()];
        for &q in ef.primes() {
            let options: Vec<u64> = if z % q == 0 {
                vec![1 % q]
            } else {
                vec![1 % q, self.k_inv % q]
            };
            partial = partial
                .into_iter()
                .flat_map(|p| {
                    options.iter().map(move |&r| {
                        let mut p = p.clone();
                        p.push((r, q));
                        p
                    })
                })
                .collect();
        }
        let mut out: Vec<u64> =
            partial.iter().map(|res| crt_combine(res).expect("coprime").0).collect();
        out.sort_unstable();
        out
    }

    /// Apply the counting relation `e = φ(n) / |Aut(G)| · e'` and the
    /// generator count per subgroup, returning a report.
    fn report(&self, b1_generators: u64) -> Result<OracleReport> {
        let GroupSpec { n, e, .. } = self.spec;
        let phi_e = self.units.len() as u64;
        if b1_generators % phi_e != 0 {
            return Err(Error::ConsistencyFailure(format!(
                "{b1_generators} generators is not a multiple of phi(e) = {phi_e}"
            )));
        }
        let subgroups = b1_generators / phi_e;
        let phi_n = euler_phi(&factor_squarefree(n)?) as u128;
        let aut = self.aut_order();
        let scaled = phi_n * subgroups as u128;
        if scaled % aut as u128 != 0 {
            return Err(Error::ConsistencyFailure(format!(
                "phi(n) * e' = {scaled} not divisible by |Aut(G)| = {aut} (e = {e})"
            )));
        }
        Ok(OracleReport {
            spec: self.spec,
            b1_generators,
            regular_cyclic_subgroup_count: subgroups,
            aut_order: aut,
            hgs_count_oracle: (scaled / aut as u128) as u64,
        })
    }

    /// Count regular cyclic subgroups by scanning `(s, a, c)` with `s` among
    /// [`candidate_multipliers`](Self::candidate_multipliers) and applying
    /// [`is_regular_generator`](Self::is_regular_generator).
    pub fn count_regular_cyclic_fast(&self) -> Result<OracleReport> {
        let GroupSpec { d, e, g, .. } = self.spec;
        let b = 1 % d;
        let candidates = self.candidate_multipliers();
        let counts = par::map(&candidates, |&s| -> Result<u64> {
            let mut count = 0u64;
            for a in 0..e {
                for c in 0..g {
                    if self.is_regular_generator(HolElement { a, b, c, s })? {
                        count += 1;
                    }
                }
            }
            Ok(count)
        });
        let total = counts.into_iter().sum::<Result<u64>>()?;
        self.report(total)
    }

    /// Every holomorph element, ordered by `(s, c, b, a)`.
    pub fn hol_elements_for(&self, s: u64) -> impl Iterator<Item = HolElement> + '_ {
        let GroupSpec { d, e, g, .. } = self.spec;
        (0..g).flat_map(move |c| (0..d).flat_map(move |b| (0..e).map(move |a| HolElement { a, b, c, s })))
    }

    /// The permutation of `G` (as indices into [`group_elements`]) induced by
    /// `h`.
    ///
    /// [`group_elements`]: Self::group_elements
    pub fn permutation(&self, h: HolElement, elements: &[GroupElement]) -> Vec<u32> {
        elements.iter().map(|&x| self.index_of(self.act(h, x)) as u32).collect()
    }

    /// Count regular cyclic subgroups of `Hol(G)` by brute force: every
    /// holomorph element is turned into a permutation of `G`, those that are
    /// a single `n`-cycle generate regular cyclic subgroups, and subgroups
    /// are deduplicated by the sorted coordinates of their elements.
    ///
    /// Only the multiplication law of `Hol(G)` is used. Also checks that each
    /// subgroup has exactly `φ(n)` generators, `φ(e)` of them with
    /// tau-exponent 1.
    pub fn count_regular_cyclic_perm(&self, budget: u64) -> Result<OracleReport> {
        let required = self.hol_order();
        if required > budget {
            return Err(Error::BudgetExceeded { required, budget });
        }
        let n = self.spec.n as usize;
        let elements = self.group_elements();
        let d = self.spec.d;

        let partials = par::map(&self.units, |&s| {
            // subgroup key -> (generators, generators with b = 1)
            let mut found: HashMap<Vec<HolElement>, (u64, u64)> = HashMap::new();
            for h in self.hol_elements_for(s) {
                let perm = self.permutation(h, &elements);
                let mut point = 0usize;
                let mut len = 0usize;
                loop {
                    point = perm[point] as usize;
                    len += 1;
                    if point == 0 {
                        break;
                    }
                }
                if len != n {
                    continue;
                }
                let mut members = Vec::with_capacity(n);
                let mut y = self.identity();
                for _ in 0..n {
                    members.push(y);
                    y = self.hol_multiply(y, h);
                }
                members.sort_unstable();
                let entry = found.entry(members).or_default();
                entry.0 += 1;
                if h.b == 1 % d {
                    entry.1 += 1;
                }
            }
            found
        });

        let mut merged: HashMap<Vec<HolElement>, (u64, u64)> = HashMap::new();
        for part in partials {
            for (key, (all, b1)) in part {
                let entry = merged.entry(key).or_default();
                entry.0 += all;
                entry.1 += b1;
            }
        }
        let phi_n = euler_phi(&factor_squarefree(self.spec.n)?);
        let phi_e = self.units.len() as u64;
        let mut b1_total = 0;
        for (all, b1) in merged.values() {
            if *all != phi_n || *b1 != phi_e {
                return Err(Error::ConsistencyFailure(format!(
                    "regular cyclic subgroup with {all} generators ({b1} with b = 1), \
                     expected {phi_n} ({phi_e})"
                )));
            }
            b1_total += b1;
        }
        let report = self.report(b1_total)?;
        debug_assert_eq!(report.regular_cyclic_subgroup_count, merged.len() as u64);
        Ok(report)
    }

    /// Centre order, commutator subgroup order and automorphism group order,
    /// all computed by exhaustive search over `G`.
    pub fn brute_force_structure(&self, budget: u64) -> Result<(u64, u64, u64)> {
        let n = self.spec.n;
        let required = n * n;
        if required > budget {
            return Err(Error::BudgetExceeded { required, budget });
        }
        let elements = self.group_elements();

        let centre = elements
            .iter()
            .filter(|&&x| elements.iter().all(|&y| self.group_mul(x, y) == self.group_mul(y, x)))
            .count() as u64;

        let mut commutators: Vec<GroupElement> = Vec::new();
        let mut seen = vec![false; n as usize];
        for &x in &elements {
            for &y in &elements {
                let c = self.group_mul(
                    self.group_mul(x, y),
                    self.group_inv(self.group_mul(y, x)),
                );
                if !seen[self.index_of(c)] {
                    seen[self.index_of(c)] = true;
                    commutators.push(c);
                }
            }
        }
        let commutator = self.closure(&commutators).len() as u64;

        // Homomorphisms are determined by images (x, y) of (σ, τ) satisfying
        // the defining relations; they are automorphisms iff surjective.
        let GroupSpec { d, e, k, .. } = self.spec;
        let one = self.group_identity();
        let mut automorphisms = 0u64;
        let mut hit = vec![false; n as usize];
        for &x in &elements {
            if self.group_pow(x, e) != one {
                continue;
            }
            let xk = self.group_pow(x, k);
            for &y in &elements {
                if self.group_pow(y, d) != one
                    || self.group_mul(self.group_mul(y, x), self.group_inv(y)) != xk
                {
                    continue;
                }
                hit.iter_mut().for_each(|h| *h = false);
                let mut xi = one;
                for _ in 0..e {
                    let mut img = xi;
                    for _ in 0..d {
                        hit[self.index_of(img)] = true;
                        img = self.group_mul(img, y);
                    }
                    xi = self.group_mul(xi, x);
                }
                if hit.iter().all(|&h| h) {
                    automorphisms += 1;
                }
            }
        }
        Ok((centre, commutator, automorphisms))
    }

    /// Subgroup generated by `gens`.
    fn closure(&self, gens: &[GroupElement]) -> Vec<GroupElement> {
        let mut members = vec![self.group_identity()];
        let mut seen = vec![false; self.spec.n as usize];
        seen[0] = true;
        let mut i = 0;
        while i < members.len() {
            let x = members[i];
            for &gen in gens {
                let y = self.group_mul(x, gen);
                if !seen[self.index_of(y)] {
                    seen[self.index_of(y)] = true;
                    members.push(y);
                }
            }
            i += 1;
        }
        members
    }
}

/// Fast census for one type, see [`Holomorph::count_regular_cyclic_fast`].
pub fn count_regular_cyclic_fast(spec: GroupSpec) -> Result<OracleReport> {
    Holomorph::new(spec).count_regular_cyclic_fast()
}

/// Permutation oracle for one type, see [`Holomorph::count_regular_cyclic_perm`].
pub fn count_regular_cyclic_perm(spec: GroupSpec, budget: u64) -> Result<OracleReport> {
    Holomorph::new(spec).count_regular_cyclic_perm(budget)
}

pub fn brute_force_structure(spec: GroupSpec, budget: u64) -> Result<(u64, u64, u64)> {
    Holomorph::new(spec).brute_force_structure(budget)
}

/// Triples `(s, a, c)` passing the regularity test should number
/// `2^ω(g) φ(z) g φ(g)`.
pub fn expected_census(spec: &GroupSpec, n: &SquarefreeFactorization) -> u64 {
    let gf = n.divisor(spec.g);
    let zf = n.divisor(spec.z);
    (1u64 << gf.primes().len()) * euler_phi(&zf) * spec.g * euler_phi(&gf)
}
