//! Hopf-Galois structure counts on a cyclic extension of squarefree degree.
//!
//! A group `G` of order `n` with `|Z(G)| = z`, `|G'| = g` and `d = n / (gz)`
//! accounts for `2^ω(g) φ(d)` structures. Summed over types this collapses to
//! `Σ_{dgz=n} 2^ω(g) μ(z) Π_{p|d} (p^v(p,g) - 1)`; both routes are computed
//! and required to agree.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grouptypes::{enumerate_types, GroupSpec};
use crate::numutil::{
    euler_phi, factor_squarefree, from_primes, is_prime, mobius, triples_of, v_count,
    FactorizationTriple, SquarefreeFactorization,
};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TypeReport {
    pub spec: GroupSpec,
    pub hgs_count: u64,
    pub triple: FactorizationTriple,
}

/// One term of the three-part factorisation sum. Zero terms are kept.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormulaTerm {
    pub triple: FactorizationTriple,
    pub term: i64,
    pub zero: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountBreakdown {
    pub n: u64,
    /// `|Aut(C_n)| = φ(n)`.
    pub aut_gamma: u64,
    pub types: Vec<TypeReport>,
    pub total_by_sum: u64,
    pub total_by_formula: u64,
    pub formula_terms: Vec<FormulaTerm>,
}

impl CountBreakdown {
    pub fn type_count(&self) -> usize {
        self.types.len()
    }

    pub fn nonzero_terms(&self) -> impl Iterator<Item = &FormulaTerm> {
        self.formula_terms.iter().filter(|t| !t.zero)
    }
}

fn hgs_for_triple(n: &SquarefreeFactorization, t: FactorizationTriple) -> u64 {
    let gf = n.divisor(t.g);
    (1u64 << gf.primes().len()) * euler_phi(&n.divisor(t.d))
}

/// `2^ω(g) φ(d)` structures of the given type.
pub fn hgs_per_type(spec: &GroupSpec) -> u64 {
    let nf = factor_squarefree(spec.n).expect("group order is squarefree");
    hgs_for_triple(&nf, spec.triple())
}

/// Total count from the factorisation sum, with every term.
pub fn total_formula(n: &SquarefreeFactorization) -> (u64, Vec<FormulaTerm>) {
    let terms: Vec<FormulaTerm> = triples_of(n)
        .into_iter()
        .map(|t| {
            let gf = n.divisor(t.g);
            let prod: i64 = n
                .divisor(t.d)
                .primes()
                .iter()
                .map(|&p| p.pow(v_count(p, &gf)) as i64 - 1)
                .product();
            let term = (1i64 << gf.primes().len()) * mobius(&n.divisor(t.z)) * prod;
            FormulaTerm { triple: t, term, zero: term == 0 }
        })
        .collect();
    let total: i64 = terms.iter().map(|t| t.term).sum();
    (total as u64, terms)
}

/// Per-type counts and both totals for `n`.
pub fn breakdown(n: &SquarefreeFactorization) -> Result<CountBreakdown> {
    let types: Vec<TypeReport> = enumerate_types(n)
        .into_iter()
        .map(|spec| TypeReport {
            hgs_count: hgs_for_triple(n, spec.triple()),
            triple: spec.triple(),
            spec,
        })
        .collect();
    let total_by_sum = types.iter().map(|t| t.hgs_count).sum();
    let (total_by_formula, formula_terms) = total_formula(n);
    if total_by_sum != total_by_formula {
        return Err(Error::ConsistencyFailure(format!(
            "n = {}: per-type sum {total_by_sum} != formula total {total_by_formula}",
            n.n()
        )));
    }
    Ok(CountBreakdown {
        n: n.n(),
        aut_gamma: euler_phi(n),
        types,
        total_by_sum,
        total_by_formula,
        formula_terms,
    })
}

/// One row of a prime-factor table: a factorisation, how many types land on
/// it, and how many structures each of those types has.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    /// Row label (case number for three primes, position for four).
    pub label: u32,
    /// Prime indices (1-based) making up d and g; z gets the rest.
    pub d_indices: Vec<usize>,
    pub g_indices: Vec<usize>,
    pub triple: FactorizationTriple,
    pub groups: u64,
    pub hgs_per_group: u64,
}

/// `(p2 | p3 - 1, p1 | p3 - 1, p1 | p2 - 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CongruenceKey {
    pub p2_divides_p3_minus_1: bool,
    pub p1_divides_p3_minus_1: bool,
    pub p1_divides_p2_minus_1: bool,
}

impl CongruenceKey {
    pub fn of(p: [u64; 3]) -> Self {
        Self {
            p2_divides_p3_minus_1: (p[2] - 1) % p[1] == 0,
            p1_divides_p3_minus_1: (p[2] - 1) % p[0] == 0,
            p1_divides_p2_minus_1: (p[1] - 1) % p[0] == 0,
        }
    }

    pub fn as_tuple(&self) -> (bool, bool, bool) {
        (self.p2_divides_p3_minus_1, self.p1_divides_p3_minus_1, self.p1_divides_p2_minus_1)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThreePrimeTable {
    pub primes: [u64; 3],
    pub conditions: CongruenceKey,
    /// Only the cases for which groups exist.
    pub rows: Vec<TableRow>,
    pub type_count: u64,
    pub total: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FourPrimeTable {
    pub primes: [u64; 4],
    pub rows: Vec<TableRow>,
    pub type_count: u64,
    pub total: u64,
}

/// The six factorisations of `p1 p2 p3` that can carry groups, as
/// `(d indices, g indices)`.
const THREE_PRIME_CASES: [(&[usize], &[usize]); 6] = [
    (&[], &[]),
    (&[1], &[2]),
    (&[1], &[3]),
    (&[1], &[2, 3]),
    (&[2], &[3]),
    (&[1, 2], &[3]),
];

/// The nineteen factorisations of `p1 p2 p3 p4` that carry groups when
/// `p_j ≡ 1 (mod p_i)` for all `i < j`. Row 17, `(p1 p3, p2 p4, 1)`, holds
/// `p1` types.
const FOUR_PRIME_ROWS: [(&[usize], &[usize]); 19] = [
    (&[], &[]),
    (&[1], &[2]),
    (&[1], &[3]),
    (&[1], &[4]),
    (&[1], &[2, 3]),
    (&[1], &[2, 4]),
    (&[1], &[3, 4]),
    (&[1], &[2, 3, 4]),
    (&[2], &[3]),
    (&[2], &[4]),
    (&[2], &[3, 4]),
    (&[3], &[4]),
    (&[1, 2], &[3]),
    (&[1, 2], &[4]),
    (&[1, 2], &[3, 4]),
    (&[1, 3], &[4]),
    (&[1, 3], &[2, 4]),
    (&[2, 3], &[4]),
    (&[1, 2, 3], &[4]),
];

fn check_primes(primes: &[u64]) -> Result<SquarefreeFactorization> {
    let ascending = primes.windows(2).all(|w| w[0] < w[1]);
    if !ascending || !primes.iter().all(|&p| is_prime(p)) {
        return Err(Error::NotDistinctPrimes(primes.to_vec()));
    }
    from_primes(primes)
}

fn build_rows(
    primes: &[u64],
    layout: &[(&[usize], &[usize])],
    bd: &CountBreakdown,
    nf: &SquarefreeFactorization,
) -> Vec<TableRow> {
    let mut per_triple: BTreeMap<FactorizationTriple, (u64, u64)> = BTreeMap::new();
    for t in &bd.types {
        let entry = per_triple.entry(t.triple).or_insert((0, t.hgs_count));
        entry.0 += 1;
        debug_assert_eq!(entry.1, t.hgs_count);
    }
    let prod = |idx: &[usize]| idx.iter().map(|&i| primes[i - 1]).product::<u64>();
    layout
        .iter()
        .enumerate()
        .map(|(i, (d_idx, g_idx))| {
            let (d, g) = (prod(d_idx), prod(g_idx));
            let triple = FactorizationTriple::new(d, g, nf.n() / (d * g));
            let (groups, _) = per_triple.get(&triple).copied().unwrap_or((0, 0));
            TableRow {
                label: i as u32 + 1,
                d_indices: d_idx.to_vec(),
                g_indices: g_idx.to_vec(),
                triple,
                groups,
                hgs_per_group: hgs_for_triple(nf, triple),
            }
        })
        .collect()
}

fn rows_cover_all_types(rows: &[TableRow], bd: &CountBreakdown) -> Result<()> {
    let covered: u64 = rows.iter().map(|r| r.groups).sum();
    if covered != bd.types.len() as u64 {
        return Err(Error::ConsistencyFailure(format!(
            "table rows cover {covered} of {} types for n = {}",
            bd.types.len(),
            bd.n
        )));
    }
    Ok(())
}

/// Cases of the three-prime table that apply to `p1 < p2 < p3`.
pub fn three_prime_table(p1: u64, p2: u64, p3: u64) -> Result<ThreePrimeTable> {
    let primes = [p1, p2, p3];
    let nf = check_primes(&primes)?;
    let bd = breakdown(&nf)?;
    let rows: Vec<TableRow> = build_rows(&primes, &THREE_PRIME_CASES, &bd, &nf)
        .into_iter()
        .filter(|r| r.groups > 0)
        .collect();
    rows_cover_all_types(&rows, &bd)?;
    Ok(ThreePrimeTable {
        primes,
        conditions: CongruenceKey::of(primes),
        rows,
        type_count: bd.types.len() as u64,
        total: bd.total_by_sum,
    })
}

/// All nineteen rows of the four-prime table for `p1 < p2 < p3 < p4` with
/// `p_j ≡ 1 (mod p_i)` whenever `i < j`.
pub fn four_prime_table(primes: [u64; 4]) -> Result<FourPrimeTable> {
    let nf = check_primes(&primes)?;
    for j in 1..4 {
        for i in 0..j {
            if primes[j] % primes[i] != 1 {
                return Err(Error::CongruenceConditionUnmet {
                    i: i + 1,
                    j: j + 1,
                    pi: primes[i],
                    pj: primes[j],
                });
            }
        }
    }
    let bd = breakdown(&nf)?;
    let rows = build_rows(&primes, &FOUR_PRIME_ROWS, &bd, &nf);
    rows_cover_all_types(&rows, &bd)?;
    Ok(FourPrimeTable { primes, rows, type_count: bd.types.len() as u64, total: bd.total_by_sum })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(n: u64) -> SquarefreeFactorization {
        factor_squarefree(n).unwrap()
    }

    #[test]
    fn per_type_examples() {
        assert_eq!(hgs_per_type(&GroupSpec::new(1, 30, 1).unwrap()), 1);
        assert_eq!(hgs_per_type(&GroupSpec::new(2, 15, 14).unwrap()), 4);
        assert_eq!(hgs_per_type(&GroupSpec::new(3, 7, 2).unwrap()), 4);
    }

    #[test]
    fn formula_examples() {
        let (total, terms) = total_formula(&f(6));
        assert_eq!(total, 3);
        let mut nonzero: Vec<i64> = terms.iter().filter(|t| !t.zero).map(|t| t.term).collect();
        nonzero.sort();
        assert_eq!(nonzero, vec![-2, -2, 1, 2, 4]);
        assert_eq!(terms.len(), 9);
        assert_eq!(total_formula(&f(1806)).0, 259);
        assert_eq!(total_formula(&f(1)).0, 1);
    }

    #[test]
    fn breakdown_examples() {
        let b21 = breakdown(&f(21)).unwrap();
        assert_eq!((b21.type_count(), b21.total_by_sum), (2, 5));
        let b42 = breakdown(&f(42)).unwrap();
        assert_eq!((b42.type_count(), b42.total_by_sum), (6, 17));
        let b30 = breakdown(&f(30)).unwrap();
        assert!(b30.types.iter().any(|t| t.spec.d == 2 && t.spec.g == 15 && t.hgs_count == 4));
        assert_eq!(b30.aut_gamma, 8);
    }

    #[test]
    fn three_prime_examples() {
        let t = three_prime_table(2, 3, 7).unwrap();
        assert_eq!(t.rows.len(), 6);
        assert_eq!((t.type_count, t.total), (6, 17));
        assert_eq!(t.conditions.as_tuple(), (true, true, true));

        let t = three_prime_table(3, 5, 7).unwrap();
        assert_eq!(t.conditions.as_tuple(), (false, true, false));
        assert_eq!(t.total, 5);
        assert_eq!(t.rows.iter().map(|r| r.label).collect::<Vec<_>>(), vec![1, 3]);

        // 11 ≡ 1 (mod 5)
        let t = three_prime_table(5, 7, 11).unwrap();
        assert_eq!(t.conditions.as_tuple(), (false, true, false));
        assert_eq!((t.rows.len(), t.total), (2, 9));

        let t = three_prime_table(3, 5, 17).unwrap();
        assert_eq!(t.conditions.as_tuple(), (false, false, false));
        assert_eq!((t.rows.len(), t.total), (1, 1));

        assert!(matches!(three_prime_table(3, 2, 7), Err(Error::NotDistinctPrimes(_))));
        assert!(matches!(three_prime_table(2, 4, 7), Err(Error::NotDistinctPrimes(_))));
        assert!(matches!(three_prime_table(3, 3, 7), Err(Error::NotDistinctPrimes(_))));
    }

    #[test]
    fn four_prime_examples() {
        let t = four_prime_table([2, 3, 7, 43]).unwrap();
        assert_eq!(t.rows.len(), 19);
        assert_eq!((t.type_count, t.total), (30, 259));
        let extra = &t.rows[16];
        assert_eq!(extra.triple, FactorizationTriple::new(14, 129, 1));
        assert_eq!((extra.groups, extra.hgs_per_group), (2, 24));
        let row = t.rows.iter().find(|r| r.triple == FactorizationTriple::new(2, 903, 1)).unwrap();
        assert_eq!((row.groups, row.hgs_per_group), (1, 8));

        assert_eq!(
            four_prime_table([2, 3, 7, 41]),
            Err(Error::CongruenceConditionUnmet { i: 2, j: 4, pi: 3, pj: 41 })
        );
        assert_eq!(
            four_prime_table([2, 3, 5, 31]),
            Err(Error::CongruenceConditionUnmet { i: 2, j: 3, pi: 3, pj: 5 })
        );
    }

    #[test]
    fn every_type_has_structures() {
        for n in 1..=500u64 {
            let Ok(nf) = factor_squarefree(n) else { continue };
            let bd = breakdown(&nf).unwrap();
            assert!(bd.types.iter().all(|t| t.hgs_count >= 1));
            assert_eq!(bd.types[0].hgs_count, 1);
        }
    }
}
