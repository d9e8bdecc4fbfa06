use std::collections::HashSet;

use hgs_core::holomorph::expected_census;
use hgs_core::numutil::{gcd, mod_inverse, mul_mod, pow_mod};
use hgs_core::{
    crt_combine, enumerate_types, euler_phi, factor_squarefree, mobius, omega, ord_mod,
    triples_of, GroupElement, HolElement, Holomorph, SquarefreeFactorization,
};
use proptest::prelude::*;

fn f(n: u64) -> SquarefreeFactorization {
    factor_squarefree(n).unwrap()
}

fn squarefree() -> impl Strategy<Value = u64> {
    (1u64..20_000).prop_filter("squarefree", |n| factor_squarefree(*n).is_ok())
}

fn neg2_omega(m: u64) -> i64 {
    (-2i64).pow(omega(&f(m)))
}

#[test]
fn divisor_sum_of_neg2_omega_is_mobius() {
    for m in 1..=10_000u64 {
        let Ok(mf) = factor_squarefree(m) else { continue };
        let sum: i64 = mf.divisors().into_iter().map(neg2_omega).sum();
        assert_eq!(sum, mobius(&mf), "m={m}");
    }
}

#[test]
fn order_divides_phi() {
    for e in 1..=1000u64 {
        let Ok(ef) = factor_squarefree(e) else { continue };
        let phi = euler_phi(&ef);
        for k in (0..e).filter(|&k| gcd(k, e) == 1) {
            assert_eq!(phi % ord_mod(k, e).unwrap(), 0);
        }
    }
}

proptest! {
    #[test]
    fn multiplicative_functions(r in squarefree(), s in squarefree()) {
        prop_assume!(gcd(r, s) == 1);
        let (rf, sf, rsf) = (f(r), f(s), f(r * s));
        prop_assert_eq!(euler_phi(&rsf), euler_phi(&rf) * euler_phi(&sf));
        prop_assert_eq!(mobius(&rsf), mobius(&rf) * mobius(&sf));
        prop_assert_eq!(neg2_omega(r * s), neg2_omega(r) * neg2_omega(s));
    }

    #[test]
    fn crt_recovers_residues(m in squarefree(), seed in any::<u64>()) {
        let mf = f(m);
        let pairs: Vec<(u64, u64)> = mf.primes().iter().enumerate()
            .map(|(i, &p)| (seed.rotate_left(i as u32 * 7) % p, p))
            .collect();
        let (x, modulus) = crt_combine(&pairs).unwrap();
        prop_assert_eq!(modulus, m);
        prop_assert!(x < m);
        for (r, p) in pairs {
            prop_assert_eq!(x % p, r);
        }
    }

    #[test]
    fn triples_cover_n(n in squarefree()) {
        let nf = f(n);
        let triples = triples_of(&nf);
        prop_assert_eq!(triples.len(), 3usize.pow(omega(&nf)));
        prop_assert!(triples.iter().all(|t| t.product() == n));
        let distinct: HashSet<_> = triples.iter().collect();
        prop_assert_eq!(distinct.len(), triples.len());
    }

    #[test]
    fn power_formula_matches_iteration(n in 1u64..=120, pick in any::<usize>(),
                                       a in any::<u64>(), c in any::<u64>(), si in any::<usize>(),
                                       j in 0u64..=240) {
        prop_assume!(factor_squarefree(n).is_ok());
        let types = enumerate_types(&f(n));
        let h = Holomorph::new(types[pick % types.len()]);
        let spec = *h.spec();
        let s = h.units()[si % h.units().len()];
        let x = HolElement { a: a % spec.e, b: 1 % spec.d, c: c % spec.g, s };
        let j = j % (2 * n + 1);
        prop_assert_eq!(h.hol_power(x, j).unwrap(), h.hol_power_iterated(x, j));
    }

    #[test]
    fn sigma_a_tau_power(n in 1u64..=200, pick in any::<usize>(), a in any::<u64>(), j in 0u64..400) {
        prop_assume!(factor_squarefree(n).is_ok());
        let types = enumerate_types(&f(n));
        let h = Holomorph::new(types[pick % types.len()]);
        let spec = *h.spec();
        let x = GroupElement { a: a % spec.e, b: 1 % spec.d };
        let expected = GroupElement {
            a: mul_mod(x.a, hgs_core::geometric_sum_s(spec.k, j, spec.e), spec.e),
            b: j % spec.d,
        };
        let iterated = (0..j).fold(h.group_identity(), |acc, _| h.group_mul(acc, x));
        prop_assert_eq!(iterated, expected);
    }
}

/// Congruences for `S(s, di)` and `T(k, s, di)` modulo each prime `q | e`.
#[test]
fn geometric_sum_congruences() {
    for n in 1..=200u64 {
        let Ok(nf) = factor_squarefree(n) else { continue };
        for spec in enumerate_types(&nf) {
            for &q in f(spec.e).primes() {
                let k = spec.k % q;
                for i in 0..q {
                    let di = spec.d * i;
                    for s in 1..q {
                        let s_sum = hgs_core::geometric_sum_s(s, di, q);
                        let want = if s == 1 {
                            di % q
                        } else {
                            let num = (pow_mod(s, di, q) + q - 1) % q;
                            mul_mod(num, mod_inverse(s - 1, q).unwrap(), q)
                        };
                        assert_eq!(s_sum, want);

                        if k == 1 {
                            continue;
                        }
                        let sk = mul_mod(s, k, q);
                        assert!(!(s == 1 && sk == 1), "s ≡ 1 and sk ≡ 1 together");
                        let t = hgs_core::double_sum_t(k, s, di, q).unwrap();
                        let inv = |v: u64| mod_inverse(v % q, q).unwrap();
                        let want = if s == 1 {
                            mul_mod(di % q, inv(mul_mod(k, k + q - 1, q)), q)
                        } else if sk == 1 {
                            mul_mod(di % q, inv(mul_mod(k, s - 1, q)), q)
                        } else {
                            let num = (pow_mod(s, di, q) + q - 1) % q;
                            let den = mul_mod(mul_mod(k, s - 1, q), sk + q - 1, q);
                            mul_mod(num, inv(den), q)
                        };
                        assert_eq!(t, want, "n={n} q={q} k={k} s={s} i={i}");
                    }
                }
            }
        }
    }
}

fn orbit_size(h: &Holomorph, x: HolElement) -> usize {
    let start = h.group_identity();
    let mut p = h.act(x, start);
    let mut size = 1;
    while p != start {
        p = h.act(x, p);
        size += 1;
    }
    size
}

/// `⟨x⟩` is transitive on `G` iff `⟨x^d⟩` is transitive on `⟨σ⟩`.
#[test]
fn transitivity_reduces_to_sigma_subgroup() {
    for n in 1..=30u64 {
        let Ok(nf) = factor_squarefree(n) else { continue };
        for spec in enumerate_types(&nf) {
            let h = Holomorph::new(spec);
            for &s in h.units() {
                for a in 0..spec.e {
                    for c in 0..spec.g {
                        let x = HolElement { a, b: 1 % spec.d, c, s };
                        let xd = h.hol_power(x, spec.d).unwrap();
                        let on_g = orbit_size(&h, x) as u64 == n;
                        // x^d fixes the coset ⟨σ⟩ setwise
                        let on_sigma = orbit_size(&h, xd) as u64 == spec.e;
                        assert_eq!(on_g, on_sigma, "{spec:?} {x:?}");
                    }
                }
            }
        }
    }
}

/// The regularity test agrees with a direct n-cycle check on every element
/// with tau-exponent 1, over all of `U(e)`, and the count of such elements
/// equals `2^ω(g) φ(z) g φ(g)`.
#[test]
fn regularity_test_matches_cycle_check() {
    for n in 1..=60u64 {
        let Ok(nf) = factor_squarefree(n) else { continue };
        for spec in enumerate_types(&nf) {
            let h = Holomorph::new(spec);
            let elements = h.group_elements();
            let mut passing = 0u64;
            for &s in h.units() {
                for a in 0..spec.e {
                    for c in 0..spec.g {
                        let x = HolElement { a, b: 1 % spec.d, c, s };
                        let perm = h.permutation(x, &elements);
                        let mut p = perm[0] as usize;
                        let mut len = 1;
                        while p != 0 {
                            p = perm[p] as usize;
                            len += 1;
                        }
                        let regular = len as u64 == n;
                        assert_eq!(h.is_regular_generator(x).unwrap(), regular, "{spec:?} {x:?}");
                        passing += regular as u64;
                    }
                }
            }
            assert_eq!(passing, expected_census(&spec, &nf), "{spec:?}");
        }
    }
}

#[test]
fn fast_and_perm_oracles_agree_to_60() {
    for n in 1..=60u64 {
        let Ok(nf) = factor_squarefree(n) else { continue };
        for spec in enumerate_types(&nf) {
            let h = Holomorph::new(spec);
            let fast = h.count_regular_cyclic_fast().unwrap();
            let perm = h.count_regular_cyclic_perm(hgs_core::holomorph::DEFAULT_BUDGET).unwrap();
            assert_eq!(fast, perm);
            assert_eq!(perm.hgs_count_oracle, hgs_core::hgs_per_type(&spec));
            assert_eq!(perm.b1_generators, perm.regular_cyclic_subgroup_count * euler_phi(&f(spec.e)));
        }
    }
}
