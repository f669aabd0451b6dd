//! Property tests: invariants that should hold on randomized inputs.

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use coxdec_core::coxeter::{classify, CoxeterSystem};
use coxdec_core::decomp::{decompose, FactorSize};
use coxdec_core::exact::{CycloNumber, Sign};
use coxdec_core::grouptheory::{
    abelian, multiset_isomorphic, relabel, remak_decompose, DEFAULT_LATTICE_CAP,
};

/// An arbitrary Coxeter system of rank 1..=4 with labels in
/// {2, 3, 4, 5, 6, inf}.
fn coxeter_strategy() -> impl Strategy<Value = CoxeterSystem> {
    (1usize..=4)
        .prop_flat_map(|n| {
            let label = prop_oneof![
                Just(Some(2u64)),
                Just(Some(3)),
                Just(Some(4)),
                Just(Some(5)),
                Just(Some(6)),
                Just(None),
            ];
            proptest::collection::vec(label, n * (n - 1) / 2).prop_map(move |upper| (n, upper))
        })
        .prop_map(|(n, upper)| CoxeterSystem::from_upper(n, &upper).unwrap())
}

fn permuted(cs: &CoxeterSystem, perm: &[usize]) -> CoxeterSystem {
    let n = cs.rank();
    let mut upper = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            upper.push(cs.label(perm[i], perm[j]));
        }
    }
    CoxeterSystem::from_upper(n, &upper).unwrap()
}

fn perm_of(n: usize, seed: u64) -> Vec<usize> {
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(&mut rand::rngs::StdRng::seed_from_u64(seed));
    p
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn classification_is_permutation_invariant(cs in coxeter_strategy(), seed in any::<u64>()) {
        let perm = perm_of(cs.rank(), seed);
        let summary = |cs: &CoxeterSystem| {
            let mut v: Vec<(String, usize, usize, usize)> = cs
                .components()
                .into_iter()
                .map(|(_, sub)| {
                    let c = classify(&sub).unwrap();
                    (format!("{:?}", c.kind), c.signature.p, c.signature.q, c.signature.r)
                })
                .collect();
            v.sort();
            v
        };
        prop_assert_eq!(summary(&cs), summary(&permuted(&cs, &perm)));
    }

    #[test]
    fn components_partition_the_vertices(cs in coxeter_strategy()) {
        let mut seen = vec![false; cs.rank()];
        for (vertices, sub) in cs.components() {
            prop_assert_eq!(vertices.len(), sub.rank());
            for &v in &vertices {
                prop_assert!(!seen[v], "vertex in two components");
                seen[v] = true;
            }
        }
        prop_assert!(seen.iter().all(|&s| s));
    }

    #[test]
    fn factor_sizes_are_permutation_invariant(cs in coxeter_strategy(), seed in any::<u64>()) {
        let perm = perm_of(cs.rank(), seed);
        let sizes = |cs: &CoxeterSystem| {
            let mut v: Vec<FactorSize> = decompose(cs).unwrap().factors.iter().map(|f| f.size.clone()).collect();
            v.sort_unstable_by_key(|s| match *s {
                FactorSize::Finite(o) => o,
                FactorSize::Infinite => u64::MAX,
            });
            v
        };
        prop_assert_eq!(sizes(&cs), sizes(&permuted(&cs, &perm)));
    }

    #[test]
    fn certified_sign_is_multiplicative(
        ma in 3u64..12, mb in 3u64..12,
        na in -3i64..=3, nb in -3i64..=3,
    ) {
        let l = num_integer::lcm(2 * ma, 2 * mb);
        let a = CycloNumber::cos_pi_over(Some(ma), l).unwrap()
            .add(&CycloNumber::from_rational(l, BigRational::new(BigInt::from(na), BigInt::from(4))));
        let b = CycloNumber::cos_pi_over(Some(mb), l).unwrap()
            .add(&CycloNumber::from_rational(l, BigRational::new(BigInt::from(nb), BigInt::from(4))));
        let sa = a.sign_default().unwrap();
        let sb = b.sign_default().unwrap();
        let sp = a.mul(&b).sign_default().unwrap();
        let expect = match (sa, sb) {
            (Sign::Zero, _) | (_, Sign::Zero) => Sign::Zero,
            (x, y) if x == y => Sign::Positive,
            _ => Sign::Negative,
        };
        prop_assert_eq!(sp, expect);
    }

    #[test]
    fn remak_is_relabeling_invariant(
        divisors in proptest::collection::vec(2u64..=9, 1..=3),
        seed in any::<u64>(),
    ) {
        let g = abelian(&divisors);
        if g.order() > 200 {
            return Ok(());
        }
        let h = relabel(&g, seed);
        let a = remak_decompose(&g, DEFAULT_LATTICE_CAP).unwrap();
        let b = remak_decompose(&h, DEFAULT_LATTICE_CAP).unwrap();
        prop_assert!(multiset_isomorphic(&a.factors, &b.factors));
    }

    #[test]
    fn closure_yields_a_subgroup(
        divisors in proptest::collection::vec(2u64..=6, 1..=3),
        picks in proptest::collection::vec(any::<u16>(), 1..=3),
    ) {
        let g = abelian(&divisors);
        let gens: Vec<u16> = picks.iter().map(|&p| p % g.order() as u16).collect();
        let sub = g.closure(&gens);
        for &x in sub.members() {
            prop_assert!(sub.contains(g.inv(x)));
            for &y in sub.members() {
                prop_assert!(sub.contains(g.mul(x, y)));
            }
        }
        for &x in &gens {
            prop_assert!(sub.contains(x));
        }
    }
}
