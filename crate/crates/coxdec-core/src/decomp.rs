//! Canonical direct-product factorization of Coxeter groups from the
//! classification, cross-validated against brute-force Remak
//! decomposition of the actual Cayley table where feasible.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::coxeter::{
    build_group, classify, finite_type_order, CoxKind, CoxeterClass, CoxeterError,
    CoxeterSystem, FiniteType, TypeName,
};
use crate::grouptheory::{
    direct_product, remak_decompose, CayleyGroup, FactorLabel, FamilyLabel, GroupError, Subgroup,
    DEFAULT_LATTICE_CAP,
};

/// Largest group order the Remak oracle is expected to handle; split
/// rules on larger groups carry rule-only provenance.
pub const ORACLE_ORDER_BOUND: u64 = 1152;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum FactorRule {
    InfiniteIrreducible,
    FiniteIndecomposable,
    ExceptionalSplit,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Provenance {
    Rule,
    RuleOnly,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum FactorSize {
    Finite(u64),
    Infinite,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct DecompFactor {
    pub size: FactorSize,
    pub label: String,
    pub central: bool,
    pub rule: FactorRule,
    pub provenance: Provenance,
}

#[derive(Clone, Debug)]
pub struct CoxeterFactorization {
    pub components: Vec<(Vec<usize>, CoxeterSystem, CoxeterClass)>,
    /// Sorted factor multiset.
    pub factors: Vec<DecompFactor>,
}

/// The finite types that decompose as center x indecomposable: dihedral
/// groups of order 8n+4 (label m ≡ 2 mod 4, m ≥ 6), B_n for odd n ≥ 3,
/// H₃ and E₇.
pub fn splits_off_center(t: &FiniteType) -> bool {
    match t {
        FiniteType::I2(m) => *m % 4 == 2 && *m >= 6,
        FiniteType::B(n) => *n >= 3 && *n % 2 == 1,
        FiniteType::H(3) => true,
        FiniteType::E(7) => true,
        _ => false,
    }
}

/// Canonical string form of a Coxeter graph: lexicographically minimal
/// labeled edge list over all vertex relabelings.
pub fn canonical_graph_string(cs: &CoxeterSystem) -> String {
    let n = cs.rank();
    type Edge = (usize, usize, Option<u64>);
    let edges_under = |perm: &[usize]| -> Vec<Edge> {
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let l = cs.label(i, j);
                if l != Some(2) {
                    let (a, b) = (perm[i].min(perm[j]), perm[i].max(perm[j]));
                    out.push((a, b, l));
                }
            }
        }
        out.sort_unstable();
        out
    };
    let mut best: Option<Vec<Edge>> = None;
    if n <= 8 {
        let mut perm: Vec<usize> = (0..n).collect();
        permute_all(&mut perm, 0, &mut |p| {
            let e = edges_under(p);
            if best.as_ref().map_or(true, |b| e < *b) {
                best = Some(e);
            }
        });
    } else {
        // Too large for exhaustive canonicalization; fall back to the
        // identity labeling (still deterministic for a fixed input).
        best = Some(edges_under(&(0..n).collect::<Vec<_>>()));
    }
    let mut s = format!("rank {n}");
    for (a, b, l) in best.unwrap_or_default() {
        match l {
            Some(m) => s.push_str(&format!("; {a}-{b}:{m}")),
            None => s.push_str(&format!("; {a}-{b}:inf")),
        }
    }
    s
}

fn permute_all(perm: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == perm.len() {
        f(perm);
        return;
    }
    for i in k..perm.len() {
        perm.swap(k, i);
        permute_all(perm, k + 1, f);
        perm.swap(k, i);
    }
}

/// Factorization into indecomposable direct factors by the rule table:
/// infinite irreducible components are indecomposable; the exceptional
/// finite types split off their order-2 center; everything else finite
/// is indecomposable.
pub fn decompose(cs: &CoxeterSystem) -> Result<CoxeterFactorization, CoxeterError> {
    let mut components = Vec::new();
    let mut factors: Vec<DecompFactor> = Vec::new();
    for (idx, sub) in cs.components() {
        let class = classify(&sub)?;
        match class.kind {
            CoxKind::Finite => {
                let Some(TypeName::Finite(t)) = class.type_name.clone() else {
                    return Err(CoxeterError::Internal(
                        "finite component without a recognized type",
                    ));
                };
                let order = finite_type_order(&t);
                if order == 1 {
                    // Rank 0 cannot occur as a component; nothing to add.
                } else if splits_off_center(&t) {
                    let provenance = if order <= ORACLE_ORDER_BOUND {
                        Provenance::Rule
                    } else {
                        Provenance::RuleOnly
                    };
                    factors.push(DecompFactor {
                        size: FactorSize::Finite(2),
                        label: String::from("Z/2"),
                        central: true,
                        rule: FactorRule::ExceptionalSplit,
                        provenance,
                    });
                    factors.push(DecompFactor {
                        size: FactorSize::Finite(order / 2),
                        label: format!("{}/Z", TypeName::Finite(t.clone())),
                        central: false,
                        rule: FactorRule::ExceptionalSplit,
                        provenance,
                    });
                } else {
                    factors.push(DecompFactor {
                        size: FactorSize::Finite(order),
                        label: format!("{}", TypeName::Finite(t.clone())),
                        central: false,
                        rule: FactorRule::FiniteIndecomposable,
                        provenance: Provenance::Rule,
                    });
                }
            }
            CoxKind::Affine | CoxKind::IndefiniteInfinite => {
                let label = match &class.type_name {
                    Some(name) => format!("{name}"),
                    None => canonical_graph_string(&sub),
                };
                factors.push(DecompFactor {
                    size: FactorSize::Infinite,
                    label,
                    central: false,
                    rule: FactorRule::InfiniteIrreducible,
                    provenance: Provenance::Rule,
                });
            }
        }
        components.push((idx, sub, class));
    }
    factors.sort();
    Ok(CoxeterFactorization {
        components,
        factors,
    })
}

#[derive(Clone, Debug)]
pub enum CrossError {
    Coxeter(CoxeterError),
    Group(GroupError),
    /// Rule table and oracle disagree; falsifies one of them.
    Mismatch(String),
}

impl From<CoxeterError> for CrossError {
    fn from(e: CoxeterError) -> Self {
        CrossError::Coxeter(e)
    }
}

impl From<GroupError> for CrossError {
    fn from(e: GroupError) -> Self {
        CrossError::Group(e)
    }
}

impl core::fmt::Display for CrossError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            CrossError::Coxeter(e) => write!(f, "{e}"),
            CrossError::Group(e) => write!(f, "{e}"),
            CrossError::Mismatch(m) => write!(f, "MISMATCH: {m}"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct CrossReport {
    pub group_order: usize,
    /// (rule-side factor, matched oracle factor label).
    pub pairs: Vec<(DecompFactor, FactorLabel)>,
}

/// Build the group, run the Remak oracle, and check the rule-table
/// factor multiset against the oracle's, matching factor by factor.
pub fn cross_validate(cs: &CoxeterSystem, budget: usize) -> Result<CrossReport, CrossError> {
    // Build each component's reflection group at its own conductor and
    // take Cayley direct products, which is far cheaper than one BFS
    // over the whole union at the lcm conductor.
    let mut whole: Option<CayleyGroup> = None;
    let mut order: usize = 1;
    for (_, sub) in cs.components() {
        let rg = build_group(&sub, budget)?;
        order = order
            .checked_mul(rg.order)
            .ok_or(CoxeterError::TableTooLarge { order: usize::MAX })?;
        if order > u16::MAX as usize {
            return Err(CrossError::Coxeter(CoxeterError::TableTooLarge {
                order,
            }));
        }
        whole = Some(match whole {
            None => rg.group,
            Some(g) => direct_product(&g, &rg.group)?,
        });
    }
    let group = match whole {
        Some(g) => g,
        None => build_group(cs, budget)?.group,
    };
    cross_validate_group(cs, &group)
}

/// As [`cross_validate`], but against an already-built Cayley table for
/// the whole group. Useful when many systems share component groups.
pub fn cross_validate_group(
    cs: &CoxeterSystem,
    group: &CayleyGroup,
) -> Result<CrossReport, CrossError> {
    let rules = decompose(cs)?;
    let rg_order = group.order();
    let oracle = remak_decompose(group, DEFAULT_LATTICE_CAP)?;
    let mut rule_factors: Vec<&DecompFactor> = rules.factors.iter().collect();
    // The trivial group decomposes as the empty product on the rule
    // side; the oracle reports a single order-1 leaf.
    let oracle_factors: Vec<&crate::grouptheory::Factor> = oracle
        .factors
        .iter()
        .filter(|f| f.label.order > 1)
        .collect();
    if rule_factors.len() != oracle_factors.len() {
        return Err(CrossError::Mismatch(format!(
            "rule table yields {} factors, oracle yields {}",
            rule_factors.len(),
            oracle_factors.len()
        )));
    }
    let mut pairs = Vec::new();
    for of in &oracle_factors {
        let pos = rule_factors.iter().position(|rf| {
            if rf.size != FactorSize::Finite(of.label.order as u64) {
                return false;
            }
            if rf.central {
                // A central factor must be the cyclic group of order 2.
                of.label.family == Some(FamilyLabel::Cyclic(2))
            } else {
                true
            }
        });
        match pos {
            Some(i) => {
                let rf = rule_factors.remove(i);
                pairs.push((rf.clone(), of.label.clone()));
            }
            None => {
                return Err(CrossError::Mismatch(format!(
                    "oracle factor of order {} has no rule-side partner",
                    of.label.order
                )));
            }
        }
    }
    // Product of finite factor orders must be the group order.
    let product: u64 = rules
        .factors
        .iter()
        .map(|f| match f.size {
            FactorSize::Finite(o) => o,
            FactorSize::Infinite => 1,
        })
        .product();
    if product != rg_order as u64 {
        return Err(CrossError::Mismatch(format!(
            "factor orders multiply to {product}, group order is {}",
            rg_order
        )));
    }
    Ok(CrossReport {
        group_order: rg_order,
        pairs,
    })
}

/// For a group whose center has a unique involution: find a normal
/// complement to that order-2 central subgroup, i.e. an index-2 normal
/// subgroup avoiding the involution. Returns None when no complement
/// exists. Errors unless the center has exactly one involution.
pub fn factor_center_split(
    g: &CayleyGroup,
) -> Result<Option<(Subgroup, Subgroup)>, GroupError> {
    let z = g.center();
    let involutions: Vec<u16> = z
        .members()
        .iter()
        .copied()
        .filter(|&x| x != 0 && g.mul(x, x) == 0)
        .collect();
    let [involution] = involutions.as_slice() else {
        return Err(GroupError::SizeBound {
            limit: 1,
            actual: involutions.len(),
        });
    };
    let c = Subgroup::from_members(g.order(), alloc::vec![0, *involution]);
    for m in g.normal_subgroups_of_index_at_most(2, DEFAULT_LATTICE_CAP)? {
        if m.len() * 2 == g.order() && !m.contains(*involution) {
            return Ok(Some((c, m)));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    extern crate std;
    use super::*;
    use crate::grouptheory::{cyclic, dihedral};
    use alloc::vec;

    fn path(labels: &[Option<u64>]) -> CoxeterSystem {
        let n = labels.len() + 1;
        let mut upper = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                upper.push(if j == i + 1 { labels[i] } else { Some(2) });
            }
        }
        CoxeterSystem::from_upper(n, &upper).unwrap()
    }

    fn finite_orders(f: &CoxeterFactorization) -> Vec<u64> {
        f.factors
            .iter()
            .map(|x| match x.size {
                FactorSize::Finite(o) => o,
                FactorSize::Infinite => panic!("finite expected"),
            })
            .collect()
    }

    #[test]
    fn rule_table_examples() {
        let b3 = path(&[Some(3), Some(4)]);
        assert_eq!(finite_orders(&decompose(&b3).unwrap()), vec![2, 24]);
        let i26 = path(&[Some(6)]);
        assert_eq!(finite_orders(&decompose(&i26).unwrap()), vec![2, 6]);
        let h3 = path(&[Some(5), Some(3)]);
        assert_eq!(finite_orders(&decompose(&h3).unwrap()), vec![2, 60]);
        let a2 = path(&[Some(3)]);
        assert_eq!(finite_orders(&decompose(&a2).unwrap()), vec![6]);
        // D4: star on 4 vertices.
        let d4 = CoxeterSystem::from_upper(
            4,
            &[Some(3), Some(2), Some(2), Some(3), Some(3), Some(2)],
        )
        .unwrap();
        assert_eq!(finite_orders(&decompose(&d4).unwrap()), vec![192]);
        // I2(4) = B2 does not split (order 8).
        let b2 = path(&[Some(4)]);
        assert_eq!(finite_orders(&decompose(&b2).unwrap()), vec![8]);
    }

    #[test]
    fn split_predicate_on_corpus() {
        use crate::coxeter::FiniteType::*;
        for (t, expect) in [
            (I2(6), true),
            (I2(10), true),
            (I2(14), true),
            (I2(30), true),
            (I2(8), false),
            (I2(12), false),
            (I2(5), false),
            (I2(7), false),
            (B(3), true),
            (B(4), false),
            (B(5), true),
            (H(3), true),
            (H(4), false),
            (E(7), true),
            (E(6), false),
            (E(8), false),
            (A(4), false),
            (D(4), false),
            (F4, false),
        ] {
            assert_eq!(splits_off_center(&t), expect, "{t:?}");
        }
    }

    #[test]
    fn affine_and_indefinite_single_factor() {
        let a1t = CoxeterSystem::from_upper(2, &[None]).unwrap();
        let f = decompose(&a1t).unwrap();
        assert_eq!(f.factors.len(), 1);
        assert_eq!(f.factors[0].size, FactorSize::Infinite);
        assert_eq!(f.factors[0].rule, FactorRule::InfiniteIrreducible);
        assert_eq!(f.factors[0].label, "~A1");
        let allinf = CoxeterSystem::from_upper(3, &[None, None, None]).unwrap();
        let f = decompose(&allinf).unwrap();
        assert_eq!(f.factors.len(), 1);
        assert!(f.factors[0].label.starts_with("rank 3"));
    }

    #[test]
    fn disjoint_union_is_multiset_union() {
        let b3 = path(&[Some(3), Some(4)]);
        let a2 = path(&[Some(3)]);
        let both = b3.disjoint_union(&a2);
        let mut expected = decompose(&b3).unwrap().factors;
        expected.extend(decompose(&a2).unwrap().factors);
        expected.sort();
        assert_eq!(decompose(&both).unwrap().factors, expected);
    }

    #[test]
    fn invariant_under_relabeling() {
        let cs = path(&[Some(4), Some(2), Some(6)]);
        let base = decompose(&cs).unwrap().factors;
        for perm in [[3, 2, 1, 0], [1, 3, 0, 2], [2, 0, 3, 1]] {
            let f = decompose(&cs.permuted(&perm)).unwrap().factors;
            assert_eq!(f, base);
        }
    }

    #[test]
    fn rule_only_provenance_for_large_splits() {
        let b5 = path(&[Some(3), Some(3), Some(3), Some(4)]);
        let f = decompose(&b5).unwrap();
        assert!(f
            .factors
            .iter()
            .all(|x| x.provenance == Provenance::RuleOnly));
        let b3 = path(&[Some(3), Some(4)]);
        let f = decompose(&b3).unwrap();
        assert!(f.factors.iter().all(|x| x.provenance == Provenance::Rule));
    }

    #[test]
    fn cross_validation_small() {
        let a2 = path(&[Some(3)]);
        let r = cross_validate(&a2, 10_000).unwrap();
        assert_eq!(r.group_order, 6);
        assert_eq!(r.pairs.len(), 1);
        assert_eq!(
            r.pairs[0].1.family,
            Some(FamilyLabel::Symmetric(3))
        );

        let b3 = path(&[Some(3), Some(4)]);
        let r = cross_validate(&b3, 10_000).unwrap();
        let mut orders: Vec<usize> = r.pairs.iter().map(|(_, l)| l.order).collect();
        orders.sort_unstable();
        assert_eq!(orders, vec![2, 24]);

        let h3 = path(&[Some(5), Some(3)]);
        let r = cross_validate(&h3, 10_000).unwrap();
        let mut orders: Vec<usize> = r.pairs.iter().map(|(_, l)| l.order).collect();
        orders.sort_unstable();
        assert_eq!(orders, vec![2, 60]);
        // The order-60 complement is Alt5, found by the oracle.
        assert!(r
            .pairs
            .iter()
            .any(|(_, l)| l.family == Some(FamilyLabel::Alternating(5))));
    }

    #[test]
    fn center_split_search() {
        let h3 = build_group(&path(&[Some(5), Some(3)]), 10_000).unwrap();
        let (z, m) = factor_center_split(&h3.group).unwrap().unwrap();
        assert_eq!((z.len(), m.len()), (2, 60));
        assert!(factor_center_split(&dihedral(4)).unwrap().is_none());
        assert!(factor_center_split(&cyclic(4)).unwrap().is_none());
        // Center not of order 2 is rejected.
        assert!(factor_center_split(&cyclic(3)).is_err());
    }
}
