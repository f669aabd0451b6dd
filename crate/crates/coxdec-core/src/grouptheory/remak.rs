//! Direct-product decompositions of finite groups into indecomposable
//! factors, with fast paths for abelian groups and central cyclic
//! factors before falling back to the full normal-subgroup lattice.

use alloc::boxed::Box;
use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use super::iso::{fingerprint, is_isomorphic, Fingerprint};
use super::{
    construct, CayleyGroup, GroupError, Subgroup,
};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum FamilyLabel {
    Cyclic(u64),
    Abelian(Vec<u64>),
    /// Dihedral of the given order.
    Dihedral(u64),
    Symmetric(u32),
    Alternating(u32),
    /// Generalized quaternion of the given order.
    Quaternion(u64),
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct FactorLabel {
    pub order: usize,
    pub family: Option<FamilyLabel>,
    pub fingerprint: Fingerprint,
}

/// An indecomposable direct factor: its abstract table plus a label.
#[derive(Clone, Debug)]
pub struct Factor {
    pub group: CayleyGroup,
    pub label: FactorLabel,
}

#[derive(Clone, Debug)]
pub enum RemakNode {
    Leaf(Subgroup),
    Split {
        whole: Subgroup,
        left: Box<RemakNode>,
        right: Box<RemakNode>,
    },
}

impl RemakNode {
    fn collect_leaves(&self, out: &mut Vec<Subgroup>) {
        match self {
            RemakNode::Leaf(s) => out.push(s.clone()),
            RemakNode::Split { left, right, .. } => {
                left.collect_leaves(out);
                right.collect_leaves(out);
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct RemakDecomposition {
    pub tree: RemakNode,
    /// Indecomposable factors as subgroups of the input group.
    pub leaves: Vec<Subgroup>,
    /// Labeled abstract factor groups, sorted by (order, fingerprint).
    pub factors: Vec<Factor>,
}

/// Name a group by explicit isomorphism against the reference families.
pub fn label_factor(g: &CayleyGroup) -> FactorLabel {
    let n = g.order();
    let fp = fingerprint(g);
    let family = if g.is_abelian() {
        if g.element_orders_cyclic() {
            Some(FamilyLabel::Cyclic(n as u64))
        } else {
            Some(FamilyLabel::Abelian(g.abelian_invariants()))
        }
    } else {
        let mut found = None;
        for k in 3..=6u32 {
            if factorial(k) == n as u64 && is_isomorphic(g, &construct::symmetric(k)).is_some() {
                found = Some(FamilyLabel::Symmetric(k));
                break;
            }
            if factorial(k) == 2 * n as u64
                && is_isomorphic(g, &construct::alternating(k)).is_some()
            {
                found = Some(FamilyLabel::Alternating(k));
                break;
            }
        }
        if found.is_none()
            && n % 2 == 0
            && n >= 6
            && is_isomorphic(g, &construct::dihedral(n as u64 / 2)).is_some()
        {
            found = Some(FamilyLabel::Dihedral(n as u64));
        }
        if found.is_none()
            && n % 4 == 0
            && n >= 8
            && is_isomorphic(g, &construct::quaternion_generalized(n as u64 / 4)).is_some()
        {
            found = Some(FamilyLabel::Quaternion(n as u64));
        }
        found
    };
    FactorLabel {
        order: n,
        family,
        fingerprint: fp,
    }
}

impl CayleyGroup {
    fn element_orders_cyclic(&self) -> bool {
        (0..self.order() as u16).any(|x| self.element_order(x) == self.order() as u64)
    }
}

fn factorial(k: u32) -> u64 {
    (1..=k as u64).product()
}

/// Search for a complement of `c` in the abelian group `a` by adding
/// generators with backtracking.
fn abelian_complement(a: &CayleyGroup, c: &Subgroup) -> Option<Subgroup> {
    let target = a.order() / c.len();
    fn dfs(
        a: &CayleyGroup,
        c: &Subgroup,
        k: Subgroup,
        target: usize,
        start: u16,
    ) -> Option<Subgroup> {
        if k.len() == target {
            return Some(k);
        }
        for y in start..a.order() as u16 {
            if k.contains(y) || c.contains(y) {
                continue;
            }
            let mut gens = k.members().to_vec();
            gens.push(y);
            let k2 = a.closure(&gens);
            if k2.len() > target || target % k2.len() != 0 {
                continue;
            }
            if k2.members().iter().any(|&m| m != 0 && c.contains(m)) {
                continue;
            }
            if let Some(res) = dfs(a, c, k2, target, y + 1) {
                return Some(res);
            }
        }
        None
    }
    dfs(a, c, a.trivial_subgroup(), target, 1)
}

/// One direct split of `s`, or None when indecomposable (or trivial).
fn find_split(s: &CayleyGroup, cap: usize) -> Result<Option<(Subgroup, Subgroup)>, GroupError> {
    let n = s.order();
    if n == 1 {
        return Ok(None);
    }
    if s.is_abelian() {
        let primes = super::prime_factors(n as u64);
        if primes.len() > 1 {
            // Split off the smallest-prime part; its complement is the
            // set of elements of coprime order.
            let p = primes[0];
            let part: Vec<u16> = (0..n as u16)
                .filter(|&x| is_power_of(s.element_order(x), p))
                .collect();
            let rest: Vec<u16> = (0..n as u16)
                .filter(|&x| s.element_order(x) % p != 0)
                .collect();
            return Ok(Some((
                Subgroup::from_members(n, part),
                Subgroup::from_members(n, rest),
            )));
        }
        // p-group: split a maximal cyclic factor.
        if s.element_orders_cyclic() {
            return Ok(None);
        }
        let x = (1..n as u16)
            .max_by_key(|&x| s.element_order(x))
            .expect("nontrivial group");
        let c = s.closure(&[x]);
        let k = abelian_complement(s, &c)
            .expect("abelian p-group splits off a maximal cyclic subgroup");
        return Ok(Some((c, k)));
    }
    // Central cyclic factor via the abelianization.
    let z = s.center();
    if !z.is_trivial() {
        let (ab, proj) = s.abelianization();
        for &zc in z.members() {
            if zc == 0 || !is_prime_power(s.element_order(zc)) {
                continue;
            }
            let c = s.closure(&[zc]);
            let zbar = proj[zc as usize];
            if ab.element_order(zbar) != s.element_order(zc) {
                continue;
            }
            let cbar = ab.closure(&[zbar]);
            let Some(kbar) = abelian_complement(&ab, &cbar) else {
                continue;
            };
            let members: Vec<u16> = (0..n as u16)
                .filter(|&g| kbar.contains(proj[g as usize]))
                .collect();
            let m = Subgroup::from_members(n, members);
            if m.intersect(&c).is_trivial() && m.len() * c.len() == n {
                return Ok(Some((c, m)));
            }
        }
    }
    // Centralizer-based complement search. Candidate factors are joins
    // of at most two conjugacy-class closures (every factor in reach of
    // the corpus is generated by the classes of two of its elements);
    // the complement of a factor A sits inside C = C_G(A) as a central
    // complement of A ∩ C. Every hit is verified outright, so this
    // stays sound without enumerating the whole normal lattice.
    if let Some(pair) = complement_split(s) {
        return Ok(Some(pair));
    }
    // Fall back to the normal-subgroup lattice.
    let normals = s.normal_subgroups(cap)?;
    for (i, a) in normals.iter().enumerate() {
        if a.is_trivial() || a.len() == n {
            continue;
        }
        for b in normals.iter().skip(i + 1) {
            if b.is_trivial() || b.len() == n {
                continue;
            }
            if a.len() * b.len() == n && a.intersect(b).is_trivial() {
                return Ok(Some((a.clone(), b.clone())));
            }
        }
    }
    Ok(None)
}

const COMPLEMENT_CANDIDATE_CAP: usize = 4096;

fn complement_split(s: &CayleyGroup) -> Option<(Subgroup, Subgroup)> {
    let n = s.order();
    let mut seen: BTreeSet<Vec<u16>> = BTreeSet::new();
    let mut closures: Vec<Subgroup> = Vec::new();
    for class in s.conjugacy_classes() {
        let c = s.closure(&class);
        if c.len() < n && seen.insert(c.members().to_vec()) {
            closures.push(c);
        }
    }
    let mut candidates = closures.clone();
    'outer: for i in 0..closures.len() {
        for j in i + 1..closures.len() {
            let jn = s.join(&closures[i], &closures[j]);
            if jn.len() < n && seen.insert(jn.members().to_vec()) {
                candidates.push(jn);
                if candidates.len() > COMPLEMENT_CANDIDATE_CAP {
                    break 'outer;
                }
            }
        }
    }
    candidates.sort_by_key(Subgroup::len);
    for a in &candidates {
        if a.is_trivial() || n % a.len() != 0 {
            continue;
        }
        let c = s.centralizer(a);
        let d = a.intersect(&c);
        if a.len().checked_mul(c.len()) != d.len().checked_mul(n) {
            continue;
        }
        let b = if d.is_trivial() {
            c.clone()
        } else {
            // Central complement of d inside c, found through the
            // abelianization of c.
            let (ct, back) = s.subgroup_table(&c);
            let mut loc = vec![0u16; n];
            for (l, &g) in back.iter().enumerate() {
                loc[g as usize] = l as u16;
            }
            let (ab, proj) = ct.abelianization();
            let dbar_members: Vec<u16> = d
                .members()
                .iter()
                .map(|&x| proj[loc[x as usize] as usize])
                .collect();
            let dbar = ab.closure(&dbar_members);
            if dbar.len() != d.len() {
                continue;
            }
            let Some(bbar) = abelian_complement(&ab, &dbar) else {
                continue;
            };
            let members: Vec<u16> = c
                .members()
                .iter()
                .copied()
                .filter(|&x| bbar.contains(proj[loc[x as usize] as usize]))
                .collect();
            Subgroup::from_members(n, members)
        };
        if a.len() * b.len() == n
            && a.intersect(&b).is_trivial()
            && s.is_normal(&b)
        {
            return Some((a.clone(), b));
        }
    }
    None
}

fn is_power_of(mut m: u64, p: u64) -> bool {
    while m % p == 0 {
        m /= p;
    }
    m == 1
}

fn is_prime_power(m: u64) -> bool {
    m > 1 && super::prime_factors(m).len() == 1
}

fn decompose_node(
    root: &CayleyGroup,
    members: Vec<u16>,
    cap: usize,
) -> Result<RemakNode, GroupError> {
    let sub = Subgroup::from_members(root.order(), members);
    let (s, back) = root.subgroup_table(&sub);
    match find_split(&s, cap)? {
        None => Ok(RemakNode::Leaf(sub)),
        Some((a, b)) => {
            let lift = |part: &Subgroup| -> Vec<u16> {
                part.members().iter().map(|&i| back[i as usize]).collect()
            };
            let left = decompose_node(root, lift(&a), cap)?;
            let right = decompose_node(root, lift(&b), cap)?;
            Ok(RemakNode::Split {
                whole: sub,
                left: Box::new(left),
                right: Box::new(right),
            })
        }
    }
}

/// Decompose a finite group into indecomposable direct factors.
pub fn remak_decompose(g: &CayleyGroup, cap: usize) -> Result<RemakDecomposition, GroupError> {
    let tree = decompose_node(g, (0..g.order() as u16).collect(), cap)?;
    let mut leaves = Vec::new();
    tree.collect_leaves(&mut leaves);
    // Drop trivial leaves unless the whole group is trivial.
    if leaves.len() > 1 {
        leaves.retain(|l| !l.is_trivial());
    }
    let mut factors: Vec<Factor> = leaves
        .iter()
        .map(|l| {
            let (table, _) = g.subgroup_table(l);
            let label = label_factor(&table);
            Factor {
                group: table,
                label,
            }
        })
        .collect();
    factors.sort_by(|a, b| a.label.cmp(&b.label));
    leaves.sort_by(|a, b| (a.len(), a.members()).cmp(&(b.len(), b.members())));
    Ok(RemakDecomposition {
        tree,
        leaves,
        factors,
    })
}

/// Every maximal direct decomposition of `g`, as sets of subgroup member
/// lists. Searches all split pairs from the full normal lattice at each
/// level, so only suitable for small groups.
pub fn all_remak_leaf_sets(
    g: &CayleyGroup,
    cap: usize,
) -> Result<Vec<Vec<Subgroup>>, GroupError> {
    fn all_splits(
        s: &CayleyGroup,
        cap: usize,
    ) -> Result<Vec<(Subgroup, Subgroup)>, GroupError> {
        let n = s.order();
        let normals = s.normal_subgroups(cap)?;
        let mut out = Vec::new();
        for (i, a) in normals.iter().enumerate() {
            if a.is_trivial() || a.len() == n {
                continue;
            }
            for b in normals.iter().skip(i + 1) {
                if b.is_trivial() || b.len() == n {
                    continue;
                }
                if a.len() * b.len() == n && a.intersect(b).is_trivial() {
                    out.push((a.clone(), b.clone()));
                }
            }
        }
        Ok(out)
    }

    fn recurse(
        root: &CayleyGroup,
        members: Vec<u16>,
        cap: usize,
    ) -> Result<Vec<Vec<Vec<u16>>>, GroupError> {
        let sub = Subgroup::from_members(root.order(), members.clone());
        let (s, back) = root.subgroup_table(&sub);
        let splits = all_splits(&s, cap)?;
        if splits.is_empty() {
            return Ok(vec![vec![members]]);
        }
        let mut out: Vec<Vec<Vec<u16>>> = Vec::new();
        for (a, b) in splits {
            let lift = |part: &Subgroup| -> Vec<u16> {
                part.members().iter().map(|&i| back[i as usize]).collect()
            };
            let lefts = recurse(root, lift(&a), cap)?;
            let rights = recurse(root, lift(&b), cap)?;
            for l in &lefts {
                for r in &rights {
                    let mut leaves: Vec<Vec<u16>> = l.clone();
                    leaves.extend(r.iter().cloned());
                    leaves.retain(|m| m.len() > 1);
                    leaves.sort();
                    if !out.contains(&leaves) {
                        out.push(leaves);
                    }
                }
            }
        }
        Ok(out)
    }

    let sets = recurse(g, (0..g.order() as u16).collect(), cap)?;
    Ok(sets
        .into_iter()
        .map(|leaves| {
            leaves
                .into_iter()
                .map(|m| Subgroup::from_members(g.order(), m))
                .collect()
        })
        .collect())
}

/// Are two factor multisets equal up to isomorphism of the factors?
pub fn multiset_isomorphic(a: &[Factor], b: &[Factor]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let mut used = vec![false; b.len()];
    'outer: for fa in a {
        for (i, fb) in b.iter().enumerate() {
            if !used[i]
                && fa.label.order == fb.label.order
                && is_isomorphic(&fa.group, &fb.group).is_some()
            {
                used[i] = true;
                continue 'outer;
            }
        }
        return false;
    }
    true
}

/// Relabel the elements of a group by a seeded pseudorandom permutation
/// fixing the identity. The result is isomorphic to the input.
pub fn relabel(g: &CayleyGroup, seed: u64) -> CayleyGroup {
    let n = g.order();
    let mut perm: Vec<u16> = (1..n as u16).collect();
    let mut state = seed.wrapping_mul(0x9e3779b97f4a7c15).wrapping_add(1);
    let mut next = || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        state
    };
    for i in (1..perm.len()).rev() {
        let j = (next() % (i as u64 + 1)) as usize;
        perm.swap(i, j);
    }
    let mut map = vec![0u16; n];
    for (i, &p) in perm.iter().enumerate() {
        map[i + 1] = p;
    }
    let mut table = vec![0u16; n * n];
    for i in 0..n {
        for j in 0..n {
            table[map[i] as usize * n + map[j] as usize] =
                map[g.mul(i as u16, j as u16) as usize];
        }
    }
    CayleyGroup::from_table_trusted(n, table)
}
