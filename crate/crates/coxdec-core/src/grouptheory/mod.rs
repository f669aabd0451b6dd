//! Finite groups as Cayley tables: normal-subgroup lattices, Remak
//! decompositions, isomorphism testing, centers and hypercenters, k_n
//! invariants and QM bounds. This module is the brute-force oracle the
//! Coxeter-side rules are validated against.

mod construct;
mod iso;
mod knfree;
mod remak;

pub use construct::{
    abelian, alternating, cyclic, dihedral, quaternion_generalized, symmetric,
};
pub use iso::{automorphisms, fingerprint, is_isomorphic, Fingerprint};
pub use knfree::{catalog_of_order_at_most, kn_free, KnFreeOutcome};
pub use remak::{
    all_remak_leaf_sets, label_factor, multiset_isomorphic, relabel, remak_decompose,
    Factor, FactorLabel, FamilyLabel, RemakDecomposition, RemakNode,
};

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

/// Default order bound for normal-subgroup enumeration.
pub const DEFAULT_ORDER_BOUND: usize = 2000;
/// Default order bound for full subgroup enumeration (QM only).
pub const DEFAULT_QM_ORDER_BOUND: usize = 400;
/// Cap on the number of subgroups any lattice enumeration may produce.
pub const DEFAULT_LATTICE_CAP: usize = 200_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupError {
    IdentityNotZero { index: usize },
    NotAPermutation { line: usize },
    NotAssociative { i: usize, j: usize, k: usize },
    NotNormal,
    SizeBound { limit: usize, actual: usize },
    LatticeCap { limit: usize },
    BudgetExceeded { kernels_found: usize },
}

impl fmt::Display for GroupError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupError::IdentityNotZero { index } => {
                write!(f, "index 0 is not a two-sided identity (fails at {index})")
            }
            GroupError::NotAPermutation { line } => {
                write!(f, "row/column {line} is not a permutation")
            }
            GroupError::NotAssociative { i, j, k } => {
                write!(f, "associativity fails at ({i},{j},{k})")
            }
            GroupError::NotNormal => write!(f, "subgroup is not normal"),
            GroupError::SizeBound { limit, actual } => {
                write!(f, "group order {actual} exceeds the configured bound {limit}")
            }
            GroupError::LatticeCap { limit } => {
                write!(f, "subgroup enumeration exceeded the cap of {limit}")
            }
            GroupError::BudgetExceeded { kernels_found } => write!(
                f,
                "element budget exceeded ({kernels_found} kernels enumerated)"
            ),
        }
    }
}

/// Dense membership set over group element indices.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Bitset {
    words: Vec<u64>,
}

impl Bitset {
    pub fn new(n: usize) -> Self {
        Bitset {
            words: vec![0; n.div_ceil(64)],
        }
    }

    pub fn set(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn get(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn intersect(&self, other: &Bitset) -> Bitset {
        Bitset {
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a & b)
                .collect(),
        }
    }

    pub fn union(&self, other: &Bitset) -> Bitset {
        Bitset {
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a | b)
                .collect(),
        }
    }

    pub fn is_subset(&self, other: &Bitset) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }
}

/// A subgroup of some parent [`CayleyGroup`], stored as a sorted member
/// list plus a membership bitset.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Subgroup {
    members: Vec<u16>,
    bits: Bitset,
}

impl Subgroup {
    pub fn from_members(parent_order: usize, mut members: Vec<u16>) -> Self {
        members.sort_unstable();
        members.dedup();
        let mut bits = Bitset::new(parent_order);
        for &m in &members {
            bits.set(m as usize);
        }
        Subgroup { members, bits }
    }

    pub fn members(&self) -> &[u16] {
        &self.members
    }

    pub fn bits(&self) -> &Bitset {
        &self.bits
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }

    pub fn contains(&self, i: u16) -> bool {
        self.bits.get(i as usize)
    }

    pub fn intersect(&self, other: &Subgroup) -> Subgroup {
        let bits = self.bits.intersect(&other.bits);
        let members = self
            .members
            .iter()
            .copied()
            .filter(|&m| other.contains(m))
            .collect();
        Subgroup { members, bits }
    }
}

/// A finite group given by its full multiplication table, identity at
/// index 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CayleyGroup {
    n: usize,
    table: Vec<u16>,
    inv: Vec<u16>,
}

impl CayleyGroup {
    /// Validated constructor: checks identity, Latin-square property and
    /// full associativity. Intended for untrusted input such as files.
    pub fn from_table(n: usize, table: Vec<u16>) -> Result<Self, GroupError> {
        assert_eq!(table.len(), n * n);
        assert!(n >= 1 && n <= u16::MAX as usize);
        for i in 0..n {
            if table[i] as usize != i {
                return Err(GroupError::IdentityNotZero { index: i });
            }
            if table[i * n] as usize != i {
                return Err(GroupError::IdentityNotZero { index: i });
            }
        }
        for i in 0..n {
            let mut seen_row = vec![false; n];
            let mut seen_col = vec![false; n];
            for j in 0..n {
                let r = table[i * n + j] as usize;
                let c = table[j * n + i] as usize;
                if r >= n || seen_row[r] || c >= n || seen_col[c] {
                    return Err(GroupError::NotAPermutation { line: i });
                }
                seen_row[r] = true;
                seen_col[c] = true;
            }
        }
        for i in 0..n {
            for j in 0..n {
                let ij = table[i * n + j] as usize;
                for k in 0..n {
                    let jk = table[j * n + k] as usize;
                    if table[ij * n + k] != table[i * n + jk] {
                        return Err(GroupError::NotAssociative { i, j, k });
                    }
                }
            }
        }
        Ok(Self::from_table_trusted(n, table))
    }

    /// Constructor for tables produced by this crate's own builders,
    /// which are group laws by construction. Inverses are still derived
    /// and the identity position asserted.
    pub fn from_table_trusted(n: usize, table: Vec<u16>) -> Self {
        debug_assert_eq!(table.len(), n * n);
        let mut inv = vec![0u16; n];
        for i in 0..n {
            let j = (0..n)
                .find(|&j| table[i * n + j] == 0)
                .expect("every element has an inverse");
            inv[i] = j as u16;
        }
        debug_assert_eq!(table[0], 0);
        CayleyGroup { n, table, inv }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn table(&self) -> &[u16] {
        &self.table
    }

    #[inline]
    pub fn mul(&self, i: u16, j: u16) -> u16 {
        self.table[i as usize * self.n + j as usize]
    }

    #[inline]
    pub fn inv(&self, i: u16) -> u16 {
        self.inv[i as usize]
    }

    pub fn conj(&self, x: u16, g: u16) -> u16 {
        // x g x^-1
        self.mul(self.mul(x, g), self.inv(x))
    }

    pub fn element_order(&self, g: u16) -> u64 {
        let mut k = 1;
        let mut x = g;
        while x != 0 {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.n as u16).all(|i| (0..i).all(|j| self.mul(i, j) == self.mul(j, i)))
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup::from_members(self.n, vec![0])
    }

    pub fn full_subgroup(&self) -> Subgroup {
        Subgroup::from_members(self.n, (0..self.n as u16).collect())
    }

    /// Subgroup generated by the given elements. Generators already in
    /// the running span are skipped, so redundant generator lists cost
    /// only a membership test each.
    pub fn closure(&self, gens: &[u16]) -> Subgroup {
        let mut bits = Bitset::new(self.n);
        bits.set(0);
        let mut list = vec![0u16];
        let mut small: Vec<u16> = Vec::new();
        for &g in gens {
            if bits.get(g as usize) {
                continue;
            }
            small.push(g);
            // Extend: every current member times the new generator, then
            // saturate the new elements under all kept generators.
            let frontier_start = list.len();
            for i in 0..frontier_start {
                let y = self.mul(list[i], g);
                if !bits.get(y as usize) {
                    bits.set(y as usize);
                    list.push(y);
                }
            }
            let mut head = frontier_start;
            while head < list.len() {
                let x = list[head];
                head += 1;
                for &s in &small {
                    let y = self.mul(x, s);
                    if !bits.get(y as usize) {
                        bits.set(y as usize);
                        list.push(y);
                    }
                }
            }
        }
        Subgroup::from_members(self.n, list)
    }

    /// Closure of the union of two subgroups (their join).
    pub fn join(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        let mut gens: Vec<u16> = a.members().to_vec();
        gens.extend_from_slice(b.members());
        self.closure(&gens)
    }

    /// A small generating set, built greedily.
    pub fn generating_set(&self) -> Vec<u16> {
        let mut gens: Vec<u16> = Vec::new();
        let mut have = self.closure(&gens);
        for g in 1..self.n as u16 {
            if !have.contains(g) {
                gens.push(g);
                have = self.closure(&gens);
                if have.len() == self.n {
                    break;
                }
            }
        }
        gens
    }

    pub fn conjugacy_classes(&self) -> Vec<Vec<u16>> {
        let mut seen = Bitset::new(self.n);
        let mut classes = Vec::new();
        for g in 0..self.n as u16 {
            if seen.get(g as usize) {
                continue;
            }
            let mut class_bits = Bitset::new(self.n);
            let mut class = Vec::new();
            for x in 0..self.n as u16 {
                let c = self.conj(x, g);
                if !class_bits.get(c as usize) {
                    class_bits.set(c as usize);
                    class.push(c);
                }
            }
            class.sort_unstable();
            for &c in &class {
                seen.set(c as usize);
            }
            classes.push(class);
        }
        classes
    }

    pub fn center(&self) -> Subgroup {
        let members = (0..self.n as u16)
            .filter(|&z| (0..self.n as u16).all(|x| self.mul(z, x) == self.mul(x, z)))
            .collect();
        Subgroup::from_members(self.n, members)
    }

    pub fn centralizer(&self, s: &Subgroup) -> Subgroup {
        let members = (0..self.n as u16)
            .filter(|&z| s.members().iter().all(|&x| self.mul(z, x) == self.mul(x, z)))
            .collect();
        Subgroup::from_members(self.n, members)
    }

    pub fn is_normal(&self, s: &Subgroup) -> bool {
        (0..self.n as u16).all(|x| s.members().iter().all(|&h| s.contains(self.conj(x, h))))
    }

    /// Smallest normal subgroup containing the given elements.
    pub fn normal_closure(&self, seed: &[u16]) -> Subgroup {
        let mut current = self.closure(seed);
        loop {
            let mut extra: Vec<u16> = Vec::new();
            let mut pending = Bitset::new(self.n);
            for &h in current.members() {
                for x in 0..self.n as u16 {
                    let c = self.conj(x, h);
                    if !current.contains(c) && !pending.get(c as usize) {
                        pending.set(c as usize);
                        extra.push(c);
                    }
                }
            }
            if extra.is_empty() {
                return current;
            }
            let mut gens = current.members().to_vec();
            gens.extend(extra);
            current = self.closure(&gens);
        }
    }

    pub fn derived_subgroup(&self) -> Subgroup {
        let mut comms = Vec::new();
        for i in 0..self.n as u16 {
            for j in 0..self.n as u16 {
                // [i,j] = i j i^-1 j^-1
                let c = self.mul(self.mul(self.mul(i, j), self.inv(i)), self.inv(j));
                comms.push(c);
            }
        }
        self.normal_closure(&comms)
    }

    /// Complete list of normal subgroups, as the join-closure of normal
    /// closures of single conjugacy classes. Deterministic order.
    pub fn normal_subgroups(&self, cap: usize) -> Result<Vec<Subgroup>, GroupError> {
        let mut set: BTreeSet<Vec<u16>> = BTreeSet::new();
        set.insert(vec![0]);
        let mut list: Vec<Subgroup> = vec![self.trivial_subgroup()];
        let mut queue: Vec<Subgroup> = Vec::new();
        for class in self.conjugacy_classes() {
            let n = self.closure(&class);
            if set.insert(n.members().to_vec()) {
                list.push(n.clone());
                queue.push(n);
            }
        }
        let mut head = 0;
        while head < queue.len() {
            let a = queue[head].clone();
            head += 1;
            let snapshot: Vec<Subgroup> = list.clone();
            for b in snapshot {
                if a.bits().is_subset(b.bits()) || b.bits().is_subset(a.bits()) {
                    continue;
                }
                let j = self.join(&a, &b);
                if set.insert(j.members().to_vec()) {
                    if set.len() > cap {
                        return Err(GroupError::LatticeCap { limit: cap });
                    }
                    list.push(j.clone());
                    queue.push(j);
                }
            }
        }
        list.sort_by(|x, y| (x.len(), x.members()).cmp(&(y.len(), y.members())));
        Ok(list)
    }

    /// Union of the ascending central series.
    pub fn hypercenter(&self) -> Subgroup {
        let mut current = self.trivial_subgroup();
        loop {
            // Preimage of the center of G/current: g with [g,x] in current
            // for all x.
            let next: Vec<u16> = (0..self.n as u16)
                .filter(|&g| {
                    (0..self.n as u16).all(|x| {
                        let c = self.mul(
                            self.mul(self.mul(g, x), self.inv(g)),
                            self.inv(x),
                        );
                        current.contains(c)
                    })
                })
                .collect();
            let next = Subgroup::from_members(self.n, next);
            if next.len() == current.len() {
                return current;
            }
            current = next;
        }
    }

    /// Quotient by a normal subgroup. Cosets are ordered by their
    /// smallest member, so the identity coset is index 0. Returns the
    /// quotient table and the element -> coset projection.
    pub fn quotient(&self, nsub: &Subgroup) -> Result<(CayleyGroup, Vec<u16>), GroupError> {
        if !self.is_normal(nsub) {
            return Err(GroupError::NotNormal);
        }
        let mut coset_of = vec![u16::MAX; self.n];
        let mut reps: Vec<u16> = Vec::new();
        for g in 0..self.n as u16 {
            if coset_of[g as usize] != u16::MAX {
                continue;
            }
            let idx = reps.len() as u16;
            reps.push(g);
            for &h in nsub.members() {
                coset_of[self.mul(g, h) as usize] = idx;
            }
        }
        let m = reps.len();
        let mut table = vec![0u16; m * m];
        for (i, &a) in reps.iter().enumerate() {
            for (j, &b) in reps.iter().enumerate() {
                table[i * m + j] = coset_of[self.mul(a, b) as usize];
            }
        }
        Ok((CayleyGroup::from_table_trusted(m, table), coset_of))
    }

    /// Extract the abstract multiplication table of a subgroup. Returns
    /// the table together with the member list (abstract index ->
    /// parent element).
    pub fn subgroup_table(&self, s: &Subgroup) -> (CayleyGroup, Vec<u16>) {
        let members = s.members().to_vec();
        let m = members.len();
        let mut local = vec![u16::MAX; self.n];
        for (i, &g) in members.iter().enumerate() {
            local[g as usize] = i as u16;
        }
        let mut table = vec![0u16; m * m];
        for (i, &a) in members.iter().enumerate() {
            for (j, &b) in members.iter().enumerate() {
                table[i * m + j] = local[self.mul(a, b) as usize];
            }
        }
        (CayleyGroup::from_table_trusted(m, table), members)
    }

    /// Abelianization G/[G,G] with the projection map.
    pub fn abelianization(&self) -> (CayleyGroup, Vec<u16>) {
        let d = self.derived_subgroup();
        let (q, map) = self.quotient(&d).expect("derived subgroup is normal");
        (q, map)
    }

    /// Invariants of an abelian group as a sorted list of prime-power
    /// cyclic orders. Panics on nonabelian input.
    pub fn abelian_invariants(&self) -> Vec<u64> {
        assert!(self.is_abelian());
        let mut out = Vec::new();
        for p in prime_factors(self.n as u64) {
            // #{x : x^(p^j) = 1} = p^(sum of min(j, part)), so successive
            // log differences give the conjugate partition of the p-part.
            let count_dividing = |e: u32| -> u64 {
                let pe = p.pow(e);
                (0..self.n as u16)
                    .filter(|&x| {
                        let mut acc = 0u16;
                        for _ in 0..pe {
                            acc = self.mul(acc, x);
                        }
                        acc == 0
                    })
                    .count() as u64
            };
            let log_p = |mut m: u64| -> u32 {
                let mut e = 0;
                while m > 1 {
                    m /= p;
                    e += 1;
                }
                e
            };
            let mut prev = 0u32;
            let mut conj_parts: Vec<u32> = Vec::new();
            for j in 1..64 {
                let s = log_p(count_dividing(j));
                if s == prev {
                    break;
                }
                conj_parts.push(s - prev);
                prev = s;
            }
            let rows = conj_parts.len();
            for i in 0..rows {
                let mult =
                    conj_parts[i] - if i + 1 < rows { conj_parts[i + 1] } else { 0 };
                for _ in 0..mult {
                    out.push(p.pow((i + 1) as u32));
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// All subgroups, by closure of incremental generator additions.
    pub fn all_subgroups(&self, order_bound: usize, cap: usize) -> Result<Vec<Subgroup>, GroupError> {
        if self.n > order_bound {
            return Err(GroupError::SizeBound {
                limit: order_bound,
                actual: self.n,
            });
        }
        let mut set: BTreeSet<Vec<u16>> = BTreeSet::new();
        let mut list: Vec<Subgroup> = Vec::new();
        let mut queue: Vec<Subgroup> = Vec::new();
        let triv = self.trivial_subgroup();
        set.insert(triv.members().to_vec());
        list.push(triv.clone());
        queue.push(triv);
        let mut head = 0;
        while head < queue.len() {
            let h = queue[head].clone();
            head += 1;
            for g in 1..self.n as u16 {
                if h.contains(g) {
                    continue;
                }
                let mut gens = h.members().to_vec();
                gens.push(g);
                let bigger = self.closure(&gens);
                if set.insert(bigger.members().to_vec()) {
                    if set.len() > cap {
                        return Err(GroupError::LatticeCap { limit: cap });
                    }
                    list.push(bigger.clone());
                    queue.push(bigger);
                }
            }
        }
        list.sort_by(|x, y| (x.len(), x.members()).cmp(&(y.len(), y.members())));
        Ok(list)
    }

    /// For finite G: the least n such that every nontrivial subgroup has
    /// a proper normal subgroup of index at most n.
    pub fn qm_bound(&self, order_bound: usize, cap: usize) -> Result<u64, GroupError> {
        let subs = self.all_subgroups(order_bound, cap)?;
        let mut worst = 2u64;
        for s in &subs {
            if s.is_trivial() {
                continue;
            }
            let (h, _) = self.subgroup_table(s);
            let normals = h.normal_subgroups(cap)?;
            let best = normals
                .iter()
                .filter(|n| n.len() < h.order())
                .map(|n| (h.order() / n.len()) as u64)
                .min()
                .expect("trivial subgroup is always proper normal");
            worst = worst.max(best);
        }
        Ok(worst)
    }

    /// Normal subgroups of index at most `n` (n <= 8), found by descending
    /// through elementary-abelian chief steps. Includes the whole group.
    pub fn normal_subgroups_of_index_at_most(
        &self,
        n: u64,
        cap: usize,
    ) -> Result<Vec<Subgroup>, GroupError> {
        assert!(n >= 1 && n <= 8, "index bound limited to 8");
        let gens = self.generating_set();
        let mut set: BTreeSet<Vec<u16>> = BTreeSet::new();
        let full = self.full_subgroup();
        set.insert(full.members().to_vec());
        let mut queue: Vec<Subgroup> = vec![full];
        let mut head = 0;
        while head < queue.len() {
            let cur = queue[head].clone();
            head += 1;
            let index_so_far = (self.n / cur.len()) as u64;
            for p in [2u64, 3, 5, 7] {
                let mut pk = p;
                let mut k = 1u32;
                while index_so_far * pk <= n {
                    for sub in self.invariant_codim_subgroups(&cur, p, k, &gens, cap)? {
                        if set.insert(sub.members().to_vec()) {
                            if set.len() > cap {
                                return Err(GroupError::LatticeCap { limit: cap });
                            }
                            queue.push(sub);
                        }
                    }
                    pk *= p;
                    k += 1;
                }
            }
        }
        let mut list: Vec<Subgroup> = set
            .into_iter()
            .map(|m| Subgroup::from_members(self.n, m))
            .collect();
        list.sort_by(|x, y| (x.len(), x.members()).cmp(&(y.len(), y.members())));
        Ok(list)
    }

    /// G-invariant subgroups M with cur/M elementary abelian of order p^k.
    fn invariant_codim_subgroups(
        &self,
        cur: &Subgroup,
        p: u64,
        k: u32,
        g_gens: &[u16],
        cap: usize,
    ) -> Result<Vec<Subgroup>, GroupError> {
        // M0 = [cur,cur] * cur^p, normal in G because cur is.
        let mut seeds: Vec<u16> = Vec::new();
        for &x in cur.members() {
            for &y in cur.members() {
                let c = self.mul(self.mul(self.mul(x, y), self.inv(x)), self.inv(y));
                seeds.push(c);
            }
            let mut acc = 0u16;
            for _ in 0..p {
                acc = self.mul(acc, x);
            }
            seeds.push(acc);
        }
        let m0 = self.closure(&seeds);
        let quot_size = cur.len() / m0.len();
        // Quotient must be p-elementary of dimension >= k.
        let mut dim = 0u32;
        let mut t = quot_size as u64;
        while t % p == 0 {
            t /= p;
            dim += 1;
        }
        if t != 1 || dim < k {
            return Ok(Vec::new());
        }
        // Coset structure of cur/m0.
        let mut coset_of = vec![u16::MAX; self.n];
        let mut reps: Vec<u16> = Vec::new();
        for &g in cur.members() {
            if coset_of[g as usize] != u16::MAX {
                continue;
            }
            let idx = reps.len() as u16;
            reps.push(g);
            for &h in m0.members() {
                coset_of[self.mul(g, h) as usize] = idx;
            }
        }
        let nc = reps.len();
        let mul_c = |a: u16, b: u16| coset_of[self.mul(reps[a as usize], reps[b as usize]) as usize];
        // F_p coordinates: greedy basis of the elementary abelian quotient.
        let mut basis: Vec<u16> = Vec::new();
        let mut coords = vec![Vec::<u8>::new(); nc];
        let mut span: Vec<u16> = vec![0];
        coords[0] = Vec::new();
        for c in 0..nc as u16 {
            if span.contains(&c) {
                continue;
            }
            basis.push(c);
            let old_span = span.clone();
            for e in 1..p {
                let mut shift = c;
                for _ in 1..e {
                    shift = mul_c(shift, c);
                }
                for &s in &old_span {
                    let v = mul_c(s, shift);
                    if !span.contains(&v) {
                        let mut co = coords[s as usize].clone();
                        co.resize(basis.len(), 0);
                        co[basis.len() - 1] = e as u8;
                        coords[v as usize] = co;
                        span.push(v);
                    }
                }
            }
            if span.len() == nc {
                break;
            }
        }
        let d = basis.len();
        for co in coords.iter_mut() {
            co.resize(d, 0);
        }
        debug_assert_eq!(d, dim as usize);
        // Conjugation action of each G-generator on the quotient, as a
        // d x d matrix over F_p acting on coordinates.
        let action: Vec<Vec<Vec<u8>>> = g_gens
            .iter()
            .map(|&g| {
                basis
                    .iter()
                    .map(|&b| {
                        let img = self.conj(g, reps[b as usize]);
                        coords[coset_of[img as usize] as usize].clone()
                    })
                    .collect()
            })
            .collect();
        // Enumerate (d-k)-dimensional subspaces via row-echelon forms and
        // keep the invariant ones.
        let sub_dim = d - k as usize;
        let count = gaussian_binomial(p, d, sub_dim);
        if count > cap as u64 {
            return Err(GroupError::LatticeCap { limit: cap });
        }
        let mut out = Vec::new();
        for rref in enumerate_rref(p, d, sub_dim) {
            if !subspace_invariant(p, &rref, &action) {
                continue;
            }
            // Preimage in cur of the subspace.
            let mut members: Vec<u16> = Vec::new();
            for &g in cur.members() {
                let co = &coords[coset_of[g as usize] as usize];
                if in_row_space(p, &rref, co) {
                    members.push(g);
                }
            }
            out.push(Subgroup::from_members(self.n, members));
        }
        Ok(out)
    }

    /// K_n and k_n: the intersection of all normal subgroups of index at
    /// most n, and its index.
    pub fn kn(&self, n: u64, cap: usize) -> Result<(Subgroup, u64), GroupError> {
        let normals = self.normal_subgroups_of_index_at_most(n, cap)?;
        let mut bits = self.full_subgroup().bits().clone();
        for s in &normals {
            bits = bits.intersect(s.bits());
        }
        let members: Vec<u16> = (0..self.n as u16).filter(|&i| bits.get(i as usize)).collect();
        let k = Subgroup::from_members(self.n, members);
        let idx = (self.n / k.len()) as u64;
        Ok((k, idx))
    }
}

/// Direct product with lexicographic indexing `(i, j) -> i * |H| + j`.
pub fn direct_product(g: &CayleyGroup, h: &CayleyGroup) -> Result<CayleyGroup, GroupError> {
    let n = g.order() * h.order();
    if n > u16::MAX as usize {
        return Err(GroupError::SizeBound {
            limit: u16::MAX as usize,
            actual: n,
        });
    }
    let hn = h.order();
    let mut table = vec![0u16; n * n];
    for a in 0..g.order() as u16 {
        for b in 0..hn as u16 {
            let x = a as usize * hn + b as usize;
            for c in 0..g.order() as u16 {
                for d in 0..hn as u16 {
                    let y = c as usize * hn + d as usize;
                    table[x * n + y] =
                        g.mul(a, c) as u16 * hn as u16 + h.mul(b, d);
                }
            }
        }
    }
    Ok(CayleyGroup::from_table_trusted(n, table))
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn gaussian_binomial(p: u64, n: usize, k: usize) -> u64 {
    // Number of k-dim subspaces of F_p^n; saturating.
    let mut num = 1u128;
    let mut den = 1u128;
    for i in 0..k {
        num = num.saturating_mul((p as u128).pow((n - i) as u32) - 1);
        den = den.saturating_mul((p as u128).pow((i + 1) as u32) - 1);
    }
    (num / den).min(u64::MAX as u128) as u64
}

/// All row-reduced echelon forms of full rank k over F_p^n (each is a
/// canonical representative of one k-dim subspace).
fn enumerate_rref(p: u64, n: usize, k: usize) -> Vec<Vec<Vec<u8>>> {
    let mut out = Vec::new();
    let mut pivots = Vec::new();
    choose_pivots(n, k, 0, &mut pivots, &mut out, p);
    out
}

fn choose_pivots(
    n: usize,
    k: usize,
    start: usize,
    pivots: &mut Vec<usize>,
    out: &mut Vec<Vec<Vec<u8>>>,
    p: u64,
) {
    if pivots.len() == k {
        // Fill the free entries: positions (row, col) with col > pivot[row]
        // and col not a pivot column.
        let free: Vec<(usize, usize)> = (0..k)
            .flat_map(|r| {
                let pr = pivots[r];
                (pr + 1..n)
                    .filter(|c| !pivots.contains(c))
                    .map(move |c| (r, c))
            })
            .collect();
        let mut values = vec![0u8; free.len()];
        loop {
            let mut mat = vec![vec![0u8; n]; k];
            for (r, &pc) in pivots.iter().enumerate() {
                mat[r][pc] = 1;
            }
            for (idx, &(r, c)) in free.iter().enumerate() {
                mat[r][c] = values[idx];
            }
            out.push(mat);
            // Increment the odometer.
            let mut i = 0;
            loop {
                if i == values.len() {
                    return;
                }
                values[i] += 1;
                if (values[i] as u64) < p {
                    break;
                }
                values[i] = 0;
                i += 1;
            }
        }
    } else {
        for c in start..=(n - (k - pivots.len())) {
            pivots.push(c);
            choose_pivots(n, k, c + 1, pivots, out, p);
            pivots.pop();
        }
    }
}

/// Is `v` in the row space of the echelon matrix?
fn in_row_space(p: u64, rref: &[Vec<u8>], v: &[u8]) -> bool {
    let mut v = v.to_vec();
    for row in rref {
        if let Some(c) = row.iter().position(|&x| x != 0) {
            if v[c] != 0 {
                let factor = v[c] as u64;
                for (i, &r) in row.iter().enumerate() {
                    let sub = (factor * r as u64) % p;
                    v[i] = ((v[i] as u64 + p - sub) % p) as u8;
                }
            }
        }
    }
    v.iter().all(|&x| x == 0)
}


fn subspace_invariant(p: u64, rref: &[Vec<u8>], action: &[Vec<Vec<u8>>]) -> bool {
    for mat in action {
        for row in rref {
            // Image of a basis row under the action: sum of row[b] * mat[b].
            let n = row.len();
            let mut img = vec![0u8; n];
            for (b, &coef) in row.iter().enumerate() {
                if coef == 0 {
                    continue;
                }
                for (i, &m) in mat[b].iter().enumerate() {
                    img[i] = ((img[i] as u64 + coef as u64 * m as u64) % p) as u8;
                }
            }
            if !in_row_space(p, rref, &img) {
                return false;
            }
        }
    }
    true
}
