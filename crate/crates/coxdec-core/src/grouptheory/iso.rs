//! Isomorphism testing by generator-image backtracking, with cheap
//! invariant fingerprints as a pre-filter.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use super::CayleyGroup;

/// Cheap isomorphism invariants. Equality is necessary but not
/// sufficient for isomorphism.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Fingerprint {
    pub order: usize,
    /// (element order, multiplicity), sorted.
    pub element_orders: Vec<(u64, u64)>,
    /// (conjugacy class size, multiplicity), sorted.
    pub class_sizes: Vec<(u64, u64)>,
    /// Invariants of the abelianization.
    pub abelianization: Vec<u64>,
}

pub fn fingerprint(g: &CayleyGroup) -> Fingerprint {
    let mut orders: BTreeMap<u64, u64> = BTreeMap::new();
    for x in 0..g.order() as u16 {
        *orders.entry(g.element_order(x)).or_insert(0) += 1;
    }
    let mut classes: BTreeMap<u64, u64> = BTreeMap::new();
    for c in g.conjugacy_classes() {
        *classes.entry(c.len() as u64).or_insert(0) += 1;
    }
    let (ab, _) = g.abelianization();
    Fingerprint {
        order: g.order(),
        element_orders: orders.into_iter().collect(),
        class_sizes: classes.into_iter().collect(),
        abelianization: ab.abelian_invariants(),
    }
}

fn class_size_of(g: &CayleyGroup) -> Vec<u64> {
    let mut out = vec![0u64; g.order()];
    for c in g.conjugacy_classes() {
        for &x in &c {
            out[x as usize] = c.len() as u64;
        }
    }
    out
}

struct Search<'a> {
    g: &'a CayleyGroup,
    h: &'a CayleyGroup,
    gens: Vec<u16>,
    g_order: Vec<u64>,
    h_order: Vec<u64>,
    g_class: Vec<u64>,
    h_class: Vec<u64>,
    /// When set, collect every isomorphism instead of stopping at one.
    collect_all: bool,
    found: Vec<Vec<u16>>,
}

impl<'a> Search<'a> {
    /// Extend the partial map by closing the domain under the generators
    /// chosen so far. `map` uses u16::MAX as "undefined"; `domain` lists
    /// the elements with defined images in BFS order.
    fn close(
        &self,
        map: &mut Vec<u16>,
        domain: &mut Vec<u16>,
        images: &[u16],
    ) -> bool {
        let mut head = 0;
        while head < domain.len() {
            let x = domain[head];
            head += 1;
            for (i, &s) in self.gens[..images.len()].iter().enumerate() {
                let y = self.g.mul(x, s);
                let img = self.h.mul(map[x as usize], images[i]);
                if map[y as usize] == u16::MAX {
                    map[y as usize] = img;
                    domain.push(y);
                } else if map[y as usize] != img {
                    return false;
                }
            }
        }
        true
    }

    fn recurse(&mut self, map: Vec<u16>, domain: Vec<u16>, images: Vec<u16>) -> bool {
        if images.len() == self.gens.len() {
            debug_assert_eq!(domain.len(), self.g.order());
            // Full verification: bijective homomorphism.
            let n = self.g.order();
            let mut seen = vec![false; n];
            for &m in map.iter() {
                if seen[m as usize] {
                    return false;
                }
                seen[m as usize] = true;
            }
            for a in 0..n as u16 {
                for b in 0..n as u16 {
                    if map[self.g.mul(a, b) as usize]
                        != self.h.mul(map[a as usize], map[b as usize])
                    {
                        return false;
                    }
                }
            }
            self.found.push(map);
            return !self.collect_all;
        }
        let s = self.gens[images.len()];
        let in_image = {
            let mut v = vec![false; self.h.order()];
            for &x in &domain {
                v[map[x as usize] as usize] = true;
            }
            v
        };
        for c in 0..self.h.order() as u16 {
            if in_image[c as usize]
                || self.g_order[s as usize] != self.h_order[c as usize]
                || self.g_class[s as usize] != self.h_class[c as usize]
            {
                continue;
            }
            let mut map2 = map.clone();
            let mut dom2 = domain.clone();
            let mut imgs2 = images.clone();
            imgs2.push(c);
            if !self.close(&mut map2, &mut dom2, &imgs2) {
                continue;
            }
            if self.recurse(map2, dom2, imgs2) {
                return true;
            }
        }
        false
    }
}

fn run_search(g: &CayleyGroup, h: &CayleyGroup, collect_all: bool) -> Vec<Vec<u16>> {
    let mut search = Search {
        g,
        h,
        gens: g.generating_set(),
        g_order: (0..g.order() as u16).map(|x| g.element_order(x)).collect(),
        h_order: (0..h.order() as u16).map(|x| h.element_order(x)).collect(),
        g_class: class_size_of(g),
        h_class: class_size_of(h),
        collect_all,
        found: Vec::new(),
    };
    let mut map = vec![u16::MAX; g.order()];
    map[0] = 0;
    search.recurse(map, vec![0], Vec::new());
    search.found
}

/// Explicit isomorphism g -> h as an index map, or None.
pub fn is_isomorphic(g: &CayleyGroup, h: &CayleyGroup) -> Option<Vec<u16>> {
    if g.order() != h.order() {
        return None;
    }
    if fingerprint(g) != fingerprint(h) {
        return None;
    }
    run_search(g, h, false).into_iter().next()
}

/// The full automorphism group of g, as index maps. Intended for small
/// groups only.
pub fn automorphisms(g: &CayleyGroup) -> Vec<Vec<u16>> {
    run_search(g, g, true)
}
