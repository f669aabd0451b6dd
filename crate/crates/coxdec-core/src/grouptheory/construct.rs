//! Reference constructions of the named finite families, all with the
//! identity at index 0.

use alloc::vec;
use alloc::vec::Vec;

use super::{direct_product, CayleyGroup};

/// Cyclic group of order n.
pub fn cyclic(n: u64) -> CayleyGroup {
    let n = n as usize;
    let mut table = vec![0u16; n * n];
    for i in 0..n {
        for j in 0..n {
            table[i * n + j] = ((i + j) % n) as u16;
        }
    }
    CayleyGroup::from_table_trusted(n, table)
}

/// Abelian group given as a direct product of cyclic orders.
pub fn abelian(orders: &[u64]) -> CayleyGroup {
    let mut g = cyclic(1);
    for &m in orders {
        g = direct_product(&g, &cyclic(m)).expect("abelian product fits in u16");
    }
    g
}

/// Dihedral group of order 2m: elements r^i (indices 0..m) and r^i s
/// (indices m..2m), with s r s = r^-1.
pub fn dihedral(m: u64) -> CayleyGroup {
    let m = m as usize;
    let n = 2 * m;
    let idx = |rot: usize, flip: bool| -> u16 {
        (if flip { m + rot } else { rot }) as u16
    };
    let mut table = vec![0u16; n * n];
    for i in 0..n {
        let (a, fa) = if i < m { (i, false) } else { (i - m, true) };
        for j in 0..n {
            let (b, fb) = if j < m { (j, false) } else { (j - m, true) };
            // (r^a s^fa)(r^b s^fb) = r^(a +/- b) s^(fa xor fb)
            let rot = if fa { (a + m - b % m) % m } else { (a + b) % m };
            table[i * n + j] = idx(rot, fa ^ fb);
        }
    }
    CayleyGroup::from_table_trusted(n, table)
}

/// Generalized quaternion group of order 4m (m >= 2):
/// a^(2m) = 1, b^2 = a^m, b a b^-1 = a^-1. Elements a^i (0..2m) and
/// a^i b (2m..4m).
pub fn quaternion_generalized(m: u64) -> CayleyGroup {
    assert!(m >= 2);
    let m = m as usize;
    let tm = 2 * m;
    let n = 4 * m;
    let mut table = vec![0u16; n * n];
    for i in 0..n {
        let (a, fa) = if i < tm { (i, false) } else { (i - tm, true) };
        for j in 0..n {
            let (b, fb) = if j < tm { (j, false) } else { (j - tm, true) };
            // (a^a' b^fa)(a^b' b^fb); moving b across a^b' inverts it, and
            // b^2 contributes a^m.
            let mut rot = if fa { (a + tm - b) % tm } else { (a + b) % tm };
            let flip = fa ^ fb;
            if fa && fb {
                rot = (rot + m) % tm;
            }
            table[i * n + j] = (if flip { tm + rot } else { rot }) as u16;
        }
    }
    CayleyGroup::from_table_trusted(n, table)
}

fn perms_of(k: usize) -> Vec<Vec<u8>> {
    // All permutations of 0..k in lexicographic order; identity first.
    let mut out = Vec::new();
    let mut cur: Vec<u8> = (0..k as u8).collect();
    loop {
        out.push(cur.clone());
        // next_permutation
        if k < 2 {
            break;
        }
        let mut i = k - 1;
        while i > 0 && cur[i - 1] >= cur[i] {
            i -= 1;
        }
        if i == 0 {
            break;
        }
        let mut j = k - 1;
        while cur[j] <= cur[i - 1] {
            j -= 1;
        }
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
    out
}

fn perm_group(perms: Vec<Vec<u8>>) -> CayleyGroup {
    let n = perms.len();
    let k = perms[0].len();
    let index_of: alloc::collections::BTreeMap<Vec<u8>, u16> = perms
        .iter()
        .enumerate()
        .map(|(i, p)| (p.clone(), i as u16))
        .collect();
    let mut table = vec![0u16; n * n];
    let mut comp = vec![0u8; k];
    for (i, a) in perms.iter().enumerate() {
        for (j, b) in perms.iter().enumerate() {
            for t in 0..k {
                comp[t] = a[b[t] as usize];
            }
            table[i * n + j] = index_of[comp.as_slice()];
        }
    }
    CayleyGroup::from_table_trusted(n, table)
}

/// Symmetric group on k letters (k <= 6 to stay within table limits).
pub fn symmetric(k: u32) -> CayleyGroup {
    assert!((1..=6).contains(&k));
    perm_group(perms_of(k as usize))
}

/// Alternating group on k letters (k <= 6).
pub fn alternating(k: u32) -> CayleyGroup {
    assert!((1..=6).contains(&k));
    let perms: Vec<Vec<u8>> = perms_of(k as usize)
        .into_iter()
        .filter(|p| {
            let mut inversions = 0;
            for i in 0..p.len() {
                for j in i + 1..p.len() {
                    if p[i] > p[j] {
                        inversions += 1;
                    }
                }
            }
            inversions % 2 == 0
        })
        .collect();
    perm_group(perms)
}
