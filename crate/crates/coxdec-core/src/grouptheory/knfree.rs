//! k_n for finitely generated free groups: a free group of rank g
//! surjects onto every g-generated group, so the intersection of all
//! index <= n normal subgroups is the kernel of the diagonal map into
//! the product over all such quotients, one component per distinct
//! kernel. Kernels of surjections onto Q correspond to Aut(Q)-orbits of
//! generating g-tuples.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use super::iso::automorphisms;
use super::{abelian, construct, cyclic, CayleyGroup, GroupError};

/// All groups of order at most `bound` (bound <= 8) up to isomorphism,
/// with reference names.
pub fn catalog_of_order_at_most(bound: u64) -> Vec<(&'static str, CayleyGroup)> {
    assert!((1..=8).contains(&bound));
    let mut out: Vec<(&'static str, CayleyGroup)> = Vec::new();
    let full: Vec<(&'static str, CayleyGroup)> = vec![
        ("Z1", cyclic(1)),
        ("Z2", cyclic(2)),
        ("Z3", cyclic(3)),
        ("Z4", cyclic(4)),
        ("Z2xZ2", abelian(&[2, 2])),
        ("Z5", cyclic(5)),
        ("Z6", cyclic(6)),
        ("S3", construct::symmetric(3)),
        ("Z7", cyclic(7)),
        ("Z8", cyclic(8)),
        ("Z4xZ2", abelian(&[4, 2])),
        ("Z2xZ2xZ2", abelian(&[2, 2, 2])),
        ("D8", construct::dihedral(4)),
        ("Q8", construct::quaternion_generalized(2)),
    ];
    for (name, g) in full {
        if g.order() as u64 <= bound {
            out.push((name, g));
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KnFreeOutcome {
    /// k_n = index of the intersection of all normal subgroups of index
    /// at most n.
    pub kn: u64,
    /// Number of distinct kernels (product components) used.
    pub kernels: usize,
}

/// Orbit representatives, under Aut(Q), of generating g-tuples of Q.
fn kernel_reps(q: &CayleyGroup, rank: u32) -> Vec<Vec<u16>> {
    let n = q.order();
    let auts = automorphisms(q);
    let mut reps = Vec::new();
    let mut tuple = vec![0u16; rank as usize];
    'outer: loop {
        if q.closure(&tuple).len() == n {
            // Keep the tuple only when it is the minimum of its orbit.
            let mut minimal = true;
            let mut image = vec![0u16; rank as usize];
            for a in &auts {
                for (i, &t) in tuple.iter().enumerate() {
                    image[i] = a[t as usize];
                }
                if image < tuple {
                    minimal = false;
                    break;
                }
            }
            if minimal {
                reps.push(tuple.clone());
            }
        }
        // Odometer over tuples.
        let mut i = 0;
        loop {
            if i == tuple.len() {
                break 'outer;
            }
            tuple[i] += 1;
            if (tuple[i] as usize) < n {
                break;
            }
            tuple[i] = 0;
            i += 1;
        }
    }
    reps
}

/// k_n for the free group of the given rank, with an element budget on
/// the diagonal-image closure.
pub fn kn_free(rank: u32, n: u64, element_budget: usize) -> Result<KnFreeOutcome, GroupError> {
    assert!(rank >= 1 && (1..=8).contains(&n));
    let catalog = catalog_of_order_at_most(n);
    // One product component per kernel; record each component's group
    // index and generator images.
    let mut component_group: Vec<usize> = Vec::new();
    let mut component_gens: Vec<Vec<u16>> = Vec::new();
    let groups: Vec<&CayleyGroup> = catalog.iter().map(|(_, g)| g).collect();
    for (gi, g) in groups.iter().enumerate() {
        if g.order() == 1 {
            continue;
        }
        for rep in kernel_reps(g, rank) {
            component_group.push(gi);
            component_gens.push(rep);
        }
    }
    let kernels = component_group.len();
    // Image of the free group in the product: closure of the diagonal
    // generator tuples.
    let width = kernels;
    let gens: Vec<Vec<u16>> = (0..rank as usize)
        .map(|r| component_gens.iter().map(|t| t[r]).collect())
        .collect();
    let identity = vec![0u16; width];
    let mut seen: BTreeSet<Vec<u16>> = BTreeSet::new();
    seen.insert(identity.clone());
    let mut queue = vec![identity];
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head].clone();
        head += 1;
        for g in &gens {
            let y: Vec<u16> = x
                .iter()
                .zip(g)
                .enumerate()
                .map(|(c, (&a, &b))| groups[component_group[c]].mul(a, b))
                .collect();
            if seen.insert(y.clone()) {
                if seen.len() > element_budget {
                    return Err(GroupError::BudgetExceeded {
                        kernels_found: kernels,
                    });
                }
                queue.push(y);
            }
        }
    }
    Ok(KnFreeOutcome {
        kn: seen.len() as u64,
        kernels,
    })
}
