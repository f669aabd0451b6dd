//! Coxeter systems: validation, Tits forms, graph components, the
//! signature trichotomy with a diagram recognizer cross-check, and
//! explicit construction of finite Coxeter groups through the geometric
//! representation.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_rational::BigRational;
use num_traits::FromPrimitive;

use crate::exact::{CycloNumber, ExactError, Signature, SymMatrix};
use crate::grouptheory::CayleyGroup;

/// Default element budget for group closure.
pub const DEFAULT_CLOSURE_BUDGET: usize = 2_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoxeterError {
    Validation {
        i: usize,
        j: usize,
        reason: &'static str,
    },
    Disconnected,
    NotFinite,
    BudgetExceeded {
        limit: usize,
    },
    TableTooLarge {
        order: usize,
    },
    Exact(ExactError),
    Internal(&'static str),
}

impl fmt::Display for CoxeterError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoxeterError::Validation { i, j, reason } => {
                write!(f, "invalid Coxeter matrix at ({i},{j}): {reason}")
            }
            CoxeterError::Disconnected => write!(f, "operation requires a connected system"),
            CoxeterError::NotFinite => {
                write!(f, "group closure requires every component to be of finite type")
            }
            CoxeterError::BudgetExceeded { limit } => {
                write!(f, "element budget of {limit} exceeded during closure")
            }
            CoxeterError::TableTooLarge { order } => {
                write!(f, "group of order {order} exceeds the Cayley table limit")
            }
            CoxeterError::Exact(e) => write!(f, "{e}"),
            CoxeterError::Internal(msg) => write!(f, "internal consistency failure: {msg}"),
        }
    }
}

impl From<ExactError> for CoxeterError {
    fn from(e: ExactError) -> Self {
        CoxeterError::Exact(e)
    }
}

/// A Coxeter system (W,S): the rank and the label matrix m_st, with
/// None encoding the label ∞.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoxeterSystem {
    n: usize,
    m: Vec<Option<u64>>,
}

impl CoxeterSystem {
    pub fn new(n: usize, m: Vec<Option<u64>>) -> Result<Self, CoxeterError> {
        assert_eq!(m.len(), n * n);
        for i in 0..n {
            if m[i * n + i] != Some(1) {
                return Err(CoxeterError::Validation {
                    i,
                    j: i,
                    reason: "diagonal label must be 1",
                });
            }
            for j in 0..n {
                if i == j {
                    continue;
                }
                if m[i * n + j] != m[j * n + i] {
                    return Err(CoxeterError::Validation {
                        i,
                        j,
                        reason: "label matrix must be symmetric",
                    });
                }
                if let Some(v) = m[i * n + j] {
                    if v < 2 {
                        return Err(CoxeterError::Validation {
                            i,
                            j,
                            reason: "off-diagonal labels must be at least 2",
                        });
                    }
                }
            }
        }
        Ok(CoxeterSystem { n, m })
    }

    /// Build from the strict upper triangle, row by row.
    pub fn from_upper(n: usize, upper: &[Option<u64>]) -> Result<Self, CoxeterError> {
        assert_eq!(upper.len(), n * (n - 1) / 2);
        let mut m = vec![Some(2); n * n];
        for i in 0..n {
            m[i * n + i] = Some(1);
        }
        let mut it = upper.iter();
        for i in 0..n {
            for j in i + 1..n {
                let v = *it.next().unwrap();
                m[i * n + j] = v;
                m[j * n + i] = v;
            }
        }
        CoxeterSystem::new(n, m)
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn label(&self, i: usize, j: usize) -> Option<u64> {
        self.m[i * self.n + j]
    }

    /// Disjoint union, with `other`'s indices shifted past ours.
    pub fn disjoint_union(&self, other: &CoxeterSystem) -> CoxeterSystem {
        let n = self.n + other.n;
        let mut m = vec![Some(2); n * n];
        for i in 0..self.n {
            for j in 0..self.n {
                m[i * n + j] = self.label(i, j);
            }
        }
        for i in 0..other.n {
            for j in 0..other.n {
                m[(self.n + i) * n + (self.n + j)] = other.label(i, j);
            }
        }
        CoxeterSystem { n, m }
    }

    /// Induced subsystem on the given (sorted) index set.
    pub fn subsystem(&self, idx: &[usize]) -> CoxeterSystem {
        let k = idx.len();
        let mut m = vec![None; k * k];
        for (a, &i) in idx.iter().enumerate() {
            for (b, &j) in idx.iter().enumerate() {
                m[a * k + b] = self.label(i, j);
            }
        }
        CoxeterSystem { n: k, m }
    }

    /// Relabel generators by a permutation: new index perm[i] gets old
    /// generator i.
    pub fn permuted(&self, perm: &[usize]) -> CoxeterSystem {
        let n = self.n;
        let mut m = vec![None; n * n];
        for i in 0..n {
            for j in 0..n {
                m[perm[i] * n + perm[j]] = self.label(i, j);
            }
        }
        CoxeterSystem { n, m }
    }

    /// The Tits form: diagonal 1, entry (s,t) = -cos(π/m_st), with -1
    /// for the label ∞. All entries share one conductor.
    pub fn tits_form(&self) -> Result<SymMatrix, ExactError> {
        let mut conductor = 2u64;
        for i in 0..self.n {
            for j in i + 1..self.n {
                if let Some(m) = self.label(i, j) {
                    conductor = lcm(conductor, 2 * m);
                }
            }
        }
        let mut entries = Vec::with_capacity(self.n * self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                if i == j {
                    entries.push(CycloNumber::one(conductor));
                } else {
                    let c = CycloNumber::cos_pi_over(self.label(i, j), conductor)?;
                    entries.push(c.neg());
                }
            }
        }
        Ok(SymMatrix::new(self.n, entries))
    }

    /// Connected components of the Coxeter graph (edges where m_st >= 3
    /// or ∞), ordered by smallest member, each with its subsystem.
    pub fn components(&self) -> Vec<(Vec<usize>, CoxeterSystem)> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            let mut comp = vec![start];
            seen[start] = true;
            let mut head = 0;
            while head < comp.len() {
                let v = comp[head];
                head += 1;
                for u in 0..self.n {
                    if !seen[u] && self.label(v, u).map_or(true, |m| m >= 3) {
                        seen[u] = true;
                        comp.push(u);
                    }
                }
            }
            comp.sort_unstable();
            let sub = self.subsystem(&comp);
            out.push((comp, sub));
        }
        out
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    fn gcd(a: u64, b: u64) -> u64 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    a / gcd(a, b) * b
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum FiniteType {
    A(usize),
    B(usize),
    D(usize),
    E(u8),
    F4,
    H(u8),
    I2(u64),
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum AffineType {
    A(usize),
    B(usize),
    C(usize),
    D(usize),
    E(u8),
    F4,
    G2,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum TypeName {
    Finite(FiniteType),
    Affine(AffineType),
}

impl fmt::Display for TypeName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TypeName::Finite(t) => match t {
                FiniteType::A(n) => write!(f, "A{n}"),
                FiniteType::B(n) => write!(f, "B{n}"),
                FiniteType::D(n) => write!(f, "D{n}"),
                FiniteType::E(n) => write!(f, "E{n}"),
                FiniteType::F4 => write!(f, "F4"),
                FiniteType::H(n) => write!(f, "H{n}"),
                FiniteType::I2(m) => write!(f, "I2({m})"),
            },
            TypeName::Affine(t) => match t {
                AffineType::A(n) => write!(f, "~A{n}"),
                AffineType::B(n) => write!(f, "~B{n}"),
                AffineType::C(n) => write!(f, "~C{n}"),
                AffineType::D(n) => write!(f, "~D{n}"),
                AffineType::E(n) => write!(f, "~E{n}"),
                AffineType::F4 => write!(f, "~F4"),
                AffineType::G2 => write!(f, "~G2"),
            },
        }
    }
}

/// Order of the finite Coxeter group of the given type.
pub fn finite_type_order(t: &FiniteType) -> u64 {
    fn factorial(n: u64) -> u64 {
        (1..=n).product()
    }
    match t {
        FiniteType::A(n) => factorial(*n as u64 + 1),
        FiniteType::B(n) => (1u64 << *n as u64) * factorial(*n as u64),
        FiniteType::D(n) => (1u64 << (*n as u64 - 1)) * factorial(*n as u64),
        FiniteType::E(6) => 51_840,
        FiniteType::E(7) => 2_903_040,
        FiniteType::E(8) => 696_729_600,
        FiniteType::E(_) => unreachable!(),
        FiniteType::F4 => 1152,
        FiniteType::H(3) => 120,
        FiniteType::H(4) => 14_400,
        FiniteType::H(_) => unreachable!(),
        FiniteType::I2(m) => 2 * m,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum CoxKind {
    Finite,
    Affine,
    IndefiniteInfinite,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoxeterClass {
    pub kind: CoxKind,
    pub signature: Signature,
    pub type_name: Option<TypeName>,
}

// -- candidate diagrams ----------------------------------------------------

fn path_system(labels: &[u64]) -> CoxeterSystem {
    let n = labels.len() + 1;
    let mut m = base_matrix(n);
    for (i, &l) in labels.iter().enumerate() {
        set(&mut m, n, i, i + 1, Some(l));
    }
    CoxeterSystem { n, m }
}

fn cycle_system(n: usize) -> CoxeterSystem {
    let mut m = base_matrix(n);
    for i in 0..n {
        set(&mut m, n, i, (i + 1) % n, Some(3));
    }
    CoxeterSystem { n, m }
}

/// Star with simple-laced arms of the given edge counts.
fn star_system(arms: &[usize]) -> CoxeterSystem {
    let n = 1 + arms.iter().sum::<usize>();
    let mut m = base_matrix(n);
    let mut next = 1;
    for &len in arms {
        let mut prev = 0;
        for _ in 0..len {
            set(&mut m, n, prev, next, Some(3));
            prev = next;
            next += 1;
        }
    }
    CoxeterSystem { n, m }
}

fn base_matrix(n: usize) -> Vec<Option<u64>> {
    let mut m = vec![Some(2); n * n];
    for i in 0..n {
        m[i * n + i] = Some(1);
    }
    m
}

fn set(m: &mut [Option<u64>], n: usize, i: usize, j: usize, v: Option<u64>) {
    m[i * n + j] = v;
    m[j * n + i] = v;
}

/// The standard connected finite diagrams of rank n.
pub fn finite_candidates(n: usize) -> Vec<(FiniteType, CoxeterSystem)> {
    let mut out = Vec::new();
    match n {
        0 => {}
        1 => out.push((FiniteType::A(1), path_system(&[]))),
        2 => { /* rank 2 handled directly from the label */ }
        _ => {
            out.push((FiniteType::A(n), path_system(&vec![3; n - 1])));
            let mut b = vec![3; n - 1];
            b[n - 2] = 4;
            out.push((FiniteType::B(n), path_system(&b)));
            if n >= 4 {
                let mut arms = vec![1, 1, n - 3];
                arms.sort_unstable();
                out.push((FiniteType::D(n), star_system(&arms)));
            }
            if n == 3 {
                out.push((FiniteType::H(3), path_system(&[5, 3])));
            }
            if n == 4 {
                out.push((FiniteType::F4, path_system(&[3, 4, 3])));
                out.push((FiniteType::H(4), path_system(&[5, 3, 3])));
            }
            if n == 6 {
                out.push((FiniteType::E(6), star_system(&[1, 2, 2])));
            }
            if n == 7 {
                out.push((FiniteType::E(7), star_system(&[1, 2, 3])));
            }
            if n == 8 {
                out.push((FiniteType::E(8), star_system(&[1, 2, 4])));
            }
        }
    }
    out
}

/// The standard affine diagrams on n vertices.
pub fn affine_candidates(n: usize) -> Vec<(AffineType, CoxeterSystem)> {
    let mut out = Vec::new();
    match n {
        2 => {
            let mut m = base_matrix(2);
            set(&mut m, 2, 0, 1, None);
            out.push((AffineType::A(1), CoxeterSystem { n: 2, m }));
        }
        3 => {
            out.push((AffineType::A(2), cycle_system(3)));
            out.push((AffineType::C(2), path_system(&[4, 4])));
            out.push((AffineType::G2, path_system(&[6, 3])));
        }
        _ if n >= 4 => {
            out.push((AffineType::A(n - 1), cycle_system(n)));
            // ~B_{n-1}: fork at one end, label 4 at the other.
            let k = n - 1;
            if k >= 3 {
                let mut m = base_matrix(n);
                set(&mut m, n, 0, 2, Some(3));
                set(&mut m, n, 1, 2, Some(3));
                for v in 2..n - 2 {
                    set(&mut m, n, v, v + 1, Some(3));
                }
                set(&mut m, n, n - 2, n - 1, Some(4));
                out.push((AffineType::B(k), CoxeterSystem { n, m }));
            }
            // ~C_{n-1}: path with label 4 at both ends.
            let mut c = vec![3; n - 1];
            c[0] = 4;
            c[n - 2] = 4;
            out.push((AffineType::C(n - 1), path_system(&c)));
            // ~D_{n-1}: forks at both ends.
            if k >= 4 {
                let mut m = base_matrix(n);
                set(&mut m, n, 0, 2, Some(3));
                set(&mut m, n, 1, 2, Some(3));
                for v in 2..n - 3 {
                    set(&mut m, n, v, v + 1, Some(3));
                }
                set(&mut m, n, n - 3, n - 2, Some(3));
                set(&mut m, n, n - 3, n - 1, Some(3));
                out.push((AffineType::D(k), CoxeterSystem { n, m }));
            }
            if n == 5 {
                out.push((AffineType::F4, path_system(&[3, 3, 4, 3])));
            }
            if n == 7 {
                out.push((AffineType::E(6), star_system(&[2, 2, 2])));
            }
            if n == 8 {
                out.push((AffineType::E(7), star_system(&[1, 3, 3])));
            }
            if n == 9 {
                out.push((AffineType::E(8), star_system(&[1, 2, 5])));
            }
        }
        _ => {}
    }
    out
}

/// Label-preserving graph isomorphism by backtracking.
fn systems_isomorphic(a: &CoxeterSystem, b: &CoxeterSystem) -> bool {
    if a.n != b.n {
        return false;
    }
    let n = a.n;
    // Per-vertex sorted label multisets must match up to permutation.
    let profile = |s: &CoxeterSystem, v: usize| -> Vec<Option<u64>> {
        let mut row: Vec<Option<u64>> = (0..n).filter(|&u| u != v).map(|u| s.label(v, u)).collect();
        row.sort_unstable();
        row
    };
    let pa: Vec<_> = (0..n).map(|v| profile(a, v)).collect();
    let pb: Vec<_> = (0..n).map(|v| profile(b, v)).collect();
    {
        let mut sa = pa.clone();
        let mut sb = pb.clone();
        sa.sort();
        sb.sort();
        if sa != sb {
            return false;
        }
    }
    fn extend(
        a: &CoxeterSystem,
        b: &CoxeterSystem,
        pa: &[Vec<Option<u64>>],
        pb: &[Vec<Option<u64>>],
        map: &mut Vec<Option<usize>>,
        used: &mut Vec<bool>,
        v: usize,
    ) -> bool {
        let n = a.n;
        if v == n {
            return true;
        }
        for w in 0..n {
            if used[w] || pa[v] != pb[w] {
                continue;
            }
            if (0..v).all(|u| a.label(v, u) == b.label(w, map[u].unwrap())) {
                map[v] = Some(w);
                used[w] = true;
                if extend(a, b, pa, pb, map, used, v + 1) {
                    return true;
                }
                map[v] = None;
                used[w] = false;
            }
        }
        false
    }
    let mut map = vec![None; n];
    let mut used = vec![false; n];
    extend(a, b, &pa, &pb, &mut map, &mut used, 0)
}

/// Diagram recognizer over the classical finite and affine lists.
pub fn recognize(cs: &CoxeterSystem) -> Option<TypeName> {
    let n = cs.rank();
    if n == 2 {
        return match cs.label(0, 1) {
            Some(2) => None, // disconnected
            Some(3) => Some(TypeName::Finite(FiniteType::A(2))),
            Some(4) => Some(TypeName::Finite(FiniteType::B(2))),
            Some(m) => Some(TypeName::Finite(FiniteType::I2(m))),
            None => Some(TypeName::Affine(AffineType::A(1))),
        };
    }
    for (t, cand) in finite_candidates(n) {
        if systems_isomorphic(cs, &cand) {
            return Some(TypeName::Finite(t));
        }
    }
    for (t, cand) in affine_candidates(n) {
        if systems_isomorphic(cs, &cand) {
            return Some(TypeName::Affine(t));
        }
    }
    None
}

/// Classify a connected system by the signature trichotomy, with the
/// diagram recognizer cross-checked against the signature verdict.
pub fn classify(cs: &CoxeterSystem) -> Result<CoxeterClass, CoxeterError> {
    if cs.components().len() != 1 {
        return Err(CoxeterError::Disconnected);
    }
    let n = cs.rank();
    let sig = cs.tits_form()?.signature()?;
    let kind = if sig.p == n {
        CoxKind::Finite
    } else if sig.p == n - 1 && sig.q == 0 && sig.r == 1 {
        CoxKind::Affine
    } else {
        CoxKind::IndefiniteInfinite
    };
    let type_name = recognize(cs);
    match (&type_name, kind) {
        (Some(TypeName::Finite(_)), CoxKind::Finite) => {}
        (Some(TypeName::Affine(_)), CoxKind::Affine) => {}
        (None, CoxKind::IndefiniteInfinite) => {}
        _ => {
            return Err(CoxeterError::Internal(
                "diagram recognizer disagrees with the signature trichotomy",
            ))
        }
    }
    Ok(CoxeterClass {
        kind,
        signature: sig,
        type_name,
    })
}

/// The five signature facts for connected systems, as (statement, pass)
/// pairs.
pub fn signature_facts_check(
    cs: &CoxeterSystem,
) -> Result<Vec<(&'static str, bool)>, CoxeterError> {
    let class = classify(cs)?;
    let Signature { p, q, r } = class.signature;
    let n = cs.rank();
    let finite = class.kind == CoxKind::Finite;
    let affine = class.kind == CoxKind::Affine;
    Ok(vec![
        ("p = n iff W finite", (p == n) == finite),
        ("p = n-1 and r = 1 iff W affine", (p == n - 1 && r == 1) == affine),
        ("q = 0 implies r <= 1", q != 0 || r <= 1),
        ("n <= 4 implies p >= n-1", n > 4 || p + 1 >= n),
        ("n >= 4 implies p >= 3", n < 4 || p >= 3),
    ])
}

// -- geometric representation and closure ----------------------------------

/// Square matrix over one cyclotomic field, column-major action: entry
/// (i,j) is the coefficient of e_i in the image of e_j.
type CycloMatrix = Vec<CycloNumber>;

fn mat_identity(n: usize, conductor: u64) -> CycloMatrix {
    let mut m = vec![CycloNumber::zero(conductor); n * n];
    for i in 0..n {
        m[i * n + i] = CycloNumber::one(conductor);
    }
    m
}

fn mat_mul(n: usize, a: &CycloMatrix, b: &CycloMatrix) -> CycloMatrix {
    let conductor = a[0].conductor();
    let mut out = vec![CycloNumber::zero(conductor); n * n];
    for i in 0..n {
        for k in 0..n {
            let aik = &a[i * n + k];
            if aik.is_zero() {
                continue;
            }
            for j in 0..n {
                let bkj = &b[k * n + j];
                if bkj.is_zero() {
                    continue;
                }
                out[i * n + j] = out[i * n + j].add(&aik.mul(bkj));
            }
        }
    }
    out
}

/// A finite Coxeter group realized by exact reflection matrices.
#[derive(Clone, Debug)]
pub struct ReflectionGroup {
    pub rank: usize,
    pub order: usize,
    /// Generator matrices of the geometric representation.
    pub generators: Vec<CycloMatrix>,
    /// Element index of each generator in the Cayley table.
    pub generator_indices: Vec<u16>,
    pub group: CayleyGroup,
}

/// Enumerate the full group by breadth-first closure over exact
/// matrices and export a Cayley table (identity at index 0).
pub fn build_group(cs: &CoxeterSystem, budget: usize) -> Result<ReflectionGroup, CoxeterError> {
    for (_, comp) in cs.components() {
        if classify(&comp)?.kind != CoxKind::Finite {
            return Err(CoxeterError::NotFinite);
        }
    }
    let n = cs.rank();
    let b = cs.tits_form()?;
    let conductor = if n == 0 { 2 } else { b.at(0, 0).conductor() };
    let two = BigRational::from_i64(2).unwrap();
    // sigma_s(e_t) = e_t - 2 B(s,t) e_s.
    let generators: Vec<CycloMatrix> = (0..n)
        .map(|s| {
            let mut m = mat_identity(n, conductor);
            for t in 0..n {
                let coef = b.at(s, t).scale(&two).neg();
                m[s * n + t] = m[s * n + t].add(&coef);
            }
            m
        })
        .collect();
    let identity = mat_identity(n, conductor);
    for g in generators.iter() {
        if mat_mul(n, g, g) != identity {
            return Err(CoxeterError::Internal("generator does not square to identity"));
        }
        // g^T B g = B.
        let bm: CycloMatrix = (0..n * n)
            .map(|idx| b.at(idx / n, idx % n).clone())
            .collect();
        let gt: CycloMatrix = (0..n * n).map(|idx| g[(idx % n) * n + idx / n].clone()).collect();
        if mat_mul(n, &gt, &mat_mul(n, &bm, g)) != bm {
            return Err(CoxeterError::Internal("generator does not preserve the Tits form"));
        }
    }
    // BFS closure; each element is reached as parent * generator.
    let mut index: BTreeMap<CycloMatrix, u16> = BTreeMap::new();
    index.insert(identity.clone(), 0);
    let mut mats = vec![identity];
    let mut parent: Vec<(u16, usize)> = vec![(0, usize::MAX)];
    let mut right_mul: Vec<Vec<u16>> = Vec::new();
    let mut head = 0;
    while head < mats.len() {
        let row: Vec<u16> = (0..n)
            .map(|s| {
                let prod = mat_mul(n, &mats[head], &generators[s]);
                if let Some(&i) = index.get(&prod) {
                    i
                } else {
                    let i = mats.len() as u16;
                    index.insert(prod.clone(), i);
                    mats.push(prod);
                    parent.push((head as u16, s));
                    i
                }
            })
            .collect();
        right_mul.push(row);
        head += 1;
        if mats.len() > budget {
            return Err(CoxeterError::BudgetExceeded { limit: budget });
        }
    }
    let order = mats.len();
    if order > u16::MAX as usize {
        return Err(CoxeterError::TableTooLarge { order });
    }
    // Cayley table by dynamic programming along BFS words:
    // g * (p * s) = (g * p) * s.
    let mut table = vec![0u16; order * order];
    for g in 0..order {
        table[g * order] = g as u16;
    }
    for h in 1..order {
        let (p, s) = parent[h];
        for g in 0..order {
            let gp = table[g * order + p as usize];
            table[g * order + h] = right_mul[gp as usize][s];
        }
    }
    let group = CayleyGroup::from_table_trusted(order, table);
    let generator_indices: Vec<u16> = if n == 0 {
        Vec::new()
    } else {
        right_mul[0].clone()
    };
    Ok(ReflectionGroup {
        rank: n,
        order,
        generators,
        generator_indices,
        group,
    })
}

/// DOT rendering of the Coxeter graph. Edges with label 3 are
/// unlabeled by convention; ∞ renders as "inf".
pub fn to_dot(cs: &CoxeterSystem) -> String {
    let mut out = String::from("graph coxeter {\n");
    for i in 0..cs.rank() {
        out.push_str(&format!("  s{i};\n"));
    }
    for i in 0..cs.rank() {
        for j in i + 1..cs.rank() {
            match cs.label(i, j) {
                Some(2) => {}
                Some(3) => out.push_str(&format!("  s{i} -- s{j};\n")),
                Some(m) => out.push_str(&format!("  s{i} -- s{j} [label=\"{m}\"];\n")),
                None => out.push_str(&format!("  s{i} -- s{j} [label=\"inf\"];\n")),
            }
        }
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    extern crate std;
    use super::*;
    use crate::exact::Signature;

    fn path(labels: &[u64]) -> CoxeterSystem {
        path_system(labels)
    }

    #[test]
    fn validation() {
        assert!(CoxeterSystem::new(1, vec![Some(1)]).is_ok());
        assert!(CoxeterSystem::new(0, vec![]).is_ok());
        assert!(CoxeterSystem::new(1, vec![Some(2)]).is_err());
        assert!(CoxeterSystem::new(2, vec![Some(1), Some(1), Some(1), Some(1)]).is_err());
        assert!(
            CoxeterSystem::new(2, vec![Some(1), Some(3), Some(4), Some(1)]).is_err()
        );
    }

    #[test]
    fn tits_form_examples() {
        use num_traits::One;
        let a2 = path(&[3]);
        let b = a2.tits_form().unwrap();
        let half = BigRational::new(
            num_bigint::BigInt::from(-1),
            num_bigint::BigInt::from(2),
        );
        assert_eq!(b.at(0, 1).as_rational().unwrap(), half);
        assert!(b.at(0, 0).as_rational().unwrap().is_one());
        let inf = CoxeterSystem::from_upper(2, &[None]).unwrap();
        let b = inf.tits_form().unwrap();
        assert_eq!(
            b.at(0, 1).as_rational().unwrap(),
            BigRational::from_i64(-1).unwrap()
        );
        let a1a1 = CoxeterSystem::from_upper(2, &[Some(2)]).unwrap();
        let b = a1a1.tits_form().unwrap();
        assert!(b.at(0, 1).is_zero());
    }

    #[test]
    fn component_partition() {
        let cs = CoxeterSystem::from_upper(
            4,
            &[Some(3), Some(2), Some(2), Some(2), Some(2), None],
        )
        .unwrap();
        let comps = cs.components();
        let idx: Vec<_> = comps.iter().map(|(c, _)| c.clone()).collect();
        assert_eq!(idx, vec![vec![0, 1], vec![2, 3]]);
    }

    #[test]
    fn classification_examples() {
        let a3 = path(&[3, 3]);
        let c = classify(&a3).unwrap();
        assert_eq!(c.kind, CoxKind::Finite);
        assert_eq!(c.signature, Signature { p: 3, q: 0, r: 0 });
        assert_eq!(c.type_name, Some(TypeName::Finite(FiniteType::A(3))));

        let tri = cycle_system(3);
        let c = classify(&tri).unwrap();
        assert_eq!(c.kind, CoxKind::Affine);
        assert_eq!(c.signature, Signature { p: 2, q: 0, r: 1 });
        assert_eq!(c.type_name, Some(TypeName::Affine(AffineType::A(2))));

        let all_inf = CoxeterSystem::from_upper(3, &[None, None, None]).unwrap();
        let c = classify(&all_inf).unwrap();
        assert_eq!(c.kind, CoxKind::IndefiniteInfinite);
        assert_eq!(c.signature, Signature { p: 2, q: 1, r: 0 });
        assert_eq!(c.type_name, None);
    }

    #[test]
    fn recognizer_full_classical_corpus() {
        for n in 1..=8usize {
            for (t, cand) in finite_candidates(n) {
                let c = classify(&cand).unwrap();
                assert_eq!(c.kind, CoxKind::Finite, "{t:?}");
                assert_eq!(c.type_name, Some(TypeName::Finite(t)));
            }
        }
        for (t, cand) in [
            (FiniteType::A(2), path(&[3])),
            (FiniteType::B(2), path(&[4])),
            (FiniteType::I2(5), path(&[5])),
            (FiniteType::I2(7), path(&[7])),
            (FiniteType::I2(30), path(&[30])),
        ] {
            let c = classify(&cand).unwrap();
            assert_eq!(c.kind, CoxKind::Finite);
            assert_eq!(c.type_name, Some(TypeName::Finite(t)));
        }
        for n in 2..=9usize {
            for (t, cand) in affine_candidates(n) {
                let c = classify(&cand).unwrap();
                assert_eq!(c.kind, CoxKind::Affine, "{t:?}");
                assert_eq!(c.type_name, Some(TypeName::Affine(t)));
                assert_eq!(c.signature.r, 1);
            }
        }
    }

    #[test]
    fn classify_invariant_under_permutation() {
        let h3 = path(&[5, 3]);
        let c0 = classify(&h3).unwrap();
        for perm in [[1, 0, 2], [2, 1, 0], [1, 2, 0], [2, 0, 1], [0, 2, 1]] {
            let c = classify(&h3.permuted(&perm)).unwrap();
            assert_eq!(c0, c);
        }
    }

    #[test]
    fn five_signature_facts() {
        for cs in [
            path(&[3, 3]),
            cycle_system(3),
            CoxeterSystem::from_upper(3, &[None, None, None]).unwrap(),
            path(&[7, 3]),
            path(&[4, 3, 3, 3]),
        ] {
            let report = signature_facts_check(&cs).unwrap();
            assert_eq!(report.len(), 5);
            assert!(report.iter().all(|(_, ok)| *ok), "{report:?}");
        }
    }

    #[test]
    fn small_group_orders() {
        assert_eq!(build_group(&path(&[3]), 100).unwrap().order, 6);
        assert_eq!(build_group(&path(&[3, 4]), 200).unwrap().order, 48);
        assert_eq!(build_group(&path(&[5, 3]), 500).unwrap().order, 120);
        assert_eq!(build_group(&path(&[6]), 100).unwrap().order, 12);
        // Disjoint A1 x A1.
        let cs = CoxeterSystem::from_upper(2, &[Some(2)]).unwrap();
        assert_eq!(build_group(&cs, 100).unwrap().order, 4);
        // Rank 0 gives the trivial group.
        let cs = CoxeterSystem::new(0, vec![]).unwrap();
        assert_eq!(build_group(&cs, 10).unwrap().order, 1);
    }

    #[test]
    fn build_group_rejects_infinite_and_budget() {
        let inf = CoxeterSystem::from_upper(2, &[None]).unwrap();
        assert!(matches!(
            build_group(&inf, 100),
            Err(CoxeterError::NotFinite)
        ));
        assert!(matches!(
            build_group(&path(&[5, 3]), 10),
            Err(CoxeterError::BudgetExceeded { limit: 10 })
        ));
    }

    #[test]
    fn group_export_is_faithful_symmetric_group() {
        let g = build_group(&path(&[3, 3]), 100).unwrap();
        assert_eq!(g.order, 24);
        let s4 = crate::grouptheory::symmetric(4);
        assert!(crate::grouptheory::is_isomorphic(&g.group, &s4).is_some());
    }

    #[test]
    fn dot_output() {
        let cs = path(&[4]);
        let dot = to_dot(&cs);
        assert!(dot.contains("s0 -- s1 [label=\"4\"]"));
        let inf = CoxeterSystem::from_upper(2, &[None]).unwrap();
        assert!(to_dot(&inf).contains("label=\"inf\""));
    }
}
