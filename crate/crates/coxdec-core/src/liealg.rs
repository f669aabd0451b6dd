//! Lie algebras over the rationals given by structure constants:
//! construction of of(B) from a signature, structural predicates, and
//! centroid-based direct-sum decomposition with sound verdicts.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

type Q = BigRational;
type Vector = Vec<Q>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LieError {
    NotAntisymmetric { i: usize, j: usize },
    JacobiFails { i: usize, j: usize, k: usize },
    NonzeroCenter,
}

impl fmt::Display for LieError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LieError::NotAntisymmetric { i, j } => {
                write!(f, "antisymmetry fails on basis pair ({i},{j})")
            }
            LieError::JacobiFails { i, j, k } => {
                write!(f, "Jacobi identity fails on basis triple ({i},{j},{k})")
            }
            LieError::NonzeroCenter => {
                write!(f, "operation requires a centerless Lie algebra")
            }
        }
    }
}

// -- exact linear algebra ---------------------------------------------------

fn rref(rows: &mut Vec<Vector>) -> Vec<usize> {
    // In-place reduced row echelon form; returns pivot columns.
    let cols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(pr) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for c2 in 0..cols {
                    let sub = &rows[r][c2] * &f;
                    rows[i][c2] = &rows[i][c2] - &sub;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

/// Row-reduced basis of the span of the given vectors.
fn span_basis(vectors: Vec<Vector>) -> Vec<Vector> {
    let mut rows = vectors;
    rows.retain(|v| v.iter().any(|x| !x.is_zero()));
    rref(&mut rows);
    rows
}

/// Is v in the span of the row-reduced basis?
fn in_span(basis: &[Vector], pivots: &[usize], v: &Vector) -> bool {
    let mut v = v.clone();
    for (row, &p) in basis.iter().zip(pivots) {
        if !v[p].is_zero() {
            let f = v[p].clone();
            for (x, y) in v.iter_mut().zip(row) {
                let sub = y * &f;
                *x = &*x - &sub;
            }
        }
    }
    v.iter().all(|x| x.is_zero())
}

/// Kernel basis of the linear map given by constraint rows.
fn kernel(rows: &[Vector], cols: usize) -> Vec<Vector> {
    let mut m: Vec<Vector> = rows.to_vec();
    let pivots = rref(&mut m);
    let mut out = Vec::new();
    let pivot_set: Vec<bool> = {
        let mut s = vec![false; cols];
        for &p in &pivots {
            s[p] = true;
        }
        s
    };
    for free in 0..cols {
        if pivot_set[free] {
            continue;
        }
        let mut v = vec![Q::zero(); cols];
        v[free] = Q::one();
        for (row, &p) in m.iter().zip(&pivots) {
            v[p] = -row[free].clone();
        }
        out.push(v);
    }
    out
}

/// Do two vector lists span the same subspace?
pub fn same_subspace(a: &[Vector], b: &[Vector]) -> bool {
    let mut ra = a.to_vec();
    let pa = rref(&mut ra);
    let mut rb = b.to_vec();
    let pb = rref(&mut rb);
    ra.len() == rb.len()
        && rb.iter().all(|v| in_span(&ra, &pa, v))
        && ra.iter().all(|v| in_span(&rb, &pb, v))
}

fn mat_inverse(m: &[Vector]) -> Option<Vec<Vector>> {
    let d = m.len();
    let mut aug: Vec<Vector> = (0..d)
        .map(|i| {
            let mut row = m[i].clone();
            for j in 0..d {
                row.push(if i == j { Q::one() } else { Q::zero() });
            }
            row
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots != (0..d).collect::<Vec<_>>() {
        return None;
    }
    Some(aug.into_iter().map(|row| row[d..].to_vec()).collect())
}

// -- Lie algebras -----------------------------------------------------------

/// A Lie algebra of dimension d over Q with structure constants
/// c[i][j] = coordinates of [x_i, x_j].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebra {
    dim: usize,
    c: Vec<Vec<Vector>>,
}

impl LieAlgebra {
    /// Construct from a sparse list (i, j, k, value); antisymmetry and
    /// the Jacobi identity are verified exactly.
    pub fn new(dim: usize, entries: &[(usize, usize, usize, Q)]) -> Result<Self, LieError> {
        let mut c = vec![vec![vec![Q::zero(); dim]; dim]; dim];
        for (i, j, k, v) in entries {
            c[*i][*j][*k] = &c[*i][*j][*k] + v;
        }
        let alg = LieAlgebra { dim, c };
        alg.check()?;
        Ok(alg)
    }

    fn check(&self) -> Result<(), LieError> {
        let d = self.dim;
        for i in 0..d {
            for j in 0..=i {
                for k in 0..d {
                    if self.c[i][j][k] != -self.c[j][i][k].clone() {
                        return Err(LieError::NotAntisymmetric { i, j });
                    }
                }
            }
        }
        for i in 0..d {
            for j in i + 1..d {
                for k in j + 1..d {
                    // [x_i,[x_j,x_k]] + [x_j,[x_k,x_i]] + [x_k,[x_i,x_j]] = 0
                    let mut acc = vec![Q::zero(); d];
                    for (a, b, cc) in [(i, j, k), (j, k, i), (k, i, j)] {
                        let inner = &self.c[b][cc];
                        for m in 0..d {
                            if inner[m].is_zero() {
                                continue;
                            }
                            for t in 0..d {
                                if self.c[a][m][t].is_zero() {
                                    continue;
                                }
                                let add = &self.c[a][m][t] * &inner[m];
                                acc[t] = &acc[t] + &add;
                            }
                        }
                    }
                    if acc.iter().any(|x| !x.is_zero()) {
                        return Err(LieError::JacobiFails { i, j, k });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> &Q {
        &self.c[i][j][k]
    }

    pub fn bracket(&self, x: &Vector, y: &Vector) -> Vector {
        let d = self.dim;
        let mut out = vec![Q::zero(); d];
        for i in 0..d {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..d {
                if y[j].is_zero() {
                    continue;
                }
                let f = &x[i] * &y[j];
                for k in 0..d {
                    if self.c[i][j][k].is_zero() {
                        continue;
                    }
                    let add = &self.c[i][j][k] * &f;
                    out[k] = &out[k] + &add;
                }
            }
        }
        out
    }

    /// Row-reduced basis of [A, B] for subspaces given by bases.
    fn bracket_span(&self, a: &[Vector], b: &[Vector]) -> Vec<Vector> {
        let mut gens = Vec::new();
        for x in a {
            for y in b {
                gens.push(self.bracket(x, y));
            }
        }
        span_basis(gens)
    }

    fn full_basis(&self) -> Vec<Vector> {
        (0..self.dim)
            .map(|i| {
                let mut v = vec![Q::zero(); self.dim];
                v[i] = Q::one();
                v
            })
            .collect()
    }

    /// Derived ideal [L, L].
    pub fn derived(&self) -> Vec<Vector> {
        let b = self.full_basis();
        self.bracket_span(&b, &b)
    }

    /// Center {x : [x, L] = 0}.
    pub fn center(&self) -> Vec<Vector> {
        let d = self.dim;
        let mut rows = Vec::new();
        for j in 0..d {
            for k in 0..d {
                rows.push((0..d).map(|i| self.c[i][j][k].clone()).collect());
            }
        }
        kernel(&rows, d)
    }

    pub fn is_perfect(&self) -> bool {
        self.derived().len() == self.dim
    }

    pub fn is_solvable(&self) -> bool {
        let mut current = self.full_basis();
        loop {
            let next = self.bracket_span(&current, &current);
            if next.is_empty() {
                return true;
            }
            if next.len() == current.len() {
                return false;
            }
            current = next;
        }
    }

    /// Is the subspace (within L) nilpotent as an ideal: does the series
    /// C¹ = I, Cᵏ⁺¹ = [I, Cᵏ] terminate at zero?
    fn is_nilpotent_ideal(&self, ideal: &[Vector]) -> bool {
        let mut current = ideal.to_vec();
        loop {
            let next = self.bracket_span(ideal, &current);
            if next.is_empty() {
                return true;
            }
            if next.len() == current.len() {
                return false;
            }
            current = next;
        }
    }

    /// The solvable-case shape: derived ideal nilpotent of codimension 1.
    pub fn nilradical_codim_check(&self) -> bool {
        let d = self.derived();
        d.len() + 1 == self.dim && self.is_nilpotent_ideal(&d)
    }

    /// Basis of the centroid: matrices φ (row-major d×d, acting on
    /// coordinates) with φ([x,y]) = [φ(x), y] for all x, y. Computed by
    /// intersecting the constraint kernels pairwise, keeping the working
    /// dimension small.
    pub fn centroid(&self) -> Vec<Vec<Vector>> {
        let d = self.dim;
        if d == 0 {
            return Vec::new();
        }
        // Candidate space as vectors of length d², φ index k*d+m for
        // entry (k, m).
        let mut basis: Vec<Vector> = (0..d * d)
            .map(|u| {
                let mut v = vec![Q::zero(); d * d];
                v[u] = Q::one();
                v
            })
            .collect();
        for i in 0..d {
            for j in 0..d {
                if basis.len() <= 1 {
                    break;
                }
                // Residual of φ on the pair (i,j), as a d-vector:
                // r_k = Σ_m c_ij^m φ_{km} − Σ_m φ_{mi} c_mj^k.
                let residual = |phi: &Vector| -> Vector {
                    (0..d)
                        .map(|k| {
                            let mut acc = Q::zero();
                            for m in 0..d {
                                if !self.c[i][j][m].is_zero() {
                                    let t = &self.c[i][j][m] * &phi[k * d + m];
                                    acc = &acc + &t;
                                }
                                if !self.c[m][j][k].is_zero() {
                                    let t = &phi[m * d + i] * &self.c[m][j][k];
                                    acc = &acc - &t;
                                }
                            }
                            acc
                        })
                        .collect()
                };
                let residuals: Vec<Vector> = basis.iter().map(residual).collect();
                if residuals.iter().all(|r| r.iter().all(|x| x.is_zero())) {
                    continue;
                }
                // Rows indexed by k, columns by basis element.
                let rows: Vec<Vector> = (0..d)
                    .map(|k| residuals.iter().map(|r| r[k].clone()).collect())
                    .collect();
                let combos = kernel(&rows, basis.len());
                basis = combos
                    .into_iter()
                    .map(|alpha| {
                        let mut v = vec![Q::zero(); d * d];
                        for (coef, b) in alpha.iter().zip(&basis) {
                            if coef.is_zero() {
                                continue;
                            }
                            for (x, y) in v.iter_mut().zip(b) {
                                let t = y * coef;
                                *x = &*x + &t;
                            }
                        }
                        v
                    })
                    .collect();
            }
        }
        basis
            .into_iter()
            .map(|flat| (0..d).map(|k| flat[k * d..(k + 1) * d].to_vec()).collect())
            .collect()
    }

    /// Conjugate the structure constants by an invertible change of
    /// basis: new basis vector j is column j of p in old coordinates.
    pub fn change_of_basis(&self, p: &[Vector]) -> Result<LieAlgebra, LieError> {
        let d = self.dim;
        let cols: Vec<Vector> = (0..d)
            .map(|j| (0..d).map(|i| p[i][j].clone()).collect())
            .collect();
        let pinv = mat_inverse(p).expect("change of basis must be invertible");
        let mut c = vec![vec![vec![Q::zero(); d]; d]; d];
        for a in 0..d {
            for b in 0..d {
                let br = self.bracket(&cols[a], &cols[b]);
                // Express br in the new basis: pinv * br.
                for k in 0..d {
                    let mut acc = Q::zero();
                    for t in 0..d {
                        if !br[t].is_zero() {
                            let add = &pinv[k][t] * &br[t];
                            acc = &acc + &add;
                        }
                    }
                    c[a][b][k] = acc;
                }
            }
        }
        let alg = LieAlgebra { dim: d, c };
        alg.check()?;
        Ok(alg)
    }

    /// Extract the subalgebra on an ideal basis (structure constants in
    /// the ideal's own coordinates).
    fn restrict(&self, ideal: &[Vector]) -> LieAlgebra {
        let k = ideal.len();
        let mut rows = ideal.to_vec();
        let pivots = rref(&mut rows);
        let mut c = vec![vec![vec![Q::zero(); k]; k]; k];
        for a in 0..k {
            for b in 0..k {
                let mut br = self.bracket(&rows[a], &rows[b]);
                // Reduce against the row-reduced basis to get coords.
                for (t, &pv) in pivots.iter().enumerate() {
                    let coef = br[pv].clone();
                    if !coef.is_zero() {
                        for (x, y) in br.iter_mut().zip(&rows[t]) {
                            let sub = y * &coef;
                            *x = &*x - &sub;
                        }
                    }
                    c[a][b][t] = coef;
                }
                debug_assert!(br.iter().all(|x| x.is_zero()));
            }
        }
        LieAlgebra { dim: k, c }
    }
}

// -- of(B) ------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OfSignature {
    pub p: usize,
    pub q: usize,
    pub r: usize,
}

/// The Lie algebra of(B) for a form of signature (p,q,r): block
/// matrices with so(p,q) in the top-left corner and an arbitrary
/// r×(p+q) translation block below it.
pub fn of_algebra(sig: OfSignature) -> LieAlgebra {
    let s = sig.p + sig.q;
    let n = s + sig.r;
    let eps = |i: usize| -> i64 {
        if i < sig.p {
            1
        } else {
            -1
        }
    };
    // Basis matrices, each n×n rational, row-major.
    let mut basis_mats: Vec<Vec<Q>> = Vec::new();
    for a in 0..s {
        for b in a + 1..s {
            let mut m = vec![Q::zero(); n * n];
            m[a * n + b] = Q::from(BigInt::from(eps(b)));
            m[b * n + a] = Q::from(BigInt::from(-eps(a)));
            basis_mats.push(m);
        }
    }
    for t in 0..sig.r {
        for v in 0..s {
            let mut m = vec![Q::zero(); n * n];
            m[(s + t) * n + v] = Q::one();
            basis_mats.push(m);
        }
    }
    let d = basis_mats.len();
    // Structure constants from matrix commutators, solved against the
    // row-reduced basis.
    let mut reduced = basis_mats.clone();
    let pivots = rref(&mut reduced);
    // Coordinates of each reduced row in the original basis: since rref
    // performs invertible row operations, solve original = T * reduced
    // and invert. Simpler: express commutators in the reduced basis and
    // convert through the coordinate matrix of the original basis.
    let coords_in_reduced = |v: &Vec<Q>| -> Vector {
        let mut v = v.clone();
        let mut coords = vec![Q::zero(); reduced.len()];
        for (t, &pv) in pivots.iter().enumerate() {
            let coef = v[pv].clone();
            if !coef.is_zero() {
                for (x, y) in v.iter_mut().zip(&reduced[t]) {
                    let sub = y * &coef;
                    *x = &*x - &sub;
                }
            }
            coords[t] = coef;
        }
        debug_assert!(v.iter().all(|x| x.is_zero()));
        coords
    };
    let base_coords: Vec<Vector> = basis_mats.iter().map(coords_in_reduced).collect();
    let to_base = mat_inverse(&base_coords).expect("basis matrices are independent");
    let mat_comm = |a: &Vec<Q>, b: &Vec<Q>| -> Vec<Q> {
        let mut out = vec![Q::zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                if a[i * n + k].is_zero() && b[i * n + k].is_zero() {
                    continue;
                }
                for j in 0..n {
                    let t1 = &a[i * n + k] * &b[k * n + j];
                    let t2 = &b[i * n + k] * &a[k * n + j];
                    let diff = &t1 - &t2;
                    out[i * n + j] = &out[i * n + j] + &diff;
                }
            }
        }
        out
    };
    let mut c = vec![vec![vec![Q::zero(); d]; d]; d];
    for i in 0..d {
        for j in 0..d {
            let comm = mat_comm(&basis_mats[i], &basis_mats[j]);
            let rc = coords_in_reduced(&comm);
            for k in 0..d {
                let mut acc = Q::zero();
                for t in 0..reduced.len() {
                    if !rc[t].is_zero() {
                        let add = &to_base[k][t] * &rc[t];
                        acc = &acc + &add;
                    }
                }
                c[i][j][k] = acc;
            }
        }
    }
    let alg = LieAlgebra { dim: d, c };
    alg.check().expect("of(B) satisfies the Lie axioms");
    alg
}

// -- centroid decomposition -------------------------------------------------

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IdealVerdict {
    /// Explicit direct-sum decomposition; each ideal is a basis in the
    /// input algebra's coordinates.
    Split(Vec<Vec<Vector>>),
    /// Centroid has dimension 1, which rules out any splitting.
    CertifiedIndecomposable,
    Inconclusive,
}

fn min_poly(phi: &[Vector]) -> Vec<Q> {
    // Minimal polynomial of a d×d matrix: first linear dependence among
    // its powers, as flattened vectors.
    let d = phi.len();
    let mut powers: Vec<Vec<Q>> = Vec::new();
    let mut current: Vec<Vector> = (0..d)
        .map(|i| {
            let mut row = vec![Q::zero(); d];
            row[i] = Q::one();
            row
        })
        .collect();
    loop {
        powers.push(current.iter().flatten().cloned().collect());
        // Solve for a dependence: last power = combination of earlier.
        let k = powers.len();
        let mut rows: Vec<Vector> = Vec::new();
        for idx in 0..d * d {
            rows.push((0..k).map(|t| powers[t][idx].clone()).collect());
        }
        let null = kernel(&rows, k);
        if let Some(v) = null.first() {
            // Normalize to monic highest power.
            let lead = v.last().unwrap().clone();
            debug_assert!(!lead.is_zero());
            return v.iter().map(|x| x / &lead).collect();
        }
        // next power = phi * current
        current = (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| {
                        let mut acc = Q::zero();
                        for t in 0..d {
                            if !phi[i][t].is_zero() && !current[t][j].is_zero() {
                                let add = &phi[i][t] * &current[t][j];
                                acc = &acc + &add;
                            }
                        }
                        acc
                    })
                    .collect()
            })
            .collect();
    }
}

fn poly_eval_mat(coeffs: &[Q], phi: &[Vector]) -> Vec<Vector> {
    let d = phi.len();
    let mut out = vec![vec![Q::zero(); d]; d];
    // Horner: out = c_k I; out = out*phi + c_{k-1} I; ...
    for c in coeffs.iter().rev() {
        // out = out * phi
        let mut next = vec![vec![Q::zero(); d]; d];
        for i in 0..d {
            for t in 0..d {
                if out[i][t].is_zero() {
                    continue;
                }
                for j in 0..d {
                    if phi[t][j].is_zero() {
                        continue;
                    }
                    let add = &out[i][t] * &phi[t][j];
                    next[i][j] = &next[i][j] + &add;
                }
            }
        }
        for (i, row) in next.iter_mut().enumerate() {
            row[i] = &row[i] + c;
        }
        out = next;
    }
    out
}

fn rational_roots(poly: &[Q]) -> Vec<Q> {
    // Clear denominators to an integer polynomial, then try p/q with
    // p | constant and q | leading. Falls back to the empty list when
    // the coefficients are too large to factor by trial division.
    let mut denom_lcm = BigInt::one();
    for c in poly {
        let d = c.denom();
        denom_lcm = &denom_lcm / num_integer::Integer::gcd(&denom_lcm, d) * d;
    }
    let ints: Vec<BigInt> = poly.iter().map(|c| (c * Q::from(denom_lcm.clone())).to_integer()).collect();
    let lead = ints.last().unwrap().clone();
    let Some(first_nz) = ints.iter().position(|c| !c.is_zero()) else {
        return Vec::new();
    };
    let constant = ints[first_nz].clone();
    let small = |x: &BigInt| -> Option<u64> { u64::try_from(x.abs()).ok() };
    let (Some(c0), Some(cl)) = (small(&constant), small(&lead)) else {
        return Vec::new();
    };
    if c0 == 0 || cl == 0 {
        return Vec::new();
    }
    let divisors = |m: u64| -> Vec<u64> {
        let mut out = Vec::new();
        let mut i = 1;
        while i * i <= m {
            if m % i == 0 {
                out.push(i);
                out.push(m / i);
            }
            i += 1;
        }
        out
    };
    let eval = |x: &Q| -> Q {
        let mut acc = Q::zero();
        for c in poly.iter().rev() {
            acc = &acc * x + Q::from(c.clone());
        }
        acc
    };
    let mut roots = Vec::new();
    if eval(&Q::zero()).is_zero() {
        roots.push(Q::zero());
    }
    for p in divisors(c0) {
        for q in divisors(cl) {
            for sign in [1i64, -1] {
                let cand = Q::new(BigInt::from(sign) * BigInt::from(p), BigInt::from(q));
                if eval(&cand).is_zero() && !roots.contains(&cand) {
                    roots.push(cand);
                }
            }
        }
    }
    roots
}

fn poly_div_linear(poly: &[Q], root: &Q) -> Vec<Q> {
    // Divide by (x - root); remainder must be zero.
    let mut quotient = vec![Q::zero(); poly.len() - 1];
    let mut carry = Q::zero();
    for k in (1..poly.len()).rev() {
        let coef = &poly[k] + &carry;
        carry = &coef * root;
        quotient[k - 1] = coef;
    }
    quotient
}

/// Centroid-based decomposition into ideals. Requires a centerless
/// algebra, where centroid idempotents correspond exactly to direct
/// splittings.
pub fn decompose_ideals(l: &LieAlgebra) -> Result<IdealVerdict, LieError> {
    if !l.center().is_empty() {
        return Err(LieError::NonzeroCenter);
    }
    Ok(decompose_inner(l))
}

/// Does the centroid, as a commutative associative algebra, have no
/// nontrivial idempotent? Sound certificate of indecomposability: over
/// any field extension a splitting would give a centroid idempotent.
/// Checks that the quotient by the nilradical (radical of the trace
/// form of the regular representation, valid in characteristic 0) is a
/// single field via a primitive element. Returns false when unable to
/// certify.
fn centroid_is_local(centroid: &[Vec<Vector>]) -> bool {
    let Some(first) = centroid.first() else {
        return false;
    };
    let d = first.len();
    let c = centroid.len();
    if c == 1 {
        return true;
    }
    let mat_mul = |a: &Vec<Vector>, b: &Vec<Vector>| -> Vector {
        let mut out = vec![Q::zero(); d * d];
        for i in 0..d {
            for t in 0..d {
                if a[i][t].is_zero() {
                    continue;
                }
                for j in 0..d {
                    if b[t][j].is_zero() {
                        continue;
                    }
                    let add = &a[i][t] * &b[t][j];
                    out[i * d + j] = &out[i * d + j] + &add;
                }
            }
        }
        out
    };
    // Coordinates inside the centroid's own basis.
    let flat: Vec<Vector> = centroid.iter().map(|m| m.iter().flatten().cloned().collect()).collect();
    let mut reduced = flat.clone();
    let pivots = rref(&mut reduced);
    let coords = |v: &Vector| -> Option<Vector> {
        let mut v = v.clone();
        let mut out = vec![Q::zero(); reduced.len()];
        for (t, &p) in pivots.iter().enumerate() {
            let coef = v[p].clone();
            if !coef.is_zero() {
                for (x, y) in v.iter_mut().zip(&reduced[t]) {
                    let sub = y * &coef;
                    *x = &*x - &sub;
                }
            }
            out[t] = coef;
        }
        v.iter().all(|x| x.is_zero()).then_some(out)
    };
    let base_coords: Vec<Vector> = match flat.iter().map(coords).collect::<Option<_>>() {
        Some(b) => b,
        None => return false,
    };
    let to_base = match mat_inverse(&base_coords) {
        Some(m) => m,
        None => return false,
    };
    // Products in centroid coordinates; requires closure + commutativity.
    let mut mult = vec![vec![vec![Q::zero(); c]; c]; c];
    for i in 0..c {
        for j in 0..c {
            let prod = mat_mul(&centroid[i], &centroid[j]);
            let Some(rc) = coords(&prod) else {
                return false;
            };
            for k in 0..c {
                let mut acc = Q::zero();
                for t in 0..reduced.len() {
                    if !rc[t].is_zero() {
                        let add = &to_base[k][t] * &rc[t];
                        acc = &acc + &add;
                    }
                }
                mult[i][j][k] = acc;
            }
        }
    }
    for i in 0..c {
        for j in 0..i {
            if mult[i][j] != mult[j][i] {
                return false;
            }
        }
    }
    // Left-multiplication operator of an element given in coordinates.
    let left_op = |x: &Vector| -> Vec<Vector> {
        (0..c)
            .map(|k| {
                (0..c)
                    .map(|j| {
                        let mut acc = Q::zero();
                        for i in 0..c {
                            if !x[i].is_zero() && !mult[i][j][k].is_zero() {
                                let add = &x[i] * &mult[i][j][k];
                                acc = &acc + &add;
                            }
                        }
                        acc
                    })
                    .collect()
            })
            .collect()
    };
    // Nilradical = radical of the trace form tr(L_{ab}).
    let unit = |i: usize| -> Vector {
        let mut v = vec![Q::zero(); c];
        v[i] = Q::one();
        v
    };
    let gram: Vec<Vector> = (0..c)
        .map(|i| {
            (0..c)
                .map(|j| {
                    let op = left_op(&mult[i][j]);
                    let mut tr = Q::zero();
                    for (t, row) in op.iter().enumerate() {
                        tr = &tr + &row[t];
                    }
                    tr
                })
                .collect()
        })
        .collect();
    let nil = kernel(&gram, c);
    let ss_dim = c - nil.len();
    if ss_dim == 1 {
        return true;
    }
    // The semisimple quotient must be a single field: look for a
    // primitive element whose minimal polynomial has full degree; it is
    // irreducible exactly when (for degree <= 3) it has no rational
    // root, which is all this certificate attempts.
    let mut nil_rows = nil.clone();
    let nil_pivots = rref(&mut nil_rows);
    // Minimal polynomial of L_x modulo the nilradical: iterate powers of
    // x in the quotient by reducing against the nilradical rows.
    let reduce_mod_nil = |v: &Vector| -> Vector {
        let mut v = v.clone();
        for (row, &p) in nil_rows.iter().zip(&nil_pivots) {
            if !v[p].is_zero() {
                let f = v[p].clone();
                for (x, y) in v.iter_mut().zip(row) {
                    let sub = y * &f;
                    *x = &*x - &sub;
                }
            }
        }
        v
    };
    let min_poly_mod = |x: &Vector| -> Vec<Q> {
        let op = left_op(x);
        let one_coords = {
            // identity element of the centroid in coordinates
            let mut id_mat = vec![vec![Q::zero(); d]; d];
            for (i, row) in id_mat.iter_mut().enumerate() {
                row[i] = Q::one();
            }
            let idf: Vector = id_mat.iter().flatten().cloned().collect();
            let Some(rc) = coords(&idf) else {
                return Vec::new();
            };
            let mut out = vec![Q::zero(); c];
            for k in 0..c {
                for t in 0..reduced.len() {
                    if !rc[t].is_zero() {
                        let add = &to_base[k][t] * &rc[t];
                        out[k] = &out[k] + &add;
                    }
                }
            }
            out
        };
        if one_coords.is_empty() {
            return Vec::new();
        }
        let mut powers: Vec<Vector> = Vec::new();
        let mut cur = reduce_mod_nil(&one_coords);
        loop {
            powers.push(cur.clone());
            let k = powers.len();
            let rows: Vec<Vector> = (0..c)
                .map(|idx| (0..k).map(|t| powers[t][idx].clone()).collect())
                .collect();
            let null = kernel(&rows, k);
            if let Some(v) = null.first() {
                let lead = v.last().unwrap().clone();
                return v.iter().map(|q| q / &lead).collect();
            }
            let next: Vector = (0..c)
                .map(|i| {
                    let mut acc = Q::zero();
                    for t in 0..c {
                        if !op[i][t].is_zero() && !cur[t].is_zero() {
                            let add = &op[i][t] * &cur[t];
                            acc = &acc + &add;
                        }
                    }
                    acc
                })
                .collect();
            cur = reduce_mod_nil(&next);
        }
    };
    let mut candidates: Vec<Vector> = (0..c).map(unit).collect();
    for i in 0..c {
        for j in i + 1..c {
            let mut v = unit(i);
            for (x, y) in v.iter_mut().zip(&unit(j)) {
                *x = &*x + y;
            }
            candidates.push(v);
        }
    }
    for cand in &candidates {
        let mp = min_poly_mod(cand);
        if mp.len() == ss_dim + 1 && (2..=3).contains(&ss_dim) {
            if rational_roots(&mp).is_empty() {
                return true;
            }
            return false;
        }
    }
    false
}

fn decompose_inner(l: &LieAlgebra) -> IdealVerdict {
    let d = l.dim;
    if d == 0 {
        return IdealVerdict::Split(Vec::new());
    }
    let centroid = l.centroid();
    if centroid.len() == 1 {
        return IdealVerdict::CertifiedIndecomposable;
    }
    for phi in &centroid {
        let Some((e_image, comp_image)) = idempotent_split(l, phi) else {
            continue;
        };
        // Verify exactly: ideals, zero cross brackets, direct sum.
        let full = l.full_basis();
        let checks = |i: &Vec<Vector>| -> bool {
            let bi = l.bracket_span(i, &full);
            let mut rows = i.clone();
            let pivots = rref(&mut rows);
            bi.iter().all(|v| in_span(&rows, &pivots, v))
        };
        if !checks(&e_image) || !checks(&comp_image) {
            continue;
        }
        let cross = l.bracket_span(&e_image, &comp_image);
        if !cross.is_empty() {
            continue;
        }
        let mut union = e_image.clone();
        union.extend(comp_image.iter().cloned());
        if span_basis(union).len() != d {
            continue;
        }
        // Recurse on each summand and map the pieces back.
        let mut ideals = Vec::new();
        for part in [e_image, comp_image] {
            let sub = l.restrict(&part);
            match decompose_inner(&sub) {
                IdealVerdict::Split(sub_ideals) => {
                    for si in sub_ideals {
                        let lifted: Vec<Vector> = si
                            .iter()
                            .map(|v| {
                                let mut out = vec![Q::zero(); d];
                                for (coef, b) in v.iter().zip(&part) {
                                    if coef.is_zero() {
                                        continue;
                                    }
                                    for (x, y) in out.iter_mut().zip(b) {
                                        let t = y * coef;
                                        *x = &*x + &t;
                                    }
                                }
                                out
                            })
                            .collect();
                        ideals.push(span_basis(lifted));
                    }
                }
                _ => ideals.push(part),
            }
        }
        return IdealVerdict::Split(ideals);
    }
    if centroid_is_local(&centroid) {
        return IdealVerdict::CertifiedIndecomposable;
    }
    IdealVerdict::Inconclusive
}

/// Try to produce a nontrivial idempotent from one centroid element via
/// rational-root splitting of its minimal polynomial; returns the
/// images of e and 1-e.
fn idempotent_split(l: &LieAlgebra, phi: &[Vector]) -> Option<(Vec<Vector>, Vec<Vector>)> {
    let _ = l;
    let mp = min_poly(phi);
    if mp.len() <= 2 {
        return None; // scalar
    }
    for root in rational_roots(&mp) {
        // mp = (x - root)^k * h with h(root) != 0.
        let mut h = mp.clone();
        let mut k = 0;
        loop {
            let eval_at_root = {
                let mut acc = Q::zero();
                for c in h.iter().rev() {
                    acc = &acc * &root + Q::from(c.clone());
                }
                acc
            };
            if !eval_at_root.is_zero() {
                break;
            }
            h = poly_div_linear(&h, &root);
            k += 1;
        }
        if k == 0 || h.len() <= 1 {
            continue;
        }
        // e = projection onto ker (phi - root)^k along ker h(phi):
        // image of h(phi) spans the first kernel; image of (phi-root)^k
        // spans the second.
        let him = poly_eval_mat(&h, phi);
        let mut fcoef = vec![Q::one()];
        for _ in 0..k {
            // multiply by (x - root)
            let mut next = vec![Q::zero(); fcoef.len() + 1];
            for (i, c) in fcoef.iter().enumerate() {
                next[i + 1] = &next[i + 1] + c;
                let sub = c * &root;
                next[i] = &next[i] - &sub;
            }
            fcoef = next;
        }
        let fim = poly_eval_mat(&fcoef, phi);
        let cols = |m: &Vec<Vector>| -> Vec<Vector> {
            let dd = m.len();
            span_basis(
                (0..dd)
                    .map(|j| (0..dd).map(|i| m[i][j].clone()).collect())
                    .collect(),
            )
        };
        let a = cols(&him);
        let b = cols(&fim);
        if !a.is_empty() && !b.is_empty() {
            return Some((a, b));
        }
    }
    None
}
