//! Symmetric matrices over real cyclotomic numbers and their exact
//! signatures, computed by congruence (Lagrange) elimination.

use alloc::vec::Vec;

use super::cyclo::{CycloNumber, ExactError, Sign, DEFAULT_SIGN_BUDGET_BITS};

/// Inertia triple of a symmetric matrix: positive index, negative index,
/// kernel dimension. `p + q + r` equals the dimension.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Signature {
    pub p: usize,
    pub q: usize,
    pub r: usize,
}

impl Signature {
    pub fn n(&self) -> usize {
        self.p + self.q + self.r
    }
}

/// Symmetric matrix with [`CycloNumber`] entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymMatrix {
    n: usize,
    entries: Vec<CycloNumber>,
}

impl SymMatrix {
    /// Build from a row-major entry list; panics unless symmetric.
    pub fn new(n: usize, entries: Vec<CycloNumber>) -> Self {
        assert_eq!(entries.len(), n * n);
        for i in 0..n {
            for j in 0..i {
                assert!(
                    entries[i * n + j].eq_unified(&entries[j * n + i]),
                    "matrix is not symmetric at ({i},{j})"
                );
            }
        }
        SymMatrix { n, entries }
    }

    pub fn zero(n: usize, conductor: u64) -> Self {
        let entries = (0..n * n).map(|_| CycloNumber::zero(conductor)).collect();
        SymMatrix { n, entries }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn at(&self, i: usize, j: usize) -> &CycloNumber {
        &self.entries[i * self.n + j]
    }

    pub fn set_sym(&mut self, i: usize, j: usize, v: CycloNumber) {
        self.entries[i * self.n + j] = v.clone();
        self.entries[j * self.n + i] = v;
    }

    /// Principal submatrix on the given (sorted, distinct) indices.
    pub fn submatrix(&self, idx: &[usize]) -> SymMatrix {
        let m = idx.len();
        let mut entries = Vec::with_capacity(m * m);
        for &i in idx {
            for &j in idx {
                entries.push(self.at(i, j).clone());
            }
        }
        SymMatrix { n: m, entries }
    }

    /// Exact signature by symmetric elimination.
    ///
    /// Nonzero diagonal pivots contribute their sign; a zero diagonal
    /// with a nonzero off-diagonal entry is turned into a nonzero pivot
    /// by a hyperbolic congruence move and then yields a (+1, -1) pair;
    /// whatever remains identically zero is the kernel.
    pub fn signature_with_budget(&self, budget_bits: u64) -> Result<Signature, ExactError> {
        let n = self.n;
        let mut m: Vec<Vec<CycloNumber>> = (0..n)
            .map(|i| (0..n).map(|j| self.at(i, j).clone()).collect())
            .collect();
        let mut active: Vec<usize> = (0..n).collect();
        let mut p = 0;
        let mut q = 0;
        loop {
            // Prefer a symbolically nonzero diagonal pivot.
            let pivot = active
                .iter()
                .copied()
                .find(|&i| !m[i][i].is_zero());
            let i = match pivot {
                Some(i) => i,
                None => {
                    // All diagonal entries are zero; look for an
                    // off-diagonal hyperbolic pair.
                    let mut pair = None;
                    'outer: for (a, &i) in active.iter().enumerate() {
                        for &j in &active[a + 1..] {
                            if !m[i][j].is_zero() {
                                pair = Some((i, j));
                                break 'outer;
                            }
                        }
                    }
                    match pair {
                        Some((i, j)) => {
                            // Congruence e_i += e_j makes m[i][i] = 2 m[i][j] != 0.
                            for k in 0..n {
                                let v = m[i][k].add(&m[j][k]);
                                m[i][k] = v;
                            }
                            for k in 0..n {
                                let v = m[k][i].add(&m[k][j]);
                                m[k][i] = v;
                            }
                            i
                        }
                        None => {
                            // Remaining block is identically zero.
                            let r = active.len();
                            return Ok(Signature { p, q, r });
                        }
                    }
                }
            };
            match m[i][i].sign(budget_bits)? {
                Sign::Positive => p += 1,
                Sign::Negative => q += 1,
                Sign::Zero => return Err(ExactError::Internal("zero pivot after selection")),
            }
            // Eliminate row/column i against the pivot.
            let inv = m[i][i].inv();
            active.retain(|&k| k != i);
            for &j in &active {
                if m[j][i].is_zero() {
                    continue;
                }
                let f = m[j][i].mul(&inv);
                for k in 0..n {
                    let t = f.mul(&m[i][k]);
                    m[j][k] = m[j][k].sub(&t);
                }
                for k in 0..n {
                    m[k][j] = m[j][k].clone();
                }
            }
        }
    }

    pub fn signature(&self) -> Result<Signature, ExactError> {
        self.signature_with_budget(DEFAULT_SIGN_BUDGET_BITS)
    }

    /// Rank via the signature, cross-checked against independent Gaussian
    /// elimination.
    pub fn rank(&self) -> Result<usize, ExactError> {
        let sig = self.signature()?;
        let by_congruence = sig.p + sig.q;
        let by_gauss = self.rank_gauss();
        if by_congruence != by_gauss {
            return Err(ExactError::Internal(
                "congruence rank disagrees with Gaussian elimination",
            ));
        }
        Ok(by_congruence)
    }

    /// Plain row-echelon rank; independent of the signature path.
    pub fn rank_gauss(&self) -> usize {
        let n = self.n;
        let mut rows: Vec<Vec<CycloNumber>> = (0..n)
            .map(|i| (0..n).map(|j| self.at(i, j).clone()).collect())
            .collect();
        let mut rank = 0;
        for col in 0..n {
            let pivot_row = (rank..n).find(|&r| !rows[r][col].is_zero());
            let Some(pr) = pivot_row else { continue };
            rows.swap(rank, pr);
            let inv = rows[rank][col].inv();
            for r in rank + 1..n {
                if rows[r][col].is_zero() {
                    continue;
                }
                let f = rows[r][col].mul(&inv);
                for c in col..n {
                    let t = f.mul(&rows[rank][c]);
                    rows[r][c] = rows[r][c].sub(&t);
                }
            }
            rank += 1;
        }
        rank
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use num_rational::BigRational;

    fn rat(l: u64, num: i64, den: i64) -> CycloNumber {
        CycloNumber::from_rational(l, BigRational::new(num.into(), den.into()))
    }

    #[test]
    fn a2_gram_is_positive_definite() {
        // [[1,-1/2],[-1/2,1]]; eigenvalues 1/2 and 3/2.
        let m = SymMatrix::new(
            2,
            vec![rat(6, 1, 1), rat(6, -1, 2), rat(6, -1, 2), rat(6, 1, 1)],
        );
        assert_eq!(m.signature().unwrap(), Signature { p: 2, q: 0, r: 0 });
        assert_eq!(m.rank().unwrap(), 2);
    }

    #[test]
    fn affine_a1_gram_is_degenerate() {
        // [[1,-1],[-1,1]]; determinant 0, trace 2.
        let m = SymMatrix::new(
            2,
            vec![rat(2, 1, 1), rat(2, -1, 1), rat(2, -1, 1), rat(2, 1, 1)],
        );
        assert_eq!(m.signature().unwrap(), Signature { p: 1, q: 0, r: 1 });
        assert_eq!(m.rank().unwrap(), 1);
    }

    #[test]
    fn zero_and_identity() {
        let z = SymMatrix::zero(3, 2);
        assert_eq!(z.signature().unwrap(), Signature { p: 0, q: 0, r: 3 });
        assert_eq!(z.rank().unwrap(), 0);
        let mut id = SymMatrix::zero(3, 2);
        for i in 0..3 {
            id.set_sym(i, i, CycloNumber::one(2));
        }
        assert_eq!(id.signature().unwrap(), Signature { p: 3, q: 0, r: 0 });
        assert_eq!(id.rank().unwrap(), 3);
    }

    #[test]
    fn hyperbolic_plane() {
        // [[0,1],[1,0]] has signature (1,1,0).
        let mut m = SymMatrix::zero(2, 2);
        m.set_sym(0, 1, CycloNumber::one(2));
        assert_eq!(m.signature().unwrap(), Signature { p: 1, q: 1, r: 0 });
    }

    #[test]
    fn negation_swaps_p_and_q() {
        let m = SymMatrix::new(
            2,
            vec![rat(6, 1, 1), rat(6, -1, 2), rat(6, -1, 2), rat(6, 1, 1)],
        );
        let neg = SymMatrix::new(
            2,
            vec![rat(6, -1, 1), rat(6, 1, 2), rat(6, 1, 2), rat(6, -1, 1)],
        );
        let s = m.signature().unwrap();
        let t = neg.signature().unwrap();
        assert_eq!((t.p, t.q, t.r), (s.q, s.p, s.r));
    }
}
