//! Exact dense linear algebra over a [`Field`]: reduced row echelon form,
//! rank, and right kernel bases.
//!
//! Elimination is fraction-aware: a row update computes
//! `row * pivot - entry * pivot_row` and then rescales the row through
//! [`Field::row_scale`], which keeps rational entries integral with unit
//! content. The reduced row echelon form is unique, so ranks, kernels and
//! every generator basis derived from them are reproducible run to run.
//! Pivoting is deterministic: the first row with a nonzero entry in the
//! current column.

use crate::scalar::Field;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix<K: Field> {
    rows: usize,
    cols: usize,
    data: Vec<K>,
}

impl<K: Field> Matrix<K> {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![K::zero(); rows * cols] }
    }

    pub fn from_rows(rows: Vec<Vec<K>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row);
        }
        Self { rows: r, cols: c, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &K {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: K) {
        self.data[r * self.cols + c] = v;
    }

    fn row(&self, r: usize) -> &[K] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let (a, b) = (a.min(b), a.max(b));
        let (head, tail) = self.data.split_at_mut(b * self.cols);
        head[a * self.cols..(a + 1) * self.cols].swap_with_slice(&mut tail[..self.cols]);
    }

    /// Disjoint mutable/shared access to two distinct rows.
    fn two_rows_mut(&mut self, target: usize, other: usize) -> (&mut [K], &[K]) {
        assert_ne!(target, other);
        let c = self.cols;
        if target < other {
            let (head, tail) = self.data.split_at_mut(other * c);
            (&mut head[target * c..(target + 1) * c], &tail[..c])
        } else {
            let (head, tail) = self.data.split_at_mut(target * c);
            (&mut tail[..c], &head[other * c..(other + 1) * c])
        }
    }

    /// Rescales the row to small representatives and returns its number of
    /// nonzero entries.
    fn simplify_row(&mut self, r: usize) -> usize {
        let start = r * self.cols;
        let row = &mut self.data[start..start + self.cols];
        if let Some(scale) = K::row_scale(row) {
            if !scale.is_one() {
                for v in row.iter_mut() {
                    if !v.is_zero() {
                        *v = std::mem::replace(v, K::zero()) * &scale;
                    }
                }
            }
        }
        row.iter().filter(|v| !v.is_zero()).count()
    }

    /// Eliminates `self` in place. With `full`, rows above each pivot are
    /// cleared too and pivots are normalized to 1 (reduced row echelon form).
    /// Returns the pivot columns.
    ///
    /// Columns are processed left to right; within a column the pivot row is
    /// chosen deterministically as the sparsest candidate (lowest index on
    /// ties) to limit fill-in. The reduced row echelon form is unique, so
    /// every result derived from it is independent of this internal choice.
    fn eliminate(&mut self, full: bool) -> Vec<usize> {
        let mut nnz: Vec<usize> = (0..self.rows).map(|r| self.simplify_row(r)).collect();
        let mut pivots = Vec::new();
        let mut rank = 0;
        for col in 0..self.cols {
            let mut best: Option<(usize, usize)> = None;
            for r in rank..self.rows {
                if !self.get(r, col).is_zero() {
                    let key = (nnz[r], r);
                    if best.is_none_or(|b| key < b) {
                        best = Some(key);
                    }
                }
            }
            let Some((_, pivot_row)) = best else {
                continue;
            };
            self.swap_rows(rank, pivot_row);
            nnz.swap(rank, pivot_row);
            let target_rows: Vec<usize> = if full {
                (0..self.rows).filter(|&r| r != rank).collect()
            } else {
                (rank + 1..self.rows).collect()
            };
            let pivot_val = self.get(rank, col).clone();
            for r in target_rows {
                if self.get(r, col).is_zero() {
                    continue;
                }
                // row_r -= (entry / pivot) * row_pivot, touching only the
                // pivot row's support, then rescale to small representatives.
                let q = self.get(r, col).clone() / pivot_val.clone();
                let (row_r, row_p) = self.two_rows_mut(r, rank);
                for (a, b) in row_r.iter_mut().zip(row_p.iter()) {
                    if !b.is_zero() {
                        *a = std::mem::replace(a, K::zero()) - &(b.clone() * &q);
                    }
                }
                debug_assert!(self.get(r, col).is_zero());
                nnz[r] = self.simplify_row(r);
            }
            pivots.push(col);
            rank += 1;
            if rank == self.rows {
                break;
            }
        }
        if full {
            for (r, &col) in pivots.iter().enumerate() {
                let pivot_val = self.get(r, col).clone();
                if pivot_val.is_one() {
                    continue;
                }
                let inv = pivot_val.try_inv().expect("pivot is nonzero");
                for c in 0..self.cols {
                    if !self.get(r, c).is_zero() {
                        let v = self.get(r, c).clone() * &inv;
                        self.set(r, c, v);
                    }
                }
            }
        }
        pivots
    }

    /// Exact rank via Gaussian elimination.
    pub fn rank(&self) -> usize {
        self.clone().eliminate(false).len()
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(mut self) -> (Self, Vec<usize>) {
        let pivots = self.eliminate(true);
        (self, pivots)
    }

    /// Deterministic basis of the right kernel: the free-variable unit
    /// construction from the reduced row echelon form, one vector per free
    /// column in ascending column order. Length is `cols - rank`.
    pub fn kernel_basis(&self) -> Vec<Vec<K>> {
        let (rref, pivots) = self.clone().rref();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let mut basis = Vec::with_capacity(self.cols - pivots.len());
        for free in 0..self.cols {
            if is_pivot[free] {
                continue;
            }
            let mut v = vec![K::zero(); self.cols];
            v[free] = K::one();
            for (r, &p) in pivots.iter().enumerate() {
                let coeff = rref.get(r, free);
                if !coeff.is_zero() {
                    v[p] = -coeff.clone();
                }
            }
            basis.push(v);
        }
        basis
    }

    pub fn mul_vec(&self, v: &[K]) -> Vec<K> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                let mut acc = K::zero();
                for (a, b) in self.row(r).iter().zip(v.iter()) {
                    if !a.is_zero() && !b.is_zero() {
                        acc = acc + &(a.clone() * b);
                    }
                }
                acc
            })
            .collect()
    }
}

/// An incrementally maintained row space in echelon form, used to extend a
/// spanning set to a basis in a fixed order.
pub struct Echelon<K: Field> {
    cols: usize,
    /// Rows reduced against each other, with pivots normalized to 1,
    /// ordered by pivot column.
    rows: Vec<(usize, Vec<K>)>,
}

impl<K: Field> Echelon<K> {
    pub fn new(cols: usize) -> Self {
        Self { cols, rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the current rows; if a nonzero residue remains it
    /// joins the basis and `true` is returned.
    pub fn insert(&mut self, mut v: Vec<K>) -> bool {
        assert_eq!(v.len(), self.cols);
        for (pivot, row) in &self.rows {
            let c = v[*pivot].clone();
            if c.is_zero() {
                continue;
            }
            for (vi, ri) in v.iter_mut().zip(row.iter()) {
                if !ri.is_zero() {
                    *vi = std::mem::replace(vi, K::zero()) - &(ri.clone() * &c);
                }
            }
        }
        let Some(pivot) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[pivot].try_inv().expect("nonzero pivot");
        for x in v.iter_mut() {
            if !x.is_zero() {
                *x = std::mem::replace(x, K::zero()) * &inv;
            }
        }
        let at = self.rows.partition_point(|(p, _)| *p < pivot);
        self.rows.insert(at, (pivot, v));
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{Field, Rational};
    use num_traits::Zero;
    use rand::{Rng, SeedableRng};

    fn q(n: i64) -> Rational {
        Rational::from_int(n)
    }

    fn mat(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| q(v)).collect()).collect())
    }

    #[test]
    fn rank_basics() {
        assert_eq!(mat(&[&[0, 0, 0], &[0, 0, 0], &[0, 0, 0]]).rank(), 0);
        let id4 = mat(&[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1]]);
        assert_eq!(id4.rank(), 4);
        assert_eq!(mat(&[&[1, 2], &[2, 4]]).rank(), 1);
    }

    #[test]
    fn kernel_basics() {
        // [[1,1]] has kernel spanned by (-1, 1) in the unit construction.
        let k = mat(&[&[1, 1]]).kernel_basis();
        assert_eq!(k, vec![vec![q(-1), q(1)]]);

        let id = mat(&[&[1, 0], &[0, 1]]);
        assert!(id.kernel_basis().is_empty());

        let m = mat(&[&[1, 2, 3], &[2, 4, 6]]);
        let basis = m.kernel_basis();
        assert_eq!(basis.len(), 2);
        for v in &basis {
            assert!(m.mul_vec(v).iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn rank_plus_nullity_and_permutation_invariance() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(402);
        for _ in 0..40 {
            let rows = rng.gen_range(1..=6);
            let cols = rng.gen_range(1..=6);
            let mut m = Matrix::zero(rows, cols);
            for r in 0..rows {
                for c in 0..cols {
                    m.set(r, c, Rational::new(rng.gen_range(-5..=5i64).into(), rng.gen_range(1..=3i64).into()));
                }
            }
            let rank = m.rank();
            let kernel = m.kernel_basis();
            assert_eq!(rank + kernel.len(), cols);
            for v in &kernel {
                assert!(m.mul_vec(v).iter().all(|x| x.is_zero()), "kernel vector not annihilated");
            }
            // Row permutation changes neither rank nor kernel dimension.
            let mut perm: Vec<usize> = (0..rows).collect();
            for i in (1..rows).rev() {
                let j = rng.gen_range(0..=i);
                perm.swap(i, j);
            }
            let permuted = Matrix::from_rows(perm.iter().map(|&r| m.row(r).to_vec()).collect());
            assert_eq!(permuted.rank(), rank);
            assert_eq!(permuted.kernel_basis().len(), kernel.len());
        }
    }

    #[test]
    fn rref_is_canonical_under_row_scaling() {
        let a = mat(&[&[2, 4, 6], &[1, 1, 1]]);
        let b = mat(&[&[1, 2, 3], &[3, 3, 3]]);
        let (ra, _) = a.rref();
        let (rb, _) = b.rref();
        assert_eq!(ra, rb);
    }

    #[test]
    fn echelon_insert_tracks_independence() {
        let mut e = Echelon::new(3);
        assert!(e.insert(vec![q(1), q(2), q(3)]));
        assert!(!e.insert(vec![q(2), q(4), q(6)]));
        assert!(e.insert(vec![q(0), q(1), q(1)]));
        assert_eq!(e.rank(), 2);
        assert!(!e.insert(vec![q(1), q(3), q(4)]));
        assert!(e.insert(vec![q(0), q(0), q(5)]));
        assert_eq!(e.rank(), 3);
    }
}
