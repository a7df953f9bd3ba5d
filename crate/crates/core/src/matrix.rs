//! Dense exact linear algebra over F_p: row echelon reduction, rank,
//! nullspace, and linear solving. Backs incidence dimension counts, quadric
//! fitting, and the Hilbert-function oracle.

use crate::error::{Error, Result};
use crate::field::PrimeField;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DenseMatrix {
    field: PrimeField,
    nrows: usize,
    ncols: usize,
    data: Vec<u64>, // row-major
}

/// Outcome of solving A·x = b.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Solution {
    /// A particular solution together with the dimension of the affine
    /// solution space (the nullity of A).
    Consistent { particular: Vec<u64>, nullity: usize },
    Inconsistent,
}

impl DenseMatrix {
    pub fn zeros(field: PrimeField, nrows: usize, ncols: usize) -> Self {
        DenseMatrix { field, nrows, ncols, data: vec![0; nrows * ncols] }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(field: PrimeField, rows: &[Vec<u64>]) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        let p = field.modulus();
        let data = rows.iter().flatten().map(|&x| x % p).collect();
        Ok(DenseMatrix { field, nrows, ncols, data })
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.ncols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.data[i * self.ncols + j] = v % self.field.modulus();
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.ncols..(i + 1) * self.ncols]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[u64]> {
        self.data.chunks(self.ncols.max(1)).take(self.nrows)
    }

    /// Stacks the rows of `other` below `self`.
    pub fn stack(&self, other: &DenseMatrix) -> Result<DenseMatrix> {
        if self.ncols != other.ncols || self.field != other.field {
            return Err(Error::DimensionMismatch("stack: column counts differ".into()));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(DenseMatrix { field: self.field, nrows: self.nrows + other.nrows, ncols: self.ncols, data })
    }

    /// In-place reduction to reduced row echelon form; returns pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let f = self.field;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.ncols {
            if r == self.nrows {
                break;
            }
            let Some(pr) = (r..self.nrows).find(|&i| self.get(i, c) != 0) else {
                continue;
            };
            self.swap_rows(r, pr);
            let inv = f.inv(self.get(r, c)).expect("pivot is nonzero");
            for j in c..self.ncols {
                let v = f.mul(self.get(r, j), inv);
                self.set(r, j, v);
            }
            for i in 0..self.nrows {
                if i != r && self.get(i, c) != 0 {
                    let factor = self.get(i, c);
                    for j in c..self.ncols {
                        let v = f.sub(self.get(i, j), f.mul(factor, self.get(r, j)));
                        self.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }

    /// Basis of the right nullspace, one vector per free column.
    pub fn nullspace(&self) -> Vec<Vec<u64>> {
        let f = self.field;
        let mut m = self.clone();
        let pivots = m.rref();
        let pivot_set: Vec<Option<usize>> = {
            let mut v = vec![None; self.ncols];
            for (r, &c) in pivots.iter().enumerate() {
                v[c] = Some(r);
            }
            v
        };
        let mut basis = Vec::new();
        for free in 0..self.ncols {
            if pivot_set[free].is_some() {
                continue;
            }
            let mut vec = vec![0u64; self.ncols];
            vec[free] = 1;
            for (c, &pr) in pivot_set.iter().enumerate() {
                if let Some(r) = pr {
                    vec[c] = f.neg(m.get(r, free));
                }
            }
            basis.push(vec);
        }
        basis
    }

    /// Solves A·x = b; never panics on inconsistency, flags it instead.
    pub fn solve(&self, b: &[u64]) -> Result<Solution> {
        if b.len() != self.nrows {
            return Err(Error::DimensionMismatch("solve: rhs length".into()));
        }
        let f = self.field;
        // augmented matrix [A | b]
        let mut aug = DenseMatrix::zeros(f, self.nrows, self.ncols + 1);
        for i in 0..self.nrows {
            for j in 0..self.ncols {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, self.ncols, b[i]);
        }
        let pivots = aug.rref();
        if pivots.contains(&self.ncols) {
            return Ok(Solution::Inconsistent);
        }
        let mut particular = vec![0u64; self.ncols];
        for (r, &c) in pivots.iter().enumerate() {
            particular[c] = aug.get(r, self.ncols);
        }
        Ok(Solution::Consistent { particular, nullity: self.ncols - pivots.len() })
    }

    pub fn determinant(&self) -> Result<u64> {
        if self.nrows != self.ncols {
            return Err(Error::DimensionMismatch("determinant of non-square matrix".into()));
        }
        let f = self.field;
        let mut m = self.clone();
        let n = self.nrows;
        let mut det = 1u64;
        for c in 0..n {
            let Some(pr) = (c..n).find(|&i| m.get(i, c) != 0) else {
                return Ok(0);
            };
            if pr != c {
                m.swap_rows(c, pr);
                det = f.neg(det);
            }
            det = f.mul(det, m.get(c, c));
            let inv = f.inv(m.get(c, c))?;
            for i in (c + 1)..n {
                if m.get(i, c) != 0 {
                    let factor = f.mul(m.get(i, c), inv);
                    for j in c..n {
                        let v = f.sub(m.get(i, j), f.mul(factor, m.get(c, j)));
                        m.set(i, j, v);
                    }
                }
            }
        }
        Ok(det)
    }

    pub fn mul_vec(&self, x: &[u64]) -> Result<Vec<u64>> {
        if x.len() != self.ncols {
            return Err(Error::DimensionMismatch("mul_vec: vector length".into()));
        }
        let f = self.field;
        Ok((0..self.nrows)
            .map(|i| {
                (0..self.ncols).fold(0u64, |acc, j| f.add(acc, f.mul(self.get(i, j), x[j])))
            })
            .collect())
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.ncols {
            self.data.swap(a * self.ncols + j, b * self.ncols + j);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    fn f() -> PrimeField {
        PrimeField::new(32003).unwrap()
    }

    #[test]
    fn rank_identity_and_zero() {
        assert_eq!(DenseMatrix::identity(f(), 4).rank(), 4);
        assert_eq!(DenseMatrix::zeros(f(), 3, 5).rank(), 0);
    }

    #[test]
    fn rank_of_two_skew_lines() {
        // forms of V(x,y) and V(z,w) in P^3
        let m = DenseMatrix::from_rows(
            f(),
            &[vec![1, 0, 0, 0], vec![0, 1, 0, 0], vec![0, 0, 1, 0], vec![0, 0, 0, 1]],
        )
        .unwrap();
        assert_eq!(m.rank(), 4);
    }

    #[test]
    fn solve_identity_and_inconsistent() {
        let id = DenseMatrix::identity(f(), 3);
        let b = vec![5, 7, 11];
        match id.solve(&b).unwrap() {
            Solution::Consistent { particular, nullity } => {
                assert_eq!(particular, b);
                assert_eq!(nullity, 0);
            }
            _ => panic!("identity system must be consistent"),
        }
        let z = DenseMatrix::zeros(f(), 2, 3);
        assert_eq!(z.solve(&[1, 0]).unwrap(), Solution::Inconsistent);
    }

    #[test]
    fn rank_nullity_random_shapes() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let field = f();
        for nrows in 1..=12usize {
            for ncols in 1..=12usize {
                let rows: Vec<Vec<u64>> = (0..nrows)
                    .map(|_| (0..ncols).map(|_| rng.gen_range(0..field.modulus())).collect())
                    .collect();
                let m = DenseMatrix::from_rows(field, &rows).unwrap();
                assert_eq!(m.rank() + m.nullspace().len(), ncols);
                // nullspace vectors actually lie in the kernel
                for v in m.nullspace() {
                    assert!(m.mul_vec(&v).unwrap().iter().all(|&x| x == 0));
                }
            }
        }
    }

    #[test]
    fn solve_reports_affine_dimension() {
        // one equation in three unknowns: 2-dimensional solution space
        let m = DenseMatrix::from_rows(f(), &[vec![1, 2, 3]]).unwrap();
        match m.solve(&[6]).unwrap() {
            Solution::Consistent { particular, nullity } => {
                assert_eq!(nullity, 2);
                assert_eq!(m.mul_vec(&particular).unwrap(), vec![6]);
            }
            _ => panic!("must be consistent"),
        }
    }
}
