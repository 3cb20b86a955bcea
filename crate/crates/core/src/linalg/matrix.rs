use std::ops::{Index, IndexMut};

use super::field::Field;
use super::subspace::Subspace;
use super::LinalgError;

/// Dense row-major matrix over an exact field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    data: Vec<F::Elem>,
}

impl<F: Field> Matrix<F> {
    pub fn new(field: F, rows: usize, cols: usize, data: Vec<F::Elem>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data has wrong length");
        Self {
            field,
            rows,
            cols,
            data,
        }
    }

    pub fn zeros(field: &F, rows: usize, cols: usize) -> Self {
        Self::new(field.clone(), rows, cols, vec![field.zero(); rows * cols])
    }

    pub fn identity(field: &F, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m[(i, i)] = field.one();
        }
        m
    }

    pub fn from_rows(field: &F, cols: usize, rows: Vec<Vec<F::Elem>>) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols);
            data.extend(r);
        }
        Self::new(field.clone(), n, cols, data)
    }

    pub fn from_ints(field: &F, rows: usize, cols: usize, entries: &[i64]) -> Self {
        assert_eq!(entries.len(), rows * cols);
        Self::new(
            field.clone(),
            rows,
            cols,
            entries.iter().map(|&x| field.from_int(x)).collect(),
        )
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn entries(&self) -> &[F::Elem] {
        &self.data
    }

    pub fn row(&self, r: usize) -> &[F::Elem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<F::Elem> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| self.field.is_zero(x))
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                data.push(self[(r, c)].clone());
            }
        }
        Self::new(self.field.clone(), self.cols, self.rows, data)
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let f = &self.field;
        let mut out = Self::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !f.is_zero(b) {
                        out[(i, j)] = f.add(&out[(i, j)], &f.mul(a, b));
                    }
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        assert_eq!(v.len(), self.cols);
        let f = &self.field;
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(f.zero(), |acc, (a, b)| f.add(&acc, &f.mul(a, b)))
            })
            .collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = &self.field;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| f.add(a, b))
            .collect();
        Self::new(f.clone(), self.rows, self.cols, data)
    }

    pub fn scale(&self, s: &F::Elem) -> Self {
        let f = &self.field;
        let data = self.data.iter().map(|a| f.mul(a, s)).collect();
        Self::new(f.clone(), self.rows, self.cols, data)
    }

    pub fn pow(&self, mut exp: usize) -> Self {
        assert_eq!(self.rows, self.cols);
        let mut acc = Self::identity(&self.field, self.rows);
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base);
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Stacks `self` on top of `other`.
    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Self::new(self.field.clone(), self.rows + other.rows, self.cols, data)
    }

    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows);
        let mut data = Vec::with_capacity(self.data.len() + other.data.len());
        for r in 0..self.rows {
            data.extend(self.row(r).iter().cloned());
            data.extend(other.row(r).iter().cloned());
        }
        Self::new(self.field.clone(), self.rows, self.cols + other.cols, data)
    }

    pub fn select_rows(&self, rows: &[usize]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * self.cols);
        for &r in rows {
            data.extend(self.row(r).iter().cloned());
        }
        Self::new(self.field.clone(), rows.len(), self.cols, data)
    }

    pub fn select_cols(&self, cols: &[usize]) -> Self {
        let mut data = Vec::with_capacity(self.rows * cols.len());
        for r in 0..self.rows {
            for &c in cols {
                data.push(self[(r, c)].clone());
            }
        }
        Self::new(self.field.clone(), self.rows, cols.len(), data)
    }

    /// Copies `block` into `self` with its top-left corner at `(r0, c0)`.
    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Self) {
        for r in 0..block.rows {
            for c in 0..block.cols {
                self[(r0 + r, c0 + c)] = block[(r, c)].clone();
            }
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        let mut out = Self::zeros(&self.field, rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                out[(r, c)] = self[(r0 + r, c0 + c)].clone();
            }
        }
        out
    }

    /// Reduces in place to reduced row echelon form and returns the pivot columns.
    pub fn row_reduce(&mut self) -> Vec<usize> {
        let f = self.field.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&r| !f.is_zero(&self[(r, col)])) else {
                continue;
            };
            self.swap_rows(row, p);
            let inv = f.inv(&self[(row, col)]).expect("nonzero pivot");
            for c in col..self.cols {
                self[(row, c)] = f.mul(&self[(row, c)], &inv);
            }
            for r in 0..self.rows {
                if r == row || f.is_zero(&self[(r, col)]) {
                    continue;
                }
                let factor = self[(r, col)].clone();
                for c in col..self.cols {
                    let t = f.mul(&factor, &self[(row, c)]);
                    self[(r, c)] = f.sub(&self[(r, c)], &t);
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Reduced row echelon form (zero rows dropped) together with the rank.
    pub fn rref_rank(&self) -> (Self, usize) {
        let mut m = self.clone();
        let pivots = m.row_reduce();
        let rank = pivots.len();
        let kept: Vec<usize> = (0..rank).collect();
        (m.select_rows(&kept), rank)
    }

    pub fn rank(&self) -> usize {
        self.clone().row_reduce().len()
    }

    /// Solution space of `self * x = 0` inside `F^cols`.
    pub fn kernel(&self) -> Subspace<F> {
        let f = &self.field;
        let mut m = self.clone();
        let pivots = m.row_reduce();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![f.zero(); self.cols];
            v[free] = f.one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = f.neg(&m[(r, free)]);
            }
            basis.push(v);
        }
        Subspace::from_rows(Matrix::from_rows(f, self.cols, basis))
    }

    /// Row space as a subspace of `F^cols`.
    pub fn row_space(&self) -> Subspace<F> {
        Subspace::from_rows(self.clone())
    }

    /// Column space as a subspace of `F^rows`.
    pub fn column_space(&self) -> Subspace<F> {
        Subspace::from_rows(self.transpose())
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    pub fn inverse(&self) -> Result<Self, LinalgError> {
        if self.rows != self.cols {
            return Err(LinalgError::Shape {
                expected: (self.rows, self.rows),
                found: (self.rows, self.cols),
            });
        }
        let n = self.rows;
        let mut aug = self.hstack(&Self::identity(&self.field, n));
        let pivots = aug.row_reduce();
        if pivots.len() < n || (n > 0 && pivots[n - 1] >= n) {
            return Err(LinalgError::Singular);
        }
        Ok(aug.block(0, n, n, n))
    }

    /// Reduces every entry into `F_p`; fails on entries with non-invertible denominators.
    pub fn reduce_mod(
        &self,
        target: &super::PrimeField,
    ) -> Result<Matrix<super::PrimeField>, LinalgError> {
        let p = target.modulus();
        let data = self
            .data
            .iter()
            .map(|a| {
                self.field
                    .reduce_to(a, p)
                    .ok_or_else(|| LinalgError::BadReduction {
                        entry: self.field.format_elem(a),
                        p,
                    })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Matrix::new(*target, self.rows, self.cols, data))
    }
}

impl<F: Field> Index<(usize, usize)> for Matrix<F> {
    type Output = F::Elem;
    fn index(&self, (r, c): (usize, usize)) -> &F::Elem {
        &self.data[r * self.cols + c]
    }
}

impl<F: Field> IndexMut<(usize, usize)> for Matrix<F> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut F::Elem {
        &mut self.data[r * self.cols + c]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{PrimeField, Rationals};
    use proptest::prelude::*;

    fn fp(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn identity_has_full_rank() {
        let f = fp(3);
        let (r, rank) = Matrix::identity(&f, 2).rref_rank();
        assert_eq!(rank, 2);
        assert_eq!(r, Matrix::identity(&f, 2));
    }

    #[test]
    fn all_ones_over_f2_has_rank_one() {
        let f = fp(2);
        let m = Matrix::from_ints(&f, 2, 2, &[1, 1, 1, 1]);
        let (r, rank) = m.rref_rank();
        assert_eq!(rank, 1);
        assert_eq!(r, Matrix::from_ints(&f, 1, 2, &[1, 1]));
    }

    #[test]
    fn zero_matrix_has_rank_zero() {
        let f = fp(5);
        assert_eq!(Matrix::zeros(&f, 3, 2).rref_rank().1, 0);
    }

    #[test]
    fn kernel_examples() {
        let f = fp(2);
        assert_eq!(Matrix::identity(&f, 2).kernel().dim(), 0);
        let k = Matrix::from_ints(&f, 1, 2, &[1, 1]).kernel();
        assert_eq!(k.basis(), Matrix::from_ints(&f, 1, 2, &[1, 1]));
        let f5 = fp(5);
        assert_eq!(Matrix::zeros(&f5, 2, 2).kernel(), Subspace::full(&f5, 2));
    }

    #[test]
    fn rational_inverse() {
        let q = Rationals;
        let m = Matrix::from_ints(&q, 2, 2, &[2, 1, 1, 1]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(&q, 2));
        assert!(Matrix::from_ints(&q, 2, 2, &[1, 2, 2, 4])
            .inverse()
            .is_err());
    }

    fn small_matrix() -> impl Strategy<Value = (usize, usize, Vec<i64>)> {
        (0usize..5, 0usize..5)
            .prop_flat_map(|(r, c)| (Just(r), Just(c), proptest::collection::vec(-3i64..4, r * c)))
    }

    proptest! {
        #[test]
        fn rank_nullity((r, c, e) in small_matrix(), p in prop::sample::select(vec![2u64, 3, 5])) {
            let f = fp(p);
            let m = Matrix::from_ints(&f, r, c, &e);
            let k = m.kernel();
            prop_assert_eq!(m.rank() + k.dim(), c);
            for v in 0..k.dim() {
                prop_assert!(m.apply(k.basis().row(v)).iter().all(|x| *x == 0));
            }
        }

        #[test]
        fn rref_is_idempotent_and_canonical((r, c, e) in small_matrix(), seed in 0i64..100) {
            let f = Rationals;
            let m = Matrix::from_ints(&f, r, c, &e);
            let (a, _) = m.rref_rank();
            let (b, _) = a.rref_rank();
            prop_assert_eq!(&a, &b);
            // An invertible row operation does not change the canonical form.
            if r >= 2 {
                let mut n = m.clone();
                for col in 0..c {
                    let t = f.add(&n[(1, col)], &f.mul(&f.from_int(seed % 7 - 3), &n[(0, col)]));
                    n[(1, col)] = t;
                }
                prop_assert_eq!(n.rref_rank().0, a);
            }
        }
    }
}
