use std::fmt;

use super::field::Field;
use super::matrix::Matrix;
use super::LinalgError;

/// A subspace of `F^n`, stored by its reduced row echelon basis. Two subspaces
/// are equal exactly when their canonical bases agree entry for entry.
#[derive(Clone)]
pub struct Subspace<F: Field> {
    field: F,
    ambient: usize,
    pivots: Vec<usize>,
    basis: Vec<F::Elem>,
}

impl<F: Field> Subspace<F> {
    fn key(&self) -> (usize, &[usize], &[F::Elem]) {
        (self.ambient, &self.pivots, &self.basis)
    }
}

impl<F: Field> PartialEq for Subspace<F> {
    fn eq(&self, other: &Self) -> bool {
        self.key() == other.key()
    }
}
impl<F: Field> Eq for Subspace<F> {}
impl<F: Field> std::hash::Hash for Subspace<F> {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.key().hash(state)
    }
}
impl<F: Field> PartialOrd for Subspace<F> {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl<F: Field> Ord for Subspace<F> {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.key().cmp(&other.key())
    }
}

impl<F: Field> fmt::Debug for Subspace<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(dim {} in {}) [", self.dim(), self.ambient)?;
        for r in 0..self.dim() {
            if r > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self
                .row(r)
                .iter()
                .map(|a| self.field.format_elem(a))
                .collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

impl<F: Field> Subspace<F> {
    pub fn zero(field: &F, ambient: usize) -> Self {
        Self {
            ambient,
            pivots: Vec::new(),
            basis: Vec::new(),
            field: field.clone(),
        }
    }

    pub fn full(field: &F, ambient: usize) -> Self {
        Self::from_rows(Matrix::identity(field, ambient))
    }

    /// Span of the rows of `m`.
    pub fn from_rows(mut m: Matrix<F>) -> Self {
        let pivots = m.row_reduce();
        let kept: Vec<usize> = (0..pivots.len()).collect();
        let basis = m.select_rows(&kept);
        Self {
            ambient: m.cols(),
            pivots,
            basis: basis.entries().to_vec(),
            field: m.field().clone(),
        }
    }

    pub fn span(field: &F, ambient: usize, vectors: &[Vec<F::Elem>]) -> Self {
        Self::from_rows(Matrix::from_rows(field, ambient, vectors.to_vec()))
    }

    /// Builds a subspace from a matrix already in reduced row echelon form
    /// with full row rank.
    pub(crate) fn from_rref_unchecked(m: Matrix<F>, pivots: Vec<usize>) -> Self {
        debug_assert_eq!(m.rows(), pivots.len());
        Self {
            ambient: m.cols(),
            pivots,
            basis: m.entries().to_vec(),
            field: m.field().clone(),
        }
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn dim(&self) -> usize {
        self.pivots.len()
    }
    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn row(&self, r: usize) -> &[F::Elem] {
        &self.basis[r * self.ambient..(r + 1) * self.ambient]
    }

    pub fn basis(&self) -> Matrix<F> {
        Matrix::new(
            self.field.clone(),
            self.dim(),
            self.ambient,
            self.basis.clone(),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.pivots.is_empty()
    }

    /// Subtracts the basis rows to clear `v` at every pivot column.
    pub fn reduce(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        let f = self.field();
        let mut v = v.to_vec();
        for (r, &p) in self.pivots.iter().enumerate() {
            if f.is_zero(&v[p]) {
                continue;
            }
            let c = v[p].clone();
            for (x, b) in v.iter_mut().zip(self.row(r)) {
                *x = f.sub(x, &f.mul(&c, b));
            }
        }
        v
    }

    pub fn contains(&self, v: &[F::Elem]) -> bool {
        assert_eq!(v.len(), self.ambient);
        self.reduce(v).iter().all(|x| self.field().is_zero(x))
    }

    pub fn contains_subspace(&self, other: &Self) -> bool {
        other.dim() <= self.dim() && (0..other.dim()).all(|r| self.contains(other.row(r)))
    }

    /// Coordinates of `v` (assumed to lie in the subspace) in the canonical basis.
    pub fn coordinates(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        debug_assert!(self.contains(v));
        self.pivots.iter().map(|&p| v[p].clone()).collect()
    }

    fn check_ambient(&self, other: &Self) -> Result<(), LinalgError> {
        if self.ambient != other.ambient {
            return Err(LinalgError::AmbientMismatch(self.ambient, other.ambient));
        }
        Ok(())
    }

    pub fn sum(&self, other: &Self) -> Result<Self, LinalgError> {
        self.check_ambient(other)?;
        Ok(Self::from_rows(self.basis().vstack(&other.basis())))
    }

    /// Intersection through the kernel of `[A^T | -B^T]`.
    pub fn intersection(&self, other: &Self) -> Result<Self, LinalgError> {
        self.check_ambient(other)?;
        let f = self.field();
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(f, self.ambient));
        }
        let a = self.basis();
        let neg_b = other.basis().scale(&f.neg(&f.one()));
        let system = a.transpose().hstack(&neg_b.transpose());
        let ker = system.kernel();
        let da = self.dim();
        let vectors: Vec<Vec<F::Elem>> = (0..ker.dim())
            .map(|r| {
                let y = &ker.row(r)[..da];
                let mut v = vec![f.zero(); self.ambient];
                for (k, c) in y.iter().enumerate() {
                    for (x, b) in v.iter_mut().zip(self.row(k)) {
                        *x = f.add(x, &f.mul(c, b));
                    }
                }
                v
            })
            .collect();
        Ok(Self::span(f, self.ambient, &vectors))
    }

    /// Image under the linear map `m: F^ambient -> F^rows(m)` acting on columns.
    pub fn image(&self, m: &Matrix<F>) -> Self {
        assert_eq!(m.cols(), self.ambient);
        Self::from_rows(self.basis().mul(&m.transpose()))
    }

    /// `{x : m x in self}` for `m: F^k -> F^ambient`.
    pub fn preimage(&self, m: &Matrix<F>) -> Self {
        assert_eq!(m.rows(), self.ambient);
        self.quotient_map().mul(m).kernel()
    }

    /// Matrix of the projection onto the standard complement: reduce by the
    /// subspace, then read off the non-pivot coordinates.
    pub fn quotient_map(&self) -> Matrix<F> {
        let f = self.field();
        let free = self.free_columns();
        let mut q = Matrix::zeros(f, free.len(), self.ambient);
        for (i, &c) in free.iter().enumerate() {
            q[(i, c)] = f.one();
        }
        for (r, &p) in self.pivots.iter().enumerate() {
            for (i, &c) in free.iter().enumerate() {
                q[(i, p)] = f.neg(&self.row(r)[c]);
            }
        }
        q
    }

    pub fn free_columns(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ambient];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ambient).filter(|&c| !is_pivot[c]).collect()
    }

    /// Projects `v` to `F^ambient / self`, expressed in coordinates of the
    /// complement spanned by the rows of `complement`.
    pub fn quotient_project(
        &self,
        complement: &Matrix<F>,
        v: &[F::Elem],
    ) -> Result<Vec<F::Elem>, LinalgError> {
        if complement.cols() != self.ambient {
            return Err(LinalgError::AmbientMismatch(
                self.ambient,
                complement.cols(),
            ));
        }
        let stacked = self.basis().vstack(complement);
        if stacked.rows() != self.ambient || !stacked.is_invertible() {
            return Err(LinalgError::NotComplement);
        }
        // v = y * stacked, so y = v * stacked^{-1}.
        let inv = stacked.inverse()?;
        let y = inv.transpose().apply(v);
        Ok(y[self.dim()..].to_vec())
    }
}

/// Number of `k`-dimensional subspaces of `F_q^n` by the product formula.
pub fn gaussian_binomial(n: u64, k: u64, q: u64) -> u128 {
    if k > n {
        return 0;
    }
    let (mut num, mut den) = (1u128, 1u128);
    for i in 0..k {
        num *= (q as u128).pow((n - i) as u32) - 1;
        den *= (q as u128).pow((i + 1) as u32) - 1;
    }
    num / den
}

/// Every `k`-dimensional subspace of `F_q^n` exactly once: pivot sets in
/// lexicographic order, free entries in odometer order.
pub fn enumerate_subspaces<F: Field>(
    field: &F,
    n: usize,
    k: usize,
) -> Result<SubspaceIter<F>, LinalgError> {
    if k > n {
        return Err(LinalgError::DimensionTooLarge { k, n });
    }
    let q = field.order().ok_or(LinalgError::InfiniteField)?;
    let mut it = SubspaceIter {
        field: field.clone(),
        q,
        n,
        pivots: (0..k).collect(),
        free: Vec::new(),
        digits: Vec::new(),
        done: false,
    };
    it.reset_free();
    Ok(it)
}

pub struct SubspaceIter<F: Field> {
    field: F,
    q: u64,
    n: usize,
    pivots: Vec<usize>,
    /// (row, column) positions of the free entries for the current pivot set.
    free: Vec<(usize, usize)>,
    digits: Vec<u64>,
    done: bool,
}

impl<F: Field> SubspaceIter<F> {
    fn reset_free(&mut self) {
        self.free.clear();
        for (r, &p) in self.pivots.iter().enumerate() {
            for c in p + 1..self.n {
                if !self.pivots.contains(&c) {
                    self.free.push((r, c));
                }
            }
        }
        self.digits = vec![0; self.free.len()];
    }

    fn current(&self) -> Subspace<F> {
        let f = &self.field;
        let k = self.pivots.len();
        let mut m = Matrix::zeros(f, k, self.n);
        for (r, &p) in self.pivots.iter().enumerate() {
            m[(r, p)] = f.one();
        }
        for (&(r, c), &d) in self.free.iter().zip(&self.digits) {
            m[(r, c)] = f.element(d);
        }
        Subspace::from_rref_unchecked(m, self.pivots.clone())
    }

    fn advance(&mut self) {
        // Odometer over the free entries, last position fastest.
        for d in self.digits.iter_mut().rev() {
            *d += 1;
            if *d < self.q {
                return;
            }
            *d = 0;
        }
        // Next pivot combination in lexicographic order.
        let k = self.pivots.len();
        let mut i = k;
        while i > 0 {
            i -= 1;
            if self.pivots[i] < self.n - k + i {
                self.pivots[i] += 1;
                for j in i + 1..k {
                    self.pivots[j] = self.pivots[j - 1] + 1;
                }
                self.reset_free();
                return;
            }
        }
        self.done = true;
    }
}

impl<F: Field> Iterator for SubspaceIter<F> {
    type Item = Subspace<F>;

    fn next(&mut self) -> Option<Subspace<F>> {
        if self.done {
            return None;
        }
        let out = self.current();
        self.advance();
        Some(out)
    }
}
