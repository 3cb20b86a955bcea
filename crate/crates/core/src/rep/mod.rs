//! Representations of quivers over an exact field: Euler form, Hom and Ext,
//! rigidity, direct sums, Krull-Schmidt splitting and reflections.

mod decompose;
mod reflect;

use std::fmt;

use crate::linalg::{Field, LinalgError, Matrix, Subspace};
use crate::quiver::{Quiver, QuiverError};

pub use decompose::{
    decompose, decompose_with, expand, find_isomorphism, reassembly_matches, DecomposeOptions,
    Summand,
};
pub use reflect::{reflect, sigma, ReflectionKind};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RepError {
    #[error("representations live on different quivers")]
    QuiverMismatch,
    #[error("representations live over different fields")]
    FieldMismatch,
    #[error("matrix for arrow `{arrow}` should be {expected:?} but is {found:?}")]
    Shape {
        arrow: String,
        expected: (usize, usize),
        found: (usize, usize),
    },
    #[error("bad dimension vector: {0}")]
    BadDimVector(String),
    #[error("vertex `{0}` is neither a sink nor a source")]
    NotSinkOrSource(String),
    #[error("reflection not applicable to this e: {0}")]
    ReflectionNotApplicable(String),
    #[error("vertex `{0}` is not a leaf")]
    NotLeaf(String),
    #[error("no decomposition found within {trials} trials for a summand of dimension {dim}")]
    BudgetExhausted { trials: usize, dim: usize },
    #[error("total dimension {dim} exceeds the bound {bound}")]
    TooLarge { dim: usize, bound: usize },
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Nonnegative integer vector indexed by the vertices of a quiver.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct DimVector(pub Vec<usize>);

impl DimVector {
    pub fn zero(n: usize) -> Self {
        Self(vec![0; n])
    }

    /// Parses `v=k,w=l,...`; absent vertices are 0.
    pub fn parse(q: &Quiver, s: &str) -> Result<Self, RepError> {
        let mut out = vec![0; q.vertex_count()];
        let s = s.trim();
        if s.is_empty() {
            return Ok(Self(out));
        }
        for part in s.split(',') {
            let (v, k) = part
                .split_once('=')
                .ok_or_else(|| RepError::BadDimVector(format!("`{part}` is not `vertex=n`")))?;
            let idx = q
                .vertex(v.trim())
                .ok_or_else(|| RepError::BadDimVector(format!("unknown vertex `{}`", v.trim())))?;
            out[idx] = k
                .trim()
                .parse()
                .map_err(|_| RepError::BadDimVector(format!("`{}` is not a count", k.trim())))?;
        }
        Ok(Self(out))
    }

    pub fn format(&self, q: &Quiver) -> String {
        self.0
            .iter()
            .enumerate()
            .map(|(i, k)| format!("{}={}", q.vertex_id(i), k))
            .collect::<Vec<_>>()
            .join(",")
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Componentwise `self <= other`.
    pub fn le(&self, other: &Self) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn checked_sub(&self, other: &Self) -> Option<Self> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(Self)
    }

    pub fn add(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl fmt::Display for DimVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|k| k.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl std::ops::Index<usize> for DimVector {
    type Output = usize;
    fn index(&self, i: usize) -> &usize {
        &self.0[i]
    }
}

/// `<d,e> = sum_i d_i e_i - sum_a d_{s(a)} e_{t(a)}`.
pub fn euler_form(q: &Quiver, d: &DimVector, e: &DimVector) -> i64 {
    let diag: i64 = (0..q.vertex_count()).map(|i| (d[i] * e[i]) as i64).sum();
    let off: i64 = q
        .arrows()
        .iter()
        .map(|a| (d[a.source] * e[a.target]) as i64)
        .sum();
    diag - off
}

/// A family of per-vertex linear maps, one matrix per vertex.
pub type Morphism<F> = Vec<Matrix<F>>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Representation<F: Field> {
    name: String,
    quiver: Quiver,
    field: F,
    dims: DimVector,
    maps: Vec<Matrix<F>>,
}

impl<F: Field> Representation<F> {
    /// Validates that `maps[a]` is `dims[t(a)] x dims[s(a)]` for every arrow.
    pub fn new(
        name: impl Into<String>,
        quiver: Quiver,
        field: F,
        dims: DimVector,
        maps: Vec<Matrix<F>>,
    ) -> Result<Self, RepError> {
        if dims.len() != quiver.vertex_count() {
            return Err(RepError::BadDimVector(format!(
                "expected {} entries, found {}",
                quiver.vertex_count(),
                dims.len()
            )));
        }
        if maps.len() != quiver.arrow_count() {
            return Err(RepError::BadDimVector(format!(
                "expected {} arrow matrices, found {}",
                quiver.arrow_count(),
                maps.len()
            )));
        }
        for (a, arr) in quiver.arrows().iter().enumerate() {
            let expected = (dims[arr.target], dims[arr.source]);
            let found = (maps[a].rows(), maps[a].cols());
            if expected != found {
                return Err(RepError::Shape {
                    arrow: arr.id.clone(),
                    expected,
                    found,
                });
            }
            if maps[a].field() != &field {
                return Err(RepError::FieldMismatch);
            }
        }
        Ok(Self {
            name: name.into(),
            quiver,
            field,
            dims,
            maps,
        })
    }

    /// Builds a representation from integer matrices, given row by row.
    pub fn from_ints(
        name: &str,
        quiver: &Quiver,
        field: &F,
        dims: &[usize],
        maps: &[&[i64]],
    ) -> Result<Self, RepError> {
        let d = DimVector(dims.to_vec());
        let mats = quiver
            .arrows()
            .iter()
            .zip(maps)
            .map(|(a, m)| {
                let (r, c) = (d[a.target], d[a.source]);
                if m.len() != r * c {
                    return Err(RepError::Shape {
                        arrow: a.id.clone(),
                        expected: (r, c),
                        found: (m.len(), 1),
                    });
                }
                Ok(Matrix::from_ints(field, r, c, m))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(name, quiver.clone(), field.clone(), d, mats)
    }

    pub fn zero(quiver: &Quiver, field: &F) -> Self {
        let n = quiver.vertex_count();
        let maps = quiver
            .arrows()
            .iter()
            .map(|_| Matrix::zeros(field, 0, 0))
            .collect();
        Self::new("0", quiver.clone(), field.clone(), DimVector::zero(n), maps)
            .expect("zero representation is well formed")
    }

    /// The simple representation at vertex `i` (assumes no loop at `i`).
    pub fn simple(quiver: &Quiver, field: &F, i: usize) -> Self {
        let mut dims = DimVector::zero(quiver.vertex_count());
        dims.0[i] = 1;
        let maps = quiver
            .arrows()
            .iter()
            .map(|a| Matrix::zeros(field, dims[a.target], dims[a.source]))
            .collect();
        Self::new(
            format!("S({})", quiver.vertex_id(i)),
            quiver.clone(),
            field.clone(),
            dims,
            maps,
        )
        .expect("simple representation is well formed")
    }

    pub fn name(&self) -> &str {
        &self.name
    }
    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }
    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }
    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn dims(&self) -> &DimVector {
        &self.dims
    }
    pub fn dim(&self, i: usize) -> usize {
        self.dims[i]
    }
    pub fn total_dim(&self) -> usize {
        self.dims.total()
    }
    pub fn map(&self, a: usize) -> &Matrix<F> {
        &self.maps[a]
    }
    pub fn maps(&self) -> &[Matrix<F>] {
        &self.maps
    }

    fn check_compatible(&self, other: &Self) -> Result<(), RepError> {
        if self.quiver.vertices() != other.quiver.vertices()
            || self.quiver.arrows() != other.quiver.arrows()
        {
            return Err(RepError::QuiverMismatch);
        }
        if self.field != other.field {
            return Err(RepError::FieldMismatch);
        }
        Ok(())
    }

    /// The same representation over `F_p`, entrywise reduced.
    pub fn reduce_mod(
        &self,
        p: &crate::linalg::PrimeField,
    ) -> Result<Representation<crate::linalg::PrimeField>, RepError> {
        let maps = self
            .maps
            .iter()
            .map(|m| m.reduce_mod(p))
            .collect::<Result<Vec<_>, _>>()?;
        Representation::new(
            self.name.clone(),
            self.quiver.clone(),
            *p,
            self.dims.clone(),
            maps,
        )
    }

    /// Keeps the listed coordinates at each vertex. Only meaningful when they
    /// span a direct summand in coordinate form.
    pub fn restrict_coordinates(&self, keep: &[Vec<usize>]) -> Self {
        let dims = DimVector(keep.iter().map(Vec::len).collect());
        let maps = self
            .quiver
            .arrows()
            .iter()
            .zip(&self.maps)
            .map(|(a, m)| m.select_rows(&keep[a.target]).select_cols(&keep[a.source]))
            .collect();
        Self::new(
            self.name.clone(),
            self.quiver.clone(),
            self.field.clone(),
            dims,
            maps,
        )
        .expect("restriction preserves shapes")
    }

    /// Transports the structure along `basis[i]`, whose columns are the new
    /// basis of the space at vertex `i`: `M'_a = P_t^{-1} M_a P_s`.
    pub fn change_basis(&self, basis: &[Matrix<F>]) -> Result<Self, RepError> {
        let inverses = basis
            .iter()
            .map(Matrix::inverse)
            .collect::<Result<Vec<_>, _>>()?;
        let maps = self
            .quiver
            .arrows()
            .iter()
            .zip(&self.maps)
            .map(|(a, m)| inverses[a.target].mul(m).mul(&basis[a.source]))
            .collect();
        Self::new(
            self.name.clone(),
            self.quiver.clone(),
            self.field.clone(),
            self.dims.clone(),
            maps,
        )
    }

    /// The dual representation on the opposite quiver (transposed matrices).
    pub fn dual(&self) -> Self {
        Self {
            name: format!("{}*", self.name),
            quiver: self.quiver.opposite(),
            field: self.field.clone(),
            dims: self.dims.clone(),
            maps: self.maps.iter().map(Matrix::transpose).collect(),
        }
    }

    /// Basis vectors `(vertex, index)` and the nonzero matrix entries joining
    /// them, as `(arrow, source basis vector, target basis vector)`.
    pub fn coefficient_quiver(&self) -> CoefficientQuiver {
        let mut offsets = Vec::with_capacity(self.dims.len());
        let mut points = Vec::new();
        for (i, &d) in self.dims.0.iter().enumerate() {
            offsets.push(points.len());
            points.extend((0..d).map(|k| (i, k)));
        }
        let mut edges = Vec::new();
        for (a, arr) in self.quiver.arrows().iter().enumerate() {
            let m = &self.maps[a];
            for r in 0..m.rows() {
                for c in 0..m.cols() {
                    if !self.field.is_zero(&m[(r, c)]) {
                        edges.push((a, offsets[arr.source] + c, offsets[arr.target] + r));
                    }
                }
            }
        }
        CoefficientQuiver {
            points,
            offsets,
            edges,
        }
    }

    /// Forgets the space at the leaf `l` and its arrow.
    pub fn delete_leaf(&self, l: usize) -> Result<Self, RepError> {
        if self.quiver.degree(l) != 1 {
            return Err(RepError::NotLeaf(self.quiver.vertex_id(l).to_string()));
        }
        let keep: Vec<bool> = (0..self.quiver.vertex_count()).map(|v| v != l).collect();
        let (sub, vmap, amap) = self.quiver.full_subquiver(&keep);
        let dims = DimVector(vmap.iter().map(|&v| self.dims[v]).collect());
        let maps = amap.iter().map(|&a| self.maps[a].clone()).collect();
        Self::new(self.name.clone(), sub, self.field.clone(), dims, maps)
    }

    /// Whether `f` (one matrix per vertex) commutes with all arrows.
    pub fn is_morphism_to(&self, other: &Self, f: &[Matrix<F>]) -> bool {
        self.quiver
            .arrows()
            .iter()
            .enumerate()
            .all(|(a, arr)| other.maps[a].mul(&f[arr.source]) == f[arr.target].mul(&self.maps[a]))
    }
}

impl<F: Field> fmt::Display for Representation<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "rep {} over {}", self.name, self.field.token())?;
        for (i, &d) in self.dims.0.iter().enumerate() {
            if d > 0 {
                writeln!(f, "dim {} {}", self.quiver.vertex_id(i), d)?;
            }
        }
        for (a, arr) in self.quiver.arrows().iter().enumerate() {
            let m = &self.maps[a];
            if m.rows() == 0 || m.cols() == 0 {
                continue;
            }
            writeln!(f, "mat {}", arr.id)?;
            for r in 0..m.rows() {
                let row: Vec<String> = m.row(r).iter().map(|x| self.field.format_elem(x)).collect();
                writeln!(f, "{}", row.join(" "))?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoefficientQuiver {
    pub points: Vec<(usize, usize)>,
    pub offsets: Vec<usize>,
    pub edges: Vec<(usize, usize, usize)>,
}

impl CoefficientQuiver {
    /// Connected components, each listed as basis indices per vertex.
    pub fn components(&self, vertex_count: usize) -> Vec<Vec<Vec<usize>>> {
        let n = self.points.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let next = p[y];
                p[y] = r;
                y = next;
            }
            r
        }
        for &(_, s, t) in &self.edges {
            let (a, b) = (find(&mut parent, s), find(&mut parent, t));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
        let mut roots: Vec<usize> = Vec::new();
        let mut comps: Vec<Vec<Vec<usize>>> = Vec::new();
        for x in 0..n {
            let r = find(&mut parent, x);
            let slot = match roots.iter().position(|&y| y == r) {
                Some(s) => s,
                None => {
                    roots.push(r);
                    comps.push(vec![Vec::new(); vertex_count]);
                    comps.len() - 1
                }
            };
            let (i, k) = self.points[x];
            comps[slot][i].push(k);
        }
        comps
    }
}

/// Where each vertex's `Hom(M_i, N_i)` block starts inside the domain of the
/// Hom/Ext map, plus the total domain size.
fn hom_offsets<F: Field>(m: &Representation<F>, n: &Representation<F>) -> (Vec<usize>, usize) {
    let mut offsets = Vec::with_capacity(m.dims.len());
    let mut total = 0;
    for i in 0..m.dims.len() {
        offsets.push(total);
        total += n.dims[i] * m.dims[i];
    }
    (offsets, total)
}

/// The map `phi(f)_a = N_a f_{s(a)} - f_{t(a)} M_a` from `sum_i Hom(M_i,N_i)`
/// to `sum_a Hom(M_{s(a)}, N_{t(a)})`, with `f_i` flattened row-major.
pub fn hom_ext_matrix<F: Field>(
    m: &Representation<F>,
    n: &Representation<F>,
) -> Result<Matrix<F>, RepError> {
    m.check_compatible(n)?;
    let field = &m.field;
    let (dom_off, dom) = hom_offsets(m, n);
    let mut cod_off = Vec::new();
    let mut cod = 0;
    for arr in m.quiver.arrows() {
        cod_off.push(cod);
        cod += n.dims[arr.target] * m.dims[arr.source];
    }
    let mut phi = Matrix::zeros(field, cod, dom);
    for (a, arr) in m.quiver.arrows().iter().enumerate() {
        let (s, t) = (arr.source, arr.target);
        let (ms, mt, ns, nt) = (m.dims[s], m.dims[t], n.dims[s], n.dims[t]);
        let (na, ma) = (&n.maps[a], &m.maps[a]);
        for r in 0..nt {
            for c in 0..ms {
                let row = cod_off[a] + r * ms + c;
                // N_a f_s: sum_k N_a[r,k] f_s[k,c]
                for k in 0..ns {
                    let col = dom_off[s] + k * ms + c;
                    let v = field.add(&phi[(row, col)], &na[(r, k)]);
                    phi[(row, col)] = v;
                }
                // - f_t M_a: sum_k f_t[r,k] M_a[k,c]
                for k in 0..mt {
                    let col = dom_off[t] + r * mt + k;
                    let v = field.sub(&phi[(row, col)], &ma[(k, c)]);
                    phi[(row, col)] = v;
                }
            }
        }
    }
    Ok(phi)
}

/// `(dim Hom(M,N), dim Ext^1(M,N))`.
pub fn hom_ext_dims<F: Field>(
    m: &Representation<F>,
    n: &Representation<F>,
) -> Result<(usize, usize), RepError> {
    let phi = hom_ext_matrix(m, n)?;
    let rank = phi.rank();
    Ok((phi.cols() - rank, phi.rows() - rank))
}

fn unflatten<F: Field>(
    m: &Representation<F>,
    n: &Representation<F>,
    offsets: &[usize],
    v: &[F::Elem],
) -> Morphism<F> {
    (0..m.dims.len())
        .map(|i| {
            let (r, c) = (n.dims[i], m.dims[i]);
            Matrix::new(
                m.field.clone(),
                r,
                c,
                v[offsets[i]..offsets[i] + r * c].to_vec(),
            )
        })
        .collect()
}

/// A basis of `Hom(M, N)`, each element given by its matrices at all vertices.
pub fn hom_basis<F: Field>(
    m: &Representation<F>,
    n: &Representation<F>,
) -> Result<Vec<Morphism<F>>, RepError> {
    let phi = hom_ext_matrix(m, n)?;
    let (offsets, _) = hom_offsets(m, n);
    let kernel: Subspace<F> = phi.kernel();
    Ok((0..kernel.dim())
        .map(|r| unflatten(m, n, &offsets, kernel.row(r)))
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RigidityReport {
    pub rigid: bool,
    pub exceptional: bool,
    pub end_dim: usize,
    pub ext_dim: usize,
}

impl fmt::Display for RigidityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "rigid={} exceptional={} end={} ext={}",
            self.rigid, self.exceptional, self.end_dim, self.ext_dim
        )
    }
}

pub fn rigidity_report<F: Field>(m: &Representation<F>) -> RigidityReport {
    let (end_dim, ext_dim) =
        hom_ext_dims(m, m).expect("a representation is compatible with itself");
    RigidityReport {
        rigid: ext_dim == 0,
        exceptional: ext_dim == 0 && end_dim == 1,
        end_dim,
        ext_dim,
    }
}

/// A direct sum together with the coordinate offsets of every summand.
#[derive(Debug, Clone)]
pub struct DirectSum<F: Field> {
    pub rep: Representation<F>,
    /// `offsets[r][i]` is where summand `r` starts in the space at vertex `i`.
    pub offsets: Vec<Vec<usize>>,
    pub parts: Vec<DimVector>,
}

impl<F: Field> DirectSum<F> {
    /// Coordinates of summand `r` at vertex `i`.
    pub fn block(&self, r: usize, i: usize) -> std::ops::Range<usize> {
        self.offsets[r][i]..self.offsets[r][i] + self.parts[r][i]
    }

    /// Summand index owning coordinate `k` at vertex `i`.
    pub fn owner(&self, i: usize, k: usize) -> usize {
        (0..self.parts.len())
            .find(|&r| self.block(r, i).contains(&k))
            .expect("coordinate in range")
    }
}

/// Block-diagonal direct sum in input order.
pub fn direct_sum<F: Field>(
    quiver: &Quiver,
    field: &F,
    ms: &[Representation<F>],
) -> Result<DirectSum<F>, RepError> {
    let template = Representation::zero(quiver, field);
    for m in ms {
        template.check_compatible(m)?;
    }
    let n = quiver.vertex_count();
    let mut offsets = Vec::with_capacity(ms.len());
    let mut dims = DimVector::zero(n);
    for m in ms {
        offsets.push(dims.0.clone());
        dims = dims.add(&m.dims);
    }
    let maps = quiver
        .arrows()
        .iter()
        .enumerate()
        .map(|(a, arr)| {
            let mut big = Matrix::zeros(field, dims[arr.target], dims[arr.source]);
            for (r, m) in ms.iter().enumerate() {
                big.set_block(offsets[r][arr.target], offsets[r][arr.source], &m.maps[a]);
            }
            big
        })
        .collect();
    let name = if ms.is_empty() {
        "0".to_string()
    } else {
        ms.iter()
            .map(|m| m.name.as_str())
            .collect::<Vec<_>>()
            .join("+")
    };
    let rep = Representation::new(name, quiver.clone(), field.clone(), dims, maps)?;
    Ok(DirectSum {
        rep,
        offsets,
        parts: ms.iter().map(|m| m.dims.clone()).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{PrimeField, Rationals};
    use proptest::prelude::*;

    pub(crate) fn a2() -> Quiver {
        Quiver::build("A2", &["1", "2"], &[("a", "1", "2")]).unwrap()
    }
    pub(crate) fn k2() -> Quiver {
        Quiver::build("K2", &["1", "2"], &[("a", "1", "2"), ("b", "1", "2")]).unwrap()
    }
    fn loop_q() -> Quiver {
        Quiver::build("L", &["1"], &[("x", "1", "1")]).unwrap()
    }

    /// Oracle: Hom(M,N) as the solution space of the commutation equations,
    /// counted by brute force over F_2.
    fn brute_hom_count(m: &Representation<PrimeField>, n: &Representation<PrimeField>) -> usize {
        let (offsets, total) = hom_offsets(m, n);
        let mut count = 0;
        for bits in 0u32..(1 << total) {
            let v: Vec<u64> = (0..total).map(|b| ((bits >> b) & 1) as u64).collect();
            let hom = unflatten(m, n, &offsets, &v);
            if m.is_morphism_to(n, &hom) {
                count += 1;
            }
        }
        count
    }

    #[test]
    fn euler_examples() {
        assert_eq!(
            euler_form(&a2(), &DimVector(vec![1, 1]), &DimVector(vec![1, 1])),
            1
        );
        assert_eq!(
            euler_form(&k2(), &DimVector(vec![0, 1]), &DimVector(vec![1, 1])),
            1
        );
        assert_eq!(
            euler_form(&k2(), &DimVector(vec![0, 0]), &DimVector(vec![3, 1])),
            0
        );
    }

    #[test]
    fn hom_ext_examples() {
        let q = Rationals;
        let s1 = Representation::simple(&a2(), &q, 0);
        let s2 = Representation::simple(&a2(), &q, 1);
        assert_eq!(hom_ext_dims(&s1, &s2).unwrap(), (0, 1));

        let m = Representation::from_ints("P1", &k2(), &q, &[1, 2], &[&[1, 0], &[0, 1]]).unwrap();
        assert_eq!(hom_ext_dims(&m, &m).unwrap(), (1, 0));

        let j2 = Representation::from_ints("J2", &loop_q(), &q, &[2], &[&[0, 1, 0, 0]]).unwrap();
        assert_eq!(hom_ext_dims(&j2, &j2).unwrap(), (2, 2));
    }

    #[test]
    fn rigidity_examples() {
        let q = Rationals;
        let m = Representation::from_ints("P1", &k2(), &q, &[1, 2], &[&[1, 0], &[0, 1]]).unwrap();
        let r = rigidity_report(&m);
        assert!(r.rigid && r.exceptional && r.end_dim == 1);

        let p = Representation::from_ints("P1+S2", &a2(), &q, &[1, 2], &[&[1, 0]]).unwrap();
        let r = rigidity_report(&p);
        assert!(r.rigid && !r.exceptional);
        assert_eq!(r.end_dim, 3);

        let j2 = Representation::from_ints("J2", &loop_q(), &q, &[2], &[&[0, 1, 0, 0]]).unwrap();
        let r = rigidity_report(&j2);
        assert!(!r.rigid);
        assert_eq!(r.ext_dim, 2);
    }

    #[test]
    fn direct_sum_examples() {
        let q = Rationals;
        let p1 = Representation::from_ints("P1", &a2(), &q, &[1, 1], &[&[1]]).unwrap();
        let s2 = Representation::simple(&a2(), &q, 1);
        let sum = direct_sum(&a2(), &q, &[p1.clone(), s2]).unwrap();
        assert_eq!(sum.rep.dims(), &DimVector(vec![1, 2]));
        assert_eq!(sum.rep.map(0), &Matrix::from_ints(&q, 2, 1, &[1, 0]));
        assert_eq!(sum.offsets, vec![vec![0, 0], vec![1, 1]]);
        assert_eq!(sum.owner(1, 1), 1);

        let zero = Representation::zero(&a2(), &q);
        let s = direct_sum(&a2(), &q, &[p1.clone(), zero]).unwrap();
        assert_eq!(s.rep.maps(), p1.maps());
    }

    #[test]
    fn shape_validation() {
        let q = Rationals;
        let bad = Representation::new(
            "x",
            a2(),
            q,
            DimVector(vec![1, 2]),
            vec![Matrix::from_ints(&q, 1, 1, &[1])],
        );
        assert!(matches!(bad, Err(RepError::Shape { .. })));
        let m = Representation::simple(&a2(), &q, 0);
        let other = Representation::simple(&k2(), &q, 0);
        assert_eq!(hom_ext_dims(&m, &other), Err(RepError::QuiverMismatch));
    }

    #[test]
    fn delete_leaf_examples() {
        let q = Rationals;
        let p = Representation::from_ints("P1+S2", &a2(), &q, &[1, 2], &[&[1, 0]]).unwrap();
        let d = p.delete_leaf(1).unwrap();
        assert_eq!(d.dims(), &DimVector(vec![1]));
        assert_eq!(d.quiver().arrow_count(), 0);
        assert!(rigidity_report(&d).rigid);
        let m = Representation::from_ints("P1", &k2(), &q, &[1, 2], &[&[1, 0], &[0, 1]]).unwrap();
        assert_eq!(m.delete_leaf(0), Err(RepError::NotLeaf("1".into())));
    }

    #[test]
    fn dim_vector_parsing() {
        let q = a2();
        assert_eq!(DimVector::parse(&q, "2=1").unwrap(), DimVector(vec![0, 1]));
        assert_eq!(
            DimVector::parse(&q, "1=1, 2=2").unwrap().format(&q),
            "1=1,2=2"
        );
        assert!(DimVector::parse(&q, "3=1").is_err());
        assert!(DimVector::parse(&q, "1=x").is_err());
    }

    #[test]
    fn coefficient_quiver_components() {
        let q = Rationals;
        let p = Representation::from_ints("P1+S2", &a2(), &q, &[1, 2], &[&[1, 0]]).unwrap();
        let comps = p.coefficient_quiver().components(2);
        assert_eq!(comps, vec![vec![vec![0], vec![0]], vec![vec![], vec![1]]]);
    }

    fn small_rep(q: Quiver) -> impl Strategy<Value = Representation<PrimeField>> {
        let n = q.vertex_count();
        proptest::collection::vec(0usize..3, n).prop_flat_map(move |dims| {
            let q = q.clone();
            let sizes: Vec<usize> = q
                .arrows()
                .iter()
                .map(|a| dims[a.source] * dims[a.target])
                .collect();
            let total: usize = sizes.iter().sum();
            proptest::collection::vec(0u64..2, total).prop_map(move |entries| {
                let f = PrimeField::new(2).unwrap();
                let mut maps = Vec::new();
                let mut at = 0;
                for a in q.arrows() {
                    let (r, c) = (dims[a.target], dims[a.source]);
                    maps.push(Matrix::new(f, r, c, entries[at..at + r * c].to_vec()));
                    at += r * c;
                }
                Representation::new("r", q.clone(), f, DimVector(dims.clone()), maps).unwrap()
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn hom_minus_ext_is_euler(m in small_rep(k2()), n in small_rep(k2())) {
            let (h, e) = hom_ext_dims(&m, &n).unwrap();
            prop_assert_eq!(h as i64 - e as i64, euler_form(&k2(), m.dims(), n.dims()));
        }

        #[test]
        fn hom_matches_brute_force(m in small_rep(k2()), n in small_rep(k2())) {
            let (h, _) = hom_ext_dims(&m, &n).unwrap();
            prop_assert_eq!(1usize << h, brute_hom_count(&m, &n));
            for f in hom_basis(&m, &n).unwrap() {
                prop_assert!(m.is_morphism_to(&n, &f));
            }
        }

        #[test]
        fn endomorphisms_include_identity(m in small_rep(a2())) {
            if m.total_dim() > 0 {
                prop_assert!(hom_ext_dims(&m, &m).unwrap().0 >= 1);
            }
        }
    }
}
