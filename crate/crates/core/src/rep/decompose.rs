//! Krull-Schmidt splitting by Fitting's lemma.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{direct_sum, hom_basis, hom_ext_dims, Morphism, RepError, Representation};
use crate::linalg::{Field, Matrix, Subspace};

/// An indecomposable summand and how often it occurs.
#[derive(Debug, Clone)]
pub struct Summand<F: Field> {
    pub rep: Representation<F>,
    pub multiplicity: usize,
}

#[derive(Debug, Clone, Copy)]
pub struct DecomposeOptions {
    pub seed: u64,
    pub max_dim: usize,
    /// Trials per unit of dimension.
    pub trials_per_dim: usize,
}

impl Default for DecomposeOptions {
    fn default() -> Self {
        Self {
            seed: 0,
            max_dim: 64,
            trials_per_dim: 64,
        }
    }
}

pub fn decompose<F: Field>(m: &Representation<F>, seed: u64) -> Result<Vec<Summand<F>>, RepError> {
    decompose_with(
        m,
        DecomposeOptions {
            seed,
            ..Default::default()
        },
    )
}

pub fn decompose_with<F: Field>(
    m: &Representation<F>,
    opts: DecomposeOptions,
) -> Result<Vec<Summand<F>>, RepError> {
    let total = m.total_dim();
    if total > opts.max_dim {
        return Err(RepError::TooLarge {
            dim: total,
            bound: opts.max_dim,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut pending = vec![m.clone()];
    let mut done: Vec<Representation<F>> = Vec::new();
    while let Some(rep) = pending.pop() {
        if rep.total_dim() == 0 {
            continue;
        }
        let comps = rep
            .coefficient_quiver()
            .components(rep.quiver().vertex_count());
        if comps.len() > 1 {
            pending.extend(
                comps
                    .iter()
                    .rev()
                    .map(|keep| rep.restrict_coordinates(keep)),
            );
            continue;
        }
        match split_once(&rep, opts, &mut rng)? {
            Some((a, b)) => {
                pending.push(b);
                pending.push(a);
            }
            None => done.push(rep),
        }
    }
    let mut summands: Vec<Summand<F>> = Vec::new();
    for rep in done {
        let mut merged = false;
        for s in summands.iter_mut() {
            if find_isomorphism(&s.rep, &rep, &mut rng).is_some() {
                s.multiplicity += 1;
                merged = true;
                break;
            }
        }
        if !merged {
            summands.push(Summand {
                rep,
                multiplicity: 1,
            });
        }
    }
    for (r, s) in summands.iter_mut().enumerate() {
        let name = format!("{}#{}", m.name(), r + 1);
        s.rep = s.rep.clone().with_name(name);
    }
    Ok(summands)
}

/// Expands summands with multiplicities into the list fed to `direct_sum`.
pub fn expand<F: Field>(summands: &[Summand<F>]) -> Vec<Representation<F>> {
    summands
        .iter()
        .flat_map(|s| std::iter::repeat_n(s.rep.clone(), s.multiplicity))
        .collect()
}

/// Searches `Hom(M, N)` for an invertible element.
pub fn find_isomorphism<F: Field, R: Rng>(
    m: &Representation<F>,
    n: &Representation<F>,
    rng: &mut R,
) -> Option<Morphism<F>> {
    if m.dims() != n.dims() {
        return None;
    }
    let basis = hom_basis(m, n).ok()?;
    if basis.is_empty() {
        return None;
    }
    let (h_mn, _) = hom_ext_dims(m, n).ok()?;
    let (h_nm, _) = hom_ext_dims(n, m).ok()?;
    let (h_mm, _) = hom_ext_dims(m, m).ok()?;
    if h_mn != h_nm || h_mn != h_mm {
        return None;
    }
    let candidates = basis
        .iter()
        .cloned()
        .chain((0..32).map(|_| random_combination(m.field(), &basis, rng)));
    candidates
        .into_iter()
        .find(|f| f.iter().all(Matrix::is_invertible))
}

fn random_combination<F: Field, R: Rng>(
    field: &F,
    basis: &[Morphism<F>],
    rng: &mut R,
) -> Morphism<F> {
    let mut acc: Morphism<F> = basis[0]
        .iter()
        .map(|m| Matrix::zeros(field, m.rows(), m.cols()))
        .collect();
    for b in basis {
        let c = field.random(rng, 3);
        if field.is_zero(&c) {
            continue;
        }
        for (a, m) in acc.iter_mut().zip(b) {
            *a = a.add(&m.scale(&c));
        }
    }
    acc
}

fn compose<F: Field>(f: &Morphism<F>, g: &Morphism<F>) -> Morphism<F> {
    f.iter().zip(g).map(|(a, b)| a.mul(b)).collect()
}

fn flatten<F: Field>(f: &Morphism<F>) -> Vec<F::Elem> {
    f.iter().flat_map(|m| m.entries().iter().cloned()).collect()
}

fn trace<F: Field>(field: &F, f: &Morphism<F>) -> F::Elem {
    let mut t = field.zero();
    for m in f {
        for i in 0..m.rows() {
            t = field.add(&t, &m[(i, i)]);
        }
    }
    t
}

/// Certifies that `End(M)` is local: the radical of the trace form is a
/// nilpotent two-sided ideal of codimension one.
fn certify_local<F: Field>(field: &F, basis: &[Morphism<F>]) -> bool {
    let k = basis.len();
    if k == 1 {
        return true;
    }
    let mut gram = Matrix::zeros(field, k, k);
    for i in 0..k {
        for j in 0..k {
            gram[(i, j)] = trace(field, &compose(&basis[i], &basis[j]));
        }
    }
    let radical = gram.kernel();
    if radical.dim() + 1 != k {
        return false;
    }
    let elements: Vec<Morphism<F>> = (0..radical.dim())
        .map(|r| combine(field, basis, radical.row(r)))
        .collect();
    let width = flatten(&basis[0]).len();
    let span = Subspace::span(
        field,
        width,
        &elements.iter().map(flatten).collect::<Vec<_>>(),
    );
    for x in &elements {
        for b in basis {
            if !span.contains(&flatten(&compose(x, b))) || !span.contains(&flatten(&compose(b, x)))
            {
                return false;
            }
        }
    }
    // Powers R, R^2, ... must reach zero.
    let mut power = elements.clone();
    for _ in 0..=width {
        let products: Vec<Morphism<F>> = power
            .iter()
            .flat_map(|p| elements.iter().map(move |x| compose(p, x)))
            .collect();
        let sp = Subspace::span(
            field,
            width,
            &products.iter().map(flatten).collect::<Vec<_>>(),
        );
        if sp.is_zero() {
            return true;
        }
        power = (0..sp.dim())
            .map(|r| unflatten_like(field, &basis[0], sp.row(r)))
            .collect();
    }
    false
}

fn combine<F: Field>(field: &F, basis: &[Morphism<F>], coeffs: &[F::Elem]) -> Morphism<F> {
    let mut acc: Morphism<F> = basis[0]
        .iter()
        .map(|m| Matrix::zeros(field, m.rows(), m.cols()))
        .collect();
    for (b, c) in basis.iter().zip(coeffs) {
        if field.is_zero(c) {
            continue;
        }
        for (a, m) in acc.iter_mut().zip(b) {
            *a = a.add(&m.scale(c));
        }
    }
    acc
}

fn unflatten_like<F: Field>(field: &F, shape: &Morphism<F>, v: &[F::Elem]) -> Morphism<F> {
    let mut at = 0;
    shape
        .iter()
        .map(|m| {
            let n = m.rows() * m.cols();
            let out = Matrix::new(field.clone(), m.rows(), m.cols(), v[at..at + n].to_vec());
            at += n;
            out
        })
        .collect()
}

fn shifts<F: Field>(field: &F) -> Vec<F::Elem> {
    match field.order() {
        Some(p) if p <= 13 => (0..p).map(|i| field.element(i)).collect(),
        _ => [0, 1, -1, 2, -2, 3, -3]
            .iter()
            .map(|&x| field.from_int(x))
            .collect(),
    }
}

/// Tries to split `rep` into two nonzero summands.
fn split_once<F: Field>(
    rep: &Representation<F>,
    opts: DecomposeOptions,
    rng: &mut ChaCha8Rng,
) -> Result<Option<(Representation<F>, Representation<F>)>, RepError> {
    let field = rep.field().clone();
    let basis = hom_basis(rep, rep)?;
    if certify_local(&field, &basis) {
        return Ok(None);
    }
    let budget = opts.trials_per_dim * rep.total_dim();
    let lambdas = shifts(&field);
    let k = basis.len();
    let mut trial = 0;
    while trial < budget {
        let f = if trial < k {
            basis[trial].clone()
        } else if trial < k + k * k {
            let t = trial - k;
            compose(&basis[t / k], &basis[t % k])
        } else {
            random_combination(&field, &basis, rng)
        };
        trial += 1;
        for lambda in &lambdas {
            if let Some(parts) = fitting_split(rep, &f, lambda)? {
                return Ok(Some(parts));
            }
        }
    }
    Err(RepError::BudgetExhausted {
        trials: budget,
        dim: rep.total_dim(),
    })
}

/// Splits along `ker g^D (+) im g^D` for `g = f - lambda`, if that is proper.
fn fitting_split<F: Field>(
    rep: &Representation<F>,
    f: &Morphism<F>,
    lambda: &F::Elem,
) -> Result<Option<(Representation<F>, Representation<F>)>, RepError> {
    let field = rep.field();
    let n = rep.quiver().vertex_count();
    let mut kernels = Vec::with_capacity(n);
    let mut images = Vec::with_capacity(n);
    let mut ker_total = 0;
    for (i, fi) in f.iter().enumerate() {
        let d = rep.dim(i);
        let g = fi.add(&Matrix::identity(field, d).scale(&field.neg(lambda)));
        let gd = g.pow(d.max(1));
        let ker = gd.kernel();
        let im = gd.column_space();
        ker_total += ker.dim();
        kernels.push(ker);
        images.push(im);
    }
    if ker_total == 0 || ker_total == rep.total_dim() {
        return Ok(None);
    }
    let mut new_basis = Vec::with_capacity(n);
    let mut first = Vec::with_capacity(n);
    let mut second = Vec::with_capacity(n);
    for i in 0..n {
        let stacked = kernels[i].basis().vstack(&images[i].basis());
        new_basis.push(stacked.transpose());
        let kd = kernels[i].dim();
        first.push((0..kd).collect::<Vec<_>>());
        second.push((kd..rep.dim(i)).collect::<Vec<_>>());
    }
    let moved = rep.change_basis(&new_basis)?;
    Ok(Some((
        moved.restrict_coordinates(&first),
        moved.restrict_coordinates(&second),
    )))
}

/// Reassembles the summands and compares Hom/Ext against `probes`.
pub fn reassembly_matches<F: Field>(
    m: &Representation<F>,
    summands: &[Summand<F>],
    probes: &[Representation<F>],
) -> Result<bool, RepError> {
    let sum = direct_sum(m.quiver(), m.field(), &expand(summands))?;
    if sum.rep.dims() != m.dims() {
        return Ok(false);
    }
    for p in probes.iter().chain(std::iter::once(m)) {
        if hom_ext_dims(m, p)? != hom_ext_dims(&sum.rep, p)?
            || hom_ext_dims(p, m)? != hom_ext_dims(p, &sum.rep)?
        {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{PrimeField, Rationals};
    use crate::quiver::Quiver;
    use crate::rep::{rigidity_report, DimVector};

    fn a2() -> Quiver {
        Quiver::build("A2", &["1", "2"], &[("a", "1", "2")]).unwrap()
    }
    fn k2() -> Quiver {
        Quiver::build("K2", &["1", "2"], &[("a", "1", "2"), ("b", "1", "2")]).unwrap()
    }

    #[test]
    fn splits_projective_plus_simple() {
        let q = Rationals;
        let m = Representation::from_ints("M", &a2(), &q, &[1, 2], &[&[1, 0]]).unwrap();
        let s = decompose(&m, 7).unwrap();
        let mut dims: Vec<DimVector> = s.iter().map(|x| x.rep.dims().clone()).collect();
        dims.sort();
        assert_eq!(dims, vec![DimVector(vec![0, 1]), DimVector(vec![1, 1])]);
        assert!(reassembly_matches(&m, &s, &[]).unwrap());
    }

    #[test]
    fn mixed_basis_still_splits() {
        // P(1) + S(2) written in a basis where the coefficient quiver is connected.
        let q = Rationals;
        let m = Representation::from_ints("M", &a2(), &q, &[1, 2], &[&[1, 1]]).unwrap();
        let m = m
            .change_basis(&[
                Matrix::identity(&q, 1),
                Matrix::from_ints(&q, 2, 2, &[1, 1, 0, 1]),
            ])
            .unwrap();
        let s = decompose(&m, 1).unwrap();
        assert_eq!(s.len(), 2);
        for x in &s {
            assert!(rigidity_report(&x.rep).exceptional);
        }
    }

    #[test]
    fn simple_and_jordan_block_are_indecomposable() {
        let q = Rationals;
        let s = decompose(&Representation::simple(&a2(), &q, 0), 0).unwrap();
        assert_eq!((s.len(), s[0].multiplicity), (1, 1));

        let l = Quiver::build("L", &["1"], &[("x", "1", "1")]).unwrap();
        let j2 = Representation::from_ints("J2", &l, &q, &[2], &[&[0, 1, 0, 0]]).unwrap();
        let s = decompose(&j2, 0).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s[0].rep.dims(), &DimVector(vec![2]));
    }

    #[test]
    fn multiplicities_are_grouped() {
        let f = PrimeField::new(3).unwrap();
        let p = Representation::from_ints("P", &k2(), &f, &[1, 2], &[&[1, 0], &[0, 1]]).unwrap();
        let sum = direct_sum(&k2(), &f, &[p.clone(), p.clone()]).unwrap().rep;
        // Mix the two copies so the coefficient quiver does not split them.
        let mix = Matrix::from_ints(&f, 4, 4, &[1, 0, 1, 0, 0, 1, 0, 1, 0, 0, 1, 0, 0, 0, 0, 1]);
        let mixed = sum
            .change_basis(&[Matrix::from_ints(&f, 2, 2, &[1, 1, 0, 1]), mix])
            .unwrap();
        let s = decompose(&mixed, 3).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s[0].multiplicity, 2);
        assert!(reassembly_matches(&mixed, &s, &[p]).unwrap());
    }

    #[test]
    fn deterministic_given_seed() {
        let q = Rationals;
        let m = Representation::from_ints("M", &a2(), &q, &[2, 3], &[&[1, 0, 0, 1, 1, 1]]).unwrap();
        let a: Vec<_> = decompose(&m, 5)
            .unwrap()
            .into_iter()
            .map(|s| s.rep)
            .collect();
        let b: Vec<_> = decompose(&m, 5)
            .unwrap()
            .into_iter()
            .map(|s| s.rep)
            .collect();
        assert_eq!(a, b);
    }

    #[test]
    fn respects_size_bound() {
        let q = Rationals;
        let m = Representation::from_ints("M", &a2(), &q, &[1, 2], &[&[1, 0]]).unwrap();
        let opts = DecomposeOptions {
            max_dim: 2,
            ..Default::default()
        };
        assert!(matches!(
            decompose_with(&m, opts),
            Err(RepError::TooLarge { .. })
        ));
    }
}
