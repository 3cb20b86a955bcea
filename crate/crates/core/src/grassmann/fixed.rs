//! Fixed loci of the two torus actions (scaling summands, scaling graded
//! pieces), their Euler identities, and limits along one-parameter subgroups.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use super::{
    count_subreps, counting_polynomial, for_each_subrep, CountingPolynomial, GrassError,
    SubrepPoint,
};
use crate::covering::{pushdown, Character, GradedRepresentation};
use crate::linalg::{Field, Matrix, Subspace};
use crate::rep::{DimVector, DirectSum, Representation};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Action {
    Summand,
    Grading,
}

impl fmt::Display for Action {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Action::Summand => write!(f, "summand"),
            Action::Grading => write!(f, "grading"),
        }
    }
}

/// Integer weight of every coordinate of every vertex space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Weights {
    pub per_vertex: Vec<Vec<i64>>,
}

/// Coordinates in summand `r` get weight `w[r]`.
pub fn summand_weights<F: Field>(ds: &DirectSum<F>, w: &[i64]) -> Result<Weights, GrassError> {
    if w.len() != ds.parts.len() {
        return Err(GrassError::NonGenericWeights(format!(
            "{} weights for {} summands",
            w.len(),
            ds.parts.len()
        )));
    }
    let occurring: Vec<i64> = (0..w.len())
        .filter(|&r| ds.parts[r].total() > 0)
        .map(|r| w[r])
        .collect();
    let mut sorted = occurring.clone();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != occurring.len() {
        return Err(GrassError::NonGenericWeights(format!(
            "duplicate summand weight in {w:?}"
        )));
    }
    let per_vertex = (0..ds.rep.quiver().vertex_count())
        .map(|i| (0..ds.rep.dim(i)).map(|k| w[ds.owner(i, k)]).collect())
        .collect();
    Ok(Weights { per_vertex })
}

/// `weight(chi) = sum_j lambda_j chi_j` with `lambda_j = B^j` and
/// `B = 1 + 2 max |chi_j|`, which separates all occurring characters.
pub fn grading_weights(characters: &[Vec<Character>]) -> Result<Weights, GrassError> {
    let all: Vec<&Character> = characters.iter().flatten().collect();
    let bound = all.iter().map(|c| c.max_abs()).max().unwrap_or(0);
    let base = 1 + 2 * bound;
    let weight = |c: &Character| -> Option<i64> {
        c.entries().try_fold(0i64, |acc, (a, k)| {
            let lambda = base.checked_pow(u32::try_from(a).ok()?)?;
            acc.checked_add(lambda.checked_mul(k)?)
        })
    };
    let mut seen: HashMap<i64, &Character> = HashMap::new();
    for c in &all {
        let w = weight(c).ok_or_else(|| GrassError::NonGenericWeights("weight overflow".into()))?;
        if let Some(other) = seen.insert(w, c) {
            if other != *c {
                return Err(GrassError::NonGenericWeights(format!(
                    "{other} and {c} share weight {w}"
                )));
            }
        }
    }
    let per_vertex = characters
        .iter()
        .map(|cs| {
            cs.iter()
                .map(|c| weight(c).expect("checked above"))
                .collect()
        })
        .collect();
    Ok(Weights { per_vertex })
}

fn check_point<F: Field>(point: &SubrepPoint<F>, weights: &Weights) -> Result<(), GrassError> {
    if point.spaces.len() != weights.per_vertex.len()
        || point
            .spaces
            .iter()
            .zip(&weights.per_vertex)
            .any(|(u, w)| u.ambient_dim() != w.len())
    {
        return Err(GrassError::BadPoint(
            "ambient dimensions differ from the weights".into(),
        ));
    }
    Ok(())
}

/// Limit as the parameter goes to 0: each basis vector is replaced by its
/// lowest-weight component, taken from an echelon form whose columns are
/// ordered by ascending weight.
pub fn bb_limit<F: Field>(
    point: &SubrepPoint<F>,
    weights: &Weights,
) -> Result<SubrepPoint<F>, GrassError> {
    check_point(point, weights)?;
    let spaces = point
        .spaces
        .iter()
        .zip(&weights.per_vertex)
        .map(|(u, w)| limit_space(u, w))
        .collect();
    Ok(SubrepPoint { spaces })
}

fn limit_space<F: Field>(u: &Subspace<F>, w: &[i64]) -> Subspace<F> {
    let f = u.field();
    let n = w.len();
    let mut perm: Vec<usize> = (0..n).collect();
    perm.sort_by_key(|&c| (w[c], c));
    let mut m = u.basis().select_cols(&perm);
    let pivots = m.row_reduce();
    let mut rows = Matrix::zeros(f, pivots.len(), n);
    for (r, &p) in pivots.iter().enumerate() {
        let lead = w[perm[p]];
        for (j, &c) in perm.iter().enumerate() {
            if w[c] == lead {
                rows[(r, c)] = m[(r, j)].clone();
            }
        }
    }
    Subspace::from_rows(rows)
}

fn block<F: Field>(f: &F, w: &[i64], weight: i64) -> Subspace<F> {
    let rows: Vec<Vec<F::Elem>> = (0..w.len())
        .filter(|&c| w[c] == weight)
        .map(|c| {
            let mut v = vec![f.zero(); w.len()];
            v[c] = f.one();
            v
        })
        .collect();
    Subspace::span(f, w.len(), &rows)
}

fn distinct(w: &[i64]) -> Vec<i64> {
    let mut out = w.to_vec();
    out.sort_unstable();
    out.dedup();
    out
}

/// Whether every vertex space is the sum of its intersections with the
/// weight blocks.
pub fn is_fixed<F: Field>(point: &SubrepPoint<F>, weights: &Weights) -> bool {
    point.spaces.iter().zip(&weights.per_vertex).all(|(u, w)| {
        let total: usize = distinct(w)
            .into_iter()
            .map(|x| {
                u.intersection(&block(u.field(), w, x))
                    .expect("same ambient")
                    .dim()
            })
            .sum();
        total == u.dim()
    })
}

/// Dimension of the intersection with each weight block, per vertex.
fn signature<F: Field>(point: &SubrepPoint<F>, weights: &Weights) -> Vec<Vec<(i64, usize)>> {
    point
        .spaces
        .iter()
        .zip(&weights.per_vertex)
        .map(|(u, w)| {
            distinct(w)
                .into_iter()
                .map(|x| {
                    (
                        x,
                        u.intersection(&block(u.field(), w, x))
                            .expect("same ambient")
                            .dim(),
                    )
                })
                .collect()
        })
        .collect()
}

/// One connected piece of a fixed locus, indexed by how `e` splits.
#[derive(Debug, Clone)]
pub struct FixedComponent {
    pub label: String,
    pub parts: Vec<DimVector>,
    pub factors: Vec<CountingPolynomial>,
    /// Product of the factor polynomials at `q = 1`.
    pub euler: i128,
}

#[derive(Debug, Clone)]
pub struct FixedReport {
    pub action: Action,
    pub components: Vec<FixedComponent>,
    pub ambient: CountingPolynomial,
    pub lhs: i128,
    pub rhs: i128,
}

impl FixedReport {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

impl fmt::Display for FixedReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.components {
            writeln!(f, "split={} count={}", c.label, c.euler)?;
        }
        write!(
            f,
            "total={} poly={}",
            self.lhs,
            self.ambient.coefficient_list()
        )
    }
}

/// All `x <= bound` (componentwise) with entries summing to `total`.
fn compositions(total: usize, bounds: &[usize]) -> Vec<Vec<usize>> {
    fn go(total: usize, bounds: &[usize], acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        match bounds.split_first() {
            None => {
                if total == 0 {
                    out.push(acc.clone());
                }
            }
            Some((&b, rest)) => {
                let room: usize = rest.iter().sum();
                for x in total.saturating_sub(room)..=b.min(total) {
                    acc.push(x);
                    go(total - x, rest, acc, out);
                    acc.pop();
                }
            }
        }
    }
    let mut out = Vec::new();
    go(total, bounds, &mut Vec::new(), &mut out);
    out
}

/// Splittings `e = sum_r e^(r)` with `e^(r) <= d^(r)`.
fn splittings(e: &DimVector, parts: &[DimVector]) -> Vec<Vec<DimVector>> {
    let n = e.len();
    let per_vertex: Vec<Vec<Vec<usize>>> = (0..n)
        .map(|i| compositions(e[i], &parts.iter().map(|d| d[i]).collect::<Vec<_>>()))
        .collect();
    let mut out = Vec::new();
    let mut idx = vec![0usize; n];
    if per_vertex.iter().any(Vec::is_empty) {
        return out;
    }
    loop {
        out.push(
            (0..parts.len())
                .map(|r| DimVector((0..n).map(|i| per_vertex[i][idx[i]][r]).collect()))
                .collect(),
        );
        let mut v = n;
        loop {
            if v == 0 {
                return out;
            }
            v -= 1;
            idx[v] += 1;
            if idx[v] < per_vertex[v].len() {
                break;
            }
            idx[v] = 0;
        }
    }
}

fn summands_of<F: Field>(ds: &DirectSum<F>) -> Vec<Representation<F>> {
    (0..ds.parts.len())
        .map(|r| {
            let keep: Vec<Vec<usize>> = (0..ds.rep.quiver().vertex_count())
                .map(|i| ds.block(r, i).collect())
                .collect();
            ds.rep.restrict_coordinates(&keep)
        })
        .collect()
}

fn split_label(parts: &[DimVector]) -> String {
    parts
        .iter()
        .map(DimVector::to_string)
        .collect::<Vec<_>>()
        .join("+")
}

/// Fixed locus of the summand torus: one product of smaller Grassmannians
/// per splitting. Checks `sum prod P_r(1) = P(1)`.
pub fn summand_fixed_components<F: Field>(
    ds: &DirectSum<F>,
    e: &DimVector,
    primes: &[u64],
) -> Result<FixedReport, GrassError> {
    let ambient = counting_polynomial(&ds.rep, e, primes)?;
    let summands = summands_of(ds);
    let mut cache: HashMap<(usize, DimVector), CountingPolynomial> = HashMap::new();
    let mut components = Vec::new();
    for parts in splittings(e, &ds.parts) {
        let mut factors = Vec::with_capacity(parts.len());
        for (r, er) in parts.iter().enumerate() {
            let key = (r, er.clone());
            if !cache.contains_key(&key) {
                let poly = counting_polynomial(&summands[r], er, primes)?;
                cache.insert(key.clone(), poly);
            }
            factors.push(cache[&key].clone());
        }
        let euler = factors.iter().map(|p| p.eval(1)).product();
        components.push(FixedComponent {
            label: split_label(&parts),
            parts,
            factors,
            euler,
        });
    }
    finish(Action::Summand, components, ambient)
}

fn finish(
    action: Action,
    components: Vec<FixedComponent>,
    ambient: CountingPolynomial,
) -> Result<FixedReport, GrassError> {
    let lhs = components.iter().map(|c| c.euler).sum();
    let rhs = ambient.eval(1);
    if lhs != rhs {
        return Err(GrassError::IdentityFailure { lhs, rhs });
    }
    Ok(FixedReport {
        action,
        components,
        ambient,
        lhs,
        rhs,
    })
}

/// Graded dimension vectors over the support refining `e`, as window vectors.
fn graded_refinements<F: Field>(g: &GradedRepresentation<F>, e: &DimVector) -> Vec<DimVector> {
    let support = g.support();
    let base_n = g.base().vertex_count();
    let mut slots: Vec<Vec<usize>> = vec![Vec::new(); base_n];
    for &k in &support {
        slots[g.window.point(k).0].push(k);
    }
    let per_vertex: Vec<Vec<Vec<usize>>> = (0..base_n)
        .map(|i| {
            compositions(
                e[i],
                &slots[i].iter().map(|&k| g.rep.dim(k)).collect::<Vec<_>>(),
            )
        })
        .collect();
    let window_n = g.window.points().len();
    let mut out = Vec::new();
    if per_vertex.iter().any(Vec::is_empty) {
        return out;
    }
    let mut idx = vec![0usize; base_n];
    loop {
        let mut hat = vec![0usize; window_n];
        for i in 0..base_n {
            for (j, &k) in slots[i].iter().enumerate() {
                hat[k] = per_vertex[i][idx[i]][j];
            }
        }
        out.push(DimVector(hat));
        let mut v = base_n;
        loop {
            if v == 0 {
                return out;
            }
            v -= 1;
            idx[v] += 1;
            if idx[v] < per_vertex[v].len() {
                break;
            }
            idx[v] = 0;
        }
    }
}

fn graded_label<F: Field>(g: &GradedRepresentation<F>, hat: &DimVector) -> String {
    let q = g.window.quiver();
    let parts: Vec<String> = (0..hat.len())
        .filter(|&k| g.rep.dim(k) > 0)
        .map(|k| format!("{}={}", q.vertex_id(k), hat[k]))
        .collect();
    format!("[{}]", parts.join(";"))
}

fn on_support<F: Field>(
    g: &GradedRepresentation<F>,
    hat: &DimVector,
) -> (Representation<F>, DimVector) {
    let (rep, vmap) = g.support_rep();
    let e = DimVector(vmap.iter().map(|&k| hat[k]).collect());
    (rep, e)
}

/// Fixed locus of the grading torus: one graded Grassmannian per graded
/// refinement of `e`. Checks `sum P_hat(1) = P(1)`.
pub fn grading_fixed_components<F: Field>(
    g: &GradedRepresentation<F>,
    e: &DimVector,
    primes: &[u64],
) -> Result<FixedReport, GrassError> {
    let base = pushdown(g).rep;
    let ambient = counting_polynomial(&base, e, primes)?;
    let mut components = Vec::new();
    for hat in graded_refinements(g, e) {
        let (rep, local) = on_support(g, &hat);
        let poly = counting_polynomial(&rep, &local, primes)?;
        components.push(FixedComponent {
            label: graded_label(g, &hat),
            euler: poly.eval(1),
            parts: vec![hat],
            factors: vec![poly],
        });
    }
    finish(Action::Grading, components, ambient)
}

/// Flow of points into fixed components at one finite field.
#[derive(Debug, Clone)]
pub struct PartitionReport {
    pub q: u64,
    pub total: u64,
    /// `(label, component count, points flowing in)`.
    pub components: Vec<(String, u64, u64)>,
    /// Limits that were not closed, not fixed or had the wrong dimensions.
    pub stray: u64,
}

impl PartitionReport {
    pub fn flows_sum_to_total(&self) -> bool {
        self.stray == 0 && self.components.iter().map(|c| c.2).sum::<u64>() == self.total
    }

    /// Every nonzero flow is the component count times a power of `q`.
    pub fn powers_of_q(&self) -> bool {
        self.components.iter().all(|&(_, count, flow)| {
            if flow == 0 {
                return true;
            }
            if count == 0 || flow % count != 0 {
                return false;
            }
            let mut ratio = flow / count;
            while ratio % self.q == 0 {
                ratio /= self.q;
            }
            ratio == 1
        })
    }

    pub fn passed(&self) -> bool {
        self.flows_sum_to_total() && self.powers_of_q()
    }
}

impl fmt::Display for PartitionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (label, count, flow) in &self.components {
            writeln!(f, "split={label} count={count} flow={flow}")?;
        }
        write!(
            f,
            "q={} total={} stray={} partition={} powers={}",
            self.q,
            self.total,
            self.stray,
            self.flows_sum_to_total(),
            self.powers_of_q()
        )
    }
}

fn tally<F: Field>(
    m: &Representation<F>,
    e: &DimVector,
    weights: &Weights,
    components: Vec<(Vec<Vec<(i64, usize)>>, String, u64)>,
) -> Result<PartitionReport, GrassError> {
    let q = m.field().order().ok_or(GrassError::InfiniteField)?;
    let mut index: BTreeMap<Vec<Vec<(i64, usize)>>, usize> = BTreeMap::new();
    for (k, c) in components.iter().enumerate() {
        index.insert(c.0.clone(), k);
    }
    let mut flows = vec![0u64; components.len()];
    let mut total = 0;
    let mut stray = 0;
    let mut failure = None;
    for_each_subrep(m, e, &mut |p| {
        total += 1;
        match bb_limit(p, weights) {
            Ok(lim) => {
                let sig = signature(&lim, weights);
                let ok = lim.dims() == *e && lim.is_closed(m) && is_fixed(&lim, weights);
                match index.get(&sig) {
                    Some(&k) if ok => flows[k] += 1,
                    _ => stray += 1,
                }
            }
            Err(err) => failure = Some(err),
        }
    })?;
    if let Some(err) = failure {
        return Err(err);
    }
    Ok(PartitionReport {
        q,
        total,
        components: components
            .into_iter()
            .zip(flows)
            .map(|((_, label, count), flow)| (label, count, flow))
            .collect(),
        stray,
    })
}

/// Limits for the summand torus with weights `w`, tallied per splitting.
pub fn bb_partition_summand<F: Field>(
    ds: &DirectSum<F>,
    e: &DimVector,
    w: &[i64],
) -> Result<PartitionReport, GrassError> {
    let weights = summand_weights(ds, w)?;
    let summands = summands_of(ds);
    let mut components = Vec::new();
    for parts in splittings(e, &ds.parts) {
        let mut count = 1u64;
        for (r, er) in parts.iter().enumerate() {
            count *= count_subreps(&summands[r], er)?;
        }
        let sig: Vec<Vec<(i64, usize)>> = (0..e.len())
            .map(|i| {
                let mut s: BTreeMap<i64, usize> = BTreeMap::new();
                for (r, er) in parts.iter().enumerate() {
                    if ds.parts[r][i] > 0 {
                        *s.entry(w[r]).or_insert(0) += er[i];
                    }
                }
                s.into_iter().collect()
            })
            .collect();
        components.push((sig, split_label(&parts), count));
    }
    tally(&ds.rep, e, &weights, components)
}

/// Limits for the grading torus, tallied per graded refinement.
pub fn bb_partition_grading<F: Field>(
    g: &GradedRepresentation<F>,
    e: &DimVector,
) -> Result<PartitionReport, GrassError> {
    let push = pushdown(g);
    let weights = grading_weights(&push.characters)?;
    let mut components = Vec::new();
    for hat in graded_refinements(g, e) {
        let (rep, local) = on_support(g, &hat);
        let count = count_subreps(&rep, &local)?;
        let sig: Vec<Vec<(i64, usize)>> = (0..e.len())
            .map(|i| {
                let mut s: BTreeMap<i64, usize> = BTreeMap::new();
                for &(k, offset, _) in &push.pieces[i] {
                    *s.entry(weights.per_vertex[i][offset]).or_insert(0) += hat[k];
                }
                s.into_iter().collect()
            })
            .collect();
        components.push((sig, graded_label(g, &hat), count));
    }
    tally(&push.rep, e, &weights, components)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::covering::lift_from_coefficient_quiver;
    use crate::linalg::{PrimeField, Rationals};
    use crate::quiver::Quiver;
    use crate::rep::direct_sum;

    fn a2() -> Quiver {
        Quiver::build("A2", &["1", "2"], &[("a", "1", "2")]).unwrap()
    }
    fn k2() -> Quiver {
        Quiver::build("K2", &["1", "2"], &[("a", "1", "2"), ("b", "1", "2")]).unwrap()
    }
    fn p1_s2<F: Field>(f: &F) -> DirectSum<F> {
        let p1 = Representation::from_ints("P1", &a2(), f, &[1, 1], &[&[1]]).unwrap();
        let s2 = Representation::simple(&a2(), f, 1);
        direct_sum(&a2(), f, &[p1, s2]).unwrap()
    }
    fn kron<F: Field>(f: &F) -> Representation<F> {
        Representation::from_ints("K", &k2(), f, &[1, 2], &[&[1, 0], &[0, 1]]).unwrap()
    }

    #[test]
    fn compositions_enumerate_boxes() {
        assert_eq!(compositions(2, &[1, 2]), vec![vec![0, 2], vec![1, 1]]);
        assert!(compositions(4, &[1, 2]).is_empty());
        assert_eq!(compositions(0, &[]), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn summand_identity_examples() {
        let ds = p1_s2(&Rationals);
        let r = summand_fixed_components(&ds, &DimVector(vec![1, 1]), &[2, 3, 5]).unwrap();
        let got: Vec<(String, i128)> = r
            .components
            .iter()
            .map(|c| (c.label.clone(), c.euler))
            .collect();
        assert_eq!(
            got,
            vec![
                ("(1,0)+(0,1)".to_string(), 0),
                ("(1,1)+(0,0)".to_string(), 1)
            ]
        );
        assert_eq!((r.lhs, r.rhs), (1, 1));

        let k = kron(&Rationals);
        let ds = direct_sum(&k2(), &Rationals, &[k.clone(), k]).unwrap();
        let r = summand_fixed_components(&ds, &DimVector(vec![0, 1]), &[2, 3, 5, 7, 11]).unwrap();
        assert_eq!(r.components.len(), 2);
        assert!(r
            .components
            .iter()
            .all(|c| c.factors.iter().any(|p| p.coeffs == vec![1, 1])));
        assert_eq!((r.lhs, r.rhs), (4, 4));
        assert_eq!(r.ambient.coeffs, vec![1, 1, 1, 1]);

        let r = summand_fixed_components(&ds, &DimVector(vec![0, 0]), &[2, 3, 5]).unwrap();
        assert_eq!(r.components.len(), 1);
        assert_eq!(r.lhs, 1);
    }

    #[test]
    fn grading_identity_examples() {
        let g = lift_from_coefficient_quiver(&kron(&Rationals))
            .unwrap()
            .graded;
        let r = grading_fixed_components(&g, &DimVector(vec![0, 1]), &[2, 3, 5]).unwrap();
        assert_eq!(r.components.len(), 2);
        assert!(r.components.iter().all(|c| c.euler == 1));
        assert_eq!((r.lhs, r.rhs), (2, 2));

        let r = grading_fixed_components(&g, &DimVector(vec![1, 1]), &[2, 3, 5]).unwrap();
        assert_eq!((r.lhs, r.rhs), (0, 0));

        let r = grading_fixed_components(&g, &DimVector(vec![1, 2]), &[2, 3, 5]).unwrap();
        assert_eq!(r.components.len(), 1);
        assert_eq!(r.lhs, 1);
    }

    #[test]
    fn bb_limit_examples() {
        let f = PrimeField::new(3).unwrap();
        let ds = p1_s2(&f);
        let u = SubrepPoint {
            spaces: vec![Subspace::zero(&f, 1), Subspace::span(&f, 2, &[vec![1, 1]])],
        };
        let low = summand_weights(&ds, &[0, 1]).unwrap();
        let lim = bb_limit(&u, &low).unwrap();
        assert_eq!(lim.spaces[1], Subspace::span(&f, 2, &[vec![1, 0]]));
        let high = summand_weights(&ds, &[1, 0]).unwrap();
        let lim2 = bb_limit(&u, &high).unwrap();
        assert_eq!(lim2.spaces[1], Subspace::span(&f, 2, &[vec![0, 1]]));
        assert_eq!(bb_limit(&lim, &low).unwrap(), lim);
        assert!(is_fixed(&lim, &low) && !is_fixed(&u, &low));
        assert!(matches!(
            summand_weights(&ds, &[2, 2]),
            Err(GrassError::NonGenericWeights(_))
        ));
    }

    #[test]
    fn partitions_on_small_cases() {
        for p in [2, 3] {
            let f = PrimeField::new(p).unwrap();
            let ds = p1_s2(&f);
            for e in [vec![0, 1], vec![1, 1], vec![1, 2], vec![0, 2]] {
                let r = bb_partition_summand(&ds, &DimVector(e), &[0, 1]).unwrap();
                assert!(r.passed(), "{r}");
            }
            let k = kron(&f);
            let ds = direct_sum(&k2(), &f, &[k.clone(), k.clone()]).unwrap();
            let r = bb_partition_summand(&ds, &DimVector(vec![0, 1]), &[0, 1]).unwrap();
            assert!(r.passed(), "{r}");
            assert_eq!(r.total, (p.pow(4) - 1) / (p - 1));

            let g = lift_from_coefficient_quiver(&k).unwrap().graded;
            for e in [vec![0, 1], vec![1, 2], vec![0, 2]] {
                let r = bb_partition_grading(&g, &DimVector(e)).unwrap();
                assert!(r.passed(), "{r}");
            }
        }
    }
}
