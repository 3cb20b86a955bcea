//! Reflection functors at sinks and sources.

use super::{DimVector, RepError, Representation};
use crate::linalg::{Field, Matrix};
use crate::quiver::Quiver;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReflectionKind {
    Sink,
    Source,
}

fn kind_at(q: &Quiver, l: usize) -> Result<ReflectionKind, RepError> {
    let has_out = q.out_arrows(l).next().is_some();
    let has_in = q.in_arrows(l).next().is_some();
    match (has_in, has_out) {
        (_, false) => Ok(ReflectionKind::Sink),
        (false, true) => Ok(ReflectionKind::Source),
        (true, true) => Err(RepError::NotSinkOrSource(q.vertex_id(l).to_string())),
    }
}

/// `sigma_l(e)`: at a sink `e_l` becomes `sum_{t(a)=l} e_{s(a)} - e_l`, at a
/// source `sum_{s(a)=l} e_{t(a)} - e_l`.
pub fn sigma(q: &Quiver, l: usize, e: &DimVector) -> Result<DimVector, RepError> {
    let kind = kind_at(q, l)?;
    let neighbours: usize = match kind {
        ReflectionKind::Sink => q.in_arrows(l).map(|a| e[q.arrow(a).source]).sum(),
        ReflectionKind::Source => q.out_arrows(l).map(|a| e[q.arrow(a).target]).sum(),
    };
    let new = neighbours.checked_sub(e[l]).ok_or_else(|| {
        RepError::ReflectionNotApplicable(format!(
            "entry at {} would be {} - {} < 0",
            q.vertex_id(l),
            neighbours,
            e[l]
        ))
    })?;
    let mut out = e.clone();
    out.0[l] = new;
    Ok(out)
}

/// Quiver with every arrow at `l` reversed, ids kept.
fn reverse_at(q: &Quiver, l: usize) -> Quiver {
    let mut out = Quiver::new(q.name());
    for v in q.vertices() {
        out.add_vertex(v).expect("distinct vertices");
    }
    for a in q.arrows() {
        let (s, t) = if a.source == l || a.target == l {
            (a.target, a.source)
        } else {
            (a.source, a.target)
        };
        out.add_arrow_idx(&a.id, s, t).expect("fresh ids");
    }
    out
}

/// Sink construction: the new space at `l` is the kernel of
/// `[M_a1 | ... | M_ak] : (+) M_{s(ai)} -> M_l`, mapped back by projections.
fn reflect_at_sink<F: Field>(
    m: &Representation<F>,
    l: usize,
) -> Result<Representation<F>, RepError> {
    let q = m.quiver();
    let field = m.field();
    let incoming: Vec<usize> = q.in_arrows(l).collect();
    let widths: Vec<usize> = incoming.iter().map(|&a| m.dim(q.arrow(a).source)).collect();
    let total: usize = widths.iter().sum();
    let mut assembled = Matrix::zeros(field, m.dim(l), total);
    let mut at = 0;
    for (&a, &w) in incoming.iter().zip(&widths) {
        assembled.set_block(0, at, m.map(a));
        at += w;
    }
    let kernel = assembled.kernel();
    let basis = kernel.basis().transpose();
    let new_q = reverse_at(q, l);
    let mut dims = m.dims().clone();
    dims.0[l] = kernel.dim();
    let mut maps: Vec<Matrix<F>> = m.maps().to_vec();
    let mut at = 0;
    for (&a, &w) in incoming.iter().zip(&widths) {
        maps[a] = basis.block(at, 0, w, kernel.dim());
        at += w;
    }
    Representation::new(m.name(), new_q, field.clone(), dims, maps)
}

/// Applies the reflection functor at `l` and reflects `e` alongside.
///
/// Sources are handled through duality: dualize, reflect at the (now) sink,
/// dualize back.
pub fn reflect<F: Field>(
    m: &Representation<F>,
    l: usize,
    e: &DimVector,
) -> Result<(Representation<F>, DimVector), RepError> {
    let q = m.quiver();
    let new_e = sigma(q, l, e)?;
    let rep = match kind_at(q, l)? {
        ReflectionKind::Sink => reflect_at_sink(m, l)?,
        ReflectionKind::Source => reflect_at_sink(&m.dual(), l)?.dual(),
    };
    let name = format!("refl_{}({})", q.vertex_id(l), m.name());
    Ok((rep.with_name(name), new_e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Rationals;
    use crate::rep::{euler_form, hom_ext_dims, rigidity_report};

    fn a2() -> Quiver {
        Quiver::build("A2", &["1", "2"], &[("a", "1", "2")]).unwrap()
    }

    #[test]
    fn projective_at_sink() {
        let q = Rationals;
        let p1 = Representation::from_ints("P1", &a2(), &q, &[1, 1], &[&[1]]).unwrap();
        let (r, e) = reflect(&p1, 1, &DimVector(vec![1, 1])).unwrap();
        assert_eq!(r.dims(), &DimVector(vec![1, 0]));
        assert_eq!(e, DimVector(vec![1, 0]));
        let arr = r.quiver().arrow(0);
        assert_eq!((arr.source, arr.target), (1, 0));
    }

    #[test]
    fn simple_at_sink_vanishes() {
        let q = Rationals;
        let s2 = Representation::simple(&a2(), &q, 1);
        let (r, _) = reflect(&s2, 1, &DimVector(vec![0, 0])).unwrap();
        assert_eq!(r.dims(), &DimVector(vec![0, 0]));
    }

    #[test]
    fn sigma_rules() {
        let q = a2();
        assert_eq!(
            sigma(&q, 1, &DimVector(vec![1, 1])).unwrap(),
            DimVector(vec![1, 0])
        );
        assert!(matches!(
            sigma(&q, 1, &DimVector(vec![0, 1])),
            Err(RepError::ReflectionNotApplicable(_))
        ));
        let a3 =
            Quiver::build("A3", &["1", "2", "3"], &[("a", "1", "2"), ("b", "2", "3")]).unwrap();
        assert!(matches!(
            sigma(&a3, 1, &DimVector(vec![0, 0, 0])),
            Err(RepError::NotSinkOrSource(_))
        ));
        for e in [vec![1, 2, 1], vec![0, 1, 1], vec![2, 2, 0]] {
            let e = DimVector(e);
            let once = sigma(&a3, 2, &e).unwrap();
            let flipped = reverse_at(&a3, 2);
            assert_eq!(sigma(&flipped, 2, &once).unwrap(), e);
        }
    }

    #[test]
    fn source_reflection_of_projective() {
        // P(1) reflected at its source collapses to the simple at 2.
        let q = Rationals;
        let p1 = Representation::from_ints("P1", &a2(), &q, &[1, 1], &[&[1]]).unwrap();
        let (r, e) = reflect(&p1, 0, &DimVector(vec![0, 1])).unwrap();
        assert_eq!(r.dims(), &DimVector(vec![0, 1]));
        assert_eq!(e, DimVector(vec![1, 1]));
    }

    #[test]
    fn reflection_preserves_rigidity_on_kronecker() {
        let q = Rationals;
        let k2 = Quiver::build("K2", &["1", "2"], &[("a", "1", "2"), ("b", "1", "2")]).unwrap();
        let m = Representation::from_ints("M", &k2, &q, &[1, 2], &[&[1, 0], &[0, 1]]).unwrap();
        let (r, _) = reflect(&m, 1, &DimVector(vec![0, 0])).unwrap();
        assert_eq!(r.dims(), &DimVector(vec![1, 0]));
        assert!(rigidity_report(&r).exceptional);
        let (h, x) = hom_ext_dims(&r, &r).unwrap();
        assert_eq!(
            h as i64 - x as i64,
            euler_form(r.quiver(), r.dims(), r.dims())
        );
    }
}
