//! Points of quiver Grassmannians over finite fields, counting polynomials,
//! torus fixed loci and Bialynicki-Birula limits.

mod fixed;

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::covering::CoverError;
use crate::linalg::{
    enumerate_subspaces, primes_avoiding, Field, LinalgError, Matrix, PrimeField, Subspace,
};
use crate::rep::{euler_form, rigidity_report, DimVector, RepError, Representation};

pub use fixed::{
    bb_limit, bb_partition_grading, bb_partition_summand, grading_fixed_components,
    grading_weights, is_fixed, summand_fixed_components, summand_weights, Action, FixedComponent,
    FixedReport, PartitionReport, Weights,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GrassError {
    #[error("point enumeration needs a finite field")]
    InfiniteField,
    #[error("dimension vector {e} exceeds {d}")]
    ExceedsDims { e: String, d: String },
    #[error("not polynomial-count on sampled primes: predicted {predicted} at q={prime}, counted {actual}")]
    NotPolynomial {
        prime: u64,
        predicted: String,
        actual: u64,
    },
    #[error("interpolated coefficients are not integers: {0}")]
    NonInteger(String),
    #[error("expected degree {expected} but interpolated degree {found}")]
    DegreeMismatch { expected: i64, found: usize },
    #[error("leading coefficient is {0}, expected 1 for a rigid representation")]
    LeadingCoefficient(i128),
    #[error("nonempty Grassmannian with negative expected dimension {0}")]
    NegativeDegree(i64),
    #[error("counting polynomials need a representation over Q, not F{0}")]
    FiniteInput(u64),
    #[error("need at least {needed} primes, got {got}")]
    TooFewPrimes { needed: usize, got: usize },
    #[error("Euler identity fails: components give {lhs}, ambient gives {rhs}")]
    IdentityFailure { lhs: i128, rhs: i128 },
    #[error("weights are not generic: {0}")]
    NonGenericWeights(String),
    #[error("point does not belong to the acted representation: {0}")]
    BadPoint(String),
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Cover(#[from] CoverError),
}

/// A subrepresentation, one subspace per vertex.
#[derive(Debug, Clone)]
pub struct SubrepPoint<F: Field> {
    pub spaces: Vec<Subspace<F>>,
}

impl<F: Field> PartialEq for SubrepPoint<F> {
    fn eq(&self, other: &Self) -> bool {
        self.spaces == other.spaces
    }
}
impl<F: Field> Eq for SubrepPoint<F> {}
impl<F: Field> std::hash::Hash for SubrepPoint<F> {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.spaces.hash(state);
    }
}
impl<F: Field> PartialOrd for SubrepPoint<F> {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl<F: Field> Ord for SubrepPoint<F> {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.spaces.cmp(&other.spaces)
    }
}

impl<F: Field> SubrepPoint<F> {
    pub fn dims(&self) -> DimVector {
        DimVector(self.spaces.iter().map(Subspace::dim).collect())
    }

    /// `M_a(U_{s(a)}) <= U_{t(a)}` for every arrow.
    pub fn is_closed(&self, m: &Representation<F>) -> bool {
        m.quiver().arrows().iter().enumerate().all(|(a, arr)| {
            let image = self.spaces[arr.source].image(m.map(a));
            self.spaces[arr.target].contains_subspace(&image)
        })
    }

    pub fn format(&self, m: &Representation<F>) -> String {
        let f = m.field();
        self.spaces
            .iter()
            .enumerate()
            .map(|(i, u)| {
                let rows: Vec<String> = (0..u.dim())
                    .map(|r| {
                        let v: Vec<String> = u.row(r).iter().map(|x| f.format_elem(x)).collect();
                        format!("[{}]", v.join(" "))
                    })
                    .collect();
                format!("{}:<{}>", m.quiver().vertex_id(i), rows.join(","))
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

fn check_dims<F: Field>(m: &Representation<F>, e: &DimVector) -> Result<(), GrassError> {
    if m.field().order().is_none() {
        return Err(GrassError::InfiniteField);
    }
    if !e.le(m.dims()) {
        return Err(GrassError::ExceedsDims {
            e: e.to_string(),
            d: m.dims().to_string(),
        });
    }
    Ok(())
}

/// Visits every subrepresentation of dimension vector `e`, in a fixed order.
///
/// Vertices are processed by increasing in-degree. At each vertex the
/// candidates are the subspaces squeezed between the images from chosen
/// predecessors and the preimages of chosen successors; loops are checked
/// once the space at their vertex is fixed.
pub fn for_each_subrep<F: Field>(
    m: &Representation<F>,
    e: &DimVector,
    visit: &mut dyn FnMut(&SubrepPoint<F>),
) -> Result<(), GrassError> {
    check_dims(m, e)?;
    let q = m.quiver();
    let n = q.vertex_count();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| q.in_arrows(v).count());
    let mut chosen: Vec<Option<Subspace<F>>> = vec![None; n];
    descend(m, e, &order, 0, &mut chosen, visit)
}

fn descend<F: Field>(
    m: &Representation<F>,
    e: &DimVector,
    order: &[usize],
    level: usize,
    chosen: &mut Vec<Option<Subspace<F>>>,
    visit: &mut dyn FnMut(&SubrepPoint<F>),
) -> Result<(), GrassError> {
    if level == order.len() {
        let spaces = chosen
            .iter()
            .map(|u| u.clone().expect("all chosen"))
            .collect();
        visit(&SubrepPoint { spaces });
        return Ok(());
    }
    let q = m.quiver();
    let f = m.field();
    let i = order[level];
    let d = m.dim(i);
    let mut lower = Subspace::zero(f, d);
    let mut upper = Subspace::full(f, d);
    let mut loops = Vec::new();
    for (a, arr) in q.arrows().iter().enumerate() {
        if arr.source == i && arr.target == i {
            loops.push(a);
        } else if arr.target == i {
            if let Some(u) = &chosen[arr.source] {
                lower = lower.sum(&u.image(m.map(a)))?;
            }
        } else if arr.source == i {
            if let Some(u) = &chosen[arr.target] {
                upper = upper.intersection(&u.preimage(m.map(a)))?;
            }
        }
    }
    if lower.dim() > e[i] || upper.dim() < e[i] || !upper.contains_subspace(&lower) {
        return Ok(());
    }
    // Extend a basis of `lower` to one of `upper`.
    let mut complement: Vec<Vec<F::Elem>> = Vec::new();
    let mut acc = lower.clone();
    for r in 0..upper.dim() {
        let v = upper.row(r);
        if !acc.contains(v) {
            complement.push(v.to_vec());
            acc = acc.sum(&Subspace::span(f, d, &[v.to_vec()]))?;
        }
    }
    let cmat = Matrix::from_rows(f, d, complement.clone());
    for v in enumerate_subspaces(f, complement.len(), e[i] - lower.dim())? {
        let lifted = v.basis().mul(&cmat);
        let w = Subspace::from_rows(lower.basis().vstack(&lifted));
        if loops
            .iter()
            .any(|&a| !w.contains_subspace(&w.image(m.map(a))))
        {
            continue;
        }
        chosen[i] = Some(w);
        descend(m, e, order, level + 1, chosen, visit)?;
        chosen[i] = None;
    }
    Ok(())
}

pub fn enumerate_subreps<F: Field>(
    m: &Representation<F>,
    e: &DimVector,
) -> Result<Vec<SubrepPoint<F>>, GrassError> {
    let mut out = Vec::new();
    for_each_subrep(m, e, &mut |p| out.push(p.clone()))?;
    Ok(out)
}

pub fn count_subreps<F: Field>(m: &Representation<F>, e: &DimVector) -> Result<u64, GrassError> {
    let mut n = 0u64;
    for_each_subrep(m, e, &mut |_| n += 1)?;
    Ok(n)
}

/// Integer polynomial in `q`, coefficients in ascending degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountingPolynomial {
    pub coeffs: Vec<i128>,
    /// `(prime, count)` samples; the last one was held out for verification.
    pub samples: Vec<(u64, u64)>,
}

impl CountingPolynomial {
    pub fn constant(c: i128) -> Self {
        let mut p = Self {
            coeffs: vec![c],
            samples: Vec::new(),
        };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> i128 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn eval(&self, q: i128) -> i128 {
        self.coeffs.iter().rev().fold(0, |acc, c| acc * q + c)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Self::constant(0);
        }
        let mut coeffs = vec![0i128; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        let mut p = Self {
            coeffs,
            samples: Vec::new(),
        };
        p.trim();
        p
    }

    /// `c0,c1,...` (`0` for the zero polynomial).
    pub fn coefficient_list(&self) -> String {
        if self.coeffs.is_empty() {
            return "0".into();
        }
        self.coeffs
            .iter()
            .map(i128::to_string)
            .collect::<Vec<_>>()
            .join(",")
    }
}

impl fmt::Display for CountingPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut terms = Vec::new();
        for (k, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let mono = match k {
                0 => String::new(),
                1 => "q".into(),
                _ => format!("q^{k}"),
            };
            terms.push(match (c, k) {
                (c, 0) => c.to_string(),
                (1, _) => mono,
                (-1, _) => format!("-{mono}"),
                (c, _) => format!("{c}{mono}"),
            });
        }
        write!(f, "{}", terms.join(" + ").replace("+ -", "- "))
    }
}

/// Lagrange interpolation through `(x, y)` with exact rationals.
fn interpolate(points: &[(u64, u64)]) -> Vec<BigRational> {
    let n = points.len();
    let mut coeffs = vec![BigRational::zero(); n];
    for (j, &(xj, yj)) in points.iter().enumerate() {
        // Basis polynomial prod_{m != j} (x - x_m) / (x_j - x_m).
        let mut basis = vec![BigRational::one()];
        let mut denom = BigRational::one();
        for (m, &(xm, _)) in points.iter().enumerate() {
            if m == j {
                continue;
            }
            let xm = BigRational::from_integer(BigInt::from(xm));
            let mut next = vec![BigRational::zero(); basis.len() + 1];
            for (k, b) in basis.iter().enumerate() {
                next[k + 1] += b;
                next[k] -= b * &xm;
            }
            basis = next;
            denom *= BigRational::from_integer(BigInt::from(xj)) - xm;
        }
        let scale = BigRational::from_integer(BigInt::from(yj)) / denom;
        for (k, b) in basis.iter().enumerate() {
            coeffs[k] += b * &scale;
        }
    }
    coeffs
}

/// Enough primes for the expected degree, avoiding denominators of `m`.
pub fn default_primes<F: Field>(m: &Representation<F>, e: &DimVector) -> Vec<u64> {
    let d_minus_e = m.dims().checked_sub(e).unwrap_or_else(|| m.dims().clone());
    let degree = euler_form(m.quiver(), e, &d_minus_e).max(0) as usize;
    primes_avoiding((degree + 2).max(3), &bad_primes(m))
}

fn bad_primes<F: Field>(m: &Representation<F>) -> Vec<u64> {
    let f = m.field();
    let mut out: Vec<u64> = m
        .maps()
        .iter()
        .flat_map(|mat| mat.entries().iter().flat_map(|x| f.denominator_primes(x)))
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// Counts over `F_p` for every prime, interpolates on all but the last and
/// checks the last. For rigid `m` the degree must be `<e, d-e>` with leading
/// coefficient 1.
pub fn counting_polynomial<F: Field>(
    m: &Representation<F>,
    e: &DimVector,
    primes: &[u64],
) -> Result<CountingPolynomial, GrassError> {
    if let Some(p) = m.field().order() {
        return Err(GrassError::FiniteInput(p));
    }
    if primes.len() < 2 {
        return Err(GrassError::TooFewPrimes {
            needed: 2,
            got: primes.len(),
        });
    }
    if !e.le(m.dims()) {
        return Err(GrassError::ExceedsDims {
            e: e.to_string(),
            d: m.dims().to_string(),
        });
    }
    let mut samples = Vec::with_capacity(primes.len());
    for &p in primes {
        let field = PrimeField::new(p)?;
        let reduced = m.reduce_mod(&field)?;
        samples.push((p, count_subreps(&reduced, e)?));
    }
    let (fit, held) = samples.split_at(samples.len() - 1);
    let (hp, hc) = held[0];
    let rational = interpolate(fit);
    let mut coeffs = Vec::with_capacity(rational.len());
    for c in &rational {
        if !c.is_integer() {
            return Err(GrassError::NonInteger(
                rational
                    .iter()
                    .map(|c| c.to_string())
                    .collect::<Vec<_>>()
                    .join(","),
            ));
        }
        coeffs.push(
            c.to_integer()
                .to_i128()
                .ok_or_else(|| GrassError::NonInteger(c.to_string()))?,
        );
    }
    let mut poly = CountingPolynomial {
        coeffs,
        samples: samples.clone(),
    };
    poly.trim();
    let predicted = poly.eval(hp as i128);
    if predicted != hc as i128 {
        return Err(GrassError::NotPolynomial {
            prime: hp,
            predicted: predicted.to_string(),
            actual: hc,
        });
    }
    if rigidity_report(m).rigid {
        let expected = euler_form(m.quiver(), e, &m.dims().checked_sub(e).expect("e <= d"));
        if let Some(found) = poly.degree() {
            if expected < 0 {
                return Err(GrassError::NegativeDegree(expected));
            }
            if found as i64 != expected {
                return Err(GrassError::DegreeMismatch { expected, found });
            }
            if poly.leading() != 1 {
                return Err(GrassError::LeadingCoefficient(poly.leading()));
            }
        }
    }
    Ok(poly)
}
