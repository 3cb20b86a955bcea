//! Exact linear algebra over `F_p` and `Q`: row reduction, kernels, subspace
//! arithmetic and enumeration of subspaces of `F_q^n`.

mod field;
mod matrix;
mod subspace;

pub use field::{
    denominator_primes, is_prime, next_prime, primes_avoiding, Field, FieldKind, PrimeField,
    Rationals, MAX_PRIME,
};
pub use matrix::Matrix;
pub use subspace::{enumerate_subspaces, gaussian_binomial, Subspace, SubspaceIter};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinalgError {
    #[error("{0} is not a prime below 2^31")]
    NotPrime(u64),
    #[error("unknown field `{0}` (expected `Q` or `F<p>`)")]
    BadField(String),
    #[error("cannot parse field element `{0}`")]
    BadLiteral(String),
    #[error("ambient dimensions differ: {0} vs {1}")]
    AmbientMismatch(usize, usize),
    #[error("the given rows do not span a complement")]
    NotComplement,
    #[error("matrix is singular")]
    Singular,
    #[error("expected shape {expected:?}, found {found:?}")]
    Shape {
        expected: (usize, usize),
        found: (usize, usize),
    },
    #[error("cannot enumerate {k}-dimensional subspaces of a {n}-dimensional space")]
    DimensionTooLarge { k: usize, n: usize },
    #[error("enumeration needs a finite field")]
    InfiniteField,
    #[error("entry {entry} has no reduction modulo {p}")]
    BadReduction { entry: String, p: u64 },
}
