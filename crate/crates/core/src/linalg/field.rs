//! Exact scalar fields: prime fields `F_p` and the rationals.

use std::fmt;
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

use super::LinalgError;

/// Largest admissible prime modulus (exclusive).
pub const MAX_PRIME: u64 = 1 << 31;

/// A field with exact arithmetic. Elements are plain values; the field value
/// carries whatever context (the modulus) the arithmetic needs.
pub trait Field: Clone + fmt::Debug + PartialEq + Eq + Send + Sync + 'static {
    type Elem: Clone + fmt::Debug + PartialEq + Eq + Hash + Ord + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse; `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn from_int(&self, n: i64) -> Self::Elem;
    fn parse_elem(&self, s: &str) -> Result<Self::Elem, LinalgError>;
    fn format_elem(&self, a: &Self::Elem) -> String;

    /// Number of elements, `None` when infinite.
    fn order(&self) -> Option<u64>;

    /// The `index`-th element of a finite field (`0 <= index < order`), in the
    /// canonical order `0, 1, ..., p-1`.
    fn element(&self, index: u64) -> Self::Elem;

    /// Image of `a` under reduction to `F_p`, if defined.
    fn reduce_to(&self, a: &Self::Elem, p: u64) -> Option<u64>;

    /// Uniform element for finite fields; an integer in `[-bound, bound]` otherwise.
    fn random<R: Rng + ?Sized>(&self, rng: &mut R, bound: i64) -> Self::Elem;

    /// Short token used in file headers: `Q` or `F<p>`.
    fn token(&self) -> String;

    /// Primes at which `a` has no reduction.
    fn denominator_primes(&self, _a: &Self::Elem) -> Vec<u64> {
        Vec::new()
    }
}

/// The prime field `F_p`, elements stored as residues in `[0, p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, LinalgError> {
        if !(2..MAX_PRIME).contains(&p) || !is_prime(p) {
            return Err(LinalgError::NotPrime(p));
        }
        Ok(Self { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1u64;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            exp >>= 1;
        }
        acc
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            None
        } else {
            Some(self.pow(*a, self.p - 2))
        }
    }
    fn from_int(&self, n: i64) -> u64 {
        n.rem_euclid(self.p as i64) as u64
    }
    fn parse_elem(&self, s: &str) -> Result<u64, LinalgError> {
        let n: i64 = s
            .parse()
            .map_err(|_| LinalgError::BadLiteral(s.to_string()))?;
        Ok(self.from_int(n))
    }
    fn format_elem(&self, a: &u64) -> String {
        a.to_string()
    }
    fn order(&self) -> Option<u64> {
        Some(self.p)
    }
    fn element(&self, index: u64) -> u64 {
        debug_assert!(index < self.p);
        index
    }
    fn reduce_to(&self, a: &u64, p: u64) -> Option<u64> {
        (p == self.p).then_some(*a)
    }
    fn random<R: Rng + ?Sized>(&self, rng: &mut R, _bound: i64) -> u64 {
        rng.gen_range(0..self.p)
    }
    fn token(&self) -> String {
        format!("F{}", self.p)
    }
}

/// The rational numbers with arbitrary precision.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        (!a.is_zero()).then(|| a.recip())
    }
    fn from_int(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }
    fn parse_elem(&self, s: &str) -> Result<BigRational, LinalgError> {
        let bad = || LinalgError::BadLiteral(s.to_string());
        match s.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.parse().map_err(|_| bad())?;
                let d: BigInt = d.parse().map_err(|_| bad())?;
                if d.is_zero() {
                    return Err(bad());
                }
                Ok(BigRational::new(n, d))
            }
            None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
        }
    }
    fn format_elem(&self, a: &BigRational) -> String {
        if a.is_integer() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }
    fn order(&self) -> Option<u64> {
        None
    }
    fn element(&self, index: u64) -> BigRational {
        self.from_int(index as i64)
    }
    fn reduce_to(&self, a: &BigRational, p: u64) -> Option<u64> {
        let pb = BigInt::from(p);
        let den = a.denom().mod_floor(&pb).to_u64()?;
        if den == 0 {
            return None;
        }
        let num = a.numer().mod_floor(&pb).to_u64()?;
        let f = PrimeField::new(p).ok()?;
        Some(f.mul(&num, &f.inv(&den)?))
    }
    fn random<R: Rng + ?Sized>(&self, rng: &mut R, bound: i64) -> BigRational {
        self.from_int(rng.gen_range(-bound..=bound))
    }
    fn token(&self) -> String {
        "Q".to_string()
    }
    fn denominator_primes(&self, a: &BigRational) -> Vec<u64> {
        denominator_primes(a)
    }
}

/// Runtime description of a field, as named in file headers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldKind {
    Prime(PrimeField),
    Rational,
}

impl FieldKind {
    pub fn parse(token: &str) -> Result<Self, LinalgError> {
        if token == "Q" {
            return Ok(FieldKind::Rational);
        }
        let p = token
            .strip_prefix('F')
            .and_then(|p| p.parse::<u64>().ok())
            .ok_or_else(|| LinalgError::BadField(token.to_string()))?;
        Ok(FieldKind::Prime(PrimeField::new(p)?))
    }
}

impl fmt::Display for FieldKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldKind::Prime(k) => write!(f, "{}", k.token()),
            FieldKind::Rational => write!(f, "Q"),
        }
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Smallest prime strictly greater than `n`.
pub fn next_prime(n: u64) -> u64 {
    let mut c = n + 1;
    while !is_prime(c) {
        c += 1;
    }
    c
}

/// The first `count` primes not contained in `exclude`.
pub fn primes_avoiding(count: usize, exclude: &[u64]) -> Vec<u64> {
    let mut out = Vec::with_capacity(count);
    let mut p = 1;
    while out.len() < count {
        p = next_prime(p);
        if !exclude.contains(&p) {
            out.push(p);
        }
    }
    out
}

/// Prime factors of the denominator of `a` (empty for integers).
pub fn denominator_primes(a: &BigRational) -> Vec<u64> {
    let mut d = a.denom().abs();
    let mut out = Vec::new();
    let mut p = BigInt::from(2);
    while d > BigInt::one() {
        if (&d % &p).is_zero() {
            if let Some(v) = p.to_u64() {
                out.push(v);
            }
            while (&d % &p).is_zero() {
                d /= &p;
            }
        }
        p += 1;
        if &p * &p > d && d > BigInt::one() {
            if let Some(v) = d.to_u64() {
                out.push(v);
            }
            break;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_inverse() {
        let f = PrimeField::new(7).unwrap();
        for a in 1..7 {
            let b = f.inv(&a).unwrap();
            assert_eq!(f.mul(&a, &b), 1);
        }
        assert_eq!(f.inv(&0), None);
        assert_eq!(f.from_int(-1), 6);
    }

    #[test]
    fn rejects_composite_modulus() {
        assert!(PrimeField::new(9).is_err());
        assert!(FieldKind::parse("F4").is_err());
        assert!(FieldKind::parse("F5").is_ok());
        assert!(FieldKind::parse("R").is_err());
    }

    #[test]
    fn rational_literals() {
        let q = Rationals;
        let a = q.parse_elem("6/4").unwrap();
        assert_eq!(q.format_elem(&a), "3/2");
        assert!(q.parse_elem("1/0").is_err());
        assert_eq!(q.reduce_to(&a, 5), Some(4)); // 3 * 2^{-1} = 3 * 3 = 9 = 4
        assert_eq!(q.reduce_to(&a, 2), None);
        assert_eq!(
            denominator_primes(&q.parse_elem("1/12").unwrap()),
            vec![2, 3]
        );
        assert_eq!(denominator_primes(&q.parse_elem("1/7").unwrap()), vec![7]);
    }

    #[test]
    fn prime_lists() {
        assert_eq!(next_prime(8), 11);
        assert_eq!(primes_avoiding(4, &[3]), vec![2, 5, 7, 11]);
    }
}
