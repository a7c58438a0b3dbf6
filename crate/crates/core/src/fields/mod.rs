//! Finite field arithmetic: the prime field GF(q), the extension GF(q^m)
//! presented in the basis (1, γ, …, γ^{m−1}), and the coordinate maps
//! φ / φ_n between them.

mod ext;
pub mod poly;
mod prime;

use std::fmt::Debug;
use std::hash::Hash;

use rand::Rng;
use thiserror::Error;

pub use ext::{phi, phi_n, phi_n_inv, ExtElem, ExtField, FieldDescription};
pub use prime::PrimeField;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("q = {0} is not prime")]
    NotPrime(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field of size {q}^{m} does not fit in 32 bits")]
    TooLarge { q: u64, m: usize },
    #[error("no primitive polynomial of degree {m} over GF({q})")]
    NoPrimitivePolynomial { q: u32, m: usize },
    #[error("invalid field description: {0}")]
    InvalidDescription(String),
    #[error("coordinate vector length {len} is not a multiple of {m}")]
    LengthNotMultiple { len: usize, m: usize },
}

/// Arithmetic in a finite field whose elements are small `Copy` values.
///
/// Implementors number their elements `0..size()` through
/// [`Field::from_index`] / [`Field::index`]; index 0 is zero and index 1 is one.
pub trait Field: Clone + Debug + Send + Sync + 'static {
    type Elem: Copy + Eq + Ord + Hash + Debug + Default + Send + Sync + 'static;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;
    fn sub(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;
    fn neg(&self, a: Self::Elem) -> Self::Elem;
    fn mul(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self, a: Self::Elem) -> Option<Self::Elem>;
    /// Number of elements.
    fn size(&self) -> u64;
    fn from_index(&self, i: u64) -> Self::Elem;
    fn index(&self, a: Self::Elem) -> u64;

    fn is_zero(&self, a: Self::Elem) -> bool {
        a == self.zero()
    }

    fn pow(&self, a: Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a;
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem {
        self.from_index(rng.gen_range(0..self.size()))
    }

    fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem {
        self.from_index(rng.gen_range(1..self.size()))
    }

    /// `dst[i] += f * src[i]`. Hot loop of elimination; fields override it.
    fn axpy(&self, dst: &mut [Self::Elem], f: Self::Elem, src: &[Self::Elem]) {
        if self.is_zero(f) {
            return;
        }
        for (d, &s) in dst.iter_mut().zip(src) {
            *d = self.add(*d, self.mul(f, s));
        }
    }

    /// `v[i] *= f`.
    fn scale(&self, v: &mut [Self::Elem], f: Self::Elem) {
        for x in v.iter_mut() {
            *x = self.mul(*x, f);
        }
    }

    fn dot(&self, a: &[Self::Elem], b: &[Self::Elem]) -> Self::Elem {
        a.iter()
            .zip(b)
            .fold(self.zero(), |acc, (&x, &y)| self.add(acc, self.mul(x, y)))
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}
