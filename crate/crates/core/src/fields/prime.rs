use super::{is_prime, Field, FieldError};

/// GF(q) for prime q < 2^16, elements as least non-negative residues.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeField {
    q: u32,
    inverses: Vec<u32>,
}

/// Above this modulus the row update falls back to exact 64-bit remainders.
const FLOAT_REDUCE_LIMIT: u32 = 1 << 12;

impl PrimeField {
    pub fn new(q: u32) -> Result<Self, FieldError> {
        if !is_prime(q as u64) {
            return Err(FieldError::NotPrime(q as u64));
        }
        if q >= 1 << 16 {
            return Err(FieldError::TooLarge { q: q as u64, m: 1 });
        }
        let mut inverses = vec![0u32; q as usize];
        for a in 1..q {
            inverses[a as usize] = pow_mod(a, q - 2, q);
        }
        Ok(Self { q, inverses })
    }

    pub fn modulus(&self) -> u32 {
        self.q
    }

    /// Reduce an arbitrary integer into the field.
    pub fn reduce(&self, a: u64) -> u32 {
        (a % self.q as u64) as u32
    }
}

fn pow_mod(a: u32, mut e: u32, q: u32) -> u32 {
    let q = q as u64;
    let mut base = a as u64 % q;
    let mut acc = 1u64 % q;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % q;
        }
        base = base * base % q;
        e >>= 1;
    }
    acc as u32
}

impl Field for PrimeField {
    type Elem = u32;

    #[inline]
    fn zero(&self) -> u32 {
        0
    }

    #[inline]
    fn one(&self) -> u32 {
        1 % self.q
    }

    #[inline]
    fn add(&self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.q {
            s - self.q
        } else {
            s
        }
    }

    #[inline]
    fn sub(&self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.q - b
        }
    }

    #[inline]
    fn neg(&self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.q - a
        }
    }

    #[inline]
    fn mul(&self, a: u32, b: u32) -> u32 {
        a * b % self.q
    }

    fn inv(&self, a: u32) -> Option<u32> {
        if a == 0 {
            None
        } else {
            Some(self.inverses[a as usize])
        }
    }

    fn size(&self) -> u64 {
        self.q as u64
    }

    fn from_index(&self, i: u64) -> u32 {
        debug_assert!(i < self.q as u64);
        i as u32
    }

    fn index(&self, a: u32) -> u64 {
        a as u64
    }

    fn axpy(&self, dst: &mut [u32], f: u32, src: &[u32]) {
        if f == 0 {
            return;
        }
        let q = self.q;
        if q < FLOAT_REDUCE_LIMIT {
            // x < q + q^2 < 2^24 is exact in f32; the truncated quotient is
            // off by at most one, fixed by the two conditional corrections.
            let qi = q as i32;
            let recip = 1.0 / q as f32;
            let n = dst.len().min(src.len());
            let (dst, src) = (&mut dst[..n], &src[..n]);
            for (d, &s) in dst.iter_mut().zip(src) {
                let x = d.wrapping_add(f.wrapping_mul(s)) as i32;
                let quot = (x as f32 * recip) as i32;
                let mut r = x.wrapping_sub(quot.wrapping_mul(qi));
                r += (r >> 31) & qi;
                r -= ((qi - 1 - r) >> 31) & qi;
                *d = r as u32;
            }
        } else {
            let q = q as u64;
            for (d, &s) in dst.iter_mut().zip(src) {
                *d = ((*d as u64 + f as u64 * s as u64) % q) as u32;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_composites() {
        assert_eq!(PrimeField::new(9), Err(FieldError::NotPrime(9)));
        assert_eq!(PrimeField::new(1), Err(FieldError::NotPrime(1)));
        assert!(PrimeField::new(2).is_ok());
    }

    #[test]
    fn field_axioms_exhaustive_small() {
        for q in [2u32, 3, 5, 7, 11, 13] {
            let f = PrimeField::new(q).unwrap();
            for a in 0..q {
                assert_eq!(f.add(a, f.neg(a)), 0);
                assert_eq!(f.sub(a, a), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
                }
                for b in 0..q {
                    assert_eq!(f.add(a, b), (a + b) % q);
                    assert_eq!(f.mul(a, b), a * b % q);
                    assert_eq!(f.sub(f.add(a, b), b), a);
                    for c in 0..q {
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                    }
                }
            }
            assert_eq!(f.inv(0), None);
        }
    }

    #[test]
    fn axpy_matches_naive_for_all_coefficients() {
        for q in [2u32, 3, 7, 13, 251, 4093, 4099, 65521] {
            let f = PrimeField::new(q).unwrap();
            let src: Vec<u32> = (0..300u64).map(|i| ((i * 7919 + 13) % q as u64) as u32).collect();
            for coef in [1, 2 % q, q - 1, q / 2, (q / 3).max(1)] {
                let mut dst: Vec<u32> = (0..300u64).map(|i| ((i * 104729 + 1) % q as u64) as u32).collect();
                let expect: Vec<u32> = dst
                    .iter()
                    .zip(&src)
                    .map(|(&d, &s)| ((d as u64 + coef as u64 * s as u64) % q as u64) as u32)
                    .collect();
                f.axpy(&mut dst, coef, &src);
                assert_eq!(dst, expect, "q={q} coef={coef}");
            }
        }
    }
}
