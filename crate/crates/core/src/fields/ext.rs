use std::fmt;
use std::sync::Arc;

use super::{poly, prime_factors, Field, FieldError, PrimeField};

/// Element of GF(q^m).
///
/// The wrapped integer is the base-q packing `a_0 + a_1 q + … + a_{m−1} q^{m−1}`
/// of the coordinates `(a_0, …, a_{m−1})` in the basis `(1, γ, …, γ^{m−1})`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct ExtElem(u32);

impl ExtElem {
    pub const ZERO: ExtElem = ExtElem(0);
    pub const ONE: ExtElem = ExtElem(1);

    pub fn value(self) -> u32 {
        self.0
    }
}

impl fmt::Display for ExtElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Fields up to this size get log/antilog/Zech tables.
const TABLE_LIMIT: u64 = 1 << 20;
const NO_LOG: u32 = u32::MAX;

struct Tables {
    /// γ^i for i in 0..2(Q−1), doubled so sums of two logs need no reduction.
    exp: Vec<u32>,
    log: Vec<u32>,
    /// zech[d] = log(1 + γ^d), or NO_LOG when 1 + γ^d = 0.
    zech: Vec<u32>,
    neg_one_log: u32,
}

struct Inner {
    base: PrimeField,
    q: u32,
    m: usize,
    size: u32,
    modulus: Vec<u32>,
    gamma: ExtElem,
    tables: Option<Tables>,
}

/// GF(q^m) as GF(q)[X]/(f) with f primitive, so that γ = X (or, for m = 1,
/// γ a primitive root mod q and f = X − γ).
///
/// Cloning is cheap; the arithmetic tables are shared.
#[derive(Clone)]
pub struct ExtField {
    inner: Arc<Inner>,
}

/// Serializable identity of a field: `(q, m, modulus low-to-high, γ low-to-high)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldDescription {
    pub q: u32,
    pub m: usize,
    pub modulus: Vec<u32>,
    pub gamma: Vec<u32>,
}

impl fmt::Debug for ExtField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ExtField")
            .field("q", &self.inner.q)
            .field("m", &self.inner.m)
            .field("modulus", &self.inner.modulus)
            .field("gamma", &self.inner.gamma)
            .finish()
    }
}

impl PartialEq for ExtField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.q == other.inner.q
                && self.inner.m == other.inner.m
                && self.inner.modulus == other.inner.modulus)
    }
}

impl Eq for ExtField {}

impl ExtField {
    /// Builds GF(q^m) from the first primitive polynomial of degree m in
    /// lexicographic order of its lower coefficients (read as a base-q integer).
    pub fn new(q: u32, m: usize) -> Result<Self, FieldError> {
        let base = PrimeField::new(q)?;
        let size = field_size(q, m)?;
        let modulus = if m == 1 {
            let g = (1..q)
                .find(|&g| order_is_full(&base, &[g], &[0, 1], size))
                .ok_or(FieldError::NoPrimitivePolynomial { q, m })?;
            vec![base.neg(g), 1]
        } else {
            let lower_count = size as u64;
            (1..lower_count)
                .map(|code| {
                    let mut f = digits(code as u32, q, m);
                    f.push(1);
                    f
                })
                .find(|f| f[0] != 0 && order_is_full(&base, &[0, 1], f, size))
                .ok_or(FieldError::NoPrimitivePolynomial { q, m })?
        };
        Ok(Self::build(base, m, size, modulus))
    }

    /// Builds the field from an explicit primitive modulus. For m ≥ 2 the
    /// modulus must have X as a primitive root; for m = 1 it must be X − g with
    /// g a primitive root mod q.
    pub fn with_modulus(q: u32, m: usize, modulus: &[u32]) -> Result<Self, FieldError> {
        let base = PrimeField::new(q)?;
        let size = field_size(q, m)?;
        let bad = |why: &str| FieldError::InvalidDescription(why.to_string());
        if modulus.len() != m + 1 || modulus[m] != 1 {
            return Err(bad("modulus must be monic of degree m"));
        }
        if modulus.iter().any(|&c| c >= q) {
            return Err(bad("modulus coefficient out of range"));
        }
        let primitive = if m == 1 {
            let g = base.neg(modulus[0]);
            g != 0 && order_is_full(&base, &[g], &[0, 1], size)
        } else {
            modulus[0] != 0 && order_is_full(&base, &[0, 1], modulus, size)
        };
        if !primitive {
            return Err(bad("modulus is not primitive"));
        }
        Ok(Self::build(base, m, size, modulus.to_vec()))
    }

    pub fn from_description(desc: &FieldDescription) -> Result<Self, FieldError> {
        let field = Self::with_modulus(desc.q, desc.m, &desc.modulus)?;
        if field.coeffs(field.gamma()) != desc.gamma {
            return Err(FieldError::InvalidDescription(
                "gamma does not match the modulus".to_string(),
            ));
        }
        Ok(field)
    }

    pub fn description(&self) -> FieldDescription {
        FieldDescription {
            q: self.inner.q,
            m: self.inner.m,
            modulus: self.inner.modulus.clone(),
            gamma: self.coeffs(self.inner.gamma),
        }
    }

    fn build(base: PrimeField, m: usize, size: u32, modulus: Vec<u32>) -> Self {
        let q = base.modulus();
        let gamma = if m == 1 {
            ExtElem(base.neg(modulus[0]))
        } else {
            ExtElem(q)
        };
        let mut inner = Inner {
            base,
            q,
            m,
            size,
            modulus,
            gamma,
            tables: None,
        };
        if (size as u64) <= TABLE_LIMIT {
            inner.tables = Some(build_tables(&inner));
        }
        Self {
            inner: Arc::new(inner),
        }
    }

    pub fn base(&self) -> &PrimeField {
        &self.inner.base
    }

    pub fn q(&self) -> u32 {
        self.inner.q
    }

    pub fn m(&self) -> usize {
        self.inner.m
    }

    pub fn modulus(&self) -> &[u32] {
        &self.inner.modulus
    }

    pub fn gamma(&self) -> ExtElem {
        self.inner.gamma
    }

    pub fn gamma_pow(&self, j: u64) -> ExtElem {
        match &self.inner.tables {
            Some(t) => ExtElem(t.exp[(j % (self.inner.size as u64 - 1)) as usize]),
            None => self.pow(self.inner.gamma, j),
        }
    }

    /// Multiplicative order of a nonzero element.
    pub fn order_of(&self, a: ExtElem) -> Option<u64> {
        if a == ExtElem::ZERO {
            return None;
        }
        let group = self.inner.size as u64 - 1;
        let mut ord = group;
        for p in prime_factors(group) {
            while ord % p == 0 && self.pow(a, ord / p) == ExtElem::ONE {
                ord /= p;
            }
        }
        Some(ord)
    }

    /// Coordinates in the basis (1, γ, …, γ^{m−1}).
    pub fn coeffs(&self, a: ExtElem) -> Vec<u32> {
        digits(a.0, self.inner.q, self.inner.m)
    }

    pub fn from_coeffs(&self, c: &[u32]) -> Option<ExtElem> {
        if c.len() != self.inner.m || c.iter().any(|&x| x >= self.inner.q) {
            return None;
        }
        Some(ExtElem(pack(c, self.inner.q)))
    }

    /// Embeds a base-field element.
    pub fn from_base(&self, c: u32) -> ExtElem {
        ExtElem(c % self.inner.q)
    }

    fn add_digits(&self, a: u32, b: u32) -> u32 {
        let q = self.inner.q;
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        let mut pw = 1;
        for _ in 0..self.inner.m {
            let s = (a % q + b % q) % q;
            out += s * pw;
            pw = pw.wrapping_mul(q);
            a /= q;
            b /= q;
        }
        out
    }

    fn neg_digits(&self, a: u32) -> u32 {
        let q = self.inner.q;
        let c: Vec<u32> = digits(a, q, self.inner.m)
            .into_iter()
            .map(|x| (q - x) % q)
            .collect();
        pack(&c, q)
    }

    fn mul_slow(&self, a: u32, b: u32) -> u32 {
        let base = &self.inner.base;
        let q = self.inner.q;
        let m = self.inner.m;
        let pa = digits(a, q, m);
        let pb = digits(b, q, m);
        let mut r = poly::rem(base, &poly::mul(base, &pa, &pb), &self.inner.modulus);
        r.resize(m, 0);
        pack(&r, q)
    }
}

fn field_size(q: u32, m: usize) -> Result<u32, FieldError> {
    if m == 0 {
        return Err(FieldError::ZeroDegree);
    }
    u32::try_from(m)
        .ok()
        .and_then(|e| q.checked_pow(e))
        .ok_or(FieldError::TooLarge { q: q as u64, m })
}

fn digits(mut v: u32, q: u32, m: usize) -> Vec<u32> {
    (0..m)
        .map(|_| {
            let d = v % q;
            v /= q;
            d
        })
        .collect()
}

fn pack(c: &[u32], q: u32) -> u32 {
    c.iter().rev().fold(0, |acc, &d| acc * q + d)
}

/// Does `elem` have multiplicative order `size − 1` in GF(q)[X]/(modulus)?
/// A full-order X also certifies that the modulus is irreducible.
fn order_is_full(base: &PrimeField, elem: &[u32], modulus: &[u32], size: u32) -> bool {
    let group = size as u64 - 1;
    let one = vec![1u32];
    if poly::pow_mod(base, elem, group, modulus) != one {
        return false;
    }
    prime_factors(group)
        .into_iter()
        .all(|p| poly::pow_mod(base, elem, group / p, modulus) != one)
}

fn build_tables(inner: &Inner) -> Tables {
    let q = inner.q;
    let m = inner.m;
    let order = inner.size as usize - 1;
    let mut exp = vec![0u32; 2 * order.max(1)];
    let mut log = vec![NO_LOG; inner.size as usize];
    let mut cur: Vec<u32> = {
        let mut v = vec![0u32; m];
        v[0] = 1;
        v
    };
    for i in 0..order {
        let val = pack(&cur, q);
        exp[i] = val;
        exp[i + order] = val;
        log[val as usize] = i as u32;
        cur = if m == 1 {
            vec![(cur[0] as u64 * inner.gamma.0 as u64 % q as u64) as u32]
        } else {
            // multiply by X modulo the monic modulus
            let top = cur[m - 1];
            let mut next = vec![0u32; m];
            for j in (1..m).rev() {
                next[j] = cur[j - 1];
            }
            if top != 0 {
                for (j, nj) in next.iter_mut().enumerate() {
                    let t = top * inner.modulus[j] % q;
                    *nj = (*nj + q - t) % q;
                }
            }
            next
        };
    }
    let one_digits = |v: u32| -> u32 {
        // v + 1 touches only the constant coordinate
        let c0 = v % q;
        v - c0 + (c0 + 1) % q
    };
    let zech = (0..order)
        .map(|d| {
            let s = one_digits(exp[d]);
            if s == 0 {
                NO_LOG
            } else {
                log[s as usize]
            }
        })
        .collect();
    let neg_one_log = if q == 2 { 0 } else { (order / 2) as u32 };
    Tables {
        exp,
        log,
        zech,
        neg_one_log,
    }
}

impl Field for ExtField {
    type Elem = ExtElem;

    #[inline]
    fn zero(&self) -> ExtElem {
        ExtElem::ZERO
    }

    #[inline]
    fn one(&self) -> ExtElem {
        ExtElem::ONE
    }

    #[inline]
    fn add(&self, a: ExtElem, b: ExtElem) -> ExtElem {
        if a.0 == 0 {
            return b;
        }
        if b.0 == 0 {
            return a;
        }
        match &self.inner.tables {
            Some(t) => {
                let la = t.log[a.0 as usize];
                let lb = t.log[b.0 as usize];
                let order = self.inner.size - 1;
                let d = if lb >= la { lb - la } else { lb + order - la };
                let z = t.zech[d as usize];
                if z == NO_LOG {
                    ExtElem::ZERO
                } else {
                    ExtElem(t.exp[(la + z) as usize])
                }
            }
            None => ExtElem(self.add_digits(a.0, b.0)),
        }
    }

    #[inline]
    fn neg(&self, a: ExtElem) -> ExtElem {
        if a.0 == 0 {
            return a;
        }
        match &self.inner.tables {
            Some(t) => ExtElem(t.exp[(t.log[a.0 as usize] + t.neg_one_log) as usize]),
            None => ExtElem(self.neg_digits(a.0)),
        }
    }

    #[inline]
    fn sub(&self, a: ExtElem, b: ExtElem) -> ExtElem {
        self.add(a, self.neg(b))
    }

    #[inline]
    fn mul(&self, a: ExtElem, b: ExtElem) -> ExtElem {
        if a.0 == 0 || b.0 == 0 {
            return ExtElem::ZERO;
        }
        match &self.inner.tables {
            Some(t) => ExtElem(t.exp[(t.log[a.0 as usize] + t.log[b.0 as usize]) as usize]),
            None => ExtElem(self.mul_slow(a.0, b.0)),
        }
    }

    fn inv(&self, a: ExtElem) -> Option<ExtElem> {
        if a.0 == 0 {
            return None;
        }
        let order = self.inner.size - 1;
        Some(match &self.inner.tables {
            Some(t) => ExtElem(t.exp[((order - t.log[a.0 as usize]) % order) as usize]),
            None => self.pow(a, order as u64 - 1),
        })
    }

    fn size(&self) -> u64 {
        self.inner.size as u64
    }

    fn from_index(&self, i: u64) -> ExtElem {
        debug_assert!(i < self.inner.size as u64);
        ExtElem(i as u32)
    }

    fn index(&self, a: ExtElem) -> u64 {
        a.0 as u64
    }

    fn axpy(&self, dst: &mut [ExtElem], f: ExtElem, src: &[ExtElem]) {
        if f.0 == 0 {
            return;
        }
        match &self.inner.tables {
            Some(t) => {
                let lf = t.log[f.0 as usize];
                for (d, &s) in dst.iter_mut().zip(src) {
                    if s.0 != 0 {
                        let p = ExtElem(t.exp[(lf + t.log[s.0 as usize]) as usize]);
                        *d = self.add(*d, p);
                    }
                }
            }
            None => {
                for (d, &s) in dst.iter_mut().zip(src) {
                    *d = self.add(*d, self.mul(f, s));
                }
            }
        }
    }
}

/// φ: coordinates of `a` in the basis (1, γ, …, γ^{m−1}).
pub fn phi(field: &ExtField, a: ExtElem) -> Vec<u32> {
    field.coeffs(a)
}

/// φ_n: concatenated coordinate vectors, length m·n.
pub fn phi_n(field: &ExtField, v: &[ExtElem]) -> Vec<u32> {
    let mut out = Vec::with_capacity(v.len() * field.m());
    for &a in v {
        out.extend(field.coeffs(a));
    }
    out
}

/// Inverse of [`phi_n`]. Entries must already be reduced mod q.
pub fn phi_n_inv(field: &ExtField, w: &[u32]) -> Result<Vec<ExtElem>, FieldError> {
    let m = field.m();
    if w.len() % m != 0 {
        return Err(FieldError::LengthNotMultiple { len: w.len(), m });
    }
    w.chunks(m)
        .map(|c| {
            field.from_coeffs(c).ok_or_else(|| {
                FieldError::InvalidDescription("coordinate out of range".to_string())
            })
        })
        .collect()
}
