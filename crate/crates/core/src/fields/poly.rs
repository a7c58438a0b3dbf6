//! Dense univariate polynomials over a [`Field`], coefficients low-to-high.
//!
//! The zero polynomial is the empty vector; every routine returns trimmed
//! results (no trailing zero coefficients).

use super::Field;

pub fn trim<F: Field>(f: &F, p: &mut Vec<F::Elem>) {
    while p.last().is_some_and(|&c| f.is_zero(c)) {
        p.pop();
    }
}

/// Degree, `None` for the zero polynomial.
pub fn degree<F: Field>(f: &F, p: &[F::Elem]) -> Option<usize> {
    p.iter().rposition(|&c| !f.is_zero(c))
}

pub fn add<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    let mut out: Vec<F::Elem> = (0..a.len().max(b.len()))
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(f.zero());
            let y = b.get(i).copied().unwrap_or(f.zero());
            f.add(x, y)
        })
        .collect();
    trim(f, &mut out);
    out
}

pub fn sub<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    let mut out: Vec<F::Elem> = (0..a.len().max(b.len()))
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(f.zero());
            let y = b.get(i).copied().unwrap_or(f.zero());
            f.sub(x, y)
        })
        .collect();
    trim(f, &mut out);
    out
}

pub fn mul<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![f.zero(); a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if f.is_zero(x) {
            continue;
        }
        f.axpy(&mut out[i..i + b.len()], x, b);
    }
    trim(f, &mut out);
    out
}

pub fn scale<F: Field>(f: &F, a: &[F::Elem], c: F::Elem) -> Vec<F::Elem> {
    let mut out: Vec<F::Elem> = a.iter().map(|&x| f.mul(x, c)).collect();
    trim(f, &mut out);
    out
}

/// Quotient and remainder. Panics if `b` is zero.
pub fn div_rem<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> (Vec<F::Elem>, Vec<F::Elem>) {
    let db = degree(f, b).expect("division by the zero polynomial");
    let lead_inv = f.inv(b[db]).expect("leading coefficient is nonzero");
    let mut rem: Vec<F::Elem> = a.to_vec();
    trim(f, &mut rem);
    if rem.len() <= db {
        return (Vec::new(), rem);
    }
    let mut quot = vec![f.zero(); rem.len() - db];
    while let Some(dr) = degree(f, &rem) {
        if dr < db {
            break;
        }
        let c = f.mul(rem[dr], lead_inv);
        let shift = dr - db;
        quot[shift] = c;
        f.axpy(&mut rem[shift..=dr], f.neg(c), &b[..=db]);
        rem.truncate(dr);
        trim(f, &mut rem);
    }
    trim(f, &mut quot);
    (quot, rem)
}

pub fn rem<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    div_rem(f, a, b).1
}

/// Horner evaluation.
pub fn eval<F: Field>(f: &F, p: &[F::Elem], x: F::Elem) -> F::Elem {
    p.iter().rev().fold(f.zero(), |acc, &c| f.add(f.mul(acc, x), c))
}

/// Formal derivative; coefficient i is multiplied by the integer i.
pub fn derivative<F: Field>(f: &F, p: &[F::Elem]) -> Vec<F::Elem> {
    let mut out: Vec<F::Elem> = p
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, &c)| {
            // i·c as repeated addition reduced through the prime subfield
            let mut acc = f.zero();
            let mut term = c;
            let mut k = i;
            while k > 0 {
                if k & 1 == 1 {
                    acc = f.add(acc, term);
                }
                term = f.add(term, term);
                k >>= 1;
            }
            acc
        })
        .collect();
    trim(f, &mut out);
    out
}

/// `base^e mod modulus`.
pub fn pow_mod<F: Field>(f: &F, base: &[F::Elem], mut e: u64, modulus: &[F::Elem]) -> Vec<F::Elem> {
    let mut acc = rem(f, &[f.one()], modulus);
    let mut b = rem(f, base, modulus);
    while e > 0 {
        if e & 1 == 1 {
            acc = rem(f, &mul(f, &acc, &b), modulus);
        }
        b = rem(f, &mul(f, &b, &b), modulus);
        e >>= 1;
    }
    acc
}
