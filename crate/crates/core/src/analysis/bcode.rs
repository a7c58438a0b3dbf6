//! The auxiliary code B over GF(q^m) whose subfield subcode is the expanded
//! GRS code up to a coordinate interleaving.

use crate::fields::{ExtElem, ExtField, Field};
use crate::grs::{vandermonde, GrsCode};
use crate::linalg::{self, Mat};

/// `H_B = [V_r(x, y) | V_r(x, γy) | … | V_r(x, γ^{m−1} y)]`, of size `r × mn`.
pub fn bcode_parity(code: &GrsCode) -> Mat<ExtElem> {
    let f = code.field();
    let (n, r, m) = (code.n(), code.r(), f.m());
    let mut out = Mat::zeros(r, m * n);
    for j in 0..m {
        let g = f.gamma_pow(j as u64);
        let y: Vec<ExtElem> = code.y().iter().map(|&v| f.mul(g, v)).collect();
        let block = vandermonde(f, code.x(), &y, r);
        for l in 0..r {
            out.row_mut(l)[j * n..(j + 1) * n].copy_from_slice(block.row(l));
        }
    }
    out
}

/// Writes each row of `h` as `m` rows over GF(q), one per coordinate.
pub fn flatten_rows(field: &ExtField, h: &Mat<ExtElem>) -> Mat<u32> {
    let m = field.m();
    let mut out = Mat::zeros(h.rows() * m, h.cols());
    for l in 0..h.rows() {
        for (c, &v) in h.row(l).iter().enumerate() {
            for (d, digit) in field.coeffs(v).into_iter().enumerate() {
                out.set(l * m + d, c, digit);
            }
        }
    }
    out
}

/// Generator matrix (over GF(q)) of `{c ∈ GF(q)^N : h cᵀ = 0}`.
pub fn subfield_subcode(field: &ExtField, h: &Mat<ExtElem>) -> Mat<u32> {
    linalg::kernel(field.base(), &flatten_rows(field, h))
}

/// `(P c)[j·n + i] = c[i·m + j]`: groups coordinates by basis index instead
/// of by position.
pub fn interleave(c: &[u32], n: usize, m: usize) -> Vec<u32> {
    let mut out = vec![0; c.len()];
    for i in 0..n {
        for j in 0..m {
            out[j * n + i] = c[i * m + j];
        }
    }
    out
}

/// Applies [`interleave`] to every row.
pub fn interleave_rows(g: &Mat<u32>, n: usize, m: usize) -> Mat<u32> {
    let data = g.iter_rows().flat_map(|row| interleave(row, n, m)).collect();
    Mat::from_vec(g.rows(), g.cols(), data).expect("same shape")
}

/// Generator of B with `mk + (m−1)r` rows: the block diagonal of
/// `V_k(x, γ^{−i} y′)` stacked on glue rows pairing `V_r(x, γ^{−i} y″)` in
/// block `i` with `−V_r(x, γ^{−(m−1)} y″)` in the last block, where
/// `y″ = x^k ⋆ y′`.
pub fn glue_generator(code: &GrsCode) -> Mat<ExtElem> {
    let f = code.field();
    let (n, k, r, m) = (code.n(), code.k(), code.r(), f.m());
    let y1 = code.dual_multipliers();
    let y2: Vec<ExtElem> = code
        .x()
        .iter()
        .zip(&y1)
        .map(|(&x, &y)| f.mul(f.pow(x, k as u64), y))
        .collect();
    let order = f.size() - 1;
    let gamma_inv = |i: usize| f.gamma_pow((order - i as u64 % order) % order);
    let scaled = |v: &[ExtElem], c: ExtElem| v.iter().map(|&e| f.mul(c, e)).collect::<Vec<_>>();

    let mut out = Mat::zeros(m * k + (m - 1) * r, m * n);
    for i in 0..m {
        let block = vandermonde(f, code.x(), &scaled(&y1, gamma_inv(i)), k);
        for a in 0..k {
            out.row_mut(i * k + a)[i * n..(i + 1) * n].copy_from_slice(block.row(a));
        }
    }
    let last = vandermonde(f, code.x(), &scaled(&y2, f.neg(gamma_inv(m - 1))), r);
    for i in 0..m.saturating_sub(1) {
        let block = vandermonde(f, code.x(), &scaled(&y2, gamma_inv(i)), r);
        for a in 0..r {
            let row = out.row_mut(m * k + i * r + a);
            row[i * n..(i + 1) * n].copy_from_slice(block.row(a));
            row[(m - 1) * n..].copy_from_slice(last.row(a));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expansion::expand_generator;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn row_space_eq(f: &crate::fields::PrimeField, a: &Mat<u32>, b: &Mat<u32>) -> bool {
        let ra = linalg::rank(f, a);
        ra == linalg::rank(f, b) && ra == linalg::rank(f, &a.vstack(b).unwrap())
    }

    #[test]
    fn interleave_is_a_permutation() {
        let c: Vec<u32> = (0..12).collect();
        let p = interleave(&c, 4, 3);
        assert_eq!(p, vec![0, 3, 6, 9, 1, 4, 7, 10, 2, 5, 8, 11]);
    }

    #[test]
    fn subfield_subcode_is_interleaved_expansion() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for (q, m, n, k) in [(3u32, 3usize, 20usize, 14usize), (13, 3, 30, 20), (7, 4, 16, 10)] {
            let f = ExtField::new(q, m).unwrap();
            let code = GrsCode::random(f.clone(), n, k, &mut rng).unwrap();
            let sub = subfield_subcode(&f, &bcode_parity(&code));
            assert_eq!(sub.rows(), m * k);
            let g_hat = expand_generator(&code.generator(), &f).matrix;
            assert!(row_space_eq(f.base(), &sub, &interleave_rows(&g_hat, n, m)));
        }
    }

    #[test]
    fn glue_generator_spans_b() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for (q, m, n, k) in [(3u32, 3usize, 20usize, 14usize), (13, 3, 24, 15), (7, 4, 12, 7), (5, 2, 10, 4)] {
            let f = ExtField::new(q, m).unwrap();
            let code = GrsCode::random(f.clone(), n, k, &mut rng).unwrap();
            let g = glue_generator(&code);
            let h = bcode_parity(&code);
            assert_eq!(g.shape(), (m * k + (m - 1) * (n - k), m * n));
            assert!(linalg::is_zero(&f, &linalg::mul(&f, &g, &h.transpose()).unwrap()));
            assert_eq!(linalg::rank(&f, &g), m * n - (n - k));
        }
    }

    #[test]
    fn per_row_last_block_exponent_does_not_annihilate() {
        let f = ExtField::new(13, 3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let code = GrsCode::random(f.clone(), 12, 6, &mut rng).unwrap();
        let (n, k, r, m) = (12, 6, 6, 3);
        let mut g = glue_generator(&code);
        // last block of glue row i scaled by γ^{i−(m−1)} instead of γ^{−(m−1)}
        let y2: Vec<ExtElem> = code
            .x()
            .iter()
            .zip(code.dual_multipliers())
            .map(|(&x, y)| f.mul(f.pow(x, k as u64), y))
            .collect();
        let order = f.size() - 1;
        let i = 1usize;
        let c = f.neg(f.gamma_pow(order - (m - 1 - i) as u64));
        let ys: Vec<ExtElem> = y2.iter().map(|&v| f.mul(c, v)).collect();
        let block = vandermonde(&f, code.x(), &ys, r);
        for a in 0..r {
            g.row_mut(m * k + i * r + a)[(m - 1) * n..].copy_from_slice(block.row(a));
        }
        let prod = linalg::mul(&f, &g, &bcode_parity(&code).transpose()).unwrap();
        assert!(!linalg::is_zero(&f, &prod));
    }
}
