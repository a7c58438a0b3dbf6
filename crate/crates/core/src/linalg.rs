//! Dense exact linear algebra over any [`Field`].

use std::any::Any;

use thiserror::Error;

use crate::fields::{Field, PrimeField};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("matrix is singular")]
    Singular,
    #[error("expected a square matrix, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("not a permutation of 0..{0}")]
    InvalidPermutation(usize),
}

/// Row-major dense matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Mat<E> {
    rows: usize,
    cols: usize,
    data: Vec<E>,
}

impl<E: Copy + Default> Mat<E> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![E::default(); rows * cols],
        }
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<E>) -> Result<Self, LinalgError> {
        if data.len() != rows * cols {
            return Err(LinalgError::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Self { rows, cols, data })
    }

    /// Builds from a list of rows; all rows must share one length. An empty
    /// list gives a 0×0 matrix.
    pub fn from_rows(rows: Vec<Vec<E>>) -> Result<Self, LinalgError> {
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(LinalgError::DimensionMismatch("ragged rows".to_string()));
        }
        let n = rows.len();
        Ok(Self {
            rows: n,
            cols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> E) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> E {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: E) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[E] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [E] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn iter_rows(&self) -> impl Iterator<Item = &[E]> {
        let cols = self.cols;
        (0..self.rows).map(move |i| &self.data[i * cols..(i + 1) * cols])
    }

    pub fn data(&self) -> &[E] {
        &self.data
    }

    pub fn into_data(self) -> Vec<E> {
        self.data
    }

    pub fn column(&self, j: usize) -> Vec<E> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i))
    }

    pub fn select_columns(&self, cols: &[usize]) -> Self {
        Self::from_fn(self.rows, cols.len(), |i, j| self.get(i, cols[j]))
    }

    pub fn select_rows(&self, rows: &[usize]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * self.cols);
        for &r in rows {
            data.extend_from_slice(self.row(r));
        }
        Self {
            rows: rows.len(),
            cols: self.cols,
            data,
        }
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &Self) -> Result<Self, LinalgError> {
        if self.rows != other.rows {
            return Err(LinalgError::DimensionMismatch(format!(
                "hstack of {} and {} rows",
                self.rows, other.rows
            )));
        }
        let mut data = Vec::with_capacity(self.rows * (self.cols + other.cols));
        for i in 0..self.rows {
            data.extend_from_slice(self.row(i));
            data.extend_from_slice(other.row(i));
        }
        Ok(Self {
            rows: self.rows,
            cols: self.cols + other.cols,
            data,
        })
    }

    pub fn vstack(&self, other: &Self) -> Result<Self, LinalgError> {
        if self.cols != other.cols {
            return Err(LinalgError::DimensionMismatch(format!(
                "vstack of {} and {} columns",
                self.cols, other.cols
            )));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Self {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn map<T: Copy + Default>(&self, f: impl Fn(E) -> T) -> Mat<T> {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&x| f(x)).collect(),
        }
    }
}

pub fn identity<F: Field>(f: &F, n: usize) -> Mat<F::Elem> {
    Mat::from_fn(n, n, |i, j| if i == j { f.one() } else { f.zero() })
}

pub fn is_zero<F: Field>(f: &F, a: &Mat<F::Elem>) -> bool {
    a.data.iter().all(|&x| f.is_zero(x))
}

pub fn add<F: Field>(f: &F, a: &Mat<F::Elem>, b: &Mat<F::Elem>) -> Result<Mat<F::Elem>, LinalgError> {
    if a.shape() != b.shape() {
        return Err(LinalgError::DimensionMismatch(format!(
            "adding {:?} and {:?}",
            a.shape(),
            b.shape()
        )));
    }
    let data = a.data.iter().zip(&b.data).map(|(&x, &y)| f.add(x, y)).collect();
    Ok(Mat {
        rows: a.rows,
        cols: a.cols,
        data,
    })
}

pub fn mul<F: Field>(f: &F, a: &Mat<F::Elem>, b: &Mat<F::Elem>) -> Result<Mat<F::Elem>, LinalgError> {
    if a.cols != b.rows {
        return Err(LinalgError::DimensionMismatch(format!(
            "multiplying {:?} by {:?}",
            a.shape(),
            b.shape()
        )));
    }
    let mut out = Mat::zeros(a.rows, b.cols);
    for i in 0..a.rows {
        let dst = &mut out.data[i * b.cols..(i + 1) * b.cols];
        for l in 0..a.cols {
            let c = a.get(i, l);
            if !f.is_zero(c) {
                f.axpy(dst, c, b.row(l));
            }
        }
    }
    Ok(out)
}

/// `A · v` for a column vector `v`.
pub fn mul_vec<F: Field>(f: &F, a: &Mat<F::Elem>, v: &[F::Elem]) -> Result<Vec<F::Elem>, LinalgError> {
    if a.cols != v.len() {
        return Err(LinalgError::DimensionMismatch(format!(
            "{:?} times a vector of length {}",
            a.shape(),
            v.len()
        )));
    }
    Ok(a.iter_rows().map(|r| f.dot(r, v)).collect())
}

/// `v · A` for a row vector `v`.
pub fn vec_mul<F: Field>(f: &F, v: &[F::Elem], a: &Mat<F::Elem>) -> Result<Vec<F::Elem>, LinalgError> {
    if a.rows != v.len() {
        return Err(LinalgError::DimensionMismatch(format!(
            "vector of length {} times {:?}",
            v.len(),
            a.shape()
        )));
    }
    let mut out = vec![f.zero(); a.cols];
    for (i, &c) in v.iter().enumerate() {
        f.axpy(&mut out, c, a.row(i));
    }
    Ok(out)
}

/// Reduced row-echelon form together with rank and pivot columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rref<E> {
    pub matrix: Mat<E>,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

/// Gauss-Jordan elimination taking the first nonzero entry of each column as
/// pivot.
pub fn rref<F: Field>(f: &F, a: &Mat<F::Elem>) -> Rref<F::Elem> {
    let mut m = a.clone();
    let pivots = rref_in_place(f, &mut m);
    Rref {
        rank: pivots.len(),
        matrix: m,
        pivots,
    }
}

/// In-place variant of [`rref`]; returns the pivot columns.
pub fn rref_in_place<F: Field>(f: &F, m: &mut Mat<F::Elem>) -> Vec<usize> {
    if let (Some(pf), Some(pm)) = (
        (f as &dyn Any).downcast_ref::<PrimeField>(),
        (m as &mut dyn Any).downcast_mut::<Mat<u32>>(),
    ) {
        if pf.modulus() <= SMALL_PRIME_LIMIT {
            return rref_small_prime(pf, pm);
        }
    }
    rref_generic(f, m)
}

/// Moduli up to this bound use the 16-bit delayed-reduction eliminator.
const SMALL_PRIME_LIMIT: u32 = 256;

/// Gauss-Jordan over GF(q), q ≤ 256, on 16-bit words.
///
/// Row updates add a precomputed reduced multiple of the pivot row without
/// reducing, so each step raises the largest possible entry by at most q − 1.
/// The whole matrix is reduced only when the next step could overflow.
fn rref_small_prime(f: &PrimeField, m: &mut Mat<u32>) -> Vec<usize> {
    let q = f.modulus() as u16;
    let (rows, cols) = m.shape();
    let mut w: Vec<u16> = m.data.iter().map(|&x| x as u16).collect();
    let reduce_all = |w: &mut [u16]| w.iter_mut().for_each(|x| *x %= q);
    let step = q as u32 - 1;
    let mut bound = step;
    let mut table = vec![0u16; q as usize * cols];
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        if bound + step > u16::MAX as u32 {
            reduce_all(&mut w);
            bound = step;
        }
        let Some(p) = (r..rows).find(|&i| w[i * cols + c] % q != 0) else {
            continue;
        };
        if p != r {
            for j in c..cols {
                w.swap(p * cols + j, r * cols + j);
            }
        }
        let width = cols - c;
        let pivot = &mut w[r * cols + c..(r + 1) * cols];
        let s = f.inv((pivot[0] % q) as u32).expect("pivot is nonzero");
        for x in pivot.iter_mut() {
            *x = ((*x % q) as u32 * s % q as u32) as u16;
        }
        // table row k holds k·pivot mod q
        let (first, rest) = table.split_at_mut(width);
        first.fill(0);
        let mut prev: &[u16] = first;
        for chunk in rest.chunks_exact_mut(width).take(q as usize - 1) {
            for ((d, &a), &b) in chunk.iter_mut().zip(prev).zip(&*pivot) {
                let s = a + b;
                *d = if s >= q { s - q } else { s };
            }
            prev = chunk;
        }
        for i in 0..rows {
            if i == r {
                continue;
            }
            let row = &mut w[i * cols + c..(i + 1) * cols];
            let x = row[0] % q;
            if x == 0 {
                continue;
            }
            let k = (q - x) as usize;
            let mult = &table[k * width..(k + 1) * width];
            for (d, &a) in row.iter_mut().zip(mult) {
                *d += a;
            }
        }
        bound += step;
        pivots.push(c);
        r += 1;
    }
    for (d, &x) in m.data.iter_mut().zip(&w) {
        *d = (x % q) as u32;
    }
    pivots
}

fn rref_generic<F: Field>(f: &F, m: &mut Mat<F::Elem>) -> Vec<usize> {
    let (rows, cols) = m.shape();
    let mut pivots = Vec::new();
    let mut pivot_row = vec![f.zero(); cols];
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !f.is_zero(m.get(i, c))) else {
            continue;
        };
        if p != r {
            for j in c..cols {
                m.data.swap(p * cols + j, r * cols + j);
            }
        }
        let inv = f.inv(m.get(r, c)).expect("pivot is nonzero");
        f.scale(&mut m.row_mut(r)[c..], inv);
        let width = cols - c;
        pivot_row[..width].copy_from_slice(&m.row(r)[c..]);
        for i in 0..rows {
            if i == r {
                continue;
            }
            let factor = m.get(i, c);
            if f.is_zero(factor) {
                continue;
            }
            let row = &mut m.data[i * cols + c..(i + 1) * cols];
            f.axpy(row, f.neg(factor), &pivot_row[..width]);
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<F: Field>(f: &F, a: &Mat<F::Elem>) -> usize {
    // eliminate along the shorter dimension
    if a.rows > a.cols {
        rref(f, &a.transpose()).rank
    } else {
        rref(f, a).rank
    }
}

/// Basis of the right kernel `{v : A vᵀ = 0}`, one vector per row.
pub fn kernel<F: Field>(f: &F, a: &Mat<F::Elem>) -> Mat<F::Elem> {
    let Rref { matrix, pivots, .. } = rref(f, a);
    kernel_from_rref(f, &matrix, &pivots)
}

pub fn kernel_from_rref<F: Field>(f: &F, r: &Mat<F::Elem>, pivots: &[usize]) -> Mat<F::Elem> {
    let cols = r.cols;
    let mut is_pivot = vec![false; cols];
    for &p in pivots {
        is_pivot[p] = true;
    }
    let free: Vec<usize> = (0..cols).filter(|&c| !is_pivot[c]).collect();
    let mut out = Mat::zeros(free.len(), cols);
    for (row, &fc) in free.iter().enumerate() {
        out.set(row, fc, f.one());
        for (j, &pc) in pivots.iter().enumerate() {
            out.set(row, pc, f.neg(r.get(j, fc)));
        }
    }
    out
}

pub fn invert<F: Field>(f: &F, a: &Mat<F::Elem>) -> Result<Mat<F::Elem>, LinalgError> {
    let n = a.rows;
    if n != a.cols {
        return Err(LinalgError::NotSquare {
            rows: a.rows,
            cols: a.cols,
        });
    }
    let mut aug = a.hstack(&identity(f, n))?;
    let pivots = rref_in_place(f, &mut aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return Err(LinalgError::Singular);
    }
    let right: Vec<usize> = (n..2 * n).collect();
    Ok(aug.select_columns(&right))
}

pub fn block_diag<E: Copy + Default>(blocks: &[Mat<E>]) -> Result<Mat<E>, LinalgError> {
    if let Some(b) = blocks.iter().find(|b| b.rows != b.cols) {
        return Err(LinalgError::NotSquare {
            rows: b.rows,
            cols: b.cols,
        });
    }
    let n: usize = blocks.iter().map(|b| b.rows).sum();
    let mut out = Mat::zeros(n, n);
    let mut off = 0;
    for b in blocks {
        for i in 0..b.rows {
            out.row_mut(off + i)[off..off + b.cols].copy_from_slice(b.row(i));
        }
        off += b.rows;
    }
    Ok(out)
}

pub fn check_permutation(sigma: &[usize]) -> Result<(), LinalgError> {
    let mut seen = vec![false; sigma.len()];
    for &s in sigma {
        if s >= sigma.len() || seen[s] {
            return Err(LinalgError::InvalidPermutation(sigma.len()));
        }
        seen[s] = true;
    }
    Ok(())
}

pub fn invert_permutation(sigma: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; sigma.len()];
    for (i, &s) in sigma.iter().enumerate() {
        inv[s] = i;
    }
    inv
}

/// `P_σ ⊗ I_λ`, oriented so that `M · P` moves column block `i` of `M` to
/// block `σ(i)`.
pub fn block_permutation<F: Field>(
    f: &F,
    sigma: &[usize],
    lambda: usize,
) -> Result<Mat<F::Elem>, LinalgError> {
    check_permutation(sigma)?;
    let n = sigma.len() * lambda;
    let mut out = Mat::zeros(n, n);
    for (i, &s) in sigma.iter().enumerate() {
        for a in 0..lambda {
            out.set(i * lambda + a, s * lambda + a, f.one());
        }
    }
    Ok(out)
}
