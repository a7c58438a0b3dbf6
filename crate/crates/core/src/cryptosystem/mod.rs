//! Niederreiter-form encryption with shortened expanded GRS codes.
//!
//! Key generation expands a random GRS parity-check matrix `V_r(x, y)` over
//! GF(q^m) into `Ĥ` over GF(q), deletes `m − λ` columns from every width-m
//! block, and hides the result as `H′ = Ĥ_S · T · P_σ`. The public key keeps
//! only the non-identity part of the reduced echelon form of `H′`.

mod format;
mod params;
mod plaintext;

use rand::seq::index::sample;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use thiserror::Error;

use crate::expansion::expand_parity;
use crate::fields::{phi_n, phi_n_inv, ExtField, Field, FieldError, PrimeField};
use crate::grs::{DecodeError, GrsCode, GrsError};
use crate::linalg::{self, Mat};

pub use format::{params_digest, FormatError};
pub use params::{ParamError, SchemeParams};
pub use plaintext::{
    decode_bytes, decode_plaintext, encode_bytes, encode_plaintext, max_message_bytes,
    plaintext_space_size,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CryptoError {
    #[error(transparent)]
    Params(#[from] ParamError),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Grs(#[from] GrsError),
    #[error("could not find a full-rank shortened code after {0} attempts")]
    KeygenExhausted(usize),
    #[error("plaintext has shape n = {n}, λ = {lambda}; key expects n = {want_n}, λ = {want_lambda}")]
    ShapeMismatch {
        n: usize,
        lambda: usize,
        want_n: usize,
        want_lambda: usize,
    },
    #[error("plaintext uses {got} blocks, the key allows at most {t}")]
    TooManyBlocks { got: usize, t: usize },
    #[error("ciphertext has length {got}, expected {expected}")]
    CiphertextLength { expected: usize, got: usize },
    #[error("entry {0} is not reduced modulo q")]
    EntryOutOfRange(u32),
    #[error("invalid key: {0}")]
    InvalidKey(String),
    #[error("invalid block error vector: {0}")]
    InvalidBlockVector(String),
    #[error("decryption failed: {0}")]
    Decryption(String),
    #[error("plaintext rank is out of range")]
    RankOutOfRange,
    #[error("message of {len} bytes exceeds the capacity of {max} bytes")]
    MessageTooLong { len: usize, max: usize },
}

impl From<DecodeError> for CryptoError {
    fn from(e: DecodeError) -> Self {
        CryptoError::Decryption(e.to_string())
    }
}

/// A vector in GF(q)^{λn} whose support lies in a few width-λ blocks.
///
/// Stored canonically: blocks sorted by index, all-zero blocks omitted.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BlockErrorVector {
    n: usize,
    lambda: usize,
    blocks: Vec<(usize, Vec<u32>)>,
}

impl BlockErrorVector {
    pub fn zero(n: usize, lambda: usize) -> Self {
        Self {
            n,
            lambda,
            blocks: Vec::new(),
        }
    }

    /// Builds from `(block index, λ values)` pairs in any order. Zero blocks
    /// are dropped; repeated indices are rejected.
    pub fn new(n: usize, lambda: usize, mut blocks: Vec<(usize, Vec<u32>)>) -> Result<Self, CryptoError> {
        let bad = |s: String| Err(CryptoError::InvalidBlockVector(s));
        blocks.sort_by_key(|b| b.0);
        if blocks.windows(2).any(|w| w[0].0 == w[1].0) {
            return bad("repeated block index".to_string());
        }
        for (i, v) in &blocks {
            if *i >= n {
                return bad(format!("block index {i} out of range for n = {n}"));
            }
            if v.len() != lambda {
                return bad(format!("block {i} has {} entries, expected {lambda}", v.len()));
            }
        }
        blocks.retain(|(_, v)| v.iter().any(|&x| x != 0));
        Ok(Self { n, lambda, blocks })
    }

    pub fn from_dense(dense: &[u32], lambda: usize) -> Result<Self, CryptoError> {
        if lambda == 0 || dense.len() % lambda != 0 {
            return Err(CryptoError::InvalidBlockVector(format!(
                "length {} is not a multiple of λ = {lambda}",
                dense.len()
            )));
        }
        let blocks = dense
            .chunks(lambda)
            .enumerate()
            .filter(|(_, c)| c.iter().any(|&x| x != 0))
            .map(|(i, c)| (i, c.to_vec()))
            .collect();
        Ok(Self {
            n: dense.len() / lambda,
            lambda,
            blocks,
        })
    }

    pub fn to_dense(&self) -> Vec<u32> {
        let mut out = vec![0; self.n * self.lambda];
        for (i, v) in &self.blocks {
            out[i * self.lambda..(i + 1) * self.lambda].copy_from_slice(v);
        }
        out
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn lambda(&self) -> usize {
        self.lambda
    }

    /// Nonzero blocks in increasing index order.
    pub fn blocks(&self) -> &[(usize, Vec<u32>)] {
        &self.blocks
    }

    pub fn support(&self) -> Vec<usize> {
        self.blocks.iter().map(|b| b.0).collect()
    }

    pub fn block_weight(&self) -> usize {
        self.blocks.len()
    }

    /// Uniformly random vector with exactly `t` nonzero blocks.
    pub fn random<R: Rng + ?Sized>(n: usize, lambda: usize, q: u32, t: usize, rng: &mut R) -> Self {
        let mut blocks: Vec<(usize, Vec<u32>)> = sample(rng, n, t)
            .into_iter()
            .map(|i| {
                let v = loop {
                    let v: Vec<u32> = (0..lambda).map(|_| rng.gen_range(0..q)).collect();
                    if v.iter().any(|&x| x != 0) {
                        break v;
                    }
                };
                (i, v)
            })
            .collect();
        blocks.sort_by_key(|b| b.0);
        Self { n, lambda, blocks }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Ciphertext {
    pub syndrome: Vec<u32>,
}

/// Public key: `H_sys = U·H′`, the reduced echelon form of `H′`.
///
/// Only the `m(n−k) × k′` block of non-pivot columns is stored; pivot
/// column `pivots[j]` of `H_sys` is the unit vector `e_j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PublicKey {
    params: SchemeParams,
    pivots: Vec<usize>,
    /// Transposed non-pivot part: row `c` is column `free[c]` of `H_sys`.
    redundancy_t: Mat<u32>,
    free: Vec<usize>,
    /// For every column of `H_sys`, `(true, j)` for pivot `j` or `(false, c)`
    /// for row `c` of `redundancy_t`.
    column_kind: Vec<(bool, usize)>,
}

impl PublicKey {
    pub fn from_parts(params: SchemeParams, pivots: Vec<usize>, redundancy: &Mat<u32>) -> Result<Self, CryptoError> {
        params.validate()?;
        let rows = params.pub_rows();
        let cols = params.pub_cols();
        let bad = |s: &str| Err(CryptoError::InvalidKey(s.to_string()));
        if let Some(&v) = redundancy.data().iter().find(|&&v| v >= params.q) {
            return Err(CryptoError::EntryOutOfRange(v));
        }
        if pivots.len() != rows || pivots.windows(2).any(|w| w[0] >= w[1]) || pivots.last().is_some_and(|&p| p >= cols) {
            return bad("public key pivots must be strictly increasing column indices");
        }
        if redundancy.shape() != (rows, cols - rows) {
            return bad("public key redundancy block has the wrong shape");
        }
        let mut column_kind = vec![(false, 0); cols];
        for (j, &p) in pivots.iter().enumerate() {
            column_kind[p] = (true, j);
        }
        let free: Vec<usize> = (0..cols).filter(|&c| !column_kind[c].0).collect();
        for (c, &col) in free.iter().enumerate() {
            column_kind[col] = (false, c);
        }
        Ok(Self {
            params,
            pivots,
            redundancy_t: redundancy.transpose(),
            free,
            column_kind,
        })
    }

    pub fn params(&self) -> &SchemeParams {
        &self.params
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Non-pivot columns, `m(n−k) × k′`.
    pub fn redundancy(&self) -> Mat<u32> {
        self.redundancy_t.transpose()
    }

    /// The full `m(n−k) × λn` systematic matrix.
    pub fn matrix(&self) -> Mat<u32> {
        let rows = self.params.pub_rows();
        let cols = self.params.pub_cols();
        let mut out = Mat::zeros(rows, cols);
        for (j, &p) in self.pivots.iter().enumerate() {
            out.set(j, p, 1);
        }
        for (c, &col) in self.free.iter().enumerate() {
            for (i, &v) in self.redundancy_t.row(c).iter().enumerate() {
                out.set(i, col, v);
            }
        }
        out
    }

    /// Bits needed for the stored redundancy block.
    pub fn stored_bits(&self) -> u64 {
        let entries = (self.params.pub_rows() * self.free.len()) as f64;
        (entries * (self.params.q as f64).log2()).floor() as u64
    }

    pub fn encrypt(&self, y: &BlockErrorVector) -> Result<Ciphertext, CryptoError> {
        let p = &self.params;
        if y.n != p.n || y.lambda != p.lambda {
            return Err(CryptoError::ShapeMismatch {
                n: y.n,
                lambda: y.lambda,
                want_n: p.n,
                want_lambda: p.lambda,
            });
        }
        if y.block_weight() > p.t {
            return Err(CryptoError::TooManyBlocks {
                got: y.block_weight(),
                t: p.t,
            });
        }
        let f = PrimeField::new(p.q)?;
        let mut c = vec![0u32; p.pub_rows()];
        for (b, vals) in &y.blocks {
            for (a, &v) in vals.iter().enumerate() {
                if v >= p.q {
                    return Err(CryptoError::EntryOutOfRange(v));
                }
                if v == 0 {
                    continue;
                }
                match self.column_kind[b * p.lambda + a] {
                    (true, j) => c[j] = f.add(c[j], v),
                    (false, r) => f.axpy(&mut c, v, self.redundancy_t.row(r)),
                }
            }
        }
        Ok(Ciphertext { syndrome: c })
    }

    /// Generator matrix of the public code `{v : H′ vᵀ = 0}`, `k′ × λn`.
    pub fn generator(&self) -> Mat<u32> {
        let f = PrimeField::new(self.params.q).expect("validated params");
        linalg::kernel_from_rref(&f, &self.matrix(), &self.pivots)
    }
}

/// Secret data: the GRS code, the shortening set, and the block scrambler
/// `Q = T·P_σ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrivateKey {
    params: SchemeParams,
    code: GrsCode,
    /// Per block, the sorted offsets in `0..m` that were deleted (`S_i`).
    shortened: Vec<Vec<usize>>,
    /// Per block, the sorted offsets in `0..m` that were kept.
    kept: Vec<Vec<usize>>,
    t_blocks: Vec<Mat<u32>>,
    t_inverses: Vec<Mat<u32>>,
    sigma: Vec<usize>,
    pivots: Vec<usize>,
    /// `H′[:, pivots]`, which undoes the echelon transform `U`.
    unscramble: Mat<u32>,
}

impl PrivateKey {
    /// Validates the secret components and fills the derived caches, leaving
    /// the pivot data empty.
    fn build(
        params: SchemeParams,
        code: GrsCode,
        shortened: Vec<Vec<usize>>,
        t_blocks: Vec<Mat<u32>>,
        sigma: Vec<usize>,
    ) -> Result<Self, CryptoError> {
        let fq = PrimeField::new(params.q)?;
        let m = params.m;
        let bad = |s: &str| Err(CryptoError::InvalidKey(s.to_string()));
        if code.n() != params.n || code.k() != params.k || code.field().q() != params.q || code.field().m() != m {
            return bad("GRS code does not match the parameters");
        }
        if shortened.len() != params.n || t_blocks.len() != params.n || sigma.len() != params.n {
            return bad("private key block count differs from n");
        }
        if linalg::check_permutation(&sigma).is_err() {
            return bad("σ is not a permutation");
        }
        let mut kept = Vec::with_capacity(params.n);
        for s in &shortened {
            if s.len() != m - params.lambda || s.windows(2).any(|w| w[0] >= w[1]) || s.iter().any(|&o| o >= m) {
                return bad("each S_i must be a sorted set of m − λ offsets in 0..m");
            }
            kept.push((0..m).filter(|o| !s.contains(o)).collect::<Vec<_>>());
        }
        let mut t_inverses = Vec::with_capacity(params.n);
        for t in &t_blocks {
            if t.shape() != (params.lambda, params.lambda) || t.data().iter().any(|&v| v >= params.q) {
                return bad("T blocks must be λ×λ over GF(q)");
            }
            match linalg::invert(&fq, t) {
                Ok(inv) => t_inverses.push(inv),
                Err(_) => return bad("singular T block"),
            }
        }
        Ok(Self {
            params,
            code,
            shortened,
            kept,
            t_blocks,
            t_inverses,
            sigma,
            pivots: Vec::new(),
            unscramble: Mat::zeros(0, 0),
        })
    }

    fn set_pivots(&mut self, pivots: Vec<usize>, h_prime: &Mat<u32>) -> Result<(), CryptoError> {
        let rows = self.params.pub_rows();
        if pivots.len() != rows
            || pivots.windows(2).any(|w| w[0] >= w[1])
            || pivots.last().is_some_and(|&p| p >= self.params.pub_cols())
        {
            return Err(CryptoError::InvalidKey(
                "pivots must be m(n−k) strictly increasing column indices".to_string(),
            ));
        }
        self.unscramble = h_prime.select_columns(&pivots);
        self.pivots = pivots;
        Ok(())
    }

    /// Reassembles a key from its stored components, checking that the
    /// pivot columns of `H′` are independent.
    pub fn from_components(
        params: SchemeParams,
        code: GrsCode,
        shortened: Vec<Vec<usize>>,
        t_blocks: Vec<Mat<u32>>,
        sigma: Vec<usize>,
        pivots: Vec<usize>,
    ) -> Result<Self, CryptoError> {
        params.validate()?;
        let mut key = Self::build(params, code, shortened, t_blocks, sigma)?;
        let h = key.h_prime();
        key.set_pivots(pivots, &h)?;
        let fq = PrimeField::new(params.q)?;
        if linalg::rank(&fq, &key.unscramble) != params.pub_rows() {
            return Err(CryptoError::InvalidKey("pivot columns of H′ are dependent".to_string()));
        }
        Ok(key)
    }

    pub fn params(&self) -> &SchemeParams {
        &self.params
    }

    pub fn code(&self) -> &GrsCode {
        &self.code
    }

    pub fn field(&self) -> &ExtField {
        self.code.field()
    }

    /// `S` as sorted global column indices of `Ĥ`.
    pub fn shortening_set(&self) -> Vec<usize> {
        let m = self.params.m;
        self.shortened
            .iter()
            .enumerate()
            .flat_map(|(i, s)| s.iter().map(move |&o| i * m + o))
            .collect()
    }

    pub fn shortened_offsets(&self) -> &[Vec<usize>] {
        &self.shortened
    }

    pub fn t_blocks(&self) -> &[Mat<u32>] {
        &self.t_blocks
    }

    pub fn sigma(&self) -> &[usize] {
        &self.sigma
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// `Ĥ_S`: the expanded parity matrix with the columns in `S` deleted.
    pub fn h_shortened(&self) -> Mat<u32> {
        let h_hat = expand_parity(&self.code.parity_matrix(), self.field()).matrix;
        let m = self.params.m;
        let keep: Vec<usize> = self
            .kept
            .iter()
            .enumerate()
            .flat_map(|(i, k)| k.iter().map(move |&o| i * m + o))
            .collect();
        h_hat.select_columns(&keep)
    }

    /// `H′ = Ĥ_S · T · P_σ`, computed block by block.
    pub fn h_prime(&self) -> Mat<u32> {
        let fq = PrimeField::new(self.params.q).expect("validated params");
        let hs = self.h_shortened();
        let lambda = self.params.lambda;
        let rows = hs.rows();
        let mut out = Mat::zeros(rows, self.params.pub_cols());
        let idx: Vec<usize> = (0..lambda).collect();
        for (i, t) in self.t_blocks.iter().enumerate() {
            let cols: Vec<usize> = idx.iter().map(|a| i * lambda + a).collect();
            let block = linalg::mul(&fq, &hs.select_columns(&cols), t).expect("λ columns");
            let dst = self.sigma[i] * lambda;
            for r in 0..rows {
                out.row_mut(r)[dst..dst + lambda].copy_from_slice(block.row(r));
            }
        }
        out
    }

    /// Dense `Q = T · P_σ`.
    pub fn q_matrix(&self) -> Mat<u32> {
        let fq = PrimeField::new(self.params.q).expect("validated params");
        let t = linalg::block_diag(&self.t_blocks).expect("square blocks");
        let p = linalg::block_permutation(&fq, &self.sigma, self.params.lambda).expect("valid σ");
        linalg::mul(&fq, &t, &p).expect("square")
    }

    /// Dense `Q^{−1} = P_σ^{−1} · T^{−1}`.
    pub fn q_inverse(&self) -> Mat<u32> {
        let fq = PrimeField::new(self.params.q).expect("validated params");
        let tinv = linalg::block_diag(&self.t_inverses).expect("square blocks");
        let pinv = linalg::block_permutation(&fq, &linalg::invert_permutation(&self.sigma), self.params.lambda)
            .expect("valid σ");
        linalg::mul(&fq, &pinv, &tinv).expect("square")
    }

    /// `Q yᵀ` computed blockwise: block `i` is `T_i · y_{σ(i)}`.
    pub fn scramble(&self, y: &[u32]) -> Vec<u32> {
        let fq = PrimeField::new(self.params.q).expect("validated params");
        let lambda = self.params.lambda;
        let mut out = vec![0; y.len()];
        for (i, t) in self.t_blocks.iter().enumerate() {
            let src = &y[self.sigma[i] * lambda..(self.sigma[i] + 1) * lambda];
            let v = linalg::mul_vec(&fq, t, src).expect("λ entries");
            out[i * lambda..(i + 1) * lambda].copy_from_slice(&v);
        }
        out
    }

    pub fn decrypt(&self, c: &Ciphertext) -> Result<BlockErrorVector, CryptoError> {
        let p = &self.params;
        if c.syndrome.len() != p.pub_rows() {
            return Err(CryptoError::CiphertextLength {
                expected: p.pub_rows(),
                got: c.syndrome.len(),
            });
        }
        if let Some(&v) = c.syndrome.iter().find(|&&v| v >= p.q) {
            return Err(CryptoError::EntryOutOfRange(v));
        }
        let fq = PrimeField::new(p.q)?;
        let field = self.field();
        let original = linalg::mul_vec(&fq, &self.unscramble, &c.syndrome).expect("square");
        let s = phi_n_inv(field, &original)?;
        let e = self.code.syndrome_decode(&s)?;
        let embedded = phi_n(field, &e);
        let m = p.m;
        let lambda = p.lambda;
        let mut blocks = Vec::new();
        for (i, (short, keep)) in self.shortened.iter().zip(&self.kept).enumerate() {
            if short.iter().any(|&o| embedded[i * m + o] != 0) {
                return Err(CryptoError::Decryption(
                    "decoded error touches a shortened position".to_string(),
                ));
            }
            let z: Vec<u32> = keep.iter().map(|&o| embedded[i * m + o]).collect();
            if z.iter().any(|&v| v != 0) {
                let yb = linalg::mul_vec(&fq, &self.t_inverses[i], &z).expect("λ entries");
                blocks.push((self.sigma[i], yb));
            }
        }
        if blocks.len() > p.t {
            return Err(CryptoError::TooManyBlocks {
                got: blocks.len(),
                t: p.t,
            });
        }
        BlockErrorVector::new(p.n, lambda, blocks)
    }
}

/// Keygen resamples S, T and σ at most this many times if `H′` is rank deficient.
const KEYGEN_ATTEMPTS: usize = 64;

pub fn keygen<R: Rng + ?Sized>(params: &SchemeParams, rng: &mut R) -> Result<(PrivateKey, PublicKey), CryptoError> {
    params.validate()?;
    let field = ExtField::new(params.q, params.m)?;
    let fq = field.base().clone();
    let code = GrsCode::random(field, params.n, params.k, rng)?;
    for _ in 0..KEYGEN_ATTEMPTS {
        let shortened: Vec<Vec<usize>> = (0..params.n)
            .map(|_| {
                let mut s = sample(rng, params.m, params.m - params.lambda).into_vec();
                s.sort_unstable();
                s
            })
            .collect();
        let t_blocks: Vec<Mat<u32>> = (0..params.n)
            .map(|_| random_invertible(&fq, params.lambda, rng))
            .collect();
        let mut sigma: Vec<usize> = (0..params.n).collect();
        sigma.shuffle(rng);

        let mut sk = PrivateKey::build(*params, code.clone(), shortened, t_blocks, sigma)?;
        let h = sk.h_prime();
        let rr = linalg::rref(&fq, &h);
        if rr.rank < params.pub_rows() {
            continue;
        }
        sk.set_pivots(rr.pivots.clone(), &h)?;
        let free: Vec<usize> = (0..params.pub_cols()).filter(|c| rr.pivots.binary_search(c).is_err()).collect();
        let redundancy = rr.matrix.select_columns(&free);
        let pk = PublicKey::from_parts(*params, rr.pivots, &redundancy)?;
        return Ok((sk, pk));
    }
    Err(CryptoError::KeygenExhausted(KEYGEN_ATTEMPTS))
}

/// Uniform element of GL(λ, q) by rejection sampling.
fn random_invertible<R: Rng + ?Sized>(fq: &PrimeField, lambda: usize, rng: &mut R) -> Mat<u32> {
    loop {
        let t = Mat::from_fn(lambda, lambda, |_, _| fq.random(rng));
        if linalg::rank(fq, &t) == lambda {
            return t;
        }
    }
}

pub fn keygen_from_seed(params: &SchemeParams, seed: u64) -> Result<(PrivateKey, PublicKey), CryptoError> {
    keygen(params, &mut ChaCha20Rng::seed_from_u64(seed))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand_chacha::ChaCha8Rng;

    fn toy_keys(seed: u64) -> (PrivateKey, PublicKey) {
        keygen_from_seed(&SchemeParams::toy(), seed).unwrap()
    }

    #[test]
    fn toy_shapes_and_relations() {
        let (sk, pk) = toy_keys(1);
        let fq = PrimeField::new(3).unwrap();
        let h = sk.h_prime();
        assert_eq!(h.shape(), (18, 40));
        assert_eq!(pk.matrix().shape(), (18, 40));
        assert_eq!(pk.redundancy().shape(), (18, 22));
        // H′ = Ĥ_S · Q
        let hq = linalg::mul(&fq, &sk.h_shortened(), &sk.q_matrix()).unwrap();
        assert_eq!(hq, h);
        assert_eq!(
            linalg::mul(&fq, &sk.q_matrix(), &sk.q_inverse()).unwrap(),
            linalg::identity(&fq, 40)
        );
        // H′ = U^{-1} · H_sys
        assert_eq!(linalg::mul(&fq, &sk.unscramble, &pk.matrix()).unwrap(), h);
        assert_eq!(linalg::rank(&fq, &h), 18);
        assert_eq!(sk.shortening_set().len(), 20);
        assert!(sk.shortened_offsets().iter().all(|s| s.len() == 1));
        assert_eq!(pk.stored_bits(), (18.0 * 22.0 * 3f64.log2()).floor() as u64);
    }

    #[test]
    fn scramble_moves_support_to_preimage_blocks() {
        let (sk, _) = toy_keys(2);
        let fq = PrimeField::new(3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..50 {
            let y = BlockErrorVector::random(20, 2, 3, 3, &mut rng);
            let z = sk.scramble(&y.to_dense());
            assert_eq!(z, linalg::mul_vec(&fq, &sk.q_matrix(), &y.to_dense()).unwrap());
            let zb = BlockErrorVector::from_dense(&z, 2).unwrap();
            let inv = linalg::invert_permutation(sk.sigma());
            let mut expect: Vec<usize> = y.support().iter().map(|&b| inv[b]).collect();
            expect.sort_unstable();
            assert_eq!(zb.support(), expect);
        }
    }

    #[test]
    fn keygen_is_deterministic() {
        let (a, pa) = toy_keys(5);
        let (b, pb) = toy_keys(5);
        assert_eq!(a, b);
        assert_eq!(pa, pb);
        let (c, _) = toy_keys(6);
        assert_ne!(a.shortening_set(), c.shortening_set());
    }

    #[test]
    fn rejects_invalid_params() {
        let p = SchemeParams::with_max_t(3, 3, 2, 20, 6);
        assert!(matches!(
            keygen_from_seed(&p, 0),
            Err(CryptoError::Params(ParamError::RateTooLow { k_prime: -2 }))
        ));
    }

    #[test]
    fn encryption_matches_dense_product_and_is_linear() {
        let (_, pk) = toy_keys(3);
        let fq = PrimeField::new(3).unwrap();
        let h = pk.matrix();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let zero = pk.encrypt(&BlockErrorVector::zero(20, 2)).unwrap();
        assert!(zero.syndrome.iter().all(|&v| v == 0));
        for _ in 0..50 {
            let y1 = BlockErrorVector::random(20, 2, 3, 1, &mut rng);
            let y2 = BlockErrorVector::random(20, 2, 3, 2, &mut rng);
            let c1 = pk.encrypt(&y1).unwrap();
            assert_eq!(c1.syndrome, linalg::mul_vec(&fq, &h, &y1.to_dense()).unwrap());
            let sum: Vec<u32> = y1.to_dense().iter().zip(y2.to_dense()).map(|(&a, b)| fq.add(a, b)).collect();
            let ys = BlockErrorVector::from_dense(&sum, 2).unwrap();
            if ys.block_weight() <= 3 {
                let c2 = pk.encrypt(&y2).unwrap();
                let cs = pk.encrypt(&ys).unwrap();
                let expect: Vec<u32> = c1.syndrome.iter().zip(&c2.syndrome).map(|(&a, &b)| fq.add(a, b)).collect();
                assert_eq!(cs.syndrome, expect);
            }
        }
        let four = BlockErrorVector::random(20, 2, 3, 4, &mut rng);
        assert!(matches!(pk.encrypt(&four), Err(CryptoError::TooManyBlocks { got: 4, t: 3 })));
    }

    #[test]
    fn toy_round_trips() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for seed in 0..10 {
            let (sk, pk) = toy_keys(100 + seed);
            for _ in 0..100 {
                let t = rng.gen_range(0..=3);
                let y = BlockErrorVector::random(20, 2, 3, t, &mut rng);
                assert_eq!(sk.decrypt(&pk.encrypt(&y).unwrap()).unwrap(), y);
            }
        }
    }

    #[test]
    fn invalid_ciphertexts_fail_loudly() {
        let (sk, pk) = toy_keys(7);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut failures = 0;
        for _ in 0..300 {
            let c = Ciphertext {
                syndrome: (0..18).map(|_| rng.gen_range(0..3)).collect(),
            };
            match sk.decrypt(&c) {
                Ok(y) => assert_eq!(pk.encrypt(&y).unwrap(), c),
                Err(_) => failures += 1,
            }
        }
        assert!(failures > 0);
        assert!(matches!(
            sk.decrypt(&Ciphertext { syndrome: vec![0; 17] }),
            Err(CryptoError::CiphertextLength { expected: 18, got: 17 })
        ));
    }

    #[test]
    fn text_round_trips() {
        let p = SchemeParams::toy();
        let (sk, pk) = toy_keys(8);
        let pk2 = PublicKey::from_text(&pk.to_text()).unwrap();
        assert_eq!(pk2, pk);
        let sk2 = PrivateKey::from_text(&sk.to_text()).unwrap();
        assert_eq!(sk2, sk);
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let y = BlockErrorVector::random(20, 2, 3, 3, &mut rng);
        let c = pk.encrypt(&y).unwrap();
        assert_eq!(Ciphertext::from_text(&c.to_text(&p), &p).unwrap(), c);
        assert_eq!(BlockErrorVector::from_text(&y.to_text(&p), &p).unwrap(), y);
        assert_eq!(sk2.decrypt(&c).unwrap(), y);
    }

    #[test]
    fn malformed_text_is_rejected() {
        let p = SchemeParams::toy();
        let (sk, pk) = toy_keys(9);
        let text = pk.to_text();
        assert!(matches!(
            PublicKey::from_text(&text.replace("XRS-1", "XRS-0")),
            Err(FormatError::BadTag { .. })
        ));
        assert!(matches!(
            PrivateKey::from_text(&text),
            Err(FormatError::BadTag { .. })
        ));
        let truncated: String = text.lines().take(5).map(|l| format!("{l}\n")).collect();
        assert!(PublicKey::from_text(&truncated).is_err());
        let c = Ciphertext { syndrome: vec![0; 18] }.to_text(&p);
        assert_eq!(
            Ciphertext::from_text(&c, &SchemeParams::micro()),
            Err(FormatError::DigestMismatch)
        );
        let mut bad_sk = sk.to_text();
        bad_sk = bad_sk.replacen("sigma 0", "sigma x", 1).replacen("sigma ", "sigma 99 ", 1);
        assert!(PrivateKey::from_text(&bad_sk).is_err());
    }
}
