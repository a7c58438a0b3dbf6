//! Schur products, square codes and the distinguisher experiment.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use serde::Serialize;

use crate::cryptosystem::{keygen, CryptoError, SchemeParams};
use crate::expansion::expand_generator;
use crate::fields::{Field, PrimeField};
use crate::linalg::{self, LinalgError, Mat};

/// Component-wise product.
pub fn schur_product<F: Field>(f: &F, x: &[F::Elem], y: &[F::Elem]) -> Result<Vec<F::Elem>, LinalgError> {
    if x.len() != y.len() {
        return Err(LinalgError::DimensionMismatch(format!(
            "Schur product of lengths {} and {}",
            x.len(),
            y.len()
        )));
    }
    Ok(x.iter().zip(y).map(|(&a, &b)| f.mul(a, b)).collect())
}

/// `s(k) = (k² + k)/2`.
pub fn s(k: usize) -> usize {
    k * (k + 1) / 2
}

/// Rows `g_i ⋆ g_j` for `i ≤ j` in lexicographic order.
pub fn schur_matrix<F: Field>(f: &F, g: &Mat<F::Elem>) -> Mat<F::Elem> {
    let (k, n) = g.shape();
    let mut data = Vec::with_capacity(s(k) * n);
    for i in 0..k {
        for j in i..k {
            data.extend(g.row(i).iter().zip(g.row(j)).map(|(&a, &b)| f.mul(a, b)));
        }
    }
    Mat::from_vec(s(k), n, data).expect("s(k) rows")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SquareReport {
    /// Dimension of the code (rank of the input generator).
    pub k: usize,
    pub length: usize,
    pub dim: usize,
    /// `min(s(k), length)`.
    pub max_possible: usize,
    pub deficient: bool,
}

/// Dimension of the square code of the row space of `g`.
pub fn square_dim<F: Field>(f: &F, g: &Mat<F::Elem>) -> SquareReport {
    let rr = linalg::rref(f, g);
    let basis = rr.matrix.select_rows(&(0..rr.rank).collect::<Vec<_>>());
    let dim = linalg::rank(f, &schur_matrix(f, &basis));
    let max_possible = s(rr.rank).min(g.cols());
    SquareReport {
        k: rr.rank,
        length: g.cols(),
        dim,
        max_possible,
        deficient: dim < max_possible,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ArmReport {
    pub arm: String,
    #[serde(flatten)]
    pub square: SquareReport,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DistinguisherReport {
    pub seed: u64,
    pub q: u32,
    pub m: usize,
    pub lambda: usize,
    pub n: usize,
    pub k: usize,
    pub arms: Vec<ArmReport>,
}

/// Square-code dimensions for one random key: the expanded GRS code, the
/// public (shortened and scrambled) code, and a random code of the public
/// code's length and dimension.
pub fn distinguisher_experiment(params: &SchemeParams, seed: u64) -> Result<DistinguisherReport, CryptoError> {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let (sk, pk) = keygen(params, &mut rng)?;
    let fq = PrimeField::new(params.q)?;
    let g_hat = expand_generator(&sk.code().generator(), sk.field()).matrix;
    let g_pub = pk.generator();
    let g_rand = random_matrix(&fq, g_pub.rows(), g_pub.cols(), &mut rng);
    let arms = [("expanded", g_hat), ("public", g_pub), ("random", g_rand)]
        .into_iter()
        .map(|(name, g)| ArmReport {
            arm: name.to_string(),
            square: square_dim(&fq, &g),
        })
        .collect();
    Ok(DistinguisherReport {
        seed,
        q: params.q,
        m: params.m,
        lambda: params.lambda,
        n: params.n,
        k: params.k,
        arms,
    })
}

fn random_matrix<R: Rng + ?Sized>(f: &PrimeField, rows: usize, cols: usize, rng: &mut R) -> Mat<u32> {
    Mat::from_fn(rows, cols, |_, _| f.random(rng))
}
