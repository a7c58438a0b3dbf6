//! Block-wise information set decoding: a cost model and a working attack
//! for small parameters.

use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use serde::Serialize;
use thiserror::Error;

use crate::cryptosystem::{BlockErrorVector, Ciphertext, CryptoError, ParamError, PublicKey, SchemeParams};
use crate::fields::{Field, PrimeField};
use crate::linalg::{self, Mat};

#[derive(Debug, Error)]
pub enum IsdError {
    #[error("{t} error blocks exceed the {redundancy} redundant blocks")]
    Infeasible { t: usize, redundancy: usize },
    #[error("public code dimension {k_prime} is not a multiple of the block width {lambda}")]
    NotBlockAligned { k_prime: usize, lambda: usize },
    #[error("p = {p}, ell = {ell} out of range for K = {k_blocks}, N − K = {redundancy}, t = {t}")]
    BadSplit {
        p: usize,
        ell: usize,
        k_blocks: usize,
        redundancy: usize,
        t: usize,
    },
    #[error("no error vector found within {iterations} iterations")]
    BudgetExhausted { iterations: u64 },
    #[error(transparent)]
    Params(#[from] ParamError),
    #[error(transparent)]
    Crypto(#[from] CryptoError),
}

/// Optimal parameters and costs (all logarithms base 2).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IsdCostReport {
    pub p: usize,
    pub ell: usize,
    pub n_blocks: usize,
    pub k_blocks: usize,
    pub t: usize,
    pub block_width: usize,
    pub log2_success: f64,
    pub log2_iterations: f64,
    pub log2_iteration_cost: f64,
    pub total_bits: f64,
}

/// Dimensions fed to the cost model. `width` is the number of GF(q) columns
/// per position, `patterns` the number of nonzero patterns per position.
#[derive(Debug, Clone, Copy)]
struct Model {
    n: usize,
    k: usize,
    t: usize,
    width: usize,
    patterns: f64,
    q: f64,
    length: usize,
    redundancy: usize,
}

struct LogBinomial {
    ln_fact: Vec<f64>,
}

impl LogBinomial {
    fn new(max: usize) -> Self {
        let mut ln_fact = Vec::with_capacity(max + 1);
        let mut acc = 0.0f64;
        ln_fact.push(0.0);
        for i in 1..=max {
            acc += (i as f64).ln();
            ln_fact.push(acc);
        }
        LogBinomial { ln_fact }
    }

    /// `log2 C(n, k)`, or −∞ when `k > n`.
    fn log2(&self, n: usize, k: usize) -> f64 {
        if k > n {
            return f64::NEG_INFINITY;
        }
        (self.ln_fact[n] - self.ln_fact[k] - self.ln_fact[n - k]) / std::f64::consts::LN_2
    }
}

fn log2_add(a: f64, b: f64) -> f64 {
    if a == f64::NEG_INFINITY {
        return b;
    }
    if b == f64::NEG_INFINITY {
        return a;
    }
    let (hi, lo) = if a > b { (a, b) } else { (b, a) };
    hi + (lo - hi).exp2().ln_1p() / std::f64::consts::LN_2
}

impl Model {
    fn block(params: &SchemeParams, t: usize) -> Self {
        let k_prime = params.k_prime().max(0) as usize;
        let length = params.pub_cols();
        Model {
            n: params.n,
            k: k_prime / params.lambda,
            t,
            width: params.lambda,
            patterns: (params.q as f64).powi(params.lambda as i32) - 1.0,
            q: params.q as f64,
            length,
            redundancy: length - k_prime,
        }
    }

    fn classical(params: &SchemeParams, t: usize) -> Self {
        let k_prime = params.k_prime().max(0) as usize;
        let length = params.pub_cols();
        Model {
            n: length,
            k: k_prime,
            t: t * params.lambda,
            width: 1,
            patterns: params.q as f64 - 1.0,
            q: params.q as f64,
            length,
            redundancy: length - k_prime,
        }
    }

    fn log2_success(&self, lb: &LogBinomial, p: usize, ell: usize) -> f64 {
        let (half_hi, half_lo) = (self.k.div_ceil(2), self.k / 2);
        if 2 * p > self.t || self.k + ell > self.n {
            return f64::NEG_INFINITY;
        }
        lb.log2(half_hi, p) + lb.log2(half_lo, p) + lb.log2(self.n - self.k - ell, self.t - 2 * p)
            - lb.log2(self.n, self.t)
    }

    fn log2_iteration_cost(&self, lb: &LogBinomial, p: usize, ell: usize) -> f64 {
        let (half_hi, half_lo) = (self.k.div_ceil(2), self.k / 2);
        let red = (self.redundancy as f64).log2();
        let elimination = 2.0 * red + (self.length as f64).log2();
        let lists = if p == 0 || ell == 0 {
            f64::NEG_INFINITY
        } else {
            log2_add(lb.log2(half_hi, p), lb.log2(half_lo, p))
                + p as f64 * self.patterns.log2()
                + ((p * self.width) as f64).log2()
                + ((ell * self.width) as f64).log2()
        };
        let collisions = lb.log2(half_hi, p) + lb.log2(half_lo, p) + 2.0 * p as f64 * self.patterns.log2()
            - (self.width * ell) as f64 * self.q.log2()
            + red;
        log2_add(log2_add(elimination, lists), collisions)
    }

    fn optimise(&self) -> Result<IsdCostReport, IsdError> {
        if self.t > self.n - self.k {
            return Err(IsdError::Infeasible {
                t: self.t,
                redundancy: self.n - self.k,
            });
        }
        let lb = LogBinomial::new(self.n.max(self.length));
        let mut best: Option<IsdCostReport> = None;
        for p in 0..=(self.t / 2).min(self.k / 2) {
            for ell in 0..=(self.n - self.k) {
                if self.n - self.k - ell < self.t - 2 * p {
                    break;
                }
                let success = self.log2_success(&lb, p, ell);
                let cost = self.log2_iteration_cost(&lb, p, ell);
                let total = cost - success;
                if best.as_ref().is_none_or(|b| total < b.total_bits) {
                    best = Some(IsdCostReport {
                        p,
                        ell,
                        n_blocks: self.n,
                        k_blocks: self.k,
                        t: self.t,
                        block_width: self.width,
                        log2_success: success,
                        log2_iterations: -success,
                        log2_iteration_cost: cost,
                        total_bits: total,
                    });
                }
            }
        }
        best.ok_or(IsdError::Infeasible {
            t: self.t,
            redundancy: self.n - self.k,
        })
    }
}

/// Cheapest block Stern configuration against `t` error blocks (defaults to
/// the parameter set's `t`).
pub fn isd_estimate(params: &SchemeParams, t: Option<usize>) -> Result<IsdCostReport, IsdError> {
    params.validate()?;
    Model::block(params, t.unwrap_or(params.t)).optimise()
}

/// The same model on the public code viewed as an ordinary code with
/// `λ·t` independent error positions.
pub fn classical_estimate(params: &SchemeParams, t: Option<usize>) -> Result<IsdCostReport, IsdError> {
    params.validate()?;
    Model::classical(params, t.unwrap_or(params.t)).optimise()
}

/// Probability that one iteration with split `(p, ℓ)` isolates an error
/// with exactly `t` blocks.
pub fn success_probability(params: &SchemeParams, p: usize, ell: usize) -> f64 {
    let model = Model::block(params, params.t);
    let lb = LogBinomial::new(model.n.max(model.length));
    model.log2_success(&lb, p, ell).exp2()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AttackOutcome {
    pub error: BlockErrorVector,
    /// Iterations with an invertible redundancy part, including the last.
    pub iterations: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SuccessCount {
    pub iterations: u64,
    pub successes: u64,
    /// Draws discarded because the chosen redundant columns were singular.
    pub singular: u64,
}

/// Block Stern attack state for one ciphertext.
pub struct IsdAttack<'a> {
    pk: &'a PublicKey,
    field: PrimeField,
    h: Mat<u32>,
    syndrome: Vec<u32>,
    p: usize,
    ell: usize,
    k_blocks: usize,
    patterns: Vec<Vec<u32>>,
    rng: ChaCha20Rng,
}

impl<'a> IsdAttack<'a> {
    pub fn new(pk: &'a PublicKey, c: &Ciphertext, p: usize, ell: usize, seed: u64) -> Result<Self, IsdError> {
        let params = *pk.params();
        let field = PrimeField::new(params.q).map_err(CryptoError::from)?;
        let k_prime = params.k_prime().max(0) as usize;
        if k_prime % params.lambda != 0 {
            return Err(IsdError::NotBlockAligned {
                k_prime,
                lambda: params.lambda,
            });
        }
        let k_blocks = k_prime / params.lambda;
        let redundancy = params.n - k_blocks;
        if 2 * p > params.t || p > k_blocks / 2 || ell > redundancy || redundancy - ell < params.t - 2 * p {
            return Err(IsdError::BadSplit {
                p,
                ell,
                k_blocks,
                redundancy,
                t: params.t,
            });
        }
        if c.syndrome.len() != params.pub_rows() {
            return Err(CryptoError::CiphertextLength {
                expected: params.pub_rows(),
                got: c.syndrome.len(),
            }
            .into());
        }
        let q = params.q as u64;
        let patterns = (1..q.pow(params.lambda as u32))
            .map(|mut v| {
                (0..params.lambda)
                    .map(|_| {
                        let d = (v % q) as u32;
                        v /= q;
                        d
                    })
                    .collect()
            })
            .collect();
        Ok(IsdAttack {
            pk,
            field,
            h: pk.matrix(),
            syndrome: c.syndrome.clone(),
            p,
            ell,
            k_blocks,
            patterns,
            rng: ChaCha20Rng::seed_from_u64(seed),
        })
    }

    /// One iteration. `None` if the draw was singular, `Some(None)` if it
    /// was valid but missed.
    pub fn iteration(&mut self) -> Option<Option<BlockErrorVector>> {
        let params = *self.pk.params();
        let (lambda, n, t) = (params.lambda, params.n, params.t);
        let f = &self.field;
        let rows = params.pub_rows();

        let mut blocks: Vec<usize> = (0..n).collect();
        blocks.shuffle(&mut self.rng);
        // redundant blocks first, then the information set
        let (info, red) = blocks.split_at(self.k_blocks);
        let order: Vec<usize> = red.iter().chain(info).copied().collect();
        let columns: Vec<usize> = order.iter().flat_map(|&b| b * lambda..(b + 1) * lambda).collect();
        let s_col = Mat::from_vec(rows, 1, self.syndrome.clone()).expect("column");
        let mut m = self.h.select_columns(&columns).hstack(&s_col).expect("same rows");
        let pivots = linalg::rref_in_place(f, &mut m);
        if pivots.len() != rows || pivots.iter().enumerate().any(|(i, &c)| i != c) {
            return None;
        }

        let red_blocks = n - self.k_blocks;
        let info_col = |j: usize| rows + j;
        let s = m.column(columns.len());
        let z_rows = self.ell * lambda;
        let half = self.k_blocks.div_ceil(2);

        let contribution = |e: &[(usize, &Vec<u32>)], out: &mut [u32], sign: bool| {
            for &(b, pat) in e {
                for (d, &v) in pat.iter().enumerate() {
                    if v == 0 {
                        continue;
                    }
                    let col = info_col(b * lambda + d);
                    let coeff = if sign { f.neg(v) } else { v };
                    for (r, o) in out.iter_mut().enumerate() {
                        *o = f.add(*o, f.mul(coeff, m.get(r, col)));
                    }
                }
            }
        };

        let mut table: HashMap<Vec<u32>, Vec<Vec<(usize, usize)>>> = HashMap::new();
        for_each_choice(0, half, self.p, self.patterns.len(), &mut |choice| {
            let e: Vec<(usize, &Vec<u32>)> = choice.iter().map(|&(b, pi)| (b, &self.patterns[pi])).collect();
            let mut key = vec![0u32; z_rows];
            contribution(&e, &mut key, false);
            table.entry(key).or_default().push(choice.to_vec());
        });

        let mut found: Option<Vec<u32>> = None;
        for_each_choice(half, self.k_blocks, self.p, self.patterns.len(), &mut |choice| {
            if found.is_some() {
                return;
            }
            let e_y: Vec<(usize, &Vec<u32>)> = choice.iter().map(|&(b, pi)| (b, &self.patterns[pi])).collect();
            let mut key = s[..z_rows].to_vec();
            contribution(&e_y, &mut key, true);
            let Some(candidates) = table.get(&key) else { return };
            for x in candidates {
                let e_x: Vec<(usize, &Vec<u32>)> = x.iter().map(|&(b, pi)| (b, &self.patterns[pi])).collect();
                let mut e_r = s.clone();
                contribution(&e_x, &mut e_r, true);
                contribution(&e_y, &mut e_r, true);
                let weight = (0..red_blocks)
                    .filter(|&b| e_r[b * lambda..(b + 1) * lambda].iter().any(|&v| v != 0))
                    .count();
                if weight + 2 * self.p <= t {
                    let mut permuted = e_r;
                    permuted.resize(columns.len(), 0);
                    for &(b, pat) in e_x.iter().chain(&e_y) {
                        for (d, &v) in pat.iter().enumerate() {
                            permuted[rows + b * lambda + d] = v;
                        }
                    }
                    let mut dense = vec![0u32; columns.len()];
                    for (pos, &col) in columns.iter().enumerate() {
                        dense[col] = permuted[pos];
                    }
                    found = Some(dense);
                    return;
                }
            }
        });
        Some(found.map(|d| BlockErrorVector::from_dense(&d, lambda).expect("block aligned")))
    }

    /// Runs until success or until `max_iters` valid iterations were spent.
    pub fn run(&mut self, max_iters: u64) -> Result<AttackOutcome, IsdError> {
        let params = *self.pk.params();
        if self.syndrome.iter().all(|&v| v == 0) {
            return Ok(AttackOutcome {
                error: BlockErrorVector::zero(params.n, params.lambda),
                iterations: 1,
            });
        }
        let mut iterations = 0u64;
        while iterations < max_iters {
            match self.iteration() {
                None => continue,
                Some(hit) => {
                    iterations += 1;
                    if let Some(error) = hit {
                        return Ok(AttackOutcome { error, iterations });
                    }
                }
            }
        }
        Err(IsdError::BudgetExhausted { iterations })
    }

    /// Counts successful iterations among `iterations` valid ones without
    /// stopping at the first hit.
    pub fn count_successes(&mut self, iterations: u64) -> SuccessCount {
        let mut out = SuccessCount {
            iterations: 0,
            successes: 0,
            singular: 0,
        };
        while out.iterations < iterations {
            match self.iteration() {
                None => out.singular += 1,
                Some(hit) => {
                    out.iterations += 1;
                    out.successes += hit.is_some() as u64;
                }
            }
        }
        out
    }
}

/// Calls `f` with every choice of `count` distinct blocks from `lo..hi`,
/// each paired with one of `patterns` nonzero patterns (as
/// `(block − lo, pattern index)`, offsets relative to the information set).
fn for_each_choice(lo: usize, hi: usize, count: usize, patterns: usize, f: &mut dyn FnMut(&[(usize, usize)])) {
    fn rec(
        start: usize,
        hi: usize,
        left: usize,
        patterns: usize,
        acc: &mut Vec<(usize, usize)>,
        f: &mut dyn FnMut(&[(usize, usize)]),
    ) {
        if left == 0 {
            f(acc);
            return;
        }
        for b in start..hi {
            if hi - b < left {
                break;
            }
            for pi in 0..patterns {
                acc.push((b, pi));
                rec(b + 1, hi, left - 1, patterns, acc, f);
                acc.pop();
            }
        }
    }
    rec(lo, hi, count, patterns, &mut Vec::with_capacity(count), f);
}

/// Convenience wrapper around [`IsdAttack::run`].
pub fn isd_attack(
    pk: &PublicKey,
    c: &Ciphertext,
    p: usize,
    ell: usize,
    max_iters: u64,
    seed: u64,
) -> Result<AttackOutcome, IsdError> {
    IsdAttack::new(pk, c, p, ell, seed)?.run(max_iters)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cryptosystem::keygen_from_seed;
    use rand_chacha::ChaCha8Rng;

    fn binom(n: u64, k: u64) -> f64 {
        (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
    }

    #[test]
    fn toy_success_probabilities() {
        let p = SchemeParams::toy();
        let p0 = success_probability(&p, 0, 0);
        assert!((p0 - 84.0 / 1140.0).abs() < 1e-12);
        let p1 = success_probability(&p, 1, 1);
        assert!((p1 - 6.0 * 5.0 * 8.0 / 1140.0).abs() < 1e-12);
        assert!((1.0 / p0 - 1140.0 / 84.0).abs() < 1e-9);
    }

    #[test]
    fn log_binomial_matches_direct() {
        let lb = LogBinomial::new(200);
        for (n, k) in [(20, 3), (40, 20), (200, 7), (5, 0), (5, 5)] {
            assert!((lb.log2(n, k) - binom(n as u64, k as u64).log2()).abs() < 1e-9);
        }
        assert_eq!(lb.log2(3, 4), f64::NEG_INFINITY);
    }

    #[test]
    fn model_terms_by_hand() {
        let params = SchemeParams::toy();
        let model = Model::block(&params, 3);
        let lb = LogBinomial::new(40);
        // p = 1, ℓ = 2: (18² · 40) + (6 + 5)·8·(2·4) + 6·5·64/3^4·18
        let expect = 18.0f64 * 18.0 * 40.0 + 11.0 * 8.0 * 8.0 + 30.0 * 64.0 / 81.0 * 18.0;
        assert!((model.log2_iteration_cost(&lb, 1, 2) - expect.log2()).abs() < 1e-9);
        let succ = 30.0 * 7.0 / 1140.0;
        assert!((model.log2_success(&lb, 1, 2) - f64::log2(succ)).abs() < 1e-9);
    }

    #[test]
    fn estimate_agrees_with_brute_force_grid() {
        let params = SchemeParams { q: 13, m: 3, lambda: 2, n: 60, k: 45, t: 7 };
        let rep = isd_estimate(&params, None).unwrap();
        let model = Model::block(&params, 7);
        let lb = LogBinomial::new(200);
        let mut best = f64::INFINITY;
        for p in 0..=3 {
            for ell in 0..=model.n - model.k {
                let v = model.log2_iteration_cost(&lb, p, ell) - model.log2_success(&lb, p, ell);
                if v.is_finite() {
                    best = best.min(v);
                }
            }
        }
        assert!((rep.total_bits - best).abs() < 1e-9);
    }

    #[test]
    fn presets_reach_target_security() {
        let t1 = isd_estimate(&SchemeParams::type1(), Some(114)).unwrap();
        let t2 = isd_estimate(&SchemeParams::type2(), Some(103)).unwrap();
        assert!(t1.total_bits >= 247.5 && t1.total_bits <= 252.5, "{t1:?}");
        assert!(t2.total_bits >= 247.5 && t2.total_bits <= 252.5, "{t2:?}");
        let c1 = classical_estimate(&SchemeParams::type1(), Some(114)).unwrap();
        assert_eq!(c1.block_width, 1);
        assert!(c1.total_bits.is_finite());
    }

    #[test]
    fn infeasible_weight_is_reported() {
        let params = SchemeParams::toy();
        assert!(matches!(isd_estimate(&params, Some(10)), Err(IsdError::Infeasible { .. })));
    }

    #[test]
    fn estimate_monotone_in_t() {
        for params in [SchemeParams::toy(), SchemeParams::type1()] {
            let max_t = params.n - (params.k_prime() as usize) / params.lambda;
            let mut prev = f64::NEG_INFINITY;
            for t in (1..=max_t.min(150)).step_by(if params.n > 100 { 7 } else { 1 }) {
                let bits = isd_estimate(&params, Some(t)).unwrap().total_bits;
                assert!(bits >= prev - 1e-9, "t={t}: {bits} < {prev}");
                prev = bits;
            }
        }
    }

    #[test]
    fn estimate_monotone_in_length() {
        let mut prev = f64::NEG_INFINITY;
        for n in (100..=600).step_by(50) {
            let k = n * 4 / 5;
            let params = SchemeParams { q: 13, m: 3, lambda: 2, n, k, t: n / 10 };
            let bits = isd_estimate(&params, None).unwrap().total_bits;
            assert!(bits >= prev - 1e-9, "n={n}: {bits} < {prev}");
            prev = bits;
        }
    }

    #[test]
    fn toy_attack_recovers_planted_errors() {
        let params = SchemeParams::toy();
        let (_, pk) = keygen_from_seed(&params, 21).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(22);
        for (i, (p, ell)) in [(0, 0), (1, 1), (1, 0), (0, 2)].into_iter().enumerate() {
            let y = BlockErrorVector::random(params.n, params.lambda, params.q, params.t, &mut rng);
            let c = pk.encrypt(&y).unwrap();
            let out = isd_attack(&pk, &c, p, ell, 10_000, i as u64).unwrap();
            assert_eq!(out.error, y);
        }
    }

    #[test]
    fn attack_handles_zero_ciphertext_and_bad_splits() {
        let params = SchemeParams::toy();
        let (_, pk) = keygen_from_seed(&params, 23).unwrap();
        let zero = Ciphertext {
            syndrome: vec![0; params.pub_rows()],
        };
        assert_eq!(isd_attack(&pk, &zero, 1, 1, 10, 0).unwrap().error.block_weight(), 0);
        assert!(matches!(isd_attack(&pk, &zero, 2, 0, 10, 0), Err(IsdError::BadSplit { .. })));
        assert!(matches!(isd_attack(&pk, &zero, 0, 8, 10, 0), Err(IsdError::BadSplit { .. })));
    }

    #[test]
    fn tiny_budget_is_exhausted() {
        let params = SchemeParams::toy();
        let (_, pk) = keygen_from_seed(&params, 24).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(25);
        let mut exhausted = 0;
        for seed in 0..20 {
            let y = BlockErrorVector::random(params.n, params.lambda, params.q, params.t, &mut rng);
            let c = pk.encrypt(&y).unwrap();
            if let Err(IsdError::BudgetExhausted { iterations }) = isd_attack(&pk, &c, 0, 0, 1, seed) {
                assert_eq!(iterations, 1);
                exhausted += 1;
            }
        }
        assert!(exhausted >= 10);
    }

    #[test]
    fn choices_are_enumerated_once() {
        let mut seen = Vec::new();
        for_each_choice(2, 6, 2, 3, &mut |c| seen.push(c.to_vec()));
        assert_eq!(seen.len(), 6 * 9);
        seen.sort();
        seen.dedup();
        assert_eq!(seen.len(), 54);
        let mut empty = 0;
        for_each_choice(0, 4, 0, 3, &mut |c| {
            assert!(c.is_empty());
            empty += 1
        });
        assert_eq!(empty, 1);
    }
}
