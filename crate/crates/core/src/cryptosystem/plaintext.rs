//! Bijection between integers in `[0, C(n, t)·(q^λ − 1)^t)` and block error
//! vectors with exactly `t` nonzero blocks.
//!
//! `rank = subset_rank · V^t + Σ_j p_j V^j`, with `V = q^λ − 1`. The block
//! set is ranked in colexicographic order (`Σ_i C(c_i, i + 1)` for sorted
//! indices `c_0 < … < c_{t−1}`), and `p_j` is the pattern index of the j-th
//! block: its base-q value `Σ_d v_d q^d` minus one.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use super::{BlockErrorVector, CryptoError, SchemeParams};

fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

fn patterns_per_block(params: &SchemeParams) -> u64 {
    (params.q as u64).pow(params.lambda as u32) - 1
}

/// `C(n, t) · (q^λ − 1)^t`.
pub fn plaintext_space_size(params: &SchemeParams) -> BigUint {
    binomial(params.n, params.t) * BigUint::from(patterns_per_block(params)).pow(params.t as u32)
}

pub fn encode_plaintext(rank: &BigUint, params: &SchemeParams) -> Result<BlockErrorVector, CryptoError> {
    params.validate()?;
    if *rank >= plaintext_space_size(params) {
        return Err(CryptoError::RankOutOfRange);
    }
    let v = patterns_per_block(params);
    let vt = BigUint::from(v).pow(params.t as u32);
    let mut subset_rank = rank / &vt;
    let mut pattern_rank = rank % &vt;

    // colex unranking, largest element first
    let mut indices = vec![0usize; params.t];
    let mut c = params.n;
    let mut b = binomial(c, params.t);
    for i in (1..=params.t).rev() {
        // invariant: b = C(c, i); step c down until C(c, i) ≤ subset_rank
        while b > subset_rank {
            // C(c − 1, i) = C(c, i) · (c − i) / c
            b = b * (c - i) / c;
            c -= 1;
        }
        indices[i - 1] = c;
        subset_rank -= &b;
        // move to C(c, i − 1) = C(c, i) · i / (c − i + 1)
        if i > 1 {
            b = if c + 1 > i { b * i / (c - i + 1) } else { BigUint::one() };
        }
    }

    let q = params.q as u64;
    let vb = BigUint::from(v);
    let blocks = indices
        .into_iter()
        .map(|idx| {
            let p = (&pattern_rank % &vb).to_u64().expect("below V");
            pattern_rank /= &vb;
            let mut val = p + 1;
            let block = (0..params.lambda)
                .map(|_| {
                    let d = (val % q) as u32;
                    val /= q;
                    d
                })
                .collect();
            (idx, block)
        })
        .collect();
    BlockErrorVector::new(params.n, params.lambda, blocks)
}

pub fn decode_plaintext(y: &BlockErrorVector, params: &SchemeParams) -> Result<BigUint, CryptoError> {
    params.validate()?;
    if y.n() != params.n || y.lambda() != params.lambda {
        return Err(CryptoError::ShapeMismatch {
            n: y.n(),
            lambda: y.lambda(),
            want_n: params.n,
            want_lambda: params.lambda,
        });
    }
    if y.block_weight() != params.t {
        return Err(CryptoError::InvalidBlockVector(format!(
            "encoded plaintexts have exactly {} blocks, got {}",
            params.t,
            y.block_weight()
        )));
    }
    let q = params.q as u64;
    let v = patterns_per_block(params);
    let mut subset_rank = BigUint::zero();
    let mut pattern_rank = BigUint::zero();
    let mut weight = BigUint::one();
    for (i, (idx, block)) in y.blocks().iter().enumerate() {
        subset_rank += binomial(*idx, i + 1);
        let mut val = 0u64;
        for &d in block.iter().rev() {
            if d as u64 >= q {
                return Err(CryptoError::EntryOutOfRange(d));
            }
            val = val * q + d as u64;
        }
        pattern_rank += &weight * (val - 1);
        weight *= v;
    }
    Ok(subset_rank * weight + pattern_rank)
}

/// Largest byte length that [`encode_bytes`] accepts.
pub fn max_message_bytes(params: &SchemeParams) -> usize {
    // the 0x01 sentinel byte is prepended, so len + 1 bytes must stay below the space size
    let bits = plaintext_space_size(params).bits() as usize;
    (bits.saturating_sub(1) / 8).saturating_sub(1)
}

/// Embeds bytes as the rank `0x01 ‖ data` (big-endian).
pub fn encode_bytes(data: &[u8], params: &SchemeParams) -> Result<BlockErrorVector, CryptoError> {
    let max = max_message_bytes(params);
    if data.len() > max {
        return Err(CryptoError::MessageTooLong { len: data.len(), max });
    }
    let mut framed = Vec::with_capacity(data.len() + 1);
    framed.push(1u8);
    framed.extend_from_slice(data);
    encode_plaintext(&BigUint::from_bytes_be(&framed), params)
}

pub fn decode_bytes(y: &BlockErrorVector, params: &SchemeParams) -> Result<Vec<u8>, CryptoError> {
    let rank = decode_plaintext(y, params)?;
    let bytes = rank.to_bytes_be();
    match bytes.split_first() {
        Some((1, rest)) => Ok(rest.to_vec()),
        _ => Err(CryptoError::InvalidBlockVector(
            "plaintext does not carry a framed byte message".to_string(),
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn extreme_ranks() {
        let p = SchemeParams::toy();
        let first = encode_plaintext(&BigUint::zero(), &p).unwrap();
        assert_eq!(first.support(), vec![0, 1, 2]);
        assert!(first.blocks().iter().all(|(_, v)| v == &vec![1, 0]));
        let last_rank = plaintext_space_size(&p) - 1u32;
        let last = encode_plaintext(&last_rank, &p).unwrap();
        assert_eq!(last.support(), vec![17, 18, 19]);
        assert!(last.blocks().iter().all(|(_, v)| v == &vec![2, 2]));
        assert_eq!(decode_plaintext(&last, &p).unwrap(), last_rank);
        assert!(encode_plaintext(&plaintext_space_size(&p), &p).is_err());
    }

    #[test]
    fn byte_capacity() {
        let p = SchemeParams::toy();
        assert_eq!(max_message_bytes(&p), 1);
        assert!(encode_bytes(&[7], &p).is_ok());
        assert!(matches!(encode_bytes(&[7, 7], &p), Err(CryptoError::MessageTooLong { .. })));
        assert!(max_message_bytes(&SchemeParams::type1()) > 64);
    }

    #[test]
    fn space_size_matches_count() {
        let p = SchemeParams::toy();
        assert_eq!(plaintext_space_size(&p), BigUint::from(1140u32 * 512));
        let micro = SchemeParams::micro();
        assert_eq!(plaintext_space_size(&micro), BigUint::from(80u32));
    }

    #[test]
    fn exhaustive_micro_bijection() {
        let p = SchemeParams::micro();
        let mut seen = std::collections::HashSet::new();
        for r in 0..80u32 {
            let y = encode_plaintext(&BigUint::from(r), &p).unwrap();
            assert_eq!(y.block_weight(), 1);
            assert_eq!(decode_plaintext(&y, &p).unwrap(), BigUint::from(r));
            assert!(seen.insert(y));
        }
    }

    #[test]
    fn subsets_follow_colex_order() {
        let p = SchemeParams::toy();
        let mut colex = Vec::new();
        for c2 in 0..20 {
            for c1 in 0..c2 {
                for c0 in 0..c1 {
                    colex.push(vec![c0, c1, c2]);
                }
            }
        }
        assert_eq!(colex.len(), 1140);
        let vt = BigUint::from(512u32);
        for (i, subset) in colex.iter().enumerate() {
            let y = encode_plaintext(&(BigUint::from(i) * &vt), &p).unwrap();
            assert_eq!(&y.support(), subset);
        }
    }

    proptest! {
        #[test]
        fn random_ranks_round_trip(bytes in prop::collection::vec(any::<u8>(), 0..40), which in 0usize..3) {
            let p = [SchemeParams::toy(), SchemeParams::type1(), SchemeParams::type2()][which];
            let rank = BigUint::from_bytes_be(&bytes) % plaintext_space_size(&p);
            let y = encode_plaintext(&rank, &p).unwrap();
            prop_assert_eq!(y.block_weight(), p.t);
            prop_assert_eq!(decode_plaintext(&y, &p).unwrap(), rank);
        }

        #[test]
        fn bytes_round_trip(data in prop::collection::vec(any::<u8>(), 0..64)) {
            let p = SchemeParams::type1();
            let y = encode_bytes(&data, &p).unwrap();
            prop_assert_eq!(decode_bytes(&y, &p).unwrap(), data);
        }
    }
}
