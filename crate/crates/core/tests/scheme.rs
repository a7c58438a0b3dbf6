use num_bigint::BigUint;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use xrs_core::analysis::{bcode_parity, interleave_rows, isd_attack, subfield_subcode};
use xrs_core::cryptosystem::{
    decode_bytes, decode_plaintext, encode_bytes, encode_plaintext, keygen, plaintext_space_size, Ciphertext,
    PrivateKey, PublicKey, SchemeParams,
};
use xrs_core::expansion::expand_generator;
use xrs_core::linalg;

#[test]
fn bytes_survive_keys_reloaded_from_text() {
    let params = SchemeParams::type2();
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let (sk, pk) = keygen(&params, &mut rng).unwrap();
    let pk = PublicKey::from_text(&pk.to_text()).unwrap();
    let sk = PrivateKey::from_text(&sk.to_text()).unwrap();
    let msg = b"thirty-two bytes of secret data!";
    let c = pk.encrypt(&encode_bytes(msg, &params).unwrap()).unwrap();
    let c = Ciphertext::from_text(&c.to_text(&params), &params).unwrap();
    assert_eq!(decode_bytes(&sk.decrypt(&c).unwrap(), &params).unwrap(), msg);
}

#[test]
fn extreme_ranks_round_trip_through_encryption() {
    let params = SchemeParams::type1();
    let mut rng = ChaCha8Rng::seed_from_u64(32);
    let (sk, pk) = keygen(&params, &mut rng).unwrap();
    let top = plaintext_space_size(&params) - 1u32;
    for rank in [BigUint::from(0u32), BigUint::from(12345u32), top] {
        let y = encode_plaintext(&rank, &params).unwrap();
        let back = sk.decrypt(&pk.encrypt(&y).unwrap()).unwrap();
        assert_eq!(decode_plaintext(&back, &params).unwrap(), rank);
    }
}

#[test]
fn secret_code_of_a_key_is_a_b_code_subfield_subcode() {
    let params = SchemeParams::toy();
    let mut rng = ChaCha8Rng::seed_from_u64(33);
    let (sk, _) = keygen(&params, &mut rng).unwrap();
    let f = sk.field();
    let code = sk.code();
    let sub = subfield_subcode(f, &bcode_parity(code));
    let g = interleave_rows(&expand_generator(&code.generator(), f).matrix, params.n, params.m);
    let r = linalg::rank(f.base(), &g);
    assert_eq!(r, params.m * params.k);
    assert_eq!(linalg::rank(f.base(), &sub.vstack(&g).unwrap()), r);
}

#[test]
fn attack_and_private_key_agree() {
    let params = SchemeParams::toy();
    let mut rng = ChaCha8Rng::seed_from_u64(34);
    let (sk, pk) = keygen(&params, &mut rng).unwrap();
    for seed in 0..5 {
        let y = encode_bytes(&[seed as u8], &params).unwrap();
        let c = pk.encrypt(&y).unwrap();
        let found = isd_attack(&pk, &c, 1, 1, 5_000, seed).unwrap().error;
        assert_eq!(found, sk.decrypt(&c).unwrap());
    }
}
