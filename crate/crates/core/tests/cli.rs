use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use rand::SeedableRng;
use xrs_core::cryptosystem::{keygen_from_seed, BlockErrorVector, Ciphertext, PublicKey, SchemeParams};

fn xrs(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_xrs"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("spawn xrs")
}

fn ok(dir: &Path, args: &[&str]) -> String {
    let out = xrs(dir, args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn encrypt_decrypt_round_trip_preserves_plaintext_file() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    fs::write(d.join("msg"), [0xab]).unwrap();
    let stdout = ok(d, &["keygen", "--preset", "toy", "--seed", "11", "--pub", "pk", "--priv", "sk"]);
    assert!(stdout.contains("seed: 11"));
    ok(d, &["encode", "--preset", "toy", "--in", "msg", "--out", "y"]);
    ok(d, &["encrypt", "--pub", "pk", "--in", "y", "--out", "c"]);
    ok(d, &["decrypt", "--priv", "sk", "--in", "c", "--out", "y2"]);
    assert_eq!(fs::read(d.join("y")).unwrap(), fs::read(d.join("y2")).unwrap());
    ok(d, &["decode", "--preset", "toy", "--in", "y2", "--out", "msg2"]);
    assert_eq!(fs::read(d.join("msg2")).unwrap(), vec![0xab]);
}

#[test]
fn cli_keys_match_library_keys() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    ok(d, &["keygen", "--preset", "toy", "--seed", "5", "--pub", "pk", "--priv", "sk"]);
    let (sk, pk) = keygen_from_seed(&SchemeParams::toy(), 5).unwrap();
    assert_eq!(fs::read_to_string(d.join("pk")).unwrap(), pk.to_text());
    assert_eq!(fs::read_to_string(d.join("sk")).unwrap(), sk.to_text());

    let params = SchemeParams::toy();
    let y = BlockErrorVector::new(20, 2, vec![(1, vec![1, 2]), (7, vec![0, 1]), (19, vec![2, 2])]).unwrap();
    fs::write(d.join("y"), y.to_text(&params)).unwrap();
    ok(d, &["encrypt", "--pub", "pk", "--in", "y", "--out", "c"]);
    let c = Ciphertext::from_text(&fs::read_to_string(d.join("c")).unwrap(), &params).unwrap();
    assert_eq!(c, pk.encrypt(&y).unwrap());
}

#[test]
fn type1_public_key_size() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let stdout = ok(d, &["keygen", "--preset", "type1", "--seed", "7", "--pub", "pk", "--priv", "sk"]);
    assert!(stdout.contains("4624198 bits"));
    let pk = PublicKey::from_text(&fs::read_to_string(d.join("pk")).unwrap()).unwrap();
    assert_eq!(pk.stored_bits(), 4624198);
}

#[test]
fn exit_codes_and_diagnostics() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert_eq!(xrs(d, &["keygen", "--preset", "toy"]).status.code(), Some(2));
    assert_eq!(xrs(d, &["tables", "--nope"]).status.code(), Some(2));

    let out = xrs(d, &["keygen", "--q", "12", "--m", "3", "--lambda", "2", "--n", "20", "--k", "14", "--pub", "a", "--priv", "b"]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(String::from_utf8_lossy(&out.stderr).lines().count(), 1);

    ok(d, &["keygen", "--preset", "toy", "--seed", "1", "--pub", "pk", "--priv", "sk"]);
    fs::write(d.join("junk"), "XRS-1 ciphertext\nparams-digest 00\nsyndrome 1\n").unwrap();
    assert_eq!(xrs(d, &["decrypt", "--priv", "sk", "--in", "junk", "--out", "o"]).status.code(), Some(5));
    assert_eq!(xrs(d, &["decrypt", "--priv", "pk", "--in", "junk", "--out", "o"]).status.code(), Some(5));

    // a syndrome far from every codeword coset with ≤ t blocks
    let params = SchemeParams::toy();
    let (sk, pk) = keygen_from_seed(&params, 1).unwrap();
    let heavy = BlockErrorVector::new(20, 2, (0..8).map(|i| (i, vec![1, 1])).collect()).unwrap();
    let c = Ciphertext {
        syndrome: xrs_core::linalg::mul_vec(
            &xrs_core::fields::PrimeField::new(3).unwrap(),
            &pk.matrix(),
            &heavy.to_dense(),
        )
        .unwrap(),
    };
    assert!(sk.decrypt(&c).is_err());
    fs::write(d.join("heavy"), c.to_text(&params)).unwrap();
    assert_eq!(xrs(d, &["decrypt", "--priv", "sk", "--in", "heavy", "--out", "o"]).status.code(), Some(4));

    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(6);
    let y = BlockErrorVector::random(20, 2, 3, 3, &mut rng);
    fs::write(d.join("c0"), pk.encrypt(&y).unwrap().to_text(&params)).unwrap();
    let out = xrs(d, &["isd-attack", "--pub", "pk", "--in", "c0", "--max-iters", "0", "--seed", "1"]);
    assert_eq!(out.status.code(), Some(6));
}

#[test]
fn isd_attack_recovers_cli_plaintext() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    fs::write(d.join("msg"), [0x11]).unwrap();
    ok(d, &["keygen", "--preset", "toy", "--seed", "3", "--pub", "pk", "--priv", "sk"]);
    ok(d, &["encode", "--preset", "toy", "--in", "msg", "--out", "y"]);
    ok(d, &["encrypt", "--pub", "pk", "--in", "y", "--out", "c"]);
    let stdout = ok(d, &["isd-attack", "--pub", "pk", "--in", "c", "--p", "1", "--ell", "1", "--seed", "4", "--out", "found"]);
    assert!(stdout.contains("seed: 4"));
    assert_eq!(fs::read(d.join("y")).unwrap(), fs::read(d.join("found")).unwrap());
}

#[test]
fn analysis_subcommands_emit_reports() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let square = ok(d, &["analyze-square", "--preset", "toy", "--seed", "2"]);
    let json = square.lines().nth(1).unwrap();
    let v: serde_json::Value = serde_json::from_str(json).unwrap();
    assert_eq!(v["arms"].as_array().unwrap().len(), 3);

    let est = ok(d, &["isd-estimate", "--preset", "type2", "--t", "103"]);
    assert!(est.contains("total_bits=250.07"), "{est}");

    let tables = ok(d, &["tables", "--json"]);
    assert_eq!(tables.lines().count(), 19);
}
