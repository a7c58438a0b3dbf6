//! C ABI over `xrs-core`.
//!
//! Keys are opaque heap handles released with the matching `*_free`
//! function. Every fallible call returns an [`XrsStatus`]. Text and byte
//! outputs use caller-provided buffers: the required length is always
//! written to `out_len`, and [`XrsStatus::BufferTooSmall`] is returned when
//! `capacity` is insufficient, so callers may probe with a null buffer.

use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use xrs_core::cryptosystem::{
    decode_bytes, encode_bytes, keygen_from_seed, max_message_bytes, Ciphertext, CryptoError, PrivateKey, PublicKey,
    SchemeParams,
};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum XrsStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    InvalidParams = 3,
    Malformed = 4,
    DecryptionFailed = 5,
    BufferTooSmall = 6,
    MessageTooLong = 7,
    Internal = 8,
}

/// Opaque public key.
pub struct XrsPublicKey(PublicKey);

/// Opaque private key.
pub struct XrsPrivateKey(PrivateKey);

fn crypto_status(e: &CryptoError) -> XrsStatus {
    match e {
        CryptoError::Params(_) => XrsStatus::InvalidParams,
        CryptoError::Decryption(_) => XrsStatus::DecryptionFailed,
        CryptoError::MessageTooLong { .. } => XrsStatus::MessageTooLong,
        CryptoError::CiphertextLength { .. } | CryptoError::EntryOutOfRange(_) => XrsStatus::Malformed,
        CryptoError::InvalidBlockVector(_) => XrsStatus::DecryptionFailed,
        _ => XrsStatus::Internal,
    }
}

fn guard(f: impl FnOnce() -> Result<(), XrsStatus>) -> XrsStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => XrsStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => XrsStatus::Internal,
    }
}

unsafe fn str_arg<'a>(p: *const c_char) -> Result<&'a str, XrsStatus> {
    if p.is_null() {
        return Err(XrsStatus::NullPointer);
    }
    CStr::from_ptr(p).to_str().map_err(|_| XrsStatus::InvalidArgument)
}

unsafe fn write_out(data: &[u8], buf: *mut u8, capacity: usize, out_len: *mut usize) -> Result<(), XrsStatus> {
    if out_len.is_null() {
        return Err(XrsStatus::NullPointer);
    }
    *out_len = data.len();
    if buf.is_null() || capacity < data.len() {
        return Err(XrsStatus::BufferTooSmall);
    }
    ptr::copy_nonoverlapping(data.as_ptr(), buf, data.len());
    Ok(())
}

/// Writes `text` plus a terminating NUL; `out_len` excludes the NUL.
unsafe fn write_text(text: &str, buf: *mut c_char, capacity: usize, out_len: *mut usize) -> Result<(), XrsStatus> {
    if out_len.is_null() {
        return Err(XrsStatus::NullPointer);
    }
    *out_len = text.len();
    if buf.is_null() || capacity < text.len() + 1 {
        return Err(XrsStatus::BufferTooSmall);
    }
    ptr::copy_nonoverlapping(text.as_ptr(), buf as *mut u8, text.len());
    *buf.add(text.len()) = 0;
    Ok(())
}

unsafe fn emit_keys(
    params: &SchemeParams,
    seed: u64,
    out_public: *mut *mut XrsPublicKey,
    out_private: *mut *mut XrsPrivateKey,
) -> Result<(), XrsStatus> {
    if out_public.is_null() || out_private.is_null() {
        return Err(XrsStatus::NullPointer);
    }
    let (sk, pk) = keygen_from_seed(params, seed).map_err(|e| crypto_status(&e))?;
    *out_public = Box::into_raw(Box::new(XrsPublicKey(pk)));
    *out_private = Box::into_raw(Box::new(XrsPrivateKey(sk)));
    Ok(())
}

/// Static description of a status code.
#[no_mangle]
pub extern "C" fn xrs_status_message(status: XrsStatus) -> *const c_char {
    let s: &'static CStr = match status {
        XrsStatus::Ok => c"ok",
        XrsStatus::NullPointer => c"null pointer argument",
        XrsStatus::InvalidArgument => c"invalid argument",
        XrsStatus::InvalidParams => c"parameter set rejected",
        XrsStatus::Malformed => c"malformed key or ciphertext",
        XrsStatus::DecryptionFailed => c"decryption failed",
        XrsStatus::BufferTooSmall => c"output buffer too small",
        XrsStatus::MessageTooLong => c"message exceeds plaintext capacity",
        XrsStatus::Internal => c"internal error",
    };
    s.as_ptr()
}

/// Generates a key pair for a named preset (`toy`, `micro`, `type1`,
/// `type2`) from a 64-bit seed.
///
/// # Safety
/// `preset` must be a NUL-terminated string; the output pointers must be
/// valid for writes.
#[no_mangle]
pub unsafe extern "C" fn xrs_keygen_preset(
    preset: *const c_char,
    seed: u64,
    out_public: *mut *mut XrsPublicKey,
    out_private: *mut *mut XrsPrivateKey,
) -> XrsStatus {
    guard(|| {
        let name = str_arg(preset)?;
        let params = SchemeParams::preset(name).map_err(|_| XrsStatus::InvalidParams)?;
        emit_keys(&params, seed, out_public, out_private)
    })
}

/// Generates a key pair for explicit parameters.
///
/// # Safety
/// The output pointers must be valid for writes.
#[no_mangle]
#[allow(clippy::too_many_arguments)]
pub unsafe extern "C" fn xrs_keygen(
    q: u32,
    m: usize,
    lambda: usize,
    n: usize,
    k: usize,
    t: usize,
    seed: u64,
    out_public: *mut *mut XrsPublicKey,
    out_private: *mut *mut XrsPrivateKey,
) -> XrsStatus {
    guard(|| {
        let params = SchemeParams {
            q,
            m,
            lambda,
            n,
            k,
            t,
        };
        params.validate().map_err(|_| XrsStatus::InvalidParams)?;
        emit_keys(&params, seed, out_public, out_private)
    })
}

/// # Safety
/// `key` must come from this library and not have been freed already.
#[no_mangle]
pub unsafe extern "C" fn xrs_public_key_free(key: *mut XrsPublicKey) {
    if !key.is_null() {
        drop(Box::from_raw(key));
    }
}

/// # Safety
/// `key` must come from this library and not have been freed already.
#[no_mangle]
pub unsafe extern "C" fn xrs_private_key_free(key: *mut XrsPrivateKey) {
    if !key.is_null() {
        drop(Box::from_raw(key));
    }
}

/// Size of the stored redundancy part in bits, or 0 for a null key.
///
/// # Safety
/// `key` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn xrs_public_key_bits(key: *const XrsPublicKey) -> u64 {
    key.as_ref().map_or(0, |k| k.0.stored_bits())
}

/// Longest message accepted by [`xrs_encrypt`], or 0 for a null key.
///
/// # Safety
/// `key` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn xrs_max_message_bytes(key: *const XrsPublicKey) -> usize {
    key.as_ref().map_or(0, |k| max_message_bytes(k.0.params()))
}

/// # Safety
/// `key` must be a live handle; `buf` must be valid for `capacity` bytes or
/// null; `out_len` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn xrs_public_key_to_text(
    key: *const XrsPublicKey,
    buf: *mut c_char,
    capacity: usize,
    out_len: *mut usize,
) -> XrsStatus {
    guard(|| {
        let key = key.as_ref().ok_or(XrsStatus::NullPointer)?;
        write_text(&key.0.to_text(), buf, capacity, out_len)
    })
}

/// # Safety
/// `key` must be a live handle; `buf` must be valid for `capacity` bytes or
/// null; `out_len` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn xrs_private_key_to_text(
    key: *const XrsPrivateKey,
    buf: *mut c_char,
    capacity: usize,
    out_len: *mut usize,
) -> XrsStatus {
    guard(|| {
        let key = key.as_ref().ok_or(XrsStatus::NullPointer)?;
        write_text(&key.0.to_text(), buf, capacity, out_len)
    })
}

/// # Safety
/// `text` must be NUL-terminated; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn xrs_public_key_from_text(text: *const c_char, out: *mut *mut XrsPublicKey) -> XrsStatus {
    guard(|| {
        if out.is_null() {
            return Err(XrsStatus::NullPointer);
        }
        let key = PublicKey::from_text(str_arg(text)?).map_err(|_| XrsStatus::Malformed)?;
        *out = Box::into_raw(Box::new(XrsPublicKey(key)));
        Ok(())
    })
}

/// # Safety
/// `text` must be NUL-terminated; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn xrs_private_key_from_text(text: *const c_char, out: *mut *mut XrsPrivateKey) -> XrsStatus {
    guard(|| {
        if out.is_null() {
            return Err(XrsStatus::NullPointer);
        }
        let key = PrivateKey::from_text(str_arg(text)?).map_err(|_| XrsStatus::Malformed)?;
        *out = Box::into_raw(Box::new(XrsPrivateKey(key)));
        Ok(())
    })
}

/// Encrypts `msg` and writes the ciphertext in its text form.
///
/// # Safety
/// `key` must be a live handle; `msg` must be valid for `msg_len` bytes
/// (or null when `msg_len` is 0); `buf` must be valid for `capacity` bytes
/// or null; `out_len` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn xrs_encrypt(
    key: *const XrsPublicKey,
    msg: *const u8,
    msg_len: usize,
    buf: *mut c_char,
    capacity: usize,
    out_len: *mut usize,
) -> XrsStatus {
    guard(|| {
        let key = &key.as_ref().ok_or(XrsStatus::NullPointer)?.0;
        let data = match (msg.is_null(), msg_len) {
            (_, 0) => &[][..],
            (true, _) => return Err(XrsStatus::NullPointer),
            (false, len) => std::slice::from_raw_parts(msg, len),
        };
        let params = *key.params();
        let y = encode_bytes(data, &params).map_err(|e| crypto_status(&e))?;
        let c = key.encrypt(&y).map_err(|e| crypto_status(&e))?;
        write_text(&c.to_text(&params), buf, capacity, out_len)
    })
}

/// Decrypts a ciphertext in text form and writes the message bytes.
///
/// # Safety
/// `key` must be a live handle; `ciphertext` must be NUL-terminated; `buf`
/// must be valid for `capacity` bytes or null; `out_len` must be valid for
/// writes.
#[no_mangle]
pub unsafe extern "C" fn xrs_decrypt(
    key: *const XrsPrivateKey,
    ciphertext: *const c_char,
    buf: *mut u8,
    capacity: usize,
    out_len: *mut usize,
) -> XrsStatus {
    guard(|| {
        let key = &key.as_ref().ok_or(XrsStatus::NullPointer)?.0;
        let params = *key.params();
        let c = Ciphertext::from_text(str_arg(ciphertext)?, &params).map_err(|_| XrsStatus::Malformed)?;
        let y = key.decrypt(&c).map_err(|e| crypto_status(&e))?;
        let data = decode_bytes(&y, &params).map_err(|e| crypto_status(&e))?;
        write_out(&data, buf, capacity, out_len)
    })
}
