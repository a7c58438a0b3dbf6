use thiserror::Error;

use crate::fields::{is_prime, PrimeField};

/// Scheme parameters `(q, m, λ, n, k, t)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SchemeParams {
    pub q: u32,
    pub m: usize,
    pub lambda: usize,
    pub n: usize,
    pub k: usize,
    pub t: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParamError {
    #[error("q must be a prime below 65536, got {0}")]
    QNotPrime(u32),
    #[error("field size q^m = {q}^{m} does not fit in 32 bits")]
    FieldTooLarge { q: u32, m: usize },
    #[error("need 2 ≤ λ ≤ m − 1, got λ = {lambda}, m = {m}")]
    LambdaOutOfRange { lambda: usize, m: usize },
    #[error("need 0 < k < n ≤ q^m, got n = {n}, k = {k}, q^m = {field_size}")]
    LengthOutOfRange { n: usize, k: usize, field_size: u64 },
    #[error("need k′ = mk − (m − λ)n > 0, got k′ = {k_prime}")]
    RateTooLow { k_prime: i64 },
    #[error("need 1 ≤ t ≤ ⌊(n − k)/2⌋ = {max}, got t = {t}")]
    TooManyErrors { t: usize, max: usize },
    #[error("unknown preset '{0}' (expected toy, micro, type1 or type2)")]
    UnknownPreset(String),
}

impl SchemeParams {
    /// `(q, m, λ, n, k)` with `t = ⌊(n − k)/2⌋`.
    pub fn with_max_t(q: u32, m: usize, lambda: usize, n: usize, k: usize) -> Self {
        Self {
            q,
            m,
            lambda,
            n,
            k,
            t: n.saturating_sub(k) / 2,
        }
    }

    pub fn toy() -> Self {
        Self::with_max_t(3, 3, 2, 20, 14)
    }

    pub fn micro() -> Self {
        Self::with_max_t(3, 3, 2, 10, 8)
    }

    pub fn type1() -> Self {
        Self::with_max_t(13, 3, 2, 1258, 1031)
    }

    pub fn type2() -> Self {
        Self::with_max_t(7, 4, 2, 1872, 1666)
    }

    pub fn preset(name: &str) -> Result<Self, ParamError> {
        match name {
            "toy" => Ok(Self::toy()),
            "micro" => Ok(Self::micro()),
            "type1" => Ok(Self::type1()),
            "type2" => Ok(Self::type2()),
            other => Err(ParamError::UnknownPreset(other.to_string())),
        }
    }

    pub fn validate(&self) -> Result<(), ParamError> {
        if !is_prime(self.q as u64) || PrimeField::new(self.q).is_err() {
            return Err(ParamError::QNotPrime(self.q));
        }
        let field_size = u32::try_from(self.m)
            .ok()
            .and_then(|m| self.q.checked_pow(m))
            .ok_or(ParamError::FieldTooLarge { q: self.q, m: self.m })?;
        if self.lambda < 2 || self.lambda + 1 > self.m {
            return Err(ParamError::LambdaOutOfRange {
                lambda: self.lambda,
                m: self.m,
            });
        }
        if self.k == 0 || self.k >= self.n || self.n as u64 > field_size as u64 {
            return Err(ParamError::LengthOutOfRange {
                n: self.n,
                k: self.k,
                field_size: field_size as u64,
            });
        }
        if self.k_prime() <= 0 {
            return Err(ParamError::RateTooLow {
                k_prime: self.k_prime(),
            });
        }
        let max = (self.n - self.k) / 2;
        if self.t == 0 || self.t > max {
            return Err(ParamError::TooManyErrors { t: self.t, max });
        }
        Ok(())
    }

    /// `k′ = mk − (m − λ)n`, the dimension of the public code.
    pub fn k_prime(&self) -> i64 {
        self.m as i64 * self.k as i64 - (self.m as i64 - self.lambda as i64) * self.n as i64
    }

    /// Rows of `H′`: `m(n − k)`.
    pub fn pub_rows(&self) -> usize {
        self.m * (self.n - self.k)
    }

    /// Columns of `H′`: `λn`.
    pub fn pub_cols(&self) -> usize {
        self.lambda * self.n
    }
}
