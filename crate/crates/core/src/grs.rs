//! Generalized Reed-Solomon codes over GF(q^m) and their syndrome decoder.

use rand::seq::index::sample;
use rand::Rng;
use thiserror::Error;

use crate::fields::{poly, ExtElem, ExtField, Field};
use crate::linalg::{self, Mat};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GrsError {
    #[error("invalid GRS parameters: {0}")]
    InvalidParameters(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecodeError {
    #[error("syndrome has length {got}, expected {expected}")]
    MalformedSyndrome { expected: usize, got: usize },
    #[error("no error vector of weight at most {t} has this syndrome")]
    Failure { t: usize },
}

/// The code `{c ∈ GF(q^m)^n : V_r(x, y) cᵀ = 0}` with `r = n − k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrsCode {
    field: ExtField,
    n: usize,
    k: usize,
    t: usize,
    x: Vec<ExtElem>,
    y: Vec<ExtElem>,
}

/// `V_rows(x, y)`: entry `(i, j)` is `y_j · x_j^i`.
pub fn vandermonde(field: &ExtField, x: &[ExtElem], y: &[ExtElem], rows: usize) -> Mat<ExtElem> {
    let n = x.len();
    let mut out = Mat::zeros(rows, n);
    for j in 0..n {
        let mut v = y[j];
        for i in 0..rows {
            out.set(i, j, v);
            v = field.mul(v, x[j]);
        }
    }
    out
}

impl GrsCode {
    pub fn new(field: ExtField, k: usize, x: Vec<ExtElem>, y: Vec<ExtElem>) -> Result<Self, GrsError> {
        let n = x.len();
        let bad = |s: String| Err(GrsError::InvalidParameters(s));
        if y.len() != n {
            return bad(format!("{} evaluation points but {} multipliers", n, y.len()));
        }
        if k == 0 || k >= n {
            return bad(format!("need 0 < k < n, got k = {k}, n = {n}"));
        }
        if n as u64 > field.size() {
            return bad(format!("n = {n} exceeds the field size {}", field.size()));
        }
        let mut sorted = x.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return bad("evaluation points are not distinct".to_string());
        }
        if y.iter().any(|&v| v == ExtElem::ZERO) {
            return bad("column multipliers must be nonzero".to_string());
        }
        if x.iter().chain(&y).any(|&v| field.index(v) >= field.size()) {
            return bad("entry outside the field".to_string());
        }
        Ok(Self {
            field,
            n,
            k,
            t: (n - k) / 2,
            x,
            y,
        })
    }

    /// Random code: `x` a uniformly random ordered n-subset of the field,
    /// `y` uniformly random nonzero.
    pub fn random<R: Rng + ?Sized>(field: ExtField, n: usize, k: usize, rng: &mut R) -> Result<Self, GrsError> {
        if n as u64 > field.size() {
            return Err(GrsError::InvalidParameters(format!(
                "n = {n} exceeds the field size {}",
                field.size()
            )));
        }
        let x: Vec<ExtElem> = sample(rng, field.size() as usize, n)
            .into_iter()
            .map(|i| field.from_index(i as u64))
            .collect();
        let y: Vec<ExtElem> = (0..n).map(|_| field.random_nonzero(rng)).collect();
        Self::new(field, k, x, y)
    }

    pub fn field(&self) -> &ExtField {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Redundancy `r = n − k`.
    pub fn r(&self) -> usize {
        self.n - self.k
    }

    /// Unique-decoding radius `⌊(n − k)/2⌋`.
    pub fn t(&self) -> usize {
        self.t
    }

    pub fn x(&self) -> &[ExtElem] {
        &self.x
    }

    pub fn y(&self) -> &[ExtElem] {
        &self.y
    }

    pub fn parity_matrix(&self) -> Mat<ExtElem> {
        vandermonde(&self.field, &self.x, &self.y, self.r())
    }

    /// `y′_i = (y_i ∏_{j≠i} (x_i − x_j))^{−1}`, so that `V_k(x, y′) V_r(x, y)ᵀ = 0`.
    pub fn dual_multipliers(&self) -> Vec<ExtElem> {
        let f = &self.field;
        (0..self.n)
            .map(|i| {
                let prod = (0..self.n)
                    .filter(|&j| j != i)
                    .fold(self.y[i], |acc, j| f.mul(acc, f.sub(self.x[i], self.x[j])));
                f.inv(prod).expect("distinct points and nonzero multipliers")
            })
            .collect()
    }

    /// `k × n` generator `V_k(x, y′)`.
    pub fn generator(&self) -> Mat<ExtElem> {
        vandermonde(&self.field, &self.x, &self.dual_multipliers(), self.k)
    }

    pub fn encode(&self, msg: &[ExtElem]) -> Result<Vec<ExtElem>, GrsError> {
        if msg.len() != self.k {
            return Err(GrsError::InvalidParameters(format!(
                "message length {} differs from k = {}",
                msg.len(),
                self.k
            )));
        }
        Ok(linalg::vec_mul(&self.field, msg, &self.generator()).expect("shapes agree"))
    }

    /// `V_r(x, y) eᵀ`, touching only the nonzero positions of `e`.
    pub fn syndrome(&self, e: &[ExtElem]) -> Vec<ExtElem> {
        assert_eq!(e.len(), self.n, "word length");
        let f = &self.field;
        let mut s = vec![ExtElem::ZERO; self.r()];
        for (j, &ej) in e.iter().enumerate() {
            if ej == ExtElem::ZERO {
                continue;
            }
            let mut v = f.mul(ej, self.y[j]);
            for si in s.iter_mut() {
                *si = f.add(*si, v);
                v = f.mul(v, self.x[j]);
            }
        }
        s
    }

    /// Finds the unique `e` of weight ≤ t with `V_r(x, y) eᵀ = s`.
    ///
    /// With `σ(z) = ∏_{j∈E}(z − x_j)` and `ω(z) = Σ_{j∈E} e_j y_j ∏_{l≠j}(z − x_l)`,
    /// the reversed syndrome `T(z) = Σ s_i z^{r−1−i}` satisfies
    /// `σ T ≡ z^r ω` up to a term of degree below `deg σ`. Running the
    /// extended Euclidean algorithm on `(z^r, T)` until the remainder degree
    /// drops below `r − t` yields `σ` and `ω` up to a common scalar; roots of
    /// `σ` among the `x_j` locate the errors and `e_j = ω(x_j) / (y_j σ′(x_j))`.
    /// This form also locates an error at an evaluation point equal to zero.
    pub fn syndrome_decode(&self, s: &[ExtElem]) -> Result<Vec<ExtElem>, DecodeError> {
        let r = self.r();
        if s.len() != r {
            return Err(DecodeError::MalformedSyndrome {
                expected: r,
                got: s.len(),
            });
        }
        if s.iter().all(|&v| v == ExtElem::ZERO) {
            return Ok(vec![ExtElem::ZERO; self.n]);
        }
        let f = &self.field;
        let fail = DecodeError::Failure { t: self.t };

        let mut r_prev = vec![ExtElem::ZERO; r + 1];
        r_prev[r] = ExtElem::ONE;
        let mut r_cur: Vec<ExtElem> = s.iter().rev().copied().collect();
        poly::trim(f, &mut r_cur);
        let (mut u_prev, mut u_cur) = (vec![ExtElem::ONE], Vec::new());
        let (mut v_prev, mut v_cur) = (Vec::new(), vec![ExtElem::ONE]);
        while poly::degree(f, &r_cur).is_some_and(|d| d >= r - self.t) {
            let (quot, rem) = poly::div_rem(f, &r_prev, &r_cur);
            let u_next = poly::sub(f, &u_prev, &poly::mul(f, &quot, &u_cur));
            let v_next = poly::sub(f, &v_prev, &poly::mul(f, &quot, &v_cur));
            r_prev = std::mem::replace(&mut r_cur, rem);
            u_prev = std::mem::replace(&mut u_cur, u_next);
            v_prev = std::mem::replace(&mut v_cur, v_next);
        }
        let locator = v_cur;
        let deg = poly::degree(f, &locator).ok_or(fail.clone())?;
        if deg == 0 || deg > self.t {
            return Err(fail);
        }
        let dlocator = poly::derivative(f, &locator);
        let mut e = vec![ExtElem::ZERO; self.n];
        let mut found = 0;
        for j in 0..self.n {
            if poly::eval(f, &locator, self.x[j]) != ExtElem::ZERO {
                continue;
            }
            let num = f.neg(poly::eval(f, &u_cur, self.x[j]));
            let den = f.mul(self.y[j], poly::eval(f, &dlocator, self.x[j]));
            let Some(den_inv) = f.inv(den) else {
                return Err(fail);
            };
            e[j] = f.mul(num, den_inv);
            if e[j] == ExtElem::ZERO {
                return Err(fail);
            }
            found += 1;
        }
        if found != deg || self.syndrome(&e) != s {
            return Err(fail);
        }
        Ok(e)
    }
}
