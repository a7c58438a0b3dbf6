//! Line-oriented text containers for keys, ciphertexts and plaintexts.
//!
//! Every file starts with `XRS-1 <kind>` followed by `name value…` lines;
//! all numbers are decimal. Matrices are announced as `name rows cols` and
//! followed by one line per row.

use std::fmt::Write as _;
use std::str::{FromStr, Lines};

use sha2::{Digest, Sha256};
use thiserror::Error;

use super::{BlockErrorVector, Ciphertext, CryptoError, PrivateKey, PublicKey, SchemeParams};
use crate::fields::{ExtField, Field, FieldDescription};
use crate::grs::GrsCode;
use crate::linalg::Mat;

pub const FORMAT_TAG: &str = "XRS-1";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("expected header '{expected}', found '{found}'")]
    BadTag { expected: String, found: String },
    #[error("missing field '{0}'")]
    MissingField(String),
    #[error("malformed field '{field}': {reason}")]
    Malformed { field: String, reason: String },
    #[error("file was produced for different parameters (digest mismatch)")]
    DigestMismatch,
    #[error("inconsistent contents: {0}")]
    Invalid(String),
}

impl From<CryptoError> for FormatError {
    fn from(e: CryptoError) -> Self {
        FormatError::Invalid(e.to_string())
    }
}

/// Hex SHA-256 of the canonical `params` line.
pub fn params_digest(params: &SchemeParams) -> String {
    hex::encode(Sha256::digest(params_line(params).as_bytes()))
}

fn params_line(p: &SchemeParams) -> String {
    format!("params {} {} {} {} {} {}", p.q, p.m, p.lambda, p.n, p.k, p.t)
}

fn join<T: ToString>(v: impl IntoIterator<Item = T>) -> String {
    v.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn write_list<T: ToString>(out: &mut String, name: &str, v: impl IntoIterator<Item = T>) {
    let body = join(v);
    if body.is_empty() {
        writeln!(out, "{name}").unwrap();
    } else {
        writeln!(out, "{name} {body}").unwrap();
    }
}

fn write_matrix(out: &mut String, name: &str, m: &Mat<u32>) {
    writeln!(out, "{name} {} {}", m.rows(), m.cols()).unwrap();
    for row in m.iter_rows() {
        writeln!(out, "{}", join(row.iter())).unwrap();
    }
}

struct Reader<'a> {
    lines: Lines<'a>,
}

impl<'a> Reader<'a> {
    fn new(text: &'a str, kind: &str) -> Result<Self, FormatError> {
        let mut lines = text.lines();
        let expected = format!("{FORMAT_TAG} {kind}");
        let found = lines.next().unwrap_or("").trim_end().to_string();
        if found != expected {
            return Err(FormatError::BadTag { expected, found });
        }
        Ok(Self { lines })
    }

    fn next_line(&mut self, field: &str) -> Result<&'a str, FormatError> {
        loop {
            match self.lines.next() {
                Some(l) if l.trim().is_empty() => continue,
                Some(l) => return Ok(l),
                None => return Err(FormatError::MissingField(field.to_string())),
            }
        }
    }

    fn field_tokens(&mut self, field: &str) -> Result<Vec<&'a str>, FormatError> {
        let line = self.next_line(field)?;
        let mut tokens = line.split_whitespace();
        if tokens.next() != Some(field) {
            return Err(FormatError::MissingField(field.to_string()));
        }
        Ok(tokens.collect())
    }

    fn numbers<T: FromStr>(&mut self, field: &str) -> Result<Vec<T>, FormatError> {
        let tokens = self.field_tokens(field)?;
        parse_all(field, &tokens)
    }

    fn exact<T: FromStr>(&mut self, field: &str, count: usize) -> Result<Vec<T>, FormatError> {
        let v = self.numbers(field)?;
        if v.len() != count {
            return Err(malformed(field, format!("expected {count} values, found {}", v.len())));
        }
        Ok(v)
    }

    fn text(&mut self, field: &str) -> Result<String, FormatError> {
        let tokens = self.field_tokens(field)?;
        match tokens.as_slice() {
            [one] => Ok(one.to_string()),
            _ => Err(malformed(field, "expected one value".to_string())),
        }
    }

    fn params(&mut self) -> Result<SchemeParams, FormatError> {
        let v: Vec<usize> = self.exact("params", 6)?;
        let q = u32::try_from(v[0]).map_err(|_| malformed("params", "q too large".to_string()))?;
        let p = SchemeParams {
            q,
            m: v[1],
            lambda: v[2],
            n: v[3],
            k: v[4],
            t: v[5],
        };
        p.validate().map_err(|e| malformed("params", e.to_string()))?;
        Ok(p)
    }

    fn matrix(&mut self, field: &str, rows: usize, cols: usize) -> Result<Mat<u32>, FormatError> {
        let dims: Vec<usize> = self.exact(field, 2)?;
        if dims != [rows, cols] {
            return Err(malformed(
                field,
                format!("expected {rows}x{cols}, found {}x{}", dims[0], dims[1]),
            ));
        }
        let mut data = Vec::with_capacity(rows * cols);
        for _ in 0..rows {
            let line = self.next_line(field)?;
            let tokens: Vec<&str> = line.split_whitespace().collect();
            if tokens.len() != cols {
                return Err(malformed(field, format!("row with {} entries", tokens.len())));
            }
            data.extend(parse_all::<u32>(field, &tokens)?);
        }
        Ok(Mat::from_vec(rows, cols, data).expect("sized above"))
    }

    fn finish(mut self) -> Result<(), FormatError> {
        match self.lines.find(|l| !l.trim().is_empty()) {
            None => Ok(()),
            Some(l) => Err(FormatError::Invalid(format!("unexpected trailing line '{l}'"))),
        }
    }
}

fn malformed(field: &str, reason: String) -> FormatError {
    FormatError::Malformed {
        field: field.to_string(),
        reason,
    }
}

fn parse_all<T: FromStr>(field: &str, tokens: &[&str]) -> Result<Vec<T>, FormatError> {
    tokens
        .iter()
        .map(|t| t.parse().map_err(|_| malformed(field, format!("'{t}' is not a number"))))
        .collect()
}

fn check_range(field: &str, v: &[u32], bound: u32) -> Result<(), FormatError> {
    match v.iter().find(|&&x| x >= bound) {
        Some(x) => Err(malformed(field, format!("entry {x} is not below {bound}"))),
        None => Ok(()),
    }
}

impl PublicKey {
    pub fn to_text(&self) -> String {
        let mut out = format!("{FORMAT_TAG} public-key\n");
        writeln!(out, "{}", params_line(&self.params)).unwrap();
        write_list(&mut out, "pivots", self.pivots.iter());
        write_matrix(&mut out, "redundancy", &self.redundancy());
        out
    }

    pub fn from_text(text: &str) -> Result<Self, FormatError> {
        let mut r = Reader::new(text, "public-key")?;
        let params = r.params()?;
        let rows = params.pub_rows();
        let pivots: Vec<usize> = r.exact("pivots", rows)?;
        let red = r.matrix("redundancy", rows, params.pub_cols() - rows)?;
        check_range("redundancy", red.data(), params.q)?;
        r.finish()?;
        Ok(PublicKey::from_parts(params, pivots, &red)?)
    }
}

impl PrivateKey {
    pub fn to_text(&self) -> String {
        let p = &self.params;
        let field = self.field();
        let desc = field.description();
        let mut out = format!("{FORMAT_TAG} private-key\n");
        writeln!(out, "{}", params_line(p)).unwrap();
        writeln!(out, "field {} {}", desc.q, desc.m).unwrap();
        write_list(&mut out, "modulus", desc.modulus.iter());
        write_list(&mut out, "gamma", desc.gamma.iter());
        write_list(&mut out, "x", self.code.x().iter().map(|&v| field.index(v)));
        write_list(&mut out, "y", self.code.y().iter().map(|&v| field.index(v)));
        write_list(&mut out, "shortened", self.shortening_set());
        writeln!(out, "t-blocks {} {}", p.n, p.lambda * p.lambda).unwrap();
        for t in &self.t_blocks {
            writeln!(out, "{}", join(t.data().iter())).unwrap();
        }
        write_list(&mut out, "sigma", self.sigma.iter());
        write_list(&mut out, "pivots", self.pivots.iter());
        out
    }

    pub fn from_text(text: &str) -> Result<Self, FormatError> {
        let mut r = Reader::new(text, "private-key")?;
        let p = r.params()?;
        let fq: Vec<usize> = r.exact("field", 2)?;
        if fq != [p.q as usize, p.m] {
            return Err(malformed("field", "does not match params".to_string()));
        }
        let desc = FieldDescription {
            q: p.q,
            m: p.m,
            modulus: r.exact("modulus", p.m + 1)?,
            gamma: r.exact("gamma", p.m)?,
        };
        let field = ExtField::from_description(&desc).map_err(|e| malformed("modulus", e.to_string()))?;
        let size = field.size();
        let elems = |r: &mut Reader, name: &str| -> Result<_, FormatError> {
            let v: Vec<u64> = r.exact(name, p.n)?;
            if let Some(x) = v.iter().find(|&&x| x >= size) {
                return Err(malformed(name, format!("{x} is not a field element")));
            }
            Ok(v.into_iter().map(|i| field.from_index(i)).collect::<Vec<_>>())
        };
        let x = elems(&mut r, "x")?;
        let y = elems(&mut r, "y")?;
        let code = GrsCode::new(field, p.k, x, y).map_err(|e| malformed("x", e.to_string()))?;

        let short: Vec<usize> = r.exact("shortened", p.n * (p.m - p.lambda))?;
        if short.windows(2).any(|w| w[0] >= w[1]) || short.last().is_some_and(|&s| s >= p.m * p.n) {
            return Err(malformed("shortened", "indices must be sorted and below mn".to_string()));
        }
        let mut shortened = vec![Vec::new(); p.n];
        for s in short {
            shortened[s / p.m].push(s % p.m);
        }
        let t_dims: Vec<usize> = r.exact("t-blocks", 2)?;
        if t_dims != [p.n, p.lambda * p.lambda] {
            return Err(malformed("t-blocks", "wrong dimensions".to_string()));
        }
        let mut t_blocks = Vec::with_capacity(p.n);
        for _ in 0..p.n {
            let line = r.next_line("t-blocks")?;
            let tokens: Vec<&str> = line.split_whitespace().collect();
            let v: Vec<u32> = parse_all("t-blocks", &tokens)?;
            if v.len() != p.lambda * p.lambda {
                return Err(malformed("t-blocks", format!("row with {} entries", v.len())));
            }
            check_range("t-blocks", &v, p.q)?;
            t_blocks.push(Mat::from_vec(p.lambda, p.lambda, v).expect("sized"));
        }
        let sigma: Vec<usize> = r.exact("sigma", p.n)?;
        let pivots: Vec<usize> = r.exact("pivots", p.pub_rows())?;
        r.finish()?;
        Ok(PrivateKey::from_components(p, code, shortened, t_blocks, sigma, pivots)?)
    }
}

impl Ciphertext {
    pub fn to_text(&self, params: &SchemeParams) -> String {
        let mut out = format!("{FORMAT_TAG} ciphertext\n");
        writeln!(out, "params-digest {}", params_digest(params)).unwrap();
        write_list(&mut out, "syndrome", self.syndrome.iter());
        out
    }

    /// Parses a ciphertext and checks that it was produced for `params`.
    pub fn from_text(text: &str, params: &SchemeParams) -> Result<Self, FormatError> {
        let mut r = Reader::new(text, "ciphertext")?;
        if r.text("params-digest")? != params_digest(params) {
            return Err(FormatError::DigestMismatch);
        }
        let syndrome: Vec<u32> = r.exact("syndrome", params.pub_rows())?;
        check_range("syndrome", &syndrome, params.q)?;
        r.finish()?;
        Ok(Ciphertext { syndrome })
    }
}

impl BlockErrorVector {
    pub fn to_text(&self, params: &SchemeParams) -> String {
        let mut out = format!("{FORMAT_TAG} plaintext\n");
        writeln!(out, "params-digest {}", params_digest(params)).unwrap();
        writeln!(out, "shape {} {}", self.n, self.lambda).unwrap();
        writeln!(out, "blocks {}", self.blocks.len()).unwrap();
        for (i, v) in &self.blocks {
            writeln!(out, "{i} {}", join(v.iter())).unwrap();
        }
        out
    }

    pub fn from_text(text: &str, params: &SchemeParams) -> Result<Self, FormatError> {
        let mut r = Reader::new(text, "plaintext")?;
        if r.text("params-digest")? != params_digest(params) {
            return Err(FormatError::DigestMismatch);
        }
        let shape: Vec<usize> = r.exact("shape", 2)?;
        if shape != [params.n, params.lambda] {
            return Err(malformed("shape", "does not match params".to_string()));
        }
        let count: Vec<usize> = r.exact("blocks", 1)?;
        let mut blocks = Vec::with_capacity(count[0]);
        for _ in 0..count[0] {
            let line = r.next_line("blocks")?;
            let tokens: Vec<&str> = line.split_whitespace().collect();
            let v: Vec<u32> = parse_all("blocks", &tokens)?;
            if v.len() != params.lambda + 1 {
                return Err(malformed("blocks", format!("line with {} entries", v.len())));
            }
            check_range("blocks", &v[1..], params.q)?;
            blocks.push((v[0] as usize, v[1..].to_vec()));
        }
        r.finish()?;
        let y = BlockErrorVector::new(params.n, params.lambda, blocks)?;
        if y.blocks.len() != count[0] {
            return Err(malformed("blocks", "zero blocks are not stored".to_string()));
        }
        Ok(y)
    }
}
