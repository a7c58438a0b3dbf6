//! The `xrs` command-line tool.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use thiserror::Error;

use crate::analysis::{
    classical_estimate, distinguisher_experiment, isd_attack, isd_estimate, render_json_lines, render_text,
    reproduce_tables, IsdError,
};
use crate::cryptosystem::{
    decode_bytes, encode_bytes, keygen_from_seed, BlockErrorVector, Ciphertext, CryptoError, FormatError,
    ParamError, PrivateKey, PublicKey, SchemeParams,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_OTHER: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_PARAMS: i32 = 3;
pub const EXIT_DECRYPT: i32 = 4;
pub const EXIT_MALFORMED: i32 = 5;
pub const EXIT_BUDGET: i32 = 6;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("parameter rejected: {0}")]
    Params(#[from] ParamError),
    #[error("{0}")]
    Decrypt(CryptoError),
    #[error("malformed input {path}: {source}")]
    Malformed { path: PathBuf, source: FormatError },
    #[error("{0}")]
    Budget(IsdError),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{0}")]
    Crypto(CryptoError),
    #[error("{0}")]
    Isd(IsdError),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Params(_) => EXIT_PARAMS,
            CliError::Decrypt(_) => EXIT_DECRYPT,
            CliError::Malformed { .. } => EXIT_MALFORMED,
            CliError::Budget(_) => EXIT_BUDGET,
            CliError::Crypto(CryptoError::Params(_)) | CliError::Isd(IsdError::Params(_)) => EXIT_PARAMS,
            CliError::Isd(IsdError::Crypto(CryptoError::Params(_))) => EXIT_PARAMS,
            CliError::Io { .. } | CliError::Crypto(_) | CliError::Isd(_) => EXIT_OTHER,
        }
    }
}

impl From<CryptoError> for CliError {
    fn from(e: CryptoError) -> Self {
        match e {
            CryptoError::Params(p) => CliError::Params(p),
            other => CliError::Crypto(other),
        }
    }
}

impl From<IsdError> for CliError {
    fn from(e: IsdError) -> Self {
        match e {
            IsdError::BudgetExhausted { .. } => CliError::Budget(e),
            IsdError::Params(p) | IsdError::Crypto(CryptoError::Params(p)) => CliError::Params(p),
            other => CliError::Isd(other),
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "xrs", version, about = "Niederreiter-type encryption from shortened, expanded GRS codes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Default, Args)]
struct ParamArgs {
    /// Named parameter set: toy, micro, type1 or type2.
    #[arg(long)]
    preset: Option<String>,
    #[arg(long)]
    q: Option<u32>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    lambda: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    /// Number of error blocks (default ⌊(n − k)/2⌋).
    #[arg(long)]
    t: Option<usize>,
}

impl ParamArgs {
    /// Preset values overridden by explicit flags. `t` is left at the
    /// preset or maximal value when `keep_t` is false.
    fn resolve(&self, keep_t: bool) -> Result<SchemeParams, CliError> {
        let base = match &self.preset {
            Some(name) => Some(SchemeParams::preset(name)?),
            None => None,
        };
        let pick = |flag: Option<usize>, from_base: Option<usize>, name: &str| {
            flag.or(from_base)
                .ok_or_else(|| CliError::Usage(format!("missing --{name} (or use --preset)")))
        };
        let q = self
            .q
            .or(base.map(|b| b.q))
            .ok_or_else(|| CliError::Usage("missing --q (or use --preset)".into()))?;
        let m = pick(self.m, base.map(|b| b.m), "m")?;
        let lambda = pick(self.lambda, base.map(|b| b.lambda), "lambda")?;
        let n = pick(self.n, base.map(|b| b.n), "n")?;
        let k = pick(self.k, base.map(|b| b.k), "k")?;
        let geometry_changed = base.is_some_and(|b| (b.q, b.m, b.lambda, b.n, b.k) != (q, m, lambda, n, k));
        let default_t = match base {
            Some(b) if !geometry_changed => b.t,
            _ => n.saturating_sub(k) / 2,
        };
        let t = if keep_t { self.t.unwrap_or(default_t) } else { default_t };
        let params = SchemeParams {
            q,
            m,
            lambda,
            n,
            k,
            t,
        };
        params.validate()?;
        Ok(params)
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate a key pair.
    Keygen {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long = "pub")]
        public: PathBuf,
        #[arg(long = "priv")]
        private: PathBuf,
    },
    /// Encrypt a plaintext block vector file.
    Encrypt {
        #[arg(long = "pub")]
        public: PathBuf,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Decrypt a ciphertext file into a plaintext block vector file.
    Decrypt {
        #[arg(long = "priv")]
        private: PathBuf,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Embed raw bytes as a plaintext block vector.
    Encode {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Recover raw bytes from a plaintext block vector.
    Decode {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Square-code dimensions of the expanded, public and random codes.
    AnalyzeSquare {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long)]
        seed: Option<u64>,
        /// Number of independent keys.
        #[arg(long, default_value_t = 1)]
        keys: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Information set decoding work factor.
    IsdEstimate {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run block Stern decoding against a ciphertext.
    IsdAttack {
        #[arg(long = "pub")]
        public: PathBuf,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value_t = 0)]
        p: usize,
        #[arg(long, default_value_t = 0)]
        ell: usize,
        #[arg(long, default_value_t = 100_000)]
        max_iters: u64,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Recompute key sizes for the published parameter tables.
    Tables {
        /// Emit one JSON object per row instead of a text table.
        #[arg(long)]
        json: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn read_bytes(path: &Path) -> Result<Vec<u8>, CliError> {
    fs::read(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn write(path: &Path, data: &[u8]) -> Result<(), CliError> {
    fs::write(path, data).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn parse<T>(path: &Path, f: impl FnOnce(&str) -> Result<T, FormatError>) -> Result<T, CliError> {
    let text = read(path)?;
    f(&text).map_err(|source| CliError::Malformed {
        path: path.to_path_buf(),
        source,
    })
}

fn emit(out: Option<&Path>, text: &str, stdout: &mut dyn std::io::Write) -> Result<(), CliError> {
    match out {
        Some(p) => write(p, text.as_bytes()),
        None => stdout.write_all(text.as_bytes()).map_err(|source| CliError::Io {
            path: PathBuf::from("<stdout>"),
            source,
        }),
    }
}

fn effective_seed(seed: Option<u64>, stdout: &mut dyn std::io::Write) -> u64 {
    let seed = seed.unwrap_or_else(rand::random);
    let _ = writeln!(stdout, "seed: {seed}");
    seed
}

fn execute(cmd: Command, stdout: &mut dyn std::io::Write) -> Result<(), CliError> {
    match cmd {
        Command::Keygen {
            params,
            seed,
            public,
            private,
        } => {
            let params = params.resolve(true)?;
            let seed = effective_seed(seed, stdout);
            let (sk, pk) = keygen_from_seed(&params, seed)?;
            write(&public, pk.to_text().as_bytes())?;
            write(&private, sk.to_text().as_bytes())?;
            let _ = writeln!(stdout, "public key: {} bits", pk.stored_bits());
        }
        Command::Encrypt { public, input, out } => {
            let pk = parse(&public, PublicKey::from_text)?;
            let params = *pk.params();
            let y = parse(&input, |t| BlockErrorVector::from_text(t, &params))?;
            let c = pk.encrypt(&y)?;
            write(&out, c.to_text(&params).as_bytes())?;
        }
        Command::Decrypt { private, input, out } => {
            let sk = parse(&private, PrivateKey::from_text)?;
            let params = *sk.params();
            let c = parse(&input, |t| Ciphertext::from_text(t, &params))?;
            let y = sk.decrypt(&c).map_err(|e| match e {
                CryptoError::Decryption(_) => CliError::Decrypt(e),
                other => CliError::from(other),
            })?;
            write(&out, y.to_text(&params).as_bytes())?;
        }
        Command::Encode { params, input, out } => {
            let params = params.resolve(true)?;
            let data = read_bytes(&input)?;
            let y = encode_bytes(&data, &params)?;
            write(&out, y.to_text(&params).as_bytes())?;
        }
        Command::Decode { params, input, out } => {
            let params = params.resolve(true)?;
            let y = parse(&input, |t| BlockErrorVector::from_text(t, &params))?;
            write(&out, &decode_bytes(&y, &params)?)?;
        }
        Command::AnalyzeSquare {
            params,
            seed,
            keys,
            out,
        } => {
            let params = params.resolve(true)?;
            let seed = effective_seed(seed, stdout);
            let mut report = String::new();
            for i in 0..keys {
                let rep = distinguisher_experiment(&params, seed.wrapping_add(i))?;
                report.push_str(&serde_json::to_string(&rep).expect("plain data"));
                report.push('\n');
            }
            emit(out.as_deref(), &report, stdout)?;
        }
        Command::IsdEstimate { params, out } => {
            let t = params.t;
            let base = params.resolve(false)?;
            let block = isd_estimate(&base, t)?;
            let classical = classical_estimate(&base, t)?;
            let mut report = String::new();
            for (name, r) in [("block", &block), ("classical", &classical)] {
                report.push_str(&format!(
                    "{name:<9} t={} p={} ell={} log2_iterations={:.2} log2_iteration_cost={:.2} total_bits={:.2}\n",
                    r.t, r.p, r.ell, r.log2_iterations, r.log2_iteration_cost, r.total_bits
                ));
            }
            emit(out.as_deref(), &report, stdout)?;
        }
        Command::IsdAttack {
            public,
            input,
            p,
            ell,
            max_iters,
            seed,
            out,
        } => {
            let pk = parse(&public, PublicKey::from_text)?;
            let params = *pk.params();
            let c = parse(&input, |t| Ciphertext::from_text(t, &params))?;
            let seed = effective_seed(seed, stdout);
            let outcome = isd_attack(&pk, &c, p, ell, max_iters, seed)?;
            let _ = writeln!(stdout, "recovered after {} iterations", outcome.iterations);
            emit(out.as_deref(), &outcome.error.to_text(&params), stdout)?;
        }
        Command::Tables { json, out } => {
            let checks = reproduce_tables()?;
            let text = if json { render_json_lines(&checks) } else { render_text(&checks) };
            emit(out.as_deref(), &text, stdout)?;
        }
    }
    Ok(())
}

/// Runs the tool with `argv` (including the program name), writing normal
/// output to `stdout` and diagnostics to `stderr`. Returns the exit status.
pub fn run_with<I, T>(argv: I, stdout: &mut dyn std::io::Write, stderr: &mut dyn std::io::Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = stderr.write_all(rendered.as_bytes());
            } else {
                let _ = stdout.write_all(rendered.as_bytes());
            }
            return code;
        }
    };
    match execute(cli.command, stdout) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with(argv, &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}
