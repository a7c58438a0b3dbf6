//! Expansion of matrices over GF(q^m) into matrices over GF(q) in the basis
//! (1, γ, …, γ^{m−1}).

use rand::Rng;

use crate::fields::{phi_n, ExtElem, ExtField, Field};
use crate::linalg::{self, Mat};

/// `Ĥ`, of size `m·r × m·n`. Column `i·m + j` is `φ_r(γ^j h_i)` where `h_i` is
/// column `i` of the source.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpandedParity {
    pub matrix: Mat<u32>,
    /// Column block `b` of width m comes from source column `block_map[b]`.
    pub block_map: Vec<usize>,
}

/// `Ĝ`, of size `m·k × m·n`. Row `i·m + j` is `φ_n(γ^j g_i)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpandedGenerator {
    pub matrix: Mat<u32>,
    /// Row block `b` of height m comes from source row `block_map[b]`.
    pub block_map: Vec<usize>,
}

fn gamma_powers(field: &ExtField) -> Vec<ExtElem> {
    (0..field.m() as u64).map(|j| field.gamma_pow(j)).collect()
}

pub fn expand_parity(h: &Mat<ExtElem>, field: &ExtField) -> ExpandedParity {
    let m = field.m();
    let (r, n) = h.shape();
    let powers = gamma_powers(field);
    let mut out = Mat::zeros(m * r, m * n);
    for l in 0..r {
        for i in 0..n {
            let entry = h.get(l, i);
            for (j, &g) in powers.iter().enumerate() {
                for (d, c) in field.coeffs(field.mul(g, entry)).into_iter().enumerate() {
                    out.set(l * m + d, i * m + j, c);
                }
            }
        }
    }
    ExpandedParity {
        matrix: out,
        block_map: (0..n).collect(),
    }
}

pub fn expand_generator(g: &Mat<ExtElem>, field: &ExtField) -> ExpandedGenerator {
    let m = field.m();
    let (k, n) = g.shape();
    let powers = gamma_powers(field);
    let mut out = Mat::zeros(m * k, m * n);
    for i in 0..k {
        for (j, &gp) in powers.iter().enumerate() {
            let scaled: Vec<ExtElem> = g.row(i).iter().map(|&v| field.mul(gp, v)).collect();
            out.row_mut(i * m + j).copy_from_slice(&phi_n(field, &scaled));
        }
    }
    ExpandedGenerator {
        matrix: out,
        block_map: (0..k).collect(),
    }
}

/// Outcome of checking `φ_n(xG) = φ_k(x)Ĝ` and `φ_r(H yᵀ) = Ĥ φ_n(y)ᵀ`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ExpansionCheck {
    pub generator_checks: u64,
    pub generator_failures: u64,
    pub parity_checks: u64,
    pub parity_failures: u64,
    pub exhaustive: bool,
}

impl ExpansionCheck {
    pub fn passed(&self) -> bool {
        self.generator_failures == 0 && self.parity_failures == 0
    }
}

/// Input spaces with at most this many vectors are enumerated completely.
const EXHAUSTIVE_LIMIT: u64 = 1 << 16;

fn vector_from_index(field: &ExtField, mut idx: u64, len: usize) -> Vec<ExtElem> {
    let size = field.size();
    (0..len)
        .map(|_| {
            let v = field.from_index(idx % size);
            idx /= size;
            v
        })
        .collect()
}

fn space_size(field: &ExtField, len: usize) -> Option<u64> {
    field.size().checked_pow(len as u32)
}

/// Checks both commutation identities on `trials` random inputs each, or on
/// every input when the message and word spaces are small enough.
pub fn check_expansion_identities<R: Rng + ?Sized>(
    g: &Mat<ExtElem>,
    h: &Mat<ExtElem>,
    field: &ExtField,
    trials: usize,
    rng: &mut R,
) -> ExpansionCheck {
    let fq = field.base();
    let g_hat = expand_generator(g, field).matrix;
    let h_hat = expand_parity(h, field).matrix;
    let (k, n) = g.shape();
    let mut report = ExpansionCheck::default();

    let xs: Box<dyn Iterator<Item = Vec<ExtElem>>> = match space_size(field, k) {
        Some(total) if total <= EXHAUSTIVE_LIMIT => {
            Box::new((0..total).map(move |i| vector_from_index(field, i, k)))
        }
        _ => Box::new(
            (0..trials)
                .map(|_| (0..k).map(|_| field.random(rng)).collect::<Vec<_>>())
                .collect::<Vec<_>>()
                .into_iter(),
        ),
    };
    let gen_exhaustive = space_size(field, k).is_some_and(|t| t <= EXHAUSTIVE_LIMIT);
    for x in xs {
        let lhs = phi_n(field, &linalg::vec_mul(field, &x, g).expect("x has k entries"));
        let rhs = linalg::vec_mul(fq, &phi_n(field, &x), &g_hat).expect("shapes agree");
        report.generator_checks += 1;
        if lhs != rhs {
            report.generator_failures += 1;
        }
    }

    let par_exhaustive = space_size(field, n).is_some_and(|t| t <= EXHAUSTIVE_LIMIT);
    let ys: Box<dyn Iterator<Item = Vec<ExtElem>>> = if par_exhaustive {
        let total = space_size(field, n).unwrap_or(0);
        Box::new((0..total).map(move |i| vector_from_index(field, i, n)))
    } else {
        Box::new(
            (0..trials)
                .map(|_| (0..n).map(|_| field.random(rng)).collect::<Vec<_>>())
                .collect::<Vec<_>>()
                .into_iter(),
        )
    };
    for y in ys {
        let lhs = phi_n(field, &linalg::mul_vec(field, h, &y).expect("y has n entries"));
        let rhs = linalg::mul_vec(fq, &h_hat, &phi_n(field, &y)).expect("shapes agree");
        report.parity_checks += 1;
        if lhs != rhs {
            report.parity_failures += 1;
        }
    }
    report.exhaustive = gen_exhaustive && par_exhaustive;
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grs::GrsCode;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn one_by_one_expands_to_identity() {
        for (q, m) in [(3u32, 3usize), (13, 3), (7, 4)] {
            let f = ExtField::new(q, m).unwrap();
            let one = Mat::from_rows(vec![vec![ExtElem::ONE]]).unwrap();
            assert_eq!(expand_parity(&one, &f).matrix, linalg::identity(f.base(), m));
            assert_eq!(expand_generator(&one, &f).matrix, linalg::identity(f.base(), m));
        }
    }

    #[test]
    fn expanded_grs_shapes_and_annihilation() {
        let f = ExtField::new(13, 3).unwrap();
        let fq = f.base().clone();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for (n, k) in [(10, 6), (25, 17)] {
            let c = GrsCode::random(f.clone(), n, k, &mut rng).unwrap();
            let h_hat = expand_parity(&c.parity_matrix(), &f);
            let g_hat = expand_generator(&c.generator(), &f);
            assert_eq!(h_hat.matrix.shape(), (3 * (n - k), 3 * n));
            assert_eq!(g_hat.matrix.shape(), (3 * k, 3 * n));
            assert_eq!(linalg::rank(&fq, &h_hat.matrix), 3 * (n - k));
            assert_eq!(linalg::rank(&fq, &g_hat.matrix), 3 * k);
            let prod = linalg::mul(&fq, &g_hat.matrix, &h_hat.matrix.transpose()).unwrap();
            assert!(linalg::is_zero(&fq, &prod));
            for _ in 0..10 {
                let msg: Vec<ExtElem> = (0..k).map(|_| f.random(&mut rng)).collect();
                let cw = phi_n(&f, &c.encode(&msg).unwrap());
                let s = linalg::mul_vec(&fq, &h_hat.matrix, &cw).unwrap();
                assert!(s.iter().all(|&v| v == 0));
            }
        }
    }

    #[test]
    fn column_block_layout() {
        let f = ExtField::new(7, 4).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let c = GrsCode::random(f.clone(), 6, 3, &mut rng).unwrap();
        let h = c.parity_matrix();
        let h_hat = expand_parity(&h, &f);
        for i in 0..6 {
            for j in 0..4 {
                let col: Vec<ExtElem> = h.column(i).iter().map(|&v| f.mul(f.gamma_pow(j as u64), v)).collect();
                assert_eq!(h_hat.matrix.column(i * 4 + j), phi_n(&f, &col));
            }
        }
    }

    #[test]
    fn identities_exhaustive_micro() {
        let f = ExtField::new(3, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let c = GrsCode::random(f.clone(), 4, 2, &mut rng).unwrap();
        let rep = check_expansion_identities(&c.generator(), &c.parity_matrix(), &f, 10, &mut rng);
        assert!(rep.exhaustive);
        assert_eq!(rep.generator_checks, 81);
        assert_eq!(rep.parity_checks, 9u64.pow(4));
        assert!(rep.passed());
    }

    #[test]
    fn identities_hold_for_arbitrary_matrices() {
        let f = ExtField::new(5, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let g = Mat::from_fn(2, 3, |_, _| f.random(&mut rng));
        let h = Mat::from_fn(1, 3, |_, _| f.random(&mut rng));
        let rep = check_expansion_identities(&g, &h, &f, 10, &mut rng);
        assert!(rep.exhaustive);
        assert_eq!(rep.generator_checks, 625);
        assert!(rep.passed());
    }

    #[test]
    fn identities_random_trials() {
        let f = ExtField::new(13, 3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let c = GrsCode::random(f.clone(), 30, 20, &mut rng).unwrap();
        let rep = check_expansion_identities(&c.generator(), &c.parity_matrix(), &f, 50, &mut rng);
        assert!(!rep.exhaustive);
        assert_eq!(rep.generator_checks, 50);
        assert_eq!(rep.parity_checks, 50);
        assert!(rep.passed());
    }
}
